//! Distances, transmissions, the distance matrix `D(G)`, the distance
//! signless Laplacian `D^Q(G) = Tr(G) + D(G)`, their spectral radii, and the
//! Wiener/transmission lower bounds tying them to edge counts.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{complement, Graph};
use crate::linalg::{self, IntMatrix, Matrix, PowerConfig, SpectralResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceData {
    pub dist: IntMatrix,
    /// `Tr(v_i)`, the i-th row sum of `dist`.
    pub transmissions: Vec<i64>,
    /// `σ(G) = W(G)`, half the total transmission.
    pub sigma: i64,
    pub diameter: i64,
}

impl DistanceData {
    pub fn order(&self) -> usize {
        self.dist.dim()
    }

    pub fn eccentricity(&self, v: usize) -> i64 {
        self.dist.row(v).iter().copied().max().unwrap_or(0)
    }

    pub fn is_transmission_regular(&self) -> bool {
        self.transmissions.windows(2).all(|w| w[0] == w[1])
    }
}

/// Breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceData> {
    let n = g.order();
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut dist = IntMatrix::zeros(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut row = vec![-1i64; n];
    for s in 0..n {
        row.fill(-1);
        row[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if row[u] < 0 {
                    row[u] = row[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        for (t, &d) in row.iter().enumerate() {
            dist.set(s, t, d);
        }
    }
    let transmissions = dist.row_sums();
    let sigma = transmissions.iter().sum::<i64>() / 2;
    let diameter = (0..n).flat_map(|i| dist.row(i).iter().copied()).max().unwrap_or(0);
    Ok(DistanceData { dist, transmissions, sigma, diameter })
}

pub fn distance_matrix(g: &Graph) -> Result<IntMatrix> {
    Ok(all_pairs_distances(g)?.dist)
}

/// `Tr(G) + D(G)`.
pub fn dq_matrix(g: &Graph) -> Result<IntMatrix> {
    let data = all_pairs_distances(g)?;
    Ok(dq_from(&data))
}

fn dq_from(data: &DistanceData) -> IntMatrix {
    let mut m = data.dist.clone();
    for (i, &t) in data.transmissions.iter().enumerate() {
        m.set(i, i, t);
    }
    m
}

/// `λ₁(D(G))`.
pub fn distance_spectral_radius(g: &Graph) -> Result<SpectralResult> {
    linalg::spectral_radius(&distance_matrix(g)?.to_f64(), &PowerConfig::default())
}

/// `μ₁(D^Q(G))`.
pub fn dq_spectral_radius(g: &Graph) -> Result<SpectralResult> {
    linalg::spectral_radius(&dq_matrix(g)?.to_f64(), &PowerConfig::default())
}

pub fn spectral_radius(m: &Matrix, tol: f64) -> Result<SpectralResult> {
    let cfg = PowerConfig { rel_tol: tol, ..PowerConfig::default() };
    linalg::spectral_radius(m, &cfg)
}

/// Every eigenvalue of a symmetric matrix, descending.
pub fn full_spectrum(m: &Matrix) -> Vec<f64> {
    linalg::symmetric_eigenvalues(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexTransmission {
    pub vertex: usize,
    pub transmission: i64,
    pub degree: usize,
    /// `2(n−1) − d(v)`.
    pub lower_bound: i64,
    pub eccentricity: i64,
    /// `Tr(v) = 2(n−1) − d(v)`.
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplementTransmission {
    pub sigma: i64,
    /// `½n(n−1) + e(G)`.
    pub lower_bound: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransmissionReport {
    pub order: usize,
    pub edge_count: usize,
    pub sigma: i64,
    pub lambda1: f64,
    pub mu1: f64,
    /// `2W/n`, a lower bound on `λ₁(D)` (Rayleigh quotient of the ones vector).
    pub wiener_bound: f64,
    /// `4σ/n`, a lower bound on `μ₁(D^Q)`, tight exactly for transmission
    /// regular graphs.
    pub dq_bound: f64,
    pub transmission_regular: bool,
    pub vertices: Vec<VertexTransmission>,
    /// `n(n−1) − e(G)`.
    pub sigma_edge_bound: i64,
    pub sigma_edge_bound_holds: bool,
    /// `None` when the complement is disconnected.
    pub complement: Option<ComplementTransmission>,
}

pub fn transmission_bounds(g: &Graph) -> Result<TransmissionReport> {
    let data = all_pairs_distances(g)?;
    let n = g.order();
    let e = g.edge_count();
    let cfg = PowerConfig::default();
    let lambda1 = linalg::spectral_radius(&data.dist.to_f64(), &cfg)?.value;
    let mu1 = linalg::spectral_radius(&dq_from(&data).to_f64(), &cfg)?.value;
    let n_i = n as i64;
    let vertices = (0..n)
        .map(|v| {
            let lower_bound = 2 * (n_i - 1) - g.degree(v) as i64;
            VertexTransmission {
                vertex: v,
                transmission: data.transmissions[v],
                degree: g.degree(v),
                lower_bound,
                eccentricity: data.eccentricity(v),
                tight: data.transmissions[v] == lower_bound,
            }
        })
        .collect();
    let sigma_edge_bound = n_i * (n_i - 1) - e as i64;
    let complement = match all_pairs_distances(&complement(g)) {
        Ok(cd) => {
            let lower_bound = n_i * (n_i - 1) / 2 + e as i64;
            Some(ComplementTransmission { sigma: cd.sigma, lower_bound, holds: cd.sigma >= lower_bound })
        }
        Err(Error::DisconnectedGraph) => None,
        Err(other) => return Err(other),
    };
    Ok(TransmissionReport {
        order: n,
        edge_count: e,
        sigma: data.sigma,
        lambda1,
        mu1,
        wiener_bound: 2.0 * data.sigma as f64 / n as f64,
        dq_bound: 4.0 * data.sigma as f64 / n as f64,
        transmission_regular: data.is_transmission_regular(),
        vertices,
        sigma_edge_bound,
        sigma_edge_bound_holds: data.sigma >= sigma_edge_bound,
        complement,
    })
}
