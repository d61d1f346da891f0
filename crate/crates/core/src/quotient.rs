//! Quotient matrices of block partitions, the equitable-quotient eigenvalue
//! check, and the 4×4 quotient of `D(G^(r))` with its eigenvector relations.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{build_extremal_gr, BlockLayout};
use crate::linalg::{self, IntMatrix, Matrix, PowerConfig};
use crate::spectra::distance_matrix;

/// Agreement required between quotient and full Perron roots.
pub const RADIUS_TOL: f64 = 1e-8;
/// Tolerance for matching quotient eigenvalues inside the full spectrum.
pub const SPECTRUM_TOL: f64 = 1e-7;
/// Row-sum tolerance for non-integral matrices.
const ROW_SUM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates that `blocks` are nonempty, disjoint and cover `0..n`.
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("index {v} out of range 0..{n}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("index {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("index {v} is not covered")));
        }
        Ok(Partition { blocks })
    }

    /// Consecutive blocks of a layout; zero-sized blocks are dropped.
    pub fn from_layout(layout: &BlockLayout) -> Self {
        Partition { blocks: layout.ranges().into_iter().filter(|r| !r.is_empty()).map(|r| r.collect()).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    fn order(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientMatrix {
    /// Block-average row sums.
    pub matrix: Matrix,
    /// Every block has constant row sums.
    pub equitable: bool,
}

fn check_dim(dim: usize, p: &Partition) -> Result<()> {
    if p.order() != dim {
        return Err(Error::InvalidPartition(format!("partition covers {} indices, matrix has {dim}", p.order())));
    }
    Ok(())
}

/// Row sums of `m` over the columns of block `j`, for every row of block `i`.
fn block_row_sums(m: &Matrix, rows: &[usize], cols: &[usize]) -> Vec<f64> {
    rows.iter().map(|&u| cols.iter().map(|&v| m.get(u, v)).sum()).collect()
}

/// Entry `(i, j)` is the average over rows of block `i` of the row sum over
/// block `j`. Integral matrices are tested for equitability exactly, others
/// to within `1e-12`.
pub fn quotient_matrix(m: &Matrix, p: &Partition) -> Result<QuotientMatrix> {
    check_dim(m.dim(), p)?;
    let integral = m.rows().iter().flatten().all(|v| v.fract() == 0.0);
    let tol = if integral { 0.0 } else { ROW_SUM_TOL };
    let k = p.blocks.len();
    let mut q = Matrix::zeros(k);
    let mut equitable = true;
    for (i, bi) in p.blocks.iter().enumerate() {
        for (j, bj) in p.blocks.iter().enumerate() {
            let sums = block_row_sums(m, bi, bj);
            let avg = sums.iter().sum::<f64>() / sums.len() as f64;
            equitable &= sums.iter().all(|s| (s - sums[0]).abs() <= tol * sums[0].abs().max(1.0));
            q.set(i, j, avg);
        }
    }
    Ok(QuotientMatrix { matrix: q, equitable })
}

/// Exact integer quotient; `NotEquitable` when some block's row sums vary.
pub fn quotient_matrix_exact(m: &IntMatrix, p: &Partition) -> Result<IntMatrix> {
    check_dim(m.dim(), p)?;
    let k = p.blocks.len();
    let mut q = IntMatrix::zeros(k);
    for (i, bi) in p.blocks.iter().enumerate() {
        for (j, bj) in p.blocks.iter().enumerate() {
            let sums: Vec<i64> = bi.iter().map(|&u| bj.iter().map(|&v| m.get(u, v)).sum()).collect();
            if sums.iter().any(|&s| s != sums[0]) {
                return Err(Error::NotEquitable);
            }
            q.set(i, j, sums[0]);
        }
    }
    Ok(q)
}

/// `N^{1/2} Q N^{-1/2}` with `N` the block sizes: symmetric whenever `Q` is
/// the equitable quotient of a symmetric matrix, and similar to `Q`.
pub fn symmetrize(q: &Matrix, sizes: &[usize]) -> Matrix {
    let k = q.dim();
    let mut s = Matrix::zeros(k);
    for i in 0..k {
        for j in 0..k {
            s.set(i, j, q.get(i, j) * (sizes[i] as f64 / sizes[j] as f64).sqrt());
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotientCheck {
    pub quotient: Matrix,
    /// Perron root of the quotient by power iteration.
    pub quotient_radius: f64,
    /// Largest eigenvalue of the symmetrized quotient by Jacobi.
    pub symmetrized_radius: f64,
    pub full_radius: f64,
    pub quotient_eigenvalues: Vec<f64>,
    pub full_spectrum: Vec<f64>,
    pub radius_tolerance: f64,
    pub spectrum_tolerance: f64,
    pub radius_agrees: bool,
    pub spectrum_contains_quotient: bool,
}

impl QuotientCheck {
    pub fn holds(&self) -> bool {
        self.radius_agrees && self.spectrum_contains_quotient
    }
}

/// Compares the quotient's eigenvalues with those of `m` for an equitable
/// partition of a symmetric nonnegative irreducible matrix.
pub fn verify_quotient_equality(m: &Matrix, p: &Partition) -> Result<QuotientCheck> {
    let q = quotient_matrix(m, p)?;
    if !q.equitable {
        return Err(Error::NotEquitable);
    }
    let cfg = PowerConfig::default();
    let full = linalg::spectral_radius(m, &cfg)?;
    let quotient_radius = linalg::perron(&q.matrix, &cfg)?.value;
    let quotient_eigenvalues = linalg::symmetric_eigenvalues(&symmetrize(&q.matrix, &p.sizes()));
    let symmetrized_radius = quotient_eigenvalues[0];
    let full_spectrum = linalg::symmetric_eigenvalues(m);
    let scale = full.value.abs().max(1.0);
    let radius_agrees = (quotient_radius - full.value).abs() <= RADIUS_TOL * scale
        && (symmetrized_radius - quotient_radius).abs() <= RADIUS_TOL * scale;
    let spectrum_contains_quotient = quotient_eigenvalues
        .iter()
        .all(|ev| full_spectrum.iter().any(|f| (f - ev).abs() <= SPECTRUM_TOL * scale));
    Ok(QuotientCheck {
        quotient: q.matrix,
        quotient_radius,
        symmetrized_radius,
        full_radius: full.value,
        quotient_eigenvalues,
        full_spectrum,
        radius_tolerance: RADIUS_TOL,
        spectrum_tolerance: SPECTRUM_TOL,
        radius_agrees,
        spectrum_contains_quotient,
    })
}

fn check_nr(n: usize, r: usize, min_n: usize) -> Result<()> {
    if r < 1 {
        return Err(invalid("r must be at least 1"));
    }
    if n < min_n {
        return Err(invalid(format!("n = {n} must be at least {min_n} for r = {r}")));
    }
    Ok(())
}

/// The closed-form quotient of `D(G^(r))` on the layout `[r, r, n−3r−1, r+1]`.
pub fn theorem1_quotient(n: usize, r: usize) -> Result<IntMatrix> {
    check_nr(n, r, 3 * r + 2)?;
    let (n, r) = (n as i64, r as i64);
    let big = n - 3 * r - 1;
    IntMatrix::from_rows(&[
        vec![2 * (r - 1), r, big, r + 1],
        vec![r, r - 1, big, r + 1],
        vec![r, r, big - 1, 2 * (r + 1)],
        vec![r, r, 2 * big, 2 * r],
    ])
}

/// Quotient of `D(G^(r))` computed from the constructed graph.
pub fn extremal_quotient(n: usize, r: usize) -> Result<IntMatrix> {
    let (g, layout) = build_extremal_gr(n, r)?;
    quotient_matrix_exact(&distance_matrix(&g)?, &Partition::from_layout(&layout))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eq3Report {
    pub n: usize,
    pub r: usize,
    /// `λ₁*`, the Perron root of the quotient.
    pub lambda: f64,
    /// Perron vector `(a, b, c, d)` of the quotient, unit length.
    pub vector: [f64; 4],
    pub ratio: f64,
    /// `(λ₁* + n − 3r) / (λ₁* + 2)`.
    pub predicted: f64,
    pub deviation: f64,
    /// `|(Qx)_i − λ₁* x_i|` for the four eigen-equations.
    pub residuals: [f64; 4],
    pub tolerance: f64,
    pub passes: bool,
}

pub fn eq3_ratio_check(n: usize, r: usize) -> Result<Eq3Report> {
    let q = theorem1_quotient(n, r)?.to_f64();
    let res = linalg::perron(&q, &PowerConfig::default())?;
    let x = [res.vector[0], res.vector[1], res.vector[2], res.vector[3]];
    let lambda = res.value;
    let qx = q.mul_vec(&x);
    let residuals = [0, 1, 2, 3].map(|i| (qx[i] - lambda * x[i]).abs());
    let ratio = x[3] / x[2];
    let predicted = (lambda + n as f64 - 3.0 * r as f64) / (lambda + 2.0);
    let deviation = (ratio - predicted).abs();
    let tolerance = 1e-8;
    let passes = deviation <= tolerance && residuals.iter().all(|&e| e <= tolerance * lambda.max(1.0));
    Ok(Eq3Report { n, r, lambda, vector: x, ratio, predicted, deviation, residuals, tolerance, passes })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Ineq4Report {
    /// `n = 7r + 4`, where the threshold is undefined.
    NotApplicable { n: usize, r: usize },
    Checked {
        n: usize,
        r: usize,
        /// `4r + 2 + ((4r+3)² − 1)/(n − 7r − 4)`.
        threshold: f64,
        lambda: f64,
        /// `n − 1` exceeds the threshold, so the row-sum bound settles it.
        row_sum_shortcut: bool,
        /// `λ₁*` itself exceeds the threshold.
        lambda_exceeds: bool,
    },
}

pub fn ineq4_check(n: usize, r: usize) -> Result<Ineq4Report> {
    check_nr(n, r, 7 * r + 4)?;
    if n == 7 * r + 4 {
        return Ok(Ineq4Report::NotApplicable { n, r });
    }
    let rf = r as f64;
    let threshold = 4.0 * rf + 2.0 + ((4.0 * rf + 3.0).powi(2) - 1.0) / (n - 7 * r - 4) as f64;
    let lambda = linalg::perron(&theorem1_quotient(n, r)?.to_f64(), &PowerConfig::default())?.value;
    Ok(Ineq4Report::Checked {
        n,
        r,
        threshold,
        lambda,
        row_sum_shortcut: (n - 1) as f64 > threshold,
        lambda_exceeds: lambda > threshold,
    })
}
