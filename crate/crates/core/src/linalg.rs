//! Dense square matrices plus the two eigen-solvers: power iteration for
//! Perron pairs and cyclic Jacobi rotations for full symmetric spectra.
//! Both run in a fixed loop order, so results are bitwise reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major square matrix of `f64`; serialised as a list of rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![0.0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("rows must form a square matrix".into()));
        }
        Ok(Matrix { n, data: rows.concat() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul_vec(x))
    }

    /// Support graph of the off-diagonal nonzeros is connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n;
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && (self.get(i, j) != 0.0 || self.get(j, i) != 0.0) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Row-major square matrix of exact integers (distance matrices and their
/// relatives).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("rows must form a square matrix".into()));
        }
        Ok(IntMatrix { n, data: rows.concat() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn to_f64(&self) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|&v| v as f64).collect() }
    }

    /// Entrywise `self − other`.
    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerConfig {
    /// Stop once successive Rayleigh quotients differ by at most this
    /// fraction of the current estimate...
    pub rel_tol: f64,
    /// ...and the residual `‖Mx − λx‖` is at most `residual_tol·max(1, |λ|)`.
    pub residual_tol: f64,
    pub max_iter: usize,
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig { rel_tol: 1e-12, residual_tol: 1e-9, max_iter: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub value: f64,
    /// Unit Perron vector.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Power iteration from the all-ones vector. Works for any nonnegative
/// matrix with a dominant Perron root (symmetric or not); the caller is
/// responsible for primitivity.
pub fn perron(m: &Matrix, cfg: &PowerConfig) -> Result<SpectralResult> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidMatrix("empty matrix".into()));
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = f64::NAN;
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        let y = m.mul_vec(&x);
        let next = dot(&x, &y);
        residual = y.iter().zip(&x).map(|(a, b)| (a - next * b).powi(2)).sum::<f64>().sqrt();
        let settled = (next - lambda).abs() <= cfg.rel_tol * next.abs();
        if (settled || residual == 0.0) && residual <= cfg.residual_tol * next.abs().max(1.0) {
            return Ok(SpectralResult { value: next, vector: x, residual, iterations: it });
        }
        lambda = next;
        let len = norm(&y);
        if len == 0.0 {
            return Ok(SpectralResult { value: 0.0, vector: x, residual: 0.0, iterations: it });
        }
        x = y.into_iter().map(|v| v / len).collect();
    }
    Err(Error::NonConvergence { iterations: cfg.max_iter, residual })
}

/// Perron root of a symmetric, entrywise nonnegative, irreducible matrix.
/// Rejects inputs violating those preconditions and checks the Perron
/// vector is strictly positive.
pub fn spectral_radius(m: &Matrix, cfg: &PowerConfig) -> Result<SpectralResult> {
    if !m.is_symmetric(0.0) {
        return Err(Error::InvalidMatrix("matrix is not symmetric".into()));
    }
    if m.data.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::InvalidMatrix("matrix has negative or non-finite entries".into()));
    }
    if !m.is_irreducible() {
        return Err(Error::InvalidMatrix("matrix is reducible".into()));
    }
    let res = perron(m, cfg)?;
    if m.dim() > 1 && res.vector.iter().any(|&v| v <= 0.0) {
        return Err(Error::InvalidMatrix("Perron vector is not strictly positive".into()));
    }
    Ok(res)
}

const JACOBI_OFF_TOL: f64 = 1e-10;
const JACOBI_MAX_SWEEPS: usize = 100;

/// All eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, sorted
/// descending. Only the lower-left triangle's symmetric partner is assumed
/// equal; asymmetric input is symmetrised by averaging.
pub fn symmetric_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = m.clone();
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    let off = |a: &Matrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    };
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off(&a) < JACOBI_OFF_TOL {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dk(n: usize) -> Matrix {
        let rows: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect();
        Matrix::from_rows(&rows).unwrap()
    }

    fn dp3() -> Matrix {
        Matrix::from_rows(&[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]).unwrap()
    }

    #[test]
    fn perron_of_complete_graph_distance() {
        let r = spectral_radius(&dk(4), &PowerConfig::default()).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
        assert!((norm(&r.vector) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perron_of_path_distance() {
        // λ³ − 6λ − 4 = (λ + 2)(λ² − 2λ − 2)
        let r = spectral_radius(&dp3(), &PowerConfig::default()).unwrap();
        assert!((r.value - (1.0 + 3f64.sqrt())).abs() < 1e-10, "{}", r.value);
        assert!(r.vector.iter().all(|&v| v > 0.0));
        assert!(r.residual <= 1e-9 * r.value);
    }

    #[test]
    fn jacobi_examples() {
        let e = symmetric_eigenvalues(&dk(3));
        for (got, want) in e.iter().zip([2.0, -1.0, -1.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        let e = symmetric_eigenvalues(&dp3());
        let s3 = 3f64.sqrt();
        for (got, want) in e.iter().zip([1.0 + s3, 1.0 - s3, -2.0]) {
            assert!((got - want).abs() < 1e-10, "{e:?}");
        }
        assert_eq!(symmetric_eigenvalues(&Matrix::zeros(2)), vec![0.0, 0.0]);
    }

    #[test]
    fn jacobi_trace_matches() {
        let m = Matrix::from_rows(&[
            vec![4.0, 1.0, 2.0, 0.5],
            vec![1.0, 3.0, 0.0, 1.5],
            vec![2.0, 0.0, 5.0, 1.0],
            vec![0.5, 1.5, 1.0, 2.0],
        ])
        .unwrap();
        let e = symmetric_eigenvalues(&m);
        assert!((e.iter().sum::<f64>() - m.trace()).abs() < 1e-10);
        let p = spectral_radius(&m, &PowerConfig::default()).unwrap();
        assert!((p.value - e[0]).abs() < 1e-8);
    }

    #[test]
    fn spectral_radius_rejects_bad_input() {
        let neg = Matrix::from_rows(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap();
        assert!(matches!(spectral_radius(&neg, &PowerConfig::default()), Err(Error::InvalidMatrix(_))));
        let asym = Matrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(spectral_radius(&asym, &PowerConfig::default()).is_err());
        let red = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(spectral_radius(&red, &PowerConfig::default()).is_err());
    }

    #[test]
    fn iteration_cap_reports_nonconvergence() {
        let cfg = PowerConfig { max_iter: 2, ..PowerConfig::default() };
        let m = Matrix::from_rows(&[vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 3.0], vec![0.0, 3.0, 1.0]]).unwrap();
        assert!(matches!(perron(&m, &cfg), Err(Error::NonConvergence { .. })));
    }
}
