//! Exact Phase-I simplex for `A x = b, 0 ≤ x ≤ u` with bounded variables.
//!
//! Runs on `Ratio<i64>` with checked arithmetic and restarts on
//! `BigRational` when any intermediate overflows. Pivoting follows Bland's
//! rule (smallest eligible index for both entering and leaving variables).

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};

use crate::error::{Error, Result};

/// Feasibility problem `A x = b`, `0 ≤ x_j ≤ upper_j` (`None` = unbounded).
#[derive(Clone, Debug)]
pub(crate) struct LinearSystem {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub upper: Vec<Option<i64>>,
}

const ITERATION_CAP: usize = 200_000;

#[derive(Debug, PartialEq)]
pub(crate) enum Failure {
    Overflow,
    IterationCap,
}

pub(crate) trait Exact: Clone + Ord + Sized {
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigRational;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
}

impl Exact for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

impl Exact for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum State {
    Basic,
    Lower,
    Upper,
}

type Step<T> = std::result::Result<T, Failure>;

fn ok<T>(v: Option<T>) -> Step<T> {
    v.ok_or(Failure::Overflow)
}

/// Phase I on scalar type `T`: `Ok(Some(x))` for a feasible point,
/// `Ok(None)` when the system is infeasible.
pub(crate) fn phase_one<T: Exact>(sys: &LinearSystem) -> Step<Option<Vec<T>>> {
    let m = sys.b.len();
    let n = sys.upper.len();
    let cols = n + m;
    let zero = T::from_i64(0);
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut xb: Vec<T> = Vec::with_capacity(m);
    for (row, &rhs) in sys.a.iter().zip(&sys.b) {
        let sign = if rhs < 0 { -1 } else { 1 };
        let mut r: Vec<T> = row.iter().map(|&v| T::from_i64(sign * v)).collect();
        r.resize(cols, zero.clone());
        t.push(r);
        xb.push(T::from_i64(sign * rhs));
    }
    for (i, r) in t.iter_mut().enumerate() {
        r[n + i] = T::from_i64(1);
    }
    let upper: Vec<Option<T>> = sys.upper.iter().map(|u| u.map(T::from_i64)).chain((0..m).map(|_| None)).collect();
    let mut basis: Vec<usize> = (n..cols).collect();
    let mut state = vec![State::Lower; cols];
    for s in &mut state[n..] {
        *s = State::Basic;
    }
    // reduced costs of the artificial-sum objective
    let mut d: Vec<T> = vec![zero.clone(); cols];
    for (j, dj) in d.iter_mut().enumerate().take(n) {
        let mut s = zero.clone();
        for r in &t {
            s = ok(s.sub(&r[j]))?;
        }
        *dj = s;
    }

    for _ in 0..ITERATION_CAP {
        let entering = (0..cols).find(|&j| match state[j] {
            State::Lower => d[j] < zero && upper[j] != Some(zero.clone()),
            State::Upper => d[j] > zero,
            State::Basic => false,
        });
        let Some(j) = entering else {
            let mut x = vec![zero.clone(); n];
            for (i, &v) in basis.iter().enumerate() {
                if v >= n {
                    if xb[i] > zero {
                        return Ok(None);
                    }
                } else {
                    x[v] = xb[i].clone();
                }
            }
            for v in 0..n {
                if state[v] == State::Upper {
                    x[v] = upper[v].clone().expect("upper state has a bound");
                }
            }
            return Ok(Some(x));
        };
        let increasing = state[j] == State::Lower;
        // rate of change of each basic value per unit step of x_j
        let mut rate = Vec::with_capacity(m);
        for r in &t {
            rate.push(if increasing { ok(zero.sub(&r[j]))? } else { r[j].clone() });
        }
        let mut best: Option<(T, Option<usize>)> = upper[j].clone().map(|u| (u, None));
        for i in 0..m {
            let limit = if rate[i] < zero {
                ok(xb[i].div(&ok(zero.sub(&rate[i]))?))?
            } else if rate[i] > zero {
                match &upper[basis[i]] {
                    Some(u) => ok(ok(u.sub(&xb[i]))?.div(&rate[i]))?,
                    None => continue,
                }
            } else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((b, row)) => limit < *b || (limit == *b && row.is_some_and(|r| basis[i] < basis[r])),
            };
            if better {
                best = Some((limit, Some(i)));
            }
        }
        let Some((theta, row)) = best else {
            // Phase I is bounded below by zero, so this cannot happen.
            return Err(Failure::IterationCap);
        };
        for i in 0..m {
            xb[i] = ok(xb[i].add(&ok(rate[i].mul(&theta))?))?;
        }
        let start = if increasing { zero.clone() } else { upper[j].clone().expect("upper state has a bound") };
        let value = if increasing { ok(start.add(&theta))? } else { ok(start.sub(&theta))? };
        let Some(r) = row else {
            state[j] = if increasing { State::Upper } else { State::Lower };
            continue;
        };
        let leaving = basis[r];
        state[leaving] = if rate[r] < zero { State::Lower } else { State::Upper };
        xb[r] = value;
        let pivot = t[r][j].clone();
        for v in t[r].iter_mut() {
            *v = ok(v.div(&pivot))?;
        }
        let pivot_row = t[r].clone();
        for (i, row_i) in t.iter_mut().enumerate() {
            if i == r || row_i[j].is_zero_like() {
                continue;
            }
            let f = row_i[j].clone();
            for (v, p) in row_i.iter_mut().zip(&pivot_row) {
                if !p.is_zero_like() {
                    *v = ok(v.sub(&ok(f.mul(p))?))?;
                }
            }
        }
        let f = d[j].clone();
        if !f.is_zero_like() {
            for (v, p) in d.iter_mut().zip(&pivot_row) {
                if !p.is_zero_like() {
                    *v = ok(v.sub(&ok(f.mul(p))?))?;
                }
            }
        }
        basis[r] = j;
        state[j] = State::Basic;
    }
    Err(Failure::IterationCap)
}

trait ZeroLike {
    fn is_zero_like(&self) -> bool;
}

impl<T: Exact> ZeroLike for T {
    fn is_zero_like(&self) -> bool {
        *self == T::from_i64(0)
    }
}

/// Exact feasible point of `sys`, or `None` when infeasible.
pub(crate) fn feasible_point(sys: &LinearSystem) -> Result<Option<Vec<BigRational>>> {
    let cap_error = || Error::NonConvergence { iterations: ITERATION_CAP, residual: f64::NAN };
    match phase_one::<Ratio<i64>>(sys) {
        Ok(x) => Ok(x.map(|v| v.iter().map(Exact::to_big).collect())),
        Err(Failure::IterationCap) => Err(cap_error()),
        Err(Failure::Overflow) => match phase_one::<BigRational>(sys) {
            Ok(x) => Ok(x),
            Err(_) => Err(cap_error()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(sys: &LinearSystem, x: &[BigRational]) {
        for (row, &rhs) in sys.a.iter().zip(&sys.b) {
            let lhs: BigRational = row.iter().zip(x).map(|(&a, v)| BigRational::from_integer(a.into()) * v).sum();
            assert_eq!(lhs, BigRational::from_integer(rhs.into()));
        }
        for (v, u) in x.iter().zip(&sys.upper) {
            assert!(*v >= BigRational::zero());
            if let Some(u) = u {
                assert!(*v <= BigRational::from_integer((*u).into()));
            }
        }
    }

    #[test]
    fn small_systems() {
        // x + y = 1, y + z = 1, x + z = 1 on [0,1]: only x = y = z = ½
        let sys = LinearSystem {
            a: vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
            b: vec![1, 1, 1],
            upper: vec![Some(1); 3],
        };
        let x = feasible_point(&sys).unwrap().unwrap();
        check(&sys, &x);
        assert!(x.iter().all(|v| *v == BigRational::new(1.into(), 2.into())));

        // x + y = 3 with x, y ≤ 1 is infeasible
        let sys = LinearSystem { a: vec![vec![1, 1]], b: vec![3], upper: vec![Some(1), Some(1)] };
        assert_eq!(feasible_point(&sys).unwrap(), None);

        // negative right-hand side and an unbounded variable
        let sys = LinearSystem { a: vec![vec![1, -1]], b: vec![-4], upper: vec![Some(1), None] };
        let x = feasible_point(&sys).unwrap().unwrap();
        check(&sys, &x);
    }

    #[test]
    fn overflow_falls_back_to_big_rationals() {
        let p = (1i64 << 40) + 15;
        let q = (1i64 << 39) + 7;
        let sys = LinearSystem {
            a: vec![vec![p, q, 1, 0], vec![q, p, 0, 1], vec![1, 1, 1, 1]],
            b: vec![p + q, p + q, 3],
            upper: vec![Some(1), Some(1), None, None],
        };
        assert_eq!(phase_one::<Ratio<i64>>(&sys), Err(Failure::Overflow));
        let x = feasible_point(&sys).unwrap().unwrap();
        check(&sys, &x);
    }
}
