//! Exact positive-kernel feasibility for integer matrices.
//!
//! [`solve_positive_kernel`] decides whether `A x = 0` has a solution with
//! every `x_i > 0`. By homogeneity this is the same as `A x = 0, x >= 1`,
//! which is answered by a phase-1 simplex over exact rationals with Bland's
//! pivoting rule. The answer always comes with a witness that checks by
//! integer arithmetic alone:
//!
//! - a positive integer kernel vector, or
//! - a Farkas certificate: row coefficients `y` with `yᵀA >= 0` and
//!   `yᵀA != 0`, read off the optimal phase-1 dual.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("matrix has no columns")]
    EmptyMatrix,
    #[error("row {row} has {len} entries, expected {cols}")]
    RaggedRow { row: usize, len: usize, cols: usize },
    #[error("witness entry does not fit in 64 bits")]
    Overflow,
}

/// A dense integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<i64>>) -> Result<Self, SolverError> {
        if cols == 0 {
            return Err(SolverError::EmptyMatrix);
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(SolverError::RaggedRow { row, len: r.len(), cols });
        }
        Ok(Self { cols, rows })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `A x`, exactly.
    pub fn apply(&self, x: &[i64]) -> Vec<i128> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum())
            .collect()
    }

    /// `yᵀ A`, exactly.
    pub fn combine_rows(&self, y: &[i64]) -> Vec<i128> {
        let mut out = vec![0i128; self.cols];
        for (r, &coef) in self.rows.iter().zip(y) {
            for (o, &a) in out.iter_mut().zip(r) {
                *o += coef as i128 * a as i128;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum FeasibilityOutcome {
    /// Positive integers with `A x = 0`.
    Feasible { weights: Vec<i64> },
    /// Row coefficients `y` and the combination `yᵀA`, which is `>= 0` and
    /// not identically zero.
    Infeasible {
        certificate: Vec<i64>,
        combination: Vec<i64>,
    },
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible { .. })
    }

    /// Re-checks the witness against `a` in exact integer arithmetic.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        match self {
            Self::Feasible { weights } => {
                weights.len() == a.cols()
                    && weights.iter().all(|&w| w > 0)
                    && a.apply(weights).iter().all(|&r| r == 0)
            }
            Self::Infeasible { certificate, combination } => {
                let combo = a.combine_rows(certificate);
                certificate.len() == a.rows().len()
                    && combo.iter().all(|&c| c >= 0)
                    && combo.iter().any(|&c| c > 0)
                    && combo.iter().zip(combination).all(|(&c, &d)| c == d as i128)
            }
        }
    }
}

/// Decides `∃ x > 0 : A x = 0` and returns the verifying witness.
pub fn solve_positive_kernel(a: &IntMatrix) -> Result<FeasibilityOutcome, SolverError> {
    let n = a.cols();
    let m = a.rows().len();
    if n == 0 {
        return Err(SolverError::EmptyMatrix);
    }
    if m == 0 {
        return Ok(FeasibilityOutcome::Feasible { weights: vec![1; n] });
    }

    // Substitute x = 1 + y: A y = -A·1, y >= 0. Flip rows so the right-hand
    // side is non-negative, then add one artificial per row.
    let signs: Vec<i64> = a
        .rows()
        .iter()
        .map(|r| if r.iter().sum::<i64>() > 0 { -1 } else { 1 })
        .collect();
    let mut tableau = Tableau::phase_one(a, &signs);
    tableau.run();

    if tableau.objective.is_zero() {
        let mut x: Vec<Rational> = vec![Rational::one(); n];
        for (row, &var) in tableau.basis.iter().enumerate() {
            if var < n {
                x[var] += &tableau.rhs[row];
            }
        }
        let weights = to_primitive_integers(&x)?;
        return Ok(FeasibilityOutcome::Feasible { weights });
    }

    // Dual of phase 1: π_i = c_art − d_art = 1 − d_{n+i}. Then πA' <= 0 and
    // πb' > 0; with A' = S A the certificate is y = −S π.
    let y: Vec<Rational> = (0..m)
        .map(|i| {
            let pi = Rational::one() - &tableau.reduced[n + i];
            -pi * Rational::from_integer(BigInt::from(signs[i]))
        })
        .collect();
    let certificate = to_primitive_integers(&y)?;
    let combination = a
        .combine_rows(&certificate)
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| SolverError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FeasibilityOutcome::Infeasible { certificate, combination })
}

/// Scales a rational vector by the lcm of its denominators and divides out
/// the gcd of the result.
fn to_primitive_integers(v: &[Rational]) -> Result<Vec<i64>, SolverError> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    ints.iter()
        .map(|x| (x / &gcd).to_i64().ok_or(SolverError::Overflow))
        .collect()
}

/// Dense phase-1 tableau over `[y | artificials]`.
struct Tableau {
    /// `m` rows of `n + m` coefficients.
    coef: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs, one per column.
    reduced: Vec<Rational>,
    objective: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn phase_one(a: &IntMatrix, signs: &[i64]) -> Self {
        let n = a.cols();
        let m = a.rows().len();
        let mut coef = vec![vec![Rational::zero(); n + m]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut reduced = vec![Rational::zero(); n + m];
        let mut objective = Rational::zero();
        for (i, row) in a.rows().iter().enumerate() {
            let s = signs[i];
            for (j, &v) in row.iter().enumerate() {
                let entry = Rational::from_integer(BigInt::from(s * v));
                reduced[j] -= &entry;
                coef[i][j] = entry;
            }
            coef[i][n + i] = Rational::one();
            let b = Rational::from_integer(BigInt::from(-s * row.iter().sum::<i64>()));
            objective += &b;
            rhs.push(b);
        }
        Self {
            coef,
            rhs,
            reduced,
            objective,
            basis: (n..n + m).collect(),
        }
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test
    /// broken by lowest basic variable index. Stops as soon as the phase-1
    /// objective reaches zero, its lower bound.
    fn run(&mut self) {
        while !self.objective.is_zero() {
            let Some(enter) = self.reduced.iter().position(Signed::is_negative) else {
                break;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.coef.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave.expect("phase-1 objective is bounded below");
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.coef[row][col].clone();
        for v in self.coef[row].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        self.rhs[row] /= &p;
        let pivot_row = self.coef[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();

        for i in 0..self.coef.len() {
            if i == row || self.coef[i][col].is_zero() {
                continue;
            }
            let factor = self.coef[i][col].clone();
            for &j in &nonzero {
                let delta = &factor * &pivot_row[j];
                self.coef[i][j] -= delta;
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = self.reduced[col].clone();
        if !factor.is_zero() {
            for &j in &nonzero {
                let delta = &factor * &pivot_row[j];
                self.reduced[j] -= delta;
            }
            self.objective += &factor * &pivot_rhs;
        }
        self.basis[row] = col;
    }
}
