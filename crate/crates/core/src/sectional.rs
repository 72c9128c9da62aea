//! Randomized falsifier for sectional log-concavity.
//!
//! Sectional log-concavity quantifies over all nonnegative two-column
//! matrices, so this module can only hunt for counterexamples; the verdict
//! is `NoCounterexampleFound`, never "holds". A deterministic structured
//! battery of small matrices runs before the seeded random trials, and any
//! counterexample is re-verified from scratch before being reported.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convexity::{coefficient_sequence_bivariate, is_log_concave_no_internal_zeros};
use crate::matrix::RationalMatrix;
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SectionalStatus {
    CounterexampleFound,
    NoCounterexampleFound,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SectionalVerdict {
    pub status: SectionalStatus,
    pub counterexample: Option<RationalMatrix>,
    pub restricted: Option<Polynomial>,
    /// Total restrictions examined: structured battery plus random trials.
    pub trials_run: u64,
    pub seed: u64,
}

/// Restriction of `f` along a nonnegative two-column matrix. In homogeneous
/// mode the result is the bivariate `f(A (u v)^T)`; otherwise the first
/// column is evaluated at 1 and the result is univariate in `v`.
pub fn restrict_pair(
    f: &Polynomial,
    a: &RationalMatrix,
    homogeneous: bool,
) -> Result<Polynomial> {
    if a.rows() != f.num_vars() {
        return Err(Error::MatrixRowMismatch {
            rows: a.rows(),
            expected: f.num_vars(),
        });
    }
    if a.cols() != 2 {
        return Err(Error::MatrixColMismatch {
            cols: a.cols(),
            expected: 2,
        });
    }
    if let Some((row, col)) = a.has_negative_entry() {
        return Err(Error::NegativeMatrixEntry { row, col });
    }
    let restricted = f.substitute_matrix(a)?;
    if homogeneous {
        Ok(restricted)
    } else {
        restricted.dehomogenize(0)
    }
}

fn restriction_passes(f: &Polynomial, a: &RationalMatrix, homogeneous: bool) -> Result<bool> {
    let restricted = restrict_pair(f, a, homogeneous)?;
    if restricted.is_zero() {
        return Ok(true);
    }
    let seq = coefficient_sequence_bivariate(&restricted)?;
    Ok(is_log_concave_no_internal_zeros(&seq))
}

/// All 0/1 columns of length `n` with at most two ones.
fn unit_columns(n: usize) -> Vec<Vec<Rat>> {
    let mut cols = vec![vec![Rat::from_integer(BigInt::from(0)); n]];
    for i in 0..n {
        let mut c = vec![Rat::from_integer(BigInt::from(0)); n];
        c[i] = Rat::from_integer(BigInt::from(1));
        cols.push(c);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut c = vec![Rat::from_integer(BigInt::from(0)); n];
            c[i] = Rat::from_integer(BigInt::from(1));
            c[j] = Rat::from_integer(BigInt::from(1));
            cols.push(c);
        }
    }
    cols
}

fn matrix_from_columns(c0: &[Rat], c1: &[Rat]) -> RationalMatrix {
    let mut m = RationalMatrix::zero(c0.len(), 2);
    for i in 0..c0.len() {
        m.set(i, 0, c0[i].clone());
        m.set(i, 1, c1[i].clone());
    }
    m
}

/// Deterministic battery: all coordinate-direction pairs, all 0/1 matrices
/// with at most two ones per column up to column swap, and the known
/// dilation fixture for four variables.
fn structured_battery(n: usize) -> Vec<RationalMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut m = RationalMatrix::zero(n, 2);
            m.set(i, 0, Rat::from_integer(BigInt::from(1)));
            m.set(j, 1, Rat::from_integer(BigInt::from(1)));
            out.push(m);
        }
    }
    let cols = unit_columns(n);
    for a in 0..cols.len() {
        for b in a..cols.len() {
            out.push(matrix_from_columns(&cols[a], &cols[b]));
        }
    }
    if n == 4 {
        out.push(RationalMatrix::from_i64(&[&[4, 0], &[1, 0], &[0, 1], &[0, 1]]));
    }
    out
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, max_entry: u64) -> RationalMatrix {
    let mut m = RationalMatrix::zero(n, 2);
    for i in 0..n {
        for j in 0..2 {
            let q = rng.gen_range(1..=max_entry);
            let p = rng.gen_range(0..=max_entry * q);
            m.set(i, j, Rat::new(BigInt::from(p), BigInt::from(q)));
        }
    }
    m
}

/// Runs the structured battery and then `trials` random nonnegative
/// matrices; the first failing restriction is reported as a counterexample
/// and re-verified before being returned. Homogeneous inputs use the
/// bivariate restriction, others the univariate one.
pub fn test_sectional(
    f: &Polynomial,
    trials: u64,
    seed: u64,
    max_entry: u64,
) -> Result<SectionalVerdict> {
    let homogeneous = f.is_homogeneous();
    let mut examined = 0u64;
    let mut culprit: Option<RationalMatrix> = None;
    for a in structured_battery(f.num_vars()) {
        examined += 1;
        if !restriction_passes(f, &a, homogeneous)? {
            culprit = Some(a);
            break;
        }
    }
    if culprit.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let a = random_matrix(&mut rng, f.num_vars(), max_entry.max(1));
            examined += 1;
            if !restriction_passes(f, &a, homogeneous)? {
                culprit = Some(a);
                break;
            }
        }
    }
    match culprit {
        None => Ok(SectionalVerdict {
            status: SectionalStatus::NoCounterexampleFound,
            counterexample: None,
            restricted: None,
            trials_run: examined,
            seed,
        }),
        Some(a) => {
            // soundness: recompute the restriction and the predicate fresh
            let restricted = restrict_pair(f, &a, homogeneous)?;
            let seq = coefficient_sequence_bivariate(&restricted)?;
            assert!(
                !restricted.is_zero() && !is_log_concave_no_internal_zeros(&seq),
                "counterexample failed re-verification"
            );
            Ok(SectionalVerdict {
                status: SectionalStatus::CounterexampleFound,
                counterexample: Some(a),
                restricted: Some(restricted),
                trials_run: examined,
                seed,
            })
        }
    }
}
