//! Discrete convexity predicates: log-concave sequences, ultra-log-concave
//! sequences, and M-convex (polymatroid exchange) support sets.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{Exponent, Polynomial};
use crate::rational::{binomial, Rat};
use crate::{Error, Result};

/// Finite set of equal-length exponent vectors, kept in canonical term
/// order so witnesses are deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportSet {
    points: Vec<Exponent>,
}

impl SupportSet {
    pub fn new(mut points: Vec<Exponent>) -> Self {
        points.sort();
        points.dedup();
        SupportSet { points }
    }

    pub fn of(f: &Polynomial) -> Self {
        SupportSet::new(f.support())
    }

    pub fn points(&self) -> &[Exponent] {
        &self.points
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.points.binary_search(e).is_ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A failed symmetric exchange: `alpha_i > beta_i` but no index `j` with
/// `alpha_j < beta_j` keeps both exchanged points inside the set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MConvexWitness {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub index: usize,
}

/// Nonnegative values, `a_i^2 >= a_{i-1} a_{i+1}`, and no zero between two
/// nonzeros. Empty and singleton sequences pass.
pub fn is_log_concave_no_internal_zeros(values: &[Rat]) -> bool {
    if values.iter().any(Rat::is_negative) {
        return false;
    }
    for i in 1..values.len().saturating_sub(1) {
        if &values[i] * &values[i] < &values[i - 1] * &values[i + 1] {
            return false;
        }
    }
    let nonzero: Vec<usize> = (0..values.len())
        .filter(|&i| !values[i].is_zero())
        .collect();
    if let (Some(&first), Some(&last)) = (nonzero.first(), nonzero.last()) {
        for i in first..=last {
            if values[i].is_zero() {
                return false;
            }
        }
    }
    true
}

/// Divides by the binomial row `C(n, i)` and applies the log-concavity test.
pub fn is_ultra_log_concave(values: &[Rat]) -> bool {
    if values.is_empty() {
        return true;
    }
    let n = (values.len() - 1) as u32;
    let scaled: Vec<Rat> = values
        .iter()
        .enumerate()
        .map(|(i, a)| a / Rat::from_integer(binomial(n, i as u32)))
        .collect();
    is_log_concave_no_internal_zeros(&scaled)
}

/// First symmetric-exchange failure in canonical enumeration order, if any.
pub fn m_convex_witness(s: &SupportSet) -> Option<MConvexWitness> {
    let points = s.points();
    if points.len() <= 1 {
        return None;
    }
    let dim = points[0].len();
    let total = points[0].total();
    // Unequal coordinate sums fail the homogeneous convention outright.
    if let Some(bad) = points.iter().find(|p| p.total() != total) {
        return Some(MConvexWitness {
            alpha: points[0].entries().to_vec(),
            beta: bad.entries().to_vec(),
            index: 0,
        });
    }
    for alpha in points {
        for beta in points {
            if alpha == beta {
                continue;
            }
            for i in 0..dim {
                if alpha.get(i) <= beta.get(i) {
                    continue;
                }
                let found = (0..dim).any(|j| {
                    if alpha.get(j) >= beta.get(j) {
                        return false;
                    }
                    let mut a = alpha.entries().to_vec();
                    a[i] -= 1;
                    a[j] += 1;
                    let mut b = beta.entries().to_vec();
                    b[j] -= 1;
                    b[i] += 1;
                    s.contains(&Exponent::new(a)) && s.contains(&Exponent::new(b))
                });
                if !found {
                    return Some(MConvexWitness {
                        alpha: alpha.entries().to_vec(),
                        beta: beta.entries().to_vec(),
                        index: i,
                    });
                }
            }
        }
    }
    None
}

pub fn is_m_convex(s: &SupportSet) -> bool {
    m_convex_witness(s).is_none()
}

/// Ordered coefficient list of a univariate polynomial (ascending degree) or
/// a homogeneous bivariate polynomial (ascending power of the second
/// variable), zeros between the extremes included. The zero polynomial
/// yields the empty sequence.
pub fn coefficient_sequence_bivariate(f: &Polynomial) -> Result<Vec<Rat>> {
    if f.is_zero() {
        return Ok(Vec::new());
    }
    match f.num_vars() {
        1 => {
            let d = f.total_degree();
            Ok((0..=d)
                .map(|k| f.coefficient(&Exponent::new(vec![k])))
                .collect())
        }
        2 => {
            if !f.is_homogeneous() {
                return Err(Error::NotBivariateHomogeneous);
            }
            let d = f.total_degree();
            Ok((0..=d)
                .map(|k| f.coefficient(&Exponent::new(vec![d - k, k])))
                .collect())
        }
        _ => Err(Error::NotBivariateHomogeneous),
    }
}
