//! Lorentzian certification of homogeneous polynomials.
//!
//! A homogeneous polynomial of degree d is Lorentzian when its coefficients
//! are nonnegative, its support is M-convex, and every (d-2)-fold partial
//! derivative is a quadratic whose Hessian has at most one positive
//! eigenvalue. All three conditions are decided exactly.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::convexity::{
    coefficient_sequence_bivariate, is_log_concave_no_internal_zeros, m_convex_witness,
    MConvexWitness, SupportSet,
};
use crate::poly::{Exponent, Polynomial};
use crate::rational::format_rat;
use crate::signature::{hessian_of_quadratic, inertia_with, Inertia, InertiaBackend};
use crate::{Error, Result};

/// Why a polynomial failed certification.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum LorentzWitness {
    NegativeCoefficient { exp: Vec<u32>, coef: String },
    NotMConvex(MConvexWitness),
    HessianTooPositive { alpha: Vec<u32>, inertia: Inertia },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LorentzVerdict {
    pub is_lorentzian: bool,
    pub witness: Option<LorentzWitness>,
}

impl LorentzVerdict {
    fn pass() -> Self {
        LorentzVerdict {
            is_lorentzian: true,
            witness: None,
        }
    }

    fn fail(witness: LorentzWitness) -> Self {
        LorentzVerdict {
            is_lorentzian: false,
            witness: Some(witness),
        }
    }
}

/// All multi-indices of the given length summing to `total`, in canonical
/// term order.
pub fn multi_indices(len: usize, total: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut current = vec![0u32; len];
    fill(&mut out, &mut current, 0, total);
    out.sort();
    return out;

    fn fill(out: &mut Vec<Exponent>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(Exponent::new(current.clone()));
            return;
        }
        for k in 0..=remaining {
            current[pos] = k;
            fill(out, current, pos + 1, remaining - k);
        }
        current[pos] = 0;
    }
}

pub fn is_lorentzian(f: &Polynomial) -> Result<LorentzVerdict> {
    is_lorentzian_with(f, InertiaBackend::CharPoly)
}

/// Certification with an explicit inertia backend, so independent exact
/// routes can cross-check a verdict.
pub fn is_lorentzian_with(f: &Polynomial, backend: InertiaBackend) -> Result<LorentzVerdict> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if f.is_zero() {
        return Ok(LorentzVerdict::pass());
    }
    for (e, c) in f.terms() {
        if c.is_negative() {
            return Ok(LorentzVerdict::fail(LorentzWitness::NegativeCoefficient {
                exp: e.entries().to_vec(),
                coef: format_rat(c),
            }));
        }
    }
    if let Some(w) = m_convex_witness(&SupportSet::of(f)) {
        return Ok(LorentzVerdict::fail(LorentzWitness::NotMConvex(w)));
    }
    let d = f.total_degree();
    if d >= 2 {
        for alpha in multi_indices(f.num_vars(), d - 2) {
            let quad = f.partial_derivative(&alpha);
            if quad.is_zero() {
                continue;
            }
            let hessian = hessian_of_quadratic(&quad)?;
            let inertia = inertia_with(&hessian, backend)?;
            if inertia.n_pos > 1 {
                return Ok(LorentzVerdict::fail(LorentzWitness::HessianTooPositive {
                    alpha: alpha.entries().to_vec(),
                    inertia,
                }));
            }
        }
    }
    Ok(LorentzVerdict::pass())
}

/// Bivariate covolume test: nonzero with a log-concave coefficient sequence
/// (no internal zeros). Exactly the bivariate classification.
pub fn is_covolume_bivariate(f: &Polynomial) -> Result<bool> {
    if f.num_vars() != 2 {
        return Err(Error::NotBivariateHomogeneous);
    }
    if f.is_zero() {
        return Ok(false);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotBivariateHomogeneous);
    }
    let seq = coefficient_sequence_bivariate(f)?;
    Ok(is_log_concave_no_internal_zeros(&seq))
}

/// Verdict of `is_lorentzian(normalize(flip(f, n)))`.
pub fn flip_normalize_is_lorentzian(f: &Polynomial, n: &[u32]) -> Result<LorentzVerdict> {
    flip_normalize_is_lorentzian_with(f, n, InertiaBackend::CharPoly)
}

pub fn flip_normalize_is_lorentzian_with(
    f: &Polynomial,
    n: &[u32],
    backend: InertiaBackend,
) -> Result<LorentzVerdict> {
    let flipped = f.flip(n)?;
    is_lorentzian_with(&flipped.normalize(), backend)
}
