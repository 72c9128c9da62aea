//! Exact eigenvalue sign counts (inertia) of symmetric rational matrices.
//!
//! Two independent exact routes are provided: sign alternations in the exact
//! characteristic polynomial (valid because symmetric matrices are
//! real-rooted), and congruence diagonalization. The first is the default;
//! the second exists as a cross-check for the most correctness-critical
//! primitive in the crate.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::RationalMatrix;
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::{Error, Result};

/// Eigenvalue sign counts of a symmetric matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

/// Which exact algorithm computes the inertia.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InertiaBackend {
    CharPoly,
    Congruence,
}

/// Matrix of second partials of a quadratic form (or the zero polynomial).
pub fn hessian_of_quadratic(f: &Polynomial) -> Result<RationalMatrix> {
    let n = f.num_vars();
    if f.is_zero() {
        return Ok(RationalMatrix::zero(n, n));
    }
    if !f.is_homogeneous() || f.total_degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    let mut h = RationalMatrix::zero(n, n);
    for (e, c) in f.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| e.get(i) > 0).collect();
        match vars.as_slice() {
            [i] => h.set(*i, *i, c * Rat::from_integer(2.into())),
            [i, j] => {
                h.set(*i, *j, c.clone());
                h.set(*j, *i, c.clone());
            }
            _ => unreachable!("degree-2 exponent with more than two variables"),
        }
    }
    Ok(h)
}

/// Exact inertia by counting sign alternations in the characteristic
/// polynomial after stripping the zero-eigenvalue block. Descartes' rule is
/// exact here since all roots are real.
pub fn inertia(h: &RationalMatrix) -> Result<Inertia> {
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let coeffs = h.char_poly()?;
    let n = h.rows();
    let n_zero = coeffs.iter().take_while(|c| c.is_zero()).count();
    let nonzero_dim = n - n_zero;
    let mut n_pos = 0;
    let mut last_sign = 0i8;
    for c in &coeffs[n_zero..] {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { -1 } else { 1 };
        if last_sign != 0 && sign != last_sign {
            n_pos += 1;
        }
        last_sign = sign;
    }
    Ok(Inertia {
        n_pos,
        n_neg: nonzero_dim - n_pos,
        n_zero,
    })
}

/// Exact inertia by symmetric Gaussian elimination (congruence
/// diagonalization). Independent of the characteristic-polynomial route.
pub fn inertia_congruence(h: &RationalMatrix) -> Result<Inertia> {
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut m = h.clone();
    let mut n = m.rows();
    let mut out = Inertia {
        n_pos: 0,
        n_neg: 0,
        n_zero: 0,
    };
    while n > 0 {
        let diag_pivot = (0..n).find(|&i| !m.get(i, i).is_zero());
        let pivot = match diag_pivot {
            Some(i) => i,
            None => {
                let off = (0..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m.get(i, j).is_zero());
                match off {
                    None => {
                        // remaining block is zero
                        out.n_zero += n;
                        break;
                    }
                    Some((i, j)) => {
                        // congruence: add row/column j to row/column i,
                        // making the (i,i) entry 2*m[i][j] != 0
                        for k in 0..n {
                            let v = m.get(i, k) + m.get(j, k);
                            m.set(i, k, v);
                        }
                        for k in 0..n {
                            let v = m.get(k, i) + m.get(k, j);
                            m.set(k, i, v);
                        }
                        i
                    }
                }
            }
        };
        let p = m.get(pivot, pivot).clone();
        if p.is_positive() {
            out.n_pos += 1;
        } else {
            out.n_neg += 1;
        }
        // Schur complement on the remaining indices
        let rest: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
        let mut next = RationalMatrix::zero(n - 1, n - 1);
        for (a, &i) in rest.iter().enumerate() {
            for (b, &j) in rest.iter().enumerate() {
                let v = m.get(i, j) - m.get(i, pivot) * m.get(pivot, j) / &p;
                next.set(a, b, v);
            }
        }
        m = next;
        n -= 1;
    }
    Ok(out)
}

pub fn inertia_with(h: &RationalMatrix, backend: InertiaBackend) -> Result<Inertia> {
    match backend {
        InertiaBackend::CharPoly => inertia(h),
        InertiaBackend::Congruence => inertia_congruence(h),
    }
}
