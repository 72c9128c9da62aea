//! Numerators of Segre zeta functions of monomial ideals, computed
//! geometrically through the adjoint polynomial of the associated cone, with
//! the rational-function structure asserted post hoc and an independent
//! quadrature oracle for smoke checks.
//!
//! For a finite exponent set F in l variables, the cone is spanned by the
//! lifted generators (1, v) and the coordinate rays e_1..e_l. The reduced
//! numerator of 1 - zeta is the de-homogenized adjoint; redundant (non
//! extreme) generators contribute one linear factor each.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{Cone, Ray};
use crate::lp::in_conic_hull;
use crate::poly::{Exponent, Polynomial};
use crate::rational::{is_integer, rat_one, to_f64, Rat};
use crate::{Error, Result};

/// A monomial ideal: the number of factors `l` and the finite set of
/// exponent vectors of its generators. Stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonomialIdealSpec {
    pub num_factors: usize,
    pub exponents: Vec<Vec<u32>>,
}

impl MonomialIdealSpec {
    pub fn new(num_factors: usize, exponents: Vec<Vec<u32>>) -> Result<Self> {
        if num_factors == 0 {
            return Err(Error::InvalidIdealSpec("need at least one factor".into()));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidIdealSpec("empty generator set".into()));
        }
        let mut exponents = exponents;
        for e in &exponents {
            if e.len() != num_factors {
                return Err(Error::InvalidIdealSpec(format!(
                    "exponent vector of length {}, expected {num_factors}",
                    e.len()
                )));
            }
            if e.iter().all(|&x| x == 0) {
                return Err(Error::InvalidIdealSpec(
                    "the zero vector is not a monomial generator".into(),
                ));
            }
        }
        exponents.sort();
        exponents.dedup();
        Ok(MonomialIdealSpec {
            num_factors,
            exponents,
        })
    }

    /// Parses the monomial text form, one generator per comma or newline,
    /// e.g. `x1^2*x3, x2`. Indices are 1-based.
    pub fn parse_monomials(input: &str, num_factors: Option<usize>) -> Result<Self> {
        let mut raw: Vec<Vec<(usize, u32)>> = Vec::new();
        let mut max_var = 0usize;
        for gen in input.split([',', '\n']) {
            let gen: String = gen.chars().filter(|c| !c.is_whitespace()).collect();
            if gen.is_empty() {
                continue;
            }
            let mut factors = Vec::new();
            for part in gen.split('*') {
                let rest = part
                    .strip_prefix('x')
                    .ok_or_else(|| Error::Parse(format!("expected x<k> factor, got `{part}`")))?;
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, k)) => (
                        i.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad index in `{part}`")))?,
                        k.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?,
                    ),
                    None => (
                        rest.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad index in `{part}`")))?,
                        1,
                    ),
                };
                if idx == 0 {
                    return Err(Error::Parse("variable indices are 1-based".into()));
                }
                max_var = max_var.max(idx);
                factors.push((idx, exp));
            }
            raw.push(factors);
        }
        let l = num_factors.unwrap_or(max_var);
        if l < max_var {
            return Err(Error::Parse(format!(
                "variable index exceeds requested factor count {l}"
            )));
        }
        let exponents = raw
            .into_iter()
            .map(|factors| {
                let mut e = vec![0u32; l];
                for (idx, k) in factors {
                    e[idx - 1] += k;
                }
                e
            })
            .collect();
        MonomialIdealSpec::new(l, exponents)
    }

    pub fn num_generators(&self) -> usize {
        self.exponents.len()
    }

    /// Codimension of the monomial subscheme: the smallest set of variables
    /// meeting the support of every generator.
    pub fn codim(&self) -> u32 {
        let l = self.num_factors;
        for size in 1..=l {
            for subset in subsets_of_size(l, size) {
                let hits_all = self.exponents.iter().all(|e| {
                    subset.iter().any(|&j| e[j] > 0)
                });
                if hits_all {
                    return size as u32;
                }
            }
        }
        l as u32
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(&mut out, &mut current, 0, n, k);
    return out;

    fn fill(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            fill(out, cur, i + 1, n, k);
            cur.pop();
        }
    }
}

/// The cone spanned by the lifted generators (1, v) and the coordinate rays.
pub fn cone_from_monomials(spec: &MonomialIdealSpec) -> Cone {
    let l = spec.num_factors;
    let mut rays = Vec::with_capacity(spec.exponents.len() + l);
    for v in &spec.exponents {
        let mut coords = Vec::with_capacity(l + 1);
        coords.push(rat_one());
        coords.extend(v.iter().map(|&x| Rat::from_integer(BigInt::from(x))));
        rays.push(Ray::new(coords).expect("lifted generator is nonzero"));
    }
    for j in 0..l {
        let mut coords = vec![Rat::zero(); l + 1];
        coords[j + 1] = rat_one();
        rays.push(Ray::new(coords).expect("unit ray"));
    }
    Cone::new(l + 1, rays).expect("nonempty generator list")
}

/// Numerators of zeta and 1 - zeta for a chosen generating set.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ZetaNumerators {
    pub num_factors: usize,
    /// Numerator of 1 - zeta for the essential generators only.
    pub r_reduced: Polynomial,
    /// Generators whose lifted ray is extreme.
    pub essential: Vec<Vec<u32>>,
    /// Generators absorbed by the others; each contributes a linear factor.
    pub redundant: Vec<Vec<u32>>,
    /// Numerator of 1 - zeta for the full generating set.
    pub r_full: Polynomial,
    /// One factor `1 + e_1k t_1 + ... + e_lk t_l` per generator.
    pub q_factors: Vec<Polynomial>,
    /// Numerator of zeta: the product of the factors minus `r_full`.
    pub p: Polynomial,
}

fn linear_factor(l: usize, v: &[u32]) -> Polynomial {
    let mut terms = vec![(Exponent::zero(l), rat_one())];
    for (j, &x) in v.iter().enumerate() {
        if x > 0 {
            terms.push((Exponent::unit(l, j), Rat::from_integer(BigInt::from(x))));
        }
    }
    Polynomial::from_terms(l, terms).expect("arity")
}

impl ZetaNumerators {
    /// Assembles numerators from an explicitly stored pair (denominator
    /// factors, numerator of zeta), for fixtures whose geometry is not
    /// computed here.
    pub fn from_stored(q_factors: Vec<Polynomial>, p: Polynomial) -> Result<Self> {
        let l = p.num_vars();
        let mut q = Polynomial::one(l);
        for f in &q_factors {
            q = q.mul(f)?;
        }
        let r_full = q.sub(&p)?;
        Ok(ZetaNumerators {
            num_factors: l,
            r_reduced: r_full.clone(),
            essential: Vec::new(),
            redundant: Vec::new(),
            r_full,
            q_factors,
            p,
        })
    }

    pub fn q(&self) -> Polynomial {
        let mut q = Polynomial::one(self.num_factors);
        for f in &self.q_factors {
            q = q.mul(f).expect("arity");
        }
        q
    }
}

/// Computes the numerators for a monomial ideal: R geometrically through the
/// adjoint of the associated cone, P arithmetically as Q - R. The structural
/// guarantees of the rational-function form are asserted rather than used,
/// so an implementation bug fails loudly.
pub fn zeta_numerators(spec: &MonomialIdealSpec) -> ZetaNumerators {
    let l = spec.num_factors;
    let cone = cone_from_monomials(spec);
    let adjoint = cone.adjoint().expect("monomial cones are full-dimensional and pointed");
    let r_reduced = adjoint.dehomogenize(0).expect("var 0 exists");

    let vertex_rays = cone.vertex_rays();
    let mut essential = Vec::new();
    let mut redundant = Vec::new();
    for v in &spec.exponents {
        let mut coords = Vec::with_capacity(l + 1);
        coords.push(rat_one());
        coords.extend(v.iter().map(|&x| Rat::from_integer(BigInt::from(x))));
        let lifted = Ray::new(coords).expect("nonzero");
        if vertex_rays.iter().any(|r| r.equivalent(&lifted)) {
            essential.push(v.clone());
        } else {
            redundant.push(v.clone());
        }
    }
    assert_eq!(
        essential.len(),
        cone.num_vertex_rays() - l,
        "coordinate rays are always extreme"
    );

    let mut r_full = r_reduced.clone();
    for v in &redundant {
        r_full = r_full.mul(&linear_factor(l, v)).expect("arity");
    }
    let q_factors: Vec<Polynomial> = spec
        .exponents
        .iter()
        .map(|v| linear_factor(l, v))
        .collect();
    let mut q = Polynomial::one(l);
    for f in &q_factors {
        q = q.mul(f).expect("arity");
    }
    let p = q.sub(&r_full).expect("arity");

    // structure forced by the rational form of the zeta function
    for (_, c) in r_full.terms() {
        assert!(is_integer(c), "R must have integer coefficients");
    }
    for (e, c) in p.terms() {
        assert!(is_integer(c), "P must have integer coefficients");
        assert!(!c.is_negative(), "negative coefficient {c} at {e} in P");
    }
    assert_eq!(p.trailing_degree(), spec.codim(), "trailing degree of P");
    assert!(
        r_full.total_degree() <= spec.num_generators() as u32 - 1,
        "degree of R exceeds #generators - 1"
    );
    let top: Polynomial = {
        let degree = spec.num_generators() as u32;
        Polynomial::from_terms(
            l,
            p.terms()
                .filter(|(e, _)| e.total() == degree)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
        .expect("arity")
    };
    let mut leading = Polynomial::one(l);
    for v in &spec.exponents {
        let form = Polynomial::from_terms(
            l,
            v.iter().enumerate().filter(|(_, &x)| x > 0).map(|(j, &x)| {
                (Exponent::unit(l, j), Rat::from_integer(BigInt::from(x)))
            }),
        )
        .expect("arity");
        leading = leading.mul(&form).expect("arity");
    }
    assert_eq!(top, leading, "leading term of P");

    ZetaNumerators {
        num_factors: l,
        r_reduced,
        essential,
        redundant,
        r_full,
        q_factors,
        p,
    }
}

fn truncate(f: &Polynomial, order: u32) -> Polynomial {
    Polynomial::from_terms(
        f.num_vars(),
        f.terms()
            .filter(|(e, _)| e.total() <= order)
            .map(|(e, c)| (e.clone(), c.clone())),
    )
    .expect("arity")
}

/// Power series of `P / prod Q_k` to the given total order, with exact
/// integer coefficients.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ZetaSeries {
    pub truncation_order: u32,
    pub coefficients: Polynomial,
}

pub fn zeta_series(nums: &ZetaNumerators, order: u32) -> ZetaSeries {
    let l = nums.num_factors;
    let mut acc = truncate(&nums.p, order);
    for factor in &nums.q_factors {
        // factor = 1 + L; invert with the truncated geometric series
        let linear = factor.sub(&Polynomial::one(l)).expect("arity");
        let mut inverse = Polynomial::one(l);
        let mut power = Polynomial::one(l);
        for _ in 0..order {
            power = truncate(&power.mul(&linear).expect("arity").neg(), order);
            if power.is_zero() {
                break;
            }
            inverse = inverse.add(&power).expect("arity");
        }
        acc = truncate(&acc.mul(&inverse).expect("arity"), order);
    }
    for (_, c) in acc.terms() {
        assert!(is_integer(c), "zeta series has integer coefficients");
    }
    ZetaSeries {
        truncation_order: order,
        coefficients: acc,
    }
}

/// Diagonal specializations `(R(t,..,t), P(t,..,t))` as univariate
/// polynomials.
pub fn diagonal(nums: &ZetaNumerators) -> (Polynomial, Polynomial) {
    let l = nums.num_factors;
    let ones = crate::matrix::RationalMatrix::from_rows(vec![vec![rat_one()]; l]);
    (
        nums.r_full.substitute_matrix(&ones).expect("shape"),
        nums.p.substitute_matrix(&ones).expect("shape"),
    )
}

fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

const HALTON_BASES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Deterministic low-discrepancy estimate of the integral representation of
/// `1 - zeta` at a positive point. Samples are drawn from the exact density
/// `l! t_1..t_l / (1 + t.a)^(l+1)` on the orthant (via ratios of
/// exponentials, inverse-transformed from a Halton sequence), so the
/// integral becomes the sampled probability that `(1, a)` lies in the cone;
/// membership is decided by exact LP on a dyadic rounding of each sample.
/// This is the only floating-point path in the crate.
pub fn integral_oracle(spec: &MonomialIdealSpec, t_point: &[Rat], samples: usize) -> f64 {
    let l = spec.num_factors;
    assert_eq!(t_point.len(), l, "one coordinate per factor");
    assert!(l + 1 <= HALTON_BASES.len(), "too many factors for the oracle");
    let t: Vec<f64> = t_point.iter().map(to_f64).collect();
    assert!(t.iter().all(|&x| x > 0.0), "oracle needs positive t");
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for v in &spec.exponents {
        let mut coords = Vec::with_capacity(l + 1);
        coords.push(rat_one());
        coords.extend(v.iter().map(|&x| Rat::from_integer(BigInt::from(x))));
        rays.push(coords);
    }
    for j in 0..l {
        let mut coords = vec![Rat::zero(); l + 1];
        coords[j + 1] = rat_one();
        rays.push(coords);
    }
    let denom = BigInt::from(1u64 << 32);
    let mut hits = 0usize;
    for k in 1..=samples {
        let z0 = -(1.0 - halton(k as u64, HALTON_BASES[0])).ln();
        let mut point = Vec::with_capacity(l + 1);
        point.push(rat_one());
        for j in 0..l {
            let zj = -(1.0 - halton(k as u64, HALTON_BASES[j + 1])).ln();
            let a = zj / (t[j] * z0);
            let scaled = (a * 4294967296.0).round();
            let num = BigInt::from(scaled.max(0.0) as u128);
            point.push(Rat::new(num, denom.clone()));
        }
        if in_conic_hull(&rays, &point) {
            hits += 1;
        }
    }
    hits as f64 / samples as f64
}

/// Exact evaluation of `R_full / prod Q_k` at a rational point.
pub fn exact_one_minus_zeta(nums: &ZetaNumerators, t_point: &[Rat]) -> Result<Rat> {
    let r = nums.r_full.eval(t_point)?;
    let mut q = rat_one();
    for f in &nums.q_factors {
        q *= f.eval(t_point)?;
    }
    Ok(r / q)
}

/// The unconditional numerator theorem, as a per-instance verdict bundle:
/// every field is expected to hold for every monomial ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TheoremSuite {
    /// R has nonnegative integer coefficients.
    pub nonneg_integer_coeffs: bool,
    /// The homogenization of R at degree #generators - 1 has M-convex support.
    pub m_convex_homogenized: bool,
    /// The exponent-reversed normalization of R is Lorentzian.
    pub flip_normalize_lorentzian: bool,
    /// The diagonal specialization of R is log-concave with no internal zeros.
    pub diagonal_log_concave: bool,
}

impl TheoremSuite {
    pub fn all_hold(&self) -> bool {
        self.nonneg_integer_coeffs
            && self.m_convex_homogenized
            && self.flip_normalize_lorentzian
            && self.diagonal_log_concave
    }
}

/// Runs the numerator-theorem suite on `R_full`.
pub fn theorem_suite(nums: &ZetaNumerators) -> Result<TheoremSuite> {
    let r = &nums.r_full;
    let nonneg_integer_coeffs = r
        .terms()
        .all(|(_, c)| is_integer(c) && !c.is_negative());

    let degree = nums.q_factors.len() as u32 - 1;
    let homogenized = r.homogenize(degree)?;
    let m_convex_homogenized =
        crate::convexity::is_m_convex(&crate::convexity::SupportSet::of(&homogenized));

    // flip against (total degree, per-variable degrees), matching the
    // exponent pattern u_0^{|i|} u_1^{r_1-i_1} .. u_l^{r_l-i_l}
    let total = r.total_degree();
    let flip_normalize_lorentzian = if r.is_zero() {
        true
    } else {
        let h = r.homogenize(total)?;
        let mut bounds = Vec::with_capacity(r.num_vars() + 1);
        bounds.push(total);
        for j in 0..r.num_vars() {
            bounds.push(r.degree_in_var(j)?);
        }
        crate::lorentz::flip_normalize_is_lorentzian(&h, &bounds)?.is_lorentzian
    };

    let (r_diag, _) = diagonal(nums);
    let seq = crate::convexity::coefficient_sequence_bivariate(&r_diag)?;
    let diagonal_log_concave = crate::convexity::is_log_concave_no_internal_zeros(&seq);

    Ok(TheoremSuite {
        nonneg_integer_coeffs,
        m_convex_homogenized,
        flip_normalize_lorentzian,
        diagonal_log_concave,
    })
}

/// The open normalization conjecture for one instance: is the normalization
/// of the degree-r homogenization of `R_reduced` Lorentzian, with r one less
/// than the number of essential generators?
pub fn conjecture_check(nums: &ZetaNumerators) -> Result<crate::lorentz::LorentzVerdict> {
    conjecture_check_with(nums, crate::signature::InertiaBackend::CharPoly)
}

pub fn conjecture_check_with(
    nums: &ZetaNumerators,
    backend: crate::signature::InertiaBackend,
) -> Result<crate::lorentz::LorentzVerdict> {
    let r = nums.essential.len().max(1) as u32 - 1;
    let homogenized = nums.r_reduced.homogenize(r)?;
    crate::lorentz::is_lorentzian_with(&homogenized.normalize(), backend)
}
