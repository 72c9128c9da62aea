//! Worked-example corpus: the polynomials, cones, and ideals whose exact
//! values anchor the test suite, plus a batch runner for the `fixtures`
//! command.



use crate::cone::{Cone, Ray};
use crate::convexity::{
    coefficient_sequence_bivariate, is_log_concave_no_internal_zeros, m_convex_witness,
    SupportSet,
};
use crate::lorentz::{is_covolume_bivariate, is_lorentzian, LorentzWitness};
use crate::matrix::RationalMatrix;
use crate::poly::{Exponent, Polynomial};
use crate::rational::{rat_int, Rat};
use crate::sectional::{restrict_pair, test_sectional, SectionalStatus};
use crate::segrezeta::{zeta_numerators, zeta_series, MonomialIdealSpec, ZetaNumerators};
use crate::signature::{hessian_of_quadratic, inertia};

fn poly(text: &str, vars: usize) -> Polynomial {
    Polynomial::parse_text(text, Some(vars)).expect("fixture parses")
}

/// Degree-9 multidegree polynomial of the triple Segre-Veronese image.
pub fn class_polynomial() -> Polynomial {
    poly(
        "2*t0^7*t1^2 + 2*t0^6*t1^3 + 2*t0^6*t1^2*t2 + 2*t0^5*t1^4 + 4*t0^5*t1^3*t2 + 6*t0^4*t1^4*t2",
        3,
    )
}

/// Its normalization, with the six stated rational coefficients.
pub fn class_polynomial_normalized() -> Polynomial {
    poly(
        "1/5040*t0^7*t1^2 + 1/2160*t0^6*t1^3 + 1/720*t0^6*t1^2*t2 + 1/1440*t0^5*t1^4 + 1/180*t0^5*t1^3*t2 + 1/96*t0^4*t1^4*t2",
        3,
    )
}

/// The failing second derivative of the normalized class polynomial.
pub fn class_polynomial_derivative() -> Polynomial {
    poly("t0^2 + 2*t0*t1 + 2*t0*t2 + t1^2 + 4*t1*t2", 3)
}

pub fn class_polynomial_hessian() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[2, 2, 2], &[2, 2, 4], &[2, 4, 0]])
}

/// Exponent reversal of the class polynomial at bounds (7,4,1).
pub fn class_polynomial_flip() -> Polynomial {
    poly(
        "6*t0^3 + 4*t0^2*t1 + 2*t0^2*t2 + 2*t0*t1^2 + 2*t0*t1*t2 + 2*t1^2*t2",
        3,
    )
}

pub fn class_polynomial_flip_normalized() -> Polynomial {
    poly(
        "t0^3 + 2*t0^2*t1 + t0^2*t2 + t0*t1^2 + 2*t0*t1*t2 + t1^2*t2",
        3,
    )
}

/// A Lorentzian cubic whose exponent reversal is not Lorentzian even after
/// normalization.
pub fn lorentzian_cubic() -> Polynomial {
    poly(
        "t0^2*t1 + t0^2*t2 + t0^2*t3 + t0*t1*t2 + t0*t1*t3 + 4*t0*t2*t3 + t1*t2*t3",
        4,
    )
}

pub fn lorentzian_cubic_flip() -> Polynomial {
    poly(
        "t2*t3 + t1*t3 + t1*t2 + t0*t3 + t0*t2 + 4*t0*t1 + t0^2",
        4,
    )
}

/// Homogenized numerator of 1 - zeta for the triple complete intersection.
pub fn complete_intersection_r_homogenized() -> Polynomial {
    poly(
        "t0^2 + t0*t1 + t0*t2 + t0*t3 + t1*t2 + t1*t3 + t2*t3",
        4,
    )
}

/// Homogenized numerator of zeta for the reducible ideal (x1x2, x1x3).
pub fn reducible_p_homogenized() -> Polynomial {
    poly("t0*t1 + t1^2 + t1*t2 + t1*t3 + t2*t3", 4)
}

/// Stored numerator of the plane-cubics zeta function.
pub fn plane_cubics_p() -> Polynomial {
    poly(
        "48*t0^5 + 1440*t0^6 + 19290*t0^7 + 142020*t0^8 + 567840*t0^9 + 1048576*t0^10",
        1,
    )
}

pub fn plane_cubics_numerators() -> ZetaNumerators {
    let q = vec![poly("1 + 4*t0", 1); 10];
    ZetaNumerators::from_stored(q, plane_cubics_p()).expect("fixture")
}

pub fn plane_cubics_r_coefficients() -> Vec<Rat> {
    [
        1i64, 40, 720, 7680, 53760, 258000, 858720, 1946790, 2807100, 2053600,
    ]
    .iter()
    .map(|&x| rat_int(x))
    .collect()
}

/// Cone over the unit square in the plane `a_0 = 1`.
pub fn square_cone() -> Cone {
    Cone::from_rays(vec![
        Ray::from_i64(&[1, 0, 0]),
        Ray::from_i64(&[1, -1, 0]),
        Ray::from_i64(&[1, 0, -1]),
        Ray::from_i64(&[1, -1, -1]),
    ])
    .expect("square cone")
}

pub fn complete_intersection_spec() -> MonomialIdealSpec {
    MonomialIdealSpec::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
        .expect("fixture spec")
}

pub fn reducible_spec() -> MonomialIdealSpec {
    MonomialIdealSpec::new(3, vec![vec![1, 1, 0], vec![1, 0, 1]]).expect("fixture spec")
}

pub fn single_monomial_spec() -> MonomialIdealSpec {
    MonomialIdealSpec::new(2, vec![vec![2, 3]]).expect("fixture spec")
}

#[derive(Clone, Debug)]
pub struct FixtureResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(), String>) -> FixtureResult {
    match run() {
        Ok(()) => FixtureResult {
            name,
            passed: true,
            detail: "ok".into(),
        },
        Err(detail) => FixtureResult {
            name,
            passed: false,
            detail,
        },
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got:?}, want {want:?}"))
    }
}

/// Runs every worked example end to end and reports one line per fixture.
pub fn run_all() -> Vec<FixtureResult> {
    vec![
        check("normalization-of-class-polynomial", || {
            expect(
                "normalize",
                class_polynomial().normalize(),
                class_polynomial_normalized(),
            )
        }),
        check("derivative-of-normalized-class-polynomial", || {
            let alpha = Exponent::from(&[5u32, 2, 0][..]);
            expect(
                "derivative",
                class_polynomial().normalize().partial_derivative(&alpha),
                class_polynomial_derivative(),
            )
        }),
        check("hessian-and-inertia", || {
            let h = hessian_of_quadratic(&class_polynomial_derivative())
                .map_err(|e| e.to_string())?;
            expect("hessian", h.clone(), class_polynomial_hessian())?;
            let i = inertia(&h).map_err(|e| e.to_string())?;
            expect("n_pos", i.n_pos, 2)?;
            expect("n_neg", i.n_neg, 1)?;
            expect("n_zero", i.n_zero, 0)
        }),
        check("normalized-class-polynomial-not-lorentzian", || {
            let v = is_lorentzian(&class_polynomial().normalize()).map_err(|e| e.to_string())?;
            expect("verdict", v.is_lorentzian, false)?;
            match v.witness {
                Some(LorentzWitness::HessianTooPositive { alpha, .. }) => {
                    expect("witness", alpha, vec![5, 2, 0])
                }
                other => Err(format!("unexpected witness {other:?}")),
            }
        }),
        check("flip-pipeline", || {
            let q = class_polynomial().flip(&[7, 4, 1]).map_err(|e| e.to_string())?;
            expect("flip", q.clone(), class_polynomial_flip())?;
            expect("normalized flip", q.normalize(), class_polynomial_flip_normalized())?;
            let v = is_lorentzian(&q.normalize()).map_err(|e| e.to_string())?;
            expect("N(Q) Lorentzian", v.is_lorentzian, true)
        }),
        check("lorentzian-cubic-and-its-flip", || {
            let a = lorentzian_cubic();
            expect(
                "A Lorentzian",
                is_lorentzian(&a).map_err(|e| e.to_string())?.is_lorentzian,
                true,
            )?;
            let flip = a.flip(&[2, 1, 1, 1]).map_err(|e| e.to_string())?;
            expect("flip of A", flip.clone(), lorentzian_cubic_flip())?;
            expect(
                "N(flip) not Lorentzian",
                is_lorentzian(&flip.normalize())
                    .map_err(|e| e.to_string())?
                    .is_lorentzian,
                false,
            )
        }),
        check("plane-cubics-numerator", || {
            let nums = plane_cubics_numerators();
            let r = nums.q().sub(&nums.p).map_err(|e| e.to_string())?;
            // the degree-10 coefficients cancel exactly
            expect("degree", r.total_degree(), 9)?;
            let seq = coefficient_sequence_bivariate(&r).map_err(|e| e.to_string())?;
            expect("coefficients", seq.clone(), plane_cubics_r_coefficients())?;
            expect("log-concave", is_log_concave_no_internal_zeros(&seq), true)
        }),
        check("complete-intersection-zeta", || {
            let nums = zeta_numerators(&complete_intersection_spec());
            expect(
                "R",
                nums.r_reduced.clone(),
                poly("1 + t0 + t1 + t2 + t0*t1 + t0*t2 + t1*t2", 3),
            )?;
            expect("P", nums.p.clone(), poly("t0*t1*t2", 3))?;
            let (diag, _) = crate::segrezeta::diagonal(&nums);
            expect("diagonal", diag, poly("1 + 3*t0 + 3*t0^2", 1))?;
            let h = poly("1 + 3*t0 + 3*t0^2", 1)
                .homogenize(2)
                .map_err(|e| e.to_string())?;
            expect(
                "homogenization not Lorentzian",
                is_lorentzian(&h).map_err(|e| e.to_string())?.is_lorentzian,
                false,
            )?;
            expect(
                "normalization Lorentzian",
                is_lorentzian(&h.normalize())
                    .map_err(|e| e.to_string())?
                    .is_lorentzian,
                true,
            )?;
            expect(
                "bivariate covolume",
                is_covolume_bivariate(&h).map_err(|e| e.to_string())?,
                true,
            )
        }),
        check("reducible-ideal-zeta", || {
            let nums = zeta_numerators(&reducible_spec());
            expect(
                "P",
                nums.p.homogenize(2).map_err(|e| e.to_string())?,
                reducible_p_homogenized(),
            )?;
            let w = m_convex_witness(&SupportSet::of(&reducible_p_homogenized()))
                .ok_or("expected an M-convexity violation")?;
            expect("witness alpha", w.alpha, vec![1, 1, 0, 0])?;
            expect("witness beta", w.beta, vec![0, 0, 1, 1])?;
            let verdict = test_sectional(&reducible_p_homogenized(), 50, 0, 6)
                .map_err(|e| e.to_string())?;
            expect(
                "sectional counterexample",
                verdict.status,
                SectionalStatus::CounterexampleFound,
            )?;
            let a = RationalMatrix::from_i64(&[&[4, 0], &[1, 0], &[0, 1], &[0, 1]]);
            let restricted = restrict_pair(&reducible_p_homogenized(), &a, true)
                .map_err(|e| e.to_string())?;
            expect("restriction", restricted, poly("5*t0^2 + 2*t0*t1 + t1^2", 2))
        }),
        check("square-cone-adjoint", || {
            let adj = square_cone().adjoint().map_err(|e| e.to_string())?;
            expect("adjoint", adj, poly("2*t0 - t1 - t2", 3))
        }),
        check("monomial-cone-adjoint", || {
            let cone = crate::segrezeta::cone_from_monomials(&complete_intersection_spec());
            let adj = cone.adjoint().map_err(|e| e.to_string())?;
            expect("adjoint", adj, complete_intersection_r_homogenized())
        }),
        check("plane-cubics-series", || {
            let s = zeta_series(&plane_cubics_numerators(), 5);
            expect(
                "t^5 coefficient",
                s.coefficients.coefficient(&Exponent::from(&[5u32][..])),
                rat_int(48),
            )
        }),
        check(
            "sectional-restriction-has-nonnegative-witness-entries",
            || {
                let verdict = test_sectional(&reducible_p_homogenized(), 20, 1, 4)
                    .map_err(|e| e.to_string())?;
                let m = verdict.counterexample.ok_or("expected a witness matrix")?;
                if m.has_negative_entry().is_some() {
                    return Err("witness matrix has a negative entry".into());
                }
                Ok(())
            },
        ),
        check("covolume-bivariate-fixture", || {
            expect(
                "5,2,1 fails",
                is_covolume_bivariate(&poly("5*t0^2 + 2*t0*t1 + t1^2", 2))
                    .map_err(|e| e.to_string())?,
                false,
            )?;
            expect(
                "uv passes",
                is_covolume_bivariate(&poly("t0*t1", 2)).map_err(|e| e.to_string())?,
                true,
            )
        }),
    ]
}
