//! Randomized invariants of the exact kernels: transform algebra, inertia
//! against independent routes, exchange-property cross checks, and the
//! bivariate classification.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use covol_core::convexity::{
    coefficient_sequence_bivariate, is_log_concave_no_internal_zeros, is_m_convex,
    is_ultra_log_concave, SupportSet,
};
use covol_core::lorentz::{is_covolume_bivariate, is_lorentzian};
use covol_core::poly::{Exponent, Polynomial};
use covol_core::rational::{rat, rat_int, Rat};
use covol_core::sectional::{test_sectional, SectionalStatus};
use covol_core::signature::{inertia, inertia_congruence, Inertia};
use covol_core::RationalMatrix;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn arb_poly(max_vars: usize) -> impl Strategy<Value = Polynomial> {
    (1..=max_vars).prop_flat_map(move |vars| {
        let term = (prop::collection::vec(0u32..=3, vars), arb_rat());
        prop::collection::vec(term, 0..6).prop_map(move |terms| {
            Polynomial::from_terms(
                vars,
                terms.into_iter().map(|(e, c)| (Exponent::new(e), c)),
            )
            .unwrap()
        })
    })
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(arb_rat(), rows * cols).prop_map(move |entries| {
        let rows_vec: Vec<Vec<Rat>> = entries.chunks(cols).map(|c| c.to_vec()).collect();
        RationalMatrix::from_rows(rows_vec)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flip_is_an_involution(f in arb_poly(4), slack in prop::collection::vec(0u32..=2, 4)) {
        let n: Vec<u32> = (0..f.num_vars())
            .map(|j| f.degree_in_var(j).unwrap() + slack[j])
            .collect();
        let once = f.flip(&n).unwrap();
        prop_assert_eq!(once.flip(&n).unwrap(), f);
    }

    #[test]
    fn homogenize_round_trip(f in arb_poly(4), extra in 0u32..=3) {
        let d = f.total_degree() + extra;
        let h = f.homogenize(d).unwrap();
        prop_assert!(h.is_homogeneous());
        if !f.is_zero() {
            prop_assert_eq!(h.total_degree(), d);
        }
        prop_assert_eq!(h.dehomogenize(0).unwrap(), f);
    }

    #[test]
    fn normalize_is_linear(f in arb_poly(3), g in arb_poly(3)) {
        prop_assume!(f.num_vars() == g.num_vars());
        let lhs = f.add(&g).unwrap().normalize();
        let rhs = f.normalize().add(&g.normalize()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_composes(f in arb_poly(3), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mid = rng.gen_range(1..=3);
        let last = rng.gen_range(1..=3);
        let a = random_matrix(&mut rng, f.num_vars(), mid);
        let b = random_matrix(&mut rng, mid, last);
        let two_step = f.substitute_matrix(&a).unwrap().substitute_matrix(&b).unwrap();
        let one_step = f.substitute_matrix(&a.matmul(&b).unwrap()).unwrap();
        prop_assert_eq!(two_step, one_step);
    }

    #[test]
    fn substitution_preserves_homogeneity(f in arb_poly(3), a in arb_matrix(3, 2)) {
        prop_assume!(f.num_vars() == 3);
        let h = f.homogenize(f.total_degree()).unwrap();
        let a4 = {
            let mut m = RationalMatrix::zero(4, 2);
            for i in 0..3 { for j in 0..2 { m.set(i + 1, j, a.get(i, j).clone()); } }
            m.set(0, 0, rat_int(1));
            m
        };
        let restricted = h.substitute_matrix(&a4).unwrap();
        prop_assert!(restricted.is_homogeneous());
        if !restricted.is_zero() {
            prop_assert_eq!(restricted.total_degree(), h.total_degree());
        }
    }

    #[test]
    fn sequence_predicates_reverse_invariant(xs in prop::collection::vec(0i64..=40, 0..8)) {
        let seq: Vec<Rat> = xs.iter().map(|&x| rat_int(x)).collect();
        let mut rev = seq.clone();
        rev.reverse();
        prop_assert_eq!(
            is_log_concave_no_internal_zeros(&seq),
            is_log_concave_no_internal_zeros(&rev)
        );
        prop_assert_eq!(is_ultra_log_concave(&seq), is_ultra_log_concave(&rev));
    }

    #[test]
    fn ultra_implies_plain_log_concavity(xs in prop::collection::vec(0i64..=40, 0..8)) {
        let seq: Vec<Rat> = xs.iter().map(|&x| rat_int(x)).collect();
        if is_ultra_log_concave(&seq) {
            prop_assert!(is_log_concave_no_internal_zeros(&seq));
        }
    }

    #[test]
    fn text_round_trip(f in arb_poly(4)) {
        let text = f.to_text();
        let back = Polynomial::parse_text(&text, Some(f.num_vars().max(1))).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn bivariate_covolume_iff_normalization_lorentzian(
        coeffs in prop::collection::vec(0i64..=12, 1..7)
    ) {
        // homogeneous bivariate with nonnegative coefficients
        let d = (coeffs.len() - 1) as u32;
        let f = Polynomial::from_terms(
            2,
            coeffs.iter().enumerate().map(|(k, &c)| {
                (Exponent::new(vec![d - k as u32, k as u32]), rat_int(c))
            }),
        )
        .unwrap();
        prop_assume!(!f.is_zero());
        let lorentzian = is_lorentzian(&f.normalize()).unwrap().is_lorentzian;
        prop_assert_eq!(lorentzian, is_covolume_bivariate(&f).unwrap());
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rat_int(rng.gen_range(-4i64..=4)));
        }
    }
    m
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> RationalMatrix {
    let mut m = RationalMatrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rat_int(rng.gen_range(-bound..=bound));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

fn random_nonsingular(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

#[test]
fn sylvester_invariance_of_inertia() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let h = random_symmetric(&mut rng, n, 10);
        let s = random_nonsingular(&mut rng, n);
        let congruent = s.transpose().matmul(&h).unwrap().matmul(&s).unwrap();
        let a = inertia(&h).unwrap();
        let b = inertia(&congruent).unwrap();
        assert_eq!(a, b, "H = {h:?}, S = {s:?}");
        // the congruence-diagonalization route agrees with the
        // characteristic-polynomial route
        assert_eq!(a, inertia_congruence(&h).unwrap());
        // sign counts add up to the rank
        assert_eq!(a.n_pos + a.n_neg, h.rank());
    }
}

#[test]
fn inertia_agrees_with_floating_point_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(7011);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let h = random_symmetric(&mut rng, n, 10);
        let exact = inertia(&h).unwrap();
        let mut dense = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                dense[(i, j)] = covol_core::rational::to_f64(h.get(i, j));
            }
        }
        let eigen = dense.symmetric_eigen();
        let mut numeric = Inertia {
            n_pos: 0,
            n_neg: 0,
            n_zero: 0,
        };
        for lambda in eigen.eigenvalues.iter() {
            if lambda.abs() < 1e-7 {
                numeric.n_zero += 1;
            } else if *lambda > 0.0 {
                numeric.n_pos += 1;
            } else {
                numeric.n_neg += 1;
            }
        }
        assert_eq!(exact, numeric, "H = {h:?}");
    }
}

/// Asymmetric exchange axiom, applied to every ordered pair. Equal
/// coordinate sums are required first, matching the homogeneous convention.
fn asymmetric_exchange_both_directions(points: &[Vec<u32>]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let total: u32 = points[0].iter().sum();
    if points.iter().any(|p| p.iter().sum::<u32>() != total) {
        return false;
    }
    let contains = |q: &[u32]| points.iter().any(|p| p == q);
    for a in points {
        for b in points {
            for i in 0..a.len() {
                if a[i] <= b[i] {
                    continue;
                }
                let ok = (0..a.len()).any(|j| {
                    if a[j] >= b[j] {
                        return false;
                    }
                    let mut moved = a.clone();
                    moved[i] -= 1;
                    moved[j] += 1;
                    contains(&moved)
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn m_convexity_matches_asymmetric_oracle_exhaustively() {
    // all lattice points of the degree-3 simplex in three variables
    let mut simplex: Vec<Vec<u32>> = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=(3 - a) {
            simplex.push(vec![a, b, 3 - a - b]);
        }
    }
    assert_eq!(simplex.len(), 10);
    let mut checked = 0usize;
    for mask in 0u32..(1 << 10) {
        if mask.count_ones() > 6 {
            continue;
        }
        let subset: Vec<Vec<u32>> = (0..10)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| simplex[i].clone())
            .collect();
        let support = SupportSet::new(subset.iter().map(|p| Exponent::new(p.clone())).collect());
        assert_eq!(
            is_m_convex(&support),
            asymmetric_exchange_both_directions(&subset),
            "disagreement on {subset:?}"
        );
        checked += 1;
    }
    assert_eq!(checked, 848);
}

#[test]
fn lorentzian_closure_properties() {
    let corpus = vec![
        covol_core::fixtures::lorentzian_cubic(),
        covol_core::fixtures::class_polynomial()
            .flip(&[7, 4, 1])
            .unwrap()
            .normalize(),
        Polynomial::parse_text("1/2*t0^2 + 3*t0*t1 + 3/2*t1^2", None).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    for f in corpus {
        let v = is_lorentzian(&f).unwrap();
        assert!(v.is_lorentzian);
        // closed under normalization
        assert!(is_lorentzian(&f.normalize()).unwrap().is_lorentzian);
        // M-convex support comes with the certificate
        assert!(is_m_convex(&SupportSet::of(&f)));
        // closed under nonnegative substitutions
        for _ in 0..10 {
            let cols = rng.gen_range(2..=3);
            let mut a = RationalMatrix::zero(f.num_vars(), cols);
            for i in 0..f.num_vars() {
                for j in 0..cols {
                    a.set(
                        i,
                        j,
                        Rat::new(
                            rng.gen_range(0i64..=6).into(),
                            rng.gen_range(1i64..=3).into(),
                        ),
                    );
                }
            }
            let g = f.substitute_matrix(&a).unwrap();
            assert!(
                is_lorentzian(&g).unwrap().is_lorentzian,
                "substitution broke Lorentzianity: {a:?}"
            );
        }
        // no sectional counterexample can exist
        let verdict = test_sectional(&f, 60, 31337, 5).unwrap();
        assert_eq!(verdict.status, SectionalStatus::NoCounterexampleFound);
    }
}

#[test]
fn bivariate_coefficient_sequences_include_gaps() {
    let f = Polynomial::from_terms(
        2,
        vec![
            (Exponent::new(vec![3, 0]), rat_int(1)),
            (Exponent::new(vec![0, 3]), rat_int(1)),
        ],
    )
    .unwrap();
    let seq = coefficient_sequence_bivariate(&f).unwrap();
    assert_eq!(seq, vec![rat_int(1), rat_int(0), rat_int(0), rat_int(1)]);
    assert!(!is_log_concave_no_internal_zeros(&seq));
    assert!(!is_covolume_bivariate(&f).unwrap());
}
