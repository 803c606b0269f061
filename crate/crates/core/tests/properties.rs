use std::collections::BTreeMap;

use paramodular_core::exactalg::{EulerFactor, QSpec, Rational, Relations, RingElt};
use paramodular_core::invariants::suite::{ram_ps, sc, st_ram, st_unr, unr_ps};
use paramodular_core::invariants::{
    conductor_formula, epsilon_formula, paramodular_euler_factor, paramodular_invariants,
};
use paramodular_core::localdata::{
    atkin_lehner_epsilon, conductor, gl2_euler_factor, hecke_eigenvalue, BaseField, Char, GL2Rep, InducingData,
};
use paramodular_core::packets::{build_split_parameter, check_similitude, classify_packet, Matrix2};
use paramodular_core::quadfield::{paramodular_level, splitting_type, valuation, PlaceId, QuadField, SplitType};
use paramodular_core::transfer::{
    archimedean_check, archimedean_check_with_weight, global_report, prime_invariants, shift_identity,
    HilbertFormInput, PlaceInput,
};
use proptest::prelude::*;

const VARS: [&str; 10] = ["a", "b", "c", "d", "x", "y", "z", "w", "s", "t"];

fn monomial() -> impl Strategy<Value = RingElt> {
    (
        -9i64..=9,
        1i64..=4,
        prop::collection::vec((0..VARS.len(), -5i64..=5), 0..3),
    )
        .prop_map(|(n, d, vs)| {
            vs.into_iter()
                .fold(RingElt::from_ratio(n, d), |acc, (i, e)| &acc * &RingElt::var_pow(VARS[i], e))
        })
}

fn elt() -> impl Strategy<Value = RingElt> {
    prop::collection::vec(monomial(), 0..4).prop_map(|ms| ms.into_iter().sum())
}

/// Elements that may also involve `r = q^{1/2}`.
fn elt_r() -> impl Strategy<Value = RingElt> {
    (elt(), -6i64..=6, elt()).prop_map(|(a, k, b)| &(&a * &RingElt::q_half_pow(k)) + &b)
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(a in elt(), b in elt(), c in elt()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normal_form_is_canonical(a in elt_r()) {
        let text = a.to_string();
        let back: RingElt = text.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
        prop_assert!(a.terms().all(|(_, c)| c != &Rational::from_integer(0.into())));
    }

    #[test]
    fn relations_are_idempotent(a in elt_r(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let rel = Relations::prime(p).with_square("x", rational(1, 1));
        let once = rel.apply(&a);
        prop_assert_eq!(rel.apply(&once), once.clone());
        for (m, _) in once.terms() {
            prop_assert!((0..=1).contains(&m.exponent("r")));
            prop_assert!((0..=1).contains(&m.exponent("x")));
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(a in elt(), b in elt(), n in 1i64..=5, d in 1i64..=5, v in monomial()) {
        let mut bind = BTreeMap::new();
        bind.insert("a".to_string(), RingElt::from_ratio(n, d));
        bind.insert("b".to_string(), v.clone());
        prop_assume!(!v.is_zero());
        let s = |e: &RingElt| e.substitute(&bind).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn reduce_sqrt_commutes_with_products(a in elt_r(), b in elt_r(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let r = |e: &RingElt| e.reduce_sqrt(p);
        prop_assert_eq!(r(&(&a * &b)), r(&(&r(&a) * &r(&b))));
        prop_assert_eq!(r(&(&a + &b)), &r(&a) + &r(&b));
    }

    #[test]
    fn base_change_embedding_only_uses_multiples_of_f(
        c1 in elt(), c2 in elt(), f in 1u32..=2,
    ) {
        let base = EulerFactor::new(vec![RingElt::one(), c1, c2], QSpec::Symbolic).unwrap();
        let e = base.embed_base_change(f, QSpec::Symbolic).unwrap();
        prop_assert!(e.coeff(0).is_one());
        for (i, c) in e.coeffs().iter().enumerate() {
            if i % f as usize != 0 {
                prop_assert!(c.is_zero());
            }
        }
    }
}

fn squarefree() -> impl Strategy<Value = i64> {
    (2i64..200).prop_filter("squarefree", |d| (2..=14i64).all(|k| d % (k * k) != 0))
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn place_data_shapes(d in squarefree(), p in small_prime()) {
        let field = QuadField::new(d).unwrap();
        let disc = if d % 4 == 1 { d as u64 } else { 4 * d as u64 };
        prop_assert_eq!(field.discriminant(), disc);
        let pd = splitting_type(&field, p).unwrap();
        let expected = match pd.split_type {
            SplitType::Split => (1, 1, 0, 2),
            SplitType::Inert => (2, 1, 0, 1),
            SplitType::Ramified => (1, 2, valuation(disc, p), 1),
        };
        prop_assert_eq!((pd.f, pd.e, pd.d, pd.num_places), expected);
        prop_assert_eq!(pd.split_type == SplitType::Ramified, pd.d >= 1);
    }

    #[test]
    fn level_is_additive(d in squarefree(), p in small_prime(), v1 in 0u32..4, v2 in 0u32..4) {
        let field = QuadField::new(d).unwrap();
        let pd = splitting_type(&field, p).unwrap();
        let base = paramodular_level(&field, &BTreeMap::new()).unwrap();
        prop_assert_eq!(base.valuation(p), 2 * pd.d);
        let mut vals = BTreeMap::new();
        vals.insert(PlaceId::new(p, 0), v1);
        if pd.num_places == 2 {
            vals.insert(PlaceId::new(p, 1), v2);
        }
        let n = paramodular_level(&field, &vals).unwrap();
        let extra: u32 = vals.values().map(|v| pd.f * v).sum();
        prop_assert_eq!(n.valuation(p), 2 * pd.d + extra);
    }
}

/// GL(2) representations with trivial central character, drawn from the
/// suite constructors.
fn rep() -> impl Strategy<Value = GL2Rep> {
    let sign = prop::sample::select(vec![1i8, -1]);
    prop_oneof![
        Just(unr_ps("α")),
        (1u32..=3, sign.clone()).prop_map(|(c, s)| ram_ps(&format!("χ{c}{s}"), c, s)),
        prop::sample::select(vec![1i64, -1]).prop_map(|v| st_unr("ξ", RingElt::from_int(v))),
        (1u32..=2, sign.clone(), prop::sample::select(vec![1i64, -1])).prop_map(|(c, s, v)| st_ram(&format!("η{c}{s}{v}"), c, s, v)),
        (2u32..=5, sign).prop_map(|(c, s)| sc(&format!("π{c}{s}"), c, s)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn local_formulas_are_consistent(tau in rep()) {
        let f = gl2_euler_factor(&tau, BaseField::F, QSpec::Symbolic).unwrap();
        prop_assert_eq!(conductor(&tau) == 0, f.degree() == 2);
        let eps = atkin_lehner_epsilon(&tau).unwrap();
        prop_assert!((&eps * &eps).is_one());
        if !tau.is_unramified() {
            let steinberg_unr = matches!(&tau, GL2Rep::SteinbergTwist { alpha } if alpha.cond == 0);
            prop_assert!(steinberg_unr || hecke_eigenvalue(&tau, BaseField::F).is_zero());
        }
    }

    #[test]
    fn split_swap_symmetry(p1 in rep(), p2 in rep()) {
        let a = InducingData::split(p1.clone(), p2.clone());
        let b = InducingData::split(p2, p1);
        let (pa, pb) = (classify_packet(&a).unwrap(), classify_packet(&b).unwrap());
        let mut la = pa.group_labels.clone();
        let mut lb = pb.group_labels.clone();
        la.sort();
        lb.sort();
        prop_assert_eq!(la, lb);
        prop_assert_eq!(pa.constituents.iter().filter(|c| c.group.is_generic()).count(), 1);
        let (ia, ib) = (paramodular_invariants(&a).unwrap(), paramodular_invariants(&b).unwrap());
        prop_assert_eq!(ia.group, ib.group);
        prop_assert_eq!((&ia.lambda_pi, &ia.mu_pi, &ia.eps_pi), (&ib.lambda_pi, &ib.mu_pi, &ib.eps_pi));
        prop_assert_eq!(conductor_formula(&a), ia.n_pi);
        prop_assert_eq!(epsilon_formula(&a).unwrap(), ia.eps_pi.clone());
        prop_assert!(ia.eps_pi.as_sign().is_some());
        if ia.group.is_supercuspidal() {
            prop_assert!(ia.lambda_pi.is_zero());
            prop_assert_eq!(ia.mu_pi, -RingElt::q_pow(2));
        }
    }

    #[test]
    fn supercuspidal_rows_have_trivial_factor(c1 in 2u32..=4, c2 in 2u32..=4, s in prop::sample::select(vec![1i8, -1])) {
        let inv = paramodular_invariants(&InducingData::split(sc("π_1", c1, s), sc("π_2", c2, 1))).unwrap();
        let f = paramodular_euler_factor(inv.n_pi, &inv.eps_pi, &inv.lambda_pi, &inv.mu_pi, QSpec::Symbolic);
        prop_assert!(f.is_one());
    }

    #[test]
    fn split_parameter_is_a_similitude(a in elt(), b in elt(), c in elt(), b2 in elt(), c2 in elt(), k in 1i64..=4) {
        let m1 = Matrix2::new(a, b, c, RingElt::var("d"));
        let a2 = RingElt::from_int(k);
        let d2 = &(&m1.det() + &(&b2 * &c2)) * &RingElt::from_ratio(1, k);
        let m2 = Matrix2::new(a2, b2, c2, d2);
        let g = build_split_parameter(&m1, &m2).unwrap();
        prop_assert_eq!(check_similitude(&g), Some(m1.det()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shift_identity_on_rational_eigenvalues(
        k in 2i64..=8, val in 0u32..=4, p in small_prime(),
        l in -50i64..=50, m in -50i64..=50, e in prop::sample::select(vec![1i64, -1]),
    ) {
        let check = shift_identity(k, val, &RingElt::from_int(l), &RingElt::from_int(m), &RingElt::from_int(e), p);
        prop_assert!(check.is_ok());
    }

    #[test]
    fn archimedean_ratio(n in 0u32..=6, s0 in 0.6f64..4.0, step in 0.1f64..2.0) {
        let samples = [s0, s0 + step, s0 + 2.0 * step, s0 + 3.5 * step];
        let a = archimedean_check(n, &samples, 1e-9).unwrap();
        prop_assert!(a.ok);
        let expected = (2.0 * std::f64::consts::PI).powi(-(n as i32));
        prop_assert!(((a.constant - expected) / expected).abs() < 1e-9);
        let wrong = archimedean_check_with_weight(n, i64::from(n) + 3, &samples, 1e-9).unwrap();
        prop_assert!(!wrong.ok);
    }

    /// At a split good prime, Hecke-eigenvalue input and Satake-parameter
    /// input give the same invariants once `lambda_w = p^{1/2}(a + a^{-1})`.
    #[test]
    fn split_good_prime_matches_satake_form(p in prop::sample::select(vec![11u64, 19, 29, 31, 41]), n in 0u32..4) {
        let field = QuadField::new(5).unwrap();
        let mut hecke = HilbertFormInput::new(field, n);
        let lam = |s: &str| &RingElt::q_half_pow(1) * &(&RingElt::var(s) + &RingElt::var_pow(s, -1));
        hecke.local_data.insert(p, vec![PlaceInput::unramified(lam("a")), PlaceInput::unramified(lam("b"))]);
        let mut satake = HilbertFormInput::new(field, n);
        let ps = |s: &str| PlaceInput::with_rep(GL2Rep::principal_series(Char::unramified_symbol(s)).unwrap());
        satake.local_data.insert(p, vec![ps("a"), ps("b")]);
        let (h, s) = (prime_invariants(&hecke, p).unwrap(), prime_invariants(&satake, p).unwrap());
        prop_assert_eq!(&h.lambda_p, &s.lambda_p);
        prop_assert_eq!(&h.mu_p, &s.mu_p);
        prop_assert!(h.theorem_agrees && s.theorem_agrees);
        prop_assert_eq!(h.eps_p, None);
    }

    #[test]
    fn report_shape(n in 0u32..10, v2 in 0u32..3, v3 in 0u32..3) {
        let field = QuadField::new(5).unwrap();
        let mut input = HilbertFormInput::new(field, n);
        input.local_data.insert(2, vec![PlaceInput::unknown(v2)]);
        input.local_data.insert(3, vec![PlaceInput::unknown(v3)]);
        let r = global_report(&input, &[7, 11]).unwrap();
        prop_assert_eq!(r.k, n + 2);
        let level = paramodular_level(&field, &input.level_vals()).unwrap();
        for o in &r.per_prime {
            prop_assert_eq!(o.val_p_n(), level.valuation(o.p()));
            if let paramodular_core::transfer::PrimeOutcome::Resolved(rec) = o {
                prop_assert_eq!(rec.eps_p.is_some(), rec.val_p_n >= 1);
                if let Some(e) = &rec.eps_p {
                    prop_assert!(e.as_sign().is_some());
                }
            }
        }
    }
}
