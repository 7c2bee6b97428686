use infkl::emit::{from_json, to_json};
use infkl::kernels::ClassVar;
use infkl::symfn::{complete_sym, elem_sym, power_sum};
use infkl::{ClassPoly, GradedPoly, Q2mScalar, SegreContext, SymbolKind, VarId};
use proptest::prelude::*;

const M: u32 = 2;

fn scalar() -> impl Strategy<Value = Q2mScalar> {
    (-50i64..50, -50i64..50).prop_map(|(a, b)| Q2mScalar::new(a, b, M))
}

fn graded() -> impl Strategy<Value = GradedPoly> {
    let var = prop_oneof![
        (1u32..4).prop_map(VarId::x),
        (1u32..3).prop_map(VarId::y),
        (1u32..3).prop_map(VarId::tau),
        Just(VarId::u()),
    ];
    let term = (-9i64..9, any::<bool>(), prop::collection::vec((var, 0i64..4), 0..3));
    prop::collection::vec(term, 0..6).prop_map(|terms| {
        terms.into_iter().fold(GradedPoly::zero(M), |acc, (c, al, pairs)| {
            let t = GradedPoly::term(c, pairs, M);
            &acc + &if al { t.times_alpha() } else { t }
        })
    })
}

fn class_poly() -> impl Strategy<Value = ClassPoly> {
    let var = prop_oneof![
        (1u32..3).prop_map(ClassVar::Tau),
        (0i64..4, -4i64..6).prop_map(|(s, k)| ClassVar::sym(SymbolKind::A, s, k)),
        (0i64..3, -4i64..6).prop_map(|(s, k)| ClassVar::sym(SymbolKind::C, s, k)),
    ];
    let term = (-9i64..9, any::<bool>(), prop::collection::vec((var, 1i64..3), 0..3));
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms.into_iter().fold(ClassPoly::zero(M), |acc, (c, al, pairs)| {
            let t = ClassPoly::term(c, pairs, M);
            &acc + &if al { t.times_alpha() } else { t }
        })
    })
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Q2mScalar::one(M), a.clone());
        prop_assert!((&Q2mScalar::alpha(M) * &Q2mScalar::alpha(M)).is_zero());
    }

    #[test]
    fn poly_ring_axioms(p in graded(), q in graded(), r in graded()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(p.times_alpha().times_alpha(), GradedPoly::zero(M));
        prop_assert_eq!(GradedPoly::from_parts(&p.alpha_free_part(), &p.alpha_part()), p);
    }

    #[test]
    fn graded_text_round_trip(p in graded()) {
        prop_assert_eq!(&GradedPoly::parse(&p.to_string(), M).unwrap(), &p);
        prop_assert_eq!(&GradedPoly::parse(&p.to_factored_text(), M).unwrap(), &p);
        prop_assert_eq!(from_json::<VarId>(&to_json(&p)).unwrap(), p);
    }

    #[test]
    fn class_text_round_trip(c in class_poly()) {
        prop_assert_eq!(&ClassPoly::parse(&c.to_string(), M).unwrap(), &c);
        prop_assert_eq!(from_json::<ClassVar>(&to_json(&c)).unwrap(), c);
    }

    #[test]
    fn exact_division_inverts_multiplication(p in graded(), q in graded()) {
        let q = q.alpha_free_part();
        prop_assume!(!q.is_zero());
        let prod = &p * &q;
        prop_assert_eq!(prod.div_exact(&q).unwrap(), p);
    }

    #[test]
    fn segre_is_stable_under_zero_roots(e in 1u32..4, k in -4i64..5) {
        let ctx = SegreContext::new(M).unwrap();
        let mut roots: Vec<GradedPoly> = (1..=e).map(|i| GradedPoly::var(VarId::x(i), M)).collect();
        let base = ctx.segre_formula(k, &roots).unwrap();
        roots.push(GradedPoly::zero(M));
        prop_assert_eq!(&ctx.segre_formula(k, &roots).unwrap(), &base);
        prop_assert_eq!(base.alpha_free_part(), complete_sym(k, &roots, M));
    }

    #[test]
    fn symmetric_functions_generate_each_other(n in 0u32..4, k in 1i64..6) {
        // sum_j (-1)^j e_j h_{k-j} = 0 for k >= 1
        let roots: Vec<GradedPoly> = (1..=n).map(|i| GradedPoly::var(VarId::x(i), M)).collect();
        let mut acc = GradedPoly::zero(M);
        for j in 0..=k {
            let t = &elem_sym(j, &roots, M) * &complete_sym(k - j, &roots, M);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        prop_assert!(acc.is_zero());
        let p = power_sum(k, &roots, M);
        let direct = roots.iter().fold(GradedPoly::zero(M), |a, r| &a + &r.pow(k as u32));
        prop_assert_eq!(p, direct);
    }
}
