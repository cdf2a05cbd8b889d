use affkl::cartan::AffineWeight;
use affkl::crdaha::{self, Multipartition};
use affkl::hecke::{KlTable, ModuleType};
use affkl::koszul::{hilbert_minus, hilbert_plus};
use affkl::poly::{GradedRank, IntLaurentPoly};
use affkl::weyl::{CosetEnd, CoxeterGroup, ParabolicType, WeylElement};
use proptest::prelude::*;

fn a2t() -> CoxeterGroup {
    CoxeterGroup::parse("A2~").unwrap()
}

fn word(labels: std::ops::Range<u8>, max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(labels, 0..max)
}

fn poly() -> impl Strategy<Value = IntLaurentPoly> {
    prop::collection::vec((-4i32..5, -5i64..6), 0..5).prop_map(|t| IntLaurentPoly::from_terms(&t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dot_action_is_an_action(a in word(0..3, 6), b in word(0..3, 6), fin in prop::collection::vec(-5i64..6, 2), k in -6i64..4) {
        let g = a2t();
        let d = g.datum();
        let (x, y) = (g.element(&a).unwrap(), g.element(&b).unwrap());
        let lam = AffineWeight::from_ints(0, &fin, k);
        let lhs = d.dot_action(&g.multiply(&x, &y), &lam).unwrap();
        let rhs = d.dot_action(&x, &d.dot_action(&y, &lam).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(d.dot_action(&WeylElement::identity(), &lam).unwrap(), lam);
    }

    #[test]
    fn length_changes_by_one(a in word(0..3, 8), s in 0u8..3) {
        let g = a2t();
        let x = g.element(&a).unwrap();
        let sx = g.lmul(s, &x);
        prop_assert_eq!(sx.len().abs_diff(x.len()), 1);
        prop_assert_eq!(sx.len() < x.len(), g.is_left_descent(s, &x));
        prop_assert_eq!(&g.lmul(s, &sx), &x);
        prop_assert_eq!(g.multiply(&x, &g.inverse(&x)), WeylElement::identity());
    }

    #[test]
    fn bruhat_respects_subwords(a in word(0..3, 7), mask in any::<u8>()) {
        let g = a2t();
        let w = g.element(&a).unwrap();
        let sub: Vec<u8> = w.word().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
        prop_assert!(g.bruhat_leq(&g.element(&sub).unwrap(), &w));
    }

    #[test]
    fn coset_reps_are_idempotent(a in word(0..3, 7), j in 0u8..3) {
        let g = a2t();
        let mu = ParabolicType::new([j]);
        let x = g.element(&a).unwrap();
        let lo = g.coset_rep(&x, &mu, CosetEnd::Min).unwrap();
        let hi = g.coset_rep(&x, &mu, CosetEnd::Max).unwrap();
        prop_assert!(g.is_min_rep(&lo, &mu));
        prop_assert!(g.is_max_rep(&hi, &mu));
        prop_assert_eq!(&g.coset_rep(&lo, &mu, CosetEnd::Min).unwrap(), &lo);
        prop_assert_eq!(&g.coset_rep(&hi, &mu, CosetEnd::Min).unwrap(), &lo);
        prop_assert_eq!(hi.len(), lo.len() + 1);
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.subs_neg().subs_neg(), a);
    }

    #[test]
    fn graded_rank_round_trip(shifts in prop::collection::vec(-6i64..7, 0..8), k in -3i64..4) {
        let r = GradedRank::new(shifts);
        prop_assert_eq!(&GradedRank::from_poly(&r.to_poly()).unwrap(), &r);
        prop_assert_eq!(r.shifted(k).shifted(-k), r.clone());
        prop_assert_eq!(r.union(&r).minus(&r), Some(r.clone()));
    }

    #[test]
    fn residue_counts_add_up(level in 1usize..3, n in 0usize..5, e in 2usize..4, pick in any::<prop::sample::Index>()) {
        let all = Multipartition::all(level, n);
        let l = pick.get(&all);
        let nu: Vec<usize> = l.components().iter().map(|p| p.len().max(1)).collect();
        let counts = crdaha::node_count_nu(l, &nu, e).unwrap();
        prop_assert_eq!(counts.iter().sum::<usize>(), n);
    }

    #[test]
    fn linkage_invariants_hold(tuple in prop::collection::vec(0i64..5, 2..5), e in 2usize..5, cut in 0usize..3) {
        // k_invariants rejects tuples violating k_i = m_i + n_i
        let m = tuple.len();
        let c = cut.min(m - 1);
        let nu: Vec<usize> = if c == 0 { vec![m] } else { vec![c, m - c] };
        let k = crdaha::k_invariants(&tuple, &nu, e).unwrap();
        prop_assert_eq!(k.composition.iter().sum::<i64>(), m as i64);
        prop_assert!(k.composition.iter().all(|&x| x >= 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn inversion_holds(a in word(0..3, 5), fam in 0usize..2) {
        let g = a2t();
        let w = g.element(&a).unwrap();
        let kind = [ModuleType::Q, ModuleType::MinusOne][fam];
        let t = KlTable::new(&g, ParabolicType::empty(), kind).unwrap();
        prop_assert!(t.verify_inversion(&w).unwrap().0);
    }

    #[test]
    fn hilbert_matrices_are_symmetric(a in word(0..3, 5)) {
        let g = a2t();
        let w = g.element(&a).unwrap();
        let plus = hilbert_plus(&KlTable::ordinary(&g), &w).unwrap();
        let minus = hilbert_minus(&KlTable::new(&g, ParabolicType::empty(), ModuleType::MinusOne).unwrap(), &w).unwrap();
        prop_assert!(plus.is_symmetric());
        prop_assert!(minus.is_symmetric());
    }
}
