//! Property suite over the formula language and the reduction step.

use proptest::prelude::*;

use omegacut_core::calculus::{degree, end_sequent, validate};
use omegacut_core::checker::gen::Gen;
use omegacut_core::lang::{Abstraction, Formula, FormulaClass, NumTerm};
use omegacut_core::reduction::{gate, is_cut_free, red};

fn term_strategy() -> impl Strategy<Value = NumTerm> {
    prop_oneof![
        (0u64..4).prop_map(NumTerm::numeral),
        Just(NumTerm::var("x")),
        Just(NumTerm::var("y")),
    ]
}

fn literal_strategy() -> impl Strategy<Value = Formula> {
    (term_strategy(), term_strategy(), 0u8..4, any::<bool>()).prop_map(|(a, b, k, pos)| {
        let f = match k {
            0 => Formula::eq_lit(a, b),
            1 => Formula::lt_lit(a, b),
            2 => Formula::le_lit(a, b),
            _ => Formula::set_lit("X", a),
        };
        if pos {
            f
        } else {
            f.negate()
        }
    })
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    literal_strategy().prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.clone().prop_map(|a| Formula::forall_num("x", a)),
            inner.prop_map(|a| Formula::exists_num("x", a)),
        ]
    })
}

proptest! {
    #[test]
    fn negate_is_involutive(f in formula_strategy()) {
        prop_assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn negate_preserves_rank(f in formula_strategy()) {
        prop_assert_eq!(f.negate().rank(), f.rank());
    }

    #[test]
    fn set_quantifiers_have_rank_zero(f in formula_strategy()) {
        // quantify away the only set variable the strategy uses
        let g = Formula::forall_set("X", f);
        prop_assert_eq!(g.rank(), 0);
        prop_assert_eq!(g.negate().rank(), 0);
    }

    #[test]
    fn subst_set_is_identity_when_var_absent(f in formula_strategy()) {
        let t = Abstraction::new("z", Formula::eq_lit(NumTerm::var("z"), NumTerm::Zero));
        prop_assert_eq!(f.subst_set("Zmissing", &t), f);
    }

    #[test]
    fn negate_preserves_arithmetical_class(f in formula_strategy()) {
        let before = matches!(f.classify(), FormulaClass::Literal | FormulaClass::Arithmetical)
            || f.is_arithmetical();
        let after = f.negate().is_arithmetical();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn negate_preserves_free_variables(f in formula_strategy()) {
        prop_assert_eq!(f.free_vars(), f.negate().free_vars());
    }

    #[test]
    fn closed_literal_evaluation_flips_under_negation(
        a in 0u64..6, b in 0u64..6, k in 0u8..3, pos in any::<bool>()
    ) {
        let lit = match k {
            0 => Formula::eq_lit(NumTerm::numeral(a), NumTerm::numeral(b)),
            1 => Formula::lt_lit(NumTerm::numeral(a), NumTerm::numeral(b)),
            _ => Formula::le_lit(NumTerm::numeral(a), NumTerm::numeral(b)),
        };
        let lit = if pos { lit } else { lit.negate() };
        let v = lit.eval_literal().unwrap();
        prop_assert_eq!(lit.negate().eval_literal().unwrap(), !v);
    }

    #[test]
    fn plain_generated_terms_are_cut_free_fixpoints(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let mut budget = 10u32;
        let d = g.plain(&mut budget);
        prop_assert!(validate(&d).is_ok());
        prop_assert_eq!(degree(&d).unwrap(), 0);
        prop_assert!(gate(&d).unwrap().all_true());
        prop_assert!(is_cut_free(&d).unwrap());
    }

    #[test]
    fn reduction_preserves_gate_and_sequent(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let mut budget = 10u32;
        let d = g.proper(&mut budget);
        prop_assert!(validate(&d).is_ok());
        let report = gate(&d).unwrap();
        if report.all_true() {
            let rd = red(&d).unwrap();
            prop_assert!(gate(&rd).unwrap().all_true());
            // set-sequents contract implicitly, so a discharged minor that
            // doubles as a side formula may drop out of the reduct's sequent
            prop_assert!(end_sequent(&rd).unwrap().is_subset_of(&end_sequent(&d).unwrap()));
            prop_assert_eq!(degree(&rd).unwrap(), 0);
        }
    }
}
