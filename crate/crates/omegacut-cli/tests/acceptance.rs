//! End-to-end acceptance gate. One test per criterion; each prints a single
//! pass line on success (run with `--nocapture` to see them).

use omegacut_core::calculus::{
    degree, end_sequent, is_proper, subst_num_derivation, validate, CalcError, Derivation,
    ExtendedSymbol, PremiseFamily, ProperViolation, D,
};
use omegacut_core::checker::gen::Gen;
use omegacut_core::checker::{check_local, default_samples};
use omegacut_core::corpus::{sample_proofs, scenario, ScenarioName};
use omegacut_core::lang::{Abstraction, Formula, NumTerm, Sequent};
use omegacut_core::notation::{child, expand, make_index, rule_of, ChildIndex, NotError, TreeView};
use omegacut_core::reduction::{gate, is_cut_free, normalize, prepare, red};

use omegacut_cli::sexp::{parse_derivation_unchecked, render};

fn pass(n: usize, title: &str) {
    println!("acceptance {n} ({title}): pass");
}

#[test]
fn acceptance_1_golden_reductions() {
    for name in ScenarioName::ALL {
        let s = scenario(name);
        let tp = rule_of(&s.input).unwrap();
        assert_eq!(tp, s.expected_tp, "{}: last symbol", name.label());
        let got = red(&s.input).unwrap();
        assert_eq!(got, s.expected_red, "{}: reduct", name.label());
    }
    pass(1, "golden reductions");
}

/// The index the reduction step descends along: 0 for a repetition symbol,
/// the canonical witness pair for an omega-tilde symbol.
fn canonical_index(d: &D) -> ChildIndex {
    match rule_of(d).unwrap() {
        ExtendedSymbol::RepS => ChildIndex::Nat(0),
        ExtendedSymbol::OmegaTildeS(y, negf) => {
            let zero = child(d, &ChildIndex::Nat(0)).unwrap();
            let q = make_index(Derivation::col(zero), &y, &negf.negate()).unwrap();
            ChildIndex::Omega(q)
        }
        other => panic!("unexpected last symbol {}", other.label()),
    }
}

#[test]
fn acceptance_2_descent() {
    for name in ScenarioName::ALL {
        let s = scenario(name);
        let i = canonical_index(&s.input);
        let via_child = child(&s.input, &i).unwrap();
        let via_red = red(&s.input).unwrap();
        assert_eq!(via_red, via_child, "{}: descent identity", name.label());
    }
    pass(2, "reduction descends to an immediate subderivation");
}

fn normalizes_cleanly(d: &D) {
    let p = prepare(d).unwrap();
    let t = normalize(&p, 10_000).unwrap();
    assert!(!t.budget_exhausted, "budget exhausted");
    assert!(is_cut_free(&t.final_term).unwrap());
    let seq = end_sequent(&p).unwrap();
    for (before, after) in t.pairs() {
        assert_eq!(end_sequent(&before).unwrap(), seq);
        assert_eq!(end_sequent(&after).unwrap(), seq);
    }
}

#[test]
fn acceptance_3_end_to_end_cut_elimination() {
    let (_, impredicative) = sample_proofs()
        .into_iter()
        .find(|(n, _)| *n == "impredicative-cut")
        .unwrap();
    normalizes_cleanly(&impredicative);

    let g0 = Formula::eq_lit(NumTerm::Zero, NumTerm::Zero);
    let small = Derivation::cut(
        g0.clone(),
        Derivation::ax(Sequent::singleton(g0.clone())),
        Derivation::ax(Sequent::from_formulas([g0.clone(), g0.negate()])),
    );
    normalizes_cleanly(&small);
    pass(3, "end-to-end cut elimination");
}

fn population(count: u64, budget: u32) -> Vec<D> {
    (0..count)
        .map(|seed| {
            let mut g = Gen::new(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(seed));
            let mut b = budget;
            g.proper(&mut b)
        })
        .collect()
}

#[test]
fn acceptance_4_local_correctness_suite() {
    let pop = population(1000, 12);
    for (i, d) in pop.iter().enumerate() {
        validate(d).unwrap_or_else(|e| panic!("seed {i}: {e}"));
        let v = check_local(d, &default_samples(d));
        assert!(
            v.overall,
            "seed {i}: {:?}",
            v.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
    }
    pass(4, "local correctness on 1000 generated derivations");
}

#[test]
fn acceptance_5_gate_consistency() {
    let pop = population(1000, 12);
    let mut eligible = 0usize;
    for (i, d) in pop.iter().enumerate() {
        let three = is_proper(d).is_ok()
            && end_sequent(d).unwrap().is_pi1()
            && degree(d).unwrap() == 0;
        if !three {
            continue;
        }
        eligible += 1;
        let report = gate(d).unwrap_or_else(|e| panic!("seed {i}: {e}"));
        assert!(report.tp_ok, "seed {i}: gate-eligible term has a cut or omega root");
        let tp = rule_of(d).unwrap();
        assert!(
            !matches!(tp, ExtendedSymbol::CutS(_) | ExtendedSymbol::OmegaS(_)),
            "seed {i}"
        );
    }
    assert!(eligible >= 100, "population too skewed: {eligible} eligible");
    pass(5, "gate-eligible terms never expose a cut or omega root");
}

/// Node-for-node comparison between a stored introduction-only term and its
/// expanded view; truncated view nodes match anything below them.
fn view_matches(d: &D, v: &TreeView) -> bool {
    if v.sequent != end_sequent(d).unwrap() {
        return false;
    }
    let label_ok = matches!(
        (&**d, &v.label),
        (Derivation::Ax(_), ExtendedSymbol::AxS(_))
            | (Derivation::AndI(..), ExtendedSymbol::AndS(_))
            | (Derivation::OrI(..), ExtendedSymbol::OrS(..))
            | (Derivation::OmI(..), ExtendedSymbol::OmS(_))
            | (Derivation::ExI(..), ExtendedSymbol::ExS(..))
            | (Derivation::AllSetI(..), ExtendedSymbol::AllSetS(..))
    );
    if !label_ok {
        return false;
    }
    if v.truncated {
        return true;
    }
    match &**d {
        Derivation::Ax(_) => v.children.is_empty(),
        Derivation::AndI(_, a, b) => {
            v.children.len() == 2
                && view_matches(a, &v.children[0].1)
                && view_matches(b, &v.children[1].1)
        }
        Derivation::OrI(_, _, a) | Derivation::ExI(_, _, a) | Derivation::AllSetI(_, _, a) => {
            v.children.len() == 1 && view_matches(a, &v.children[0].1)
        }
        Derivation::OmI(_, fam) => match &**fam {
            PremiseFamily::Template { param, schema } => v.children.iter().all(|(i, c)| {
                let ChildIndex::Nat(n) = i else { return false };
                let inst = subst_num_derivation(schema, param, &NumTerm::numeral(*n));
                view_matches(&inst, c)
            }),
            _ => false,
        },
        _ => false,
    }
}

#[test]
fn acceptance_6_embedding_identity() {
    for seed in 0..200u64 {
        let mut g = Gen::new(seed + 7777);
        let mut budget = 12u32;
        let d = g.plain(&mut budget);
        let v = expand(&d, 4, &[0, 1, 2], 1).unwrap();
        assert!(view_matches(&d, &v), "seed {seed}");
    }
    pass(6, "stored structure is reproduced by lazy expansion");
}

#[test]
fn acceptance_7_negative_controls() {
    let g0 = Formula::eq_lit(NumTerm::Zero, NumTerm::Zero);

    // untrue axiom
    let bad_ax = Derivation::ax(Sequent::singleton(Formula::lt_lit(
        NumTerm::Zero,
        NumTerm::Zero,
    )));
    assert!(matches!(validate(&bad_ax), Err(CalcError::AxiomNotTrue(_))));

    // eigenvariable free in a side formula of the conclusion
    let a_x = Formula::or(
        Formula::set_lit("X", NumTerm::Zero),
        Formula::set_lit("X", NumTerm::Zero).negate(),
    );
    let escape = Derivation::all_set_i(
        "X",
        Formula::forall_set("X", a_x.clone()),
        Derivation::or_i(
            0,
            a_x.clone(),
            Derivation::ax(Sequent::from_formulas([
                Formula::set_lit("X", NumTerm::Zero),
                Formula::set_lit("X", NumTerm::Zero).negate(),
            ])),
        ),
    );
    assert!(matches!(
        validate(&escape),
        Err(CalcError::EigenvariableEscapes(_))
    ));

    // collapse over a positive-degree subderivation
    let cut1 = Derivation::cut(
        g0.clone(),
        Derivation::ax(Sequent::singleton(g0.clone())),
        Derivation::ax(Sequent::from_formulas([g0.clone(), g0.negate()])),
    );
    assert!(matches!(
        is_proper(&Derivation::col(cut1)),
        Err(ProperViolation::ColDegree(_))
    ));

    // collapse over a non-Pi1 end-sequent
    let t = Abstraction::new("z", Formula::eq_lit(NumTerm::var("z"), NumTerm::Zero));
    let ex_set = Formula::exists_set("X", Formula::set_lit("X", NumTerm::Zero));
    let not_pi1 = Derivation::or_set_i(
        t.clone(),
        ex_set,
        Derivation::ax(Sequent::singleton(g0.clone())),
    );
    assert!(matches!(
        is_proper(&Derivation::col(not_pi1)),
        Err(ProperViolation::ColNotPi1(_))
    ));

    // substitution not sitting on a collapse
    let sub_bad = Derivation::sub(
        "X",
        t,
        Derivation::ax(Sequent::singleton(g0.clone())),
    );
    assert!(matches!(
        is_proper(&sub_bad),
        Err(ProperViolation::SubNotOnCol(_))
    ));

    // omega-index witness not collapse-shaped
    let a = Formula::set_lit("X", NumTerm::Zero);
    let target = Formula::forall_set("X", a.clone());
    let not_col = make_index(
        Derivation::ax(Sequent::singleton(g0.clone())),
        "X",
        &target,
    );
    assert!(matches!(not_col, Err(NotError::InvalidOmegaIndex(m)) if m.contains("Col")));

    // index variable leaking outside the minor instance
    let leaky = Derivation::col(Derivation::ax(Sequent::from_formulas([
        a.clone(),
        Formula::set_lit("X", NumTerm::numeral(1)),
    ])));
    let leak = make_index(leaky, "X", &target);
    assert!(matches!(leak, Err(NotError::InvalidOmegaIndex(m)) if m.contains("free")));

    pass(7, "negative controls identified");
}

#[test]
fn acceptance_8_round_trip() {
    let mut terms: Vec<D> = Vec::new();
    for name in ScenarioName::ALL {
        let s = scenario(name);
        terms.push(s.input);
        terms.push(s.expected_red);
    }
    for (_, d) in sample_proofs() {
        terms.push(d);
    }
    terms.extend(population(1000, 12));
    for (i, d) in terms.iter().enumerate() {
        let txt = render(d);
        let back = parse_derivation_unchecked(&txt)
            .unwrap_or_else(|e| panic!("term {i}: {e}\n{txt}"));
        assert_eq!(&back, d, "term {i}: {txt}");
        assert_eq!(render(&back), txt, "term {i}: renderer not idempotent");
    }
    pass(8, "parse after render is the identity up to renaming");
}
