//! Golden reduction scenarios and small end-to-end sample proofs. Each
//! scenario packages a concrete reduction input together with the reduct it
//! must step to and the inference symbol its root must denote.

use alloc::vec::Vec;

use crate::calculus::{Derivation, ExtendedSymbol, D};
use crate::lang::{Abstraction, Formula, NumTerm, Sequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioName {
    T9,
    T10,
    T11,
    T12,
    T13,
    T14,
    T15,
    T15b,
    T16,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 9] = [
        ScenarioName::T9,
        ScenarioName::T10,
        ScenarioName::T11,
        ScenarioName::T12,
        ScenarioName::T13,
        ScenarioName::T14,
        ScenarioName::T15,
        ScenarioName::T15b,
        ScenarioName::T16,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ScenarioName::T9 => "T9",
            ScenarioName::T10 => "T10",
            ScenarioName::T11 => "T11",
            ScenarioName::T12 => "T12",
            ScenarioName::T13 => "T13",
            ScenarioName::T14 => "T14",
            ScenarioName::T15 => "T15",
            ScenarioName::T15b => "T15b",
            ScenarioName::T16 => "T16",
        }
    }

    pub fn from_label(s: &str) -> Option<ScenarioName> {
        ScenarioName::ALL.iter().copied().find(|n| n.label() == s)
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: ScenarioName,
    pub input: D,
    pub expected_red: D,
    pub expected_tp: ExtendedSymbol,
}

// shared small pieces -----------------------------------------------------

fn g0() -> Formula {
    Formula::eq_lit(NumTerm::Zero, NumTerm::Zero)
}

fn ax_true() -> D {
    Derivation::ax(Sequent::singleton(g0()))
}

fn ax_pair() -> D {
    Derivation::ax(Sequent::from_formulas([g0(), g0().negate()]))
}

/// `∀x Eq(x,x)` with its premise family `Ax({Eq(n,n)})`.
fn omega_all() -> (Formula, D) {
    let c = Formula::forall_num(
        "x",
        Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x")),
    );
    let schema = Derivation::ax(Sequent::singleton(Formula::eq_lit(
        NumTerm::var("n"),
        NumTerm::var("n"),
    )));
    (c.clone(), Derivation::om_i_template(c, "n", schema))
}

/// `∀X (X(0) ∨ ¬X(0))` and the pieces of its impredicative cut against
/// `T = λx. Eq(x,0)`.
struct SetCut {
    c: Formula,
    /// premise of the eigenvariable introduction: proves {X(0) ∨ ¬X(0)}
    d_000: D,
    /// ⋀-side: AllSetI(X, C, d_000)
    d_00: D,
    /// premise of the Ω-side: Ax({Eq(0,0)})
    d_010: D,
    /// Ω-side: OrSetI(T, ¬C, d_010)
    d_01: D,
    t: Abstraction,
    /// `C₀(T) = Eq(0,0) ∨ ¬Eq(0,0)`
    c0_t: Formula,
}

fn set_cut() -> SetCut {
    let x0 = Formula::set_lit("X", NumTerm::Zero);
    let c0_x = Formula::or(x0.clone(), x0.negate());
    let c = Formula::forall_set("X", c0_x.clone());
    let d_000 = Derivation::or_i(
        1,
        c0_x.clone(),
        Derivation::or_i(
            0,
            c0_x,
            Derivation::ax(Sequent::from_formulas([x0.clone(), x0.negate()])),
        ),
    );
    let d_00 = Derivation::all_set_i("X", c.clone(), d_000.clone());
    let t = Abstraction::new("x", Formula::eq_lit(NumTerm::var("x"), NumTerm::Zero));
    let d_010 = ax_true();
    let d_01 = Derivation::or_set_i(t.clone(), c.negate(), d_010.clone());
    let c0_t = Formula::or(g0(), g0().negate());
    SetCut {
        c,
        d_000,
        d_00,
        d_010,
        d_01,
        t,
        c0_t,
    }
}

// scenarios ---------------------------------------------------------------

pub fn scenario(name: ScenarioName) -> Scenario {
    match name {
        ScenarioName::T9 => {
            let (d0, d1) = (ax_true(), ax_pair());
            let input = Derivation::e(Derivation::cut(g0(), d0.clone(), d1.clone()));
            let expected_red =
                Derivation::r(g0(), Derivation::e(d0), Derivation::e(d1));
            Scenario {
                name,
                input,
                expected_red,
                expected_tp: ExtendedSymbol::RepS,
            }
        }
        ScenarioName::T10 => {
            let input = Derivation::r(g0(), ax_pair(), ax_pair());
            Scenario {
                name,
                input,
                expected_red: ax_pair(),
                expected_tp: ExtendedSymbol::RepS,
            }
        }
        ScenarioName::T11 | ScenarioName::T12 => {
            let c = Formula::and(g0(), g0());
            let d_00 = Derivation::and_i(c.clone(), ax_true(), ax_true());
            let d_010 = ax_pair();
            let d_01 = Derivation::or_i(0, c.negate(), d_010.clone());
            let inner = Derivation::r(c.clone(), d_00.clone(), d_01.clone());
            // premises of the emitted smaller cut, k = 0
            let left = Derivation::r(c.clone(), ax_true(), d_01);
            let right = Derivation::r(c, d_00, d_010);
            if name == ScenarioName::T11 {
                Scenario {
                    name,
                    input: Derivation::e(inner),
                    expected_red: Derivation::r(
                        g0(),
                        Derivation::e(left),
                        Derivation::e(right),
                    ),
                    expected_tp: ExtendedSymbol::RepS,
                }
            } else {
                // rank(Eq(0,0)) = 0, so one E in front
                Scenario {
                    name,
                    input: Derivation::ew(inner),
                    expected_red: Derivation::e(Derivation::cut(
                        g0(),
                        Derivation::ew(left),
                        Derivation::ew(right),
                    )),
                    expected_tp: ExtendedSymbol::RepS,
                }
            }
        }
        ScenarioName::T13 | ScenarioName::T14 => {
            let (c, d_00) = omega_all();
            let d_010 = ax_pair();
            let d_01 = Derivation::ex_i(0, c.negate(), d_010.clone());
            let inner = Derivation::r(c.clone(), d_00.clone(), d_01.clone());
            // the 0-th ω-premise instantiates the schema at 0
            let left = Derivation::r(c.clone(), ax_true(), d_01);
            let right = Derivation::r(c, d_00, d_010);
            if name == ScenarioName::T13 {
                Scenario {
                    name,
                    input: Derivation::e(inner),
                    expected_red: Derivation::r(
                        g0(),
                        Derivation::e(left),
                        Derivation::e(right),
                    ),
                    expected_tp: ExtendedSymbol::RepS,
                }
            } else {
                Scenario {
                    name,
                    input: Derivation::ew(inner),
                    expected_red: Derivation::e(Derivation::cut(
                        g0(),
                        Derivation::ew(left),
                        Derivation::ew(right),
                    )),
                    expected_tp: ExtendedSymbol::RepS,
                }
            }
        }
        ScenarioName::T15 | ScenarioName::T15b | ScenarioName::T16 => {
            let p = set_cut();
            let inner = Derivation::r(p.c.clone(), p.d_00.clone(), p.d_01.clone());
            // rank(C₀(T)) = 1, so E^{m+1} = E
            let wrap: fn(D) -> D = if name == ScenarioName::T15 {
                Derivation::ew
            } else {
                Derivation::e
            };
            let witness = Derivation::col(wrap(Derivation::r(
                p.c.clone(),
                p.d_000.clone(),
                p.d_01.clone(),
            )));
            let unfolded = wrap(Derivation::r(
                p.c.clone(),
                p.d_00.clone(),
                Derivation::r(
                    p.c0_t.clone(),
                    Derivation::sub("X", p.t.clone(), witness),
                    p.d_010.clone(),
                ),
            ));
            if name == ScenarioName::T16 {
                Scenario {
                    name,
                    input: wrap(inner),
                    expected_red: unfolded,
                    expected_tp: ExtendedSymbol::OmegaTildeS("X".into(), p.c.negate()),
                }
            } else {
                Scenario {
                    name,
                    input: Derivation::col(wrap(inner)),
                    expected_red: Derivation::col(unfolded),
                    expected_tp: ExtendedSymbol::RepS,
                }
            }
        }
    }
}

/// Small end-to-end proofs exercising every introduction rule.
pub fn sample_proofs() -> Vec<(&'static str, D)> {
    let p = set_cut();
    let mut out = Vec::new();
    // (i) cut-free proof of {∀X (X(0) ∨ ¬X(0))}
    out.push(("or-split-all-set", p.d_00.clone()));
    // (ii) ω-rule proof of {∀x Eq(x,x)}
    out.push(("omega-identity", omega_all().1));
    // (iii) impredicative cut on ∀X (X(0) ∨ ¬X(0)), concluding {Eq(0,0)}
    out.push((
        "impredicative-cut",
        Derivation::cut(p.c, p.d_00, p.d_01),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{end_sequent, validate};
    use crate::notation::rule_of;
    use crate::reduction::{gate, is_cut_free, normalize, prepare, red};

    #[test]
    fn scenarios_are_gate_true() {
        for name in ScenarioName::ALL {
            let s = scenario(name);
            let g = gate(&s.input).unwrap();
            assert!(g.all_true(), "{}: {:?}", name.label(), g);
        }
    }

    #[test]
    fn scenarios_match_expected_tp_and_red() {
        for name in ScenarioName::ALL {
            let s = scenario(name);
            assert_eq!(
                rule_of(&s.input).unwrap(),
                s.expected_tp,
                "{}",
                name.label()
            );
            assert_eq!(red(&s.input).unwrap(), s.expected_red, "{}", name.label());
        }
    }

    #[test]
    fn scenarios_normalize_cut_free() {
        for name in ScenarioName::ALL {
            let s = scenario(name);
            let s0 = end_sequent(&s.input).unwrap();
            let t = normalize(&s.input, 10_000).unwrap();
            assert!(!t.budget_exhausted, "{}", name.label());
            assert!(is_cut_free(&t.final_term).unwrap(), "{}", name.label());
            assert_eq!(end_sequent(&t.final_term).unwrap(), s0, "{}", name.label());
            for step in &t.steps {
                assert_eq!(end_sequent(&step.term).unwrap(), s0, "{}", name.label());
            }
        }
    }

    #[test]
    fn sample_proofs_validate() {
        for (n, d) in sample_proofs() {
            validate(&d).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
    }

    #[test]
    fn sample_proof_facts() {
        let proofs = sample_proofs();
        assert!(is_cut_free(&proofs[0].1).unwrap());
        let seq = end_sequent(&proofs[1].1).unwrap();
        assert_eq!(
            seq,
            Sequent::singleton(Formula::forall_num(
                "x",
                Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x"))
            ))
        );
        let prepared = prepare(&proofs[2].1).unwrap();
        assert!(gate(&prepared).unwrap().all_true());
        let t = normalize(&prepared, 10_000).unwrap();
        assert!(!t.budget_exhausted);
        assert!(is_cut_free(&t.final_term).unwrap());
        assert_eq!(
            end_sequent(&t.final_term).unwrap(),
            Sequent::singleton(Formula::eq_lit(NumTerm::Zero, NumTerm::Zero))
        );
    }
}
