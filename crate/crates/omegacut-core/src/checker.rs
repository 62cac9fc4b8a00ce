//! Executable assertions over the reduction semantics: local soundness of
//! the denoted inference at a node, step audits for the reduction relation,
//! whole-trace audits, and a deterministic random generator of valid proper
//! derivations for property suites.

use alloc::string::String;
use alloc::vec::Vec;

use crate::calculus::{degree, end_sequent, is_proper, ExtendedSymbol, D};
use crate::lang::Sequent;
use crate::notation::{arity, child, make_index, minors, rule_of, Arity, ChildIndex};
use crate::reduction::Trace;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    /// Offending path, index, or detail; empty on pass.
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct AuditVerdict {
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

impl AuditVerdict {
    fn from_checks(checks: Vec<CheckResult>) -> AuditVerdict {
        let overall = checks.iter().all(|c| c.pass);
        AuditVerdict { checks, overall }
    }

    pub fn merge(mut self, other: AuditVerdict) -> AuditVerdict {
        self.checks.extend(other.checks);
        self.overall = self.overall && other.overall;
        self
    }
}

fn check(name: &'static str, pass: bool, detail: impl FnOnce() -> String) -> CheckResult {
    CheckResult {
        name,
        pass,
        detail: if pass { String::new() } else { detail() },
    }
}

/// Default index sample for a node: all finite indices, ω indices {0,1,2},
/// the 0-premise and canonical witness for Ω̃.
pub fn default_samples(d: &D) -> Vec<ChildIndex> {
    let label = match rule_of(d) {
        Ok(l) => l,
        Err(_) => return Vec::new(),
    };
    match arity(&label) {
        Arity::Finite(k) => (0..k as u64).map(ChildIndex::Nat).collect(),
        Arity::OmegaBranching => [0u64, 1, 2].iter().map(|n| ChildIndex::Nat(*n)).collect(),
        Arity::OmegaIndexed { with_zero } => {
            let mut out = Vec::new();
            if with_zero {
                out.push(ChildIndex::Nat(0));
                if let ExtendedSymbol::OmegaTildeS(y, negf) = &label {
                    if let Ok(zero) = child(d, &ChildIndex::Nat(0)) {
                        if let Ok(q) = make_index(
                            crate::calculus::Derivation::col(zero),
                            y,
                            &negf.negate(),
                        ) {
                            out.push(ChildIndex::Omega(q));
                        }
                    }
                }
            }
            out
        }
    }
}

/// Local soundness of the denoted last inference at sampled premise indices.
pub fn check_local(d: &D, samples: &[ChildIndex]) -> AuditVerdict {
    let mut checks = Vec::new();
    let label = match rule_of(d) {
        Ok(l) => l,
        Err(e) => {
            checks.push(check("rule-computable", false, || alloc::format!("{e}")));
            return AuditVerdict::from_checks(checks);
        }
    };
    let gamma = match end_sequent(d) {
        Ok(s) => s,
        Err(e) => {
            checks.push(check("sequent-computable", false, || alloc::format!("{e}")));
            return AuditVerdict::from_checks(checks);
        }
    };
    let dg = degree(d).unwrap_or(u64::MAX);

    checks.push(check(
        "principal-in-sequent",
        label.principal().is_subset_of(&gamma),
        || alloc::format!("{} not within end sequent", label.label()),
    ));
    if let ExtendedSymbol::CutS(c) = &label {
        checks.push(check("cut-rank-bound", c.rank() < dg, || {
            alloc::format!("rank {} not below degree {}", c.rank(), dg)
        }));
    }
    if let ExtendedSymbol::AllSetS(y, _) = &label {
        checks.push(check(
            "eigen-not-free-in-sequent",
            !gamma.has_free_set_var(y),
            || alloc::format!("eigenvariable {y} free in end sequent"),
        ));
    }

    for (n, i) in samples.iter().enumerate() {
        let c = match child(d, i) {
            Ok(c) => c,
            Err(e) => {
                checks.push(check("premise-exists", false, || {
                    alloc::format!("sample {n}: {e}")
                }));
                continue;
            }
        };
        let minor = minors(&label, i).unwrap_or_else(|_| Sequent::new());
        match end_sequent(&c) {
            Ok(cs) => {
                let bound = gamma.union(&minor);
                checks.push(check(
                    "premise-sequent-containment",
                    cs.is_subset_of(&bound),
                    || alloc::format!("sample {n}: premise sequent escapes bound"),
                ));
            }
            Err(e) => checks.push(check("premise-sequent-containment", false, || {
                alloc::format!("sample {n}: {e}")
            })),
        }
        match degree(&c) {
            Ok(cd) => checks.push(check("premise-degree-bound", cd <= dg, || {
                alloc::format!("sample {n}: degree {cd} above {dg}")
            })),
            Err(e) => checks.push(check("premise-degree-bound", false, || {
                alloc::format!("sample {n}: {e}")
            })),
        }
        checks.push(check(
            "premise-proper",
            is_proper(&c).is_ok(),
            || alloc::format!("sample {n}: premise not proper"),
        ));
    }
    AuditVerdict::from_checks(checks)
}

/// Audit one reduction step `before → after`.
pub fn check_step(before: &D, after: &D) -> AuditVerdict {
    let mut checks = Vec::new();
    let sb = end_sequent(before);
    let sa = end_sequent(after);
    // set-sequents contract implicitly: when a discharged minor coincides
    // with a side formula, the reduct's computed end sequent can lose that
    // one occurrence, so the reduct proves a (sub)sequent of the original
    checks.push(check(
        "sequent-preserved",
        matches!((&sb, &sa), (Ok(a), Ok(b)) if b.is_subset_of(a)),
        || String::from("reduct end sequent is not contained in the original"),
    ));
    checks.push(check(
        "degree-stays-zero",
        degree(after).map(|n| n == 0).unwrap_or(false),
        || String::from("degree of reduct is nonzero"),
    ));
    checks.push(check(
        "reduct-proper",
        is_proper(after).is_ok(),
        || String::from("reduct not proper"),
    ));
    // the essential cases step to a literal premise of the denoted tree
    match rule_of(before) {
        Ok(ExtendedSymbol::RepS) => {
            let ok = child(before, &ChildIndex::Nat(0))
                .map(|c| &c == after)
                .unwrap_or(false);
            checks.push(check("descent-identity", ok, || {
                String::from("reduct is not the 0-premise")
            }));
        }
        Ok(ExtendedSymbol::OmegaTildeS(y, negf)) => {
            let ok = (|| {
                let zero = child(before, &ChildIndex::Nat(0)).ok()?;
                let q = make_index(
                    crate::calculus::Derivation::col(zero),
                    &y,
                    &negf.negate(),
                )
                .ok()?;
                let c = child(before, &ChildIndex::Omega(q)).ok()?;
                Some(&c == after)
            })()
            .unwrap_or(false);
            checks.push(check("descent-identity", ok, || {
                String::from("reduct is not the canonically indexed premise")
            }));
        }
        _ => {}
    }
    AuditVerdict::from_checks(checks)
}

/// Audit every consecutive pair of a trace, plus local soundness at each
/// recorded term; budget exhaustion is flagged as its own entry.
pub fn audit_trace(t: &Trace) -> AuditVerdict {
    let mut verdict = AuditVerdict::from_checks(Vec::new());
    for (before, after) in t.pairs() {
        verdict = verdict.merge(check_step(&before, &after));
        verdict = verdict.merge(check_local(&before, &default_samples(&before)));
    }
    verdict = verdict.merge(AuditVerdict::from_checks(alloc::vec![check(
        "budget-not-exhausted",
        !t.budget_exhausted,
        || String::from("step budget ran out before a cut-free form"),
    )]));
    verdict
}

// -------------------------------------------------------------------------
// Random generation of valid proper derivations

pub mod gen {
    //! Deterministic generator for property suites: small valid proper
    //! derivations over numerals ≤ 3, ω-rules given by templates only.

    use alloc::format;
    use alloc::string::String;
    use alloc::vec::Vec;

    use crate::calculus::{degree, end_sequent, Derivation, D};
    use crate::lang::{Abstraction, Formula, NumTerm, Sequent};

    /// xorshift64*; good enough for fuzzing, fully reproducible.
    pub struct Rng(u64);

    impl Rng {
        pub fn new(seed: u64) -> Rng {
            Rng(seed | 1)
        }

        pub fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x >> 12;
            x ^= x << 25;
            x ^= x >> 27;
            self.0 = x;
            x.wrapping_mul(0x2545F4914F6CDD1D)
        }

        pub fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }

        pub fn chance(&mut self, percent: u64) -> bool {
            self.below(100) < percent
        }
    }

    pub struct Gen {
        rng: Rng,
        fresh: u64,
    }

    impl Gen {
        pub fn new(seed: u64) -> Gen {
            Gen {
                rng: Rng::new(seed),
                fresh: 0,
            }
        }

        fn num(&mut self) -> NumTerm {
            NumTerm::numeral(self.rng.below(4))
        }

        fn true_lit(&mut self) -> Formula {
            let n = self.rng.below(4);
            match self.rng.below(3) {
                0 => Formula::eq_lit(NumTerm::numeral(n), NumTerm::numeral(n)),
                1 => Formula::lt_lit(NumTerm::numeral(n), NumTerm::numeral(n + 1)),
                _ => Formula::le_lit(NumTerm::numeral(n), NumTerm::numeral(n)),
            }
        }

        fn closed_lit(&mut self) -> Formula {
            let (a, b) = (self.num(), self.num());
            match self.rng.below(3) {
                0 => Formula::eq_lit(a, b),
                1 => Formula::lt_lit(a, b),
                _ => Formula::le_lit(a, b),
            }
        }

        fn axiom(&mut self) -> D {
            if self.rng.chance(50) {
                let mut s = Sequent::singleton(self.true_lit());
                if self.rng.chance(40) {
                    s.insert(self.true_lit());
                }
                Derivation::ax(s)
            } else {
                let l = self.closed_lit();
                Derivation::ax(Sequent::from_formulas([l.clone(), l.negate()]))
            }
        }

        /// A formula taken from the sequent a subterm proves, if any.
        fn pick_from(&mut self, d: &D) -> Formula {
            match end_sequent(d) {
                Ok(s) if !s.is_empty() => {
                    let v: Vec<&Formula> = s.iter().collect();
                    v[self.rng.below(v.len() as u64) as usize].clone()
                }
                _ => self.true_lit(),
            }
        }

        /// `∀X (X(n) ∨ ¬X(n))` proved with a fresh eigenvariable.
        fn all_set_block(&mut self) -> D {
            let n = self.num();
            let eigen = {
                self.fresh += 1;
                format!("Y{}", self.fresh)
            };
            let body = |v: &str| {
                let l = Formula::set_lit(v, n.clone());
                Formula::or(l.clone(), l.negate())
            };
            let principal = Formula::forall_set("X", body("X"));
            let minor = body(&eigen);
            let lit = Formula::set_lit(&eigen, n.clone());
            let inner = Derivation::or_i(
                1,
                minor.clone(),
                Derivation::or_i(
                    0,
                    minor,
                    Derivation::ax(Sequent::from_formulas([lit.clone(), lit.negate()])),
                ),
            );
            Derivation::all_set_i(&eigen, principal, inner)
        }

        /// ω-rule over a template whose every instance is a true axiom.
        fn omega_block(&mut self) -> D {
            let v = NumTerm::var("t");
            let body = match self.rng.below(3) {
                0 => Formula::eq_lit(v.clone(), v.clone()),
                1 => Formula::le_lit(v.clone(), v.clone()),
                _ => Formula::le_lit(NumTerm::Zero, v.clone()),
            };
            let principal = Formula::forall_num("x", body.subst_num("t", &NumTerm::var("x")));
            let schema = Derivation::ax(Sequent::singleton(body));
            Derivation::om_i_template(principal, "t", schema)
        }

        /// Derivation using introduction constructors only.
        pub fn plain(&mut self, budget: &mut u32) -> D {
            if *budget == 0 {
                return self.axiom();
            }
            *budget -= 1;
            match self.rng.below(7) {
                0 => self.axiom(),
                1 => {
                    let d0 = self.plain(budget);
                    let d1 = self.plain(budget);
                    let f = Formula::and(self.pick_from(&d0), self.pick_from(&d1));
                    Derivation::and_i(f, d0, d1)
                }
                2 => {
                    let d0 = self.plain(budget);
                    let a = self.pick_from(&d0);
                    let b = self.closed_lit();
                    let k = self.rng.below(2) as usize;
                    let f = if k == 0 {
                        Formula::or(a, b)
                    } else {
                        Formula::or(b, a)
                    };
                    Derivation::or_i(k, f, d0)
                }
                3 => {
                    let d0 = self.plain(budget);
                    let k = self.rng.below(4);
                    let f = Formula::exists_num(
                        "x",
                        Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x")),
                    );
                    Derivation::ex_i(k, f, d0)
                }
                4 => self.omega_block(),
                5 => self.all_set_block(),
                _ => {
                    let d0 = self.plain(budget);
                    let d1 = self.plain(budget);
                    let f = Formula::and(self.pick_from(&d0), self.pick_from(&d1));
                    Derivation::and_i(f, d0, d1)
                }
            }
        }

        /// Valid proper derivation that may use cuts and operators.
        pub fn proper(&mut self, budget: &mut u32) -> D {
            if *budget == 0 {
                return self.axiom();
            }
            *budget -= 1;
            match self.rng.below(10) {
                0..=4 => {
                    *budget += 1;
                    self.plain(budget)
                }
                5 => {
                    let d0 = self.proper(budget);
                    let d1 = self.proper(budget);
                    Derivation::cut(self.closed_lit(), d0, d1)
                }
                6 => {
                    let d0 = self.proper(budget);
                    let d1 = self.proper(budget);
                    Derivation::r(self.closed_lit(), d0, d1)
                }
                7 => Derivation::e(self.proper(budget)),
                8 => Derivation::ew(self.proper(budget)),
                _ => {
                    let d0 = self.proper(budget);
                    // collapse only where it stays proper
                    let ok = degree(&d0).map(|n| n == 0).unwrap_or(false)
                        && end_sequent(&d0).map(|s| s.is_pi1()).unwrap_or(false);
                    if !ok {
                        return Derivation::e(d0);
                    }
                    let col = Derivation::col(d0);
                    if self.rng.chance(40) {
                        let t = Abstraction::new(
                            "x",
                            Formula::eq_lit(NumTerm::var("x"), NumTerm::Zero),
                        );
                        Derivation::sub("X", t, col)
                    } else {
                        col
                    }
                }
            }
        }

        /// Fresh name supply exposed for fixtures.
        pub fn fresh_name(&mut self, prefix: &str) -> String {
            self.fresh += 1;
            format!("{}{}", prefix, self.fresh)
        }
    }
}
