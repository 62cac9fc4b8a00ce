//! One step of ordinal-free cut elimination (`red`), the gate condition
//! under which it is defined, and the metered normalization loop.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::{degree, end_sequent, is_proper, Derivation, ExtendedSymbol, PremiseFamily, D};
use crate::notation::{child, make_index, rule_of, ChildIndex, NotError};

/// Whether a term is in the domain of `red`: proper, Π¹ end-sequent,
/// degree 0, and a last inference symbol other than a cut or Ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateReport {
    pub proper: bool,
    pub pi1_end: bool,
    pub degree_zero: bool,
    pub tp_ok: bool,
}

impl GateReport {
    pub fn all_true(&self) -> bool {
        self.proper && self.pi1_end && self.degree_zero && self.tp_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RedError {
    GateFailed(GateReport),
    /// A state the soundness argument rules out; reaching it is a bug.
    InternalInconsistency(String),
    NotPi1EndSequent,
    NotBIMinus(String),
    Notation(NotError),
}

impl fmt::Display for RedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RedError::GateFailed(r) => write!(
                f,
                "gate failed (proper={} pi1_end={} degree_zero={} tp_ok={})",
                r.proper, r.pi1_end, r.degree_zero, r.tp_ok
            ),
            RedError::InternalInconsistency(p) => write!(f, "internal inconsistency: {p}"),
            RedError::NotPi1EndSequent => write!(f, "end sequent is not a Pi1 sequent"),
            RedError::NotBIMinus(p) => write!(f, "not a plain finitary derivation: {p}"),
            RedError::Notation(e) => write!(f, "{e}"),
        }
    }
}

impl From<NotError> for RedError {
    fn from(e: NotError) -> RedError {
        RedError::Notation(e)
    }
}

impl From<crate::calculus::CalcError> for RedError {
    fn from(e: crate::calculus::CalcError) -> RedError {
        RedError::Notation(NotError::from(e))
    }
}

pub fn gate(d: &D) -> Result<GateReport, RedError> {
    let proper = is_proper(d).is_ok();
    let pi1_end = end_sequent(d).map(|s| s.is_pi1()).unwrap_or(false);
    let degree_zero = degree(d).map(|n| n == 0).unwrap_or(false);
    let tp_ok = match rule_of(d) {
        Ok(ExtendedSymbol::CutS(_)) | Ok(ExtendedSymbol::OmegaS(_)) => false,
        Ok(_) => true,
        Err(_) => false,
    };
    let report = GateReport {
        proper,
        pi1_end,
        degree_zero,
        tp_ok,
    };
    if proper && pi1_end && degree_zero && !tp_ok {
        return Err(RedError::InternalInconsistency(alloc::format!(
            "gate-eligible term with cut- or Omega-typed last inference: {}",
            d.kind_label()
        )));
    }
    Ok(report)
}

/// One reduction step at the root.
pub fn red(d: &D) -> Result<D, RedError> {
    red_labeled(d).map(|(nd, _)| nd)
}

/// Like [`red`] but also names the clause that fired.
pub fn red_labeled(d: &D) -> Result<(D, &'static str), RedError> {
    let report = gate(d)?;
    if !report.all_true() {
        return Err(RedError::GateFailed(report));
    }
    red_step(d)
}

fn red_family(fam: &Arc<PremiseFamily>) -> Arc<PremiseFamily> {
    match &**fam {
        PremiseFamily::Template { param, schema } => match red(schema) {
            Ok(s) => Arc::new(PremiseFamily::Template {
                param: param.clone(),
                schema: s,
            }),
            // the step depends on the parameter's value: reduce pointwise
            Err(_) => Arc::new(PremiseFamily::MapRed { inner: fam.clone() }),
        },
        _ => Arc::new(PremiseFamily::MapRed { inner: fam.clone() }),
    }
}

fn red_step(d: &D) -> Result<(D, &'static str), RedError> {
    match &**d {
        // the root constructor is itself the denoted last inference:
        // keep it and reduce the premises
        Derivation::Ax(_) => Ok((d.clone(), "ax")),
        Derivation::AndI(f, d0, d1) => Ok((
            Derivation::and_i(f.clone(), red(d0)?, red(d1)?),
            "descend",
        )),
        Derivation::OrI(k, f, d0) => Ok((Derivation::or_i(*k, f.clone(), red(d0)?), "descend")),
        Derivation::ExI(k, f, d0) => Ok((Derivation::ex_i(*k, f.clone(), red(d0)?), "descend")),
        Derivation::AllSetI(y, f, d0) => {
            Ok((Derivation::all_set_i(y, f.clone(), red(d0)?), "descend"))
        }
        Derivation::OmI(f, fam) => Ok((Derivation::om_i(f.clone(), red_family(fam)), "descend")),
        // remaining roots are operators; act according to the denoted symbol
        _ => {
            let t = rule_of(d)?;
            match t {
                // the axiom's own Δ plus any weakening residue the term
                // carries, so the end sequent survives the step
                ExtendedSymbol::AxS(_) => Ok((Derivation::ax(end_sequent(d)?), "ax")),
                ExtendedSymbol::AndS(f) => Ok((
                    Derivation::and_i(
                        f,
                        child(d, &ChildIndex::Nat(0))?,
                        child(d, &ChildIndex::Nat(1))?,
                    ),
                    "emit",
                )),
                ExtendedSymbol::OrS(k, f) => Ok((
                    Derivation::or_i(k, f, child(d, &ChildIndex::Nat(0))?),
                    "emit",
                )),
                ExtendedSymbol::ExS(k, f) => Ok((
                    Derivation::ex_i(k, f, child(d, &ChildIndex::Nat(0))?),
                    "emit",
                )),
                ExtendedSymbol::AllSetS(y, f) => Ok((
                    Derivation::all_set_i(&y, f, child(d, &ChildIndex::Nat(0))?),
                    "emit",
                )),
                ExtendedSymbol::OmS(f) => Ok((
                    Derivation::om_i(
                        f,
                        Arc::new(PremiseFamily::Selector { parent: d.clone() }),
                    ),
                    "emit",
                )),
                ExtendedSymbol::RepS => Ok((child(d, &ChildIndex::Nat(0))?, "rep")),
                ExtendedSymbol::OmegaTildeS(y, negf) => {
                    let target = negf.negate();
                    let h = Derivation::col(child(d, &ChildIndex::Nat(0))?);
                    let q = make_index(h, &y, &target).map_err(|e| {
                        RedError::InternalInconsistency(alloc::format!(
                            "canonical witness rejected: {e}"
                        ))
                    })?;
                    Ok((child(d, &ChildIndex::Omega(q))?, "tilde"))
                }
                ExtendedSymbol::CutS(_) | ExtendedSymbol::OmegaS(_) => {
                    Err(RedError::InternalInconsistency(
                        "cut- or Omega-typed term passed the gate".into(),
                    ))
                }
            }
        }
    }
}

// -------------------------------------------------------------------------
// Cut-freeness

fn family_base(fam: &Arc<PremiseFamily>) -> &Arc<PremiseFamily> {
    match &**fam {
        PremiseFamily::MapRed { inner } => family_base(inner),
        _ => fam,
    }
}

fn scan_no_cut(d: &Derivation) -> bool {
    match d {
        Derivation::Cut(..) | Derivation::R(..) => false,
        Derivation::Ax(_) => true,
        Derivation::AndI(_, d0, d1) => scan_no_cut(d0) && scan_no_cut(d1),
        Derivation::OrI(_, _, d0)
        | Derivation::ExI(_, _, d0)
        | Derivation::AllSetI(_, _, d0)
        | Derivation::OrSetI(_, _, d0)
        | Derivation::E(d0)
        | Derivation::Ew(d0)
        | Derivation::Col(d0)
        | Derivation::Sub(_, _, d0) => scan_no_cut(d0),
        Derivation::OmI(_, fam) => match &**family_base(fam) {
            PremiseFamily::Template { schema, .. } => scan_no_cut(schema),
            PremiseFamily::Selector { parent } => scan_no_cut(parent),
            PremiseFamily::MapRed { .. } => unreachable!("family_base strips MapRed"),
        },
    }
}

/// Rebuild a term with every `MapRed` wrapper removed, recursively.
/// `red` wraps lazy families in `MapRed` on each pass, so fixpoint
/// comparison must ignore those wrappers.
fn strip_mapred(d: &D) -> D {
    match &**d {
        Derivation::Ax(_) => d.clone(),
        Derivation::AndI(f, d0, d1) => {
            Derivation::and_i(f.clone(), strip_mapred(d0), strip_mapred(d1))
        }
        Derivation::OrI(k, f, d0) => Derivation::or_i(*k, f.clone(), strip_mapred(d0)),
        Derivation::ExI(k, f, d0) => Derivation::ex_i(*k, f.clone(), strip_mapred(d0)),
        Derivation::AllSetI(y, f, d0) => Derivation::all_set_i(y, f.clone(), strip_mapred(d0)),
        Derivation::OrSetI(t, f, d0) => {
            Derivation::or_set_i(t.clone(), f.clone(), strip_mapred(d0))
        }
        Derivation::Cut(c, d0, d1) => {
            Derivation::cut(c.clone(), strip_mapred(d0), strip_mapred(d1))
        }
        Derivation::R(c, d0, d1) => Derivation::r(c.clone(), strip_mapred(d0), strip_mapred(d1)),
        Derivation::E(d0) => Derivation::e(strip_mapred(d0)),
        Derivation::Ew(d0) => Derivation::ew(strip_mapred(d0)),
        Derivation::Col(d0) => Derivation::col(strip_mapred(d0)),
        Derivation::Sub(x, t, d0) => Derivation::sub(x, t.clone(), strip_mapred(d0)),
        Derivation::OmI(f, fam) => {
            let base = match &**family_base(fam) {
                PremiseFamily::Template { param, schema } => PremiseFamily::Template {
                    param: param.clone(),
                    schema: strip_mapred(schema),
                },
                PremiseFamily::Selector { parent } => PremiseFamily::Selector {
                    parent: strip_mapred(parent),
                },
                PremiseFamily::MapRed { .. } => unreachable!("family_base strips MapRed"),
            };
            Derivation::om_i(f.clone(), Arc::new(base))
        }
    }
}

/// A term is cut-free when no cut or reduction node occurs syntactically
/// (lazy families judged by their generating terms) and one further `red`
/// pass changes nothing beyond lazy-family bookkeeping.
pub fn is_cut_free(d: &D) -> Result<bool, RedError> {
    if !scan_no_cut(d) {
        return Ok(false);
    }
    let rd = red(d)?;
    Ok(strip_mapred(&rd) == strip_mapred(d))
}

// -------------------------------------------------------------------------
// Pipeline

fn scan_plain(d: &Derivation) -> Result<(), RedError> {
    match d {
        Derivation::R(..)
        | Derivation::E(..)
        | Derivation::Ew(..)
        | Derivation::Col(..)
        | Derivation::Sub(..) => Err(RedError::NotBIMinus(d.kind_label().into())),
        Derivation::Ax(_) => Ok(()),
        Derivation::AndI(_, d0, d1) | Derivation::Cut(_, d0, d1) => {
            scan_plain(d0).and_then(|_| scan_plain(d1))
        }
        Derivation::OrI(_, _, d0)
        | Derivation::ExI(_, _, d0)
        | Derivation::AllSetI(_, _, d0)
        | Derivation::OrSetI(_, _, d0) => scan_plain(d0),
        Derivation::OmI(_, fam) => match &**fam {
            PremiseFamily::Template { schema, .. } => scan_plain(schema),
            _ => Err(RedError::NotBIMinus("lazy premise family".into())),
        },
    }
}

/// Wrap a plain finitary derivation with Π¹ end-sequent so it enters the
/// domain of `red` (degree collapses to 0).
pub fn prepare(d: &D) -> Result<D, RedError> {
    scan_plain(d)?;
    if !end_sequent(d)?.is_pi1() {
        return Err(RedError::NotPi1EndSequent);
    }
    Ok(Derivation::ew(d.clone()))
}

#[derive(Debug, Clone)]
pub struct TraceStep {
    /// Term before the step.
    pub term: D,
    /// Last inference symbol label of that term.
    pub rule_label: &'static str,
    /// Which reduction clause fired.
    pub clause: &'static str,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    pub final_term: D,
    pub budget_exhausted: bool,
}

impl Trace {
    /// Before/after pairs in firing order.
    pub fn pairs(&self) -> Vec<(D, D)> {
        let mut out = Vec::new();
        for w in self.steps.windows(2) {
            out.push((w[0].term.clone(), w[1].term.clone()));
        }
        if let Some(last) = self.steps.last() {
            out.push((last.term.clone(), self.final_term.clone()));
        }
        out
    }
}

/// Iterate `red` at the root until the explored skeleton is cut-free or the
/// budget runs out.
pub fn normalize(d: &D, max_steps: usize) -> Result<Trace, RedError> {
    let mut cur = d.clone();
    let mut steps = Vec::new();
    let mut budget_exhausted = false;
    loop {
        if is_cut_free(&cur)? {
            break;
        }
        if steps.len() >= max_steps {
            budget_exhausted = true;
            break;
        }
        let rule_label = rule_of(&cur)?.label();
        let (next, clause) = red_labeled(&cur)?;
        steps.push(TraceStep {
            term: cur,
            rule_label,
            clause,
        });
        cur = next;
    }
    Ok(Trace {
        steps,
        final_term: cur,
        budget_exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{Formula, NumTerm, Sequent};

    fn eq00() -> Formula {
        Formula::eq_lit(NumTerm::Zero, NumTerm::Zero)
    }
    fn ax_true() -> D {
        Derivation::ax(Sequent::singleton(eq00()))
    }
    fn ax_pair() -> D {
        Derivation::ax(Sequent::from_formulas([eq00(), eq00().negate()]))
    }
    fn cut_example() -> D {
        Derivation::cut(eq00(), ax_true(), ax_pair())
    }

    #[test]
    fn gate_flags() {
        let g = gate(&Derivation::ew(cut_example())).unwrap();
        assert!(g.all_true());
        let g = gate(&cut_example()).unwrap();
        assert!(!g.degree_zero);
        let set_end = Derivation::or_set_i(
            crate::lang::Abstraction::new("x", eq00()),
            Formula::exists_set("X", Formula::set_lit("X", NumTerm::Zero)),
            ax_true(),
        );
        let g = gate(&set_end).unwrap();
        assert!(!g.pi1_end);
    }

    #[test]
    fn red_of_e_over_cut() {
        let d = Derivation::e(cut_example());
        let (rd, clause) = red_labeled(&d).unwrap();
        assert_eq!(clause, "rep");
        assert_eq!(
            rd,
            Derivation::r(eq00(), Derivation::e(ax_true()), Derivation::e(ax_pair()))
        );
    }

    #[test]
    fn red_fixes_axioms() {
        assert_eq!(red(&ax_true()).unwrap(), ax_true());
        assert!(is_cut_free(&ax_true()).unwrap());
    }

    #[test]
    fn cut_free_scan() {
        assert!(!is_cut_free(&Derivation::ew(cut_example())).unwrap());
        let logical = Derivation::or_i(
            0,
            Formula::or(eq00(), eq00()),
            ax_true(),
        );
        assert!(is_cut_free(&logical).unwrap());
    }

    #[test]
    fn prepare_checks() {
        let p = prepare(&cut_example()).unwrap();
        assert!(gate(&p).unwrap().all_true());
        assert!(matches!(
            prepare(&Derivation::e(ax_true())),
            Err(RedError::NotBIMinus(_))
        ));
        let set_end = Derivation::or_set_i(
            crate::lang::Abstraction::new("x", eq00()),
            Formula::exists_set("X", Formula::set_lit("X", NumTerm::Zero)),
            Derivation::ax(Sequent::singleton(eq00())),
        );
        assert!(matches!(prepare(&set_end), Err(RedError::NotPi1EndSequent)));
    }

    #[test]
    fn normalize_cut_example() {
        let p = prepare(&cut_example()).unwrap();
        let t = normalize(&p, 100).unwrap();
        assert!(!t.budget_exhausted);
        assert!(t.steps.len() <= 6);
        assert!(is_cut_free(&t.final_term).unwrap());
        let s0 = end_sequent(&p).unwrap();
        for step in &t.steps {
            assert_eq!(end_sequent(&step.term).unwrap(), s0);
        }
        assert_eq!(end_sequent(&t.final_term).unwrap(), s0);
    }

    #[test]
    fn normalize_cut_free_input_is_empty() {
        let t = normalize(&ax_true(), 10).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.final_term, ax_true());
    }

    #[test]
    fn red_template_omega_rule() {
        let f = Formula::forall_num(
            "x",
            Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x")),
        );
        let d = Derivation::om_i_template(
            f.clone(),
            "n",
            Derivation::ax(Sequent::singleton(Formula::eq_lit(
                NumTerm::var("n"),
                NumTerm::var("n"),
            ))),
        );
        let rd = red(&d).unwrap();
        assert_eq!(strip_mapred(&rd), strip_mapred(&d));
        assert!(is_cut_free(&d).unwrap());
    }
}
