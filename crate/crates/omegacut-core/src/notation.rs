//! The notation-system semantics of a finite derivation term: `rule_of`
//! computes the last inference symbol of the denoted infinitary derivation,
//! `child` a finite term denoting its i-th immediate subderivation. Neither
//! ever materializes an infinite tree.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::{
    self, all_set_minor, degree, end_sequent, is_proper, om_minor, or_set_minor,
    subst_num_derivation, CalcError, Derivation, ExtendedSymbol, PremiseFamily, D,
};
use crate::lang::{Formula, NumTerm, Sequent};

/// A validated address `(h, X)` of an Ω/Ω̃ premise for `target = ∀X A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaIndex {
    pub witness: D,
    pub var: String,
    pub target: Formula,
}

impl OmegaIndex {
    /// `A(var)`: the instance of the target's body at the index variable.
    pub fn minor_instance(&self) -> Result<Formula, NotError> {
        match &self.target {
            Formula::ForallSet(x, body) => Ok(body.rename_set_var(x, &self.var)),
            _ => Err(NotError::IllFormed(
                "omega index target is not a second-order universal".to_owned(),
            )),
        }
    }

    /// `Δ_q = Γ(witness) \ {A(var)}`.
    pub fn delta(&self) -> Result<Sequent, NotError> {
        let minor = self.minor_instance()?;
        Ok(end_sequent(&self.witness)?.without(&minor))
    }
}

/// Address of an immediate subderivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChildIndex {
    Nat(u64),
    Omega(OmegaIndex),
}

/// Index-set descriptor of an inference symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Finite(usize),
    OmegaBranching,
    /// Ω/Ω̃ premises; `with_zero` marks the extra 0-premise of Ω̃.
    OmegaIndexed { with_zero: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotError {
    IllFormed(String),
    Improper(String),
    IndexOutOfRange(String),
    /// Names the violated index-validity clause.
    InvalidOmegaIndex(&'static str),
    UnsupportedOrientation(String),
}

impl fmt::Display for NotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotError::IllFormed(p) => write!(f, "ill-formed: {p}"),
            NotError::Improper(p) => write!(f, "properness violated: {p}"),
            NotError::IndexOutOfRange(p) => write!(f, "index out of range: {p}"),
            NotError::InvalidOmegaIndex(c) => write!(f, "invalid omega index: {c}"),
            NotError::UnsupportedOrientation(p) => write!(f, "unsupported cut orientation: {p}"),
        }
    }
}

impl From<CalcError> for NotError {
    fn from(e: CalcError) -> NotError {
        NotError::IllFormed(alloc::format!("{e}"))
    }
}

// -------------------------------------------------------------------------
// Symbol signatures

pub fn arity(s: &ExtendedSymbol) -> Arity {
    match s {
        ExtendedSymbol::AxS(_) => Arity::Finite(0),
        ExtendedSymbol::AndS(_) | ExtendedSymbol::CutS(_) => Arity::Finite(2),
        ExtendedSymbol::OrS(..)
        | ExtendedSymbol::ExS(..)
        | ExtendedSymbol::AllSetS(..)
        | ExtendedSymbol::RepS => Arity::Finite(1),
        ExtendedSymbol::OmS(_) => Arity::OmegaBranching,
        ExtendedSymbol::OmegaS(_) => Arity::OmegaIndexed { with_zero: false },
        ExtendedSymbol::OmegaTildeS(..) => Arity::OmegaIndexed { with_zero: true },
    }
}

/// The set of minor formulas `Δ_i(I)` at an index.
pub fn minors(s: &ExtendedSymbol, i: &ChildIndex) -> Result<Sequent, NotError> {
    let bad = || NotError::IndexOutOfRange(alloc::format!("{} at {:?}", s.label(), i));
    match (s, i) {
        (ExtendedSymbol::AndS(f), ChildIndex::Nat(k)) => match f {
            Formula::And(a0, a1) if *k <= 1 => Ok(Sequent::singleton(if *k == 0 {
                (**a0).clone()
            } else {
                (**a1).clone()
            })),
            _ => Err(bad()),
        },
        (ExtendedSymbol::OrS(k, f), ChildIndex::Nat(0)) => match f {
            Formula::Or(a0, a1) => Ok(Sequent::singleton(if *k == 0 {
                (**a0).clone()
            } else {
                (**a1).clone()
            })),
            _ => Err(bad()),
        },
        (ExtendedSymbol::OmS(f), ChildIndex::Nat(n)) => {
            Ok(Sequent::singleton(om_minor(f, &NumTerm::numeral(*n))?))
        }
        (ExtendedSymbol::ExS(k, f), ChildIndex::Nat(0)) => match f {
            Formula::ExistsNum(x, body) => {
                Ok(Sequent::singleton(body.subst_num(x, &NumTerm::numeral(*k))))
            }
            _ => Err(bad()),
        },
        (ExtendedSymbol::AllSetS(y, f), ChildIndex::Nat(0)) => {
            Ok(Sequent::singleton(all_set_minor(f, y)?))
        }
        (ExtendedSymbol::CutS(c), ChildIndex::Nat(k)) if *k <= 1 => {
            Ok(Sequent::singleton(if *k == 0 { c.clone() } else { c.negate() }))
        }
        (ExtendedSymbol::RepS, ChildIndex::Nat(0)) => Ok(Sequent::new()),
        (ExtendedSymbol::OmegaS(_), ChildIndex::Omega(q)) => q.delta(),
        (ExtendedSymbol::OmegaTildeS(y, negf), ChildIndex::Nat(0)) => {
            let target = negf.negate();
            Ok(Sequent::singleton(all_set_minor(&target, y)?))
        }
        (ExtendedSymbol::OmegaTildeS(..), ChildIndex::Omega(q)) => q.delta(),
        _ => Err(bad()),
    }
}

// -------------------------------------------------------------------------
// Ω-index construction

/// Validate `(h, x)` as an index for `target = ∀X A`.
pub fn make_index(h: D, x: &str, target: &Formula) -> Result<OmegaIndex, NotError> {
    let body_at = match target {
        Formula::ForallSet(bx, body) => body.rename_set_var(bx, x),
        _ => {
            return Err(NotError::InvalidOmegaIndex(
                "target is not a second-order universal formula",
            ))
        }
    };
    if !matches!(&*h, Derivation::Col(_)) {
        return Err(NotError::InvalidOmegaIndex("witness is not a Col node"));
    }
    if is_proper(&h).is_err() {
        return Err(NotError::InvalidOmegaIndex("witness is not proper"));
    }
    if degree(&h)? != 0 {
        return Err(NotError::InvalidOmegaIndex("witness has nonzero degree"));
    }
    let gamma = end_sequent(&h)?;
    if !gamma.is_pi1() {
        return Err(NotError::InvalidOmegaIndex(
            "witness end-sequent is not a Pi1 sequent",
        ));
    }
    if !gamma.contains(&body_at) {
        return Err(NotError::InvalidOmegaIndex(
            "minor instance missing from witness end-sequent",
        ));
    }
    if gamma.without(&body_at).has_free_set_var(x) {
        return Err(NotError::InvalidOmegaIndex(
            "index variable occurs free outside the minor instance",
        ));
    }
    Ok(OmegaIndex {
        witness: h,
        var: x.to_owned(),
        target: target.clone(),
    })
}

// -------------------------------------------------------------------------
// rule_of (tp)

pub fn rule_of(d: &Derivation) -> Result<ExtendedSymbol, NotError> {
    match d {
        Derivation::Ax(delta) => Ok(ExtendedSymbol::AxS(delta.clone())),
        Derivation::AndI(f, ..) => Ok(ExtendedSymbol::AndS(f.clone())),
        Derivation::OrI(k, f, _) => Ok(ExtendedSymbol::OrS(*k, f.clone())),
        Derivation::OmI(f, _) => Ok(ExtendedSymbol::OmS(f.clone())),
        Derivation::ExI(k, f, _) => Ok(ExtendedSymbol::ExS(*k, f.clone())),
        Derivation::AllSetI(y, f, _) => Ok(ExtendedSymbol::AllSetS(y.clone(), f.clone())),
        Derivation::OrSetI(_, f, _) => Ok(ExtendedSymbol::OmegaS(f.clone())),
        Derivation::Cut(c, ..) => Ok(ExtendedSymbol::CutS(c.clone())),
        Derivation::E(d0) | Derivation::Ew(d0) => {
            let t = rule_of(d0)?;
            if matches!(t, ExtendedSymbol::CutS(_)) {
                Ok(ExtendedSymbol::RepS)
            } else {
                Ok(t)
            }
        }
        Derivation::Col(d0) => {
            let t = rule_of(d0)?;
            match t {
                ExtendedSymbol::OmegaTildeS(..) => Ok(ExtendedSymbol::RepS),
                ExtendedSymbol::CutS(_) | ExtendedSymbol::OmegaS(_) => Err(NotError::Improper(
                    "Col over a cut- or Omega-typed subderivation".to_owned(),
                )),
                other => Ok(other),
            }
        }
        Derivation::Sub(x, t, d0) => {
            let inner = rule_of(d0)?;
            match inner {
                ExtendedSymbol::OmegaS(_)
                | ExtendedSymbol::OmegaTildeS(..)
                | ExtendedSymbol::CutS(_) => Err(NotError::Improper(
                    "Sub over a cut- or Omega-typed subderivation".to_owned(),
                )),
                other => Ok(other.subst_set(x, t)),
            }
        }
        Derivation::R(c, d0, d1) => Ok(r_dispatch(c, d0, d1)?.symbol()),
    }
}

// -------------------------------------------------------------------------
// R-node dispatch, shared by rule_of and child

/// Resolved behaviour of an `R` node.
pub(crate) enum RPlan {
    /// The cut formula is not principal on `side`; the node commutes with
    /// that operand's inference.
    Commute { side: usize, sym: ExtendedSymbol },
    /// One operand is an axiom containing the dual; the node repeats the
    /// other operand (`take` is the operand index that survives).
    RepTake { take: usize },
    /// Both sides principal on a rank-positive formula: one reduction step,
    /// producing a cut of smaller rank. `lo_side` is the operand proving the
    /// negative form; `lo_index` addresses its premise.
    CutStep {
        cut_formula: Formula,
        lo_side: usize,
        lo_index: u64,
    },
    /// Both sides principal on `∀X A`.
    Tilde {
        eigen: String,
        neg_target: Formula,
        lo_side: usize,
    },
}

impl RPlan {
    fn symbol(&self) -> ExtendedSymbol {
        match self {
            RPlan::Commute { sym, .. } => sym.clone(),
            RPlan::RepTake { .. } => ExtendedSymbol::RepS,
            RPlan::CutStep { cut_formula, .. } => ExtendedSymbol::CutS(cut_formula.clone()),
            RPlan::Tilde { eigen, neg_target, .. } => {
                ExtendedSymbol::OmegaTildeS(eigen.clone(), neg_target.clone())
            }
        }
    }
}

fn is_positive(f: &Formula) -> bool {
    matches!(
        f,
        Formula::Or(..) | Formula::ExistsNum(..) | Formula::ExistsSet(..)
    )
}

pub(crate) fn r_dispatch(c: &Formula, d0: &D, d1: &D) -> Result<RPlan, NotError> {
    let t0 = rule_of(d0)?;
    let t1 = rule_of(d1)?;
    let neg_c = c.negate();
    if !t0.principal().contains(c) {
        return Ok(RPlan::Commute { side: 0, sym: t0 });
    }
    if !t1.principal().contains(&neg_c) {
        return Ok(RPlan::Commute { side: 1, sym: t1 });
    }
    // Both principal. Axiom cases first, in the stated order: the axiom must
    // carry the dual pair, otherwise the surviving operand would not prove
    // the node's sequent.
    if let ExtendedSymbol::AxS(delta) = &t0 {
        if delta.contains(&neg_c) {
            return Ok(RPlan::RepTake { take: 1 });
        }
    }
    if let ExtendedSymbol::AxS(delta) = &t1 {
        if delta.contains(c) {
            return Ok(RPlan::RepTake { take: 0 });
        }
    }
    // Connective cases, normalized so the negative form sits on `lo`.
    let (lo_side, cneg) = if is_positive(c) {
        (1usize, neg_c)
    } else {
        (0usize, c.clone())
    };
    let (t_lo, t_ro) = if lo_side == 0 { (&t0, &t1) } else { (&t1, &t0) };
    match &cneg {
        Formula::And(a0, a1) => match t_ro {
            ExtendedSymbol::OrS(k, _) => {
                let comp = if *k == 0 { (**a0).clone() } else { (**a1).clone() };
                Ok(RPlan::CutStep {
                    cut_formula: comp,
                    lo_side,
                    lo_index: *k as u64,
                })
            }
            _ => Err(NotError::UnsupportedOrientation(
                "conjunction against non-disjunction introduction".to_owned(),
            )),
        },
        Formula::ForallNum(x, body) => match t_ro {
            ExtendedSymbol::ExS(k, _) => Ok(RPlan::CutStep {
                cut_formula: body.subst_num(x, &NumTerm::numeral(*k)),
                lo_side,
                lo_index: *k,
            }),
            _ => Err(NotError::UnsupportedOrientation(
                "omega-rule against non-witness introduction".to_owned(),
            )),
        },
        Formula::ForallSet(..) => match t_lo {
            ExtendedSymbol::AllSetS(y, _) => Ok(RPlan::Tilde {
                eigen: y.clone(),
                neg_target: cneg.negate(),
                lo_side,
            }),
            _ => Err(NotError::UnsupportedOrientation(
                "second-order universal without eigenvariable introduction".to_owned(),
            )),
        },
        _ => Err(NotError::UnsupportedOrientation(
            "cut formula shape not covered by dispatch".to_owned(),
        )),
    }
}

// -------------------------------------------------------------------------
// child (d[i])

fn rebuild_r(c: &Formula, d0: &D, d1: &D, side: usize, replacement: D) -> D {
    if side == 0 {
        Derivation::r(c.clone(), replacement, d1.clone())
    } else {
        Derivation::r(c.clone(), d0.clone(), replacement)
    }
}

fn oob(d: &Derivation, i: &ChildIndex) -> NotError {
    NotError::IndexOutOfRange(alloc::format!("{} at {:?}", d.kind_label(), i))
}

pub fn child(d: &D, i: &ChildIndex) -> Result<D, NotError> {
    match &**d {
        Derivation::Ax(_) => Err(oob(d, i)),
        Derivation::AndI(_, d0, d1) | Derivation::Cut(_, d0, d1) => match i {
            ChildIndex::Nat(0) => Ok(d0.clone()),
            ChildIndex::Nat(1) => Ok(d1.clone()),
            _ => Err(oob(d, i)),
        },
        Derivation::OrI(_, _, d0)
        | Derivation::ExI(_, _, d0)
        | Derivation::AllSetI(_, _, d0) => match i {
            ChildIndex::Nat(0) => Ok(d0.clone()),
            _ => Err(oob(d, i)),
        },
        Derivation::OmI(_, fam) => match i {
            ChildIndex::Nat(n) => premise_at(fam, *n),
            _ => Err(oob(d, i)),
        },
        Derivation::OrSetI(t, f, d0) => match i {
            ChildIndex::Omega(q) => {
                let target = f.negate();
                if q.target != target {
                    return Err(NotError::InvalidOmegaIndex(
                        "index targets a different second-order universal",
                    ));
                }
                // re-check Def-11 side conditions on externally supplied indices
                let q = make_index(q.witness.clone(), &q.var, &target)?;
                let a_t = or_set_minor(f, t)?.negate();
                Ok(Derivation::r(
                    a_t,
                    Derivation::sub(&q.var, t.clone(), q.witness),
                    d0.clone(),
                ))
            }
            _ => Err(oob(d, i)),
        },
        Derivation::E(d0) => {
            if let ExtendedSymbol::CutS(c) = rule_of(d0)? {
                match i {
                    ChildIndex::Nat(0) => Ok(Derivation::r(
                        c,
                        Derivation::e(child(d0, &ChildIndex::Nat(0))?),
                        Derivation::e(child(d0, &ChildIndex::Nat(1))?),
                    )),
                    _ => Err(oob(d, i)),
                }
            } else {
                Ok(Derivation::e(child(d0, i)?))
            }
        }
        Derivation::Ew(d0) => {
            if let ExtendedSymbol::CutS(c) = rule_of(d0)? {
                match i {
                    ChildIndex::Nat(0) => {
                        let n = c.rank();
                        Ok(Derivation::e_pow(
                            n + 1,
                            Derivation::cut(
                                c,
                                Derivation::ew(child(d0, &ChildIndex::Nat(0))?),
                                Derivation::ew(child(d0, &ChildIndex::Nat(1))?),
                            ),
                        ))
                    }
                    _ => Err(oob(d, i)),
                }
            } else {
                Ok(Derivation::ew(child(d0, i)?))
            }
        }
        Derivation::Col(d0) => {
            if let ExtendedSymbol::OmegaTildeS(y, negf) = rule_of(d0)? {
                match i {
                    ChildIndex::Nat(0) => {
                        let target = negf.negate();
                        let h = Derivation::col(child(d0, &ChildIndex::Nat(0))?);
                        let q = make_index(h, &y, &target)?;
                        Ok(Derivation::col(child(d0, &ChildIndex::Omega(q))?))
                    }
                    _ => Err(oob(d, i)),
                }
            } else {
                Ok(Derivation::col(child(d0, i)?))
            }
        }
        Derivation::Sub(x, t, d0) => match i {
            ChildIndex::Nat(_) => Ok(Derivation::sub(x, t.clone(), child(d0, i)?)),
            ChildIndex::Omega(_) => Err(NotError::Improper(
                "Sub over an Omega-indexed subderivation".to_owned(),
            )),
        },
        Derivation::R(c, d0, d1) => match r_dispatch(c, d0, d1)? {
            RPlan::Commute { side, sym: _ } => {
                let active = if side == 0 { d0 } else { d1 };
                Ok(rebuild_r(c, d0, d1, side, child(active, i)?))
            }
            RPlan::RepTake { take } => match i {
                ChildIndex::Nat(0) => Ok(if take == 0 { d0.clone() } else { d1.clone() }),
                _ => Err(oob(d, i)),
            },
            RPlan::CutStep { lo_side, lo_index, .. } => {
                let ro_side = 1 - lo_side;
                let (lo, ro) = if lo_side == 0 { (d0, d1) } else { (d1, d0) };
                match i {
                    ChildIndex::Nat(0) => Ok(rebuild_r(
                        c,
                        d0,
                        d1,
                        lo_side,
                        child(lo, &ChildIndex::Nat(lo_index))?,
                    )),
                    ChildIndex::Nat(1) => {
                        Ok(rebuild_r(c, d0, d1, ro_side, child(ro, &ChildIndex::Nat(0))?))
                    }
                    _ => Err(oob(d, i)),
                }
            }
            RPlan::Tilde { lo_side, .. } => {
                let ro_side = 1 - lo_side;
                let (lo, ro) = if lo_side == 0 { (d0, d1) } else { (d1, d0) };
                match i {
                    ChildIndex::Nat(0) => Ok(rebuild_r(
                        c,
                        d0,
                        d1,
                        lo_side,
                        child(lo, &ChildIndex::Nat(0))?,
                    )),
                    ChildIndex::Omega(_) => Ok(rebuild_r(c, d0, d1, ro_side, child(ro, i)?)),
                    _ => Err(oob(d, i)),
                }
            }
        },
    }
}

/// The n-th premise of an ω-rule family.
pub fn premise_at(fam: &PremiseFamily, n: u64) -> Result<D, NotError> {
    match fam {
        PremiseFamily::Template { param, schema } => {
            Ok(subst_num_derivation(schema, param, &NumTerm::numeral(n)))
        }
        PremiseFamily::Selector { parent } => child(parent, &ChildIndex::Nat(n)),
        PremiseFamily::MapRed { inner } => {
            let base = premise_at(inner, n)?;
            crate::reduction::red(&base).map_err(|e| NotError::Improper(alloc::format!("{e}")))
        }
    }
}

// -------------------------------------------------------------------------
// Lazy expansion

/// A finite, truncated view of the denoted infinitary derivation.
#[derive(Debug, Clone)]
pub struct TreeView {
    pub label: ExtendedSymbol,
    pub sequent: Sequent,
    pub children: Vec<(ChildIndex, TreeView)>,
    pub truncated: bool,
}

pub fn expand(
    d: &D,
    depth: u64,
    omega_picks: &[u64],
    omega_witness_budget: usize,
) -> Result<TreeView, NotError> {
    let label = rule_of(d)?;
    let sequent = end_sequent(d)?;
    if depth == 0 {
        return Ok(TreeView {
            label,
            sequent,
            children: Vec::new(),
            truncated: true,
        });
    }
    let mut indices: Vec<ChildIndex> = Vec::new();
    match arity(&label) {
        Arity::Finite(k) => {
            for i in 0..k {
                indices.push(ChildIndex::Nat(i as u64));
            }
        }
        Arity::OmegaBranching => {
            for n in omega_picks {
                indices.push(ChildIndex::Nat(*n));
            }
        }
        Arity::OmegaIndexed { with_zero } => {
            if with_zero {
                indices.push(ChildIndex::Nat(0));
                // canonical witness from the reduction path
                if omega_witness_budget > 0 {
                    if let ExtendedSymbol::OmegaTildeS(y, negf) = &label {
                        let target = negf.negate();
                        if let Ok(zero_child) = child(d, &ChildIndex::Nat(0)) {
                            if let Ok(q) = make_index(Derivation::col(zero_child), y, &target) {
                                indices.push(ChildIndex::Omega(q));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut children = Vec::with_capacity(indices.len());
    for i in indices {
        let c = child(d, &i)?;
        children.push((i, expand(&c, depth - 1, omega_picks, omega_witness_budget)?));
    }
    Ok(TreeView {
        label,
        sequent,
        children,
        truncated: false,
    })
}

impl TreeView {
    /// Indented text rendering: one line per node with label and sequent size.
    pub fn render_indented(&self, out: &mut String) {
        self.render_at(out, 0, None);
    }

    fn render_at(&self, out: &mut String, depth: usize, idx: Option<&ChildIndex>) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        match idx {
            Some(ChildIndex::Nat(n)) => {
                out.push_str(&alloc::format!("[{n}] "));
            }
            Some(ChildIndex::Omega(_)) => out.push_str("[omega] "),
            None => {}
        }
        out.push_str(self.label.label());
        if self.truncated {
            out.push_str(" ...");
        }
        out.push('\n');
        for (i, c) in &self.children {
            c.render_at(out, depth + 1, Some(i));
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|(_, c)| c.node_count())
            .sum::<usize>()
    }
}

// re-export commonly paired helpers for downstream modules
pub use calculus::ExtendedSymbol as Symbol;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Derivation;
    use crate::lang::{Abstraction, Formula, NumTerm, Sequent};

    fn zero() -> NumTerm {
        NumTerm::Zero
    }
    fn eq00() -> Formula {
        Formula::eq_lit(zero(), zero())
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
    // ∀X(X(0) ∨ ¬X(0))
    fn big_c() -> Formula {
        Formula::forall_set(
            "X",
            Formula::or(
                Formula::set_lit("X", zero()),
                Formula::set_lit("X", zero()).negate(),
            ),
        )
    }

    #[test]
    fn rule_of_basics() {
        assert_eq!(
            rule_of(&ax_true()).unwrap(),
            ExtendedSymbol::AxS(Sequent::singleton(eq00()))
        );
        assert_eq!(
            rule_of(&cut_example()).unwrap(),
            ExtendedSymbol::CutS(eq00())
        );
        assert_eq!(
            rule_of(&Derivation::e(cut_example())).unwrap(),
            ExtendedSymbol::RepS
        );
        assert_eq!(
            rule_of(&Derivation::ew(cut_example())).unwrap(),
            ExtendedSymbol::RepS
        );
    }

    #[test]
    fn rule_of_or_set_i_is_omega() {
        let f = big_c().negate();
        let t = Abstraction::new("x", Formula::eq_lit(NumTerm::var("x"), zero()));
        let minor = crate::calculus::or_set_minor(&f, &t).unwrap();
        let d = Derivation::or_set_i(
            t,
            f.clone(),
            Derivation::ax(Sequent::from_formulas([minor.clone(), minor.negate()])),
        );
        assert_eq!(rule_of(&d).unwrap(), ExtendedSymbol::OmegaS(f));
    }

    #[test]
    fn child_of_e_over_cut() {
        let d = Derivation::e(cut_example());
        let c = child(&d, &ChildIndex::Nat(0)).unwrap();
        let expected = Derivation::r(
            eq00(),
            Derivation::e(ax_true()),
            Derivation::e(ax_pair()),
        );
        assert_eq!(c, expected);
    }

    #[test]
    fn child_of_ew_over_cut_stacks_e() {
        // rank(Eq(0,0)) = 0 so one E
        let d = Derivation::ew(cut_example());
        let c = child(&d, &ChildIndex::Nat(0)).unwrap();
        let expected = Derivation::e(Derivation::cut(
            eq00(),
            Derivation::ew(ax_true()),
            Derivation::ew(ax_pair()),
        ));
        assert_eq!(c, expected);
    }

    #[test]
    fn child_of_and_i() {
        let f = Formula::and(eq00(), eq00());
        let d = Derivation::and_i(f, ax_true(), ax_true());
        assert_eq!(child(&d, &ChildIndex::Nat(1)).unwrap(), ax_true());
        assert!(child(&d, &ChildIndex::Nat(2)).is_err());
    }

    #[test]
    fn template_premises() {
        let f = Formula::forall_num(
            "x",
            Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x")),
        );
        let d = Derivation::om_i_template(
            f,
            "n",
            Derivation::ax(Sequent::singleton(Formula::eq_lit(
                NumTerm::var("n"),
                NumTerm::var("n"),
            ))),
        );
        let p2 = child(&d, &ChildIndex::Nat(2)).unwrap();
        assert_eq!(
            p2,
            Derivation::ax(Sequent::singleton(Formula::eq_lit(
                NumTerm::numeral(2),
                NumTerm::numeral(2)
            )))
        );
    }

    #[test]
    fn r_commutes_when_not_principal() {
        // left operand ends in E over axiom: tp = AxS({Eq(0,0)}), cut formula
        // ¬Eq(0,0) not principal on the left
        let d = Derivation::r(eq00().negate(), ax_true(), ax_true());
        assert_eq!(
            rule_of(&d).unwrap(),
            ExtendedSymbol::AxS(Sequent::singleton(eq00()))
        );
    }

    #[test]
    fn r_on_dual_axioms_takes_right_then_left() {
        // both operands axioms with the pair: case (i) applies, d[0] = d1
        let d = Derivation::r(eq00(), ax_pair(), ax_pair());
        assert_eq!(rule_of(&d).unwrap(), ExtendedSymbol::RepS);
        assert_eq!(child(&d, &ChildIndex::Nat(0)).unwrap(), ax_pair());
        // left is a TRUE-singleton: only case (ii) applies, d[0] = d0
        let d2 = Derivation::r(eq00(), ax_true(), ax_pair());
        assert_eq!(rule_of(&d2).unwrap(), ExtendedSymbol::RepS);
        assert_eq!(child(&d2, &ChildIndex::Nat(0)).unwrap(), ax_true());
    }

    #[test]
    fn r_cut_step_on_conjunction() {
        let a = Formula::and(eq00(), eq00());
        let left = Derivation::and_i(a.clone(), ax_true(), ax_true());
        let na = a.negate();
        let right = Derivation::or_i(
            0,
            na.clone(),
            Derivation::ax(Sequent::from_formulas([eq00(), eq00().negate()])),
        );
        let d = Derivation::r(a.clone(), left.clone(), right.clone());
        assert_eq!(rule_of(&d).unwrap(), ExtendedSymbol::CutS(eq00()));
        assert_eq!(
            child(&d, &ChildIndex::Nat(0)).unwrap(),
            Derivation::r(a.clone(), ax_true(), right)
        );
        assert_eq!(
            child(&d, &ChildIndex::Nat(1)).unwrap(),
            Derivation::r(a, left, ax_pair())
        );
    }

    #[test]
    fn r_tilde_on_second_order_universal() {
        let c = big_c();
        let minor_y = crate::calculus::all_set_minor(&c, "Y").unwrap();
        let lit = Formula::set_lit("Y", zero());
        let left = Derivation::all_set_i(
            "Y",
            c.clone(),
            Derivation::or_i(
                1,
                minor_y.clone(),
                Derivation::or_i(
                    0,
                    minor_y,
                    Derivation::ax(Sequent::from_formulas([lit.clone(), lit.negate()])),
                ),
            ),
        );
        let t = Abstraction::new("x", Formula::eq_lit(NumTerm::var("x"), zero()));
        let nc = c.negate();
        let minor_t = crate::calculus::or_set_minor(&nc, &t).unwrap();
        let right = Derivation::or_set_i(
            t,
            nc.clone(),
            Derivation::ax(Sequent::from_formulas([minor_t.clone(), minor_t.negate()])),
        );
        let d = Derivation::r(c.clone(), left, right);
        match rule_of(&d).unwrap() {
            ExtendedSymbol::OmegaTildeS(y, f) => {
                assert_eq!(y, "Y");
                assert_eq!(f, nc);
            }
            other => panic!("expected OmegaTildeS, got {other:?}"),
        }
    }

    #[test]
    fn make_index_rejections() {
        let c = big_c();
        let minor_x = crate::calculus::all_set_minor(&c, "X").unwrap();
        let not_col = Derivation::ax(Sequent::singleton(minor_x.clone()));
        assert_eq!(
            make_index(not_col, "X", &c).unwrap_err(),
            NotError::InvalidOmegaIndex("witness is not a Col node")
        );
        // a Col whose sequent lacks the minor instance
        let col = Derivation::col(Derivation::ax(Sequent::singleton(eq00())));
        assert_eq!(
            make_index(col, "X", &c).unwrap_err(),
            NotError::InvalidOmegaIndex("minor instance missing from witness end-sequent")
        );
    }

    #[test]
    fn expand_shapes() {
        let v = expand(&ax_true(), 3, &[], 0).unwrap();
        assert_eq!(v.node_count(), 1);
        assert!(!v.truncated);

        let d = Derivation::e(cut_example());
        let v = expand(&d, 2, &[], 0).unwrap();
        assert_eq!(v.label, ExtendedSymbol::RepS);
        assert_eq!(v.children.len(), 1);
        assert!(matches!(v.children[0].1.label, ExtendedSymbol::RepS | ExtendedSymbol::AxS(_)));
    }
}
