//! Finite derivation terms, their end-sequents, cut-degrees, and the
//! properness condition.
//!
//! Rules are closed under weakening and contain contraction, so the end
//! sequent of a node is computed as `Δ(I) ∪ ⋃_i (Γ(d_i) \ Δ_i(I))`.
//! ω-branching premises are finitely described (`PremiseFamily`) and never
//! materialized.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::lang::{Abstraction, Formula, NumTerm, Sequent};

/// Shared handle to a derivation node.
pub type D = Arc<Derivation>;

/// Finitely-described family of ω-rule premises, one per numeral.
///
/// `Template` gives the n-th premise by substituting the numeral `n` for the
/// parameter in the schema. `Selector(p)` reads premises off another node
/// whose denoted last inference is the same ω-rule. `MapRed` applies the
/// reduction step pointwise, on demand.
#[derive(Debug, Clone)]
pub enum PremiseFamily {
    Template { param: String, schema: D },
    Selector { parent: D },
    MapRed { inner: Arc<PremiseFamily> },
}

/// A derivation term. `Col` is the collapsing rule, `Sub` the second-order
/// substitution rule; `R`, `E`, `Ew` record intermediate cut-elimination
/// steps.
#[derive(Debug, Clone)]
pub enum Derivation {
    Ax(Sequent),
    AndI(Formula, D, D),
    OrI(usize, Formula, D),
    OmI(Formula, Arc<PremiseFamily>),
    ExI(u64, Formula, D),
    AllSetI(String, Formula, D),
    OrSetI(Abstraction, Formula, D),
    Cut(Formula, D, D),
    R(Formula, D, D),
    E(D),
    Ew(D),
    Col(D),
    Sub(String, Abstraction, D),
}

/// An inference symbol of the infinitary target system: the finitary rule
/// vocabulary plus `Rep`, `Ω`, and `Ω̃`. This is the codomain of `rule_of`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedSymbol {
    AxS(Sequent),
    AndS(Formula),
    OrS(usize, Formula),
    OmS(Formula),
    ExS(u64, Formula),
    AllSetS(String, Formula),
    CutS(Formula),
    RepS,
    /// Carries `negate(ForallSet(X, A))`.
    OmegaS(Formula),
    /// Eigenvariable plus `negate(ForallSet(X, A))`.
    OmegaTildeS(String, Formula),
}

impl ExtendedSymbol {
    /// The set of principal formulas Δ(I).
    pub fn principal(&self) -> Sequent {
        match self {
            ExtendedSymbol::AxS(delta) => delta.clone(),
            ExtendedSymbol::AndS(f)
            | ExtendedSymbol::OrS(_, f)
            | ExtendedSymbol::OmS(f)
            | ExtendedSymbol::ExS(_, f)
            | ExtendedSymbol::AllSetS(_, f)
            | ExtendedSymbol::OmegaS(f) => Sequent::singleton(f.clone()),
            ExtendedSymbol::CutS(_)
            | ExtendedSymbol::RepS
            | ExtendedSymbol::OmegaTildeS(..) => Sequent::new(),
        }
    }

    /// Relabel every carried formula with `[X/T]`.
    pub fn subst_set(&self, x: &str, t: &Abstraction) -> ExtendedSymbol {
        match self {
            ExtendedSymbol::AxS(delta) => ExtendedSymbol::AxS(delta.subst_set(x, t)),
            ExtendedSymbol::AndS(f) => ExtendedSymbol::AndS(f.subst_set(x, t)),
            ExtendedSymbol::OrS(k, f) => ExtendedSymbol::OrS(*k, f.subst_set(x, t)),
            ExtendedSymbol::OmS(f) => ExtendedSymbol::OmS(f.subst_set(x, t)),
            ExtendedSymbol::ExS(k, f) => ExtendedSymbol::ExS(*k, f.subst_set(x, t)),
            ExtendedSymbol::AllSetS(y, f) => {
                ExtendedSymbol::AllSetS(y.clone(), f.subst_set(x, t))
            }
            ExtendedSymbol::CutS(f) => ExtendedSymbol::CutS(f.subst_set(x, t)),
            ExtendedSymbol::RepS => ExtendedSymbol::RepS,
            ExtendedSymbol::OmegaS(f) => ExtendedSymbol::OmegaS(f.subst_set(x, t)),
            ExtendedSymbol::OmegaTildeS(y, f) => {
                ExtendedSymbol::OmegaTildeS(y.clone(), f.subst_set(x, t))
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ExtendedSymbol::AxS(_) => "Ax",
            ExtendedSymbol::AndS(_) => "AndI",
            ExtendedSymbol::OrS(..) => "OrI",
            ExtendedSymbol::OmS(_) => "OmI",
            ExtendedSymbol::ExS(..) => "ExI",
            ExtendedSymbol::AllSetS(..) => "AllSetI",
            ExtendedSymbol::CutS(_) => "Cut",
            ExtendedSymbol::RepS => "Rep",
            ExtendedSymbol::OmegaS(_) => "Omega",
            ExtendedSymbol::OmegaTildeS(..) => "OmegaTilde",
        }
    }
}

/// Structural or side-condition violations found while validating a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CalcError {
    IllFormed(String),
    AxiomNotTrue(String),
    EigenvariableClash(String),
    EigenvariableEscapes(String),
}

impl fmt::Display for CalcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CalcError::IllFormed(p) => write!(f, "ill-formed node: {p}"),
            CalcError::AxiomNotTrue(p) => write!(f, "axiom is not a true-literal or dual-pair sequent: {p}"),
            CalcError::EigenvariableClash(p) => write!(f, "eigenvariable reused along a path: {p}"),
            CalcError::EigenvariableEscapes(p) => write!(f, "eigenvariable occurs in conclusion: {p}"),
        }
    }
}

/// First violation of the properness condition: every `Col` sits on a
/// degree-0 derivation of a Π¹-sequent, every `Sub` sits on a `Col`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProperViolation {
    ColDegree(String),
    ColNotPi1(String),
    SubNotOnCol(String),
}

impl fmt::Display for ProperViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProperViolation::ColDegree(p) => write!(f, "Col over nonzero-degree derivation: {p}"),
            ProperViolation::ColNotPi1(p) => write!(f, "Col over non-Pi1 end-sequent: {p}"),
            ProperViolation::SubNotOnCol(p) => write!(f, "Sub not applied to a Col node: {p}"),
        }
    }
}

fn path_str(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_owned()
    } else {
        let parts: Vec<String> = path.iter().map(|i| format!("{i}")).collect();
        parts.join(".")
    }
}

// -------------------------------------------------------------------------
// Constructors

impl Derivation {
    pub fn ax(delta: Sequent) -> D {
        Arc::new(Derivation::Ax(delta))
    }
    pub fn and_i(principal: Formula, d0: D, d1: D) -> D {
        Arc::new(Derivation::AndI(principal, d0, d1))
    }
    pub fn or_i(k: usize, principal: Formula, d0: D) -> D {
        Arc::new(Derivation::OrI(k, principal, d0))
    }
    pub fn om_i(principal: Formula, family: Arc<PremiseFamily>) -> D {
        Arc::new(Derivation::OmI(principal, family))
    }
    pub fn om_i_template(principal: Formula, param: &str, schema: D) -> D {
        Derivation::om_i(
            principal,
            Arc::new(PremiseFamily::Template {
                param: param.to_owned(),
                schema,
            }),
        )
    }
    pub fn ex_i(k: u64, principal: Formula, d0: D) -> D {
        Arc::new(Derivation::ExI(k, principal, d0))
    }
    pub fn all_set_i(eigen: &str, principal: Formula, d0: D) -> D {
        Arc::new(Derivation::AllSetI(eigen.to_owned(), principal, d0))
    }
    pub fn or_set_i(t: Abstraction, principal: Formula, d0: D) -> D {
        Arc::new(Derivation::OrSetI(t, principal, d0))
    }
    pub fn cut(c: Formula, d0: D, d1: D) -> D {
        Arc::new(Derivation::Cut(c, d0, d1))
    }
    pub fn r(c: Formula, d0: D, d1: D) -> D {
        Arc::new(Derivation::R(c, d0, d1))
    }
    pub fn e(d0: D) -> D {
        Arc::new(Derivation::E(d0))
    }
    /// `n` applications of the `E` rule.
    pub fn e_pow(n: u64, d0: D) -> D {
        let mut d = d0;
        for _ in 0..n {
            d = Derivation::e(d);
        }
        d
    }
    pub fn ew(d0: D) -> D {
        Arc::new(Derivation::Ew(d0))
    }
    pub fn col(d0: D) -> D {
        Arc::new(Derivation::Col(d0))
    }
    pub fn sub(x: &str, t: Abstraction, d0: D) -> D {
        Arc::new(Derivation::Sub(x.to_owned(), t, d0))
    }

    pub fn kind_label(&self) -> &'static str {
        match self {
            Derivation::Ax(_) => "ax",
            Derivation::AndI(..) => "andI",
            Derivation::OrI(..) => "orI",
            Derivation::OmI(..) => "omI",
            Derivation::ExI(..) => "exI",
            Derivation::AllSetI(..) => "ALLI",
            Derivation::OrSetI(..) => "ORT",
            Derivation::Cut(..) => "cut",
            Derivation::R(..) => "r",
            Derivation::E(_) => "e",
            Derivation::Ew(_) => "ew",
            Derivation::Col(_) => "col",
            Derivation::Sub(..) => "sub",
        }
    }
}

// -------------------------------------------------------------------------
// Minor formulas

/// The minor formula of an ω-rule premise: `A(x/t)` for principal `∀x A`.
pub fn om_minor(principal: &Formula, t: &NumTerm) -> Result<Formula, CalcError> {
    match principal {
        Formula::ForallNum(x, body) => Ok(body.subst_num(x, t)),
        _ => Err(CalcError::IllFormed(
            "omI principal is not a first-order universal formula".to_owned(),
        )),
    }
}

/// The minor formula of `AllSetI`: the body at the eigenvariable.
pub fn all_set_minor(principal: &Formula, eigen: &str) -> Result<Formula, CalcError> {
    match principal {
        Formula::ForallSet(x, body) => Ok(body.rename_set_var(x, eigen)),
        _ => Err(CalcError::IllFormed(
            "ALLI principal is not a second-order universal formula".to_owned(),
        )),
    }
}

/// The minor formula of `OrSetI`: `¬A(X/T)` for principal `∃X ¬A`.
pub fn or_set_minor(principal: &Formula, t: &Abstraction) -> Result<Formula, CalcError> {
    match principal {
        Formula::ExistsSet(x, body) => Ok(body.subst_set(x, t)),
        _ => Err(CalcError::IllFormed(
            "ORT principal is not a second-order existential formula".to_owned(),
        )),
    }
}

// -------------------------------------------------------------------------
// End sequents

/// Internal parameter name used when reading a template's sequent generically.
pub(crate) fn template_minor(principal: &Formula, param: &str) -> Result<Formula, CalcError> {
    om_minor(principal, &NumTerm::var(param))
}

pub fn end_sequent(d: &Derivation) -> Result<Sequent, CalcError> {
    match d {
        Derivation::Ax(delta) => Ok(delta.clone()),
        Derivation::AndI(f, d0, d1) => match f {
            Formula::And(a0, a1) => {
                let g0 = end_sequent(d0)?.without(a0);
                let g1 = end_sequent(d1)?.without(a1);
                let mut g = g0.union(&g1);
                g.insert(f.clone());
                Ok(g)
            }
            _ => Err(CalcError::IllFormed("andI principal is not a conjunction".to_owned())),
        },
        Derivation::OrI(k, f, d0) => match f {
            Formula::Or(a0, a1) if *k <= 1 => {
                let minor = if *k == 0 { a0 } else { a1 };
                let mut g = end_sequent(d0)?.without(minor);
                g.insert(f.clone());
                Ok(g)
            }
            _ => Err(CalcError::IllFormed("orI principal/index mismatch".to_owned())),
        },
        Derivation::OmI(f, fam) => om_i_sequent(f, fam),
        Derivation::ExI(k, f, d0) => match f {
            Formula::ExistsNum(x, body) => {
                let minor = body.subst_num(x, &NumTerm::numeral(*k));
                let mut g = end_sequent(d0)?.without(&minor);
                g.insert(f.clone());
                Ok(g)
            }
            _ => Err(CalcError::IllFormed("exI principal is not a first-order existential".to_owned())),
        },
        Derivation::AllSetI(y, f, d0) => {
            let minor = all_set_minor(f, y)?;
            let mut g = end_sequent(d0)?.without(&minor);
            g.insert(f.clone());
            Ok(g)
        }
        Derivation::OrSetI(t, f, d0) => {
            let minor = or_set_minor(f, t)?;
            let mut g = end_sequent(d0)?.without(&minor);
            g.insert(f.clone());
            Ok(g)
        }
        Derivation::Cut(c, d0, d1) | Derivation::R(c, d0, d1) => {
            let g0 = end_sequent(d0)?.without(c);
            let g1 = end_sequent(d1)?.without(&c.negate());
            Ok(g0.union(&g1))
        }
        Derivation::E(d0) | Derivation::Ew(d0) | Derivation::Col(d0) => end_sequent(d0),
        Derivation::Sub(x, t, d0) => Ok(end_sequent(d0)?.subst_set(x, t)),
    }
}

fn om_i_sequent(f: &Formula, fam: &PremiseFamily) -> Result<Sequent, CalcError> {
    match fam {
        PremiseFamily::Template { param, schema } => {
            let minor = template_minor(f, param)?;
            let mut g = end_sequent(schema)?.without(&minor);
            g.insert(f.clone());
            Ok(g)
        }
        PremiseFamily::Selector { parent } => {
            let mut g = end_sequent(parent)?;
            g.insert(f.clone());
            Ok(g)
        }
        // The reduction step preserves end sequents pointwise.
        PremiseFamily::MapRed { inner } => om_i_sequent(f, inner),
    }
}

// -------------------------------------------------------------------------
// Cut-degree

pub fn degree(d: &Derivation) -> Result<u64, CalcError> {
    match d {
        Derivation::Ax(_) => Ok(0),
        Derivation::AndI(_, d0, d1) => Ok(degree(d0)?.max(degree(d1)?)),
        Derivation::OrI(_, _, d0) | Derivation::ExI(_, _, d0) | Derivation::AllSetI(_, _, d0) => {
            degree(d0)
        }
        Derivation::OmI(_, fam) => family_degree(fam),
        Derivation::OrSetI(t, f, d0) => {
            let minor = or_set_minor(f, t)?;
            Ok(minor.rank().max(degree(d0)?))
        }
        Derivation::Cut(c, d0, d1) => Ok((c.rank() + 1).max(degree(d0)?).max(degree(d1)?)),
        Derivation::R(c, d0, d1) => Ok(c.rank().max(degree(d0)?).max(degree(d1)?)),
        Derivation::E(d0) => Ok(degree(d0)?.saturating_sub(1)),
        Derivation::Ew(_) => Ok(0),
        Derivation::Col(d0) | Derivation::Sub(_, _, d0) => degree(d0),
    }
}

fn family_degree(fam: &PremiseFamily) -> Result<u64, CalcError> {
    match fam {
        // Degree never inspects numeral values, so the parameter is opaque.
        PremiseFamily::Template { schema, .. } => degree(schema),
        PremiseFamily::Selector { parent } => degree(parent),
        PremiseFamily::MapRed { inner } => family_degree(inner),
    }
}

// -------------------------------------------------------------------------
// Properness

pub fn is_proper(d: &Derivation) -> Result<(), ProperViolation> {
    let mut path = Vec::new();
    proper_walk(d, &mut path)
}

fn proper_walk(d: &Derivation, path: &mut Vec<usize>) -> Result<(), ProperViolation> {
    match d {
        Derivation::Col(d0) => {
            if degree(d0).map_err(|_| ProperViolation::ColDegree(path_str(path)))? != 0 {
                return Err(ProperViolation::ColDegree(path_str(path)));
            }
            let g = end_sequent(d0).map_err(|_| ProperViolation::ColNotPi1(path_str(path)))?;
            if !g.is_pi1() {
                return Err(ProperViolation::ColNotPi1(path_str(path)));
            }
            path.push(0);
            let r = proper_walk(d0, path);
            path.pop();
            r
        }
        Derivation::Sub(_, _, d0) => {
            if !matches!(**d0, Derivation::Col(_)) {
                return Err(ProperViolation::SubNotOnCol(path_str(path)));
            }
            path.push(0);
            let r = proper_walk(d0, path);
            path.pop();
            r
        }
        Derivation::Ax(_) => Ok(()),
        Derivation::AndI(_, d0, d1) | Derivation::Cut(_, d0, d1) | Derivation::R(_, d0, d1) => {
            path.push(0);
            proper_walk(d0, path)?;
            path.pop();
            path.push(1);
            let r = proper_walk(d1, path);
            path.pop();
            r
        }
        Derivation::OrI(_, _, d0)
        | Derivation::ExI(_, _, d0)
        | Derivation::AllSetI(_, _, d0)
        | Derivation::OrSetI(_, _, d0)
        | Derivation::E(d0)
        | Derivation::Ew(d0) => {
            path.push(0);
            let r = proper_walk(d0, path);
            path.pop();
            r
        }
        Derivation::OmI(_, fam) => proper_family(fam, path),
    }
}

fn proper_family(fam: &PremiseFamily, path: &mut Vec<usize>) -> Result<(), ProperViolation> {
    match fam {
        PremiseFamily::Template { schema, .. } => {
            path.push(0);
            let r = proper_walk(schema, path);
            path.pop();
            r
        }
        PremiseFamily::Selector { parent } => {
            path.push(0);
            let r = proper_walk(parent, path);
            path.pop();
            r
        }
        PremiseFamily::MapRed { inner } => proper_family(inner, path),
    }
}

// -------------------------------------------------------------------------
// Validation

pub fn validate(d: &Derivation) -> Result<(), CalcError> {
    let mut path = Vec::new();
    let mut eigens = Vec::new();
    validate_walk(d, &mut path, &mut eigens)
}

fn check_axiom(delta: &Sequent, path: &[usize]) -> Result<(), CalcError> {
    let all_true = delta
        .iter()
        .all(|f| matches!(f.eval_literal(), Ok(true)));
    if all_true && !delta.is_empty() {
        return Ok(());
    }
    if delta.len() == 2 {
        let mut it = delta.iter();
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        if *a == b.negate() {
            return Ok(());
        }
    }
    Err(CalcError::AxiomNotTrue(path_str(path)))
}

fn validate_walk(
    d: &Derivation,
    path: &mut Vec<usize>,
    eigens: &mut Vec<String>,
) -> Result<(), CalcError> {
    let down = |child: &Derivation,
                    i: usize,
                    path: &mut Vec<usize>,
                    eigens: &mut Vec<String>|
     -> Result<(), CalcError> {
        path.push(i);
        let r = validate_walk(child, path, eigens);
        path.pop();
        r
    };
    match d {
        Derivation::Ax(delta) => check_axiom(delta, path),
        Derivation::AndI(f, d0, d1) => {
            if !matches!(f, Formula::And(..)) {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            down(d0, 0, path, eigens)?;
            down(d1, 1, path, eigens)
        }
        Derivation::OrI(k, f, d0) => {
            if !matches!(f, Formula::Or(..)) || *k > 1 {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            down(d0, 0, path, eigens)
        }
        Derivation::OmI(f, fam) => {
            if !matches!(f, Formula::ForallNum(..)) {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            validate_family(f, fam, path, eigens)
        }
        Derivation::ExI(_, f, d0) => {
            if !matches!(f, Formula::ExistsNum(..)) {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            down(d0, 0, path, eigens)
        }
        Derivation::AllSetI(y, f, d0) => {
            if !matches!(f, Formula::ForallSet(..)) {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            if eigens.contains(y) {
                return Err(CalcError::EigenvariableClash(path_str(path)));
            }
            let conclusion = end_sequent(d)?;
            if conclusion.has_free_set_var(y) {
                return Err(CalcError::EigenvariableEscapes(path_str(path)));
            }
            eigens.push(y.clone());
            let r = down(d0, 0, path, eigens);
            eigens.pop();
            r
        }
        Derivation::OrSetI(t, f, d0) => {
            if !matches!(f, Formula::ExistsSet(..)) || !t.is_arithmetical() {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            down(d0, 0, path, eigens)
        }
        Derivation::Cut(_, d0, d1) | Derivation::R(_, d0, d1) => {
            down(d0, 0, path, eigens)?;
            down(d1, 1, path, eigens)
        }
        Derivation::E(d0) | Derivation::Ew(d0) | Derivation::Col(d0) => down(d0, 0, path, eigens),
        Derivation::Sub(_, t, d0) => {
            if !t.is_arithmetical() {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            down(d0, 0, path, eigens)
        }
    }
}

fn validate_family(
    principal: &Formula,
    fam: &PremiseFamily,
    path: &mut Vec<usize>,
    eigens: &mut Vec<String>,
) -> Result<(), CalcError> {
    match fam {
        PremiseFamily::Template { param, schema } => {
            // The parameter may occur only in the minor formula; otherwise
            // different numerals would change the side formulas.
            let minor = template_minor(principal, param)?;
            let side = end_sequent(schema)?.without(&minor);
            if side.has_free_num_var(param) {
                return Err(CalcError::IllFormed(path_str(path)));
            }
            // Side conditions (axiom truth in particular) are checked on
            // sample instances; the parameter itself is not a numeral.
            for k in 0..3 {
                let inst = subst_num_derivation(schema, param, &NumTerm::numeral(k));
                path.push(0);
                let r = validate_walk(&inst, path, eigens);
                path.pop();
                r?;
            }
            Ok(())
        }
        PremiseFamily::Selector { parent } => {
            path.push(0);
            let r = validate_walk(parent, path, eigens);
            path.pop();
            r
        }
        PremiseFamily::MapRed { inner } => validate_family(principal, inner, path, eigens),
    }
}

// -------------------------------------------------------------------------
// Eigenvariable renaming

/// Rename every eigenvariable to a globally fresh name so that all
/// eigenvariables in the result are distinct. End sequent and degree are
/// unchanged.
pub fn rename_separated(d: &D) -> D {
    let mut counter: u64 = 0;
    separate(d, &mut counter)
}

fn separate(d: &D, counter: &mut u64) -> D {
    match &**d {
        Derivation::Ax(_) => d.clone(),
        Derivation::AndI(f, d0, d1) => {
            Derivation::and_i(f.clone(), separate(d0, counter), separate(d1, counter))
        }
        Derivation::OrI(k, f, d0) => Derivation::or_i(*k, f.clone(), separate(d0, counter)),
        Derivation::OmI(f, fam) => Derivation::om_i(f.clone(), separate_family(fam, counter)),
        Derivation::ExI(k, f, d0) => Derivation::ex_i(*k, f.clone(), separate(d0, counter)),
        Derivation::AllSetI(y, f, d0) => {
            let inner = separate(d0, counter);
            let fresh = format!("Y\u{b7}{counter}");
            *counter += 1;
            Derivation::all_set_i(&fresh, f.clone(), rename_free_set(&inner, y, &fresh))
        }
        Derivation::OrSetI(t, f, d0) => {
            Derivation::or_set_i(t.clone(), f.clone(), separate(d0, counter))
        }
        Derivation::Cut(c, d0, d1) => {
            Derivation::cut(c.clone(), separate(d0, counter), separate(d1, counter))
        }
        Derivation::R(c, d0, d1) => {
            Derivation::r(c.clone(), separate(d0, counter), separate(d1, counter))
        }
        Derivation::E(d0) => Derivation::e(separate(d0, counter)),
        Derivation::Ew(d0) => Derivation::ew(separate(d0, counter)),
        Derivation::Col(d0) => Derivation::col(separate(d0, counter)),
        Derivation::Sub(x, t, d0) => Derivation::sub(x, t.clone(), separate(d0, counter)),
    }
}

fn separate_family(fam: &Arc<PremiseFamily>, counter: &mut u64) -> Arc<PremiseFamily> {
    match &**fam {
        PremiseFamily::Template { param, schema } => Arc::new(PremiseFamily::Template {
            param: param.clone(),
            schema: separate(schema, counter),
        }),
        PremiseFamily::Selector { parent } => Arc::new(PremiseFamily::Selector {
            parent: separate(parent, counter),
        }),
        PremiseFamily::MapRed { inner } => Arc::new(PremiseFamily::MapRed {
            inner: separate_family(inner, counter),
        }),
    }
}

/// Rename free occurrences of set variable `old` throughout a derivation's
/// formulas. Stops below a node that reintroduces `old` as its own
/// eigenvariable or substitutes it away.
pub fn rename_free_set(d: &D, old: &str, new: &str) -> D {
    match &**d {
        Derivation::Ax(delta) => Derivation::ax(delta.rename_set_var(old, new)),
        Derivation::AndI(f, d0, d1) => Derivation::and_i(
            f.rename_set_var(old, new),
            rename_free_set(d0, old, new),
            rename_free_set(d1, old, new),
        ),
        Derivation::OrI(k, f, d0) => {
            Derivation::or_i(*k, f.rename_set_var(old, new), rename_free_set(d0, old, new))
        }
        Derivation::OmI(f, fam) => Derivation::om_i(
            f.rename_set_var(old, new),
            rename_family_free_set(fam, old, new),
        ),
        Derivation::ExI(k, f, d0) => {
            Derivation::ex_i(*k, f.rename_set_var(old, new), rename_free_set(d0, old, new))
        }
        Derivation::AllSetI(y, f, d0) => {
            if y == old {
                d.clone()
            } else {
                Derivation::all_set_i(
                    y,
                    f.rename_set_var(old, new),
                    rename_free_set(d0, old, new),
                )
            }
        }
        Derivation::OrSetI(t, f, d0) => Derivation::or_set_i(
            Abstraction::new(&t.binder, t.body.rename_set_var(old, new)),
            f.rename_set_var(old, new),
            rename_free_set(d0, old, new),
        ),
        Derivation::Cut(c, d0, d1) => Derivation::cut(
            c.rename_set_var(old, new),
            rename_free_set(d0, old, new),
            rename_free_set(d1, old, new),
        ),
        Derivation::R(c, d0, d1) => Derivation::r(
            c.rename_set_var(old, new),
            rename_free_set(d0, old, new),
            rename_free_set(d1, old, new),
        ),
        Derivation::E(d0) => Derivation::e(rename_free_set(d0, old, new)),
        Derivation::Ew(d0) => Derivation::ew(rename_free_set(d0, old, new)),
        Derivation::Col(d0) => Derivation::col(rename_free_set(d0, old, new)),
        Derivation::Sub(x, t, d0) => {
            let t2 = Abstraction::new(&t.binder, t.body.rename_set_var(old, new));
            if x == old {
                // The conclusion no longer mentions `old`; only the
                // abstraction body can.
                Derivation::sub(x, t2, d0.clone())
            } else {
                Derivation::sub(x, t2, rename_free_set(d0, old, new))
            }
        }
    }
}

fn rename_family_free_set(
    fam: &Arc<PremiseFamily>,
    old: &str,
    new: &str,
) -> Arc<PremiseFamily> {
    match &**fam {
        PremiseFamily::Template { param, schema } => Arc::new(PremiseFamily::Template {
            param: param.clone(),
            schema: rename_free_set(schema, old, new),
        }),
        PremiseFamily::Selector { parent } => Arc::new(PremiseFamily::Selector {
            parent: rename_free_set(parent, old, new),
        }),
        PremiseFamily::MapRed { inner } => Arc::new(PremiseFamily::MapRed {
            inner: rename_family_free_set(inner, old, new),
        }),
    }
}

// -------------------------------------------------------------------------
// Numeral substitution (used for template instantiation and alpha-comparison
// of template parameters)

pub fn subst_num_derivation(d: &D, x: &str, t: &NumTerm) -> D {
    match &**d {
        Derivation::Ax(delta) => Derivation::ax(delta.subst_num(x, t)),
        Derivation::AndI(f, d0, d1) => Derivation::and_i(
            f.subst_num(x, t),
            subst_num_derivation(d0, x, t),
            subst_num_derivation(d1, x, t),
        ),
        Derivation::OrI(k, f, d0) => {
            Derivation::or_i(*k, f.subst_num(x, t), subst_num_derivation(d0, x, t))
        }
        Derivation::OmI(f, fam) => {
            Derivation::om_i(f.subst_num(x, t), subst_num_family(fam, x, t))
        }
        Derivation::ExI(k, f, d0) => {
            Derivation::ex_i(*k, f.subst_num(x, t), subst_num_derivation(d0, x, t))
        }
        Derivation::AllSetI(y, f, d0) => {
            Derivation::all_set_i(y, f.subst_num(x, t), subst_num_derivation(d0, x, t))
        }
        Derivation::OrSetI(a, f, d0) => Derivation::or_set_i(
            subst_num_abstraction(a, x, t),
            f.subst_num(x, t),
            subst_num_derivation(d0, x, t),
        ),
        Derivation::Cut(c, d0, d1) => Derivation::cut(
            c.subst_num(x, t),
            subst_num_derivation(d0, x, t),
            subst_num_derivation(d1, x, t),
        ),
        Derivation::R(c, d0, d1) => Derivation::r(
            c.subst_num(x, t),
            subst_num_derivation(d0, x, t),
            subst_num_derivation(d1, x, t),
        ),
        Derivation::E(d0) => Derivation::e(subst_num_derivation(d0, x, t)),
        Derivation::Ew(d0) => Derivation::ew(subst_num_derivation(d0, x, t)),
        Derivation::Col(d0) => Derivation::col(subst_num_derivation(d0, x, t)),
        Derivation::Sub(y, a, d0) => Derivation::sub(
            y,
            subst_num_abstraction(a, x, t),
            subst_num_derivation(d0, x, t),
        ),
    }
}

fn subst_num_abstraction(a: &Abstraction, x: &str, t: &NumTerm) -> Abstraction {
    if a.binder == x {
        a.clone()
    } else {
        Abstraction::new(&a.binder, a.body.subst_num(x, t))
    }
}

fn subst_num_family(fam: &Arc<PremiseFamily>, x: &str, t: &NumTerm) -> Arc<PremiseFamily> {
    match &**fam {
        PremiseFamily::Template { param, schema } => {
            if param == x {
                fam.clone()
            } else {
                Arc::new(PremiseFamily::Template {
                    param: param.clone(),
                    schema: subst_num_derivation(schema, x, t),
                })
            }
        }
        PremiseFamily::Selector { parent } => Arc::new(PremiseFamily::Selector {
            parent: subst_num_derivation(parent, x, t),
        }),
        PremiseFamily::MapRed { inner } => Arc::new(PremiseFamily::MapRed {
            inner: subst_num_family(inner, x, t),
        }),
    }
}

// -------------------------------------------------------------------------
// Equality (structural, formulas up to alpha, template parameters up to
// renaming)

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Derivation::Ax(a), Derivation::Ax(b)) => a == b,
            (Derivation::AndI(f, a0, a1), Derivation::AndI(g, b0, b1)) => {
                f == g && a0 == b0 && a1 == b1
            }
            (Derivation::OrI(j, f, a0), Derivation::OrI(k, g, b0)) => {
                j == k && f == g && a0 == b0
            }
            (Derivation::OmI(f, fa), Derivation::OmI(g, fb)) => f == g && fa == fb,
            (Derivation::ExI(j, f, a0), Derivation::ExI(k, g, b0)) => {
                j == k && f == g && a0 == b0
            }
            (Derivation::AllSetI(y, f, a0), Derivation::AllSetI(z, g, b0)) => {
                f == g
                    && if y == z {
                        a0 == b0
                    } else {
                        let probe = "\u{a7}eig";
                        rename_free_set(a0, y, probe) == rename_free_set(b0, z, probe)
                    }
            }
            (Derivation::OrSetI(s, f, a0), Derivation::OrSetI(t, g, b0)) => {
                s == t && f == g && a0 == b0
            }
            (Derivation::Cut(c, a0, a1), Derivation::Cut(e, b0, b1)) => {
                c == e && a0 == b0 && a1 == b1
            }
            (Derivation::R(c, a0, a1), Derivation::R(e, b0, b1)) => {
                c == e && a0 == b0 && a1 == b1
            }
            (Derivation::E(a0), Derivation::E(b0)) => a0 == b0,
            (Derivation::Ew(a0), Derivation::Ew(b0)) => a0 == b0,
            (Derivation::Col(a0), Derivation::Col(b0)) => a0 == b0,
            (Derivation::Sub(x, s, a0), Derivation::Sub(y, t, b0)) => {
                s == t
                    && if x == y {
                        a0 == b0
                    } else {
                        let probe = "\u{a7}sub";
                        rename_free_set(a0, x, probe) == rename_free_set(b0, y, probe)
                    }
            }
            _ => false,
        }
    }
}
impl Eq for Derivation {}

impl PartialEq for PremiseFamily {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                PremiseFamily::Template { param: p, schema: s },
                PremiseFamily::Template { param: q, schema: t },
            ) => {
                if p == q {
                    s == t
                } else {
                    let probe = NumTerm::var("\u{a7}tmpl");
                    subst_num_derivation(s, p, &probe) == subst_num_derivation(t, q, &probe)
                }
            }
            (PremiseFamily::Selector { parent: a }, PremiseFamily::Selector { parent: b }) => {
                a == b
            }
            (PremiseFamily::MapRed { inner: a }, PremiseFamily::MapRed { inner: b }) => a == b,
            _ => false,
        }
    }
}
impl Eq for PremiseFamily {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{Formula, NumTerm, Sequent};

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

    #[test]
    fn end_sequent_of_axiom() {
        let s = Sequent::from_formulas([eq00(), eq00().negate()]);
        assert_eq!(end_sequent(&Derivation::Ax(s.clone())).unwrap(), s);
    }

    #[test]
    fn end_sequent_of_cut_example() {
        assert_eq!(
            end_sequent(&cut_example()).unwrap(),
            Sequent::singleton(eq00())
        );
    }

    #[test]
    fn end_sequent_of_sub_substitutes() {
        let t = Abstraction::new("x", Formula::eq_lit(NumTerm::var("x"), zero()));
        let inner = Derivation::ax(Sequent::singleton(Formula::or(
            Formula::set_lit("X", zero()),
            Formula::set_lit("X", zero()).negate(),
        )));
        // not a valid axiom, but end_sequent is purely structural
        let d = Derivation::sub("X", t, inner);
        assert_eq!(
            end_sequent(&d).unwrap(),
            Sequent::singleton(Formula::or(eq00(), eq00().negate()))
        );
    }

    #[test]
    fn degree_of_cut_and_erasers() {
        assert_eq!(degree(&cut_example()).unwrap(), 1);
        assert_eq!(degree(&Derivation::e(cut_example())).unwrap(), 0);
        assert_eq!(degree(&Derivation::ew(cut_example())).unwrap(), 0);
        assert_eq!(degree(&Derivation::e(ax_true())).unwrap(), 0);
    }

    #[test]
    fn degree_of_r_uses_plain_rank() {
        let d = Derivation::r(eq00(), ax_true(), ax_pair());
        assert_eq!(degree(&d).unwrap(), 0);
    }

    #[test]
    fn proper_rejects_col_over_cut() {
        let d = Derivation::col(cut_example());
        assert!(matches!(is_proper(&d), Err(ProperViolation::ColDegree(_))));
        let ok = Derivation::col(Derivation::e(cut_example()));
        assert!(is_proper(&ok).is_ok());
    }

    #[test]
    fn proper_rejects_sub_off_col() {
        let t = Abstraction::new("x", Formula::eq_lit(NumTerm::var("x"), zero()));
        let bad = Derivation::sub("X", t.clone(), ax_true());
        assert!(matches!(is_proper(&bad), Err(ProperViolation::SubNotOnCol(_))));
        let good = Derivation::sub("X", t, Derivation::col(Derivation::e(cut_example())));
        assert!(is_proper(&good).is_ok());
    }

    #[test]
    fn validate_axioms() {
        assert!(validate(&ax_true()).is_ok());
        assert!(validate(&ax_pair()).is_ok());
        let bad = Derivation::ax(Sequent::singleton(Formula::lt_lit(zero(), zero())));
        assert!(matches!(validate(&bad), Err(CalcError::AxiomNotTrue(_))));
    }

    #[test]
    fn validate_rejects_escaping_eigenvariable() {
        // conclusion contains Y free via a weakened side formula
        let f = Formula::forall_set(
            "X",
            Formula::or(
                Formula::set_lit("X", zero()),
                Formula::set_lit("X", zero()).negate(),
            ),
        );
        let minor = all_set_minor(&f, "Y").unwrap();
        let side = Formula::set_lit("Y", zero());
        let prem = Derivation::ax(Sequent::from_formulas([minor, side.clone(), side.negate()]));
        let d = Derivation::all_set_i("Y", f, prem);
        assert!(matches!(
            validate(&d),
            Err(CalcError::EigenvariableEscapes(_))
        ));
    }

    #[test]
    fn validate_rejects_eigenvariable_reuse_on_path() {
        let f = Formula::forall_set(
            "X",
            Formula::or(
                Formula::set_lit("X", zero()),
                Formula::set_lit("X", zero()).negate(),
            ),
        );
        let minor = all_set_minor(&f, "Y").unwrap();
        let lit = match &minor {
            Formula::Or(a, _) => (**a).clone(),
            _ => unreachable!(),
        };
        let inner = Derivation::or_i(
            1,
            minor.clone(),
            Derivation::or_i(
                0,
                minor.clone(),
                Derivation::ax(Sequent::from_formulas([lit.clone(), lit.negate()])),
            ),
        );
        let once = Derivation::all_set_i("Y", f.clone(), inner.clone());
        assert!(validate(&once).is_ok());
        // nest the same eigenvariable again above itself
        let other = Derivation::all_set_i("Z2", f.clone(), {
            let minor2 = all_set_minor(&f, "Z2").unwrap();
            let lit2 = Formula::set_lit("Z2", zero());
            Derivation::or_i(
                1,
                minor2.clone(),
                Derivation::or_i(
                    0,
                    minor2,
                    Derivation::ax(Sequent::from_formulas([lit2.clone(), lit2.negate()])),
                ),
            )
        });
        let nested = Derivation::all_set_i(
            "Y",
            f.clone(),
            Derivation::and_i(Formula::and(f.clone(), f), once, other),
        );
        assert!(matches!(
            validate(&nested),
            Err(CalcError::EigenvariableClash(_))
        ));
    }

    #[test]
    fn template_sequent_and_validation() {
        let f = Formula::forall_num(
            "x",
            Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x")),
        );
        let schema = Derivation::ax(Sequent::singleton(Formula::eq_lit(
            NumTerm::var("n"),
            NumTerm::var("n"),
        )));
        let d = Derivation::om_i_template(f.clone(), "n", schema);
        assert_eq!(end_sequent(&d).unwrap(), Sequent::singleton(f));
        assert!(validate(&d).is_ok());
    }

    #[test]
    fn template_with_leaking_parameter_rejected() {
        let f = Formula::forall_num(
            "x",
            Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x")),
        );
        // side formula Eq(n,0) mentions the parameter
        let schema = Derivation::ax(Sequent::from_formulas([
            Formula::eq_lit(NumTerm::var("n"), NumTerm::var("n")),
            Formula::eq_lit(NumTerm::var("n"), zero()),
        ]));
        let d = Derivation::om_i_template(f, "n", schema);
        assert!(matches!(validate(&d), Err(CalcError::IllFormed(_))));
    }

    #[test]
    fn template_instantiation_equality_mod_param_name() {
        let f = Formula::forall_num(
            "x",
            Formula::eq_lit(NumTerm::var("x"), NumTerm::var("x")),
        );
        let mk = |p: &str| {
            Derivation::om_i_template(
                f.clone(),
                p,
                Derivation::ax(Sequent::singleton(Formula::eq_lit(
                    NumTerm::var(p),
                    NumTerm::var(p),
                ))),
            )
        };
        assert_eq!(mk("n"), mk("m"));
    }

    #[test]
    fn rename_separated_keeps_sequent() {
        let f = Formula::forall_set(
            "X",
            Formula::or(
                Formula::set_lit("X", zero()),
                Formula::set_lit("X", zero()).negate(),
            ),
        );
        let minor = all_set_minor(&f, "Y").unwrap();
        let lit = Formula::set_lit("Y", zero());
        let prem = Derivation::or_i(
            1,
            minor.clone(),
            Derivation::or_i(
                0,
                minor,
                Derivation::ax(Sequent::from_formulas([lit.clone(), lit.negate()])),
            ),
        );
        let d = Derivation::all_set_i("Y", f.clone(), prem);
        let r = rename_separated(&d);
        assert_eq!(end_sequent(&r).unwrap(), Sequent::singleton(f));
        assert!(validate(&r).is_ok());
        match &*r {
            Derivation::AllSetI(y, ..) => assert_ne!(y, "Y"),
            _ => panic!("shape changed"),
        }
    }

    #[test]
    fn e_pow_stacks() {
        let d = Derivation::e_pow(3, ax_true());
        assert!(matches!(&*d, Derivation::E(_)));
        assert_eq!(end_sequent(&d).unwrap(), Sequent::singleton(eq00()));
    }
}
