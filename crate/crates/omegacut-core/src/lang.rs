//! Syntax, classification, substitution, and literal evaluation for the
//! first-order/second-order language underlying the calculus.
//!
//! Formulas are kept in negation-normal form: negation occurs only on
//! literals, and `negate` computes the De Morgan dual. Second-order
//! quantification is parameter-free: the body of `ALL X`/`EX X` contains no
//! second-order quantifier and no free set variable other than the binder.
//!
//! Equality, ordering and hashing of formulas are all alpha-equivalence:
//! bound variables are compared positionally, free variables by name.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::fmt::Write as _;
use core::hash::{Hash, Hasher};

/// First-order terms: numerals built from `0` and `S`, plus number variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NumTerm {
    Zero,
    Succ(Box<NumTerm>),
    Var(String),
}

impl NumTerm {
    /// The numeral `S^n(0)`.
    pub fn numeral(n: u64) -> NumTerm {
        let mut t = NumTerm::Zero;
        for _ in 0..n {
            t = NumTerm::Succ(Box::new(t));
        }
        t
    }

    pub fn succ(self) -> NumTerm {
        NumTerm::Succ(Box::new(self))
    }

    pub fn var(name: &str) -> NumTerm {
        NumTerm::Var(name.to_owned())
    }

    /// Numeric value, if the term is closed.
    pub fn value(&self) -> Option<u64> {
        match self {
            NumTerm::Zero => Some(0),
            NumTerm::Succ(t) => t.value().map(|v| v + 1),
            NumTerm::Var(_) => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.value().is_some()
    }

    pub fn subst(&self, x: &str, t: &NumTerm) -> NumTerm {
        match self {
            NumTerm::Zero => NumTerm::Zero,
            NumTerm::Succ(inner) => NumTerm::Succ(Box::new(inner.subst(x, t))),
            NumTerm::Var(v) => {
                if v == x {
                    t.clone()
                } else {
                    self.clone()
                }
            }
        }
    }

    pub fn collect_free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            NumTerm::Zero => {}
            NumTerm::Succ(inner) => inner.collect_free_vars(out),
            NumTerm::Var(v) => {
                out.insert(v.clone());
            }
        }
    }

    pub fn has_var(&self, x: &str) -> bool {
        match self {
            NumTerm::Zero => false,
            NumTerm::Succ(inner) => inner.has_var(x),
            NumTerm::Var(v) => v == x,
        }
    }
}

/// A decision procedure for an additional primitive recursive relation.
pub struct CustomRelation {
    pub name: &'static str,
    pub arity: usize,
    pub eval: fn(&[u64]) -> bool,
}

impl fmt::Debug for CustomRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomRelation({})", self.name)
    }
}

/// Built-in relation symbols over numerals. `Custom` is the registration
/// point for further primitive recursive relations given as total decision
/// procedures; identity is by name.
#[derive(Debug, Clone, Copy)]
pub enum Relation {
    Eq,
    Lt,
    Le,
    Custom(&'static CustomRelation),
}

impl Relation {
    pub fn name(&self) -> &'static str {
        match self {
            Relation::Eq => "eq",
            Relation::Lt => "lt",
            Relation::Le => "le",
            Relation::Custom(c) => c.name,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Relation::Eq | Relation::Lt | Relation::Le => 2,
            Relation::Custom(c) => c.arity,
        }
    }

    pub fn eval(&self, args: &[u64]) -> bool {
        match self {
            Relation::Eq => args[0] == args[1],
            Relation::Lt => args[0] < args[1],
            Relation::Le => args[0] <= args[1],
            Relation::Custom(c) => (c.eval)(args),
        }
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name()
    }
}
impl Eq for Relation {}
impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Relation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name().cmp(other.name())
    }
}
impl Hash for Relation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name().hash(state);
    }
}

/// Formulas in negation-normal form.
#[derive(Debug, Clone)]
pub enum Formula {
    /// `R(t1,...,tn)` or its negation.
    RelLit {
        rel: Relation,
        args: Vec<NumTerm>,
        positive: bool,
    },
    /// `X(t)` or its negation.
    SetLit {
        var: String,
        arg: NumTerm,
        positive: bool,
    },
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    ForallNum(String, Box<Formula>),
    ExistsNum(String, Box<Formula>),
    ForallSet(String, Box<Formula>),
    ExistsSet(String, Box<Formula>),
}

/// Most specific syntactic class of a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormulaClass {
    Literal,
    /// No second-order quantifier.
    Arithmetical,
    /// No subformula of the form `EX X A`.
    Pi1,
    General,
}

/// Errors from language-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LangError {
    /// `eval_literal` was applied to something other than a closed relation literal.
    NotClosedLiteral,
}

impl fmt::Display for LangError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LangError::NotClosedLiteral => write!(f, "not a closed relation literal"),
        }
    }
}

impl Formula {
    pub fn eq_lit(t: NumTerm, u: NumTerm) -> Formula {
        Formula::RelLit {
            rel: Relation::Eq,
            args: alloc::vec![t, u],
            positive: true,
        }
    }

    pub fn lt_lit(t: NumTerm, u: NumTerm) -> Formula {
        Formula::RelLit {
            rel: Relation::Lt,
            args: alloc::vec![t, u],
            positive: true,
        }
    }

    pub fn le_lit(t: NumTerm, u: NumTerm) -> Formula {
        Formula::RelLit {
            rel: Relation::Le,
            args: alloc::vec![t, u],
            positive: true,
        }
    }

    pub fn set_lit(var: &str, arg: NumTerm) -> Formula {
        Formula::SetLit {
            var: var.to_owned(),
            arg,
            positive: true,
        }
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn forall_num(x: &str, body: Formula) -> Formula {
        Formula::ForallNum(x.to_owned(), Box::new(body))
    }

    pub fn exists_num(x: &str, body: Formula) -> Formula {
        Formula::ExistsNum(x.to_owned(), Box::new(body))
    }

    pub fn forall_set(x: &str, body: Formula) -> Formula {
        Formula::ForallSet(x.to_owned(), Box::new(body))
    }

    pub fn exists_set(x: &str, body: Formula) -> Formula {
        Formula::ExistsSet(x.to_owned(), Box::new(body))
    }

    /// The De Morgan dual. An involution up to alpha-equivalence.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::RelLit { rel, args, positive } => Formula::RelLit {
                rel: *rel,
                args: args.clone(),
                positive: !positive,
            },
            Formula::SetLit { var, arg, positive } => Formula::SetLit {
                var: var.clone(),
                arg: arg.clone(),
                positive: !positive,
            },
            Formula::And(a, b) => Formula::or(a.negate(), b.negate()),
            Formula::Or(a, b) => Formula::and(a.negate(), b.negate()),
            Formula::ForallNum(x, a) => Formula::ExistsNum(x.clone(), Box::new(a.negate())),
            Formula::ExistsNum(x, a) => Formula::ForallNum(x.clone(), Box::new(a.negate())),
            Formula::ForallSet(x, a) => Formula::ExistsSet(x.clone(), Box::new(a.negate())),
            Formula::ExistsSet(x, a) => Formula::ForallSet(x.clone(), Box::new(a.negate())),
        }
    }

    /// Rank: 0 for literals and both second-order quantifier forms, max+1 for
    /// binary connectives, body+1 for first-order quantifiers.
    pub fn rank(&self) -> u64 {
        match self {
            Formula::RelLit { .. } | Formula::SetLit { .. } => 0,
            Formula::ForallSet(..) | Formula::ExistsSet(..) => 0,
            Formula::And(a, b) | Formula::Or(a, b) => a.rank().max(b.rank()) + 1,
            Formula::ForallNum(_, a) | Formula::ExistsNum(_, a) => a.rank() + 1,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::RelLit { .. } | Formula::SetLit { .. })
    }

    /// Contains no second-order quantifier.
    pub fn is_arithmetical(&self) -> bool {
        match self {
            Formula::RelLit { .. } | Formula::SetLit { .. } => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_arithmetical() && b.is_arithmetical(),
            Formula::ForallNum(_, a) | Formula::ExistsNum(_, a) => a.is_arithmetical(),
            Formula::ForallSet(..) | Formula::ExistsSet(..) => false,
        }
    }

    /// Contains no subformula of the form `EX X A`.
    pub fn is_pi1(&self) -> bool {
        match self {
            Formula::RelLit { .. } | Formula::SetLit { .. } => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_pi1() && b.is_pi1(),
            Formula::ForallNum(_, a) | Formula::ExistsNum(_, a) => a.is_pi1(),
            Formula::ForallSet(_, a) => a.is_pi1(),
            Formula::ExistsSet(..) => false,
        }
    }

    pub fn classify(&self) -> FormulaClass {
        if self.is_literal() {
            FormulaClass::Literal
        } else if self.is_arithmetical() {
            FormulaClass::Arithmetical
        } else if self.is_pi1() {
            FormulaClass::Pi1
        } else {
            FormulaClass::General
        }
    }

    /// Truth of a closed relation literal.
    pub fn eval_literal(&self) -> Result<bool, LangError> {
        match self {
            Formula::RelLit { rel, args, positive } => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(a.value().ok_or(LangError::NotClosedLiteral)?);
                }
                let v = rel.eval(&vals);
                Ok(if *positive { v } else { !v })
            }
            _ => Err(LangError::NotClosedLiteral),
        }
    }

    /// Free number variables and free set variables.
    pub fn free_vars(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut num = BTreeSet::new();
        let mut set = BTreeSet::new();
        self.collect_free(&mut num, &mut set, &mut Vec::new(), &mut Vec::new());
        (num, set)
    }

    fn collect_free(
        &self,
        num: &mut BTreeSet<String>,
        set: &mut BTreeSet<String>,
        nbound: &mut Vec<String>,
        sbound: &mut Vec<String>,
    ) {
        match self {
            Formula::RelLit { args, .. } => {
                let mut vars = BTreeSet::new();
                for a in args {
                    a.collect_free_vars(&mut vars);
                }
                for v in vars {
                    if !nbound.contains(&v) {
                        num.insert(v);
                    }
                }
            }
            Formula::SetLit { var, arg, .. } => {
                if !sbound.contains(var) {
                    set.insert(var.clone());
                }
                let mut vars = BTreeSet::new();
                arg.collect_free_vars(&mut vars);
                for v in vars {
                    if !nbound.contains(&v) {
                        num.insert(v);
                    }
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(num, set, nbound, sbound);
                b.collect_free(num, set, nbound, sbound);
            }
            Formula::ForallNum(x, a) | Formula::ExistsNum(x, a) => {
                nbound.push(x.clone());
                a.collect_free(num, set, nbound, sbound);
                nbound.pop();
            }
            Formula::ForallSet(x, a) | Formula::ExistsSet(x, a) => {
                sbound.push(x.clone());
                a.collect_free(num, set, nbound, sbound);
                sbound.pop();
            }
        }
    }

    pub fn has_free_num_var(&self, x: &str) -> bool {
        self.free_vars().0.contains(x)
    }

    pub fn has_free_set_var(&self, x: &str) -> bool {
        self.free_vars().1.contains(x)
    }

    /// Capture-avoiding substitution of a term for a free number variable.
    pub fn subst_num(&self, x: &str, t: &NumTerm) -> Formula {
        match self {
            Formula::RelLit { rel, args, positive } => Formula::RelLit {
                rel: *rel,
                args: args.iter().map(|a| a.subst(x, t)).collect(),
                positive: *positive,
            },
            Formula::SetLit { var, arg, positive } => Formula::SetLit {
                var: var.clone(),
                arg: arg.subst(x, t),
                positive: *positive,
            },
            Formula::And(a, b) => Formula::and(a.subst_num(x, t), b.subst_num(x, t)),
            Formula::Or(a, b) => Formula::or(a.subst_num(x, t), b.subst_num(x, t)),
            Formula::ForallNum(y, a) => {
                let (y2, a2) = subst_under_num_binder(y, a, x, t);
                Formula::ForallNum(y2, Box::new(a2))
            }
            Formula::ExistsNum(y, a) => {
                let (y2, a2) = subst_under_num_binder(y, a, x, t);
                Formula::ExistsNum(y2, Box::new(a2))
            }
            Formula::ForallSet(y, a) => {
                Formula::ForallSet(y.clone(), Box::new(a.subst_num(x, t)))
            }
            Formula::ExistsSet(y, a) => {
                Formula::ExistsSet(y.clone(), Box::new(a.subst_num(x, t)))
            }
        }
    }

    /// Substitution of an abstraction for a free set variable. Literals
    /// `X(s)` become the abstraction body at `s` (negated when the literal is
    /// negative); second-order quantified subformulas are unchanged because
    /// they are parameter-free.
    pub fn subst_set(&self, x: &str, t: &Abstraction) -> Formula {
        match self {
            Formula::RelLit { .. } => self.clone(),
            Formula::SetLit { var, arg, positive } => {
                if var == x {
                    let inst = t.apply(arg);
                    if *positive {
                        inst
                    } else {
                        inst.negate()
                    }
                } else {
                    self.clone()
                }
            }
            Formula::And(a, b) => Formula::and(a.subst_set(x, t), b.subst_set(x, t)),
            Formula::Or(a, b) => Formula::or(a.subst_set(x, t), b.subst_set(x, t)),
            Formula::ForallNum(y, a) => {
                // Rename the binder if it would capture a free variable of the body.
                let avoid = t.body_free_num_vars();
                if avoid.contains(y) && a.has_free_set_var(x) {
                    let y2 = fresh_num_var(y, &avoid, a);
                    let a2 = a.subst_num(y, &NumTerm::var(&y2));
                    Formula::ForallNum(y2, Box::new(a2.subst_set(x, t)))
                } else {
                    Formula::ForallNum(y.clone(), Box::new(a.subst_set(x, t)))
                }
            }
            Formula::ExistsNum(y, a) => {
                let avoid = t.body_free_num_vars();
                if avoid.contains(y) && a.has_free_set_var(x) {
                    let y2 = fresh_num_var(y, &avoid, a);
                    let a2 = a.subst_num(y, &NumTerm::var(&y2));
                    Formula::ExistsNum(y2, Box::new(a2.subst_set(x, t)))
                } else {
                    Formula::ExistsNum(y.clone(), Box::new(a.subst_set(x, t)))
                }
            }
            // Parameter-free: no free set variable other than the binder occurs.
            Formula::ForallSet(..) | Formula::ExistsSet(..) => self.clone(),
        }
    }

    /// Rename every free occurrence of set variable `old` to `new`.
    pub fn rename_set_var(&self, old: &str, new: &str) -> Formula {
        match self {
            Formula::RelLit { .. } => self.clone(),
            Formula::SetLit { var, arg, positive } => Formula::SetLit {
                var: if var == old { new.to_owned() } else { var.clone() },
                arg: arg.clone(),
                positive: *positive,
            },
            Formula::And(a, b) => {
                Formula::and(a.rename_set_var(old, new), b.rename_set_var(old, new))
            }
            Formula::Or(a, b) => {
                Formula::or(a.rename_set_var(old, new), b.rename_set_var(old, new))
            }
            Formula::ForallNum(y, a) => {
                Formula::ForallNum(y.clone(), Box::new(a.rename_set_var(old, new)))
            }
            Formula::ExistsNum(y, a) => {
                Formula::ExistsNum(y.clone(), Box::new(a.rename_set_var(old, new)))
            }
            Formula::ForallSet(y, a) => {
                if y == old {
                    self.clone()
                } else {
                    Formula::ForallSet(y.clone(), Box::new(a.rename_set_var(old, new)))
                }
            }
            Formula::ExistsSet(y, a) => {
                if y == old {
                    self.clone()
                } else {
                    Formula::ExistsSet(y.clone(), Box::new(a.rename_set_var(old, new)))
                }
            }
        }
    }

    /// Alpha-invariant key: bound variables are written positionally, free
    /// variables by name. Equality, ordering and hashing all go through this.
    pub fn canon_key(&self) -> String {
        let mut out = String::new();
        self.write_canon(&mut out, &mut Vec::new(), &mut Vec::new());
        out
    }

    fn write_canon(&self, out: &mut String, nenv: &mut Vec<String>, senv: &mut Vec<String>) {
        fn term(t: &NumTerm, out: &mut String, nenv: &[String]) {
            match t {
                NumTerm::Zero => out.push('0'),
                NumTerm::Succ(inner) => {
                    out.push('s');
                    term(inner, out, nenv);
                }
                NumTerm::Var(v) => match nenv.iter().rposition(|n| n == v) {
                    Some(i) => {
                        let _ = write!(out, "^{i}");
                    }
                    None => {
                        let _ = write!(out, "${v};");
                    }
                },
            }
        }
        match self {
            Formula::RelLit { rel, args, positive } => {
                let _ = write!(out, "({}{}", if *positive { "" } else { "~" }, rel.name());
                for a in args {
                    out.push(' ');
                    term(a, out, nenv);
                }
                out.push(')');
            }
            Formula::SetLit { var, arg, positive } => {
                let _ = write!(out, "({}@", if *positive { "" } else { "~" });
                match senv.iter().rposition(|n| n == var) {
                    Some(i) => {
                        let _ = write!(out, "^{i}");
                    }
                    None => {
                        let _ = write!(out, "${var};");
                    }
                }
                out.push(' ');
                term(arg, out, nenv);
                out.push(')');
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                out.push('(');
                out.push(if matches!(self, Formula::And(..)) { '&' } else { '|' });
                a.write_canon(out, nenv, senv);
                b.write_canon(out, nenv, senv);
                out.push(')');
            }
            Formula::ForallNum(x, a) | Formula::ExistsNum(x, a) => {
                out.push('(');
                out.push(if matches!(self, Formula::ForallNum(..)) { 'A' } else { 'E' });
                nenv.push(x.clone());
                a.write_canon(out, nenv, senv);
                nenv.pop();
                out.push(')');
            }
            Formula::ForallSet(x, a) | Formula::ExistsSet(x, a) => {
                out.push('(');
                out.push(if matches!(self, Formula::ForallSet(..)) { 'W' } else { 'X' });
                senv.push(x.clone());
                a.write_canon(out, nenv, senv);
                senv.pop();
                out.push(')');
            }
        }
    }
}

/// Substitute `t` for `x` under a number binder `y`, renaming `y` when it
/// would capture a free variable of `t`.
fn subst_under_num_binder(
    y: &str,
    body: &Formula,
    x: &str,
    t: &NumTerm,
) -> (String, Formula) {
    if y == x {
        return (y.to_owned(), (*body).clone());
    }
    let mut t_vars = BTreeSet::new();
    t.collect_free_vars(&mut t_vars);
    if t_vars.contains(y) && body.has_free_num_var(x) {
        let y2 = fresh_num_var(y, &t_vars, body);
        let renamed = body.subst_num(y, &NumTerm::var(&y2));
        (y2, renamed.subst_num(x, t))
    } else {
        (y.to_owned(), body.subst_num(x, t))
    }
}

fn fresh_num_var(base: &str, avoid: &BTreeSet<String>, body: &Formula) -> String {
    let (body_num, _) = body.free_vars();
    let mut i = 0u64;
    loop {
        let cand = alloc::format!("{base}_{i}");
        if !avoid.contains(&cand) && !body_num.contains(&cand) {
            return cand;
        }
        i += 1;
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.canon_key() == other.canon_key()
    }
}
impl Eq for Formula {}
impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canon_key().cmp(&other.canon_key())
    }
}
impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canon_key().hash(state);
    }
}

/// An abstraction `lambda x. A` with arithmetical body (free set variables
/// permitted in the body).
#[derive(Debug, Clone)]
pub struct Abstraction {
    pub binder: String,
    pub body: Formula,
}

impl Abstraction {
    pub fn new(binder: &str, body: Formula) -> Abstraction {
        Abstraction {
            binder: binder.to_owned(),
            body,
        }
    }

    /// The body with the binder replaced by `arg`.
    pub fn apply(&self, arg: &NumTerm) -> Formula {
        self.body.subst_num(&self.binder, arg)
    }

    /// Free number variables of the body other than the binder.
    pub fn body_free_num_vars(&self) -> BTreeSet<String> {
        let (mut num, _) = self.body.free_vars();
        num.remove(&self.binder);
        num
    }

    pub fn is_arithmetical(&self) -> bool {
        self.body.is_arithmetical()
    }
}

impl PartialEq for Abstraction {
    fn eq(&self, other: &Self) -> bool {
        // Alpha on the binder: compare bodies at a common fresh variable.
        let probe = NumTerm::var("\u{a7}abs");
        self.body.subst_num(&self.binder, &probe)
            == other.body.subst_num(&other.binder, &probe)
    }
}
impl Eq for Abstraction {}

/// A sequent: a finite set of formulas, deduplicated under alpha-equivalence.
/// Insertion order never affects equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    items: Vec<Formula>, // sorted by canon_key, no duplicates
}

impl Sequent {
    pub fn new() -> Sequent {
        Sequent { items: Vec::new() }
    }

    pub fn singleton(f: Formula) -> Sequent {
        let mut s = Sequent::new();
        s.insert(f);
        s
    }

    pub fn from_formulas<I: IntoIterator<Item = Formula>>(iter: I) -> Sequent {
        let mut s = Sequent::new();
        for f in iter {
            s.insert(f);
        }
        s
    }

    pub fn insert(&mut self, f: Formula) {
        match self.items.binary_search(&f) {
            Ok(_) => {}
            Err(pos) => self.items.insert(pos, f),
        }
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.items.binary_search(f).is_ok()
    }

    pub fn union(&self, other: &Sequent) -> Sequent {
        let mut s = self.clone();
        for f in &other.items {
            s.insert(f.clone());
        }
        s
    }

    /// Set difference by a single formula (up to alpha-equivalence).
    pub fn without(&self, f: &Formula) -> Sequent {
        Sequent {
            items: self.items.iter().filter(|g| *g != f).cloned().collect(),
        }
    }

    pub fn minus(&self, other: &Sequent) -> Sequent {
        Sequent {
            items: self
                .items
                .iter()
                .filter(|g| !other.contains(g))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Sequent) -> bool {
        self.items.iter().all(|f| other.contains(f))
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Formula> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Every member is a Pi1 formula (or stronger).
    pub fn is_pi1(&self) -> bool {
        self.items.iter().all(|f| f.is_pi1())
    }

    pub fn subst_set(&self, x: &str, t: &Abstraction) -> Sequent {
        Sequent::from_formulas(self.items.iter().map(|f| f.subst_set(x, t)))
    }

    pub fn subst_num(&self, x: &str, t: &NumTerm) -> Sequent {
        Sequent::from_formulas(self.items.iter().map(|f| f.subst_num(x, t)))
    }

    pub fn rename_set_var(&self, old: &str, new: &str) -> Sequent {
        Sequent::from_formulas(self.items.iter().map(|f| f.rename_set_var(old, new)))
    }

    pub fn free_vars(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut num = BTreeSet::new();
        let mut set = BTreeSet::new();
        for f in &self.items {
            let (n, s) = f.free_vars();
            num.extend(n);
            set.extend(s);
        }
        (num, set)
    }

    pub fn has_free_set_var(&self, x: &str) -> bool {
        self.free_vars().1.contains(x)
    }

    pub fn has_free_num_var(&self, x: &str) -> bool {
        self.free_vars().0.contains(x)
    }
}

impl FromIterator<Formula> for Sequent {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Sequent {
        Sequent::from_formulas(iter)
    }
}
