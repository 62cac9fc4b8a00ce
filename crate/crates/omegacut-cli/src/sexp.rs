//! Concrete S-expression syntax for terms, formulas, and derivations,
//! with a deterministic renderer (sorted sequents, canonical bound names).
//!
//! Grammar:
//! - terms: `0`, `(s t)`, decimal numerals
//! - formulas: `(eq t u)`, `(lt t u)`, `(le t u)`, `(sv X t)`, `(not F)`,
//!   `(and F G)`, `(or F G)`, `(all x F)`, `(ex x F)`, `(ALL X F)`,
//!   `(EX X F)`; abstraction `(abs x F)`
//! - derivations: `(ax (seq F*))`, `(andI F d0 d1)`, `(orI k F d)`,
//!   `(omI F (template n d))`, `(exI k F d)`, `(ALLI Y F d)`,
//!   `(ORT (abs x F) G d)`, `(cut F d0 d1)`, `(r F d0 d1)`, `(e d)`,
//!   `(ew d)`, `(col d)`, `(sub X (abs x F) d)`
//!
//! Lazy premise families arising from reduction render as `(selector d)`
//! and `(mapred fam)` in the `omI` position; the parser accepts them back.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use omegacut_core::calculus::{Derivation, PremiseFamily, D};
use omegacut_core::lang::{Abstraction, Formula, NumTerm, Relation, Sequent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

fn err<T>(pos: (usize, usize), msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line: pos.0,
        col: pos.1,
        msg: msg.into(),
    })
}

// -------------------------------------------------------------------------
// Reader

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, (usize, usize)),
    List(Vec<Sexp>, (usize, usize)),
}

fn read_sexp(src: &str) -> Result<Sexp, ParseError> {
    #[derive(Debug)]
    enum Tok {
        L((usize, usize)),
        R((usize, usize)),
        Atom(String, (usize, usize)),
    }
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        let pos = (line, col);
        match c {
            '\n' => {
                line += 1;
                col = 1;
                continue;
            }
            ';' => {
                for c2 in chars.by_ref() {
                    if c2 == '\n' {
                        line += 1;
                        col = 1;
                        break;
                    }
                }
                continue;
            }
            '(' => toks.push(Tok::L(pos)),
            ')' => toks.push(Tok::R(pos)),
            c if c.is_whitespace() => {}
            c => {
                let mut atom = String::new();
                atom.push(c);
                while let Some(&c2) = chars.peek() {
                    if c2.is_whitespace() || c2 == '(' || c2 == ')' || c2 == ';' {
                        break;
                    }
                    atom.push(c2);
                    chars.next();
                    col += 1;
                }
                toks.push(Tok::Atom(atom, pos));
            }
        }
        col += 1;
    }

    let mut stack: Vec<(Vec<Sexp>, (usize, usize))> = Vec::new();
    let mut done: Option<Sexp> = None;
    for t in toks {
        if done.is_some() {
            let p = match &t {
                Tok::L(p) | Tok::R(p) => *p,
                Tok::Atom(_, p) => *p,
            };
            return err(p, "trailing input after expression");
        }
        match t {
            Tok::L(p) => stack.push((Vec::new(), p)),
            Tok::R(p) => match stack.pop() {
                Some((items, lp)) => {
                    let s = Sexp::List(items, lp);
                    match stack.last_mut() {
                        Some((parent, _)) => parent.push(s),
                        None => done = Some(s),
                    }
                }
                None => return err(p, "unmatched ')'"),
            },
            Tok::Atom(a, p) => {
                let s = Sexp::Atom(a, p);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(s),
                    None => done = Some(s),
                }
            }
        }
    }
    if let Some((_, p)) = stack.last() {
        return err(*p, "unclosed '('");
    }
    match done {
        Some(s) => Ok(s),
        None => err((1, 1), "empty input"),
    }
}

// -------------------------------------------------------------------------
// Parser

fn atom<'a>(s: &'a Sexp, what: &str) -> Result<(&'a str, (usize, usize)), ParseError> {
    match s {
        Sexp::Atom(a, p) => Ok((a, *p)),
        Sexp::List(_, p) => err(*p, format!("expected {what}, found a list")),
    }
}

fn list<'a>(s: &'a Sexp, what: &str) -> Result<(&'a [Sexp], (usize, usize)), ParseError> {
    match s {
        Sexp::List(items, p) => Ok((items, *p)),
        Sexp::Atom(a, p) => err(*p, format!("expected {what}, found `{a}`")),
    }
}

fn head<'a>(s: &'a Sexp, what: &str) -> Result<(&'a str, &'a [Sexp], (usize, usize)), ParseError> {
    let (items, p) = list(s, what)?;
    match items.first() {
        Some(Sexp::Atom(h, _)) => Ok((h, &items[1..], p)),
        _ => err(p, format!("expected {what} keyword")),
    }
}

fn expect_arity(
    args: &[Sexp],
    n: usize,
    kw: &str,
    pos: (usize, usize),
) -> Result<(), ParseError> {
    if args.len() == n {
        Ok(())
    } else {
        err(pos, format!("`{kw}` takes {n} arguments, got {}", args.len()))
    }
}

fn parse_name(s: &Sexp, what: &str) -> Result<String, ParseError> {
    let (a, p) = atom(s, what)?;
    if a.chars().next().map(|c| c.is_ascii_digit()).unwrap_or(true) {
        return err(p, format!("`{a}` is not a valid {what}"));
    }
    Ok(a.to_string())
}

fn parse_nat(s: &Sexp, what: &str) -> Result<u64, ParseError> {
    let (a, p) = atom(s, what)?;
    a.parse::<u64>()
        .map_err(|_| ParseError {
            line: p.0,
            col: p.1,
            msg: format!("`{a}` is not a {what}"),
        })
}

fn parse_term(s: &Sexp) -> Result<NumTerm, ParseError> {
    match s {
        Sexp::Atom(a, p) => {
            if a.chars().all(|c| c.is_ascii_digit()) {
                match a.parse::<u64>() {
                    Ok(n) => Ok(NumTerm::numeral(n)),
                    Err(_) => err(*p, format!("numeral `{a}` out of range")),
                }
            } else {
                Ok(NumTerm::var(a))
            }
        }
        Sexp::List(..) => {
            let (kw, args, p) = head(s, "term")?;
            if kw != "s" {
                return err(p, format!("unknown term constructor `{kw}`"));
            }
            expect_arity(args, 1, "s", p)?;
            Ok(parse_term(&args[0])?.succ())
        }
    }
}

fn parse_formula(s: &Sexp) -> Result<Formula, ParseError> {
    let (kw, args, p) = head(s, "formula")?;
    match kw {
        "eq" | "lt" | "le" => {
            expect_arity(args, 2, kw, p)?;
            let a = parse_term(&args[0])?;
            let b = parse_term(&args[1])?;
            Ok(match kw {
                "eq" => Formula::eq_lit(a, b),
                "lt" => Formula::lt_lit(a, b),
                _ => Formula::le_lit(a, b),
            })
        }
        "sv" => {
            expect_arity(args, 2, kw, p)?;
            let v = parse_name(&args[0], "set variable")?;
            Ok(Formula::set_lit(&v, parse_term(&args[1])?))
        }
        "not" => {
            expect_arity(args, 1, kw, p)?;
            Ok(parse_formula(&args[0])?.negate())
        }
        "and" | "or" => {
            expect_arity(args, 2, kw, p)?;
            let a = parse_formula(&args[0])?;
            let b = parse_formula(&args[1])?;
            Ok(if kw == "and" {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            })
        }
        "all" | "ex" => {
            expect_arity(args, 2, kw, p)?;
            let v = parse_name(&args[0], "number variable")?;
            let b = parse_formula(&args[1])?;
            Ok(if kw == "all" {
                Formula::forall_num(&v, b)
            } else {
                Formula::exists_num(&v, b)
            })
        }
        "ALL" | "EX" => {
            expect_arity(args, 2, kw, p)?;
            let v = parse_name(&args[0], "set variable")?;
            let b = parse_formula(&args[1])?;
            Ok(if kw == "ALL" {
                Formula::forall_set(&v, b)
            } else {
                Formula::exists_set(&v, b)
            })
        }
        _ => err(p, format!("unknown formula constructor `{kw}`")),
    }
}

fn parse_abs(s: &Sexp) -> Result<Abstraction, ParseError> {
    let (kw, args, p) = head(s, "abstraction")?;
    if kw != "abs" {
        return err(p, "expected `(abs x F)`");
    }
    expect_arity(args, 2, "abs", p)?;
    let v = parse_name(&args[0], "number variable")?;
    Ok(Abstraction::new(&v, parse_formula(&args[1])?))
}

fn parse_sequent(s: &Sexp) -> Result<Sequent, ParseError> {
    let (kw, args, p) = head(s, "sequent")?;
    if kw != "seq" {
        return err(p, "expected `(seq F*)`");
    }
    let mut out = Sequent::new();
    for a in args {
        out.insert(parse_formula(a)?);
    }
    Ok(out)
}

fn parse_family(s: &Sexp) -> Result<Arc<PremiseFamily>, ParseError> {
    let (kw, args, p) = head(s, "premise family")?;
    match kw {
        "template" => {
            expect_arity(args, 2, kw, p)?;
            let v = parse_name(&args[0], "number variable")?;
            Ok(Arc::new(PremiseFamily::Template {
                param: v,
                schema: parse_node(&args[1])?,
            }))
        }
        "selector" => {
            expect_arity(args, 1, kw, p)?;
            Ok(Arc::new(PremiseFamily::Selector {
                parent: parse_node(&args[0])?,
            }))
        }
        "mapred" => {
            expect_arity(args, 1, kw, p)?;
            Ok(Arc::new(PremiseFamily::MapRed {
                inner: parse_family(&args[0])?,
            }))
        }
        _ => err(p, format!("unknown premise family `{kw}`")),
    }
}

fn parse_node(s: &Sexp) -> Result<D, ParseError> {
    let (kw, args, p) = head(s, "derivation")?;
    match kw {
        "ax" => {
            expect_arity(args, 1, kw, p)?;
            Ok(Derivation::ax(parse_sequent(&args[0])?))
        }
        "andI" => {
            expect_arity(args, 3, kw, p)?;
            Ok(Derivation::and_i(
                parse_formula(&args[0])?,
                parse_node(&args[1])?,
                parse_node(&args[2])?,
            ))
        }
        "orI" => {
            expect_arity(args, 3, kw, p)?;
            let k = parse_nat(&args[0], "disjunct index")?;
            if k > 1 {
                return err(p, "disjunct index must be 0 or 1");
            }
            Ok(Derivation::or_i(
                k as usize,
                parse_formula(&args[1])?,
                parse_node(&args[2])?,
            ))
        }
        "omI" => {
            expect_arity(args, 2, kw, p)?;
            Ok(Derivation::om_i(
                parse_formula(&args[0])?,
                parse_family(&args[1])?,
            ))
        }
        "exI" => {
            expect_arity(args, 3, kw, p)?;
            Ok(Derivation::ex_i(
                parse_nat(&args[0], "witness numeral")?,
                parse_formula(&args[1])?,
                parse_node(&args[2])?,
            ))
        }
        "ALLI" => {
            expect_arity(args, 3, kw, p)?;
            let y = parse_name(&args[0], "eigenvariable")?;
            Ok(Derivation::all_set_i(
                &y,
                parse_formula(&args[1])?,
                parse_node(&args[2])?,
            ))
        }
        "ORT" => {
            expect_arity(args, 3, kw, p)?;
            Ok(Derivation::or_set_i(
                parse_abs(&args[0])?,
                parse_formula(&args[1])?,
                parse_node(&args[2])?,
            ))
        }
        "cut" | "r" => {
            expect_arity(args, 3, kw, p)?;
            let c = parse_formula(&args[0])?;
            let d0 = parse_node(&args[1])?;
            let d1 = parse_node(&args[2])?;
            Ok(if kw == "cut" {
                Derivation::cut(c, d0, d1)
            } else {
                Derivation::r(c, d0, d1)
            })
        }
        "e" | "ew" | "col" => {
            expect_arity(args, 1, kw, p)?;
            let d0 = parse_node(&args[0])?;
            Ok(match kw {
                "e" => Derivation::e(d0),
                "ew" => Derivation::ew(d0),
                _ => Derivation::col(d0),
            })
        }
        "sub" => {
            expect_arity(args, 3, kw, p)?;
            let x = parse_name(&args[0], "set variable")?;
            Ok(Derivation::sub(
                &x,
                parse_abs(&args[1])?,
                parse_node(&args[2])?,
            ))
        }
        _ => err(p, format!("unknown derivation constructor `{kw}`")),
    }
}

/// Parse a derivation without validating it (used for trace replay, where
/// intermediate reducts need not be in the validated fragment).
pub fn parse_derivation_unchecked(text: &str) -> Result<D, ParseError> {
    parse_node(&read_sexp(text)?)
}

#[derive(Debug, Clone)]
pub enum CliError {
    Parse(ParseError),
    Validation(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error at {e}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
        }
    }
}

/// Parse then validate.
pub fn parse_derivation(text: &str) -> Result<D, CliError> {
    let d = parse_derivation_unchecked(text).map_err(CliError::Parse)?;
    omegacut_core::calculus::validate(&d)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(d)
}

/// Parse a standalone formula.
pub fn parse_formula_text(text: &str) -> Result<Formula, ParseError> {
    parse_formula(&read_sexp(text)?)
}

// -------------------------------------------------------------------------
// Renderer

struct Renamer {
    used: BTreeSet<String>,
    num_next: usize,
    set_next: usize,
    num_scope: Vec<(String, String)>,
    set_scope: Vec<(String, String)>,
}

impl Renamer {
    fn new(used: BTreeSet<String>) -> Renamer {
        Renamer {
            used,
            num_next: 0,
            set_next: 0,
            num_scope: Vec::new(),
            set_scope: Vec::new(),
        }
    }

    /// Next canonical name: keep a candidate equal to the original, skip
    /// candidates already used elsewhere in the term (avoids capture on
    /// re-parse).
    fn pick(&mut self, original: &str, set: bool) -> String {
        loop {
            let (prefix, n) = if set {
                ("X", &mut self.set_next)
            } else {
                ("n", &mut self.num_next)
            };
            let candidate = format!("{prefix}{n}");
            *n += 1;
            if candidate == original || !self.used.contains(&candidate) {
                self.used.insert(candidate.clone());
                return candidate;
            }
        }
    }

    fn push_num(&mut self, original: &str) -> String {
        let fresh = self.pick(original, false);
        self.num_scope.push((original.to_string(), fresh.clone()));
        fresh
    }

    fn push_set(&mut self, original: &str) -> String {
        let fresh = self.pick(original, true);
        self.set_scope.push((original.to_string(), fresh.clone()));
        fresh
    }

    fn pop_num(&mut self) {
        self.num_scope.pop();
    }

    fn pop_set(&mut self) {
        self.set_scope.pop();
    }

    fn num(&self, name: &str) -> String {
        self.num_scope
            .iter()
            .rev()
            .find(|(o, _)| o == name)
            .map(|(_, f)| f.clone())
            .unwrap_or_else(|| name.to_string())
    }

    fn set(&self, name: &str) -> String {
        self.set_scope
            .iter()
            .rev()
            .find(|(o, _)| o == name)
            .map(|(_, f)| f.clone())
            .unwrap_or_else(|| name.to_string())
    }
}

fn collect_names_term(t: &NumTerm, out: &mut BTreeSet<String>) {
    match t {
        NumTerm::Zero => {}
        NumTerm::Succ(t0) => collect_names_term(t0, out),
        NumTerm::Var(v) => {
            out.insert(v.clone());
        }
    }
}

fn collect_names_formula(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::RelLit { args, .. } => {
            for a in args {
                collect_names_term(a, out);
            }
        }
        Formula::SetLit { var, arg, .. } => {
            out.insert(var.clone());
            collect_names_term(arg, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect_names_formula(a, out);
            collect_names_formula(b, out);
        }
        Formula::ForallNum(v, b)
        | Formula::ExistsNum(v, b)
        | Formula::ForallSet(v, b)
        | Formula::ExistsSet(v, b) => {
            out.insert(v.clone());
            collect_names_formula(b, out);
        }
    }
}

fn collect_names_node(d: &Derivation, out: &mut BTreeSet<String>) {
    let mut seq = |s: &Sequent| {
        for f in s.iter() {
            collect_names_formula(f, out);
        }
    };
    match d {
        Derivation::Ax(s) => seq(s),
        Derivation::AndI(f, a, b)
        | Derivation::Cut(f, a, b)
        | Derivation::R(f, a, b) => {
            collect_names_formula(f, out);
            collect_names_node(a, out);
            collect_names_node(b, out);
        }
        Derivation::OrI(_, f, a) | Derivation::ExI(_, f, a) => {
            collect_names_formula(f, out);
            collect_names_node(a, out);
        }
        Derivation::AllSetI(y, f, a) => {
            out.insert(y.clone());
            collect_names_formula(f, out);
            collect_names_node(a, out);
        }
        Derivation::OrSetI(t, f, a) => {
            out.insert(t.binder.clone());
            collect_names_formula(&t.body, out);
            collect_names_formula(f, out);
            collect_names_node(a, out);
        }
        Derivation::OmI(f, fam) => {
            collect_names_formula(f, out);
            collect_names_family(fam, out);
        }
        Derivation::E(a) | Derivation::Ew(a) | Derivation::Col(a) => {
            collect_names_node(a, out)
        }
        Derivation::Sub(x, t, a) => {
            out.insert(x.clone());
            out.insert(t.binder.clone());
            collect_names_formula(&t.body, out);
            collect_names_node(a, out);
        }
    }
}

fn collect_names_family(fam: &PremiseFamily, out: &mut BTreeSet<String>) {
    match fam {
        PremiseFamily::Template { param, schema } => {
            out.insert(param.clone());
            collect_names_node(schema, out);
        }
        PremiseFamily::Selector { parent } => collect_names_node(parent, out),
        PremiseFamily::MapRed { inner } => collect_names_family(inner, out),
    }
}

fn render_term(t: &NumTerm, r: &Renamer, out: &mut String) {
    if let Some(n) = t.value() {
        out.push_str(&n.to_string());
        return;
    }
    match t {
        NumTerm::Var(v) => out.push_str(&r.num(v)),
        NumTerm::Succ(t0) => {
            out.push_str("(s ");
            render_term(t0, r, out);
            out.push(')');
        }
        NumTerm::Zero => out.push('0'),
    }
}

fn render_formula(f: &Formula, r: &mut Renamer, out: &mut String) {
    match f {
        Formula::RelLit {
            rel,
            args,
            positive,
        } => {
            if !positive {
                out.push_str("(not ");
            }
            let kw = match rel {
                Relation::Eq => "eq",
                Relation::Lt => "lt",
                Relation::Le => "le",
                Relation::Custom(c) => c.name,
            };
            out.push('(');
            out.push_str(kw);
            for a in args {
                out.push(' ');
                render_term(a, r, out);
            }
            out.push(')');
            if !positive {
                out.push(')');
            }
        }
        Formula::SetLit {
            var,
            arg,
            positive,
        } => {
            if !positive {
                out.push_str("(not ");
            }
            out.push_str("(sv ");
            out.push_str(&r.set(var));
            out.push(' ');
            render_term(arg, r, out);
            out.push(')');
            if !positive {
                out.push(')');
            }
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            out.push_str(if matches!(f, Formula::And(..)) {
                "(and "
            } else {
                "(or "
            });
            render_formula(a, r, out);
            out.push(' ');
            render_formula(b, r, out);
            out.push(')');
        }
        Formula::ForallNum(v, b) | Formula::ExistsNum(v, b) => {
            let kw = if matches!(f, Formula::ForallNum(..)) {
                "all"
            } else {
                "ex"
            };
            let fresh = r.push_num(v);
            out.push('(');
            out.push_str(kw);
            out.push(' ');
            out.push_str(&fresh);
            out.push(' ');
            render_formula(b, r, out);
            out.push(')');
            r.pop_num();
        }
        Formula::ForallSet(v, b) | Formula::ExistsSet(v, b) => {
            let kw = if matches!(f, Formula::ForallSet(..)) {
                "ALL"
            } else {
                "EX"
            };
            let fresh = r.push_set(v);
            out.push('(');
            out.push_str(kw);
            out.push(' ');
            out.push_str(&fresh);
            out.push(' ');
            render_formula(b, r, out);
            out.push(')');
            r.pop_set();
        }
    }
}

fn render_abs(t: &Abstraction, r: &mut Renamer, out: &mut String) {
    let fresh = r.push_num(&t.binder);
    out.push_str("(abs ");
    out.push_str(&fresh);
    out.push(' ');
    render_formula(&t.body, r, out);
    out.push(')');
    r.pop_num();
}

fn render_sequent(s: &Sequent, r: &mut Renamer, out: &mut String) {
    out.push_str("(seq");
    for f in s.iter() {
        out.push(' ');
        render_formula(f, r, out);
    }
    out.push(')');
}

fn render_family(fam: &PremiseFamily, r: &mut Renamer, out: &mut String) {
    match fam {
        PremiseFamily::Template { param, schema } => {
            let fresh = r.push_num(param);
            out.push_str("(template ");
            out.push_str(&fresh);
            out.push(' ');
            render_node(schema, r, out);
            out.push(')');
            r.pop_num();
        }
        PremiseFamily::Selector { parent } => {
            out.push_str("(selector ");
            render_node(parent, r, out);
            out.push(')');
        }
        PremiseFamily::MapRed { inner } => {
            out.push_str("(mapred ");
            render_family(inner, r, out);
            out.push(')');
        }
    }
}

fn render_node(d: &Derivation, r: &mut Renamer, out: &mut String) {
    match d {
        Derivation::Ax(s) => {
            out.push_str("(ax ");
            render_sequent(s, r, out);
            out.push(')');
        }
        Derivation::AndI(f, a, b) => {
            out.push_str("(andI ");
            render_formula(f, r, out);
            out.push(' ');
            render_node(a, r, out);
            out.push(' ');
            render_node(b, r, out);
            out.push(')');
        }
        Derivation::OrI(k, f, a) => {
            out.push_str(&format!("(orI {k} "));
            render_formula(f, r, out);
            out.push(' ');
            render_node(a, r, out);
            out.push(')');
        }
        Derivation::OmI(f, fam) => {
            out.push_str("(omI ");
            render_formula(f, r, out);
            out.push(' ');
            render_family(fam, r, out);
            out.push(')');
        }
        Derivation::ExI(k, f, a) => {
            out.push_str(&format!("(exI {k} "));
            render_formula(f, r, out);
            out.push(' ');
            render_node(a, r, out);
            out.push(')');
        }
        Derivation::AllSetI(y, f, a) => {
            let fresh = r.push_set(y);
            out.push_str("(ALLI ");
            out.push_str(&fresh);
            out.push(' ');
            render_formula(f, r, out);
            out.push(' ');
            render_node(a, r, out);
            out.push(')');
            r.pop_set();
        }
        Derivation::OrSetI(t, f, a) => {
            out.push_str("(ORT ");
            render_abs(t, r, out);
            out.push(' ');
            render_formula(f, r, out);
            out.push(' ');
            render_node(a, r, out);
            out.push(')');
        }
        Derivation::Cut(c, a, b) | Derivation::R(c, a, b) => {
            out.push_str(if matches!(d, Derivation::Cut(..)) {
                "(cut "
            } else {
                "(r "
            });
            render_formula(c, r, out);
            out.push(' ');
            render_node(a, r, out);
            out.push(' ');
            render_node(b, r, out);
            out.push(')');
        }
        Derivation::E(a) => {
            out.push_str("(e ");
            render_node(a, r, out);
            out.push(')');
        }
        Derivation::Ew(a) => {
            out.push_str("(ew ");
            render_node(a, r, out);
            out.push(')');
        }
        Derivation::Col(a) => {
            out.push_str("(col ");
            render_node(a, r, out);
            out.push(')');
        }
        Derivation::Sub(x, t, a) => {
            let fresh = r.push_set(x);
            out.push_str("(sub ");
            out.push_str(&fresh);
            out.push(' ');
            render_abs(t, r, out);
            out.push(' ');
            render_node(a, r, out);
            out.push(')');
            r.pop_set();
        }
    }
}

/// Deterministic rendering: sorted sequents, canonical bound/eigen names.
pub fn render(d: &D) -> String {
    let mut used = BTreeSet::new();
    collect_names_node(d, &mut used);
    let mut r = Renamer::new(used);
    let mut out = String::new();
    render_node(d, &mut r, &mut out);
    out
}

/// Deterministic rendering of a standalone formula.
pub fn render_formula_text(f: &Formula) -> String {
    let mut used = BTreeSet::new();
    collect_names_formula(f, &mut used);
    let mut r = Renamer::new(used);
    let mut out = String::new();
    render_formula(f, &mut r, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g0() -> Formula {
        Formula::eq_lit(NumTerm::Zero, NumTerm::Zero)
    }

    #[test]
    fn parse_axiom() {
        let d = parse_derivation("(ax (seq (eq 0 0)))").unwrap();
        assert_eq!(d, Derivation::ax(Sequent::singleton(g0())));
        assert_eq!(render(&d), "(ax (seq (eq 0 0)))");
    }

    #[test]
    fn parse_cut_example() {
        let txt =
            "(cut (eq 0 0) (ax (seq (eq 0 0))) (ax (seq (eq 0 0) (not (eq 0 0)))))";
        let d = parse_derivation(txt).unwrap();
        let expected = Derivation::cut(
            g0(),
            Derivation::ax(Sequent::singleton(g0())),
            Derivation::ax(Sequent::from_formulas([g0(), g0().negate()])),
        );
        assert_eq!(d, expected);
    }

    #[test]
    fn untrue_axiom_rejected_after_parse() {
        match parse_derivation("(ax (seq (lt 0 0)))") {
            Err(CliError::Validation(m)) => assert!(m.contains("axiom"), "{m}"),
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_derivation("(ax (seq (eq 0)))").unwrap_err();
        match e {
            CliError::Parse(p) => {
                assert_eq!(p.line, 1);
                assert!(p.col > 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn numerals_expand_and_render_back() {
        let d = parse_derivation("(ax (seq (eq 3 3)))").unwrap();
        assert_eq!(
            d,
            Derivation::ax(Sequent::singleton(Formula::eq_lit(
                NumTerm::numeral(3),
                NumTerm::numeral(3)
            )))
        );
        assert_eq!(render(&d), "(ax (seq (eq 3 3)))");
    }

    #[test]
    fn not_normalizes_compound_negations() {
        let f =
            parse_formula_text("(not (and (eq 0 0) (or (eq 0 0) (eq 0 1))))").unwrap();
        assert_eq!(
            f,
            Formula::or(
                g0().negate(),
                Formula::and(
                    g0().negate(),
                    Formula::eq_lit(NumTerm::Zero, NumTerm::numeral(1)).negate()
                )
            )
        );
    }

    #[test]
    fn bound_names_canonicalize() {
        let d = parse_derivation(
            "(ALLI Z (ALL W (or (sv W 0) (not (sv W 0)))) \
             (orI 1 (or (sv Z 0) (not (sv Z 0))) \
              (orI 0 (or (sv Z 0) (not (sv Z 0))) \
               (ax (seq (sv Z 0) (not (sv Z 0)))))))",
        )
        .unwrap();
        let txt = render(&d);
        assert!(txt.contains("(ALLI X0 "), "{txt}");
        assert!(txt.contains("(ALL X1 "), "{txt}");
        let d2 = parse_derivation(&txt).unwrap();
        assert_eq!(d2, d);
        assert_eq!(render(&d2), txt);
    }

    #[test]
    fn corpus_round_trips() {
        use omegacut_core::corpus::{sample_proofs, scenario, ScenarioName};
        for name in ScenarioName::ALL {
            let s = scenario(name);
            for d in [s.input, s.expected_red] {
                let txt = render(&d);
                let back = parse_derivation_unchecked(&txt).unwrap();
                assert_eq!(back, d, "{}: {txt}", name.label());
                assert_eq!(render(&back), txt, "{}", name.label());
            }
        }
        for (n, d) in sample_proofs() {
            let txt = render(&d);
            let back = parse_derivation(&txt).unwrap();
            assert_eq!(back, d, "{n}: {txt}");
        }
    }
}
