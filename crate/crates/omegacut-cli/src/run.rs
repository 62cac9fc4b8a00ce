//! Command implementations shared by the binary and the test suite.

use std::io::Write as _;

use serde::{Deserialize, Serialize};

use omegacut_core::calculus::{degree, end_sequent, is_proper, D};
use omegacut_core::checker::{audit_trace, AuditVerdict};
use omegacut_core::corpus::{scenario, ScenarioName};
use omegacut_core::notation::{expand, rule_of};
use omegacut_core::reduction::{gate, is_cut_free, red_labeled, normalize, Trace, TraceStep};

use crate::sexp::{parse_derivation, parse_derivation_unchecked, render, render_formula_text};

/// One command invocation; paths are already resolved by the argument parser.
#[derive(Debug, Clone)]
pub enum Command {
    Check {
        input: String,
    },
    Step {
        input: String,
        count: usize,
    },
    Normalize {
        input: String,
        max_steps: usize,
        trace: Option<String>,
    },
    Expand {
        input: String,
        depth: u64,
        omega: Vec<u64>,
        witness_budget: usize,
    },
    Corpus {
        name: String,
    },
}

/// Serialized form of one trace line; the last line of a trace file has
/// `final_term` set instead of `term`.
#[derive(Debug, Serialize, Deserialize)]
pub struct TraceLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequent: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_exhausted: Option<bool>,
}

fn intern_rule(s: &str) -> Result<&'static str, String> {
    for k in [
        "Ax", "AndI", "OrI", "OmI", "ExI", "AllSetI", "Cut", "Rep", "Omega",
        "OmegaTilde",
    ] {
        if s == k {
            return Ok(k);
        }
    }
    Err(format!("unknown rule label `{s}` in trace"))
}

fn intern_clause(s: &str) -> Result<&'static str, String> {
    for k in ["ax", "descend", "emit", "rep", "tilde"] {
        if s == k {
            return Ok(k);
        }
    }
    Err(format!("unknown clause label `{s}` in trace"))
}

/// Serialize a trace to line-delimited JSON.
pub fn trace_to_jsonl(t: &Trace) -> String {
    let mut out = String::new();
    for (i, s) in t.steps.iter().enumerate() {
        let seq = end_sequent(&s.term)
            .map(|q| q.iter().map(render_formula_text).collect::<Vec<_>>())
            .unwrap_or_default();
        let line = TraceLine {
            step: Some(i),
            rule: Some(s.rule_label.to_string()),
            clause: Some(s.clause.to_string()),
            sequent: Some(seq),
            degree: degree(&s.term).ok(),
            term: Some(render(&s.term)),
            final_term: None,
            budget_exhausted: None,
        };
        out.push_str(&serde_json::to_string(&line).expect("trace line serializes"));
        out.push('\n');
    }
    let last = TraceLine {
        step: None,
        rule: None,
        clause: None,
        sequent: None,
        degree: None,
        term: None,
        final_term: Some(render(&t.final_term)),
        budget_exhausted: Some(t.budget_exhausted),
    };
    out.push_str(&serde_json::to_string(&last).expect("trace line serializes"));
    out.push('\n');
    out
}

/// Rebuild a trace from its line-delimited JSON form.
pub fn trace_from_jsonl(text: &str) -> Result<Trace, String> {
    let mut steps = Vec::new();
    let mut final_term: Option<D> = None;
    let mut budget_exhausted = false;
    for (n, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let line: TraceLine =
            serde_json::from_str(raw).map_err(|e| format!("trace line {}: {e}", n + 1))?;
        if let Some(ft) = &line.final_term {
            let d = parse_derivation_unchecked(ft)
                .map_err(|e| format!("trace line {}: {e}", n + 1))?;
            final_term = Some(d);
            budget_exhausted = line.budget_exhausted.unwrap_or(false);
            continue;
        }
        let term = line
            .term
            .as_deref()
            .ok_or_else(|| format!("trace line {}: missing term", n + 1))?;
        let term = parse_derivation_unchecked(term)
            .map_err(|e| format!("trace line {}: {e}", n + 1))?;
        let rule_label = intern_rule(line.rule.as_deref().unwrap_or(""))?;
        let clause = intern_clause(line.clause.as_deref().unwrap_or(""))?;
        steps.push(TraceStep {
            term,
            rule_label,
            clause,
        });
    }
    Ok(Trace {
        steps,
        final_term: final_term.ok_or("trace file has no final line")?,
        budget_exhausted,
    })
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn load(path: &str) -> Result<D, String> {
    let text = read_input(path)?;
    parse_derivation(&text).map_err(|e| e.to_string())
}

fn print_verdict(out: &mut impl std::io::Write, v: &AuditVerdict) -> std::io::Result<()> {
    for c in &v.checks {
        if c.pass {
            writeln!(out, "  ok   {}", c.name)?;
        } else {
            writeln!(out, "  FAIL {}: {}", c.name, c.detail)?;
        }
    }
    writeln!(out, "verdict: {}", if v.overall { "pass" } else { "fail" })
}

fn run_check(out: &mut impl std::io::Write, input: &str) -> Result<i32, String> {
    let d = load(input)?;
    if let Err(v) = is_proper(&d) {
        writeln!(out, "improper: {v}").map_err(|e| e.to_string())?;
        return Ok(1);
    }
    let g = gate(&d).map_err(|e| e.to_string())?;
    let dg = degree(&d).map_err(|e| e.to_string())?;
    let seq = end_sequent(&d).map_err(|e| e.to_string())?;
    let tp = rule_of(&d).map_err(|e| e.to_string())?;
    let cf = is_cut_free(&d).map_err(|e| e.to_string())?;
    writeln!(out, "proper: yes").map_err(|e| e.to_string())?;
    writeln!(out, "degree: {dg}").map_err(|e| e.to_string())?;
    writeln!(out, "last symbol: {}", tp.label()).map_err(|e| e.to_string())?;
    writeln!(
        out,
        "end sequent: {}",
        seq.iter().map(render_formula_text).collect::<Vec<_>>().join("  ")
    )
    .map_err(|e| e.to_string())?;
    writeln!(
        out,
        "gate: proper={} pi1={} degree0={} tp_ok={}",
        g.proper, g.pi1_end, g.degree_zero, g.tp_ok
    )
    .map_err(|e| e.to_string())?;
    writeln!(out, "cut-free: {}", if cf { "yes" } else { "no" }).map_err(|e| e.to_string())?;
    Ok(0)
}

fn run_step(out: &mut impl std::io::Write, input: &str, count: usize) -> Result<i32, String> {
    let mut d = load(input)?;
    for i in 0..count {
        if is_cut_free(&d).map_err(|e| e.to_string())? {
            writeln!(out, "step {i}: already cut-free").map_err(|e| e.to_string())?;
            break;
        }
        let (next, clause) = red_labeled(&d).map_err(|e| e.to_string())?;
        writeln!(out, "step {i} [{clause}]: {}", render(&next)).map_err(|e| e.to_string())?;
        d = next;
    }
    Ok(0)
}

fn run_normalize(
    out: &mut impl std::io::Write,
    input: &str,
    max_steps: usize,
    trace_path: Option<&str>,
) -> Result<i32, String> {
    let d = load(input)?;
    let t = normalize(&d, max_steps).map_err(|e| e.to_string())?;
    let jsonl = trace_to_jsonl(&t);
    // the verdict reported below is computed from the serialized trace, so
    // the file on disk and the stdout verdict can never disagree
    let replayed = if let Some(p) = trace_path {
        let mut f = std::fs::File::create(p).map_err(|e| format!("{p}: {e}"))?;
        f.write_all(jsonl.as_bytes()).map_err(|e| format!("{p}: {e}"))?;
        let back = std::fs::read_to_string(p).map_err(|e| format!("{p}: {e}"))?;
        trace_from_jsonl(&back)?
    } else {
        trace_from_jsonl(&jsonl)?
    };
    let v = audit_trace(&replayed);
    writeln!(out, "steps: {}", replayed.steps.len()).map_err(|e| e.to_string())?;
    writeln!(out, "final: {}", render(&replayed.final_term)).map_err(|e| e.to_string())?;
    let cf = is_cut_free(&replayed.final_term).map_err(|e| e.to_string())?;
    writeln!(out, "cut-free: {}", if cf { "yes" } else { "no" }).map_err(|e| e.to_string())?;
    print_verdict(out, &v).map_err(|e| e.to_string())?;
    Ok(if v.overall && cf && !replayed.budget_exhausted {
        0
    } else {
        1
    })
}

fn run_expand(
    out: &mut impl std::io::Write,
    input: &str,
    depth: u64,
    omega: &[u64],
    witness_budget: usize,
) -> Result<i32, String> {
    let d = load(input)?;
    let view = expand(&d, depth, omega, witness_budget).map_err(|e| e.to_string())?;
    let mut text = String::new();
    view.render_indented(&mut text);
    write!(out, "{text}").map_err(|e| e.to_string())?;
    writeln!(out, "nodes: {}", view.node_count()).map_err(|e| e.to_string())?;
    Ok(0)
}

fn run_corpus(out: &mut impl std::io::Write, name: &str) -> Result<i32, String> {
    let names: Vec<ScenarioName> = if name == "all" {
        ScenarioName::ALL.to_vec()
    } else {
        vec![ScenarioName::from_label(name)
            .ok_or_else(|| format!("unknown scenario `{name}`"))?]
    };
    let mut failed = false;
    for n in names {
        let s = scenario(n);
        let got_tp = rule_of(&s.input).map_err(|e| e.to_string())?;
        let (got_red, _) = red_labeled(&s.input).map_err(|e| e.to_string())?;
        let ok = got_tp == s.expected_tp && got_red == s.expected_red;
        if ok {
            writeln!(out, "{}: pass", n.label()).map_err(|e| e.to_string())?;
        } else {
            failed = true;
            writeln!(out, "{}: FAIL", n.label()).map_err(|e| e.to_string())?;
            if got_tp != s.expected_tp {
                writeln!(out, "  last symbol {} != expected {}", got_tp.label(), s.expected_tp.label())
                    .map_err(|e| e.to_string())?;
            }
            if got_red != s.expected_red {
                writeln!(out, "  reduct      {}", render(&got_red)).map_err(|e| e.to_string())?;
                writeln!(out, "  expected    {}", render(&s.expected_red))
                    .map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(if failed { 1 } else { 0 })
}

/// Execute a command, writing human-readable output; returns the exit code
/// (0 success, 1 assertion or validation failure).
pub fn run(cmd: &Command, out: &mut impl std::io::Write) -> i32 {
    let r = match cmd {
        Command::Check { input } => run_check(out, input),
        Command::Step { input, count } => run_step(out, input, *count),
        Command::Normalize {
            input,
            max_steps,
            trace,
        } => run_normalize(out, input, *max_steps, trace.as_deref()),
        Command::Expand {
            input,
            depth,
            omega,
            witness_budget,
        } => run_expand(out, input, *depth, omega, *witness_budget),
        Command::Corpus { name } => run_corpus(out, name),
    };
    match r {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(out, "error: {msg}");
            1
        }
    }
}
