//! Command-line front end.

use std::io::Read;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::braid::{burau, gassner, parse_braid, rmva_braid};
use crate::checks::{axioms_suite, correspondence_suite, reidemeister_suite, CheckReport};
use crate::diagram::{parse_diagram, TangleDiagram};
use crate::error::{Error, Result};
use crate::links::{mva_from_element, partial_trace};
use crate::meta::{assemble, eval_program, f_inverse, f_map, parse_program, program_from_diagram, Calculus, GenKind, MetaElement};
use crate::ring::{Label, RationalFunction};
use crate::tmva::{compute_tmva, hodge_reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Diagram,
    Program,
    Braid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Tmva,
    Rmva,
    Gamma,
    Ztilde,
    Gassner,
    Burau,
    Vmva,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Axioms,
    Reidemeister,
    Correspondence,
}

/// Compute tangle invariants of diagrams, generator programs and braid words.
#[derive(Debug, Clone, Parser)]
#[command(name = "rmva", version)]
pub struct Request {
    /// How to read the input.
    #[arg(long, value_enum, default_value = "diagram")]
    pub mode: Mode,
    /// Invariant to compute.
    #[arg(long, value_enum, default_value = "rmva")]
    pub invariant: Invariant,
    /// Strands to close by partial trace, left to right.
    #[arg(long, value_delimiter = ',')]
    pub close: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Run a built-in verification suite instead of reading input.
    #[arg(long, value_enum)]
    pub check: Option<Check>,
    /// Input file; stdin when absent.
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const CHECK_SEED: u64 = 1;
pub const CHECK_ELEMENTS: usize = 100;
pub const CHECK_WORD_LEN: usize = 5;

enum Output {
    Pair(MetaElement),
    Text(String, Value),
    Report(CheckReport),
}

/// Run a request, reading the input file or stdin if one is needed.
pub fn run(req: &Request) -> Outcome {
    if req.check.is_some() {
        return run_on(req, "");
    }
    let text = match &req.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    match text {
        Ok(t) => run_on(req, &t),
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: cannot read input: {e}\n") },
    }
}

/// Run a request against already-read input text.
pub fn run_on(req: &Request, input: &str) -> Outcome {
    if let Err(msg) = validate(req) {
        return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
    }
    match dispatch(req, input) {
        Ok(out) => {
            let (ok, stdout) = match (&out, req.format) {
                (Output::Pair(e), Format::Text) => (true, e.pair.render()),
                (Output::Pair(e), Format::Json) => (true, json_line(&e.pair.to_json())),
                (Output::Text(t, _), Format::Text) => (true, t.clone()),
                (Output::Text(_, v), Format::Json) => (true, json_line(v)),
                (Output::Report(r), Format::Text) => (r.all_passed(), r.render()),
                (Output::Report(r), Format::Json) => (r.all_passed(), json_line(&r.to_json())),
            };
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(err) => {
            let code = if err.is_parse() { 2 } else { 1 };
            match req.format {
                Format::Json => {
                    let v = json!({"error": {"kind": err.kind(), "message": err.to_string(), "instruction": err.instruction()}});
                    Outcome { code, stdout: json_line(&v), stderr: String::new() }
                }
                Format::Text => Outcome { code, stdout: String::new(), stderr: format!("error: {err}\n") },
            }
        }
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn validate(req: &Request) -> std::result::Result<(), String> {
    if req.check.is_some() {
        return Ok(());
    }
    use Invariant::*;
    let ok = match req.mode {
        Mode::Diagram => !matches!(req.invariant, Gassner | Burau),
        Mode::Program => !matches!(req.invariant, Gassner | Burau),
        Mode::Braid => req.invariant != Tmva,
    };
    if !ok {
        return Err(format!("invariant {:?} is not available in {:?} mode", req.invariant, req.mode).to_lowercase());
    }
    if !req.close.is_empty() && matches!(req.invariant, Tmva | Gassner | Burau) {
        return Err("--close applies to rmva, gamma, ztilde and vmva".into());
    }
    Ok(())
}

fn dispatch(req: &Request, input: &str) -> Result<Output> {
    if let Some(check) = req.check {
        let report = match check {
            Check::Axioms => axioms_suite(CHECK_SEED, CHECK_ELEMENTS)?,
            Check::Reidemeister => reidemeister_suite()?,
            Check::Correspondence => correspondence_suite(CHECK_SEED, CHECK_ELEMENTS, CHECK_WORD_LEN)?,
        };
        return Ok(Output::Report(report));
    }
    let close: Vec<Label> = req.close.iter().map(|s| Label::new(s.trim())).collect();
    let rf = |name: &str, f: RationalFunction| Output::Text(format!("{name} = {}\n", f.render()), json!({ name: f.render() }));
    match req.mode {
        Mode::Braid => {
            let w = parse_braid(input)?;
            match req.invariant {
                Invariant::Gassner => {
                    let g = gassner(&w);
                    Ok(Output::Text(g.render(), g.to_json()))
                }
                Invariant::Burau => {
                    let g = burau(&w);
                    Ok(Output::Text(g.render(), g.to_json()))
                }
                inv => finish(rmva_braid(&w)?, inv, &close, &rf),
            }
        }
        Mode::Program => {
            let p = parse_program(input)?;
            match req.invariant {
                Invariant::Tmva => tmva_output(&assemble(&p)?),
                Invariant::Ztilde => {
                    let z = eval_program(&p.with_generators(GenKind::Ztilde))?;
                    finish(z, Invariant::Ztilde, &close, &rf)
                }
                inv => finish(eval_program(&p)?, inv, &close, &rf),
            }
        }
        Mode::Diagram => {
            let d = parse_diagram(input)?;
            match req.invariant {
                Invariant::Tmva => tmva_output(&d),
                Invariant::Ztilde => {
                    let z = eval_program(&program_from_diagram(&d)?.with_generators(GenKind::Ztilde))?;
                    finish(z, Invariant::Ztilde, &close, &rf)
                }
                Invariant::Vmva if close.is_empty() => Ok(rf("vmva", crate::links::vmva(&d)?)),
                inv => {
                    let pair = hodge_reduce(&compute_tmva(&d)?)?;
                    finish(MetaElement { calculus: Calculus::R, pair }, inv, &close, &rf)
                }
            }
        }
    }
}

fn tmva_output(d: &TangleDiagram) -> Result<Output> {
    let t = compute_tmva(d)?;
    Ok(Output::Text(t.render(), t.to_json()))
}

/// Close strands in R, then present the element in the requested calculus.
fn finish(e: MetaElement, inv: Invariant, close: &[Label], rf: &dyn Fn(&str, RationalFunction) -> Output) -> Result<Output> {
    let mut r = match e.calculus {
        Calculus::R => e,
        Calculus::Gamma => f_map(&e)?,
    };
    if inv == Invariant::Vmva {
        return Ok(rf("vmva", mva_from_element(&r, close)?));
    }
    for a in close {
        r = partial_trace(&r, a)?;
    }
    match inv {
        Invariant::Gamma | Invariant::Ztilde => Ok(Output::Pair(f_inverse(&r)?)),
        Invariant::Rmva => Ok(Output::Pair(r)),
        other => Err(Error::Unsupported(format!("{other:?} is not a pair invariant"))),
    }
}
