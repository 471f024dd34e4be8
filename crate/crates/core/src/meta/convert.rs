//! Translation between diagrams and generator-composition programs.

use std::collections::{BTreeMap, BTreeSet};

use super::{GenKind, Instr, MetaProgram};
use crate::diagram::{Arc, ArcRole, Sign, Strand, StrandKind, TangleDiagram};
use crate::error::{Error, Result};
use crate::ring::Label;

/// Cut every strand at its crossings and glue the pieces back in order.
///
/// Each crossing becomes one generator on fresh piece labels; pieces along a
/// strand are joined with `mul` and the result renamed to the strand label.
pub fn program_from_diagram(d: &TangleDiagram) -> Result<MetaProgram> {
    if d.has_closed() {
        return Err(Error::Unsupported("closed components have no program form; use the links module".into()));
    }
    let strands: BTreeSet<&str> = d.strands().iter().map(|s| s.label.as_str()).collect();
    let (po, pu) = (1..)
        .map(|k| ("o".repeat(k), "u".repeat(k)))
        .find(|(po, pu)| !strands.iter().any(|s| {
            let digits = |p: &str| s.strip_prefix(p).is_some_and(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()));
            digits(po) || digits(pu)
        }))
        .unwrap();
    let over = |k: usize| Label::new(&format!("{po}{k}"));
    let under = |k: usize| Label::new(&format!("{pu}{k}"));
    let mut instrs = Vec::new();
    for (k, x) in d.crossings().iter().enumerate() {
        instrs.push(Instr::Gen { kind: GenKind::Rmva, sign: x.sign, a: over(k), b: under(k) });
        if k > 0 {
            instrs.push(Instr::Union);
        }
    }
    let mut open: Vec<&Label> = d.open_strands();
    open.sort();
    for s in open {
        let start = d
            .arcs()
            .iter()
            .find(|a| &a.strand == s && (a.role == ArcRole::In || a.role == ArcRole::Through))
            .ok_or_else(|| Error::Validation(format!("strand {s} has no incoming arc")))?;
        let mut visits = Vec::new();
        let mut arc = start.clone();
        for _ in 0..=d.arcs().len() {
            for (k, x) in d.crossings().iter().enumerate() {
                if x.over == arc.id {
                    visits.push(over(k));
                }
            }
            if arc.role == ArcRole::Out || arc.role == ArcRole::Through {
                break;
            }
            let next = if let Some(k) = d.crossings().iter().position(|x| x.under_in == arc.id) {
                visits.push(under(k));
                d.crossings()[k].under_out.clone()
            } else if let Some(b) = d.breaks().iter().find(|b| b.old == arc.id) {
                b.new.clone()
            } else {
                return Err(Error::Validation(format!("arc `{}` has no successor", arc.id)));
            };
            arc = d.arc(&next).unwrap().clone();
        }
        match visits.split_first() {
            None => instrs.push(Instr::E(s.clone())),
            Some((first, rest)) => {
                for v in rest {
                    instrs.push(Instr::Mul { a: first.clone(), b: v.clone(), c: first.clone() });
                }
                instrs.push(Instr::Sigma { a: first.clone(), b: s.clone() });
            }
        }
    }
    Ok(MetaProgram::new(instrs))
}

#[derive(Debug, Clone, Default)]
struct Part {
    ends: BTreeMap<Label, (String, String)>,
    arcs: BTreeMap<String, Label>,
    xings: Vec<(Sign, String, String, String)>,
    breaks: Vec<(String, String)>,
    closed: BTreeSet<Label>,
}

struct Assembler {
    next: usize,
}

impl Assembler {
    fn fresh(&mut self) -> String {
        self.next += 1;
        format!("x{}", self.next)
    }

    fn strand(&mut self, part: &mut Part, s: &Label) -> Result<(String, String)> {
        if part.ends.contains_key(s) || part.closed.contains(s) {
            return Err(Error::Label(format!("label `{s}` already present")));
        }
        let (i, o) = (self.fresh(), self.fresh());
        part.arcs.insert(i.clone(), s.clone());
        part.arcs.insert(o.clone(), s.clone());
        part.breaks.push((i.clone(), o.clone()));
        part.ends.insert(s.clone(), (i.clone(), o.clone()));
        Ok((i, o))
    }
}

impl Part {
    fn ends(&self, s: &Label) -> Result<(String, String)> {
        self.ends.get(s).cloned().ok_or_else(|| Error::Label(format!("label `{s}` not present")))
    }

    /// Identify arc `y` with arc `x`.
    fn merge_arcs(&mut self, x: &str, y: &str) {
        if x == y {
            return;
        }
        let fix = |a: &mut String| {
            if a == y {
                *a = x.to_string();
            }
        };
        for (_, o, ui, uo) in &mut self.xings {
            fix(o);
            fix(ui);
            fix(uo);
        }
        for (o, n) in &mut self.breaks {
            fix(o);
            fix(n);
        }
        for (i, o) in self.ends.values_mut() {
            fix(i);
            fix(o);
        }
        self.arcs.remove(y);
    }

    /// Erase strand `s`: crossings it passes under disappear, and where it
    /// passes over the two under arcs become one.
    fn delete_strand(&mut self, s: &Label) -> Result<()> {
        self.ends(s)?;
        let mine: BTreeSet<String> = self.arcs.iter().filter(|(_, l)| *l == s).map(|(a, _)| a.clone()).collect();
        let xings = std::mem::take(&mut self.xings);
        let mut merges = Vec::new();
        for x in xings {
            if mine.contains(&x.2) {
                continue;
            }
            if mine.contains(&x.1) {
                merges.push((x.2.clone(), x.3.clone()));
            } else {
                self.xings.push(x);
            }
        }
        let mut renamed: BTreeMap<String, String> = BTreeMap::new();
        let resolve = |renamed: &BTreeMap<String, String>, mut a: String| {
            while let Some(b) = renamed.get(&a) {
                a = b.clone();
            }
            a
        };
        for (ui, uo) in merges {
            let (ui, uo) = (resolve(&renamed, ui), resolve(&renamed, uo));
            if ui != uo {
                self.merge_arcs(&ui, &uo);
                renamed.insert(uo, ui);
            }
        }
        self.breaks.retain(|(o, _)| !mine.contains(o));
        self.breaks.retain(|(o, n)| o != n);
        self.arcs.retain(|a, _| !mine.contains(a));
        self.ends.remove(s);
        Ok(())
    }

    fn relabel(&mut self, from: &[&Label], to: &Label) {
        for s in self.arcs.values_mut() {
            if from.contains(&&*s) {
                *s = to.clone();
            }
        }
    }
}

/// Build the diagram a program describes; `eta` erases a strand. Erasing a
/// strand that passes under others matches `eta` only up to a monomial.
pub fn assemble(p: &MetaProgram) -> Result<TangleDiagram> {
    assemble_closed(p, &[])
}

/// As [`assemble`], then close each listed strand into a loop.
pub fn assemble_closed(p: &MetaProgram, close: &[Label]) -> Result<TangleDiagram> {
    let mut asm = Assembler { next: 0 };
    let mut stack: Vec<Part> = Vec::new();
    for (idx, instr) in p.instrs.iter().enumerate() {
        apply(&mut asm, &mut stack, instr).map_err(|e| e.at(idx + 1))?;
    }
    let mut part = Part::default();
    for q in stack {
        part = union(part, q)?;
    }
    for s in close {
        let (i, o) = part.ends(s)?;
        part.merge_arcs(&o, &i);
        part.ends.remove(s);
        part.closed.insert(s.clone());
    }
    let mut strands: Vec<Strand> = part.ends.keys().map(|l| Strand { label: l.clone(), kind: StrandKind::Open }).collect();
    strands.extend(part.closed.iter().map(|l| Strand { label: l.clone(), kind: StrandKind::Closed }));
    let ins: BTreeSet<&String> = part.ends.values().map(|(i, _)| i).collect();
    let outs: BTreeSet<&String> = part.ends.values().map(|(_, o)| o).collect();
    let arcs = part
        .arcs
        .iter()
        .map(|(id, s)| {
            let role = if ins.contains(id) && outs.contains(id) {
                ArcRole::Through
            } else if ins.contains(id) {
                ArcRole::In
            } else if outs.contains(id) {
                ArcRole::Out
            } else {
                ArcRole::Internal
            };
            Arc { id: id.clone(), strand: s.clone(), role }
        })
        .collect();
    let xings = part.xings.iter().map(|(s, o, ui, uo)| (*s, o.as_str(), ui.as_str(), uo.as_str())).collect();
    let breaks = part.breaks.iter().map(|(o, n)| (o.as_str(), n.as_str())).collect();
    let in_order = part.ends.values().map(|(i, _)| i.clone()).collect();
    let out_order = part.ends.values().map(|(_, o)| o.clone()).collect();
    TangleDiagram::new(strands, arcs, xings, breaks, Some(in_order), Some(out_order))
}

fn union(mut x: Part, y: Part) -> Result<Part> {
    for s in y.ends.keys().chain(&y.closed) {
        if x.ends.contains_key(s) || x.closed.contains(s) {
            return Err(Error::Label(format!("label `{s}` appears on both sides of a union")));
        }
    }
    x.ends.extend(y.ends);
    x.arcs.extend(y.arcs);
    x.xings.extend(y.xings);
    x.breaks.extend(y.breaks);
    x.closed.extend(y.closed);
    Ok(x)
}

fn apply(asm: &mut Assembler, stack: &mut Vec<Part>, instr: &Instr) -> Result<()> {
    let top = |stack: &mut Vec<Part>| stack.pop().ok_or_else(|| Error::Label("stack is empty".into()));
    let next = match instr {
        Instr::Gen { sign, a, b, .. } => {
            if a == b {
                return Err(Error::Label("a crossing needs two distinct strands".into()));
            }
            let mut part = Part::default();
            let (_, ao) = asm.strand(&mut part, a)?;
            let (bi, bo) = (asm.fresh(), asm.fresh());
            part.arcs.insert(bi.clone(), b.clone());
            part.arcs.insert(bo.clone(), b.clone());
            part.ends.insert(b.clone(), (bi.clone(), bo.clone()));
            part.xings.push((*sign, ao, bi, bo));
            part
        }
        Instr::Union => {
            let y = top(stack)?;
            let x = top(stack)?;
            union(x, y)?
        }
        Instr::Mul { a, b, c } => {
            let mut part = top(stack)?;
            if a == b {
                return Err(Error::Label(format!("cannot glue `{a}` to itself")));
            }
            let (ai, ao) = part.ends(a)?;
            let (bi, bo) = part.ends(b)?;
            if c != a && c != b && (part.ends.contains_key(c) || part.closed.contains(c)) {
                return Err(Error::Label(format!("target label `{c}` already present")));
            }
            part.merge_arcs(&ao, &bi);
            part.ends.remove(a);
            part.ends.remove(b);
            part.relabel(&[a, b], c);
            part.ends.insert(c.clone(), (ai, bo));
            part
        }
        Instr::E(a) => {
            let mut part = stack.pop().unwrap_or_default();
            asm.strand(&mut part, a)?;
            part
        }
        Instr::Eta(a) => {
            let mut part = top(stack)?;
            part.delete_strand(a)?;
            part
        }
        Instr::Sigma { a, b } => {
            let mut part = top(stack)?;
            let ends = part.ends(a)?;
            if a != b {
                if part.ends.contains_key(b) || part.closed.contains(b) {
                    return Err(Error::Label(format!("label `{b}` already present")));
                }
                part.ends.remove(a);
                part.ends.insert(b.clone(), ends);
                part.relabel(&[a], b);
            }
            part
        }
    };
    stack.push(next);
    Ok(())
}
