//! Oriented virtual tangle diagrams: strands, arcs, crossings and arc breaks.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{is_token, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandKind {
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub label: Label,
    pub kind: StrandKind,
}

/// Boundary role of an arc. `Through` is an arc that is both incoming and
/// outgoing (an open strand with no undercrossings); it must be broken
/// before a matrix can be built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcRole {
    Internal,
    In,
    Out,
    Through,
}

impl ArcRole {
    fn keyword(self) -> &'static str {
        match self {
            ArcRole::Internal => "internal",
            ArcRole::In => "in",
            ArcRole::Out => "out",
            ArcRole::Through => "through",
        }
    }

    pub fn is_in(self) -> bool {
        matches!(self, ArcRole::In | ArcRole::Through)
    }

    pub fn is_out(self) -> bool {
        matches!(self, ArcRole::Out | ArcRole::Through)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub strand: Label,
    pub role: ArcRole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Sign> {
        match s {
            "+" => Some(Sign::Positive),
            "-" => Some(Sign::Negative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub over_strand: Label,
    pub under_strand: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Break {
    pub old: String,
    pub new: String,
}

/// Endpoint permutation: entry `i` is the out-position of the strand entering at in-position `i`.
pub type Permutation = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleDiagram {
    strands: Vec<Strand>,
    arcs: Vec<Arc>,
    crossings: Vec<Crossing>,
    breaks: Vec<Break>,
    in_order: Vec<String>,
    out_order: Vec<String>,
}

/// Raw crossing data: sign, over arc, under-in arc, under-out arc.
pub type CrossingSpec<'a> = (Sign, &'a str, &'a str, &'a str);

impl TangleDiagram {
    /// Build and validate. Missing orders default to lexicographic outgoing
    /// arcs, with incoming arcs listed in the same strand order.
    pub fn new(
        strands: Vec<Strand>,
        arcs: Vec<Arc>,
        crossings: Vec<CrossingSpec<'_>>,
        breaks: Vec<(&str, &str)>,
        in_order: Option<Vec<String>>,
        out_order: Option<Vec<String>>,
    ) -> Result<TangleDiagram> {
        let strand_of: HashMap<&str, &Label> = arcs.iter().map(|a| (a.id.as_str(), &a.strand)).collect();
        let lookup = |id: &str| strand_of.get(id).map(|l| (*l).clone()).ok_or_else(|| Error::UnknownArc(id.to_string()));
        let mut xs = Vec::with_capacity(crossings.len());
        for (sign, over, under_in, under_out) in crossings {
            xs.push(Crossing {
                sign,
                over: over.to_string(),
                under_in: under_in.to_string(),
                under_out: under_out.to_string(),
                over_strand: lookup(over)?,
                under_strand: lookup(under_in)?,
            });
        }
        let bs = breaks.into_iter().map(|(o, n)| Break { old: o.to_string(), new: n.to_string() }).collect();
        let mut d = TangleDiagram { strands, arcs, crossings: xs, breaks: bs, in_order: Vec::new(), out_order: Vec::new() };
        d.validate_structure()?;
        d.resolve_orders(in_order, out_order)?;
        Ok(d)
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn breaks(&self) -> &[Break] {
        &self.breaks
    }

    pub fn in_order(&self) -> &[String] {
        &self.in_order
    }

    pub fn out_order(&self) -> &[String] {
        &self.out_order
    }

    pub fn arc(&self, id: &str) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.id == id)
    }

    pub fn strand_of(&self, id: &str) -> Option<&Label> {
        self.arc(id).map(|a| &a.strand)
    }

    pub fn open_strands(&self) -> Vec<&Label> {
        self.strands.iter().filter(|s| s.kind == StrandKind::Open).map(|s| &s.label).collect()
    }

    pub fn has_closed(&self) -> bool {
        self.strands.iter().any(|s| s.kind == StrandKind::Closed)
    }

    pub fn has_through(&self) -> bool {
        self.arcs.iter().any(|a| a.role == ArcRole::Through)
    }

    /// Strand labels along `in_order` / `out_order`.
    pub fn in_strands(&self) -> Vec<Label> {
        self.in_order.iter().map(|a| self.strand_of(a).unwrap().clone()).collect()
    }

    pub fn out_strands(&self) -> Vec<Label> {
        self.out_order.iter().map(|a| self.strand_of(a).unwrap().clone()).collect()
    }

    /// Internal arcs in diagram order.
    pub fn internal_arcs(&self) -> Vec<&str> {
        self.arcs.iter().filter(|a| a.role == ArcRole::Internal).map(|a| a.id.as_str()).collect()
    }

    fn validate_structure(&self) -> Result<()> {
        let v = |m: String| Err(Error::Validation(m));
        let mut strand_kind: HashMap<&Label, StrandKind> = HashMap::new();
        for s in &self.strands {
            if !is_token(s.label.as_str()) {
                return v(format!("bad strand label `{}`", s.label));
            }
            if strand_kind.insert(&s.label, s.kind).is_some() {
                return v(format!("duplicate strand `{}`", s.label));
            }
        }
        let mut arc_by_id: HashMap<&str, &Arc> = HashMap::new();
        for a in &self.arcs {
            if !is_token(&a.id) {
                return v(format!("bad arc label `{}`", a.id));
            }
            if arc_by_id.insert(&a.id, a).is_some() {
                return v(format!("duplicate arc `{}`", a.id));
            }
            match strand_kind.get(&a.strand) {
                None => return v(format!("arc `{}` is on unknown strand `{}`", a.id, a.strand)),
                Some(StrandKind::Closed) if a.role != ArcRole::Internal => {
                    return v(format!("arc `{}` on closed strand `{}` must be internal", a.id, a.strand))
                }
                _ => {}
            }
        }
        for s in self.strands.iter().filter(|s| s.kind == StrandKind::Open) {
            let count = |r: ArcRole| self.arcs.iter().filter(|a| a.strand == s.label && a.role == r).count();
            let (ins, outs, through) = (count(ArcRole::In), count(ArcRole::Out), count(ArcRole::Through));
            let ok = (ins == 1 && outs == 1 && through == 0) || (ins == 0 && outs == 0 && through == 1);
            if !ok {
                return v(format!("open strand `{}` needs exactly one incoming and one outgoing arc", s.label));
            }
        }
        let mut succ: HashMap<&str, &str> = HashMap::new();
        let mut pred: HashMap<&str, &str> = HashMap::new();
        let mut link = |from: &'_ str, to: &'_ str, what: &str| -> Result<()> {
            let (Some(a), Some(b)) = (arc_by_id.get(from), arc_by_id.get(to)) else {
                let missing = if arc_by_id.contains_key(from) { to } else { from };
                return Err(Error::UnknownArc(missing.to_string()));
            };
            if a.strand != b.strand {
                return Err(Error::Validation(format!("{what} joins `{from}` and `{to}` on different strands")));
            }
            if succ.insert(a.id.as_str(), b.id.as_str()).is_some() {
                return Err(Error::Validation(format!("arc `{from}` continues twice")));
            }
            if pred.insert(b.id.as_str(), a.id.as_str()).is_some() {
                return Err(Error::Validation(format!("arc `{to}` used twice as under_out")));
            }
            Ok(())
        };
        for c in &self.crossings {
            if !arc_by_id.contains_key(c.over.as_str()) {
                return Err(Error::UnknownArc(c.over.clone()));
            }
            link(&c.under_in, &c.under_out, "crossing")?;
        }
        for b in &self.breaks {
            if b.old == b.new {
                return v(format!("break of `{}` into itself", b.old));
            }
            link(&b.old, &b.new, "break")?;
        }
        for a in &self.arcs {
            let (has_pred, has_succ) = (pred.contains_key(a.id.as_str()), succ.contains_key(a.id.as_str()));
            let ok = match a.role {
                ArcRole::In => !has_pred && has_succ,
                ArcRole::Out => has_pred && !has_succ,
                ArcRole::Through => !has_pred && !has_succ,
                ArcRole::Internal => has_pred && has_succ,
            };
            if !ok {
                return v(format!("arc `{}` is dangling for role {}", a.id, a.role.keyword()));
            }
        }
        let mut seen: HashSet<&str> = HashSet::new();
        for a in self.arcs.iter().filter(|a| a.role.is_in()) {
            let mut cur = a.id.as_str();
            loop {
                if !seen.insert(cur) {
                    return v(format!("strand `{}` revisits arc `{cur}`", a.strand));
                }
                match succ.get(cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
        }
        for s in self.strands.iter().filter(|s| s.kind == StrandKind::Closed) {
            let arcs: Vec<&str> = self.arcs.iter().filter(|a| a.strand == s.label).map(|a| a.id.as_str()).collect();
            let Some(&start) = arcs.first() else {
                return v(format!("closed strand `{}` has no arcs", s.label));
            };
            let mut cur = start;
            loop {
                if !seen.insert(cur) {
                    return v(format!("closed strand `{}` revisits arc `{cur}`", s.label));
                }
                cur = succ[cur];
                if cur == start {
                    break;
                }
            }
        }
        if seen.len() != self.arcs.len() {
            return v("some arcs are not reachable along their strand".into());
        }
        Ok(())
    }

    fn resolve_orders(&mut self, in_order: Option<Vec<String>>, out_order: Option<Vec<String>>) -> Result<()> {
        let outs: Vec<String> = self.arcs.iter().filter(|a| a.role.is_out()).map(|a| a.id.clone()).collect();
        let ins: Vec<String> = self.arcs.iter().filter(|a| a.role.is_in()).map(|a| a.id.clone()).collect();
        let out_order = match out_order {
            Some(o) => o,
            None => {
                let mut o = outs.clone();
                o.sort();
                o
            }
        };
        check_perm(&out_order, &outs, "out")?;
        let in_order = match in_order {
            Some(o) => o,
            None => out_order
                .iter()
                .map(|o| {
                    let s = self.strand_of(o).unwrap();
                    self.arcs.iter().find(|a| a.role.is_in() && &a.strand == s).unwrap().id.clone()
                })
                .collect(),
        };
        check_perm(&in_order, &ins, "in")?;
        self.in_order = in_order;
        self.out_order = out_order;
        Ok(())
    }

    /// Number of crossings where each strand is the overstrand.
    pub fn mu_counts(&self) -> BTreeMap<Label, u32> {
        let mut mu: BTreeMap<Label, u32> = self.strands.iter().map(|s| (s.label.clone(), 0)).collect();
        for c in &self.crossings {
            *mu.get_mut(&c.over_strand).unwrap() += 1;
        }
        mu
    }

    /// Underlying endpoint permutation of the open strands.
    pub fn skeleton(&self) -> Permutation {
        let outs = self.out_strands();
        self.in_strands().iter().map(|s| outs.iter().position(|o| o == s).unwrap()).collect()
    }

    /// Split `arc` in two; the new downstream piece gets a fresh `brkN` label.
    pub fn break_arc(&self, arc: &str) -> Result<TangleDiagram> {
        let idx = self.arcs.iter().position(|a| a.id == arc).ok_or_else(|| Error::UnknownArc(arc.to_string()))?;
        let fresh = (0..).map(|k| format!("brk{k}")).find(|l| self.arc(l).is_none()).unwrap();
        let mut d = self.clone();
        let old = d.arcs[idx].clone();
        let new_role = match old.role {
            ArcRole::Out => {
                d.arcs[idx].role = ArcRole::Internal;
                ArcRole::Out
            }
            ArcRole::Through => {
                d.arcs[idx].role = ArcRole::In;
                ArcRole::Out
            }
            ArcRole::In | ArcRole::Internal => ArcRole::Internal,
        };
        if new_role == ArcRole::Internal {
            for c in d.crossings.iter_mut().filter(|c| c.under_in == arc) {
                c.under_in = fresh.clone();
            }
            for b in d.breaks.iter_mut().filter(|b| b.old == arc) {
                b.old = fresh.clone();
            }
        } else {
            for o in d.out_order.iter_mut().filter(|o| *o == arc) {
                *o = fresh.clone();
            }
        }
        d.arcs.insert(idx + 1, Arc { id: fresh.clone(), strand: old.strand.clone(), role: new_role });
        d.breaks.push(Break { old: arc.to_string(), new: fresh });
        d.validate_structure()?;
        Ok(d)
    }

    /// Break every through arc, giving a diagram suitable for matrix building.
    pub fn break_through_arcs(&self) -> Result<TangleDiagram> {
        let mut d = self.clone();
        while let Some(a) = d.arcs.iter().find(|a| a.role == ArcRole::Through) {
            let id = a.id.clone();
            d = d.break_arc(&id)?;
        }
        Ok(d)
    }

    pub fn parse(text: &str) -> Result<TangleDiagram> {
        parse_diagram(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.strands {
            let k = if s.kind == StrandKind::Open { "open" } else { "closed" };
            out.push_str(&format!("strand {} {k}\n", s.label));
        }
        for a in &self.arcs {
            out.push_str(&format!("arc {} on {} role {}\n", a.id, a.strand, a.role.keyword()));
        }
        for c in &self.crossings {
            out.push_str(&format!("xing {} over {} under {} -> {}\n", c.sign.symbol(), c.over, c.under_in, c.under_out));
        }
        for b in &self.breaks {
            out.push_str(&format!("break {} as {}\n", b.old, b.new));
        }
        if !self.in_order.is_empty() {
            out.push_str(&format!("order in {}\n", self.in_order.join(" ")));
            out.push_str(&format!("order out {}\n", self.out_order.join(" ")));
        }
        out
    }
}

fn check_perm(order: &[String], expected: &[String], which: &str) -> Result<()> {
    let mut a: Vec<&String> = order.iter().collect();
    let mut b: Vec<&String> = expected.iter().collect();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Validation(format!("`order {which}` must list each {which} arc exactly once")));
    }
    Ok(())
}

impl fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn parse_diagram(text: &str) -> Result<TangleDiagram> {
    let mut strands = Vec::new();
    let mut arcs = Vec::new();
    let mut xings: Vec<(Sign, String, String, String)> = Vec::new();
    let mut breaks: Vec<(String, String)> = Vec::new();
    let mut in_order = None;
    let mut out_order = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap();
        let mut offset = 0;
        for stmt in line.split(';') {
            let col = offset + stmt.len() - stmt.trim_start().len() + 1;
            offset += stmt.len() + 1;
            let toks: Vec<&str> = stmt.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let err = |m: &str| Error::parse(lineno + 1, col, m);
            let token = |s: &str| -> Result<String> {
                if is_token(s) {
                    Ok(s.to_string())
                } else {
                    Err(Error::parse(lineno + 1, col, format!("bad label `{s}`")))
                }
            };
            match toks.as_slice() {
                ["strand", label, kind] => {
                    let kind = match *kind {
                        "open" => StrandKind::Open,
                        "closed" => StrandKind::Closed,
                        _ => return Err(err("strand kind must be open or closed")),
                    };
                    strands.push(Strand { label: Label::new(&token(label)?), kind });
                }
                ["arc", id, "on", strand, "role", role] => {
                    let role = match *role {
                        "internal" => ArcRole::Internal,
                        "in" => ArcRole::In,
                        "out" => ArcRole::Out,
                        "through" => ArcRole::Through,
                        _ => return Err(err("role must be internal, in, out or through")),
                    };
                    arcs.push(Arc { id: token(id)?, strand: Label::new(&token(strand)?), role });
                }
                ["xing", sign, "over", over, "under", ui, "->", uo] => {
                    let sign = Sign::from_symbol(sign).ok_or_else(|| err("crossing sign must be + or -"))?;
                    xings.push((sign, token(over)?, token(ui)?, token(uo)?));
                }
                ["break", old, "as", new] => breaks.push((token(old)?, token(new)?)),
                ["order", "in", rest @ ..] => in_order = Some(rest.iter().map(|s| token(s)).collect::<Result<Vec<_>>>()?),
                ["order", "out", rest @ ..] => out_order = Some(rest.iter().map(|s| token(s)).collect::<Result<Vec<_>>>()?),
                _ => return Err(err(&format!("unrecognized statement `{}`", stmt.trim()))),
            }
        }
    }
    let specs: Vec<CrossingSpec<'_>> = xings.iter().map(|(s, o, i, u)| (*s, o.as_str(), i.as_str(), u.as_str())).collect();
    let bs: Vec<(&str, &str)> = breaks.iter().map(|(o, n)| (o.as_str(), n.as_str())).collect();
    TangleDiagram::new(strands, arcs, specs, bs, in_order, out_order)
}

/// Serialize in the line format accepted by [`parse_diagram`].
pub fn serialize_diagram(d: &TangleDiagram) -> String {
    d.to_text()
}

pub fn break_arc(d: &TangleDiagram, arc: &str) -> Result<TangleDiagram> {
    d.break_arc(arc)
}

pub fn mu_counts(d: &TangleDiagram) -> BTreeMap<Label, u32> {
    d.mu_counts()
}

pub fn skeleton(d: &TangleDiagram) -> Permutation {
    d.skeleton()
}
