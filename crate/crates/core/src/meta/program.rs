//! Composition programs: a line-oriented instruction list evaluated on a stack.

use std::fmt;

use super::{generator, Calculus, GenKind, MetaElement};
use crate::diagram::Sign;
use crate::error::{Error, Result};
use crate::ring::{is_token, Label};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    Gen { kind: GenKind, sign: Sign, a: Label, b: Label },
    Union,
    Mul { a: Label, b: Label, c: Label },
    E(Label),
    Eta(Label),
    Sigma { a: Label, b: Label },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MetaProgram {
    pub instrs: Vec<Instr>,
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::Gen { kind, sign, a, b } => write!(f, "gen {} {} {a} {b}", kind.name(), sign.symbol()),
            Instr::Union => f.write_str("union"),
            Instr::Mul { a, b, c } => write!(f, "mul {a} {b} -> {c}"),
            Instr::E(a) => write!(f, "e {a}"),
            Instr::Eta(a) => write!(f, "eta {a}"),
            Instr::Sigma { a, b } => write!(f, "sigma {a} -> {b}"),
        }
    }
}

impl fmt::Display for MetaProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.instrs {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

impl MetaProgram {
    pub fn new(instrs: Vec<Instr>) -> MetaProgram {
        MetaProgram { instrs }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Calculus implied by the generators; `R` when there are none.
    pub fn calculus(&self) -> Result<Calculus> {
        let mut found: Option<Calculus> = None;
        for i in &self.instrs {
            if let Instr::Gen { kind, .. } = i {
                let c = kind.calculus();
                if found.is_some_and(|f| f != c) {
                    return Err(Error::Label("program mixes R and Gamma generators".into()));
                }
                found = Some(c);
            }
        }
        Ok(found.unwrap_or(Calculus::R))
    }

    /// The same program with every generator replaced by `kind`.
    pub fn with_generators(&self, kind: GenKind) -> MetaProgram {
        let instrs = self
            .instrs
            .iter()
            .map(|i| match i {
                Instr::Gen { sign, a, b, .. } => Instr::Gen { kind, sign: *sign, a: a.clone(), b: b.clone() },
                other => other.clone(),
            })
            .collect();
        MetaProgram { instrs }
    }

    pub fn crossing_count(&self) -> usize {
        self.instrs.iter().filter(|i| matches!(i, Instr::Gen { .. })).count()
    }
}

/// Parse the program text format. Blank lines and `#` comments are ignored.
pub fn parse_program(text: &str) -> Result<MetaProgram> {
    let mut instrs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let col_of = |w: &str| line.find(w).map(|c| c + 1).unwrap_or(1);
        let err = |w: &str, m: &str| Error::parse(lineno + 1, col_of(w), m);
        let label = |w: &str| if is_token(w) { Ok(Label::new(w)) } else { Err(err(w, &format!("bad label `{w}`"))) };
        let instr = match words.as_slice() {
            ["gen", kind, sign, a, b] => Instr::Gen {
                kind: GenKind::from_name(kind).ok_or_else(|| err(kind, "generator must be rmva, ztilde or z"))?,
                sign: Sign::from_symbol(sign).ok_or_else(|| err(sign, "sign must be + or -"))?,
                a: label(a)?,
                b: label(b)?,
            },
            ["union"] => Instr::Union,
            ["mul", a, b, "->", c] => Instr::Mul { a: label(a)?, b: label(b)?, c: label(c)? },
            ["e", a] => Instr::E(label(a)?),
            ["eta", a] => Instr::Eta(label(a)?),
            ["sigma", a, "->", b] => Instr::Sigma { a: label(a)?, b: label(b)? },
            [w, ..] => return Err(err(w, &format!("unrecognized instruction `{}`", line.trim()))),
            [] => unreachable!(),
        };
        instrs.push(instr);
    }
    Ok(MetaProgram { instrs })
}

/// Evaluate in the calculus implied by the generators.
pub fn eval_program(p: &MetaProgram) -> Result<MetaElement> {
    eval_program_in(p, p.calculus()?)
}

/// Left fold over the instructions. Errors carry the 1-based instruction index.
pub fn eval_program_in(p: &MetaProgram, calculus: Calculus) -> Result<MetaElement> {
    let mut stack: Vec<MetaElement> = Vec::new();
    for (idx, instr) in p.instrs.iter().enumerate() {
        step(&mut stack, instr, calculus).map_err(|e| e.at(idx + 1))?;
    }
    let mut it = stack.into_iter();
    let mut acc = it.next().unwrap_or_else(|| MetaElement::empty(calculus));
    for e in it {
        acc = acc.union(&e)?;
    }
    Ok(acc)
}

fn step(stack: &mut Vec<MetaElement>, instr: &Instr, calculus: Calculus) -> Result<()> {
    let top = |stack: &mut Vec<MetaElement>| stack.pop().ok_or_else(|| Error::Label("stack is empty".into()));
    let next = match instr {
        Instr::Gen { kind, sign, a, b } => {
            if kind.calculus() != calculus {
                return Err(Error::Label(format!("{} generator in a {calculus} program", kind.name())));
            }
            generator(*kind, *sign, a, b)?
        }
        Instr::Union => {
            let y = top(stack)?;
            let x = top(stack).map_err(|_| Error::Label("union needs two elements".into()))?;
            x.union(&y)?
        }
        Instr::Mul { a, b, c } => top(stack)?.mul(a, b, c)?,
        Instr::E(a) => stack.pop().unwrap_or_else(|| MetaElement::empty(calculus)).e(a)?,
        Instr::Eta(a) => top(stack)?.eta(a)?,
        Instr::Sigma { a, b } => top(stack)?.sigma(a, b)?,
    };
    stack.push(next);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "gen rmva + a b\ngen rmva - c d\nunion\nmul b c -> e\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.instrs.len(), 4);
        assert_eq!(p.to_text(), text);
    }

    #[test]
    fn single_generator() {
        let p = parse_program("gen ztilde + a b").unwrap();
        let e = eval_program(&p).unwrap();
        assert_eq!(e.calculus, Calculus::Gamma);
        assert_eq!(e.labels().len(), 2);
    }

    #[test]
    fn error_positions() {
        let e = parse_program("union\ngen rmva * a b\n").unwrap_err();
        assert_eq!(e, Error::parse(2, 10, "sign must be + or -"));
        let p = parse_program("gen rmva + a b\nmul a z -> c\n").unwrap();
        let e = eval_program(&p).unwrap_err();
        assert_eq!(e.instruction(), Some(2));
        assert_eq!(e.kind(), "LabelError");
    }

    #[test]
    fn mixed_calculi_rejected() {
        let p = parse_program("gen rmva + a b\ngen z + c d\nunion\n").unwrap();
        assert!(eval_program(&p).is_err());
    }
}
