//! Pure virtual braids: the Gassner and Burau representations, and braid
//! evaluation in the `R` calculus.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::diagram::Sign;
use crate::error::{Error, Result};
use crate::meta::{generator, Calculus, GenKind, MetaElement};
use crate::ring::{Label, Monomial, RationalFunction};
use crate::tmva::ReducedPair;

/// A word in the generators `σ_ab^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub labels: Vec<Label>,
    pub word: Vec<(Label, Label, i8)>,
}

/// A square matrix indexed by strand labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GassnerMatrix {
    pub labels: Vec<Label>,
    pub entries: Vec<Vec<RationalFunction>>,
}

impl BraidWord {
    pub fn new(labels: Vec<Label>, word: Vec<(Label, Label, i8)>) -> Result<BraidWord> {
        let mut labels = labels;
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Label("duplicate braid label".into()));
        }
        for (a, b, e) in &word {
            if a == b {
                return Err(Error::Label(format!("generator s {a} {b} needs two distinct strands")));
            }
            if *e != 1 && *e != -1 {
                return Err(Error::Label("exponent must be 1 or -1".into()));
            }
            for l in [a, b] {
                if labels.binary_search(l).is_err() {
                    return Err(Error::Label(format!("label `{l}` is not declared")));
                }
            }
        }
        Ok(BraidWord { labels, word })
    }

    pub fn inverse(&self) -> BraidWord {
        let word = self.word.iter().rev().map(|(a, b, e)| (a.clone(), b.clone(), -e)).collect();
        BraidWord { labels: self.labels.clone(), word }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        let mut labels = self.labels.clone();
        for l in &other.labels {
            if !labels.contains(l) {
                labels.push(l.clone());
            }
        }
        BraidWord::new(labels, self.word.iter().chain(&other.word).cloned().collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("labels");
        for l in &self.labels {
            let _ = write!(out, " {l}");
        }
        for (a, b, e) in &self.word {
            let _ = write!(out, " {} {a} {b}", if *e > 0 { "s" } else { "S" });
        }
        out
    }
}

/// Parse `labels a b c s a b S b c ...`. Without a `labels` header the
/// labels are those used by the word.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut toks: Vec<(usize, usize, &str)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 0;
        for w in line.split_whitespace() {
            col = line[col..].find(w).map(|c| c + col).unwrap_or(col);
            toks.push((ln + 1, col + 1, w));
            col += w.len();
        }
    }
    let mut i = 0;
    let label = |t: &(usize, usize, &str)| {
        if crate::ring::is_token(t.2) && t.2 != "s" && t.2 != "S" && t.2 != "labels" {
            Ok(Label::new(t.2))
        } else {
            Err(Error::parse(t.0, t.1, format!("bad label `{}`", t.2)))
        }
    };
    let mut labels = Vec::new();
    let declared = toks.first().is_some_and(|t| t.2 == "labels");
    if declared {
        i = 1;
        while i < toks.len() && toks[i].2 != "s" && toks[i].2 != "S" {
            labels.push(label(&toks[i])?);
            i += 1;
        }
    }
    let mut word = Vec::new();
    while i < toks.len() {
        let t = toks[i];
        let e = match t.2 {
            "s" => 1,
            "S" => -1,
            _ => return Err(Error::parse(t.0, t.1, format!("expected `s` or `S`, found `{}`", t.2))),
        };
        if i + 2 >= toks.len() {
            return Err(Error::parse(t.0, t.1, "generator needs two labels"));
        }
        let (a, b) = (label(&toks[i + 1])?, label(&toks[i + 2])?);
        if !declared {
            for l in [&a, &b] {
                if !labels.contains(l) {
                    labels.push(l.clone());
                }
            }
        }
        word.push((a, b, e));
        i += 3;
    }
    BraidWord::new(labels, word)
}

impl GassnerMatrix {
    pub fn identity(labels: &[Label]) -> GassnerMatrix {
        let n = labels.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RationalFunction::one() } else { RationalFunction::zero() }).collect())
            .collect();
        GassnerMatrix { labels: labels.to_vec(), entries }
    }

    fn idx(&self, l: &Label) -> usize {
        self.labels.binary_search(l).expect("label present")
    }

    pub fn get(&self, r: &Label, c: &Label) -> &RationalFunction {
        &self.entries[self.idx(r)][self.idx(c)]
    }

    pub fn mul(&self, o: &GassnerMatrix) -> GassnerMatrix {
        let n = self.labels.len();
        let mut out = vec![vec![RationalFunction::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = RationalFunction::zero();
                for k in 0..n {
                    if !self.entries[i][k].is_zero() && !o.entries[k][j].is_zero() {
                        acc = acc.add(&self.entries[i][k].mul(&o.entries[k][j]));
                    }
                }
                *cell = acc;
            }
        }
        GassnerMatrix { labels: self.labels.clone(), entries: out }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }

    pub fn map<F: Fn(&RationalFunction) -> Result<RationalFunction>>(&self, f: F) -> Result<GassnerMatrix> {
        let entries = self.entries.iter().map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok(GassnerMatrix { labels: self.labels.clone(), entries })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.labels.iter().enumerate() {
            for (j, c) in self.labels.iter().enumerate() {
                let _ = writeln!(out, "G[{r},{c}] = {}", self.entries[i][j].render());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let names: Vec<&str> = self.labels.iter().map(|l| l.as_str()).collect();
        let entries: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(|x| x.render()).collect()).collect();
        json!({"matrix": {"rows": names, "cols": names, "entries": entries}})
    }
}

/// Image of one generator: on `(a, b)` the block sends `b ↦ t_a b + (1 - t_b) a`.
pub fn gassner_generator(labels: &[Label], a: &Label, b: &Label, exp: i8) -> GassnerMatrix {
    let mut g = GassnerMatrix::identity(labels);
    let (ia, ib) = (g.idx(a), g.idx(b));
    let ta = RationalFunction::t(a);
    let tb = RationalFunction::t(b);
    let one = RationalFunction::one();
    if exp > 0 {
        g.entries[ib][ib] = ta;
        g.entries[ib][ia] = one.sub(&tb);
    } else {
        let inv = ta.inv().expect("t_a is nonzero");
        g.entries[ib][ib] = inv.clone();
        g.entries[ib][ia] = tb.sub(&one).mul(&inv);
    }
    g
}

/// Ordered product of generator images, left to right.
pub fn gassner(w: &BraidWord) -> GassnerMatrix {
    w.word.iter().fold(GassnerMatrix::identity(&w.labels), |acc, (a, b, e)| acc.mul(&gassner_generator(&w.labels, a, b, *e)))
}

/// Gassner with every variable set to a single `t`.
pub fn burau(w: &BraidWord) -> GassnerMatrix {
    let t = Label::new("t");
    gassner(w).map(|x| x.rename(|_| t.clone())).expect("substitution keeps denominators nonzero")
}

/// Evaluate the braid in the `R` calculus: start from trivial strands and
/// stack each crossing on top with `m^{aa'}_a ∘ m^{bb'}_b`.
pub fn rmva_braid(w: &BraidWord) -> Result<MetaElement> {
    let mut acc = MetaElement::empty(Calculus::R);
    for l in &w.labels {
        acc = acc.e(l)?;
    }
    let prefix = (1..).map(|k| "g".repeat(k)).find(|p| !w.labels.iter().any(|l| l.as_str().starts_with(p.as_str()))).unwrap();
    for (k, (a, b, e)) in w.word.iter().enumerate() {
        let (a2, b2) = (Label::new(&format!("{prefix}{k}o")), Label::new(&format!("{prefix}{k}u")));
        let sign = if *e > 0 { Sign::Positive } else { Sign::Negative };
        acc = acc.union(&generator(GenKind::Rmva, sign, &a2, &b2)?)?;
        acc = acc.mul(a, &a2, a)?;
        acc = acc.mul(b, &b2, b)?;
    }
    Ok(acc)
}

/// `(λ₁λ₂, 𝒜₁𝒜₂)` with normalizers multiplied.
pub fn pair_product(x: &MetaElement, y: &MetaElement) -> Result<MetaElement> {
    if x.labels() != y.labels() || x.calculus != y.calculus {
        return Err(Error::Label("pair product needs equal label sets".into()));
    }
    let g = GassnerMatrix { labels: x.labels().to_vec(), entries: x.pair.matrix().to_vec() }
        .mul(&GassnerMatrix { labels: y.labels().to_vec(), entries: y.pair.matrix().to_vec() });
    let pair = ReducedPair::new(x.pair.normalizer.mul(&y.pair.normalizer), x.pair.lambda.mul(&y.pair.lambda), g.labels, g.entries)?;
    Ok(MetaElement { calculus: x.calculus, pair })
}

/// `(λ, -𝒜)`.
pub fn pair_negate(x: &MetaElement) -> Result<MetaElement> {
    let m = x.pair.matrix().iter().map(|r| r.iter().map(|v| v.neg()).collect()).collect();
    let pair = ReducedPair::new(x.pair.normalizer.clone(), x.pair.lambda.clone(), x.labels().to_vec(), m)?;
    Ok(MetaElement { calculus: x.calculus, pair })
}

#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub holds: bool,
    pub text: String,
}

/// Compare `rmva_braid(w)` with `gassner(w)` through `𝒜 · G = -λ I`.
///
/// The normalizer multiplies `λ` and `𝒜` alike, so it cancels from the
/// identity; it is reinstated only when printing the value.
pub fn check_correspondence_report(w: &BraidWord) -> Result<CorrespondenceReport> {
    let e = rmva_braid(w)?;
    let g = gassner(w);
    let a = GassnerMatrix { labels: e.labels().to_vec(), entries: e.pair.matrix().to_vec() };
    let lhs = a.mul(&g);
    let lambda = &e.pair.lambda;
    let n = lhs.labels.len();
    let holds = (0..n).all(|i| (0..n).all(|j| if i == j { lhs.entries[i][j] == lambda.neg() } else { lhs.entries[i][j].is_zero() }));
    let mut text = String::new();
    let _ = writeln!(text, "word: {}", w.to_text());
    let _ = writeln!(text, "rMVA = {} * (lambda; A), lambda = {}", e.pair.normalizer.render(), lambda.render());
    let _ = writeln!(text, "normalizer: cancels in A*G = -lambda*I; reinstated as the overall factor above");
    let neg_t = GassnerMatrix {
        labels: a.labels.clone(),
        entries: (0..n).map(|i| (0..n).map(|j| a.entries[j][i].neg()).collect()).collect(),
    };
    let _ = writeln!(text, "-A^T:");
    text.push_str(&neg_t.render());
    if !lambda.is_zero() {
        let inv = lambda.inv()?;
        let _ = writeln!(text, "-A^T / lambda:");
        text.push_str(&neg_t.map(|x| Ok(x.mul(&inv)))?.render());
    }
    let _ = writeln!(text, "Gassner:");
    text.push_str(&g.render());
    let _ = writeln!(text, "A * Gassner = -lambda * I: {}", if holds { "yes" } else { "no" });
    Ok(CorrespondenceReport { holds, text })
}

pub fn check_correspondence(w: &BraidWord) -> Result<bool> {
    Ok(check_correspondence_report(w)?.holds)
}

/// The normalizer of a braid value: `∏ t_a^{-1/2}` over the letters' over strands.
pub fn braid_normalizer(w: &BraidWord) -> Monomial {
    Monomial::from_pairs(w.word.iter().map(|(a, _, _)| (a.clone(), -1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        parse_braid(s).unwrap()
    }

    #[test]
    fn single_generator() {
        let g = gassner(&w("labels a b s a b"));
        let (a, b) = (Label::new("a"), Label::new("b"));
        assert_eq!(*g.get(&b, &b), RationalFunction::parse("t_a").unwrap());
        assert_eq!(*g.get(&b, &a), RationalFunction::parse("1 - t_b").unwrap());
        assert!(g.get(&a, &b).is_zero());
        assert!(check_correspondence(&w("labels a b s a b")).unwrap());
    }

    #[test]
    fn relations_map_to_identity() {
        assert!(gassner(&w("labels a b s a b S a b")).is_identity());
        let r3 = w("labels a b c s a b s a c s b c").concat(&w("labels a b c s b c s a c s a b").inverse()).unwrap();
        assert!(gassner(&r3).is_identity());
        assert!(burau(&r3).is_identity());
        let comm = w("labels a b c d s a b s c d S a b S c d");
        assert!(gassner(&comm).is_identity());
    }

    #[test]
    fn inverse_pair_is_trivial() {
        let e = rmva_braid(&w("labels a b s a b S a b")).unwrap();
        assert_eq!(e.value_lambda(), RationalFunction::one());
        assert!(e.is_unit_at_one().unwrap());
        assert!(e.value_matrix().iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j {
            *x == RationalFunction::int(-1)
        } else {
            x.is_zero()
        })));
    }

    #[test]
    fn anti_homomorphism() {
        let b1 = w("labels a b c s a b S b c");
        let b2 = w("labels a b c s c a");
        let lhs = rmva_braid(&b1.concat(&b2).unwrap()).unwrap();
        let rhs = pair_negate(&pair_product(&rmva_braid(&b2).unwrap(), &rmva_braid(&b1).unwrap()).unwrap()).unwrap();
        assert!(lhs.value_eq(&rhs));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_braid("labels a b s a").is_err());
        assert!(parse_braid("labels a b x a b").is_err());
        assert!(parse_braid("labels a b s a c").is_err());
        assert_eq!(w("s b a S a c").labels.len(), 3);
    }
}
