//! The tMVA coefficient table, its Hodge reduction to `(λ, 𝒜)`, and the
//! reconstruction of every minor from `(λ, 𝒜)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::alexander::{build_matrix, det_exact, normalizer, MinorSpec};
use crate::diagram::TangleDiagram;
use crate::error::{Error, Result};
use crate::ring::{parse_rational, Coeff, Label, Monomial, RationalFunction};

/// Full tMVA value: `normalizer · w ⊗ Σ coeff(ī, j̲) b_ī ∧ a_j̲`.
#[derive(Debug, Clone, PartialEq)]
pub struct AhdElement {
    pub normalizer: Monomial,
    pub w_order: Vec<String>,
    pub in_order: Vec<String>,
    pub out_strands: Vec<Label>,
    pub in_strands: Vec<Label>,
    pub coeffs: BTreeMap<MinorSpec, RationalFunction>,
}

/// `normalizer · (λ, 𝒜)` with `𝒜` indexed by strand labels (sorted).
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPair {
    pub normalizer: Monomial,
    pub lambda: RationalFunction,
    labels: Vec<Label>,
    a: Vec<Vec<RationalFunction>>,
}

fn odd_permutation(v: &[usize]) -> bool {
    let mut inv = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every `(ī, j̲)` with `|ī| + |j̲| = n`, ordered by `|j̲|` then lexicographically.
pub fn all_specs(n: usize) -> Vec<MinorSpec> {
    let mut out = Vec::new();
    for k in 0..=n {
        for taken in subsets(n, k) {
            for kept in subsets(n, n - k) {
                out.push(MinorSpec::new(kept, taken.clone()));
            }
        }
    }
    out
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (1..=n).filter(|i| !set.contains(i)).collect()
}

impl AhdElement {
    pub fn n(&self) -> usize {
        self.w_order.len()
    }

    pub fn coeff(&self, spec: &MinorSpec) -> RationalFunction {
        self.coeffs.get(spec).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn lambda(&self) -> RationalFunction {
        self.coeff(&MinorSpec::new((1..=self.n()).collect(), vec![]))
    }

    /// Re-express with out positions moved by `out_pos` and in positions by
    /// `in_pos` (0-based old index to 0-based new index).
    pub fn reindexed(&self, out_pos: &[usize], in_pos: &[usize]) -> AhdElement {
        let n = self.n();
        let place = |v: &[String], pos: &[usize]| {
            let mut out = vec![String::new(); n];
            for (i, x) in v.iter().enumerate() {
                out[pos[i]] = x.clone();
            }
            out
        };
        let place_l = |v: &[Label], pos: &[usize]| {
            let mut out = v.to_vec();
            for (i, x) in v.iter().enumerate() {
                out[pos[i]] = x.clone();
            }
            out
        };
        let w_flip = odd_permutation(out_pos);
        let coeffs = self
            .coeffs
            .iter()
            .map(|(spec, c)| {
                let ko: Vec<usize> = spec.kept_out.iter().map(|i| out_pos[i - 1] + 1).collect();
                let ti: Vec<usize> = spec.taken_in.iter().map(|j| in_pos[j - 1] + 1).collect();
                let flip = w_flip ^ odd_permutation(&ko) ^ odd_permutation(&ti);
                let (mut ko, mut ti) = (ko, ti);
                ko.sort_unstable();
                ti.sort_unstable();
                (MinorSpec::new(ko, ti), if flip { c.neg() } else { c.clone() })
            })
            .collect();
        AhdElement {
            normalizer: self.normalizer.clone(),
            w_order: place(&self.w_order, out_pos),
            in_order: place(&self.in_order, in_pos),
            out_strands: place_l(&self.out_strands, out_pos),
            in_strands: place_l(&self.in_strands, in_pos),
            coeffs,
        }
    }

    /// Reorder both boundaries by strand label.
    pub fn by_strand(&self) -> AhdElement {
        let rank = |v: &[Label]| {
            let mut idx: Vec<usize> = (0..v.len()).collect();
            idx.sort_by(|&i, &j| v[i].cmp(&v[j]));
            let mut pos = vec![0; v.len()];
            for (new, old) in idx.into_iter().enumerate() {
                pos[old] = new;
            }
            pos
        };
        self.reindexed(&rank(&self.out_strands), &rank(&self.in_strands))
    }

    /// Equality of represented values after identifying boundary points by
    /// strand label.
    pub fn equivalent(&self, other: &AhdElement) -> bool {
        let (x, y) = (self.by_strand(), other.by_strand());
        let scaled = |e: &AhdElement, k: &MinorSpec| e.coeffs.get(k).map(|v| v.mul_monomial(&e.normalizer));
        x.out_strands == y.out_strands
            && x.in_strands == y.in_strands
            && x.coeffs.keys().chain(y.coeffs.keys()).all(|k| {
                let zero = RationalFunction::zero();
                scaled(&x, k).unwrap_or_else(|| zero.clone()) == scaled(&y, k).unwrap_or(zero)
            })
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| json!({"out_subset": k.kept_out, "in_subset": k.taken_in, "coefficient": v.render()}))
            .collect();
        json!({
            "normalizer": self.normalizer.render(),
            "w_order": self.w_order,
            "in_order": self.in_order,
            "coefficients": coeffs,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "normalizer = {}", self.normalizer.render());
        let _ = writeln!(out, "w = {}", self.w_order.join(" ^ "));
        let _ = writeln!(out, "in = {}", self.in_order.join(" "));
        for (k, v) in &self.coeffs {
            let name = |pre: &str, ix: &[usize], arcs: &[String]| ix.iter().map(|i| format!("{pre}{}", arcs[i - 1])).collect::<Vec<_>>();
            let mut wedge = name("", &k.kept_out, &self.w_order);
            wedge.extend(name("", &k.taken_in, &self.in_order));
            let basis = if wedge.is_empty() { "1".to_string() } else { wedge.join("^") };
            let _ = writeln!(out, "[{basis}] {}", v.render());
        }
        out
    }
}

/// Compute every minor coefficient of `M(D)` in parallel.
pub fn compute_tmva(d: &TangleDiagram) -> Result<AhdElement> {
    let d = d.break_through_arcs()?;
    let m = build_matrix(&d)?;
    let n = m.n();
    let coeffs: Vec<(MinorSpec, RationalFunction)> = all_specs(n)
        .into_par_iter()
        .map(|spec| m.minor_poly(&spec).map(|p| (spec, RationalFunction::from_poly(p))))
        .collect::<Result<Vec<_>>>()?;
    Ok(AhdElement {
        normalizer: normalizer(&d),
        w_order: d.out_order().to_vec(),
        in_order: d.in_order().to_vec(),
        out_strands: d.out_strands(),
        in_strands: d.in_strands(),
        coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    })
}

/// `λ = coeff([n], ∅)`, `𝒜_ij = (-1)^{n-i} coeff([n]∖i, {j})`.
pub fn hodge_reduce(e: &AhdElement) -> Result<ReducedPair> {
    let n = e.n();
    let mut a = vec![vec![RationalFunction::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let c = e.coeff(&MinorSpec::new(complement(n, &[i + 1]), vec![j + 1]));
            *cell = if (n - i - 1) % 2 == 1 { c.neg() } else { c };
        }
    }
    let mut col_of = Vec::with_capacity(n);
    for s in &e.out_strands {
        let j = e.in_strands.iter().position(|x| x == s).ok_or_else(|| Error::Shape(format!("strand {s} has no incoming end")))?;
        col_of.push(j);
    }
    let b: Vec<Vec<RationalFunction>> = a.iter().map(|row| col_of.iter().map(|&j| row[j].clone()).collect()).collect();
    ReducedPair::new(e.normalizer.clone(), e.lambda(), e.out_strands.clone(), b)
}

/// `det M^{[n]∖ī; j̲} = (-1)^{nk - k(k-1)/2 - Σ i_p} det 𝒜^{j̲}_{ī} / λ^{k-1}`.
pub fn reconstruct_minor(p: &ReducedPair, i_set: &[usize], j_set: &[usize]) -> Result<RationalFunction> {
    let n = p.n();
    let k = i_set.len();
    if j_set.len() != k {
        return Err(Error::Shape("index sets must have equal size".into()));
    }
    if i_set.iter().chain(j_set).any(|&i| i == 0 || i > n) {
        return Err(Error::Shape(format!("indices must lie in 1..={n}")));
    }
    if k == 0 {
        return Ok(p.lambda.clone());
    }
    if p.lambda.is_zero() {
        return Err(Error::LambdaZero("cannot reconstruct minors".into()));
    }
    let sub: Vec<Vec<RationalFunction>> =
        i_set.iter().map(|&i| j_set.iter().map(|&j| p.a[i - 1][j - 1].clone()).collect()).collect();
    let det = det_exact(&sub);
    let exp = (n * k) as i64 - (k * (k - 1) / 2) as i64 - i_set.iter().sum::<usize>() as i64;
    let det = if exp.rem_euclid(2) == 1 { det.neg() } else { det };
    det.checked_div(&p.lambda.pow(k as u32 - 1))
}

/// Rebuild the whole coefficient table from `(λ, 𝒜)`.
pub fn reconstruct_full(p: &ReducedPair) -> Result<AhdElement> {
    if p.lambda.is_zero() {
        return Err(Error::LambdaZero("cannot reconstruct minors".into()));
    }
    let n = p.n();
    let coeffs = all_specs(n)
        .into_par_iter()
        .map(|spec| {
            let i_set = complement(n, &spec.kept_out);
            reconstruct_minor(p, &i_set, &spec.taken_in).map(|c| (spec, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let names: Vec<String> = p.labels.iter().map(|l| l.as_str().to_string()).collect();
    Ok(AhdElement {
        normalizer: p.normalizer.clone(),
        w_order: names.clone(),
        in_order: names,
        out_strands: p.labels.clone(),
        in_strands: p.labels.clone(),
        coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    })
}

impl ReducedPair {
    /// Build from a matrix whose rows and columns follow `labels`; the result
    /// is stored with labels sorted.
    pub fn new(normalizer: Monomial, lambda: RationalFunction, labels: Vec<Label>, a: Vec<Vec<RationalFunction>>) -> Result<ReducedPair> {
        let n = labels.len();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("matrix must be {n}x{n}")));
        }
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
        if idx.windows(2).any(|w| labels[w[0]] == labels[w[1]]) {
            return Err(Error::Label("duplicate label".into()));
        }
        let a = idx.iter().map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect()).collect();
        let labels = idx.iter().map(|&i| labels[i].clone()).collect();
        Ok(ReducedPair { normalizer, lambda, labels, a })
    }

    /// `(1; [])` with no labels.
    pub fn empty() -> ReducedPair {
        ReducedPair { normalizer: Monomial::one(), lambda: RationalFunction::one(), labels: vec![], a: vec![] }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<RationalFunction>] {
        &self.a
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    pub fn get(&self, row: &Label, col: &Label) -> Option<&RationalFunction> {
        Some(&self.a[self.index_of(row)?][self.index_of(col)?])
    }

    /// Apply `f` to λ and every entry.
    pub fn map_entries<F: Fn(&RationalFunction) -> Result<RationalFunction>>(&self, f: F) -> Result<ReducedPair> {
        let a = self.a.iter().map(|r| r.iter().map(&f).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok(ReducedPair { normalizer: self.normalizer.clone(), lambda: f(&self.lambda)?, labels: self.labels.clone(), a })
    }

    /// `(λ(1), 𝒜(1))`, with the normalizer included.
    pub fn eval_all_one(&self) -> Result<(Coeff, Vec<Vec<Coeff>>)> {
        let a = self.a.iter().map(|r| r.iter().map(|x| x.eval_all_one()).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Ok((self.lambda.eval_all_one()?, a))
    }

    pub fn to_json(&self) -> Value {
        let names: Vec<&str> = self.labels.iter().map(|l| l.as_str()).collect();
        let entries: Vec<Vec<String>> = self.a.iter().map(|r| r.iter().map(|x| x.render()).collect()).collect();
        json!({
            "normalizer": self.normalizer.render(),
            "lambda": self.lambda.render(),
            "matrix": {"rows": names, "cols": names, "entries": entries},
        })
    }

    pub fn from_json(v: &Value) -> Result<ReducedPair> {
        let bad = |m: &str| Error::parse(1, 1, m);
        let text = |v: &Value, what: &str| v.as_str().map(str::to_string).ok_or_else(|| bad(&format!("`{what}` must be a string")));
        let nz = parse_rational(&text(&v["normalizer"], "normalizer")?)?;
        let normalizer = match nz.as_poly() {
            Some(p) if p.is_unit() && p.terms()[0].1 == Coeff::from_integer(1.into()) => p.terms()[0].0.clone(),
            _ => return Err(bad("normalizer must be a monomial")),
        };
        let lambda = parse_rational(&text(&v["lambda"], "lambda")?)?;
        let m = &v["matrix"];
        let labels_of = |key: &str| -> Result<Vec<Label>> {
            m[key]
                .as_array()
                .ok_or_else(|| bad(&format!("`matrix.{key}` must be an array")))?
                .iter()
                .map(|x| text(x, key).map(|s| Label::new(&s)))
                .collect()
        };
        let rows = labels_of("rows")?;
        if labels_of("cols")? != rows {
            return Err(bad("row and column labels must agree"));
        }
        let a = m["entries"]
            .as_array()
            .ok_or_else(|| bad("`matrix.entries` must be an array"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("matrix rows must be arrays"))?
                    .iter()
                    .map(|x| parse_rational(&text(x, "entry")?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ReducedPair::new(normalizer, lambda, rows, a)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "normalizer = {}", self.normalizer.render());
        let _ = writeln!(out, "lambda = {}", self.lambda.render());
        for (i, r) in self.labels.iter().enumerate() {
            for (j, c) in self.labels.iter().enumerate() {
                let _ = writeln!(out, "A[{r},{c}] = {}", self.a[i][j].render());
            }
        }
        out
    }

    pub(crate) fn from_parts(normalizer: Monomial, lambda: RationalFunction, labels: Vec<Label>, a: Vec<Vec<RationalFunction>>) -> ReducedPair {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        ReducedPair { normalizer, lambda, labels, a }
    }
}

/// The trivial long strand: degree-0 and degree-1 data of the identity tangle.
pub fn trivial_strand(label: &Label) -> ReducedPair {
    ReducedPair::from_parts(Monomial::one(), RationalFunction::one(), vec![label.clone()], vec![vec![RationalFunction::int(-1)]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    pub(crate) const T_PRIME: &str = include_str!("../../../data/t_prime.diagram");
    const POSITIVE: &str = include_str!("../../../data/positive.diagram");

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn positive_crossing_pair() {
        let e = compute_tmva(&parse_diagram(POSITIVE).unwrap()).unwrap();
        assert_eq!(e.normalizer.render(), "t_a^(-1/2)");
        assert_eq!(e.coeffs.len(), 5);
        let p = hodge_reduce(&e).unwrap();
        assert_eq!(p.lambda, rf("t_a"));
        let a = p.matrix();
        assert_eq!(a[0], vec![rf("-t_a"), rf("0")]);
        assert_eq!(a[1], vec![rf("1 - t_b"), rf("-1")]);
    }

    #[test]
    fn trivial_strand_coefficients() {
        let d = parse_diagram("strand x open\narc x0 on x role through\n").unwrap();
        let e = compute_tmva(&d).unwrap();
        assert_eq!(e.coeff(&MinorSpec::new(vec![1], vec![])), rf("1"));
        assert_eq!(e.coeff(&MinorSpec::new(vec![], vec![1])), rf("-1"));
        let r = reconstruct_full(&trivial_strand(&Label::new("x"))).unwrap();
        assert!(r.equivalent(&e));
    }

    #[test]
    fn t_prime_pair() {
        let e = compute_tmva(&parse_diagram(T_PRIME).unwrap()).unwrap();
        assert_eq!(e.normalizer.render(), "t1^(-1)*t3^(-2)");
        let p = hodge_reduce(&e).unwrap();
        assert_eq!(p.lambda, rf("t1*t3^2*(t1 + t3 - 1)"));
        assert_eq!(p.matrix()[0][0], rf("t1*t3^3*(t3*t1 - 2*t1 - t3 + 1)"));
        assert_eq!(p.matrix()[2][0], rf("-t1*t3^3*(t3 - 1)"));
        assert_eq!(p.matrix()[2][2], rf("t1*t3^2*(t1*t3 - 2*t3 + 1 - t1)"));
        let (l, a) = p.eval_all_one().unwrap();
        assert_eq!(l, Coeff::from_integer(1.into()));
        for (i, r) in a.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                assert_eq!(*x, Coeff::from_integer(if i == j { -1 } else { 0 }.into()));
            }
        }
    }

    #[test]
    fn t_prime_reconstruction() {
        let e = compute_tmva(&parse_diagram(T_PRIME).unwrap()).unwrap();
        let p = hodge_reduce(&e).unwrap();
        let r = reconstruct_full(&p).unwrap();
        assert!(r.equivalent(&e));
        assert_eq!(all_specs(3).len(), 20);
    }

    #[test]
    fn reorder_preserves_pair() {
        let d = parse_diagram(&format!("{T_PRIME}order out b3 b1 b2\norder in a2 a3 a1\n")).unwrap();
        let e = compute_tmva(&d).unwrap();
        let base = compute_tmva(&parse_diagram(T_PRIME).unwrap()).unwrap();
        assert!(e.equivalent(&base));
        assert_eq!(hodge_reduce(&e).unwrap(), hodge_reduce(&base).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let p = hodge_reduce(&compute_tmva(&parse_diagram(T_PRIME).unwrap()).unwrap()).unwrap();
        assert_eq!(ReducedPair::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn lambda_zero_is_refused() {
        let p = ReducedPair::new(Monomial::one(), RationalFunction::zero(), vec![Label::new("a")], vec![vec![rf("1")]]).unwrap();
        assert!(matches!(reconstruct_minor(&p, &[1], &[1]), Err(Error::LambdaZero(_))));
    }
}
