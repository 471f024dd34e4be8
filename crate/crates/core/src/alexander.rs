//! The Alexander matrix of a diagram and exact determinants.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::diagram::{Sign, TangleDiagram};
use crate::error::{Error, Result};
use crate::ring::{Label, LaurentPoly, Monomial, RationalFunction};

/// Rows: internal arcs then outgoing arcs. Columns: internal | out | in.
#[derive(Debug, Clone, PartialEq)]
pub struct AlexanderMatrix {
    pub row_labels: Vec<String>,
    pub internal: Vec<String>,
    pub outs: Vec<String>,
    pub ins: Vec<String>,
    col_strands: Vec<Label>,
    rows: Vec<BTreeMap<usize, LaurentPoly>>,
}

/// Selected out indices `ī` and in indices `j̲`, 1-based and ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinorSpec {
    pub kept_out: Vec<usize>,
    pub taken_in: Vec<usize>,
}

impl MinorSpec {
    pub fn new(kept_out: Vec<usize>, taken_in: Vec<usize>) -> MinorSpec {
        MinorSpec { kept_out, taken_in }
    }
}

impl AlexanderMatrix {
    /// Number of open strands.
    pub fn n(&self) -> usize {
        self.outs.len()
    }

    pub fn col_labels(&self) -> Vec<String> {
        self.internal.iter().chain(&self.outs).chain(&self.ins).cloned().collect()
    }

    pub fn num_cols(&self) -> usize {
        self.col_strands.len()
    }

    pub fn entry(&self, row: &str, col: &str) -> LaurentPoly {
        let r = self.row_labels.iter().position(|x| x == row);
        let c = self.col_labels().iter().position(|x| x == col);
        match (r, c) {
            (Some(r), Some(c)) => self.rows[r].get(&c).cloned().unwrap_or_else(LaurentPoly::zero),
            _ => LaurentPoly::zero(),
        }
    }

    pub fn rows(&self) -> &[BTreeMap<usize, LaurentPoly>] {
        &self.rows
    }

    /// `Σ_s (t_s - 1) C_s = 0`.
    pub fn column_relation_holds(&self) -> bool {
        self.rows.iter().all(|row| {
            let mut acc = LaurentPoly::zero();
            for (c, v) in row {
                let w = LaurentPoly::t(&self.col_strands[*c]).sub(&LaurentPoly::one());
                acc = acc.add(&w.mul(v));
            }
            acc.is_zero()
        })
    }

    fn check_spec(&self, spec: &MinorSpec) -> Result<()> {
        let n = self.n();
        let ok = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&i| i >= 1 && i <= n);
        if !ok(&spec.kept_out) || !ok(&spec.taken_in) {
            return Err(Error::Shape(format!("minor indices must be ascending within 1..={n}")));
        }
        if spec.kept_out.len() + spec.taken_in.len() != n {
            return Err(Error::Shape("selected submatrix is not square".into()));
        }
        Ok(())
    }

    /// Column indices of the minor in canonical order.
    fn minor_columns(&self, spec: &MinorSpec) -> Vec<usize> {
        let ni = self.internal.len();
        let n = self.n();
        let mut cols: Vec<usize> = (0..ni).collect();
        cols.extend(spec.kept_out.iter().map(|i| ni + i - 1));
        cols.extend(spec.taken_in.iter().map(|j| ni + n + j - 1));
        cols
    }

    pub fn minor_poly(&self, spec: &MinorSpec) -> Result<LaurentPoly> {
        self.check_spec(spec)?;
        let cols = self.minor_columns(spec);
        let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let rows: Vec<BTreeMap<usize, LaurentPoly>> = self
            .rows
            .iter()
            .map(|r| r.iter().filter_map(|(c, v)| pos.get(c).map(|p| (*p, v.clone()))).collect())
            .collect();
        Ok(det_sparse(rows, cols.len()))
    }

    /// Text dump with labelled rows and columns.
    pub fn render(&self) -> String {
        let cols = self.col_labels();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| (0..cols.len()).map(|c| r.get(&c).map(|v| v.render()).unwrap_or_else(|| "0".into())).collect())
            .collect();
        let mut widths: Vec<usize> = cols.iter().map(|c| c.len()).collect();
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let lw = self.row_labels.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut out = String::new();
        let _ = write!(out, "{:lw$} |", "");
        for (c, w) in cols.iter().zip(&widths) {
            let _ = write!(out, " {c:>w$}");
        }
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&cells) {
            let _ = write!(out, "{label:lw$} |");
            for (cell, w) in row.iter().zip(&widths) {
                let _ = write!(out, " {cell:>w$}");
            }
            out.push('\n');
        }
        out
    }
}

/// Build `M(D)` from the local crossing rules and break rows.
pub fn build_matrix(d: &TangleDiagram) -> Result<AlexanderMatrix> {
    if d.has_through() {
        return Err(Error::Validation("through arcs must be broken before building the matrix".into()));
    }
    let internal: Vec<String> = d.internal_arcs().into_iter().map(String::from).collect();
    let outs = d.out_order().to_vec();
    let ins = d.in_order().to_vec();
    let cols: Vec<&String> = internal.iter().chain(&outs).chain(&ins).collect();
    let col_index: HashMap<&str, usize> = cols.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
    let col_strands: Vec<Label> = cols.iter().map(|c| d.strand_of(c).unwrap().clone()).collect();
    let row_labels: Vec<String> = internal.iter().chain(&outs).cloned().collect();
    let mut rows = Vec::with_capacity(row_labels.len());
    for label in &row_labels {
        let mut row: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        let mut put = |arc: &str, v: LaurentPoly| {
            let c = col_index[arc];
            let cur = row.remove(&c).unwrap_or_else(LaurentPoly::zero);
            let sum = cur.add(&v);
            if !sum.is_zero() {
                row.insert(c, sum);
            }
        };
        if let Some(x) = d.crossings().iter().find(|x| &x.under_out == label) {
            let t_o = LaurentPoly::t(&x.over_strand);
            let t_u = LaurentPoly::t(&x.under_strand);
            let one = LaurentPoly::one();
            match x.sign {
                Sign::Positive => {
                    put(&x.over, one.sub(&t_u));
                    put(&x.under_in, one.neg());
                    put(&x.under_out, t_o);
                }
                Sign::Negative => {
                    put(&x.over, t_u.sub(&one));
                    put(&x.under_in, t_o.neg());
                    put(&x.under_out, one);
                }
            }
        } else if let Some(b) = d.breaks().iter().find(|b| &b.new == label) {
            put(&b.new, LaurentPoly::one());
            put(&b.old, LaurentPoly::int(-1));
        } else {
            return Err(Error::Validation(format!("arc `{label}` has no defining row")));
        }
        rows.push(row);
    }
    Ok(AlexanderMatrix { row_labels, internal, outs, ins, col_strands, rows })
}

/// Determinant of the minor selected by `spec`, as an exact rational function.
pub fn minor_det(m: &AlexanderMatrix, spec: &MinorSpec) -> Result<RationalFunction> {
    m.minor_poly(spec).map(RationalFunction::from_poly)
}

/// Normalizer `∏ t_s^{-μ(s)/2}` of a diagram.
pub fn normalizer(d: &TangleDiagram) -> Monomial {
    Monomial::from_pairs(d.mu_counts().into_iter().map(|(l, mu)| (l, -(mu as i32))))
}

/// Minimal commutative ring interface shared by the determinant kernels.
pub trait DetRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl DetRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LaurentPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
}

impl DetRing for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
}

/// Laplace expansion along the sparsest column.
pub fn det_cofactor<R: DetRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    match n {
        0 => return R::one(),
        1 => return m[0][0].clone(),
        2 => return m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {}
    }
    let col = (0..n).max_by_key(|&c| (0..n).filter(|&r| m[r][c].is_zero()).count()).unwrap();
    let mut acc = R::zero();
    for r in 0..n {
        if m[r][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = (0..n)
            .filter(|&i| i != r)
            .map(|i| (0..n).filter(|&j| j != col).map(|j| m[i][j].clone()).collect())
            .collect();
        let term = m[r][col].mul(&det_cofactor(&minor));
        acc = if (r + col) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Fraction-free Bareiss elimination over the Laurent ring.
pub fn det_bareiss(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len());
        let Some(p) = pivot else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Determinant of a square sparse matrix (`rows[r]` maps column to entry).
///
/// Pivots on unit entries (single-term polynomials) in Markowitz order, then
/// finishes the remaining core by cofactor expansion (size ≤ 4) or Bareiss.
pub fn det_sparse(mut rows: Vec<BTreeMap<usize, LaurentPoly>>, n: usize) -> LaurentPoly {
    assert_eq!(rows.len(), n, "det_sparse needs a square matrix");
    let mut row_alive: Vec<usize> = (0..n).collect();
    let mut col_alive: Vec<usize> = (0..n).collect();
    let mut acc = LaurentPoly::one();
    let mut negate = false;
    loop {
        if row_alive.is_empty() {
            return if negate { acc.neg() } else { acc };
        }
        if row_alive.iter().any(|&r| rows[r].is_empty()) {
            return LaurentPoly::zero();
        }
        let mut col_count: HashMap<usize, usize> = HashMap::new();
        for &r in &row_alive {
            for c in rows[r].keys() {
                *col_count.entry(*c).or_insert(0) += 1;
            }
        }
        if col_alive.iter().any(|c| !col_count.contains_key(c)) {
            return LaurentPoly::zero();
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &row_alive {
            let rc = rows[r].len() - 1;
            for (c, v) in &rows[r] {
                if !v.is_unit() {
                    continue;
                }
                let cost = rc * (col_count[c] - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, *c));
                }
            }
        }
        let Some((_, r, c)) = best else {
            break;
        };
        let pr = row_alive.iter().position(|&x| x == r).unwrap();
        let pc = col_alive.iter().position(|&x| x == c).unwrap();
        if (pr + pc) % 2 == 1 {
            negate = !negate;
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let p = pivot_row[&c].clone();
        let (pm, pcoef) = p.terms()[0].clone();
        let (pm_inv, pc_inv) = (pm.inv(), pcoef.recip());
        for &r2 in &row_alive {
            if r2 == r {
                continue;
            }
            let Some(e) = rows[r2].remove(&c) else {
                continue;
            };
            let factor = e.mul_term(&pm_inv, &pc_inv);
            for (c2, v) in &pivot_row {
                if *c2 == c {
                    continue;
                }
                let cur = rows[r2].remove(c2).unwrap_or_else(LaurentPoly::zero);
                let next = cur.sub(&factor.mul(v));
                if !next.is_zero() {
                    rows[r2].insert(*c2, next);
                }
            }
        }
        acc = acc.mul(&p);
        row_alive.remove(pr);
        col_alive.remove(pc);
    }
    let dense: Vec<Vec<LaurentPoly>> = row_alive
        .iter()
        .map(|&r| col_alive.iter().map(|c| rows[r].get(c).cloned().unwrap_or_else(LaurentPoly::zero)).collect())
        .collect();
    let core = if dense.len() <= 4 { det_cofactor(&dense) } else { det_bareiss(dense) };
    let d = acc.mul(&core);
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Exact determinant of a square matrix of rational functions.
pub fn det_exact(rows: &[Vec<RationalFunction>]) -> RationalFunction {
    let n = rows.len();
    if n <= 4 {
        return det_cofactor(rows);
    }
    let mut scale = RationalFunction::one();
    let mut sparse = Vec::with_capacity(n);
    for row in rows {
        let mut factors: Vec<(LaurentPoly, u32)> = Vec::new();
        for v in row {
            for (f, k) in v.den_factors() {
                match factors.iter_mut().find(|(g, _)| g == f) {
                    Some(e) => e.1 = e.1.max(*k),
                    None => factors.push((f.clone(), *k)),
                }
            }
        }
        let mut l = LaurentPoly::one();
        for (f, k) in &factors {
            l = l.mul(&f.pow(*k));
        }
        let mut out = BTreeMap::new();
        for (c, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let w = v.mul_poly(&l);
            let p = w.as_poly().cloned().expect("row denominator clears");
            out.insert(c, p);
        }
        sparse.push(out);
        scale = scale.mul(&RationalFunction::from_poly(l));
    }
    let d = RationalFunction::from_poly(det_sparse(sparse, n));
    d.checked_div(&scale).expect("row scales are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::ring::t;

    const POSITIVE: &str = "strand a open\nstrand b open\narc a1 on a role in\narc b1 on a role out\narc a2 on b role in\narc b2 on b role out\nbreak a1 as b1\nxing + over b1 under a2 -> b2\n";
    const NEGATIVE: &str = "strand a open\nstrand b open\narc a1 on a role in\narc b1 on a role out\narc a2 on b role in\narc b2 on b role out\nbreak a1 as b1\nxing - over b1 under a2 -> b2\n";

    fn p(s: &str) -> LaurentPoly {
        RationalFunction::parse(s).unwrap().as_poly().unwrap().clone()
    }

    #[test]
    fn positive_crossing_rows() {
        let m = build_matrix(&parse_diagram(POSITIVE).unwrap()).unwrap();
        assert_eq!(m.row_labels, ["b1", "b2"]);
        assert_eq!(m.entry("b1", "b1"), p("1"));
        assert_eq!(m.entry("b1", "a1"), p("-1"));
        assert_eq!(m.entry("b2", "b1"), p("1 - t_b"));
        assert_eq!(m.entry("b2", "b2"), p("t_a"));
        assert_eq!(m.entry("b2", "a2"), p("-1"));
        assert!(m.column_relation_holds());
    }

    #[test]
    fn negative_crossing_rows() {
        let m = build_matrix(&parse_diagram(NEGATIVE).unwrap()).unwrap();
        assert_eq!(m.entry("b2", "b1"), p("t_b - 1"));
        assert_eq!(m.entry("b2", "b2"), p("1"));
        assert_eq!(m.entry("b2", "a2"), p("-t_a"));
        assert!(m.column_relation_holds());
    }

    #[test]
    fn positive_crossing_minors() {
        let m = build_matrix(&parse_diagram(POSITIVE).unwrap()).unwrap();
        assert_eq!(minor_det(&m, &MinorSpec::new(vec![1, 2], vec![])).unwrap(), t("a"));
        assert_eq!(minor_det(&m, &MinorSpec::new(vec![], vec![1, 2])).unwrap(), RationalFunction::one());
        assert!(matches!(minor_det(&m, &MinorSpec::new(vec![1], vec![])), Err(Error::Shape(_))));
    }

    #[test]
    fn through_arc_must_be_broken() {
        let d = parse_diagram("strand a open\narc x on a role through\n").unwrap();
        assert!(build_matrix(&d).is_err());
        let m = build_matrix(&d.break_through_arcs().unwrap()).unwrap();
        assert_eq!(m.entry("brk0", "brk0"), p("1"));
        assert_eq!(m.entry("brk0", "x"), p("-1"));
    }

    #[test]
    fn det_identity_and_equal_rows() {
        let id: Vec<Vec<RationalFunction>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { RationalFunction::one() } else { RationalFunction::zero() }).collect()).collect();
        assert!(det_exact(&id).is_one());
        let row = vec![t("a"), t("b") - RationalFunction::one(), RationalFunction::int(3), t("a") * t("b"), RationalFunction::one()];
        let mut m: Vec<Vec<RationalFunction>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { t("c") + RationalFunction::int(1) } else { RationalFunction::int((i * j) as i64) }).collect())
            .collect();
        m[1] = row.clone();
        m[3] = row;
        assert!(det_exact(&m).is_zero());
    }

    #[test]
    fn sparse_matches_cofactor() {
        let e = |s: &str| p(s);
        let dense = vec![
            vec![e("t_a"), e("1 - t_b"), e("0"), e("2"), e("0")],
            vec![e("0"), e("t_a + t_b"), e("-1"), e("0"), e("t_c")],
            vec![e("1"), e("0"), e("t_c - 1"), e("t_a*t_b"), e("0")],
            vec![e("0"), e("3"), e("0"), e("t_b - t_c"), e("-t_a")],
            vec![e("t_b"), e("0"), e("1"), e("0"), e("t_a - 1")],
        ];
        let sparse: Vec<BTreeMap<usize, LaurentPoly>> =
            dense.iter().map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()).collect();
        assert_eq!(det_sparse(sparse, 5), det_cofactor(&dense));
        assert_eq!(det_bareiss(dense.clone()), det_cofactor(&dense));
    }
}
