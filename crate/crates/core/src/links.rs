//! Long links: 1-tangles, the vMVA, partial traces and MVA recovery.

use std::collections::BTreeMap;

use crate::alexander::MinorSpec;
use crate::diagram::{Arc, ArcRole, Sign, Strand, StrandKind, TangleDiagram};
use crate::error::{Error, Result};
use crate::meta::{eval_program, f_map, program_from_diagram, Calculus, MetaElement, MetaProgram};
use crate::ring::{Label, LaurentPoly, RationalFunction};
use crate::tmva::{compute_tmva, ReducedPair};

/// `(λ_T; [𝒜_T])` of a 1-tangle, normalizer kept separate.
#[derive(Debug, Clone, PartialEq)]
pub struct OneTanglePair {
    pub pair: ReducedPair,
    pub long_label: Label,
}

/// Degree-0 and degree-1 data of a diagram with one open strand.
pub fn rmva_one_tangle(d: &TangleDiagram) -> Result<OneTanglePair> {
    let open = d.open_strands();
    if open.len() != 1 {
        return Err(Error::Shape(format!("expected one open strand, found {}", open.len())));
    }
    let long_label = open[0].clone();
    let e = compute_tmva(d)?;
    let lambda = e.coeff(&MinorSpec::new(vec![1], vec![]));
    let a = e.coeff(&MinorSpec::new(vec![], vec![1]));
    if lambda != a.neg() {
        return Err(Error::Consistency(format!("lambda = {} but A = {}", lambda.render(), a.render())));
    }
    let pair = ReducedPair::new(e.normalizer, lambda, vec![long_label.clone()], vec![vec![a]])?;
    Ok(OneTanglePair { pair, long_label })
}

fn vmva_of(pair: &ReducedPair, long: &Label) -> Result<RationalFunction> {
    let t = RationalFunction::t(long).sub(&RationalFunction::one());
    pair.lambda.mul_monomial(&pair.normalizer).checked_div(&t)
}

/// `ν·λ_T / (t_l - 1)`.
pub fn vmva(d: &TangleDiagram) -> Result<RationalFunction> {
    let p = rmva_one_tangle(d)?;
    vmva_of(&p.pair, &p.long_label)
}

/// `tr_a(λ; 𝒜) = (λ + α; ((λ + α)Ξ - φθ)/λ)`; `t_a` stays as the variable of
/// the new closed component.
pub fn partial_trace(e: &MetaElement, a: &Label) -> Result<MetaElement> {
    if e.calculus != Calculus::R {
        return Err(Error::Label("partial trace acts on the R calculus".into()));
    }
    let ia = e.pair.index_of(a).ok_or_else(|| Error::Label(format!("label `{a}` not present")))?;
    let lambda = &e.pair.lambda;
    if lambda.is_zero() {
        return Err(Error::LambdaZero(format!("cannot close `{a}`")));
    }
    let m = e.pair.matrix();
    let lam2 = lambda.add(&m[ia][ia]);
    let inv = lambda.inv()?;
    let xs: Vec<usize> = (0..e.pair.n()).filter(|&i| i != ia).collect();
    let sub = xs
        .iter()
        .map(|&x| {
            xs.iter()
                .map(|&y| {
                    let v = lam2.mul(&m[x][y]);
                    let v = if m[x][ia].is_zero() || m[ia][y].is_zero() { v } else { v.sub(&m[x][ia].mul(&m[ia][y])) };
                    v.mul(&inv)
                })
                .collect()
        })
        .collect();
    let labels = xs.iter().map(|&i| e.labels()[i].clone()).collect();
    let pair = ReducedPair::new(e.pair.normalizer.clone(), lam2, labels, sub)?;
    Ok(MetaElement { calculus: Calculus::R, pair })
}

/// Close the listed strands left to right, then take the vMVA of what is left.
pub fn mva_from_element(e: &MetaElement, close: &[Label]) -> Result<RationalFunction> {
    let mut e = match e.calculus {
        Calculus::R => e.clone(),
        Calculus::Gamma => f_map(e)?,
    };
    for (step, a) in close.iter().enumerate() {
        e = partial_trace(&e, a).map_err(|err| match err {
            Error::LambdaZero(m) => Error::LambdaZero(format!("{m} at closure step {} of order {:?}", step + 1, names(close))),
            other => other,
        })?;
    }
    if e.labels().len() != 1 {
        return Err(Error::Shape(format!("{} strands remain open after closing; expected one", e.labels().len())));
    }
    let long = e.labels()[0].clone();
    let (l, a) = (&e.pair.lambda, &e.pair.matrix()[0][0]);
    if *l != a.neg() {
        return Err(Error::Consistency(format!("lambda = {} but A = {}", l.render(), a.render())));
    }
    vmva_of(&e.pair, &long)
}

fn names(ls: &[Label]) -> Vec<&str> {
    ls.iter().map(|l| l.as_str()).collect()
}

pub fn mva_link_program(p: &MetaProgram, close: &[Label]) -> Result<RationalFunction> {
    mva_from_element(&eval_program(p)?, close)
}

/// vMVA of a diagram: through the program and traces when `close` is given,
/// otherwise directly from its Alexander matrix.
pub fn mva_link(d: &TangleDiagram, close: &[Label]) -> Result<RationalFunction> {
    if close.is_empty() {
        vmva(d)
    } else {
        mva_link_program(&program_from_diagram(d)?, close)
    }
}

/// `f = ±m·g` for a monomial `m` in the `s` variables.
pub fn equal_up_to_unit(f: &RationalFunction, g: &RationalFunction) -> bool {
    let p = f.numerator().mul(&g.denominator());
    let q = g.numerator().mul(&f.denominator());
    match (p.leading(), q.leading()) {
        (None, None) => true,
        (Some((mp, cp)), Some((mq, cq))) => {
            let c = cp / cq;
            if c.numer().magnitude() != c.denom().magnitude() {
                return false;
            }
            q.mul_term(&mp.div(mq), &c) == p
        }
        _ => false,
    }
}

/// Which components of a braid closure are cut open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    /// Only the component through position 0; the rest stay closed.
    First,
    /// Every component, giving a pure tangle.
    All,
}

/// Closure of a classical braid word on `n` strands (`±i` for `σ_i^{±1}`,
/// 1-based), cut at the bottom of each chosen component. Components are
/// labelled `t1, t2, …` in order of their lowest position.
pub fn braid_closure(n: usize, word: &[i32], cut: Cut) -> Result<TangleDiagram> {
    if word.iter().any(|&g| g == 0 || g.unsigned_abs() as usize >= n) {
        return Err(Error::Shape(format!("generators must lie in ±1..±{}", n - 1)));
    }
    let mut cur: Vec<String> = (0..n).map(|k| format!("a{k}")).collect();
    let mut owner: Vec<usize> = (0..n).collect();
    let mut arc_owner: BTreeMap<String, usize> = (0..n).map(|k| (format!("a{k}"), k)).collect();
    let mut xings: Vec<(Sign, String, String, String)> = Vec::new();
    for (m, &g) in word.iter().enumerate() {
        let i = g.unsigned_abs() as usize - 1;
        let fresh = format!("x{m}");
        if g > 0 {
            xings.push((Sign::Positive, cur[i].clone(), cur[i + 1].clone(), fresh.clone()));
            arc_owner.insert(fresh.clone(), owner[i + 1]);
            cur.swap(i, i + 1);
            cur[i] = fresh;
        } else {
            xings.push((Sign::Negative, cur[i + 1].clone(), cur[i].clone(), fresh.clone()));
            arc_owner.insert(fresh.clone(), owner[i]);
            cur.swap(i, i + 1);
            cur[i + 1] = fresh;
        }
        owner.swap(i, i + 1);
    }
    // Strand starting at position k ends at position pos_end[k].
    let mut end_pos = vec![0; n];
    for (p, &s) in owner.iter().enumerate() {
        end_pos[s] = p;
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps = 0;
    for k in 0..n {
        if comp[k] == usize::MAX {
            let mut s = k;
            while comp[s] == usize::MAX {
                comp[s] = comps;
                s = end_pos[s];
            }
            comps += 1;
        }
    }
    let cut_at: Vec<bool> = (0..n).map(|p| (0..p).all(|q| comp[q] != comp[p]) && (cut == Cut::All || comp[p] == 0)).collect();
    let mut parent: BTreeMap<String, String> = BTreeMap::new();
    fn find(parent: &BTreeMap<String, String>, x: &str) -> String {
        let mut x = x.to_string();
        while let Some(p) = parent.get(&x) {
            x = p.clone();
        }
        x
    }
    for p in 0..n {
        if !cut_at[p] {
            let (top, bottom) = (find(&parent, &cur[p]), find(&parent, &format!("a{p}")));
            if top != bottom {
                parent.insert(bottom, top);
            }
        }
    }
    let label = |c: usize| Label::new(&format!("t{}", c + 1));
    let mut strands = Vec::new();
    let mut ends: BTreeMap<String, ArcRole> = BTreeMap::new();
    for p in 0..n {
        if p == (0..n).find(|&q| comp[q] == comp[p]).unwrap() {
            let kind = if cut_at[p] { StrandKind::Open } else { StrandKind::Closed };
            strands.push(Strand { label: label(comp[p]), kind });
        }
        if cut_at[p] {
            let (i, o) = (find(&parent, &format!("a{p}")), find(&parent, &cur[p]));
            if i == o {
                ends.insert(i, ArcRole::Through);
            } else {
                ends.insert(i, ArcRole::In);
                ends.insert(o, ArcRole::Out);
            }
        }
    }
    let arcs: Vec<Arc> = arc_owner
        .iter()
        .filter(|(id, _)| !parent.contains_key(*id))
        .map(|(id, &s)| Arc { id: id.clone(), strand: label(comp[s]), role: ends.get(id).copied().unwrap_or(ArcRole::Internal) })
        .collect();
    let xings: Vec<(Sign, String, String, String)> =
        xings.into_iter().map(|(s, o, ui, uo)| (s, find(&parent, &o), find(&parent, &ui), find(&parent, &uo))).collect();
    let specs = xings.iter().map(|(s, o, ui, uo)| (*s, o.as_str(), ui.as_str(), uo.as_str())).collect();
    TangleDiagram::new(strands, arcs, specs, vec![], None, None)
}

/// The MVA route through the metamonoid: cut every component, evaluate, and
/// close all components but the first.
pub fn braid_closure_mva(n: usize, word: &[i32]) -> Result<RationalFunction> {
    let d = braid_closure(n, word, Cut::All)?;
    let mut close: Vec<Label> = d.open_strands().into_iter().cloned().collect();
    close.sort();
    close.remove(0);
    mva_link_program(&program_from_diagram(&d)?, &close)
}

/// Single-variable specialization `t_a ↦ t` of a rational function.
pub fn specialize(f: &RationalFunction, t: &Label) -> Result<RationalFunction> {
    f.rename(|_| t.clone())
}

/// `(t - 1)` in the variable `t`.
pub fn t_minus_one(t: &Label) -> LaurentPoly {
    LaurentPoly::t(t).sub(&LaurentPoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::meta::parse_program;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn trivial_long_strand() {
        let d = parse_diagram("strand t open\narc x on t role through\n").unwrap();
        let p = rmva_one_tangle(&d).unwrap();
        assert_eq!(p.pair.lambda, rf("1"));
        assert_eq!(p.pair.matrix()[0][0], rf("-1"));
        assert_eq!(vmva(&d).unwrap(), rf("1 / (t - 1)"));
    }

    #[test]
    fn two_open_strands_rejected() {
        let d = parse_diagram(include_str!("../../../data/positive.diagram")).unwrap();
        assert!(matches!(rmva_one_tangle(&d), Err(Error::Shape(_))));
    }

    #[test]
    fn trace_of_trivial_strand() {
        let e = MetaElement::empty(Calculus::R).e(&Label::new("a")).unwrap();
        let t = partial_trace(&e, &Label::new("a")).unwrap();
        assert!(t.pair.lambda.is_zero());
        assert!(t.labels().is_empty());
        assert!(matches!(partial_trace(&t.e(&Label::new("b")).unwrap(), &Label::new("b")), Err(Error::LambdaZero(_))));
    }

    #[test]
    fn unit_comparison() {
        assert!(equal_up_to_unit(&rf("t^2 - t + 1"), &rf("-t^(-1/2)*(t^2 - t + 1)")));
        assert!(!equal_up_to_unit(&rf("t^2 - t + 1"), &rf("2*(t^2 - t + 1)")));
        assert!(!equal_up_to_unit(&rf("t^2 - t + 1"), &rf("t^2 + t + 1")));
        assert!(equal_up_to_unit(&rf("0"), &rf("0")));
    }

    #[test]
    fn trefoil_paths_agree() {
        let direct = vmva(&braid_closure(2, &[1, 1, 1], Cut::First).unwrap()).unwrap();
        let traced = braid_closure_mva(2, &[1, 1, 1]).unwrap();
        assert!(equal_up_to_unit(&direct, &traced));
        let t = Label::new("t1");
        let expect = RationalFunction::from_poly(LaurentPoly::t(&t).mul(&LaurentPoly::t(&t)).sub(&LaurentPoly::t(&t)).add(&LaurentPoly::one()))
            .checked_div(&RationalFunction::from_poly(t_minus_one(&t)))
            .unwrap();
        assert!(equal_up_to_unit(&direct, &expect));
    }

    #[test]
    fn hopf_paths_agree() {
        let d = braid_closure(2, &[1, 1], Cut::First).unwrap();
        assert!(d.has_closed());
        let direct = vmva(&d).unwrap();
        let traced = braid_closure_mva(2, &[1, 1]).unwrap();
        assert!(equal_up_to_unit(&direct, &traced), "{direct} vs {traced}");
    }

    #[test]
    fn one_tangle_program() {
        let p = parse_program("gen rmva + a b\ngen rmva + c d\nunion\nmul a c -> a\nmul b d -> b\n").unwrap();
        let v = mva_link_program(&p, &[Label::new("b")]).unwrap();
        assert!(!v.is_zero());
    }
}
