//! The two metamonoid calculi on `(λ, 𝒜)` pairs: the rMVA calculus `R` and
//! the Γ-calculus, with their generators and the isomorphism `F`.

mod convert;
mod program;
mod random;

pub use convert::{assemble, assemble_closed, program_from_diagram};
pub use program::{eval_program, eval_program_in, parse_program, Instr, MetaProgram};
pub use random::{random_program, RandomConfig};

use std::fmt;

use crate::diagram::Sign;
use crate::error::{Error, Result};
use crate::ring::{coeff, Label, Monomial, RationalFunction};
use crate::tmva::ReducedPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Calculus {
    R,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    Rmva,
    Ztilde,
    Z,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::Rmva => "rmva",
            GenKind::Ztilde => "ztilde",
            GenKind::Z => "z",
        }
    }

    pub fn from_name(s: &str) -> Option<GenKind> {
        match s {
            "rmva" => Some(GenKind::Rmva),
            "ztilde" => Some(GenKind::Ztilde),
            "z" => Some(GenKind::Z),
            _ => None,
        }
    }

    pub fn calculus(self) -> Calculus {
        match self {
            GenKind::Rmva => Calculus::R,
            GenKind::Ztilde | GenKind::Z => Calculus::Gamma,
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::R => "R",
            Calculus::Gamma => "Gamma",
        })
    }
}

/// A pair together with the calculus it lives in. In `R` the represented
/// value is `ν·(λ, 𝒜)`; in Γ it is `(ν·λ, 𝒜)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaElement {
    pub calculus: Calculus,
    pub pair: ReducedPair,
}

fn rf(n: i64) -> RationalFunction {
    RationalFunction::int(n)
}

impl MetaElement {
    pub fn empty(calculus: Calculus) -> MetaElement {
        MetaElement { calculus, pair: ReducedPair::empty() }
    }

    pub fn labels(&self) -> &[Label] {
        self.pair.labels()
    }

    fn index(&self, a: &Label) -> Result<usize> {
        self.pair.index_of(a).ok_or_else(|| Error::Label(format!("label `{a}` not present")))
    }

    fn require_fresh(&self, a: &Label) -> Result<()> {
        match self.pair.index_of(a) {
            Some(_) => Err(Error::Label(format!("label `{a}` already present"))),
            None => Ok(()),
        }
    }

    fn with(&self, pair: ReducedPair) -> MetaElement {
        MetaElement { calculus: self.calculus, pair }
    }

    /// `m^{ab}_c`: join the outgoing end of `a` to the incoming end of `b`.
    pub fn mul(&self, a: &Label, b: &Label, c: &Label) -> Result<MetaElement> {
        if a == b {
            return Err(Error::Label(format!("cannot glue `{a}` to itself; use a partial trace")));
        }
        let (ia, ib) = (self.index(a)?, self.index(b)?);
        let m = self.pair.matrix();
        let xs: Vec<usize> = (0..self.pair.n()).filter(|&i| i != ia && i != ib).collect();
        if xs.iter().any(|&x| &self.labels()[x] == c) {
            return Err(Error::Label(format!("target label `{c}` already present")));
        }
        let (al, be, ga, de) = (&m[ia][ia], &m[ia][ib], &m[ib][ia], &m[ib][ib]);
        let lambda = &self.pair.lambda;
        // Each new entry is `k·old + coef·p·q`.
        let (lam, k, pq) = match self.calculus {
            Calculus::R => {
                if lambda.is_zero() {
                    return Err(Error::GluingUndefined("lambda is zero".into()));
                }
                let inv = lambda.inv()?;
                (lambda.add(be), RationalFunction::one().add(&be.mul(&inv)), inv.neg())
            }
            Calculus::Gamma => {
                let dd = RationalFunction::one().sub(be);
                if dd.is_zero() {
                    return Err(Error::GluingUndefined("1 - beta is zero".into()));
                }
                let inv = dd.inv()?;
                (lambda.mul(&dd), RationalFunction::one(), inv)
            }
        };
        let combine = |old: &RationalFunction, p: &RationalFunction, q: &RationalFunction, coef: &RationalFunction| {
            let base = if k.is_one() { old.clone() } else { old.mul(&k) };
            if p.is_zero() || q.is_zero() || coef.is_zero() {
                base
            } else {
                base.add(&coef.mul(&p.mul(q)))
            }
        };
        let mut labels: Vec<Label> = xs.iter().map(|&x| self.labels()[x].clone()).collect();
        labels.push(c.clone());
        let nn = labels.len();
        let mut out = vec![vec![RationalFunction::zero(); nn]; nn];
        for (r, &x) in xs.iter().enumerate() {
            for (s, &y) in xs.iter().enumerate() {
                out[r][s] = combine(&m[x][y], &m[x][ib], &m[ia][y], &pq);
            }
            out[r][nn - 1] = combine(&m[x][ia], al, &m[x][ib], &pq);
            out[nn - 1][r] = combine(&m[ib][x], de, &m[ia][x], &pq);
        }
        out[nn - 1][nn - 1] = combine(ga, al, de, &pq);
        let merge = |f: &RationalFunction| f.substitute_merge(a, b, c);
        let normalizer = self.pair.normalizer.rename(|l| if l == a || l == b { c.clone() } else { l.clone() });
        let pair = ReducedPair::new(normalizer, lam, labels, out)?.map_entries(merge)?;
        Ok(self.with(pair))
    }

    /// Disjoint union.
    pub fn union(&self, other: &MetaElement) -> Result<MetaElement> {
        if self.calculus != other.calculus {
            return Err(Error::Label("cannot combine elements of different calculi".into()));
        }
        if let Some(l) = other.labels().iter().find(|l| self.pair.index_of(l).is_some()) {
            return Err(Error::Label(format!("label `{l}` appears on both sides of a union")));
        }
        let (p, q) = (&self.pair, &other.pair);
        let (s1, s2) = match self.calculus {
            Calculus::R => (q.lambda.clone(), p.lambda.clone()),
            Calculus::Gamma => (RationalFunction::one(), RationalFunction::one()),
        };
        let (n1, n2) = (p.n(), q.n());
        let mut a = vec![vec![RationalFunction::zero(); n1 + n2]; n1 + n2];
        for (i, row) in p.matrix().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                a[i][j] = x.mul(&s1);
            }
        }
        for (i, row) in q.matrix().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                a[n1 + i][n1 + j] = x.mul(&s2);
            }
        }
        let labels = p.labels().iter().chain(q.labels()).cloned().collect();
        let pair = ReducedPair::new(p.normalizer.mul(&q.normalizer), p.lambda.mul(&q.lambda), labels, a)?;
        Ok(self.with(pair))
    }

    /// `e_a`: add a trivial strand.
    pub fn e(&self, a: &Label) -> Result<MetaElement> {
        self.require_fresh(a)?;
        let n = self.pair.n();
        let mut m: Vec<Vec<RationalFunction>> = self.pair.matrix().iter().map(|r| {
            let mut r = r.clone();
            r.push(RationalFunction::zero());
            r
        }).collect();
        let mut last = vec![RationalFunction::zero(); n + 1];
        last[n] = match self.calculus {
            Calculus::R => self.pair.lambda.neg(),
            Calculus::Gamma => RationalFunction::one(),
        };
        m.push(last);
        let mut labels = self.labels().to_vec();
        labels.push(a.clone());
        Ok(self.with(ReducedPair::new(self.pair.normalizer.clone(), self.pair.lambda.clone(), labels, m)?))
    }

    /// `η_a`: delete strand `a` and set `t_a = 1`.
    pub fn eta(&self, a: &Label) -> Result<MetaElement> {
        let ia = self.index(a)?;
        let keep: Vec<usize> = (0..self.pair.n()).filter(|&i| i != ia).collect();
        let m = self.pair.matrix();
        let sub = keep.iter().map(|&i| keep.iter().map(|&j| m[i][j].clone()).collect()).collect();
        let labels = keep.iter().map(|&i| self.labels()[i].clone()).collect();
        let pair = ReducedPair::new(self.pair.normalizer.drop_label(a), self.pair.lambda.clone(), labels, sub)?
            .map_entries(|f| f.eval_label_one(a))?;
        Ok(self.with(pair))
    }

    /// `σ^a_b`: rename strand `a` to `b`.
    pub fn sigma(&self, a: &Label, b: &Label) -> Result<MetaElement> {
        let ia = self.index(a)?;
        if a == b {
            return Ok(self.clone());
        }
        self.require_fresh(b)?;
        let mut labels = self.labels().to_vec();
        labels[ia] = b.clone();
        let f = |l: &Label| if l == a { b.clone() } else { l.clone() };
        let pair = ReducedPair::new(self.pair.normalizer.rename(f), self.pair.lambda.clone(), labels, self.pair.matrix().to_vec())?
            .map_entries(|x| x.rename(f))?;
        Ok(self.with(pair))
    }

    /// Scalar part of the represented value, normalizer included.
    pub fn value_lambda(&self) -> RationalFunction {
        self.pair.lambda.mul_monomial(&self.pair.normalizer)
    }

    /// Matrix part of the represented value, normalizer included in `R`.
    pub fn value_matrix(&self) -> Vec<Vec<RationalFunction>> {
        match self.calculus {
            Calculus::R => self
                .pair
                .matrix()
                .iter()
                .map(|r| r.iter().map(|x| x.mul_monomial(&self.pair.normalizer)).collect())
                .collect(),
            Calculus::Gamma => self.pair.matrix().to_vec(),
        }
    }

    /// Equality of represented values, however the normalizer is split off.
    pub fn value_eq(&self, other: &MetaElement) -> bool {
        self.calculus == other.calculus
            && self.labels() == other.labels()
            && self.value_lambda() == other.value_lambda()
            && self.value_matrix() == other.value_matrix()
    }

    /// The all-ones value `(λ(1), 𝒜(1))` is `(1, -I)` in `R` and `(1, I)` in Γ.
    pub fn is_unit_at_one(&self) -> Result<bool> {
        let (l, a) = self.pair.eval_all_one()?;
        let diag = match self.calculus {
            Calculus::R => -1,
            Calculus::Gamma => 1,
        };
        let ok = l == coeff(1)
            && a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == coeff(if i == j { diag } else { 0 })));
        Ok(ok)
    }
}

pub fn r_mul(e: &MetaElement, a: &Label, b: &Label, c: &Label) -> Result<MetaElement> {
    expect(e, Calculus::R)?.mul(a, b, c)
}

pub fn r_union(e1: &MetaElement, e2: &MetaElement) -> Result<MetaElement> {
    expect(e1, Calculus::R)?.union(e2)
}

pub fn r_e(e: &MetaElement, a: &Label) -> Result<MetaElement> {
    expect(e, Calculus::R)?.e(a)
}

pub fn r_eta(e: &MetaElement, a: &Label) -> Result<MetaElement> {
    expect(e, Calculus::R)?.eta(a)
}

pub fn r_sigma(e: &MetaElement, a: &Label, b: &Label) -> Result<MetaElement> {
    expect(e, Calculus::R)?.sigma(a, b)
}

pub fn gamma_mul(e: &MetaElement, a: &Label, b: &Label, c: &Label) -> Result<MetaElement> {
    expect(e, Calculus::Gamma)?.mul(a, b, c)
}

pub fn gamma_union(e1: &MetaElement, e2: &MetaElement) -> Result<MetaElement> {
    expect(e1, Calculus::Gamma)?.union(e2)
}

pub fn gamma_e(e: &MetaElement, a: &Label) -> Result<MetaElement> {
    expect(e, Calculus::Gamma)?.e(a)
}

fn expect(e: &MetaElement, c: Calculus) -> Result<&MetaElement> {
    if e.calculus == c {
        Ok(e)
    } else {
        Err(Error::Label(format!("expected an element of {c}, got {}", e.calculus)))
    }
}

/// Crossing values: `a` crosses over `b`; rows and columns in `(a, b)` order.
pub fn generator(kind: GenKind, sign: Sign, a: &Label, b: &Label) -> Result<MetaElement> {
    if a == b {
        return Err(Error::Label("a crossing needs two distinct strands".into()));
    }
    let ta = RationalFunction::t(a);
    let tb = RationalFunction::t(b);
    let one = rf(1);
    let inv_ta = ta.inv()?;
    let (nu, lambda, m) = match (kind, sign) {
        (GenKind::Rmva, Sign::Positive) => (-1, ta.clone(), [[ta.neg(), rf(0)], [one.sub(&tb), rf(-1)]]),
        (GenKind::Rmva, Sign::Negative) => (-1, one.clone(), [[rf(-1), rf(0)], [tb.sub(&one), ta.neg()]]),
        (GenKind::Ztilde, Sign::Positive) => (1, one.clone(), [[one.clone(), rf(0)], [tb.sub(&one).mul(&inv_ta), inv_ta.clone()]]),
        (GenKind::Ztilde, Sign::Negative) => (-1, one.clone(), [[one.clone(), rf(0)], [one.sub(&tb), ta.clone()]]),
        (GenKind::Z, Sign::Positive) => (0, one.clone(), [[one.clone(), one.sub(&ta)], [rf(0), ta.clone()]]),
        (GenKind::Z, Sign::Negative) => (0, one.clone(), [[one.clone(), one.sub(&inv_ta)], [rf(0), inv_ta.clone()]]),
    };
    let m = m.into_iter().map(|r| r.to_vec()).collect();
    let pair = ReducedPair::new(Monomial::s(a, nu), lambda, vec![a.clone(), b.clone()], m)?;
    Ok(MetaElement { calculus: kind.calculus(), pair })
}

/// `F(λ, 𝒜) = (λ, -λ𝒜)` from Γ to `R`.
pub fn f_map(e: &MetaElement) -> Result<MetaElement> {
    expect(e, Calculus::Gamma)?;
    let l = e.pair.lambda.clone();
    let a = e.pair.matrix().iter().map(|r| r.iter().map(|x| x.mul(&l).neg()).collect()).collect();
    let pair = ReducedPair::new(e.pair.normalizer.clone(), l, e.labels().to_vec(), a)?;
    Ok(MetaElement { calculus: Calculus::R, pair })
}

/// `F^{-1}(λ, 𝒜) = (λ, -𝒜/λ)` from `R` to Γ.
pub fn f_inverse(e: &MetaElement) -> Result<MetaElement> {
    expect(e, Calculus::R)?;
    let l = e.pair.lambda.clone();
    if l.is_zero() {
        return Err(Error::LambdaZero("F inverse needs lambda != 0".into()));
    }
    let inv = l.inv()?.neg();
    let a = e.pair.matrix().iter().map(|r| r.iter().map(|x| x.mul(&inv)).collect()).collect();
    let pair = ReducedPair::new(e.pair.normalizer.clone(), l, e.labels().to_vec(), a)?;
    Ok(MetaElement { calculus: Calculus::Gamma, pair })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Label {
        Label::new(s)
    }

    fn p(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn rmva_positive_generator() {
        let g = generator(GenKind::Rmva, Sign::Positive, &l("a"), &l("b")).unwrap();
        assert_eq!(g.pair.normalizer.render(), "t_a^(-1/2)");
        assert_eq!(g.pair.lambda, p("t_a"));
        assert_eq!(g.pair.matrix()[1][0], p("1 - t_b"));
    }

    #[test]
    fn f_maps_ztilde_to_rmva() {
        for sign in [Sign::Positive, Sign::Negative] {
            let z = generator(GenKind::Ztilde, sign, &l("a"), &l("b")).unwrap();
            let r = generator(GenKind::Rmva, sign, &l("a"), &l("b")).unwrap();
            assert!(f_map(&z).unwrap().value_eq(&r));
            assert!(f_inverse(&r).unwrap().value_eq(&z));
        }
    }

    #[test]
    fn trivial_strands_glue_to_trivial() {
        let e = MetaElement::empty(Calculus::R).e(&l("a")).unwrap().e(&l("b")).unwrap();
        let m = e.mul(&l("a"), &l("b"), &l("c")).unwrap();
        assert_eq!(m.pair.lambda, p("1"));
        assert_eq!(m.pair.matrix()[0][0], p("-1"));
        let g = MetaElement::empty(Calculus::Gamma).e(&l("a")).unwrap().e(&l("b")).unwrap();
        let m = g.mul(&l("a"), &l("b"), &l("c")).unwrap();
        assert_eq!(m.pair.matrix()[0][0], p("1"));
    }

    #[test]
    fn left_identity() {
        let g = generator(GenKind::Rmva, Sign::Positive, &l("b"), &l("x")).unwrap();
        let lhs = g.e(&l("a")).unwrap().mul(&l("a"), &l("b"), &l("c")).unwrap();
        let rhs = g.sigma(&l("b"), &l("c")).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn union_of_crossing_and_strand() {
        let g = generator(GenKind::Rmva, Sign::Positive, &l("a"), &l("b")).unwrap();
        let u = g.union(&MetaElement::empty(Calculus::R).e(&l("c")).unwrap()).unwrap();
        assert_eq!(u.pair.lambda, p("t_a"));
        assert_eq!(u.pair.matrix()[2][2], p("-t_a"));
        assert!(u.is_unit_at_one().unwrap());
    }

    #[test]
    fn errors() {
        let g = generator(GenKind::Rmva, Sign::Positive, &l("a"), &l("b")).unwrap();
        assert!(matches!(g.mul(&l("a"), &l("a"), &l("c")), Err(Error::Label(_))));
        assert!(matches!(g.mul(&l("a"), &l("z"), &l("c")), Err(Error::Label(_))));
        assert!(matches!(g.union(&g), Err(Error::Label(_))));
        let zero = MetaElement {
            calculus: Calculus::R,
            pair: ReducedPair::new(Monomial::one(), p("0"), vec![l("a"), l("b")], vec![vec![p("1"), p("0")], vec![p("0"), p("1")]]).unwrap(),
        };
        assert!(matches!(zero.mul(&l("a"), &l("b"), &l("c")), Err(Error::GluingUndefined(_))));
    }
}
