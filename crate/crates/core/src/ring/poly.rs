use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::monomial::{Label, Monomial};

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// A Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted by decreasing [`Monomial`] order, so the first term
/// is the leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Coeff)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(coeff(n))
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Coeff::one())
    }

    /// The variable `t_a`.
    pub fn t(label: &Label) -> Self {
        Self::monomial(Monomial::t(label, 1))
    }

    /// `t_a^k`.
    pub fn t_pow(label: &Label, k: i32) -> Self {
        Self::monomial(Monomial::t(label, k))
    }

    /// Build from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<(Monomial, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// A single nonzero term; invertible in the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut v: Vec<Label> = self.terms.iter().flat_map(|(m, _)| m.labels().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        if m.is_one() {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(x, k)| (x.mul(m), k * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut m = first.clone();
        for (x, _) in it {
            m = m.gcd_exponents(x);
        }
        m
    }

    fn max_exponents(&self) -> BTreeMap<Label, i32> {
        let mut out: BTreeMap<Label, i32> = BTreeMap::new();
        for (m, _) in &self.terms {
            for (l, e) in m.exponents() {
                let v = out.entry(l.clone()).or_insert(0);
                *v = (*v).max(*e);
            }
        }
        out
    }

    /// Exact quotient `self / g` in the Laurent ring, or `None` if `g` does not divide.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "exact_div by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if g.terms.len() == 1 {
            let (m, c) = &g.terms[0];
            return Some(self.mul_term(&m.inv(), &c.recip()));
        }
        if self.terms.len() < 2 {
            return None;
        }
        let mf = self.min_monomial();
        let mg = g.min_monomial();
        let f = self.mul_monomial(&mf.inv());
        let gp = g.mul_monomial(&mg.inv());
        let fmax = f.max_exponents();
        let gmax = gp.max_exponents();
        let mut bound: BTreeMap<Label, i32> = BTreeMap::new();
        for (l, e) in &gmax {
            let d = fmax.get(l).copied().unwrap_or(0) - e;
            if d < 0 {
                return None;
            }
            bound.insert(l.clone(), d);
        }
        for (l, e) in &fmax {
            bound.entry(l.clone()).or_insert(*e);
        }
        let (lm, lc) = gp.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem = f;
        let mut q: Vec<(Monomial, Coeff)> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = m.div(&lm);
            if !qm.is_polynomial() {
                return None;
            }
            if qm.exponents().iter().any(|(l, e)| *e > bound.get(l).copied().unwrap_or(0)) {
                return None;
            }
            let qc = c * &lc_inv;
            rem = rem.sub(&gp.mul_term(&qm, &qc));
            q.push((qm, qc));
        }
        let quotient = LaurentPoly { terms: q };
        Some(quotient.mul_monomial(&mf.div(&mg)))
    }

    /// Split `self = c * m * p` where `p` has no monomial content, coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn normalize_factor(&self) -> (Coeff, Monomial, LaurentPoly) {
        assert!(!self.is_zero(), "normalize_factor of zero");
        let m = self.min_monomial();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&v);
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        let p = LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (x.div(&m), c * &inv)).collect(),
        };
        (content, m, p)
    }

    /// Rename labels, merging variables whose new names coincide.
    pub fn rename<F: Fn(&Label) -> Label>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    /// Set `s_a = 1` (hence `t_a = 1`).
    pub fn eval_label_one(&self, label: &Label) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.drop_label(label), c.clone())))
    }

    pub fn eval_all_one(&self) -> Coeff {
        self.terms.iter().fold(Coeff::zero(), |acc, (_, c)| acc + c)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&render_coeff(&abs));
            } else if abs.is_one() {
                out.push_str(&m.render());
            } else {
                out.push_str(&render_coeff(&abs));
                out.push('*');
                out.push_str(&m.render());
            }
        }
        out
    }
}

pub(crate) fn render_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(self, rhs)
            }
        }
        impl std::ops::$tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(&self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add, add);
poly_binop!(Sub, sub, sub);
poly_binop!(Mul, mul, mul);

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(&self)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}
