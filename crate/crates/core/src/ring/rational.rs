use std::fmt;

use num::{One, Zero};

use super::monomial::{Label, Monomial};
use super::poly::{Coeff, LaurentPoly};
use crate::error::{Error, Result};

/// An element of the fraction field of the Laurent ring.
///
/// The denominator is kept as a list of normalized factors with multiplicities
/// (no monomial content, primitive integer coefficients, positive leading
/// coefficient, at least two terms). Factors are cancelled against the
/// numerator by exact division; no GCD is ever computed, so a value is not
/// necessarily in lowest terms. Equality is by cross-multiplication.
#[derive(Clone, Default)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: Vec<(LaurentPoly, u32)>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::int(n))
    }

    pub fn constant(c: Coeff) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    pub fn t(label: &Label) -> Self {
        Self::from_poly(LaurentPoly::t(label))
    }

    /// `num / den`; fails if `den` is zero.
    pub fn ratio(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        Self::from_poly(num).checked_div(&Self::from_poly(den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(LaurentPoly, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> LaurentPoly {
        product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// The value as a Laurent polynomial, if the denominator cancelled out.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut v = self.num.labels();
        for (f, _) in &self.den {
            v.extend(f.labels());
        }
        v.sort();
        v.dedup();
        v
    }

    fn build(num: LaurentPoly, den: Vec<(LaurentPoly, u32)>) -> Self {
        let mut r = RationalFunction { num, den };
        r.cancel();
        r
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, k) in self.den.iter_mut() {
            while *k > 0 {
                match self.num.exact_div(f) {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, k)| *k > 0);
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::build(self.num.add(&other.num), self.den.clone());
        }
        let (lcm, fa, fb) = lcm_factors(&self.den, &other.den);
        let num = self.num.mul(&product(&fa)).add(&other.num.mul(&product(&fb)));
        Self::build(num, lcm)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let num = self.num.mul(&other.num);
        if other.den.is_empty() && self.den.is_empty() {
            return Self::from_poly(num);
        }
        let mut den = self.den.clone();
        for (f, k) in &other.den {
            push_factor(&mut den, f.clone(), *k);
        }
        Self::build(num, den)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        if self.den.is_empty() {
            return Self::from_poly(self.num.mul(p));
        }
        Self::build(self.num.mul(p), self.den.clone())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        RationalFunction { num: self.num.mul_monomial(m), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (c, m, g) = other.num.normalize_factor();
        let mut num = self.num.mul(&product(&other.den)).mul_term(&m.inv(), &c.recip());
        let mut den = self.den.clone();
        if g.len() > 1 {
            if den.is_empty() {
                if let Some(q) = num.exact_div(&g) {
                    num = q;
                    return Ok(Self::from_poly(num));
                }
            }
            push_factor(&mut den, g, 1);
        }
        Ok(Self::build(num, den))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Apply a label renaming to every variable, merging collisions.
    pub fn rename<F: Fn(&Label) -> Label>(&self, f: F) -> Result<Self> {
        let num = self.num.rename(&f);
        let mut out = Self::from_poly(num);
        for (g, k) in &self.den {
            let h = g.rename(&f);
            if h.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let hk = Self::from_poly(h.pow(*k));
            out = out.checked_div(&hk)?;
        }
        Ok(out)
    }

    /// `(f)_{t_a, t_b -> t_c}`.
    pub fn substitute_merge(&self, a: &Label, b: &Label, c: &Label) -> Result<Self> {
        self.rename(|x| if x == a || x == b { c.clone() } else { x.clone() })
    }

    /// Set `t_a = 1`.
    pub fn eval_label_one(&self, label: &Label) -> Result<Self> {
        let mut out = Self::from_poly(self.num.eval_label_one(label));
        for (g, k) in &self.den {
            let h = g.eval_label_one(label);
            if h.is_zero() {
                return Err(Error::EvalPole(format!("denominator vanishes at {}=1", label.variable())));
            }
            out = out.checked_div(&Self::from_poly(h.pow(*k)))?;
        }
        Ok(out)
    }

    /// Value with every variable set to 1.
    pub fn eval_all_one(&self) -> Result<Coeff> {
        let mut d = Coeff::one();
        for (g, k) in &self.den {
            let v = g.eval_all_one();
            if v.is_zero() {
                return Err(Error::EvalPole("denominator vanishes at all variables = 1".into()));
            }
            for _ in 0..*k {
                d *= &v;
            }
        }
        Ok(self.num.eval_all_one() / d)
    }

    /// Exact equality of the represented functions.
    pub fn rf_eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (_, fa, fb) = lcm_factors(&self.den, &other.den);
        self.num.mul(&product(&fa)) == other.num.mul(&product(&fb))
    }

    /// Canonical text: `num` or `(num) / (den)`.
    pub fn render(&self) -> String {
        if self.den.is_empty() {
            return self.num.render();
        }
        let den = self.denominator();
        let n = self.num.render();
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        format!("{n} / ({})", den.render())
    }

    pub fn parse(text: &str) -> Result<Self> {
        super::parse::parse_rational(text)
    }
}

fn product(fs: &[(LaurentPoly, u32)]) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for (f, k) in fs {
        for _ in 0..*k {
            out = out.mul(f);
        }
    }
    out
}

fn push_factor(den: &mut Vec<(LaurentPoly, u32)>, f: LaurentPoly, k: u32) {
    if let Some(entry) = den.iter_mut().find(|(g, _)| *g == f) {
        entry.1 += k;
    } else {
        den.push((f, k));
    }
}

type Factors = Vec<(LaurentPoly, u32)>;

/// Returns `(lcm, lcm / a, lcm / b)` as factor lists.
fn lcm_factors(a: &[(LaurentPoly, u32)], b: &[(LaurentPoly, u32)]) -> (Factors, Factors, Factors) {
    let mut lcm: Vec<(LaurentPoly, u32)> = a.to_vec();
    for (f, k) in b {
        if let Some(entry) = lcm.iter_mut().find(|(g, _)| g == f) {
            entry.1 = entry.1.max(*k);
        } else {
            lcm.push((f.clone(), *k));
        }
    }
    let mult = |fs: &[(LaurentPoly, u32)], f: &LaurentPoly| fs.iter().find(|(g, _)| g == f).map(|(_, k)| *k).unwrap_or(0);
    let fa = lcm.iter().map(|(f, k)| (f.clone(), k - mult(a, f))).filter(|(_, k)| *k > 0).collect();
    let fb = lcm.iter().map(|(f, k)| (f.clone(), k - mult(b, f))).filter(|(_, k)| *k > 0).collect();
    (lcm, fa, fb)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.rf_eq(other)
    }
}

impl Eq for RationalFunction {}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

macro_rules! rf_binop {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                RationalFunction::$method(self, rhs)
            }
        }
        impl std::ops::$tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                RationalFunction::$method(&self, &rhs)
            }
        }
    };
}

rf_binop!(Add, add);
rf_binop!(Sub, sub);
rf_binop!(Mul, mul);

impl std::ops::Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(&self)
    }
}

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}
