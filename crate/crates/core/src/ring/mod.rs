//! Exact arithmetic in `Q[s_a^{±1}]` and its fraction field, with `t_a = s_a^2`.

mod monomial;
mod parse;
mod poly;
mod rational;

pub use monomial::{Label, Monomial};
pub use parse::parse_rational;
pub use poly::{coeff, Coeff, LaurentPoly};
pub use rational::RationalFunction;

pub(crate) use monomial::is_token;

use crate::error::Result;

pub fn poly_add(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.add(q)
}

pub fn poly_mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.mul(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rf_arith(a: &RationalFunction, b: &RationalFunction, op: RfOp) -> Result<RationalFunction> {
    Ok(match op {
        RfOp::Add => a.add(b),
        RfOp::Sub => a.sub(b),
        RfOp::Mul => a.mul(b),
        RfOp::Div => a.checked_div(b)?,
    })
}

pub fn rf_eq(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.rf_eq(b)
}

pub fn substitute_merge(f: &RationalFunction, a: &Label, b: &Label, c: &Label) -> Result<RationalFunction> {
    f.substitute_merge(a, b, c)
}

pub fn eval_all_one(f: &RationalFunction) -> Result<Coeff> {
    f.eval_all_one()
}

/// Shorthand for `t_a` as a rational function.
pub fn t(label: &str) -> RationalFunction {
    RationalFunction::t(&Label::new(label))
}
