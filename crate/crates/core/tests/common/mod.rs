#![allow(dead_code)]

use std::collections::BTreeMap;

use rmva::ring::RationalFunction;

/// Univariate Laurent polynomial with integer coefficients, keyed by exponent.
pub type Poly = BTreeMap<i32, i64>;

fn clean(mut p: Poly) -> Poly {
    p.retain(|_, c| *c != 0);
    p
}

pub fn c(k: i64) -> Poly {
    clean(BTreeMap::from([(0, k)]))
}

pub fn mono(c: i64, e: i32) -> Poly {
    clean(BTreeMap::from([(e, c)]))
}

pub fn add(p: &Poly, q: &Poly) -> Poly {
    let mut r = p.clone();
    for (e, c) in q {
        *r.entry(*e).or_insert(0) += c;
    }
    clean(r)
}

pub fn neg(p: &Poly) -> Poly {
    p.iter().map(|(e, c)| (*e, -c)).collect()
}

pub fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut r = Poly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            *r.entry(e1 + e2).or_insert(0) += c1 * c2;
        }
    }
    clean(r)
}

/// Exact division; panics if `q` does not divide `p`.
pub fn div(p: &Poly, q: &Poly) -> Poly {
    let (&qe, &qc) = q.iter().next_back().expect("nonzero divisor");
    let floor = p.keys().next().copied().unwrap_or(0) - q.keys().next().copied().unwrap_or(0);
    let mut rem = p.clone();
    let mut out = Poly::new();
    while let Some((&e, &c)) = rem.iter().next_back() {
        assert!(e - qe >= floor && c % qc == 0, "inexact division");
        let m = mono(c / qc, e - qe);
        rem = add(&rem, &neg(&mul(&m, q)));
        out = add(&out, &m);
    }
    out
}

fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return c(1);
    }
    let mut total = Poly::new();
    for j in 0..n {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = mul(&m[0][j], &det(&minor));
        total = add(&total, &if j % 2 == 0 { term } else { neg(&term) });
    }
    total
}

/// Reduced Burau matrix of `σ_i^{±1}` on `n` strands, `1 <= i < n`.
fn reduced_burau_generator(n: usize, g: i32) -> Vec<Vec<Poly>> {
    let m = n - 1;
    let mut r: Vec<Vec<Poly>> = (0..m).map(|i| (0..m).map(|j| if i == j { c(1) } else { Poly::new() }).collect()).collect();
    let i = g.unsigned_abs() as usize - 1;
    if g > 0 {
        r[i][i] = mono(-1, 1);
        if i > 0 {
            r[i][i - 1] = mono(1, 1);
        }
        if i + 1 < m {
            r[i][i + 1] = c(1);
        }
    } else {
        r[i][i] = mono(-1, -1);
        if i > 0 {
            r[i][i - 1] = c(1);
        }
        if i + 1 < m {
            r[i][i + 1] = mono(1, -1);
        }
    }
    r
}

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(Poly::new(), |acc, k| add(&acc, &mul(&a[i][k], &b[k][j])))).collect()).collect()
}

/// Alexander polynomial of the closure of a braid word (a knot), from
/// `det(I - ρ(w)) = (1 + t + ... + t^{n-1}) Δ(t)`.
pub fn burau_alexander(n: usize, word: &[i32]) -> Poly {
    let mut m: Vec<Vec<Poly>> = (0..n - 1).map(|i| (0..n - 1).map(|j| if i == j { c(1) } else { Poly::new() }).collect()).collect();
    for &g in word {
        m = mat_mul(&m, &reduced_burau_generator(n, g));
    }
    let i_minus: Vec<Vec<Poly>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, x)| if i == j { add(&c(1), &neg(x)) } else { neg(x) }).collect())
        .collect();
    let geometric = (0..n as i32).fold(Poly::new(), |acc, e| add(&acc, &mono(1, e)));
    div(&det(&i_minus), &geometric)
}

/// `p` as a rational function in the variable `t_{var}`.
pub fn to_rf(p: &Poly, var: &str) -> RationalFunction {
    let text: Vec<String> = p.iter().map(|(e, c)| format!("({c})*t{var}^({e})")).collect();
    let text = if text.is_empty() { "0".to_string() } else { text.join(" + ") };
    rmva::ring::parse_rational(&text).expect("oracle output parses")
}
