use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A strand label. Ordered lexicographically by name.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Label {
        assert!(!name.is_empty(), "empty strand label");
        Label(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Rendered variable name: `t1` stays `t1`, `a` becomes `t_a`.
    pub fn variable(&self) -> String {
        let s = self.as_str();
        let bare = s == "t" || (s.len() > 1 && s.starts_with('t') && s[1..].bytes().all(|b| b.is_ascii_digit()));
        if bare {
            s.to_string()
        } else {
            format!("t_{s}")
        }
    }

    /// Inverse of [`Label::variable`].
    pub fn from_variable(var: &str) -> Option<Label> {
        if let Some(rest) = var.strip_prefix("t_") {
            if !rest.is_empty() && is_token(rest) {
                return Some(Label::new(rest));
            }
            return None;
        }
        if var == "t" || (var.len() > 1 && var.starts_with('t') && var[1..].bytes().all(|b| b.is_ascii_digit())) {
            return Some(Label::new(var));
        }
        None
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Label {
        Label::new(s)
    }
}

/// A Laurent monomial in the half-power variables `s_a` (`t_a = s_a^2`).
///
/// Stored as `(label, exponent)` pairs sorted by label with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Label, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    /// `s_a^e`.
    pub fn s(label: &Label, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(label.clone(), e)])
        }
    }

    /// `t_a^k`.
    pub fn t(label: &Label, k: i32) -> Monomial {
        Monomial::s(label, 2 * k)
    }

    pub fn from_pairs<I: IntoIterator<Item = (Label, i32)>>(pairs: I) -> Monomial {
        let mut v: Vec<(Label, i32)> = Vec::new();
        let mut all: Vec<(Label, i32)> = pairs.into_iter().collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        for (l, e) in all {
            match v.last_mut() {
                Some(last) if last.0 == l => last.1 += e,
                _ => v.push((l, e)),
            }
        }
        v.retain(|(_, e)| *e != 0);
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(Label, i32)] {
        &self.0
    }

    pub fn exponent(&self, label: &Label) -> i32 {
        self.0
            .binary_search_by(|(l, _)| l.cmp(label))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.0.iter().map(|(l, _)| l)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(l, e)| (l.clone(), -e)).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(l, e)| (l.clone(), e * k)).collect())
    }

    /// Componentwise minimum of exponents (missing labels count as 0).
    pub fn gcd_exponents(&self, other: &Monomial) -> Monomial {
        let mut pairs = Vec::new();
        for (l, e) in &self.0 {
            pairs.push((l.clone(), (*e).min(other.exponent(l))));
        }
        for (l, e) in &other.0 {
            if self.exponent(l) == 0 {
                pairs.push((l.clone(), (*e).min(0)));
            }
        }
        Monomial::from_pairs(pairs)
    }

    /// True if every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|(_, e)| *e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    /// Replace each label by `f(label)`, merging exponents of labels that collide.
    pub fn rename<F: Fn(&Label) -> Label>(&self, f: F) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|(l, e)| (f(l), *e)))
    }

    /// Drop the given label (evaluate `s_a = 1`).
    pub fn drop_label(&self, label: &Label) -> Monomial {
        Monomial(self.0.iter().filter(|(l, _)| l != label).cloned().collect())
    }

    /// Render as a product of `t` powers, or `1`.
    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self.0.iter().map(|(l, e)| render_power(l, *e)).collect();
        parts.join("*")
    }
}

fn render_power(l: &Label, e: i32) -> String {
    let v = l.variable();
    if e == 2 {
        v
    } else if e % 2 == 0 {
        let k = e / 2;
        if k < 0 {
            format!("{v}^({k})")
        } else {
            format!("{v}^{k}")
        }
    } else {
        format!("{v}^({e}/2)")
    }
}

/// Lexicographic monomial order: the first label (by name) is most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, e))) => return 0.cmp(e),
                (Some((la, ea)), Some((lb, eb))) => match la.cmp(lb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Label {
        Label::new(s)
    }

    #[test]
    fn half_powers_cancel() {
        let m = Monomial::s(&l("t1"), -1).mul(&Monomial::t(&l("t1"), 1));
        assert_eq!(m, Monomial::s(&l("t1"), 1));
        assert_eq!(m.render(), "t1^(1/2)");
    }

    #[test]
    fn order_is_lex_and_multiplicative() {
        let a = Monomial::t(&l("a"), 1);
        let b = Monomial::t(&l("b"), 3);
        assert!(a > b);
        let c = Monomial::t(&l("c"), -2);
        assert!(a.mul(&c) > b.mul(&c));
        assert!(Monomial::one() > Monomial::t(&l("a"), -1));
    }

    #[test]
    fn variable_names_round_trip() {
        for name in ["t", "t1", "t12", "a", "t_x", "5", "tx"] {
            let label = l(name);
            assert_eq!(Label::from_variable(&label.variable()), Some(label));
        }
        assert_eq!(l("t3").variable(), "t3");
        assert_eq!(l("b").variable(), "t_b");
    }

    #[test]
    fn rename_merges() {
        let m = Monomial::from_pairs([(l("a"), 2), (l("b"), 2)]);
        let r = m.rename(|x| if x.as_str() == "a" || x.as_str() == "b" { l("c") } else { x.clone() });
        assert_eq!(r, Monomial::t(&l("c"), 2));
    }

    #[test]
    fn render_negative_powers() {
        let m = Monomial::from_pairs([(l("t1"), -2), (l("t3"), -4)]);
        assert_eq!(m.render(), "t1^(-1)*t3^(-2)");
    }
}
