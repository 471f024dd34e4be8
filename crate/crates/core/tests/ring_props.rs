use proptest::prelude::*;
use rmva::ring::{parse_rational, Label, LaurentPoly, RationalFunction};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    let term = (-3i64..=3, prop::sample::select(vec!["a", "b", "c"]), -3i32..=3, -2i32..=2);
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        let text: Vec<String> = terms.iter().map(|(c, l, e, f)| format!("({c})*t_{l}^({e}/2)*t_b^({f})")).collect();
        let text = if text.is_empty() { "0".to_string() } else { text.join(" + ") };
        parse_rational(&text).unwrap().as_poly().unwrap().clone()
    })
}

fn rf() -> impl Strategy<Value = RationalFunction> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(p, q)| {
        let q = q.add(&LaurentPoly::int(5));
        RationalFunction::ratio(p, q).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.sub(&p), LaurentPoly::int(0));
        prop_assert_eq!(p.mul(&LaurentPoly::one()), p.clone());
    }

    #[test]
    fn field_axioms(x in rf(), y in rf(), z in rf()) {
        prop_assert!(x.add(&y).rf_eq(&y.add(&x)));
        prop_assert!(x.mul(&y.add(&z)).rf_eq(&x.mul(&y).add(&x.mul(&z))));
        prop_assert!(x.add(&y).sub(&y).rf_eq(&x));
        if !y.is_zero() {
            prop_assert!(x.checked_div(&y).unwrap().mul(&y).rf_eq(&x));
            prop_assert!(y.inv().unwrap().inv().unwrap().rf_eq(&y));
        }
    }

    #[test]
    fn render_parse_round_trip(x in rf()) {
        prop_assert_eq!(RationalFunction::parse(&x.render()).unwrap(), x);
    }

    #[test]
    fn merge_is_rename_to_one_label(x in rf()) {
        let (a, b, c) = (Label::new("a"), Label::new("b"), Label::new("m"));
        let merged = x.substitute_merge(&a, &b, &c).unwrap();
        let renamed = x.rename(|l| if *l == a || *l == b { c.clone() } else { l.clone() }).unwrap();
        prop_assert_eq!(&merged, &renamed);
        prop_assert!(!merged.labels().contains(&a) && !merged.labels().contains(&b));
        if let (Ok(u), Ok(v)) = (x.eval_all_one(), merged.eval_all_one()) {
            prop_assert_eq!(u, v);
        }
    }

    #[test]
    fn all_ones_is_multiplicative(x in rf(), y in rf()) {
        if let (Ok(u), Ok(v)) = (x.eval_all_one(), y.eval_all_one()) {
            prop_assert_eq!(x.mul(&y).eval_all_one().unwrap(), u * v);
        }
    }
}

#[test]
fn expansion_examples() {
    let p = parse_rational("t1*t3 + t3").unwrap();
    let q = parse_rational("t3*(t1 + 1)").unwrap();
    assert_eq!(p, q);
    assert_eq!(p.as_poly().unwrap().len(), 2);
    let r = parse_rational("(t3 - 1)*t3*(t1 - 1)^2").unwrap();
    assert_eq!(r.as_poly().unwrap().len(), 6);
}

#[test]
fn glue_entry_example() {
    let (alpha, beta, gamma, delta, lambda) = (rmva::ring::t("a").neg(), RationalFunction::zero(), RationalFunction::one().sub(&rmva::ring::t("b")), RationalFunction::int(-1), rmva::ring::t("a"));
    let v = beta.mul(&gamma).sub(&alpha.mul(&delta)).checked_div(&lambda).unwrap();
    assert_eq!(v, RationalFunction::int(-1));
}

#[test]
fn division_by_zero() {
    assert!(matches!(RationalFunction::one().checked_div(&RationalFunction::zero()), Err(rmva::Error::DivisionByZero)));
}
