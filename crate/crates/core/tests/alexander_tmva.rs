use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmva::alexander::{build_matrix, det_cofactor, det_sparse, normalizer, MinorSpec};
use rmva::diagram::parse_diagram;
use rmva::meta::{assemble, random_program, RandomConfig};
use rmva::ring::{parse_rational, LaurentPoly};
use rmva::tmva::{all_specs, compute_tmva, hodge_reduce, reconstruct_full, reconstruct_minor};

const T_LOOP: &str = include_str!("../../../data/t_loop.diagram");
const T_PRIME: &str = include_str!("../../../data/t_prime.diagram");

fn lp(s: &str) -> LaurentPoly {
    parse_rational(s).unwrap().as_poly().unwrap().clone()
}

#[test]
fn t_loop_rows() {
    let m = build_matrix(&parse_diagram(T_LOOP).unwrap()).unwrap();
    assert_eq!(m.entry("c", "c"), lp("1"));
    assert_eq!(m.entry("c", "e"), lp("t1 - 1"));
    assert_eq!(m.entry("c", "a1"), lp("-t3"));
    assert_eq!(m.rows()[m.row_labels.iter().position(|r| r == "c").unwrap()].len(), 3);
    assert_eq!(m.entry("g", "g"), lp("1 - t3"));
    assert_eq!(m.entry("g", "a3"), lp("t4 - 1"));
    assert_eq!(m.rows()[m.row_labels.iter().position(|r| r == "g").unwrap()].len(), 2);
    assert!(m.column_relation_holds());
}

#[test]
fn t_loop_square_block_matches_cofactor() {
    let m = build_matrix(&parse_diagram(T_LOOP).unwrap()).unwrap();
    let cols: Vec<usize> = ["c", "d", "e", "f", "g", "b1", "b2", "b3"]
        .iter()
        .map(|c| m.col_labels().iter().position(|x| x == c).unwrap())
        .collect();
    let dense: Vec<Vec<LaurentPoly>> = m.rows().iter().map(|r| cols.iter().map(|c| r.get(c).cloned().unwrap_or_else(LaurentPoly::zero)).collect()).collect();
    assert_eq!(dense.len(), 8);
    let sparse: Vec<BTreeMap<usize, LaurentPoly>> =
        dense.iter().map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect()).collect();
    assert_eq!(det_sparse(sparse, 8), det_cofactor(&dense));
}

#[test]
fn t_prime_normalizer_and_lambda() {
    let d = parse_diagram(T_PRIME).unwrap();
    assert_eq!(normalizer(&d).render(), "t1^(-1)*t3^(-2)");
    let m = build_matrix(&d).unwrap();
    assert_eq!(m.minor_poly(&MinorSpec::new(vec![1, 2, 3], vec![])).unwrap(), lp("t1*t3^2*(t1 + t3 - 1)"));
}

#[test]
fn t_prime_k2_minor_reconstructs() {
    let d = parse_diagram(T_PRIME).unwrap();
    let e = compute_tmva(&d).unwrap();
    let p = hodge_reduce(&e).unwrap();
    let direct = build_matrix(&d).unwrap().minor_poly(&MinorSpec::new(vec![3], vec![1, 2])).unwrap();
    assert_eq!(reconstruct_minor(&p, &[1, 2], &[1, 2]).unwrap().as_poly().unwrap(), &direct);
    let r = reconstruct_full(&p).unwrap();
    assert_eq!(all_specs(3).len(), 20);
    for spec in all_specs(3) {
        assert_eq!(r.by_strand().coeff(&spec), e.by_strand().coeff(&spec));
    }
    assert!(r.equivalent(&e));
}

fn entry() -> impl Strategy<Value = LaurentPoly> {
    prop_oneof![
        3 => Just(LaurentPoly::zero()),
        1 => (-2i64..=2, prop::sample::select(vec!["1", "2"]), -1i32..=2).prop_map(|(c, l, e)| lp(&format!("({c})*t{l}^({e}) + 1"))),
        1 => (-2i64..=2).prop_map(LaurentPoly::int),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sparse_matches_cofactor(m in prop::collection::vec(prop::collection::vec(entry(), 5), 5)) {
        let sparse = m.iter().map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect()).collect();
        prop_assert_eq!(det_sparse(sparse, 5), det_cofactor(&m));
    }

    #[test]
    fn reconstruction_on_random_diagrams(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = RandomConfig { max_crossings: 5, eta_rate: 0.0, ..RandomConfig::default() };
        let d = assemble(&random_program(&mut rng, &cfg)).unwrap();
        let e = compute_tmva(&d).unwrap();
        let p = hodge_reduce(&e).unwrap();
        let by_strand = e.by_strand();
        let n = p.n();
        for spec in all_specs(n) {
            let i_set: Vec<usize> = (1..=n).filter(|i| !spec.kept_out.contains(i)).collect();
            let r = reconstruct_minor(&p, &i_set, &spec.taken_in).unwrap();
            prop_assert_eq!(r, by_strand.coeff(&spec));
        }
        prop_assert!(reconstruct_full(&p).unwrap().equivalent(&e));
    }
}
