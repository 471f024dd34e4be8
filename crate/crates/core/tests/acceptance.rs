//! Acceptance criteria 1-10, one line each. Run with
//! `cargo test -p rmva-core --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmva::checks::{axioms_suite, correspondence_suite, move_pairs, program_value, reidemeister_suite};
use rmva::diagram::{parse_diagram, Sign};
use rmva::links::{braid_closure, braid_closure_mva, equal_up_to_unit, partial_trace, vmva, Cut};
use rmva::meta::{assemble, eval_program, eval_program_in, f_inverse, f_map, generator, parse_program, random_program, Calculus, GenKind, MetaElement, MetaProgram, RandomConfig};
use rmva::ring::{parse_rational, Label, RationalFunction};
use rmva::tmva::{all_specs, compute_tmva, hodge_reduce, reconstruct_full, reconstruct_minor};
use rmva::Error;

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 200;
const RECON_SEED: u64 = 77;
const RECON_SIZE: usize = 50;
const SUITE_SEED: u64 = 1;
const AXIOM_ELEMENTS: usize = 100;
const RANDOM_WORDS: usize = 100;
const MAX_WORD: usize = 5;
const ONE_TANGLES: usize = 100;

const T_PRIME_PROGRAM: &str = include_str!("../../../data/t_prime.program");
const BIN: &str = env!("CARGO_BIN_EXE_rmva");
const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

type Check = fn() -> Result<String, String>;

fn q(s: &str) -> RationalFunction {
    parse_rational(s).expect("literal parses")
}

fn l(s: &str) -> Label {
    Label::new(s)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn corpus(kind: GenKind) -> Vec<MetaProgram> {
    let cfg = RandomConfig { kind, min_strands: 1, max_strands: 4, max_crossings: 6, ..RandomConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE).map(|_| random_program(&mut rng, &cfg)).collect()
}

fn r_element(pair: rmva::tmva::ReducedPair) -> MetaElement {
    MetaElement { calculus: Calculus::R, pair }
}

fn c1_t_prime() -> Result<String, String> {
    let e = eval_program(&parse_program(T_PRIME_PROGRAM).map_err(err)?).map_err(err)?;
    ensure(e.pair.normalizer.render() == "t1^(-1)*t3^(-2)", format!("normalizer {}", e.pair.normalizer.render()))?;
    ensure(e.pair.lambda == q("t1*t3^2*(t1 + t3 - 1)"), format!("lambda {}", e.pair.lambda.render()))?;
    let expected = [
        ["t1*t3^3*(t3*t1 - 2*t1 - t3 + 1)", "0", "-t1*t3^2*(t1 - 1)^2*(t3 - 1)"],
        ["t3^2*(t1*t3*(t3 - 2) + 1 - t3)*(t2 - 1)", "-t3*(t1 + t3 - 1)", "t3*(1 - t2)*(t3 + (t1 - 1)*(t1*t3^2 - t1*t3 + 1))"],
        ["-t1*t3^3*(t3 - 1)", "0", "t1*t3^2*(t3*(t1 - 2) + 1 - t1)"],
    ];
    let labels = [l("t1"), l("t2"), l("t3")];
    for (i, row) in expected.iter().enumerate() {
        for (j, text) in row.iter().enumerate() {
            let got = e.pair.get(&labels[i], &labels[j]).ok_or("missing label")?;
            ensure(got.rf_eq(&q(text)), format!("A[b{},a{}] = {}", i + 1, j + 1, got.render()))?;
        }
    }
    Ok("normalizer, lambda and 9/9 entries exact".into())
}

fn c2_generators() -> Result<String, String> {
    let (a, b) = (l("a"), l("b"));
    let m = |rows: [[&str; 2]; 2]| -> Vec<Vec<RationalFunction>> { rows.iter().map(|r| r.iter().map(|x| q(x)).collect()).collect() };
    let rp = generator(GenKind::Rmva, Sign::Positive, &a, &b).map_err(err)?;
    let rn = generator(GenKind::Rmva, Sign::Negative, &a, &b).map_err(err)?;
    let zp = generator(GenKind::Ztilde, Sign::Positive, &a, &b).map_err(err)?;
    let zn = generator(GenKind::Ztilde, Sign::Negative, &a, &b).map_err(err)?;
    ensure(rp.pair.normalizer.render() == "t_a^(-1/2)" && rn.pair.normalizer.render() == "t_a^(-1/2)", "rmva normalizer")?;
    ensure(rp.pair.lambda == q("t_a") && rp.pair.matrix() == m([["-t_a", "0"], ["1 - t_b", "-1"]]), "rmva +")?;
    ensure(rn.pair.lambda == q("1") && rn.pair.matrix() == m([["-1", "0"], ["t_b - 1", "-t_a"]]), "rmva -")?;
    ensure(zp.value_lambda() == q("t_a^(1/2)") && zp.value_matrix() == m([["1", "0"], ["(t_b - 1)/t_a", "1/t_a"]]), "ztilde +")?;
    ensure(zn.value_lambda() == q("t_a^(-1/2)") && zn.value_matrix() == m([["1", "0"], ["1 - t_b", "t_a"]]), "ztilde -")?;
    for (z, r, s) in [(&zp, &rp, "+"), (&zn, &rn, "-")] {
        ensure(f_map(z).map_err(err)?.value_eq(r), format!("F(ztilde {s}) != rmva {s}"))?;
        ensure(f_inverse(r).map_err(err)?.value_eq(z), format!("F^-1(rmva {s}) != ztilde {s}"))?;
    }
    for sign in ["+", "-"] {
        let p = parse_program(&format!("gen rmva {sign} a b")).map_err(err)?;
        let direct = hodge_reduce(&compute_tmva(&assemble(&p).map_err(err)?).map_err(err)?).map_err(err)?;
        ensure(eval_program(&p).map_err(err)?.pair == direct, format!("crossing {sign} differs from its Alexander matrix"))?;
    }
    Ok("4/4 generator tables verbatim, F maps both signs, both crossings match their matrices".into())
}

fn c3_oracle() -> Result<String, String> {
    let (mut identical, mut gamma) = (0, 0);
    for (k, (p, pz)) in corpus(GenKind::Rmva).iter().zip(corpus(GenKind::Ztilde)).enumerate() {
        ensure(p.crossing_count() <= 6, "too many crossings")?;
        let e = eval_program(p).map_err(err)?;
        let d = assemble(p).map_err(|x| format!("program {k}: {x}"))?;
        ensure(d.open_strands().len() <= 4, "too many strands")?;
        let direct = r_element(hodge_reduce(&compute_tmva(&d).map_err(err)?).map_err(err)?);
        ensure(e.value_eq(&direct), format!("program {k} differs from its diagram:\n{}", p.to_text()))?;
        if e.pair == direct.pair {
            identical += 1;
        }
        let z = eval_program_in(&pz, Calculus::Gamma).map_err(err)?;
        ensure(z.value_eq(&f_inverse(&direct).map_err(err)?), format!("ztilde program {k} differs from F^-1 of its diagram"))?;
        gamma += 1;
    }
    Ok(format!("{CORPUS_SIZE}/{CORPUS_SIZE} R programs equal, {identical} with identical normalizer split; {gamma}/{CORPUS_SIZE} ztilde programs equal F^-1"))
}

fn c4_reconstruction() -> Result<String, String> {
    let cfg = RandomConfig { max_crossings: 5, ..RandomConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(RECON_SEED);
    let mut minors = 0;
    for k in 0..RECON_SIZE {
        let d = assemble(&random_program(&mut rng, &cfg)).map_err(err)?;
        ensure(d.crossings().len() <= 5, "too many crossings")?;
        let e = compute_tmva(&d).map_err(err)?;
        let p = hodge_reduce(&e).map_err(err)?;
        let by_strand = e.by_strand();
        let n = p.n();
        for spec in all_specs(n) {
            let i_set: Vec<usize> = (1..=n).filter(|i| !spec.kept_out.contains(i)).collect();
            let r = reconstruct_minor(&p, &i_set, &spec.taken_in).map_err(err)?;
            ensure(r == by_strand.coeff(&spec), format!("diagram {k}: minor {spec:?} differs"))?;
            minors += 1;
        }
        ensure(reconstruct_full(&p).map_err(err)?.equivalent(&e), format!("diagram {k}: reconstruct_full differs"))?;
    }
    Ok(format!("{RECON_SIZE} diagrams, {minors} minors exact, reconstruct_full round-trips"))
}

fn c5_moves() -> Result<String, String> {
    let report = reidemeister_suite().map_err(err)?;
    ensure(report.all_passed(), report.render())?;
    let r1 = move_pairs().into_iter().find(|m| m.name == "R1").ok_or("no R1 pair")?;
    let (lhs, rhs) = (program_value(&r1.lhs).map_err(err)?, program_value(&r1.rhs).map_err(err)?);
    ensure(lhs.pair.normalizer.render() == "t1^(-1/2)" && lhs.pair.lambda == q("t1") && lhs.pair.matrix() == [vec![q("-t1")]], "R1 left side value")?;
    ensure(rhs.pair.normalizer.render() == "1" && rhs.pair.lambda == q("1") && rhs.pair.matrix() == [vec![q("-1")]], "R1 right side value")?;
    let equal = report.lines.iter().filter(|l| l.name != "R1").count();
    Ok(format!("{equal}/6 move pairs equal, R1 unequal: t1^(-1/2)(t1; [-t1]) vs (1; [-1])"))
}

fn c6_axioms() -> Result<String, String> {
    let report = axioms_suite(SUITE_SEED, AXIOM_ELEMENTS).map_err(err)?;
    ensure(report.all_passed(), report.render())?;
    Ok(format!("{} axiom lines over {AXIOM_ELEMENTS} elements per calculus", report.lines.len()))
}

fn c7_all_ones() -> Result<String, String> {
    for (kind, calc, tag) in [(GenKind::Rmva, Calculus::R, "R"), (GenKind::Ztilde, Calculus::Gamma, "Gamma")] {
        for (k, p) in corpus(kind).iter().enumerate() {
            let e = eval_program_in(p, calc).map_err(err)?;
            ensure(e.is_unit_at_one().map_err(err)?, format!("{tag} program {k} is not the unit at 1"))?;
        }
    }
    Ok(format!("{CORPUS_SIZE} R values give (1, -I), {CORPUS_SIZE} Gamma values give (1, I)"))
}

fn c8_gassner() -> Result<String, String> {
    let report = correspondence_suite(SUITE_SEED, RANDOM_WORDS, MAX_WORD).map_err(err)?;
    ensure(report.all_passed(), report.render())?;
    Ok(report.lines.iter().map(|l| l.detail.clone()).collect::<Vec<_>>().join("; "))
}

fn c9_links() -> Result<String, String> {
    let t1m1 = q("t1 - 1");
    for (name, n, word) in [("trefoil", 2, vec![1, 1, 1]), ("figure-eight", 3, vec![1, -2, 1, -2])] {
        let oracle = common::to_rf(&common::burau_alexander(n, &word), "1").checked_div(&t1m1).map_err(err)?;
        let direct = vmva(&braid_closure(n, &word, Cut::First).map_err(err)?).map_err(err)?;
        let traced = braid_closure_mva(n, &word).map_err(err)?;
        ensure(equal_up_to_unit(&direct, &oracle), format!("{name}: direct {} vs oracle {}", direct.render(), oracle.render()))?;
        ensure(equal_up_to_unit(&traced, &oracle), format!("{name}: traced {} vs oracle {}", traced.render(), oracle.render()))?;
    }
    let file = parse_diagram(&std::fs::read_to_string(format!("{DATA}/trefoil.diagram")).map_err(|e| e.to_string())?).map_err(err)?;
    ensure(equal_up_to_unit(&vmva(&file).map_err(err)?, &q("(t1^2 - t1 + 1)/(t1 - 1)")), "long trefoil file")?;
    let cfg = RandomConfig { min_strands: 1, max_strands: 4, max_crossings: 6, ..RandomConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 1);
    let (mut held, mut undefined) = (0, 0);
    'outer: for k in 0..ONE_TANGLES {
        let mut e = eval_program(&random_program(&mut rng, &cfg)).map_err(err)?;
        let labels = e.labels().to_vec();
        let keep = rng.gen_range(0..labels.len());
        for (i, a) in labels.iter().enumerate() {
            if i != keep {
                match partial_trace(&e, a) {
                    Ok(x) => e = x,
                    Err(Error::LambdaZero(_)) => {
                        undefined += 1;
                        continue 'outer;
                    }
                    Err(x) => return Err(err(x)),
                }
            }
        }
        ensure(e.pair.lambda == e.pair.matrix()[0][0].neg(), format!("1-tangle {k}: lambda != -A"))?;
        held += 1;
    }
    Ok(format!("trefoil and figure-eight match the Burau oracle on both paths; lambda = -A on {held} 1-tangles ({undefined} closures hit lambda = 0)"))
}

fn cli(args: &[&str]) -> Result<(Option<i32>, Vec<u8>), String> {
    let o = Command::new(BIN).args(args).output().map_err(|e| e.to_string())?;
    Ok((o.status.code(), o.stdout))
}

fn c10_determinism() -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("rmva-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let write = |name: &str, text: &str| -> Result<String, String> {
        let p: PathBuf = dir.join(name);
        std::fs::write(&p, text).map_err(|e| e.to_string())?;
        Ok(p.to_string_lossy().into_owned())
    };
    let data = |f: &str| format!("{DATA}/{f}");
    let mut runs: Vec<Vec<String>> = vec![
        vec!["--mode", "program", "--input", &data("t_prime.program")].into_iter().map(String::from).collect(),
        vec!["--mode", "program", "--format", "json", "--input", &data("t_prime.program")].into_iter().map(String::from).collect(),
        vec!["--check", "reidemeister"].into_iter().map(String::from).collect(),
        vec!["--check", "axioms"].into_iter().map(String::from).collect(),
        vec!["--check", "correspondence", "--format", "json"].into_iter().map(String::from).collect(),
        vec!["--mode", "diagram", "--invariant", "vmva", "--input", &data("trefoil.diagram")].into_iter().map(String::from).collect(),
        vec!["--mode", "diagram", "--invariant", "vmva", "--input", &data("figure_eight.diagram")].into_iter().map(String::from).collect(),
        vec!["--mode", "braid", "--invariant", "gassner", "--input", &data("sample.braid")].into_iter().map(String::from).collect(),
    ];
    for (kind, sign) in [("rmva", "+"), ("rmva", "-"), ("ztilde", "+"), ("ztilde", "-")] {
        let f = write(&format!("gen_{kind}_{}.program", if sign == "+" { "p" } else { "n" }), &format!("gen {kind} {sign} a b\n"))?;
        let inv = if kind == "rmva" { "rmva" } else { "ztilde" };
        runs.push(vec!["--mode".into(), "program".into(), "--invariant".into(), inv.into(), "--input".into(), f]);
    }
    for (k, p) in corpus(GenKind::Rmva).iter().take(10).enumerate() {
        let f = write(&format!("corpus_{k}.program"), &p.to_text())?;
        runs.push(vec!["--mode".into(), "program".into(), "--format".into(), "json".into(), "--input".into(), f.clone()]);
        let d = write(&format!("corpus_{k}.diagram"), &assemble(p).map_err(err)?.to_text())?;
        runs.push(vec!["--mode".into(), "diagram".into(), "--invariant".into(), "tmva".into(), "--input".into(), d]);
    }
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (cli(&args)?, cli(&args)?);
        ensure(a.0 == Some(0), format!("{args:?} exited with {:?}", a.0))?;
        ensure(a == b, format!("{args:?} differs between runs"))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} CLI invocations byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [(u8, &str, Duration, Check); 10] = [
        (1, "T' exactness", Duration::from_secs(1), c1_t_prime),
        (2, "generator fidelity", Duration::from_secs(1), c2_generators),
        (3, "oracle equivalence", Duration::from_secs(60), c3_oracle),
        (4, "reconstruction", Duration::from_secs(60), c4_reconstruction),
        (5, "invariance suite", Duration::from_secs(5), c5_moves),
        (6, "metamonoid axioms", Duration::from_secs(30), c6_axioms),
        (7, "all-ones values", Duration::from_secs(60), c7_all_ones),
        (8, "Gassner correspondence", Duration::from_secs(30), c8_gassner),
        (9, "link recovery", Duration::from_secs(30), c9_links),
        (10, "CLI determinism", Duration::from_secs(120), c10_determinism),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("too slow; {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {status} {name} [{:.3}s / {}s] {detail}", elapsed.as_secs_f64(), limit.as_secs());
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
