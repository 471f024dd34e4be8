//! Seeded random generator-composition programs.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{GenKind, Instr, MetaProgram};
use crate::diagram::Sign;
use crate::ring::Label;

#[derive(Debug, Clone, Copy)]
pub struct RandomConfig {
    pub kind: GenKind,
    pub min_strands: usize,
    pub max_strands: usize,
    pub max_crossings: usize,
    /// Probability of splicing an extra `e` piece into a strand.
    pub identity_rate: f64,
    /// Probability of adding and deleting a spare strand.
    pub eta_rate: f64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { kind: GenKind::Rmva, min_strands: 1, max_strands: 4, max_crossings: 6, identity_rate: 0.2, eta_rate: 0.2 }
    }
}

/// A program for a random pure tangle on strands `t1..tn`.
///
/// Crossings are drawn first; each strand then collects its pieces in a
/// random order and glues adjacent pieces in a random order.
pub fn random_program<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomConfig) -> MetaProgram {
    let n = rng.gen_range(cfg.min_strands.max(1)..=cfg.max_strands.max(cfg.min_strands.max(1)));
    let names: Vec<Label> = (1..=n).map(|i| Label::new(&format!("t{i}"))).collect();
    let k = if n >= 2 { rng.gen_range(0..=cfg.max_crossings) } else { 0 };
    let mut instrs = Vec::new();
    let mut pieces: Vec<Vec<Label>> = vec![Vec::new(); n];
    for i in 0..k {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        let (o, u) = (Label::new(&format!("p{i}o")), Label::new(&format!("p{i}u")));
        instrs.push(Instr::Gen { kind: cfg.kind, sign, a: o.clone(), b: u.clone() });
        if i > 0 {
            instrs.push(Instr::Union);
        }
        pieces[a].push(o);
        pieces[b].push(u);
    }
    if rng.gen_bool(cfg.eta_rate) {
        instrs.push(Instr::E(Label::new("spare")));
    }
    for (s, list) in names.iter().zip(pieces.iter_mut()) {
        list.shuffle(rng);
        if rng.gen_bool(cfg.identity_rate) {
            let id = Label::new(&format!("{s}e"));
            instrs.push(Instr::E(id.clone()));
            let at = rng.gen_range(0..=list.len());
            list.insert(at, id);
        }
        while list.len() > 1 {
            let j = rng.gen_range(0..list.len() - 1);
            let (a, b) = (list[j].clone(), list.remove(j + 1));
            instrs.push(Instr::Mul { a: a.clone(), b, c: a });
        }
        match list.first() {
            Some(first) => instrs.push(Instr::Sigma { a: first.clone(), b: s.clone() }),
            None => instrs.push(Instr::E(s.clone())),
        }
    }
    if instrs.contains(&Instr::E(Label::new("spare"))) {
        instrs.push(Instr::Eta(Label::new("spare")));
    }
    MetaProgram::new(instrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meta::eval_program;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_and_valid() {
        let cfg = RandomConfig::default();
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..20).map(|_| random_program(&mut rng, &cfg)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in &a {
            assert_eq!(p, &random_program(&mut rng, &cfg));
            let e = eval_program(p).unwrap();
            assert!(e.is_unit_at_one().unwrap());
            assert!(p.crossing_count() <= 6);
        }
    }
}
