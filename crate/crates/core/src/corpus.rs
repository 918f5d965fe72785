//! Instance generators: exhaustive small matrices, seeded random prenex
//! QBFs, random closed (not necessarily prenex) QBFs, and random modal
//! formulas.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formula::{ModalFormula, QbfFormula, Quantifier};

/// Every quantifier-free formula over `p1..pn` and `⊥` built with `∧ ∨ →`
/// whose size is at most `max_size`, smallest first.
pub fn exhaustive_matrices(n: u32, max_size: usize) -> Vec<QbfFormula> {
    // by_size[s] holds all formulas of size exactly s
    let mut by_size: Vec<Vec<QbfFormula>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = (1..=n)
            .map(QbfFormula::var)
            .chain([QbfFormula::Falsum])
            .collect();
    }
    for s in 2..=max_size {
        let mut out = Vec::new();
        for op in 0..3 {
            for l in 1..s - 1 {
                let r = s - 1 - l;
                for a in &by_size[l] {
                    for b in &by_size[r] {
                        let (a, b) = (a.clone(), b.clone());
                        out.push(match op {
                            0 => QbfFormula::and(a, b),
                            1 => QbfFormula::or(a, b),
                            _ => QbfFormula::implies(a, b),
                        });
                    }
                }
            }
        }
        by_size[s] = out;
    }
    by_size.into_iter().flatten().collect()
}

/// `∀p1.φ′` and `∃p1.φ′` for every matrix of [`exhaustive_matrices`]
/// with `n = 1`.
pub fn exhaustive_single_quantifier(max_size: usize) -> Vec<QbfFormula> {
    exhaustive_matrices(1, max_size)
        .into_iter()
        .flat_map(|m| {
            [Quantifier::Forall, Quantifier::Exists]
                .map(|q| QbfFormula::quantified(q, 1, m.clone()))
        })
        .collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: u32, size: usize) -> QbfFormula {
    if size <= 2 {
        return if rng.gen_ratio(1, n + 2) {
            QbfFormula::Falsum
        } else {
            QbfFormula::var(rng.gen_range(1..=n))
        };
    }
    // binary node: split size - 1 into two odd parts
    let l = 2 * rng.gen_range(0..(size - 1) / 2) + 1;
    let r = size - 1 - l;
    let (a, b) = (random_matrix(rng, n, l), random_matrix(rng, n, r));
    match rng.gen_range(0..3) {
        0 => QbfFormula::and(a, b),
        1 => QbfFormula::or(a, b),
        _ => QbfFormula::implies(a, b),
    }
}

/// `count` closed prenex formulas `Q₁p₁…Qₙpₙ φ′` with `n` drawn from
/// `n_range` and matrix size at most `max_matrix`, from a fixed seed.
pub fn random_prenex(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<u32>,
    max_matrix: usize,
) -> Vec<QbfFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_range.clone());
            let prefix: Vec<(Quantifier, u32)> = (1..=n)
                .map(|i| {
                    let q = if rng.gen_bool(0.5) {
                        Quantifier::Forall
                    } else {
                        Quantifier::Exists
                    };
                    (q, i)
                })
                .collect();
            let size = 2 * rng.gen_range(0..=(max_matrix.max(1) - 1) / 2) + 1;
            QbfFormula::with_prefix(&prefix, random_matrix(&mut rng, n, size))
        })
        .collect()
}

fn random_closed_rec(
    rng: &mut ChaCha8Rng,
    vars: u32,
    size: usize,
    bound: &mut Vec<u32>,
) -> QbfFormula {
    if size == 1 || (size == 2 && bound.is_empty()) {
        return if bound.is_empty() || rng.gen_ratio(1, 5) {
            QbfFormula::Falsum
        } else {
            QbfFormula::var(bound[rng.gen_range(0..bound.len())])
        };
    }
    if size == 2 || rng.gen_ratio(1, 3) {
        let v = rng.gen_range(1..=vars);
        let q = if rng.gen_bool(0.5) {
            Quantifier::Forall
        } else {
            Quantifier::Exists
        };
        bound.push(v);
        let body = random_closed_rec(rng, vars, size - 1, bound);
        bound.pop();
        return QbfFormula::quantified(q, v, body);
    }
    let l = rng.gen_range(1..size - 1);
    let a = random_closed_rec(rng, vars, l, bound);
    let b = random_closed_rec(rng, vars, size - 1 - l, bound);
    match rng.gen_range(0..3) {
        0 => QbfFormula::and(a, b),
        1 => QbfFormula::or(a, b),
        _ => QbfFormula::implies(a, b),
    }
}

/// `count` closed formulas over at most `vars` variable names with size at
/// most `max_size`. Quantifiers may appear anywhere and may shadow.
pub fn random_closed(seed: u64, count: usize, vars: u32, max_size: usize) -> Vec<QbfFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_closed_rec(&mut rng, vars, size, &mut Vec::new())
        })
        .collect()
}

fn random_modal_rec(rng: &mut ChaCha8Rng, vars: u32, size: usize) -> ModalFormula {
    use ModalFormula as M;
    if size == 1 {
        return match rng.gen_range(0..vars + 2) {
            0 => M::Falsum,
            1 => M::Verum,
            k => M::var(k - 1),
        };
    }
    if size == 2 || rng.gen_ratio(1, 2) {
        let a = random_modal_rec(rng, vars, size - 1);
        return match rng.gen_range(0..3) {
            0 => M::not(a),
            1 => M::boxed(a),
            _ => M::dia(a),
        };
    }
    let l = rng.gen_range(1..size - 1);
    let a = random_modal_rec(rng, vars, l);
    let b = random_modal_rec(rng, vars, size - 1 - l);
    match rng.gen_range(0..3) {
        0 => M::And(vec![a, b]),
        1 => M::or(a, b),
        _ => M::implies(a, b),
    }
}

/// `count` modal formulas over `p1..p_vars` of size at most `max_size`.
pub fn random_modal(seed: u64, count: usize, vars: u32, max_size: usize) -> Vec<ModalFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_modal_rec(&mut rng, vars, size)
        })
        .collect()
}
