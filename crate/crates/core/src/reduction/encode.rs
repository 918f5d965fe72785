//! The Ladner-style encoding `φ*` and its variable-free image `φ*_α`.

use crate::formula::{ModalFormula, QbfFormula, Quantifier, Substitution};
use crate::qbf::free_vars;

use super::ReductionError;

/// Bookkeeping for one encoded formula `Q₁p₁…Qₙpₙ φ′`.
///
/// The auxiliary "at least i quantifiers resolved" variables `q_0..q_{n+1}`
/// are the modal variables `p_{n+1}..p_{2n+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingContext {
    prefix: Vec<Quantifier>,
    matrix: QbfFormula,
}

impl EncodingContext {
    /// Validates `f` as a closed prenex formula whose prefix binds exactly
    /// `p1, …, pn` in this order.
    pub fn new(f: &QbfFormula) -> Result<Self, ReductionError> {
        let free = free_vars(f);
        if !free.is_empty() {
            return Err(ReductionError::NotClosed(free));
        }
        let (prefix, matrix) = f.split_prefix();
        if !matrix.is_quantifier_free() {
            return Err(ReductionError::NotPrenex);
        }
        if prefix.is_empty() {
            return Err(ReductionError::NoQuantifiers);
        }
        for (k, &(_, var)) in prefix.iter().enumerate() {
            let expected = k as u32 + 1;
            if var != expected {
                return Err(ReductionError::Numbering {
                    position: k + 1,
                    found: var,
                });
            }
        }
        Ok(EncodingContext {
            prefix: prefix.into_iter().map(|(q, _)| q).collect(),
            matrix: matrix.clone(),
        })
    }

    /// Number of quantifiers `n`.
    pub fn n(&self) -> u32 {
        self.prefix.len() as u32
    }

    /// `Q_i` for `1 ≤ i ≤ n`.
    pub fn quantifier(&self, i: u32) -> Quantifier {
        self.prefix[i as usize - 1]
    }

    pub fn quantifiers(&self) -> &[Quantifier] {
        &self.prefix
    }

    pub fn matrix(&self) -> &QbfFormula {
        &self.matrix
    }

    /// Modal variable index of `q_i`, `0 ≤ i ≤ n+1`.
    pub fn q(&self, i: u32) -> u32 {
        assert!(i <= self.n() + 1, "q_{i} out of range");
        self.n() + 1 + i
    }

    /// Number of modal variables of `φ*`, `2n + 2`.
    pub fn var_count(&self) -> u32 {
        2 * self.n() + 2
    }

    /// The formula `Q_{k+1}p_{k+1}…Q_np_n φ′` left after resolving `k`
    /// quantifiers.
    pub fn residual(&self, k: u32) -> QbfFormula {
        let rest: Vec<(Quantifier, u32)> = self.prefix[k as usize..]
            .iter()
            .enumerate()
            .map(|(j, &q)| (q, k + 1 + j as u32))
            .collect();
        QbfFormula::with_prefix(&rest, self.matrix.clone())
    }
}

/// Translates a quantifier-free QBF into the modal language.
pub fn matrix_to_modal(f: &QbfFormula) -> ModalFormula {
    use ModalFormula as M;
    use QbfFormula as Q;
    match f {
        Q::Var(i) => M::Var(*i),
        Q::Falsum => M::Falsum,
        Q::And(a, b) => M::And(vec![matrix_to_modal(a), matrix_to_modal(b)]),
        Q::Or(a, b) => M::or(matrix_to_modal(a), matrix_to_modal(b)),
        Q::Implies(a, b) => M::implies(matrix_to_modal(a), matrix_to_modal(b)),
        Q::Forall(..) | Q::Exists(..) => panic!("matrix must be quantifier-free"),
    }
}

/// Builds `φ*`, the conjunction of six formulas:
///
/// 1. `q₀ ∧ ¬q₁ ∧ ⋀ᵢ ¬pᵢ`
/// 2. `□^{≤n} ⋀_{i=1}^{n+1} (qᵢ → qᵢ₋₁)`
/// 3. `□^{≤n-1} ⋀_{Qᵢ=∃} (qᵢ₋₁ ∧ ¬qᵢ → ◇(qᵢ ∧ ¬qᵢ₊₁))`
/// 4. `□^{≤n-1} ⋀_{Qᵢ=∀} (qᵢ₋₁ ∧ ¬qᵢ → ◇(qᵢ ∧ ¬qᵢ₊₁ ∧ pᵢ) ∧ ◇(qᵢ ∧ ¬qᵢ₊₁ ∧ ¬pᵢ))`
/// 5. `□^{≤n-1} ⋀_{i=1}^{n-1} (qᵢ → ⋀_{j≤i} (pⱼ → □(qᵢ₊₁ ∧ ¬q_{n+1} → pⱼ)) ∧ ⋀_{j≤i} (¬pⱼ → □(qᵢ₊₁ ∧ ¬q_{n+1} → ¬pⱼ)))`
/// 6. `□ⁿ (qₙ ∧ ¬q_{n+1} → φ′)`
///
/// Empty conjunctions are `⊤`, so the result always has six conjuncts.
pub fn encode_star(f: &QbfFormula) -> Result<(ModalFormula, EncodingContext), ReductionError> {
    use ModalFormula as M;
    let ctx = EncodingContext::new(f)?;
    let n = ctx.n();
    let p = |i: u32| M::var(i);
    let q = |i: u32| M::var(ctx.q(i));
    let not = M::not;
    let level = |i: u32| M::And(vec![q(i), not(q(i + 1))]);

    let mut start = vec![q(0), not(q(1))];
    start.extend((1..=n).map(|i| not(p(i))));
    let start = M::conj(start);

    let monotone = M::box_up_to(
        n,
        M::conj((1..=n + 1).map(|i| M::implies(q(i), q(i - 1))).collect()),
    );

    let step = |i: u32, extra: Option<ModalFormula>| {
        let mut target = vec![q(i), not(q(i + 1))];
        target.extend(extra);
        M::dia(M::conj(target))
    };

    let exists = M::box_up_to(
        n - 1,
        M::conj(
            (1..=n)
                .filter(|&i| ctx.quantifier(i) == Quantifier::Exists)
                .map(|i| M::implies(level(i - 1), step(i, None)))
                .collect(),
        ),
    );

    let forall = M::box_up_to(
        n - 1,
        M::conj(
            (1..=n)
                .filter(|&i| ctx.quantifier(i) == Quantifier::Forall)
                .map(|i| {
                    M::implies(
                        level(i - 1),
                        M::And(vec![step(i, Some(p(i))), step(i, Some(not(p(i))))]),
                    )
                })
                .collect(),
        ),
    );

    let persist = M::box_up_to(
        n - 1,
        M::conj(
            (1..n)
                .map(|i| {
                    let guard = || M::And(vec![q(i + 1), not(q(n + 1))]);
                    let keep_true = (1..=i)
                        .map(|j| M::implies(p(j), M::boxed(M::implies(guard(), p(j)))))
                        .collect();
                    let keep_false = (1..=i)
                        .map(|j| M::implies(not(p(j)), M::boxed(M::implies(guard(), not(p(j))))))
                        .collect();
                    M::implies(q(i), M::And(vec![M::conj(keep_true), M::conj(keep_false)]))
                })
                .collect(),
        ),
    );

    let leaves = M::box_pow(
        n,
        M::implies(
            M::And(vec![q(n), not(q(n + 1))]),
            matrix_to_modal(ctx.matrix()),
        ),
    );

    let star = M::And(vec![start, monotone, exists, forall, persist, leaves]);
    Ok((star, ctx))
}

/// `α_k = □(◇ᵏ□⊥ ∧ ¬◇ᵏ⁺¹□⊥ → □(◇⊤ → ◇□⊥))`, for `k ≥ 1`.
pub fn alpha(k: u32) -> Result<ModalFormula, ReductionError> {
    use ModalFormula as M;
    if k == 0 {
        return Err(ReductionError::ZeroIndex);
    }
    let blind = || M::boxed(M::Falsum);
    let reach = |steps: u32| (0..steps).fold(blind(), |acc, _| M::dia(acc));
    Ok(M::boxed(M::implies(
        M::And(vec![reach(k), M::not(reach(k + 1))]),
        M::boxed(M::implies(M::dia(M::Verum), M::dia(blind()))),
    )))
}

/// The substitution `p_k ↦ α_k`, `1 ≤ k ≤ count`.
pub fn alpha_substitution(count: u32) -> Substitution {
    (1..=count)
        .map(|k| (k, alpha(k).expect("k >= 1")))
        .collect()
}

/// `φ*_α`: `φ*` with `α_1, …, α_{2n+2}` substituted for `p_1, …, p_{2n+2}`.
pub fn encode_alpha(f: &QbfFormula) -> Result<ModalFormula, ReductionError> {
    let (star, ctx) = encode_star(f)?;
    Ok(star.substitute(&alpha_substitution(ctx.var_count())))
}
