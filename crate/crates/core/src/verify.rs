//! End-to-end check of the reduction over a generated corpus.

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{exhaustive_single_quantifier, random_prenex};
use crate::formula::QbfFormula;
use crate::kripke::{holds_at_root, ClosureMode, FrameClass, KripkeModel};
use crate::qbf::is_true_qbf;
use crate::reduction::{
    alpha_equivalence_violations, encode_alpha, encode_star, extend_model, quantifier_tree,
};
use crate::solver::{sat_k_tableau_with, SatVerdict, SolverError, TableauConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest quantifier count; random instances use `2..=n_max`.
    pub n_max: u32,
    /// Matrix size bound for the exhaustive `n = 1` part.
    pub exhaustive_size: usize,
    /// Matrix size bound for random instances.
    pub random_size: usize,
    /// Number of random instances.
    pub count: usize,
    pub seed: u64,
    /// Build and check `M′` only up to this many quantifiers.
    pub extended_n_max: u32,
    pub node_budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 3,
            exhaustive_size: 5,
            random_size: 9,
            count: 200,
            seed: 0,
            extended_n_max: 2,
            node_budget: crate::solver::DEFAULT_NODE_BUDGET,
        }
    }
}

impl VerifyConfig {
    pub fn corpus(&self) -> Vec<QbfFormula> {
        let mut out = Vec::new();
        if self.n_max >= 1 {
            out = exhaustive_single_quantifier(self.exhaustive_size);
        }
        if self.n_max >= 2 {
            out.extend(random_prenex(
                self.seed,
                self.count,
                2..=self.n_max,
                self.random_size,
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameClassResults {
    pub gl: bool,
    pub grz: bool,
    pub ktb: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub formula: String,
    pub n: u32,
    pub is_true_qbf: bool,
    pub star: Verdict,
    pub alpha: Verdict,
    pub alpha_variable_free: bool,
    pub star_size: usize,
    pub alpha_size: usize,
    /// Solver witnesses satisfy their query at the root.
    pub solver_witnesses_ok: bool,
    /// Quantifier tree satisfies `φ*` at its root (true formulas only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_model_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame_classes: Option<FrameClassResults>,
    /// `M′` satisfies `φ*_α` at its root.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended_model_ok: Option<bool>,
    /// Number of `(m, world)` pairs where the α-equivalence fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence_violations: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub records: Vec<InstanceRecord>,
    pub pass: bool,
}

impl VerifyReport {
    /// One JSON object per line, in instance order.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("plain data serializes"));
            out.push('\n');
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn summary(&self) -> String {
        let total = self.records.len();
        let failed = self.failures().count();
        let truths = self.records.iter().filter(|r| r.is_true_qbf).count();
        format!(
            "{} instances ({} true, {} false), {} failed, seed {}: {}",
            total,
            truths,
            total - truths,
            failed,
            self.seed,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn verdict(f: &crate::formula::ModalFormula, config: &TableauConfig) -> (Verdict, bool) {
    match sat_k_tableau_with(f, config) {
        Ok(SatVerdict {
            outcome: crate::solver::Outcome::Satisfiable(m),
            ..
        }) => (Verdict::Sat, holds_at_root(&m, f)),
        Ok(_) => (Verdict::Unsat, true),
        Err(SolverError::BudgetExhausted { .. }) | Err(SolverError::ZeroBound) => {
            (Verdict::Unknown, true)
        }
    }
}

fn frame_classes(tree: &KripkeModel) -> FrameClassResults {
    let fr = tree.frame();
    FrameClassResults {
        gl: fr.close(ClosureMode::Transitive).in_class(FrameClass::Gl),
        grz: fr
            .close(ClosureMode::ReflexiveTransitive)
            .in_class(FrameClass::Grz),
        ktb: fr
            .close(ClosureMode::ReflexiveSymmetric)
            .in_class(FrameClass::Ktb),
    }
}

/// Runs every check on one closed prenex formula.
pub fn check_instance(index: usize, f: &QbfFormula, config: &VerifyConfig) -> InstanceRecord {
    let tableau = TableauConfig {
        node_budget: config.node_budget,
    };
    let truth = is_true_qbf(f);
    let (star, ctx) = encode_star(f).expect("corpus formulas are closed prenex");
    let alpha = encode_alpha(f).expect("corpus formulas are closed prenex");
    let (star_verdict, star_ok) = verdict(&star, &tableau);
    let (alpha_verdict, alpha_ok) = verdict(&alpha, &tableau);
    let expected = if truth { Verdict::Sat } else { Verdict::Unsat };

    let mut record = InstanceRecord {
        index,
        formula: f.to_string(),
        n: ctx.n(),
        is_true_qbf: truth,
        star: star_verdict,
        alpha: alpha_verdict,
        alpha_variable_free: alpha.is_constant(),
        star_size: star.size(),
        alpha_size: alpha.size(),
        solver_witnesses_ok: star_ok && alpha_ok,
        tree_model_ok: None,
        frame_classes: None,
        extended_model_ok: None,
        equivalence_violations: None,
        pass: false,
    };
    if truth {
        let (tree, ctx) = quantifier_tree(f).expect("true formula");
        record.tree_model_ok = Some(holds_at_root(&tree, &star));
        record.frame_classes = Some(frame_classes(&tree));
        if ctx.n() <= config.extended_n_max {
            let ext = extend_model(&tree, &ctx).expect("trees are persistent");
            record.extended_model_ok = Some(holds_at_root(&ext, &alpha));
            record.equivalence_violations =
                Some(alpha_equivalence_violations(&ext, ctx.var_count()).len());
        }
    }
    record.pass = record.star == expected
        && record.alpha == expected
        && record.alpha_variable_free
        && record.solver_witnesses_ok
        && record.tree_model_ok != Some(false)
        && record
            .frame_classes
            .as_ref()
            .is_none_or(|c| c.gl && c.grz && c.ktb)
        && record.extended_model_ok != Some(false)
        && record.equivalence_violations.is_none_or(|v| v == 0);
    record
}

/// Checks every corpus instance in parallel; records keep corpus order.
pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    let corpus = config.corpus();
    let records: Vec<InstanceRecord> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, f)| check_instance(i, f, config))
        .collect();
    let pass = records.iter().all(|r| r.pass);
    VerifyReport {
        seed: config.seed,
        records,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_qbf;

    #[test]
    fn universal_p1_record() {
        let r = check_instance(
            0,
            &parse_qbf("A p1 . p1").unwrap(),
            &VerifyConfig::default(),
        );
        assert!(!r.is_true_qbf);
        assert_eq!((r.star, r.alpha), (Verdict::Unsat, Verdict::Unsat));
        assert!(r.pass);
        assert_eq!(r.tree_model_ok, None);
    }

    #[test]
    fn existential_p1_record() {
        let r = check_instance(
            0,
            &parse_qbf("E p1 . p1").unwrap(),
            &VerifyConfig::default(),
        );
        assert!(r.is_true_qbf);
        assert_eq!((r.star, r.alpha), (Verdict::Sat, Verdict::Sat));
        assert_eq!(r.tree_model_ok, Some(true));
        assert_eq!(r.extended_model_ok, Some(true));
        assert_eq!(r.equivalence_violations, Some(0));
        assert!(r.pass);
    }

    #[test]
    fn small_exhaustive_run_passes_and_is_deterministic() {
        let config = VerifyConfig {
            n_max: 1,
            exhaustive_size: 3,
            ..VerifyConfig::default()
        };
        let a = run_verify(&config);
        assert_eq!(a.records.len(), 28);
        assert!(a.pass, "{:?}", a.failures().next());
        assert_eq!(a.to_jsonl(), run_verify(&config).to_jsonl());
    }
}
