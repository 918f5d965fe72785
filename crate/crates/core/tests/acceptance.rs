//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use wgrz_core::corpus::{exhaustive_single_quantifier, random_closed, random_modal, random_prenex};
use wgrz_core::formula::{ModalFormula, QbfFormula};
use wgrz_core::kripke::{
    frame_validates, holds_at_root, model_check, wgrz_axiom, ClosureMode, FrameClass, GadgetPart,
    KripkeModel, WorldId,
};
use wgrz_core::qbf::{is_true_qbf, negate_prenex, to_prenex};
use wgrz_core::reduction::{
    alpha, alpha_equivalence_violations, encode_alpha, encode_star, extend_model, frame_fm_plus,
    quantifier_tree,
};
use wgrz_core::solver::{sat_bounded, sat_k_tableau, SatVerdict};

const SEED: u64 = 2024;
const RANDOM_COUNT: usize = 240;

struct Report {
    failed: bool,
}

impl Report {
    fn line(&mut self, id: u32, ok: bool, detail: String) {
        self.failed |= !ok;
        println!(
            "criterion {id}: {} ({detail})",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn corpus() -> Vec<QbfFormula> {
    let mut fs = exhaustive_single_quantifier(5);
    fs.extend(random_prenex(SEED, RANDOM_COUNT, 2..=3, 9));
    fs
}

fn tableau_sat(f: &ModalFormula) -> Result<bool, String> {
    let v = sat_k_tableau(f).map_err(|e| e.to_string())?;
    if let Some(w) = v.witness() {
        if !holds_at_root(w, f) {
            return Err("witness does not check".into());
        }
    }
    Ok(v.is_sat())
}

fn first_failure<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<(), String> + Sync,
) -> Option<String> {
    items
        .par_iter()
        .map(|x| check(x).err())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

fn within(limit: Duration, t: Instant) -> (bool, String) {
    let e = t.elapsed();
    (
        e <= limit,
        format!("{:.2}s of {}s", e.as_secs_f64(), limit.as_secs()),
    )
}

fn criterion_1_2(report: &mut Report, fs: &[QbfFormula]) {
    let random = fs.iter().filter(|f| f.split_prefix().0.len() >= 2).count();
    for (id, limit, stage) in [(1, 300, "star"), (2, 900, "alpha")] {
        let t = Instant::now();
        let fail = first_failure(fs, |f| {
            let g = if stage == "star" {
                encode_star(f).unwrap().0
            } else {
                encode_alpha(f).unwrap()
            };
            if stage == "alpha" && !g.is_constant() {
                return Err(format!("{f}: encoding has variables"));
            }
            let sat = tableau_sat(&g).map_err(|e| format!("{f}: {e}"))?;
            if sat != is_true_qbf(f) {
                return Err(format!("{f}: truth {} but sat {sat}", is_true_qbf(f)));
            }
            Ok(())
        });
        let (fast, time) = within(Duration::from_secs(limit), t);
        let detail = match &fail {
            None => format!("{} instances, {random} with n in 2..=3, {time}", fs.len()),
            Some(e) => e.clone(),
        };
        report.line(id, fail.is_none() && fast && random >= 200, detail);
    }
}

fn closures_in_class(tree: &KripkeModel) -> bool {
    let fr = tree.frame();
    fr.close(ClosureMode::Transitive).in_class(FrameClass::Gl)
        && fr
            .close(ClosureMode::ReflexiveTransitive)
            .in_class(FrameClass::Grz)
        && fr
            .close(ClosureMode::ReflexiveSymmetric)
            .in_class(FrameClass::Ktb)
}

fn criterion_3(report: &mut Report, truths: &[QbfFormula]) {
    let fail = first_failure(truths, |f| {
        let (tree, _) = quantifier_tree(f).map_err(|e| format!("{f}: {e}"))?;
        let (star, _) = encode_star(f).unwrap();
        if !model_check(&tree, tree.root_id(), &star).unwrap() {
            return Err(format!("{f}: tree refutes the encoding"));
        }
        if !closures_in_class(&tree) {
            return Err(format!("{f}: a closure leaves its frame class"));
        }
        Ok(())
    });
    report.line(
        3,
        fail.is_none(),
        fail.unwrap_or(format!("{} true instances", truths.len())),
    );
}

fn criterion_4(report: &mut Report, truths: &[QbfFormula]) {
    let small: Vec<&QbfFormula> = truths
        .iter()
        .filter(|f| f.split_prefix().0.len() <= 2)
        .collect();
    let fail = first_failure(&small, |f| {
        let (tree, ctx) = quantifier_tree(f).unwrap();
        let ext = extend_model(&tree, &ctx).map_err(|e| format!("{f}: {e}"))?;
        if !holds_at_root(&ext, &encode_alpha(f).unwrap().expand_sugar()) {
            return Err(format!("{f}: extended model refutes the constant encoding"));
        }
        let bad = alpha_equivalence_violations(&ext, ctx.var_count());
        if let Some(v) = bad.first() {
            return Err(format!(
                "{f}: equivalence fails for m = {} at {}",
                v.m, v.world
            ));
        }
        Ok(())
    });
    report.line(
        4,
        fail.is_none(),
        fail.unwrap_or(format!("{} true instances with n <= 2", small.len())),
    );
}

fn criterion_5(report: &mut Report) {
    let mut problems = Vec::new();
    for m in 1..=6u32 {
        let fr = frame_fm_plus(m).unwrap();
        for k in (1..=6u32).filter(|&k| k != m) {
            if !frame_validates(&fr, &alpha(k).unwrap(), 0)
                .unwrap()
                .is_valid()
            {
                problems.push(format!("alpha{k} fails on F{m}+"));
            }
        }
        let c = WorldId::gadget(m, GadgetPart::C, None);
        let root = KripkeModel::new(fr.clone(), &c).unwrap();
        if model_check(&root, &c, &alpha(m).unwrap()).unwrap() {
            problems.push(format!("alpha{m} holds at c of F{m}+"));
        }
        // one variable over at most 9 worlds: at most 2^9 valuations
        match frame_validates(&fr, &wgrz_axiom(), 9) {
            Ok(v) if v.is_valid() => {}
            other => problems.push(format!("wGrz axiom on F{m}+: {other:?}")),
        }
    }
    let ok = problems.is_empty();
    report.line(
        5,
        ok,
        if ok {
            "m, k in 1..=6".into()
        } else {
            problems.join("; ")
        },
    );
}

fn criterion_6(report: &mut Report, fs: &[QbfFormula]) {
    let c1 = alpha(1).unwrap().size();
    let alpha_ok = (1..=10).all(|m| alpha(m).unwrap().size() <= c1 * m as usize);
    let sizes: Vec<(usize, usize)> = fs
        .par_iter()
        .map(|f| {
            (
                encode_star(f).unwrap().0.size(),
                encode_alpha(f).unwrap().size(),
            )
        })
        .collect();
    let &(s0, a0) = sizes.iter().min_by_key(|(s, _)| *s).unwrap();
    // c2 = a0 / s0², compared without division
    let worst = sizes.iter().find(|&&(s, a)| a * s0 * s0 > a0 * s * s);
    let ok = alpha_ok && worst.is_none();
    let detail = match worst {
        None => format!("c1 = {c1}, c2 = {a0}/{}", s0 * s0),
        Some((s, a)) => format!("|star| = {s}, |alpha| = {a} exceeds c2 = {a0}/{}", s0 * s0),
    };
    report.line(
        6,
        ok,
        if alpha_ok {
            detail
        } else {
            format!("alpha size exceeds {c1}*m")
        },
    );
}

fn criterion_7(report: &mut Report) {
    let fs = random_modal(SEED, 200, 2, 12);
    let results: Vec<Result<(bool, bool), String>> = fs
        .par_iter()
        .map(|f| {
            let t: SatVerdict = sat_k_tableau(f).map_err(|e| format!("{f}: {e}"))?;
            let b = sat_bounded(f, 6).unwrap();
            for w in t.witness().into_iter().chain(b.witness()) {
                if !holds_at_root(w, f) {
                    return Err(format!("{f}: witness does not check"));
                }
            }
            if b.is_sat() && !t.is_sat() {
                return Err(format!("{f}: bounded sat, tableau unsat"));
            }
            if t.witness().is_some_and(|w| w.frame().len() <= 6) && !b.is_sat() {
                return Err(format!(
                    "{f}: tableau witness fits the bound, bounded unsat"
                ));
            }
            Ok((t.is_sat(), b.is_sat()))
        })
        .collect();
    let fail = results.iter().find_map(|r| r.as_ref().err().cloned());
    let sat = results
        .iter()
        .filter(|r| matches!(r, Ok((true, _))))
        .count();
    let conclusive = results
        .iter()
        .filter(|r| matches!(r, Ok((_, true))))
        .count();
    report.line(
        7,
        fail.is_none(),
        fail.unwrap_or(format!(
            "200 formulas, {sat} satisfiable, {conclusive} conclusive at bound 6"
        )),
    );
}

fn criterion_8(report: &mut Report) {
    let fs = random_closed(SEED, 600, 3, 9);
    let fail = first_failure(&fs, |f| {
        let p = to_prenex(f).map_err(|e| format!("{f}: {e}"))?;
        if !p.is_prenex() || is_true_qbf(&p) != is_true_qbf(f) {
            return Err(format!("{f}: prenex form {p} changes truth"));
        }
        let n = negate_prenex(&p).map_err(|e| format!("{p}: {e}"))?;
        if is_true_qbf(&n) == is_true_qbf(f) {
            return Err(format!("{p}: negation {n} keeps truth"));
        }
        Ok(())
    });
    report.line(
        8,
        fail.is_none(),
        fail.unwrap_or(format!("{} closed formulas", fs.len())),
    );
}

fn main() -> ExitCode {
    let mut report = Report { failed: false };
    let fs = corpus();
    let truths: Vec<QbfFormula> = fs.iter().filter(|f| is_true_qbf(f)).cloned().collect();
    criterion_1_2(&mut report, &fs);
    criterion_3(&mut report, &truths);
    criterion_4(&mut report, &truths);
    criterion_5(&mut report);
    criterion_6(&mut report, &fs);
    criterion_7(&mut report);
    criterion_8(&mut report);
    if report.failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
