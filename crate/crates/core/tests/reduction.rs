use wgrz_core::corpus::{exhaustive_single_quantifier, random_prenex};
use wgrz_core::formula::{parse_qbf, ModalFormula, QbfFormula};
use wgrz_core::kripke::{
    constant_truth_set, holds_at_root, model_to_json, ClosureMode, FrameClass, GadgetPart, WorldId,
};
use wgrz_core::qbf::is_true_qbf;
use wgrz_core::reduction::{
    alpha, alpha_substitution, encode_alpha, encode_star, extend_model, frame_fm, quantifier_tree,
};
use wgrz_core::solver::{sat_bounded, sat_k_tableau};

fn q(text: &str) -> QbfFormula {
    parse_qbf(text).unwrap()
}

fn small_corpus() -> Vec<QbfFormula> {
    let mut fs = exhaustive_single_quantifier(5);
    fs.extend(random_prenex(11, 60, 2..=2, 9));
    fs
}

#[test]
fn existential_star_has_small_model() {
    let (star, _) = encode_star(&q("E p1 . p1")).unwrap();
    assert!(sat_bounded(&star, 4).unwrap().is_sat());
    assert!(sat_k_tableau(&star).unwrap().is_sat());
}

#[test]
fn universal_star_is_unsatisfiable() {
    let (star, _) = encode_star(&q("A p1 . p1")).unwrap();
    assert!(!sat_k_tableau(&star).unwrap().is_sat());
    assert!(!sat_bounded(&star, 4).unwrap().is_sat());
}

#[test]
fn constant_encodings_of_single_quantifiers() {
    let sat = encode_alpha(&q("E p1 . p1")).unwrap();
    let unsat = encode_alpha(&q("A p1 . p1")).unwrap();
    assert!(sat.is_constant() && unsat.is_constant());
    assert!(sat_k_tableau(&sat).unwrap().is_sat());
    assert!(!sat_k_tableau(&unsat).unwrap().is_sat());
}

#[test]
fn both_build_paths_agree() {
    for f in small_corpus() {
        let (star, ctx) = encode_star(&f).unwrap();
        let composed = star.substitute(&alpha_substitution(ctx.var_count()));
        assert_eq!(composed, encode_alpha(&f).unwrap(), "{f}");
    }
}

#[test]
fn six_conjuncts_with_listed_radii() {
    for f in small_corpus() {
        let (star, ctx) = encode_star(&f).unwrap();
        let ModalFormula::And(parts) = &star else {
            panic!("{f}")
        };
        assert_eq!(parts.len(), 6);
        let n = ctx.n();
        assert!(matches!(parts[1], ModalFormula::BoxUpTo(r, _) if r == n));
        for p in &parts[2..5] {
            assert!(matches!(p, ModalFormula::BoxUpTo(r, _) if *r == n - 1));
        }
        assert!(matches!(parts[5], ModalFormula::BoxPow(r, _) if r == n));
    }
}

#[test]
fn tree_closures_satisfy_star_in_their_classes() {
    let cases = [
        (ClosureMode::Transitive, FrameClass::Gl),
        (ClosureMode::ReflexiveTransitive, FrameClass::Grz),
        (ClosureMode::ReflexiveSymmetric, FrameClass::Ktb),
    ];
    for f in small_corpus().into_iter().filter(is_true_qbf) {
        let (tree, _) = quantifier_tree(&f).unwrap();
        let (star, _) = encode_star(&f).unwrap();
        assert!(holds_at_root(&tree, &star), "{f}");
        for (mode, class) in cases {
            assert!(tree.frame().close(mode).in_class(class), "{f}");
        }
    }
}

#[test]
fn tree_golden_json() {
    let (tree, _) = quantifier_tree(&q("A p1 . (p1 -> p1)")).unwrap();
    assert_eq!(
        model_to_json(&tree),
        concat!(
            r#"{"worlds":["base:L0:{}:#0","base:L1:{}:#1","base:L1:{1}:#2"],"#,
            r#""relation":[["base:L0:{}:#0","base:L1:{}:#1"],["base:L0:{}:#0","base:L1:{1}:#2"]],"#,
            r#""valuation":{"p1":["base:L1:{1}:#2"],"p2":["base:L0:{}:#0","base:L1:{}:#1","base:L1:{1}:#2"],"#,
            r#""p3":["base:L1:{}:#1","base:L1:{1}:#2"],"p4":[]},"root":"base:L0:{}:#0"}"#
        )
    );
}

#[test]
fn extended_model_world_count() {
    let f = q("E p1 . p1");
    let (tree, ctx) = quantifier_tree(&f).unwrap();
    let ext = extend_model(&tree, &ctx).unwrap();
    let mut expected = tree.frame().len();
    for w in 0..tree.frame().len() {
        for m in 1..=ctx.var_count() {
            if !tree.holds(m, w) {
                expected += m as usize + 2;
            }
        }
    }
    assert_eq!(ext.frame().len(), expected);
    assert_eq!(
        ext.frame().close(ClosureMode::Transitive),
        ext.frame().clone()
    );
    assert_eq!(ext.root_id(), tree.root_id());
}

#[test]
fn other_alphas_hold_throughout_attached_copies() {
    for f in [q("E p1 . p1"), q("A p1 . E p2 . (p1 -> p2)")] {
        let (tree, ctx) = quantifier_tree(&f).unwrap();
        let ext = extend_model(&tree, &ctx).unwrap();
        for k in 1..=ctx.var_count() {
            let truth = constant_truth_set(ext.frame(), &alpha(k).unwrap());
            for (w, id) in ext.frame().worlds().iter().enumerate() {
                if let WorldId::Gadget { m, .. } = id {
                    if *m != k {
                        assert!(truth[w], "{f}: alpha{k} at {id}");
                    }
                }
            }
        }
    }
}

#[test]
fn gadget_frames_label_worlds() {
    let fm = frame_fm(3).unwrap();
    let names: Vec<String> = fm.worlds().iter().map(|w| w.to_string()).collect();
    assert_eq!(
        names,
        [
            "gadget:m3:b",
            "gadget:m3:a0",
            "gadget:m3:a1",
            "gadget:m3:a2",
            "gadget:m3:a3"
        ]
    );
    let b = fm
        .index_of(&WorldId::gadget(3, GadgetPart::B, None))
        .unwrap();
    assert!(fm.has_edge(b, b));
    let a0 = fm
        .index_of(&WorldId::gadget(3, GadgetPart::A(0), None))
        .unwrap();
    assert!(!fm.has_edge(a0, a0));
}
