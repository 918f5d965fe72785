use proptest::prelude::*;

use wgrz_core::formula::{
    parse_modal, parse_modal_sugared, parse_qbf, ModalFormula, QbfFormula, Substitution,
};
use wgrz_core::kripke::{truth_set, ClosureMode, KripkeFrame, KripkeModel, WorldId};
use wgrz_core::qbf::{
    evaluate, is_true_qbf, negate_prenex, to_prenex, universal_closure, QbfModel,
};

fn modal(depth: u32, sugar: bool) -> BoxedStrategy<ModalFormula> {
    use ModalFormula as M;
    let leaf = prop_oneof![(1u32..4).prop_map(M::Var), Just(M::Falsum), Just(M::Verum),];
    leaf.prop_recursive(depth, 64, 3, move |inner| {
        let mut options = vec![
            inner.clone().prop_map(M::not).boxed(),
            inner.clone().prop_map(M::boxed).boxed(),
            inner.clone().prop_map(M::dia).boxed(),
            prop::collection::vec(inner.clone(), 2..4)
                .prop_map(M::And)
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| M::or(a, b))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| M::implies(a, b))
                .boxed(),
        ];
        if sugar {
            options.extend([
                inner.clone().prop_map(M::box_plus).boxed(),
                (0u32..3, inner.clone())
                    .prop_map(|(n, a)| M::box_up_to(n, a))
                    .boxed(),
                (0u32..3, inner.clone())
                    .prop_map(|(n, a)| M::box_pow(n, a))
                    .boxed(),
                (0u32..3, inner.clone())
                    .prop_map(|(n, a)| M::dia_pow(n, a))
                    .boxed(),
            ]);
        }
        prop::strategy::Union::new(options)
    })
    .boxed()
}

fn qbf(depth: u32) -> impl Strategy<Value = QbfFormula> {
    use QbfFormula as Q;
    let leaf = prop_oneof![(1u32..4).prop_map(Q::Var), Just(Q::Falsum)];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Q::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Q::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Q::implies(a, b)),
            (1u32..4, inner.clone()).prop_map(|(i, a)| Q::forall(i, a)),
            (1u32..4, inner).prop_map(|(i, a)| Q::exists(i, a)),
        ]
    })
}

/// A model with `worlds` points, an arbitrary relation and valuation of
/// `p1..p3`.
fn small_model(max_worlds: usize) -> impl Strategy<Value = KripkeModel> {
    (1..=max_worlds).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n * n),
            prop::collection::vec(any::<bool>(), 3 * n),
            0..n,
        )
            .prop_map(move |(edges, vals, root)| {
                let ids: Vec<WorldId> = (0..n).map(|i| WorldId::Named(format!("w{i}"))).collect();
                let mut fr = KripkeFrame::with_worlds(ids.iter().cloned()).unwrap();
                for (k, &on) in edges.iter().enumerate() {
                    if on {
                        fr.add_edge(k / n, k % n);
                    }
                }
                let mut m = KripkeModel::new(fr, &ids[root]).unwrap();
                for (k, &on) in vals.iter().enumerate() {
                    if on {
                        m.set_true(k as u32 / n as u32 + 1, k % n);
                    }
                }
                m
            })
    })
}

fn with_valuation(m: &KripkeModel, flip: &[bool]) -> KripkeModel {
    let mut out = KripkeModel::new(m.frame().clone(), m.root_id()).unwrap();
    for (k, &on) in flip.iter().enumerate() {
        let w = k % m.frame().len();
        if on {
            out.set_true(k as u32 % 3 + 1, w);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn modal_round_trip(f in modal(8, false)) {
        prop_assert_eq!(parse_modal(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn sugared_round_trip(f in modal(6, true)) {
        prop_assert_eq!(parse_modal_sugared(&f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(parse_modal(&f.to_string()).unwrap(), f.expand_sugar());
    }

    #[test]
    fn qbf_round_trip(f in qbf(8)) {
        prop_assert_eq!(parse_qbf(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn sugar_preserves_truth(f in modal(4, true), m in small_model(4)) {
        prop_assert_eq!(truth_set(&m, &f), truth_set(&m, &f.expand_sugar()));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in modal(4, false), b in modal(4, false), g in modal(3, false)) {
        let s: Substitution = [(1, g)].into_iter().collect();
        let conj = ModalFormula::And(vec![a.clone(), b.clone()]);
        prop_assert_eq!(conj.substitute(&s), ModalFormula::And(vec![a.substitute(&s), b.substitute(&s)]));
        let imp = ModalFormula::implies(a.clone(), ModalFormula::dia(b.clone()));
        prop_assert_eq!(
            imp.substitute(&s),
            ModalFormula::implies(a.substitute(&s), ModalFormula::dia(b.substitute(&s)))
        );
        prop_assert_eq!(a.substitute(&Substitution::new()), a);
    }

    #[test]
    fn disjoint_substitutions_commute(f in modal(5, false), g in modal(3, false), h in modal(3, false)) {
        // g avoids p2, h avoids p1
        let g = g.substitute(&[(2, ModalFormula::Verum)].into_iter().collect());
        let h = h.substitute(&[(1, ModalFormula::Falsum)].into_iter().collect());
        let one: Substitution = [(1, g.clone())].into_iter().collect();
        let two: Substitution = [(2, h.clone())].into_iter().collect();
        let both: Substitution = [(1, g), (2, h)].into_iter().collect();
        prop_assert_eq!(f.substitute(&one).substitute(&two), f.substitute(&both));
    }

    #[test]
    fn substitution_size_bound(f in modal(5, true), g in modal(3, true), h in modal(3, true)) {
        let s: Substitution = [(1, g.clone()), (2, h.clone())].into_iter().collect();
        let widest = g.size().max(h.size()).max(1);
        prop_assert!(f.substitute(&s).size() <= f.size() * widest);
    }

    #[test]
    fn constant_formulas_ignore_valuations(
        f in modal(5, true),
        m in small_model(5),
        flip in prop::collection::vec(any::<bool>(), 15),
    ) {
        let c = f.substitute(&[(1, ModalFormula::Verum), (2, ModalFormula::Falsum), (3, ModalFormula::Verum)].into_iter().collect());
        prop_assert!(c.is_constant());
        prop_assert_eq!(truth_set(&m, &c), truth_set(&with_valuation(&m, &flip), &c));
    }

    #[test]
    fn closures_are_idempotent(m in small_model(6)) {
        for mode in [ClosureMode::Transitive, ClosureMode::ReflexiveTransitive, ClosureMode::ReflexiveSymmetric] {
            let once = m.frame().close(mode);
            prop_assert_eq!(once.close(mode), once.clone());
            for (i, j) in m.frame().edges() {
                prop_assert!(once.has_edge(i, j));
            }
        }
    }

    #[test]
    fn evaluation_ignores_bound_and_absent_variables(f in qbf(6), junk in 10u32..20) {
        let fv = wgrz_core::qbf::free_vars(&f);
        let m: QbfModel = fv.iter().copied().filter(|i| i % 2 == 1).collect();
        let mut wider = m.with(junk);
        for i in 1..4 {
            if !fv.contains(&i) {
                wider = wider.with(i);
            }
        }
        prop_assert_eq!(evaluate(&m, &f), evaluate(&wider, &f));
    }

    #[test]
    fn closure_truth(f in qbf(6)) {
        prop_assert_eq!(is_true_qbf(&f), is_true_qbf(&universal_closure(&f)));
    }

    #[test]
    fn prenexing_preserves_truth(f in qbf(6)) {
        let f = universal_closure(&f);
        let p = to_prenex(&f).unwrap();
        prop_assert!(p.is_prenex());
        prop_assert_eq!(is_true_qbf(&p), is_true_qbf(&f));
        prop_assert_eq!(f.split_prefix().0.len() <= p.split_prefix().0.len(), true);
        let twice = negate_prenex(&negate_prenex(&p).unwrap()).unwrap();
        prop_assert_eq!(is_true_qbf(&twice), is_true_qbf(&p));
    }
}
