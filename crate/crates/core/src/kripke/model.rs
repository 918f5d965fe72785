use std::collections::{BTreeMap, BTreeSet};

use super::frame::KripkeFrame;
use super::world::WorldId;
use super::KripkeError;

/// A pointed Kripke model: frame, valuation and distinguished root world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    frame: KripkeFrame,
    valuation: BTreeMap<u32, BTreeSet<usize>>,
    root: usize,
}

impl KripkeModel {
    pub fn new(frame: KripkeFrame, root: &WorldId) -> Result<Self, KripkeError> {
        let root = frame.position(root)?;
        Ok(KripkeModel {
            frame,
            valuation: BTreeMap::new(),
            root,
        })
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_id(&self) -> &WorldId {
        self.frame.world(self.root)
    }

    /// Makes variable `var` true at world position `w`.
    pub fn set_true(&mut self, var: u32, w: usize) {
        assert!(w < self.frame.len(), "world out of range");
        self.valuation.entry(var).or_default().insert(w);
    }

    /// Registers `var` in the valuation (possibly with an empty extension).
    pub fn declare(&mut self, var: u32) {
        self.valuation.entry(var).or_default();
    }

    pub fn holds(&self, var: u32, w: usize) -> bool {
        self.valuation.get(&var).is_some_and(|s| s.contains(&w))
    }

    pub fn valuation(&self) -> &BTreeMap<u32, BTreeSet<usize>> {
        &self.valuation
    }

    /// True when every variable true at a world stays true at all its
    /// successors.
    pub fn is_upward_persistent(&self) -> bool {
        self.valuation.values().all(|ext| {
            ext.iter()
                .all(|&w| self.frame.successors(w).iter().all(|v| ext.contains(v)))
        })
    }

    /// The submodel generated by the root (worlds reachable from it).
    pub fn generated_submodel(&self) -> KripkeModel {
        let mut order = vec![self.root];
        let mut seen = BTreeSet::from([self.root]);
        let mut k = 0;
        while k < order.len() {
            for &v in self.frame.successors(order[k]) {
                if seen.insert(v) {
                    order.push(v);
                }
            }
            k += 1;
        }
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut frame =
            KripkeFrame::with_worlds(order.iter().map(|&w| self.frame.world(w).clone()))
                .expect("ids are unique in the source frame");
        for &w in &order {
            for v in self.frame.successors(w) {
                frame.add_edge(pos[&w], pos[v]);
            }
        }
        let mut out = KripkeModel {
            frame,
            valuation: BTreeMap::new(),
            root: 0,
        };
        for (&var, ext) in &self.valuation {
            out.declare(var);
            for w in ext {
                if let Some(&i) = pos.get(w) {
                    out.set_true(var, i);
                }
            }
        }
        out
    }
}
