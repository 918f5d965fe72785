use std::collections::{BTreeSet, HashMap};

use super::world::WorldId;
use super::KripkeError;

/// A finite Kripke frame. Worlds are stored in insertion order and
/// addressed internally by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    worlds: Vec<WorldId>,
    index: HashMap<WorldId, usize>,
    succ: Vec<BTreeSet<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosureMode {
    Transitive,
    ReflexiveTransitive,
    ReflexiveSymmetric,
}

/// Finite-frame classes: GL frames are strict partial orders, Grz frames
/// partial orders, KTB frames reflexive symmetric relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameClass {
    Gl,
    Grz,
    Ktb,
}

impl Default for KripkeFrame {
    fn default() -> Self {
        Self::new()
    }
}

impl KripkeFrame {
    pub fn new() -> Self {
        KripkeFrame {
            worlds: Vec::new(),
            index: HashMap::new(),
            succ: Vec::new(),
        }
    }

    pub fn with_worlds(worlds: impl IntoIterator<Item = WorldId>) -> Result<Self, KripkeError> {
        let mut fr = KripkeFrame::new();
        for w in worlds {
            fr.add_world(w)?;
        }
        Ok(fr)
    }

    pub fn add_world(&mut self, w: WorldId) -> Result<usize, KripkeError> {
        if self.index.contains_key(&w) {
            return Err(KripkeError::DuplicateWorld(w.to_string()));
        }
        let i = self.worlds.len();
        self.index.insert(w.clone(), i);
        self.worlds.push(w);
        self.succ.push(BTreeSet::new());
        Ok(i)
    }

    /// Adds the edge `from → to` between world positions.
    pub fn add_edge(&mut self, from: usize, to: usize) {
        assert!(to < self.worlds.len(), "edge target out of range");
        self.succ[from].insert(to);
    }

    pub fn connect(&mut self, from: &WorldId, to: &WorldId) -> Result<(), KripkeError> {
        let a = self.position(from)?;
        let b = self.position(to)?;
        self.add_edge(a, b);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[WorldId] {
        &self.worlds
    }

    pub fn world(&self, i: usize) -> &WorldId {
        &self.worlds[i]
    }

    pub fn index_of(&self, w: &WorldId) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn position(&self, w: &WorldId) -> Result<usize, KripkeError> {
        self.index_of(w)
            .ok_or_else(|| KripkeError::UnknownWorld(w.to_string()))
    }

    pub fn successors(&self, i: usize) -> &BTreeSet<usize> {
        &self.succ[i]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.succ[from].contains(&to)
    }

    /// All edges ordered by source then target position.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    /// Smallest relation containing this one with the requested property.
    pub fn close(&self, mode: ClosureMode) -> KripkeFrame {
        let mut out = self.clone();
        match mode {
            ClosureMode::Transitive => out.succ = transitive_closure(&self.succ),
            ClosureMode::ReflexiveTransitive => {
                out.succ = transitive_closure(&self.succ);
                for (i, s) in out.succ.iter_mut().enumerate() {
                    s.insert(i);
                }
            }
            ClosureMode::ReflexiveSymmetric => {
                for (i, j) in self.edges() {
                    out.succ[j].insert(i);
                }
                for (i, s) in out.succ.iter_mut().enumerate() {
                    s.insert(i);
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.has_edge(i, i))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.len()).all(|i| !self.has_edge(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(i, j)| self.has_edge(j, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.edges().all(|(i, j)| i == j || !self.has_edge(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.edges()
            .all(|(i, j)| self.succ[j].iter().all(|k| self.has_edge(i, *k)))
    }

    pub fn in_class(&self, class: FrameClass) -> bool {
        match class {
            FrameClass::Gl => self.is_transitive() && self.is_irreflexive(),
            FrameClass::Grz => {
                self.is_reflexive() && self.is_transitive() && self.is_antisymmetric()
            }
            FrameClass::Ktb => self.is_reflexive() && self.is_symmetric(),
        }
    }

    /// Plain `digraph` text for Graphviz.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph frame {\n");
        for (i, w) in self.worlds.iter().enumerate() {
            s.push_str(&format!("  w{i} [label=\"{w}\"];\n"));
        }
        for (i, j) in self.edges() {
            s.push_str(&format!("  w{i} -> w{j};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub(crate) fn successor_lists(&self) -> &[BTreeSet<usize>] {
        &self.succ
    }
}

fn transitive_closure(succ: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::with_capacity(succ.len());
    for start in 0..succ.len() {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = succ[start].iter().copied().collect();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(succ[v].iter().copied().filter(|u| !seen.contains(u)));
            }
        }
        out.push(seen);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: usize) -> KripkeFrame {
        KripkeFrame::with_worlds((0..n).map(|i| WorldId::Named(format!("w{i}")))).unwrap()
    }

    #[test]
    fn chain_transitive_closure_adds_shortcut_only() {
        let mut fr = named(3);
        fr.add_edge(0, 1);
        fr.add_edge(1, 2);
        let t = fr.close(ClosureMode::Transitive);
        assert_eq!(t.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn empty_relation_reflexive_transitive_is_identity() {
        let fr = named(3).close(ClosureMode::ReflexiveTransitive);
        assert_eq!(fr.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn reflexive_symmetric_of_single_edge() {
        let mut fr = named(2);
        fr.add_edge(0, 1);
        let rs = fr.close(ClosureMode::ReflexiveSymmetric);
        assert_eq!(
            rs.edges().collect::<Vec<_>>(),
            vec![(0, 0), (0, 1), (1, 0), (1, 1)]
        );
    }

    #[test]
    fn strict_chain_is_gl() {
        let mut fr = named(3);
        fr.add_edge(0, 1);
        fr.add_edge(1, 2);
        let t = fr.close(ClosureMode::Transitive);
        assert!(t.in_class(FrameClass::Gl));
        assert!(!t.in_class(FrameClass::Grz));
        assert!(!t.in_class(FrameClass::Ktb));
    }

    #[test]
    fn duplicate_worlds_rejected() {
        let w = WorldId::Named("x".into());
        assert!(matches!(
            KripkeFrame::with_worlds([w.clone(), w]),
            Err(KripkeError::DuplicateWorld(_))
        ));
    }

    #[test]
    fn cycle_closure_is_not_antisymmetric() {
        let mut fr = named(2);
        fr.add_edge(0, 1);
        fr.add_edge(1, 0);
        let rt = fr.close(ClosureMode::ReflexiveTransitive);
        assert!(!rt.in_class(FrameClass::Grz));
        assert!(rt.in_class(FrameClass::Ktb));
    }
}
