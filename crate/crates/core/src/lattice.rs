//! The cross section lattice: admissible node sets of a Coxeter graph
//! relative to a distinguished subset `J0`, ordered by inclusion.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{CoxeterGraph, NodeSet};
use crate::poset::{FinitePoset, Lattice, PosetError};

/// Largest graph enumerated by [`CrossSectionLattice::enumerate`].
pub const DEFAULT_NODE_CAP: usize = 24;

/// Largest lattice converted into a [`FinitePoset`]; the order matrix is
/// quadratic in the element count.
pub const POSET_ELEMENT_CAP: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("graph has {nodes} nodes, above the enumeration cap of {cap}")]
    NodeCap { nodes: usize, cap: usize },
    #[error("lattice has {size} elements, above the cap of {cap}")]
    ElementCap { size: usize, cap: usize },
    #[error("J0 = {j0} is not a subset of the {n} graph nodes")]
    J0OutOfRange { j0: NodeSet, n: usize },
    #[error("{0} is not an element of the lattice")]
    NotMember(NodeSet),
    #[error("empty interval: {0} is not contained in {1}")]
    EmptyInterval(NodeSet, NodeSet),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// True when no connected component of `u` lies inside `j0`.
pub fn is_admissible(g: &CoxeterGraph, j0: NodeSet, u: NodeSet) -> bool {
    let mut rest = u;
    while let Some(node) = rest.min_node() {
        let block = g.component_of(u, node);
        if block.is_subset(j0) {
            return false;
        }
        rest = rest.difference(block);
    }
    true
}

#[derive(Clone)]
pub struct CrossSectionLattice {
    graph: CoxeterGraph,
    j0: NodeSet,
    elements: Vec<NodeSet>,
    index: HashMap<NodeSet, usize>,
}

impl std::fmt::Debug for CrossSectionLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CrossSectionLattice")
            .field("graph", &self.graph)
            .field("j0", &self.j0)
            .field("size", &self.elements.len())
            .finish()
    }
}

impl CrossSectionLattice {
    pub fn enumerate(graph: &CoxeterGraph, j0: NodeSet) -> Result<Self, LatticeError> {
        Self::enumerate_with_cap(graph, j0, DEFAULT_NODE_CAP)
    }

    /// Filters all `2^n` subsets by the component test.
    pub fn enumerate_with_cap(
        graph: &CoxeterGraph,
        j0: NodeSet,
        node_cap: usize,
    ) -> Result<Self, LatticeError> {
        let n = graph.node_count();
        if n > node_cap {
            return Err(LatticeError::NodeCap { nodes: n, cap: node_cap });
        }
        if !graph.contains_set(j0) {
            return Err(LatticeError::J0OutOfRange { j0, n });
        }
        let mut elements: Vec<NodeSet> = (0..1u64 << n)
            .map(NodeSet::from_bits)
            .filter(|&u| is_admissible(graph, j0, u))
            .collect();
        elements.sort_by_key(|u| (u.len(), u.bits()));
        let index = elements.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        Ok(CrossSectionLattice {
            graph: graph.clone(),
            j0,
            elements,
            index,
        })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn j0(&self) -> NodeSet {
        self.j0
    }

    pub fn elements(&self) -> &[NodeSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, u: NodeSet) -> Option<usize> {
        self.index.get(&u).copied()
    }

    pub fn contains(&self, u: NodeSet) -> bool {
        self.index.contains_key(&u)
    }

    fn member(&self, u: NodeSet) -> Result<usize, LatticeError> {
        self.index_of(u).ok_or(LatticeError::NotMember(u))
    }

    /// The full node set is inadmissible, so there is no top element above
    /// the bottom (e.g. `J0` is the whole of a connected graph).
    pub fn is_degenerate(&self) -> bool {
        !self.contains(self.graph.nodes())
    }

    pub fn top(&self) -> Option<NodeSet> {
        let full = self.graph.nodes();
        self.contains(full).then_some(full)
    }

    pub fn leq(&self, u: NodeSet, v: NodeSet) -> Result<bool, LatticeError> {
        self.member(u)?;
        self.member(v)?;
        Ok(u.is_subset(v))
    }

    pub fn join(&self, u: NodeSet, v: NodeSet) -> Result<NodeSet, LatticeError> {
        self.member(u)?;
        self.member(v)?;
        Ok(u.union(v))
    }

    /// Keeps the components of `u ∩ v` that are not inside `J0`.
    pub fn meet(&self, u: NodeSet, v: NodeSet) -> Result<NodeSet, LatticeError> {
        self.member(u)?;
        self.member(v)?;
        Ok(self
            .graph
            .connected_components(u.intersection(v))
            .into_iter()
            .filter(|block| !block.is_subset(self.j0))
            .fold(NodeSet::EMPTY, NodeSet::union))
    }

    /// Admissible one-node extensions of `u`, by increasing added node.
    pub fn covers(&self, u: NodeSet) -> Result<Vec<NodeSet>, LatticeError> {
        self.member(u)?;
        Ok(self
            .graph
            .nodes()
            .difference(u)
            .iter()
            .map(|a| u.with(a))
            .filter(|&v| self.contains(v))
            .collect())
    }

    pub fn rank(&self, u: NodeSet) -> Result<usize, LatticeError> {
        self.member(u)?;
        Ok(u.len())
    }

    /// Singletons outside `J0`.
    pub fn atoms(&self) -> Vec<NodeSet> {
        self.elements
            .iter()
            .copied()
            .filter(|u| u.len() == 1)
            .collect()
    }

    pub fn interval_elements(&self, u: NodeSet, v: NodeSet) -> Result<Vec<NodeSet>, LatticeError> {
        self.member(u)?;
        self.member(v)?;
        if !u.is_subset(v) {
            return Err(LatticeError::EmptyInterval(u, v));
        }
        Ok(self
            .elements
            .iter()
            .copied()
            .filter(|w| u.is_subset(*w) && w.is_subset(v))
            .collect())
    }

    /// The closed interval `[u, v]` as a labelled poset.
    pub fn interval(&self, u: NodeSet, v: NodeSet) -> Result<FinitePoset, LatticeError> {
        let members = self.interval_elements(u, v)?;
        Ok(labelled_inclusion_poset(members))
    }

    /// The whole lattice as a labelled poset, element `i` being
    /// `elements()[i]`.
    pub fn to_poset(&self) -> Result<FinitePoset, LatticeError> {
        if self.len() > POSET_ELEMENT_CAP {
            return Err(LatticeError::ElementCap {
                size: self.len(),
                cap: POSET_ELEMENT_CAP,
            });
        }
        Ok(labelled_inclusion_poset(self.elements.clone()))
    }

    /// The poset with join and meet tables computed from the order alone.
    pub fn to_lattice(&self) -> Result<Lattice, LatticeError> {
        Ok(Lattice::new(self.to_poset()?)?)
    }

    /// One line per element: rank, hex bitmask, members.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for u in &self.elements {
            let _ = writeln!(out, "{} {:#x} {}", u.len(), u.bits(), u);
        }
        out
    }
}

fn labelled_inclusion_poset(members: Vec<NodeSet>) -> FinitePoset {
    FinitePoset::from_leq(members.len(), |a, b| members[a].is_subset(members[b]))
        .expect("inclusion is a partial order")
        .with_labels(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> CoxeterGraph {
        CoxeterGraph::path('A', n).unwrap()
    }

    fn set(nodes: &[usize]) -> NodeSet {
        NodeSet::from_nodes(nodes.iter().copied())
    }

    #[test]
    fn admissibility() {
        let g = path(8);
        // the component {3} lies in J0
        assert!(!is_admissible(&g, set(&[3, 6, 7]), set(&[3, 5, 6, 7])));
        assert!(is_admissible(&g, set(&[3, 6, 7]), NodeSet::EMPTY));
        let g3 = path(3);
        assert!(!is_admissible(&g3, set(&[2]), set(&[2])));
        assert!(is_admissible(&g3, set(&[2]), set(&[1, 2])));
    }

    #[test]
    fn enumeration() {
        let l = CrossSectionLattice::enumerate(&path(3), set(&[2])).unwrap();
        let expected: Vec<NodeSet> = ["{}", "{1}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(l.elements(), &expected[..]);
        assert_eq!(CrossSectionLattice::enumerate(&path(2), NodeSet::EMPTY).unwrap().len(), 4);
        assert_eq!(CrossSectionLattice::enumerate(&path(5), set(&[1, 2, 5])).unwrap().len(), 12);
        assert!(matches!(
            CrossSectionLattice::enumerate_with_cap(&path(10), NodeSet::EMPTY, 8),
            Err(LatticeError::NodeCap { .. })
        ));
        assert!(matches!(
            CrossSectionLattice::enumerate(&path(3), set(&[4])),
            Err(LatticeError::J0OutOfRange { .. })
        ));
    }

    #[test]
    fn order_and_operations() {
        let l = CrossSectionLattice::enumerate(&path(3), set(&[2])).unwrap();
        assert_eq!(l.join(set(&[1, 2]), set(&[2, 3])).unwrap(), set(&[1, 2, 3]));
        assert_eq!(l.join(set(&[1]), set(&[3])).unwrap(), set(&[1, 3]));
        assert_eq!(l.meet(set(&[1, 2]), set(&[2, 3])).unwrap(), NodeSet::EMPTY);
        assert_eq!(l.meet(set(&[1, 2]), set(&[1, 2])).unwrap(), set(&[1, 2]));
        assert!(!l.leq(set(&[1]), set(&[3])).unwrap());
        assert!(l.leq(NodeSet::EMPTY, set(&[2, 3])).unwrap());
        assert_eq!(l.leq(set(&[2]), set(&[2, 3])), Err(LatticeError::NotMember(set(&[2]))));
        assert_eq!(l.covers(NodeSet::EMPTY).unwrap(), vec![set(&[1]), set(&[3])]);
        assert!(l.covers(set(&[1, 2, 3])).unwrap().is_empty());
        assert_eq!(l.atoms(), vec![set(&[1]), set(&[3])]);
        assert_eq!(l.rank(set(&[1, 2, 3])).unwrap(), 3);
    }

    #[test]
    fn covers_in_larger_example() {
        let l = CrossSectionLattice::enumerate(&path(8), set(&[3, 6, 7])).unwrap();
        let covers = l.covers(set(&[5])).unwrap();
        assert!(!covers.contains(&set(&[3, 5])));
        assert!(!covers.contains(&set(&[5, 7])));
        for a in [1, 2, 4, 6, 8] {
            assert!(covers.contains(&set(&[5, a])), "missing {{5,{a}}}");
        }
        assert_eq!(l.rank(set(&[1, 2, 3, 7, 8])).unwrap(), 5);
    }

    #[test]
    fn intervals() {
        let l = CrossSectionLattice::enumerate(&path(8), set(&[3, 6, 7])).unwrap();
        let i = l.interval(set(&[7, 8]), set(&[1, 2, 3, 7, 8])).unwrap();
        assert_eq!(i.size(), 6);
        let irr: Vec<NodeSet> = i
            .join_irreducibles()
            .into_iter()
            .map(|x| i.label(x).unwrap())
            .collect();
        // the non-atom join irreducible adds the pair {2,3}; {1,2,7,8} covers
        // both {1,7,8} and {2,7,8}
        assert!(irr.contains(&set(&[2, 3, 7, 8])));
        assert!(!irr.contains(&set(&[1, 2, 7, 8])));
        let single = l.interval(set(&[7, 8]), set(&[7, 8])).unwrap();
        assert_eq!(single.size(), 1);
        assert!(matches!(
            l.interval(set(&[1]), set(&[2, 3, 4])),
            Err(LatticeError::EmptyInterval(..))
        ));
        assert_eq!(l.interval(NodeSet::EMPTY, l.top().unwrap()).unwrap().size(), l.len());
    }

    #[test]
    fn degenerate_configurations() {
        let l = CrossSectionLattice::enumerate(&path(3), set(&[1, 2, 3])).unwrap();
        assert!(l.is_degenerate());
        assert_eq!(l.elements(), &[NodeSet::EMPTY]);
        assert!(!CrossSectionLattice::enumerate(&path(3), set(&[1, 2])).unwrap().is_degenerate());
    }

    #[test]
    fn dump_format() {
        let l = CrossSectionLattice::enumerate(&path(2), NodeSet::EMPTY).unwrap();
        assert_eq!(l.dump(), "0 0x0 {}\n1 0x1 {1}\n1 0x2 {2}\n2 0x3 {1,2}\n");
    }
}
