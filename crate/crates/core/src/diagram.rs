//! Coxeter graphs and node subsets.
//!
//! Nodes are labeled `1..=n` and a [`NodeSet`] packs a subset of them into a
//! single machine word, so graphs are limited to [`MAX_NODES`] nodes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest node count a [`CoxeterGraph`] can hold.
pub const MAX_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid graph size {size}: {reason}")]
    InvalidSize { size: usize, reason: &'static str },
    #[error("invalid edge {0}-{1}")]
    InvalidEdge(usize, usize),
    #[error("node {node} is outside 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// A subset of graph nodes. Bit `i - 1` stands for node `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_NODES);
        if n == MAX_NODES {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(node: usize) -> Self {
        assert!((1..=MAX_NODES).contains(&node), "node {node} out of range");
        NodeSet(1u64 << (node - 1))
    }

    /// Panics on labels outside `1..=64`; use [`NodeSet::try_from_nodes`]
    /// for untrusted input.
    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        nodes
            .into_iter()
            .fold(NodeSet::EMPTY, |acc, v| acc.with(v))
    }

    pub fn try_from_nodes<I: IntoIterator<Item = usize>>(
        nodes: I,
        n: usize,
    ) -> Result<Self, DiagramError> {
        let mut set = NodeSet::EMPTY;
        for node in nodes {
            if node == 0 || node > n {
                return Err(DiagramError::NodeOutOfRange { node, n });
            }
            set = set.with(node);
        }
        Ok(set)
    }

    pub fn contains(self, node: usize) -> bool {
        (1..=MAX_NODES).contains(&node) && self.0 & (1u64 << (node - 1)) != 0
    }

    #[must_use]
    pub fn with(self, node: usize) -> Self {
        self.union(NodeSet::singleton(node))
    }

    #[must_use]
    pub fn without(self, node: usize) -> Self {
        self.difference(NodeSet::singleton(node))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: NodeSet) -> bool {
        self.0 & other.0 == 0
    }

    #[must_use]
    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    /// Smallest node label, if any.
    pub fn min_node(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max_node(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Node labels in increasing order.
    pub fn iter(self) -> Nodes {
        Nodes(self.0)
    }

    /// Every subset of `self`, starting from the empty set.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(NodeSet(cur))
        })
    }
}

pub struct Nodes(u64);

impl Iterator for Nodes {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Nodes {}

impl IntoIterator for NodeSet {
    type Item = usize;
    type IntoIter = Nodes;

    fn into_iter(self) -> Nodes {
        self.iter()
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::from_nodes(iter)
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        f.pad(&format!("{{{}}}", members.join(",")))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `{1,2,5}`, `1,2,5`, `{}` or the empty string.
impl FromStr for NodeSet {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DiagramError::Parse {
            what: "node set",
            input: s.to_string(),
        };
        let t = s.trim();
        let inner = match (t.strip_prefix('{'), t.ends_with('}')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => t,
            _ => return Err(err()),
        };
        let mut set = NodeSet::EMPTY;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let v: usize = part.parse().map_err(|_| err())?;
            if v == 0 || v > MAX_NODES {
                return Err(err());
            }
            set = set.with(v);
        }
        Ok(set)
    }
}

/// Family tag of a diagram. Types A, B and C share the path graph; the tag
/// is kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagramKind {
    PathA,
    PathB,
    PathC,
    Cycle,
    Custom,
}

impl DiagramKind {
    pub fn is_path(self) -> bool {
        matches!(self, DiagramKind::PathA | DiagramKind::PathB | DiagramKind::PathC)
    }

    pub fn letter(self) -> Option<char> {
        match self {
            DiagramKind::PathA => Some('A'),
            DiagramKind::PathB => Some('B'),
            DiagramKind::PathC => Some('C'),
            _ => None,
        }
    }
}

/// A finite simple graph on nodes `1..=n`; adjacency records pairs of
/// non-commuting simple reflections.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    kind: DiagramKind,
    // neighbors[i] is the neighbourhood of node i + 1
    neighbors: Vec<NodeSet>,
}

impl CoxeterGraph {
    pub fn path(letter: char, n: usize) -> Result<Self, DiagramError> {
        let kind = match letter.to_ascii_uppercase() {
            'A' => DiagramKind::PathA,
            'B' => DiagramKind::PathB,
            'C' => DiagramKind::PathC,
            _ => {
                return Err(DiagramError::Parse {
                    what: "path type letter",
                    input: letter.to_string(),
                })
            }
        };
        Self::path_of_kind(kind, n)
    }

    pub fn path_of_kind(kind: DiagramKind, n: usize) -> Result<Self, DiagramError> {
        assert!(kind.is_path(), "{kind:?} is not a path family");
        check_size(n, 1)?;
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Ok(Self::from_edges(kind, n, &edges))
    }

    pub fn cycle(n: usize) -> Result<Self, DiagramError> {
        check_size(n, 3)?;
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((n, 1));
        Ok(Self::from_edges(DiagramKind::Cycle, n, &edges))
    }

    pub fn custom(n: usize, edges: &[(usize, usize)]) -> Result<Self, DiagramError> {
        check_size(n, 1)?;
        for &(a, b) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(DiagramError::InvalidEdge(a, b));
            }
        }
        Ok(Self::from_edges(DiagramKind::Custom, n, edges))
    }

    fn from_edges(kind: DiagramKind, n: usize, edges: &[(usize, usize)]) -> Self {
        let mut neighbors = vec![NodeSet::EMPTY; n];
        for &(a, b) in edges {
            neighbors[a - 1] = neighbors[a - 1].with(b);
            neighbors[b - 1] = neighbors[b - 1].with(a);
        }
        CoxeterGraph { kind, neighbors }
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.node_count())
    }

    pub fn neighbors(&self, node: usize) -> NodeSet {
        self.neighbors[node - 1]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors(node).len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).contains(b)
    }

    /// Sorted edge list with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.node_count())
            .flat_map(|a| {
                self.neighbors(a)
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// Union of the neighbourhoods of all nodes in `s`.
    pub fn neighborhood(&self, s: NodeSet) -> NodeSet {
        s.iter()
            .fold(NodeSet::EMPTY, |acc, v| acc.union(self.neighbors(v)))
    }

    pub fn contains_set(&self, s: NodeSet) -> bool {
        s.is_subset(self.nodes())
    }

    /// Splits `s` into the vertex sets of the connected components of the
    /// induced subgraph, ordered by smallest member.
    pub fn connected_components(&self, s: NodeSet) -> Vec<NodeSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(start) = rest.min_node() {
            let block = self.component_of(rest, start);
            rest = rest.difference(block);
            out.push(block);
        }
        out
    }

    /// The component of `s` containing `node` (which must lie in `s`).
    pub fn component_of(&self, s: NodeSet, node: usize) -> NodeSet {
        debug_assert!(s.contains(node));
        let mut block = NodeSet::singleton(node);
        let mut frontier = block;
        while !frontier.is_empty() {
            let grown = self.neighborhood(frontier).intersection(s);
            frontier = grown.difference(block);
            block = block.union(grown);
        }
        block
    }

    pub fn is_connected_subset(&self, s: NodeSet) -> bool {
        match s.min_node() {
            None => true,
            Some(v) => self.component_of(s, v) == s,
        }
    }

    /// Nodes of degree exactly one.
    pub fn end_nodes(&self) -> NodeSet {
        (1..=self.node_count())
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_subset(self.nodes())
    }
}

fn check_size(n: usize, min: usize) -> Result<(), DiagramError> {
    if n < min {
        return Err(DiagramError::InvalidSize {
            size: n,
            reason: if min == 1 {
                "need at least one node"
            } else {
                "a cycle needs at least three nodes"
            },
        });
    }
    if n > MAX_NODES {
        return Err(DiagramError::InvalidSize {
            size: n,
            reason: "more than 64 nodes",
        });
    }
    Ok(())
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph({self})")
    }
}

/// Renders the graph literal accepted by [`FromStr`].
impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.node_count();
        match self.kind {
            DiagramKind::Cycle => write!(f, "cycle {n}"),
            DiagramKind::Custom => {
                write!(f, "custom {n}:")?;
                for (i, (a, b)) in self.edges().into_iter().enumerate() {
                    let sep = if i == 0 { " " } else { "," };
                    write!(f, "{sep}{a}-{b}")?;
                }
                Ok(())
            }
            kind => write!(f, "path {} {n}", kind.letter().unwrap()),
        }
    }
}

/// Graph literals: `path A 5`, `cycle 6`, `custom 4: 1-2,2-3,3-4`.
impl FromStr for CoxeterGraph {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DiagramError::Parse {
            what: "graph literal",
            input: s.to_string(),
        };
        let t = s.trim();
        let (head, tail) = t.split_once(char::is_whitespace).ok_or_else(err)?;
        match head.to_ascii_lowercase().as_str() {
            "path" => {
                let mut words = tail.split_whitespace();
                let letter = words.next().ok_or_else(err)?;
                let n = words.next().ok_or_else(err)?.parse().map_err(|_| err())?;
                if words.next().is_some() || letter.chars().count() != 1 {
                    return Err(err());
                }
                CoxeterGraph::path(letter.chars().next().unwrap(), n)
            }
            "cycle" => CoxeterGraph::cycle(tail.trim().parse().map_err(|_| err())?),
            "custom" => {
                let (count, edge_list) = tail.split_once(':').unwrap_or((tail, ""));
                let n = count.trim().parse().map_err(|_| err())?;
                let mut edges = Vec::new();
                for item in edge_list.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                    let (a, b) = item.split_once('-').ok_or_else(err)?;
                    let a = a.trim().parse().map_err(|_| err())?;
                    let b = b.trim().parse().map_err(|_| err())?;
                    edges.push((a, b));
                }
                CoxeterGraph::custom(n, &edges)
            }
            _ => Err(err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(nodes: &[usize]) -> NodeSet {
        NodeSet::from_nodes(nodes.iter().copied())
    }

    #[test]
    fn path_diagrams() {
        let a4 = CoxeterGraph::path('A', 4).unwrap();
        assert_eq!(a4.edges(), vec![(1, 2), (2, 3), (3, 4)]);
        let a1 = CoxeterGraph::path('A', 1).unwrap();
        assert!(a1.edges().is_empty());
        let b4 = CoxeterGraph::path('B', 4).unwrap();
        assert_eq!(b4.edges(), a4.edges());
        assert_eq!(b4.kind(), DiagramKind::PathB);
        assert!(matches!(
            CoxeterGraph::path('A', 0),
            Err(DiagramError::InvalidSize { size: 0, .. })
        ));
        assert!(CoxeterGraph::path('A', 65).is_err());
    }

    #[test]
    fn cycle_diagrams() {
        let c3 = CoxeterGraph::cycle(3).unwrap();
        assert_eq!(c3.edges(), vec![(1, 2), (1, 3), (2, 3)]);
        let c5 = CoxeterGraph::cycle(5).unwrap();
        assert!(c5.adjacent(5, 1));
        let c4 = CoxeterGraph::cycle(4).unwrap();
        assert!((1..=4).all(|v| c4.degree(v) == 2));
        assert!(CoxeterGraph::cycle(2).is_err());
    }

    #[test]
    fn custom_graphs() {
        let g = CoxeterGraph::custom(4, &[(1, 2), (2, 3), (3, 4), (2, 1)]).unwrap();
        assert_eq!(g.edges(), CoxeterGraph::path('A', 4).unwrap().edges());
        let empty = CoxeterGraph::custom(3, &[]).unwrap();
        assert_eq!(empty.end_nodes(), NodeSet::EMPTY);
        assert_eq!(empty.connected_components(empty.nodes()).len(), 3);
        let sq = CoxeterGraph::custom(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert_eq!(sq.edges(), CoxeterGraph::cycle(4).unwrap().edges());
        assert_eq!(
            CoxeterGraph::custom(3, &[(1, 1)]),
            Err(DiagramError::InvalidEdge(1, 1))
        );
        assert_eq!(
            CoxeterGraph::custom(3, &[(1, 4)]),
            Err(DiagramError::InvalidEdge(1, 4))
        );
    }

    #[test]
    fn components() {
        let p8 = CoxeterGraph::path('A', 8).unwrap();
        assert_eq!(
            p8.connected_components(set(&[3, 5, 6, 7])),
            vec![set(&[3]), set(&[5, 6, 7])]
        );
        assert!(p8.connected_components(NodeSet::EMPTY).is_empty());
        let c5 = CoxeterGraph::cycle(5).unwrap();
        assert_eq!(c5.connected_components(set(&[1, 2, 5])), vec![set(&[1, 2, 5])]);
    }

    #[test]
    fn connectivity_and_end_nodes() {
        let p5 = CoxeterGraph::path('A', 5).unwrap();
        assert!(p5.is_connected_subset(set(&[1, 2, 3])));
        assert!(!p5.is_connected_subset(set(&[1, 3])));
        assert!(p5.is_connected_subset(NodeSet::EMPTY));
        assert_eq!(p5.end_nodes(), set(&[1, 5]));
        assert_eq!(CoxeterGraph::cycle(5).unwrap().end_nodes(), NodeSet::EMPTY);
        assert_eq!(CoxeterGraph::path('A', 1).unwrap().end_nodes(), NodeSet::EMPTY);
    }

    #[test]
    fn literals() {
        for lit in ["path A 5", "path C 3", "cycle 6", "custom 4: 1-2,2-3,3-4"] {
            let g: CoxeterGraph = lit.parse().unwrap();
            assert_eq!(g.to_string(), lit);
        }
        assert!("path Q 3".parse::<CoxeterGraph>().is_err());
        assert!("cycle x".parse::<CoxeterGraph>().is_err());
        assert!("custom 3: 1-5".parse::<CoxeterGraph>().is_err());
        assert_eq!("custom 2".parse::<CoxeterGraph>().unwrap().edges(), vec![]);

        assert_eq!("{1,2,5}".parse::<NodeSet>().unwrap(), set(&[1, 2, 5]));
        assert_eq!("{}".parse::<NodeSet>().unwrap(), NodeSet::EMPTY);
        assert_eq!(" 3, 1 ".parse::<NodeSet>().unwrap(), set(&[1, 3]));
        assert!("{1,x}".parse::<NodeSet>().is_err());
        assert!("{0}".parse::<NodeSet>().is_err());
        assert_eq!(set(&[5, 1, 2]).to_string(), "{1,2,5}");
    }

    #[test]
    fn subset_iteration() {
        let s = set(&[2, 4, 7]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(NodeSet::EMPTY.subsets().count(), 1);
    }
}
