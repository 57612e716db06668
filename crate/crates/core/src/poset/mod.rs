//! Generic finite posets and lattices, with brute-force evaluations of the
//! standard order-theoretic properties.
//!
//! Nothing here knows about Coxeter graphs; these routines serve as the
//! independent ground truth the closed-form criteria are checked against.

mod iso;
mod polynomial;

use std::fmt;
use std::ops::Deref;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::NodeSet;

pub use iso::{find_isomorphism, isomorphic, MAX_ISO_SIZE};
pub use polynomial::CharPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("poset has no unique minimum")]
    NoBottom,
    #[error("poset has no unique maximum")]
    NoTop,
    #[error("poset is not graded")]
    Ungraded,
    #[error("poset is not a lattice: {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("lattice is not upper semimodular")]
    NotSemimodular,
    #[error("poset of size {size} exceeds the cap of {cap}")]
    SizeLimit { size: usize, cap: usize },
    #[error("expected a poset of rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("empty interval: {0} is not below {1}")]
    EmptyInterval(usize, usize),
    #[error("not a maximal chain: {0}")]
    NotMaximalChain(String),
}

/// A finite poset on elements `0..size`, stored as up- and down-set bitsets.
#[derive(Clone)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    // elements sorted by down-set size: a linear extension
    linear: Vec<usize>,
    labels: Option<Vec<NodeSet>>,
}

impl FinitePoset {
    /// Builds a poset from an order predicate, checking the partial order
    /// axioms.
    pub fn from_leq<F>(size: usize, leq: F) -> Result<Self, PosetError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for x in 0..size {
            for y in 0..size {
                if leq(x, y) {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        for x in 0..size {
            if !up[x].contains(x) {
                return Err(PosetError::NotAPartialOrder(format!("{x} is not <= itself")));
            }
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "{x} and {y} violate antisymmetry"
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "transitivity fails above {x} <= {y}"
                    )));
                }
            }
        }
        Ok(Self::from_sets(up, down))
    }

    /// Builds a poset as the reflexive-transitive closure of `x < y` pairs.
    pub fn from_relations(size: usize, less: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut succ = vec![Vec::new(); size];
        for &(a, b) in less {
            if a >= size || b >= size {
                return Err(PosetError::NotAPartialOrder(format!(
                    "pair ({a},{b}) out of range"
                )));
            }
            succ[a].push(b);
        }
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for start in 0..size {
            let mut stack = vec![start];
            up[start].insert(start);
            while let Some(v) = stack.pop() {
                for &w in &succ[v] {
                    if w == start {
                        return Err(PosetError::NotAPartialOrder(format!(
                            "cycle through {start}"
                        )));
                    }
                    if !up[start].put(w) {
                        stack.push(w);
                    }
                }
            }
        }
        Self::from_leq(size, |a, b| up[a].contains(b))
    }

    fn from_sets(up: Vec<FixedBitSet>, down: Vec<FixedBitSet>) -> Self {
        let size = up.len();
        let mut linear: Vec<usize> = (0..size).collect();
        linear.sort_by_key(|&x| (down[x].count_ones(..), x));
        let mut upper_covers = vec![Vec::new(); size];
        let mut lower_covers = vec![Vec::new(); size];
        for x in 0..size {
            for y in up[x].ones() {
                if y == x {
                    continue;
                }
                // y covers x iff [x, y] = {x, y}
                if up[x].intersection(&down[y]).take(3).count() == 2 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        FinitePoset {
            up,
            down,
            upper_covers,
            lower_covers,
            linear,
            labels: None,
        }
    }

    /// Chain with `elements` elements (length `elements - 1`).
    pub fn chain(elements: usize) -> Self {
        Self::from_leq(elements, |a, b| a <= b).expect("chain is a partial order")
    }

    /// Subsets of `{1..rank}` under inclusion, labelled by the subsets.
    pub fn boolean(rank: usize) -> Self {
        let sets: Vec<NodeSet> = NodeSet::full(rank).subsets().collect();
        Self::from_leq(sets.len(), |a, b| sets[a].is_subset(sets[b]))
            .expect("subset order is a partial order")
            .with_labels(sets)
    }

    /// Cartesian product; element `(i, j)` gets index `i * other.size() + j`.
    pub fn product(&self, other: &FinitePoset) -> Self {
        let m = other.size();
        Self::from_leq(self.size() * m, |a, b| {
            self.leq(a / m, b / m) && other.leq(a % m, b % m)
        })
        .expect("product of partial orders")
    }

    /// Product of chains with the given element counts.
    pub fn chain_product(element_counts: &[usize]) -> Self {
        element_counts
            .iter()
            .fold(Self::chain(1), |acc, &k| acc.product(&Self::chain(k)))
    }

    /// The order dual.
    pub fn dual(&self) -> Self {
        let mut p = Self::from_sets(self.down.clone(), self.up.clone());
        p.labels = self.labels.clone();
        p
    }

    /// Induced subposet on `elements` (new index `i` is `elements[i]`).
    pub fn subposet(&self, elements: &[usize]) -> Self {
        let mut p = Self::from_leq(elements.len(), |a, b| self.leq(elements[a], elements[b]))
            .expect("induced order is a partial order");
        if let Some(labels) = &self.labels {
            p.labels = Some(elements.iter().map(|&e| labels[e]).collect());
        }
        p
    }

    pub fn with_labels(mut self, labels: Vec<NodeSet>) -> Self {
        assert_eq!(labels.len(), self.size());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[NodeSet]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> Option<NodeSet> {
        self.labels.as_ref().map(|l| l[x])
    }

    /// Index of the element carrying `label`, if labelled.
    pub fn position(&self, label: NodeSet) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|&l| l == label)
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// True when `y` covers `x`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.upper_covers[x].contains(&y)
    }

    pub fn cover_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn bottom(&self) -> Option<usize> {
        let &first = self.linear.first()?;
        (self.up[first].count_ones(..) == self.size()).then_some(first)
    }

    pub fn top(&self) -> Option<usize> {
        let &last = self.linear.last()?;
        (self.down[last].count_ones(..) == self.size()).then_some(last)
    }

    /// Elements of the closed interval `[x, y]`, in increasing index order.
    pub fn interval_elements(&self, x: usize, y: usize) -> Vec<usize> {
        self.up[x].intersection(&self.down[y]).collect()
    }

    pub fn interval(&self, x: usize, y: usize) -> Result<FinitePoset, PosetError> {
        if !self.leq(x, y) {
            return Err(PosetError::EmptyInterval(x, y));
        }
        Ok(self.subposet(&self.interval_elements(x, y)))
    }

    /// Rank of each element, measured from the minimum. Fails unless the
    /// poset has a minimum, every cover raises the rank by one, and all
    /// maximal elements share a rank.
    pub fn ranks(&self) -> Result<Vec<usize>, PosetError> {
        let bottom = self.bottom().ok_or(PosetError::NoBottom)?;
        let mut rank = vec![0usize; self.size()];
        for &y in &self.linear {
            if y == bottom {
                continue;
            }
            let below = &self.lower_covers[y];
            let r = rank[below[0]] + 1;
            if below.iter().any(|&x| rank[x] + 1 != r) {
                return Err(PosetError::Ungraded);
            }
            rank[y] = r;
        }
        let mut maximal = (0..self.size()).filter(|&x| self.upper_covers[x].is_empty());
        let r0 = rank[maximal.next().unwrap()];
        if maximal.any(|x| rank[x] != r0) {
            return Err(PosetError::Ungraded);
        }
        Ok(rank)
    }

    /// Length of the longest chain, for graded posets.
    pub fn rank(&self) -> Result<usize, PosetError> {
        Ok(self.ranks()?.into_iter().max().unwrap_or(0))
    }

    pub fn rank_counts(&self) -> Result<Vec<usize>, PosetError> {
        let ranks = self.ranks()?;
        let mut counts = vec![0; ranks.iter().max().map_or(0, |r| r + 1)];
        for r in ranks {
            counts[r] += 1;
        }
        Ok(counts)
    }

    /// `mu(x, y)` for every `y`, zero where `x` is not below `y`.
    pub fn mobius_from(&self, x: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.size()];
        for &y in &self.linear {
            if !self.leq(x, y) {
                continue;
            }
            mu[y] = if y == x {
                1
            } else {
                -self.up[x]
                    .intersection(&self.down[y])
                    .filter(|&z| z != y)
                    .map(|z| mu[z])
                    .sum::<i64>()
            };
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> i64 {
        if !self.leq(x, y) {
            return 0;
        }
        self.mobius_from(x)[y]
    }

    /// `sum_x mu(0, x) t^(rank(1) - rank(x))` by direct Möbius summation.
    pub fn characteristic_polynomial(&self) -> Result<CharPolynomial, PosetError> {
        let ranks = self.ranks()?;
        let bottom = self.bottom().ok_or(PosetError::NoBottom)?;
        let top = self.top().ok_or(PosetError::NoTop)?;
        let n = ranks[top];
        let mu = self.mobius_from(bottom);
        let mut coeffs = vec![0i64; n + 1];
        for x in 0..self.size() {
            coeffs[n - ranks[x]] += mu[x];
        }
        Ok(CharPolynomial::from_coeffs(coeffs))
    }

    /// Elements covering the minimum.
    pub fn atoms(&self) -> Vec<usize> {
        match self.bottom() {
            Some(b) => self.upper_covers[b].clone(),
            None => Vec::new(),
        }
    }

    /// Elements covering exactly one element.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.lower_covers[x].len() == 1)
            .collect()
    }

    /// All maximal chains from the minimum to the maximum, in lexicographic
    /// order of element indices.
    pub fn maximal_chains(&self) -> Result<Vec<Vec<usize>>, PosetError> {
        let bottom = self.bottom().ok_or(PosetError::NoBottom)?;
        let top = self.top().ok_or(PosetError::NoTop)?;
        let mut out = Vec::new();
        let mut chain = vec![bottom];
        self.chains_rec(top, &mut chain, &mut out);
        Ok(out)
    }

    fn chains_rec(&self, top: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().unwrap();
        if last == top {
            out.push(chain.clone());
            return;
        }
        let mut next = self.upper_covers[last].clone();
        next.sort_unstable();
        for y in next {
            chain.push(y);
            self.chains_rec(top, chain, out);
            chain.pop();
        }
    }

    /// Rank counts read the same from the top as from the bottom.
    pub fn is_rank_symmetric(&self) -> Result<bool, PosetError> {
        let counts = self.rank_counts()?;
        Ok(counts.iter().eq(counts.iter().rev()))
    }

    pub fn is_locally_rank_symmetric(&self) -> Result<bool, PosetError> {
        let ranks = self.ranks()?;
        for x in 0..self.size() {
            for y in self.up[x].ones() {
                let len = ranks[y] - ranks[x];
                let mut counts = vec![0usize; len + 1];
                for z in self.up[x].intersection(&self.down[y]) {
                    counts[ranks[z] - ranks[x]] += 1;
                }
                if !counts.iter().eq(counts.iter().rev()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_self_dual(&self) -> Result<bool, PosetError> {
        isomorphic(self, &self.dual())
    }

    /// Every interval is isomorphic to its dual.
    pub fn is_locally_self_dual(&self) -> Result<bool, PosetError> {
        for x in 0..self.size() {
            for y in self.up[x].ones() {
                if !self.interval(x, y)?.is_self_dual()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Matches a rank-3 poset against the three interval shapes that occur
    /// in distributive cross section lattices.
    pub fn classify_rank3(&self) -> Result<Rank3Shape, PosetError> {
        let r = self.rank()?;
        if r != 3 || self.top().is_none() {
            return Err(PosetError::WrongRank { expected: 3, found: r });
        }
        Ok(if isomorphic(self, &FinitePoset::boolean(3))? {
            Rank3Shape::Boolean3
        } else if isomorphic(self, &fence6())? {
            Rank3Shape::Fence6
        } else if isomorphic(self, &FinitePoset::chain(4))? {
            Rank3Shape::Chain4
        } else {
            Rank3Shape::Other
        })
    }

    /// Checks that `chain` runs from the minimum to the maximum by covers.
    pub fn check_maximal_chain(&self, chain: &[usize]) -> Result<(), PosetError> {
        let bad = |msg: &str| Err(PosetError::NotMaximalChain(msg.to_string()));
        let (Some(&first), Some(&last)) = (chain.first(), chain.last()) else {
            return bad("empty chain");
        };
        if Some(first) != self.bottom() {
            return bad("does not start at the minimum");
        }
        if Some(last) != self.top() {
            return bad("does not end at the maximum");
        }
        if chain.windows(2).any(|w| !self.covers(w[0], w[1])) {
            return bad("consecutive entries are not covers");
        }
        Ok(())
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(usize, usize)> = (0..self.size())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect();
        f.debug_struct("FinitePoset")
            .field("size", &self.size())
            .field("covers", &covers)
            .finish()
    }
}

/// The six-element poset `a<b, a<c, b<d, c<d, c<e, e<f, d<f`, i.e. the
/// product of a 3-chain and a 2-chain.
pub fn fence6() -> FinitePoset {
    let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
    FinitePoset::from_relations(6, &[(a, b), (a, c), (b, d), (c, d), (c, e), (e, f), (d, f)])
        .expect("fence is acyclic")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rank3Shape {
    Boolean3,
    Fence6,
    Chain4,
    Other,
}

/// Chain lengths of a product-of-chains factorization, largest first.
/// Type `(3, 2)` is `C4 x C3` counted in elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionType(Vec<usize>);

impl PartitionType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PartitionType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().sum()
    }

    /// The product of chains this type describes.
    pub fn lattice(&self) -> FinitePoset {
        let counts: Vec<usize> = self.0.iter().map(|p| p + 1).collect();
        FinitePoset::chain_product(&counts)
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PartitionType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite poset together with its join and meet tables.
#[derive(Clone)]
pub struct Lattice {
    poset: FinitePoset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl Deref for Lattice {
    type Target = FinitePoset;

    fn deref(&self) -> &FinitePoset {
        &self.poset
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Lattice").field(&self.poset).finish()
    }
}

impl Lattice {
    /// Fails with [`PosetError::NotALattice`] when some pair lacks a join
    /// or a meet.
    pub fn new(poset: FinitePoset) -> Result<Self, PosetError> {
        let n = poset.size();
        let bottom = poset.bottom().ok_or(PosetError::NoBottom)?;
        let top = poset.top().ok_or(PosetError::NoTop)?;
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let j = least_in(&poset.up[a], &poset.up[b], &poset.up, &poset.down)
                    .ok_or(PosetError::NotALattice(a, b, "join"))?;
                let m = least_in(&poset.down[a], &poset.down[b], &poset.down, &poset.up)
                    .ok_or(PosetError::NotALattice(a, b, "meet"))?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }
        Ok(Lattice {
            poset,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    pub fn bottom_element(&self) -> usize {
        self.bottom
    }

    pub fn top_element(&self) -> usize {
        self.top
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b] as usize
    }

    pub fn interval(&self, x: usize, y: usize) -> Result<Lattice, PosetError> {
        Lattice::new(self.poset.interval(x, y)?)
    }

    /// Every element of every interval `[x, y]` has a complement in it.
    pub fn is_relatively_complemented(&self) -> bool {
        let n = self.size();
        for x in 0..n {
            for y in self.up[x].ones() {
                let between: Vec<usize> = self.up[x].intersection(&self.down[y]).collect();
                for &z in &between {
                    let has_complement = between
                        .iter()
                        .any(|&w| self.join(z, w) == y && self.meet(z, w) == x);
                    if !has_complement {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every element is the join of the atoms below it.
    pub fn is_atomic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.size()).all(|y| {
            let j = atoms
                .iter()
                .filter(|&&a| self.leq(a, y))
                .fold(self.bottom, |acc, &a| self.join(acc, a));
            j == y
        })
    }

    /// Tests for isomorphism with the subset lattice of the atoms by
    /// checking that "set of atoms below" is an order isomorphism onto it.
    pub fn is_boolean(&self) -> bool {
        let atoms = self.atoms();
        if atoms.len() >= usize::BITS as usize - 1 || self.size() != 1 << atoms.len() {
            return false;
        }
        let code = |y: usize| -> u64 {
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| self.leq(a, y))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let codes: Vec<u64> = (0..self.size()).map(code).collect();
        let mut seen = vec![false; self.size()];
        for &c in &codes {
            if std::mem::replace(&mut seen[c as usize], true) {
                return false;
            }
        }
        (0..self.size()).all(|x| {
            (0..self.size()).all(|y| self.leq(x, y) == (codes[x] & !codes[y] == 0))
        })
    }

    /// Birkhoff's covering condition: if `x` covers `x ∧ y` then `x ∨ y`
    /// covers `y`.
    pub fn is_upper_semimodular(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let m = self.meet(x, y);
                !self.covers(m, x) || self.covers(y, self.join(x, y))
            })
        })
    }

    /// `c <= b  =>  c ∨ (a ∧ b) = (c ∨ a) ∧ b` for every `c`.
    pub fn is_modular_pair(&self, a: usize, b: usize) -> bool {
        let ab = self.meet(a, b);
        self.down[b]
            .ones()
            .all(|c| self.join(c, ab) == self.meet(self.join(c, a), b))
    }

    pub fn is_left_modular(&self, a: usize) -> bool {
        (0..self.size()).all(|x| self.is_modular_pair(a, x))
    }

    pub fn is_right_modular(&self, b: usize) -> bool {
        (0..self.size()).all(|x| self.is_modular_pair(x, b))
    }

    /// Left and right modular.
    pub fn is_modular_element(&self, x: usize) -> bool {
        self.is_left_modular(x) && self.is_right_modular(x)
    }

    pub fn is_modular_lattice(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.is_modular_pair(a, b)))
    }

    /// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` over all triples.
    pub fn is_distributive(&self) -> bool {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                let xy = self.meet(x, y);
                for z in y + 1..n {
                    if self.meet(x, self.join(y, z)) != self.join(xy, self.meet(x, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// For semimodular lattices: searches for a maximal chain made of
    /// modular elements (such a chain is exactly an M-chain) and returns the
    /// first one found in cover order.
    pub fn supersolvable_witness(&self) -> Result<Option<Vec<usize>>, PosetError> {
        if !self.is_upper_semimodular() {
            return Err(PosetError::NotSemimodular);
        }
        let modular: Vec<bool> = (0..self.size()).map(|x| self.is_modular_element(x)).collect();
        if !modular[self.bottom] || !modular[self.top] {
            return Ok(None);
        }
        let mut dead = vec![false; self.size()];
        let mut chain = vec![self.bottom];
        Ok(self
            .modular_chain_rec(&modular, &mut dead, &mut chain)
            .then_some(chain))
    }

    fn modular_chain_rec(&self, modular: &[bool], dead: &mut [bool], chain: &mut Vec<usize>) -> bool {
        let last = *chain.last().unwrap();
        if last == self.top {
            return true;
        }
        let mut next: Vec<usize> = self.upper_covers(last).to_vec();
        next.sort_unstable();
        for y in next {
            if !modular[y] || dead[y] {
                continue;
            }
            chain.push(y);
            if self.modular_chain_rec(modular, dead, chain) {
                return true;
            }
            chain.pop();
            dead[y] = true;
        }
        false
    }

    pub fn is_supersolvable(&self) -> Result<bool, PosetError> {
        Ok(self.supersolvable_witness()?.is_some())
    }

    /// When the lattice is distributive and its join irreducibles form a
    /// disjoint union of chains, the chain lengths of the resulting
    /// product-of-chains decomposition.
    pub fn chain_product_factorization(&self) -> Option<PartitionType> {
        if !self.is_distributive() {
            return None;
        }
        let irr = self.join_irreducibles();
        let k = irr.len();
        // union-find over comparability among join irreducibles
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..k {
            for j in i + 1..k {
                if self.leq(irr[i], irr[j]) || self.leq(irr[j], irr[i]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..k {
            let r = find(&mut parent, i);
            blocks[r].push(irr[i]);
        }
        let mut parts = Vec::new();
        for block in blocks.into_iter().filter(|b| !b.is_empty()) {
            let totally_ordered = block.iter().all(|&a| {
                block.iter().all(|&b| self.leq(a, b) || self.leq(b, a))
            });
            if !totally_ordered {
                return None;
            }
            parts.push(block.len());
        }
        Some(PartitionType::new(parts))
    }
}

/// The least element of `a ∩ b` under the order whose up-sets are `up`
/// (pass down-sets to get the greatest element instead).
fn least_in(
    a: &FixedBitSet,
    b: &FixedBitSet,
    up: &[FixedBitSet],
    down: &[FixedBitSet],
) -> Option<usize> {
    let mut common = a.clone();
    common.intersect_with(b);
    let candidate = common.ones().min_by_key(|&c| down[c].count_ones(..))?;
    common.is_subset(&up[candidate]).then_some(candidate)
}
