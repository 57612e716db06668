//! Flag f- and h-vectors of graded posets and the flag quasi-symmetric
//! function, kept in the fundamental or monomial basis at fixed degree.
//!
//! A subset `S` of `{1, ..., n-1}` and the composition of `n` with partial
//! sums `S` are used interchangeably as keys.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::NodeSet;
use crate::poset::{FinitePoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("composition {parts:?} does not sum to {n}")]
    Composition { parts: Vec<usize>, n: usize },
    #[error("key {key} is not a subset of {{1..{max}}}")]
    KeyOutOfRange { key: NodeSet, max: usize },
    #[error("expected {expected:?} basis in degree {degree}, got {found:?} in degree {found_degree}")]
    BasisMismatch {
        expected: Basis,
        degree: usize,
        found: Basis,
        found_degree: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Fundamental,
    Monomial,
}

/// Ordered positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, FlagError> {
        if parts.contains(&0) {
            let n = parts.iter().sum();
            return Err(FlagError::Composition { parts, n });
        }
        Ok(Composition(parts))
    }

    /// The composition of `n` whose partial sums are the members of `s`.
    pub fn from_set(s: NodeSet, n: usize) -> Result<Self, FlagError> {
        check_key(s, n)?;
        let mut parts = Vec::new();
        let mut prev = 0;
        for cut in s.iter().chain(std::iter::once(n)) {
            parts.push(cut - prev);
            prev = cut;
        }
        if n == 0 {
            parts.clear();
        }
        Ok(Composition(parts))
    }

    /// Partial sums, excluding the total.
    pub fn to_set(&self) -> NodeSet {
        let mut acc = 0;
        let mut s = NodeSet::EMPTY;
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            s = s.with(acc);
        }
        s
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Parts sorted decreasingly.
    pub fn partition(&self) -> Vec<usize> {
        let mut p = self.0.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn key_space(n: usize) -> NodeSet {
    NodeSet::full(n.saturating_sub(1))
}

fn check_key(key: NodeSet, n: usize) -> Result<(), FlagError> {
    if key.is_subset(key_space(n)) {
        Ok(())
    } else {
        Err(FlagError::KeyOutOfRange {
            key,
            max: n.saturating_sub(1),
        })
    }
}

/// A homogeneous quasi-symmetric function of degree `n` as an integer
/// coefficient map on subsets of `{1..n-1}`. Zero coefficients are not
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiSymFunction {
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<NodeSet, i64>,
}

impl QuasiSymFunction {
    pub fn zero(degree: usize, basis: Basis) -> Self {
        QuasiSymFunction {
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs<I>(degree: usize, basis: Basis, coeffs: I) -> Result<Self, FlagError>
    where
        I: IntoIterator<Item = (NodeSet, i64)>,
    {
        let mut f = Self::zero(degree, basis);
        for (key, c) in coeffs {
            check_key(key, degree)?;
            f.add(key, c);
        }
        Ok(f)
    }

    /// The single basis element `F_{S,n}` (or `M_{S,n}`).
    pub fn basis_element(key: NodeSet, degree: usize, basis: Basis) -> Result<Self, FlagError> {
        Self::from_coeffs(degree, basis, [(key, 1)])
    }

    fn add(&mut self, key: NodeSet, c: i64) {
        let entry = self.coeffs.entry(key).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, key: NodeSet) -> i64 {
        self.coeffs.get(&key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (NodeSet, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    fn expect(&self, basis: Basis, degree: usize) -> Result<(), FlagError> {
        if self.basis == basis && self.degree == degree {
            Ok(())
        } else {
            Err(FlagError::BasisMismatch {
                expected: basis,
                degree,
                found: self.basis,
                found_degree: self.degree,
            })
        }
    }
}

impl Serialize for QuasiSymFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            composition: Vec<usize>,
            coefficient: i64,
        }
        let mut terms: Vec<Term> = self
            .terms()
            .map(|(k, c)| Term {
                composition: Composition::from_set(k, self.degree)
                    .expect("stored keys are in range")
                    .0,
                coefficient: c,
            })
            .collect();
        terms.sort_by(|a, b| a.composition.cmp(&b.composition));
        let mut st = s.serialize_struct("QuasiSymFunction", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Number of chains of the proper part with rank set exactly `I`, for
/// every `I ⊆ {1..n-1}`; the empty chain gives `alpha(∅) = 1`.
pub fn flag_f_vector(p: &FinitePoset) -> Result<BTreeMap<NodeSet, u64>, FlagError> {
    let ranks = p.ranks()?;
    p.top().ok_or(PosetError::NoTop)?;
    let n = ranks.iter().copied().max().unwrap_or(0);
    let mut by_rank = vec![Vec::new(); n + 1];
    for (x, &r) in ranks.iter().enumerate() {
        by_rank[r].push(x);
    }
    let mut out = BTreeMap::new();
    for key in key_space(n).subsets() {
        let mut levels = key.iter();
        let count = match levels.next() {
            None => 1,
            Some(first) => {
                let mut counts: Vec<(usize, u64)> = by_rank[first].iter().map(|&x| (x, 1)).collect();
                for r in levels {
                    counts = by_rank[r]
                        .iter()
                        .map(|&y| {
                            let c = counts
                                .iter()
                                .filter(|&&(x, _)| p.leq(x, y))
                                .map(|&(_, c)| c)
                                .sum();
                            (y, c)
                        })
                        .collect();
                }
                counts.iter().map(|&(_, c)| c).sum()
            }
        };
        out.insert(key, count);
    }
    Ok(out)
}

/// `beta(J) = sum over I ⊆ J of (-1)^|J - I| alpha(I)`.
pub fn flag_beta(p: &FinitePoset) -> Result<BTreeMap<NodeSet, i64>, FlagError> {
    Ok(beta_from_alpha(&flag_f_vector(p)?))
}

pub fn beta_from_alpha(alpha: &BTreeMap<NodeSet, u64>) -> BTreeMap<NodeSet, i64> {
    alpha
        .keys()
        .map(|&j| {
            let b = j
                .subsets()
                .map(|i| {
                    let a = alpha.get(&i).copied().unwrap_or(0) as i64;
                    if j.difference(i).len() % 2 == 0 {
                        a
                    } else {
                        -a
                    }
                })
                .sum();
            (j, b)
        })
        .collect()
}

/// `F_P = sum of beta(I) F_I`, in the fundamental basis.
pub fn flag_qsym(p: &FinitePoset) -> Result<QuasiSymFunction, FlagError> {
    let n = p.rank()?;
    QuasiSymFunction::from_coeffs(n, Basis::Fundamental, flag_beta(p)?)
}

/// `F_S = sum over T ⊇ S of M_T`, so the `M_T` coefficient collects the
/// fundamental coefficients of all `S ⊆ T`.
pub fn fundamental_to_monomial(f: &QuasiSymFunction) -> Result<QuasiSymFunction, FlagError> {
    f.expect(Basis::Fundamental, f.degree)?;
    let coeffs = key_space(f.degree)
        .subsets()
        .map(|t| (t, t.subsets().map(|s| f.coeff(s)).sum()));
    QuasiSymFunction::from_coeffs(f.degree, Basis::Monomial, coeffs)
}

pub fn monomial_to_fundamental(m: &QuasiSymFunction) -> Result<QuasiSymFunction, FlagError> {
    m.expect(Basis::Monomial, m.degree)?;
    let coeffs = key_space(m.degree).subsets().map(|s| {
        let c = s
            .subsets()
            .map(|t| {
                if s.difference(t).len() % 2 == 0 {
                    m.coeff(t)
                } else {
                    -m.coeff(t)
                }
            })
            .sum();
        (s, c)
    });
    QuasiSymFunction::from_coeffs(m.degree, Basis::Fundamental, coeffs)
}

/// A quasi-symmetric function is symmetric iff its monomial coefficients
/// depend only on the sorted parts of each composition.
pub fn is_symmetric(f: &QuasiSymFunction) -> Result<bool, FlagError> {
    let m = match f.basis {
        Basis::Monomial => f.clone(),
        Basis::Fundamental => fundamental_to_monomial(f)?,
    };
    let mut seen: HashMap<Vec<usize>, i64> = HashMap::new();
    for key in key_space(m.degree).subsets() {
        let shape = Composition::from_set(key, m.degree)?.partition();
        let c = m.coeff(key);
        if *seen.entry(shape).or_insert(c) != c {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_flag_symmetric(p: &FinitePoset) -> Result<bool, FlagError> {
    is_symmetric(&flag_qsym(p)?)
}

/// `h_{gamma_1} ... h_{gamma_l}` in the monomial basis of degree `n`. The
/// coefficient of `M_c` counts nonnegative integer matrices with row sums
/// `gamma` and column sums `c`.
pub fn h_gamma(gamma: &Composition, n: usize) -> Result<QuasiSymFunction, FlagError> {
    if gamma.total() != n {
        return Err(FlagError::Composition {
            parts: gamma.0.clone(),
            n,
        });
    }
    let mut coeffs = Vec::new();
    for key in key_space(n).subsets() {
        let mut cols = Composition::from_set(key, n)?.0;
        coeffs.push((key, count_matrices(&gamma.0, &mut cols) as i64));
    }
    QuasiSymFunction::from_coeffs(n, Basis::Monomial, coeffs)
}

fn count_matrices(rows: &[usize], cols: &mut [usize]) -> u64 {
    match rows.split_first() {
        None => cols.iter().all(|&c| c == 0) as u64,
        Some((&r, rest)) => fill_row(r, 0, rest, cols),
    }
}

fn fill_row(remaining: usize, col: usize, rows: &[usize], cols: &mut [usize]) -> u64 {
    if col == cols.len() {
        return if remaining == 0 { count_matrices(rows, cols) } else { 0 };
    }
    let mut total = 0;
    for take in 0..=remaining.min(cols[col]) {
        cols[col] -= take;
        total += fill_row(remaining - take, col + 1, rows, cols);
        cols[col] += take;
    }
    total
}

/// The pairing in which the fundamental basis is orthonormal.
pub fn inner_product_fundamental(
    f: &QuasiSymFunction,
    g: &QuasiSymFunction,
) -> Result<i64, FlagError> {
    f.expect(Basis::Fundamental, f.degree)?;
    g.expect(Basis::Fundamental, f.degree)?;
    Ok(f.terms().map(|(k, c)| c * g.coeff(k)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(nodes: &[usize]) -> NodeSet {
        NodeSet::from_nodes(nodes.iter().copied())
    }

    #[test]
    fn compositions() {
        let c = Composition::from_set(set(&[2, 3]), 5).unwrap();
        assert_eq!(c.parts(), &[2, 1, 2]);
        assert_eq!(c.to_set(), set(&[2, 3]));
        assert_eq!(c.partition(), vec![2, 2, 1]);
        assert_eq!(Composition::from_set(NodeSet::EMPTY, 3).unwrap().parts(), &[3]);
        assert!(Composition::from_set(set(&[3]), 3).is_err());
        assert!(Composition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn flag_vectors_of_small_posets() {
        let b2 = FinitePoset::boolean(2);
        let alpha = flag_f_vector(&b2).unwrap();
        assert_eq!(alpha[&NodeSet::EMPTY], 1);
        assert_eq!(alpha[&set(&[1])], 2);
        let beta = flag_beta(&b2).unwrap();
        assert_eq!(beta[&NodeSet::EMPTY], 1);
        assert_eq!(beta[&set(&[1])], 1);

        let chain = FinitePoset::chain(5);
        assert!(flag_f_vector(&chain).unwrap().values().all(|&a| a == 1));
        let f = flag_qsym(&chain).unwrap();
        assert_eq!(f.terms().collect::<Vec<_>>(), vec![(NodeSet::EMPTY, 1)]);
    }

    #[test]
    fn basis_change() {
        let f = QuasiSymFunction::basis_element(NodeSet::EMPTY, 4, Basis::Fundamental).unwrap();
        let m = fundamental_to_monomial(&f).unwrap();
        assert!(key_space(4).subsets().all(|t| m.coeff(t) == 1));
        assert_eq!(monomial_to_fundamental(&m).unwrap(), f);
        let zero = QuasiSymFunction::zero(3, Basis::Fundamental);
        assert!(fundamental_to_monomial(&zero).unwrap().is_zero());
        assert!(matches!(
            monomial_to_fundamental(&f),
            Err(FlagError::BasisMismatch { .. })
        ));
    }

    #[test]
    fn complete_homogeneous() {
        let hn = h_gamma(&Composition::new(vec![4]).unwrap(), 4).unwrap();
        let f = QuasiSymFunction::basis_element(NodeSet::EMPTY, 4, Basis::Fundamental).unwrap();
        assert_eq!(hn, fundamental_to_monomial(&f).unwrap());
        let h11 = h_gamma(&Composition::new(vec![1, 1]).unwrap(), 2).unwrap();
        let b2 = fundamental_to_monomial(&flag_qsym(&FinitePoset::boolean(2)).unwrap()).unwrap();
        assert_eq!(h11, b2);
        assert!(h_gamma(&Composition::new(vec![2, 1]).unwrap(), 4).is_err());
    }

    #[test]
    fn symmetry() {
        assert!(is_flag_symmetric(&FinitePoset::boolean(3)).unwrap());
        assert!(is_flag_symmetric(&FinitePoset::chain_product(&[3, 2])).unwrap());
        // rank 3: bottom, two atoms, one coatom above both, top
        let p = FinitePoset::from_relations(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert!(!is_flag_symmetric(&p).unwrap());
    }

    #[test]
    fn inner_products() {
        let f = |s: NodeSet| QuasiSymFunction::basis_element(s, 3, Basis::Fundamental).unwrap();
        assert_eq!(inner_product_fundamental(&f(set(&[1])), &f(set(&[1]))).unwrap(), 1);
        assert_eq!(inner_product_fundamental(&f(set(&[1])), &f(set(&[2]))).unwrap(), 0);
        let g = QuasiSymFunction::basis_element(set(&[1]), 4, Basis::Fundamental).unwrap();
        assert!(inner_product_fundamental(&f(set(&[1])), &g).is_err());
    }

    #[test]
    fn json_layout() {
        let f = flag_qsym(&FinitePoset::boolean(2)).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"degree":2,"basis":"fundamental","terms":[{"composition":[1,1],"coefficient":1},{"composition":[2],"coefficient":1}]}"#
        );
    }
}
