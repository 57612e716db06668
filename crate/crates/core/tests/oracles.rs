//! Independent brute-force oracles for the counting and symmetric function
//! machinery.

use std::collections::BTreeMap;

use crosslat::diagram::{CoxeterGraph, NodeSet};
use crosslat::flags::{self, Composition};
use crosslat::lattice::CrossSectionLattice;
use crosslat::poset::{FinitePoset, PartitionType};
use crosslat::theorems;

fn set(nodes: &[usize]) -> NodeSet {
    NodeSet::from_nodes(nodes.iter().copied())
}

/// Chains of the proper part counted by testing every subset of elements.
fn alpha_by_subsets(p: &FinitePoset) -> BTreeMap<NodeSet, u64> {
    let ranks = p.ranks().unwrap();
    let n = p.rank().unwrap();
    let proper: Vec<usize> = (0..p.size()).filter(|&x| ranks[x] > 0 && ranks[x] < n).collect();
    assert!(proper.len() < 20);
    let mut out: BTreeMap<NodeSet, u64> = NodeSet::full(n.saturating_sub(1)).subsets().map(|s| (s, 0)).collect();
    for mask in 0u32..(1 << proper.len()) {
        let chosen: Vec<usize> = (0..proper.len()).filter(|i| mask >> i & 1 == 1).map(|i| proper[i]).collect();
        let chain = chosen
            .iter()
            .all(|&a| chosen.iter().all(|&b| p.leq(a, b) || p.leq(b, a)));
        if chain {
            let key: NodeSet = chosen.iter().map(|&x| ranks[x]).collect();
            if key.len() == chosen.len() {
                *out.get_mut(&key).unwrap() += 1;
            }
        }
    }
    out
}

/// Coefficient map of `prod h_{g_i}(x_1..x_k)` keyed by exponent vector.
fn h_product(gamma: &[usize], k: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut poly = BTreeMap::from([(vec![0; k], 1u64)]);
    for &g in gamma {
        let mut next = BTreeMap::new();
        for (exp, c) in &poly {
            for mono in monomials(g, k) {
                let e: Vec<usize> = exp.iter().zip(&mono).map(|(a, b)| a + b).collect();
                *next.entry(e).or_insert(0) += c;
            }
        }
        poly = next;
    }
    poly
}

fn monomials(degree: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=degree)
        .flat_map(|first| {
            monomials(degree - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[test]
fn flag_f_vector_against_subset_enumeration() {
    for n in 1..=4 {
        let g = CoxeterGraph::path('A', n).unwrap();
        for j0 in g.nodes().subsets() {
            let l = CrossSectionLattice::enumerate(&g, j0).unwrap();
            if l.is_degenerate() {
                continue;
            }
            let p = l.to_poset().unwrap();
            assert_eq!(flags::flag_f_vector(&p).unwrap(), alpha_by_subsets(&p), "{g} {j0}");
        }
    }
    let g = CoxeterGraph::cycle(4).unwrap();
    let p = CrossSectionLattice::enumerate(&g, set(&[1])).unwrap().to_poset().unwrap();
    assert_eq!(flags::flag_f_vector(&p).unwrap(), alpha_by_subsets(&p));
}

#[test]
fn h_gamma_against_polynomial_expansion() {
    for gamma in [vec![1], vec![2, 1], vec![3, 2], vec![2, 2, 1], vec![1, 3, 1], vec![4, 1, 1]] {
        let n: usize = gamma.iter().sum();
        let h = flags::h_gamma(&Composition::new(gamma.clone()).unwrap(), n).unwrap();
        for key in NodeSet::full(n - 1).subsets() {
            let c = Composition::from_set(key, n).unwrap();
            let poly = h_product(&gamma, c.parts().len());
            let expected = poly.get(c.parts()).copied().unwrap_or(0);
            assert_eq!(h.coeff(key), expected as i64, "gamma {gamma:?} at {c}");
        }
    }
}

#[test]
fn chain_products_have_flag_function_h_gamma() {
    for parts in [vec![1], vec![2, 1], vec![3, 2], vec![2, 2, 1], vec![1, 1, 1]] {
        let t = PartitionType::new(parts.clone());
        let p = t.lattice();
        let m = flags::fundamental_to_monomial(&flags::flag_qsym(&p).unwrap()).unwrap();
        let h = flags::h_gamma(&Composition::new(parts).unwrap(), t.rank()).unwrap();
        assert_eq!(m, h, "{t}");
    }
}

#[test]
fn charpoly_by_rank_sums() {
    // chi(x) = sum over z of mu(0, z) x^(n - rank z), computed here without
    // the poset engine: mu by the recursion on subsets ordered by inclusion
    for n in 1..=5 {
        let g = CoxeterGraph::path('B', n).unwrap();
        for j0 in g.nodes().subsets() {
            let l = CrossSectionLattice::enumerate(&g, j0).unwrap();
            if l.is_degenerate() {
                continue;
            }
            let elems = l.elements();
            let mut mu = vec![0i64; elems.len()];
            let mut coeffs = vec![0i64; n + 1];
            for (i, &z) in elems.iter().enumerate() {
                mu[i] = if i == 0 {
                    1
                } else {
                    -(0..i).filter(|&k| elems[k].is_subset(z) && elems[k] != z).map(|k| mu[k]).sum::<i64>()
                };
                coeffs[n - z.len()] += mu[i];
            }
            assert_eq!(theorems::charpoly_formula(&g, j0).coeffs(), &coeffs[..], "{g} {j0}");
        }
    }
}

#[test]
fn isomorphism_against_permutations() {
    let g = CoxeterGraph::path('A', 3).unwrap();
    let lats: Vec<FinitePoset> = g
        .nodes()
        .subsets()
        .map(|j0| CrossSectionLattice::enumerate(&g, j0).unwrap().to_poset().unwrap())
        .collect();
    for a in &lats {
        for b in &lats {
            let brute = a.size() == b.size() && permutation_iso(a, b);
            assert_eq!(crosslat::poset::isomorphic(a, b).unwrap(), brute);
        }
    }
}

fn permutation_iso(a: &FinitePoset, b: &FinitePoset) -> bool {
    fn go(a: &FinitePoset, b: &FinitePoset, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.size() {
            return true;
        }
        for j in 0..b.size() {
            if used[j] {
                continue;
            }
            if (0..i).all(|k| a.leq(k, i) == b.leq(map[k], j) && a.leq(i, k) == b.leq(j, map[k])) {
                used[j] = true;
                map.push(j);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    go(a, b, &mut Vec::new(), &mut vec![false; b.size()])
}
