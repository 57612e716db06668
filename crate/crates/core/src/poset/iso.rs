//! Backtracking isomorphism test for finite posets.
//!
//! Elements are first coloured by order invariants and the colouring is
//! refined along the cover relation until it stabilises. The search then
//! extends a partial map one element at a time, preferring elements adjacent
//! to already-mapped ones, and only tries targets of the same colour whose
//! comparabilities with the mapped elements agree.

use std::collections::HashMap;

use super::{FinitePoset, PosetError};

/// Largest poset size accepted by [`isomorphic`].
pub const MAX_ISO_SIZE: usize = 5000;

pub fn isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<bool, PosetError> {
    for poset in [p, q] {
        if poset.size() > MAX_ISO_SIZE {
            return Err(PosetError::SizeLimit {
                size: poset.size(),
                cap: MAX_ISO_SIZE,
            });
        }
    }
    Ok(find_isomorphism(p, q).is_some())
}

/// An order isomorphism `p -> q` as a vector indexed by elements of `p`.
pub fn find_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let n = p.size();
    if n != q.size() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let (cp, cq) = refine_colors(p, q);
    let mut hist_p: HashMap<usize, usize> = HashMap::new();
    let mut hist_q: HashMap<usize, usize> = HashMap::new();
    for &c in &cp {
        *hist_p.entry(c).or_default() += 1;
    }
    for &c in &cq {
        *hist_q.entry(c).or_default() += 1;
    }
    if hist_p != hist_q {
        return None;
    }

    let order = search_order(p, &cp, &hist_p);
    let mut candidates: HashMap<usize, Vec<usize>> = HashMap::new();
    for (y, &c) in cq.iter().enumerate() {
        candidates.entry(c).or_default().push(y);
    }

    let mut state = Search {
        p,
        q,
        cp: &cp,
        candidates: &candidates,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    state.extend(0).then_some(state.map)
}

struct Search<'a> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    cp: &'a [usize],
    candidates: &'a HashMap<usize, Vec<usize>>,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let cands = &self.candidates[&self.cp[x]];
        for &y in cands {
            if self.used[y] || !self.consistent(depth, x, y) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
            self.map[x] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, x: usize, y: usize) -> bool {
        self.order[..depth].iter().all(|&w| {
            let z = self.map[w];
            self.p.leq(w, x) == self.q.leq(z, y) && self.p.leq(x, w) == self.q.leq(y, z)
        })
    }
}

/// Colour refinement run on both posets with a shared palette, so equal
/// colours mean equal invariants across `p` and `q`.
fn refine_colors(p: &FinitePoset, q: &FinitePoset) -> (Vec<usize>, Vec<usize>) {
    let initial = |poset: &FinitePoset| -> Vec<Vec<usize>> {
        (0..poset.size())
            .map(|x| {
                vec![
                    poset.down_set(x).count_ones(..),
                    poset.up_set(x).count_ones(..),
                    poset.lower_covers(x).len(),
                    poset.upper_covers(x).len(),
                ]
            })
            .collect()
    };
    let mut palette: HashMap<Vec<usize>, usize> = HashMap::new();
    let intern = |sig: Vec<usize>, palette: &mut HashMap<Vec<usize>, usize>| {
        let next = palette.len();
        *palette.entry(sig).or_insert(next)
    };
    let mut cp: Vec<usize> = initial(p)
        .into_iter()
        .map(|s| intern(s, &mut palette))
        .collect();
    let mut cq: Vec<usize> = initial(q)
        .into_iter()
        .map(|s| intern(s, &mut palette))
        .collect();

    loop {
        let classes_before = count_classes(&cp, &cq);
        palette.clear();
        let step = |poset: &FinitePoset, colors: &[usize]| -> Vec<Vec<usize>> {
            (0..poset.size())
                .map(|x| {
                    let mut ups: Vec<usize> =
                        poset.upper_covers(x).iter().map(|&y| colors[y]).collect();
                    let mut downs: Vec<usize> =
                        poset.lower_covers(x).iter().map(|&y| colors[y]).collect();
                    ups.sort_unstable();
                    downs.sort_unstable();
                    let mut sig = vec![colors[x], usize::MAX];
                    sig.extend(ups);
                    sig.push(usize::MAX);
                    sig.extend(downs);
                    sig
                })
                .collect()
        };
        let sp = step(p, &cp);
        let sq = step(q, &cq);
        cp = sp.into_iter().map(|s| intern(s, &mut palette)).collect();
        cq = sq.into_iter().map(|s| intern(s, &mut palette)).collect();
        if count_classes(&cp, &cq) == classes_before {
            return (cp, cq);
        }
    }
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Start from the rarest colour, then grow along covers; ties go to the
/// smaller class, then lower rank, then lower index.
fn search_order(p: &FinitePoset, colors: &[usize], hist: &HashMap<usize, usize>) -> Vec<usize> {
    let n = p.size();
    let height: Vec<usize> = (0..n).map(|x| p.down_set(x).count_ones(..)).collect();
    let key = |x: usize| (hist[&colors[x]], height[x], x);
    let mut placed = vec![false; n];
    let mut touched = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&x| !placed[x] && touched[x])
            .min_by_key(|&x| key(x))
            .or_else(|| (0..n).filter(|&x| !placed[x]).min_by_key(|&x| key(x)))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &y in p.upper_covers(next).iter().chain(p.lower_covers(next)) {
            touched[y] = true;
        }
    }
    order
}
