//! Walks every interval of one lattice and compares the closed-form
//! relative complement test and Möbius value with brute force.

use crosslat::diagram::{CoxeterGraph, NodeSet};
use crosslat::lattice::CrossSectionLattice;
use crosslat::theorems;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = CoxeterGraph::path('A', 8)?;
    let j0: NodeSet = "{3,6,7}".parse()?;
    let l = CrossSectionLattice::enumerate(&g, j0)?;
    let lat = l.to_lattice()?;

    let (u, v): (NodeSet, NodeSet) = ("{7,8}".parse()?, "{1,2,3,7,8}".parse()?);
    let (i, j) = (l.index_of(u).unwrap(), l.index_of(v).unwrap());
    let interval = lat.interval(i, j)?;
    println!("[{u}, {v}] has {} elements", interval.size());
    println!("  criterion: {}", theorems::relcomp_criterion(&g, j0, u, v)?);
    println!("  relatively complemented: {}", interval.is_relatively_complemented());
    println!("  mobius: {} (formula {})", lat.mobius(i, j), theorems::mobius_formula(&l, u, v)?);
    let irreducible: Vec<String> = interval
        .join_irreducibles()
        .into_iter()
        .map(|x| l.interval_elements(u, v).unwrap()[x].to_string())
        .collect();
    println!("  join irreducibles: {}", irreducible.join(" "));

    let mut checked = 0;
    let mut boolean = 0;
    for (a, &x) in l.elements().iter().enumerate() {
        let mu = lat.mobius_from(a);
        for (b, &y) in l.elements().iter().enumerate() {
            if x.is_subset(y) {
                assert_eq!(mu[b], theorems::mobius_formula(&l, x, y)?);
                checked += 1;
                boolean += (mu[b] != 0) as usize;
            }
        }
    }
    println!("{checked} intervals agree with the formula, {boolean} of them Boolean");
    Ok(())
}
