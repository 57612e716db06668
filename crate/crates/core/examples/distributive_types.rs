//! Lists the distributive configurations of a type A path with their
//! chain product types, then counts isomorphism classes for small m.

use crosslat::diagram::CoxeterGraph;
use crosslat::lattice::CrossSectionLattice;
use crosslat::theorems;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = CoxeterGraph::path('A', 5)?;
    for j0 in g.nodes().subsets() {
        if !theorems::distributivity_criterion(&g, j0) {
            continue;
        }
        let l = CrossSectionLattice::enumerate(&g, j0)?;
        if l.is_degenerate() {
            continue;
        }
        let kind = match l.to_lattice()?.chain_product_factorization() {
            Some(t) => t.to_string(),
            None => "1 + product (one free node)".into(),
        };
        let smooth = theorems::combinatorially_smooth_type_a(&g, j0)?;
        println!("J0 = {j0:<12} {:>3} elements  {kind:<28} smooth {smooth}", l.len());
    }
    println!();
    for m in 2..=7 {
        let c = theorems::distributive_classes(m)?;
        println!(
            "m = {m}: {} classes, {} of them chain products, p(m-1) = {}",
            c.classes,
            c.product_classes,
            theorems::partition_count(m - 1)
        );
    }
    Ok(())
}
