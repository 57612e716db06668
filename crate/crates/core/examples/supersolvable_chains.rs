//! Builds the modular chain for each supersolvable configuration of a
//! path and factors the characteristic polynomial along it.

use crosslat::diagram::CoxeterGraph;
use crosslat::lattice::CrossSectionLattice;
use crosslat::theorems;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = CoxeterGraph::path('A', 5)?;
    for j0 in g.nodes().subsets() {
        let l = CrossSectionLattice::enumerate(&g, j0)?;
        if l.is_degenerate() {
            continue;
        }
        if !theorems::supersolvability_criterion(&g, j0)? {
            let brute = l.to_lattice()?.is_supersolvable()?;
            println!("J0 = {j0:<12} not supersolvable (brute force {brute})");
            continue;
        }
        let chain = theorems::construct_m_chain(&g, j0)?;
        let product = theorems::stanley_factorization(&l, &chain)?;
        let chain: Vec<String> = chain.iter().map(|s| s.to_string()).collect();
        println!("J0 = {j0:<12} {product:<24} {}", chain.join(" < "));
    }
    Ok(())
}
