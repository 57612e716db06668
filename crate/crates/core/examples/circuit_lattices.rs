//! Cycles: relabels onto a path when two adjacent nodes are free, and
//! compares supersolvability with the all-singletons predicate.

use crosslat::diagram::CoxeterGraph;
use crosslat::theorems;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 3..=6 {
        let g = CoxeterGraph::cycle(n)?;
        let mut relabeled = 0;
        for j0 in g.nodes().subsets() {
            for row in theorems::circuit_analysis(&g, j0)? {
                match row.criterion.as_str() {
                    "circuit_path_isomorphism" => relabeled += row.agree as usize,
                    _ if !row.agree && row.note.is_empty() => println!(
                        "{g}: J0 mask {} predicate says {}, brute force says {}",
                        row.j0_mask, row.value, row.oracle
                    ),
                    _ => {}
                }
            }
        }
        println!("{g}: {relabeled} configurations map onto a path lattice");
    }
    Ok(())
}
