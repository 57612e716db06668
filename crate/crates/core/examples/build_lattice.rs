//! Enumerates a cross section lattice and prints its elements by rank,
//! then its Hasse diagram in DOT.
//!
//!     cargo run --example build_lattice -- "path A 4" "{2,3}"

use std::env;

use crosslat::diagram::{CoxeterGraph, NodeSet};
use crosslat::lattice::CrossSectionLattice;
use crosslat::report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let g: CoxeterGraph = args.next().as_deref().unwrap_or("path A 4").parse()?;
    let j0: NodeSet = args.next().as_deref().unwrap_or("{2,3}").parse()?;
    let l = CrossSectionLattice::enumerate(&g, j0)?;
    println!("{g}, J0 = {j0}: {} elements", l.len());
    print!("{}", l.dump());
    println!();
    print!("{}", report::to_dot(&l));
    Ok(())
}
