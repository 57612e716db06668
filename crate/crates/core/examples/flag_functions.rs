//! Flag f- and h-vectors of a lattice and its flag quasi-symmetric
//! function in both bases.

use crosslat::diagram::{CoxeterGraph, NodeSet};
use crosslat::flags::{self, Composition};
use crosslat::lattice::CrossSectionLattice;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = CoxeterGraph::path('A', 4)?;
    let j0: NodeSet = "{1,4}".parse()?;
    let lat = CrossSectionLattice::enumerate(&g, j0)?.to_lattice()?;
    let p = lat.poset();
    let alpha = flags::flag_f_vector(p)?;
    let beta = flags::beta_from_alpha(&alpha);
    println!("{g}, J0 = {j0}");
    println!("{:<10} {:>6} {:>6}", "S", "alpha", "beta");
    for (s, a) in &alpha {
        println!("{:<10} {a:>6} {:>6}", s.to_string(), beta[s]);
    }

    let f = flags::flag_qsym(p)?;
    let m = flags::fundamental_to_monomial(&f)?;
    println!("monomial expansion:");
    for (s, c) in m.terms() {
        println!("  {c:>3} M{}", Composition::from_set(s, m.degree())?);
    }
    println!("symmetric: {}", flags::is_symmetric(&f)?);
    if let Some(t) = lat.chain_product_factorization() {
        let h = flags::h_gamma(&Composition::new(t.parts().to_vec())?, t.rank())?;
        println!("partition type {t}; equals h{t}: {}", h == m);
    }
    println!("{}", serde_json::to_string(&m)?);
    Ok(())
}
