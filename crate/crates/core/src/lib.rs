//! Cross section lattices of J-irreducible monoids, built as families of
//! admissible node sets of a Coxeter graph, together with brute-force
//! lattice oracles for the closed-form criteria on them.
//!
//! ```
//! use crosslat::diagram::{CoxeterGraph, NodeSet};
//! use crosslat::lattice::CrossSectionLattice;
//!
//! let g = CoxeterGraph::path('A', 4).unwrap();
//! let j0: NodeSet = "{2,3}".parse().unwrap();
//! let l = CrossSectionLattice::enumerate(&g, j0).unwrap();
//! assert_eq!(l.len(), 11);
//! let p = l.to_poset().unwrap().characteristic_polynomial().unwrap();
//! assert_eq!(p.to_string(), "x^4 - 2x^3 + x^2");
//! ```

pub mod cli;
pub mod diagram;
pub mod flags;
pub mod lattice;
pub mod poset;
pub mod report;
pub mod theorems;
