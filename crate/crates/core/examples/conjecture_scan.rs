//! Runs the characteristic polynomial and chain product scans over the
//! three path families and writes the rows as CSV.
//!
//!     cargo run --release --example conjecture_scan -- 7 findings.csv

use std::{env, fs};

use crosslat::diagram::DiagramKind;
use crosslat::report;
use crosslat::theorems::{self, ScanSummary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = env::args().skip(1);
    let n_max: usize = args.next().map_or(Ok(6), |s| s.parse())?;
    let out = args.next();
    let mut rows = Vec::new();
    for kind in [DiagramKind::PathA, DiagramKind::PathB, DiagramKind::PathC] {
        let charpoly = theorems::conjecture_charpoly_scan(kind, n_max)?;
        let chains = theorems::conjecture_chains_scan(kind, n_max)?;
        println!("{kind:?} charpoly: {}", ScanSummary::of(&charpoly));
        println!("{kind:?} chains:   {}", ScanSummary::of(&chains));
        rows.extend(charpoly);
        rows.extend(chains);
    }
    for r in rows.iter().filter(|r| r.is_counterexample()) {
        println!("counterexample: {} J0 mask {} {}: {} vs {}", r.graph, r.j0_mask, r.criterion, r.value, r.oracle);
    }
    if let Some(path) = out {
        fs::write(&path, report::rows_csv(&rows)?)?;
        println!("wrote {} rows to {path}", rows.len());
    }
    Ok(())
}
