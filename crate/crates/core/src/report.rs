//! One-configuration analysis, Hasse diagram export and report row
//! serialization.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;

use crate::diagram::{CoxeterGraph, DiagramKind, NodeSet};
use crate::flags;
use crate::lattice::CrossSectionLattice;
use crate::theorems::{self, CriterionReport, ScanSummary, TheoremError};

/// A closed-form answer next to the brute-force one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<T> {
    pub criterion: Option<T>,
    pub oracle: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub graph: String,
    pub j0: String,
    pub elements: usize,
    pub rank: usize,
    pub degenerate: bool,
    pub atoms: Vec<String>,
    pub join_irreducibles: Vec<String>,
    pub distributive: Option<Verdict<bool>>,
    pub supersolvable: Option<Verdict<bool>>,
    pub m_chain: Option<Vec<String>>,
    pub charpoly: Option<Verdict<String>>,
    pub partition_type: Option<String>,
    pub combinatorially_smooth: Option<bool>,
    pub flag_symmetric: Option<bool>,
    pub notes: Vec<String>,
}

fn names(sets: impl IntoIterator<Item = NodeSet>) -> Vec<String> {
    sets.into_iter().map(|s| s.to_string()).collect()
}

/// Runs every applicable criterion and oracle on one configuration.
pub fn analyze(g: &CoxeterGraph, j0: NodeSet) -> Result<Analysis, TheoremError> {
    let l = CrossSectionLattice::enumerate(g, j0)?;
    let mut a = Analysis {
        graph: g.to_string(),
        j0: j0.to_string(),
        elements: l.len(),
        rank: 0,
        degenerate: l.is_degenerate(),
        atoms: names(l.atoms()),
        join_irreducibles: Vec::new(),
        distributive: None,
        supersolvable: None,
        m_chain: None,
        charpoly: None,
        partition_type: None,
        combinatorially_smooth: None,
        flag_symmetric: None,
        notes: Vec::new(),
    };
    if a.degenerate {
        a.notes
            .push("degenerate: the full node set is not admissible, so only the bottom remains".into());
        return Ok(a);
    }
    let lat = l.to_lattice()?;
    a.rank = g.node_count();
    a.join_irreducibles = names(lat.join_irreducibles().into_iter().map(|i| l.elements()[i]));
    a.distributive = Some(Verdict {
        criterion: Some(theorems::distributivity_criterion(g, j0)),
        oracle: lat.is_distributive(),
    });
    let witness = lat.supersolvable_witness()?;
    let criterion = match g.kind() {
        k if k.is_path() => Some(theorems::supersolvability_criterion(g, j0)?),
        DiagramKind::Cycle => Some(g.connected_components(j0).iter().all(|c| c.len() == 1)),
        _ => None,
    };
    a.supersolvable = Some(Verdict {
        criterion,
        oracle: witness.is_some(),
    });
    a.m_chain = if g.kind().is_path() && criterion == Some(true) {
        Some(names(theorems::construct_m_chain(g, j0)?))
    } else {
        witness.map(|w| names(w.into_iter().map(|i| l.elements()[i])))
    };
    a.charpoly = Some(Verdict {
        criterion: Some(theorems::charpoly_formula(g, j0).to_string()),
        oracle: lat.characteristic_polynomial()?.to_string(),
    });
    a.partition_type = lat.chain_product_factorization().map(|t| t.to_string());
    if g.kind() == DiagramKind::PathA && g.node_count() >= 2 {
        a.combinatorially_smooth = Some(theorems::combinatorially_smooth_type_a(g, j0)?);
    }
    a.flag_symmetric = Some(flags::is_flag_symmetric(lat.poset())?);
    Ok(a)
}

impl Analysis {
    /// Closed-form answers backed by a proof that disagree with brute force.
    pub fn breaches(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, v) in [("distributive", &self.distributive), ("supersolvable", &self.supersolvable)] {
            if let Some(Verdict {
                criterion: Some(c),
                oracle,
            }) = v
            {
                if c != oracle {
                    out.push(format!("{name}: criterion {c}, brute force {oracle}"));
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |v: &Option<bool>| v.map_or("-".to_string(), |b| b.to_string());
        let verdict = |v: &Option<Verdict<bool>>| match v {
            None => "-".to_string(),
            Some(v) => format!("{} (criterion {})", v.oracle, opt(&v.criterion)),
        };
        let _ = writeln!(s, "graph: {}", self.graph);
        let _ = writeln!(s, "j0: {}", self.j0);
        let _ = writeln!(s, "elements: {}", self.elements);
        let _ = writeln!(s, "degenerate: {}", self.degenerate);
        let _ = writeln!(s, "atoms: {}", self.atoms.join(" "));
        let _ = writeln!(s, "join_irreducibles: {}", self.join_irreducibles.join(" "));
        let _ = writeln!(s, "distributive: {}", verdict(&self.distributive));
        let _ = writeln!(s, "supersolvable: {}", verdict(&self.supersolvable));
        let _ = writeln!(
            s,
            "m_chain: {}",
            self.m_chain.as_ref().map_or("-".to_string(), |c| c.join(" < "))
        );
        match &self.charpoly {
            None => {
                let _ = writeln!(s, "charpoly: -");
            }
            Some(v) => {
                let _ = writeln!(s, "charpoly: {}", v.oracle);
                let _ = writeln!(s, "charpoly_formula: {}", v.criterion.as_deref().unwrap_or("-"));
            }
        }
        let _ = writeln!(s, "partition_type: {}", self.partition_type.as_deref().unwrap_or("-"));
        let _ = writeln!(s, "combinatorially_smooth: {}", opt(&self.combinatorially_smooth));
        let _ = writeln!(s, "flag_symmetric: {}", opt(&self.flag_symmetric));
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }

    /// `key,value` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        for line in self.to_text().lines() {
            let (k, v) = line.split_once(": ").unwrap_or((line, ""));
            let v = if v.contains([',', '"']) {
                format!("\"{}\"", v.replace('"', "\"\""))
            } else {
                v.to_string()
            };
            let _ = writeln!(out, "{k},{v}");
        }
        out
    }
}

/// Hasse diagram, edges pointing from each element to its covers.
pub fn to_dot(l: &CrossSectionLattice) -> String {
    let mut s = String::from("digraph cross_section {\n  rankdir=BT;\n");
    let _ = writeln!(s, "  label=\"{} J0={}\";", l.graph(), l.j0());
    for (i, u) in l.elements().iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{u}\"];");
    }
    for (i, &u) in l.elements().iter().enumerate() {
        for v in l.covers(u).expect("member") {
            let _ = writeln!(s, "  n{i} -> n{};", l.index_of(v).expect("member"));
        }
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct ElementRow {
    rank: usize,
    mask: String,
    members: Vec<usize>,
}

fn element_rows(l: &CrossSectionLattice) -> Vec<ElementRow> {
    l.elements()
        .iter()
        .map(|u| ElementRow {
            rank: u.len(),
            mask: format!("{:#x}", u.bits()),
            members: u.iter().collect(),
        })
        .collect()
}

pub fn lattice_json(l: &CrossSectionLattice) -> serde_json::Value {
    serde_json::json!({
        "graph": l.graph().to_string(),
        "j0": l.j0().to_string(),
        "size": l.len(),
        "degenerate": l.is_degenerate(),
        "elements": element_rows(l),
    })
}

pub fn lattice_csv(l: &CrossSectionLattice) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "mask", "members"])?;
    for u in l.elements() {
        w.write_record([u.len().to_string(), format!("{:#x}", u.bits()), u.to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8"))
}

/// Report rows with a header, columns in the fixed order.
pub fn rows_csv(rows: &[CriterionReport]) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["graph", "n", "j0_mask", "criterion", "value", "oracle", "agree", "note"])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8"))
}

pub fn rows_json(rows: &[CriterionReport]) -> serde_json::Value {
    serde_json::json!({
        "rows": rows,
        "summary": ScanSummary::of(rows),
    })
}

pub fn rows_text(rows: &[CriterionReport]) -> String {
    let mut s = String::new();
    for r in rows {
        let mark = if r.agree { "ok " } else { "DIFF" };
        let _ = write!(
            s,
            "{mark} {} j0={} {}: {} | oracle {}",
            r.graph, r.j0_mask, r.criterion, r.value, r.oracle
        );
        if !r.note.is_empty() {
            let _ = write!(s, " [{}]", r.note);
        }
        s.push('\n');
    }
    let _ = writeln!(s, "summary: {}", ScanSummary::of(rows));
    s
}
