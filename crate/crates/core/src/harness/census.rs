use std::collections::BTreeMap;

use serde::Serialize;

use super::VERSION;
use crate::error::{Error, Result};
use crate::graph::{CliqueKind, GammaGraph, MAX_DOT_Q};
use crate::simplex::{LineId, MAX_LINES_Q};

#[derive(Clone, Debug, Serialize)]
pub struct CliqueRecord {
    pub ids: Vec<LineId>,
    pub kind: CliqueKind,
}

/// Every maximal clique of Γ with totals, sorted by (size, ids).
#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub q: u32,
    pub version: String,
    pub points: usize,
    pub lines: usize,
    pub degree: Option<usize>,
    /// Keyed by `stars`, `tops`, `star_and_top` and `cliques`.
    pub totals: BTreeMap<String, usize>,
    /// Clique count per size.
    pub sizes: BTreeMap<usize, usize>,
    pub cliques: Vec<CliqueRecord>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        super::to_json(self)
    }
}

pub struct CensusExport {
    pub report: CensusReport,
    pub dot: Option<String>,
}

/// Builds Γ, enumerates its maximal cliques and optionally renders it as DOT
/// (q ≤ 4). Supported for q ≤ 5.
pub fn census_export(q: u32, with_dot: bool) -> Result<CensusExport> {
    if q > MAX_LINES_Q {
        return Err(Error::Usage(format!(
            "census needs q <= {MAX_LINES_Q}, got {q}"
        )));
    }
    if with_dot && q > MAX_DOT_Q {
        return Err(Error::Usage(format!(
            "DOT export needs q <= {MAX_DOT_Q}, got {q}"
        )));
    }
    let g = GammaGraph::for_q(q)?;
    let cliques = g.maximal_cliques()?;
    let mut totals: BTreeMap<String, usize> = ["stars", "tops", "star_and_top"]
        .iter()
        .map(|k| (k.to_string(), 0))
        .collect();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    let records: Vec<CliqueRecord> = cliques
        .iter()
        .map(|c| {
            let key = match c.kind() {
                CliqueKind::Star => "stars",
                CliqueKind::Top => "tops",
                CliqueKind::StarAndTop => "star_and_top",
            };
            *totals.get_mut(key).unwrap() += 1;
            *sizes.entry(c.len()).or_default() += 1;
            CliqueRecord {
                ids: c.line_ids().expect("from the graph").to_vec(),
                kind: c.kind(),
            }
        })
        .collect();
    totals.insert("cliques".into(), records.len());
    let report = CensusReport {
        q,
        version: VERSION.into(),
        points: g.index().points().len(),
        lines: g.len(),
        degree: g.uniform_degree(),
        totals,
        sizes,
        cliques: records,
    };
    let dot = if with_dot { Some(g.to_dot()?) } else { None };
    Ok(CensusExport { report, dot })
}
