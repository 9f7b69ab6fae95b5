//! Table reports: JSON (schema in docs/report-schema.md) and CSV.

use serde::{Deserialize, Serialize};

use super::spec::IdealSpec;
use crate::table::{CellReport, LyubeznikTable};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub tool_version: String,
    pub input: IdealSpec,
    pub ideal_hash: String,
    pub minimize: bool,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    /// (i, j, λ) for nonzero λ, sorted by (j, i)
    pub entries: Vec<(usize, usize, usize)>,
    /// every computed cell, sorted by (j, i)
    pub cells: Vec<CellReport>,
    pub shared_seconds: f64,
    pub cache_hits: usize,
}

impl TableReport {
    pub fn new(input: IdealSpec, table: &LyubeznikTable) -> Self {
        TableReport {
            tool_version: TOOL_VERSION.to_string(),
            input,
            ideal_hash: table.meta.ideal_hash.clone(),
            minimize: table.meta.minimize,
            dim_a: table.dim_a,
            entries: table.sorted_entries(),
            cells: table.cells.clone(),
            shared_seconds: table.meta.shared_seconds,
            cache_hits: table.meta.cache_hits,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One row per computed cell.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,lambda,dim_e0,seconds\n");
        for c in &self.cells {
            s.push_str(&format!("{},{},{},{},{:.6}\n", c.i, c.j, c.lambda, c.dim_e0, c.seconds));
        }
        s
    }

    /// A copy with timing fields zeroed.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.shared_seconds = 0.0;
        for c in &mut r.cells {
            c.seconds = 0.0;
        }
        r
    }
}
