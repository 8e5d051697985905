//! JSON result documents. Field order is fixed by struct declaration and
//! every value besides `timing_ms` is deterministic for a given input, so
//! two runs diff cleanly. Exact values are serialized as `p/q` strings,
//! never as floats.

use madkit_core::{mad_exact, Graph, Result, VerificationReport};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Girth rendered as a number or the string `"inf"` for forests.
#[derive(Clone, Copy, Debug)]
pub struct GirthDoc(pub Option<usize>);

impl Serialize for GirthDoc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(g) => serializer.serialize_u64(g as u64),
            None => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub mad: String,
    pub girth: GirthDoc,
    pub degeneracy: i64,
    pub max_degree: usize,
}

impl GraphStats {
    pub fn compute(g: &Graph) -> Result<GraphStats> {
        Ok(GraphStats {
            n: g.vertex_count(),
            m: g.edge_count(),
            mad: mad_exact(g)?.value.to_string(),
            girth: GirthDoc(g.girth()),
            degeneracy: g.degeneracy().0,
            max_degree: g.max_degree(),
        })
    }
}

#[derive(Serialize, Debug)]
pub struct ReportDoc {
    pub passed: bool,
    pub mad_original: String,
    pub mad_remainder: String,
    pub degeneracy_ok: bool,
    pub mad_drop_ok: bool,
    pub peel_order_ok: Option<bool>,
    pub eviction_ok: Option<bool>,
    pub independence_ok: Option<bool>,
    pub forest_ok: Option<bool>,
    pub failures: Vec<String>,
}

impl From<&VerificationReport> for ReportDoc {
    fn from(r: &VerificationReport) -> ReportDoc {
        ReportDoc {
            passed: r.passed(),
            mad_original: r.mad_original.to_string(),
            mad_remainder: r.mad_remainder.to_string(),
            degeneracy_ok: r.degeneracy_ok,
            mad_drop_ok: r.mad_drop_ok,
            peel_order_ok: r.peel_order_ok,
            eviction_ok: r.eviction_ok,
            independence_ok: r.independence_ok,
            forest_ok: r.forest_ok,
            failures: r.failures.clone(),
        }
    }
}

/// One round of decomposition: the retained set, what is left, and the
/// verification outcome, all in original labels (sorted).
#[derive(Serialize, Debug)]
pub struct LevelDoc {
    pub level: usize,
    pub k: usize,
    pub set: Vec<String>,
    pub remainder: Vec<String>,
    pub report: ReportDoc,
}

#[derive(Serialize, Debug)]
pub struct ResultDocument {
    pub schema: u32,
    pub operation: String,
    pub input: String,
    pub graph: GraphStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<LevelDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
    pub timing_ms: f64,
}

impl ResultDocument {
    pub fn new(operation: &str, input: &str, graph: GraphStats) -> ResultDocument {
        ResultDocument {
            schema: SCHEMA_VERSION,
            operation: operation.to_string(),
            input: input.to_string(),
            graph,
            k: None,
            witness: None,
            levels: Vec::new(),
            report: None,
            timing_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// One JSON line per notable search event, appended to the findings file.
#[derive(Serialize, Debug)]
pub struct FindingRecord {
    pub schema: u32,
    pub event: String,
    pub input: String,
    pub c1: String,
    pub c2: String,
    pub mad: String,
    pub n: usize,
    pub edges: Vec<(String, String)>,
}
