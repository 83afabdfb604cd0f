//! Report types shared by the subcommands. JSON reports follow
//! `docs/report-schema.json`.

use serde::Serialize;

use sdp_hsp::blackbox::QueryStats;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct AlphaEntry {
    pub alpha: u64,
    pub class: u8,
    pub class_name: &'static str,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub p: u64,
    pub q: u64,
    pub r: u32,
    pub alphas: Vec<AlphaEntry>,
    /// Alphas grouped by isomorphism of the resulting groups.
    pub families: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize)]
pub struct GroupInfo {
    pub p: u64,
    pub r: u32,
    pub m: usize,
    pub order: u64,
}

#[derive(Serialize)]
pub struct ConfigInfo {
    pub encoding: String,
    pub salt_policy: &'static str,
    pub generators: &'static str,
    pub backend: &'static str,
    pub delta: f64,
}

#[derive(Serialize)]
pub struct Queries {
    pub mul: u64,
    pub inv: u64,
    pub eq: u64,
    pub f: u64,
    pub superposed_calls: u64,
    pub classical_evaluations: u64,
}

impl From<QueryStats> for Queries {
    fn from(q: QueryStats) -> Self {
        Queries {
            mul: q.mul,
            inv: q.inv,
            eq: q.eq,
            f: q.f,
            superposed_calls: q.superposed_calls,
            classical_evaluations: q.classical_evaluations(),
        }
    }
}

#[derive(Serialize)]
pub struct SubgroupInfo {
    pub generators: Vec<Vec<u64>>,
    pub order: usize,
}

#[derive(Serialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub group: GroupInfo,
    pub hidden: String,
    pub config: ConfigInfo,
    pub seed: u64,
    /// Coordinates of the returned handles, decoded after the solve.
    pub found_generators: Vec<Vec<u64>>,
    pub found_order: usize,
    pub truth: SubgroupInfo,
    #[serde(rename = "match")]
    pub matched: bool,
    pub queries: Queries,
    pub rounds: u32,
    pub samples: usize,
    pub low_confidence: bool,
    pub branches: Vec<&'static str>,
    /// Backend the Abelian solves actually ran on.
    pub backend_used: &'static str,
    /// `None` under `--no-timing`.
    pub wall_ms: Option<f64>,
}

impl SolveReport {
    pub const CSV_HEADER: [&'static str; 16] = [
        "command", "p", "r", "m", "order", "hidden", "seed", "match", "found_order", "truth_order", "mul", "inv", "eq", "f",
        "superposed_calls", "wall_ms",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        let q = &self.queries;
        vec![
            self.command.to_string(),
            self.group.p.to_string(),
            self.group.r.to_string(),
            self.group.m.to_string(),
            self.group.order.to_string(),
            self.hidden.clone(),
            self.seed.to_string(),
            self.matched.to_string(),
            self.found_order.to_string(),
            self.truth.order.to_string(),
            q.mul.to_string(),
            q.inv.to_string(),
            q.eq.to_string(),
            q.f.to_string(),
            q.superposed_calls.to_string(),
            fmt_ms(self.wall_ms),
        ]
    }
}

pub fn fmt_ms(ms: Option<f64>) -> String {
    ms.map(|v| format!("{v:.3}")).unwrap_or_default()
}

#[derive(Serialize)]
pub struct CriterionLine {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct SelftestReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub mode: &'static str,
    pub passed: bool,
    pub criteria: Vec<CriterionLine>,
}
