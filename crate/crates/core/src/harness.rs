//! Conjecture sweeps: for each graph, enumerate colorings and compare the
//! longest induced rainbow path against the chromatic number, alongside the
//! colorful-path construction and the color-orientation rainbow path.
//!
//! A coloring without an induced rainbow path on `χ` vertices is recorded as
//! report data; it never aborts a run.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chromatic::{chromatic_number_capped, enumerate_colorings, random_proper_coloring, DEFAULT_EXACT_CAP};
use crate::constructive::theorem2_colorful_path;
use crate::error::{Error, Result};
use crate::gen_io::{encode_graph6, read_corpus};
use crate::graph::{ColoredGraph, Coloring, Graph};
use crate::oracle::{gallai_roy_rainbow_path, longest_induced_path, longest_induced_rainbow_path, SearchBudget};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HarnessConfig {
    /// Colors allowed beyond the chromatic number.
    pub max_colors_delta: usize,
    /// Canonical colorings enumerated per graph.
    pub coloring_cap: usize,
    /// Extra random colorings drawn when enumeration is truncated.
    pub sample_count: usize,
    pub seed: u64,
    pub budget: SearchBudget,
    /// Worker threads for corpus runs; 0 picks the rayon default.
    pub parallelism: usize,
    /// Run the colorful-path construction from every start vertex.
    pub thorough: bool,
    /// Abort on a malformed corpus line instead of skipping it.
    pub abort_on_malformed: bool,
    pub exact_cap: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            max_colors_delta: 0,
            coloring_cap: 1000,
            sample_count: 0,
            seed: 0,
            budget: SearchBudget::default(),
            parallelism: 0,
            thorough: false,
            abort_on_malformed: false,
            exact_cap: DEFAULT_EXACT_CAP,
        }
    }
}

impl HarnessConfig {
    pub fn validate(&self) -> Result<()> {
        if self.coloring_cap == 0 || self.exact_cap == 0 {
            return Err(Error::InvalidParameter("harness caps must be positive".into()));
        }
        self.budget.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// First 16 hex digits of the SHA-256 of the canonical coloring.
    pub coloring_digest: String,
    pub longest_induced_rainbow_order: usize,
    pub theorem2_color_count: usize,
    pub gallai_roy_order: usize,
    /// Thorough mode: whether every start vertex met its color guarantee.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theorem2_all_starts_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub graph_id: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub chi: usize,
    pub longest_induced_path_order: usize,
    /// Start vertex of the colorful-path construction.
    pub pivot: usize,
    pub colorings_checked: usize,
    pub truncated: bool,
    pub sampled: usize,
    pub min_rainbow_order_observed: usize,
    pub holds_for_all_checked: bool,
    pub witness_coloring: Option<Coloring>,
    /// Failed internal consistency checks; empty on a healthy run.
    pub anomalies: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

pub fn coloring_digest(c: &Coloring) -> String {
    let hash = Sha256::digest(c.to_string().as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

// Seed mixing so every graph gets its own reproducible sample stream.
fn graph_seed(seed: u64, graph6: &str) -> u64 {
    let hash = Sha256::digest(graph6.as_bytes());
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&hash[..8]);
    seed ^ u64::from_le_bytes(bytes)
}

struct ComponentInfo {
    vertices: Vec<usize>,
    chi: usize,
}

pub fn check_graph(g: &Graph, cfg: &HarnessConfig, graph_id: &str) -> Result<ConjectureReport> {
    cfg.validate()?;
    if let Some((a, b, c)) = g.find_triangle() {
        return Err(Error::NotTriangleFree(a, b, c));
    }
    if g.vertex_count() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let graph6 = encode_graph6(g);
    let chi = chromatic_number_capped(g, cfg.exact_cap)?.chi;
    let lip = longest_induced_path(g, &cfg.budget)?.path.order();

    let components = g
        .connected_components()
        .into_iter()
        .map(|vertices| {
            let sub = g.induced_subgraph(&vertices)?;
            Ok(ComponentInfo { chi: chromatic_number_capped(&sub.graph, cfg.exact_cap)?.chi, vertices })
        })
        .collect::<Result<Vec<_>>>()?;
    let pivot_component = components.iter().position(|c| c.chi == chi).expect("some component attains chi");
    let pivot = components[pivot_component].vertices[0];

    let max_colors = chi + cfg.max_colors_delta;
    let sweep = enumerate_colorings(g, max_colors, cfg.coloring_cap);
    let mut colorings = sweep.colorings;
    let mut sampled = 0;
    if sweep.truncated && cfg.sample_count > 0 {
        let mut seen: HashSet<Coloring> = colorings.iter().cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(graph_seed(cfg.seed, &graph6));
        let mut attempts = 0;
        while sampled < cfg.sample_count && attempts < 10 * cfg.sample_count {
            attempts += 1;
            if let Some(c) = random_proper_coloring(g, max_colors, 1_000_000, &mut rng) {
                if seen.insert(c.clone()) {
                    colorings.push(c);
                    sampled += 1;
                }
            }
        }
    }

    let mut checks = Vec::with_capacity(colorings.len());
    let mut anomalies = Vec::new();
    let mut witness_coloring = None;
    let mut min_rainbow = usize::MAX;
    for coloring in &colorings {
        let cg = ColoredGraph::new(g.clone(), coloring.clone())?;
        let rainbow = longest_induced_rainbow_path(&cg, &cfg.budget)?.path.order();
        let gallai_roy = gallai_roy_rainbow_path(&cg)?;
        let theorem2_color_count = colorful_from(&cg, &components[pivot_component], pivot)?;
        let theorem2_all_starts_ok = if cfg.thorough {
            let mut ok = true;
            for comp in &components {
                for &v in &comp.vertices {
                    ok &= colorful_from(&cg, comp, v)? >= comp.chi.div_ceil(2);
                }
            }
            Some(ok)
        } else {
            None
        };

        let digest = coloring_digest(coloring);
        if gallai_roy.order() < chi {
            anomalies.push(format!("{digest}: color-orientation path order {} < chi {chi}", gallai_roy.order()));
        }
        if theorem2_color_count < chi.div_ceil(2) {
            anomalies.push(format!("{digest}: colorful path sees {theorem2_color_count} colors < ceil(chi/2)"));
        }
        if theorem2_all_starts_ok == Some(false) {
            anomalies.push(format!("{digest}: colorful path guarantee failed for some start vertex"));
        }
        if rainbow > lip {
            anomalies.push(format!("{digest}: rainbow order {rainbow} exceeds induced path order {lip}"));
        }
        if rainbow < chi && witness_coloring.is_none() {
            log::warn!("{graph_id}: coloring {coloring} has no induced rainbow path on {chi} vertices");
            witness_coloring = Some(coloring.clone());
        }
        min_rainbow = min_rainbow.min(rainbow);
        checks.push(CheckRecord {
            coloring_digest: digest,
            longest_induced_rainbow_order: rainbow,
            theorem2_color_count,
            gallai_roy_order: gallai_roy.order(),
            theorem2_all_starts_ok,
        });
    }

    Ok(ConjectureReport {
        graph_id: graph_id.to_string(),
        graph6,
        n: g.vertex_count(),
        m: g.edge_count(),
        chi,
        longest_induced_path_order: lip,
        pivot,
        colorings_checked: checks.len(),
        truncated: sweep.truncated,
        sampled,
        min_rainbow_order_observed: if checks.is_empty() { 0 } else { min_rainbow },
        holds_for_all_checked: witness_coloring.is_none(),
        witness_coloring,
        anomalies,
        checks,
    })
}

fn colorful_from(cg: &ColoredGraph, comp: &ComponentInfo, v: usize) -> Result<usize> {
    let (sub, map) = cg.induced(&comp.vertices)?;
    let local = map.local(v).expect("vertex in component");
    Ok(theorem2_colorful_path(&sub, local, comp.chi)?.color_count)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub graphs_processed: usize,
    pub graphs_skipped: usize,
    pub checks_run: usize,
    pub violations: usize,
    pub anomalies: usize,
    pub wall_time_secs: f64,
    pub warnings: Vec<String>,
}

impl std::fmt::Display for CorpusSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "graphs processed: {}\ngraphs skipped: {}\nchecks run: {}\nviolations found: {}\nanomalies: {}\nwall time: {:.3}s",
            self.graphs_processed,
            self.graphs_skipped,
            self.checks_run,
            self.violations,
            self.anomalies,
            self.wall_time_secs
        )
    }
}

/// Checks every graph of a corpus file and writes one JSON report per line
/// to `out` (when given), in corpus order.
pub fn run_corpus(path: &std::path::Path, out: Option<&std::path::Path>, cfg: &HarnessConfig) -> Result<CorpusSummary> {
    let contents = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let (reports, summary) = run_corpus_str(&contents, cfg)?;
    if let Some(out) = out {
        let mut file = fs::File::create(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
        for report in &reports {
            let line = serde_json::to_string(report).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(file, "{line}")?;
        }
    }
    Ok(summary)
}

/// In-memory form of [`run_corpus`].
pub fn run_corpus_str(contents: &str, cfg: &HarnessConfig) -> Result<(Vec<ConjectureReport>, CorpusSummary)> {
    cfg.validate()?;
    let start = Instant::now();
    let mut summary = CorpusSummary::default();
    let mut jobs = Vec::new();
    for entry in read_corpus(contents) {
        match entry.graph {
            Ok(g) => jobs.push((format!("line-{}", entry.line), g)),
            Err(e) if cfg.abort_on_malformed => {
                return Err(Error::Parse(format!("line {}: {e}", entry.line)));
            }
            Err(e) => {
                let msg = format!("line {}: skipping malformed graph6 {:?}: {e}", entry.line, entry.text);
                log::warn!("{msg}");
                summary.warnings.push(msg);
                summary.graphs_skipped += 1;
            }
        }
    }
    let run = || -> Vec<(String, Result<ConjectureReport>)> {
        jobs.par_iter().map(|(id, g)| (id.clone(), check_graph(g, cfg, id))).collect()
    };
    let results = if cfg.parallelism > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(run)
    } else {
        run()
    };
    let mut reports = Vec::new();
    for (id, result) in results {
        match result {
            Ok(report) => {
                summary.graphs_processed += 1;
                summary.checks_run += report.colorings_checked;
                summary.violations += usize::from(!report.holds_for_all_checked);
                summary.anomalies += report.anomalies.len();
                reports.push(report);
            }
            Err(e) => {
                let msg = format!("{id}: skipped: {e}");
                log::warn!("{msg}");
                summary.warnings.push(msg);
                summary.graphs_skipped += 1;
            }
        }
    }
    summary.wall_time_secs = start.elapsed().as_secs_f64();
    Ok((reports, summary))
}
