//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rainbowpath::chromatic::{chromatic_number, dsatur_coloring, enumerate_colorings, random_proper_coloring};
use rainbowpath::constructive::{
    compute_bounds, guaranteed_length, lemma1_procedure, theorem2_colorful_path, Grading, Lemma1Variant,
};
use rainbowpath::gen_io::{decode_graph6, encode_graph6, mycielski_graph, petersen, random_triangle_free};
use rainbowpath::harness::{run_corpus, ConjectureReport, HarnessConfig};
use rainbowpath::oracle::{gallai_roy_rainbow_path, longest_induced_path, longest_induced_rainbow_path, SearchBudget};
use rainbowpath::{ColoredGraph, Coloring, Graph};

type Outcome = Result<String, String>;
type Fixture = (&'static str, usize, &'static [(usize, usize)]);

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "bounds-exactness", limit: Duration::from_secs(1), run: bounds_exactness },
        Criterion { name: "guarantee-inversion", limit: Duration::from_secs(1), run: guarantee_inversion },
        Criterion { name: "gallai-roy-property", limit: Duration::from_secs(120), run: gallai_roy_property },
        Criterion { name: "gyarfas-property", limit: Duration::from_secs(300), run: gyarfas_property },
        Criterion { name: "colorful-path-construction", limit: Duration::from_secs(600), run: colorful_construction },
        Criterion { name: "lemma1-soundness", limit: Duration::from_secs(120), run: lemma1_soundness },
        Criterion { name: "oracle-cross-validation", limit: Duration::from_secs(120), run: oracle_cross_validation },
        Criterion { name: "conjecture-sweep-regression", limit: Duration::from_secs(60), run: sweep_regression },
        Criterion { name: "graph6-round-trip", limit: Duration::from_secs(5), run: graph6_round_trip },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; exceeded {:?}", c.limit)),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {} [{:.2}s] {detail}", c.name, elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} [{:.2}s] {detail}", c.name, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// --- corpus -------------------------------------------------------------

struct Named {
    name: String,
    graph: Graph,
}

/// C5, Petersen, Mycielski graphs with chromatic number 2..=5 and 500 seeded
/// random triangle-free graphs on 4..=14 vertices.
fn standard_corpus() -> Vec<Named> {
    let mut out = vec![
        Named { name: "C5".into(), graph: Graph::cycle(5).unwrap() },
        Named { name: "petersen".into(), graph: petersen() },
    ];
    for chi in 2..=5 {
        out.push(Named { name: format!("mycielski-{chi}"), graph: mycielski_graph(chi).unwrap() });
    }
    for seed in 0..500u64 {
        let n = 4 + (seed % 11) as usize;
        let p = [0.2, 0.3, 0.4, 0.55][(seed / 11 % 4) as usize];
        out.push(Named { name: format!("random-{seed}"), graph: random_triangle_free(n, p, seed).unwrap() });
    }
    out
}

// --- independent checks ---------------------------------------------------

fn is_induced_path(g: &Graph, seq: &[usize]) -> bool {
    let distinct: BTreeSet<usize> = seq.iter().copied().collect();
    if seq.is_empty() || distinct.len() != seq.len() {
        return false;
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if g.has_edge(seq[i], seq[j]) != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

fn distinct_colors(c: &Coloring, seq: &[usize]) -> usize {
    seq.iter().map(|&v| c.color(v)).collect::<BTreeSet<_>>().len()
}

fn proper(g: &Graph, c: &Coloring) -> bool {
    g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v))
}

/// Plain backtracking k-colorability, no heuristics.
fn naive_colorable(g: &Graph, k: u32) -> bool {
    fn go(g: &Graph, k: u32, v: usize, colors: &mut Vec<u32>) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in 1..=k {
            if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                colors.push(c);
                if go(g, k, v + 1, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    go(g, k, 0, &mut Vec::new())
}

/// Exact chromatic number, cross-checked against plain backtracking on small graphs.
fn exact_chi(g: &Graph) -> Result<usize, String> {
    let result = chromatic_number(g).map_err(|e| e.to_string())?;
    let chi = result.chi;
    ensure(proper(g, &result.witness) && result.witness.palette_size() == chi, || "bad chromatic witness".into())?;
    if g.vertex_count() <= 14 && chi > 1 {
        ensure(!naive_colorable(g, chi as u32 - 1), || format!("chromatic number {chi} is not minimal"))?;
    }
    Ok(chi)
}

// --- criteria ------------------------------------------------------------

fn bounds_exactness() -> Outcome {
    let b3 = compute_bounds(3).map_err(|e| e.to_string())?;
    let w: Vec<BigUint> = [0u32, 1, 65].iter().map(|&x| BigUint::from(x)).collect();
    ensure(b3.r == BigUint::from(64u32) && b3.w == w && b3.c == BigUint::from(4224u32), || format!("s=3: {b3:?}"))?;
    let b4 = compute_bounds(4).map_err(|e| e.to_string())?;
    ensure(b4.r == BigUint::from(2916u32), || format!("s=4: r={}", b4.r))?;
    for s in 3..=12u32 {
        let b = compute_bounds(s).map_err(|e| e.to_string())?;
        let closed = (b.r.pow(s - 1) - 1u32) / (&b.r - 1u32);
        ensure(*b.w1() == closed, || format!("s={s}: w1={} closed form {closed}", b.w1()))?;
        let direct = BigUint::from(4u32) * BigUint::from(s - 1).pow(2 * (s - 1));
        ensure(b.r == direct, || format!("s={s}: r={} expected {direct}", b.r))?;
    }
    Ok("r, w, c exact for s=3,4; closed form w1 for s in 3..=12".into())
}

fn guarantee_inversion() -> Outcome {
    ensure(guaranteed_length(&BigUint::from(4224u32)) == 2, || "guaranteed_length(4224) != 2".into())?;
    ensure(guaranteed_length(&BigUint::from(4225u32)) == 3, || "guaranteed_length(4225) != 3".into())?;
    let c: Vec<BigUint> = (3..=5).map(|s| compute_bounds(s).unwrap().c).collect();
    let c5 = c[2].clone();
    let mut samples = vec![BigUint::one()];
    let mut x = BigUint::one();
    while x < c5 {
        x = (&x * 21u32) / 20u32 + 1u32;
        samples.push(x.clone().min(c5.clone()));
    }
    for ci in &c {
        samples.push(ci.clone());
        samples.push(ci + 1u32);
    }
    samples.retain(|x| *x <= c5);
    samples.sort();
    samples.dedup();
    let mut prev = 0;
    for chi in &samples {
        let s = guaranteed_length(chi);
        ensure(s >= prev, || format!("guaranteed_length drops at {chi}: {prev} -> {s}"))?;
        prev = s;
    }
    // every crossing sits exactly at c(s)
    for (i, ci) in c.iter().enumerate() {
        let s = i as u32 + 3;
        ensure(guaranteed_length(ci) == s - 1 && guaranteed_length(&(ci + 1u32)) == s, || {
            format!("crossing for s={s} not at c={ci}")
        })?;
    }
    Ok(format!("{} samples in [1, c(5)], monotone", samples.len()))
}

fn gallai_roy_property() -> Outcome {
    let mut checked = 0;
    for item in standard_corpus() {
        let g = &item.graph;
        let chi = exact_chi(g)?;
        let sweep = enumerate_colorings(g, chi, 50);
        for coloring in sweep.colorings {
            let cg = ColoredGraph::new(g.clone(), coloring.clone()).map_err(|e| e.to_string())?;
            let path = gallai_roy_rainbow_path(&cg).map_err(|e| format!("{}: {e}", item.name))?;
            let seq = path.vertices();
            ensure(seq.windows(2).all(|w| g.has_edge(w[0], w[1])), || format!("{}: {path} is not a walk", item.name))?;
            ensure(seq.windows(2).all(|w| coloring.color(w[0]) < coloring.color(w[1])), || {
                format!("{}: colors along {path} do not increase under {coloring}", item.name)
            })?;
            ensure(seq.len() >= chi, || format!("{}: {path} has order {} < chi {chi}", item.name, seq.len()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} colorings, zero violations"))
}

fn gyarfas_property() -> Outcome {
    let budget = SearchBudget::default();
    let mut checked = 0;
    for item in standard_corpus() {
        let g = &item.graph;
        if g.vertex_count() > 20 {
            continue;
        }
        let chi = exact_chi(g)?;
        let result = longest_induced_path(g, &budget).map_err(|e| format!("{}: {e}", item.name))?;
        ensure(result.exact, || format!("{}: search not exact", item.name))?;
        ensure(is_induced_path(g, result.path.vertices()), || format!("{}: {} not induced", item.name, result.path))?;
        ensure(result.path.order() >= chi, || {
            format!("{}: longest induced path {} shorter than chi {chi}", item.name, result.path.order())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} graphs with n <= 20, zero violations"))
}

fn colorful_construction() -> Outcome {
    let mut runs = 0;
    for item in standard_corpus() {
        let g = &item.graph;
        let chi = exact_chi(g)?;
        if chi > 5 {
            continue;
        }
        let components = g.connected_components();
        let comp_graphs: Vec<_> = components.iter().map(|c| g.induced_subgraph(c).unwrap()).collect();
        let comp_chi: Vec<usize> = comp_graphs.iter().map(|s| exact_chi(&s.graph)).collect::<Result<_, _>>()?;
        ensure(comp_chi.iter().copied().max() == Some(chi), || format!("{}: component chi mismatch", item.name))?;
        for coloring in enumerate_colorings(g, chi, 50).colorings {
            for (sub, &k) in comp_graphs.iter().zip(&comp_chi) {
                let local = Coloring::new(sub.to_parent.iter().map(|&v| coloring.color(v)).collect()).unwrap();
                let cg = ColoredGraph::new(sub.graph.clone(), local.clone()).map_err(|e| e.to_string())?;
                for v in 0..sub.graph.vertex_count() {
                    let result = theorem2_colorful_path(&cg, v, k)
                        .map_err(|e| format!("{} start {}: {e}", item.name, sub.to_parent[v]))?;
                    let seq = result.path.vertices();
                    let ctx = || format!("{} coloring {coloring} start {}", item.name, sub.to_parent[v]);
                    ensure(seq[0] == v, || format!("{}: path does not start at v", ctx()))?;
                    ensure(is_induced_path(&sub.graph, seq), || format!("{}: path not induced", ctx()))?;
                    let seen = distinct_colors(&local, seq);
                    ensure(seen == result.color_count, || format!("{}: color count misreported", ctx()))?;
                    ensure(seen >= k.div_ceil(2), || format!("{}: {seen} colors < ceil({k}/2)", ctx()))?;
                    for rec in &result.trace.records {
                        ensure(rec.recursive_path.iter().all(|&u| local.color(u) != rec.removed_color), || {
                            format!("{}: Q meets removed color at depth {}", ctx(), rec.depth)
                        })?;
                        let w = &rec.neighbor_set;
                        ensure(w.iter().all(|&a| w.iter().all(|&b| !sub.graph.has_edge(a, b))), || {
                            format!("{}: neighbor set not independent at depth {}", ctx(), rec.depth)
                        })?;
                    }
                    let violations = result.violations(&cg);
                    ensure(violations.is_empty(), || format!("{}: {violations:?}", ctx()))?;
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} constructions, zero violations"))
}

fn random_grading(g: &Graph, rng: &mut ChaCha8Rng) -> Grading {
    let n = g.vertex_count();
    let part_count = rng.gen_range(1..=n.clamp(1, 4));
    let mut parts = vec![Vec::new(); part_count];
    for v in 0..n {
        parts[rng.gen_range(0..part_count)].push(v);
    }
    parts.retain(|p| !p.is_empty());
    let colorings = parts
        .iter()
        .map(|p| {
            let sub = g.induced_subgraph(p).unwrap();
            let max = sub.graph.vertex_count().max(1);
            random_proper_coloring(&sub.graph, max, 10_000, rng)
                .unwrap_or_else(|| dsatur_coloring(&sub.graph))
                .colors()
                .to_vec()
        })
        .collect();
    Grading::with_minimal_k(g, parts, colorings).unwrap()
}

fn check_lemma1(cg: &ColoredGraph, grading: &Grading, s: usize, tally: &mut [usize; 3]) -> Result<(), String> {
    let g = cg.graph();
    let outcome = lemma1_procedure(cg, grading, s).map_err(|e| e.to_string())?;
    let part = grading.part_index(g.vertex_count());
    match &outcome.variant {
        Lemma1Variant::RainbowPath { path, .. } => {
            let seq = path.vertices();
            ensure(is_induced_path(g, seq), || format!("{path} not induced"))?;
            ensure(distinct_colors(cg.coloring(), seq) == seq.len(), || format!("{path} not rainbow"))?;
            ensure(seq.len() == s, || format!("{path} has order {} != {s}", seq.len()))?;
            tally[0] += 1;
        }
        Lemma1Variant::Witness { vertex, later_neighbors, .. } => {
            ensure(later_neighbors.len() == s, || "witness set size".into())?;
            ensure(later_neighbors.iter().all(|&u| g.has_edge(*vertex, u) && part[u] > part[*vertex]), || {
                format!("witness {vertex}: {later_neighbors:?} not later neighbors")
            })?;
            ensure(distinct_colors(cg.coloring(), later_neighbors) == s, || "witness colors repeat".into())?;
            tally[1] += 1;
        }
        Lemma1Variant::NoGuarantee => {
            ensure(outcome.trace.precondition.holds != Some(true), || "no outcome under the precondition".into())?;
            tally[2] += 1;
        }
    }
    let t = &outcome.trace;
    // acyclic: arcs strictly increase color
    ensure(t.arcs.iter().all(|&(u, v)| cg.color(u) < cg.color(v) && g.has_edge(u, v)), || "bad arc".into())?;
    for path in [&t.forward_path, &t.backward_path] {
        ensure(distinct_colors(cg.coloring(), path) == path.len(), || format!("{path:?} not rainbow"))?;
    }
    ensure(t.forward_arcs.iter().all(|&(u, v)| part[u] < part[v]), || "forward arc goes back".into())?;
    ensure(t.backward_arcs.iter().all(|&(u, v)| part[u] > part[v]), || "backward arc goes forward".into())?;
    let violations = t.violations(cg, grading);
    ensure(violations.is_empty(), || format!("{violations:?}"))
}

fn lemma1_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tally = [0usize; 3];
    for i in 0..200u64 {
        let n = rng.gen_range(5..=14);
        let g = random_triangle_free(n, rng.gen_range(0.2..0.6), 10_000 + i).unwrap();
        let coloring = random_proper_coloring(&g, n, 10_000, &mut rng).unwrap_or_else(|| dsatur_coloring(&g));
        let cg = ColoredGraph::new(g.clone(), coloring).unwrap();
        let grading = random_grading(&g, &mut rng);
        let s = rng.gen_range(3..=4);
        check_lemma1(&cg, &grading, s, &mut tally).map_err(|e| format!("graded graph {i}: {e}"))?;
    }
    for s in 3..=6usize {
        let edges: Vec<(usize, usize)> = (1..=s).map(|leaf| (0, leaf)).collect();
        let g = Graph::from_edges(s + 1, &edges).unwrap();
        let colors: Vec<u32> = std::iter::once(1).chain(2..=s as u32 + 1).collect();
        let cg = ColoredGraph::new(g.clone(), Coloring::new(colors).unwrap()).unwrap();
        let grading = Grading::new(&g, vec![vec![0], (1..=s).collect()], vec![vec![1], vec![1; s]], 1).unwrap();
        let before = tally[1];
        check_lemma1(&cg, &grading, s, &mut tally).map_err(|e| format!("star s={s}: {e}"))?;
        ensure(tally[1] == before + 1, || format!("star s={s}: expected a witness"))?;
    }
    Ok(format!("204 instances: {} rainbow paths, {} witnesses, {} without guarantee", tally[0], tally[1], tally[2]))
}

/// Longest induced rainbow path order by trying every sequence of distinct vertices.
fn naive_rainbow_order(g: &Graph, c: &Coloring) -> usize {
    fn go(g: &Graph, c: &Coloring, seq: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut usize) {
        if !seq.is_empty() && is_induced_path(g, seq) && distinct_colors(c, seq) == seq.len() {
            *best = (*best).max(seq.len());
        }
        for v in 0..g.vertex_count() {
            if !used[v] {
                used[v] = true;
                seq.push(v);
                go(g, c, seq, used, best);
                seq.pop();
                used[v] = false;
            }
        }
    }
    let mut best = 0;
    go(g, c, &mut Vec::new(), &mut vec![false; g.vertex_count()], &mut best);
    best
}

fn oracle_cross_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let budget = SearchBudget::default();
    for i in 0..100u64 {
        let n = rng.gen_range(1..=9);
        let mut g = Graph::empty(n);
        let mut edges = Vec::new();
        let p = rng.gen_range(0.2..0.7);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            g = Graph::from_edges(n, &edges).unwrap();
        }
        let colors = rng.gen_range(1..=n);
        let coloring = random_proper_coloring(&g, colors, 10_000, &mut rng).unwrap_or_else(|| dsatur_coloring(&g));
        let cg = ColoredGraph::new(g.clone(), coloring.clone()).unwrap();
        let fast = longest_induced_rainbow_path(&cg, &budget).map_err(|e| e.to_string())?;
        let naive = naive_rainbow_order(&g, &coloring);
        ensure(fast.exact && fast.path.order() == naive, || {
            format!("graph {i} ({}, {coloring}): oracle {} vs naive {naive}", encode_graph6(&g), fast.path.order())
        })?;
    }
    Ok("100 colored graphs, orders agree".into())
}

fn sweep_regression() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus = dir.path().join("corpus.g6");
    let graphs = [Graph::complete(2), Graph::cycle(5).unwrap(), mycielski_graph(4).unwrap()];
    let text: String = graphs.iter().map(|g| encode_graph6(g) + "\n").collect();
    std::fs::write(&corpus, text).map_err(|e| e.to_string())?;
    let cfg = HarnessConfig { coloring_cap: 100, seed: 17, ..HarnessConfig::default() };
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("run{run}.jsonl"));
        let summary = run_corpus(&corpus, Some(&out), &cfg).map_err(|e| e.to_string())?;
        ensure(summary.graphs_processed == 3 && summary.violations == 0, || format!("{summary}"))?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "JSONL output differs between runs".into())?;
    let reports: Vec<ConjectureReport> = String::from_utf8(outputs.remove(0))
        .map_err(|e| e.to_string())?
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(reports.len() == 3, || format!("{} reports", reports.len()))?;
    ensure(reports.iter().all(|r| r.holds_for_all_checked), || "conjecture reported violated".into())?;
    Ok("K2, C5, Groetzsch hold; JSONL byte-identical".into())
}

fn graph6_round_trip() -> Outcome {
    let mut graphs: Vec<Graph> = standard_corpus().into_iter().map(|n| n.graph).collect();
    let mut seed = 5000;
    while graphs.len() < 1000 {
        let n = [0, 1, 2, 20, 40, 62, 63, 64, 70, 100][seed as usize % 10];
        graphs.push(random_triangle_free(n, 0.3, seed).unwrap());
        seed += 1;
    }
    for g in &graphs {
        let text = encode_graph6(g);
        let back = decode_graph6(&text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == *g, || format!("{text} does not round-trip"))?;
    }
    let fixtures: [Fixture; 5] = [
        ("D?{", 5, &[(0, 4), (1, 4), (2, 4), (3, 4)]),
        ("Dhc", 5, &[(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]),
        ("A_", 2, &[(0, 1)]),
        ("@", 1, &[]),
        ("?", 0, &[]),
    ];
    for (text, n, edges) in fixtures {
        let g = decode_graph6(text).map_err(|e| format!("{text}: {e}"))?;
        ensure(g.vertex_count() == n && g.edges() == edges, || format!("{text} decodes to {:?}", g.edges()))?;
        ensure(encode_graph6(&g) == text, || format!("{text} re-encodes differently"))?;
    }
    Ok(format!("{} graphs and 5 fixtures", graphs.len()))
}
