//! The grading procedure: given a colored graph with a k-colorable grading,
//! produce either an induced rainbow path on `s` vertices or a vertex with
//! `s` later, pairwise distinct-colored neighbors.
//!
//! Steps, all recorded in [`Lemma1Trace`]:
//! 1. refine the grading into color-class unions `Z_1..Z_k`;
//! 2. pick the class whose induced subgraph has the largest exact chromatic
//!    number (smallest index on ties);
//! 3. orient its edges from lower to higher color;
//! 4. order its vertices by part, then id;
//! 5. split arcs into forward and backward with respect to that order;
//! 6. take a longest directed path in each half (`P1`, `P2`);
//! 7. look for a witness among out-neighbors inside `V(P1)` and
//!    in-neighbors inside `V(P2)`;
//! 8. BFS inside `V(P1)` (out-arcs, from its first vertex) and inside
//!    `V(P2)` (in-arcs, from its last vertex); a parent chain reaching depth
//!    `s - 1` is checked for inducedness, with an exhaustive search inside
//!    the same vertex set as fallback;
//! 9. optionally scan the whole graph for a witness, else give up with
//!    [`Lemma1Variant::NoGuarantee`].

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::chromatic::chromatic_number_capped;
use crate::constructive::bounds::compute_bounds;
use crate::constructive::grading::{refine_grading, ColorClassPartition, Grading};
use crate::error::{Error, Result};
use crate::graph::{is_induced_sequence, ColoredGraph, Path};
use crate::oracle::{longest_induced_path, OnExceed, SearchBudget};

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Options {
    /// Scan every vertex for a witness before returning `NoGuarantee`.
    pub global_witness_scan: bool,
    /// Budget for the exhaustive fallback search.
    pub fallback_budget: SearchBudget,
}

impl Default for Lemma1Options {
    fn default() -> Self {
        Lemma1Options {
            global_witness_scan: true,
            fallback_budget: SearchBudget { max_vertices: 64, max_nodes: 10_000_000, on_exceed: OnExceed::BestEffort },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathSource {
    ForwardBfs,
    BackwardBfs,
    ForwardFallback,
    BackwardFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSource {
    ForwardPath,
    BackwardPath,
    GlobalScan,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum Lemma1Variant {
    RainbowPath { path: Path, source: PathSource },
    Witness { vertex: usize, later_neighbors: Vec<usize>, source: WitnessSource },
    NoGuarantee,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BfsRecord {
    pub root: usize,
    pub depth: usize,
    /// Parent chain from the root to the first vertex found at depth `s - 1`.
    pub extracted: Option<Vec<usize>>,
    pub extracted_induced: Option<bool>,
    /// Result of the exhaustive search, when it ran.
    pub fallback: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Precondition {
    pub k: usize,
    pub r: String,
    /// Exact chromatic number of the whole graph, when computable.
    pub chi: Option<usize>,
    /// Whether `chi >= k * r`.
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Trace {
    pub s: usize,
    pub partition: ColorClassPartition,
    pub class_chromatic_numbers: Vec<usize>,
    pub chosen_class: usize,
    /// Arcs of the chosen class, lower color to higher color.
    pub arcs: Vec<(usize, usize)>,
    pub pi_order: Vec<usize>,
    pub forward_arcs: Vec<(usize, usize)>,
    pub backward_arcs: Vec<(usize, usize)>,
    /// `P1`, a longest directed path using forward arcs; `X = V(P1)`.
    pub forward_path: Vec<usize>,
    /// `P2`, a longest directed path using backward arcs; `Y = V(P2)`.
    pub backward_path: Vec<usize>,
    pub forward_bfs: Option<BfsRecord>,
    pub backward_bfs: Option<BfsRecord>,
    pub precondition: Precondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Outcome {
    #[serde(flatten)]
    pub variant: Lemma1Variant,
    pub trace: Lemma1Trace,
}

pub fn lemma1_procedure(cg: &ColoredGraph, grading: &Grading, s: usize) -> Result<Lemma1Outcome> {
    lemma1_procedure_with(cg, grading, s, &Lemma1Options::default())
}

pub fn lemma1_procedure_with(
    cg: &ColoredGraph,
    grading: &Grading,
    s: usize,
    options: &Lemma1Options,
) -> Result<Lemma1Outcome> {
    if s < 3 {
        return Err(Error::InvalidParameter(format!("path order s must be at least 3, got {s}")));
    }
    let g = cg.graph();
    let n = g.vertex_count();
    let partition = refine_grading(g, grading)?;
    let part = grading.part_index(n);

    let class_chromatic_numbers = partition
        .classes
        .iter()
        .map(|class| {
            let sub = g.induced_subgraph(class)?;
            Ok(chromatic_number_capped(&sub.graph, 64)?.chi)
        })
        .collect::<Result<Vec<_>>>()?;
    let chosen_class = (0..class_chromatic_numbers.len())
        .max_by(|&a, &b| class_chromatic_numbers[a].cmp(&class_chromatic_numbers[b]).then(b.cmp(&a)))
        .unwrap_or(0);
    let members: Vec<usize> = partition.classes.get(chosen_class).cloned().unwrap_or_default();
    let in_class: BTreeSet<usize> = members.iter().copied().collect();

    let mut arcs = Vec::new();
    for &u in &members {
        for v in g.neighbors(u).iter() {
            if in_class.contains(&v) && cg.color(u) < cg.color(v) {
                arcs.push((u, v));
            }
        }
    }
    arcs.sort_unstable();

    let mut pi_order = members.clone();
    pi_order.sort_by_key(|&v| (part[v], v));
    let mut position = vec![usize::MAX; n];
    for (i, &v) in pi_order.iter().enumerate() {
        position[v] = i;
    }
    let (forward_arcs, backward_arcs): (Vec<_>, Vec<_>) =
        arcs.iter().copied().partition(|&(u, v)| position[u] < position[v]);

    let forward_path = longest_dag_path(cg, &members, &forward_arcs);
    let backward_path = longest_dag_path(cg, &members, &backward_arcs);

    let bounds = compute_bounds(s as u32)?;
    let chi = if n <= 64 { Some(chromatic_number_capped(g, 64)?.chi) } else { None };
    let precondition = Precondition {
        k: grading.k(),
        r: bounds.r.to_string(),
        chi,
        holds: chi.map(|c| BigUint::from(c) >= BigUint::from(grading.k()) * &bounds.r),
    };

    let mut trace = Lemma1Trace {
        s,
        partition,
        class_chromatic_numbers,
        chosen_class,
        arcs,
        pi_order,
        forward_arcs,
        backward_arcs,
        forward_path,
        backward_path,
        forward_bfs: None,
        backward_bfs: None,
        precondition,
    };

    let done = |variant, trace| Ok(Lemma1Outcome { variant, trace });

    // out-neighbors inside X along forward arcs
    let x: BTreeSet<usize> = trace.forward_path.iter().copied().collect();
    let forward_in_x: Vec<(usize, usize)> =
        trace.forward_arcs.iter().copied().filter(|(a, b)| x.contains(a) && x.contains(b)).collect();
    for &xi in &trace.forward_path {
        let outs: Vec<usize> = forward_in_x.iter().filter(|a| a.0 == xi).map(|a| a.1).collect();
        if outs.len() >= s {
            let variant = Lemma1Variant::Witness {
                vertex: xi,
                later_neighbors: outs[..s].to_vec(),
                source: WitnessSource::ForwardPath,
            };
            return done(variant, trace);
        }
    }
    // in-neighbors inside Y along backward arcs
    let y: BTreeSet<usize> = trace.backward_path.iter().copied().collect();
    let backward_in_y: Vec<(usize, usize)> =
        trace.backward_arcs.iter().copied().filter(|(a, b)| y.contains(a) && y.contains(b)).collect();
    for &yi in &trace.backward_path {
        let ins: Vec<usize> = backward_in_y.iter().filter(|a| a.1 == yi).map(|a| a.0).collect();
        if ins.len() >= s {
            let variant = Lemma1Variant::Witness {
                vertex: yi,
                later_neighbors: ins[..s].to_vec(),
                source: WitnessSource::BackwardPath,
            };
            return done(variant, trace);
        }
    }

    if let Some(&root) = trace.forward_path.first() {
        let successors = |u: usize| forward_in_x.iter().filter(move |a| a.0 == u).map(|a| a.1);
        let (record, found) = bfs_branch(cg, root, &x, successors, s, &options.fallback_budget)?;
        trace.forward_bfs = Some(record);
        if let Some((path, from_fallback)) = found {
            let source = if from_fallback { PathSource::ForwardFallback } else { PathSource::ForwardBfs };
            return done(Lemma1Variant::RainbowPath { path, source }, trace);
        }
    }
    if let Some(&root) = trace.backward_path.last() {
        let predecessors = |u: usize| backward_in_y.iter().filter(move |a| a.1 == u).map(|a| a.0);
        let (record, found) = bfs_branch(cg, root, &y, predecessors, s, &options.fallback_budget)?;
        trace.backward_bfs = Some(record);
        if let Some((path, from_fallback)) = found {
            let source = if from_fallback { PathSource::BackwardFallback } else { PathSource::BackwardBfs };
            return done(Lemma1Variant::RainbowPath { path, source }, trace);
        }
    }

    if options.global_witness_scan {
        if let Some((vertex, later_neighbors)) = find_global_witness(cg, grading, s) {
            let variant = Lemma1Variant::Witness { vertex, later_neighbors, source: WitnessSource::GlobalScan };
            return done(variant, trace);
        }
    }
    done(Lemma1Variant::NoGuarantee, trace)
}

/// Longest directed path over `vertices` using `arcs`, which all run from
/// lower to higher color. Ties prefer smaller predecessor and end ids.
fn longest_dag_path(cg: &ColoredGraph, vertices: &[usize], arcs: &[(usize, usize)]) -> Vec<usize> {
    if vertices.is_empty() {
        return Vec::new();
    }
    let mut order = vertices.to_vec();
    order.sort_by_key(|&v| (cg.color(v), v));
    let n = cg.graph().vertex_count();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in arcs {
        preds[v].push(u);
    }
    let mut length = vec![1usize; n];
    let mut parent = vec![usize::MAX; n];
    for &v in &order {
        preds[v].sort_unstable();
        for &u in &preds[v] {
            if length[u] + 1 > length[v] {
                length[v] = length[u] + 1;
                parent[v] = u;
            }
        }
    }
    let mut end = *vertices.iter().min().expect("nonempty");
    for &v in vertices {
        if length[v] > length[end] || (length[v] == length[end] && v < end) {
            end = v;
        }
    }
    let mut path = vec![end];
    while parent[path[path.len() - 1]] != usize::MAX {
        path.push(parent[path[path.len() - 1]]);
    }
    path.reverse();
    path
}

type BranchResult = (BfsRecord, Option<(Path, bool)>);

fn bfs_branch<I>(
    cg: &ColoredGraph,
    root: usize,
    within: &BTreeSet<usize>,
    step: impl Fn(usize) -> I,
    s: usize,
    budget: &SearchBudget,
) -> Result<BranchResult>
where
    I: Iterator<Item = usize>,
{
    let g = cg.graph();
    let mut depth_of = std::collections::BTreeMap::new();
    let mut parent = std::collections::BTreeMap::new();
    depth_of.insert(root, 0usize);
    let mut queue = VecDeque::from([root]);
    let mut target = None;
    let mut depth = 0;
    while let Some(u) = queue.pop_front() {
        let d = depth_of[&u];
        depth = depth.max(d);
        if d == s - 1 && target.is_none() {
            target = Some(u);
        }
        let mut next: Vec<usize> = step(u).collect();
        next.sort_unstable();
        for w in next {
            if let std::collections::btree_map::Entry::Vacant(e) = depth_of.entry(w) {
                e.insert(d + 1);
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    let mut record = BfsRecord { root, depth, extracted: None, extracted_induced: None, fallback: None };
    let Some(target) = target else {
        return Ok((record, None));
    };
    let mut chain = vec![target];
    while let Some(&p) = parent.get(&chain[chain.len() - 1]) {
        chain.push(p);
    }
    chain.reverse();
    let induced = is_induced_sequence(g, &chain);
    record.extracted = Some(chain.clone());
    record.extracted_induced = Some(induced);
    if induced {
        return Ok((record, Some((Path::new(g, chain)?, false))));
    }
    let members: Vec<usize> = within.iter().copied().collect();
    let sub = g.induced_subgraph(&members)?;
    let best = longest_induced_path(&sub.graph, budget)?;
    let lifted = sub.lift(best.path.vertices());
    record.fallback = Some(lifted.clone());
    if lifted.len() >= s {
        let path = Path::new(g, lifted[..s].to_vec())?;
        return Ok((record, Some((path, true))));
    }
    Ok((record, None))
}

/// A vertex with `s` later neighbors of pairwise distinct colors, searched
/// over the whole graph. Vertices are tried by part then id; neighbors are
/// picked one per color, smallest id first, in increasing color order.
pub fn find_global_witness(cg: &ColoredGraph, grading: &Grading, s: usize) -> Option<(usize, Vec<usize>)> {
    let g = cg.graph();
    let part = grading.part_index(g.vertex_count());
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (part[v], v));
    for v in order {
        let mut by_color = std::collections::BTreeMap::new();
        for u in g.neighbors(v).iter() {
            if part[u] > part[v] {
                by_color.entry(cg.color(u)).or_insert(u);
            }
        }
        if by_color.len() >= s {
            return Some((v, by_color.values().take(s).copied().collect()));
        }
    }
    None
}

/// Checks the postcondition of the returned variant; empty when it holds.
pub fn outcome_violations(cg: &ColoredGraph, grading: &Grading, s: usize, outcome: &Lemma1Outcome) -> Vec<String> {
    let g = cg.graph();
    let mut out = Vec::new();
    match &outcome.variant {
        Lemma1Variant::RainbowPath { path, .. } => match cg.classify_path(path.vertices()) {
            Ok(rep) => {
                if !rep.is_induced {
                    out.push(format!("path {path} is not induced"));
                }
                if !rep.is_rainbow {
                    out.push(format!("path {path} is not rainbow"));
                }
                if rep.order != s {
                    out.push(format!("path {path} has order {} instead of {s}", rep.order));
                }
            }
            Err(e) => out.push(format!("returned sequence is not a path: {e}")),
        },
        Lemma1Variant::Witness { vertex, later_neighbors, .. } => {
            let part = grading.part_index(g.vertex_count());
            if later_neighbors.len() != s {
                out.push(format!("witness set has {} vertices instead of {s}", later_neighbors.len()));
            }
            let colors: BTreeSet<u32> = later_neighbors.iter().map(|&u| cg.color(u)).collect();
            if colors.len() != later_neighbors.len() {
                out.push("witness colors are not pairwise distinct".into());
            }
            for &u in later_neighbors {
                if !g.has_edge(*vertex, u) {
                    out.push(format!("{u} is not adjacent to witness {vertex}"));
                }
                if part[u] <= part[*vertex] {
                    out.push(format!("{u} is not later than witness {vertex}"));
                }
            }
        }
        Lemma1Variant::NoGuarantee => {
            if outcome.trace.precondition.holds == Some(true) {
                out.push("no outcome although chi >= k * r".into());
            }
        }
    }
    out
}

impl Lemma1Trace {
    /// Structural invariants of the trace; empty when all hold.
    pub fn violations(&self, cg: &ColoredGraph, grading: &Grading) -> Vec<String> {
        let g = cg.graph();
        let part = grading.part_index(g.vertex_count());
        let mut out = Vec::new();
        let class: BTreeSet<usize> =
            self.partition.classes.get(self.chosen_class).into_iter().flatten().copied().collect();

        // each class meets each part in an independent set
        for members in &self.partition.classes {
            for &a in members {
                for &b in members {
                    if a < b && part[a] == part[b] && g.has_edge(a, b) {
                        out.push(format!("class contains edge {a}-{b} inside part {}", part[a]));
                    }
                }
            }
        }
        for &(u, v) in &self.arcs {
            if cg.color(u) >= cg.color(v) {
                out.push(format!("arc {u}->{v} does not increase color"));
            }
            if !g.has_edge(u, v) || !class.contains(&u) || !class.contains(&v) {
                out.push(format!("arc {u}->{v} is not an edge of the chosen class"));
            }
        }
        let edge_count = g.induced_subgraph(&class.iter().copied().collect::<Vec<_>>()).map(|s| s.graph.edge_count());
        if edge_count.ok() != Some(self.arcs.len()) {
            out.push("arcs do not orient every edge of the chosen class".into());
        }
        if !topologically_sortable(&class, &self.arcs) {
            out.push("oriented class graph has a directed cycle".into());
        }
        let mut split: Vec<_> = self.forward_arcs.iter().chain(&self.backward_arcs).copied().collect();
        split.sort_unstable();
        if split != self.arcs {
            out.push("forward and backward arcs do not partition the arcs".into());
        }
        for &(u, v) in &self.forward_arcs {
            if part[u] >= part[v] {
                out.push(format!("forward arc {u}->{v} does not move to a later part"));
            }
        }
        for &(u, v) in &self.backward_arcs {
            if part[u] <= part[v] {
                out.push(format!("backward arc {u}->{v} does not move to an earlier part"));
            }
        }
        for (name, path, arcs) in
            [("P1", &self.forward_path, &self.forward_arcs), ("P2", &self.backward_path, &self.backward_arcs)]
        {
            let colors: BTreeSet<u32> = path.iter().map(|&v| cg.color(v)).collect();
            if colors.len() != path.len() {
                out.push(format!("{name} vertex set is not rainbow"));
            }
            for w in path.windows(2) {
                if arcs.binary_search(&(w[0], w[1])).is_err() {
                    out.push(format!("{name} step {}->{} is not an arc", w[0], w[1]));
                }
            }
        }
        out
    }
}

// Kahn's algorithm, independent of the color order used to build the trace.
fn topologically_sortable(vertices: &BTreeSet<usize>, arcs: &[(usize, usize)]) -> bool {
    let mut indegree: std::collections::BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, 0)).collect();
    for &(_, v) in arcs {
        *indegree.entry(v).or_default() += 1;
    }
    let mut ready: Vec<usize> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut removed = 0;
    while let Some(u) = ready.pop() {
        removed += 1;
        for &(a, b) in arcs {
            if a == u {
                let d = indegree.get_mut(&b).expect("known vertex");
                *d -= 1;
                if *d == 0 {
                    ready.push(b);
                }
            }
        }
    }
    removed == indegree.len()
}
