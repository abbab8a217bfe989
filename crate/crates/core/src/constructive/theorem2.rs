//! Induced path from a given start vertex that sees at least `⌈k/2⌉`
//! colors, where `k` is a lower bound on the chromatic number of a connected
//! triangle-free graph.
//!
//! Each level removes the start vertex's color class, moves into the
//! component `C1` of highest chromatic number, walks a shortest path `P`
//! toward it, deletes the neighbors of `P`'s penultimate vertex `w` from
//! `C1`, and recurses (with bound `k - 2`) into the best remaining component
//! `C2` plus one bridging neighbor of `w`. The result is `P` minus its last
//! vertex followed by the recursive path.
//!
//! All vertex ids in the trace refer to the input graph.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::chromatic::{chromatic_number_capped, dsatur_coloring};
use crate::error::{Error, Result};
use crate::graph::{is_induced_sequence, ColoredGraph, Path, VertexSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Theorem2Options {
    /// Recompute the exact chromatic number of every recursive subgraph and
    /// record it in the trace.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionRecord {
    pub depth: usize,
    pub start: usize,
    pub chi_lb: usize,
    /// Color `c` of the start vertex, whose class is removed.
    pub removed_color: u32,
    /// Vertex set of `G'`.
    pub remaining: Vec<usize>,
    pub component_c1: Vec<usize>,
    pub c1_chi: usize,
    /// Shortest path `P` from the start vertex into `C1`.
    pub shortest_path: Vec<usize>,
    /// Penultimate vertex `w` of `P`.
    pub penultimate: usize,
    /// `N(w) ∩ V(C1)`.
    pub neighbor_set: Vec<usize>,
    /// Vertex set of `G''`, i.e. `C1` minus the neighbor set.
    pub reduced: Vec<usize>,
    pub component_c2: Vec<usize>,
    pub c2_chi: usize,
    /// Bridging vertex `w_i`.
    pub bridge: usize,
    /// Vertex set of `G'''` = `C2` plus the bridge.
    pub subproblem: Vec<usize>,
    /// Exact chromatic number of `G'''` (strict mode only).
    pub subproblem_chi: Option<usize>,
    /// Path `Q` returned by the recursive call.
    pub recursive_path: Vec<usize>,
    /// Assembled path `R`.
    pub assembled: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Trace {
    pub start: usize,
    pub chi_lb: usize,
    /// Outermost level first.
    pub records: Vec<RecursionRecord>,
    /// Start vertex of the level where the bound dropped to 2 or below.
    pub base_vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Result {
    pub path: Path,
    pub color_count: usize,
    pub trace: Theorem2Trace,
}

pub fn theorem2_colorful_path(cg: &ColoredGraph, v: usize, chi_lb: usize) -> Result<Theorem2Result> {
    theorem2_colorful_path_with(cg, v, chi_lb, Theorem2Options::default())
}

pub fn theorem2_colorful_path_with(
    cg: &ColoredGraph,
    v: usize,
    chi_lb: usize,
    options: Theorem2Options,
) -> Result<Theorem2Result> {
    let g = cg.graph();
    g.check_vertex(v)?;
    if let Some((a, b, c)) = g.find_triangle() {
        return Err(Error::NotTriangleFree(a, b, c));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let upper = dsatur_coloring(g).palette_size();
    if chi_lb > upper {
        return Err(Error::InvalidParameter(format!(
            "chi lower bound {chi_lb} exceeds the coloring upper bound {upper}"
        )));
    }
    let mut records = Vec::new();
    let within = VertexSet::full(g.vertex_count());
    let (seq, base_vertex) = recurse(cg, &within, v, chi_lb, 0, options, &mut records)?;
    let path = Path::new(g, seq)?;
    let color_count = cg.color_count(path.vertices());
    Ok(Theorem2Result { path, color_count, trace: Theorem2Trace { start: v, chi_lb, records, base_vertex } })
}

fn exact_chi(cg: &ColoredGraph, vertices: &[usize]) -> Result<usize> {
    let sub = cg.graph().induced_subgraph(vertices)?;
    Ok(chromatic_number_capped(&sub.graph, 64)?.chi)
}

/// Component of maximum exact chromatic number; ties go to the component
/// with the smallest minimum id, which is the first in component order.
fn best_component(cg: &ColoredGraph, within: &VertexSet) -> Result<Option<(Vec<usize>, usize)>> {
    let mut best: Option<(Vec<usize>, usize)> = None;
    for comp in cg.graph().components_within(within) {
        let chi = exact_chi(cg, &comp)?;
        if best.as_ref().is_none_or(|(_, b)| chi > *b) {
            best = Some((comp, chi));
        }
    }
    Ok(best)
}

fn recurse(
    cg: &ColoredGraph,
    within: &VertexSet,
    v: usize,
    chi_lb: usize,
    depth: usize,
    options: Theorem2Options,
    records: &mut Vec<RecursionRecord>,
) -> Result<(Vec<usize>, usize)> {
    if chi_lb <= 2 {
        return Ok((vec![v], v));
    }
    let g = cg.graph();
    let n = g.vertex_count();
    let c = cg.color(v);
    let remaining_set = VertexSet::from_iter_in(n, within.iter().filter(|&u| cg.color(u) != c));
    let remaining: Vec<usize> = remaining_set.iter().collect();
    let (component_c1, c1_chi) = best_component(cg, &remaining_set)?
        .ok_or_else(|| Error::InvalidParameter(format!("no vertices remain after removing color {c}")))?;
    let c1_set = VertexSet::from_iter_in(n, component_c1.iter().copied());
    let shortest_path = shortest_path_within(cg, within, v, &c1_set)?;
    let penultimate = shortest_path[shortest_path.len() - 2];
    let neighbor_set: Vec<usize> = g.neighbors(penultimate).intersection(&c1_set).iter().collect();
    let neighbor_mask = VertexSet::from_iter_in(n, neighbor_set.iter().copied());
    let reduced_set = c1_set.difference(&neighbor_mask);
    let reduced: Vec<usize> = reduced_set.iter().collect();
    let (component_c2, c2_chi) = best_component(cg, &reduced_set)?.ok_or_else(|| {
        Error::InvalidParameter(format!("component C1 vanished after removing the neighbors of {penultimate}"))
    })?;
    let c2_set = VertexSet::from_iter_in(n, component_c2.iter().copied());
    let bridge = *neighbor_set
        .iter()
        .find(|&&w| g.neighbors(w).intersects(&c2_set))
        .ok_or_else(|| Error::InvalidParameter("no neighbor of the penultimate vertex touches C2".into()))?;
    let mut subproblem = component_c2.clone();
    subproblem.push(bridge);
    subproblem.sort_unstable();
    let subproblem_chi = if options.strict { Some(exact_chi(cg, &subproblem)?) } else { None };
    let sub_set = VertexSet::from_iter_in(n, subproblem.iter().copied());

    let index = records.len();
    records.push(RecursionRecord {
        depth,
        start: v,
        chi_lb,
        removed_color: c,
        remaining,
        component_c1,
        c1_chi,
        shortest_path: shortest_path.clone(),
        penultimate,
        neighbor_set,
        reduced,
        component_c2,
        c2_chi,
        bridge,
        subproblem,
        subproblem_chi,
        recursive_path: Vec::new(),
        assembled: Vec::new(),
    });
    let (q, base) = recurse(cg, &sub_set, bridge, chi_lb - 2, depth + 1, options, records)?;
    let mut assembled = shortest_path[..shortest_path.len() - 1].to_vec();
    assembled.extend(&q);
    records[index].recursive_path = q;
    records[index].assembled = assembled.clone();
    Ok((assembled, base))
}

/// BFS inside `within`, expanding smaller ids first, stopping at the first
/// vertex of `targets`.
fn shortest_path_within(cg: &ColoredGraph, within: &VertexSet, v: usize, targets: &VertexSet) -> Result<Vec<usize>> {
    let g = cg.graph();
    let n = g.vertex_count();
    if targets.contains(v) {
        return Ok(vec![v]);
    }
    let mut parent = vec![usize::MAX; n];
    let mut seen = VertexSet::new(n);
    seen.insert(v);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u).intersection(within).iter() {
            if seen.contains(w) {
                continue;
            }
            seen.insert(w);
            parent[w] = u;
            if targets.contains(w) {
                let mut seq = vec![w];
                while seq[seq.len() - 1] != v {
                    seq.push(parent[seq[seq.len() - 1]]);
                }
                seq.reverse();
                return Ok(seq);
            }
            queue.push_back(w);
        }
    }
    Err(Error::Unreachable(v))
}

impl Theorem2Result {
    /// Output contract and per-level invariants; empty when all hold.
    pub fn violations(&self, cg: &ColoredGraph) -> Vec<String> {
        let g = cg.graph();
        let mut out = Vec::new();
        let seq = self.path.vertices();
        if seq[0] != self.trace.start {
            out.push(format!("path starts at {} instead of {}", seq[0], self.trace.start));
        }
        if !is_induced_sequence(g, seq) {
            out.push(format!("path {} is not induced", self.path));
        }
        let need = self.trace.chi_lb.div_ceil(2);
        if self.color_count < need {
            out.push(format!("path sees {} colors, fewer than {need}", self.color_count));
        }
        for rec in &self.trace.records {
            let at = rec.depth;
            if rec.remaining.iter().any(|&u| cg.color(u) == rec.removed_color) {
                out.push(format!("level {at}: G' keeps a vertex of color {}", rec.removed_color));
            }
            let independent = rec
                .neighbor_set
                .iter()
                .all(|&a| rec.neighbor_set.iter().all(|&b| a == b || !g.has_edge(a, b)));
            if !independent {
                out.push(format!("level {at}: neighbor set of {} is not independent", rec.penultimate));
            }
            if rec.recursive_path.iter().any(|&u| cg.color(u) == rec.removed_color) {
                out.push(format!("level {at}: Q contains color {}", rec.removed_color));
            }
            if rec.recursive_path.first() != Some(&rec.bridge) {
                out.push(format!("level {at}: Q does not start at the bridge {}", rec.bridge));
            }
            if !is_induced_sequence(g, &rec.assembled) {
                out.push(format!("level {at}: assembled path is not induced"));
            }
            if rec.c1_chi + 1 < rec.chi_lb {
                out.push(format!("level {at}: C1 has chromatic number {} < {}", rec.c1_chi, rec.chi_lb - 1));
            }
            if rec.c2_chi + 2 < rec.chi_lb {
                out.push(format!("level {at}: C2 has chromatic number {} < {}", rec.c2_chi, rec.chi_lb - 2));
            }
            let distinct: BTreeSet<u32> = rec.assembled.iter().map(|&u| cg.color(u)).collect();
            if distinct.len() < rec.chi_lb.div_ceil(2) {
                out.push(format!("level {at}: assembled path sees too few colors"));
            }
        }
        out
    }
}
