//! Exact searches used as ground truth, and the rainbow path obtained from
//! orienting every edge toward its larger color.
//!
//! The induced-path searches work on `u64` adjacency masks, so they accept
//! graphs with at most 64 vertices regardless of the configured budget.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Graph, Path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OnExceed {
    Error,
    BestEffort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_nodes: u64,
    pub on_exceed: OnExceed,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_vertices: 25, max_nodes: 100_000_000, on_exceed: OnExceed::Error }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_vertices == 0 || self.max_nodes == 0 {
            return Err(Error::InvalidParameter("search budget caps must be positive".into()));
        }
        Ok(())
    }

    fn admit(&self, g: &Graph) -> Result<Vec<u64>> {
        self.validate()?;
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::InvalidParameter("graph has no vertices".into()));
        }
        if n > self.max_vertices && self.on_exceed == OnExceed::Error {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceed max_vertices {}",
                self.max_vertices
            )));
        }
        g.masks()
            .ok_or_else(|| Error::BudgetExceeded(format!("{n} vertices exceed the 64-vertex search limit")))
    }
}

/// Search output; `exact` is false when the node budget ran out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub path: Path,
    pub exact: bool,
    pub nodes: u64,
}

/// Maximum-order induced path.
pub fn longest_induced_path(g: &Graph, budget: &SearchBudget) -> Result<SearchResult> {
    let masks = budget.admit(g)?;
    let mut search = LongestSearch::new(&masks, None, budget.max_nodes);
    search.run();
    search.finish(budget)
}

/// Maximum-order induced path whose vertices carry pairwise distinct colors.
pub fn longest_induced_rainbow_path(cg: &ColoredGraph, budget: &SearchBudget) -> Result<SearchResult> {
    let masks = budget.admit(cg.graph())?;
    let color_bits = color_bits(cg);
    let mut search = LongestSearch::new(&masks, Some(&color_bits), budget.max_nodes);
    search.run();
    search.finish(budget)
}

// One bit per distinct color, ordered by color id.
fn color_bits(cg: &ColoredGraph) -> Vec<u64> {
    let classes = cg.coloring().classes();
    let mut bits = vec![0u64; cg.graph().vertex_count()];
    for (i, members) in classes.values().enumerate() {
        for &v in members {
            bits[v] = 1u64 << i;
        }
    }
    bits
}

fn union_colors(color_bits: &[u64], mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        out |= color_bits[v];
    }
    out
}

// Vertices of `avail` reachable from `from` by walking inside `avail`.
fn reachable(masks: &[u64], from: usize, avail: u64) -> u64 {
    let mut reach = masks[from] & avail;
    let mut frontier = reach;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= masks[v];
        }
        next &= avail & !reach;
        reach |= next;
        frontier = next;
    }
    reach
}

/// DFS over induced paths. `forbidden` holds the path and the neighborhoods
/// of every path vertex but the last; candidates are neighbors of the last
/// vertex outside it. An undirected path is only recorded from its
/// smaller-id end.
struct LongestSearch<'a> {
    masks: &'a [u64],
    color_bits: Option<&'a [u64]>,
    all: u64,
    max_nodes: u64,
    nodes: u64,
    exceeded: bool,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl<'a> LongestSearch<'a> {
    fn new(masks: &'a [u64], color_bits: Option<&'a [u64]>, max_nodes: u64) -> Self {
        let n = masks.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        LongestSearch { masks, color_bits, all, max_nodes, nodes: 0, exceeded: false, path: Vec::new(), best: vec![0] }
    }

    fn run(&mut self) {
        for start in 0..self.masks.len() {
            if self.exceeded {
                break;
            }
            let used = self.color_bits.map_or(0, |c| c[start]);
            self.path.push(start);
            self.extend(start, 1u64 << start, used);
            self.path.pop();
        }
    }

    fn extend(&mut self, last: usize, forbidden: u64, used: u64) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exceeded = true;
            return;
        }
        if self.path.len() > self.best.len() && (self.path.len() == 1 || self.path[0] < last) {
            self.best.clone_from(&self.path);
        }
        let mut avail = self.all & !forbidden;
        if let Some(colors) = self.color_bits {
            avail &= !vertices_with_colors(colors, avail, used);
        }
        let reach = reachable(self.masks, last, avail);
        let mut bound = reach.count_ones() as usize;
        if let Some(colors) = self.color_bits {
            bound = bound.min(union_colors(colors, reach).count_ones() as usize);
        }
        if self.path.len() + bound <= self.best.len() {
            return;
        }
        let mut cand = self.masks[last] & avail;
        let next_forbidden = forbidden | self.masks[last];
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let used_next = used | self.color_bits.map_or(0, |c| c[u]);
            self.path.push(u);
            self.extend(u, next_forbidden | (1u64 << u), used_next);
            self.path.pop();
            if self.exceeded {
                return;
            }
        }
    }

    fn finish(self, budget: &SearchBudget) -> Result<SearchResult> {
        if self.exceeded && budget.on_exceed == OnExceed::Error {
            return Err(Error::BudgetExceeded(format!("more than {} search nodes", budget.max_nodes)));
        }
        Ok(SearchResult { path: Path::new_unchecked(self.best), exact: !self.exceeded, nodes: self.nodes })
    }
}

fn vertices_with_colors(color_bits: &[u64], within: u64, colors: u64) -> u64 {
    let mut out = 0;
    let mut m = within;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if color_bits[v] & colors != 0 {
            out |= 1u64 << v;
        }
    }
    out
}

/// Induced path starting at `v` with the most distinct colors. Ties go to
/// the shorter path, then to the lexicographically smaller sequence.
pub fn max_colorful_induced_path_from(cg: &ColoredGraph, v: usize, budget: &SearchBudget) -> Result<SearchResult> {
    cg.graph().check_vertex(v)?;
    let masks = budget.admit(cg.graph())?;
    let color_bits = color_bits(cg);
    let n = masks.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = ColorfulSearch {
        masks: &masks,
        color_bits: &color_bits,
        all,
        max_nodes: budget.max_nodes,
        nodes: 0,
        exceeded: false,
        path: vec![v],
        best: vec![v],
        best_colors: 1,
    };
    search.extend(v, 1u64 << v, color_bits[v]);
    if search.exceeded && budget.on_exceed == OnExceed::Error {
        return Err(Error::BudgetExceeded(format!("more than {} search nodes", budget.max_nodes)));
    }
    Ok(SearchResult { path: Path::new_unchecked(search.best), exact: !search.exceeded, nodes: search.nodes })
}

struct ColorfulSearch<'a> {
    masks: &'a [u64],
    color_bits: &'a [u64],
    all: u64,
    max_nodes: u64,
    nodes: u64,
    exceeded: bool,
    path: Vec<usize>,
    best: Vec<usize>,
    best_colors: u32,
}

impl ColorfulSearch<'_> {
    fn extend(&mut self, last: usize, forbidden: u64, used: u64) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exceeded = true;
            return;
        }
        let colors = used.count_ones();
        // DFS preorder with ascending children is lexicographic order, so an
        // equal (colors, order) pair found later never replaces the best.
        if colors > self.best_colors || (colors == self.best_colors && self.path.len() < self.best.len()) {
            self.best_colors = colors;
            self.best.clone_from(&self.path);
        }
        let avail = self.all & !forbidden;
        let reach = reachable(self.masks, last, avail);
        let bound = (used | union_colors(self.color_bits, reach)).count_ones();
        if bound < self.best_colors || (bound == self.best_colors && self.path.len() + 1 >= self.best.len()) {
            return;
        }
        let mut cand = self.masks[last] & avail;
        let next_forbidden = forbidden | self.masks[last];
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.path.push(u);
            self.extend(u, next_forbidden | (1u64 << u), used | self.color_bits[u]);
            self.path.pop();
            if self.exceeded {
                return;
            }
        }
    }
}

/// Longest directed path after orienting each edge toward its larger color.
/// Colors strictly increase along the result, so it is rainbow.
pub fn gallai_roy_rainbow_path(cg: &ColoredGraph) -> Result<Path> {
    let g = cg.graph();
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (cg.color(v), v));
    let mut length = vec![1usize; n];
    let mut pred = vec![usize::MAX; n];
    for &v in &order {
        for u in g.neighbors(v).iter() {
            if cg.color(u) < cg.color(v) && length[u] + 1 > length[v] {
                length[v] = length[u] + 1;
                pred[v] = u;
            }
        }
    }
    let mut end = 0;
    for v in 1..n {
        if length[v] > length[end] {
            end = v;
        }
    }
    let mut seq = vec![end];
    while pred[seq[seq.len() - 1]] != usize::MAX {
        seq.push(pred[seq[seq.len() - 1]]);
    }
    seq.reverse();
    Path::new(g, seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen_io::{mycielski_graph, petersen};
    use crate::graph::Coloring;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn c5_colored() -> ColoredGraph {
        ColoredGraph::new(Graph::cycle(5).unwrap(), Coloring::new(vec![1, 2, 1, 2, 3]).unwrap()).unwrap()
    }

    fn distinct(g: Graph) -> ColoredGraph {
        let n = g.vertex_count();
        ColoredGraph::new(g, Coloring::new((1..=n as u32).collect()).unwrap()).unwrap()
    }

    #[test]
    fn longest_induced_examples() {
        assert_eq!(longest_induced_path(&Graph::path_graph(4), &budget()).unwrap().path.order(), 4);
        assert_eq!(longest_induced_path(&Graph::cycle(5).unwrap(), &budget()).unwrap().path.order(), 4);
        let r = longest_induced_path(&petersen(), &budget()).unwrap();
        assert!(r.exact);
        // brute force over all simple paths also gives 5 (diameter 2, girth 5)
        assert_eq!(r.path.order(), 5);
        assert_eq!(longest_induced_path(&Graph::empty(1), &budget()).unwrap().path.order(), 1);
    }

    #[test]
    fn returned_path_is_induced() {
        let g = mycielski_graph(4).unwrap();
        let r = longest_induced_path(&g, &budget()).unwrap();
        let cg = distinct(g);
        let rep = cg.report(&r.path);
        assert!(rep.is_induced);
        assert!(r.path.first() < r.path.last());
    }

    #[test]
    fn rainbow_examples() {
        let r = longest_induced_rainbow_path(&c5_colored(), &budget()).unwrap();
        assert_eq!(r.path.order(), 3);
        let rep = c5_colored().report(&r.path);
        assert!(rep.is_induced && rep.is_rainbow);
        let cg = distinct(petersen());
        assert_eq!(longest_induced_rainbow_path(&cg, &budget()).unwrap().path.order(), 5);
        let single = distinct(Graph::empty(1));
        assert_eq!(longest_induced_rainbow_path(&single, &budget()).unwrap().path.order(), 1);
    }

    #[test]
    fn colorful_examples() {
        let single = distinct(Graph::empty(1));
        let r = max_colorful_induced_path_from(&single, 0, &budget()).unwrap();
        assert_eq!(r.path.vertices(), &[0]);

        let r = max_colorful_induced_path_from(&c5_colored(), 0, &budget()).unwrap();
        assert_eq!(r.path.vertices(), &[0, 4, 3]);
        assert_eq!(c5_colored().color_count(r.path.vertices()), 3);

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let cg = ColoredGraph::new(star, Coloring::new(vec![1, 2, 2, 2]).unwrap()).unwrap();
        let r = max_colorful_induced_path_from(&cg, 0, &budget()).unwrap();
        assert_eq!(r.path.vertices(), &[0, 1]);
        assert!(max_colorful_induced_path_from(&cg, 9, &budget()).is_err());
    }

    #[test]
    fn gallai_roy_examples() {
        let p = gallai_roy_rainbow_path(&c5_colored()).unwrap();
        assert_eq!(p.vertices(), &[2, 3, 4]);
        let k2 = distinct(Graph::complete(2));
        assert_eq!(gallai_roy_rainbow_path(&k2).unwrap().order(), 2);
        let e = ColoredGraph::new(Graph::empty(3), Coloring::uniform(3)).unwrap();
        assert_eq!(gallai_roy_rainbow_path(&e).unwrap().order(), 1);
    }

    #[test]
    fn budget_handling() {
        let g = mycielski_graph(5).unwrap();
        let tight = SearchBudget { max_vertices: 10, ..SearchBudget::default() };
        assert!(matches!(longest_induced_path(&g, &tight), Err(Error::BudgetExceeded(_))));
        let few_nodes = SearchBudget { max_vertices: 64, max_nodes: 5, on_exceed: OnExceed::BestEffort };
        let r = longest_induced_path(&g, &few_nodes).unwrap();
        assert!(!r.exact);
        let few_nodes = SearchBudget { on_exceed: OnExceed::Error, ..few_nodes };
        assert!(longest_induced_path(&g, &few_nodes).is_err());
        assert!(longest_induced_path(&Graph::empty(0), &budget()).is_err());
        assert!(longest_induced_path(&Graph::empty(65), &SearchBudget { max_vertices: 100, ..budget() }).is_err());
    }
}
