//! Simple undirected graphs with bitset adjacency, proper colorings and
//! path predicates.
//!
//! Vertex ids are dense in `0..vertex_count`. Every tie-break in this crate
//! resolves toward the smallest vertex id.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed-universe bitset over vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::new(universe);
        for v in 0..universe {
            set.insert(v);
        }
        set
    }

    pub fn from_iter_in(universe: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::new(universe);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] & (1u64 << (v % 64)) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.words[v / 64] &= !(1u64 << (v % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            universe: self.universe,
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
            universe: self.universe,
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Low 64 bits; only meaningful when `universe <= 64`.
    pub fn as_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![VertexSet::new(n); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list; duplicates and reversed pairs collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, vertex_count: n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.adjacency[u].contains(v) {
            self.adjacency[u].insert(v);
            self.adjacency[v].insert(u);
            self.edge_count += 1;
        }
        Ok(())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path_graph(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("valid");
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.vertex_count() {
            out.extend(self.adjacency[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() });
        }
        Ok(())
    }

    /// Adjacency rows as `u64` masks, `None` when the graph has more than 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.vertex_count() <= 64).then(|| self.adjacency.iter().map(VertexSet::as_mask).collect())
    }

    /// Some triangle `(a, b, c)` with `a < b < c`, if one exists.
    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for (a, b) in self.edges() {
            let common = self.adjacency[a].intersection(&self.adjacency[b]);
            if let Some(c) = common.first() {
                let mut t = [a, b, c];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// Connected components ordered by their minimum vertex id; each sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_within(&VertexSet::full(self.vertex_count()))
    }

    /// Components of the subgraph induced by `within`, in original ids.
    pub fn components_within(&self, within: &VertexSet) -> Vec<Vec<usize>> {
        let mut seen = VertexSet::new(self.vertex_count());
        let mut out = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.adjacency[u].intersection(within).iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Subgraph induced by `vertices`. Local id `i` corresponds to the
    /// `i`-th smallest selected vertex.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<InducedSubgraph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let selected: BTreeSet<usize> = vertices.iter().copied().collect();
        let to_parent: Vec<usize> = selected.into_iter().collect();
        let mut to_local = BTreeMap::new();
        for (i, &v) in to_parent.iter().enumerate() {
            to_local.insert(v, i);
        }
        let mut graph = Graph::empty(to_parent.len());
        for (i, &u) in to_parent.iter().enumerate() {
            for (j, &v) in to_parent.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    graph.add_edge(i, j)?;
                }
            }
        }
        Ok(InducedSubgraph { graph, to_parent, to_local })
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.vertex_count() {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.vertex_count(), &edges)
    }

    /// Breadth-first shortest path from `v` to the first-reached vertex of
    /// `targets`. Frontier vertices are expanded in increasing id order, so
    /// among equal-length routes the one through smaller ids wins.
    pub fn shortest_path_to_set(&self, v: usize, targets: &VertexSet) -> Result<Path> {
        self.check_vertex(v)?;
        if targets.is_empty() {
            return Err(Error::InvalidParameter("empty target set".into()));
        }
        if targets.contains(v) {
            return Ok(Path(vec![v]));
        }
        let n = self.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut seen = VertexSet::new(n);
        seen.insert(v);
        let mut frontier = vec![v];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &u in &frontier {
                for w in self.adjacency[u].iter() {
                    if seen.contains(w) {
                        continue;
                    }
                    seen.insert(w);
                    parent[w] = u;
                    if targets.contains(w) {
                        let mut seq = vec![w];
                        let mut cur = w;
                        while cur != v {
                            cur = parent[cur];
                            seq.push(cur);
                        }
                        seq.reverse();
                        return Ok(Path(seq));
                    }
                    next.push(w);
                }
            }
            next.sort_unstable();
            frontier = next;
        }
        Err(Error::Unreachable(v))
    }

    /// Independent bipartiteness test by BFS 2-coloring.
    pub fn is_bipartite(&self) -> bool {
        self.odd_cycle().is_none()
    }

    /// An odd cycle as a vertex sequence, if the graph is not bipartite.
    pub fn odd_cycle(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.adjacency[u].iter() {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Some(close_cycle(u, w, &parent, &depth));
                    }
                }
            }
        }
        None
    }
}

// Walks both BFS branches up to their meeting point; the edge u-w closes the cycle.
fn close_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut up = vec![a];
    let mut down = vec![b];
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a];
            up.push(a);
        } else {
            b = parent[b];
            down.push(b);
        }
    }
    // up ends at the meeting vertex, so does down
    down.pop();
    down.reverse();
    up.extend(down);
    up
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
    pub to_local: BTreeMap<usize, usize>,
}

impl InducedSubgraph {
    pub fn local(&self, parent_vertex: usize) -> Option<usize> {
        self.to_local.get(&parent_vertex).copied()
    }

    pub fn lift(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&v| self.to_parent[v]).collect()
    }
}

/// Total vertex coloring with positive color ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(Vec<u32>);

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::ZeroColor(v));
        }
        Ok(Coloring(colors))
    }

    pub fn uniform(n: usize) -> Self {
        Coloring(vec![1; n])
    }

    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    pub fn color(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct colors used.
    pub fn palette_size(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn is_proper(&self, g: &Graph) -> Result<bool> {
        Ok(self.first_conflict(g)?.is_none())
    }

    fn first_conflict(&self, g: &Graph) -> Result<Option<(usize, usize)>> {
        if self.len() != g.vertex_count() {
            return Err(Error::PartialColoring { expected: g.vertex_count(), got: self.len() });
        }
        Ok(g.edges().into_iter().find(|&(u, v)| self.0[u] == self.0[v]))
    }

    /// Renames colors to `1, 2, ...` by first occurrence along vertex order.
    pub fn canonical(&self) -> Coloring {
        let mut rename = BTreeMap::new();
        let colors = self
            .0
            .iter()
            .map(|&c| {
                let next = rename.len() as u32 + 1;
                *rename.entry(c).or_insert(next)
            })
            .collect();
        Coloring(colors)
    }

    pub fn restrict(&self, vertices: &[usize]) -> Coloring {
        Coloring(vertices.iter().map(|&v| self.0[v]).collect())
    }

    /// Vertices grouped by color, ascending color order.
    pub fn classes(&self) -> BTreeMap<u32, Vec<usize>> {
        let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (v, &c) in self.0.iter().enumerate() {
            out.entry(c).or_default().push(v);
        }
        out
    }

    /// Whitespace-separated color ids in vertex order.
    pub fn parse(text: &str) -> Result<Coloring> {
        let colors = text
            .split_whitespace()
            .map(|tok| tok.parse::<u32>().map_err(|e| Error::Parse(format!("color {tok:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Coloring::new(colors)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A graph together with a proper coloring of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    coloring: Coloring,
}

impl ColoredGraph {
    pub fn new(graph: Graph, coloring: Coloring) -> Result<Self> {
        if let Some((u, v)) = coloring.first_conflict(&graph)? {
            return Err(Error::ImproperColoring(u, v));
        }
        Ok(ColoredGraph { graph, coloring })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn color(&self, v: usize) -> u32 {
        self.coloring.color(v)
    }

    /// Colored subgraph induced by `vertices` plus the id mapping.
    pub fn induced(&self, vertices: &[usize]) -> Result<(ColoredGraph, InducedSubgraph)> {
        let sub = self.graph.induced_subgraph(vertices)?;
        let coloring = self.coloring.restrict(&sub.to_parent);
        Ok((ColoredGraph { graph: sub.graph.clone(), coloring }, sub))
    }

    /// Validates `seq` as a path and reports its induced/rainbow status.
    pub fn classify_path(&self, seq: &[usize]) -> Result<PathReport> {
        let path = Path::new(&self.graph, seq.to_vec())?;
        Ok(self.report(&path))
    }

    pub fn report(&self, path: &Path) -> PathReport {
        let seq = path.vertices();
        let color_count = seq.iter().map(|&v| self.color(v)).collect::<BTreeSet<_>>().len();
        PathReport {
            order: seq.len(),
            is_induced: is_induced_sequence(&self.graph, seq),
            is_rainbow: color_count == seq.len(),
            color_count,
        }
    }

    pub fn color_count(&self, seq: &[usize]) -> usize {
        seq.iter().map(|&v| self.color(v)).collect::<BTreeSet<_>>().len()
    }
}

/// True when no two nonconsecutive entries of `seq` are adjacent.
pub fn is_induced_sequence(g: &Graph, seq: &[usize]) -> bool {
    for i in 0..seq.len() {
        for j in i + 2..seq.len() {
            if g.has_edge(seq[i], seq[j]) {
                return false;
            }
        }
    }
    true
}

/// Ordered sequence of distinct vertices, consecutive ones adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(g: &Graph, seq: Vec<usize>) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::NotAPath("order 0".into()));
        }
        let mut seen = BTreeSet::new();
        for &v in &seq {
            g.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::NotAPath(format!("vertex {v} repeats")));
            }
        }
        if let Some(w) = seq.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(Path(seq))
    }

    pub(crate) fn new_unchecked(seq: Vec<usize>) -> Self {
        Path(seq)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub order: usize,
    pub is_induced: bool,
    pub is_rainbow: bool,
    pub color_count: usize,
}
