use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parametrized graph family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Cycle { n: usize },
    /// Mycielski graph with chromatic number `chi`: `K₂` iterated `chi - 2` times.
    MycielskianIterate { chi: usize },
    Kneser { n: usize, k: usize },
    RandomTriangleFree { n: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GeneratorSpec::Cycle { n } if n < 3 => Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}"))),
            GeneratorSpec::MycielskianIterate { chi } if chi < 2 => {
                Err(Error::InvalidParameter(format!("mycielski iterate needs chi >= 2, got {chi}")))
            }
            GeneratorSpec::Kneser { n, k } if k < 1 || n < 2 * k => {
                Err(Error::InvalidParameter(format!("kneser needs n >= 2k >= 2, got n={n} k={k}")))
            }
            GeneratorSpec::RandomTriangleFree { p, .. } if !(0.0..=1.0).contains(&p) => {
                Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    match *spec {
        GeneratorSpec::Cycle { n } => Graph::cycle(n),
        GeneratorSpec::MycielskianIterate { chi } => mycielski_graph(chi),
        GeneratorSpec::Kneser { n, k } => kneser_graph(n, k),
        GeneratorSpec::RandomTriangleFree { n, p, seed } => random_triangle_free(n, p, seed),
    }
}

/// Mycielskian of `g`: vertices `0..n` are the originals, `n..2n` their
/// shadows (shadow of `i` is `n + i`) and `2n` the apex.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut out = Graph::empty(2 * n + 1);
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("in range");
        out.add_edge(n + u, v).expect("in range");
        out.add_edge(u, n + v).expect("in range");
    }
    for i in 0..n {
        out.add_edge(n + i, 2 * n).expect("in range");
    }
    out
}

/// `K₂` for `chi = 2`, then one Mycielskian step per extra unit of `chi`.
pub fn mycielski_graph(chi: usize) -> Result<Graph> {
    if chi < 2 {
        return Err(Error::InvalidParameter(format!("mycielski iterate needs chi >= 2, got {chi}")));
    }
    let mut g = Graph::complete(2);
    for _ in 2..chi {
        g = mycielskian(&g);
    }
    Ok(g)
}

/// Kneser graph `K(n, k)`: k-subsets of `{0..n}` in lexicographic order,
/// adjacent when disjoint.
pub fn kneser_graph(n: usize, k: usize) -> Result<Graph> {
    if k < 1 || n < 2 * k {
        return Err(Error::InvalidParameter(format!("kneser needs n >= 2k >= 2, got n={n} k={k}")));
    }
    if n > 64 {
        return Err(Error::InvalidParameter(format!("kneser ground set {n} exceeds 64")));
    }
    let subsets = k_subsets(n, k);
    let mut g = Graph::empty(subsets.len());
    for (i, a) in subsets.iter().enumerate() {
        for (j, b) in subsets.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

// Lexicographic k-subsets as bitmasks.
fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | (1 << i)));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

pub fn petersen() -> Graph {
    kneser_graph(5, 2).expect("valid parameters")
}

/// Visits all vertex pairs in a seeded random order; each pair is drawn with
/// probability `p` and kept only if it closes no triangle.
pub fn random_triangle_free(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut g = Graph::empty(n);
    for (u, v) in pairs {
        if rng.gen_bool(p) && !g.neighbors(u).intersects(g.neighbors(v)) {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}
