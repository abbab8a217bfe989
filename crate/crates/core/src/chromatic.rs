//! Proper colorings: DSATUR, exact chromatic number by branch and bound,
//! and enumeration of colorings up to renaming of colors.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

/// Default vertex cap for exact chromatic number computations.
pub const DEFAULT_EXACT_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LowerBoundCertificate {
    /// Pairwise adjacent vertices.
    Clique(Vec<usize>),
    /// Cyclic vertex sequence of odd length.
    OddCycle(Vec<usize>),
}

impl LowerBoundCertificate {
    pub fn bound(&self) -> usize {
        match self {
            LowerBoundCertificate::Clique(c) => c.len(),
            LowerBoundCertificate::OddCycle(_) => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    pub witness: Coloring,
    pub lower_bound_certificate: Option<LowerBoundCertificate>,
}

/// DSATUR greedy coloring. Picks the uncolored vertex with most distinct
/// neighbor colors, then highest degree, then smallest id, and gives it the
/// smallest admissible color.
pub fn dsatur_coloring(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    let mut seen: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by(|&a, &b| {
                seen[a]
                    .len()
                    .cmp(&seen[b].len())
                    .then(g.degree(a).cmp(&g.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("an uncolored vertex remains");
        let c = (1..).find(|c| !seen[v].contains(c)).expect("unbounded range");
        colors[v] = c;
        for w in g.neighbors(v).iter() {
            seen[w].insert(c);
        }
    }
    Coloring::new(colors).expect("colors start at 1")
}

/// Exact chromatic number with the default vertex cap.
pub fn chromatic_number(g: &Graph) -> Result<ChromaticResult> {
    chromatic_number_capped(g, DEFAULT_EXACT_CAP)
}

pub fn chromatic_number_capped(g: &Graph, cap: usize) -> Result<ChromaticResult> {
    let n = g.vertex_count();
    let cap = cap.min(64);
    if n > cap {
        return Err(Error::TooLargeForExact { vertex_count: n, cap });
    }
    if n == 0 {
        return Ok(ChromaticResult { chi: 0, witness: Coloring::uniform(0), lower_bound_certificate: None });
    }
    let masks = g.masks().expect("n <= 64");
    let upper = dsatur_coloring(g);
    let clique = greedy_clique(&masks);
    let certificate = if clique.len() <= 2 {
        match g.odd_cycle() {
            Some(cycle) => LowerBoundCertificate::OddCycle(cycle),
            None => LowerBoundCertificate::Clique(clique),
        }
    } else {
        LowerBoundCertificate::Clique(clique)
    };
    let lower = certificate.bound();
    let ub = upper.palette_size();
    for k in lower..ub {
        if let Some(colors) = KColoring::new(&masks, k).solve() {
            return Ok(ChromaticResult {
                chi: k,
                witness: Coloring::new(colors).expect("positive"),
                lower_bound_certificate: Some(certificate),
            });
        }
    }
    Ok(ChromaticResult { chi: ub, witness: upper.canonical(), lower_bound_certificate: Some(certificate) })
}

/// Decides whether the graph admits a proper coloring with `k` colors.
pub fn is_k_colorable(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    let masks = g.masks().ok_or(Error::TooLargeForExact { vertex_count: g.vertex_count(), cap: 64 })?;
    Ok(KColoring::new(&masks, k).solve().map(|c| Coloring::new(c).expect("positive")))
}

fn greedy_clique(masks: &[u64]) -> Vec<usize> {
    let n = masks.len();
    let mut best = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand = masks[start];
        while cand != 0 {
            // highest-degree candidate within the candidate set
            let mut pick = usize::MAX;
            let mut pick_deg = 0;
            let mut m = cand;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let d = (masks[v] & cand).count_ones();
                if pick == usize::MAX || d > pick_deg {
                    pick = v;
                    pick_deg = d;
                }
            }
            clique.push(pick);
            cand &= masks[pick];
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Backtracking k-colorability with DSATUR branching and color symmetry
/// breaking (a new color is only ever the next unused one).
struct KColoring<'a> {
    masks: &'a [u64],
    k: usize,
    colors: Vec<u32>,
    classes: Vec<u64>,
    uncolored: u64,
}

impl<'a> KColoring<'a> {
    fn new(masks: &'a [u64], k: usize) -> Self {
        let n = masks.len();
        let uncolored = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        KColoring { masks, k, colors: vec![0; n], classes: vec![0; k], uncolored }
    }

    fn solve(mut self) -> Option<Vec<u32>> {
        if self.masks.is_empty() {
            return Some(Vec::new());
        }
        if self.k == 0 {
            return None;
        }
        self.search(0).then_some(self.colors)
    }

    fn saturation(&self, v: usize, used: usize) -> usize {
        self.classes[..used].iter().filter(|&&cls| cls & self.masks[v] != 0).count()
    }

    fn search(&mut self, used: usize) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0u32);
        let mut m = self.uncolored;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let sat = self.saturation(v, used);
            if sat >= self.k {
                return false;
            }
            let key = (sat, (self.masks[v] & self.uncolored).count_ones());
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
            }
        }
        let v = pick;
        let limit = (used + 1).min(self.k);
        self.uncolored &= !(1u64 << v);
        for c in 0..limit {
            if self.classes[c] & self.masks[v] != 0 {
                continue;
            }
            self.classes[c] |= 1u64 << v;
            self.colors[v] = c as u32 + 1;
            if self.search(used.max(c + 1)) {
                return true;
            }
            self.classes[c] &= !(1u64 << v);
        }
        self.colors[v] = 0;
        self.uncolored |= 1u64 << v;
        false
    }
}

/// Lexicographic stream of proper colorings with at most `max_colors`
/// colors, one per color-renaming class. Each emitted coloring is in
/// first-occurrence canonical form.
#[derive(Debug, Clone)]
pub struct CanonicalColorings {
    earlier_neighbors: Vec<Vec<usize>>,
    max_colors: u32,
    colors: Vec<u32>,
    started: bool,
    done: bool,
}

impl CanonicalColorings {
    pub fn new(g: &Graph, max_colors: usize) -> Self {
        let earlier_neighbors =
            (0..g.vertex_count()).map(|v| g.neighbors(v).iter().take_while(|&u| u < v).collect()).collect();
        CanonicalColorings {
            earlier_neighbors,
            max_colors: max_colors.min(u32::MAX as usize) as u32,
            colors: vec![0; g.vertex_count()],
            started: false,
            done: false,
        }
    }

    fn next_color(&self, i: usize) -> Option<u32> {
        let used = self.colors[..i].iter().copied().max().unwrap_or(0);
        let limit = self.max_colors.min(used + 1);
        (self.colors[i] + 1..=limit)
            .find(|&c| self.earlier_neighbors[i].iter().all(|&u| self.colors[u] != c))
    }
}

impl Iterator for CanonicalColorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let n = self.colors.len();
        if n == 0 {
            self.done = true;
            return Some(Coloring::uniform(0));
        }
        let mut i = if self.started { n - 1 } else { 0 };
        self.started = true;
        loop {
            match self.next_color(i) {
                Some(c) => {
                    self.colors[i] = c;
                    if i + 1 == n {
                        return Some(Coloring::new(self.colors.clone()).expect("positive"));
                    }
                    i += 1;
                    self.colors[i] = 0;
                }
                None => {
                    self.colors[i] = 0;
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringSweep {
    pub colorings: Vec<Coloring>,
    /// More colorings exist beyond the cap.
    pub truncated: bool,
}

/// First `cap` canonical proper colorings using at most `max_colors` colors.
pub fn enumerate_colorings(g: &Graph, max_colors: usize, cap: usize) -> ColoringSweep {
    let mut stream = CanonicalColorings::new(g, max_colors);
    let colorings: Vec<_> = stream.by_ref().take(cap).collect();
    let truncated = colorings.len() == cap && stream.next().is_some();
    ColoringSweep { colorings, truncated }
}

/// Random proper coloring with at most `max_colors` colors, returned in
/// canonical form. Gives up (returning `None`) after `node_limit` search
/// steps.
pub fn random_proper_coloring<R: Rng + ?Sized>(
    g: &Graph,
    max_colors: usize,
    node_limit: u64,
    rng: &mut R,
) -> Option<Coloring> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut colors = vec![0u32; n];
    let mut choices: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut nodes = 0u64;
    let mut i = 0;
    let palette: Vec<u32> = (1..=max_colors as u32).collect();
    while i < n {
        if choices.len() == i {
            let v = order[i];
            let mut options: Vec<u32> = palette
                .iter()
                .copied()
                .filter(|&c| g.neighbors(v).iter().all(|u| colors[u] != c))
                .collect();
            options.shuffle(rng);
            choices.push(options);
        }
        nodes += 1;
        if nodes > node_limit {
            return None;
        }
        match choices[i].pop() {
            Some(c) => {
                colors[order[i]] = c;
                i += 1;
            }
            None => {
                choices.pop();
                colors[order[i]] = 0;
                if i == 0 {
                    return None;
                }
                i -= 1;
                colors[order[i]] = 0;
            }
        }
    }
    Some(Coloring::new(colors).ok()?.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn grotzsch() -> Graph {
        crate::gen_io::mycielskian(&Graph::cycle(5).unwrap())
    }

    /// Every assignment in `[1, max]^n`, filtered to proper ones, then
    /// collapsed under color renaming.
    fn brute_force_canonical(g: &Graph, max: u32) -> HashSet<Vec<u32>> {
        let n = g.vertex_count();
        let mut out = HashSet::new();
        let total = (max as u64).pow(n as u32);
        for code in 0..total {
            let mut x = code;
            let colors: Vec<u32> = (0..n)
                .map(|_| {
                    let c = (x % max as u64) as u32 + 1;
                    x /= max as u64;
                    c
                })
                .collect();
            let coloring = Coloring::new(colors).unwrap();
            if coloring.is_proper(g).unwrap() {
                out.insert(coloring.canonical().colors().to_vec());
            }
        }
        out
    }

    #[test]
    fn dsatur_examples() {
        assert_eq!(dsatur_coloring(&Graph::empty(4)).palette_size(), 1);
        assert_eq!(dsatur_coloring(&Graph::cycle(5).unwrap()).palette_size(), 3);
        assert_eq!(dsatur_coloring(&Graph::complete(2)).palette_size(), 2);
        let g = grotzsch();
        assert!(dsatur_coloring(&g).is_proper(&g).unwrap());
    }

    #[test]
    fn dsatur_trace_on_c5() {
        // all degrees 2: vertex 0 first, then its neighbors by saturation/id
        assert_eq!(dsatur_coloring(&Graph::cycle(5).unwrap()).colors(), &[1, 2, 1, 2, 3]);
    }

    #[test]
    fn exact_chromatic_examples() {
        let r = chromatic_number(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(r.chi, 3);
        assert!(matches!(r.lower_bound_certificate, Some(LowerBoundCertificate::OddCycle(_))));
        let g = grotzsch();
        let r = chromatic_number(&g).unwrap();
        assert_eq!(r.chi, 4);
        assert!(r.witness.is_proper(&g).unwrap());
        assert_eq!(r.witness.palette_size(), 4);
        assert_eq!(chromatic_number(&Graph::empty(6)).unwrap().chi, 1);
        assert_eq!(chromatic_number(&Graph::complete(5)).unwrap().chi, 5);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap().chi, 0);
    }

    #[test]
    fn exact_cap() {
        let g = Graph::empty(10);
        assert_eq!(
            chromatic_number_capped(&g, 9).unwrap_err(),
            Error::TooLargeForExact { vertex_count: 10, cap: 9 }
        );
        assert!(chromatic_number(&Graph::empty(65)).is_err());
    }

    #[test]
    fn grotzsch_not_three_colorable() {
        assert!(is_k_colorable(&grotzsch(), 3).unwrap().is_none());
        assert!(is_k_colorable(&grotzsch(), 4).unwrap().is_some());
    }

    #[test]
    fn enumeration_examples() {
        let sweep = enumerate_colorings(&Graph::complete(2), 2, 100);
        assert_eq!(sweep.colorings.len(), 1);
        assert_eq!(sweep.colorings[0].colors(), &[1, 2]);
        assert!(!sweep.truncated);

        let c5 = Graph::cycle(5).unwrap();
        let expected = brute_force_canonical(&c5, 3);
        assert_eq!(expected.len(), 5);
        let sweep = enumerate_colorings(&c5, 3, 100);
        assert_eq!(sweep.colorings.len(), 5);
        let got: HashSet<_> = sweep.colorings.iter().map(|c| c.colors().to_vec()).collect();
        assert_eq!(got, expected);

        let p3 = Graph::path_graph(3);
        let expected = brute_force_canonical(&p3, 2);
        assert_eq!(expected.len(), 1);
        assert_eq!(enumerate_colorings(&p3, 2, 100).colorings.len(), 1);
    }

    #[test]
    fn enumeration_cap_and_order() {
        let c5 = Graph::cycle(5).unwrap();
        let sweep = enumerate_colorings(&c5, 3, 2);
        assert_eq!(sweep.colorings.len(), 2);
        assert!(sweep.truncated);
        let all = enumerate_colorings(&c5, 3, 5);
        assert!(!all.truncated);
        let seqs: Vec<_> = all.colorings.iter().map(|c| c.colors().to_vec()).collect();
        let mut sorted = seqs.clone();
        sorted.sort();
        assert_eq!(seqs, sorted);
        assert!(enumerate_colorings(&c5, 2, 10).colorings.is_empty());
        assert_eq!(enumerate_colorings(&Graph::empty(0), 1, 10).colorings.len(), 1);
    }

    #[test]
    fn enumeration_matches_brute_force_small() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..40 {
            let n = 1 + trial % 8;
            let g = crate::gen_io::random_triangle_free(n, 0.4, rng.gen()).unwrap();
            for max in 1..=3u32 {
                let expected = brute_force_canonical(&g, max);
                let sweep = enumerate_colorings(&g, max as usize, usize::MAX);
                let got: HashSet<_> = sweep.colorings.iter().map(|c| c.colors().to_vec()).collect();
                assert_eq!(got.len(), sweep.colorings.len(), "duplicates emitted");
                assert_eq!(got, expected);
                for c in &sweep.colorings {
                    assert!(c.is_proper(&g).unwrap());
                    assert_eq!(&c.canonical(), c);
                }
            }
        }
    }

    #[test]
    fn random_sampler_is_proper() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = grotzsch();
        for _ in 0..20 {
            let c = random_proper_coloring(&g, 5, 100_000, &mut rng).unwrap();
            assert!(c.is_proper(&g).unwrap());
            assert!(c.palette_size() <= 5);
        }
        assert!(random_proper_coloring(&g, 3, 100_000, &mut rng).is_none());
    }
}
