use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

/// Ordered partition `(W_1, ..., W_n)` of the vertex set, each part carrying
/// a proper coloring of the subgraph it induces with at most `k` colors.
/// Part indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    parts: Vec<Vec<usize>>,
    /// `part_colorings[i][t]` colors `parts[i][t]`.
    part_colorings: Vec<Vec<u32>>,
    k: usize,
}

impl Grading {
    /// Validates the grading against `g`.
    pub fn new(g: &Graph, parts: Vec<Vec<usize>>, part_colorings: Vec<Vec<u32>>, k: usize) -> Result<Self> {
        let grading = Grading { parts, part_colorings, k };
        grading.validate(g)?;
        Ok(grading)
    }

    /// Like [`Grading::new`] with `k` set to the largest part palette.
    pub fn with_minimal_k(g: &Graph, parts: Vec<Vec<usize>>, part_colorings: Vec<Vec<u32>>) -> Result<Self> {
        let k = part_colorings
            .iter()
            .map(|c| c.iter().collect::<BTreeSet<_>>().len())
            .max()
            .unwrap_or(0);
        Grading::new(g, parts, part_colorings, k)
    }

    /// Every vertex its own part, all colored 1.
    pub fn singletons(g: &Graph) -> Self {
        let n = g.vertex_count();
        Grading { parts: (0..n).map(|v| vec![v]).collect(), part_colorings: vec![vec![1]; n], k: 1.min(n) }
    }

    /// One part holding every vertex, colored by `coloring`.
    pub fn single_part(g: &Graph, coloring: &Coloring) -> Result<Self> {
        let parts = vec![(0..g.vertex_count()).collect()];
        Grading::with_minimal_k(g, parts, vec![coloring.colors().to_vec()])
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_colorings(&self) -> &[Vec<u32>] {
        &self.part_colorings
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Part index of every vertex.
    pub fn part_index(&self, vertex_count: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; vertex_count];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                out[v] = i;
            }
        }
        out
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        let bad = |msg: String| Err(Error::InvalidGrading(msg));
        if self.parts.len() != self.part_colorings.len() {
            return bad(format!("{} parts but {} part colorings", self.parts.len(), self.part_colorings.len()));
        }
        let mut seen = vec![false; n];
        for (i, (part, colors)) in self.parts.iter().zip(&self.part_colorings).enumerate() {
            if part.len() != colors.len() {
                return bad(format!("part {i} has {} vertices but {} colors", part.len(), colors.len()));
            }
            for &v in part {
                if v >= n {
                    return bad(format!("vertex {v} out of range"));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return bad(format!("vertex {v} appears in more than one part"));
                }
            }
            if colors.contains(&0) {
                return bad(format!("part {i} uses color 0"));
            }
            let palette = colors.iter().collect::<BTreeSet<_>>().len();
            if palette > self.k {
                return bad(format!("part {i} uses {palette} colors, more than k = {}", self.k));
            }
            for a in 0..part.len() {
                for b in a + 1..part.len() {
                    if colors[a] == colors[b] && g.has_edge(part[a], part[b]) {
                        return bad(format!("part {i} coloring is improper on edge {}-{}", part[a], part[b]));
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return bad(format!("vertex {v} is in no part"));
        }
        Ok(())
    }

    /// Grading file: one line of vertex ids per part, then one line of
    /// colors per part in the same order.
    pub fn parse(g: &Graph, text: &str, k: Option<usize>) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        if !lines.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("grading file has {} lines, expected an even count", lines.len())));
        }
        let half = lines.len() / 2;
        let parse_line = |line: &str| -> Result<Vec<u64>> {
            line.split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        };
        let mut parts = Vec::with_capacity(half);
        let mut colorings = Vec::with_capacity(half);
        for line in &lines[..half] {
            parts.push(parse_line(line)?.into_iter().map(|v| v as usize).collect());
        }
        for line in &lines[half..] {
            colorings.push(parse_line(line)?.into_iter().map(|c| c as u32).collect());
        }
        match k {
            Some(k) => Grading::new(g, parts, colorings, k),
            None => Grading::with_minimal_k(g, parts, colorings),
        }
    }
}

/// Vertex partition `(Z_1, ..., Z_k)` where `Z_j` gathers the `j`-th color
/// class of every part. Class indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorClassPartition {
    pub classes: Vec<Vec<usize>>,
    /// `origin[v] = (part index, class index)`.
    pub origin: Vec<(usize, usize)>,
}

/// Splits each part by its own coloring and merges same-index classes
/// across parts. A part's colors are indexed by rank within its palette.
pub fn refine_grading(g: &Graph, grading: &Grading) -> Result<ColorClassPartition> {
    grading.validate(g)?;
    let n = g.vertex_count();
    let mut classes = vec![Vec::new(); grading.k()];
    let mut origin = vec![(usize::MAX, usize::MAX); n];
    for (i, (part, colors)) in grading.parts().iter().zip(grading.part_colorings()).enumerate() {
        let palette: Vec<u32> = colors.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        for (&v, c) in part.iter().zip(colors) {
            let j = palette.binary_search(c).expect("color in palette");
            classes[j].push(v);
            origin[v] = (i, j);
        }
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    Ok(ColorClassPartition { classes, origin })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::cycle(5).unwrap()
    }

    #[test]
    fn single_part_gives_color_classes() {
        let g = c5();
        let coloring = Coloring::new(vec![1, 2, 1, 2, 3]).unwrap();
        let grading = Grading::single_part(&g, &coloring).unwrap();
        assert_eq!(grading.k(), 3);
        let z = refine_grading(&g, &grading).unwrap();
        assert_eq!(z.classes, vec![vec![0, 2], vec![1, 3], vec![4]]);
    }

    #[test]
    fn singleton_parts_collapse() {
        let g = c5();
        let z = refine_grading(&g, &Grading::singletons(&g)).unwrap();
        assert_eq!(z.classes, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(z.origin[3], (3, 0));
    }

    #[test]
    fn two_part_example() {
        let g = c5();
        let grading = Grading::new(&g, vec![vec![0, 1, 2], vec![3, 4]], vec![vec![1, 2, 1], vec![1, 2]], 2).unwrap();
        let z = refine_grading(&g, &grading).unwrap();
        assert_eq!(z.classes, vec![vec![0, 2, 3], vec![1, 4]]);
        let parts = grading.part_index(5);
        for class in &z.classes {
            for &a in class {
                for &b in class {
                    if parts[a] == parts[b] {
                        assert!(!g.has_edge(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_gradings() {
        let g = c5();
        let err = |parts: Vec<Vec<usize>>, colors: Vec<Vec<u32>>, k| Grading::new(&g, parts, colors, k).unwrap_err();
        assert!(matches!(err(vec![vec![0, 1, 2, 3]], vec![vec![1, 2, 1, 2]], 2), Error::InvalidGrading(_)));
        assert!(matches!(
            err(vec![vec![0, 1, 2], vec![2, 3, 4]], vec![vec![1, 2, 1], vec![1, 2, 1]], 2),
            Error::InvalidGrading(_)
        ));
        assert!(matches!(err(vec![vec![0, 1, 2, 3, 4]], vec![vec![1, 1, 2, 1, 2]], 2), Error::InvalidGrading(_)));
        assert!(matches!(err(vec![vec![0, 1, 2, 3, 4]], vec![vec![1, 2, 1, 2, 3]], 2), Error::InvalidGrading(_)));
    }

    #[test]
    fn parse_file() {
        let g = c5();
        let grading = Grading::parse(&g, "0 1 2\n3 4\n1 2 1\n1 2\n", None).unwrap();
        assert_eq!(grading.parts(), &[vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(grading.k(), 2);
        assert!(Grading::parse(&g, "0 1 2\n3 4\n1 2 1\n", None).is_err());
    }
}
