//! Plain-text trace reports: one line per procedure step or recursion level.

use std::fmt::Write;

use super::lemma1::{Lemma1Outcome, Lemma1Variant};
use super::theorem2::Theorem2Result;

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(" "))
}

fn arcs(a: &[(usize, usize)]) -> String {
    let items: Vec<String> = a.iter().map(|(u, v)| format!("{u}->{v}")).collect();
    format!("[{}]", items.join(" "))
}

pub fn lemma1_report(outcome: &Lemma1Outcome) -> String {
    let t = &outcome.trace;
    let mut out = String::new();
    let classes: Vec<String> =
        t.partition.classes.iter().enumerate().map(|(j, z)| format!("Z{}={}", j + 1, list(z))).collect();
    let _ = writeln!(out, "refine: {}", classes.join(" "));
    let _ = writeln!(
        out,
        "choose: class Z{} (chromatic numbers {:?})",
        t.chosen_class + 1,
        t.class_chromatic_numbers
    );
    let _ = writeln!(out, "orient: {}", arcs(&t.arcs));
    let _ = writeln!(out, "order: {}", list(&t.pi_order));
    let _ = writeln!(out, "split: forward={} backward={}", arcs(&t.forward_arcs), arcs(&t.backward_arcs));
    let _ = writeln!(
        out,
        "longest: P1={} (l1={}) P2={} (l2={})",
        list(&t.forward_path),
        t.forward_path.len(),
        list(&t.backward_path),
        t.backward_path.len()
    );
    for (name, bfs) in [("bfs-forward", &t.forward_bfs), ("bfs-backward", &t.backward_bfs)] {
        if let Some(b) = bfs {
            let _ = write!(out, "{name}: root={} depth={}", b.root, b.depth);
            if let Some(chain) = &b.extracted {
                let _ = write!(out, " chain={} induced={}", list(chain), b.extracted_induced.unwrap_or(false));
            }
            if let Some(fb) = &b.fallback {
                let _ = write!(out, " fallback={}", list(fb));
            }
            out.push('\n');
        }
    }
    let p = &t.precondition;
    let _ = writeln!(
        out,
        "precondition: k={} r={} chi={} holds={}",
        p.k,
        p.r,
        p.chi.map_or("?".into(), |c| c.to_string()),
        p.holds.map_or("?".into(), |h| h.to_string())
    );
    let _ = match &outcome.variant {
        Lemma1Variant::RainbowPath { path, source } => {
            writeln!(out, "outcome: rainbow-path {} via {:?}", list(path.vertices()), source)
        }
        Lemma1Variant::Witness { vertex, later_neighbors, source } => {
            writeln!(out, "outcome: witness {} later-neighbors={} via {:?}", vertex, list(later_neighbors), source)
        }
        Lemma1Variant::NoGuarantee => writeln!(out, "outcome: no-guarantee"),
    };
    out
}

pub fn theorem2_report(result: &Theorem2Result) -> String {
    let t = &result.trace;
    let mut out = String::new();
    let _ = writeln!(out, "start: v={} chi_lb={}", t.start, t.chi_lb);
    for r in &t.records {
        let _ = writeln!(
            out,
            "level {}: v={} k={} remove-color={} G'={} C1={} (chi {}) P={} w={} N(w)∩C1={} G''={} C2={} (chi {}) bridge={}{} Q={} R={}",
            r.depth,
            r.start,
            r.chi_lb,
            r.removed_color,
            list(&r.remaining),
            list(&r.component_c1),
            r.c1_chi,
            list(&r.shortest_path),
            r.penultimate,
            list(&r.neighbor_set),
            list(&r.reduced),
            list(&r.component_c2),
            r.c2_chi,
            r.bridge,
            r.subproblem_chi.map_or(String::new(), |c| format!(" G'''-chi={c}")),
            list(&r.recursive_path),
            list(&r.assembled),
        );
    }
    let _ = writeln!(out, "base: v={}", t.base_vertex);
    let _ = writeln!(out, "result: R={} colors={}", list(result.path.vertices()), result.color_count);
    out
}
