//! Graphviz export of concept lattice Hasse diagrams.

use std::fmt::Write;

use crate::concept_lattice::ConceptLattice;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per element, one edge per covering pair pointing from the more
/// specific element to the more general one. A node shows the instances whose
/// least element it is and the types whose greatest element it is.
pub fn emit_dot(l: &ConceptLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in 0..l.len() {
        let insts: Vec<&str> = (0..l.instances().len())
            .filter(|&x| l.iota()[x] == c)
            .map(|x| l.instances()[x].as_str())
            .collect();
        let types: Vec<&str> = (0..l.types().len())
            .filter(|&y| l.tau()[y] == c)
            .map(|y| l.types()[y].as_str())
            .collect();
        let label = format!("{} / {}", insts.join(", "), types.join(", "));
        writeln!(out, "  c{c} [label=\"{}\"];", escape(label.trim())).unwrap();
    }
    for (lo, hi) in l.covers() {
        writeln!(out, "  c{lo} -> c{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edges `(from, to)` of a DOT text produced by [`emit_dot`].
pub fn dot_edges(text: &str) -> Vec<(usize, usize)> {
    text.lines()
        .filter_map(|l| {
            let (a, b) = l.trim().trim_end_matches(';').split_once(" -> ")?;
            Some((a.strip_prefix('c')?.parse().ok()?, b.strip_prefix('c')?.parse().ok()?))
        })
        .collect()
}

/// Number of node statements in a DOT text produced by [`emit_dot`].
pub fn dot_node_count(text: &str) -> usize {
    text.lines()
        .filter(|l| {
            let t = l.trim();
            t.starts_with('c') && t.contains("[label=")
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::Classification;

    #[test]
    fn k1_diagram() {
        let a = Classification::new(&["1", "2"], &["a", "b"], &[("1", "a"), ("2", "a"), ("2", "b")]).unwrap();
        let dot = emit_dot(&ConceptLattice::of(&a).unwrap());
        assert_eq!(dot_node_count(&dot), 2);
        assert_eq!(dot_edges(&dot), vec![(0, 1)]);
        assert!(dot.contains("c0 [label=\"2 / b\"]"));
        assert!(dot.contains("c1 [label=\"1 / a\"]"));
    }

    #[test]
    fn single_and_square() {
        let one = Classification::new(&["x"], &["y"], &[("x", "y")]).unwrap();
        let dot = emit_dot(&ConceptLattice::of(&one).unwrap());
        assert_eq!((dot_node_count(&dot), dot_edges(&dot).len()), (1, 0));
        let sq = Classification::instance_power(&["x", "y"]).unwrap();
        let dot = emit_dot(&ConceptLattice::of(&sq).unwrap());
        assert_eq!((dot_node_count(&dot), dot_edges(&dot).len()), (4, 4));
    }
}
