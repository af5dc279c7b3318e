//! Hasse diagrams (the covering relation of `⊑`) as DOT digraphs.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

pub const DEFAULT_RENDER_BOUND: usize = 64;

/// Nodes in bottom-to-top rank order; edges point from an element to the
/// elements covering it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub labels: Vec<String>,
    pub ranks: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn hasse_diagram<L: FiniteLattice>(lattice: &L, max_nodes: usize) -> Result<HasseDiagram> {
    let card = lattice.cardinality();
    if card > max_nodes as u128 {
        return Err(Error::capacity(
            format!("Hasse diagram of {}", lattice.name()),
            card,
            max_nodes as u128,
        ));
    }
    let elems = lattice.elements();
    let n = elems.len();
    let lt: Vec<bool> = (0..n * n)
        .map(|k| {
            let (a, b) = (k / n, k % n);
            a != b && lattice.leq(&elems[a], &elems[b])
        })
        .collect();
    let less = |a: usize, b: usize| lt[a * n + b];
    let covers = |a: usize, b: usize| less(a, b) && !(0..n).any(|c| less(a, c) && less(c, b));

    // Sorting by the size of the strict down-set is a linear extension.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&b| ((0..n).filter(|&a| less(a, b)).count(), b));
    let mut rank = vec![0usize; n];
    for &b in &order {
        rank[b] = (0..n).filter(|&a| covers(a, b)).map(|a| rank[a] + 1).max().unwrap_or(0);
    }

    let mut layout: Vec<usize> = (0..n).collect();
    layout.sort_by_key(|&i| (rank[i], i));
    let mut position = vec![0usize; n];
    for (p, &i) in layout.iter().enumerate() {
        position[i] = p;
    }
    let mut edges = Vec::new();
    for &a in &layout {
        for &b in &layout {
            if covers(a, b) {
                edges.push((position[a], position[b]));
            }
        }
    }
    Ok(HasseDiagram {
        labels: layout.iter().map(|&i| lattice.render(&elems[i])).collect(),
        ranks: layout.iter().map(|&i| rank[i]).collect(),
        edges,
    })
}

impl HasseDiagram {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(graph_name));
        out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(label));
        }
        let max_rank = self.ranks.iter().copied().max().unwrap_or(0);
        for r in 0..=max_rank {
            let members: Vec<String> = (0..self.labels.len())
                .filter(|&i| self.ranks[i] == r)
                .map(|i| format!("n{i};"))
                .collect();
            if members.len() > 1 {
                let _ = writeln!(out, "  {{ rank=same; {} }}", members.join(" "));
            }
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text for the Hasse diagram of `lattice`.
pub fn hasse_export<L: FiniteLattice>(lattice: &L, max_nodes: usize) -> Result<String> {
    Ok(hasse_diagram(lattice, max_nodes)?.to_dot(&lattice.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::powerset_lattice;
    use crate::tag_options::{OptionsLattice, TagOptionsSpace};

    #[test]
    fn one_tag_two_options_is_a_diamond() {
        let s = TagOptionsSpace::from_names(["t1"], ["x", "y"]).unwrap();
        let l = OptionsLattice::new(s.clone(), s.tags.full()).unwrap();
        let d = hasse_diagram(&l, DEFAULT_RENDER_BOUND).unwrap();
        assert_eq!(d.node_count(), 4);
        assert_eq!(d.edges, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(d.ranks, vec![0, 1, 1, 2]);
        assert_eq!(d.labels[0], "{(t1,∅)}");
        assert_eq!(d.labels[3], "{(t1,{x,y})}");
    }

    #[test]
    fn singleton_lattice_has_no_edges() {
        let l = powerset_lattice(Vec::<String>::new()).unwrap();
        let d = hasse_diagram(&l, DEFAULT_RENDER_BOUND).unwrap();
        assert_eq!((d.node_count(), d.edges.len()), (1, 0));
    }

    #[test]
    fn oversized_lattice_is_rejected() {
        let l = powerset_lattice(["a", "b", "c", "d", "e", "f", "g"]).unwrap();
        assert!(matches!(
            hasse_export(&l, DEFAULT_RENDER_BOUND),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(escape("a\"b\\c"), "a\\\"b\\\\c");
    }
}
