//! Reference closure diagrams for `Sp(4,ℝ)` and `Sp(1,1)`, and a matcher that
//! finds a labelled-DAG isomorphism between a reference diagram and a computed poset.
//!
//! Vertices carry a dimension and (when known) the signed tableau of their
//! `Φ`-image; edges carry an optional simple-root label and a style. Root 1 is
//! the short simple root `α` and root 2 the long simple root `β`.

use petgraph::algo::subgraph_isomorphisms_iter;
use petgraph::graph::DiGraph;

use crate::kgb_clans::{ClosurePoset, EdgeStyle};
use crate::tableau::SignedTableau;

/// A reference diagram with named vertices.
#[derive(Debug, Clone, Copy)]
pub struct RefDiagram {
    pub name: &'static str,
    pub pair: &'static str,
    /// Parabolic in the CLI syntax; `"B"` for the full flag variety.
    pub parabolic: &'static str,
    /// `(name, dimension, Φ-image)`.
    pub vertices: &'static [(&'static str, usize, &'static str)],
    /// `(from, to, root label, dashed)`, from the smaller orbit to the larger.
    pub edges: &'static [(&'static str, &'static str, Option<usize>, bool)],
}

const ZERO_SP4: &str = "1^2+ 1^2-";
const R_PLUS: &str = "2^1+ 1^1+ 1^1-";
const R_MINUS: &str = "2^1- 1^1+ 1^1-";
const MIXED: &str = "2^1+ 2^1-";
const T_PLUS: &str = "2^2+";
const T_MINUS: &str = "2^2-";

/// `K\B` for `Sp(4,ℝ)`: weak-order edges labelled by roots, saturation edges dashed.
pub const SP4R_FULL_FLAG: RefDiagram = RefDiagram {
    name: "Sp(4,R) full flag variety",
    pair: "spr:2",
    parabolic: "B",
    vertices: &[
        ("Q", 4, ZERO_SP4),
        ("R+", 3, R_PLUS),
        ("R-", 3, R_MINUS),
        ("S", 3, MIXED),
        ("S'", 2, MIXED),
        ("T+", 2, T_PLUS),
        ("T-", 2, T_MINUS),
        ("T'+", 1, T_PLUS),
        ("T'-", 1, T_MINUS),
        ("U+", 1, "4^1+"),
        ("U-", 1, "4^1-"),
    ],
    edges: &[
        ("T'+", "T+", Some(2), false),
        ("U+", "T+", Some(2), false),
        ("U+", "S'", Some(1), false),
        ("U-", "S'", Some(1), false),
        ("U-", "T-", Some(2), false),
        ("T'-", "T-", Some(2), false),
        ("T+", "R+", Some(1), false),
        ("S'", "S", Some(2), false),
        ("T-", "R-", Some(1), false),
        ("R+", "Q", Some(2), false),
        ("S", "Q", Some(1), false),
        ("R-", "Q", Some(2), false),
        ("T+", "S", None, true),
        ("T-", "S", None, true),
        ("S'", "R+", None, true),
        ("S'", "R-", None, true),
    ],
};

/// `K\P_α` for `Sp(4,ℝ)`; vertices are named by their dense `K\B` member.
pub const SP4R_SHORT_PARABOLIC: RefDiagram = RefDiagram {
    name: "Sp(4,R) short-root parabolic",
    pair: "spr:2",
    parabolic: "1",
    vertices: &[
        ("Q", 3, ZERO_SP4),
        ("R+", 2, R_PLUS),
        ("R-", 2, R_MINUS),
        ("S'", 1, MIXED),
        ("T'+", 0, T_PLUS),
        ("T'-", 0, T_MINUS),
    ],
    edges: &[
        ("R+", "Q", None, false),
        ("R-", "Q", None, false),
        ("T'+", "R+", None, false),
        ("T'-", "R-", None, false),
        ("S'", "R+", None, true),
        ("S'", "R-", None, true),
    ],
};

/// `K\P_β` for `Sp(4,ℝ)`.
pub const SP4R_LONG_PARABOLIC: RefDiagram = RefDiagram {
    name: "Sp(4,R) long-root parabolic",
    pair: "spr:2",
    parabolic: "2",
    vertices: &[("Q", 3, ZERO_SP4), ("S", 2, MIXED), ("T+", 1, T_PLUS), ("T-", 1, T_MINUS)],
    edges: &[("S", "Q", None, false), ("T+", "S", None, true), ("T-", "S", None, true)],
};

/// `K\B` for `Sp(1,1)`.
pub const SP11_FULL_FLAG: RefDiagram = RefDiagram {
    name: "Sp(1,1) full flag variety",
    pair: "sppq:1,1",
    parabolic: "B",
    vertices: &[("Q", 4, ZERO_SP4), ("R", 3, MIXED), ("S+", 2, MIXED), ("S-", 2, MIXED)],
    edges: &[("S+", "R", Some(1), false), ("S-", "R", Some(1), false), ("R", "Q", Some(2), false)],
};

/// `K\P_α` for `Sp(1,1)`.
pub const SP11_SHORT_PARABOLIC: RefDiagram = RefDiagram {
    name: "Sp(1,1) short-root parabolic",
    pair: "sppq:1,1",
    parabolic: "1",
    vertices: &[("Q", 3, ZERO_SP4), ("R", 2, MIXED)],
    edges: &[("R", "Q", None, false)],
};

/// `K\P_β` for `Sp(1,1)`. The classes of `S_±` have dimension 1: the long root
/// is compact imaginary for `S_±`, so the fibre of `B → P_β` through them lies in the orbit.
pub const SP11_LONG_PARABOLIC: RefDiagram = RefDiagram {
    name: "Sp(1,1) long-root parabolic",
    pair: "sppq:1,1",
    parabolic: "2",
    vertices: &[("Q", 3, ZERO_SP4), ("S+", 1, MIXED), ("S-", 1, MIXED)],
    edges: &[("S+", "Q", None, false), ("S-", "Q", None, false)],
};

/// Every reference diagram.
pub const ALL_DIAGRAMS: [RefDiagram; 6] = [
    SP4R_FULL_FLAG,
    SP4R_SHORT_PARABOLIC,
    SP4R_LONG_PARABOLIC,
    SP11_FULL_FLAG,
    SP11_SHORT_PARABOLIC,
    SP11_LONG_PARABOLIC,
];

type VertexLabel = (usize, String);
type EdgeLabel = (Option<usize>, EdgeStyle);

fn style(dashed: bool) -> EdgeStyle {
    if dashed {
        EdgeStyle::Dashed
    } else {
        EdgeStyle::Solid
    }
}

impl RefDiagram {
    /// Index of a named vertex.
    pub fn vertex(&self, name: &str) -> usize {
        self.vertices.iter().position(|v| v.0 == name).unwrap_or_else(|| panic!("no vertex {name} in {}", self.name))
    }

    fn graph(&self) -> DiGraph<VertexLabel, EdgeLabel> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = self
            .vertices
            .iter()
            .map(|(_, dim, phi)| {
                let phi: SignedTableau = phi.parse().expect("reference tableaux parse");
                g.add_node((*dim, phi.to_string()))
            })
            .collect();
        for (a, b, label, dashed) in self.edges {
            g.add_edge(nodes[self.vertex(a)], nodes[self.vertex(b)], (*label, style(*dashed)));
        }
        g
    }
}

/// Finds a bijection `reference vertex → poset vertex` preserving dimensions,
/// `Φ`-images, edges, edge labels, and edge styles. `phi[i]` is the image of
/// poset vertex `i`. Returns `None` when the two are not isomorphic.
pub fn match_diagram(reference: &RefDiagram, poset: &ClosurePoset, phi: &[SignedTableau]) -> Option<Vec<usize>> {
    let g0 = reference.graph();
    let mut g1: DiGraph<VertexLabel, EdgeLabel> = DiGraph::new();
    let nodes: Vec<_> = (0..poset.len()).map(|i| g1.add_node((poset.dims[i], phi[i].to_string()))).collect();
    for e in &poset.edges {
        g1.add_edge(nodes[e.from], nodes[e.to], (e.label, e.style));
    }
    if g0.node_count() != g1.node_count() || g0.edge_count() != g1.edge_count() {
        return None;
    }
    let mut nm = |a: &VertexLabel, b: &VertexLabel| a == b;
    let mut em = |a: &EdgeLabel, b: &EdgeLabel| a == b;
    let (r0, r1) = (&g0, &g1);
    let mut found = subgraph_isomorphisms_iter(&r0, &r1, &mut nm, &mut em)?;
    found.next()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_diagrams_are_graded_dags() {
        for d in ALL_DIAGRAMS {
            for (a, b, _, dashed) in d.edges {
                let (da, db) = (d.vertices[d.vertex(a)].1, d.vertices[d.vertex(b)].1);
                assert!(db > da, "{}: {a} -> {b}", d.name);
                // One-step moves raise dimension by one on the full flag
                // variety; on K\P a class can jump further.
                if !dashed && d.parabolic == "B" {
                    assert_eq!(db, da + 1, "{}: solid {a} -> {b}", d.name);
                }
            }
        }
    }

    #[test]
    fn matcher_rejects_a_relabelled_edge() {
        let poset = ClosurePoset {
            ids: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            dims: vec![2, 2, 3, 4],
            edges: vec![
                crate::kgb_clans::PosetEdge { from: 0, to: 2, label: Some(1), style: EdgeStyle::Solid },
                crate::kgb_clans::PosetEdge { from: 1, to: 2, label: Some(1), style: EdgeStyle::Solid },
                crate::kgb_clans::PosetEdge { from: 2, to: 3, label: Some(2), style: EdgeStyle::Solid },
            ],
        };
        let mixed: SignedTableau = MIXED.parse().unwrap();
        let zero: SignedTableau = ZERO_SP4.parse().unwrap();
        let phi = vec![mixed.clone(), mixed.clone(), mixed, zero];
        let m = match_diagram(&SP11_FULL_FLAG, &poset, &phi).expect("isomorphic");
        assert_eq!(m[SP11_FULL_FLAG.vertex("Q")], 3);
        let mut wrong = poset.clone();
        wrong.edges[2].label = Some(1);
        assert!(match_diagram(&SP11_FULL_FLAG, &wrong, &phi).is_none());
    }
}
