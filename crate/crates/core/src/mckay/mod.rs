//! McKay graphs from tensoring with the defining two-dimensional representation, and the
//! class-version diagram built from cyclic subgroups.

mod compact;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::characters::{character_table, integer_inner_product, spin_character};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

pub use compact::{class_correspondence, compactified_diagram, ClassCorrespondence, CompactifiedDiagram, DiagramArc, Gluing};

pub const GRAPH_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdeType {
    /// `Ã_n`, a cycle on `n + 1` nodes.
    AffineA(usize),
    AffineE6,
    AffineE7,
    AffineE8,
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::AffineA(n) => write!(f, "~A{n}"),
            AdeType::AffineE6 => write!(f, "~E6"),
            AdeType::AffineE7 => write!(f, "~E7"),
            AdeType::AffineE8 => write!(f, "~E8"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McKayGraph {
    pub group: String,
    pub nodes: Vec<String>,
    pub marks: Vec<usize>,
    pub spinor: Vec<bool>,
    /// `adjacency[b][c] = ⟨χ_{1/2} χ_B, χ_C⟩`.
    pub adjacency: Vec<Vec<u32>>,
}

/// Builds the graph from the character table of `g`.
pub fn mckay_graph(g: &Arc<FiniteGroup>) -> Result<McKayGraph> {
    let table = character_table(g)?;
    let half = spin_character(g, 1);
    let irreps: Vec<_> = table.irreps().map(|(_, chi)| chi).collect();
    let mut adjacency = vec![vec![0u32; irreps.len()]; irreps.len()];
    for (b, chi_b) in irreps.iter().enumerate() {
        let prod = half.mul(chi_b)?;
        for (c, chi_c) in irreps.iter().enumerate() {
            let m = integer_inner_product(&prod, chi_c)?;
            adjacency[b][c] = u32::try_from(m).map_err(|_| Error::Contract(format!("negative multiplicity {m}")))?;
        }
    }
    for b in 0..irreps.len() {
        for c in 0..b {
            if adjacency[b][c] != adjacency[c][b] {
                return Err(Error::Contract(format!(
                    "{}: adjacency not symmetric at ({b}, {c})",
                    g.name()
                )));
            }
        }
    }
    Ok(McKayGraph {
        group: g.name().to_string(),
        nodes: table.labels().iter().map(|l| l.name.clone()).collect(),
        marks: table.labels().iter().map(|l| l.dimension).collect(),
        spinor: table.labels().iter().map(|l| l.spinor).collect(),
        adjacency,
    })
}

/// Lengths of the arms hanging off the unique degree-three node of a tree, sorted.
pub(crate) fn arm_lengths(adj: &[Vec<u32>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let edges: u32 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| adj[i][j]).sum();
    if edges as usize + 1 != n || adj.iter().flatten().any(|&a| a > 1) || (0..n).any(|i| adj[i][i] != 0) {
        return None;
    }
    let degree = |i: usize| adj[i].iter().sum::<u32>();
    let branches: Vec<usize> = (0..n).filter(|&i| degree(i) >= 3).collect();
    let [center] = branches[..] else {
        return None;
    };
    if degree(center) != 3 {
        return None;
    }
    let mut arms = Vec::new();
    for start in (0..n).filter(|&j| adj[center][j] == 1) {
        let (mut prev, mut cur, mut len) = (center, start, 1);
        while let Some(next) = (0..n).find(|&k| k != prev && adj[cur][k] == 1) {
            prev = cur;
            cur = next;
            len += 1;
        }
        arms.push(len);
    }
    if arms.iter().sum::<usize>() + 1 != n {
        return None;
    }
    arms.sort_unstable();
    Some(arms)
}

fn is_connected(adj: &[Vec<u32>]) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        if std::mem::replace(&mut seen[i], true) {
            continue;
        }
        stack.extend((0..n).filter(|&j| adj[i][j] > 0 && !seen[j]));
    }
    seen.into_iter().all(|s| s)
}

/// Affine type by canonical invariants: weighted degrees and arm lengths.
pub(crate) fn classify_adjacency(adj: &[Vec<u32>]) -> Option<AdeType> {
    let n = adj.len();
    if n == 0 || !is_connected(adj) {
        return None;
    }
    // a loop contributes 2 to its node's degree, like an edge counted from both ends
    if adj.iter().all(|row| row.iter().sum::<u32>() == 2) {
        return Some(AdeType::AffineA(n - 1));
    }
    match arm_lengths(adj)?.as_slice() {
        [2, 2, 2] => Some(AdeType::AffineE6),
        [1, 3, 3] => Some(AdeType::AffineE7),
        [1, 2, 5] => Some(AdeType::AffineE8),
        _ => None,
    }
}

#[derive(Serialize)]
struct GraphDocument<'a> {
    schema_version: u32,
    group: &'a str,
    ade_type: Option<String>,
    nodes: Vec<NodeEntry<'a>>,
    adjacency: &'a [Vec<u32>],
}

#[derive(Serialize)]
struct NodeEntry<'a> {
    name: &'a str,
    mark: usize,
    spinor: bool,
}

impl McKayGraph {
    pub fn ade_type(&self) -> Option<AdeType> {
        classify_adjacency(&self.adjacency)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.nodes.len();
        (0..n).all(|i| (0..n).all(|j| self.adjacency[i][j] == self.adjacency[j][i]))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.nodes.len()).all(|i| self.adjacency[i][i] == 0)
    }

    /// `2 mark(B) = Σ_C adjacency(B, C) mark(C)` at every node.
    pub fn mark_equation_holds(&self) -> bool {
        self.adjacency.iter().zip(&self.marks).all(|(row, &m)| {
            2 * m == row.iter().zip(&self.marks).map(|(&a, &mc)| a as usize * mc).sum::<usize>()
        })
    }

    /// Every edge joins a spinor irrep to a non-spinor one.
    pub fn is_spinor_bipartite(&self) -> bool {
        let n = self.nodes.len();
        (0..n).all(|i| (0..n).all(|j| self.adjacency[i][j] == 0 || self.spinor[i] != self.spinor[j]))
    }

    pub fn edge_count(&self) -> u32 {
        let n = self.nodes.len();
        (0..n).map(|i| (i..n).map(|j| self.adjacency[i][j]).sum::<u32>()).sum()
    }

    pub fn degree(&self, node: usize) -> u32 {
        self.adjacency[node].iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphDocument {
            schema_version: GRAPH_SCHEMA_VERSION,
            group: &self.group,
            ade_type: self.ade_type().map(|t| t.to_string()),
            nodes: self
                .nodes
                .iter()
                .zip(&self.marks)
                .zip(&self.spinor)
                .map(|((name, &mark), &spinor)| NodeEntry { name, mark, spinor })
                .collect(),
            adjacency: &self.adjacency,
        })
        .expect("graph serializes")
    }

    /// DOT text with nodes in table order and edges in lexicographic order.
    pub fn export_dot(&self) -> String {
        let labels: Vec<String> = self
            .nodes
            .iter()
            .zip(&self.marks)
            .map(|(n, m)| format!("{n} [{m}]"))
            .collect();
        let title = match self.ade_type() {
            Some(t) => format!("{} McKay {t}", self.group),
            None => format!("{} McKay", self.group),
        };
        write_dot(&title, &labels, &self.adjacency)
    }
}

pub(crate) fn write_dot(title: &str, labels: &[String], adj: &[Vec<u32>]) -> String {
    let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut out = format!("graph \"{}\" {{\n", esc(title));
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", esc(l)));
    }
    for i in 0..adj.len() {
        for j in i..adj.len() {
            match adj[i][j] {
                0 => {}
                1 => out.push_str(&format!("  n{i} -- n{j};\n")),
                m => out.push_str(&format!("  n{i} -- n{j} [label=\"{m}\"];\n")),
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group_from_selector;

    #[test]
    fn binary_polyhedral_types() {
        for (sel, ty) in [("2T", AdeType::AffineE6), ("2O", AdeType::AffineE7), ("2I", AdeType::AffineE8)] {
            let g = mckay_graph(&group_from_selector(sel).unwrap()).unwrap();
            assert_eq!(g.ade_type(), Some(ty));
            assert!(g.is_symmetric() && g.has_zero_diagonal());
            assert!(g.mark_equation_holds());
            assert!(g.is_spinor_bipartite());
        }
        let g = mckay_graph(&group_from_selector("2I").unwrap()).unwrap();
        let mut marks = g.marks.clone();
        marks.sort_unstable();
        let mut want = vec![1, 2, 3, 4, 5, 6, 4, 2, 3];
        want.sort_unstable();
        assert_eq!(marks, want);
    }

    #[test]
    fn cyclic_cycles() {
        for q in [1, 2, 3, 4, 5, 6, 8, 10] {
            let g = mckay_graph(&FiniteGroup::cyclic(q).unwrap()).unwrap();
            assert_eq!(g.ade_type(), Some(AdeType::AffineA(q as usize - 1)), "Z{q}");
            assert!(g.mark_equation_holds());
        }
    }

    #[test]
    fn dot_exports() {
        let z3 = mckay_graph(&FiniteGroup::cyclic(3).unwrap()).unwrap();
        let dot = z3.export_dot();
        assert_eq!(dot.matches("label=").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 3);
        let e6 = mckay_graph(&group_from_selector("2T").unwrap()).unwrap();
        let dot = e6.export_dot();
        assert_eq!(dot.matches("[label=").count(), 7);
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert_eq!((0..7).filter(|&i| e6.degree(i) == 3).count(), 1);
        assert_eq!(dot, mckay_graph(&group_from_selector("2T").unwrap()).unwrap().export_dot());
        assert_eq!(e6.to_json()["schema_version"], 1);
    }
}
