//! The class-version diagram: three circles of cyclic images meeting at `E` and `−E`.
//!
//! Point `r` on the circle of a generator `γ` of order `q = 2k` is the class `[γ^r]`. The
//! reflection `r ↦ q − r` folds a circle onto a semicircle with `k − 1` internal nodes exactly
//! when `[γ^r] = [γ^{−r}]`. When it does not, the reflected half lands on another arc, and the
//! two arcs are recorded as glued.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{classify_adjacency, mckay_graph, write_dot, AdeType, GRAPH_SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupKind};

const ARC_GENERATORS: [&str; 3] = ["R", "S", "T"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramArc {
    pub generator: String,
    pub order: usize,
    /// Classes `[γ^r]` for `1 ≤ r < q/2`.
    pub internal: Vec<String>,
    /// The reflection identifies `[γ^r]` with `[γ^{q−r}]` for every `r`.
    pub folded: bool,
}

/// `[γ^power]` on the reflected half of one circle is an internal node of another arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gluing {
    pub generator: String,
    pub power: usize,
    pub class: String,
    pub onto_generator: String,
    pub onto_power: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactifiedDiagram {
    pub schema_version: u32,
    pub group: String,
    /// Class labels of the poles `1` and `1̄`.
    pub poles: [String; 2],
    pub arcs: Vec<DiagramArc>,
    pub gluings: Vec<Gluing>,
    /// Distinct classes on the diagram.
    pub node_count: usize,
    /// The arc left attached to pole `1` after detaching the other two from it, chosen so
    /// the result has the same affine type as the McKay graph.
    pub relinked_arc: Option<String>,
    pub relinked_type: Option<AdeType>,
    pub mckay_type: Option<AdeType>,
}

impl CompactifiedDiagram {
    pub fn arc_sizes(&self) -> Vec<usize> {
        self.arcs.iter().map(|a| a.internal.len()).collect()
    }

    /// Node labels and adjacency of the drawn diagram: poles first, then arc interiors.
    pub fn graph(&self) -> (Vec<String>, Vec<Vec<u32>>) {
        let mut labels = vec![self.poles[0].clone(), self.poles[1].clone()];
        let mut edges = Vec::new();
        for arc in &self.arcs {
            let mut prev = 0;
            for c in &arc.internal {
                labels.push(c.clone());
                edges.push((prev, labels.len() - 1));
                prev = labels.len() - 1;
            }
            edges.push((prev, 1));
        }
        let mut adj = vec![vec![0; labels.len()]; labels.len()];
        for (a, b) in edges {
            adj[a][b] += 1;
            adj[b][a] += 1;
        }
        (labels, adj)
    }

    pub fn export_dot(&self) -> String {
        let (labels, adj) = self.graph();
        write_dot(&format!("{} class diagram", self.group), &labels, &adj)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serializes")
    }
}

/// Detaches pole `1` (node 0) from every arc except `keep`.
fn relink(diagram: &CompactifiedDiagram, keep: usize) -> Vec<Vec<u32>> {
    let (_, mut adj) = diagram.graph();
    let mut first = 2;
    for (i, arc) in diagram.arcs.iter().enumerate() {
        if i != keep && !arc.internal.is_empty() {
            adj[0][first] = 0;
            adj[first][0] = 0;
        }
        first += arc.internal.len();
    }
    adj
}

fn class_label(g: &FiniteGroup, element: usize) -> String {
    g.classes()[g.class_of(element)].label.clone()
}

fn require_polyhedral(g: &FiniteGroup) -> Result<()> {
    match g.kind() {
        GroupKind::BinaryPolyhedral { .. } => Ok(()),
        _ => Err(Error::Input(format!("{} is not a binary polyhedral group", g.name()))),
    }
}

/// Builds the diagram from the class map of each generator's powers.
pub fn compactified_diagram(g: &Arc<FiniteGroup>) -> Result<CompactifiedDiagram> {
    require_polyhedral(g)?;
    let mut arcs = Vec::new();
    // internal class -> (generator, power)
    let mut owner: BTreeMap<usize, (String, usize)> = BTreeMap::new();
    for gen in ARC_GENERATORS {
        let x = g.generator(gen)?;
        let q = g.element_order(x);
        let folded = (1..q).all(|r| g.class_of(g.power(x, r)) == g.class_of(g.power(x, q - r)));
        let internal = (1..q / 2).map(|r| class_label(g, g.power(x, r))).collect();
        for r in 1..q / 2 {
            owner.entry(g.class_of(g.power(x, r))).or_insert((gen.to_string(), r));
        }
        arcs.push(DiagramArc {
            generator: gen.to_string(),
            order: q,
            internal,
            folded,
        });
    }
    let mut gluings = Vec::new();
    for gen in ARC_GENERATORS {
        let x = g.generator(gen)?;
        let q = g.element_order(x);
        for r in q / 2 + 1..q {
            let c = g.class_of(g.power(x, r));
            if let Some((onto, p)) = owner.get(&c).filter(|(o, _)| o != gen) {
                gluings.push(Gluing {
                    generator: gen.to_string(),
                    power: r,
                    class: g.classes()[c].label.clone(),
                    onto_generator: onto.clone(),
                    onto_power: *p,
                });
            }
        }
    }
    let neg = g.neg_identity().ok_or_else(|| Error::Contract("no central -E".into()))?;
    let mut diagram = CompactifiedDiagram {
        schema_version: GRAPH_SCHEMA_VERSION,
        group: g.name().to_string(),
        poles: [class_label(g, g.identity()), class_label(g, neg)],
        arcs,
        gluings,
        node_count: 2 + owner.len(),
        relinked_arc: None,
        relinked_type: None,
        mckay_type: mckay_graph(g)?.ade_type(),
    };
    for keep in 0..diagram.arcs.len() {
        let ty = classify_adjacency(&relink(&diagram, keep));
        if ty.is_some() && ty == diagram.mckay_type {
            diagram.relinked_arc = Some(diagram.arcs[keep].generator.clone());
            diagram.relinked_type = ty;
            break;
        }
    }
    Ok(diagram)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceEntry {
    pub generator: String,
    pub r: usize,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCorrespondence {
    pub schema_version: u32,
    pub group: String,
    pub entries: Vec<CorrespondenceEntry>,
    /// Each non-central class, with the `(generator, r)` points mapping to it.
    pub preimages: BTreeMap<String, Vec<(String, usize)>>,
    /// Every non-central class has exactly two preimages.
    pub two_to_one: bool,
    /// Each pair of preimages is `r` and `q − r` of one generator.
    pub reflection_pairs: bool,
    /// The non-central classes met are all of them.
    pub exhausts: bool,
    /// `r = 0 ↦ [E]` and `r = q/2 ↦ [−E]` for every generator.
    pub trivial_points: bool,
}

/// Maps cyclic twists `r` of `⟨R⟩, ⟨S⟩, ⟨T⟩` to classes `[γ^r]`.
pub fn class_correspondence(g: &Arc<FiniteGroup>) -> Result<ClassCorrespondence> {
    require_polyhedral(g)?;
    let e = g.class_of(g.identity());
    let ne = g.class_of(g.neg_identity().ok_or_else(|| Error::Contract("no central -E".into()))?);
    let mut entries = Vec::new();
    let mut by_class: BTreeMap<usize, Vec<(String, usize, usize)>> = BTreeMap::new();
    let mut trivial_points = true;
    for gen in ARC_GENERATORS {
        let x = g.generator(gen)?;
        let q = g.element_order(x);
        for r in 0..q {
            let c = g.class_of(g.power(x, r));
            entries.push(CorrespondenceEntry {
                generator: gen.to_string(),
                r,
                class: g.classes()[c].label.clone(),
            });
            if r == 0 {
                trivial_points &= c == e;
            } else if 2 * r == q {
                trivial_points &= c == ne;
            } else {
                by_class.entry(c).or_default().push((gen.to_string(), r, q));
            }
        }
    }
    let two_to_one = by_class.values().all(|v| v.len() == 2);
    let reflection_pairs = by_class
        .values()
        .all(|v| v.len() == 2 && v[0].0 == v[1].0 && v[0].1 + v[1].1 == v[0].2);
    let exhausts = by_class.len() == g.num_classes() - 2;
    let preimages = by_class
        .into_iter()
        .map(|(c, v)| {
            (
                g.classes()[c].label.clone(),
                v.into_iter().map(|(gen, r, _)| (gen, r)).collect(),
            )
        })
        .collect();
    Ok(ClassCorrespondence {
        schema_version: GRAPH_SCHEMA_VERSION,
        group: g.name().to_string(),
        entries,
        preimages,
        two_to_one,
        reflection_pairs,
        exhausts,
        trivial_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group_from_selector;

    #[test]
    fn arc_sizes_and_gluing() {
        let d = compactified_diagram(&group_from_selector("2I").unwrap()).unwrap();
        assert_eq!(d.arc_sizes(), vec![1, 2, 4]);
        assert!(d.gluings.is_empty());
        assert_eq!(d.node_count, 9);
        assert_eq!(d.relinked_arc.as_deref(), Some("T"));
        assert_eq!(d.relinked_type, Some(AdeType::AffineE8));

        let d = compactified_diagram(&group_from_selector("2O").unwrap()).unwrap();
        assert_eq!(d.arc_sizes(), vec![1, 2, 3]);
        assert!(d.gluings.is_empty());
        assert!(d.arcs.iter().all(|a| a.folded));
        assert_eq!(d.relinked_type, Some(AdeType::AffineE7));

        let d = compactified_diagram(&group_from_selector("2T").unwrap()).unwrap();
        assert_eq!(d.arc_sizes(), vec![1, 2, 2]);
        assert!(d.arcs[0].folded && !d.arcs[1].folded && !d.arcs[2].folded);
        // [S^5] = [S^-1] is the class of T, and [S^4] = [S^-2] that of T^2
        assert!(d.gluings.iter().any(|gl| gl.generator == "S" && gl.power == 5 && gl.onto_generator == "T" && gl.onto_power == 1));
        assert!(d.gluings.iter().any(|gl| gl.generator == "S" && gl.power == 4 && gl.onto_power == 2));
        assert_eq!(d.node_count, 7);
        assert_eq!(d.relinked_type, Some(AdeType::AffineE6));
    }

    #[test]
    fn correspondence() {
        let c = class_correspondence(&group_from_selector("2O").unwrap()).unwrap();
        assert!(c.two_to_one && c.reflection_pairs && c.exhausts && c.trivial_points);
        assert_eq!(c.preimages["T"], vec![("T".to_string(), 1), ("T".to_string(), 7)]);

        let c = class_correspondence(&group_from_selector("2T").unwrap()).unwrap();
        assert!(c.two_to_one && c.exhausts && c.trivial_points);
        assert!(!c.reflection_pairs);
        assert_eq!(c.preimages["T"], vec![("S".to_string(), 5), ("T".to_string(), 1)]);
    }

    #[test]
    fn dot_is_deterministic() {
        let g = group_from_selector("2O").unwrap();
        let a = compactified_diagram(&g).unwrap().export_dot();
        assert_eq!(a, compactified_diagram(&g).unwrap().export_dot());
        assert_eq!(a.matches(" -- ").count(), 1 + 2 + 3 + 3);
    }
}
