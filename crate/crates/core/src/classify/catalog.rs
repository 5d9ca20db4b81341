use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{classes_of, generate_cubic_graphs, realizable_signs, Realizability, SearchConfig, StructureClass};
use crate::error::ClassifyError;
use crate::multigraph::Multigraph;
use crate::scheme::{Rotation, Signs, SurfaceType};

/// One host graph and its structure classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEntry {
    pub graph: Multigraph,
    /// Number of realizable sign vectors before taking the quotient.
    pub realizable: u128,
    pub classes: Vec<StructureClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub q: usize,
    pub mode: Realizability,
    pub graphs: Vec<GraphEntry>,
}

/// Classes on every connected cubic multigraph of cycle rank `q`.
pub fn catalog(q: usize, config: &SearchConfig) -> Result<Catalog, ClassifyError> {
    config.install(|| {
        let graphs = generate_cubic_graphs(q, config)?
            .into_iter()
            .map(|g| entry(g, config))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Catalog {
            q,
            mode: config.mode,
            graphs,
        })
    })
}

/// Classes on the cyclic part of one graph, in the cyclic part's numbering.
pub fn catalog_for_graph(graph: &Multigraph, config: &SearchConfig) -> Result<Catalog, ClassifyError> {
    let cyclic = graph.cyclic_part().graph;
    config.install(|| {
        Ok(Catalog {
            q: cyclic.cycle_rank(),
            mode: config.mode,
            graphs: vec![entry(cyclic, config)?],
        })
    })
}

fn entry(graph: Multigraph, config: &SearchConfig) -> Result<GraphEntry, ClassifyError> {
    let realizable = realizable_signs(&graph, config)?;
    let classes = classes_of(&realizable, config)?;
    Ok(GraphEntry {
        realizable: realizable.len(),
        graph,
        classes,
    })
}

impl Catalog {
    pub fn structure_count(&self) -> usize {
        self.graphs.iter().map(|g| g.classes.len()).sum()
    }

    /// Class counts per graph, sorted ascending.
    pub fn class_count_multiset(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = self.graphs.iter().map(|g| g.classes.len()).collect();
        counts.sort_unstable();
        counts
    }

    pub fn to_document(&self) -> CatalogDocument {
        CatalogDocument {
            q: self.q,
            mode: self.mode,
            graphs: self
                .graphs
                .iter()
                .map(|entry| GraphDocument {
                    vertex_count: entry.graph.vertex_count(),
                    canonical_edges: entry.graph.edges().map(|(u, v)| [u, v]).collect(),
                    realizable: entry.realizable as u64,
                    classes: entry
                        .classes
                        .iter()
                        .map(|class| ClassDocument {
                            representative_signs: class.representative.clone(),
                            members: class.members.iter().map(|m| m.signs.clone()).collect(),
                            witness_rotation: class.members[0].witness.clone(),
                            surface: SurfaceDocument::from(class.surface),
                        })
                        .collect(),
                })
                .collect(),
            totals: Totals {
                graphs: self.graphs.len(),
                structures: self.structure_count(),
            },
        }
    }

    /// Pretty JSON; identical input gives byte-identical output.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("catalog documents always serialize")
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "q = {}, mode = {}: {} graphs, {} structures",
            self.q,
            self.mode.as_str(),
            self.graphs.len(),
            self.structure_count()
        );
        for (i, entry) in self.graphs.iter().enumerate() {
            let edges: Vec<String> = entry.graph.edges().map(|(u, v)| format!("{u}-{v}")).collect();
            let _ = writeln!(
                out,
                "\ngraph {}: V={} E={} edges [{}]; {} realizable, {} {}",
                i + 1,
                entry.graph.vertex_count(),
                entry.graph.edge_count(),
                edges.join(" "),
                entry.realizable,
                entry.classes.len(),
                if entry.classes.len() == 1 { "class" } else { "classes" }
            );
            let _ = writeln!(out, "  {:>3}  {:<14} {:>7}  surface", "#", "representative", "members");
            for (j, class) in entry.classes.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {:>3}  {:<14} {:>7}  {}",
                    j + 1,
                    class.representative.to_string(),
                    class.members.len(),
                    class.surface.name()
                );
            }
        }
        out
    }
}

/// Serialized form of a [`Catalog`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDocument {
    pub q: usize,
    pub mode: Realizability,
    pub graphs: Vec<GraphDocument>,
    pub totals: Totals,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertex_count: usize,
    pub canonical_edges: Vec<[usize; 2]>,
    pub realizable: u64,
    pub classes: Vec<ClassDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    pub representative_signs: Signs,
    pub members: Vec<Signs>,
    pub witness_rotation: Rotation,
    pub surface: SurfaceDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDocument {
    pub orientable: bool,
    pub euler_closed: i64,
    pub genus_or_crosscaps: usize,
    pub name: String,
}

impl From<SurfaceType> for SurfaceDocument {
    fn from(s: SurfaceType) -> Self {
        SurfaceDocument {
            orientable: s.orientable,
            euler_closed: s.euler_closed,
            genus_or_crosscaps: s.genus_or_crosscaps(),
            name: s.name(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub graphs: usize,
    pub structures: usize,
}

impl CatalogDocument {
    pub fn from_json(text: &str) -> Result<CatalogDocument, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_catalog() {
        let c = catalog(2, &SearchConfig::default()).unwrap();
        assert_eq!(c.graphs.len(), 2);
        assert_eq!(c.structure_count(), 3);
        assert_eq!(c.class_count_multiset(), vec![1, 2]);
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let config = SearchConfig::default();
        let c = catalog(2, &config).unwrap();
        let json = c.to_json();
        assert_eq!(json, catalog(2, &SearchConfig { threads: 1, ..config }).unwrap().to_json());
        let doc = CatalogDocument::from_json(&json).unwrap();
        assert_eq!(doc, c.to_document());
        assert_eq!(doc.totals, Totals { graphs: 2, structures: 3 });
    }

    #[test]
    fn single_graph_catalog_uses_cyclic_part() {
        let g = Multigraph::new(3, &[(0, 0), (0, 1), (1, 2)]).unwrap();
        let c = catalog_for_graph(&g, &SearchConfig::default()).unwrap();
        assert_eq!(c.q, 1);
        assert_eq!(c.graphs[0].graph.edge_count(), 1);
        assert_eq!(c.structure_count(), 1);
    }
}
