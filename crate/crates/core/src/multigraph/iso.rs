//! Brute-force canonical labelling and automorphisms for small multigraphs.
//!
//! Vertices are first sorted by (degree, loop count); the canonical code is the
//! lexicographically least column-by-column upper triangle of the edge
//! multiplicity matrix over all orderings compatible with that sort. The
//! search prunes on code prefixes, which is plenty for the ~10-vertex graphs
//! handled here.

use serde::{Deserialize, Serialize};

use super::Multigraph;
use crate::error::GraphError;

/// Isomorphism invariant: equal iff the graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    invariants: Vec<(u32, u32)>,
    code: Vec<u32>,
}

/// A canonical form together with the relabelling that achieves it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `relabel[old vertex] = canonical vertex`
    pub relabel: Vec<usize>,
}

/// A graph automorphism: a vertex permutation plus a compatible edge permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Automorphism {
    pub fn identity(vertex_count: usize, edge_count: usize) -> Automorphism {
        Automorphism {
            vertices: (0..vertex_count).collect(),
            edges: (0..edge_count).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            edges: other.edges.iter().map(|&e| self.edges[e]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut vertices = vec![0; self.vertices.len()];
        for (v, &w) in self.vertices.iter().enumerate() {
            vertices[w] = v;
        }
        let mut edges = vec![0; self.edges.len()];
        for (e, &f) in self.edges.iter().enumerate() {
            edges[f] = e;
        }
        Automorphism { vertices, edges }
    }

    /// Checks that the pair really is an automorphism of `g`.
    pub fn preserves(&self, g: &Multigraph) -> bool {
        (0..g.edge_count()).all(|e| {
            let (u, v) = g.endpoints(e);
            let (a, b) = g.endpoints(self.edges[e]);
            let (pu, pv) = (self.vertices[u], self.vertices[v]);
            (pu == a && pv == b) || (pu == b && pv == a)
        })
    }
}

fn multiplicity_matrix(g: &Multigraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![0u32; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] += 1;
        if u != v {
            adj[v][u] += 1;
        }
    }
    adj
}

fn vertex_invariants(g: &Multigraph) -> Vec<(u32, u32)> {
    (0..g.vertex_count())
        .map(|v| (g.degree(v) as u32, g.loop_count(v) as u32))
        .collect()
}

fn check_size(g: &Multigraph, cap: usize) -> Result<(), GraphError> {
    if g.vertex_count() > cap {
        return Err(GraphError::TooLarge {
            what: "vertex count for isomorphism search",
            size: g.vertex_count(),
            cap,
        });
    }
    Ok(())
}

struct CanonSearch<'a> {
    adj: &'a [Vec<u32>],
    inv: &'a [(u32, u32)],
    slot_inv: Vec<(u32, u32)>,
    order: Vec<usize>,
    used: Vec<bool>,
    code: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn run(&mut self, pos: usize) {
        let n = self.adj.len();
        if pos == n {
            let better = match &self.best {
                None => true,
                Some((code, _)) => self.code < *code,
            };
            if better {
                self.best = Some((self.code.clone(), self.order.clone()));
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.inv[v] != self.slot_inv[pos] {
                continue;
            }
            let start = self.code.len();
            for i in 0..pos {
                self.code.push(self.adj[self.order[i]][v]);
            }
            self.code.push(self.adj[v][v]);
            let prune = match &self.best {
                Some((code, _)) => self.code[..] > code[..self.code.len()],
                None => false,
            };
            if !prune {
                self.order.push(v);
                self.used[v] = true;
                self.run(pos + 1);
                self.used[v] = false;
                self.order.pop();
            }
            self.code.truncate(start);
        }
    }
}

impl Multigraph {
    pub fn canonical_labeling(&self, max_vertices: usize) -> Result<Labeling, GraphError> {
        check_size(self, max_vertices)?;
        let adj = multiplicity_matrix(self);
        let inv = vertex_invariants(self);
        let mut slot_inv = inv.clone();
        slot_inv.sort_unstable();
        let n = self.vertex_count();
        let mut search = CanonSearch {
            adj: &adj,
            inv: &inv,
            slot_inv: slot_inv.clone(),
            order: Vec::with_capacity(n),
            used: vec![false; n],
            code: Vec::new(),
            best: None,
        };
        search.run(0);
        let (code, order) = search.best.expect("at least one ordering exists");
        let mut relabel = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            relabel[v] = pos;
        }
        Ok(Labeling {
            form: CanonicalForm {
                invariants: slot_inv,
                code,
            },
            relabel,
        })
    }

    pub fn canonical_form(&self, max_vertices: usize) -> Result<CanonicalForm, GraphError> {
        Ok(self.canonical_labeling(max_vertices)?.form)
    }

    /// The canonical representative: vertices relabelled canonically, edges
    /// written as `(min, max)` and sorted.
    pub fn canonical_graph(&self, max_vertices: usize) -> Result<Multigraph, GraphError> {
        let labeling = self.canonical_labeling(max_vertices)?;
        let mut edges: Vec<[usize; 2]> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (labeling.relabel[u], labeling.relabel[v]);
                [a.min(b), a.max(b)]
            })
            .collect();
        edges.sort_unstable();
        Ok(Multigraph::from_parts(self.vertex_count(), edges))
    }

    pub fn isomorphic(&self, other: &Multigraph, max_vertices: usize) -> Result<bool, GraphError> {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.canonical_form(max_vertices)? == other.canonical_form(max_vertices)?)
    }

    /// All automorphisms, including every permutation of parallel edges and of
    /// loops at the same vertex. The identity comes first.
    pub fn automorphisms(&self, max_vertices: usize) -> Result<Vec<Automorphism>, GraphError> {
        check_size(self, max_vertices)?;
        let adj = multiplicity_matrix(self);
        let inv = vertex_invariants(self);
        let mut vertex_maps = Vec::new();
        let mut map = Vec::with_capacity(self.vertex_count());
        let mut used = vec![false; self.vertex_count()];
        vertex_automorphisms(&adj, &inv, &mut map, &mut used, &mut vertex_maps);

        // edges grouped by unordered endpoint pair
        let mut classes: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for (e, (u, v)) in self.edges().enumerate() {
            classes.entry((u.min(v), u.max(v))).or_default().push(e);
        }

        let mut out = Vec::new();
        for vmap in vertex_maps {
            let mut edge_maps: Vec<Vec<usize>> = vec![vec![usize::MAX; self.edge_count()]];
            for (&(u, v), sources) in &classes {
                let (a, b) = (vmap[u], vmap[v]);
                let targets = &classes[&(a.min(b), a.max(b))];
                let mut next = Vec::new();
                for partial in &edge_maps {
                    for perm in permutations(targets) {
                        let mut m = partial.clone();
                        for (&s, &t) in sources.iter().zip(&perm) {
                            m[s] = t;
                        }
                        next.push(m);
                    }
                }
                edge_maps = next;
            }
            out.extend(edge_maps.into_iter().map(|edges| Automorphism {
                vertices: vmap.clone(),
                edges,
            }));
        }
        Ok(out)
    }
}

fn vertex_automorphisms(
    adj: &[Vec<u32>],
    inv: &[(u32, u32)],
    map: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let i = map.len();
    let n = adj.len();
    if i == n {
        out.push(map.clone());
        return;
    }
    for w in 0..n {
        if used[w] || inv[w] != inv[i] {
            continue;
        }
        let consistent = adj[i][i] == adj[w][w] && (0..i).all(|j| adj[j][i] == adj[map[j]][w]);
        if consistent {
            used[w] = true;
            map.push(w);
            vertex_automorphisms(adj, inv, map, used, out);
            map.pop();
            used[w] = false;
        }
    }
}

/// All orderings of `items`, the original order first.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    let k = items.len();
    items.iter().copied().permutations(k).collect()
}
