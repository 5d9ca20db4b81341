//! Finite connected multigraphs with loops and parallel edges.
//!
//! Vertices and edges carry dense integer ids. Every edge `e` owns two darts:
//! `e.0` at its first endpoint and `e.1` at its second; a loop owns two
//! distinct darts at the same vertex. All derived structures (bridges,
//! components, cycle bases, canonical labels) break ties by lowest id so that
//! results are stable across runs.

mod cycles;
mod iso;

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GraphError;

pub use iso::{Automorphism, CanonicalForm, Labeling};

/// Default cap on the number of edges for [`Multigraph::simple_cycles`].
pub const DEFAULT_CYCLE_EDGE_CAP: usize = 24;
/// Default cap on the number of vertices for brute-force isomorphism.
pub const DEFAULT_ISO_VERTEX_CAP: usize = 10;

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(usize);

impl Dart {
    pub fn new(edge: usize, end: usize) -> Dart {
        debug_assert!(end < 2);
        Dart(2 * edge + end)
    }

    pub fn from_index(index: usize) -> Dart {
        Dart(index)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn edge(self) -> usize {
        self.0 >> 1
    }

    /// 0 for the dart at the edge's first endpoint, 1 for the second.
    pub fn end(self) -> usize {
        self.0 & 1
    }

    /// The other dart of the same edge.
    pub fn partner(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge(), self.end())
    }
}

impl FromStr for Dart {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (edge, end) = s
            .split_once('.')
            .ok_or_else(|| format!("dart `{s}` must look like <edge>.<0|1>"))?;
        let edge: usize = edge
            .parse()
            .map_err(|_| format!("dart `{s}` has a non-numeric edge id"))?;
        let end = match end {
            "0" => 0,
            "1" => 1,
            _ => return Err(format!("dart `{s}` must end in .0 or .1")),
        };
        Ok(Dart::new(edge, end))
    }
}

impl Serialize for Dart {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dart {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of the edges of a graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(FixedBitSet);

impl EdgeSet {
    pub fn empty(edge_count: usize) -> EdgeSet {
        EdgeSet(FixedBitSet::with_capacity(edge_count))
    }

    pub fn from_edges(edge_count: usize, edges: impl IntoIterator<Item = usize>) -> EdgeSet {
        let mut set = EdgeSet::empty(edge_count);
        for e in edges {
            set.insert(e);
        }
        set
    }

    pub fn insert(&mut self, edge: usize) {
        self.0.insert(edge);
    }

    pub fn toggle(&mut self, edge: usize) {
        self.0.toggle(edge);
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0.contains(edge)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Number of edges of the ambient graph.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn symmetric_difference_with(&mut self, other: &EdgeSet) {
        self.0.symmetric_difference_with(&other.0);
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A maximal bridge-free connected piece of the graph, as an edge set plus
/// its sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub edges: EdgeSet,
    pub vertices: Vec<usize>,
}

/// Bridges and 2-connected components. Together they partition the edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub bridges: EdgeSet,
    pub components: Vec<Component>,
}

impl Decomposition {
    /// Index of the component holding `edge`, or `None` for a bridge.
    pub fn component_of(&self, edge: usize) -> Option<usize> {
        self.components.iter().position(|c| c.edges.contains(edge))
    }
}

/// A subgraph together with the ids it had in the parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Multigraph,
    /// new vertex id -> parent vertex id
    pub vertex_map: Vec<usize>,
    /// new edge id -> parent edge id
    pub edge_map: Vec<usize>,
}

/// A finite connected undirected multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    darts_at: Vec<Vec<Dart>>,
}

impl Multigraph {
    /// Builds and validates a connected multigraph. `u == v` marks a loop.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Multigraph, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        for (edge, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge,
                        vertex,
                        vertex_count,
                    });
                }
            }
        }
        let graph = Multigraph::from_parts(vertex_count, edges.iter().map(|&(u, v)| [u, v]));
        let components = graph.connected_component_count();
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(graph)
    }

    /// The single-vertex graph.
    pub fn point() -> Multigraph {
        Multigraph::from_parts(1, std::iter::empty())
    }

    /// Builds without the connectivity check. Endpoints must be in range.
    pub(crate) fn from_parts(
        vertex_count: usize,
        edges: impl IntoIterator<Item = [usize; 2]>,
    ) -> Multigraph {
        let edges: Vec<[usize; 2]> = edges.into_iter().collect();
        let mut darts_at = vec![Vec::new(); vertex_count];
        for (e, ends) in edges.iter().enumerate() {
            for (end, &v) in ends.iter().enumerate() {
                darts_at[v].push(Dart::new(e, end));
            }
        }
        Multigraph {
            vertex_count,
            edges,
            darts_at,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let [u, v] = self.edges[edge];
        (u, v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&[u, v]| (u, v))
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let [u, v] = self.edges[edge];
        u == v
    }

    /// The vertex a dart is attached to.
    pub fn dart_vertex(&self, dart: Dart) -> usize {
        self.edges[dart.edge()][dart.end()]
    }

    /// Darts at `v` in increasing id order.
    pub fn darts_at(&self, v: usize) -> &[Dart] {
        &self.darts_at[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.darts_at[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count).map(|v| self.degree(v)).collect()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.darts_at[v]
            .iter()
            .filter(|d| d.end() == 0 && self.is_loop(d.edge()))
            .count()
    }

    /// Dimension of the binary cycle space, `E - V + 1`.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count
    }

    /// True when every vertex has degree `k`.
    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) == k)
    }

    fn connected_component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for &[u, v] in &self.edges {
            uf.union(u, v);
        }
        uf.count()
    }

    /// Exact bridge set (iterative low-link search) and the connected pieces
    /// left after deleting all bridges that still have at least one edge.
    pub fn bridges_and_components(&self) -> Decomposition {
        let is_bridge = self.bridge_flags();
        let mut bridges = EdgeSet::empty(self.edge_count());
        let mut uf = UnionFind::new(self.vertex_count);
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            if is_bridge[e] {
                bridges.insert(e);
            } else {
                uf.union(u, v);
            }
        }

        // components keyed by their lowest edge id
        let mut root_to_component: Vec<Option<usize>> = vec![None; self.vertex_count];
        let mut components: Vec<Component> = Vec::new();
        for (e, &[u, _]) in self.edges.iter().enumerate() {
            if is_bridge[e] {
                continue;
            }
            let root = uf.find(u);
            let idx = *root_to_component[root].get_or_insert_with(|| {
                components.push(Component {
                    edges: EdgeSet::empty(self.edge_count()),
                    vertices: Vec::new(),
                });
                components.len() - 1
            });
            components[idx].edges.insert(e);
        }
        for v in 0..self.vertex_count {
            if let Some(idx) = root_to_component[uf.find(v)] {
                components[idx].vertices.push(v);
            }
        }
        Decomposition {
            bridges,
            components,
        }
    }

    fn bridge_flags(&self) -> Vec<bool> {
        const UNSEEN: usize = usize::MAX;
        let n = self.vertex_count;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut is_bridge = vec![false; self.edge_count()];
        let mut timer = 0;

        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // (vertex, edge used to enter it, next dart position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(top) = stack.last_mut() {
                let (v, parent_edge, pos) = *top;
                if pos < self.darts_at[v].len() {
                    top.2 += 1;
                    let dart = self.darts_at[v][pos];
                    let e = dart.edge();
                    if e == parent_edge || self.is_loop(e) {
                        continue;
                    }
                    let w = self.dart_vertex(dart.partner());
                    if disc[w] == UNSEEN {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            is_bridge[parent_edge] = true;
                        }
                    }
                }
            }
        }
        is_bridge
    }

    /// Iteratively strips degree-1 vertices. An acyclic graph collapses to the
    /// single vertex with the smallest original id.
    pub fn cyclic_part(&self) -> Subgraph {
        let mut degree = self.degrees();
        let mut alive_vertex = vec![true; self.vertex_count];
        let mut alive_edge = vec![true; self.edge_count()];
        let mut queue: Vec<usize> = (0..self.vertex_count).filter(|&v| degree[v] == 1).collect();

        while let Some(v) = queue.pop() {
            if !alive_vertex[v] || degree[v] != 1 {
                continue;
            }
            let dart = self.darts_at[v]
                .iter()
                .copied()
                .find(|d| alive_edge[d.edge()])
                .expect("degree-1 vertex has one live dart");
            alive_edge[dart.edge()] = false;
            alive_vertex[v] = false;
            degree[v] = 0;
            let w = self.dart_vertex(dart.partner());
            degree[w] -= 1;
            if degree[w] == 1 {
                queue.push(w);
            }
        }

        let kept_edges: Vec<usize> = (0..self.edge_count()).filter(|&e| alive_edge[e]).collect();
        if kept_edges.is_empty() {
            return Subgraph {
                graph: Multigraph::point(),
                vertex_map: vec![0],
                edge_map: Vec::new(),
            };
        }
        let kept_vertices: Vec<usize> = (0..self.vertex_count).filter(|&v| alive_vertex[v]).collect();
        self.subgraph_on(&kept_vertices, &kept_edges)
    }

    /// Subgraph spanned by an edge set. Vertices are those incident to the
    /// edges; both vertex and edge ids are renumbered in increasing order.
    pub fn edge_subgraph(&self, edges: &EdgeSet) -> Subgraph {
        let edge_ids: Vec<usize> = edges.iter().collect();
        let mut vertices: Vec<usize> = edge_ids
            .iter()
            .flat_map(|&e| self.edges[e])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        self.subgraph_on(&vertices, &edge_ids)
    }

    fn subgraph_on(&self, vertices: &[usize], edges: &[usize]) -> Subgraph {
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            new_id[v] = i;
        }
        let graph = Multigraph::from_parts(
            vertices.len(),
            edges.iter().map(|&e| {
                let [u, v] = self.edges[e];
                [new_id[u], new_id[v]]
            }),
        );
        Subgraph {
            graph,
            vertex_map: vertices.to_vec(),
            edge_map: edges.to_vec(),
        }
    }

    /// Same graph with vertices renamed by `relabel[old] = new`; edges keep their ids.
    pub fn relabeled(&self, relabel: &[usize]) -> Multigraph {
        Multigraph::from_parts(
            self.vertex_count,
            self.edges.iter().map(|&[u, v]| [relabel[u], relabel[v]]),
        )
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Multigraph;

    pub fn theta() -> Multigraph {
        Multigraph::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    pub fn dumbbell() -> Multigraph {
        Multigraph::new(2, &[(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    pub fn k4() -> Multigraph {
        Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn bouquet(loops: usize) -> Multigraph {
        Multigraph::new(1, &vec![(0, 0); loops]).unwrap()
    }
}
