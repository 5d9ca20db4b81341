use std::collections::VecDeque;

use super::{EdgeSet, Multigraph, UnionFind};
use crate::error::GraphError;

impl Multigraph {
    /// Edge sets of all simple cycles. A loop is a cycle of length 1 and a pair
    /// of parallel edges one of length 2.
    ///
    /// Each cycle is found exactly once, from its lowest edge `e = (u, v)`, as a
    /// simple path from `v` back to `u` through edges with larger ids.
    pub fn simple_cycles(&self, max_edges: usize) -> Result<Vec<EdgeSet>, GraphError> {
        let m = self.edge_count();
        if m > max_edges {
            return Err(GraphError::TooLarge {
                what: "edge count for cycle enumeration",
                size: m,
                cap: max_edges,
            });
        }
        let mut cycles = Vec::new();
        let mut on_path = vec![false; self.vertex_count()];
        let mut path_edges = Vec::new();
        for e in 0..m {
            let (u, v) = self.endpoints(e);
            if u == v {
                cycles.push(EdgeSet::from_edges(m, [e]));
                continue;
            }
            path_edges.clear();
            path_edges.push(e);
            on_path[v] = true;
            self.extend_paths(v, u, e, &mut on_path, &mut path_edges, &mut cycles);
            on_path[v] = false;
        }
        Ok(cycles)
    }

    fn extend_paths(
        &self,
        at: usize,
        target: usize,
        floor: usize,
        on_path: &mut [bool],
        path_edges: &mut Vec<usize>,
        out: &mut Vec<EdgeSet>,
    ) {
        for &dart in self.darts_at(at) {
            let e = dart.edge();
            if e <= floor || self.is_loop(e) {
                continue;
            }
            let next = self.dart_vertex(dart.partner());
            if next == target {
                path_edges.push(e);
                out.push(EdgeSet::from_edges(self.edge_count(), path_edges.iter().copied()));
                path_edges.pop();
            } else if !on_path[next] {
                on_path[next] = true;
                path_edges.push(e);
                self.extend_paths(next, target, floor, on_path, path_edges, out);
                path_edges.pop();
                on_path[next] = false;
            }
        }
    }

    /// One fundamental cycle per non-tree edge of the spanning tree built by
    /// taking edges in increasing id order.
    pub fn fundamental_cycle_basis(&self) -> Vec<EdgeSet> {
        let n = self.vertex_count();
        let m = self.edge_count();
        let mut uf = UnionFind::new(n);
        let mut in_tree = vec![false; m];
        for (e, slot) in in_tree.iter_mut().enumerate() {
            let (u, v) = self.endpoints(e);
            *slot = uf.union(u, v);
        }

        // root the tree at vertex 0
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &dart in self.darts_at(v) {
                let e = dart.edge();
                if !in_tree[e] {
                    continue;
                }
                let w = self.dart_vertex(dart.partner());
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = e;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let parent = |v: usize| -> usize {
            let (a, b) = self.endpoints(parent_edge[v]);
            if a == v {
                b
            } else {
                a
            }
        };

        let mut basis = Vec::with_capacity(self.cycle_rank());
        for e in (0..m).filter(|&e| !in_tree[e]) {
            let mut cycle = EdgeSet::from_edges(m, [e]);
            let (mut a, mut b) = self.endpoints(e);
            while a != b {
                if depth[a] >= depth[b] {
                    cycle.toggle(parent_edge[a]);
                    a = parent(a);
                } else {
                    cycle.toggle(parent_edge[b]);
                    b = parent(b);
                }
            }
            basis.push(cycle);
        }
        basis
    }
}
