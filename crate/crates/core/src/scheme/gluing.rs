//! Boundary count by explicit polygon gluing, used to cross-check the tracer.
//!
//! The patch is assembled from polygons: a `2d`-gon per vertex disk whose
//! sides alternate between band attachment arcs and free arcs, and a
//! rectangle per edge band. All polygons are oriented counter-clockwise.
//! Gluing a band end to an attachment arc identifies corners with reversed
//! direction; a twisted band has its far end glued the other way round. The
//! sides left unglued form the boundary, and its circles are the connected
//! components of those sides once glued corners are identified.

use super::Scheme;
use crate::multigraph::{Dart, UnionFind};

/// A side of a polygon, from corner `from` to corner `to`.
#[derive(Clone, Copy, Debug)]
struct Side {
    from: usize,
    to: usize,
}

#[derive(Default)]
struct Complex {
    corners: usize,
    free: Vec<Side>,
    glued: Vec<(Side, Side, bool)>,
}

impl Complex {
    fn corner(&mut self) -> usize {
        self.corners += 1;
        self.corners - 1
    }

    /// `straight` identifies `a.from ~ b.to` and `a.to ~ b.from`; otherwise
    /// the sides are glued head to head.
    fn glue(&mut self, a: Side, b: Side, straight: bool) {
        self.glued.push((a, b, straight));
    }

    fn boundary_circles(&self) -> usize {
        let mut uf = UnionFind::new(self.corners);
        for &(a, b, straight) in &self.glued {
            if straight {
                uf.union(a.from, b.to);
                uf.union(a.to, b.from);
            } else {
                uf.union(a.from, b.from);
                uf.union(a.to, b.to);
            }
        }
        let class: Vec<usize> = (0..self.corners).map(|c| uf.find(c)).collect();
        let mut circles = UnionFind::new(self.corners);
        for side in &self.free {
            circles.union(class[side.from], class[side.to]);
        }
        let mut roots: Vec<usize> = self
            .free
            .iter()
            .map(|side| circles.find(class[side.from]))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

pub fn oracle_boundary_count(scheme: &Scheme) -> usize {
    let graph = scheme.graph();
    let mut complex = Complex::default();
    let mut attach: Vec<Option<Side>> = vec![None; graph.dart_count()];
    let mut bare_disks = 0;

    for v in 0..graph.vertex_count() {
        let order = scheme.rotation().at(v);
        if order.is_empty() {
            bare_disks += 1;
            continue;
        }
        let corners: Vec<usize> = (0..2 * order.len()).map(|_| complex.corner()).collect();
        let n = corners.len();
        for (i, dart) in order.iter().enumerate() {
            attach[dart.index()] = Some(Side {
                from: corners[2 * i],
                to: corners[2 * i + 1],
            });
            complex.free.push(Side {
                from: corners[2 * i + 1],
                to: corners[(2 * i + 2) % n],
            });
        }
    }

    for e in 0..graph.edge_count() {
        let c: Vec<usize> = (0..4).map(|_| complex.corner()).collect();
        let end_near = Side { from: c[0], to: c[1] };
        let end_far = Side { from: c[2], to: c[3] };
        complex.free.push(Side { from: c[1], to: c[2] });
        complex.free.push(Side { from: c[3], to: c[0] });
        let near = attach[Dart::new(e, 0).index()].expect("every dart sits in a rotation");
        let far = attach[Dart::new(e, 1).index()].expect("every dart sits in a rotation");
        complex.glue(near, end_near, true);
        complex.glue(far, end_far, !scheme.signs().get(e));
    }

    complex.boundary_circles() + bare_disks
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(oracle_boundary_count(&loop_scheme(true)), 1);
        assert_eq!(oracle_boundary_count(&loop_scheme(false)), 2);
        assert_eq!(oracle_boundary_count(&Scheme::point()), 1);
        assert_eq!(oracle_boundary_count(&torus_bouquet()), 1);
        assert_eq!(oracle_boundary_count(&theta("000")), 1);
        assert_eq!(oracle_boundary_count(&dumbbell("101")), 1);
    }

    #[test]
    fn planar_theta_has_three_faces() {
        let s = theta("000").vertex_flip(1).unwrap().vertex_flip(1).unwrap();
        assert_eq!(oracle_boundary_count(&s), 1);
        // reversing one disk without twisting the bands gives the planar theta
        let planar = Scheme::new(
            s.graph().clone(),
            crate::scheme::Rotation::new(vec![vec![d(0, 0), d(1, 0), d(2, 0)], vec![d(0, 1), d(2, 1), d(1, 1)]]),
            signs("000"),
        )
        .unwrap();
        assert_eq!(oracle_boundary_count(&planar), 3);
        assert_eq!(planar.boundary_count(), 3);
    }
}
