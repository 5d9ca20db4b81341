//! Signed rotation systems and the ribbon surfaces they describe.
//!
//! A [`Scheme`] fattens a multigraph: each vertex becomes a disk with its
//! darts in a fixed cyclic order (all disks face "up"), and each edge a band
//! that carries a half-twist iff its sign is 1. The sign vector is therefore
//! the switch function of the structure: an edge is *switched* iff its sign is 1.
//! A scheme is a *strip* when the fattened surface has exactly one boundary circle.

mod gluing;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SchemeError;
use crate::multigraph::{Component, Dart, EdgeSet, Multigraph, Subgraph};

pub use gluing::oracle_boundary_count;
pub use trace::{BoundaryTrace, DartSide};
pub(crate) use trace::count_boundary;

/// Per-edge twist parity, `λ: E → {0, 1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Signs(Vec<bool>);

impl Signs {
    pub fn new(bits: Vec<bool>) -> Signs {
        Signs(bits)
    }

    pub fn zeros(edge_count: usize) -> Signs {
        Signs(vec![false; edge_count])
    }

    pub fn ones(edge_count: usize) -> Signs {
        Signs(vec![true; edge_count])
    }

    /// Bit `e` of `mask` is the sign of edge `e`.
    pub fn from_mask(edge_count: usize, mask: u64) -> Signs {
        Signs((0..edge_count).map(|e| mask >> e & 1 == 1).collect())
    }

    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.0.len() <= 64);
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (e, &b)| acc | (u64::from(b) << e))
    }

    pub fn get(&self, edge: usize) -> bool {
        self.0[edge]
    }

    pub fn set(&mut self, edge: usize, value: bool) {
        self.0[edge] = value;
    }

    pub fn toggle(&mut self, edge: usize) {
        self.0[edge] ^= true;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    /// Parity of the signs over an edge set.
    pub fn parity(&self, edges: &EdgeSet) -> bool {
        edges.iter().filter(|&e| self.0[e]).count() % 2 == 1
    }
}

impl fmt::Display for Signs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signs({self})")
    }
}

impl FromStr for Signs {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("sign string contains `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Signs)
    }
}

impl Serialize for Signs {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Signs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A cyclic order of darts at every vertex. The first dart of each list is
/// only an anchor; lists that differ by a cyclic shift describe the same rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rotation(Vec<Vec<Dart>>);

impl Rotation {
    pub fn new(orders: Vec<Vec<Dart>>) -> Rotation {
        Rotation(orders)
    }

    /// Darts of every vertex in increasing id order.
    pub fn by_dart_id(graph: &Multigraph) -> Rotation {
        Rotation((0..graph.vertex_count()).map(|v| graph.darts_at(v).to_vec()).collect())
    }

    pub fn at(&self, v: usize) -> &[Dart] {
        &self.0[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.0.len()
    }

    pub fn orders(&self) -> &[Vec<Dart>] {
        &self.0
    }

    /// Each cyclic list re-anchored at its smallest dart.
    pub fn normalized(&self) -> Rotation {
        Rotation(
            self.0
                .iter()
                .map(|order| {
                    let mut order = order.clone();
                    if let Some(pos) = order.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i) {
                        order.rotate_left(pos);
                    }
                    order
                })
                .collect(),
        )
    }

    pub fn same_cyclic_orders(&self, other: &Rotation) -> bool {
        self.normalized() == other.normalized()
    }

    pub(crate) fn reverse_at(&mut self, v: usize) {
        let order = &mut self.0[v];
        if order.len() > 1 {
            order[1..].reverse();
        }
    }
}

/// Topological summary of a scheme's patch and of the closed surface obtained
/// by capping every boundary circle with a disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceType {
    /// `V - E`; the patch deformation-retracts onto the graph.
    pub euler_patch: i64,
    pub boundary: usize,
    pub orientable: bool,
    /// `euler_patch + boundary`
    pub euler_closed: i64,
}

impl SurfaceType {
    pub fn genus(&self) -> Option<usize> {
        self.orientable.then(|| ((2 - self.euler_closed) / 2) as usize)
    }

    pub fn crosscaps(&self) -> Option<usize> {
        (!self.orientable).then(|| (2 - self.euler_closed) as usize)
    }

    pub fn genus_or_crosscaps(&self) -> usize {
        self.genus().or(self.crosscaps()).unwrap_or(0)
    }

    /// Name of the capped closed surface.
    pub fn name(&self) -> String {
        match (self.orientable, self.genus_or_crosscaps()) {
            (true, 0) => "sphere".into(),
            (true, 1) => "torus".into(),
            (true, g) => format!("orientable surface of genus {g}"),
            (false, 1) => "projective plane".into(),
            (false, 2) => "Klein bottle".into(),
            (false, k) => format!("non-orientable surface with {k} crosscaps"),
        }
    }
}

/// A multigraph with a rotation system and a sign per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    graph: Multigraph,
    rotation: Rotation,
    signs: Signs,
    next: Vec<usize>,
    prev: Vec<usize>,
}

impl Scheme {
    pub fn new(graph: Multigraph, rotation: Rotation, signs: Signs) -> Result<Scheme, SchemeError> {
        if rotation.vertex_count() != graph.vertex_count() {
            return Err(SchemeError::BadRotation {
                vertex: rotation.vertex_count().min(graph.vertex_count()),
                reason: format!(
                    "rotation covers {} vertices, graph has {}",
                    rotation.vertex_count(),
                    graph.vertex_count()
                ),
            });
        }
        for v in 0..graph.vertex_count() {
            let order = rotation.at(v);
            let mut seen = vec![false; graph.dart_count()];
            for &d in order {
                if d.index() >= graph.dart_count() || graph.dart_vertex(d) != v {
                    return Err(SchemeError::BadRotation {
                        vertex: v,
                        reason: format!("dart {d} is not at this vertex"),
                    });
                }
                if std::mem::replace(&mut seen[d.index()], true) {
                    return Err(SchemeError::BadRotation {
                        vertex: v,
                        reason: format!("dart {d} is listed twice"),
                    });
                }
            }
            if order.len() != graph.degree(v) {
                let missing = graph.darts_at(v).iter().find(|d| !seen[d.index()]).expect("a dart is missing");
                return Err(SchemeError::BadRotation {
                    vertex: v,
                    reason: format!("dart {missing} is missing"),
                });
            }
        }
        if signs.len() < graph.edge_count() {
            return Err(SchemeError::MissingSign { edge: signs.len() });
        }
        if signs.len() > graph.edge_count() {
            return Err(SchemeError::ExtraSigns {
                expected: graph.edge_count(),
                found: signs.len(),
            });
        }
        Ok(Scheme::assemble(graph, rotation, signs))
    }

    /// Builds the successor tables of an already validated rotation.
    pub(crate) fn assemble(graph: Multigraph, rotation: Rotation, signs: Signs) -> Scheme {
        let (next, prev) = successor_tables(graph.dart_count(), &rotation);
        Scheme {
            graph,
            rotation,
            signs,
            next,
            prev,
        }
    }

    /// The single-vertex scheme: a disk.
    pub fn point() -> Scheme {
        Scheme::assemble(Multigraph::point(), Rotation::new(vec![Vec::new()]), Signs::zeros(0))
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn rotation(&self) -> &Rotation {
        &self.rotation
    }

    pub fn signs(&self) -> &Signs {
        &self.signs
    }

    pub fn into_parts(self) -> (Multigraph, Rotation, Signs) {
        (self.graph, self.rotation, self.signs)
    }

    /// Same graph and rotation with other signs.
    pub fn with_signs(&self, signs: Signs) -> Result<Scheme, SchemeError> {
        if signs.len() < self.graph.edge_count() {
            return Err(SchemeError::MissingSign { edge: signs.len() });
        }
        Ok(Scheme {
            signs,
            ..self.clone()
        })
    }

    pub(crate) fn next_table(&self) -> &[usize] {
        &self.next
    }

    pub(crate) fn prev_table(&self) -> &[usize] {
        &self.prev
    }

    fn isolated_vertices(&self) -> usize {
        (0..self.graph.vertex_count())
            .filter(|&v| self.graph.degree(v) == 0)
            .count()
    }

    /// Number of boundary circles of the patch.
    pub fn boundary_count(&self) -> usize {
        let mut seen = vec![false; 2 * self.graph.dart_count()];
        count_boundary(&self.next, &self.prev, |e| self.signs.get(e), self.isolated_vertices(), &mut seen)
    }

    /// One boundary circle. Only meaningful on a graph equal to its cyclic part.
    pub fn is_strip(&self) -> Result<bool, SchemeError> {
        if let Some(vertex) = (0..self.graph.vertex_count()).find(|&v| self.graph.degree(v) == 1) {
            return Err(SchemeError::NotCyclicPart { vertex });
        }
        Ok(self.boundary_count() == 1)
    }

    /// The switch value of every edge. With every vertex disk facing up this is
    /// the sign vector itself.
    pub fn companion(&self) -> Signs {
        self.signs.clone()
    }

    pub fn switched_edges(&self) -> EdgeSet {
        EdgeSet::from_edges(
            self.graph.edge_count(),
            (0..self.graph.edge_count()).filter(|&e| self.signs.get(e)),
        )
    }

    /// Turns the disk at `v` upside down: its cyclic order reverses and every
    /// non-loop edge at `v` toggles its sign. Loops keep their sign since both
    /// of their ends flip.
    pub fn vertex_flip(&self, v: usize) -> Result<Scheme, SchemeError> {
        if v >= self.graph.vertex_count() {
            return Err(SchemeError::VertexOutOfRange { vertex: v });
        }
        let mut rotation = self.rotation.clone();
        rotation.reverse_at(v);
        let mut signs = self.signs.clone();
        for d in self.graph.darts_at(v) {
            if !self.graph.is_loop(d.edge()) {
                signs.toggle(d.edge());
            }
        }
        Ok(Scheme::assemble(self.graph.clone(), rotation, signs))
    }

    /// Mirror image: every cyclic order reversed, signs unchanged.
    pub fn mirrored(&self) -> Scheme {
        let mut rotation = self.rotation.clone();
        for v in 0..self.graph.vertex_count() {
            rotation.reverse_at(v);
        }
        Scheme::assemble(self.graph.clone(), rotation, self.signs.clone())
    }

    /// Orientable iff every fundamental cycle carries an even number of twists.
    pub fn is_orientable(&self) -> bool {
        self.graph
            .fundamental_cycle_basis()
            .iter()
            .all(|cycle| !self.signs.parity(cycle))
    }

    pub fn surface_type(&self) -> SurfaceType {
        let euler_patch = self.graph.vertex_count() as i64 - self.graph.edge_count() as i64;
        let boundary = self.boundary_count();
        SurfaceType {
            euler_patch,
            boundary,
            orientable: self.is_orientable(),
            euler_closed: euler_patch + boundary as i64,
        }
    }

    /// Restriction to one 2-connected component: the component's edges, their
    /// signs, and each cyclic order with foreign darts deleted.
    pub fn component_subscheme(&self, component: &Component) -> Scheme {
        self.restrict_to_edges(&component.edges).0
    }

    pub(crate) fn restrict_to_edges(&self, edges: &EdgeSet) -> (Scheme, Subgraph) {
        let sub = self.graph.edge_subgraph(edges);
        let mut new_edge = vec![usize::MAX; self.graph.edge_count()];
        for (i, &e) in sub.edge_map.iter().enumerate() {
            new_edge[e] = i;
        }
        let rotation = Rotation::new(
            sub.vertex_map
                .iter()
                .map(|&old| {
                    self.rotation
                        .at(old)
                        .iter()
                        .filter(|d| edges.contains(d.edge()))
                        .map(|d| Dart::new(new_edge[d.edge()], d.end()))
                        .collect()
                })
                .collect(),
        );
        let signs = Signs::new(sub.edge_map.iter().map(|&e| self.signs.get(e)).collect());
        (Scheme::assemble(sub.graph.clone(), rotation, signs), sub)
    }

    /// Independent boundary count from explicit polygon gluing.
    pub fn oracle_boundary_count(&self) -> usize {
        oracle_boundary_count(self)
    }
}

pub(crate) fn successor_tables(dart_count: usize, rotation: &Rotation) -> (Vec<usize>, Vec<usize>) {
    let mut next = vec![0; dart_count];
    let mut prev = vec![0; dart_count];
    for order in rotation.orders() {
        let k = order.len();
        for (i, d) in order.iter().enumerate() {
            next[d.index()] = order[(i + 1) % k].index();
            prev[d.index()] = order[(i + k - 1) % k].index();
        }
    }
    (next, prev)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::multigraph::fixtures as graphs;

    #[test]
    fn make_scheme_examples() {
        assert_eq!(Scheme::point().boundary_count(), 1);
        theta("000");
        let err = Scheme::new(
            graphs::theta(),
            Rotation::new(vec![vec![d(0, 0), d(1, 0)], vec![d(0, 1), d(1, 1), d(2, 1)]]),
            signs("000"),
        )
        .unwrap_err();
        assert!(matches!(err, SchemeError::BadRotation { vertex: 0, .. }));
        let err = Scheme::new(
            graphs::theta(),
            Rotation::new(vec![vec![d(0, 0), d(1, 0), d(2, 1)], vec![d(0, 1), d(1, 1), d(2, 0)]]),
            signs("000"),
        )
        .unwrap_err();
        assert!(matches!(err, SchemeError::BadRotation { .. }));
        let err = Scheme::new(graphs::theta(), Rotation::by_dart_id(&graphs::theta()), signs("00")).unwrap_err();
        assert_eq!(err, SchemeError::MissingSign { edge: 2 });
    }

    #[test]
    fn closed_form_boundaries() {
        assert_eq!(loop_scheme(true).boundary_count(), 1);
        assert_eq!(loop_scheme(false).boundary_count(), 2);
        assert_eq!(torus_bouquet().boundary_count(), 1);
        assert_eq!(theta("000").boundary_count(), 1);
    }

    #[test]
    fn theta_torus_trace_has_two_orbits_of_six() {
        let trace = theta("000").boundary_trace();
        assert_eq!(trace.boundary_count, 1);
        let mut lens: Vec<usize> = trace.orbits.iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, vec![6, 6]);
        assert!(trace.is_perfect_pairing());
    }

    #[test]
    fn strip_examples() {
        assert!(loop_scheme(true).is_strip().unwrap());
        assert!(!loop_scheme(false).is_strip().unwrap());
        assert!(dumbbell("101").is_strip().unwrap());
        assert!(!dumbbell("110").is_strip().unwrap());
        let path = Multigraph::new(2, &[(0, 1)]).unwrap();
        let s = Scheme::new(path.clone(), Rotation::by_dart_id(&path), signs("0")).unwrap();
        assert_eq!(s.is_strip(), Err(SchemeError::NotCyclicPart { vertex: 0 }));
    }

    #[test]
    fn switched_edges_examples() {
        assert!(theta("000").switched_edges().is_empty());
        assert_eq!(dumbbell("110").switched_edges().iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(dumbbell("101").switched_edges().iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(dumbbell("101").companion(), signs("101"));
    }

    #[test]
    fn vertex_flip_examples() {
        let f = theta("000").vertex_flip(0).unwrap();
        assert_eq!(f.signs(), &signs("111"));
        assert_eq!(f.rotation().at(0), &[d(0, 0), d(2, 0), d(1, 0)]);
        // loops keep their sign, the bridge toggles
        let f = dumbbell("101").vertex_flip(0).unwrap();
        assert_eq!(f.signs(), &signs("111"));
        assert!(theta("000").vertex_flip(2).is_err());
    }

    #[test]
    fn surface_type_examples() {
        let st = Scheme::point().surface_type();
        assert_eq!((st.euler_patch, st.boundary, st.orientable, st.euler_closed), (1, 1, true, 2));
        assert_eq!(st.name(), "sphere");

        let st = torus_bouquet().surface_type();
        assert_eq!((st.euler_patch, st.boundary, st.orientable), (-1, 1, true));
        assert_eq!((st.genus(), st.name().as_str()), (Some(1), "torus"));

        let st = dumbbell("101").surface_type();
        assert_eq!((st.euler_patch, st.boundary, st.orientable), (-1, 1, false));
        assert_eq!((st.crosscaps(), st.name().as_str()), (Some(2), "Klein bottle"));

        assert_eq!(loop_scheme(true).surface_type().name(), "projective plane");
    }

    #[test]
    fn component_subscheme_examples() {
        let s = dumbbell("101");
        let dec = s.graph().bridges_and_components();
        let parts: Vec<Scheme> = dec.components.iter().map(|c| s.component_subscheme(c)).collect();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.graph(), &graphs::bouquet(1));
            assert_eq!(p.signs(), &signs("1"));
            assert!(p.is_strip().unwrap());
        }
        let t = theta("010");
        let dec = t.graph().bridges_and_components();
        assert_eq!(t.component_subscheme(&dec.components[0]), t);
    }

    #[test]
    fn signs_text_roundtrip() {
        let s = signs("0110");
        assert_eq!(s.to_string(), "0110");
        assert_eq!(Signs::from_mask(4, s.to_mask()), s);
        assert!("012".parse::<Signs>().is_err());
    }
}
