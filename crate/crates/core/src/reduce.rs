//! Contraction of unswitched edge-strips and expansion of high-degree
//! vertices into cubic trees.
//!
//! Contracting an untwisted band merges its two disks into one; expanding a
//! vertex of degree `d > 3` is the inverse, splitting its disk into a tree of
//! `d - 2` disks joined by `d - 3` untwisted bands. Both leave the patch
//! unchanged up to homeomorphism.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ReduceError, SchemeError};
use crate::multigraph::{Dart, Multigraph};
use crate::scheme::{Rotation, Scheme, Signs};

/// Number of vertices of degree greater than 3.
pub fn high_degree_count(graph: &Multigraph) -> usize {
    (0..graph.vertex_count()).filter(|&v| graph.degree(v) > 3).count()
}

/// Shape of the cubic tree replacing a vertex of degree `d`, as a full binary
/// tree over the last `d - 1` darts of its rotation. The root is the vertex
/// itself and carries the first dart; every `Join` is a tree vertex and every
/// `Leaf` is one of the original darts, taken in rotation order.
///
/// Text form: `.` for a leaf, `(ab)` for a join, e.g. `(.(..))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreeShape {
    Leaf,
    Join(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    /// `(h2 (h3 (... (h_{d-1} h_d))))`, with `leaves = d - 1`.
    pub fn caterpillar(leaves: usize) -> TreeShape {
        assert!(leaves >= 2, "a join needs two leaves");
        let mut shape = TreeShape::Join(Box::new(TreeShape::Leaf), Box::new(TreeShape::Leaf));
        for _ in 2..leaves {
            shape = TreeShape::Join(Box::new(TreeShape::Leaf), Box::new(shape));
        }
        shape
    }

    pub fn leaves(&self) -> usize {
        match self {
            TreeShape::Leaf => 1,
            TreeShape::Join(a, b) => a.leaves() + b.leaves(),
        }
    }

    /// The cubic tree's vertex count, `leaves - 1`.
    pub fn joins(&self) -> usize {
        match self {
            TreeShape::Leaf => 0,
            TreeShape::Join(a, b) => 1 + a.joins() + b.joins(),
        }
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeShape::Leaf => f.write_str("."),
            TreeShape::Join(a, b) => write!(f, "({a}{b})"),
        }
    }
}

impl FromStr for TreeShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn parse(bytes: &[u8], pos: &mut usize) -> Result<TreeShape, String> {
            match bytes.get(*pos) {
                Some(b'.') => {
                    *pos += 1;
                    Ok(TreeShape::Leaf)
                }
                Some(b'(') => {
                    *pos += 1;
                    let a = parse(bytes, pos)?;
                    let b = parse(bytes, pos)?;
                    if bytes.get(*pos) != Some(&b')') {
                        return Err(format!("expected ')' at offset {pos}"));
                    }
                    *pos += 1;
                    Ok(TreeShape::Join(Box::new(a), Box::new(b)))
                }
                Some(&c) => Err(format!("unexpected '{}' at offset {pos}", c as char)),
                None => Err("unexpected end of tree shape".to_string()),
            }
        }
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let shape = parse(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(format!("trailing input at offset {pos}"));
        }
        if shape == TreeShape::Leaf {
            return Err("a tree shape needs at least one join".to_string());
        }
        Ok(shape)
    }
}

impl Serialize for TreeShape {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TreeShape {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One replayable reduction move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionStep {
    /// Edge `edge` contracted; `removed_vertex` merged into `kept_vertex`.
    /// Edge ids above `edge` and vertex ids above `removed_vertex` shift down by one.
    Contract {
        edge: usize,
        kept_vertex: usize,
        removed_vertex: usize,
    },
    /// `vertex` replaced by a cubic tree. `leaves` is the vertex's rotation
    /// (the tree's leaves in order); all dart ids are kept, the tree's other
    /// vertices and its internal edges are appended, in preorder.
    Expand {
        vertex: usize,
        leaves: Vec<Dart>,
        shape: TreeShape,
        internal_edges: Vec<TreeEdge>,
    },
}

/// An internal edge of an expansion tree; dart `edge.0` sits at `parent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub edge: usize,
    pub parent: usize,
    pub child: usize,
}

impl ReductionStep {
    /// Where a dart of the input scheme ends up; `None` for a contracted dart.
    pub fn map_dart(&self, dart: Dart) -> Option<Dart> {
        match *self {
            ReductionStep::Contract { edge, .. } => match dart.edge() {
                e if e == edge => None,
                e if e > edge => Some(Dart::new(e - 1, dart.end())),
                _ => Some(dart),
            },
            ReductionStep::Expand { .. } => Some(dart),
        }
    }

    pub fn apply(&self, scheme: &Scheme) -> Result<Scheme, ReduceError> {
        match self {
            ReductionStep::Contract { edge, .. } => contract_unswitched(scheme, *edge),
            ReductionStep::Expand { vertex, shape, .. } => expand_vertex(scheme, *vertex, Some(shape)),
        }
    }

    /// Contractions undoing this step, in order. Contractions are not inverted.
    pub fn undo(&self) -> Vec<ReductionStep> {
        match self {
            ReductionStep::Contract { .. } => Vec::new(),
            ReductionStep::Expand { internal_edges, .. } => internal_edges
                .iter()
                .rev()
                .map(|t| ReductionStep::Contract {
                    edge: t.edge,
                    kept_vertex: t.parent,
                    removed_vertex: t.child,
                })
                .collect(),
        }
    }
}

/// Contract a non-loop edge with `λ(e) = 0`.
pub fn contract_unswitched(scheme: &Scheme, edge: usize) -> Result<Scheme, ReduceError> {
    let graph = scheme.graph();
    if edge >= graph.edge_count() {
        return Err(ReduceError::EdgeOutOfRange { edge });
    }
    if graph.is_loop(edge) {
        return Err(ReduceError::LoopContraction { edge });
    }
    if scheme.signs().get(edge) {
        return Err(ReduceError::SwitchedContraction { edge });
    }
    let (u, w) = graph.endpoints(edge);
    let (keep, remove) = (u.min(w), u.max(w));
    let near = Dart::new(edge, 0);
    let far = Dart::new(edge, 1);

    let rename_dart = |d: Dart| {
        if d.edge() > edge {
            Dart::new(d.edge() - 1, d.end())
        } else {
            d
        }
    };
    let rename_vertex = |x: usize| {
        let x = if x == remove { keep } else { x };
        if x > remove {
            x - 1
        } else {
            x
        }
    };

    let at_u = scheme.rotation().at(u);
    let at_w = scheme.rotation().at(w);
    let pos_far = at_w.iter().position(|&d| d == far).expect("dart sits at its vertex");
    let mut merged = Vec::with_capacity(at_u.len() + at_w.len() - 2);
    for &d in at_u {
        if d == near {
            let k = at_w.len();
            merged.extend((1..k).map(|i| at_w[(pos_far + i) % k]));
        } else {
            merged.push(d);
        }
    }

    let mut orders = Vec::with_capacity(graph.vertex_count() - 1);
    for v in 0..graph.vertex_count() {
        if v == remove {
            continue;
        }
        let order: &[Dart] = if v == keep { &merged } else { scheme.rotation().at(v) };
        orders.push(order.iter().map(|&d| rename_dart(d)).collect());
    }
    let edges = graph
        .edges()
        .enumerate()
        .filter(|&(f, _)| f != edge)
        .map(|(_, (a, b))| [rename_vertex(a), rename_vertex(b)]);
    let contracted = Multigraph::from_parts(graph.vertex_count() - 1, edges);
    let signs = Signs::new(
        (0..graph.edge_count())
            .filter(|&f| f != edge)
            .map(|f| scheme.signs().get(f))
            .collect(),
    );
    Ok(Scheme::new(contracted, Rotation::new(orders), signs)?)
}

/// Replace a vertex of degree `d > 3` by a cubic tree (default: the caterpillar).
pub fn expand_vertex(scheme: &Scheme, vertex: usize, shape: Option<&TreeShape>) -> Result<Scheme, ReduceError> {
    expand_with_step(scheme, vertex, shape).map(|(s, _)| s)
}

fn expand_with_step(
    scheme: &Scheme,
    vertex: usize,
    shape: Option<&TreeShape>,
) -> Result<(Scheme, ReductionStep), ReduceError> {
    let graph = scheme.graph();
    if vertex >= graph.vertex_count() {
        return Err(SchemeError::VertexOutOfRange { vertex }.into());
    }
    let degree = graph.degree(vertex);
    if degree <= 3 {
        return Err(ReduceError::DegreeTooSmall { vertex, degree });
    }
    let default_shape;
    let shape = match shape {
        Some(s) => s,
        None => {
            default_shape = TreeShape::caterpillar(degree - 1);
            &default_shape
        }
    };
    if shape.leaves() != degree - 1 {
        return Err(ReduceError::ShapeMismatch {
            expected: degree - 1,
            found: shape.leaves(),
        });
    }

    let leaves = scheme.rotation().at(vertex).to_vec();
    let mut builder = TreeBuilder {
        leaves: leaves[1..].iter().copied(),
        next_vertex: graph.vertex_count(),
        next_edge: graph.edge_count(),
        orders: Vec::new(),
        new_edges: Vec::new(),
        home: Vec::new(),
    };
    let TreeShape::Join(left, right) = shape else {
        unreachable!("leaf count checked above")
    };
    let mut root = vec![leaves[0]];
    root.push(builder.child(left, vertex));
    root.push(builder.child(right, vertex));

    let mut endpoints: Vec<[usize; 2]> = graph.edges().map(|(a, b)| [a, b]).collect();
    for &(dart, v) in &builder.home {
        endpoints[dart.edge()][dart.end()] = v;
    }
    endpoints.extend(builder.new_edges.iter().copied());
    let vertex_count = builder.next_vertex;
    let internal_edges: Vec<TreeEdge> = builder
        .new_edges
        .iter()
        .enumerate()
        .map(|(i, &[parent, child])| TreeEdge {
            edge: graph.edge_count() + i,
            parent,
            child,
        })
        .collect();

    let mut orders = scheme.rotation().orders().to_vec();
    orders[vertex] = root;
    let mut tree_orders = builder.orders;
    tree_orders.sort_by_key(|(v, _)| *v);
    orders.extend(tree_orders.into_iter().map(|(_, o)| o));

    let mut signs = scheme.signs().as_slice().to_vec();
    signs.resize(builder.next_edge, false);
    let expanded = Scheme::new(
        Multigraph::from_parts(vertex_count, endpoints),
        Rotation::new(orders),
        Signs::new(signs),
    )?;
    let step = ReductionStep::Expand {
        vertex,
        leaves,
        shape: shape.clone(),
        internal_edges,
    };
    Ok((expanded, step))
}

struct TreeBuilder<I> {
    leaves: I,
    next_vertex: usize,
    next_edge: usize,
    /// rotation of each new tree vertex
    orders: Vec<(usize, Vec<Dart>)>,
    new_edges: Vec<[usize; 2]>,
    /// original darts moved onto tree vertices
    home: Vec<(Dart, usize)>,
}

impl<I: Iterator<Item = Dart>> TreeBuilder<I> {
    /// Attaches `shape` below `parent`, returning the dart at `parent` that leads into it.
    fn child(&mut self, shape: &TreeShape, parent: usize) -> Dart {
        match shape {
            TreeShape::Leaf => {
                let dart = self.leaves.next().expect("leaf count checked");
                self.home.push((dart, parent));
                dart
            }
            TreeShape::Join(left, right) => {
                let v = self.next_vertex;
                let e = self.next_edge;
                self.next_vertex += 1;
                self.next_edge += 1;
                self.new_edges.push([parent, v]);
                let slot = self.orders.len();
                self.orders.push((v, Vec::new()));
                let a = self.child(left, v);
                let b = self.child(right, v);
                self.orders[slot].1 = vec![Dart::new(e, 1), a, b];
                Dart::new(e, 0)
            }
        }
    }
}

/// Expand every vertex of degree greater than 3, lowest id first. Each step
/// adds `d - 3` internal edges, so the result has `Σ (d - 3)` more edges.
pub fn reduce_to_cubic(scheme: &Scheme) -> Result<(Scheme, Vec<ReductionStep>), ReduceError> {
    let graph = scheme.graph();
    if let Some(vertex) = (0..graph.vertex_count()).find(|&v| graph.degree(v) == 1) {
        return Err(SchemeError::NotCyclicPart { vertex }.into());
    }
    let mut current = scheme.clone();
    let mut steps = Vec::new();
    while let Some(v) = (0..current.graph().vertex_count()).find(|&v| current.graph().degree(v) > 3) {
        let (next, step) = expand_with_step(&current, v, None)?;
        current = next;
        steps.push(step);
    }
    Ok((current, steps))
}

/// Re-applies recorded steps.
pub fn replay(scheme: &Scheme, steps: &[ReductionStep]) -> Result<Scheme, ReduceError> {
    steps.iter().try_fold(scheme.clone(), |s, step| step.apply(&s))
}

/// Contracts the internal edges of every expansion, newest first.
pub fn undo_expansions(scheme: &Scheme, steps: &[ReductionStep]) -> Result<Scheme, ReduceError> {
    let mut current = scheme.clone();
    for step in steps.iter().rev() {
        for undo in step.undo() {
            current = undo.apply(&current)?;
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::fixtures::bouquet;
    use crate::scheme::fixtures::*;

    fn preserved(a: &Scheme, b: &Scheme) {
        assert_eq!(a.boundary_count(), b.boundary_count());
        assert_eq!(a.is_orientable(), b.is_orientable());
        assert_eq!(a.surface_type().euler_closed, b.surface_type().euler_closed);
        assert_eq!(a.graph().cycle_rank(), b.graph().cycle_rank());
        assert_eq!(b.boundary_count(), b.oracle_boundary_count());
    }

    #[test]
    fn contract_examples() {
        let torus = theta("000");
        for e in 0..3 {
            let c = contract_unswitched(&torus, e).unwrap();
            assert_eq!(c.graph().vertex_count(), 1);
            assert_eq!(c.graph().edge_count(), 2);
            assert_eq!(c.signs().to_string(), "00");
            assert_eq!(c.boundary_count(), 1);
            preserved(&torus, &c);
        }
        let db = dumbbell("101");
        let c = contract_unswitched(&db, 1).unwrap();
        assert_eq!(c.signs().to_string(), "11");
        assert_eq!(c.boundary_count(), 1);
        preserved(&db, &c);

        assert_eq!(
            contract_unswitched(&theta("010"), 1),
            Err(ReduceError::SwitchedContraction { edge: 1 })
        );
        assert_eq!(contract_unswitched(&db, 0), Err(ReduceError::LoopContraction { edge: 0 }));
        assert_eq!(contract_unswitched(&db, 3), Err(ReduceError::EdgeOutOfRange { edge: 3 }));
    }

    #[test]
    fn contraction_preserves_invariants_exhaustively_on_theta() {
        for scheme in crate::classify::enumerate_schemes(&crate::multigraph::fixtures::theta(), 1 << 10).unwrap() {
            for e in 0..3 {
                if let Ok(c) = contract_unswitched(&scheme, e) {
                    preserved(&scheme, &c);
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        let wedge = Scheme::new(
            bouquet(2),
            Rotation::new(vec![vec![d(0, 0), d(1, 0), d(0, 1), d(1, 1)]]),
            signs("11"),
        )
        .unwrap();
        let x = expand_vertex(&wedge, 0, None).unwrap();
        assert!(x.graph().is_regular(3));
        assert_eq!(x.graph().edge_count(), 3);
        assert!(!x.signs().get(2));
        assert_eq!(high_degree_count(x.graph()), 0);
        preserved(&wedge, &x);
        let back = contract_unswitched(&x, 2).unwrap();
        assert!(back.rotation().same_cyclic_orders(wedge.rotation()));
        assert_eq!(back.signs(), wedge.signs());

        assert_eq!(
            expand_vertex(&theta("000"), 0, None),
            Err(ReduceError::DegreeTooSmall { vertex: 0, degree: 3 })
        );
        let bad: TreeShape = "(..)".parse().unwrap();
        assert_eq!(
            expand_vertex(&wedge, 0, Some(&bad)),
            Err(ReduceError::ShapeMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn shapes_round_trip_through_text() {
        for text in ["(..)", "(.(..))", "((..)(..))", "(((..).).)"] {
            let shape: TreeShape = text.parse().unwrap();
            assert_eq!(shape.to_string(), text);
        }
        assert_eq!(TreeShape::caterpillar(4).to_string(), "(.(.(..)))");
        assert!("(.".parse::<TreeShape>().is_err());
        assert!(".".parse::<TreeShape>().is_err());
        assert!("(..).".parse::<TreeShape>().is_err());
    }

    #[test]
    fn every_shape_round_trips_on_a_degree_six_wedge() {
        let wedge = Scheme::new(
            bouquet(3),
            Rotation::new(vec![vec![d(0, 0), d(1, 0), d(0, 1), d(2, 0), d(1, 1), d(2, 1)]]),
            signs("100"),
        )
        .unwrap();
        for text in ["(.(.(.(..))))", "((..)(.(..)))", "((((..).).).)", "((.(..))(..))"] {
            let shape: TreeShape = text.parse().unwrap();
            let x = expand_vertex(&wedge, 0, Some(&shape)).unwrap();
            assert!(x.graph().is_regular(3));
            assert_eq!(x.graph().edge_count(), 6);
            preserved(&wedge, &x);
            let mut back = x;
            for e in (3..6).rev() {
                back = contract_unswitched(&back, e).unwrap();
            }
            assert!(back.rotation().same_cyclic_orders(wedge.rotation()), "{text}");
            assert_eq!(back.signs(), wedge.signs());
        }
    }

    #[test]
    fn reduce_and_replay() {
        let torus = theta("000");
        let (same, steps) = reduce_to_cubic(&torus).unwrap();
        assert_eq!(same, torus);
        assert!(steps.is_empty());

        let wedge = Scheme::new(
            bouquet(3),
            Rotation::new(vec![vec![d(0, 0), d(1, 0), d(0, 1), d(2, 0), d(1, 1), d(2, 1)]]),
            signs("111"),
        )
        .unwrap();
        let (cubic, steps) = reduce_to_cubic(&wedge).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(cubic.graph().edge_count(), 3 + 3);
        assert_eq!(cubic.graph().cycle_rank(), 3);
        preserved(&wedge, &cubic);
        assert_eq!(replay(&wedge, &steps).unwrap(), cubic);
        let back = undo_expansions(&cubic, &steps).unwrap();
        assert!(back.rotation().same_cyclic_orders(wedge.rotation()));

        let json = serde_json::to_string(&steps).unwrap();
        let parsed: Vec<ReductionStep> = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, steps);
        assert_eq!(parsed[0].undo().len(), 3);
    }
}
