//! Exhaustive search for CL-structures and their equivalence classes.
//!
//! Realizability is decided per 2-connected component: a sign vector is
//! realizable on the whole graph iff its restriction to every component is
//! realizable there, with bridge signs free. The search over a component
//! walks every rotation (cyclic orders up to re-anchoring, reflections kept)
//! against every sign vector, in parallel over rotation ranges; the first
//! witness found in index order is kept, so results do not depend on the
//! thread count.

mod catalog;
mod generate;

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ClassifyError, SchemeError};
use crate::multigraph::{Automorphism, Dart, Decomposition, EdgeSet, Multigraph, Subgraph, DEFAULT_ISO_VERTEX_CAP};
use crate::scheme::{count_boundary, successor_tables, Rotation, Scheme, Signs, SurfaceType};

pub use catalog::{
    catalog, catalog_for_graph, Catalog, CatalogDocument, ClassDocument, GraphDocument, GraphEntry, SurfaceDocument, Totals,
};
pub use generate::generate_cubic_graphs;

/// Which rotations may witness a sign vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realizability {
    /// Any rotation system.
    #[default]
    AnyRotation,
    /// Only rotations of plane drawings (genus-0 embeddings of each component),
    /// i.e. the structures readable off a fixed planar picture with all vertex
    /// disks facing up.
    Planar,
}

impl Realizability {
    pub fn as_str(self) -> &'static str {
        match self {
            Realizability::AnyRotation => "any-rotation",
            Realizability::Planar => "planar",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: Realizability,
    /// Cap on the number of (rotation, signs) pairs examined per search.
    pub budget: u64,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Largest cycle rank accepted by cubic graph generation.
    pub max_q: usize,
    pub max_vertices: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: Realizability::AnyRotation,
            budget: 1 << 30,
            threads: 0,
            max_q: 5,
            max_vertices: DEFAULT_ISO_VERTEX_CAP,
        }
    }
}

impl SearchConfig {
    /// Runs `f` on a pool with the configured number of threads.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All cyclic orders of `darts`, anchored at the first dart.
fn cyclic_orders(darts: &[Dart]) -> Vec<Vec<Dart>> {
    match darts.split_first() {
        None => vec![Vec::new()],
        Some((&first, rest)) => rest
            .iter()
            .copied()
            .permutations(rest.len())
            .map(|tail| std::iter::once(first).chain(tail).collect())
            .collect(),
    }
}

/// Every rotation system of a graph, indexed in mixed radix with the last
/// vertex varying fastest.
#[derive(Clone, Debug)]
pub struct RotationSpace {
    choices: Vec<Vec<Vec<Dart>>>,
    len: u64,
}

impl RotationSpace {
    pub fn new(graph: &Multigraph, budget: u64) -> Result<RotationSpace, ClassifyError> {
        let needed = scheme_count(graph);
        if needed > u128::from(budget) {
            return Err(ClassifyError::BudgetExceeded { needed, budget });
        }
        let choices: Vec<Vec<Vec<Dart>>> = (0..graph.vertex_count())
            .map(|v| cyclic_orders(graph.darts_at(v)))
            .collect();
        let len = choices.iter().map(|c| c.len() as u64).product();
        Ok(RotationSpace { choices, len })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, mut index: u64) -> Rotation {
        let mut orders = vec![Vec::new(); self.choices.len()];
        for (v, options) in self.choices.iter().enumerate().rev() {
            let k = options.len() as u64;
            orders[v] = options[(index % k) as usize].clone();
            index /= k;
        }
        Rotation::new(orders)
    }
}

/// `Π_v (deg(v) - 1)! · 2^E`
pub fn scheme_count(graph: &Multigraph) -> u128 {
    let rotations: u128 = (0..graph.vertex_count())
        .map(|v| factorial(graph.degree(v).saturating_sub(1)))
        .fold(1u128, |acc, x| acc.saturating_mul(x));
    let signs = if graph.edge_count() >= 127 {
        u128::MAX
    } else {
        1u128 << graph.edge_count()
    };
    rotations.saturating_mul(signs)
}

/// Every (rotation, signs) pair on `graph`, rotations outermost.
pub fn enumerate_schemes(graph: &Multigraph, budget: u64) -> Result<SchemeIter, ClassifyError> {
    Ok(SchemeIter {
        graph: graph.clone(),
        space: RotationSpace::new(graph, budget)?,
        rotation_index: 0,
        mask: 0,
        current: None,
    })
}

pub struct SchemeIter {
    graph: Multigraph,
    space: RotationSpace,
    rotation_index: u64,
    mask: u64,
    current: Option<Scheme>,
}

impl Iterator for SchemeIter {
    type Item = Scheme;

    fn next(&mut self) -> Option<Scheme> {
        let m = self.graph.edge_count();
        if self.rotation_index >= self.space.len() {
            return None;
        }
        if self.current.is_none() {
            let rotation = self.space.get(self.rotation_index);
            self.current = Some(Scheme::assemble(self.graph.clone(), rotation, Signs::zeros(m)));
        }
        let base = self.current.as_ref().expect("set above");
        let scheme = base
            .with_signs(Signs::from_mask(m, self.mask))
            .expect("sign count matches");
        self.mask += 1;
        if self.mask == 1 << m {
            self.mask = 0;
            self.rotation_index += 1;
            self.current = None;
        }
        Some(scheme)
    }
}

/// For every sign vector realizable on `graph` (as a whole), the witness
/// rotation with the smallest index in its [`RotationSpace`].
pub fn search_realizable(graph: &Multigraph, config: &SearchConfig) -> Result<BTreeMap<Signs, Rotation>, ClassifyError> {
    let space = RotationSpace::new(graph, config.budget)?;
    let m = graph.edge_count();
    let isolated = (0..graph.vertex_count()).filter(|&v| graph.degree(v) == 0).count();
    let planar_faces = (m + 2) as i64 - graph.vertex_count() as i64;
    let total = space.len();
    let chunk = (total / 64).max(1);
    let chunks = total.div_ceil(chunk);

    let found: Vec<Vec<(u64, u64)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local: BTreeMap<u64, u64> = BTreeMap::new();
            let mut seen = vec![false; 4 * m];
            for r in c * chunk..((c + 1) * chunk).min(total) {
                let rotation = space.get(r);
                let (next, prev) = successor_tables(2 * m, &rotation);
                if config.mode == Realizability::Planar {
                    let faces = count_boundary(&next, &prev, |_| false, isolated, &mut seen);
                    if faces as i64 != planar_faces {
                        continue;
                    }
                }
                for mask in 0..(1u64 << m) {
                    if local.contains_key(&mask) {
                        continue;
                    }
                    if count_boundary(&next, &prev, |e| mask >> e & 1 == 1, isolated, &mut seen) == 1 {
                        local.insert(mask, r);
                    }
                }
            }
            local.into_iter().collect()
        })
        .collect();

    let mut first: BTreeMap<u64, u64> = BTreeMap::new();
    for part in found {
        for (mask, r) in part {
            first.entry(mask).or_insert(r);
        }
    }
    Ok(first
        .into_iter()
        .map(|(mask, r)| (Signs::from_mask(m, mask), space.get(r)))
        .collect())
}

#[derive(Clone, Debug)]
struct ComponentPart {
    sub: Subgraph,
    witnesses: BTreeMap<Signs, Rotation>,
}

/// The realizable sign vectors of a graph, stored per component.
#[derive(Clone, Debug)]
pub struct RealizableSet {
    graph: Multigraph,
    decomposition: Decomposition,
    parts: Vec<ComponentPart>,
}

impl RealizableSet {
    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    /// Number of realizable sign vectors.
    pub fn len(&self) -> u128 {
        let bridges = self.decomposition.bridges.len() as u32;
        self.parts
            .iter()
            .map(|p| p.witnesses.len() as u128)
            .product::<u128>()
            << bridges
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn restrict(&self, signs: &Signs, part: &ComponentPart) -> Signs {
        Signs::new(part.sub.edge_map.iter().map(|&e| signs.get(e)).collect())
    }

    pub fn contains(&self, signs: &Signs) -> bool {
        signs.len() == self.graph.edge_count()
            && self
                .parts
                .iter()
                .all(|p| p.witnesses.contains_key(&self.restrict(signs, p)))
    }

    /// A rotation realizing `signs`: each component's witness, with bridge
    /// darts appended at their vertices in id order.
    pub fn witness(&self, signs: &Signs) -> Option<Rotation> {
        let mut orders: Vec<Vec<Dart>> = vec![Vec::new(); self.graph.vertex_count()];
        for part in &self.parts {
            let rotation = part.witnesses.get(&self.restrict(signs, part))?;
            for (i, &v) in part.sub.vertex_map.iter().enumerate() {
                orders[v] = rotation
                    .at(i)
                    .iter()
                    .map(|d| Dart::new(part.sub.edge_map[d.edge()], d.end()))
                    .collect();
            }
        }
        for (v, order) in orders.iter_mut().enumerate() {
            order.extend(
                self.graph
                    .darts_at(v)
                    .iter()
                    .filter(|d| self.decomposition.bridges.contains(d.edge())),
            );
        }
        Some(Rotation::new(orders))
    }

    pub fn witness_scheme(&self, signs: &Signs) -> Option<Scheme> {
        let rotation = self.witness(signs)?;
        Some(Scheme::assemble(self.graph.clone(), rotation, signs.clone()))
    }

    /// All members in increasing order.
    pub fn members(&self) -> Vec<Signs> {
        let m = self.graph.edge_count();
        let mut out = vec![Signs::zeros(m)];
        for part in &self.parts {
            out = out
                .iter()
                .flat_map(|base| {
                    part.witnesses.keys().map(move |local| {
                        let mut s = base.clone();
                        for (i, &e) in part.sub.edge_map.iter().enumerate() {
                            s.set(e, local.get(i));
                        }
                        s
                    })
                })
                .collect();
        }
        for b in self.decomposition.bridges.iter() {
            out = out
                .into_iter()
                .flat_map(|s| {
                    let mut t = s.clone();
                    t.set(b, true);
                    [s, t]
                })
                .collect();
        }
        out.sort();
        out
    }
}

fn require_cyclic(graph: &Multigraph) -> Result<(), ClassifyError> {
    match (0..graph.vertex_count()).find(|&v| graph.degree(v) == 1) {
        Some(vertex) => Err(SchemeError::NotCyclicPart { vertex }.into()),
        None => Ok(()),
    }
}

/// Realizable sign vectors computed component by component.
pub fn realizable_signs(graph: &Multigraph, config: &SearchConfig) -> Result<RealizableSet, ClassifyError> {
    require_cyclic(graph)?;
    let decomposition = graph.bridges_and_components();
    let parts = decomposition
        .components
        .iter()
        .map(|c| {
            let sub = graph.edge_subgraph(&c.edges);
            let witnesses = search_realizable(&sub.graph, config)?;
            Ok(ComponentPart { sub, witnesses })
        })
        .collect::<Result<Vec<_>, ClassifyError>>()?;
    Ok(RealizableSet {
        graph: graph.clone(),
        decomposition,
        parts,
    })
}

/// Realizable sign vectors by enumerating whole-graph schemes; the
/// cross-check for [`realizable_signs`].
pub fn realizable_signs_exhaustive(graph: &Multigraph, config: &SearchConfig) -> Result<BTreeMap<Signs, Rotation>, ClassifyError> {
    require_cyclic(graph)?;
    search_realizable(graph, config)
}

/// The equivalence of sign vectors: same up to a graph automorphism and an
/// independent complement on each 2-connected component; bridge signs are ignored.
#[derive(Clone, Debug)]
pub struct Equivalence {
    automorphisms: Vec<Automorphism>,
    bridges: EdgeSet,
    components: Vec<EdgeSet>,
}

impl Equivalence {
    pub fn new(graph: &Multigraph, max_vertices: usize) -> Result<Equivalence, ClassifyError> {
        let decomposition = graph.bridges_and_components();
        Ok(Equivalence {
            automorphisms: graph.automorphisms(max_vertices)?,
            bridges: decomposition.bridges,
            components: decomposition.components.into_iter().map(|c| c.edges).collect(),
        })
    }

    /// Bridges zeroed; each component complemented so its lowest edge is 0.
    fn normalize(&self, mut signs: Signs) -> Signs {
        for b in self.bridges.iter() {
            signs.set(b, false);
        }
        for comp in &self.components {
            if let Some(first) = comp.iter().next() {
                if signs.get(first) {
                    for e in comp.iter() {
                        signs.toggle(e);
                    }
                }
            }
        }
        signs
    }

    /// A complete class invariant: the least normalized image over all automorphisms.
    pub fn key(&self, signs: &Signs) -> Signs {
        self.automorphisms
            .iter()
            .map(|a| {
                let mut image = Signs::zeros(signs.len());
                for (e, &f) in a.edges.iter().enumerate() {
                    image.set(f, signs.get(e));
                }
                self.normalize(image)
            })
            .min()
            .expect("the identity is always present")
    }

    pub fn equivalent(&self, a: &Signs, b: &Signs) -> bool {
        self.key(a) == self.key(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub signs: Signs,
    pub witness: Rotation,
}

/// One equivalence class of CL-structures on a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureClass {
    /// Least member.
    pub representative: Signs,
    /// All realizable members, increasing; the first is the representative.
    pub members: Vec<ClassMember>,
    /// Surface of the representative's witness.
    pub surface: SurfaceType,
}

impl StructureClass {
    pub fn witness_scheme(&self, graph: &Multigraph, member: usize) -> Scheme {
        let m = &self.members[member];
        Scheme::assemble(graph.clone(), m.witness.clone(), m.signs.clone())
    }
}

/// Realizable sign vectors modulo [`Equivalence`], ordered by representative.
pub fn equivalence_classes(graph: &Multigraph, config: &SearchConfig) -> Result<Vec<StructureClass>, ClassifyError> {
    let realizable = realizable_signs(graph, config)?;
    classes_of(&realizable, config)
}

pub(crate) fn classes_of(realizable: &RealizableSet, config: &SearchConfig) -> Result<Vec<StructureClass>, ClassifyError> {
    let graph = realizable.graph();
    let relation = Equivalence::new(graph, config.max_vertices)?;
    let mut groups: BTreeMap<Signs, Vec<Signs>> = BTreeMap::new();
    for signs in realizable.members() {
        groups.entry(relation.key(&signs)).or_default().push(signs);
    }
    let mut classes: Vec<StructureClass> = groups
        .into_values()
        .map(|members| {
            let members: Vec<ClassMember> = members
                .into_iter()
                .map(|signs| {
                    let witness = realizable.witness(&signs).expect("member is realizable");
                    ClassMember { signs, witness }
                })
                .collect();
            let rep = &members[0];
            let surface = Scheme::assemble(graph.clone(), rep.witness.clone(), rep.signs.clone()).surface_type();
            StructureClass {
                representative: rep.signs.clone(),
                members,
                surface,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::fixtures::*;

    fn config() -> SearchConfig {
        SearchConfig::default()
    }

    fn set(strs: &[&str]) -> Vec<Signs> {
        strs.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_schemes(&theta(), 1 << 20).unwrap().count(), 32);
        assert_eq!(enumerate_schemes(&dumbbell(), 1 << 20).unwrap().count(), 32);
        assert_eq!(enumerate_schemes(&bouquet(1), 1 << 20).unwrap().count(), 2);
        assert_eq!(scheme_count(&k4()), 16 * 64);
    }

    #[test]
    fn enumerate_is_exhaustive_and_distinct() {
        let all: Vec<Scheme> = enumerate_schemes(&theta(), 1 << 20).unwrap().collect();
        let keys: std::collections::BTreeSet<(Vec<Vec<Dart>>, Signs)> = all
            .iter()
            .map(|s| (s.rotation().normalized().orders().to_vec(), s.signs().clone()))
            .collect();
        assert_eq!(keys.len(), 32);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_schemes(&k4(), 100),
            Err(ClassifyError::BudgetExceeded { needed: 1024, budget: 100 })
        ));
    }

    #[test]
    fn realizable_examples() {
        let r = realizable_signs(&bouquet(1), &config()).unwrap();
        assert_eq!(r.members(), set(&["1"]));

        // dumbbell edges are (loop, bridge, loop): loops forced switched
        let r = realizable_signs(&dumbbell(), &config()).unwrap();
        assert_eq!(r.members(), set(&["101", "111"]));

        let r = realizable_signs(&theta(), &config()).unwrap();
        assert_eq!(r.len(), 8);
        let weights: std::collections::BTreeSet<usize> = r.members().iter().map(Signs::weight).collect();
        assert_eq!(weights, [0, 1, 2, 3].into());
    }

    #[test]
    fn witnesses_realize() {
        for g in [theta(), dumbbell(), k4(), bouquet(2)] {
            let r = realizable_signs(&g, &config()).unwrap();
            for s in r.members() {
                let scheme = r.witness_scheme(&s).unwrap();
                assert_eq!(scheme.boundary_count(), 1);
                assert_eq!(scheme.oracle_boundary_count(), 1);
            }
        }
    }

    #[test]
    fn non_cyclic_graph_is_rejected() {
        let g = Multigraph::new(2, &[(0, 0), (0, 1)]).unwrap();
        assert!(matches!(
            realizable_signs(&g, &config()),
            Err(ClassifyError::Scheme(SchemeError::NotCyclicPart { vertex: 1 }))
        ));
    }

    #[test]
    fn class_examples() {
        let classes = equivalence_classes(&dumbbell(), &config()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].representative.to_string(), "101");
        assert_eq!(classes[0].surface.name(), "Klein bottle");

        let classes = equivalence_classes(&theta(), &config()).unwrap();
        assert_eq!(classes.len(), 2);
        let weights: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| c.members.iter().map(|m| m.signs.weight()).sorted().dedup().collect())
            .collect();
        assert_eq!(weights, vec![vec![0, 3], vec![1, 2]]);
        assert!(classes[0].surface.orientable);
        assert_eq!(classes[0].surface.name(), "torus");
        assert!(!classes[1].surface.orientable);
        assert_eq!(classes[1].surface.name(), "Klein bottle");
    }

    #[test]
    fn planar_mode_pins_the_drawing() {
        let planar = SearchConfig {
            mode: Realizability::Planar,
            ..config()
        };
        // the planar theta has three faces untwisted; no torus structure survives
        let r = realizable_signs(&theta(), &planar).unwrap();
        assert_eq!(r.len(), 4);
        assert!(!r.contains(&Signs::zeros(3)));
        assert_eq!(equivalence_classes(&theta(), &planar).unwrap().len(), 2);
        assert_eq!(equivalence_classes(&dumbbell(), &planar).unwrap().len(), 1);
    }

    #[test]
    fn equivalence_ignores_bridges_and_complements_components() {
        let s = |x: &str| x.parse::<Signs>().unwrap();
        // each dumbbell loop is a component of its own, so everything collapses
        let rel = Equivalence::new(&dumbbell(), 10).unwrap();
        for x in ["000", "001", "010", "100", "111"] {
            assert!(rel.equivalent(&s("101"), &s(x)));
        }
        let rel = Equivalence::new(&theta(), 10).unwrap();
        assert!(rel.equivalent(&s("000"), &s("111")));
        assert!(rel.equivalent(&s("100"), &s("011")));
        assert!(!rel.equivalent(&s("000"), &s("100")));
        assert_eq!(rel.key(&s("110")), s("001"));
    }
}
