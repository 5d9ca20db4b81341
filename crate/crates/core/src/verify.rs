//! Self-checks: the boundary tracer against the gluing oracle, and the
//! structural invariants of schemes, classes and reductions.
//!
//! Reports contain only counts and the first failure of each check, so a
//! fixed seed gives a byte-identical report.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    enumerate_schemes, equivalence_classes, generate_cubic_graphs, realizable_signs, realizable_signs_exhaustive,
    Equivalence, Realizability, SearchConfig,
};
use crate::error::ClassifyError;
use crate::multigraph::{Dart, EdgeSet, Multigraph, UnionFind};
use crate::reduce::{contract_unswitched, expand_vertex, reduce_to_cubic, undo_expansions, TreeShape};
use crate::scheme::{Rotation, Scheme, Signs};

/// How much to check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    /// Exhaustive up to cycle rank 2; small random samples.
    Quick,
    /// Exhaustive up to cycle rank 3; 10⁴ random schemes; a random sample at rank 4.
    #[default]
    Standard,
    /// Exhaustive up to cycle rank 4; 10⁵ random schemes.
    Full,
}

impl Level {
    fn exhaustive_q(self) -> usize {
        match self {
            Level::Quick => 2,
            Level::Standard => 3,
            Level::Full => 4,
        }
    }

    fn random_schemes(self) -> usize {
        match self {
            Level::Quick => 1_000,
            Level::Standard => 10_000,
            Level::Full => 100_000,
        }
    }

    fn rank4_samples(self) -> usize {
        match self {
            Level::Quick => 0,
            Level::Standard => 2_000,
            Level::Full => 0,
        }
    }

    fn round_trips(self) -> usize {
        match self {
            Level::Quick => 20,
            Level::Standard => 100,
            Level::Full => 1_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub level: Level,
    pub seed: u64,
    /// Largest vertex count of random schemes.
    pub max_random_vertices: usize,
    pub search: SearchConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            level: Level::Standard,
            seed: 0x5eed,
            max_random_vertices: 8,
            search: SearchConfig::default(),
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    /// Records one case; `detail` is only evaluated on failure.
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<52} {:>8} cases, {} failures", self.name, self.cases, self.failures)?;
        if let Some(first) = &self.first_failure {
            write!(f, "\n      first failure: {first}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(
            f,
            "{} of {} checks passed (level {:?}, seed {})",
            self.checks.len() - failed,
            self.checks.len(),
            self.level,
            self.seed
        )
    }
}

/// Runs every suite.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport, ClassifyError> {
    config.search.install(|| {
        let mut checks = vec![closed_forms(|s| s.boundary_count())];
        checks.extend(exhaustive_scheme_checks(config.level.exhaustive_q(), &config.search)?);
        checks.push(tracer_vs_oracle_random(config.level.random_schemes(), config.max_random_vertices, config.seed));
        if config.level.rank4_samples() > 0 {
            checks.push(rank4_sample(config.level.rank4_samples(), config.seed, &config.search)?);
        }
        checks.extend(class_checks(config.level.exhaustive_q(), &config.search)?);
        checks.push(expand_contract_round_trips(config.level.round_trips(), config.seed));
        checks.push(reduce_to_cubic_round_trips(config.level.round_trips(), config.seed));
        checks.push(wedge_surjectivity(&[2, 3], &config.search)?);
        Ok(VerifyReport {
            level: config.level,
            seed: config.seed,
            checks,
        })
    })
}

fn loop_scheme(twisted: bool) -> Scheme {
    Scheme::new(
        Multigraph::new(1, &[(0, 0)]).expect("valid"),
        Rotation::new(vec![vec![Dart::new(0, 0), Dart::new(0, 1)]]),
        Signs::new(vec![twisted]),
    )
    .expect("valid")
}

fn torus_bouquet() -> Scheme {
    Scheme::new(
        Multigraph::new(1, &[(0, 0), (0, 0)]).expect("valid"),
        Rotation::new(vec![vec![Dart::new(0, 0), Dart::new(1, 0), Dart::new(0, 1), Dart::new(1, 1)]]),
        Signs::zeros(2),
    )
    .expect("valid")
}

/// Analytically known boundary counts, checked with the given tracer.
pub fn closed_forms(tracer: impl Fn(&Scheme) -> usize) -> CheckReport {
    let mut report = CheckReport::new("closed forms (disk, annulus, Moebius, torus)");
    let cases = [
        ("point", Scheme::point(), 1),
        ("untwisted loop", loop_scheme(false), 2),
        ("twisted loop", loop_scheme(true), 1),
        ("interleaved two-loop bouquet", torus_bouquet(), 1),
    ];
    for (name, scheme, expected) in cases {
        let b = tracer(&scheme);
        report.record(b == expected, || format!("{name}: traced b={b}, expected {expected}"));
    }
    let torus = torus_bouquet().surface_type();
    report.record(torus.orientable && torus.genus() == Some(1) && torus.name() == "torus", || {
        format!("interleaved two-loop bouquet: capped surface {}", torus.name())
    });
    let mobius = loop_scheme(true).surface_type();
    report.record(!mobius.orientable && mobius.name() == "projective plane", || {
        format!("twisted loop: capped surface {}", mobius.name())
    });
    report
}

/// A tracer that ignores twists. Only useful for showing that
/// [`closed_forms`] catches a broken successor rule.
pub fn twist_blind_boundary_count(scheme: &Scheme) -> usize {
    let untwisted = scheme
        .with_signs(Signs::zeros(scheme.graph().edge_count()))
        .expect("same edge count");
    untwisted.boundary_count()
}

fn describe(scheme: &Scheme) -> String {
    let orders = scheme
        .rotation()
        .orders()
        .iter()
        .map(|o| o.iter().map(ToString::to_string).join(" "))
        .join(" | ");
    let edges = scheme.graph().edges().map(|(u, v)| format!("{u}-{v}")).join(" ");
    format!("edges [{edges}] rotation [{orders}] signs {}", scheme.signs())
}

/// A connected bridgeless component is a single simple cycle iff it has as
/// many edges as vertices.
fn is_simple_cycle(edges: &EdgeSet, vertices: usize) -> bool {
    edges.len() == vertices
}

/// Per-scheme checks over every scheme on every cubic graph with rank `2..=max_q`.
fn exhaustive_scheme_checks(max_q: usize, search: &SearchConfig) -> Result<Vec<CheckReport>, ClassifyError> {
    let mut oracle = CheckReport::new(format!("tracer = gluing oracle (exhaustive, q<={max_q})"));
    let mut pairing = CheckReport::new("orbit pairing and successor bijectivity");
    let mut flips = CheckReport::new("vertex-flip and mirror invariance");
    let mut decomposition = CheckReport::new("strip decomposition over components");
    let mut cycles = CheckReport::new("cycle components of strips are switched");
    let mut surfaces = CheckReport::new("surface constraints (odd q, parity, bounds)");

    for q in 2..=max_q {
        for graph in generate_cubic_graphs(q, search)? {
            let decomposition_of = graph.bridges_and_components();
            for scheme in enumerate_schemes(&graph, search.budget)? {
                let b = scheme.boundary_count();
                let ob = scheme.oracle_boundary_count();
                oracle.record(b == ob, || format!("{}: tracer {b}, oracle {ob}", describe(&scheme)));

                let trace = scheme.boundary_trace();
                let mut hit = BTreeSet::new();
                let bijective = trace.orbits.iter().flatten().all(|&x| hit.insert(scheme.successor(x)));
                pairing.record(
                    bijective
                        && trace.state_count() == 4 * graph.edge_count()
                        && trace.is_perfect_pairing()
                        && trace.boundary_count == b,
                    || describe(&scheme),
                );

                let orientable = scheme.is_orientable();
                for v in 0..graph.vertex_count() {
                    let flipped = scheme.vertex_flip(v).expect("vertex in range");
                    let toggled: Vec<usize> = (0..graph.edge_count())
                        .filter(|&e| flipped.companion().get(e) != scheme.companion().get(e))
                        .collect();
                    let expected: Vec<usize> = (0..graph.edge_count())
                        .filter(|&e| {
                            let (x, y) = graph.endpoints(e);
                            x != y && (x == v || y == v)
                        })
                        .collect();
                    flips.record(
                        flipped.boundary_count() == b && flipped.is_orientable() == orientable && toggled == expected,
                        || format!("{} flipped at {v}", describe(&scheme)),
                    );
                }
                flips.record(scheme.mirrored().boundary_count() == b, || format!("{} mirrored", describe(&scheme)));

                let strip = b == 1;
                let parts_strips = decomposition_of
                    .components
                    .iter()
                    .all(|c| scheme.component_subscheme(c).boundary_count() == 1);
                decomposition.record(strip == parts_strips, || describe(&scheme));

                if strip {
                    for c in &decomposition_of.components {
                        if is_simple_cycle(&c.edges, c.vertices.len()) {
                            cycles.record(scheme.signs().parity(&c.edges), || {
                                format!("{}: even cycle component {:?}", describe(&scheme), c.edges)
                            });
                        }
                    }
                }

                let surface = scheme.surface_type();
                let e = graph.edge_count();
                let mut ok = (1..=e + 1).contains(&b) && surface.euler_closed <= 2;
                if surface.orientable {
                    ok &= surface.euler_closed % 2 == 0;
                }
                if strip && q % 2 == 1 {
                    ok &= !surface.orientable;
                }
                surfaces.record(ok, || describe(&scheme));
            }
        }
    }
    Ok(vec![oracle, pairing, flips, decomposition, cycles, surfaces])
}

/// A random connected multigraph with a random rotation and random signs.
pub fn random_scheme(rng: &mut impl Rng, max_vertices: usize) -> Scheme {
    let n = rng.random_range(1..=max_vertices.max(1));
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let extra = rng.random_range(0..=n + 2);
    for _ in 0..extra {
        edges.push((rng.random_range(0..n), rng.random_range(0..n)));
    }
    let graph = Multigraph::new(n, &edges).expect("spanning tree keeps it connected");
    random_scheme_on(rng, &graph)
}

pub fn random_scheme_on(rng: &mut impl Rng, graph: &Multigraph) -> Scheme {
    let orders = (0..graph.vertex_count())
        .map(|v| {
            let mut darts = graph.darts_at(v).to_vec();
            darts.shuffle(rng);
            darts
        })
        .collect();
    let signs = Signs::new((0..graph.edge_count()).map(|_| rng.random_bool(0.5)).collect());
    Scheme::new(graph.clone(), Rotation::new(orders), signs).expect("all darts placed")
}

fn tracer_vs_oracle_random(count: usize, max_vertices: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("tracer = gluing oracle (random, V<={max_vertices})"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let s = random_scheme(&mut rng, max_vertices);
        let (b, ob) = (s.boundary_count(), s.oracle_boundary_count());
        report.record(b == ob, || format!("{}: tracer {b}, oracle {ob}", describe(&s)));
    }
    report
}

fn rank4_sample(count: usize, seed: u64, search: &SearchConfig) -> Result<CheckReport, ClassifyError> {
    let mut report = CheckReport::new("random q=4 spot check (oracle, flips, parity)");
    let graphs = generate_cubic_graphs(4, &SearchConfig { max_q: 4, ..*search })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
    for _ in 0..count {
        let graph = &graphs[rng.random_range(0..graphs.len())];
        let s = random_scheme_on(&mut rng, graph);
        let b = s.boundary_count();
        let v = rng.random_range(0..graph.vertex_count());
        let flipped = s.vertex_flip(v).expect("in range");
        let surface = s.surface_type();
        report.record(
            b == s.oracle_boundary_count()
                && flipped.boundary_count() == b
                && flipped.is_orientable() == s.is_orientable()
                && (!surface.orientable || surface.euler_closed % 2 == 0),
            || describe(&s),
        );
    }
    Ok(report)
}

/// Complementing a whole component can swap orientability once a component
/// has odd cycles and an even rank; the first such case is at rank 4, so the
/// shared-surface check stops at rank 3.
const SHARED_SURFACE_MAX_Q: usize = 3;

fn class_checks(max_q: usize, search: &SearchConfig) -> Result<Vec<CheckReport>, ClassifyError> {
    let mut surfaces = CheckReport::new(format!(
        "class members share the surface type (q<={})",
        max_q.min(SHARED_SURFACE_MAX_Q)
    ));
    let mut split = CheckReport::new("per-component realizability = whole-graph");
    for q in 2..=max_q {
        for graph in generate_cubic_graphs(q, search)? {
            for mode in [Realizability::AnyRotation, Realizability::Planar] {
                let config = SearchConfig { mode, ..*search };
                let by_parts = realizable_signs(&graph, &config)?.members();
                let whole: Vec<Signs> = realizable_signs_exhaustive(&graph, &config)?.into_keys().collect();
                split.record(by_parts == whole, || {
                    format!("{:?} on {:?}: {} vs {}", mode, graph.edges().collect_vec(), by_parts.len(), whole.len())
                });
                if q > SHARED_SURFACE_MAX_Q {
                    continue;
                }
                for class in equivalence_classes(&graph, &config)? {
                    for i in 0..class.members.len() {
                        let member = class.witness_scheme(&graph, i);
                        let surface = member.surface_type();
                        surfaces.record(member.boundary_count() == 1 && surface == class.surface, || {
                            format!(
                                "class {} member {}: {} vs {}",
                                class.representative,
                                member.signs(),
                                surface.name(),
                                class.surface.name()
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(vec![surfaces, split])
}

fn random_shape(rng: &mut impl Rng, leaves: usize) -> TreeShape {
    if leaves == 1 {
        return TreeShape::Leaf;
    }
    let left = rng.random_range(1..leaves);
    TreeShape::Join(
        Box::new(random_shape(rng, left)),
        Box::new(random_shape(rng, leaves - left)),
    )
}

/// A random scheme whose graph is its own cyclic part and has a vertex of degree > 3.
fn random_reducible(rng: &mut impl Rng) -> Scheme {
    loop {
        let s = random_scheme(rng, 5);
        let cyclic = s.graph().cyclic_part();
        if cyclic.graph.vertex_count() != s.graph().vertex_count() {
            continue;
        }
        if (0..s.graph().vertex_count()).any(|v| s.graph().degree(v) > 3) {
            return s;
        }
    }
}

fn expand_contract_round_trips(count: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("expand then contract is the identity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe4);
    for _ in 0..count {
        let s = random_reducible(&mut rng);
        let g = s.graph();
        let candidates: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 3).collect();
        let v = candidates[rng.random_range(0..candidates.len())];
        let shape = random_shape(&mut rng, g.degree(v) - 1);
        let result = expand_vertex(&s, v, Some(&shape)).and_then(|x| {
            let preserved = x.boundary_count() == s.boundary_count()
                && x.is_orientable() == s.is_orientable()
                && x.surface_type().euler_closed == s.surface_type().euler_closed
                && x.graph().cycle_rank() == g.cycle_rank();
            let mut back = x;
            for e in (g.edge_count()..back.graph().edge_count()).rev() {
                back = contract_unswitched(&back, e)?;
            }
            Ok(preserved && back.graph() == g && back.signs() == s.signs() && back.rotation().same_cyclic_orders(s.rotation()))
        });
        report.record(matches!(result, Ok(true)), || {
            format!("{} at vertex {v} with shape {shape}: {result:?}", describe(&s))
        });
    }
    report
}

fn reduce_to_cubic_round_trips(count: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("reduce_to_cubic adds sum(d-3) edges, undoes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3c);
    for _ in 0..count {
        let s = random_reducible(&mut rng);
        let g = s.graph();
        let excess: usize = (0..g.vertex_count()).map(|v| g.degree(v).saturating_sub(3)).sum();
        let high = (0..g.vertex_count()).filter(|&v| g.degree(v) > 3).count();
        let result = reduce_to_cubic(&s).and_then(|(cubic, steps)| {
            let shape_ok = cubic.graph().edge_count() == g.edge_count() + excess
                && steps.len() == high
                && (0..cubic.graph().vertex_count()).all(|v| cubic.graph().degree(v) <= 3)
                && cubic.graph().cycle_rank() == g.cycle_rank()
                && cubic.boundary_count() == s.boundary_count()
                && cubic.is_orientable() == s.is_orientable();
            let back = undo_expansions(&cubic, &steps)?;
            Ok(shape_ok && back.rotation().same_cyclic_orders(s.rotation()) && back.signs() == s.signs())
        });
        report.record(matches!(result, Ok(true)), || format!("{}: {result:?}", describe(&s)));
    }
    report
}

/// Spanning trees of `graph` as sorted edge lists.
fn spanning_trees(graph: &Multigraph) -> Vec<Vec<usize>> {
    let non_loops: Vec<usize> = (0..graph.edge_count()).filter(|&e| !graph.is_loop(e)).collect();
    non_loops
        .into_iter()
        .combinations(graph.vertex_count() - 1)
        .filter(|tree| {
            let mut uf = UnionFind::new(graph.vertex_count());
            tree.iter().all(|&e| {
                let (u, v) = graph.endpoints(e);
                uf.union(u, v)
            })
        })
        .collect()
}

/// Flips vertices so that every edge of `tree` is unswitched, then contracts
/// the tree (highest edge id first, so lower ids stay put).
pub fn contract_spanning_tree(scheme: &Scheme, tree: &[usize]) -> Scheme {
    let graph = scheme.graph();
    let mut current = scheme.clone();
    let mut reached = vec![false; graph.vertex_count()];
    reached[0] = true;
    let mut frontier = vec![0];
    while let Some(u) = frontier.pop() {
        for &e in tree {
            let (a, b) = graph.endpoints(e);
            let w = if a == u { b } else if b == u { a } else { continue };
            if reached[w] {
                continue;
            }
            reached[w] = true;
            if current.signs().get(e) {
                current = current.vertex_flip(w).expect("in range");
            }
            frontier.push(w);
        }
    }
    let mut sorted = tree.to_vec();
    sorted.sort_unstable();
    for &e in sorted.iter().rev() {
        current = contract_unswitched(&current, e).expect("tree edges are unswitched non-loops");
    }
    current
}

/// Every class on the `q`-loop wedge arises by contracting a spanning tree
/// of some strip on a cubic graph of rank `q`.
fn wedge_surjectivity(ranks: &[usize], search: &SearchConfig) -> Result<CheckReport, ClassifyError> {
    let mut report = CheckReport::new(format!("wedge classes reached from cubic strips (q in {ranks:?})"));
    let config = SearchConfig {
        mode: Realizability::AnyRotation,
        ..*search
    };
    for &q in ranks {
        let wedge = Multigraph::new(1, &vec![(0, 0); q])?;
        let relation = Equivalence::new(&wedge, config.max_vertices)?;
        let targets: BTreeSet<Signs> = equivalence_classes(&wedge, &config)?
            .into_iter()
            .map(|c| relation.key(&c.representative))
            .collect();
        let mut reached = BTreeSet::new();
        let mut contracted_are_strips = true;
        for graph in generate_cubic_graphs(q, &config)? {
            let trees = spanning_trees(&graph);
            for scheme in enumerate_schemes(&graph, config.budget)? {
                if scheme.boundary_count() != 1 {
                    continue;
                }
                for tree in &trees {
                    let w = contract_spanning_tree(&scheme, tree);
                    contracted_are_strips &= w.boundary_count() == 1;
                    reached.insert(relation.key(w.signs()));
                }
            }
        }
        report.record(contracted_are_strips, || format!("q={q}: a contraction lost the strip property"));
        for target in &targets {
            report.record(reached.contains(target), || format!("q={q}: class {target} never reached"));
        }
    }
    Ok(report)
}
