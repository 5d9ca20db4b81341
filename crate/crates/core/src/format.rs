//! Line-oriented text formats for graphs and schemes.
//!
//! ```text
//! # theta graph
//! graph theta
//! vertex 0
//! vertex 1
//! edge 0 0 1
//! edge 1 0 1
//! edge 2 0 1
//! rotation 0 0.0 1.0 2.0     # scheme files only
//! rotation 1 0.1 1.1 2.1
//! sign 0 0
//! sign 1 0
//! sign 2 0
//! ```
//!
//! Vertex and edge ids must be dense (`0..n`) but may appear in any order.
//! Every edge of a scheme needs a sign, and every vertex with darts needs a
//! rotation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{GraphError, ParseError, SchemeError};
use crate::multigraph::{Dart, Multigraph};
use crate::scheme::{Rotation, Scheme, Signs};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: Option<String>,
    pub graph: Multigraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedScheme {
    pub name: Option<String>,
    pub scheme: Scheme,
}

#[derive(Default)]
struct Document {
    name: Option<String>,
    vertices: BTreeMap<usize, usize>,
    edges: BTreeMap<usize, (usize, usize, usize)>,
    rotations: BTreeMap<usize, (usize, Vec<Dart>)>,
    signs: BTreeMap<usize, (usize, bool)>,
    last_line: usize,
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("{what} '{token}' is not a non-negative integer")))
}

fn no_more<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
    match tokens.next() {
        Some(extra) => Err(ParseError::new(line, format!("unexpected trailing token '{extra}'"))),
        None => Ok(()),
    }
}

fn insert_unique<T>(map: &mut BTreeMap<usize, T>, id: usize, value: T, line: usize, what: &str) -> Result<(), ParseError>
where
    T: HasLine,
{
    if let Some(previous) = map.get(&id) {
        return Err(ParseError::new(
            line,
            format!("duplicate {what} {id} (first given on line {})", previous.line()),
        ));
    }
    map.insert(id, value);
    Ok(())
}

trait HasLine {
    fn line(&self) -> usize;
}

impl HasLine for usize {
    fn line(&self) -> usize {
        *self
    }
}

impl<A, B> HasLine for (usize, A, B) {
    fn line(&self) -> usize {
        self.0
    }
}

impl<A> HasLine for (usize, A) {
    fn line(&self) -> usize {
        self.0
    }
}

fn read(text: &str, allow_scheme: bool) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    let mut name_line = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        doc.last_line = line;
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().expect("content is non-empty");
        match keyword {
            "graph" => {
                if let Some(first) = name_line {
                    return Err(ParseError::new(line, format!("second graph header (first on line {first})")));
                }
                let name: Vec<&str> = tokens.collect();
                if name.is_empty() {
                    return Err(ParseError::new(line, "missing graph name"));
                }
                name_line = Some(line);
                doc.name = Some(name.join(" "));
            }
            "vertex" => {
                let id = number(tokens.next(), line, "vertex id")?;
                no_more(tokens, line)?;
                insert_unique(&mut doc.vertices, id, line, line, "vertex")?;
            }
            "edge" => {
                let id = number(tokens.next(), line, "edge id")?;
                let u = number(tokens.next(), line, "endpoint")?;
                let v = number(tokens.next(), line, "endpoint")?;
                no_more(tokens, line)?;
                insert_unique(&mut doc.edges, id, (line, u, v), line, "edge")?;
            }
            "rotation" if allow_scheme => {
                let v = number(tokens.next(), line, "vertex id")?;
                let darts = tokens
                    .map(|t| {
                        t.parse::<Dart>()
                            .map_err(|_| ParseError::new(line, format!("bad dart '{t}', expected <edge>.0 or <edge>.1")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                insert_unique(&mut doc.rotations, v, (line, darts), line, "rotation for vertex")?;
            }
            "sign" if allow_scheme => {
                let e = number(tokens.next(), line, "edge id")?;
                let value = match tokens.next() {
                    Some("0") => false,
                    Some("1") => true,
                    Some(other) => return Err(ParseError::new(line, format!("sign must be 0 or 1, got '{other}'"))),
                    None => return Err(ParseError::new(line, "missing sign value")),
                };
                no_more(tokens, line)?;
                insert_unique(&mut doc.signs, e, (line, value), line, "sign for edge")?;
            }
            other => return Err(ParseError::new(line, format!("unknown keyword '{other}'"))),
        }
    }
    Ok(doc)
}

fn check_dense<T: HasLine>(map: &BTreeMap<usize, T>, what: &str) -> Result<(), ParseError> {
    for (expected, (&id, value)) in map.iter().enumerate() {
        if id != expected {
            return Err(ParseError::new(
                value.line(),
                format!("{what} ids must be dense: {what} {id} given but {what} {expected} is missing"),
            ));
        }
    }
    Ok(())
}

fn build_graph(doc: &Document) -> Result<Multigraph, ParseError> {
    if doc.vertices.is_empty() {
        return Err(ParseError::new(doc.last_line.max(1), GraphError::NoVertices.to_string()));
    }
    check_dense(&doc.vertices, "vertex")?;
    check_dense(&doc.edges, "edge")?;
    let n = doc.vertices.len();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (&id, &(line, u, v)) in &doc.edges {
        for x in [u, v] {
            if x >= n {
                return Err(ParseError::new(
                    line,
                    GraphError::EndpointOutOfRange {
                        edge: id,
                        vertex: x,
                        vertex_count: n,
                    }
                    .to_string(),
                ));
            }
        }
        edges.push((u, v));
    }
    Multigraph::new(n, &edges).map_err(|e| ParseError::new(doc.last_line, e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<NamedGraph, ParseError> {
    let doc = read(text, false)?;
    Ok(NamedGraph {
        graph: build_graph(&doc)?,
        name: doc.name,
    })
}

pub fn parse_scheme(text: &str) -> Result<NamedScheme, ParseError> {
    let doc = read(text, true)?;
    let graph = build_graph(&doc)?;
    let n = graph.vertex_count();
    let m = graph.edge_count();

    let mut orders = vec![Vec::new(); n];
    for (&v, (line, darts)) in &doc.rotations {
        if v >= n {
            return Err(ParseError::new(*line, SchemeError::VertexOutOfRange { vertex: v }.to_string()));
        }
        if let Some(d) = darts.iter().find(|d| d.edge() >= m) {
            return Err(ParseError::new(*line, format!("dart {d} names edge {} which does not exist", d.edge())));
        }
        orders[v] = darts.clone();
    }
    if let Some(v) = (0..n).find(|&v| graph.degree(v) > 0 && !doc.rotations.contains_key(&v)) {
        return Err(ParseError::new(doc.last_line, format!("no rotation given for vertex {v}")));
    }

    let mut signs = Signs::zeros(m);
    for (&e, &(line, value)) in &doc.signs {
        if e >= m {
            return Err(ParseError::new(line, format!("sign given for edge {e} but the graph has {m} edges")));
        }
        signs.set(e, value);
    }
    if let Some(e) = (0..m).find(|e| !doc.signs.contains_key(e)) {
        return Err(ParseError::new(doc.last_line, SchemeError::MissingSign { edge: e }.to_string()));
    }

    let scheme = Scheme::new(graph, Rotation::new(orders), signs).map_err(|err| {
        let line = match &err {
            SchemeError::BadRotation { vertex, .. } => doc.rotations.get(vertex).map_or(doc.last_line, |r| r.0),
            _ => doc.last_line,
        };
        ParseError::new(line, err.to_string())
    })?;
    Ok(NamedScheme { name: doc.name, scheme })
}

pub fn write_graph(name: Option<&str>, graph: &Multigraph) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        let _ = writeln!(out, "graph {name}");
    }
    for v in 0..graph.vertex_count() {
        let _ = writeln!(out, "vertex {v}");
    }
    for (e, (u, v)) in graph.edges().enumerate() {
        let _ = writeln!(out, "edge {e} {u} {v}");
    }
    out
}

pub fn write_scheme(name: Option<&str>, scheme: &Scheme) -> String {
    let mut out = write_graph(name, scheme.graph());
    for (v, order) in scheme.rotation().orders().iter().enumerate() {
        if order.is_empty() {
            continue;
        }
        let darts: Vec<String> = order.iter().map(Dart::to_string).collect();
        let _ = writeln!(out, "rotation {v} {}", darts.join(" "));
    }
    for e in 0..scheme.graph().edge_count() {
        let _ = writeln!(out, "sign {e} {}", u8::from(scheme.signs().get(e)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::fixtures::*;

    const THETA: &str = "# the theta graph\ngraph theta\nvertex 0\nvertex 1\nedge 0 0 1\nedge 1 0 1\nedge 2 0 1 # third\n";

    fn err_line(r: Result<impl std::fmt::Debug, ParseError>) -> (usize, String) {
        let e = r.unwrap_err();
        (e.line, e.message)
    }

    #[test]
    fn graph_round_trip() {
        let g = parse_graph(THETA).unwrap();
        assert_eq!(g.name.as_deref(), Some("theta"));
        assert_eq!(g.graph, crate::multigraph::fixtures::theta());
        let text = write_graph(g.name.as_deref(), &g.graph);
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn ids_may_come_in_any_order() {
        let g = parse_graph("edge 1 1 1\nedge 0 0 1\nvertex 1\nvertex 0\nedge 2 0 0").unwrap();
        assert_eq!(g.graph.endpoints(0), (0, 1));
        assert_eq!(g.graph.edge_count(), 3);
    }

    #[test]
    fn graph_errors_carry_lines() {
        assert_eq!(err_line(parse_graph("vertex 0\nvertex 0")).0, 2);
        assert_eq!(err_line(parse_graph("vertex 0\nedge 0 0 0\nedge 0 0 0")).0, 3);
        let (line, msg) = err_line(parse_graph("vertex 0\nedge 0 0 3\n"));
        assert_eq!(line, 2);
        assert!(msg.contains("endpoint 3"), "{msg}");
        assert_eq!(err_line(parse_graph("vertex 0\nvertex 2")).0, 2);
        assert_eq!(err_line(parse_graph("vertex 0\nedge 0 0 x")).0, 2);
        assert_eq!(err_line(parse_graph("vertex 0\n\nfrob 1")).0, 3);
        assert_eq!(err_line(parse_graph("vertex 0 1")).0, 1);
        assert!(err_line(parse_graph("vertex 0\nvertex 1\n")).1.contains("disconnected"));
        assert!(err_line(parse_graph("# nothing\n")).1.contains("at least one vertex"));
        assert_eq!(err_line(parse_graph("vertex 0\nrotation 0")).0, 2);
    }

    #[test]
    fn scheme_round_trip() {
        for s in [theta("010"), dumbbell("101"), torus_bouquet(), Scheme::point()] {
            let text = write_scheme(Some("s"), &s);
            let parsed = parse_scheme(&text).unwrap();
            assert_eq!(parsed.scheme, s);
        }
    }

    #[test]
    fn scheme_errors_carry_lines() {
        let base = "vertex 0\nedge 0 0 0\n";
        assert!(parse_scheme(&format!("{base}rotation 0 0.0 0.1\n")).unwrap_err().message.contains("no sign"));
        assert_eq!(err_line(parse_scheme(&format!("{base}rotation 0 0.0 0.1\nsign 0 2"))).0, 4);
        assert_eq!(err_line(parse_scheme(&format!("{base}rotation 0 0.0 0.1\nsign 0 1\nsign 0 1"))).0, 5);
        assert_eq!(err_line(parse_scheme(&format!("{base}rotation 0 0.0 0.0\nsign 0 1"))).0, 3);
        assert_eq!(err_line(parse_scheme(&format!("{base}rotation 0 0.0 1.1\nsign 0 1"))).0, 3);
        assert_eq!(err_line(parse_scheme(&format!("{base}rotation 0 0.0 0.2\nsign 0 1"))).0, 3);
        assert_eq!(err_line(parse_scheme(&format!("{base}rotation 1 0.0 0.1\nsign 0 1"))).0, 3);
        assert!(parse_scheme(&format!("{base}sign 0 1")).unwrap_err().message.contains("no rotation"));
        let ok = parse_scheme(&format!("{base}rotation 0 0.0 0.1\nsign 0 1")).unwrap();
        assert_eq!(ok.scheme.boundary_count(), 1);
    }
}
