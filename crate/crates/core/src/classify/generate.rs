use std::collections::BTreeMap;

use super::SearchConfig;
use crate::error::{ClassifyError, GraphError};
use crate::multigraph::{CanonicalForm, Multigraph};

/// Connected cubic multigraphs (loops and parallel edges allowed) of cycle
/// rank `q`, one per isomorphism class, each in canonical labeling and
/// sorted by canonical form. Such a graph has `2(q-1)` vertices, so ranks
/// below 2 give nothing.
pub fn generate_cubic_graphs(q: usize, config: &SearchConfig) -> Result<Vec<Multigraph>, ClassifyError> {
    if q > config.max_q {
        return Err(ClassifyError::RankTooLarge { q, cap: config.max_q });
    }
    if q < 2 {
        return Ok(Vec::new());
    }
    let n = 2 * (q - 1);
    if n > config.max_vertices {
        return Err(GraphError::TooLarge {
            what: "vertex count",
            size: n,
            cap: config.max_vertices,
        }
        .into());
    }
    let mut search = Search {
        n,
        degree: vec![0; n],
        edges: Vec::with_capacity(3 * n / 2),
        found: BTreeMap::new(),
        max_vertices: config.max_vertices,
    };
    search.extend()?;
    Ok(search.found.into_values().collect())
}

struct Search {
    n: usize,
    degree: Vec<usize>,
    edges: Vec<(usize, usize)>,
    found: BTreeMap<CanonicalForm, Multigraph>,
    max_vertices: usize,
}

impl Search {
    /// Saturates the lowest vertex of degree below 3. Edges leaving one vertex
    /// are added with non-decreasing far ends, and an untouched vertex is only
    /// ever joined if it is the lowest untouched one, so touched vertices
    /// always form a prefix.
    fn extend(&mut self) -> Result<(), GraphError> {
        let Some(v) = (0..self.n).find(|&v| self.degree[v] < 3) else {
            if let Ok(g) = Multigraph::new(self.n, &self.edges) {
                let form = g.canonical_form(self.max_vertices)?;
                if !self.found.contains_key(&form) {
                    let canonical = g.canonical_graph(self.max_vertices)?;
                    self.found.insert(form, canonical);
                }
            }
            return Ok(());
        };
        let floor = match self.edges.last() {
            Some(&(u, w)) if u == v => w,
            _ => v,
        };
        let first_untouched = (v + 1..self.n).find(|&w| self.degree[w] == 0);
        for w in floor..self.n {
            if w > v && self.degree[w] == 0 && Some(w) != first_untouched {
                continue;
            }
            let room = if w == v { self.degree[v] + 2 <= 3 } else { self.degree[w] < 3 };
            if !room {
                continue;
            }
            self.degree[v] += 1;
            self.degree[w] += 1;
            self.edges.push((v, w));
            self.extend()?;
            self.edges.pop();
            self.degree[v] -= 1;
            self.degree[w] -= 1;
        }
        Ok(())
    }
}
