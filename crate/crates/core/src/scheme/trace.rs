//! Boundary walks on dart sides.
//!
//! A state `(h, s)` is a dart `h` together with one of its two sides. The walk
//! crosses the band of `h` to its partner `k`, picking up the band's twist
//! (`s' = s ⊕ λ(e)`), then moves around the disk at `k` to the rotation
//! successor of `k` when `s' = 0` and to its predecessor when `s' = 1`.
//! Every boundary circle is walked twice, once in each direction, so the
//! circle count is half the number of orbits.

use super::Scheme;
use crate::multigraph::Dart;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DartSide {
    pub dart: Dart,
    pub side: u8,
}

impl DartSide {
    fn index(self) -> usize {
        2 * self.dart.index() + self.side as usize
    }

    fn from_index(i: usize) -> DartSide {
        DartSide {
            dart: Dart::from_index(i >> 1),
            side: (i & 1) as u8,
        }
    }
}

#[inline]
fn step(next: &[usize], prev: &[usize], twisted: impl Fn(usize) -> bool, state: usize) -> usize {
    let k = (state >> 1) ^ 1;
    let side = (state & 1) ^ usize::from(twisted(k >> 1));
    let h = if side == 0 { next[k] } else { prev[k] };
    2 * h + side
}

/// Boundary circle count from raw successor tables. `seen` must hold at least
/// `4E` entries; it is overwritten.
pub(crate) fn count_boundary(
    next: &[usize],
    prev: &[usize],
    twisted: impl Fn(usize) -> bool + Copy,
    isolated_vertices: usize,
    seen: &mut [bool],
) -> usize {
    let states = 2 * next.len();
    seen[..states].fill(false);
    let mut orbits = 0;
    for start in 0..states {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = step(next, prev, twisted, x);
        }
    }
    orbits / 2 + isolated_vertices
}

/// All boundary orbits of a scheme and their pairing under walk reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTrace {
    pub orbits: Vec<Vec<DartSide>>,
    /// `partner[i]` is the orbit traversing orbit `i`'s circle backwards.
    pub partner: Vec<usize>,
    pub boundary_count: usize,
}

impl BoundaryTrace {
    /// Every orbit is paired with a different orbit, symmetrically.
    pub fn is_perfect_pairing(&self) -> bool {
        self.partner
            .iter()
            .enumerate()
            .all(|(i, &j)| j != i && self.partner[j] == i)
    }

    pub fn state_count(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }
}

impl Scheme {
    /// One step of the boundary walk.
    pub fn successor(&self, state: DartSide) -> DartSide {
        let signs = self.signs();
        DartSide::from_index(step(
            self.next_table(),
            self.prev_table(),
            |e| signs.get(e),
            state.index(),
        ))
    }

    /// Walk reversal `(h, s) ↦ (partner(h), s ⊕ λ(e) ⊕ 1)`.
    pub fn reverse_state(&self, state: DartSide) -> DartSide {
        let twist = u8::from(self.signs().get(state.dart.edge()));
        DartSide {
            dart: state.dart.partner(),
            side: state.side ^ twist ^ 1,
        }
    }

    pub fn boundary_trace(&self) -> BoundaryTrace {
        let states = 2 * self.graph().dart_count();
        let mut orbit_of = vec![usize::MAX; states];
        let mut orbits = Vec::new();
        for start in 0..states {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut x = DartSide::from_index(start);
            while orbit_of[x.index()] == usize::MAX {
                orbit_of[x.index()] = id;
                orbit.push(x);
                x = self.successor(x);
            }
            orbits.push(orbit);
        }
        let partner = orbits
            .iter()
            .map(|orbit| orbit_of[self.reverse_state(orbit[0]).index()])
            .collect();
        let isolated = (0..self.graph().vertex_count())
            .filter(|&v| self.graph().degree(v) == 0)
            .count();
        BoundaryTrace {
            boundary_count: orbits.len() / 2 + isolated,
            orbits,
            partner,
        }
    }
}
