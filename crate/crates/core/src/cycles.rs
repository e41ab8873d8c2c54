//! Berge cycles.
//!
//! A cycle of length `n` is a sequence `x1 E1 x2 E2 .. xn En` of distinct
//! vertices and distinct edges with `xi, x(i+1) ∈ Ei` and `xn, x1 ∈ En`.
//! The search is a plain backtracking over such sequences; candidates are
//! tried in ascending order, so the first hit is the lexicographically least
//! interleaved sequence, which is also the least representative of its
//! rotation/reflection class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::limits::{self, Limits};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<VertexId>,
    /// Indices into the hypergraph's canonical edge list.
    pub edges: Vec<usize>,
}

impl CycleWitness {
    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    /// Checks the incidence pattern against `h`.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let n = self.vertices.len();
        if n < 2 || self.edges.len() != n {
            return false;
        }
        let distinct_v = VertexSet::from_ids(self.vertices.iter().copied()).len() == n;
        let mut seen = self.edges.clone();
        seen.sort_unstable();
        seen.dedup();
        if !distinct_v || seen.len() != n || self.edges.iter().any(|&e| e >= h.edge_count()) {
            return false;
        }
        (0..n).all(|i| {
            let e = h.edges()[self.edges[i]];
            e.contains(self.vertices[i]) && e.contains(self.vertices[(i + 1) % n])
        })
    }
}

struct Search<'a, F> {
    h: &'a Hypergraph,
    n: usize,
    vertices: Vec<VertexId>,
    edges: Vec<usize>,
    used_v: VertexSet,
    used_e: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[VertexId], &[usize]) -> bool> Search<'_, F> {
    /// Extends a partial sequence ending at vertex `vertices.last()`.
    fn extend(&mut self) -> bool {
        let step = self.vertices.len();
        let x = *self.vertices.last().expect("nonempty");
        let first = self.vertices[0];
        for (ei, &e) in self.h.edges().iter().enumerate() {
            if self.used_e[ei] || !e.contains(x) {
                continue;
            }
            if step == self.n {
                if e.contains(first) {
                    self.edges.push(ei);
                    let stop = (self.visit)(&self.vertices, &self.edges);
                    self.edges.pop();
                    if stop {
                        return true;
                    }
                }
                continue;
            }
            self.used_e[ei] = true;
            self.edges.push(ei);
            // later vertices exceed the first: every cycle has a rotation
            // starting at its least vertex
            let candidates = e.difference(self.used_v).difference(VertexSet::full(first + 1));
            for y in candidates {
                self.vertices.push(y);
                self.used_v = self.used_v.with(y);
                let stop = self.extend();
                self.used_v = self.used_v.without(y);
                self.vertices.pop();
                if stop {
                    return true;
                }
            }
            self.edges.pop();
            self.used_e[ei] = false;
        }
        false
    }
}

impl Hypergraph {
    /// Visits every cycle of length `n` (each rotation class once per
    /// direction) until `visit` returns `true`. Returns whether it stopped.
    pub fn visit_cycles<F>(&self, n: usize, visit: F) -> Result<bool>
    where
        F: FnMut(&[VertexId], &[usize]) -> bool,
    {
        if n < 2 {
            return Err(Error::InvalidCycleLength(n));
        }
        if self.is_void() || self.edge_count() < n {
            return Ok(false);
        }
        let mut s = Search {
            h: self,
            n,
            vertices: Vec::with_capacity(n),
            edges: Vec::with_capacity(n),
            used_v: VertexSet::EMPTY,
            used_e: vec![false; self.edge_count()],
            visit,
        };
        for x in 0..self.n() {
            s.vertices.push(x);
            s.used_v = VertexSet::singleton(x);
            if s.extend() {
                return Ok(true);
            }
            s.vertices.pop();
        }
        Ok(false)
    }

    /// The lexicographically least `n`-cycle, if any.
    pub fn find_cycle(&self, n: usize) -> Result<Option<CycleWitness>> {
        let mut found = None;
        self.visit_cycles(n, |v, e| {
            found = Some(CycleWitness {
                vertices: v.to_vec(),
                edges: e.to_vec(),
            });
            true
        })?;
        Ok(found)
    }

    /// [`Hypergraph::find_cycle`] with the configured search caps applied.
    pub fn find_cycle_checked(&self, n: usize, limits: &Limits) -> Result<Option<CycleWitness>> {
        limits::check("cycle length", n, limits.cycle_length)?;
        limits::check("edge count for cycle search", self.edge_count(), limits.cycle_edges)?;
        self.find_cycle(n)
    }

    pub fn is_cycle_free(&self, n: usize) -> bool {
        !self
            .visit_cycles(n, |_, _| true)
            .expect("cycle length at least 2")
    }

    pub fn is_c2_free(&self) -> bool {
        self.is_cycle_free(2)
    }

    pub fn is_c5_free(&self) -> bool {
        self.is_cycle_free(5)
    }

    /// Every 3-cycle uses only edges of cardinality two.
    pub fn three_cycle_condition(&self) -> bool {
        let edges = self.edges();
        !self
            .visit_cycles(3, |_, es| es.iter().any(|&e| edges[e].len() != 2))
            .expect("valid length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        let e = edges
            .iter()
            .map(|e| VertexSet::from_ids(e.iter().map(|v| v - 1)))
            .collect();
        Hypergraph::with_default_labels(n, e).unwrap()
    }

    fn c5() -> Hypergraph {
        h(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]])
    }

    #[test]
    fn c5_contains_itself() {
        let w = c5().find_cycle(5).unwrap().unwrap();
        assert!(w.verify(&c5()));
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        assert!(c5().find_cycle(4).unwrap().is_none());
        assert!(c5().find_cycle(3).unwrap().is_none());
    }

    #[test]
    fn h1_two_cycle_witness() {
        let h1 = h(6, &[&[1, 2, 3], &[2, 3, 4], &[4, 5, 6]]);
        let w = h1.find_cycle(2).unwrap().unwrap();
        // x2 - E1 - x3 - E2 - x2
        assert_eq!(w.vertices, vec![1, 2]);
        assert_eq!(w.edges, vec![0, 1]);
        assert!(w.verify(&h1));
    }

    #[test]
    fn star_has_no_five_cycle() {
        let s = h(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(s.find_cycle(5).unwrap().is_none());
        assert!(s.find_cycle(2).unwrap().is_none());
    }

    #[test]
    fn invalid_length() {
        assert_eq!(c5().find_cycle(1), Err(Error::InvalidCycleLength(1)));
    }

    #[test]
    fn three_cycle_condition_examples() {
        assert!(c5().three_cycle_condition());
        assert!(h(3, &[&[1, 2], &[2, 3], &[1, 3]]).three_cycle_condition());
        assert!(h(6, &[&[1, 2, 3], &[2, 3, 4], &[4, 5, 6]]).three_cycle_condition());
        assert!(!h(4, &[&[1, 2, 3], &[3, 4], &[1, 4]]).three_cycle_condition());
    }

    #[test]
    fn checked_search_respects_caps() {
        let limits = Limits {
            cycle_length: 4,
            ..Limits::default()
        };
        assert!(matches!(
            c5().find_cycle_checked(5, &limits),
            Err(Error::SearchLimitExceeded { .. })
        ));
        assert!(c5().find_cycle_checked(3, &limits).unwrap().is_none());
    }
}
