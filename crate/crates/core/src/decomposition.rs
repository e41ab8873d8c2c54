//! Codominated and shedding vertices, and codismantlability.

use std::collections::HashSet;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::limits::Limits;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRecord {
    pub vertex: String,
    pub shedding: bool,
    pub codominated: bool,
    pub codominated_witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MainHypotheses {
    pub c5_free: bool,
    pub three_cycle_condition: bool,
}

impl MainHypotheses {
    pub fn hold(&self) -> bool {
        self.c5_free && self.three_cycle_condition
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub vertices: Vec<VertexRecord>,
    pub hypotheses: MainHypotheses,
    pub equivalence_holds: bool,
}

impl VertexClassification {
    pub fn shedding_set(&self) -> VertexSet {
        VertexSet::from_ids(
            self.vertices
                .iter()
                .enumerate()
                .filter(|(_, r)| r.shedding)
                .map(|(i, _)| i),
        )
    }

    pub fn codominated_set(&self) -> VertexSet {
        VertexSet::from_ids(
            self.vertices
                .iter()
                .enumerate()
                .filter(|(_, r)| r.codominated)
                .map(|(i, _)| i),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationOrder {
    pub order: Vec<VertexId>,
    pub valid: bool,
    /// The search hit a dead end before finding the order.
    pub backtracked: bool,
}

impl EliminationOrder {
    /// Removes the listed vertices one at a time, checking each is
    /// codominated at its turn and that no edge survives.
    pub fn replay(&self, h: &Hypergraph) -> bool {
        if h.is_void() {
            return false;
        }
        let mut alive = h.vertex_set();
        for &x in &self.order {
            if x >= h.n() || !alive.contains(x) {
                return false;
            }
            let edges = edges_inside(h, alive);
            if codominated_witness(&edges, x).is_none() {
                return false;
            }
            alive = alive.without(x);
        }
        edges_inside(h, alive).is_empty()
    }
}

fn edges_inside(h: &Hypergraph, alive: VertexSet) -> Vec<VertexSet> {
    h.edges().iter().copied().filter(|e| e.is_subset(alive)).collect()
}

fn neighborhood_minus(edges: &[VertexSet], x: VertexId, y: VertexId) -> Vec<VertexSet> {
    edges
        .iter()
        .filter(|e| e.contains(x) && !e.contains(y))
        .map(|e| e.without(x))
        .collect()
}

/// The least edge `E ∋ x` with `N(y\x) ⊆ N(x\y)` for all `y ∈ E \ {x}`,
/// where `edges` is in canonical order.
fn codominated_witness(edges: &[VertexSet], x: VertexId) -> Option<VertexSet> {
    edges.iter().copied().filter(|e| e.contains(x)).find(|e| {
        e.without(x).iter().all(|y| {
            let big = neighborhood_minus(edges, x, y);
            neighborhood_minus(edges, y, x)
                .iter()
                .all(|s| big.contains(s))
        })
    })
}

impl Hypergraph {
    /// The least witness edge making `x` codominated, if any.
    pub fn is_codominated(&self, x: VertexId) -> Result<Option<VertexSet>> {
        if x >= self.n() {
            return Err(Error::UnknownVertex(format!("#{x}")));
        }
        if self.is_void() {
            return Ok(None);
        }
        Ok(codominated_witness(self.edges(), x))
    }

    pub fn is_shedding_vertex(&self, x: VertexId) -> Result<bool> {
        if x >= self.n() {
            return Err(Error::UnknownVertex(format!("#{x}")));
        }
        SimplicialComplex::independence_complex(self).is_shedding(x)
    }

    /// Depth-first search for a sequence of codominated deletions ending in
    /// an edgeless hypergraph. Dead states are memoized by vertex mask, since
    /// repeated deletion leaves the sub-hypergraph induced on what remains.
    pub fn is_codismantlable(&self) -> Option<EliminationOrder> {
        if self.is_void() {
            return None;
        }
        let mut dead = HashSet::new();
        let mut order = Vec::new();
        let mut backtracked = false;
        if codis_search(self, self.vertex_set(), &mut order, &mut dead, &mut backtracked) {
            Some(EliminationOrder {
                order,
                valid: true,
                backtracked,
            })
        } else {
            None
        }
    }

    pub fn theorem_main_report(&self, limits: &Limits) -> Result<VertexClassification> {
        let c5_free = self.find_cycle_checked(5, limits)?.is_none();
        let hypotheses = MainHypotheses {
            c5_free,
            three_cycle_condition: self.three_cycle_condition(),
        };
        Ok(self.classify_vertices(hypotheses))
    }

    pub(crate) fn classify_vertices(&self, hypotheses: MainHypotheses) -> VertexClassification {
        let delta = SimplicialComplex::independence_complex(self);
        let vertices: Vec<VertexRecord> = (0..self.n())
            .map(|x| {
                let witness = self.is_codominated(x).expect("vertex in range");
                VertexRecord {
                    vertex: self.label(x).to_owned(),
                    shedding: delta.is_shedding_unchecked(x),
                    codominated: witness.is_some(),
                    codominated_witness: witness.map(|e| self.edge_labels(e)),
                }
            })
            .collect();
        let equivalence_holds = vertices.iter().all(|r| r.shedding == r.codominated);
        VertexClassification {
            vertices,
            hypotheses,
            equivalence_holds,
        }
    }
}

fn codis_search(
    h: &Hypergraph,
    alive: VertexSet,
    order: &mut Vec<VertexId>,
    dead: &mut HashSet<u64>,
    backtracked: &mut bool,
) -> bool {
    let edges = edges_inside(h, alive);
    if edges.is_empty() {
        return true;
    }
    if dead.contains(&alive.bits()) {
        *backtracked = true;
        return false;
    }
    for x in alive {
        if codominated_witness(&edges, x).is_none() {
            continue;
        }
        order.push(x);
        if codis_search(h, alive.without(x), order, dead, backtracked) {
            return true;
        }
        order.pop();
    }
    *backtracked = true;
    dead.insert(alive.bits());
    false
}
