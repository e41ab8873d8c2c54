//! Matchings, semi-induced and induced matchings, and their weights.
//!
//! A family `F` is semi-induced exactly when `F = E[∪F]`, the set of edges
//! lying inside its union. So the semi-induced families are the sets `E[U]`
//! for vertex sets `U`, and `c'` is a maximum over vertex subsets rather
//! than edge subsets. `c` restricts the same maximum to disjoint families.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits::{self, Limits};
use crate::vertex_set::{subsets, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeFamily {
    /// Indices into the canonical edge list, ascending.
    pub edges: Vec<usize>,
    /// `|∪F| - |F|`.
    pub weight: i64,
    pub matching: bool,
    pub semi_induced: bool,
    pub induced: bool,
}

impl EdgeFamily {
    pub fn union(&self, h: &Hypergraph) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::EMPTY, |u, &i| u.union(h.edges()[i]))
    }

    pub fn edge_sets(&self, h: &Hypergraph) -> Vec<VertexSet> {
        self.edges.iter().map(|&i| h.edges()[i]).collect()
    }

    pub fn labels(&self, h: &Hypergraph) -> Vec<Vec<String>> {
        self.edges
            .iter()
            .map(|&i| h.edge_labels(h.edges()[i]))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingInvariants {
    pub c: i64,
    pub c_prime: i64,
    pub m: i64,
    pub c_witness: EdgeFamily,
    pub c_prime_witness: EdgeFamily,
    pub m_witness: EdgeFamily,
    /// An optimal semi-induced family of least cardinality.
    pub c_prime_min_witness: EdgeFamily,
}

fn pairwise_disjoint(sets: impl IntoIterator<Item = VertexSet>) -> bool {
    let mut seen = VertexSet::EMPTY;
    for e in sets {
        if e.intersects(seen) {
            return false;
        }
        seen = seen.union(e);
    }
    true
}

fn classify_indices(h: &Hypergraph, mut idx: Vec<usize>) -> EdgeFamily {
    idx.sort_unstable();
    let edges = h.edges();
    let union = idx.iter().fold(VertexSet::EMPTY, |u, &i| u.union(edges[i]));
    let matching = pairwise_disjoint(idx.iter().map(|&i| edges[i]));
    let semi_induced = edges
        .iter()
        .enumerate()
        .all(|(i, e)| !e.is_subset(union) || idx.binary_search(&i).is_ok());
    EdgeFamily {
        weight: union.len() as i64 - idx.len() as i64,
        edges: idx,
        matching,
        semi_induced,
        induced: matching && semi_induced,
    }
}

/// Replaces `best` when `cand` has larger weight, or equal weight and a
/// lexicographically smaller index list.
fn offer(best: &mut Option<(i64, Vec<usize>)>, weight: i64, cand: &[usize]) {
    let better = match best {
        None => true,
        Some((w, idx)) => weight > *w || (weight == *w && cand < idx.as_slice()),
    };
    if better {
        *best = Some((weight, cand.to_vec()));
    }
}

impl Hypergraph {
    pub fn classify_family(&self, family: &[VertexSet]) -> Result<EdgeFamily> {
        let mut idx = Vec::with_capacity(family.len());
        for &e in family {
            let i = self
                .edge_index(e)
                .filter(|_| !self.is_void())
                .ok_or_else(|| Error::UnknownEdge(self.edge_labels(e)))?;
            idx.push(i);
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != idx.len() {
            return Err(Error::RepeatedFamilyEdge);
        }
        Ok(classify_indices(self, idx))
    }

    /// Exact `c`, `c'` and `m` with lexicographically least optimal witnesses.
    pub fn matching_invariants(&self, limits: &Limits) -> Result<MatchingInvariants> {
        limits::check("edge count for matching search", self.edge_count(), limits.matching_edges)?;
        limits::check("vertex count for matching search", self.n(), limits.subset_vertices)?;
        let edges: &[VertexSet] = if self.is_void() { &[] } else { self.edges() };

        let mut best_c: Option<(i64, Vec<usize>)> = None;
        let mut best_cp: Option<(i64, Vec<usize>)> = None;
        let mut best_cp_min: Option<(i64, usize, Vec<usize>)> = None;
        let mut inside = Vec::with_capacity(edges.len());
        for u in subsets(self.vertex_set()) {
            inside.clear();
            let mut union = VertexSet::EMPTY;
            for (i, e) in edges.iter().enumerate() {
                if e.is_subset(u) {
                    inside.push(i);
                    union = union.union(*e);
                }
            }
            // every semi-induced family is E[U] for U its own union
            if union != u {
                continue;
            }
            let w = union.len() as i64 - inside.len() as i64;
            offer(&mut best_cp, w, &inside);
            let min_better = match &best_cp_min {
                None => true,
                Some((bw, bk, bidx)) => {
                    w > *bw
                        || (w == *bw
                            && (inside.len() < *bk || (inside.len() == *bk && inside < *bidx)))
                }
            };
            if min_better {
                best_cp_min = Some((w, inside.len(), inside.clone()));
            }
            if pairwise_disjoint(inside.iter().map(|&i| edges[i])) {
                offer(&mut best_c, w, &inside);
            }
        }

        let mut best_m: Option<(i64, Vec<usize>)> = None;
        let mut stack = Vec::new();
        matching_search(edges, 0, VertexSet::EMPTY, 0, &mut stack, &mut best_m);

        let (c, c_idx) = best_c.expect("empty family is induced");
        let (c_prime, cp_idx) = best_cp.expect("empty family is semi-induced");
        let (_, _, cp_min_idx) = best_cp_min.expect("empty family is semi-induced");
        let (m, m_idx) = best_m.expect("empty matching");
        Ok(MatchingInvariants {
            c,
            c_prime,
            m,
            c_witness: classify_indices(self, c_idx),
            c_prime_witness: classify_indices(self, cp_idx),
            m_witness: classify_indices(self, m_idx),
            c_prime_min_witness: classify_indices(self, cp_min_idx),
        })
    }

    /// Every edge loses one vertex and then fits inside a member of `collage`.
    pub fn is_two_collage(&self, collage: &[VertexSet]) -> Result<bool> {
        for &c in collage {
            if self.edge_index(c).is_none() || self.is_void() {
                return Err(Error::UnknownEdge(self.edge_labels(c)));
            }
        }
        Ok(self.edges().iter().all(|e| {
            e.iter()
                .any(|v| collage.iter().any(|c| e.without(v).is_subset(*c)))
        }))
    }

    /// All inclusion-maximal matchings, as ascending index lists in
    /// lexicographic order.
    pub fn maximal_matchings(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.is_void() {
            return out;
        }
        let mut stack = Vec::new();
        maximal_walk(self.edges(), 0, VertexSet::EMPTY, &mut stack, &mut out);
        out
    }

    /// Replays the greedy choice from the proof that `c' ≤ dim + 1`: walk
    /// the family in canonical order, pick the least vertex of each edge not
    /// yet hit, and return the union minus the picked vertices.
    pub fn independent_set_from_semi_induced(&self, family: &EdgeFamily) -> Result<VertexSet> {
        let check = classify_indices(self, family.edges.clone());
        if !check.semi_induced {
            return Err(Error::NotSemiInduced);
        }
        let mut picked = VertexSet::EMPTY;
        for e in family.edge_sets(self) {
            if !e.intersects(picked) {
                if let Some(v) = e.min() {
                    picked = picked.with(v);
                }
            }
        }
        Ok(family.union(self).difference(picked))
    }
}

fn matching_search(
    edges: &[VertexSet],
    from: usize,
    used: VertexSet,
    weight: i64,
    stack: &mut Vec<usize>,
    best: &mut Option<(i64, Vec<usize>)>,
) {
    offer(best, weight, stack);
    let bound: i64 = edges[from..]
        .iter()
        .filter(|e| !e.intersects(used))
        .map(|e| e.len() as i64 - 1)
        .sum();
    if let Some((bw, _)) = best {
        if weight + bound < *bw {
            return;
        }
    }
    for i in from..edges.len() {
        let e = edges[i];
        if e.intersects(used) {
            continue;
        }
        stack.push(i);
        matching_search(edges, i + 1, used.union(e), weight + e.len() as i64 - 1, stack, best);
        stack.pop();
    }
}

fn maximal_walk(
    edges: &[VertexSet],
    from: usize,
    used: VertexSet,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if edges.iter().all(|e| e.intersects(used)) {
        out.push(stack.clone());
        return;
    }
    for i in from..edges.len() {
        let e = edges[i];
        if e.intersects(used) {
            continue;
        }
        stack.push(i);
        maximal_walk(edges, i + 1, used.union(e), stack, out);
        stack.pop();
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

    fn s(ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(ids.iter().map(|v| v - 1))
    }

    fn h1() -> Hypergraph {
        h(6, &[&[1, 2, 3], &[2, 3, 4], &[4, 5, 6]])
    }

    fn fan() -> Hypergraph {
        h(5, &[&[1, 2, 3], &[2, 3, 4], &[2, 3, 5]])
    }

    fn star() -> Hypergraph {
        h(4, &[&[1, 2], &[1, 3], &[1, 4]])
    }

    #[test]
    fn classify_examples() {
        let f = h1().classify_family(&[s(&[1, 2, 3]), s(&[4, 5, 6])]).unwrap();
        assert!(f.matching && !f.semi_induced && !f.induced);
        assert_eq!(f.weight, 4);
        let f = h1()
            .classify_family(&[s(&[1, 2, 3]), s(&[2, 3, 4]), s(&[4, 5, 6])])
            .unwrap();
        assert!(f.semi_induced && !f.matching);
        assert_eq!(f.weight, 3);
        let h2 = h(5, &[&[1, 2, 3], &[2, 3, 4], &[4, 5]]);
        let c = h2.contraction(0).unwrap();
        // ids shift down by one after removing x1
        let f = c.classify_family(&[s(&[1, 2]), s(&[3, 4])]).unwrap();
        assert!(f.induced);
        assert!(matches!(
            h1().classify_family(&[s(&[1, 2])]),
            Err(Error::UnknownEdge(_))
        ));
        assert_eq!(
            h1().classify_family(&[s(&[1, 2, 3]), s(&[1, 2, 3])]),
            Err(Error::RepeatedFamilyEdge)
        );
    }

    #[test]
    fn invariants_examples() {
        let l = Limits::default();
        let m = h1().matching_invariants(&l).unwrap();
        assert_eq!((m.c, m.c_prime, m.m), (2, 3, 4));
        assert_eq!(m.c_witness.edges, vec![0]);
        assert_eq!(m.c_prime_witness.edges, vec![0, 1, 2]);
        assert_eq!(m.m_witness.edges, vec![0, 2]);
        let m = star().matching_invariants(&l).unwrap();
        assert_eq!((m.c, m.c_prime, m.m), (1, 1, 1));
        let m = fan().matching_invariants(&l).unwrap();
        assert_eq!((m.c, m.c_prime, m.m), (2, 2, 2));
        let m = h(3, &[]).matching_invariants(&l).unwrap();
        assert_eq!((m.c, m.c_prime, m.m), (0, 0, 0));
        assert!(m.c_witness.edges.is_empty());
    }

    #[test]
    fn invariants_respect_edge_cap() {
        let l = Limits {
            matching_edges: 2,
            ..Limits::default()
        };
        assert!(matches!(
            h1().matching_invariants(&l),
            Err(Error::SearchLimitExceeded { .. })
        ));
    }

    #[test]
    fn two_collage_examples() {
        assert!(fan().is_two_collage(&[s(&[1, 2, 3])]).unwrap());
        assert!(h1().is_two_collage(&[s(&[1, 2, 3]), s(&[4, 5, 6])]).unwrap());
        assert!(!h(2, &[&[1, 2]]).is_two_collage(&[]).unwrap());
    }

    #[test]
    fn maximal_matchings_of_p4() {
        let p4 = h(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert_eq!(p4.maximal_matchings(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn independent_set_examples() {
        let hh = h1();
        let f = hh
            .classify_family(&[s(&[1, 2, 3]), s(&[2, 3, 4]), s(&[4, 5, 6])])
            .unwrap();
        let g = hh.independent_set_from_semi_induced(&f).unwrap();
        assert_eq!(g, s(&[3, 5, 6]));
        assert!(hh.is_independent(g));
        let e = h(2, &[&[1, 2]]);
        let f = e.classify_family(&[s(&[1, 2])]).unwrap();
        assert_eq!(e.independent_set_from_semi_induced(&f).unwrap(), s(&[2]));
        let f = star().classify_family(&[s(&[1, 2])]).unwrap();
        assert_eq!(star().independent_set_from_semi_induced(&f).unwrap(), s(&[2]));
        let bad = hh.classify_family(&[s(&[1, 2, 3]), s(&[4, 5, 6])]).unwrap();
        assert_eq!(
            hh.independent_set_from_semi_induced(&bad),
            Err(Error::NotSemiInduced)
        );
    }
}
