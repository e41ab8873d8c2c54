//! Finite simple hypergraphs and their vertex operations.
//!
//! A [`Hypergraph`] owns a vertex table (labels, ids `0..n`) and an antichain
//! of nonempty edges stored as [`VertexSet`] bitsets in canonical order
//! (by size, then lexicographically). Deleting or contracting a vertex
//! renumbers the remaining vertices but keeps them all, isolated or not.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Index into a hypergraph's vertex table.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    labels: Vec<String>,
    edges: Vec<VertexSet>,
    void: bool,
}

/// On-disk form: `{"vertices": [...], "edges": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

/// Edge-size profile used by the uniform-intersection hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityProfile {
    /// Common edge size, if all edges share one.
    pub d: Option<usize>,
    /// Every two distinct edges meet in nothing or in exactly `d - 1` vertices.
    pub strong_intersection: bool,
}

/// The minimal vertex covers of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverList {
    pub covers: Vec<VertexSet>,
    pub bigheight: usize,
}

impl Hypergraph {
    /// Builds a hypergraph from vertex labels and edges given as label lists.
    ///
    /// Edges are validated (nonempty, known vertices, no duplicates, no
    /// containment) and sorted canonically.
    pub fn build<S: AsRef<str>>(vertex_labels: &[S], edge_lists: &[Vec<S>]) -> Result<Self> {
        let labels: Vec<String> = vertex_labels.iter().map(|s| s.as_ref().to_owned()).collect();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                max: MAX_VERTICES,
                got: labels.len(),
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        let mut edges = Vec::with_capacity(edge_lists.len());
        for (k, list) in edge_lists.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::EmptyEdge(k));
            }
            let mut e = VertexSet::EMPTY;
            for l in list {
                let v = *index
                    .get(l.as_ref())
                    .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_owned()))?;
                e = e.with(v);
            }
            edges.push(e);
        }
        Self::from_sets(labels, edges)
    }

    /// Builds a hypergraph from labels and bitset edges, validating the
    /// antichain condition.
    pub fn from_sets(labels: Vec<String>, mut edges: Vec<VertexSet>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                max: MAX_VERTICES,
                got: n,
            });
        }
        let full = VertexSet::full(n);
        for (k, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::EmptyEdge(k));
            }
            if !e.is_subset(full) {
                let v = e.difference(full).min().unwrap_or(0);
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        edges.sort_by(VertexSet::canonical_cmp);
        let h = Hypergraph {
            labels,
            edges,
            void: false,
        };
        for w in h.edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(h.edge_labels(w[0])));
            }
        }
        for (i, &a) in h.edges.iter().enumerate() {
            for &b in &h.edges[i + 1..] {
                if a.is_subset(b) {
                    return Err(Error::AntichainViolation {
                        contained: h.edge_labels(a),
                        container: h.edge_labels(b),
                    });
                }
            }
        }
        Ok(h)
    }

    /// Labels `x1, .., xn`, the convention used throughout the tests.
    pub fn default_labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    /// Shorthand for [`Hypergraph::from_sets`] with [`Hypergraph::default_labels`].
    pub fn with_default_labels(n: usize, edges: Vec<VertexSet>) -> Result<Self> {
        Self::from_sets(Self::default_labels(n), edges)
    }

    /// Assumes `edges` is already a canonically sorted antichain of nonempty sets.
    pub(crate) fn from_parts_unchecked(labels: Vec<String>, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0].canonical_cmp(&w[1]).is_lt()));
        Hypergraph {
            labels,
            edges,
            void: false,
        }
    }

    /// The degenerate object whose only edge is the empty set.
    pub fn void(labels: Vec<String>) -> Self {
        Hypergraph {
            labels,
            edges: vec![VertexSet::EMPTY],
            void: true,
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Edges in canonical order. A void hypergraph reports the single edge `∅`.
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// All edges have exactly two vertices.
    pub fn is_graph(&self) -> bool {
        !self.void && self.edges.iter().all(|e| e.len() == 2)
    }

    pub fn has_singleton_edge(&self) -> bool {
        self.edges.iter().any(|e| e.len() == 1)
    }

    pub fn edge_index(&self, e: VertexSet) -> Option<usize> {
        self.edges.iter().position(|&f| f == e)
    }

    pub fn edges_containing(&self, x: VertexId) -> impl Iterator<Item = VertexSet> + '_ {
        self.edges.iter().copied().filter(move |e| e.contains(x))
    }

    /// `s` contains no edge.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        self.edges.iter().all(|e| !e.is_subset(s))
    }

    /// `s` meets every edge.
    pub fn is_vertex_cover(&self, s: VertexSet) -> bool {
        self.edges.iter().all(|e| e.intersects(s))
    }

    pub fn edge_labels(&self, e: VertexSet) -> Vec<String> {
        e.iter().map(|v| self.labels[v].clone()).collect()
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels.iter().try_fold(VertexSet::EMPTY, |s, l| {
            self.vertex(l.as_ref())
                .map(|v| s.with(v))
                .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_owned()))
        })
    }

    fn check_vertex(&self, x: VertexId) -> Result<()> {
        if x < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{x}")))
        }
    }

    fn labels_without(&self, x: VertexId) -> Vec<String> {
        let mut labels = self.labels.clone();
        labels.remove(x);
        labels
    }

    /// `H \ x`: drop `x` and every edge through it.
    pub fn deletion(&self, x: VertexId) -> Result<Hypergraph> {
        self.check_vertex(x)?;
        let labels = self.labels_without(x);
        if self.void {
            return Ok(Hypergraph::void(labels));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(x))
            .map(|e| e.squeeze(x))
            .collect();
        Ok(Hypergraph::from_parts_unchecked(labels, edges))
    }

    /// `H / x`: the inclusion-minimal members of `{E \ {x}}`.
    ///
    /// Contracting a vertex that forms a singleton edge yields the void
    /// hypergraph.
    pub fn contraction(&self, x: VertexId) -> Result<Hypergraph> {
        self.check_vertex(x)?;
        let labels = self.labels_without(x);
        if self.void || self.edges.iter().any(|e| *e == VertexSet::singleton(x)) {
            return Ok(Hypergraph::void(labels));
        }
        let mut shrunk: Vec<VertexSet> = self.edges.iter().map(|e| e.without(x)).collect();
        shrunk.sort_by(VertexSet::canonical_cmp);
        shrunk.dedup();
        let mut minimal: Vec<VertexSet> = Vec::with_capacity(shrunk.len());
        // canonical order lists subsets before supersets
        for e in shrunk {
            if !minimal.iter().any(|m| m.is_subset(e)) {
                minimal.push(e);
            }
        }
        let edges = minimal.into_iter().map(|e| e.squeeze(x)).collect();
        Ok(Hypergraph::from_parts_unchecked(labels, edges))
    }

    /// The sub-hypergraph induced on `keep`: vertices of `keep`, renumbered in
    /// order, and the edges lying inside `keep`.
    pub fn induced(&self, keep: VertexSet) -> Hypergraph {
        let keep = keep.intersection(self.vertex_set());
        let labels = keep.iter().map(|v| self.labels[v].clone()).collect();
        if self.void {
            return Hypergraph::void(labels);
        }
        let mut edges: Vec<VertexSet> = self
            .edges
            .iter()
            .filter(|e| e.is_subset(keep))
            .map(|e| e.compress(keep))
            .collect();
        edges.sort_by(VertexSet::canonical_cmp);
        Hypergraph::from_parts_unchecked(labels, edges)
    }

    /// `N_H(x \ y) = {E \ {x} : x ∈ E, y ∉ E}`, canonically sorted.
    pub fn neighborhood_minus(&self, x: VertexId, y: VertexId) -> Result<Vec<VertexSet>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::SameVertex);
        }
        Ok(self.neighborhood_minus_unchecked(x, y))
    }

    pub(crate) fn neighborhood_minus_unchecked(&self, x: VertexId, y: VertexId) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self
            .edges
            .iter()
            .filter(|e| e.contains(x) && !e.contains(y))
            .map(|e| e.without(x))
            .collect();
        out.sort_by(VertexSet::canonical_cmp);
        out.dedup();
        out
    }

    pub fn uniformity_profile(&self) -> Result<UniformityProfile> {
        let first = *self.edges.first().ok_or(Error::NoEdges)?;
        let size = first.len();
        let d = self.edges.iter().all(|e| e.len() == size).then_some(size);
        let strong_intersection = match d {
            None => false,
            Some(d) => self.edges.iter().enumerate().all(|(i, a)| {
                self.edges[i + 1..].iter().all(|b| {
                    let k = a.intersection(*b).len();
                    k == 0 || k + 1 == d
                })
            }),
        };
        Ok(UniformityProfile {
            d,
            strong_intersection,
        })
    }

    /// Convenience: d-uniform with the strong intersection property.
    pub fn is_uniform_strong(&self) -> bool {
        self.uniformity_profile()
            .map(|p| p.strong_intersection)
            .unwrap_or(false)
    }

    /// Minimal vertex covers, read off as complements of the facets of the
    /// independence complex.
    pub fn minimal_vertex_covers(&self) -> CoverList {
        let delta = SimplicialComplex::independence_complex(self);
        let ground = self.vertex_set();
        let mut covers: Vec<VertexSet> = delta
            .facets()
            .iter()
            .map(|f| ground.difference(*f))
            .collect();
        covers.sort_by(VertexSet::canonical_cmp);
        let bigheight = covers.iter().map(|c| c.len()).max().unwrap_or(0);
        CoverList { covers, bigheight }
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| !e.is_empty())
                .map(|e| self.edge_labels(*e))
                .collect(),
        }
    }

    pub fn from_json(json: &HypergraphJson) -> Result<Self> {
        Self::build(&json.vertices, &json.edges)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: HypergraphJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("hypergraph json")
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

    fn sets(edges: &[&[usize]]) -> Vec<VertexSet> {
        edges
            .iter()
            .map(|e| VertexSet::from_ids(e.iter().map(|v| v - 1)))
            .collect()
    }

    fn h1() -> Hypergraph {
        h(6, &[&[1, 2, 3], &[2, 3, 4], &[4, 5, 6]])
    }

    fn h2() -> Hypergraph {
        h(5, &[&[1, 2, 3], &[2, 3, 4], &[4, 5]])
    }

    fn star3() -> Hypergraph {
        h(4, &[&[1, 2], &[1, 3], &[1, 4]])
    }

    #[test]
    fn build_accepts_h1_and_sorts_edges() {
        let g = Hypergraph::build(
            &["x1", "x2", "x3", "x4", "x5", "x6"],
            &[
                vec!["x4", "x5", "x6"],
                vec!["x1", "x2", "x3"],
                vec!["x2", "x3", "x4"],
            ],
        )
        .unwrap();
        assert_eq!(g, h1());
        assert_eq!(g.edges()[0], VertexSet::from_ids([0, 1, 2]));
    }

    #[test]
    fn build_rejects_bad_edges() {
        let v = ["x1", "x2", "x3"];
        assert!(matches!(
            Hypergraph::build(&v, &[vec!["x1", "x2"], vec!["x2", "x1"]]),
            Err(Error::DuplicateEdge(e)) if e == ["x1", "x2"]
        ));
        assert!(matches!(
            Hypergraph::build(&v, &[vec!["x1", "x2"], vec!["x1", "x2", "x3"]]),
            Err(Error::AntichainViolation { .. })
        ));
        assert!(matches!(
            Hypergraph::build(&v, &[vec![]]),
            Err(Error::EmptyEdge(0))
        ));
        assert!(matches!(
            Hypergraph::build(&v, &[vec!["x1", "x9"]]),
            Err(Error::UnknownVertex(l)) if l == "x9"
        ));
        assert!(matches!(
            Hypergraph::build(&["a", "a"], &Vec::<Vec<&str>>::new()),
            Err(Error::DuplicateVertex(_))
        ));
    }

    #[test]
    fn deletion_examples() {
        let d = h2().deletion(4).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.edges(), sets(&[&[1, 2, 3], &[2, 3, 4]]).as_slice());

        let d = star3().deletion(0).unwrap();
        assert_eq!(d.labels(), ["x2", "x3", "x4"]);
        assert!(d.is_edgeless());

        let d = h1().deletion(1).unwrap();
        // x4,x5,x6 renumbered to ids 2,3,4
        assert_eq!(d.edges(), &[VertexSet::from_ids([2, 3, 4])]);
        assert_eq!(d.edge_labels(d.edges()[0]), ["x4", "x5", "x6"]);
    }

    #[test]
    fn contraction_examples() {
        let c = h2().contraction(0).unwrap();
        let labels: Vec<_> = c.edges().iter().map(|e| c.edge_labels(*e)).collect();
        assert_eq!(labels, [vec!["x2", "x3"], vec!["x4", "x5"]]);

        let c = star3().contraction(0).unwrap();
        let labels: Vec<_> = c.edges().iter().map(|e| c.edge_labels(*e)).collect();
        assert_eq!(labels, [vec!["x2"], vec!["x3"], vec!["x4"]]);

        let c = h(2, &[&[1, 2]]).contraction(0).unwrap();
        assert_eq!(c.edge_labels(c.edges()[0]), ["x2"]);
        assert!(!c.is_void());
    }

    #[test]
    fn contracting_singleton_edge_gives_void() {
        let c = h(2, &[&[1], &[2]]).contraction(0).unwrap();
        assert!(c.is_void());
        assert_eq!(c.edges(), &[VertexSet::EMPTY]);
        assert!(!c.is_independent(VertexSet::EMPTY));
    }

    #[test]
    fn neighborhood_minus_examples() {
        let n = h2().neighborhood_minus(1, 0).unwrap();
        assert_eq!(n, vec![VertexSet::from_ids([2, 3])]);
        let n = star3().neighborhood_minus(0, 1).unwrap();
        assert_eq!(n, vec![VertexSet::singleton(2), VertexSet::singleton(3)]);
        assert!(star3().neighborhood_minus(1, 0).unwrap().is_empty());
        assert_eq!(star3().neighborhood_minus(1, 1), Err(Error::SameVertex));
        assert!(star3().neighborhood_minus(9, 1).is_err());
    }

    #[test]
    fn uniformity_examples() {
        let p = h1().uniformity_profile().unwrap();
        assert_eq!(p.d, Some(3));
        assert!(!p.strong_intersection);
        let p = h(5, &[&[1, 2, 3], &[2, 3, 4], &[2, 3, 5]])
            .uniformity_profile()
            .unwrap();
        assert_eq!(p.d, Some(3));
        assert!(p.strong_intersection);
        let p = star3().uniformity_profile().unwrap();
        assert_eq!(p.d, Some(2));
        assert!(p.strong_intersection);
        assert_eq!(h(2, &[]).uniformity_profile(), Err(Error::NoEdges));
        let p = h2().uniformity_profile().unwrap();
        assert_eq!(p.d, None);
        assert!(!p.strong_intersection);
    }

    #[test]
    fn minimal_vertex_cover_examples() {
        let c = star3().minimal_vertex_covers();
        assert_eq!(
            c.covers,
            vec![VertexSet::from_ids([0]), VertexSet::from_ids([1, 2, 3])]
        );
        assert_eq!(c.bigheight, 3);
        let c = h(3, &[&[1, 2], &[2, 3]]).minimal_vertex_covers();
        assert_eq!(
            c.covers,
            vec![VertexSet::from_ids([1]), VertexSet::from_ids([0, 2])]
        );
        assert_eq!(c.bigheight, 2);
        let c = h(2, &[&[1, 2]]).minimal_vertex_covers();
        assert_eq!(c.covers.len(), 2);
        assert_eq!(c.bigheight, 1);
        let c = h(3, &[]).minimal_vertex_covers();
        assert_eq!(c.covers, vec![VertexSet::EMPTY]);
        assert_eq!(c.bigheight, 0);
    }

    #[test]
    fn json_round_trip() {
        let g = h1();
        let s = g.to_json_string();
        assert_eq!(
            s,
            r#"{"vertices":["x1","x2","x3","x4","x5","x6"],"edges":[["x1","x2","x3"],["x2","x3","x4"],["x4","x5","x6"]]}"#
        );
        assert_eq!(Hypergraph::from_json_str(&s).unwrap(), g);
        assert!(Hypergraph::from_json_str(r#"{"vertices":[],"edges":[],"x":1}"#).is_err());
    }
}
