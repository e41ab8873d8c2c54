//! Simplicial complexes stored as facet antichains.
//!
//! The ground set is a [`VertexSet`] of vertex ids; it need not be
//! contiguous, so links and deletions keep the ids of the parent complex.
//! Two degenerate complexes matter here: the *void* complex (no faces at
//! all) and the complex whose only face is `∅`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Void,
    #[serde(rename = "empty")]
    EmptyFaceOnly,
    Ordinary,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground: VertexSet,
    facets: Vec<VertexSet>,
}

/// Serialized form: `{"ground_set": [...], "facets": [[...]], "kind": "ordinary|void|empty"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ground_set: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub kind: ComplexKind,
}

/// Keeps the inclusion-maximal sets, sorted canonically.
pub(crate) fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.canonical_cmp(a));
    sets.dedup();
    let mut out: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|m| s.is_subset(*m)) {
            out.push(s);
        }
    }
    out.sort_by(VertexSet::canonical_cmp);
    out
}

impl SimplicialComplex {
    /// The complex generated by `faces` on `ground`. Non-maximal and repeated
    /// faces are dropped.
    pub fn new(ground: VertexSet, faces: Vec<VertexSet>) -> Result<Self> {
        if let Some(f) = faces.iter().find(|f| !f.is_subset(ground)) {
            let v = f.difference(ground).min().unwrap_or(0);
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        Ok(Self::from_faces_unchecked(ground, faces))
    }

    pub(crate) fn from_faces_unchecked(ground: VertexSet, faces: Vec<VertexSet>) -> Self {
        SimplicialComplex {
            ground,
            facets: maximal_sets(faces),
        }
    }

    pub fn void(ground: VertexSet) -> Self {
        SimplicialComplex {
            ground,
            facets: Vec::new(),
        }
    }

    pub fn empty_face_only(ground: VertexSet) -> Self {
        SimplicialComplex {
            ground,
            facets: vec![VertexSet::EMPTY],
        }
    }

    pub fn simplex(ground: VertexSet) -> Self {
        SimplicialComplex {
            ground,
            facets: vec![ground],
        }
    }

    /// `Δ_H`: faces are the subsets of `V(H)` containing no edge.
    pub fn independence_complex(h: &Hypergraph) -> Self {
        let ground = h.vertex_set();
        if h.is_void() {
            return Self::void(ground);
        }
        SimplicialComplex {
            ground,
            facets: maximal_independent_sets(h),
        }
    }

    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn kind(&self) -> ComplexKind {
        match self.facets.as_slice() {
            [] => ComplexKind::Void,
            [f] if f.is_empty() => ComplexKind::EmptyFaceOnly,
            _ => ComplexKind::Ordinary,
        }
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// A single facet equal to the ground set.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0] == self.ground
    }

    /// Some vertex lies in every facet.
    pub fn is_cone(&self) -> bool {
        !self.facets.is_empty()
            && !self
                .facets
                .iter()
                .fold(self.ground, |acc, f| acc.intersection(*f))
                .is_empty()
    }

    pub fn is_face(&self, f: VertexSet) -> bool {
        self.facets.iter().any(|g| f.is_subset(*g))
    }

    /// Largest facet size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.len() as i64 - 1).max()
    }

    fn check_vertex(&self, x: VertexId) -> Result<()> {
        if x < 64 && self.ground.contains(x) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{x}")))
        }
    }

    /// `(lk x, del x)`, both on the ground set minus `x`.
    pub fn link_and_deletion(&self, x: VertexId) -> Result<(Self, Self)> {
        self.check_vertex(x)?;
        Ok((self.link_unchecked(x), self.deletion_unchecked(x)))
    }

    pub(crate) fn link_unchecked(&self, x: VertexId) -> Self {
        // facets through x, minus x, already form an antichain
        let facets = self
            .facets
            .iter()
            .filter(|f| f.contains(x))
            .map(|f| f.without(x))
            .collect();
        SimplicialComplex {
            ground: self.ground.without(x),
            facets,
        }
    }

    pub(crate) fn deletion_unchecked(&self, x: VertexId) -> Self {
        Self::from_faces_unchecked(
            self.ground.without(x),
            self.facets.iter().map(|f| f.without(x)).collect(),
        )
    }

    /// `Δ[W]`: the faces lying inside `W`, on ground set `W`.
    pub fn induced_subcomplex(&self, w: VertexSet) -> Result<Self> {
        if let Some(v) = w.difference(self.ground).min() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        if self.is_void() {
            return Ok(Self::void(w));
        }
        Ok(Self::from_faces_unchecked(
            w,
            self.facets.iter().map(|f| f.intersection(w)).collect(),
        ))
    }

    /// Every facet of `del x` is a facet of the complex.
    pub fn is_shedding(&self, x: VertexId) -> Result<bool> {
        self.check_vertex(x)?;
        Ok(self.is_shedding_unchecked(x))
    }

    pub(crate) fn is_shedding_unchecked(&self, x: VertexId) -> bool {
        let del = self.deletion_unchecked(x);
        del.facets
            .iter()
            .all(|f| self.facets.binary_search_by(|g| g.canonical_cmp(f)).is_ok())
    }

    /// Relabels the ground set to `0..k` preserving order.
    pub fn compressed(&self) -> Self {
        SimplicialComplex {
            ground: VertexSet::full(self.ground.len()),
            facets: self
                .facets
                .iter()
                .map(|f| f.compress(self.ground))
                .collect(),
        }
    }

    /// Face indicator over all subsets of the compressed ground set.
    ///
    /// Entry `m` is true when the subset with bit pattern `m` (bits indexed by
    /// rank in the ground set) is a face.
    pub fn face_table(&self) -> Vec<bool> {
        let k = self.ground.len();
        let mut table = vec![false; 1usize << k];
        for f in &self.facets {
            let f = f.compress(self.ground).bits() as usize;
            // enumerate subsets of f
            let mut s = f;
            loop {
                table[s] = true;
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        table
    }

    /// Serializes with vertex names taken from `labels` (indexed by id), or
    /// the decimal id when no label table is given.
    pub fn to_json(&self, labels: Option<&[String]>) -> ComplexJson {
        let name = |v: usize| match labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        };
        ComplexJson {
            ground_set: self.ground.iter().map(name).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(name).collect())
                .collect(),
            kind: self.kind(),
        }
    }

    /// Parses a serialized complex. Ids are assigned by position in
    /// `ground_set`; the label table is returned alongside.
    pub fn from_json(json: &ComplexJson) -> Result<(Self, Vec<String>)> {
        let labels = json.ground_set.clone();
        let h = Hypergraph::build(&labels, &Vec::<Vec<String>>::new())?;
        let ground = h.vertex_set();
        let facets = json
            .facets
            .iter()
            .map(|f| h.set_from_labels(f))
            .collect::<Result<Vec<_>>>()?;
        let c = Self::new(ground, facets)?;
        if c.kind() != json.kind {
            return Err(Error::Parse(format!(
                "declared kind {:?} but facets give {:?}",
                json.kind,
                c.kind()
            )));
        }
        Ok((c, labels))
    }
}

/// Maximal independent sets of a non-void hypergraph, canonically sorted.
fn maximal_independent_sets(h: &Hypergraph) -> Vec<VertexSet> {
    let n = h.n();
    let mut by_vertex: Vec<Vec<VertexSet>> = vec![Vec::new(); n];
    for &e in h.edges() {
        for v in e {
            by_vertex[v].push(e);
        }
    }
    let mut out = Vec::new();
    walk_independent(0, &by_vertex, VertexSet::EMPTY, VertexSet::EMPTY, &mut out);
    out.sort_by(VertexSet::canonical_cmp);
    out
}

/// Depth-first over vertices: include `v` when possible, or exclude it.
///
/// An excluded vertex must end up blocked by the chosen set, so a branch dies
/// as soon as some excluded vertex has no edge left that could block it.
fn walk_independent(
    v: usize,
    by_vertex: &[Vec<VertexSet>],
    chosen: VertexSet,
    excluded: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if v == by_vertex.len() {
        out.push(chosen);
        return;
    }
    let blocked = by_vertex[v].iter().any(|e| e.without(v).is_subset(chosen));
    if !blocked {
        walk_independent(v + 1, by_vertex, chosen.with(v), excluded, out);
    }
    let excluded = excluded.with(v);
    let still_blockable = |u: usize| {
        by_vertex[u]
            .iter()
            .any(|e| !e.without(u).intersects(excluded))
    };
    if excluded.iter().all(still_blockable) {
        walk_independent(v + 1, by_vertex, chosen, excluded, out);
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

    fn star_complex() -> SimplicialComplex {
        SimplicialComplex::independence_complex(&h(4, &[&[1, 2], &[1, 3], &[1, 4]]))
    }

    #[test]
    fn independence_complex_examples() {
        let d = SimplicialComplex::independence_complex(&h(2, &[&[1, 2]]));
        assert_eq!(d.facets(), &[s(&[1]), s(&[2])]);
        assert_eq!(star_complex().facets(), &[s(&[1]), s(&[2, 3, 4])]);
        let d = SimplicialComplex::independence_complex(&h(3, &[]));
        assert_eq!(d.facets(), &[s(&[1, 2, 3])]);
        assert!(d.is_simplex());
        let void = Hypergraph::void(Hypergraph::default_labels(2));
        assert_eq!(
            SimplicialComplex::independence_complex(&void).kind(),
            ComplexKind::Void
        );
    }

    #[test]
    fn link_and_deletion_examples() {
        let (lk, del) = star_complex().link_and_deletion(0).unwrap();
        assert_eq!(del.facets(), &[s(&[2, 3, 4])]);
        assert_eq!(lk.kind(), ComplexKind::EmptyFaceOnly);

        let full = SimplicialComplex::simplex(s(&[1, 2]));
        let (lk, del) = full.link_and_deletion(0).unwrap();
        assert_eq!(lk.facets(), &[s(&[2])]);
        assert_eq!(del.facets(), &[s(&[2])]);

        assert!(star_complex().link_and_deletion(7).is_err());
    }

    #[test]
    fn link_and_deletion_match_contraction_and_deletion_on_h2() {
        let h2 = h(5, &[&[1, 2, 3], &[2, 3, 4], &[4, 5]]);
        let d = SimplicialComplex::independence_complex(&h2);
        for x in 0..5 {
            let (lk, del) = d.link_and_deletion(x).unwrap();
            let want_lk = SimplicialComplex::independence_complex(&h2.contraction(x).unwrap());
            let want_del = SimplicialComplex::independence_complex(&h2.deletion(x).unwrap());
            assert_eq!(lk.compressed(), want_lk);
            assert_eq!(del.compressed(), want_del);
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(star_complex().dimension(), Some(2));
        assert_eq!(
            SimplicialComplex::empty_face_only(s(&[1])).dimension(),
            Some(-1)
        );
        assert_eq!(SimplicialComplex::void(s(&[1])).dimension(), None);
    }

    #[test]
    fn induced_subcomplex_examples() {
        let r = star_complex().induced_subcomplex(s(&[2, 3])).unwrap();
        assert!(r.is_simplex());
        let two_points = SimplicialComplex::new(s(&[1, 2]), vec![s(&[1]), s(&[2])]).unwrap();
        let r = two_points.induced_subcomplex(s(&[1])).unwrap();
        assert_eq!(r.facets(), &[s(&[1])]);
        let h1 = h(6, &[&[1, 2, 3], &[2, 3, 4], &[4, 5, 6]]);
        let r = SimplicialComplex::independence_complex(&h1)
            .induced_subcomplex(s(&[1, 2, 3]))
            .unwrap();
        assert_eq!(r.facets(), &[s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);
        assert!(star_complex().induced_subcomplex(s(&[9])).is_err());
    }

    #[test]
    fn shedding_examples() {
        assert!(star_complex().is_shedding(0).unwrap());
        assert!(!star_complex().is_shedding(1).unwrap());
        let two_points = SimplicialComplex::independence_complex(&h(2, &[&[1, 2]]));
        assert!(two_points.is_shedding(0).unwrap());
        // cone points are never shedding
        let cone = SimplicialComplex::independence_complex(&h(3, &[&[1, 2]]));
        assert!(!cone.is_shedding(2).unwrap());
    }

    #[test]
    fn face_table_marks_exactly_the_faces() {
        let d = star_complex();
        let t = d.face_table();
        for m in 0..16u64 {
            assert_eq!(t[m as usize], d.is_face(VertexSet(m)), "mask {m}");
        }
        assert!(SimplicialComplex::void(s(&[1, 2])).face_table().iter().all(|b| !b));
    }

    #[test]
    fn json_round_trip() {
        let d = star_complex();
        let labels = Hypergraph::default_labels(4);
        let j = d.to_json(Some(&labels));
        assert_eq!(j.kind, ComplexKind::Ordinary);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"ground_set":["x1","x2","x3","x4"],"facets":[["x1"],["x2","x3","x4"]],"kind":"ordinary"}"#
        );
        let (back, l) = SimplicialComplex::from_json(&j).unwrap();
        assert_eq!(back, d);
        assert_eq!(l, labels);
        let e = SimplicialComplex::empty_face_only(s(&[1])).to_json(None);
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"ground_set":["0"],"facets":[[]],"kind":"empty"}"#
        );
    }
}
