//! Vertex decomposability with replayable certificates.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{ComplexKind, SimplicialComplex};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::vertex_set::VertexSet;

/// Decomposition tree for a positive verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum VdTree {
    Simplex,
    Void,
    Empty,
    Shed {
        vertex: VertexId,
        deletion: Box<VdTree>,
        link: Box<VdTree>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VdCertificate {
    pub verdict: bool,
    pub tree: Option<VdTree>,
    /// For a negative verdict: a complex reached through shedding vertices
    /// at which no vertex is shedding.
    pub failure_witness: Option<SimplicialComplex>,
}

impl VdTree {
    /// Replays the tree against `c`.
    pub fn verify(&self, c: &SimplicialComplex) -> bool {
        match self {
            VdTree::Simplex => c.is_simplex(),
            VdTree::Void => c.is_void(),
            VdTree::Empty => c.kind() == ComplexKind::EmptyFaceOnly,
            VdTree::Shed {
                vertex,
                deletion,
                link,
            } => match c.link_and_deletion(*vertex) {
                Ok((lk, del)) => {
                    c.is_shedding_unchecked(*vertex) && deletion.verify(&del) && link.verify(&lk)
                }
                Err(_) => false,
            },
        }
    }
}

impl VdCertificate {
    /// Positive verdicts replay their tree; negative ones must carry a
    /// witness that is not a base case and has no shedding vertex.
    pub fn verify(&self, c: &SimplicialComplex) -> bool {
        if self.verdict {
            self.tree.as_ref().is_some_and(|t| t.verify(c))
        } else {
            self.failure_witness
                .as_ref()
                .is_some_and(|w| base_case(w).is_none() && shedding_vertices(w).is_empty())
        }
    }
}

fn base_case(c: &SimplicialComplex) -> Option<VdTree> {
    if c.is_void() {
        Some(VdTree::Void)
    } else if c.is_simplex() {
        Some(VdTree::Simplex)
    } else if c.kind() == ComplexKind::EmptyFaceOnly {
        Some(VdTree::Empty)
    } else {
        None
    }
}

fn shedding_vertices(c: &SimplicialComplex) -> Vec<VertexId> {
    c.ground()
        .iter()
        .filter(|&v| c.is_shedding_unchecked(v))
        .collect()
}

/// Memo key: ground size and facet masks after relabeling vertices by
/// (facet degree, total size of facets through the vertex, original rank).
///
/// The key is a relabeling of the complex, so equal keys mean isomorphic
/// complexes; isomorphic complexes can still get different keys.
fn memo_key(c: &SimplicialComplex) -> (usize, Vec<u64>) {
    let ground = c.ground();
    let k = ground.len();
    let facets: Vec<VertexSet> = c.facets().iter().map(|f| f.compress(ground)).collect();
    let mut order: Vec<(usize, usize, usize)> = (0..k)
        .map(|v| {
            let through = facets.iter().filter(|f| f.contains(v));
            let deg = through.clone().count();
            let weight = through.map(|f| f.len()).sum();
            (deg, weight, v)
        })
        .collect();
    order.sort_unstable();
    let mut relabel = vec![0usize; k];
    for (new, &(_, _, old)) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let mut masks: Vec<u64> = facets
        .iter()
        .map(|f| f.iter().fold(0u64, |m, v| m | 1 << relabel[v]))
        .collect();
    masks.sort_unstable();
    (k, masks)
}

/// Memoized vertex-decomposability search. One oracle per worker.
#[derive(Debug, Default)]
pub struct VdOracle {
    memo: HashMap<(usize, Vec<u64>), bool>,
}

impl VdOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_vertex_decomposable(&mut self, c: &SimplicialComplex) -> bool {
        if base_case(c).is_some() {
            return true;
        }
        let key = memo_key(c);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let verdict = self.first_good_shedding(c).is_some();
        self.memo.insert(key, verdict);
        verdict
    }

    /// The least shedding vertex whose link and deletion both decompose.
    fn first_good_shedding(
        &mut self,
        c: &SimplicialComplex,
    ) -> Option<(VertexId, SimplicialComplex, SimplicialComplex)> {
        for v in c.ground() {
            if !c.is_shedding_unchecked(v) {
                continue;
            }
            let del = c.deletion_unchecked(v);
            let lk = c.link_unchecked(v);
            if self.is_vertex_decomposable(&lk) && self.is_vertex_decomposable(&del) {
                return Some((v, del, lk));
            }
        }
        None
    }

    fn tree(&mut self, c: &SimplicialComplex) -> Option<VdTree> {
        if let Some(t) = base_case(c) {
            return Some(t);
        }
        let (vertex, del, lk) = self.first_good_shedding(c)?;
        Some(VdTree::Shed {
            vertex,
            deletion: Box::new(self.tree(&del)?),
            link: Box::new(self.tree(&lk)?),
        })
    }

    fn failure_witness(&mut self, c: &SimplicialComplex) -> SimplicialComplex {
        let mut cur = c.clone();
        'descend: loop {
            for v in cur.ground() {
                if !cur.is_shedding_unchecked(v) {
                    continue;
                }
                let del = cur.deletion_unchecked(v);
                if !self.is_vertex_decomposable(&del) {
                    cur = del;
                    continue 'descend;
                }
                let lk = cur.link_unchecked(v);
                cur = lk;
                continue 'descend;
            }
            return cur;
        }
    }

    pub fn certificate(&mut self, c: &SimplicialComplex) -> VdCertificate {
        if self.is_vertex_decomposable(c) {
            VdCertificate {
                verdict: true,
                tree: self.tree(c),
                failure_witness: None,
            }
        } else {
            VdCertificate {
                verdict: false,
                tree: None,
                failure_witness: Some(self.failure_witness(c)),
            }
        }
    }
}

impl SimplicialComplex {
    pub fn is_vertex_decomposable(&self) -> VdCertificate {
        VdOracle::new().certificate(self)
    }
}

impl Hypergraph {
    /// The independence complex is vertex decomposable.
    pub fn is_vertex_decomposable(&self) -> bool {
        VdOracle::new().is_vertex_decomposable(&SimplicialComplex::independence_complex(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied())
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Hypergraph {
        Hypergraph::with_default_labels(n, edges.iter().map(|&(a, b)| s(&[a, b])).collect())
            .unwrap()
    }

    #[test]
    fn simplex_is_base_case() {
        let c = SimplicialComplex::simplex(s(&[0, 1, 2]));
        let cert = c.is_vertex_decomposable();
        assert!(cert.verdict);
        assert_eq!(cert.tree, Some(VdTree::Simplex));
        assert!(cert.verify(&c));
    }

    #[test]
    fn star_complex_sheds_its_center() {
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let c = SimplicialComplex::independence_complex(&star);
        let cert = c.is_vertex_decomposable();
        assert!(cert.verdict);
        match cert.tree.as_ref().unwrap() {
            VdTree::Shed { vertex, .. } => assert_eq!(*vertex, 0),
            t => panic!("unexpected tree {t:?}"),
        }
        assert!(cert.verify(&c));
    }

    #[test]
    fn square_is_not_decomposable() {
        let c = SimplicialComplex::new(s(&[0, 1, 2, 3]), vec![s(&[0, 2]), s(&[1, 3])]).unwrap();
        let cert = c.is_vertex_decomposable();
        assert!(!cert.verdict);
        let w = cert.failure_witness.as_ref().unwrap();
        assert_eq!(w, &c);
        assert!(cert.verify(&c));
    }

    #[test]
    fn pentagon_is_decomposable() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert!(c5.is_vertex_decomposable());
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(!c4.is_vertex_decomposable());
    }

    #[test]
    fn degenerate_complexes_decompose() {
        assert!(SimplicialComplex::void(s(&[0])).is_vertex_decomposable().verdict);
        let e = SimplicialComplex::empty_face_only(s(&[0, 1]));
        let cert = e.is_vertex_decomposable();
        assert_eq!(cert.tree, Some(VdTree::Empty));
    }

    #[test]
    fn tampered_tree_fails_replay() {
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let c = SimplicialComplex::independence_complex(&star);
        let bad = VdCertificate {
            verdict: true,
            tree: Some(VdTree::Shed {
                vertex: 1,
                deletion: Box::new(VdTree::Simplex),
                link: Box::new(VdTree::Simplex),
            }),
            failure_witness: None,
        };
        assert!(!bad.verify(&c));
    }
}
