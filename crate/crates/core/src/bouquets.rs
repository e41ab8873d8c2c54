//! Bouquets, strongly and semi-strongly disjoint bouquet sets, and the
//! numbers `d` and `d'`.
//!
//! Bouquet sets partition a subset of the edges: no edge is a stem of two
//! bouquets in one set.
//!
//! For `d'` only single-stem bouquets with one-vertex roots are searched.
//! Splitting a bouquet into its stems, each rooted at one common root, and
//! shrinking single-stem roots to one vertex never loses a flower and keeps
//! the root set independent. With the root set `R` fixed, every edge
//! meeting `R` can then be added as a stem rooted inside `R`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits::{self, Limits};
use crate::vertex_set::{subsets, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bouquet {
    /// Indices into the canonical edge list, ascending.
    pub stems: Vec<usize>,
    pub roots: VertexSet,
}

impl Bouquet {
    pub fn flowers(&self, h: &Hypergraph) -> VertexSet {
        self.union(h).difference(self.roots)
    }

    fn union(&self, h: &Hypergraph) -> VertexSet {
        self.stems
            .iter()
            .fold(VertexSet::EMPTY, |u, &i| u.union(h.edges()[i]))
    }

    fn validate(&self, h: &Hypergraph) -> Result<()> {
        if self.stems.is_empty() {
            return Err(Error::InvalidBouquet("a bouquet needs a stem".into()));
        }
        if let Some(&i) = self.stems.iter().find(|&&i| i >= h.edge_count()) {
            return Err(Error::InvalidBouquet(format!("no edge with index {i}")));
        }
        if self.stems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBouquet(
                "stems must be distinct and ascending".into(),
            ));
        }
        let edges = h.edges();
        if let [only] = self.stems[..] {
            let e = edges[only];
            if self.roots.is_empty() || !self.roots.is_subset(e) || self.roots == e {
                return Err(Error::InvalidBouquet(format!(
                    "roots of a one-stem bouquet must be a nonempty proper subset of {:?}",
                    h.edge_labels(e)
                )));
            }
        } else {
            let common = self
                .stems
                .iter()
                .fold(h.vertex_set(), |acc, &i| acc.intersection(edges[i]));
            if common.is_empty() {
                return Err(Error::InvalidBouquet("stems share no vertex".into()));
            }
            if self.roots != common {
                return Err(Error::InvalidBouquet(
                    "roots must be the common intersection of the stems".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BouquetSet {
    pub bouquets: Vec<Bouquet>,
    pub flowers: VertexSet,
    pub roots: VertexSet,
    /// All stems, ascending.
    pub stems: Vec<usize>,
    pub strongly_disjoint: bool,
    pub semi_strongly_disjoint: bool,
    /// One stem per bouquet forming an induced matching, when one exists.
    pub induced_stems: Option<Vec<usize>>,
}

/// Serialized form: `{"bouquets": [{"stems": [edge indices], "roots": [labels]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BouquetSetJson {
    pub bouquets: Vec<BouquetJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BouquetJson {
    pub stems: Vec<usize>,
    pub roots: Vec<String>,
}

impl BouquetSet {
    pub fn to_json(&self, h: &Hypergraph) -> BouquetSetJson {
        BouquetSetJson {
            bouquets: self
                .bouquets
                .iter()
                .map(|b| BouquetJson {
                    stems: b.stems.clone(),
                    roots: h.edge_labels(b.roots),
                })
                .collect(),
        }
    }

    pub fn from_json(h: &Hypergraph, json: &BouquetSetJson) -> Result<Self> {
        let bouquets = json
            .bouquets
            .iter()
            .map(|b| {
                Ok(Bouquet {
                    stems: b.stems.clone(),
                    roots: h.set_from_labels(&b.roots)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        h.classify_bouquet_set(bouquets)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BouquetInvariants {
    pub d: usize,
    pub d_prime: usize,
    pub d_witness: BouquetSet,
    pub d_prime_witness: BouquetSet,
}

/// Result of the greedy cover construction over a `d'`-optimal bouquet set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverConstruction {
    pub cover: VertexSet,
    pub is_cover: bool,
    pub is_minimal: bool,
    /// Greedy picks dropped afterwards because the rest still covered.
    pub pruned: VertexSet,
    /// An edge met with nothing picked yet and no flower to pick.
    pub stuck_edge: Option<usize>,
}

impl CoverConstruction {
    pub fn succeeded(&self) -> bool {
        self.is_cover && self.is_minimal && self.stuck_edge.is_none()
    }
}

pub(crate) fn is_minimal_cover(h: &Hypergraph, s: VertexSet) -> bool {
    h.is_vertex_cover(s) && s.iter().all(|v| !h.is_vertex_cover(s.without(v)))
}

fn induced_matching(edges: &[VertexSet], idx: &[usize]) -> bool {
    let mut union = VertexSet::EMPTY;
    for &i in idx {
        if edges[i].intersects(union) {
            return false;
        }
        union = union.union(edges[i]);
    }
    edges
        .iter()
        .enumerate()
        .all(|(i, e)| !e.is_subset(union) || idx.contains(&i))
}

/// First choice (in stem order) of one stem per bouquet forming an induced matching.
fn find_induced_stems(
    edges: &[VertexSet],
    bouquets: &[Bouquet],
    chosen: &mut Vec<usize>,
    used: VertexSet,
) -> bool {
    let Some(b) = bouquets.get(chosen.len()) else {
        return induced_matching(edges, chosen);
    };
    for &i in &b.stems {
        if edges[i].intersects(used) {
            continue;
        }
        chosen.push(i);
        if find_induced_stems(edges, bouquets, chosen, used.union(edges[i])) {
            return true;
        }
        chosen.pop();
    }
    false
}

impl Hypergraph {
    pub fn classify_bouquet_set(&self, bouquets: Vec<Bouquet>) -> Result<BouquetSet> {
        if self.is_void() {
            if bouquets.is_empty() {
                return Ok(empty_set());
            }
            return Err(Error::InvalidBouquet("the void hypergraph has no bouquets".into()));
        }
        let mut stems = Vec::new();
        for b in &bouquets {
            b.validate(self)?;
            stems.extend_from_slice(&b.stems);
        }
        stems.sort_unstable();
        if stems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBouquet(
                "an edge is a stem of two bouquets".into(),
            ));
        }
        let flowers = bouquets
            .iter()
            .fold(VertexSet::EMPTY, |f, b| f.union(b.flowers(self)));
        let roots = bouquets
            .iter()
            .fold(VertexSet::EMPTY, |r, b| r.union(b.roots));
        let mut chosen = Vec::with_capacity(bouquets.len());
        let induced_stems = find_induced_stems(self.edges(), &bouquets, &mut chosen, VertexSet::EMPTY)
            .then_some(chosen);
        Ok(BouquetSet {
            strongly_disjoint: induced_stems.is_some(),
            semi_strongly_disjoint: self.is_independent(roots),
            induced_stems,
            bouquets,
            flowers,
            roots,
            stems,
        })
    }

    /// Exact `d` and `d'` with optimal witnesses.
    pub fn bouquet_invariants(&self, limits: &Limits) -> Result<BouquetInvariants> {
        limits::check("edge count for bouquet search", self.edge_count(), limits.bouquet_edges)?;
        limits::check("vertex count for bouquet search", self.n(), limits.subset_vertices)?;
        if self.is_void() || self.is_edgeless() {
            return Ok(BouquetInvariants {
                d: 0,
                d_prime: 0,
                d_witness: empty_set(),
                d_prime_witness: empty_set(),
            });
        }
        let (d, d_bouquets) = strongly_search(self);
        let (d_prime, dp_bouquets) = semi_strongly_search(self);
        let d_witness = self.classify_bouquet_set(d_bouquets)?;
        let d_prime_witness = self.classify_bouquet_set(dp_bouquets)?;
        debug_assert_eq!(d_witness.flowers.len(), d);
        debug_assert_eq!(d_prime_witness.flowers.len(), d_prime);
        Ok(BouquetInvariants {
            d,
            d_prime,
            d_witness,
            d_prime_witness,
        })
    }

    /// `d'` alone, skipping the costlier strongly disjoint search.
    pub fn d_prime(&self, limits: &Limits) -> Result<(usize, BouquetSet)> {
        limits::check("edge count for bouquet search", self.edge_count(), limits.bouquet_edges)?;
        limits::check("vertex count for bouquet search", self.n(), limits.subset_vertices)?;
        if self.is_void() || self.is_edgeless() {
            return Ok((0, empty_set()));
        }
        let (d_prime, bouquets) = semi_strongly_search(self);
        Ok((d_prime, self.classify_bouquet_set(bouquets)?))
    }

    /// The greedy vertex cover inside `F(B)` for a `d'`-optimal,
    /// semi-strongly disjoint `B`: non-stem edges first, then stems, each in
    /// canonical order; every edge not yet hit contributes its least flower.
    /// Redundant picks are then dropped in ascending vertex order.
    pub fn cover_from_bouquets(&self, b: &BouquetSet, limits: &Limits) -> Result<CoverConstruction> {
        if !b.semi_strongly_disjoint {
            return Err(Error::NotSemiStronglyDisjoint);
        }
        let inv = self.bouquet_invariants(limits)?;
        if b.flowers.len() != inv.d_prime {
            return Err(Error::NotOptimalWitness {
                expected: inv.d_prime,
                got: b.flowers.len(),
            });
        }
        Ok(self.greedy_cover(b))
    }

    pub(crate) fn greedy_cover(&self, b: &BouquetSet) -> CoverConstruction {
        let non_stems = (0..self.edge_count()).filter(|i| b.stems.binary_search(i).is_err());
        let order: Vec<usize> = non_stems.chain(b.stems.iter().copied()).collect();
        let mut cover = VertexSet::EMPTY;
        let mut stuck_edge = None;
        for i in order {
            let e = self.edges()[i];
            if e.intersects(cover) {
                continue;
            }
            match e.intersection(b.flowers).min() {
                Some(v) => cover = cover.with(v),
                None => {
                    stuck_edge.get_or_insert(i);
                }
            }
        }
        // the greedy picks cover, but an early pick can become redundant
        let mut pruned = VertexSet::EMPTY;
        if stuck_edge.is_none() {
            for v in cover {
                if self.is_vertex_cover(cover.without(v)) {
                    cover = cover.without(v);
                    pruned = pruned.with(v);
                }
            }
        }
        CoverConstruction {
            cover,
            pruned,
            is_cover: self.is_vertex_cover(cover),
            is_minimal: is_minimal_cover(self, cover),
            stuck_edge,
        }
    }
}

fn empty_set() -> BouquetSet {
    BouquetSet {
        bouquets: Vec::new(),
        flowers: VertexSet::EMPTY,
        roots: VertexSet::EMPTY,
        stems: Vec::new(),
        strongly_disjoint: true,
        semi_strongly_disjoint: true,
        induced_stems: Some(Vec::new()),
    }
}

type Key = Vec<(Vec<usize>, Vec<usize>)>;

fn key_of(bouquets: &[Bouquet]) -> Key {
    let mut k: Key = bouquets
        .iter()
        .map(|b| (b.stems.clone(), b.roots.to_vec()))
        .collect();
    k.sort();
    k
}

/// Keeps the larger flower count, breaking ties by the least key.
fn offer(best: &mut Option<(usize, Key, Vec<Bouquet>)>, size: usize, bouquets: Vec<Bouquet>) {
    let replace = match best {
        None => true,
        Some((s, _, _)) if size != *s => size > *s,
        Some((_, k, _)) => key_of(&bouquets) < *k,
    };
    if replace {
        let k = key_of(&bouquets);
        *best = Some((size, k, bouquets));
    }
}

/// `d'`: maximize over independent root sets `R` and root choices for the
/// edges with two or more vertices in `R`.
fn semi_strongly_search(h: &Hypergraph) -> (usize, Vec<Bouquet>) {
    let edges = h.edges();
    let mut best: Option<(usize, Key, Vec<Bouquet>)> = None;
    offer(&mut best, 0, Vec::new());
    let touched = edges.iter().fold(VertexSet::EMPTY, |u, e| u.union(*e));
    for r in subsets(touched) {
        if r.is_empty() || !h.is_independent(r) {
            continue;
        }
        let meeting: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].intersects(r)).collect();
        // vertices outside R in an edge meeting R are flowers whatever the roots
        let base = meeting
            .iter()
            .fold(VertexSet::EMPTY, |u, &i| u.union(edges[i]))
            .difference(r);
        let upper = base.len()
            + meeting
                .iter()
                .fold(VertexSet::EMPTY, |u, &i| {
                    let inside = edges[i].intersection(r);
                    if inside.len() >= 2 { u.union(inside) } else { u }
                })
                .len();
        if let Some((b, _, _)) = &best {
            if upper < *b {
                continue;
            }
        }
        let shared: Vec<usize> = meeting
            .iter()
            .copied()
            .filter(|&i| edges[i].intersection(r).len() >= 2)
            .collect();
        let mut choice = vec![0usize; shared.len()];
        let mut best_roots: Option<(usize, Vec<usize>)> = None;
        choose_roots(edges, r, &shared, 0, &mut choice, &mut best_roots);
        let (covered, roots) = best_roots.expect("at least one assignment");
        let size = base.len() + covered;
        let bouquets = meeting
            .iter()
            .map(|&i| {
                let root = match shared.iter().position(|&j| j == i) {
                    Some(p) => roots[p],
                    None => edges[i].intersection(r).min().expect("edge meets R"),
                };
                Bouquet {
                    stems: vec![i],
                    roots: VertexSet::singleton(root),
                }
            })
            .collect();
        offer(&mut best, size, bouquets);
    }
    let (size, _, bouquets) = best.expect("empty set offered");
    (size, bouquets)
}

/// Picks a root in `E ∩ R` for each shared edge so that as many vertices of
/// `R` as possible lie in some shared edge not rooted at them. Roots are
/// tried in ascending order and only strict improvements are kept.
fn choose_roots(
    edges: &[VertexSet],
    r: VertexSet,
    shared: &[usize],
    pos: usize,
    choice: &mut Vec<usize>,
    best: &mut Option<(usize, Vec<usize>)>,
) {
    if pos == shared.len() {
        let covered = shared
            .iter()
            .zip(choice.iter())
            .fold(VertexSet::EMPTY, |u, (&i, &root)| {
                u.union(edges[i].intersection(r).without(root))
            })
            .len();
        if best.as_ref().is_none_or(|(b, _)| covered > *b) {
            *best = Some((covered, choice.clone()));
        }
        return;
    }
    for root in edges[shared[pos]].intersection(r) {
        choice[pos] = root;
        choose_roots(edges, r, shared, pos + 1, choice, best);
    }
}

struct StrongSearch<'a> {
    edges: &'a [VertexSet],
    chosen: Vec<usize>,
    candidates: Vec<usize>,
    assigned: Vec<Vec<usize>>,
    common: Vec<VertexSet>,
    union: Vec<VertexSet>,
    best: Option<(usize, Key, Vec<Bouquet>)>,
}

impl StrongSearch<'_> {
    fn best_size(&self) -> Option<usize> {
        self.best.as_ref().map(|b| b.0)
    }

    fn walk(&mut self, pos: usize) {
        if let Some(b) = self.best_size() {
            let reach = self.candidates[pos..]
                .iter()
                .fold(self.union.iter().fold(VertexSet::EMPTY, |u, s| u.union(*s)), |u, &i| {
                    u.union(self.edges[i])
                });
            if reach.len() < b {
                return;
            }
        }
        if pos == self.candidates.len() {
            self.evaluate();
            return;
        }
        let e = self.edges[self.candidates[pos]];
        for k in 0..self.chosen.len() {
            if !self.common[k].intersects(e) {
                continue;
            }
            let (c, u) = (self.common[k], self.union[k]);
            self.common[k] = c.intersection(e);
            self.union[k] = u.union(e);
            self.assigned[k].push(self.candidates[pos]);
            self.walk(pos + 1);
            self.assigned[k].pop();
            self.common[k] = c;
            self.union[k] = u;
        }
        self.walk(pos + 1);
    }

    fn evaluate(&mut self) {
        let multi = self
            .assigned
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_empty())
            .fold(VertexSet::EMPTY, |f, (k, _)| {
                f.union(self.union[k].difference(self.common[k]))
            });
        let mut flowers = multi;
        let mut bouquets = Vec::with_capacity(self.chosen.len());
        for (k, &stem) in self.chosen.iter().enumerate() {
            if self.assigned[k].is_empty() {
                let e = self.edges[stem];
                let root = e.intersection(multi).min().or(e.min()).expect("nonempty edge");
                flowers = flowers.union(e.without(root));
                bouquets.push(Bouquet {
                    stems: vec![stem],
                    roots: VertexSet::singleton(root),
                });
            } else {
                let mut stems = self.assigned[k].clone();
                stems.push(stem);
                stems.sort_unstable();
                bouquets.push(Bouquet {
                    stems,
                    roots: self.common[k],
                });
            }
        }
        offer(&mut self.best, flowers.len(), bouquets);
    }
}

/// `d`: for each induced matching of non-singleton edges, search how the
/// remaining edges join the bouquets grown from its members.
fn strongly_search(h: &Hypergraph) -> (usize, Vec<Bouquet>) {
    let edges = h.edges();
    let mut best: Option<(usize, Key, Vec<Bouquet>)> = None;
    offer(&mut best, 0, Vec::new());
    let mut matchings = Vec::new();
    for u in subsets(h.vertex_set()) {
        let inside: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].is_subset(u)).collect();
        let union = inside.iter().fold(VertexSet::EMPTY, |s, &i| s.union(edges[i]));
        if inside.is_empty() || union != u || inside.iter().any(|&i| edges[i].len() < 2) {
            continue;
        }
        if induced_matching(edges, &inside) {
            matchings.push(inside);
        }
    }
    for chosen in matchings {
        let reach = chosen.iter().fold(VertexSet::EMPTY, |s, &i| s.union(edges[i]));
        let candidates: Vec<usize> = (0..edges.len())
            .filter(|i| !chosen.contains(i) && edges[*i].intersects(reach))
            .collect();
        let mut s = StrongSearch {
            edges,
            common: chosen.iter().map(|&i| edges[i]).collect(),
            union: chosen.iter().map(|&i| edges[i]).collect(),
            assigned: vec![Vec::new(); chosen.len()],
            chosen,
            candidates,
            best: best.take(),
        };
        s.walk(0);
        best = s.best;
    }
    let (size, _, bouquets) = best.expect("empty set offered");
    (size, bouquets)
}
