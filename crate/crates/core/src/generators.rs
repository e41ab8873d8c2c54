//! Instance sources: exhaustive labeled graphs, seeded random hypergraphs and
//! a few named examples, plus the hypothesis filters used by the suites.
//!
//! Every source is index-addressable: instance `i` can be rebuilt from the
//! spec and `i` alone, which is what lets suites shard work across threads
//! without changing the stream.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits;
use crate::vertex_set::VertexSet;

/// Largest `n` for exhaustive graph enumeration.
pub const MAX_ENUMERATED_VERTICES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    AllGraphs,
    RandomHypergraph,
    Named,
}

/// A reproducible instance family; serialized as the CLI `--family` argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    /// Vertex count; the upper end of the range when `min_n` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edge_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_edge_size: Option<usize>,
    /// Exact edge count for random instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<usize>,
    /// Edge count drawn uniformly from `1..=max_edge_count`; generation
    /// stops early when the antichain rule leaves no room.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edge_count: Option<usize>,
    /// Each admissible vertex subset becomes an edge independently.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability: Option<f64>,
    /// Number of random instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub filters: Vec<String>,
    /// Keep one graph per isomorphism class (exhaustive graphs only).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub dedup: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    C2Free,
    C5Free,
    ThreeCycleCondition,
    VertexDecomposable,
    DUniformStrong,
    Graph,
}

impl Filter {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "c2_free" => Filter::C2Free,
            "c5_free" => Filter::C5Free,
            "three_cycle_condition" => Filter::ThreeCycleCondition,
            "vertex_decomposable" => Filter::VertexDecomposable,
            "d_uniform_strong" => Filter::DUniformStrong,
            "graph" => Filter::Graph,
            _ => return Err(Error::UnknownFilter(name.to_owned())),
        })
    }

    pub fn accepts(self, h: &Hypergraph) -> bool {
        match self {
            Filter::C2Free => h.is_c2_free(),
            Filter::C5Free => h.is_c5_free(),
            Filter::ThreeCycleCondition => h.three_cycle_condition(),
            Filter::VertexDecomposable => h.is_vertex_decomposable(),
            Filter::DUniformStrong => h.is_uniform_strong(),
            Filter::Graph => h.is_graph(),
        }
    }
}

pub fn parse_filters(names: &[String]) -> Result<Vec<Filter>> {
    names.iter().map(|n| Filter::parse(n)).collect()
}

/// Lazily keeps the instances passing every filter.
pub fn filter_stream<I>(src: I, filters: &[String]) -> Result<impl Iterator<Item = Hypergraph>>
where
    I: IntoIterator<Item = Hypergraph>,
{
    let filters = parse_filters(filters)?;
    Ok(src
        .into_iter()
        .filter(move |h| filters.iter().all(|f| f.accepts(h))))
}

fn pairs(n: usize) -> Vec<VertexSet> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push(VertexSet::from_ids([a, b]));
        }
    }
    out
}

fn graph_from_mask(n: usize, pairs: &[VertexSet], mask: u64) -> Hypergraph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, e)| *e)
        .collect();
    Hypergraph::with_default_labels(n, edges).expect("graphs are simple")
}

/// All `2^(n choose 2)` labeled graphs on `n` vertices. Graph `m` contains
/// the `k`-th vertex pair (in lexicographic pair order) when bit `k` of `m`
/// is set.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Hypergraph>> {
    if n == 0 {
        return Err(Error::InvalidFamily("graph enumeration needs n ≥ 1".into()));
    }
    limits::check_size("vertex count for graph enumeration", n, MAX_ENUMERATED_VERTICES)?;
    let p = pairs(n);
    let total = 1u64 << p.len();
    Ok((0..total).map(move |m| graph_from_mask(n, &p, m)))
}

/// Smallest edge mask over all vertex relabelings.
pub fn canonical_graph_mask(n: usize, mask: u64) -> u64 {
    let p = pairs(n);
    let mut index = vec![vec![0usize; n]; n];
    for (k, e) in p.iter().enumerate() {
        let v = e.to_vec();
        index[v[0]][v[1]] = k;
        index[v[1]][v[0]] = k;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut m = 0u64;
        for (k, e) in p.iter().enumerate() {
            if mask >> k & 1 == 1 {
                let v = e.to_vec();
                m |= 1 << index[perm[v[0]]][perm[v[1]]];
            }
        }
        best = best.min(m);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn named(name: &str) -> Result<Hypergraph> {
    let edges: &[&[usize]] = match name {
        "h1" => &[&[0, 1, 2], &[1, 2, 3], &[3, 4, 5]],
        "h2" => &[&[0, 1, 2], &[1, 2, 3], &[3, 4]],
        "star" => &[&[0, 1], &[0, 2], &[0, 3]],
        "p3" => &[&[0, 1], &[1, 2]],
        "c4" => &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
        "c5" => &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[0, 4]],
        "single_edge" => &[&[0, 1]],
        "two_edges" => &[&[0, 1], &[2, 3]],
        "fan" => &[&[0, 1, 2], &[1, 2, 3], &[1, 2, 4]],
        _ => return Err(Error::InvalidFamily(format!("unknown named instance `{name}`"))),
    };
    let n = edges.iter().flat_map(|e| e.iter()).max().map_or(0, |m| m + 1);
    Hypergraph::with_default_labels(
        n,
        edges.iter().map(|e| VertexSet::from_ids(e.iter().copied())).collect(),
    )
}

impl FamilySpec {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let spec: FamilySpec =
            serde_json::from_str(s).map_err(|e| Error::InvalidFamily(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    fn vertex_range(&self) -> Result<(usize, usize)> {
        let n = self
            .n
            .ok_or_else(|| Error::InvalidFamily("`n` is required".into()))?;
        let lo = self.min_n.unwrap_or(n);
        if lo > n || lo == 0 {
            return Err(Error::InvalidFamily(format!("bad vertex range {lo}..={n}")));
        }
        Ok((lo, n))
    }

    fn edge_sizes(&self, n: usize) -> (usize, usize) {
        let lo = self.min_edge_size.unwrap_or(2);
        let hi = self.max_edge_size.unwrap_or(3).min(n);
        (lo, hi)
    }

    pub fn validate(&self) -> Result<()> {
        parse_filters(&self.filters)?;
        match self.kind {
            FamilyKind::AllGraphs => {
                let (_, hi) = self.vertex_range()?;
                limits::check_size("vertex count for graph enumeration", hi, MAX_ENUMERATED_VERTICES)?;
            }
            FamilyKind::RandomHypergraph => {
                let (_, hi) = self.vertex_range()?;
                limits::check_size("vertex count", hi, crate::vertex_set::MAX_VERTICES)?;
                if self.count.is_none() {
                    return Err(Error::InvalidFamily("`count` is required".into()));
                }
                let modes = [
                    self.edge_count.is_some(),
                    self.max_edge_count.is_some(),
                    self.probability.is_some(),
                ];
                if modes.iter().filter(|&&m| m).count() != 1 {
                    return Err(Error::InvalidFamily(
                        "give exactly one of `edge_count`, `max_edge_count`, `probability`".into(),
                    ));
                }
                if let Some(p) = self.probability {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(Error::InvalidFamily("probability outside [0, 1]".into()));
                    }
                }
                let (lo, hi) = self.edge_sizes(hi);
                if lo == 0 || lo > hi {
                    return Err(Error::InvalidFamily(format!("bad edge size range {lo}..={hi}")));
                }
            }
            FamilyKind::Named => {
                let name = self
                    .name
                    .as_deref()
                    .ok_or_else(|| Error::InvalidFamily("`name` is required".into()))?;
                named(name)?;
            }
        }
        Ok(())
    }

    /// Number of raw (unfiltered) instances.
    pub fn len(&self) -> Result<usize> {
        Ok(match self.kind {
            FamilyKind::AllGraphs => {
                let (lo, hi) = self.vertex_range()?;
                (lo..=hi).map(|n| 1usize << (n * (n - 1) / 2)).sum()
            }
            FamilyKind::RandomHypergraph => self.count.unwrap_or(0),
            FamilyKind::Named => 1,
        })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.len()? == 0)
    }

    /// Raw instance `index`, before filters. With `dedup`, non-canonical
    /// graphs come back as `None`.
    pub fn instance(&self, index: usize) -> Result<Option<Hypergraph>> {
        match self.kind {
            FamilyKind::AllGraphs => {
                let (lo, hi) = self.vertex_range()?;
                let mut rest = index;
                for n in lo..=hi {
                    let block = 1usize << (n * (n - 1) / 2);
                    if rest < block {
                        let mask = rest as u64;
                        if self.dedup && canonical_graph_mask(n, mask) != mask {
                            return Ok(None);
                        }
                        return Ok(Some(graph_from_mask(n, &pairs(n), mask)));
                    }
                    rest -= block;
                }
                Err(Error::InvalidFamily(format!("instance {index} out of range")))
            }
            FamilyKind::RandomHypergraph => self.random_instance(index).map(Some),
            FamilyKind::Named => named(self.name.as_deref().unwrap_or_default()).map(Some),
        }
    }

    /// Instance `index` after filters.
    pub fn filtered_instance(&self, index: usize) -> Result<Option<Hypergraph>> {
        let filters = parse_filters(&self.filters)?;
        Ok(self
            .instance(index)?
            .filter(|h| filters.iter().all(|f| f.accepts(h))))
    }

    /// The filtered stream in index order.
    pub fn instances(&self) -> Result<impl Iterator<Item = Result<Hypergraph>> + '_> {
        self.validate()?;
        let len = self.len()?;
        Ok((0..len).filter_map(move |i| self.filtered_instance(i).transpose()))
    }

    fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    /// Random instance `index`; see [`random_hypergraph`].
    pub fn random_instance(&self, index: usize) -> Result<Hypergraph> {
        let mut rng = self.rng(index);
        let (lo, hi) = self.vertex_range()?;
        let n = rng.gen_range(lo..=hi);
        let (smin, smax) = self.edge_sizes(n);
        if smin > smax {
            return Ok(Hypergraph::with_default_labels(n, Vec::new())?);
        }
        let edges = if let Some(p) = self.probability {
            let mut picked = Vec::new();
            for mask in 1u64..(1u64 << n) {
                let k = mask.count_ones() as usize;
                if (smin..=smax).contains(&k) && rng.gen_bool(p) {
                    picked.push(VertexSet(mask));
                }
            }
            let mut edges = Vec::new();
            for e in picked {
                place(&mut edges, e);
            }
            edges
        } else {
            // an exact count must be met; a drawn count is a best effort
            let (target, exact) = match (self.edge_count, self.max_edge_count) {
                (Some(t), _) => (t, true),
                (None, Some(m)) => (rng.gen_range(1..=m.max(1)), false),
                _ => (0, true),
            };
            let mut edges = Vec::new();
            let cap = 64 * target + 64;
            let mut attempts = 0;
            while edges.len() < target {
                if attempts == cap {
                    if !exact {
                        break;
                    }
                    return Err(Error::Unsatisfiable {
                        requested: target,
                        placed: edges.len(),
                    });
                }
                attempts += 1;
                let k = rng.gen_range(smin..=smax);
                let e = VertexSet::from_ids(sample(&mut rng, n, k).into_iter());
                place(&mut edges, e);
            }
            edges
        };
        Hypergraph::with_default_labels(n, edges)
    }
}

/// Adds `e` under the antichain rule: duplicates and supersets of existing
/// edges are dropped, and existing supersets of `e` are discarded.
fn place(edges: &mut Vec<VertexSet>, e: VertexSet) {
    if edges.iter().any(|f| f.is_subset(e)) {
        return;
    }
    edges.retain(|f| !e.is_subset(*f));
    edges.push(e);
}

/// One random hypergraph from a `random_hypergraph` spec (instance 0).
pub fn random_hypergraph(spec: &FamilySpec) -> Result<Hypergraph> {
    if spec.kind != FamilyKind::RandomHypergraph {
        return Err(Error::InvalidFamily("expected kind random_hypergraph".into()));
    }
    let mut spec = spec.clone();
    spec.count.get_or_insert(1);
    spec.validate()?;
    spec.random_instance(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_spec(edge_count: usize, seed: u64) -> FamilySpec {
        FamilySpec {
            kind: FamilyKind::RandomHypergraph,
            n: Some(6),
            min_n: None,
            max_edge_size: Some(3),
            min_edge_size: None,
            edge_count: Some(edge_count),
            max_edge_count: None,
            probability: None,
            count: Some(1),
            seed,
            filters: Vec::new(),
            dedup: false,
            name: None,
        }
    }

    #[test]
    fn graph_counts() {
        assert_eq!(enumerate_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(2).unwrap().count(), 2);
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        assert!(enumerate_graphs(8).is_err());
        assert!(enumerate_graphs(0).is_err());
    }

    #[test]
    fn graph_order_is_binary_counting_over_pairs() {
        let g: Vec<_> = enumerate_graphs(3).unwrap().collect();
        assert!(g[0].is_edgeless());
        assert_eq!(g[1].edges(), &[VertexSet::from_ids([0, 1])]);
        assert_eq!(g[2].edges(), &[VertexSet::from_ids([0, 2])]);
        assert_eq!(g[7].edge_count(), 3);
    }

    #[test]
    fn dedup_leaves_isomorphism_classes() {
        let spec = FamilySpec::from_json_str(r#"{"kind":"all_graphs","n":4,"dedup":true}"#).unwrap();
        assert_eq!(spec.instances().unwrap().count(), 11);
        let spec = FamilySpec::from_json_str(r#"{"kind":"all_graphs","n":5,"dedup":true}"#).unwrap();
        assert_eq!(spec.instances().unwrap().count(), 34);
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_hypergraph(&random_spec(4, 9)).unwrap();
        let b = random_hypergraph(&random_spec(4, 9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 4);
        let e = random_hypergraph(&random_spec(0, 9)).unwrap();
        assert!(e.is_edgeless());
        assert_eq!(e.n(), 6);
    }

    #[test]
    fn impossible_edge_count_is_unsatisfiable() {
        let mut spec = random_spec(5, 1);
        spec.n = Some(3);
        spec.max_edge_size = Some(2);
        assert!(matches!(
            random_hypergraph(&spec),
            Err(Error::Unsatisfiable { requested: 5, .. })
        ));
    }

    #[test]
    fn filters() {
        let c5_free = filter_stream(enumerate_graphs(4).unwrap(), &["c5_free".into()]).unwrap();
        assert_eq!(c5_free.count(), 64);
        let vd: Vec<_> =
            filter_stream(enumerate_graphs(5).unwrap(), &["vertex_decomposable".into()])
                .unwrap()
                .collect();
        let c5 = named("c5").unwrap();
        assert!(vd.contains(&c5));
        assert!(matches!(
            filter_stream(enumerate_graphs(2).unwrap(), &["nope".into()]).err(),
            Some(Error::UnknownFilter(_))
        ));
        let spec = FamilySpec::from_json_str(
            r#"{"kind":"random_hypergraph","n":6,"max_edge_count":5,"count":50,"seed":3,"filters":["d_uniform_strong"]}"#,
        )
        .unwrap();
        for h in spec.instances().unwrap() {
            assert!(h.unwrap().uniformity_profile().unwrap().strong_intersection);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(FamilySpec::from_json_str(r#"{"kind":"all_graphs"}"#).is_err());
        assert!(FamilySpec::from_json_str(r#"{"kind":"all_graphs","n":3,"bogus":1}"#).is_err());
        assert!(FamilySpec::from_json_str(
            r#"{"kind":"random_hypergraph","n":5,"count":3,"edge_count":2,"probability":0.5}"#
        )
        .is_err());
        assert!(FamilySpec::from_json_str(r#"{"kind":"named","name":"h1"}"#).is_ok());
        assert!(FamilySpec::from_json_str(r#"{"kind":"named","name":"zz"}"#).is_err());
    }
}
