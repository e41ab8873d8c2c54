//! Reduced homology, graded Betti numbers via Hochster's formula, and the
//! Alexander dual.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::complex::{maximal_sets, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::limits::{self, Limits};
use crate::rank::{rank_mod_p, rank_rational};
use crate::vertex_set::VertexSet;

/// Coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u32),
}

impl Field {
    fn rank(self, rows: &[Vec<i64>]) -> usize {
        match self {
            Field::Rational => rank_rational(rows),
            Field::Prime(p) => rank_mod_p(rows, p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`/`Q` and `f<p>`/`F<p>` for a prime `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidField(s.to_owned());
        match s {
            "q" | "Q" => Ok(Field::Rational),
            _ => {
                let digits = s.strip_prefix(['f', 'F']).ok_or_else(bad)?;
                let p: u32 = digits.parse().map_err(|_| bad())?;
                let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
                if prime && p < 1 << 31 {
                    Ok(Field::Prime(p))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Nonzero reduced homology ranks keyed by dimension (`-1` included).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyProfile {
    pub ranks: BTreeMap<i64, usize>,
}

impl HomologyProfile {
    pub fn rank(&self, d: i64) -> usize {
        self.ranks.get(&d).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    pub n: usize,
    /// Nonzero `β_{i,j}` for `i ≥ 1`.
    pub entries: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `max(j - i)`, or 0 for the zero ideal.
    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    /// `max i`, or 0 for the zero ideal.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            field: self.field,
            entries: self.entries.iter().map(|(&(i, j), &r)| [i, j, r]).collect(),
            reg: self.reg(),
            pd: self.pd(),
        }
    }
}

/// Serialized form: `{"field": "Q", "entries": [[i, j, rank]], "reg": r, "pd": p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiJson {
    pub field: Field,
    pub entries: Vec<[usize; 3]>,
    pub reg: usize,
    pub pd: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegPd {
    pub reg: usize,
    pub pd: usize,
}

/// Reduced homology of the subcomplex on the vertex mask `w` of a complex
/// given by its face table. Returns ranks indexed by `dimension + 1`.
fn restricted_homology(table: &[bool], w: u64, field: Field, index: &mut [u32]) -> Vec<usize> {
    // faces grouped by size
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); w.count_ones() as usize + 1];
    let mut s = w;
    loop {
        if table[s as usize] {
            let k = s.count_ones() as usize;
            index[s as usize] = by_size[k].len() as u32;
            by_size[k].push(s);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & w;
    }
    while by_size.last().is_some_and(|f| f.is_empty()) {
        by_size.pop();
    }
    // boundary ranks: rank[k] for the map from size-k faces to size-(k-1) faces
    let mut ranks = vec![0usize; by_size.len() + 1];
    for k in 1..by_size.len() {
        let mut rows = vec![vec![0i64; by_size[k].len()]; by_size[k - 1].len()];
        for (c, &f) in by_size[k].iter().enumerate() {
            let mut sign = 1;
            let mut bits = f;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let g = f & !(1u64 << v);
                rows[index[g as usize] as usize][c] = sign;
                sign = -sign;
            }
        }
        ranks[k] = field.rank(&rows);
    }
    (0..by_size.len())
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// Reduced homology over `field`, including dimension `-1`.
pub fn reduced_homology(c: &SimplicialComplex, field: Field, limits: &Limits) -> Result<HomologyProfile> {
    let k = c.ground().len();
    limits::check_size("ground set for homology", k, limits.homology_vertices)?;
    let mut profile = HomologyProfile::default();
    if c.is_void() {
        return Ok(profile);
    }
    let table = c.face_table();
    let mut index = vec![0u32; table.len()];
    let ranks = restricted_homology(&table, VertexSet::full(k).bits(), field, &mut index);
    for (k, r) in ranks.into_iter().enumerate() {
        if r > 0 {
            profile.ranks.insert(k as i64 - 1, r);
        }
    }
    Ok(profile)
}

/// Graded Betti numbers of `R / I_Δ` by Hochster's formula:
/// `β_{i,j} = Σ_{|W| = j} dim H̃_{j-i-1}(Δ[W])`.
pub fn betti_table_of_complex(c: &SimplicialComplex, field: Field, limits: &Limits) -> Result<BettiTable> {
    let k = c.ground().len();
    limits::check_size("vertex count for Betti table", k, limits.betti_vertices)?;
    let mut entries = BTreeMap::new();
    if c.is_void() {
        // I_Δ is the unit ideal; R/I_Δ = 0 has no Betti numbers
        return Ok(BettiTable { field, n: k, entries });
    }
    let comp = c.compressed();
    let table = comp.face_table();
    let mut index = vec![0u32; table.len()];
    for w in 1..(1u64 << k) {
        let ws = VertexSet(w);
        let restricted = maximal_sets(comp.facets().iter().map(|f| f.intersection(ws)).collect());
        let apex = restricted.iter().fold(ws, |a, f| a.intersection(*f));
        if !apex.is_empty() {
            // cones are acyclic
            continue;
        }
        let j = w.count_ones() as usize;
        for (s, r) in restricted_homology(&table, w, field, &mut index).into_iter().enumerate() {
            // dimension d = s - 1 = j - i - 1
            if r > 0 && j > s {
                *entries.entry((j - s, j)).or_insert(0) += r;
            }
        }
    }
    Ok(BettiTable { field, n: k, entries })
}

impl Hypergraph {
    pub fn betti_table(&self, field: Field, limits: &Limits) -> Result<BettiTable> {
        limits::check_size("vertex count for Betti table", self.n(), limits.betti_vertices)?;
        betti_table_of_complex(&SimplicialComplex::independence_complex(self), field, limits)
    }

    pub fn reg_and_pd(&self, field: Field, limits: &Limits) -> Result<RegPd> {
        let t = self.betti_table(field, limits)?;
        Ok(RegPd {
            reg: t.reg(),
            pd: t.pd(),
        })
    }
}

impl SimplicialComplex {
    /// `Δ^∨ = {F : V \ F ∉ Δ}`; its facets are the complements of the
    /// minimal non-faces. The full simplex and the void complex are dual.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let ground = self.ground();
        if self.is_void() {
            return SimplicialComplex::simplex(ground);
        }
        let comp = self.compressed();
        let table = comp.face_table();
        let mut facets = Vec::new();
        for (m, &face) in table.iter().enumerate() {
            if face {
                continue;
            }
            let m = m as u64;
            let mut bits = m;
            let mut minimal = true;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                if !table[(m & !(1u64 << v)) as usize] {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                let complement = VertexSet::full(ground.len()).difference(VertexSet(m));
                facets.push(complement.expand(ground));
            }
        }
        SimplicialComplex::from_faces_unchecked(ground, facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexKind;

    fn s(ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied())
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> Hypergraph {
        Hypergraph::with_default_labels(n, edges.iter().map(|&(a, b)| s(&[a, b])).collect())
            .unwrap()
    }

    fn entries(t: &BettiTable) -> Vec<(usize, usize, usize)> {
        t.entries.iter().map(|(&(i, j), &r)| (i, j, r)).collect()
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("f7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("f4".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
        assert_eq!(Field::Prime(3).to_string(), "F3");
    }

    #[test]
    fn homology_examples() {
        let l = Limits::default();
        let circle = SimplicialComplex::new(s(&[0, 1, 2]), vec![s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap();
        let p = reduced_homology(&circle, Field::Rational, &l).unwrap();
        assert_eq!(p.ranks, BTreeMap::from([(1, 1)]));
        let points = SimplicialComplex::new(s(&[0, 1]), vec![s(&[0]), s(&[1])]).unwrap();
        assert_eq!(reduced_homology(&points, Field::Rational, &l).unwrap().ranks, BTreeMap::from([(0, 1)]));
        let e = SimplicialComplex::empty_face_only(s(&[0]));
        assert_eq!(reduced_homology(&e, Field::Rational, &l).unwrap().ranks, BTreeMap::from([(-1, 1)]));
        let v = SimplicialComplex::void(s(&[0]));
        assert!(reduced_homology(&v, Field::Rational, &l).unwrap().ranks.is_empty());
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // six-vertex triangulation of RP^2
        let tri = [
            [0, 1, 3], [0, 1, 4], [0, 2, 3], [0, 2, 5], [0, 4, 5],
            [1, 2, 4], [1, 2, 5], [1, 3, 5], [2, 3, 4], [3, 4, 5],
        ];
        let c = SimplicialComplex::new(
            VertexSet::full(6),
            tri.iter().map(|t| s(t)).collect(),
        )
        .unwrap();
        let l = Limits::default();
        assert!(reduced_homology(&c, Field::Rational, &l).unwrap().ranks.is_empty());
        let f2 = reduced_homology(&c, Field::Prime(2), &l).unwrap();
        assert_eq!(f2.ranks, BTreeMap::from([(1, 1), (2, 1)]));
    }

    #[test]
    fn betti_examples() {
        let l = Limits::default();
        let t = graph(2, &[(0, 1)]).betti_table(Field::Rational, &l).unwrap();
        assert_eq!(entries(&t), vec![(1, 2, 1)]);
        let t = graph(3, &[(0, 1), (1, 2)]).betti_table(Field::Rational, &l).unwrap();
        assert_eq!(entries(&t), vec![(1, 2, 2), (2, 3, 1)]);
        assert_eq!((t.reg(), t.pd()), (1, 2));
        let t = graph(4, &[(0, 1), (2, 3)]).betti_table(Field::Rational, &l).unwrap();
        assert_eq!(entries(&t), vec![(1, 2, 2), (2, 4, 1)]);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.reg_and_pd(Field::Rational, &l).unwrap(), RegPd { reg: 1, pd: 3 });
        let empty = graph(3, &[]);
        assert_eq!(empty.reg_and_pd(Field::Rational, &l).unwrap(), RegPd { reg: 0, pd: 0 });
    }

    #[test]
    fn betti_json_shape() {
        let l = Limits::default();
        let t = graph(3, &[(0, 1), (1, 2)]).betti_table(Field::Rational, &l).unwrap();
        assert_eq!(
            serde_json::to_string(&t.to_json()).unwrap(),
            r#"{"field":"Q","entries":[[1,2,2],[2,3,1]],"reg":1,"pd":2}"#
        );
    }

    #[test]
    fn betti_respects_cap() {
        let l = Limits {
            betti_vertices: 3,
            ..Limits::default()
        };
        assert!(matches!(
            graph(4, &[(0, 1)]).betti_table(Field::Rational, &l),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn alexander_dual_examples() {
        let points = SimplicialComplex::new(s(&[0, 1]), vec![s(&[0]), s(&[1])]).unwrap();
        assert_eq!(points.alexander_dual().kind(), ComplexKind::EmptyFaceOnly);
        let full = SimplicialComplex::simplex(s(&[0, 1, 2]));
        assert!(full.alexander_dual().is_void());
        assert!(SimplicialComplex::void(s(&[0, 1])).alexander_dual().is_simplex());

        let l = Limits::default();
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let dual = SimplicialComplex::independence_complex(&p3).alexander_dual();
        let reg_dual = betti_table_of_complex(&dual, Field::Rational, &l).unwrap().reg();
        assert_eq!(reg_dual + 1, 2);
    }
}
