//! Everything computable about one instance, gathered into one report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bouquets::BouquetSetJson;
use crate::complex::SimplicialComplex;
use crate::decomposition::VertexRecord;
use crate::error::Result;
use crate::homology::{BettiJson, Field};
use crate::hypergraph::{Hypergraph, HypergraphJson, UniformityProfile};
use crate::limits::Limits;
use crate::matchings::EdgeFamily;
use crate::vd::VdOracle;
use crate::verify::{Cmp, Probe, Suite};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralFlags {
    pub graph: bool,
    pub c2_free: bool,
    /// `None` when the cycle search hit its cap.
    pub c5_free: Option<bool>,
    pub three_cycle_condition: bool,
    pub uniformity: Option<UniformityProfile>,
    pub vertex_decomposable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyWitness {
    pub edges: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub weight: i64,
}

impl FamilyWitness {
    fn new(h: &Hypergraph, f: &EdgeFamily) -> Self {
        FamilyWitness {
            edges: f.edges.clone(),
            labels: f.labels(h),
            weight: f.weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingSection {
    pub c: i64,
    pub c_prime: i64,
    pub m: i64,
    pub c_witness: FamilyWitness,
    pub c_prime_witness: FamilyWitness,
    pub m_witness: FamilyWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BouquetSection {
    pub d: usize,
    pub d_prime: usize,
    pub d_witness: BouquetSetJson,
    pub d_prime_witness: BouquetSetJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Codismantling {
    pub order: Vec<String>,
    pub backtracked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChecklistEntry {
    pub hypotheses_hold: bool,
    pub conclusion_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Omission {
    pub section: String,
    pub reason: String,
    /// True when a configured cap caused the omission.
    pub cap: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub instance: HypergraphJson,
    pub flags: StructuralFlags,
    pub matchings: Option<MatchingSection>,
    pub bouquets: Option<BouquetSection>,
    /// Dimension of the independence complex (`None` for the void complex).
    pub dim: Option<i64>,
    pub bigheight: usize,
    pub field: Field,
    pub reg: Option<usize>,
    pub pd: Option<usize>,
    pub betti: Option<BettiJson>,
    pub vertices: Vec<VertexRecord>,
    /// Codominated elimination order, if the hypergraph is codismantlable.
    pub codismantlable: Option<Codismantling>,
    pub theorems: BTreeMap<Suite, ChecklistEntry>,
    pub omitted: Vec<Omission>,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub field: Field,
    pub limits: Limits,
    pub skip_homology: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            field: Field::Rational,
            limits: Limits::default(),
            skip_homology: false,
        }
    }
}

/// Sections that need Hochster sums; skipped wholesale by `skip_homology`.
fn needs_homology(s: Suite) -> bool {
    matches!(
        s,
        Suite::TheoremReg
            | Suite::TheoremPd
            | Suite::TheoremFinal
            | Suite::PropMh
            | Suite::CorollaryReg
            | Suite::RecursionPd
            | Suite::RecursionReg
            | Suite::Homology
    )
}

fn absorb<T>(r: Result<T>, section: &str, omitted: &mut Vec<Omission>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap_exceeded() => {
            omitted.push(Omission {
                section: section.to_owned(),
                reason: e.to_string(),
                cap: true,
            });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

impl InvariantReport {
    pub fn build(h: &Hypergraph, opts: &ReportOptions) -> Result<Self> {
        let limits = opts.limits;
        let mut omitted = Vec::new();
        let mut oracle = VdOracle::new();
        let delta = SimplicialComplex::independence_complex(h);
        let vertex_decomposable = oracle.is_vertex_decomposable(&delta);
        let c5_free = absorb(h.find_cycle_checked(5, &limits).map(|c| c.is_none()), "c5_free", &mut omitted)?;
        let flags = StructuralFlags {
            graph: h.is_graph(),
            c2_free: h.is_c2_free(),
            c5_free,
            three_cycle_condition: h.three_cycle_condition(),
            uniformity: h.uniformity_profile().ok(),
            vertex_decomposable,
        };

        let matchings = absorb(h.matching_invariants(&limits), "matchings", &mut omitted)?.map(|m| MatchingSection {
            c: m.c,
            c_prime: m.c_prime,
            m: m.m,
            c_witness: FamilyWitness::new(h, &m.c_witness),
            c_prime_witness: FamilyWitness::new(h, &m.c_prime_witness),
            m_witness: FamilyWitness::new(h, &m.m_witness),
        });
        let bouquets = absorb(h.bouquet_invariants(&limits), "bouquets", &mut omitted)?.map(|b| BouquetSection {
            d: b.d,
            d_prime: b.d_prime,
            d_witness: b.d_witness.to_json(h),
            d_prime_witness: b.d_prime_witness.to_json(h),
        });

        let betti = if opts.skip_homology {
            omitted.push(Omission {
                section: "betti".into(),
                reason: "skipped on request".into(),
                cap: false,
            });
            None
        } else {
            absorb(h.betti_table(opts.field, &limits), "betti", &mut omitted)?
        };

        let vertices = if h.is_void() {
            Vec::new()
        } else {
            h.classify_vertices(crate::decomposition::MainHypotheses {
                c5_free: c5_free.unwrap_or(false),
                three_cycle_condition: flags.three_cycle_condition,
            })
            .vertices
        };
        let codismantlable = h.is_codismantlable().map(|o| Codismantling {
            order: o.order.iter().map(|&v| h.label(v).to_owned()).collect(),
            backtracked: o.backtracked,
        });

        let mut theorems = BTreeMap::new();
        let mut probe = Probe::new(h, limits, opts.field, Cmp::default(), &mut oracle);
        for s in Suite::ALL {
            if opts.skip_homology && needs_homology(s) {
                continue;
            }
            if let Some(v) = absorb(probe.evaluate(s), s.name(), &mut omitted)? {
                theorems.insert(
                    s,
                    ChecklistEntry {
                        hypotheses_hold: v.hypotheses_hold,
                        conclusion_holds: v.conclusion_holds,
                    },
                );
            }
        }

        Ok(InvariantReport {
            instance: h.to_json(),
            flags,
            matchings,
            bouquets,
            dim: delta.dimension(),
            bigheight: h.minimal_vertex_covers().bigheight,
            field: opts.field,
            reg: betti.as_ref().map(|t| t.reg()),
            pd: betti.as_ref().map(|t| t.pd()),
            betti: betti.map(|t| t.to_json()),
            vertices,
            codismantlable,
            theorems,
            omitted,
        })
    }

    /// Statements whose hypotheses hold but whose conclusion fails.
    pub fn violated(&self) -> Vec<Suite> {
        self.theorems
            .iter()
            .filter(|(_, e)| e.hypotheses_hold && e.conclusion_holds == Some(false))
            .map(|(s, _)| *s)
            .collect()
    }

    pub fn capped(&self) -> bool {
        self.omitted.iter().any(|o| o.cap)
    }

    /// 0 clean, 1 a statement is violated, 3 a cap cut the report short.
    pub fn exit_status(&self) -> i32 {
        if !self.violated().is_empty() {
            1
        } else if self.capped() {
            3
        } else {
            0
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human-readable digest.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let n = self.instance.vertices.len();
        let _ = writeln!(s, "{n} vertices, {} edges", self.instance.edges.len());
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        if let Some(m) = &self.matchings {
            let _ = writeln!(s, "c = {}, c' = {}, m = {}", m.c, m.c_prime, m.m);
        }
        if let Some(b) = &self.bouquets {
            let _ = writeln!(s, "d = {}, d' = {}", b.d, b.d_prime);
        }
        let _ = writeln!(
            s,
            "dim = {}, bigheight = {}, reg = {}, pd = {} over {}",
            opt(self.dim.map(|d| d.to_string())),
            self.bigheight,
            opt(self.reg.map(|d| d.to_string())),
            opt(self.pd.map(|d| d.to_string())),
            self.field
        );
        let _ = writeln!(s, "vertex decomposable: {}", self.flags.vertex_decomposable);
        for v in self.violated() {
            let _ = writeln!(s, "VIOLATED: {v}");
        }
        for o in &self.omitted {
            let _ = writeln!(s, "omitted {}: {}", o.section, o.reason);
        }
        s
    }
}
