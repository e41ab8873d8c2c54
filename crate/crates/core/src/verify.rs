//! Theorem checks on single instances and over whole families.
//!
//! Each [`Suite`] names one statement. Evaluating it on an instance yields a
//! [`Verdict`]: whether the hypotheses hold and, if so, the list of numeric
//! or set comparisons that make up the conclusion. [`verify`] runs a suite
//! over a [`FamilySpec`] in parallel and collects every violation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bouquets::{BouquetInvariants, BouquetSet};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::generators::{Filter, FamilyKind, FamilySpec};
use crate::homology::{betti_table_of_complex, BettiTable, Field};
use crate::hypergraph::{Hypergraph, HypergraphJson, VertexId};
use crate::limits::Limits;
use crate::matchings::MatchingInvariants;
use crate::vd::VdOracle;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    TheoremMain,
    LemmaCodominated,
    TheoremReg,
    TheoremPd,
    TheoremFinal,
    LemmaDim,
    GraphCc,
    PropMh,
    PropCd,
    LemmasDprime,
    CorollaryCodis,
    CorollaryReg,
    RecursionPd,
    RecursionReg,
    Homology,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::TheoremMain,
        Suite::LemmaCodominated,
        Suite::TheoremReg,
        Suite::TheoremPd,
        Suite::TheoremFinal,
        Suite::LemmaDim,
        Suite::GraphCc,
        Suite::PropMh,
        Suite::PropCd,
        Suite::LemmasDprime,
        Suite::CorollaryCodis,
        Suite::CorollaryReg,
        Suite::RecursionPd,
        Suite::RecursionReg,
        Suite::Homology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremMain => "theorem-main",
            Suite::LemmaCodominated => "lemma-codominated",
            Suite::TheoremReg => "theorem-reg",
            Suite::TheoremPd => "theorem-pd",
            Suite::TheoremFinal => "theorem-final",
            Suite::LemmaDim => "lemma-dim",
            Suite::GraphCc => "graph-cc",
            Suite::PropMh => "prop-mh",
            Suite::PropCd => "prop-cd",
            Suite::LemmasDprime => "lemmas-dprime",
            Suite::CorollaryCodis => "corollary-codis",
            Suite::CorollaryReg => "corollary-reg",
            Suite::RecursionPd => "recursion-pd",
            Suite::RecursionReg => "recursion-reg",
            Suite::Homology => "homology",
        }
    }

    /// Statement in one line, for reports.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::TheoremMain => {
                "C5-free with every 3-cycle made of 2-edges: shedding vertices = codominated vertices"
            }
            Suite::LemmaCodominated => "codominated vertices are shedding vertices",
            Suite::TheoremReg => "(C2,C5)-free vertex decomposable: reg <= c' <= dim + 1",
            Suite::TheoremPd => "vertex decomposable: pd <= d'",
            Suite::TheoremFinal => {
                "optimal semi-strongly disjoint B: F(B) covers; 2-stems: minimal cover and the bigheight chain; VD: bigheight = pd = d'"
            }
            Suite::LemmaDim => "c <= c' <= dim + 1",
            Suite::GraphCc => "graphs: c = c'",
            Suite::PropMh => "d-uniform strong intersection: c <= c' <= m, maximal matchings are 2-collages, c <= reg <= m",
            Suite::PropCd => "c <= d <= d', and c' <= d' when C2-free",
            Suite::LemmasDprime => "shedding x: d'(H/x) <= d'(H) and d'(H\\x) + 1 <= d'(H)",
            Suite::CorollaryCodis => "C5-free vertex decomposable with every 3-cycle made of 2-edges: codismantlable",
            Suite::CorollaryReg => "C5-free vertex decomposable: reg = c for graphs, c <= reg <= c' <= d' when C2-free",
            Suite::RecursionPd => "shedding x: pd(H) = max(pd(H\\x) + 1, pd(H/x))",
            Suite::RecursionReg => "shedding x: reg(H) <= max(reg(H\\x), reg(H/x) + 1)",
            Suite::Homology => "beta_1j counts edges of size j, Terai duality, bigheight <= pd, c <= reg",
        }
    }

    /// Statements checked alongside every other suite.
    pub const AMBIENT: [Suite; 3] = [Suite::LemmaDim, Suite::PropCd, Suite::LemmasDprime];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_owned()))
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Set(Vec<String>),
    Flag(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Eq,
    Subset,
}

impl Relation {
    fn eval(self, l: &Value, r: &Value) -> bool {
        match (self, l, r) {
            (Relation::Le, Value::Int(a), Value::Int(b)) => a <= b,
            (Relation::Eq, a, b) => a == b,
            (Relation::Subset, Value::Set(a), Value::Set(b)) => a.iter().all(|x| b.contains(x)),
            _ => false,
        }
    }
}

/// Relation evaluator. The planted variant inverts every verdict, so a run
/// with it must report counterexamples on any applicable instance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Cmp {
    planted_fault: bool,
}

impl Cmp {
    pub fn planted() -> Self {
        Cmp { planted_fault: true }
    }

    pub fn is_planted(self) -> bool {
        self.planted_fault
    }

    pub fn eval(self, rel: Relation, l: &Value, r: &Value) -> bool {
        rel.eval(l, r) != self.planted_fault
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub name: String,
    pub value: Value,
}

/// One comparison inside a conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub statement: String,
    /// Vertex the check is about, for per-vertex statements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    pub left: Term,
    pub relation: Relation,
    pub right: Term,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub theorem: Suite,
    pub hypotheses: BTreeMap<&'static str, bool>,
    pub hypotheses_hold: bool,
    /// Switches for the parts of a statement that carry extra conditions.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub conditions: BTreeMap<&'static str, bool>,
    /// `None` when the hypotheses fail and nothing was evaluated.
    pub conclusion_holds: Option<bool>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
}

impl Verdict {
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

struct Sink {
    cmp: Cmp,
    theorem: Suite,
    hypotheses: BTreeMap<&'static str, bool>,
    conditions: BTreeMap<&'static str, bool>,
    checks: Vec<Check>,
    findings: Vec<String>,
    at: Option<String>,
}

impl Sink {
    fn new(theorem: Suite, cmp: Cmp) -> Self {
        Sink {
            cmp,
            theorem,
            hypotheses: BTreeMap::new(),
            conditions: BTreeMap::new(),
            checks: Vec::new(),
            findings: Vec::new(),
            at: None,
        }
    }

    fn hypothesis(&mut self, name: &'static str, v: bool) -> bool {
        self.hypotheses.insert(name, v);
        v
    }

    fn condition(&mut self, name: &'static str, v: bool) -> bool {
        self.conditions.insert(name, v);
        v
    }

    fn hold(&self) -> bool {
        self.hypotheses.values().all(|&v| v)
    }

    fn push(&mut self, statement: &str, l: (&str, Value), rel: Relation, r: (&str, Value)) {
        let holds = self.cmp.eval(rel, &l.1, &r.1);
        self.checks.push(Check {
            statement: statement.to_owned(),
            at: self.at.clone(),
            left: Term {
                name: l.0.to_owned(),
                value: l.1,
            },
            relation: rel,
            right: Term {
                name: r.0.to_owned(),
                value: r.1,
            },
            holds,
        });
    }

    fn le(&mut self, statement: &str, l: (&str, i64), r: (&str, i64)) {
        self.push(statement, (l.0, Value::Int(l.1)), Relation::Le, (r.0, Value::Int(r.1)));
    }

    fn eq(&mut self, statement: &str, l: (&str, i64), r: (&str, i64)) {
        self.push(statement, (l.0, Value::Int(l.1)), Relation::Eq, (r.0, Value::Int(r.1)));
    }

    fn truth(&mut self, statement: &str, name: &str, v: bool) {
        self.push(statement, (name, Value::Flag(v)), Relation::Eq, ("expected", Value::Flag(true)));
    }

    fn sets(&mut self, statement: &str, rel: Relation, l: (&str, Vec<String>), r: (&str, Vec<String>)) {
        self.push(statement, (l.0, Value::Set(l.1)), rel, (r.0, Value::Set(r.1)));
    }

    fn finish(self, evaluated: bool) -> Verdict {
        let hypotheses_hold = self.hold();
        Verdict {
            theorem: self.theorem,
            conclusion_holds: evaluated.then(|| self.checks.iter().all(|c| c.holds)),
            hypotheses_hold,
            hypotheses: self.hypotheses,
            conditions: self.conditions,
            checks: self.checks,
            findings: self.findings,
        }
    }
}

/// Lazily computed invariants of one instance, shared by every suite run
/// on it.
pub struct Probe<'a> {
    h: &'a Hypergraph,
    limits: Limits,
    field: Field,
    cmp: Cmp,
    oracle: &'a mut VdOracle,
    delta: Option<SimplicialComplex>,
    vd: Option<bool>,
    c5_free: Option<bool>,
    matching: Option<MatchingInvariants>,
    bouquets: Option<BouquetInvariants>,
    d_prime: Option<(usize, BouquetSet)>,
    betti: Option<BettiTable>,
    shedding: Option<Vec<VertexId>>,
}

impl<'a> Probe<'a> {
    pub fn new(h: &'a Hypergraph, limits: Limits, field: Field, cmp: Cmp, oracle: &'a mut VdOracle) -> Self {
        Probe {
            h,
            limits,
            field,
            cmp,
            oracle,
            delta: None,
            vd: None,
            c5_free: None,
            matching: None,
            bouquets: None,
            d_prime: None,
            betti: None,
            shedding: None,
        }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.h
    }

    fn delta(&mut self) -> &SimplicialComplex {
        self.delta
            .get_or_insert_with(|| SimplicialComplex::independence_complex(self.h))
    }

    pub fn vertex_decomposable(&mut self) -> bool {
        if let Some(v) = self.vd {
            return v;
        }
        let delta = self.delta().clone();
        let v = self.oracle.is_vertex_decomposable(&delta);
        self.vd = Some(v);
        v
    }

    pub fn c5_free(&mut self) -> Result<bool> {
        if let Some(v) = self.c5_free {
            return Ok(v);
        }
        let v = self.h.find_cycle_checked(5, &self.limits)?.is_none();
        self.c5_free = Some(v);
        Ok(v)
    }

    /// `dim Δ + 1`, the largest independent set size.
    fn dim_plus_one(&mut self) -> i64 {
        self.delta().dimension().map_or(0, |d| d + 1)
    }

    pub fn matching(&mut self) -> Result<&MatchingInvariants> {
        if self.matching.is_none() {
            self.matching = Some(self.h.matching_invariants(&self.limits)?);
        }
        Ok(self.matching.as_ref().expect("just set"))
    }

    pub fn bouquets(&mut self) -> Result<&BouquetInvariants> {
        if self.bouquets.is_none() {
            self.bouquets = Some(self.h.bouquet_invariants(&self.limits)?);
        }
        Ok(self.bouquets.as_ref().expect("just set"))
    }

    fn d_prime(&mut self) -> Result<usize> {
        if let Some(b) = &self.bouquets {
            return Ok(b.d_prime);
        }
        if self.d_prime.is_none() {
            self.d_prime = Some(self.h.d_prime(&self.limits)?);
        }
        Ok(self.d_prime.as_ref().expect("just set").0)
    }

    pub fn betti(&mut self) -> Result<&BettiTable> {
        if self.betti.is_none() {
            self.betti = Some(self.h.betti_table(self.field, &self.limits)?);
        }
        Ok(self.betti.as_ref().expect("just set"))
    }

    pub fn shedding_vertices(&mut self) -> Vec<VertexId> {
        if self.shedding.is_none() {
            let n = self.h.n();
            let delta = self.delta();
            let s = (0..n).filter(|&x| delta.is_shedding_unchecked(x)).collect();
            self.shedding = Some(s);
        }
        self.shedding.clone().expect("just set")
    }

    fn codominated_vertices(&self) -> Vec<VertexId> {
        (0..self.h.n())
            .filter(|&x| matches!(self.h.is_codominated(x), Ok(Some(_))))
            .collect()
    }

    fn vertex_labels(&self, vs: &[VertexId]) -> Vec<String> {
        vs.iter().map(|&v| self.h.label(v).to_owned()).collect()
    }

    /// Evaluates one statement on this instance.
    pub fn evaluate(&mut self, suite: Suite) -> Result<Verdict> {
        let mut sink = Sink::new(suite, self.cmp);
        let h = self.h;
        let no_singletons = !h.is_void() && !h.has_singleton_edge();
        match suite {
            Suite::TheoremMain => {
                let c5 = self.c5_free()?;
                sink.hypothesis("c5_free", c5);
                sink.hypothesis("three_cycle_condition", h.three_cycle_condition());
                if !sink.hold() {
                    return Ok(sink.finish(false));
                }
                let shed = self.shedding_vertices();
                let codom = self.codominated_vertices();
                sink.sets(
                    "shedding vertices = codominated vertices",
                    Relation::Eq,
                    ("shedding", self.vertex_labels(&shed)),
                    ("codominated", self.vertex_labels(&codom)),
                );
            }
            Suite::LemmaCodominated => {
                let shed = self.shedding_vertices();
                let codom = self.codominated_vertices();
                sink.sets(
                    "codominated vertices are shedding",
                    Relation::Subset,
                    ("codominated", self.vertex_labels(&codom)),
                    ("shedding", self.vertex_labels(&shed)),
                );
            }
            Suite::TheoremReg => {
                sink.hypothesis("c2_free", h.is_c2_free());
                let c5 = self.c5_free()?;
                sink.hypothesis("c5_free", c5);
                if !sink.hold() {
                    return Ok(sink.finish(false));
                }
                if !sink.hypothesis("vertex_decomposable", self.vertex_decomposable()) {
                    return Ok(sink.finish(false));
                }
                let reg = self.betti()?.reg() as i64;
                let cp = self.matching()?.c_prime;
                let dim1 = self.dim_plus_one();
                sink.le("reg <= c'", ("reg", reg), ("c'", cp));
                sink.le("c' <= dim + 1", ("c'", cp), ("dim+1", dim1));
            }
            Suite::TheoremPd => {
                sink.hypothesis("no_singleton_edges", no_singletons);
                if !sink.hypothesis("vertex_decomposable", self.vertex_decomposable()) || !sink.hold() {
                    return Ok(sink.finish(false));
                }
                let pd = self.betti()?.pd() as i64;
                let dp = self.d_prime()? as i64;
                sink.le("pd <= d'", ("pd", pd), ("d'", dp));
            }
            Suite::TheoremFinal => {
                if !sink.hypothesis("no_singleton_edges", no_singletons) {
                    return Ok(sink.finish(false));
                }
                let b = self.bouquets()?.clone();
                let w = &b.d_prime_witness;
                let flowers = w.flowers;
                sink.truth(
                    "F(B) contains a minimal vertex cover",
                    "F(B) is a vertex cover",
                    h.is_vertex_cover(flowers),
                );
                let greedy = h.greedy_cover(w);
                sink.truth(
                    "greedy picks inside F(B) give a minimal vertex cover",
                    "construction succeeded",
                    greedy.succeeded(),
                );
                if !greedy.pruned.is_empty() {
                    sink.findings.push(format!(
                        "greedy cover needed pruning of {} vertices",
                        greedy.pruned.len()
                    ));
                }
                let two_stems = w.stems.iter().all(|&i| h.edges()[i].len() == 2);
                if sink.condition("stems_of_size_two", two_stems) {
                    let covers = h.minimal_vertex_covers();
                    let bigheight = covers.bigheight as i64;
                    let pd = self.betti()?.pd() as i64;
                    let c = self.matching()?.c;
                    sink.truth(
                        "F(B) is a minimal vertex cover",
                        "F(B) minimal cover",
                        covers.covers.contains(&flowers),
                    );
                    sink.le("c <= d", ("c", c), ("d", b.d as i64));
                    sink.le("d <= d'", ("d", b.d as i64), ("d'", b.d_prime as i64));
                    sink.le("d' <= bigheight", ("d'", b.d_prime as i64), ("bigheight", bigheight));
                    sink.le("bigheight <= pd", ("bigheight", bigheight), ("pd", pd));
                    if sink.condition("vertex_decomposable", self.vertex_decomposable()) {
                        sink.eq("bigheight = pd", ("bigheight", bigheight), ("pd", pd));
                        sink.eq("pd = d'", ("pd", pd), ("d'", b.d_prime as i64));
                    }
                }
            }
            Suite::LemmaDim => {
                if !sink.hypothesis("not_void", !h.is_void()) {
                    return Ok(sink.finish(false));
                }
                let (c, cp) = {
                    let m = self.matching()?;
                    (m.c, m.c_prime)
                };
                let dim1 = self.dim_plus_one();
                sink.le("c <= c'", ("c", c), ("c'", cp));
                sink.le("c' <= dim + 1", ("c'", cp), ("dim+1", dim1));
                let (ok, first_bad) = semi_induced_witnesses_ok(h, cp, &self.limits)?;
                sink.at = first_bad;
                sink.truth(
                    "every optimal c'-witness yields an independent set of size >= weight",
                    "independent sets verified",
                    ok,
                );
                sink.at = None;
            }
            Suite::GraphCc => {
                if !sink.hypothesis("graph", h.is_graph()) {
                    return Ok(sink.finish(false));
                }
                let m = self.matching()?;
                let (c, cp) = (m.c, m.c_prime);
                sink.eq("c = c'", ("c", c), ("c'", cp));
            }
            Suite::PropMh => {
                if !sink.hypothesis("uniform_strong_intersection", h.is_uniform_strong()) {
                    return Ok(sink.finish(false));
                }
                let (c, cp, m) = {
                    let mi = self.matching()?;
                    (mi.c, mi.c_prime, mi.m)
                };
                sink.le("c <= c'", ("c", c), ("c'", cp));
                sink.le("c' <= m", ("c'", cp), ("m", m));
                let mut first_bad = None;
                for mm in h.maximal_matchings() {
                    let sets: Vec<VertexSet> = mm.iter().map(|&i| h.edges()[i]).collect();
                    if !h.is_two_collage(&sets)? {
                        first_bad = Some(
                            sets.iter()
                                .map(|e| h.edge_labels(*e).join(","))
                                .collect::<Vec<_>>()
                                .join(" | "),
                        );
                        break;
                    }
                }
                let ok = first_bad.is_none();
                sink.at = first_bad;
                sink.truth("every maximal matching is a 2-collage", "2-collage", ok);
                sink.at = None;
                let reg = self.betti()?.reg() as i64;
                sink.le("c <= reg", ("c", c), ("reg", reg));
                sink.le("reg <= m", ("reg", reg), ("m", m));
            }
            Suite::PropCd => {
                if !sink.hypothesis("not_void", !h.is_void()) {
                    return Ok(sink.finish(false));
                }
                let (c, cp) = {
                    let m = self.matching()?;
                    (m.c, m.c_prime)
                };
                let (d, dp) = {
                    let b = self.bouquets()?;
                    (b.d as i64, b.d_prime as i64)
                };
                sink.le("c <= d", ("c", c), ("d", d));
                sink.le("d <= d'", ("d", d), ("d'", dp));
                if sink.condition("c2_free", h.is_c2_free()) {
                    sink.le("c' <= d'", ("c'", cp), ("d'", dp));
                }
            }
            Suite::LemmasDprime => {
                sink.hypothesis("no_singleton_edges", no_singletons);
                let shed = if no_singletons { self.shedding_vertices() } else { Vec::new() };
                if !sink.hypothesis("has_shedding_vertex", !shed.is_empty()) || !sink.hold() {
                    return Ok(sink.finish(false));
                }
                let dp = self.d_prime()? as i64;
                for x in shed {
                    let del = h.deletion(x)?.d_prime(&self.limits)?.0 as i64;
                    let con = h.contraction(x)?.d_prime(&self.limits)?.0 as i64;
                    sink.at = Some(h.label(x).to_owned());
                    sink.le("d'(H/x) <= d'(H)", ("d'(H/x)", con), ("d'(H)", dp));
                    sink.le("d'(H\\x) + 1 <= d'(H)", ("d'(H\\x)+1", del + 1), ("d'(H)", dp));
                }
                sink.at = None;
            }
            Suite::CorollaryCodis => {
                let c5 = self.c5_free()?;
                sink.hypothesis("c5_free", c5);
                sink.hypothesis("three_cycle_condition", h.three_cycle_condition());
                if !sink.hold() || !sink.hypothesis("vertex_decomposable", self.vertex_decomposable()) {
                    return Ok(sink.finish(false));
                }
                let order = h.is_codismantlable();
                let ok = order.as_ref().is_some_and(|o| o.replay(h));
                if order.as_ref().is_some_and(|o| o.backtracked) {
                    sink.findings
                        .push("codominated elimination needed backtracking".into());
                }
                sink.truth("codismantlable", "replay-valid elimination order", ok);
            }
            Suite::CorollaryReg => {
                let c5 = self.c5_free()?;
                sink.hypothesis("c5_free", c5);
                let graph = h.is_graph();
                let c2 = h.is_c2_free();
                sink.hypothesis("graph_or_c2_free", graph || c2);
                if !sink.hold() || !sink.hypothesis("vertex_decomposable", self.vertex_decomposable()) {
                    return Ok(sink.finish(false));
                }
                let reg = self.betti()?.reg() as i64;
                let (c, cp) = {
                    let m = self.matching()?;
                    (m.c, m.c_prime)
                };
                if sink.condition("graph", graph) {
                    sink.eq("graphs: reg = c", ("reg", reg), ("c", c));
                }
                if sink.condition("c2_free", c2) {
                    let dp = self.d_prime()? as i64;
                    let dim1 = self.dim_plus_one();
                    sink.le("c <= reg", ("c", c), ("reg", reg));
                    sink.le("reg <= c'", ("reg", reg), ("c'", cp));
                    sink.le("c' <= d'", ("c'", cp), ("d'", dp));
                    if sink.condition("c_equals_dim_plus_one", c == dim1) {
                        sink.eq("reg = c", ("reg", reg), ("c", c));
                        sink.eq("c = c'", ("c", c), ("c'", cp));
                    }
                    if sink.condition("c_equals_c_prime", c == cp) {
                        sink.eq("reg = c when c = c'", ("reg", reg), ("c", c));
                    }
                    if sink.condition("c_equals_d_prime", c == dp) {
                        sink.eq("reg = d' when c = d'", ("reg", reg), ("d'", dp));
                    }
                }
            }
            Suite::RecursionPd | Suite::RecursionReg => {
                sink.hypothesis("no_singleton_edges", no_singletons);
                let shed = if no_singletons { self.shedding_vertices() } else { Vec::new() };
                if !sink.hypothesis("has_shedding_vertex", !shed.is_empty()) || !sink.hold() {
                    return Ok(sink.finish(false));
                }
                let (reg, pd) = {
                    let t = self.betti()?;
                    (t.reg() as i64, t.pd() as i64)
                };
                for x in shed {
                    let del = h.deletion(x)?.betti_table(self.field, &self.limits)?;
                    let con = h.contraction(x)?.betti_table(self.field, &self.limits)?;
                    sink.at = Some(h.label(x).to_owned());
                    if suite == Suite::RecursionPd {
                        let rhs = (del.pd() as i64 + 1).max(con.pd() as i64);
                        sink.le("pd(H) <= max(pd(H\\x) + 1, pd(H/x))", ("pd(H)", pd), ("max", rhs));
                        sink.eq("pd(H) = max(pd(H\\x) + 1, pd(H/x))", ("pd(H)", pd), ("max", rhs));
                    } else {
                        let rhs = (del.reg() as i64).max(con.reg() as i64 + 1);
                        sink.le("reg(H) <= max(reg(H\\x), reg(H/x) + 1)", ("reg(H)", reg), ("max", rhs));
                    }
                }
                sink.at = None;
            }
            Suite::Homology => {
                if !sink.hypothesis("not_void", !h.is_void()) {
                    return Ok(sink.finish(false));
                }
                let table = self.betti()?.clone();
                for j in 1..=h.n() {
                    let edges = h.edges().iter().filter(|e| e.len() == j).count() as i64;
                    if edges > 0 || table.get(1, j) > 0 {
                        sink.at = Some(format!("j={j}"));
                        sink.eq("beta_1j = edges of size j", ("beta_1j", table.get(1, j) as i64), ("edges", edges));
                    }
                }
                sink.at = None;
                let pd = table.pd() as i64;
                let reg = table.reg() as i64;
                if sink.condition("terai_applies", h.n() <= 10 && !h.is_edgeless()) {
                    let dual = self.delta().alexander_dual();
                    let dual_reg = betti_table_of_complex(&dual, self.field, &self.limits)?.reg() as i64;
                    sink.eq("pd = reg(I of the dual)", ("pd", pd), ("reg(R/I_dual)+1", dual_reg + 1));
                }
                let bigheight = h.minimal_vertex_covers().bigheight as i64;
                sink.le("bigheight <= pd", ("bigheight", bigheight), ("pd", pd));
                let c = self.matching()?.c;
                sink.le("c <= reg", ("c", c), ("reg", reg));
                if self.field == Field::Rational && self.vertex_decomposable() {
                    let f2 = h.betti_table(Field::Prime(2), &self.limits)?;
                    if f2.entries != table.entries {
                        sink.findings.push("Q and F2 Betti tables differ".into());
                    }
                }
            }
        }
        Ok(sink.finish(true))
    }
}

/// Every semi-induced family of weight `c'` is `E[U]` for its closed union
/// `U`; replays the independent-set construction on each one. Returns the
/// first failing family as a label string.
fn semi_induced_witnesses_ok(h: &Hypergraph, c_prime: i64, limits: &Limits) -> Result<(bool, Option<String>)> {
    crate::limits::check("vertex count for matching search", h.n(), limits.subset_vertices)?;
    for u in crate::vertex_set::subsets(h.vertex_set()) {
        let inside: Vec<VertexSet> = h.edges().iter().copied().filter(|e| e.is_subset(u)).collect();
        let union = inside.iter().fold(VertexSet::EMPTY, |a, e| a.union(*e));
        if union != u || u.len() as i64 - inside.len() as i64 != c_prime {
            continue;
        }
        let family = h.classify_family(&inside)?;
        let s = h.independent_set_from_semi_induced(&family)?;
        if !h.is_independent(s) || (s.len() as i64) < family.weight {
            let name = inside
                .iter()
                .map(|e| h.edge_labels(*e).join(","))
                .collect::<Vec<_>>()
                .join(" | ");
            return Ok((false, Some(name)));
        }
    }
    Ok((true, None))
}

/// Options for [`verify`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub jobs: usize,
    pub field: Field,
    pub limits: Limits,
    pub self_test: bool,
    /// Also assert the ambient statements ([`Suite::AMBIENT`]) on every instance.
    pub ambient: bool,
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: 1,
            field: Field::Rational,
            limits: Limits::default(),
            self_test: false,
            ambient: true,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub suite: Suite,
    pub instance: HypergraphJson,
    pub violations: Vec<Check>,
    /// Where the instance was written, when the caller saved it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub index: usize,
    pub suite: Suite,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapRecord {
    pub index: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub statement: &'static str,
    pub family: FamilySpec,
    pub field: Field,
    pub self_test: bool,
    pub ambient: Vec<Suite>,
    /// Raw instances in the family, before filters.
    pub instances_total: usize,
    /// Instances that passed the family filters.
    pub instances_generated: usize,
    /// Instances on which the pinned statement's hypotheses held.
    pub instances_tested: usize,
    pub instances_capped: usize,
    pub counterexamples: Vec<Counterexample>,
    pub findings: Vec<Finding>,
    pub capped: Vec<CapRecord>,
    pub exit_status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

enum Outcome {
    Filtered,
    Capped(String),
    Done {
        tested: bool,
        violations: Vec<(Suite, Vec<Check>)>,
        findings: Vec<(Suite, String)>,
    },
}

fn run_one(
    spec: &FamilySpec,
    filters: &[Filter],
    suite: Suite,
    ambient: &[Suite],
    index: usize,
    opts: &VerifyOptions,
    oracle: &mut VdOracle,
) -> Result<Outcome> {
    let Some(h) = spec.instance(index)? else {
        return Ok(Outcome::Filtered);
    };
    let cmp = if opts.self_test { Cmp::planted() } else { Cmp::default() };
    let mut probe = Probe::new(&h, opts.limits, opts.field, cmp, oracle);
    let capped = |e: Error| {
        if e.is_cap_exceeded() {
            Ok(Outcome::Capped(e.to_string()))
        } else {
            Err(e)
        }
    };
    for f in filters {
        let pass = match f {
            Filter::VertexDecomposable => probe.vertex_decomposable(),
            Filter::C5Free => match probe.c5_free() {
                Ok(v) => v,
                Err(e) => return capped(e),
            },
            other => other.accepts(&h),
        };
        if !pass {
            return Ok(Outcome::Filtered);
        }
    }
    let mut violations = Vec::new();
    let mut findings = Vec::new();
    let mut tested = false;
    for (k, &s) in std::iter::once(&suite).chain(ambient).enumerate() {
        let v = match probe.evaluate(s) {
            Ok(v) => v,
            Err(e) => return capped(e),
        };
        if k == 0 {
            tested = v.hypotheses_hold;
        }
        let bad: Vec<Check> = v.violations().cloned().collect();
        if !bad.is_empty() {
            violations.push((s, bad));
        }
        findings.extend(v.findings.into_iter().map(|f| (s, f)));
    }
    Ok(Outcome::Done {
        tested,
        violations,
        findings,
    })
}

/// Runs `suite` over every instance of `family`. Instances are sharded
/// across `opts.jobs` threads and merged in index order, so the report does
/// not depend on the thread count.
pub fn verify(suite: Suite, family: &FamilySpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    family.validate()?;
    let filters = crate::generators::parse_filters(&family.filters)?;
    let total = family.len()?;
    let ambient: Vec<Suite> = if opts.ambient {
        Suite::AMBIENT.into_iter().filter(|&s| s != suite).collect()
    } else {
        Vec::new()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<Outcome>> = pool.install(|| {
        (0..total)
            .into_par_iter()
            .map_init(VdOracle::new, |oracle, i| {
                run_one(family, &filters, suite, &ambient, i, opts, oracle)
            })
            .collect()
    });

    let mut report = VerificationReport {
        suite,
        statement: suite.statement(),
        family: family.clone(),
        field: opts.field,
        self_test: opts.self_test,
        ambient: ambient.clone(),
        instances_total: total,
        instances_generated: 0,
        instances_tested: 0,
        instances_capped: 0,
        counterexamples: Vec::new(),
        findings: Vec::new(),
        capped: Vec::new(),
        exit_status: 0,
        elapsed_ms: None,
    };
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome? {
            Outcome::Filtered => {}
            Outcome::Capped(error) => {
                report.instances_generated += 1;
                report.instances_capped += 1;
                report.capped.push(CapRecord { index, error });
            }
            Outcome::Done {
                tested,
                violations,
                findings,
            } => {
                report.instances_generated += 1;
                report.instances_tested += usize::from(tested);
                if !violations.is_empty() {
                    let instance = family
                        .instance(index)?
                        .expect("instance was generated")
                        .to_json();
                    for (s, checks) in violations {
                        report.counterexamples.push(Counterexample {
                            index,
                            suite: s,
                            instance: instance.clone(),
                            violations: checks,
                            file: None,
                        });
                    }
                }
                report
                    .findings
                    .extend(findings.into_iter().map(|(suite, note)| Finding { index, suite, note }));
            }
        }
    }
    report.exit_status = if !report.counterexamples.is_empty() {
        1
    } else if report.instances_capped > 0 {
        3
    } else {
        0
    };
    if opts.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Single-instance check of one statement.
pub fn check(h: &Hypergraph, suite: Suite, field: Field, limits: &Limits, cmp: Cmp) -> Result<Verdict> {
    let mut oracle = VdOracle::new();
    Probe::new(h, *limits, field, cmp, &mut oracle).evaluate(suite)
}

impl FamilySpec {
    /// The family of exhaustive graphs on `min_n..=n` vertices.
    pub fn all_graphs(min_n: usize, n: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::AllGraphs,
            n: Some(n),
            min_n: Some(min_n),
            max_edge_size: None,
            min_edge_size: None,
            edge_count: None,
            max_edge_count: None,
            probability: None,
            count: None,
            seed: 0,
            filters: Vec::new(),
            dedup: false,
            name: None,
        }
    }

    /// `count` random hypergraphs on `min_n..=n` vertices with up to
    /// `max_edge_count` edges of size `2..=max_edge_size`.
    pub fn random(min_n: usize, n: usize, max_edge_size: usize, max_edge_count: usize, count: usize, seed: u64) -> Self {
        FamilySpec {
            kind: FamilyKind::RandomHypergraph,
            n: Some(n),
            min_n: Some(min_n),
            max_edge_size: Some(max_edge_size),
            min_edge_size: None,
            edge_count: None,
            max_edge_count: Some(max_edge_count),
            probability: None,
            count: Some(count),
            seed,
            filters: Vec::new(),
            dedup: false,
            name: None,
        }
    }

    pub fn with_filters(mut self, filters: &[&str]) -> Self {
        self.filters = filters.iter().map(|s| (*s).to_owned()).collect();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn run(h: &Hypergraph, s: Suite) -> Verdict {
        check(h, s, Field::Rational, &Limits::default(), Cmp::default()).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("no-such-suite".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn lemma_dim_on_h1() {
        let v = run(&named("h1").unwrap(), Suite::LemmaDim);
        assert!(v.hypotheses_hold);
        assert_eq!(v.conclusion_holds, Some(true));
        assert_eq!(v.checks[0].left.value, Value::Int(2));
        assert_eq!(v.checks[0].right.value, Value::Int(3));
        assert_eq!(v.checks[1].right.value, Value::Int(4));
    }

    #[test]
    fn theorem_main_not_applicable_on_c5() {
        let v = run(&named("c5").unwrap(), Suite::TheoremMain);
        assert!(!v.hypotheses_hold);
        assert_eq!(v.conclusion_holds, None);
        assert!(v.checks.is_empty());
    }

    #[test]
    fn theorem_final_on_star() {
        let v = run(&named("star").unwrap(), Suite::TheoremFinal);
        assert!(v.hypotheses_hold);
        assert_eq!(v.conclusion_holds, Some(true));
        let eq: Vec<_> = v.checks.iter().filter(|c| c.relation == Relation::Eq && c.left.name == "bigheight").collect();
        assert_eq!(eq[0].left.value, Value::Int(3));
        assert_eq!(eq[0].right.value, Value::Int(3));
    }

    #[test]
    fn planted_fault_inverts() {
        let h = named("h1").unwrap();
        let v = check(&h, Suite::LemmaDim, Field::Rational, &Limits::default(), Cmp::planted()).unwrap();
        assert_eq!(v.conclusion_holds, Some(false));
    }

    #[test]
    fn every_suite_runs_on_named_instances() {
        for name in ["h1", "h2", "star", "p3", "c4", "c5", "fan", "two_edges"] {
            let h = named(name).unwrap();
            for s in Suite::ALL {
                let v = run(&h, s);
                assert_ne!(v.conclusion_holds, Some(false), "{name} {s}: {:?}", v.checks);
            }
        }
    }

    #[test]
    fn small_verify_is_thread_independent() {
        let fam = FamilySpec::all_graphs(1, 4);
        let one = verify(Suite::LemmaDim, &fam, &VerifyOptions::default()).unwrap();
        let four = verify(Suite::LemmaDim, &fam, &VerifyOptions { jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.exit_status, 0);
        assert_eq!(one.instances_generated, 1 + 2 + 8 + 64);
    }
}
