//! Exhaustive verification sweeps.
//!
//! Each suite checks one published statement on every graph of a source
//! and returns a [`SuiteReport`]. The statements are theorems, so a
//! violation in a theorem suite means a bug in this crate. The two
//! conjecture suites are the exception: they are labeled as such, are not
//! part of `all`, and a failure there would be a counterexample.

mod suites;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::betti::{regularity_of_power, EngineConfig};
use crate::canon::{canonical_form, enumerate_range, CanonicalForm, DEFAULT_ENUMERATION_BOUND};
use crate::error::{EngineError, GraphError};
use crate::graph::Graph;
use crate::homology::{FieldSpec, RankFault};
use crate::invariants::{
    induced_matching_number, is_co_chordal, is_cricket_free, is_gap_free, matching_number,
    max_local_regularity,
};
use crate::report::SuiteReport;

pub use suites::join_fixture;

/// Registered suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SuiteId {
    LowerBound,
    MatchingBound,
    CameronWalker,
    LocallyLinear,
    GapfreeLocal,
    GapfreeLocallyLinear,
    Square,
    SymbolicSquare,
    ColonInduction,
    ColonStructure,
    EvenConnection,
    IsolatedReduction,
    Froberg,
    BettiOracle,
    InducedMonotonicity,
    ExactSequence,
    HierarchyMatching,
    HierarchyLocallyLinear,
    ConjectureA,
    ConjectureAPrime,
}

impl SuiteId {
    pub const ALL: [SuiteId; 20] = [
        SuiteId::LowerBound,
        SuiteId::MatchingBound,
        SuiteId::CameronWalker,
        SuiteId::LocallyLinear,
        SuiteId::GapfreeLocal,
        SuiteId::GapfreeLocallyLinear,
        SuiteId::Square,
        SuiteId::SymbolicSquare,
        SuiteId::ColonInduction,
        SuiteId::ColonStructure,
        SuiteId::EvenConnection,
        SuiteId::IsolatedReduction,
        SuiteId::Froberg,
        SuiteId::BettiOracle,
        SuiteId::InducedMonotonicity,
        SuiteId::ExactSequence,
        SuiteId::HierarchyMatching,
        SuiteId::HierarchyLocallyLinear,
        SuiteId::ConjectureA,
        SuiteId::ConjectureAPrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::LowerBound => "lower-bound",
            SuiteId::MatchingBound => "matching-bound",
            SuiteId::CameronWalker => "cameron-walker",
            SuiteId::LocallyLinear => "locally-linear",
            SuiteId::GapfreeLocal => "gapfree-local",
            SuiteId::GapfreeLocallyLinear => "gapfree-locallinear",
            SuiteId::Square => "square",
            SuiteId::SymbolicSquare => "symbolic-square",
            SuiteId::ColonInduction => "colon-induction",
            SuiteId::ColonStructure => "colon-structure",
            SuiteId::EvenConnection => "even-connection",
            SuiteId::IsolatedReduction => "isolated-reduction",
            SuiteId::Froberg => "froberg",
            SuiteId::BettiOracle => "betti-oracle",
            SuiteId::InducedMonotonicity => "induced-monotonicity",
            SuiteId::ExactSequence => "exact-sequence",
            SuiteId::HierarchyMatching => "hierarchy-matching",
            SuiteId::HierarchyLocallyLinear => "hierarchy-locally-linear",
            SuiteId::ConjectureA => "conjecture-a",
            SuiteId::ConjectureAPrime => "conjecture-a-prime",
        }
    }

    /// Open conjectures: a failure is a counterexample, not a bug.
    pub fn is_conjecture(self) -> bool {
        matches!(self, SuiteId::ConjectureA | SuiteId::ConjectureAPrime)
    }

    /// The suites run by `all`.
    pub fn theorem_suites() -> Vec<SuiteId> {
        SuiteId::ALL
            .into_iter()
            .filter(|s| !s.is_conjecture())
            .collect()
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for SuiteId {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

impl From<SuiteId> for String {
    fn from(id: SuiteId) -> String {
        id.as_str().to_string()
    }
}

impl TryFrom<String> for SuiteId {
    type Error = UnknownSuite;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Powers `1..=s_max` are checked on graphs with at most `max_vertices`
/// vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerBand {
    pub max_vertices: usize,
    pub s_max: u32,
}

/// `n <= 6` with `s <= 2`, and `n <= 5` with `s = 3`.
pub fn default_bands() -> Vec<PowerBand> {
    vec![
        PowerBand {
            max_vertices: 6,
            s_max: 2,
        },
        PowerBand {
            max_vertices: 5,
            s_max: 3,
        },
    ]
}

/// Largest `s` to check on a graph with `n` vertices; 0 if no band covers it.
pub fn s_max_for(bands: &[PowerBand], n: usize) -> u32 {
    bands
        .iter()
        .filter(|b| n <= b.max_vertices)
        .map(|b| b.s_max)
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSource {
    /// Every graph on `0..=max_vertices` vertices up to isomorphism.
    Enumerate {
        max_vertices: usize,
    },
    Explicit(Vec<Graph>),
}

impl GraphSource {
    pub fn graphs(&self) -> Result<Vec<Graph>, GraphError> {
        match self {
            GraphSource::Enumerate { max_vertices } => {
                enumerate_range(0, *max_vertices, DEFAULT_ENUMERATION_BOUND)
            }
            GraphSource::Explicit(gs) => Ok(gs.clone()),
        }
    }
}

/// Deliberate faults for checking that the suites can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    #[default]
    None,
    /// Every induced matching number is reported one too large.
    NuOffByOne,
    /// The homology rank routine under-reports.
    HomologyRank,
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Mutation::None),
            "nu-off-by-one" => Ok(Mutation::NuOffByOne),
            "homology-rank" => Ok(Mutation::HomologyRank),
            _ => Err(format!("unknown mutation `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteSpec {
    pub suite: SuiteId,
    pub graphs: GraphSource,
    pub bands: Vec<PowerBand>,
    pub field: FieldSpec,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub mutation: Mutation,
}

impl SuiteSpec {
    /// The default sweep for one suite.
    pub fn new(suite: SuiteId) -> SuiteSpec {
        SuiteSpec {
            suite,
            graphs: GraphSource::Enumerate { max_vertices: 6 },
            bands: default_bands(),
            field: FieldSpec::Gf2,
            jobs: 0,
            mutation: Mutation::None,
        }
    }

    pub fn with_max_vertices(mut self, n: usize) -> SuiteSpec {
        self.graphs = GraphSource::Enumerate { max_vertices: n };
        self
    }

    pub fn with_bands(mut self, bands: Vec<PowerBand>) -> SuiteSpec {
        self.bands = bands;
        self
    }

    pub fn with_field(mut self, field: FieldSpec) -> SuiteSpec {
        self.field = field;
        self
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> SuiteSpec {
        self.mutation = mutation;
        self
    }

    pub fn with_graphs(mut self, graphs: Vec<Graph>) -> SuiteSpec {
        self.graphs = GraphSource::Explicit(graphs);
        self
    }

    fn context_key(&self) -> (FieldSpec, Mutation) {
        (self.field, self.mutation)
    }
}

/// Graph-level facts shared between suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphFacts {
    pub beta: u32,
    pub nu: u32,
    pub gap_free: bool,
    pub cricket_free: bool,
    pub co_chordal: bool,
    /// Maximum of `reg (I : x)` over non-isolated `x`; 0 without edges.
    pub local_max: u32,
}

/// Engine settings plus memoized invariants, keyed by the canonical form
/// of the graph with isolated vertices removed (none of the cached values
/// depend on isolated vertices).
pub struct Context {
    config: EngineConfig,
    mutation: Mutation,
    reg: DashMap<(CanonicalForm, u32), u32>,
    facts: DashMap<CanonicalForm, Arc<GraphFacts>>,
}

fn key(g: &Graph) -> CanonicalForm {
    canonical_form(&g.without_isolated().graph)
}

impl Context {
    pub fn new(field: FieldSpec, mutation: Mutation) -> Context {
        let fault = (mutation == Mutation::HomologyRank).then_some(RankFault::UnderReport);
        Context {
            config: EngineConfig::with_field(field).with_fault(fault),
            mutation,
            reg: DashMap::new(),
            facts: DashMap::new(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    /// `reg I(G)^s`; an error for graphs without edges.
    pub fn reg_power(&self, g: &Graph, s: u32) -> Result<u32, EngineError> {
        if !g.has_edges() {
            return Err(EngineError::ZeroIdeal);
        }
        let k = (key(g), s);
        if let Some(r) = self.reg.get(&k) {
            return Ok(*r);
        }
        let r = regularity_of_power(&g.without_isolated().graph, s, &self.config)?;
        self.reg.insert(k, r);
        Ok(r)
    }

    pub fn reg(&self, g: &Graph) -> Result<u32, EngineError> {
        self.reg_power(g, 1)
    }

    pub fn facts(&self, g: &Graph) -> Result<Arc<GraphFacts>, EngineError> {
        let k = key(g);
        if let Some(f) = self.facts.get(&k) {
            return Ok(f.clone());
        }
        let h = g.without_isolated().graph;
        let nu = induced_matching_number(&h) as u32;
        let f = Arc::new(GraphFacts {
            beta: matching_number(&h) as u32,
            nu: if self.mutation == Mutation::NuOffByOne {
                nu + 1
            } else {
                nu
            },
            gap_free: is_gap_free(&h),
            cricket_free: is_cricket_free(&h),
            co_chordal: is_co_chordal(&h),
            local_max: max_local_regularity(&h, &self.config)?,
        });
        self.facts.insert(k, f.clone());
        Ok(f)
    }

    /// Regularity values computed so far, as `(graph6, s, reg)` rows on
    /// canonical graphs.
    pub fn export_regularities(&self) -> Vec<(String, u32, u32)> {
        let mut rows: Vec<_> = self
            .reg
            .iter()
            .map(|e| {
                let (form, s) = *e.key();
                (crate::graph6::emit_graph6(&form.to_graph()), s, *e.value())
            })
            .collect();
        rows.sort();
        rows
    }

    /// Seeds the regularity cache. Rows whose graph does not parse are
    /// ignored.
    pub fn import_regularities(&self, rows: &[(String, u32, u32)]) {
        for (code, s, r) in rows {
            if let Ok(g) = crate::graph6::parse_graph6(code) {
                self.reg.insert((key(&g), *s), *r);
            }
        }
    }
}

/// Runs one suite. Graphs are processed in parallel and the per-graph
/// reports merged.
pub fn run_suite(spec: &SuiteSpec, ctx: &Context) -> Result<SuiteReport, GraphError> {
    let start = Instant::now();
    let graphs = spec.graphs.graphs()?;
    let work = || suites::run(spec, ctx, &graphs);
    let mut report = if spec.jobs > 0 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(spec.jobs)
            .build()
        {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    } else {
        work()
    };
    if spec.suite.is_conjecture() {
        report.note("conjecture: failure is publishable, not a bug");
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Reports of every `SuiteSpec` plus the process exit code: 0 iff every suite
/// passed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub reports: Vec<SuiteReport>,
    pub exit_code: i32,
}

/// Runs the specs in order with a fresh [`Runner`].
pub fn run(specs: &[SuiteSpec]) -> Result<RunOutcome, GraphError> {
    Runner::default().run(specs)
}

/// Owns one [`Context`] per (field, mutation) pair so that caches are
/// shared between specs and can be seeded or exported around a run.
#[derive(Default)]
pub struct Runner {
    contexts: Vec<((FieldSpec, Mutation), Context)>,
}

impl Runner {
    pub fn context(&mut self, field: FieldSpec, mutation: Mutation) -> &Context {
        let k = (field, mutation);
        let idx = match self.contexts.iter().position(|(c, _)| *c == k) {
            Some(i) => i,
            None => {
                self.contexts.push((k, Context::new(field, mutation)));
                self.contexts.len() - 1
            }
        };
        &self.contexts[idx].1
    }

    pub fn run(&mut self, specs: &[SuiteSpec]) -> Result<RunOutcome, GraphError> {
        let mut reports = Vec::with_capacity(specs.len());
        for spec in specs {
            let (field, mutation) = spec.context_key();
            reports.push(run_suite(spec, self.context(field, mutation))?);
        }
        let exit_code = if reports.iter().all(|r| r.pass) { 0 } else { 1 };
        Ok(RunOutcome { reports, exit_code })
    }
}

/// One tab-separated line per report, with a header.
pub fn summary_tsv(reports: &[SuiteReport]) -> String {
    let mut out = String::from("suite\tgraphs\tchecks\tskipped\tviolations\tpass\twall_ms\n");
    for r in reports {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.suite,
            r.graphs_tested,
            r.checks,
            r.skipped,
            r.violation_count,
            if r.pass { "PASS" } else { "FAIL" },
            r.wall_time_ms
        ));
    }
    out
}
