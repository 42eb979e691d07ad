//! Exact minimisation of resolving, doubly resolving and strong resolving sets.
//!
//! Three routes are available:
//!
//! * [`Method::Naive`] enumerates every subset by increasing cardinality and
//!   lexicographic order and calls the public verifiers from
//!   [`crate::resolving`]. It is the reference oracle.
//! * [`Method::Pruned`] fixes all but the largest member of every twin class
//!   (any resolving set must contain them, and swapping twins is an
//!   automorphism, so the lexicographically least optimum survives) and runs
//!   a depth-first search with incremental partition refinement. With
//!   [`SolveOptions::family_pruning`] it additionally requires one member in
//!   every last-layer unit of a generated family graph; such results are
//!   flagged in [`SearchStats::family_pruned`].
//! * [`Method::VcReduction`] computes a minimum vertex cover of the strong
//!   resolving graph (strong variant only).
//!
//! Every returned witness is re-checked with the unrestricted verifier.

mod search;
mod vertex_cover;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{apsp, DistanceMatrix, Graph};
use crate::resolving::{
    is_doubly_resolving, is_resolving, is_strong_resolving, mmd_pairs, twin_classes, twin_lower_bound,
    OrderedVertexSet,
};

pub use vertex_cover::{min_vertex_cover, min_vertex_cover_with_stats};

/// Which resolving parameter is being minimised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Resolving,
    Doubly,
    Strong,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Resolving, Kind::Doubly, Kind::Strong];

    /// Smallest cardinality the predicate accepts.
    pub fn min_size(self) -> usize {
        match self {
            Kind::Doubly => 2,
            Kind::Resolving | Kind::Strong => 1,
        }
    }

    /// Runs the unrestricted public verifier for this kind.
    pub fn verify(self, d: &DistanceMatrix, set: &OrderedVertexSet) -> Result<bool> {
        match self {
            Kind::Resolving => is_resolving(d, set),
            Kind::Doubly => is_doubly_resolving(d, set),
            Kind::Strong => is_strong_resolving(d, set),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Resolving => "resolving",
            Kind::Doubly => "doubly",
            Kind::Strong => "strong",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "resolving" | "metric" => Ok(Kind::Resolving),
            "doubly" => Ok(Kind::Doubly),
            "strong" => Ok(Kind::Strong),
            other => Err(Error::domain(format!("unknown kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Naive,
    Pruned,
    VcReduction,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Pruned => "pruned",
            Method::VcReduction => "vc-reduction",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "pruned" => Ok(Method::Pruned),
            "vc" | "vc-reduction" => Ok(Method::VcReduction),
            other => Err(Error::domain(format!("unknown method {other:?}"))),
        }
    }
}

/// Resource limits for a single solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Candidate subsets (or branch-and-bound nodes) examined before giving up.
    pub max_subsets: Option<u64>,
    pub timeout: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subsets: Some(50_000_000),
            timeout: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_subsets: None,
            timeout: None,
        }
    }

    pub fn subsets(max: u64) -> Self {
        Budget {
            max_subsets: Some(max),
            timeout: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Require one member in every last-layer unit of a family graph.
    pub family_pruning: bool,
    /// Search the first branching level concurrently. The witness does not
    /// depend on this flag; the examined-subset count may.
    pub parallel: bool,
}

impl SolveOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SolveOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub subsets_examined: u64,
    pub elapsed: Duration,
    /// Members fixed up front from twin classes.
    pub forced: usize,
    pub family_pruned: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub kind: Kind,
    pub optimum: usize,
    pub witness: OrderedVertexSet,
    pub method: Method,
    pub stats: SearchStats,
}

impl SolveResult {
    /// `"pruned"`, or `"pruned+family"` when the family restriction was active.
    pub fn method_tag(&self) -> String {
        if self.stats.family_pruned {
            format!("{}+family", self.method)
        } else {
            self.method.to_string()
        }
    }
}

/// Shared subset counter with a deadline.
pub(crate) struct Meter {
    examined: AtomicU64,
    max: Option<u64>,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(budget: &Budget) -> Self {
        Meter {
            examined: AtomicU64::new(0),
            max: budget.max_subsets,
            deadline: budget.timeout.map(|t| Instant::now() + t),
        }
    }

    pub(crate) fn tick(&self) -> Result<()> {
        let seen = self.examined.fetch_add(1, Ordering::Relaxed) + 1;
        if self.max.is_some_and(|m| seen > m) {
            return Err(Error::BudgetExceeded { examined: seen - 1 });
        }
        if seen.is_multiple_of(1024) {
            self.check_clock()?;
        }
        Ok(())
    }

    pub(crate) fn check_clock(&self) -> Result<()> {
        match self.deadline {
            Some(deadline) if Instant::now() > deadline => Err(Error::BudgetExceeded {
                examined: self.examined(),
            }),
            _ => Ok(()),
        }
    }

    pub(crate) fn examined(&self) -> u64 {
        self.examined.load(Ordering::Relaxed)
    }
}

fn check_input(g: &Graph) -> Result<DistanceMatrix> {
    if g.order() < 2 {
        return Err(Error::domain("solvers need a graph with at least two vertices"));
    }
    apsp(g)
}

fn naive(kind: Kind, d: &DistanceMatrix, budget: &Budget) -> Result<(OrderedVertexSet, u64)> {
    let n = d.order();
    let meter = Meter::new(budget);
    for size in kind.min_size()..=n {
        for combo in (0..n).combinations(size) {
            meter.tick()?;
            let candidate = OrderedVertexSet::from_trusted(combo);
            if kind.verify(d, &candidate)? {
                return Ok((candidate, meter.examined()));
            }
        }
    }
    Err(Error::Invariant(format!("no {kind} set found, not even V(G)")))
}

fn solve(kind: Kind, g: &Graph, method: Method, opts: &SolveOptions) -> Result<SolveResult> {
    let start = Instant::now();
    let d = check_input(g)?;
    let mut stats = SearchStats::default();
    let witness = match method {
        Method::Naive => {
            let (w, examined) = naive(kind, &d, &opts.budget)?;
            stats.subsets_examined = examined;
            w
        }
        Method::Pruned => {
            let outcome = search::pruned(kind, g, &d, opts)?;
            stats.subsets_examined = outcome.examined;
            stats.forced = outcome.forced;
            stats.family_pruned = outcome.family_pruned;
            outcome.witness
        }
        Method::VcReduction => {
            if kind != Kind::Strong {
                return Err(Error::domain("the vertex-cover route only applies to strong resolving sets"));
            }
            let h = mmd_pairs(g, &d);
            let (cover, nodes) = min_vertex_cover_with_stats(&h, &opts.budget)?;
            stats.subsets_examined = nodes;
            cover
        }
    };
    stats.elapsed = start.elapsed();
    let result = SolveResult {
        kind,
        optimum: witness.len(),
        witness,
        method,
        stats,
    };
    check_result(g, &d, &result)?;
    Ok(result)
}

fn check_result(g: &Graph, d: &DistanceMatrix, result: &SolveResult) -> Result<()> {
    if !result.kind.verify(d, &result.witness)? {
        return Err(Error::Invariant(format!(
            "{} witness {{{}}} from {} fails its verifier",
            result.kind,
            result.witness.to_csv(),
            result.method
        )));
    }
    // Doubly and strong resolving sets are resolving, so the bound applies to all kinds.
    let bound = twin_lower_bound(&twin_classes(g));
    if result.optimum < bound {
        return Err(Error::Invariant(format!(
            "{} optimum {} is below the twin lower bound {bound}",
            result.kind, result.optimum
        )));
    }
    Ok(())
}

/// Metric dimension with a lexicographically least optimal witness.
pub fn solve_min_resolving(g: &Graph, method: Method, opts: &SolveOptions) -> Result<SolveResult> {
    if method == Method::VcReduction {
        return Err(Error::domain("the vertex-cover route only applies to strong resolving sets"));
    }
    solve(Kind::Resolving, g, method, opts)
}

pub fn solve_min_doubly(g: &Graph, method: Method, opts: &SolveOptions) -> Result<SolveResult> {
    if method == Method::VcReduction {
        return Err(Error::domain("the vertex-cover route only applies to strong resolving sets"));
    }
    solve(Kind::Doubly, g, method, opts)
}

/// Strong metric dimension by direct subset search (naive or pruned).
pub fn solve_min_strong_direct(g: &Graph, method: Method, opts: &SolveOptions) -> Result<SolveResult> {
    if method == Method::VcReduction {
        return Err(Error::domain("use solve_min_strong_vc for the vertex-cover route"));
    }
    solve(Kind::Strong, g, method, opts)
}

/// Strong metric dimension as a minimum vertex cover of the strong resolving graph.
pub fn solve_min_strong_vc(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(Kind::Strong, g, Method::VcReduction, opts)
}

/// Runs both strong routes and fails if their optima differ.
pub fn solve_min_strong_checked(
    g: &Graph,
    direct_method: Method,
    opts: &SolveOptions,
) -> Result<(SolveResult, SolveResult)> {
    let direct = solve_min_strong_direct(g, direct_method, opts)?;
    let vc = solve_min_strong_vc(g, opts)?;
    if direct.optimum != vc.optimum {
        return Err(Error::OracleDisagreement {
            what: "strong metric dimension".into(),
            left_name: "direct search",
            left: direct.optimum,
            right_name: "vertex-cover reduction",
            right: vc.optimum,
        });
    }
    Ok((direct, vc))
}

/// Dispatches on `kind`.
pub fn solve_min(kind: Kind, g: &Graph, method: Method, opts: &SolveOptions) -> Result<SolveResult> {
    match (kind, method) {
        (Kind::Strong, Method::VcReduction) => solve_min_strong_vc(g, opts),
        (Kind::Strong, m) => solve_min_strong_direct(g, m, opts),
        (Kind::Resolving, m) => solve_min_resolving(g, m, opts),
        (Kind::Doubly, m) => solve_min_doubly(g, m, opts),
    }
}
