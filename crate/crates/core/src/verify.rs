//! Instance-level checks of the structural properties of one-mode
//! projections.
//!
//! Each check returns a [`VerificationReport`]. A failing report always
//! carries a [`Counterexample`] that reproduces the failure on its own.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::generator::PendantInstance;
use crate::graph::BipartiteGraph;
use crate::projection::{project_weighted, Side, UnipartiteGraph, WeightedUnipartiteGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("projection has {found} vertices but the graph has n1 = {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PropertyId {
    DegreeSum,
    CliqueInduction,
    PendantDisconnection,
    WeightBounds,
    TotalWeightIdentity,
    WeightSumUpperBound,
}

impl PropertyId {
    pub const ALL: [PropertyId; 6] = [
        PropertyId::DegreeSum,
        PropertyId::CliqueInduction,
        PropertyId::PendantDisconnection,
        PropertyId::WeightBounds,
        PropertyId::TotalWeightIdentity,
        PropertyId::WeightSumUpperBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::DegreeSum => "DegreeSum",
            PropertyId::CliqueInduction => "CliqueInduction",
            PropertyId::PendantDisconnection => "PendantDisconnection",
            PropertyId::WeightBounds => "WeightBounds",
            PropertyId::TotalWeightIdentity => "TotalWeightIdentity",
            PropertyId::WeightSumUpperBound => "WeightSumUpperBound",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    /// The property's premise never occurs in this instance.
    Vacuous,
    /// The check does not apply to this input (e.g. a precondition failed).
    NotApplicable,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Vacuous => "VACUOUS",
            Status::NotApplicable => "N/A",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Counterexample {
    DegreeSumMismatch { sum_u: usize, sum_s: usize, m: usize },
    /// `u_i` and `u_j` share neighbour `s` but are not linked.
    MissingCliqueEdge { s: usize, u_i: usize, u_j: usize },
    /// Pendant edge `(u, s)` whose `u` still has projected neighbours, or a
    /// projection that stayed connected.
    PendantNotIsolated { u: usize, s: usize, projected_degree: usize },
    WeightOutOfBounds { i: usize, j: usize, weight: u64, upper: u64 },
    TotalWeightMismatch { lhs: u64, rhs: u64 },
    BoundExceeded { omega: u64, bound: u64 },
}

impl Counterexample {
    fn fields(&self) -> Vec<(&'static str, String)> {
        match *self {
            Counterexample::DegreeSumMismatch { sum_u, sum_s, m } => vec![
                ("sum_u", sum_u.to_string()),
                ("sum_s", sum_s.to_string()),
                ("m", m.to_string()),
            ],
            Counterexample::MissingCliqueEdge { s, u_i, u_j } => {
                vec![("s", s.to_string()), ("u_i", u_i.to_string()), ("u_j", u_j.to_string())]
            }
            Counterexample::PendantNotIsolated { u, s, projected_degree } => vec![
                ("u", u.to_string()),
                ("s", s.to_string()),
                ("projected_degree", projected_degree.to_string()),
            ],
            Counterexample::WeightOutOfBounds { i, j, weight, upper } => vec![
                ("i", i.to_string()),
                ("j", j.to_string()),
                ("weight", weight.to_string()),
                ("upper", upper.to_string()),
            ],
            Counterexample::TotalWeightMismatch { lhs, rhs } => {
                vec![("lhs", lhs.to_string()), ("rhs", rhs.to_string())]
            }
            Counterexample::BoundExceeded { omega, bound } => {
                vec![("omega", omega.to_string()), ("bound", bound.to_string())]
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub property: PropertyId,
    pub status: Status,
    /// Computed quantities, in a fixed order per property.
    pub details: Vec<(String, String)>,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    fn new(property: PropertyId, status: Status) -> Self {
        Self { property, status, details: Vec::new(), counterexample: None }
    }

    fn failed(property: PropertyId, cex: Counterexample) -> Self {
        Self { property, status: Status::Fail, details: Vec::new(), counterexample: Some(cex) }
    }

    fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn detail_value(&self, key: &str) -> Option<&str> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `property<TAB>STATUS<TAB>key=value ...`; counterexample fields are
    /// prefixed with `cex_`.
    pub fn to_line(&self) -> String {
        let mut pairs: Vec<String> = self.details.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if let Some(cex) = &self.counterexample {
            pairs.extend(cex.fields().into_iter().map(|(k, v)| format!("cex_{k}={v}")));
        }
        format!("{}\t{}\t{}", self.property, self.status.label(), pairs.join(" "))
    }
}

fn check_dims(g: &BipartiteGraph, n: usize) -> Result<(), VerifyError> {
    if n != g.n1() {
        return Err(VerifyError::DimensionMismatch { expected: g.n1(), found: n });
    }
    Ok(())
}

/// `C(d, 2)`, zero for `d < 2`.
pub fn pairs_of(d: usize) -> u64 {
    let d = d as u64;
    d * d.saturating_sub(1) / 2
}

pub fn check_degree_sum(g: &BipartiteGraph) -> VerificationReport {
    let sums = g.degree_sums();
    let (min_u, max_u) = g.degree_range_u();
    let (min_s, max_s) = g.degree_range_s();
    let report = if sums.sum_u == sums.m && sums.sum_s == sums.m {
        VerificationReport::new(PropertyId::DegreeSum, Status::Pass)
    } else {
        VerificationReport::failed(
            PropertyId::DegreeSum,
            Counterexample::DegreeSumMismatch { sum_u: sums.sum_u, sum_s: sums.sum_s, m: sums.m },
        )
    };
    report
        .detail("sum_u", sums.sum_u)
        .detail("sum_s", sums.sum_s)
        .detail("m", sums.m)
        .detail("deg_u_range", format!("{min_u}..{max_u}"))
        .detail("deg_s_range", format!("{min_s}..{max_s}"))
}

/// Every `s` with `deg(s) ≥ 2` must have all pairs of `N(s)` linked in the
/// `U`-side projection.
pub fn check_clique_induction(
    g: &BipartiteGraph,
    proj: &UnipartiteGraph,
) -> Result<VerificationReport, VerifyError> {
    check_dims(g, proj.n())?;
    let mut cliques = 0usize;
    let mut pairs = 0u64;
    let mut largest = 0usize;
    for s in 0..g.n2() {
        let members = g.neighbors_s(s);
        if members.len() < 2 {
            continue;
        }
        cliques += 1;
        largest = largest.max(members.len());
        for (a, &u_i) in members.iter().enumerate() {
            for &u_j in &members[a + 1..] {
                pairs += 1;
                if !proj.has_edge(u_i, u_j) {
                    return Ok(VerificationReport::failed(
                        PropertyId::CliqueInduction,
                        Counterexample::MissingCliqueEdge { s, u_i, u_j },
                    )
                    .detail("cliques_checked", cliques)
                    .detail("pairs_checked", pairs));
                }
            }
        }
    }
    let status = if cliques == 0 { Status::Vacuous } else { Status::Pass };
    Ok(VerificationReport::new(PropertyId::CliqueInduction, status)
        .detail("cliques_checked", cliques)
        .detail("pairs_checked", pairs)
        .detail("largest_clique", largest))
}

/// Some edge `(u, s)` with `deg(u) = deg(s) = 1`, scanning edges in order.
pub fn find_pendant_pair(g: &BipartiteGraph) -> Option<(usize, usize)> {
    g.edges().iter().copied().find(|&(u, s)| g.degree_u(u) == 1 && g.degree_s(s) == 1)
}

// Shared conclusion check: `u` isolated in the projection, projection
// disconnected.
fn pendant_conclusion(
    g: &BipartiteGraph,
    proj: &UnipartiteGraph,
    u: usize,
    s: usize,
) -> VerificationReport {
    let projected_degree = proj.edges().iter().filter(|&&(i, j)| i == u || j == u).count();
    let components = proj.component_count();
    let report = if projected_degree == 0 && components > 1 {
        VerificationReport::new(PropertyId::PendantDisconnection, Status::Pass)
    } else {
        VerificationReport::failed(
            PropertyId::PendantDisconnection,
            Counterexample::PendantNotIsolated { u, s, projected_degree },
        )
    };
    report
        .detail("pendant_u", u)
        .detail("pendant_s", s)
        .detail("components", components)
        .detail("n1", g.n1())
}

/// A pendant-pair edge makes its `u` an isolated vertex of the projection.
///
/// Intended for connected inputs with `n1 ≥ 2`; disconnected input is
/// rejected with [`VerifyError::PreconditionViolated`]. Use
/// [`check_pendant_instance`] for generator-built instances, which are
/// disconnected by construction.
pub fn check_pendant_disconnection(
    g: &BipartiteGraph,
    proj: &UnipartiteGraph,
) -> Result<VerificationReport, VerifyError> {
    check_dims(g, proj.n())?;
    if g.n1() < 2 {
        return Err(VerifyError::PreconditionViolated(
            "n1 < 2: a one-vertex projection is trivially connected".into(),
        ));
    }
    if !g.is_connected() {
        return Err(VerifyError::PreconditionViolated("bipartite graph is disconnected".into()));
    }
    Ok(match find_pendant_pair(g) {
        Some((u, s)) => pendant_conclusion(g, proj, u, s),
        None => VerificationReport::new(PropertyId::PendantDisconnection, Status::Vacuous)
            .detail("applicable", "no-pendant-pair"),
    })
}

/// Conclusion check on a tagged pendant-pair instance, skipping the
/// connectivity gate.
pub fn check_pendant_instance(
    inst: &PendantInstance,
    proj: &UnipartiteGraph,
) -> Result<VerificationReport, VerifyError> {
    check_dims(&inst.graph, proj.n())?;
    let g = &inst.graph;
    if !(g.has_edge(inst.u, inst.s) && g.degree_u(inst.u) == 1 && g.degree_s(inst.s) == 1) {
        return Err(VerifyError::PreconditionViolated(format!(
            "tagged edge ({}, {}) is not a pendant pair",
            inst.u, inst.s
        )));
    }
    Ok(pendant_conclusion(g, proj, inst.u, inst.s).detail("tagged", true))
}

/// Every stored weight must lie in `1..=n2`.
pub fn check_weight_bounds(
    g: &BipartiteGraph,
    wproj: &WeightedUnipartiteGraph,
) -> Result<VerificationReport, VerifyError> {
    check_dims(g, wproj.n())?;
    let upper = g.n2() as u64;
    if let Some(&(i, j, weight)) = wproj.edges().iter().find(|e| e.2 < 1 || e.2 > upper) {
        return Ok(VerificationReport::failed(
            PropertyId::WeightBounds,
            Counterexample::WeightOutOfBounds { i, j, weight, upper },
        ));
    }
    if wproj.edge_count() == 0 {
        return Ok(VerificationReport::new(PropertyId::WeightBounds, Status::Vacuous)
            .detail("edges", 0)
            .detail("upper", upper));
    }
    let min = wproj.edges().iter().map(|e| e.2).min().unwrap_or(0);
    let max = wproj.max_weight().unwrap_or(0);
    Ok(VerificationReport::new(PropertyId::WeightBounds, Status::Pass)
        .detail("edges", wproj.edge_count())
        .detail("min_weight", min)
        .detail("max_weight", max)
        .detail("upper", upper)
        .detail("tight", max == upper))
}

/// Sum of all weights must equal `Σ_s C(deg(s), 2)`.
pub fn check_total_weight_identity(
    g: &BipartiteGraph,
    wproj: &WeightedUnipartiteGraph,
) -> Result<VerificationReport, VerifyError> {
    check_dims(g, wproj.n())?;
    let lhs = wproj.total_weight();
    let rhs: u64 = (0..g.n2()).map(|s| pairs_of(g.degree_s(s))).sum();
    let report = if lhs == rhs {
        VerificationReport::new(PropertyId::TotalWeightIdentity, Status::Pass)
    } else {
        VerificationReport::failed(
            PropertyId::TotalWeightIdentity,
            Counterexample::TotalWeightMismatch { lhs, rhs },
        )
    };
    Ok(report.detail("lhs", lhs).detail("rhs", rhs))
}

/// `n1 · n2 · (n1 − 1) / 2`, the total weight of the projection of
/// `K(n1, n2)`.
pub fn weight_sum_bound(n1: usize, n2: usize) -> u64 {
    pairs_of(n1) * n2 as u64
}

/// Total weight `ω ≤ n1·n2·(n1−1)/2`. Details record whether the bound is met
/// with equality and whether `g` is complete.
pub fn check_weight_sum_upper_bound(
    g: &BipartiteGraph,
    wproj: &WeightedUnipartiteGraph,
) -> Result<VerificationReport, VerifyError> {
    check_dims(g, wproj.n())?;
    let omega = wproj.total_weight();
    let bound = weight_sum_bound(g.n1(), g.n2());
    let report = if omega <= bound {
        VerificationReport::new(PropertyId::WeightSumUpperBound, Status::Pass)
    } else {
        VerificationReport::failed(
            PropertyId::WeightSumUpperBound,
            Counterexample::BoundExceeded { omega, bound },
        )
    };
    Ok(report
        .detail("omega", omega)
        .detail("bound", bound)
        .detail("equality", omega == bound)
        .detail("complete", g.is_complete()))
}

fn not_applicable(property: PropertyId, err: &VerifyError) -> VerificationReport {
    VerificationReport::new(property, Status::NotApplicable).detail("reason", err.to_string().replace(' ', "_"))
}

fn or_not_applicable(
    property: PropertyId,
    r: Result<VerificationReport, VerifyError>,
) -> VerificationReport {
    r.unwrap_or_else(|e| not_applicable(property, &e))
}

/// Runs every check against caller-supplied projections, one report per
/// [`PropertyId`] in declaration order.
///
/// `pendant` marks a generator-tagged pendant-pair instance; without it the
/// pendant check applies only to connected input.
pub fn verify_with(
    g: &BipartiteGraph,
    proj: &UnipartiteGraph,
    wproj: &WeightedUnipartiteGraph,
    pendant: Option<(usize, usize)>,
) -> Vec<VerificationReport> {
    let pendant_report = match pendant {
        Some((u, s)) => {
            let inst = PendantInstance { graph: g.clone(), u, s };
            check_pendant_instance(&inst, proj)
        }
        None => check_pendant_disconnection(g, proj),
    };
    vec![
        check_degree_sum(g),
        or_not_applicable(PropertyId::CliqueInduction, check_clique_induction(g, proj)),
        or_not_applicable(PropertyId::PendantDisconnection, pendant_report),
        or_not_applicable(PropertyId::WeightBounds, check_weight_bounds(g, wproj)),
        or_not_applicable(PropertyId::TotalWeightIdentity, check_total_weight_identity(g, wproj)),
        or_not_applicable(PropertyId::WeightSumUpperBound, check_weight_sum_upper_bound(g, wproj)),
    ]
}

/// Projects `g` onto `U` by wedge enumeration and runs every check.
pub fn verify_all(g: &BipartiteGraph) -> Vec<VerificationReport> {
    verify_all_tagged(g, None)
}

pub fn verify_all_tagged(
    g: &BipartiteGraph,
    pendant: Option<(usize, usize)>,
) -> Vec<VerificationReport> {
    let wproj = project_weighted(g, Side::ProjectU);
    verify_with(g, &wproj.strip_weights(), &wproj, pendant)
}

/// [`verify_all`] over many graphs, results in input order.
pub fn verify_many(graphs: &[BipartiteGraph], exec: Execution) -> Vec<Vec<VerificationReport>> {
    exec::map_slice(exec, graphs, verify_all)
}
