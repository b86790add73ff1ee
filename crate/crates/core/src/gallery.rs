//! Pinned worked examples with their expected certificates and verdicts.
//!
//! Every entry runs its certifiers and solvers and compares the outcome with
//! what the example claims; [`run_entry`] reports one check per expectation.

use std::fmt;
use std::thread;

use serde::Serialize;

use crate::algebra::{Algebra, Element, NormMode, OrderMode};
use crate::certificate::{Certificate, Witness};
use crate::contraction::{
    certify_ciric1, certify_ciric2, certify_common, certify_eq1, Gauge, GaugeForm, Map, MappingScenario,
};
use crate::error::{Error, Result};
use crate::solver::{
    check_orbital_continuity, common_solve, picard_solve, uniqueness_probe, MapChoice, SolveOptions, Verdict,
};
use crate::space::{check_metric_axioms, probe_continuity, MetricSpace, PointDomain};

/// Sample step of interval domains.
pub const SAMPLE_STEP: f64 = 0.05;
/// Truncation depth of the dyadic domains.
pub const DYADIC_DEPTH: u32 = 40;
/// Candidate starting points, filtered to the domain.
pub const DEFAULT_STARTS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
/// Weight of the second diagonal entry of the diagonal metric example.
pub const DEFAULT_ALPHA: f64 = 2.0;

/// Expected result of a certifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

impl Outcome {
    fn of(result: &Result<Certificate>) -> Outcome {
        match result {
            Ok(c) if c.passed => Outcome::Pass,
            Ok(_) => Outcome::Fail,
            Err(_) => Outcome::Error,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Error => "error",
        })
    }
}

/// Expected result of the solver from every start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedPoint {
    At(f64),
    /// Orbits are Cauchy but their limit is not fixed.
    None,
}

/// Expected orbital-continuity result for one map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orbital {
    Pass,
    ViolationAt(f64),
}

/// Expected continuity-probe result at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityProbe {
    pub at: f64,
    pub probes: Vec<f64>,
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected {
    pub axioms: bool,
    pub eq1: Option<Outcome>,
    pub ciric1: Option<Outcome>,
    pub ciric2: Option<Outcome>,
    pub common: Option<Outcome>,
    pub fixed_point: Option<FixedPoint>,
    pub common_fixed_point: Option<FixedPoint>,
    pub orbital: Vec<(MapChoice, Orbital)>,
    pub continuity: Option<ContinuityProbe>,
    /// Point every start should agree on.
    pub unique: Option<f64>,
    pub complete: bool,
}

impl Expected {
    fn metric_only(complete: bool) -> Self {
        Expected {
            axioms: true,
            eq1: None,
            ciric1: None,
            ciric2: None,
            common: None,
            fixed_point: None,
            common_fixed_point: None,
            orbital: Vec::new(),
            continuity: None,
            unique: None,
            complete,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub location: &'static str,
    pub scenario: MappingScenario,
    /// Gauge for the plain contraction check.
    pub eq1_gauge: Option<Element>,
    pub starts: Vec<f64>,
    pub expected: Expected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryInfo {
    pub id: &'static str,
    pub description: &'static str,
    pub location: &'static str,
    pub complete: bool,
}

/// One expectation compared with what actually happened.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub description: String,
    pub location: String,
    pub checks: Vec<Check>,
}

impl EntryReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Maps that cannot be written as a single expression.
pub fn builtin_map(name: &str) -> Option<Map> {
    Some(match name {
        "identity" => Map::identity(),
        // 0 on [0, 1), 1/2 at 1
        "example_3_5" => Map::new("example_3_5", |x| if x == 1.0 { 0.5 } else { 0.0 }),
        // 0 ↦ 1/2, 2^-i ↦ 2^-(i+1)
        "example_3_11" | "example_3_19_s" => {
            let name = if name == "example_3_11" {
                "example_3_11"
            } else {
                "example_3_19_s"
            };
            Map::new(name, |x| if x == 0.0 { 0.5 } else { x / 2.0 })
        }
        "example_3_19_t" => Map::new("example_3_19_t", |x| x / 2.0),
        _ => return None,
    })
}

pub const BUILTIN_MAPS: [&str; 5] = [
    "identity",
    "example_3_5",
    "example_3_11",
    "example_3_19_t",
    "example_3_19_s",
];

pub const IDS: [&str; 9] = [
    "example_2_2",
    "example_3_4",
    "example_3_5",
    "example_3_10",
    "example_3_11",
    "example_3_12",
    "example_3_17",
    "example_3_18",
    "example_3_19",
];

fn scalar(c: f64) -> Gauge {
    Gauge::constant(Element::scalar(1, c))
}

fn shifted_sum(c: f64) -> Gauge {
    Gauge::new(move |x, y| Element::scalar(1, c + x + y))
}

fn starts_in(domain: &PointDomain, eps: f64) -> Vec<f64> {
    DEFAULT_STARTS
        .iter()
        .copied()
        .filter(|&x| domain.contains(x, eps) && domain.snap(x, eps) == x)
        .collect()
}

fn real_space(domain: PointDomain, complete: bool) -> MetricSpace {
    MetricSpace::usual(domain, Algebra::real(1), complete)
}

fn unit_interval() -> PointDomain {
    PointDomain::closed(0.0, 1.0, SAMPLE_STEP).expect("valid interval")
}

fn open_interval() -> PointDomain {
    PointDomain::open(-1.0, 1.0, SAMPLE_STEP).expect("valid interval")
}

fn dyadic() -> PointDomain {
    PointDomain::dyadic(DYADIC_DEPTH).expect("valid depth")
}

/// The diagonal metric `diag(|x−y|, α|x−y|)` on `[-1, 1]` in `M₂(ℝ)` with
/// the max-entry norm and entrywise order.
pub fn diagonal_metric_space(alpha: f64) -> MetricSpace {
    let algebra = Algebra::real(2)
        .with_norm(NormMode::MaxEntry)
        .with_order(OrderMode::Entrywise);
    let domain = PointDomain::closed(-1.0, 1.0, SAMPLE_STEP).expect("valid interval");
    MetricSpace::new(domain, algebra, true, move |x, y| {
        let r = (x - y).abs();
        Element::diag(&[r, alpha * r])
    })
}

fn entry_2_2(alpha: f64) -> GalleryEntry {
    let space = diagonal_metric_space(alpha);
    let starts = Vec::new();
    let scenario = MappingScenario::new(
        space,
        Map::identity(),
        Gauge::constant(Element::zero(2)),
        Gauge::constant(Element::zero(2)),
    );
    GalleryEntry {
        id: "example_2_2",
        description: "M₂ diagonal metric with α",
        location: "Example 2.2",
        scenario,
        eq1_gauge: None,
        starts,
        expected: Expected::metric_only(true),
    }
}

fn entry_3_4() -> GalleryEntry {
    let algebra = Algebra::real(2)
        .with_norm(NormMode::MaxEntry)
        .with_order(OrderMode::Entrywise);
    let space = MetricSpace::usual(unit_interval(), algebra, true);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r5 = 1.0 / 5f64.sqrt();
    let scenario = MappingScenario::new(
        space,
        Map::new("x/5", |x| x / 5.0),
        Gauge::constant(Element::scalar(2, r5)),
        Gauge::new(|x, y| Element::scalar(2, x + y)),
    );
    GalleryEntry {
        id: "example_3_4",
        description: "x/5 on [0, 1] with a scalar-matrix gauge in M₂(ℝ)",
        location: "Example 3.4",
        scenario,
        eq1_gauge: Some(Element::scalar(2, r5)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Pass),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            fixed_point: Some(FixedPoint::At(0.0)),
            orbital: vec![(MapChoice::T, Orbital::Pass)],
            unique: Some(0.0),
            ..Expected::metric_only(true)
        },
    }
}

fn entry_3_5() -> GalleryEntry {
    let space = real_space(unit_interval(), true);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r2 = 0.5f64.sqrt();
    let scenario = MappingScenario::new(space, builtin_map("example_3_5").unwrap(), scalar(r2), shifted_sum(0.0));
    GalleryEntry {
        id: "example_3_5",
        description: "map jumping to 1/2 at x = 1: not a contraction, orbitally continuous, discontinuous at 1",
        location: "Example 3.5",
        scenario,
        eq1_gauge: Some(Element::scalar(1, r2)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Fail),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            fixed_point: Some(FixedPoint::At(0.0)),
            orbital: vec![(MapChoice::T, Orbital::Pass)],
            continuity: Some(ContinuityProbe {
                at: 1.0,
                probes: (1..=12).map(|k| 1.0 - 10f64.powi(-k)).collect(),
                violation: true,
            }),
            ..Expected::metric_only(true)
        },
    }
}

fn entry_3_10() -> GalleryEntry {
    let space = real_space(unit_interval(), true);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r3 = 1.0 / 3f64.sqrt();
    let scenario = MappingScenario::new(space, Map::new("x/3", |x| x / 3.0), scalar(r3), shifted_sum(1.0));
    GalleryEntry {
        id: "example_3_10",
        description: "x/3 on [0, 1], unique fixed point 0",
        location: "Example 3.10",
        scenario,
        eq1_gauge: Some(Element::scalar(1, r3)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Pass),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            fixed_point: Some(FixedPoint::At(0.0)),
            orbital: vec![(MapChoice::T, Orbital::Pass)],
            continuity: Some(ContinuityProbe {
                at: 0.5,
                probes: (1..=12).map(|k| 0.5 + 0.4 * 10f64.powi(-k)).collect(),
                violation: false,
            }),
            unique: Some(0.0),
            ..Expected::metric_only(true)
        },
    }
}

fn entry_3_11() -> GalleryEntry {
    let space = real_space(dyadic(), true);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r2 = 0.5f64.sqrt();
    let scenario = MappingScenario::new(
        space,
        builtin_map("example_3_11").unwrap(),
        scalar(r2),
        shifted_sum(1.0),
    );
    GalleryEntry {
        id: "example_3_11",
        description: "shift on {0} ∪ {2^-i} sending 0 to 1/2: contractive orbits, no fixed point",
        location: "Example 3.11",
        scenario,
        eq1_gauge: Some(Element::scalar(1, r2)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Fail),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            fixed_point: Some(FixedPoint::None),
            orbital: vec![(MapChoice::T, Orbital::ViolationAt(0.0))],
            ..Expected::metric_only(true)
        },
    }
}

fn entry_3_12() -> GalleryEntry {
    let space = real_space(open_interval(), false);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r2 = 0.5f64.sqrt();
    let scenario = MappingScenario::new(space, Map::new("x/2", |x| x / 2.0), scalar(r2), shifted_sum(4.0));
    GalleryEntry {
        id: "example_3_12",
        description: "x/2 on the incomplete space (-1, 1), unique fixed point 0",
        location: "Example 3.12",
        scenario,
        eq1_gauge: Some(Element::scalar(1, r2)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Pass),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            fixed_point: Some(FixedPoint::At(0.0)),
            orbital: vec![(MapChoice::T, Orbital::Pass)],
            unique: Some(0.0),
            ..Expected::metric_only(false)
        },
    }
}

fn entry_3_17() -> GalleryEntry {
    let space = real_space(unit_interval(), true);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r2 = 0.5f64.sqrt();
    let scenario = MappingScenario::new(space, Map::new("x/2", |x| x / 2.0), scalar(r2), shifted_sum(1.0))
        .with_s(Map::new("x/4", |x| x / 4.0));
    GalleryEntry {
        id: "example_3_17",
        description: "x/2 and x/4 on [0, 1], unique common fixed point 0",
        location: "Example 3.17",
        scenario,
        eq1_gauge: Some(Element::scalar(1, r2)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Pass),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            common: Some(Outcome::Pass),
            common_fixed_point: Some(FixedPoint::At(0.0)),
            orbital: vec![(MapChoice::T, Orbital::Pass), (MapChoice::S, Orbital::Pass)],
            unique: Some(0.0),
            ..Expected::metric_only(true)
        },
    }
}

fn entry_3_18() -> GalleryEntry {
    let space = real_space(open_interval(), false);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r3 = 1.0 / 3f64.sqrt();
    let scenario = MappingScenario::new(space, Map::new("x/3", |x| x / 3.0), scalar(r3), shifted_sum(4.0))
        .with_s(Map::new("x/6", |x| x / 6.0));
    GalleryEntry {
        id: "example_3_18",
        description: "x/3 and x/6 on the incomplete space (-1, 1), unique common fixed point 0",
        location: "Example 3.18",
        scenario,
        eq1_gauge: Some(Element::scalar(1, r3)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Pass),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            common: Some(Outcome::Pass),
            common_fixed_point: Some(FixedPoint::At(0.0)),
            orbital: vec![(MapChoice::T, Orbital::Pass), (MapChoice::S, Orbital::Pass)],
            unique: Some(0.0),
            ..Expected::metric_only(false)
        },
    }
}

fn entry_3_19() -> GalleryEntry {
    let space = real_space(dyadic(), true);
    let starts = starts_in(&space.domain, space.eps_eq());
    let r2 = 0.5f64.sqrt();
    let scenario = MappingScenario::new(
        space,
        builtin_map("example_3_19_t").unwrap(),
        scalar(r2),
        shifted_sum(1.0),
    )
    .with_s(builtin_map("example_3_19_s").unwrap());
    GalleryEntry {
        id: "example_3_19",
        description: "halving pair on {0} ∪ {2^-i} where S sends 0 to 1/2: no common fixed point",
        location: "Example 3.19",
        scenario,
        eq1_gauge: Some(Element::scalar(1, r2)),
        starts,
        expected: Expected {
            eq1: Some(Outcome::Pass),
            ciric1: Some(Outcome::Pass),
            ciric2: Some(Outcome::Pass),
            common: Some(Outcome::Pass),
            common_fixed_point: Some(FixedPoint::None),
            orbital: vec![(MapChoice::T, Orbital::Pass), (MapChoice::S, Orbital::ViolationAt(0.0))],
            ..Expected::metric_only(true)
        },
    }
}

/// The diagonal metric entry with a chosen `α`.
pub fn example_2_2_with_alpha(alpha: f64) -> GalleryEntry {
    entry_2_2(alpha)
}

pub fn entry(id: &str) -> Result<GalleryEntry> {
    Ok(match id {
        "example_2_2" => entry_2_2(DEFAULT_ALPHA),
        "example_3_4" => entry_3_4(),
        "example_3_5" => entry_3_5(),
        "example_3_10" => entry_3_10(),
        "example_3_11" => entry_3_11(),
        "example_3_12" => entry_3_12(),
        "example_3_17" => entry_3_17(),
        "example_3_18" => entry_3_18(),
        "example_3_19" => entry_3_19(),
        _ => {
            return Err(Error::UnknownEntry {
                id: id.to_string(),
                available: IDS.iter().map(|s| s.to_string()).collect(),
            })
        }
    })
}

pub fn entries() -> Vec<GalleryEntry> {
    IDS.iter().map(|id| entry(id).expect("listed id")).collect()
}

/// Entries in document order.
pub fn list_entries() -> Vec<EntryInfo> {
    entries()
        .into_iter()
        .map(|e| EntryInfo {
            id: e.id,
            description: e.description,
            location: e.location,
            complete: e.expected.complete,
        })
        .collect()
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, passed: bool) {
        self.0.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed,
        });
    }

    fn outcome(&mut self, name: &str, expected: Outcome, result: &Result<Certificate>) {
        let actual = Outcome::of(result);
        let detail = match result {
            Ok(c) => format!("{actual} (worst margin {:.3e})", c.worst_margin),
            Err(e) => format!("{actual} ({e})"),
        };
        self.push(name, expected, detail, actual == expected);
    }
}

fn fixed_point_check(
    checks: &mut Checks,
    name: &str,
    entry: &GalleryEntry,
    expected: FixedPoint,
    solve: impl Fn(f64) -> Result<crate::solver::IterationTrace>,
) {
    let eps = entry.scenario.space.eps_eq();
    for &x0 in &entry.starts {
        let label = format!("{name} from {x0}");
        match solve(x0) {
            Ok(tr) => {
                let actual = match (tr.verdict, tr.limit) {
                    (Verdict::ConvergedFixedPoint, Some(z)) => format!("fixed point {z:e}"),
                    (Verdict::ConvergedNotFixed, Some(z)) => {
                        format!(
                            "limit {z} not fixed (residual {:e})",
                            tr.max_fixedness().unwrap_or(f64::NAN)
                        )
                    }
                    (v, _) => v.as_str().to_string(),
                };
                let passed = match expected {
                    FixedPoint::At(p) => {
                        tr.verdict == Verdict::ConvergedFixedPoint
                            && tr.fixed_point.is_some_and(|z| (z - p).abs() <= eps)
                    }
                    FixedPoint::None => tr.verdict == Verdict::ConvergedNotFixed,
                };
                let want = match expected {
                    FixedPoint::At(p) => format!("fixed point {p}"),
                    FixedPoint::None => "no fixed point".to_string(),
                };
                checks.push(label, want, actual, passed);
            }
            Err(e) => checks.push(label, "a trace", e, false),
        }
    }
}

fn abelian_check(checks: &mut Checks, scn: &MappingScenario, pairs: &[(f64, f64)]) {
    let one = certify_ciric1(scn, pairs);
    let two = certify_ciric2(&scn.abelian_type2(), pairs);
    let (passed, actual) = match (&one, &two) {
        (Ok(a), Ok(b)) => {
            let gap = (a.worst_margin - b.worst_margin).abs();
            (
                a.passed == b.passed && gap <= 1e-12,
                format!("{} / {}, margin gap {gap:.1e}", a.passed, b.passed),
            )
        }
        _ => (false, "certifier error".to_string()),
    };
    checks.push("abelian equivalence", "same verdict and margin", actual, passed);
}

/// Runs every certifier and solver of one entry against its expectations.
pub fn run(entry: &GalleryEntry) -> EntryReport {
    let scn = &entry.scenario;
    let space = &scn.space;
    let exp = &entry.expected;
    let sample = space.domain.sample();
    let pairs = scn.default_pairs();
    let opts = SolveOptions::default();
    let mut checks = Checks(Vec::new());

    let axioms = check_metric_axioms(space, &sample);
    checks.outcome(
        "metric axioms",
        if exp.axioms { Outcome::Pass } else { Outcome::Fail },
        &axioms,
    );
    checks.push("complete", exp.complete, space.complete, space.complete == exp.complete);

    if let (Some(want), Some(a)) = (exp.eq1, &entry.eq1_gauge) {
        checks.outcome("eq1", want, &certify_eq1(scn, a, &pairs));
    }
    if let Some(want) = exp.ciric1 {
        checks.outcome("ciric type1", want, &certify_ciric1(scn, &pairs));
    }
    if let Some(want) = exp.ciric2 {
        checks.outcome("ciric type2", want, &certify_ciric2(&scn.abelian_type2(), &pairs));
    }
    if exp.ciric1.is_some() && space.algebra.dim == 1 {
        abelian_check(&mut checks, scn, &pairs);
    }
    if let Some(want) = exp.common {
        let form = GaugeForm::Type1;
        checks.outcome("common type1", want, &certify_common(scn, &pairs, form));
    }
    if let Some(fp) = exp.fixed_point {
        fixed_point_check(&mut checks, "fixed point", entry, fp, |x0| picard_solve(scn, x0, &opts));
    }
    if let Some(fp) = exp.common_fixed_point {
        fixed_point_check(&mut checks, "common fixed point", entry, fp, |x0| {
            common_solve(scn, x0, &opts)
        });
    }
    for &(which, want) in &exp.orbital {
        let name = format!("orbital continuity of {which:?}");
        match check_orbital_continuity(scn, which, &entry.starts, opts.max_iter) {
            Ok(c) => {
                let limit = match &c.witness {
                    Some(Witness::Orbit { limit, .. }) => Some(*limit),
                    _ => None,
                };
                let actual = match limit {
                    Some(u) => format!("violation at {u}"),
                    None if c.passed => "pass".to_string(),
                    None => "violation".to_string(),
                };
                let (expected, passed) = match want {
                    Orbital::Pass => ("pass".to_string(), c.passed),
                    Orbital::ViolationAt(u) => (format!("violation at {u}"), limit == Some(u)),
                };
                checks.push(name, expected, actual, passed);
            }
            Err(e) => checks.push(name, format!("{want:?}"), e, false),
        }
    }
    if let Some(probe) = &exp.continuity {
        let name = format!("continuity at {}", probe.at);
        let want = if probe.violation { "violation" } else { "no violation" };
        match probe_continuity(space, |x| scn.t.apply(x), probe.at, &probe.probes) {
            Ok(c) => {
                let got = if c.passed { "no violation" } else { "violation" };
                checks.push(name, want, got, got == want);
            }
            Err(e) => checks.push(name, want, e, false),
        }
    }
    if let Some(u) = exp.unique {
        match uniqueness_probe(scn, &entry.starts, opts.max_iter) {
            Ok(c) => {
                let passed = c.passed && c.point.is_some_and(|p| (p - u).abs() <= space.eps_eq());
                let actual = match c.point {
                    Some(p) if c.passed => format!("unique {p:e}"),
                    _ => "starts disagree".to_string(),
                };
                checks.push("uniqueness", format!("unique {u}"), actual, passed);
            }
            Err(e) => checks.push("uniqueness", format!("unique {u}"), e, false),
        }
    }

    EntryReport {
        id: entry.id.to_string(),
        description: entry.description.to_string(),
        location: entry.location.to_string(),
        checks: checks.0,
    }
}

pub fn run_entry(id: &str) -> Result<EntryReport> {
    Ok(run(&entry(id)?))
}

/// Runs every entry, one thread each, in listing order.
pub fn run_all() -> Vec<EntryReport> {
    let all = entries();
    thread::scope(|s| {
        let handles: Vec<_> = all.iter().map(|e| s.spawn(move || run(e))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("gallery entry panicked"))
            .collect()
    })
}
