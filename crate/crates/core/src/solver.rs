//! Picard and common-fixed-point iteration, orbital continuity and
//! uniqueness probes.

use serde::Serialize;

use crate::algebra::Element;
use crate::certificate::{Certificate, Condition, MarginTracker, Subsequence, Witness};
use crate::contraction::{GaugeForm, Map, MappingScenario};
use crate::error::{Error, Result};
use crate::space::{sequence_limit, MetricSpace, CAUCHY_WINDOW};

/// Growth factor over [`DIVERGENCE_SPAN`] steps that flags divergence.
pub const DIVERGENCE_FACTOR: f64 = 10.0;
pub const DIVERGENCE_SPAN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_iter: usize,
    /// Consecutive residuals below `eps_eq` needed to stop.
    pub window: usize,
    /// Iterate at least this many steps even if the stopping rule fires.
    pub min_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_iter: 10_000,
            window: CAUCHY_WINDOW,
            min_iter: 0,
        }
    }
}

impl SolveOptions {
    pub fn with_max_iter(mut self, n: usize) -> Self {
        self.max_iter = n;
        self
    }

    pub fn with_min_iter(mut self, n: usize) -> Self {
        self.min_iter = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConvergedFixedPoint,
    ConvergedNotFixed,
    MaxIter,
    Diverged,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConvergedFixedPoint => "converged-fixed-point",
            Verdict::ConvergedNotFixed => "converged-not-fixed",
            Verdict::MaxIter => "max-iter",
            Verdict::Diverged => "diverged",
        }
    }
}

/// Fixedness residual `‖d(M z, z)‖` of one map at the candidate limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub map: String,
    pub residual: f64,
}

/// Norms of the gauges at the start, feeding the a-priori bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    pub q_norm: f64,
    pub delta_norm: f64,
}

/// Record of one iteration run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTrace {
    pub iterates: Vec<f64>,
    /// `d(xₙ, xₙ₊₁)`.
    pub step_distances: Vec<Element>,
    pub residual_norms: Vec<f64>,
    /// Upper bound on `‖d(xₙ, xₘ)‖` for every `m > n`.
    pub apriori_bounds: Vec<f64>,
    pub verdict: Verdict,
    pub fixed_point: Option<f64>,
    /// Snapped limit of a Cauchy orbit, fixed or not.
    pub limit: Option<f64>,
    pub fixedness: Vec<Residual>,
    pub bound_constants: BoundConstants,
}

impl IterationTrace {
    pub fn steps(&self) -> usize {
        self.step_distances.len()
    }

    pub fn residual_for(&self, map: &str) -> Option<f64> {
        self.fixedness.iter().find(|r| r.map == map).map(|r| r.residual)
    }

    /// Largest fixedness residual over all maps checked.
    pub fn max_fixedness(&self) -> Option<f64> {
        self.fixedness.iter().map(|r| r.residual).reduce(f64::max)
    }
}

/// Geometric tail bound `‖q‖^{2n}/(1−‖q‖²)·‖δ‖` (type1) or
/// `‖q‖ⁿ/(1−‖q‖)·‖δ‖` (type2).
pub fn apriori_bound(form: GaugeForm, c: BoundConstants, n: usize) -> f64 {
    let rate = match form {
        GaugeForm::Type1 => c.q_norm * c.q_norm,
        GaugeForm::Type2 => c.q_norm,
    };
    if rate.is_nan() || rate >= 1.0 {
        return f64::INFINITY;
    }
    rate.powi(n as i32) / (1.0 - rate) * c.delta_norm
}

enum Stop {
    Converged,
    MaxIter,
    Diverged,
}

struct Orbit {
    iterates: Vec<f64>,
    steps: Vec<Element>,
    residuals: Vec<f64>,
    stop: Stop,
}

/// Runs `x_{n} = next(n, x_{n-1})` until the stopping rule fires.
///
/// `exact_stop` enables the immediate stop when a step lands exactly on a
/// point the generator maps to itself (single-map orbits only).
fn run_orbit(
    space: &MetricSpace,
    x0: f64,
    opts: &SolveOptions,
    mut point: impl FnMut(usize) -> f64,
    exact_stop: Option<&Map>,
) -> Orbit {
    let eps = space.eps_eq();
    let window = opts.window.max(1);
    let mut iterates = vec![x0];
    let mut steps = Vec::new();
    let mut residuals: Vec<f64> = Vec::new();
    let mut stop = Stop::MaxIter;
    for n in 1..=opts.max_iter {
        let prev = *iterates.last().unwrap();
        let next = point(n);
        if !next.is_finite() {
            stop = Stop::Diverged;
            break;
        }
        let step = space.d(prev, next);
        let r = step.norm(space.norm_mode());
        iterates.push(next);
        steps.push(step);
        residuals.push(r);

        if residuals.len() > DIVERGENCE_SPAN {
            let earlier = residuals[residuals.len() - 1 - DIVERGENCE_SPAN];
            if earlier > 0.0 && r > DIVERGENCE_FACTOR * earlier {
                stop = Stop::Diverged;
                break;
            }
        }
        if n < opts.min_iter {
            continue;
        }
        if let Some(map) = exact_stop {
            if map.apply(next) == next {
                stop = Stop::Converged;
                break;
            }
        }
        if residuals.len() >= window && residuals[residuals.len() - window..].iter().all(|&r| r <= eps) {
            stop = Stop::Converged;
            break;
        }
    }
    Orbit {
        iterates,
        steps,
        residuals,
        stop,
    }
}

fn assemble(
    space: &MetricSpace,
    orbit: Orbit,
    form: GaugeForm,
    constants: BoundConstants,
    maps: &[&Map],
) -> IterationTrace {
    let eps = space.eps_eq();
    let apriori_bounds = (0..orbit.steps.len())
        .map(|n| apriori_bound(form, constants, n))
        .collect();
    let (verdict, limit, fixedness) = match orbit.stop {
        Stop::Converged => {
            let z = space.snap(*orbit.iterates.last().unwrap());
            let fixedness: Vec<Residual> = maps
                .iter()
                .map(|m| Residual {
                    map: m.name().to_string(),
                    residual: space.dist(m.apply(z), z),
                })
                .collect();
            let fixed = fixedness.iter().all(|r| r.residual <= eps);
            let verdict = if fixed {
                Verdict::ConvergedFixedPoint
            } else {
                Verdict::ConvergedNotFixed
            };
            (verdict, Some(z), fixedness)
        }
        Stop::MaxIter => (Verdict::MaxIter, None, Vec::new()),
        Stop::Diverged => (Verdict::Diverged, None, Vec::new()),
    };
    IterationTrace {
        iterates: orbit.iterates,
        step_distances: orbit.steps,
        residual_norms: orbit.residuals,
        apriori_bounds,
        verdict,
        fixed_point: (verdict == Verdict::ConvergedFixedPoint).then(|| limit.unwrap()),
        limit,
        fixedness,
        bound_constants: constants,
    }
}

/// Picard iteration `xₙ₊₁ = T xₙ` from `x0`.
///
/// Stops once `window` consecutive residuals are within `eps_eq` (or a step
/// lands exactly on a fixed point), snaps the last iterate onto the domain,
/// and checks `‖d(Tz, z)‖ ≤ eps_eq` there.
pub fn picard_solve(scn: &MappingScenario, x0: f64, opts: &SolveOptions) -> Result<IterationTrace> {
    let space = &scn.space;
    space.require_in_domain(x0)?;
    let t = &scn.t;
    let tx0 = t.apply(x0);
    let constants = BoundConstants {
        q_norm: space.algebra.norm(&scn.q.at(x0, tx0)),
        delta_norm: space.algebra.norm(&scn.delta.at(x0, tx0)),
    };
    let mut x = x0;
    let orbit = run_orbit(
        space,
        x0,
        opts,
        |_| {
            x = t.apply(x);
            x
        },
        Some(t),
    );
    Ok(assemble(space, orbit, scn.form, constants, &[t]))
}

fn alternating(scn: &MappingScenario, t: &Map, s: &Map, x0: f64, opts: &SolveOptions) -> Result<IterationTrace> {
    let space = &scn.space;
    space.require_in_domain(x0)?;
    let alg = &space.algebra;
    let (tx0, sx0) = (t.apply(x0), s.apply(x0));
    let constants = BoundConstants {
        q_norm: alg.norm(&scn.q.at(x0, sx0)).max(alg.norm(&scn.q.at(tx0, x0))),
        delta_norm: alg.norm(&scn.delta.at(x0, sx0)) + alg.norm(&scn.delta.at(tx0, x0)),
    };
    // xₙ = Tⁿx₀ for even n, Sⁿx₀ for odd n
    let (mut tn, mut sn) = (x0, x0);
    let orbit = run_orbit(
        space,
        x0,
        opts,
        |n| {
            tn = t.apply(tn);
            sn = s.apply(sn);
            if n % 2 == 0 {
                tn
            } else {
                sn
            }
        },
        None,
    );
    Ok(assemble(space, orbit, scn.form, constants, &[t, s]))
}

/// The sequence `xₙ = Tⁿx₀` (n even), `Sⁿx₀` (n odd); at its limit both
/// residuals are checked.
pub fn common_solve(scn: &MappingScenario, x0: f64, opts: &SolveOptions) -> Result<IterationTrace> {
    let s = scn.s()?;
    alternating(scn, &scn.t, s, x0, opts)
}

/// Solves the pair `(T, S∘T)`, then checks `Tz = z` and `Sz = z` separately.
pub fn composed_common_solve(scn: &MappingScenario, x0: f64, opts: &SolveOptions) -> Result<IterationTrace> {
    let s = scn.s()?;
    let st = scn.t.then(s);
    let mut trace = alternating(scn, &scn.t, &st, x0, opts)?;
    if let Some(z) = trace.limit {
        let space = &scn.space;
        let s_res = space.dist(s.apply(z), z);
        trace.fixedness.push(Residual {
            map: s.name().to_string(),
            residual: s_res,
        });
        if trace.verdict == Verdict::ConvergedFixedPoint && s_res > space.eps_eq() {
            trace.verdict = Verdict::ConvergedNotFixed;
            trace.fixed_point = None;
        }
    }
    Ok(trace)
}

/// Which map of a scenario to examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapChoice {
    T,
    S,
}

impl MapChoice {
    pub fn pick(self, scn: &MappingScenario) -> Result<&Map> {
        match self {
            MapChoice::T => Ok(&scn.t),
            MapChoice::S => scn.s(),
        }
    }
}

/// Looks for orbits that accumulate at `u` while their images do not
/// approach `M u`.
///
/// For each start the orbit is generated with the solver's stopping rule.
/// If the whole orbit converges, the image orbit has the same limit and it
/// is compared with `M u`. Otherwise the even, odd and square-index
/// sub-orbits are examined. Passing means no violation was found.
pub fn check_orbital_continuity(
    scn: &MappingScenario,
    which: MapChoice,
    starts: &[f64],
    max_iter: usize,
) -> Result<Certificate> {
    let map = which.pick(scn)?;
    let space = &scn.space;
    let eps = space.eps_eq();
    let opts = SolveOptions::default().with_max_iter(max_iter);
    let mut tracker = MarginTracker::new(&space.algebra.tol);

    for &start in starts {
        space.require_in_domain(start)?;
        let mut x = start;
        let orbit = run_orbit(
            space,
            start,
            &opts,
            |_| {
                x = map.apply(x);
                x
            },
            Some(map),
        );
        let points = &orbit.iterates;
        let full = match orbit.stop {
            Stop::Diverged => continue,
            Stop::Converged => Some(space.snap(*points.last().unwrap())),
            Stop::MaxIter => sequence_limit(space, points),
        };

        if let Some(u) = full {
            let image_at_limit = map.apply(u);
            let gap = space.dist(image_at_limit, u);
            if gap > eps {
                tracker.violate(gap, || Witness::Orbit {
                    start,
                    limit: u,
                    image_limit: Some(u),
                    image_at_limit,
                    subsequence: Subsequence::Full,
                });
            } else {
                tracker.record(0.0, || unreachable!());
            }
            continue;
        }

        for family in [Subsequence::Evens, Subsequence::Odds, Subsequence::Squares] {
            let idx = family.indices(points.len());
            let sub: Vec<f64> = idx.iter().map(|&i| points[i]).collect();
            let Some(u) = sequence_limit(space, &sub) else {
                continue;
            };
            let images: Vec<f64> = idx
                .iter()
                .map(|&i| points.get(i + 1).copied().unwrap_or_else(|| map.apply(points[i])))
                .collect();
            let image_at_limit = map.apply(u);
            match sequence_limit(space, &images) {
                Some(v) if space.dist(v, image_at_limit) <= eps => tracker.record(0.0, || unreachable!()),
                found => {
                    let gap = found.map_or(f64::INFINITY, |v| space.dist(v, image_at_limit));
                    tracker.violate(gap.min(f64::MAX), || Witness::Orbit {
                        start,
                        limit: u,
                        image_limit: found,
                        image_at_limit,
                        subsequence: family,
                    });
                }
            }
        }
    }

    let mut cert = tracker.finish(Condition::OrbitalContinuity, starts.len(), 0);
    if cert.passed {
        cert.note = Some(format!("no violation found up to {max_iter} iterations"));
    }
    Ok(cert)
}

/// Solves from every start (the common solve when `S` is present) and passes
/// iff at least one start reaches a fixed point and all fixed points found
/// agree within `eps_eq`.
pub fn uniqueness_probe(scn: &MappingScenario, starts: &[f64], max_iter: usize) -> Result<Certificate> {
    if starts.len() < 2 {
        return Err(Error::TooFewStarts {
            needed: 2,
            got: starts.len(),
        });
    }
    let space = &scn.space;
    let opts = SolveOptions::default().with_max_iter(max_iter);
    let mut found: Vec<(f64, f64)> = Vec::new();
    let mut ends = Vec::new();
    for &x0 in starts {
        let trace = match scn.s {
            Some(_) => common_solve(scn, x0, &opts)?,
            None => picard_solve(scn, x0, &opts)?,
        };
        ends.push(trace.limit.unwrap_or(*trace.iterates.last().unwrap()));
        if let Some(z) = trace.fixed_point {
            found.push((x0, z));
        }
    }

    let mut tracker = MarginTracker::new(&space.algebra.tol);
    let mut note = None;
    if let Some(&(first, z)) = found.first() {
        for &(second, w) in &found[1..] {
            let gap = space.dist(z, w);
            if gap > space.eps_eq() {
                tracker.violate(gap, || Witness::Starts {
                    first,
                    second,
                    first_limit: z,
                    second_limit: w,
                });
            } else {
                tracker.record(0.0, || unreachable!());
            }
        }
    } else {
        tracker.violate(0.0, || Witness::Starts {
            first: starts[0],
            second: starts[1],
            first_limit: ends[0],
            second_limit: ends[1],
        });
        note = Some("no start reached a fixed point".to_string());
    }
    let mut cert = tracker.finish(Condition::Uniqueness, starts.len(), 0);
    if cert.passed {
        cert.point = found.first().map(|&(_, z)| z);
    }
    cert.note = note;
    Ok(cert)
}
