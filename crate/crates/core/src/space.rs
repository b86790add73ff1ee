//! C*-algebra valued metric spaces over subsets of the real line.
//!
//! Every universally quantified statement is checked over a finite sample of
//! the domain; a passing certificate means "no violation on this sample".

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{positivity_margin, Algebra, Element, NormMode};
use crate::certificate::{Axiom, Certificate, Condition, MarginTracker, Witness};
use crate::error::{Error, Result};

/// Default number of trailing pairwise comparisons in the Cauchy test.
pub const CAUCHY_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DomainKind {
    Interval {
        lo: f64,
        hi: f64,
        lo_closed: bool,
        hi_closed: bool,
    },
    Finite {
        points: Vec<f64>,
    },
    /// `{0} ∪ {2^-i : 1 ≤ i ≤ depth}`.
    Dyadic {
        depth: u32,
    },
}

/// The point set `X ⊂ ℝ` plus the grid step used to sample interval kinds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointDomain {
    pub kind: DomainKind,
    pub step: f64,
}

impl PointDomain {
    pub fn interval(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool, step: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidDomain(format!("bad interval endpoints {lo}, {hi}")));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidDomain(format!(
                "sample step must be positive, got {step}"
            )));
        }
        Ok(PointDomain {
            kind: DomainKind::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            },
            step,
        })
    }

    pub fn closed(lo: f64, hi: f64, step: f64) -> Result<Self> {
        Self::interval(lo, hi, true, true, step)
    }

    pub fn open(lo: f64, hi: f64, step: f64) -> Result<Self> {
        Self::interval(lo, hi, false, false, step)
    }

    pub fn finite(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidDomain("finite domain is empty".into()));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidDomain("finite domain has a non-finite point".into()));
        }
        let mut sorted = points.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDomain("finite domain has duplicate points".into()));
        }
        Ok(PointDomain {
            kind: DomainKind::Finite { points: sorted },
            step: 1.0,
        })
    }

    pub fn dyadic(depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidDomain("dyadic depth must be >= 1".into()));
        }
        if depth > 1000 {
            return Err(Error::InvalidDomain("dyadic depth beyond double precision".into()));
        }
        Ok(PointDomain {
            kind: DomainKind::Dyadic { depth },
            step: 1.0,
        })
    }

    pub fn with_step(mut self, step: f64) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidDomain(format!(
                "sample step must be positive, got {step}"
            )));
        }
        self.step = step;
        Ok(self)
    }

    /// Finite-list and dyadic domains; limits are snapped only on these.
    pub fn is_discrete(&self) -> bool {
        !matches!(self.kind, DomainKind::Interval { .. })
    }

    /// Ascending sample of the domain: a grid of the configured step for
    /// intervals (open endpoints dropped), every member otherwise.
    pub fn sample(&self) -> Vec<f64> {
        match &self.kind {
            DomainKind::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                let n = ((hi - lo) / self.step).round().max(1.0) as usize;
                (0..=n)
                    .filter(|&i| (i > 0 || *lo_closed) && (i < n || *hi_closed))
                    .map(|i| {
                        if i == n {
                            *hi
                        } else {
                            lo + (hi - lo) * (i as f64) / (n as f64)
                        }
                    })
                    .collect()
            }
            DomainKind::Finite { points } => points.clone(),
            DomainKind::Dyadic { depth } => std::iter::once(0.0)
                .chain((1..=*depth as i32).rev().map(|i| 2f64.powi(-i)))
                .collect(),
        }
    }

    /// Membership up to `eps` (open interval ends are strict).
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match &self.kind {
            DomainKind::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                let above = if *lo_closed { x >= lo - eps } else { x > *lo };
                let below = if *hi_closed { x <= hi + eps } else { x < *hi };
                above && below
            }
            DomainKind::Finite { points } => points.iter().any(|p| (p - x).abs() <= eps),
            DomainKind::Dyadic { .. } => (self.nearest_dyadic(x, eps) - x).abs() <= eps,
        }
    }

    /// Nearest domain point for discrete kinds; identity for intervals.
    ///
    /// On dyadic domains every value within `eps` of 0 snaps to the
    /// accumulation point 0: members below the resolution `eps` cannot be told
    /// apart from it.
    pub fn snap(&self, x: f64, eps: f64) -> f64 {
        match &self.kind {
            DomainKind::Interval { .. } => x,
            DomainKind::Finite { points } => *points
                .iter()
                .min_by(|a, b| (*a - x).abs().total_cmp(&(*b - x).abs()))
                .expect("finite domain is nonempty"),
            DomainKind::Dyadic { .. } => self.nearest_dyadic(x, eps),
        }
    }

    fn nearest_dyadic(&self, x: f64, eps: f64) -> f64 {
        let DomainKind::Dyadic { depth } = self.kind else {
            unreachable!()
        };
        if x.abs() <= eps {
            return 0.0;
        }
        let mut best = 0.0;
        for i in 1..=depth as i32 {
            let p = 2f64.powi(-i);
            if (p - x).abs() < (best - x).abs() {
                best = p;
            }
        }
        best
    }
}

impl fmt::Display for PointDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DomainKind::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => write!(
                f,
                "{}{lo}, {hi}{}",
                if *lo_closed { '[' } else { '(' },
                if *hi_closed { ']' } else { ')' }
            ),
            DomainKind::Finite { points } => {
                let items: Vec<String> = points.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            DomainKind::Dyadic { depth } => write!(f, "dyadic({depth})"),
        }
    }
}

pub type MetricFn = Arc<dyn Fn(f64, f64) -> Element + Send + Sync>;

/// `(X, 𝔸, d)` with a declared completeness flag.
#[derive(Clone)]
pub struct MetricSpace {
    pub domain: PointDomain,
    pub algebra: Algebra,
    pub complete: bool,
    metric: MetricFn,
}

impl fmt::Debug for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricSpace")
            .field("domain", &self.domain)
            .field("algebra", &self.algebra)
            .field("complete", &self.complete)
            .finish_non_exhaustive()
    }
}

impl MetricSpace {
    pub fn new(
        domain: PointDomain,
        algebra: Algebra,
        complete: bool,
        metric: impl Fn(f64, f64) -> Element + Send + Sync + 'static,
    ) -> Self {
        MetricSpace {
            domain,
            algebra,
            complete,
            metric: Arc::new(metric),
        }
    }

    /// `d(x, y) = |x − y| · I`.
    pub fn usual(domain: PointDomain, algebra: Algebra, complete: bool) -> Self {
        let dim = algebra.dim;
        Self::new(domain, algebra, complete, move |x, y| {
            Element::scalar(dim, (x - y).abs())
        })
    }

    pub fn d(&self, x: f64, y: f64) -> Element {
        (self.metric)(x, y)
    }

    /// `‖d(x, y)‖` in the configured norm mode.
    pub fn dist(&self, x: f64, y: f64) -> f64 {
        self.d(x, y).norm(self.algebra.norm_mode)
    }

    pub fn norm_mode(&self) -> NormMode {
        self.algebra.norm_mode
    }

    pub fn eps_eq(&self) -> f64 {
        self.algebra.tol.eps_eq
    }

    pub fn snap(&self, x: f64) -> f64 {
        self.domain.snap(x, self.eps_eq())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.domain.contains(x, self.eps_eq())
    }

    pub(crate) fn require_in_domain(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain(x))
        }
    }
}

/// Checks positivity, identity of indiscernibles, symmetry and the order
/// triangle inequality on every pair and triple drawn from `sample`.
pub fn check_metric_axioms(space: &MetricSpace, sample: &[f64]) -> Result<Certificate> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    for &x in sample {
        space.require_in_domain(x)?;
    }
    let alg = &space.algebra;
    let tol = &alg.tol;
    let n = sample.len();

    let mut table = Vec::with_capacity(n * n);
    for &x in sample {
        for &y in sample {
            let d = space.d(x, y);
            if d.dim() != alg.dim {
                return Err(Error::DimensionMismatch {
                    left: d.dim(),
                    right: alg.dim,
                });
            }
            table.push(d);
        }
    }
    let d = |i: usize, j: usize| &table[i * n + j];

    let mut tracker = MarginTracker::new(tol);
    let axiom = |axiom, i: usize, j: usize, z: Option<f64>| Witness::Axiom {
        axiom,
        x: sample[i],
        y: sample[j],
        z,
    };
    for i in 0..n {
        for j in 0..n {
            let dij = d(i, j);
            tracker.record(positivity_margin(dij, None, tol), || {
                axiom(Axiom::Positivity, i, j, None)
            });

            let size = dij.norm(alg.norm_mode);
            if sample[i] == sample[j] && size > tol.eps_eq {
                tracker.violate(size, || axiom(Axiom::Identity, i, j, None));
            } else if sample[i] != sample[j] && size == 0.0 {
                tracker.violate(0.0, || axiom(Axiom::Identity, i, j, None));
            }

            let asym = (dij - d(j, i)).norm(NormMode::MaxEntry);
            if asym > tol.eps_eq {
                tracker.violate(asym, || axiom(Axiom::Symmetry, i, j, None));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for (k, &z) in sample.iter().enumerate() {
                let rhs = d(i, k) + d(k, j);
                let m = alg.margin(d(i, j), &rhs)?;
                tracker.record(m, || axiom(Axiom::Triangle, i, j, Some(z)));
            }
        }
    }
    Ok(tracker.finish(Condition::MetricAxioms, n, 0))
}

/// Numeric limit of `seq`, if its tail is Cauchy.
///
/// The tail is the last `min(CAUCHY_WINDOW, len − 1)` consecutive steps; every
/// pair of points in it must be within `eps_eq`. The returned point is the
/// final element, snapped onto discrete domains.
pub fn sequence_limit(space: &MetricSpace, seq: &[f64]) -> Option<f64> {
    sequence_limit_with_window(space, seq, CAUCHY_WINDOW)
}

pub fn sequence_limit_with_window(space: &MetricSpace, seq: &[f64], window: usize) -> Option<f64> {
    if seq.len() < 2 || seq.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let w = window.max(1).min(seq.len() - 1);
    let tail = &seq[seq.len() - 1 - w..];
    let eps = space.eps_eq();
    for (i, &a) in tail.iter().enumerate() {
        for &b in &tail[i + 1..] {
            if space.dist(a, b) > eps {
                return None;
            }
        }
    }
    Some(space.snap(*seq.last().unwrap()))
}

/// Probes `ε–δ` continuity of `map` at `at` over a ladder `δ = 10^-k`.
///
/// For each rung the largest image distance among probes closer than `δ` is
/// recorded. A violation is reported when the finest populated rung is at
/// least three decades below the coarsest one and its image distance has not
/// dropped below half the coarse value (and exceeds `eps_eq`). This is a
/// semi-decision: no violation does not prove continuity.
pub fn probe_continuity(space: &MetricSpace, map: impl Fn(f64) -> f64, at: f64, probes: &[f64]) -> Result<Certificate> {
    space.require_in_domain(at)?;
    let eps = space.eps_eq();
    let image_at = map(at);

    struct Obs {
        x: f64,
        dist: f64,
        image_dist: f64,
    }
    let mut obs = Vec::new();
    for &x in probes {
        space.require_in_domain(x)?;
        let dist = space.dist(x, at);
        if dist > 0.0 {
            obs.push(Obs {
                x,
                dist,
                image_dist: space.dist(map(x), image_at),
            });
        }
    }

    let modulus = obs.iter().map(|o| o.image_dist / o.dist).fold(0.0_f64, f64::max);

    // (rung, worst observation) for every populated rung
    let mut rungs: Vec<(i32, &Obs)> = Vec::new();
    for k in 0..=12 {
        let delta = 10f64.powi(-k);
        if let Some(worst) = obs
            .iter()
            .filter(|o| o.dist < delta)
            .max_by(|a, b| a.image_dist.total_cmp(&b.image_dist))
        {
            rungs.push((k, worst));
        }
    }

    let mut tracker = MarginTracker::new(&space.algebra.tol);
    if let (Some(&(k0, coarse)), Some(&(k1, fine))) = (rungs.first(), rungs.last()) {
        if k1 - k0 >= 3 && fine.image_dist > eps && fine.image_dist >= 0.5 * coarse.image_dist {
            tracker.violate(fine.image_dist, || Witness::Probe {
                at,
                x: fine.x,
                distance: fine.dist,
                image_distance: fine.image_dist,
            });
        }
    }
    let mut cert = tracker.finish(Condition::Continuity, obs.len(), 0);
    cert.modulus = Some(modulus);
    cert.point = Some(at);
    Ok(cert)
}
