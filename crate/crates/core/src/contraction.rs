//! Certifiers for the contractive conditions.
//!
//! All certifiers check an order inequality `distance ⪯ bound` over a finite
//! list of pairs and iterate depths `n = 1..=max_power`, keep the smallest
//! normalised margin, and report the first violation in `(n, pair)` order.
//! Gauge powers are formed by repeated multiplication.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Element, NormMode};
use crate::certificate::{Certificate, Condition, MarginTracker, Witness};
use crate::error::{Error, Result};
use crate::space::MetricSpace;

/// A self-map of the point domain.
#[derive(Clone)]
pub struct Map {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Map({})", self.name)
    }
}

impl Map {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Map {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn identity() -> Self {
        Map::new("identity", |x| x)
    }

    pub fn constant(c: f64) -> Self {
        Map::new(format!("const {c}"), move |_| c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// `M^n x`.
    pub fn iterate(&self, x: f64, n: u32) -> f64 {
        (0..n).fold(x, |acc, _| self.apply(acc))
    }

    /// The composition `outer ∘ self`, i.e. `x ↦ outer(self(x))`.
    pub fn then(&self, outer: &Map) -> Map {
        let inner = self.clone();
        let outer_map = outer.clone();
        Map::new(format!("{}∘{}", outer.name, self.name), move |x| {
            outer_map.apply(inner.apply(x))
        })
    }
}

/// A map `X × X → 𝔸` (the gauges `q` and `δ`).
#[derive(Clone)]
pub struct Gauge {
    f: Arc<dyn Fn(f64, f64) -> Element + Send + Sync>,
}

impl fmt::Debug for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Gauge")
    }
}

impl Gauge {
    pub fn new(f: impl Fn(f64, f64) -> Element + Send + Sync + 'static) -> Self {
        Gauge { f: Arc::new(f) }
    }

    pub fn constant(e: Element) -> Self {
        Gauge::new(move |_, _| e.clone())
    }

    pub fn at(&self, x: f64, y: f64) -> Element {
        (self.f)(x, y)
    }
}

/// Shape of the bound: `(q*)ⁿ δ qⁿ` or `qⁿ δ` with a central positive gauge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugeForm {
    #[default]
    Type1,
    Type2,
}

/// One or two self-maps on a metric space together with their gauges.
#[derive(Debug, Clone)]
pub struct MappingScenario {
    pub space: MetricSpace,
    pub t: Map,
    pub s: Option<Map>,
    pub q: Gauge,
    pub delta: Gauge,
    pub form: GaugeForm,
    pub max_power: u32,
}

impl MappingScenario {
    pub fn new(space: MetricSpace, t: Map, q: Gauge, delta: Gauge) -> Self {
        MappingScenario {
            space,
            t,
            s: None,
            q,
            delta,
            form: GaugeForm::Type1,
            max_power: 10,
        }
    }

    pub fn with_s(mut self, s: Map) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_form(mut self, form: GaugeForm) -> Self {
        self.form = form;
        self
    }

    pub fn with_max_power(mut self, n: u32) -> Self {
        self.max_power = n;
        self
    }

    pub fn s(&self) -> Result<&Map> {
        self.s.as_ref().ok_or(Error::MissingSecondMap)
    }

    /// Full Cartesian square of the domain sample, including the diagonal.
    pub fn default_pairs(&self) -> Vec<(f64, f64)> {
        cartesian(&self.space.domain.sample())
    }

    /// The same maps with gauge `q*q` in type2 form. On a commutative
    /// algebra `(q*)ⁿ δ qⁿ = (q*q)ⁿ δ`, so both forms then certify the same
    /// inequality.
    pub fn abelian_type2(&self) -> MappingScenario {
        let q = self.q.clone();
        MappingScenario {
            q: Gauge::new(move |x, y| {
                let g = q.at(x, y);
                &g.adjoint() * &g
            }),
            form: GaugeForm::Type2,
            ..self.clone()
        }
    }
}

pub fn cartesian(points: &[f64]) -> Vec<(f64, f64)> {
    points
        .iter()
        .flat_map(|&x| points.iter().map(move |&y| (x, y)))
        .collect()
}

/// Contraction scenario `q ≡ a`, `δ ≡ d` in type1 form.
pub fn eq1_translation(space: &MetricSpace, t: &Map, a: &Element) -> MappingScenario {
    let metric = space.clone();
    MappingScenario::new(
        space.clone(),
        t.clone(),
        Gauge::constant(a.clone()),
        Gauge::new(move |x, y| metric.d(x, y)),
    )
}

/// Type2 scenario `q ≡ b`, `δ(x, y) = d(x, Tx) + d(y, Ty)` derived from a
/// Kannan-type map.
pub fn kannan_translation(space: &MetricSpace, t: &Map, b: &Element) -> MappingScenario {
    let metric = space.clone();
    let map = t.clone();
    MappingScenario::new(
        space.clone(),
        t.clone(),
        Gauge::constant(b.clone()),
        Gauge::new(move |x, y| &metric.d(x, map.apply(x)) + &metric.d(y, map.apply(y))),
    )
    .with_form(GaugeForm::Type2)
}

fn check_pairs_in_domain(space: &MetricSpace, pairs: &[(f64, f64)]) -> Result<()> {
    for &(x, y) in pairs {
        space.require_in_domain(x)?;
        space.require_in_domain(y)?;
    }
    Ok(())
}

fn check_maps_into_domain(space: &MetricSpace, map: &Map, pairs: &[(f64, f64)]) -> Result<()> {
    for &(x, y) in pairs {
        for p in [x, y] {
            let image = map.apply(p);
            if !space.contains(image) {
                return Err(Error::MapLeavesDomain { x: p, image });
            }
        }
    }
    Ok(())
}

/// `d(Tx, Ty) ⪯ a* d(x, y) a` for every sampled pair.
pub fn certify_eq1(scn: &MappingScenario, a: &Element, pairs: &[(f64, f64)]) -> Result<Certificate> {
    let space = &scn.space;
    let norm = space.algebra.norm(a);
    if norm >= 1.0 {
        return Err(Error::NormTooLarge { norm, limit: 1.0 });
    }
    check_pairs_in_domain(space, pairs)?;
    check_maps_into_domain(space, &scn.t, pairs)?;
    let a_star = a.adjoint();
    let mut tracker = MarginTracker::new(&space.algebra.tol);
    for &(x, y) in pairs {
        let lhs = space.d(scn.t.apply(x), scn.t.apply(y));
        let rhs = &(&a_star * &space.d(x, y)) * a;
        let m = space.algebra.margin(&lhs, &rhs)?;
        tracker.record(m, || Witness::Pair { x, y, n: 1 });
    }
    Ok(tracker.finish(Condition::Eq1Contractive, pairs.len(), 1))
}

/// Which inequality a generic orbit check evaluates.
#[derive(Clone, Copy)]
struct OrbitCheck {
    condition: Condition,
    form: GaugeForm,
}

/// Checks `d(Lⁿx, Rⁿy) ⪯ bound_n(q(x,y), δ(x,y))` for `n = 1..=max_power`.
fn certify_orbits(
    scn: &MappingScenario,
    left: &Map,
    right: &Map,
    pairs: &[(f64, f64)],
    check: OrbitCheck,
) -> Result<Certificate> {
    let space = &scn.space;
    let alg = &space.algebra;
    check_pairs_in_domain(space, pairs)?;
    check_maps_into_domain(space, left, pairs)?;
    if !std::ptr::eq(left, right) {
        check_maps_into_domain(space, right, pairs)?;
    }

    let mut gauges = Vec::with_capacity(pairs.len());
    for &(x, y) in pairs {
        let q = scn.q.at(x, y);
        let delta = scn.delta.at(x, y);
        let norm = alg.norm(&q);
        if norm >= 1.0 {
            return Err(Error::GaugeNormTooLarge { x, y, norm });
        }
        if check.form == GaugeForm::Type2 {
            if !alg.is_central(&q) {
                return Err(Error::GaugeNotCentral { x, y });
            }
            if !alg.is_positive(&q) {
                return Err(Error::GaugeNotPositive { x, y });
            }
        }
        if !alg.is_positive(&delta) {
            return Err(Error::DeltaNotPositive { x, y });
        }
        gauges.push((q, delta));
    }

    // margins[n-1][pair]
    let n_max = scn.max_power as usize;
    let mut margins = vec![vec![0.0; pairs.len()]; n_max];
    for (p, (&(x, y), (q, delta))) in pairs.iter().zip(&gauges).enumerate() {
        let (mut lx, mut ry) = (x, y);
        let mut q_pow = Element::identity(q.dim());
        for row in margins.iter_mut() {
            lx = left.apply(lx);
            ry = right.apply(ry);
            q_pow = &q_pow * q;
            let bound = match check.form {
                GaugeForm::Type1 => &(&q_pow.adjoint() * delta) * &q_pow,
                GaugeForm::Type2 => &q_pow * delta,
            };
            row[p] = alg.margin(&space.d(lx, ry), &bound)?;
        }
    }

    let mut tracker = MarginTracker::new(&alg.tol);
    for (n, row) in margins.iter().enumerate() {
        for (&m, &(x, y)) in row.iter().zip(pairs) {
            tracker.record(m, || Witness::Pair { x, y, n: n as u32 + 1 });
        }
    }
    Ok(tracker.finish(check.condition, pairs.len(), scn.max_power))
}

/// `d(Tⁿx, Tⁿy) ⪯ (q*)ⁿ δ qⁿ` with `‖q(x,y)‖ < 1`.
pub fn certify_ciric1(scn: &MappingScenario, pairs: &[(f64, f64)]) -> Result<Certificate> {
    certify_orbits(
        scn,
        &scn.t,
        &scn.t,
        pairs,
        OrbitCheck {
            condition: Condition::CiricType1,
            form: GaugeForm::Type1,
        },
    )
}

/// `d(Tⁿx, Tⁿy) ⪯ qⁿ δ` with `q(x,y)` central, positive and of norm below 1.
pub fn certify_ciric2(scn: &MappingScenario, pairs: &[(f64, f64)]) -> Result<Certificate> {
    certify_orbits(
        scn,
        &scn.t,
        &scn.t,
        pairs,
        OrbitCheck {
            condition: Condition::CiricType2,
            form: GaugeForm::Type2,
        },
    )
}

/// Mixed-orbit inequality `d(Tⁿx, Sⁿy) ⪯ bound` for a pair of maps.
pub fn certify_common(scn: &MappingScenario, pairs: &[(f64, f64)], form: GaugeForm) -> Result<Certificate> {
    let s = scn.s()?;
    let condition = match form {
        GaugeForm::Type1 => Condition::CommonType1,
        GaugeForm::Type2 => Condition::CommonType2,
    };
    certify_orbits(scn, &scn.t, s, pairs, OrbitCheck { condition, form })
}

/// Kannan certificate plus the derived type2 gauge `B = A(I − A)⁻¹` on pass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KannanCertificate {
    pub certificate: Certificate,
    pub gauge_b: Option<Element>,
}

/// `d(Tx, Ty) ⪯ A (d(x, Tx) + d(y, Ty))` with `A` central, positive and of
/// operator norm below 1/2.
pub fn certify_kannan(space: &MetricSpace, t: &Map, a: &Element, pairs: &[(f64, f64)]) -> Result<KannanCertificate> {
    let alg = &space.algebra;
    let b = a.inv_residual_transform(&alg.tol)?;
    if !a.is_central(&alg.tol) {
        return Err(Error::NotCentral);
    }
    debug_assert!(b.norm(NormMode::Operator) < 1.0);
    check_pairs_in_domain(space, pairs)?;
    check_maps_into_domain(space, t, pairs)?;
    let mut tracker = MarginTracker::new(&alg.tol);
    for &(x, y) in pairs {
        let (tx, ty) = (t.apply(x), t.apply(y));
        let lhs = space.d(tx, ty);
        let rhs = a * &(&space.d(x, tx) + &space.d(y, ty));
        tracker.record(alg.margin(&lhs, &rhs)?, || Witness::Pair { x, y, n: 1 });
    }
    let certificate = tracker.finish(Condition::Kannan, pairs.len(), 1);
    let gauge_b = certificate.passed.then_some(b);
    Ok(KannanCertificate { certificate, gauge_b })
}
