//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use common::*;
use cstar_core::gallery::{self, FixedPoint};
use cstar_core::solver::SolveOptions;
use cstar_core::{
    cartesian, certify_ciric1, certify_ciric2, certify_eq1, certify_kannan, check_orbital_continuity, common_solve,
    eq1_translation, kannan_translation, picard_solve, uniqueness_probe, Algebra, Complex64, Element, Map, MapChoice,
    MetricSpace, NormMode, OrderMode, PointDomain, ScalarField, Tolerance, Verdict, Witness,
};
use nalgebra::DMatrix;
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn gallery_regression() -> Outcome {
    let started = Instant::now();
    let reports = gallery::run_all();
    let secs = started.elapsed().as_secs_f64();
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.all_passed())
        .map(|r| {
            let bad: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            format!("{} ({})", r.id, bad.join(", "))
        })
        .collect();
    let passed = reports.len() == 9 && failing.is_empty() && secs < 10.0;
    outcome(
        passed,
        format!(
            "{}/9 entries green in {secs:.2} s{}",
            reports.len() - failing.len(),
            if failing.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failing.join("; "))
            }
        ),
    )
}

fn matrix_gauge_certification() -> Outcome {
    let algebra = Algebra::real(2)
        .with_norm(NormMode::MaxEntry)
        .with_order(OrderMode::Entrywise);
    let space = MetricSpace::usual(PointDomain::closed(0.0, 1.0, 0.05).unwrap(), algebra, true);
    let grid = space.domain.sample();
    let r5 = 1.0 / 5f64.sqrt();
    let scn = cstar_core::MappingScenario::new(
        space,
        Map::new("x/5", |x| x / 5.0),
        cstar_core::Gauge::constant(Element::scalar(2, r5)),
        cstar_core::Gauge::new(|x, y| Element::scalar(2, x + y)),
    )
    .with_max_power(10);
    let pairs = cartesian(&grid);
    match certify_ciric1(&scn, &pairs) {
        Ok(c) => outcome(
            grid.len() == 21 && c.passed && c.worst_margin >= -1e-12,
            format!(
                "{} pairs, N = {}, passed = {}, worst margin {:.3e}",
                c.sample_size, c.max_power, c.passed, c.worst_margin
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn bound_dominance() -> Outcome {
    let entry = gallery::entry("example_3_10").unwrap();
    let scn = &entry.scenario;
    let trace = picard_solve(scn, 1.0, &SolveOptions::default().with_min_iter(60)).unwrap();
    let xs = &trace.iterates;
    if xs.len() < 61 {
        return outcome(false, format!("only {} iterates", xs.len()));
    }
    // tail bound from the starting gauges: q = 1/√3, δ(1, 1/3) = 1 + 1 + 1/3
    let delta = 1.0 + 1.0 + 1.0 / 3.0;
    let mut worst_excess = f64::NEG_INFINITY;
    for n in 0..60 {
        let bound = (1.0f64 / 3.0).powi(n as i32) / (1.0 - 1.0 / 3.0) * delta;
        if (trace.apriori_bounds[n] - bound).abs() > 1e-12 * bound.max(1.0) {
            return outcome(false, format!("recorded bound at n = {n} differs from oracle"));
        }
        for m in n + 1..=60 {
            let gap = (xs[n] - xs[m]).abs();
            worst_excess = worst_excess.max(gap - bound);
        }
    }
    let first_hit = xs.iter().position(|x| x.abs() <= 1e-10);
    let default = picard_solve(scn, 1.0, &SolveOptions::default()).unwrap();
    let converged =
        default.verdict == Verdict::ConvergedFixedPoint && default.fixed_point.is_some_and(|z| z.abs() <= 1e-10);
    let passed = worst_excess <= 1e-12 && first_hit.is_some_and(|n| n <= 25) && converged;
    outcome(
        passed,
        format!(
            "max tail excess {worst_excess:.3e}; |x_n| <= 1e-10 first at n = {}; default solve {} after {} steps",
            first_hit.map_or("never".to_string(), |n| n.to_string()),
            default.verdict.as_str(),
            default.steps()
        ),
    )
}

fn negative_cases() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let e = gallery::entry("example_3_11").unwrap();
    let tr = picard_solve(&e.scenario, 0.0, &SolveOptions::default()).unwrap();
    let res = tr.residual_for(e.scenario.t.name()).unwrap_or(f64::NAN);
    ok &= tr.verdict == Verdict::ConvergedNotFixed && (res - 0.5).abs() <= 1e-12;
    notes.push(format!("shift map: {} with residual {res}", tr.verdict.as_str()));

    let c = check_orbital_continuity(&e.scenario, MapChoice::T, &[0.0], 10_000).unwrap();
    let at = match c.witness {
        Some(Witness::Orbit { limit, .. }) => Some(limit),
        _ => None,
    };
    ok &= !c.passed && at == Some(0.0);
    notes.push(format!("orbital witness at {at:?}"));

    let e = gallery::entry("example_3_19").unwrap();
    let tr = common_solve(&e.scenario, 0.0, &SolveOptions::default()).unwrap();
    let s_name = e.scenario.s.as_ref().unwrap().name();
    let s_res = tr.residual_for(s_name).unwrap_or(f64::NAN);
    ok &= tr.verdict == Verdict::ConvergedNotFixed && tr.limit == Some(0.0) && (s_res - 0.5).abs() <= 1e-12;
    notes.push(format!(
        "pair: {} at {:?}, S residual {s_res}",
        tr.verdict.as_str(),
        tr.limit
    ));
    outcome(ok, notes.join("; "))
}

fn order_properties() -> Outcome {
    let tol = Tolerance::default();
    let order = OrderMode::Positivity;
    let mut rng = rng(0x5eed_0001);
    let mut violations = [0usize; 8];
    let mut strict_failures = 0;
    const TRIALS: usize = 1000;

    for t in 0..TRIALS {
        let dim = 1 + t % 4;
        let f = field(t / 4);

        // a*a is positive, and a positive p factors as sqrt(p)* sqrt(p)
        let a = random_element(&mut rng, dim, f);
        let p = &a.adjoint() * &a;
        if !p.is_positive(&tol) {
            violations[0] += 1;
        }
        let root = p.positive_sqrt(&tol).unwrap();
        let back = &root.adjoint() * &root;
        if (&back - &p).norm(NormMode::Operator) > 1e-9 * p.norm(NormMode::Operator).max(1.0) {
            violations[0] += 1;
        }

        // congruence preserves the order of self-adjoint elements
        let x = random_self_adjoint(&mut rng, dim, f);
        let y = &x + &random_positive(&mut rng, dim, f);
        let c = random_element(&mut rng, dim, f);
        let lhs = &(&c.adjoint() * &x) * &c;
        let rhs = &(&c.adjoint() * &y) * &c;
        if !lhs.leq(&rhs, order, &tol).unwrap() {
            violations[1] += 1;
        }

        // 0 ⪯ a ⪯ b forces ‖a‖ ≤ ‖b‖
        let small = random_positive(&mut rng, dim, f);
        let big = &small + &random_positive(&mut rng, dim, f);
        if small.norm(NormMode::Operator) > big.norm(NormMode::Operator) + tol.eps_eq {
            violations[2] += 1;
        }

        // positive a with ‖a‖ < 1/2: a(I−a)⁻¹ exists with norm < 1
        let g = random_positive(&mut rng, dim, f);
        let target = rng.random_range(0.0..0.499);
        let gn = g.norm(NormMode::Operator);
        let a = if gn > 0.0 { g.scale(target / gn) } else { g };
        match a.inv_residual_transform(&tol) {
            Ok(b) => {
                let bn = b.norm(NormMode::Operator);
                if bn.is_nan() || bn >= 1.0 {
                    strict_failures += 1;
                    violations[3] += 1;
                }
            }
            Err(_) => violations[3] += 1,
        }

        // commuting positive elements have a positive product
        let u = random_unitary(&mut rng, dim, f);
        let l1: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..2.0)).collect();
        let l2: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..2.0)).collect();
        let prod = &conjugated_diag(&u, &l1) * &conjugated_diag(&u, &l2);
        if !prod.is_positive(&tol) {
            violations[4] += 1;
        }

        // a central with I − a positive invertible: (I−a)⁻¹ preserves b ⪰ c ⪰ 0
        let s = rng.random_range(-1.0..0.99);
        let central = Element::scalar(dim, s);
        let inv = central.one_minus_inverse().unwrap();
        let lo = random_positive(&mut rng, dim, f);
        let hi = &lo + &random_positive(&mut rng, dim, f);
        if !(&inv * &lo).leq(&(&inv * &hi), order, &tol).unwrap() {
            violations[5] += 1;
        }

        // square root is order preserving
        let lo = random_positive(&mut rng, dim, f);
        let hi = &lo + &random_positive(&mut rng, dim, f);
        let (rl, rh) = (lo.positive_sqrt(&tol).unwrap(), hi.positive_sqrt(&tol).unwrap());
        if !rl.leq(&rh, order, &tol).unwrap() {
            violations[6] += 1;
        }
    }

    // dedicated strict-norm run near the 1/2 limit
    for t in 0..TRIALS {
        let dim = 1 + t % 4;
        let g = random_positive(&mut rng, dim, field(t / 4));
        let a = g.scale(rng.random_range(0.4..0.499) / g.norm(NormMode::Operator));
        match a.inv_residual_transform(&tol) {
            Ok(b) if b.norm(NormMode::Operator) < 1.0 => {}
            _ => violations[7] += 1,
        }
    }

    let total: usize = violations.iter().sum();
    outcome(
        total == 0,
        format!(
            "{TRIALS} trials per property, dims 1-4, real and complex; violations {violations:?} (strict norm failures {strict_failures})"
        ),
    )
}

fn sqrt_oracle() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = rng(0x5eed_0002);
    let mut worst: f64 = 0.0;
    for t in 0..200 {
        let dim = 2 + t % 3;
        let p = random_positive(&mut rng, dim, field(t / 3));
        let ours = p.positive_sqrt(&tol).unwrap();
        let theirs = oracle_sqrt(&p);
        worst = worst.max((&ours - &theirs).norm(NormMode::Operator));
    }
    outcome(
        worst <= 1e-9,
        format!("200 matrices, worst operator-norm gap {worst:.3e}"),
    )
}

/// Random positive definite weight for the metric `|x − y|·P`.
fn random_weight(rng: &mut impl Rng, dim: usize, f: ScalarField) -> Element {
    &random_positive(rng, dim, f) + &Element::scalar(dim, 0.1)
}

fn weighted_space(weight: Element, field: ScalarField) -> MetricSpace {
    let dim = weight.dim();
    let algebra = match field {
        ScalarField::Real => Algebra::real(dim),
        ScalarField::Complex => Algebra::complex(dim),
    };
    let domain = PointDomain::closed(0.0, 1.0, 0.1).unwrap();
    MetricSpace::new(domain, algebra, true, move |x, y| weight.scale((x - y).abs()))
}

/// Largest `c` with `c·P ⪯ a* P a`: the smallest generalised eigenvalue.
fn contraction_rate(p: &Element, a: &Element) -> f64 {
    let pm = p.matrix().clone();
    let chol = pm.clone().cholesky().expect("weight is positive definite");
    let l = chol.l();
    let linv = l.clone().try_inverse().unwrap();
    let congruent = a.adjoint().matrix() * &pm * a.matrix();
    let m: DMatrix<Complex64> = &linv * congruent * linv.adjoint();
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    m.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
}

fn implication_chain() -> Outcome {
    let mut rng = rng(0x5eed_0003);
    let mut eq1_fail = 0;
    let mut ciric1_fail = 0;
    for t in 0..50 {
        let dim = 1 + t % 3;
        let f = field(t);
        let weight = random_weight(&mut rng, dim, f);
        let g = random_element(&mut rng, dim, f);
        let a = g.scale(rng.random_range(0.3..0.9) / g.norm(NormMode::Operator));
        let rate = 0.9 * contraction_rate(&weight, &a);
        let shift = rng.random_range(0.0..=(1.0 - rate));
        let space = weighted_space(weight, f);
        let t_map = Map::new("affine", move |x| rate * x + shift);
        let pairs = cartesian(&space.domain.sample());
        let scn = eq1_translation(&space, &t_map, &a);
        if !certify_eq1(&scn, &a, &pairs).is_ok_and(|c| c.passed) {
            eq1_fail += 1;
        }
        if !certify_ciric1(&scn, &pairs).is_ok_and(|c| c.passed) {
            ciric1_fail += 1;
        }
    }

    let mut kannan_fail = 0;
    let mut ciric2_fail = 0;
    for t in 0..50 {
        let dim = 1 + t % 3;
        let f = field(t);
        let alpha = rng.random_range(0.05..0.45);
        let a = Element::scalar(dim, alpha);
        let rate = rng.random_range(0.0..alpha / (1.0 + alpha));
        let shift = rng.random_range(0.0..=(1.0 - rate));
        let space = weighted_space(random_weight(&mut rng, dim, f), f);
        let t_map = Map::new("affine", move |x| rate * x + shift);
        let pairs = cartesian(&space.domain.sample());
        match certify_kannan(&space, &t_map, &a, &pairs) {
            Ok(k) if k.certificate.passed => {
                let b = k.gauge_b.unwrap();
                let scn = kannan_translation(&space, &t_map, &b);
                if !certify_ciric2(&scn, &pairs).is_ok_and(|c| c.passed) {
                    ciric2_fail += 1;
                }
            }
            _ => kannan_fail += 1,
        }
    }
    outcome(
        eq1_fail + ciric1_fail + kannan_fail + ciric2_fail == 0,
        format!(
            "contraction: {eq1_fail} premise / {ciric1_fail} type1 failures of 50; Kannan: {kannan_fail} premise / {ciric2_fail} type2 failures of 50"
        ),
    )
}

fn abelian_equivalence() -> Outcome {
    let mut checked = Vec::new();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for e in gallery::entries() {
        if e.scenario.space.algebra.dim != 1 || e.expected.ciric1.is_none() {
            continue;
        }
        let pairs = e.scenario.default_pairs();
        let one = certify_ciric1(&e.scenario, &pairs).unwrap();
        let two = certify_ciric2(&e.scenario.abelian_type2(), &pairs).unwrap();
        let gap = (one.worst_margin - two.worst_margin).abs();
        worst = worst.max(gap);
        ok &= one.passed == two.passed && gap <= 1e-12;
        checked.push(e.id);
    }
    ok &= checked.len() == 7;
    outcome(
        ok,
        format!("{} scalar entries, worst margin gap {worst:.3e}", checked.len()),
    )
}

fn uniqueness() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for id in [
        "example_3_4",
        "example_3_10",
        "example_3_12",
        "example_3_17",
        "example_3_18",
    ] {
        let e = gallery::entry(id).unwrap();
        let c = uniqueness_probe(&e.scenario, &e.starts, 10_000).unwrap();
        let expected = match e.expected.fixed_point.or(e.expected.common_fixed_point) {
            Some(FixedPoint::At(p)) => p,
            _ => f64::NAN,
        };
        let good = e.starts.len() >= 3 && c.passed && c.point.is_some_and(|p| (p - expected).abs() <= 1e-10);
        ok &= good;
        notes.push(format!("{id}: {} starts -> {:?}", e.starts.len(), c.point));
    }
    outcome(ok, notes.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("gallery-regression", gallery_regression),
        ("matrix-gauge-certification", matrix_gauge_certification),
        ("bound-dominance", bound_dominance),
        ("negative-cases", negative_cases),
        ("order-properties", order_properties),
        ("sqrt-oracle", sqrt_oracle),
        ("implication-chain", implication_chain),
        ("abelian-equivalence", abelian_equivalence),
        ("uniqueness", uniqueness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("acceptance {} {name:<27} {tag}  {}", i + 1, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
