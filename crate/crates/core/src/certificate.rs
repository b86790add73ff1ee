use serde::Serialize;

use crate::algebra::Tolerance;

/// Which condition a [`Certificate`] speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    MetricAxioms,
    Eq1Contractive,
    CiricType1,
    CiricType2,
    Kannan,
    CommonType1,
    CommonType2,
    Continuity,
    OrbitalContinuity,
    Uniqueness,
}

/// The first counterexample a checker ran into.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// An order inequality failed for the pair `(x, y)` at iterate depth `n`.
    Pair { x: f64, y: f64, n: u32 },
    /// A metric axiom failed; `z` is present for the triangle inequality.
    Axiom {
        axiom: Axiom,
        x: f64,
        y: f64,
        z: Option<f64>,
    },
    /// A probe close to `at` whose image stayed far from the image of `at`.
    Probe {
        at: f64,
        x: f64,
        distance: f64,
        image_distance: f64,
    },
    /// An orbit from `start` accumulated at `limit` while its images did not
    /// approach the image of `limit`.
    Orbit {
        start: f64,
        limit: f64,
        image_limit: Option<f64>,
        image_at_limit: f64,
        subsequence: Subsequence,
    },
    /// Two starting points whose solves ended at different fixed points.
    Starts {
        first: f64,
        second: f64,
        first_limit: f64,
        second_limit: f64,
    },
}

impl Witness {
    /// The `(x, y, n)` triple of a pair witness.
    pub fn as_pair(&self) -> Option<(f64, f64, u32)> {
        match *self {
            Witness::Pair { x, y, n } => Some((x, y, n)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Positivity,
    Identity,
    Symmetry,
    Triangle,
}

/// Index families used to look for convergent sub-orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subsequence {
    Full,
    Evens,
    Odds,
    Squares,
}

impl Subsequence {
    pub const ALL: [Subsequence; 4] = [
        Subsequence::Full,
        Subsequence::Evens,
        Subsequence::Odds,
        Subsequence::Squares,
    ];

    /// Indices `n_i < len` of this family.
    pub fn indices(self, len: usize) -> Vec<usize> {
        match self {
            Subsequence::Full => (0..len).collect(),
            Subsequence::Evens => (0..len).step_by(2).collect(),
            Subsequence::Odds => (1..len).step_by(2).collect(),
            Subsequence::Squares => (0..).map(|i: usize| i * i).take_while(|&k| k < len).collect(),
        }
    }
}

/// Outcome of checking a condition over a finite sample.
///
/// `passed` means "no violation on this sample". `worst_margin` is the
/// smallest normalised margin seen; it is below `-eps_pos` exactly when a
/// violation was found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub condition: Condition,
    pub passed: bool,
    pub worst_margin: f64,
    pub witness: Option<Witness>,
    pub sample_size: usize,
    pub max_power: u32,
    /// Largest observed ratio `‖d(Tx,Ta)‖ / ‖d(x,a)‖` (continuity probes).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<f64>,
    /// Point of interest (common limit for uniqueness probes).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Accumulates margins and keeps the first violation.
#[derive(Debug)]
pub(crate) struct MarginTracker {
    eps_pos: f64,
    worst: f64,
    witness: Option<Witness>,
    checks: usize,
}

impl MarginTracker {
    pub(crate) fn new(tol: &Tolerance) -> Self {
        MarginTracker {
            eps_pos: tol.eps_pos,
            worst: f64::INFINITY,
            witness: None,
            checks: 0,
        }
    }

    /// Records a margin; `witness` is consulted only for violations.
    pub(crate) fn record(&mut self, margin: f64, witness: impl FnOnce() -> Witness) {
        self.checks += 1;
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        self.worst = self.worst.min(margin);
        if margin < -self.eps_pos && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    /// Records a violation that has no natural order margin.
    pub(crate) fn violate(&mut self, excess: f64, witness: impl FnOnce() -> Witness) {
        let m = -(excess.abs().max(2.0 * self.eps_pos).max(f64::MIN_POSITIVE));
        self.record(m, witness);
    }

    pub(crate) fn finish(self, condition: Condition, sample_size: usize, max_power: u32) -> Certificate {
        let worst = if self.checks == 0 { 0.0 } else { self.worst };
        Certificate {
            condition,
            passed: self.witness.is_none(),
            worst_margin: worst,
            witness: self.witness,
            sample_size,
            max_power,
            modulus: None,
            point: None,
            note: None,
        }
    }
}
