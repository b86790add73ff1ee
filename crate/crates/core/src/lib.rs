//! Computation in C*-algebra valued metric spaces over finite matrix algebras.
//!
//! The crate certifies Ćirić-type contractive conditions on finite samples,
//! runs Picard and alternating common-fixed-point iterations with geometric
//! a-priori error bounds, checks orbital continuity, and ships a gallery of
//! pinned worked examples.
//!
//! ```
//! use cstar_core::gallery;
//!
//! let report = gallery::run_entry("example_3_10").unwrap();
//! assert!(report.all_passed());
//! ```

pub mod algebra;
pub mod certificate;
pub mod contraction;
pub mod error;
pub mod gallery;
pub mod solver;
pub mod space;

pub use algebra::{order_margin, positivity_margin, Algebra, Element, NormMode, OrderMode, ScalarField, Tolerance};
pub use certificate::{Axiom, Certificate, Condition, Subsequence, Witness};
pub use contraction::{
    cartesian, certify_ciric1, certify_ciric2, certify_common, certify_eq1, certify_kannan, eq1_translation,
    kannan_translation, Gauge, GaugeForm, KannanCertificate, Map, MappingScenario,
};
pub use error::{Error, Result};
pub use gallery::{list_entries, run_entry, EntryInfo, EntryReport, GalleryEntry};
pub use num_complex::Complex64;
pub use solver::{
    check_orbital_continuity, common_solve, composed_common_solve, picard_solve, uniqueness_probe, BoundConstants,
    IterationTrace, MapChoice, Residual, SolveOptions, Verdict,
};
pub use space::{check_metric_axioms, probe_continuity, sequence_limit, DomainKind, MetricSpace, PointDomain};
