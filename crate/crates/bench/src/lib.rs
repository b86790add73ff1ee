//! Criterion benchmarks for the certifier, solvers and expression evaluator.
//! Run with `cargo bench -p cstar-bench`.
