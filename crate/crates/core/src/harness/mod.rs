//! Oracles, seeded instances, equivalence suites and benchmarks.

pub mod bench;
pub mod rng;
pub mod schoolbook;
pub mod suite;

pub use bench::{run_benchmark, BenchCase, BenchConfig, BenchReport, StageTimings};
pub use rng::{random_matrix, RngState};
pub use schoolbook::schoolbook_matmul;
pub use suite::{run_equivalence_suite, CaseFailure, SuiteConfig, SuiteSummary};
