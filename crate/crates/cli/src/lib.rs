//! Command-line front end for the signature engines: input file formats,
//! engine routing, the parallel race runner, verification, and the
//! benchmark harness. The mathematical kernels live in `sigsurf-core`.

pub mod benchrun;
pub mod error;
pub mod files;
pub mod job;

pub use benchrun::{run_suite, BenchReport, BenchRow};
pub use error::CliError;
pub use files::{
    load_graph, load_pairs, load_spectral, GraphFile, GraphVertex, PairsFile, SpectralFile,
    SuiteFile, SuiteFixture,
};
pub use job::{
    applicable_engines, consensus_value, race_signature, race_signature_with_diag, resolve,
    single_signature, verify_signature, Approach, JobInput, JobSpec, RaceDiag, SignatureResult,
    VerifyReport,
};
