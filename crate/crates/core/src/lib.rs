//! Signature invariants of suspension hypersurface singularities.
//!
//! For an irreducible plane curve germ `g(x, y)` and an integer `N >= 2`,
//! this crate computes the signature of the Milnor fiber of the suspension
//! `z^N + g(x, y)` through three independent engines:
//!
//! * [`reduction::signature_puiseux`] reduces the Puiseux pairs of the
//!   branch to a weighted sum of Brieskorn signatures and counts lattice
//!   points ([`brieskorn`]).
//! * [`resolution::signature_resolution`] evaluates the eta invariant on an
//!   embedded resolution graph with Dedekind sums.
//! * [`spectral::signature_spectral`] evaluates the same eta invariant from
//!   spectral pairs.
//!
//! The engines accept different descriptions of the branch, and
//! [`curve`] converts between them (Puiseux pairs, characteristic
//! exponents, multiplicity sequences, resolution graphs). For polynomial
//! input, [`newton`] expands a branch into Puiseux pairs when the
//! expansion stays inside the rational numbers.
//!
//! All arithmetic is exact: ratios are [`algebra::Rational`] (arbitrary
//! precision) and lattice counts use checked 64-bit integers with bounds
//! established at construction time.
//!
//! The `parallel` feature (on by default) parallelizes the lattice
//! counting and the Dedekind sums with rayon. Every engine also has a
//! `_cancellable` entry point that polls a [`cancel::CancelToken`], so a
//! caller racing engines against each other can stop the losers.

pub mod algebra;
pub mod brieskorn;
pub mod cancel;
pub mod curve;
pub mod error;
pub mod newton;
pub mod parser;
pub mod poly;
pub mod reduction;
pub mod resolution;
pub mod spectral;

pub use algebra::Rational;
pub use brieskorn::{
    brieskorn_signature, brieskorn_signature_cancellable, s_counts_fast,
    s_counts_fast_cancellable, s_counts_naive, BrieskornExponents, SCounts,
};
pub use cancel::CancelToken;
pub use curve::{
    char_exponents_to_mult_sequence, char_exponents_to_pairs, mult_sequence_to_resolution_graph,
    pairs_to_char_exponents, pairs_to_resolution_graph, CharExponents, MultiplicitySequence,
    PuiseuxPairs,
};
pub use error::{Error, Result};
pub use newton::{branch_expansion, puiseux_pairs_lite, BranchExpansion};
pub use parser::parse_polynomial;
pub use poly::BivariatePoly;
pub use reduction::{
    reduction_plan, signature_puiseux, signature_puiseux_cancellable, ReductionPlan,
};
pub use resolution::{
    combine_eta, eta_resolution, eta_resolution_cancellable, irreducible_identity_check,
    signature_resolution, signature_resolution_cancellable, ResolutionGraph,
};
pub use spectral::{
    brieskorn_curve_spectral_pairs, eta_spectral, eta_spectral_cancellable, signature_spectral,
    signature_spectral_cancellable, SpectralEntry, SpectralPairs,
};
