//! Chain-complex description of a ladder graph, the quadratic action on
//! its vertices, and the spectral symmetry amplitude.
//!
//! The pipeline: build an oriented graph with plaquettes
//! ([`chain_complex`]), assemble `A = β ∂₁∂₁ᵀ` and `J = α ∂₁ e` from link
//! values ([`action`]), diagonalize the Laplacian ([`spectral`]), and
//! evaluate the restricted amplitude and its phase ([`amplitude`]). The
//! [`twinslit`] module applies this to two ladders that differ only in
//! their spatial links.

pub mod action;
pub mod amplitude;
pub mod chain_complex;
pub mod error;
pub mod io;
pub mod matrix;
pub mod quadrature;
pub mod reference;
pub mod report;
pub mod spectral;
pub mod twinslit;
pub mod verify;

pub use action::{assemble_kernel, ActionKernel, LinkValues, Scaling};
pub use amplitude::{
    ladder_phase_closed_form, phase_numeric, symmetry_amplitude, LadderPhaseDecomposition,
    SymmetryAmplitude,
};
pub use chain_complex::{
    boundary1, boundary2, build_canonical_ladder, build_figure1_fixture, LadderComplex,
    OrientedGraph,
};
pub use error::{Error, Result};
pub use matrix::{IntMatrix, Matrix};
pub use report::AmplitudeReport;
pub use spectral::{eigendecompose_symmetric, SpectralData, ZeroTolerance};
pub use twinslit::{twin_slit_phase, TwinSlitConfig, TwinSlitPhase};
