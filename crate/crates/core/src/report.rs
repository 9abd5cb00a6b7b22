//! Amplitude report for one ladder and one link vector: spectral phase,
//! its closed-form split, the Gaussian prefactor, and the residuals that
//! tie them together.

use serde::Serialize;

use crate::action::{assemble_kernel, LinkValues, Scaling};
use crate::amplitude::{
    ladder_phase_closed_form, stationary_phase_check, symmetry_amplitude, ResolvedSumLimits,
};
use crate::chain_complex::LadderComplex;
use crate::error::Result;
use crate::matrix::norm;
use crate::spectral::{eigendecompose_symmetric, project_source, SpectralData, ZeroTolerance};

#[derive(Clone, Debug, Serialize)]
pub struct AmplitudeResiduals {
    /// `|Φ_spectral - (Φ_S + Φ_T + Φ_ST)·(-1/2ħβ)|`, relative to `|Φ|`
    /// (absolute when `Φ = 0`).
    pub closed_form_vs_spectral: f64,
    /// `|Ĵ_null| / ‖J‖` (zero when `J = 0`).
    pub null_projection: f64,
    /// `|‖Ĵ‖ - ‖J‖|`.
    pub parseval: f64,
    /// `|f(Q_E)/(ħβ) - Φ|`.
    pub stationary_phase: f64,
    pub max_eigen_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmplitudeReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub phase_total: f64,
    pub phi_s: f64,
    pub phi_t: f64,
    pub phi_st: f64,
    pub phase_closed_form: f64,
    pub prefactor_magnitude: f64,
    pub log_prefactor_magnitude: f64,
    pub prefactor_phase: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub resolved_sum_limits: ResolvedSumLimits,
    pub residuals: AmplitudeResiduals,
}

/// Eigenpair residuals are only computed up to this size; they cost
/// `O(N³)` on top of the decomposition.
pub const RESIDUAL_CHECK_MAX_DIM: usize = 400;

impl AmplitudeReport {
    pub fn compute(ladder: &LadderComplex, links: &LinkValues, scaling: Scaling) -> Result<Self> {
        let spectral =
            eigendecompose_symmetric(&ladder.graph().laplacian(), ZeroTolerance::default())?;
        Self::with_spectrum(ladder, &spectral, links, scaling)
    }

    pub fn with_spectrum(
        ladder: &LadderComplex,
        spectral: &SpectralData,
        links: &LinkValues,
        scaling: Scaling,
    ) -> Result<Self> {
        let graph = ladder.graph();
        let kernel = assemble_kernel(graph, links, scaling)?;
        let amp = symmetry_amplitude(&kernel, spectral)?;
        let closed = ladder_phase_closed_form(ladder, links, scaling)?;
        let projections = project_source(spectral, kernel.source())?;
        let j_norm = norm(kernel.source());
        let stationary = stationary_phase_check(&kernel, spectral)?;

        let diff = (amp.phase_total - closed.phase).abs();
        let closed_form_vs_spectral = if amp.phase_total == 0.0 {
            diff
        } else {
            diff / amp.phase_total.abs()
        };
        let null_projection = match (projections.null_component, j_norm > 0.0) {
            (Some(c), true) => c.abs() / j_norm,
            _ => 0.0,
        };
        let max_eigen_residual = if ladder.n() <= RESIDUAL_CHECK_MAX_DIM {
            Some(spectral.residuals(&graph.laplacian())?.max_eigen_residual)
        } else {
            None
        };

        Ok(Self {
            n: ladder.n(),
            phase_total: amp.phase_total,
            phi_s: closed.phi_s,
            phi_t: closed.phi_t,
            phi_st: closed.phi_st,
            phase_closed_form: closed.phase,
            prefactor_magnitude: amp.prefactor_magnitude,
            log_prefactor_magnitude: amp.log_prefactor_magnitude,
            prefactor_phase: amp.prefactor_phase,
            z_re: amp.z.re,
            z_im: amp.z.im,
            resolved_sum_limits: ResolvedSumLimits::for_n(ladder.n()),
            residuals: AmplitudeResiduals {
                closed_form_vs_spectral,
                null_projection,
                parseval: (norm(&projections.components) - j_norm).abs(),
                stationary_phase: stationary.residual,
                max_eigen_residual,
            },
        })
    }
}
