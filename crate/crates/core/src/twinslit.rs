//! Twin-slit harness: one uniform ladder per slit, the phase difference
//! between them, the resulting interference pattern and the integer
//! condition for its maxima.
//!
//! Scalings follow from the relational length `λ` and the unit of action
//! `h`: `α = h/λ`, `β = h/λ²`, `ħ = h/2π`. With these the phase difference
//! for uniform links is `2π · (N/2)(e_x² - ẽ_x²)/2`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::action::{assemble_kernel, LinkValues, Scaling};
use crate::amplitude::{ladder_phase_closed_form, phase_numeric, LadderPhaseDecomposition};
use crate::chain_complex::{build_canonical_ladder, LadderComplex};
use crate::error::{Error, Result};
use crate::spectral::{eigendecompose_symmetric, SpectralData, ZeroTolerance};

/// Largest admissible `|Φ_ST|` for a uniform configuration.
pub const PHI_ST_TOLERANCE: f64 = 1e-10;

/// Relative agreement required between the pipeline phase difference and
/// its closed form.
pub const DELTA_PHI_TOLERANCE: f64 = 1e-10;

/// Distance from an integer below which the maxima condition holds.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwinSlitConfig {
    pub n: usize,
    /// Temporal link value shared by both graphs.
    pub e_t: f64,
    /// Spatial link value of the slit-1 graph.
    pub e_x: f64,
    /// Spatial link value of the slit-2 graph.
    pub e_x_tilde: f64,
    pub lambda: f64,
    pub h: f64,
    /// Separate temporal link for slit 2. Anything other than `None` or
    /// `Some(e_t)` breaks the coherence assumption and is flagged.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_t_tilde: Option<f64>,
}

impl TwinSlitConfig {
    pub fn new(n: usize, e_t: f64, e_x: f64, e_x_tilde: f64, lambda: f64, h: f64) -> Result<Self> {
        let c = Self {
            n,
            e_t,
            e_x,
            e_x_tilde,
            lambda,
            h,
            e_t_tilde: None,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 4 || !self.n.is_multiple_of(2) {
            return Err(Error::InvalidLadderSize(self.n));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter("lambda must be positive".into()));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidParameter("h must be positive".into()));
        }
        let links = [
            self.e_t,
            self.e_x,
            self.e_x_tilde,
            self.e_t_tilde.unwrap_or(0.0),
        ];
        if links.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("link values must be finite".into()));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.h / self.lambda
    }

    pub fn beta(&self) -> f64 {
        self.h / (self.lambda * self.lambda)
    }

    pub fn hbar(&self) -> f64 {
        self.h / (2.0 * PI)
    }

    pub fn scaling(&self) -> Scaling {
        Scaling {
            alpha: self.alpha(),
            beta: self.beta(),
            hbar: self.hbar(),
        }
    }

    pub fn slit2_temporal(&self) -> f64 {
        self.e_t_tilde.unwrap_or(self.e_t)
    }

    /// Both graphs share their temporal links.
    pub fn is_coherent(&self) -> bool {
        self.slit2_temporal() == self.e_t
    }

    pub fn with_e_x_tilde(&self, e_x_tilde: f64) -> Self {
        Self {
            e_x_tilde,
            ..self.clone()
        }
    }
}

/// Temporal edges take `e_t`, rungs take `e_x`.
pub fn uniform_ladder_links(ladder: &LadderComplex, e_t: f64, e_x: f64) -> LinkValues {
    let values = ladder
        .roles()
        .iter()
        .map(|r| if r.is_temporal() { e_t } else { e_x })
        .collect();
    LinkValues::new(values).expect("finite inputs give finite links")
}

#[derive(Clone, Debug, Serialize)]
pub struct TwinSlitPhase {
    pub phi1: f64,
    pub phi2: f64,
    /// `Φ₂ - Φ₁`, the phase difference with the overall sign dropped.
    pub delta_phi: f64,
    /// `N α² (e_x² - ẽ_x²) / (4ħβ)` (plus the temporal term when the
    /// graphs are not coherent).
    pub delta_phi_closed_form: f64,
    pub slit1: LadderPhaseDecomposition,
    pub slit2: LadderPhaseDecomposition,
    pub within_assumptions: bool,
}

/// Ladder and spectrum shared by every configuration of one size.
pub struct TwinSlitSolver {
    ladder: LadderComplex,
    spectral: SpectralData,
}

impl TwinSlitSolver {
    pub fn new(n: usize) -> Result<Self> {
        let ladder = build_canonical_ladder(n)?;
        let spectral =
            eigendecompose_symmetric(&ladder.graph().laplacian(), ZeroTolerance::default())?;
        Ok(Self { ladder, spectral })
    }

    pub fn ladder(&self) -> &LadderComplex {
        &self.ladder
    }

    /// Full pipeline for one slit: kernel, projections, spectral phase.
    fn slit_phase(
        &self,
        e_t: f64,
        e_x: f64,
        scaling: Scaling,
    ) -> Result<(f64, LadderPhaseDecomposition)> {
        let links = uniform_ladder_links(&self.ladder, e_t, e_x);
        let kernel = assemble_kernel(self.ladder.graph(), &links, scaling)?;
        let phase = phase_numeric(&kernel, &self.spectral)?;
        let decomposition = ladder_phase_closed_form(&self.ladder, &links, scaling)?;
        if decomposition.phi_st.abs() > PHI_ST_TOLERANCE {
            return Err(Error::Consistency(format!(
                "mixed phase {:e} on a uniform ladder",
                decomposition.phi_st
            )));
        }
        Ok((phase, decomposition))
    }

    pub fn phase(&self, config: &TwinSlitConfig) -> Result<TwinSlitPhase> {
        config.validate()?;
        if config.n != self.ladder.n() {
            return Err(Error::DimensionMismatch {
                what: "ladder size",
                expected: self.ladder.n(),
                found: config.n,
            });
        }
        let scaling = config.scaling();
        let (phi1, slit1) = self.slit_phase(config.e_t, config.e_x, scaling)?;
        let (phi2, slit2) = self.slit_phase(config.slit2_temporal(), config.e_x_tilde, scaling)?;
        let delta_phi = phi2 - phi1;

        let n = config.n as f64;
        let a2 = scaling.alpha * scaling.alpha;
        let hb = scaling.hbar * scaling.beta;
        let spatial = n * a2 / (4.0 * hb) * (config.e_x.powi(2) - config.e_x_tilde.powi(2));
        let temporal =
            (n - 2.0) * a2 / (2.0 * hb) * (config.e_t.powi(2) - config.slit2_temporal().powi(2));
        let closed = spatial + temporal;

        let scale = closed.abs().max(phi1.abs()).max(phi2.abs());
        if (delta_phi - closed).abs() > DELTA_PHI_TOLERANCE * scale {
            return Err(Error::Consistency(format!(
                "phase difference {delta_phi} disagrees with closed form {closed}"
            )));
        }
        Ok(TwinSlitPhase {
            phi1,
            phi2,
            delta_phi,
            delta_phi_closed_form: closed,
            slit1,
            slit2,
            within_assumptions: config.is_coherent(),
        })
    }
}

/// Builds both slit graphs from scratch and runs the full pipeline.
pub fn twin_slit_phase(config: &TwinSlitConfig) -> Result<TwinSlitPhase> {
    config.validate()?;
    TwinSlitSolver::new(config.n)?.phase(config)
}

/// `2 + 2 cos ΔΦ`.
pub fn interference_intensity(delta_phi: f64) -> f64 {
    2.0 + 2.0 * delta_phi.cos()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaximaCondition {
    pub n_value: f64,
    pub is_maximum: bool,
}

/// `(N/2)(e_x² - ẽ_x²)/2`; a maximum when this is an integer.
pub fn maxima_condition(config: &TwinSlitConfig) -> MaximaCondition {
    let n_value = (config.n as f64 / 2.0) * (config.e_x.powi(2) - config.e_x_tilde.powi(2)) / 2.0;
    MaximaCondition {
        n_value,
        is_maximum: (n_value - n_value.round()).abs() <= INTEGER_TOLERANCE,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WaveCount {
    /// `N e_x² / 4`.
    pub total_waves: f64,
    /// `e_x² / 2`.
    pub waves_per_link: f64,
}

pub fn wave_count(ladder: &LadderComplex, e_x: f64) -> WaveCount {
    let e2 = e_x * e_x;
    WaveCount {
        total_waves: ladder.n() as f64 * e2 / 4.0,
        waves_per_link: e2 / 2.0,
    }
}

/// Standard two-path pattern `2 + 2 cos(2π v_φ (t₁ - t₂) / λ)`.
pub fn qm_reference_pattern(v_phi: f64, t1: f64, t2: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    Ok(interference_intensity(
        2.0 * PI * v_phi * (t1 - t2) / lambda,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PatternRow {
    pub e_x_tilde: f64,
    pub delta_phi: f64,
    pub intensity: f64,
    pub n_value: f64,
    pub is_maximum: bool,
}

/// One row per `ẽ_x`, in input order.
pub fn pattern_sweep(base: &TwinSlitConfig, e_x_tilde_values: &[f64]) -> Result<Vec<PatternRow>> {
    if e_x_tilde_values.is_empty() {
        return Err(Error::EmptySweep);
    }
    base.validate()?;
    let solver = TwinSlitSolver::new(base.n)?;
    e_x_tilde_values
        .iter()
        .map(|&x| {
            let config = base.with_e_x_tilde(x);
            let phase = solver.phase(&config)?;
            let maxima = maxima_condition(&config);
            Ok(PatternRow {
                e_x_tilde: x,
                delta_phi: phase.delta_phi,
                intensity: interference_intensity(phase.delta_phi),
                n_value: maxima.n_value,
                is_maximum: maxima.is_maximum,
            })
        })
        .collect()
}

/// `start, start + step, ...` up to `stop` inclusive (with a small
/// allowance for rounding in `(stop - start) / step`).
pub fn sweep_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::InvalidParameter(
            "sweep needs finite start <= stop and a positive step".into(),
        ));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_links_in_canonical_order() {
        let l = build_canonical_ladder(6).unwrap();
        assert_eq!(
            uniform_ladder_links(&l, 1.0, 2.0).as_slice(),
            &[1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0]
        );
        let l8 = build_canonical_ladder(8).unwrap();
        let links = uniform_ladder_links(&l8, 0.5, 1.5);
        assert_eq!(links.as_slice().iter().filter(|&&x| x == 0.5).count(), 6);
        assert_eq!(links.as_slice().iter().filter(|&&x| x == 1.5).count(), 4);
        assert!(uniform_ladder_links(&l8, 0.0, 0.0)
            .as_slice()
            .iter()
            .all(|&x| x == 0.0));
    }

    #[test]
    fn intensity_values() {
        assert_eq!(interference_intensity(0.0), 4.0);
        assert!(interference_intensity(PI).abs() < 1e-15);
        assert!((interference_intensity(PI / 2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn maxima_examples() {
        let c = TwinSlitConfig::new(8, 1.0, 1.0, 0.5f64.sqrt(), 1.0, 1.0).unwrap();
        let m = maxima_condition(&c);
        assert!((m.n_value - 1.0).abs() < 1e-12);
        assert!(m.is_maximum);
        let c = TwinSlitConfig::new(6, 1.0, 1.3, 1.3, 1.0, 1.0).unwrap();
        assert_eq!(
            maxima_condition(&c),
            MaximaCondition {
                n_value: 0.0,
                is_maximum: true
            }
        );
        let c = TwinSlitConfig::new(6, 1.0, (1.0f64 / 3.0).sqrt(), 0.0, 1.0, 1.0).unwrap();
        let m = maxima_condition(&c);
        assert!((m.n_value - 0.5).abs() < 1e-12);
        assert!(!m.is_maximum);
    }

    #[test]
    fn wave_count_examples() {
        let l8 = build_canonical_ladder(8).unwrap();
        let w = wave_count(&l8, 2f64.sqrt());
        assert!((w.total_waves - 4.0).abs() < 1e-12);
        assert!((w.waves_per_link - 1.0).abs() < 1e-12);
        assert_eq!(wave_count(&l8, 0.0).total_waves, 0.0);
        let l6 = build_canonical_ladder(6).unwrap();
        let w = wave_count(&l6, (4.0f64 / 3.0).sqrt());
        assert!((w.total_waves - 2.0).abs() < 1e-12);
        assert!((w.waves_per_link - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn reference_pattern_examples() {
        assert_eq!(qm_reference_pattern(3.0, 2.0, 2.0, 0.7).unwrap(), 4.0);
        assert!(qm_reference_pattern(1.0, 0.25, 0.0, 0.5).unwrap().abs() < 1e-15);
        assert!((qm_reference_pattern(1.0, 1.5, 0.0, 0.5).unwrap() - 4.0).abs() < 1e-12);
        assert!(qm_reference_pattern(1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(TwinSlitConfig::new(7, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(TwinSlitConfig::new(8, 1.0, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(TwinSlitConfig::new(8, 1.0, 1.0, 1.0, 1.0, -1.0).is_err());
        assert!(TwinSlitConfig::new(8, f64::INFINITY, 1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn sweep_range_counts() {
        assert_eq!(sweep_range(0.0, 2.0, 0.01).unwrap().len(), 201);
        assert_eq!(sweep_range(1.5, 1.5, 0.1).unwrap(), vec![1.5]);
        assert!(sweep_range(0.0, 1.0, 0.0).is_err());
        assert!(sweep_range(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn empty_sweep_is_an_error() {
        let c = TwinSlitConfig::new(8, 1.0, 1.5, 1.5, 1.0, 1.0).unwrap();
        assert!(matches!(pattern_sweep(&c, &[]), Err(Error::EmptySweep)));
    }
}
