//! The row-space restricted symmetry amplitude and its phase.
//!
//! With `L = ∂₁∂₁ᵀ` (eigenpairs `a_i`, `u_i`), `J = α ∂₁ e` and
//! `Ĵ_i = ⟨u_i, J⟩`, the null mode of `L` is dropped and
//!
//! ```text
//! Φ = -Σ_{a_i ≠ 0} Ĵ_i² / (2 a_i ħ β)
//! Z = Π_{a_i ≠ 0} (2πi / (β a_i))^{1/2} · e^{iΦ}
//! ```
//!
//! On the canonical ladder the same phase has a closed form split into a
//! spatial part, a temporal part and a mixed part; see
//! [`ladder_phase_closed_form`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::action::{ActionKernel, LinkValues, Scaling};
use crate::chain_complex::{LadderComplex, OrientedGraph};
use crate::error::{Error, Result};
use crate::matrix::norm;
use crate::quadrature::integrate_panels;
use crate::spectral::{project_source, Projections, SpectralData};

/// A null-mode component of `J` larger than this fraction of `‖J‖` means
/// the links do not belong to the kernel's graph.
pub const NULL_PROJECTION_TOLERANCE: f64 = 1e-10;

fn check_pairing(kernel: &ActionKernel, spectral: &SpectralData) -> Result<Projections> {
    if spectral.dim() != kernel.vertex_count() {
        return Err(Error::DimensionMismatch {
            what: "spectral data for kernel",
            expected: kernel.vertex_count(),
            found: spectral.dim(),
        });
    }
    let projections = project_source(spectral, kernel.source())?;
    let tolerance = NULL_PROJECTION_TOLERANCE * norm(kernel.source()).max(f64::MIN_POSITIVE);
    for i in (0..spectral.dim()).filter(|&i| spectral.is_null(i)) {
        let component = projections.components[i];
        if component.abs() > tolerance {
            return Err(Error::NullProjection {
                component,
                tolerance,
            });
        }
    }
    Ok(projections)
}

fn mode_terms(
    kernel: &ActionKernel,
    spectral: &SpectralData,
    projections: &Projections,
) -> Vec<f64> {
    let scale = 2.0 * kernel.hbar() * kernel.beta();
    spectral
        .nonzero_modes()
        .map(|i| {
            let jh = projections.components[i];
            -jh * jh / (spectral.eigenvalues()[i] * scale)
        })
        .collect()
}

/// `Φ = -Σ Ĵ_i² / (2 a_i ħ β)` over the nonzero modes of `L`.
pub fn phase_numeric(kernel: &ActionKernel, spectral: &SpectralData) -> Result<f64> {
    let projections = check_pairing(kernel, spectral)?;
    Ok(mode_terms(kernel, spectral, &projections).iter().sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryAmplitude {
    #[serde(serialize_with = "serialize_complex")]
    pub z: Complex64,
    pub phase_total: f64,
    /// `Π (2π / |β a_j|)^{1/2}`; may overflow to infinity for very large
    /// graphs, in which case `log_prefactor_magnitude` is authoritative.
    pub prefactor_magnitude: f64,
    pub log_prefactor_magnitude: f64,
    /// Phase of the Gaussian prefactor in `[0, 2π)`.
    pub prefactor_phase: f64,
    /// `-Ĵ_i² / (2 a_i ħ β)` per nonzero mode, ascending eigenvalue order.
    pub mode_terms: Vec<f64>,
}

fn serialize_complex<S: serde::Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &z.re)?;
    st.serialize_field("im", &z.im)?;
    st.end()
}

/// Restricted amplitude. Each nonzero mode contributes the principal
/// square root of `2πi / (β a_j)`; for `β > 0` the prefactor phase is
/// therefore `(N-1)π/4`.
pub fn symmetry_amplitude(
    kernel: &ActionKernel,
    spectral: &SpectralData,
) -> Result<SymmetryAmplitude> {
    if spectral.null_count() != 1 {
        return Err(Error::Disconnected {
            null_count: spectral.null_count(),
        });
    }
    let projections = check_pairing(kernel, spectral)?;
    let terms = mode_terms(kernel, spectral, &projections);
    let phase_total: f64 = terms.iter().sum();

    let beta = kernel.beta();
    let mut log_mag = 0.0;
    let mut quarter_turns: i64 = 0;
    for i in spectral.nonzero_modes() {
        let a = beta * spectral.eigenvalues()[i];
        log_mag += 0.5 * (2.0 * PI / a.abs()).ln();
        quarter_turns += if a > 0.0 { 1 } else { -1 };
    }
    let prefactor_phase = (quarter_turns.rem_euclid(8) as f64) * PI / 4.0;
    let prefactor_magnitude = log_mag.exp();
    let z = Complex64::from_polar(prefactor_magnitude, prefactor_phase + phase_total);
    Ok(SymmetryAmplitude {
        z,
        phase_total,
        prefactor_magnitude,
        log_prefactor_magnitude: log_mag,
        prefactor_phase,
        mode_terms: terms,
    })
}

/// Sum limits under which the ladder closed form reproduces the spectral
/// phase. `M = N/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolvedSumLimits {
    pub n: usize,
    /// Spatial sum `k = 1..=M` over `e_{k+N-2}`.
    pub spatial_terms: usize,
    /// Rail sums `k = 1..=M-1` over `e_k` and `e_{k+M-1}`.
    pub temporal_terms_per_rail: usize,
    /// Mode sums `j = 1..=M-1`.
    pub mode_range: (usize, usize),
    /// First one-based index of the spatial links inside the mixed term.
    pub mixed_spatial_offset: String,
    pub mixed_denominator: String,
}

impl ResolvedSumLimits {
    pub fn for_n(n: usize) -> Self {
        let m = n / 2;
        Self {
            n,
            spatial_terms: m,
            temporal_terms_per_rail: m - 1,
            mode_range: (1, m - 1),
            mixed_spatial_offset: "e_{k+N-2}, k = 1..=N/2".into(),
            mixed_denominator: "N (1 + 2 sin^2(j pi / N))".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LadderPhaseDecomposition {
    pub phi_s: f64,
    pub phi_t: f64,
    pub phi_st: f64,
    pub total_inner: f64,
    /// `-(Φ_S + Φ_T + Φ_ST) / (2ħβ)`.
    pub phase: f64,
}

/// Closed-form ladder phase, `M = N/2`, one-based link indices:
///
/// ```text
/// Φ_S  = (2α²/N) [Σ_{k=1}^{M} e_{k+N-2}]²
/// Φ_T  = Σ_{j=1}^{M-1} (2α²/N) [Σ_{k=1}^{M-1} (e_k + e_{k+M-1}) sin(2πjk/N)]²
/// Φ_ST = Σ_{j=1}^{M-1} 4α² / (N (1 + 2 sin²(jπ/N)))
///          · [sin(jπ/N) Σ_{k=1}^{M-1} (e_k - e_{k+M-1}) sin(2πjk/N)
///             + Σ_{k=1}^{M} e_{k+N-2} cos((2k-1)jπ/N)]²
/// ```
///
/// `Φ_S` is the antisymmetric `j = 0` mode (eigenvalue 2), `Φ_T` the
/// rail-symmetric modes and `Φ_ST` the remaining antisymmetric modes
/// (eigenvalues `4 sin²(jπ/N) + 2`). Runs in `O(N²)` with table lookups.
pub fn ladder_phase_closed_form(
    ladder: &LadderComplex,
    links: &LinkValues,
    scaling: Scaling,
) -> Result<LadderPhaseDecomposition> {
    scaling.validate()?;
    let n = ladder.n();
    let m = ladder.half();
    let edge_count = ladder.graph().edge_count();
    if links.len() != edge_count {
        return Err(Error::DimensionMismatch {
            what: "link vector",
            expected: edge_count,
            found: links.len(),
        });
    }
    let e = links.as_slice();
    let a2 = scaling.alpha * scaling.alpha;
    let nf = n as f64;

    let rail_sum: Vec<f64> = (1..m)
        .map(|k| e[ladder.rail1_edge(k)] + e[ladder.rail2_edge(k)])
        .collect();
    let rail_diff: Vec<f64> = (1..m)
        .map(|k| e[ladder.rail1_edge(k)] - e[ladder.rail2_edge(k)])
        .collect();
    let rungs: Vec<f64> = (1..=m).map(|k| e[ladder.rung_edge(k)]).collect();

    // sin(2π r/N), r < N  and  cos(π r/N), r < 2N
    let sin_tab: Vec<f64> = (0..n).map(|r| (2.0 * PI * r as f64 / nf).sin()).collect();
    let cos_tab: Vec<f64> = (0..2 * n).map(|r| (PI * r as f64 / nf).cos()).collect();

    let rung_total: f64 = rungs.iter().sum();
    let phi_s = 2.0 * a2 / nf * rung_total * rung_total;

    let mut phi_t = 0.0;
    let mut phi_st = 0.0;
    for j in 1..m {
        let mut s_plus = 0.0;
        let mut s_minus = 0.0;
        let mut idx = 0;
        for k in 0..m - 1 {
            idx += j;
            if idx >= n {
                idx -= n;
            }
            let s = sin_tab[idx];
            s_plus += rail_sum[k] * s;
            s_minus += rail_diff[k] * s;
        }
        let mut c_sum = 0.0;
        let step = 2 * j;
        let mut idx = j; // (2k-1) j for k = 1
        for &rung in &rungs {
            c_sum += rung * cos_tab[idx];
            idx += step;
            while idx >= 2 * n {
                idx -= 2 * n;
            }
        }
        let sj = (PI * j as f64 / nf).sin();
        phi_t += 2.0 * a2 / nf * s_plus * s_plus;
        let mixed = sj * s_minus + c_sum;
        phi_st += 4.0 * a2 / (nf * (1.0 + 2.0 * sj * sj)) * mixed * mixed;
    }

    let total_inner = phi_s + phi_t + phi_st;
    Ok(LadderPhaseDecomposition {
        phi_s,
        phi_t,
        phi_st,
        total_inner,
        phase: -total_inner / (2.0 * scaling.hbar * scaling.beta),
    })
}

/// [`ladder_phase_closed_form`] for a graph that must be laid out as the
/// canonical ladder.
pub fn ladder_phase_closed_form_for_graph(
    graph: &OrientedGraph,
    links: &LinkValues,
    scaling: Scaling,
) -> Result<LadderPhaseDecomposition> {
    let ladder = LadderComplex::from_graph(graph)?;
    ladder_phase_closed_form(&ladder, links, scaling)
}

/// Stationary point of `f(Q) = Σ (½ a_j Q_j² + Ĵ_j Q_j)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extremum {
    /// `Q_j = -Ĵ_j / a_j`.
    pub point: Vec<f64>,
    /// `f(Q_E) = -Σ Ĵ_j² / (2 a_j)`.
    pub value: f64,
}

/// Extremum over explicitly given modes; every `a_j` must be nonzero.
pub fn extremum_of_modes(eigenvalues: &[f64], projections: &[f64]) -> Result<Extremum> {
    if eigenvalues.len() != projections.len() {
        return Err(Error::DimensionMismatch {
            what: "projections per mode",
            expected: eigenvalues.len(),
            found: projections.len(),
        });
    }
    if eigenvalues.contains(&0.0) {
        return Err(Error::DivergentMode);
    }
    let point: Vec<f64> = eigenvalues
        .iter()
        .zip(projections)
        .map(|(a, j)| -j / a)
        .collect();
    let value = eigenvalues
        .iter()
        .zip(projections)
        .map(|(a, j)| -j * j / (2.0 * a))
        .sum();
    Ok(Extremum { point, value })
}

/// Extremum over the nonzero modes of `spectral`.
pub fn stationary_phase_extremum(
    spectral: &SpectralData,
    projections: &Projections,
) -> Result<Extremum> {
    if projections.components.len() != spectral.dim() {
        return Err(Error::DimensionMismatch {
            what: "projections",
            expected: spectral.dim(),
            found: projections.components.len(),
        });
    }
    let (a, j): (Vec<f64>, Vec<f64>) = spectral
        .nonzero_modes()
        .map(|i| (spectral.eigenvalues()[i], projections.components[i]))
        .unzip();
    extremum_of_modes(&a, &j)
}

#[derive(Clone, Debug, Serialize)]
pub struct StationaryPhaseReport {
    pub extremum: Extremum,
    /// `f(Q_E) / (ħβ)`.
    pub phase_from_extremum: f64,
    pub phase_numeric: f64,
    pub residual: f64,
}

/// Compares the stationary value, rescaled by `1/(ħβ)`, with
/// [`phase_numeric`].
pub fn stationary_phase_check(
    kernel: &ActionKernel,
    spectral: &SpectralData,
) -> Result<StationaryPhaseReport> {
    let projections = check_pairing(kernel, spectral)?;
    let extremum = stationary_phase_extremum(spectral, &projections)?;
    let phase_from_extremum = extremum.value / (kernel.hbar() * kernel.beta());
    let phase = phase_numeric(kernel, spectral)?;
    Ok(StationaryPhaseReport {
        residual: (phase_from_extremum - phase).abs(),
        extremum,
        phase_from_extremum,
        phase_numeric: phase,
    })
}

/// Default regulator schedule for [`fresnel_mode_integral`].
pub const DEFAULT_EPSILONS: [f64; 4] = [0.02, 0.01, 0.005, 0.0025];

#[derive(Clone, Debug, Serialize)]
pub struct FresnelEstimate {
    pub a: f64,
    pub j: f64,
    pub epsilons: Vec<f64>,
    #[serde(serialize_with = "serialize_complex_vec")]
    pub regulated: Vec<Complex64>,
    #[serde(serialize_with = "serialize_complex")]
    pub estimate: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    pub reference: Complex64,
    pub relative_error: f64,
}

fn serialize_complex_vec<S: serde::Serializer>(
    v: &[Complex64],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// `∫ exp(i(a q²/2 + j q)) dq = √(2πi/a) · exp(-i j²/(2a))`.
pub fn fresnel_closed_form(a: f64, j: f64) -> Result<Complex64> {
    if a == 0.0 {
        return Err(Error::DivergentMode);
    }
    let i = Complex64::new(0.0, 1.0);
    Ok((2.0 * PI * i / a).sqrt() * (-i * j * j / (2.0 * a)).exp())
}

/// Numerically integrates the regulated mode factor
/// `∫ exp(i(a q²/2 + j q) - ε q²) dq` for each `ε`, then extrapolates the
/// values polynomially to `ε = 0`.
///
/// The window is `|q| ≤ 10/√ε`, where the regulator has decayed to
/// `e^{-100}`. `a = 0` is the null direction and fails with
/// [`Error::DivergentMode`].
pub fn fresnel_mode_integral(a: f64, j: f64, epsilons: &[f64]) -> Result<FresnelEstimate> {
    if a == 0.0 {
        return Err(Error::DivergentMode);
    }
    if !(a.is_finite() && j.is_finite()) {
        return Err(Error::InvalidParameter("a and j must be finite".into()));
    }
    if epsilons.is_empty()
        || epsilons.iter().any(|&e| !(e > 0.0 && e.is_finite()))
        || epsilons.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::InvalidParameter(
            "epsilons must be positive and strictly decreasing".into(),
        ));
    }
    let regulated: Vec<Complex64> = epsilons
        .iter()
        .map(|&eps| regulated_mode_quadrature(a, j, eps))
        .collect();
    let estimate = extrapolate_to_zero(epsilons, &regulated);
    let reference = fresnel_closed_form(a, j)?;
    Ok(FresnelEstimate {
        a,
        j,
        epsilons: epsilons.to_vec(),
        regulated,
        estimate,
        reference,
        relative_error: (estimate - reference).norm() / reference.norm(),
    })
}

/// Quadrature of the regulated integrand for a single `ε`.
pub fn regulated_mode_quadrature(a: f64, j: f64, eps: f64) -> Complex64 {
    let half_width = 10.0 / eps.sqrt();
    let f = |q: f64| Complex64::new(-eps * q * q, 0.5 * a * q * q + j * q).exp();
    // at most half an oscillation per panel at the window edge
    let max_freq = a.abs() * half_width + j.abs() + 1.0;
    let panels = (2.0 * half_width * max_freq / PI).ceil() as usize;
    integrate_panels(&f, -half_width, half_width, panels, 1e-12)
}

/// Neville extrapolation of `(x_i, y_i)` to `x = 0`.
fn extrapolate_to_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xl) = (xs[i], xs[i + level]);
            p[i] = (p[i + 1] * xi - p[i] * xl) / (xi - xl);
        }
    }
    p[0]
}
