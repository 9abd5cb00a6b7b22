//! The kernel of the discrete action: `A = β ∂₁∂₁ᵀ` and `J = α ∂₁e`,
//! the self-consistency check `A v = (β/α) J` for `e = ∂₁ᵀ v`, and the
//! coupled-oscillator matrix it is compared against.

use num_rational::Ratio;
use serde::Serialize;

use crate::chain_complex::{boundary1, coboundary_links, coboundary_links_exact, OrientedGraph};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Exact rational used by the integer-arithmetic SCC check.
pub type Rational = Ratio<i128>;

/// Dimensionless link magnitudes, one per edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkValues(Vec<f64>);

impl LinkValues {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "link {} is not finite ({})",
                i + 1,
                values[i]
            )));
        }
        Ok(Self(values))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// `α`, `β`, `ħ` carried alongside the dimensionless graph data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Scaling {
    /// Units of momentum.
    pub alpha: f64,
    /// Units of momentum / length.
    pub beta: f64,
    /// Units of action.
    pub hbar: f64,
}

impl Scaling {
    pub fn new(alpha: f64, beta: f64, hbar: f64) -> Result<Self> {
        let s = Self { alpha, beta, hbar };
        s.validate()?;
        Ok(s)
    }

    /// `α = h/λ`, `β = h/λ²`, `ħ = h/2π`.
    pub fn from_wavelength(lambda: f64, h: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite() && h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter(
                "lambda and h must be positive".into(),
            ));
        }
        Self::new(
            h / lambda,
            h / (lambda * lambda),
            h / (2.0 * std::f64::consts::PI),
        )
    }

    pub fn unit() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            hbar: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite() && self.hbar.is_finite()) {
            return Err(Error::InvalidParameter(
                "alpha, beta and hbar must be finite".into(),
            ));
        }
        if self.alpha == 0.0 {
            return Err(Error::InvalidParameter("alpha must be nonzero".into()));
        }
        if self.beta == 0.0 {
            return Err(Error::InvalidParameter("beta must be nonzero".into()));
        }
        if self.hbar <= 0.0 {
            return Err(Error::InvalidParameter("hbar must be positive".into()));
        }
        Ok(())
    }
}

/// The actional `Σ = ½A + J` on one graph.
///
/// `L = ∂₁∂₁ᵀ` and `β` are kept apart so the spectrum of `L` can be used
/// directly; [`ActionKernel::a_matrix`] forms `A` on demand.
#[derive(Clone, Debug)]
pub struct ActionKernel {
    graph: OrientedGraph,
    links: LinkValues,
    laplacian: Matrix,
    source: Vec<f64>,
    scaling: Scaling,
}

impl ActionKernel {
    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn links(&self) -> &LinkValues {
        &self.links
    }

    pub fn laplacian(&self) -> &Matrix {
        &self.laplacian
    }

    /// `A = β L`.
    pub fn a_matrix(&self) -> Matrix {
        self.laplacian.scaled(self.scaling.beta)
    }

    /// `J = α ∂₁ e`.
    pub fn source(&self) -> &[f64] {
        &self.source
    }

    pub fn scaling(&self) -> Scaling {
        self.scaling
    }

    pub fn alpha(&self) -> f64 {
        self.scaling.alpha
    }

    pub fn beta(&self) -> f64 {
        self.scaling.beta
    }

    pub fn hbar(&self) -> f64 {
        self.scaling.hbar
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

pub fn assemble_kernel(
    graph: &OrientedGraph,
    links: &LinkValues,
    scaling: Scaling,
) -> Result<ActionKernel> {
    scaling.validate()?;
    if links.len() != graph.edge_count() {
        return Err(Error::DimensionMismatch {
            what: "link vector",
            expected: graph.edge_count(),
            found: links.len(),
        });
    }
    let source = graph
        .divergence(links.as_slice())?
        .into_iter()
        .map(|x| scaling.alpha * x)
        .collect();
    Ok(ActionKernel {
        graph: graph.clone(),
        links: links.clone(),
        laplacian: graph.laplacian(),
        source,
        scaling,
    })
}

/// Both sides of `A v = (β/α) J` with `J` rebuilt from `e = ∂₁ᵀ v`.
#[derive(Clone, Debug, Serialize)]
pub struct SccReport {
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `max |A v - (β/α) J|`.
    pub residual: f64,
    /// Whether the kernel's own links equal `∂₁ᵀ v`.
    pub links_consistent: bool,
    pub max_link_deviation: f64,
}

/// Self-consistency check. The links are recomputed from `v`; the
/// kernel's stored links only feed the `links_consistent` audit flag.
pub fn check_scc(kernel: &ActionKernel, v: &[f64]) -> Result<SccReport> {
    let graph = kernel.graph();
    let e = coboundary_links(graph, v)?;
    let lhs = kernel.a_matrix().matvec(v)?;
    let ratio = kernel.beta() / kernel.alpha();
    let rhs: Vec<f64> = graph
        .divergence(&e)?
        .into_iter()
        .map(|x| ratio * (kernel.alpha() * x))
        .collect();
    let residual = lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let max_link_deviation = e
        .iter()
        .zip(kernel.links().as_slice())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(SccReport {
        lhs,
        rhs,
        residual,
        links_consistent: max_link_deviation == 0.0,
        max_link_deviation,
    })
}

#[derive(Clone, Debug)]
pub struct ExactSccReport {
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
    pub residual_is_zero: bool,
}

/// Exact SCC check over the rationals.
///
/// `lhs = β (L v)` uses the edge-assembled Laplacian; `rhs = (β/α)(α ∂₁ e)`
/// goes through the dense `∂₁` and `e = ∂₁ᵀ v`, so the two sides share no
/// intermediate.
pub fn check_scc_exact(
    graph: &OrientedGraph,
    v: &[i64],
    alpha: Rational,
    beta: Rational,
) -> Result<ExactSccReport> {
    if alpha == Rational::from_integer(0) || beta == Rational::from_integer(0) {
        return Err(Error::InvalidParameter(
            "alpha and beta must be nonzero".into(),
        ));
    }
    let lv = graph.laplacian_int().matvec(v)?;
    let lhs: Vec<Rational> = lv
        .into_iter()
        .map(|x| beta * Rational::from_integer(x as i128))
        .collect();
    let e = coboundary_links_exact(graph, v)?;
    let div = boundary1(graph).matrix().matvec(&e)?;
    let rhs: Vec<Rational> = div
        .into_iter()
        .map(|x| (beta / alpha) * (alpha * Rational::from_integer(x as i128)))
        .collect();
    let residual_is_zero = lhs.iter().zip(&rhs).all(|(a, b)| a == b);
    Ok(ExactSccReport {
        lhs,
        rhs,
        residual_is_zero,
    })
}

/// Discretized action matrix for two coupled oscillators over `N/2` time
/// steps each: tridiagonal blocks with `m/Δt + kΔt` at the ends,
/// `2m/Δt + kΔt` inside and `-m/Δt` off the diagonal, coupled by `k₁₂Δt`
/// between equal times.
pub fn harmonic_kernel(n: usize, mass: f64, dt: f64, k: f64, k12: f64) -> Result<Matrix> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidLadderSize(n));
    }
    if !(mass > 0.0 && dt > 0.0 && k > 0.0) {
        return Err(Error::InvalidParameter(
            "m, dt and k must be positive".into(),
        ));
    }
    if !k12.is_finite() {
        return Err(Error::InvalidParameter("k12 must be finite".into()));
    }
    let steps = n / 2;
    let kin = mass / dt;
    let mut a = Matrix::zeros(n, n);
    for osc in 0..2 {
        let base = osc * steps;
        for t in 0..steps {
            let i = base + t;
            let interior = t > 0 && t + 1 < steps;
            a[(i, i)] = if interior { 2.0 * kin } else { kin } + k * dt;
            if t + 1 < steps {
                a[(i, i + 1)] = -kin;
                a[(i + 1, i)] = -kin;
            }
        }
    }
    for t in 0..steps {
        a[(t, steps + t)] = k12 * dt;
        a[(steps + t, t)] = k12 * dt;
    }
    Ok(a)
}

/// Entry-wise signs (`-1`, `0`, `1`) of a matrix, row-major.
pub fn sign_pattern(m: &Matrix) -> Vec<i8> {
    m.as_slice()
        .iter()
        .map(|&x| {
            if x > 0.0 {
                1
            } else if x < 0.0 {
                -1
            } else {
                0
            }
        })
        .collect()
}
