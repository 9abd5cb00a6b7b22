//! The invariant battery behind the `verify` command, and the seeded
//! closed-form/spectral comparison behind `sweep`.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{
    assemble_kernel, check_scc_exact, harmonic_kernel, sign_pattern, LinkValues, Rational, Scaling,
};
use crate::amplitude::{
    fresnel_mode_integral, ladder_phase_closed_form, phase_numeric, stationary_phase_check,
    ResolvedSumLimits, DEFAULT_EPSILONS,
};
use crate::chain_complex::{
    boundary1, boundary2, build_canonical_ladder, build_figure1_fixture, coboundary_links,
    find_relabeling, verify_boundary_of_boundary, LadderComplex,
};
use crate::error::{Error, Result};
use crate::matrix::{norm, IntMatrix};
use crate::reference;
use crate::spectral::{eigendecompose_symmetric, project_source, SpectralData, ZeroTolerance};
use crate::twinslit::uniform_ladder_links;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, residual: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: residual <= tolerance,
            residual,
            tolerance,
            detail: detail.into(),
        }
    }

    fn flag(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            residual: if pass { 0.0 } else { 1.0 },
            tolerance: 0.0,
            detail: detail.into(),
        }
    }

    fn errored(name: &str, err: Error) -> Self {
        Self::flag(name, false, format!("error: {err}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub command: &'static str,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub resolved_sum_limits: ResolvedSumLimits,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `name: pass|FAIL` lines.
    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| format!("{}: {}", c.name, if c.pass { "pass" } else { "FAIL" }))
            .collect()
    }
}

fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

fn random_links(rng: &mut ChaCha8Rng, len: usize) -> LinkValues {
    LinkValues::new((0..len).map(|_| rng.gen_range(-2.0..2.0)).collect()).expect("finite")
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i128 = rng.gen_range(1..10) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(num, rng.gen_range(1..10))
}

/// Sorted `{4 sin²(jπ/N)} ∪ {4 sin²(jπ/N) + 2}` for `j < N/2`.
pub fn ladder_spectrum_closed_form(n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n / 2)
        .flat_map(|j| {
            let s = (j as f64 * PI / n as f64).sin();
            [4.0 * s * s, 4.0 * s * s + 2.0]
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

fn matrix_matches<const C: usize>(m: &IntMatrix, reference: &[[i64; C]]) -> bool {
    m.rows() == reference.len()
        && m.cols() == C
        && reference
            .iter()
            .enumerate()
            .all(|(r, row)| m.row(r) == row.as_slice())
}

/// Runs every check at ladder size `n` plus the six-vertex fixture.
pub fn run_verification(n: usize, seed: u64, samples: usize) -> Result<VerificationReport> {
    let ladder = build_canonical_ladder(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let fixture = build_figure1_fixture();

    // Topology and exact regressions
    let bb_fixture = verify_boundary_of_boundary(&fixture);
    let bb_ladder = verify_boundary_of_boundary(ladder.graph());
    checks.push(CheckResult::new(
        "boundary_of_boundary",
        bb_fixture.max_abs_residual.max(bb_ladder.max_abs_residual) as f64,
        0.0,
        format!("fixture and ladder N={n}, exact integer product"),
    ));
    checks.push(CheckResult::flag(
        "eq5_regression",
        matrix_matches(boundary2(&fixture).matrix(), &reference::FIXTURE_BOUNDARY2),
        "fixture ∂₂ against the reference 7x2 matrix",
    ));
    checks.push(CheckResult::flag(
        "eq6_regression",
        matrix_matches(boundary1(&fixture).matrix(), &reference::FIXTURE_BOUNDARY1),
        "fixture ∂₁ against the reference 6x7 matrix",
    ));
    checks.push(CheckResult::flag(
        "eq11_regression",
        matrix_matches(&boundary1(&fixture).gram(), &reference::FIXTURE_LAPLACIAN)
            && matrix_matches(&fixture.laplacian_int(), &reference::FIXTURE_LAPLACIAN),
        "fixture ∂₁∂₁ᵀ against the reference 6x6 matrix",
    ));
    checks.push(CheckResult::flag(
        "eq12_regression",
        matrix_matches(
            boundary1(&fixture).matrix(),
            &reference::divergence_coefficients(),
        ),
        "symbolic ∂₁e pattern per vertex",
    ));

    // Fixture is the six-vertex ladder under relabeling
    let six = build_canonical_ladder(6)?;
    checks.push(match fixture_equivalence(&fixture, &six, &mut rng) {
        Ok(c) => c,
        Err(e) => CheckResult::errored("fixture_isomorphism", e),
    });

    // Self-consistency, exact
    let mut scc_ok = true;
    for _ in 0..samples {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
        let report = check_scc_exact(
            ladder.graph(),
            &v,
            random_rational(&mut rng),
            random_rational(&mut rng),
        )?;
        scc_ok &= report.residual_is_zero;
    }
    checks.push(CheckResult::flag(
        "scc_exact",
        scc_ok,
        format!("{samples} random integer vertex vectors, rational alpha/beta"),
    ));

    // Laplacian structure
    let lap_int = ladder.graph().laplacian_int();
    let dense_equal = boundary1(ladder.graph()).gram() == lap_int;
    let max_row_sum = (0..n)
        .map(|r| lap_int.row(r).iter().sum::<i64>().abs())
        .max()
        .unwrap_or(0);
    checks.push(CheckResult::flag(
        "laplacian_structure",
        dense_equal && max_row_sum == 0,
        "edge-assembled L equals ∂₁∂₁ᵀ, zero row sums",
    ));

    // Spectra
    let fixture_spec = eigendecompose_symmetric(&fixture.laplacian(), ZeroTolerance::default())?;
    let fixture_err = fixture_spec
        .eigenvalues()
        .iter()
        .zip(reference::FIXTURE_SPECTRUM)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(CheckResult::new(
        "fixture_spectrum",
        fixture_err.max((fixture_spec.trace() - 14.0).abs()),
        1e-10,
        "eigenvalues {0,1,2,3,3,5}, trace 14",
    ));
    checks.push(null_mode_check("fixture_null_mode", &fixture_spec));

    let spectral = eigendecompose_symmetric(&ladder.graph().laplacian(), ZeroTolerance::default())?;
    let expected = ladder_spectrum_closed_form(n);
    let top = expected.last().copied().unwrap_or(1.0).max(1.0);
    let spec_err = spectral
        .eigenvalues()
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(CheckResult::new(
        "ladder_spectrum",
        spec_err,
        1e-10 * top,
        format!(
            "N={n} against the path x edge product spectrum ({:?})",
            spectral.method()
        ),
    ));
    checks.push(null_mode_check("ladder_null_mode", &spectral));
    if n <= 400 {
        let res = spectral.residuals(&ladder.graph().laplacian())?;
        checks.push(CheckResult::new(
            "eigenpair_residual",
            res.max_eigen_residual,
            1e-10 * top,
            "max ‖L u - a u‖∞",
        ));
        checks.push(CheckResult::new(
            "orthonormality",
            res.orthonormality_error,
            1e-12,
            "max |UᵀU - I|",
        ));
    }

    // Phase: spectral route vs closed form
    let mut worst_equiv: f64 = 0.0;
    let mut worst_null: f64 = 0.0;
    let mut worst_parseval: f64 = 0.0;
    let mut worst_stationary: f64 = 0.0;
    for _ in 0..samples {
        let links = random_links(&mut rng, ladder.graph().edge_count());
        let scaling = Scaling::new(
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
        )?;
        let kernel = assemble_kernel(ladder.graph(), &links, scaling)?;
        let numeric = phase_numeric(&kernel, &spectral)?;
        let closed = ladder_phase_closed_form(&ladder, &links, scaling)?;
        worst_equiv = worst_equiv.max(rel_err(numeric, closed.phase));

        let p = project_source(&spectral, kernel.source())?;
        let jn = norm(kernel.source());
        worst_null = worst_null.max(p.null_component.unwrap_or(0.0).abs() / jn);
        worst_parseval = worst_parseval.max(rel_err(norm(&p.components), jn));

        let sp = stationary_phase_check(&kernel, &spectral)?;
        worst_stationary = worst_stationary.max(sp.residual / sp.phase_numeric.abs());
    }
    checks.push(CheckResult::new(
        "central_equivalence",
        worst_equiv,
        1e-9,
        format!("{samples} random link vectors, spectral phase vs closed form"),
    ));
    checks.push(CheckResult::new(
        "null_projection",
        worst_null,
        1e-10,
        "|Ĵ_null| / ‖J‖",
    ));
    checks.push(CheckResult::new(
        "parseval",
        worst_parseval,
        1e-10,
        "‖Ĵ‖ vs ‖J‖",
    ));
    checks.push(CheckResult::new(
        "stationary_phase",
        worst_stationary,
        1e-12,
        "f(Q_E)/(ħβ) vs spectral phase",
    ));

    checks.push(uniform_twin_slit_check(&ladder, &spectral, &mut rng)?);
    checks.extend(symmetry_checks(&ladder, &spectral, &mut rng)?);

    // Oscillator comparison
    let osc = harmonic_kernel(n, 1.3, 0.7, 0.9, -0.4)?;
    checks.push(CheckResult::flag(
        "harmonic_sign_pattern",
        sign_pattern(&osc) == sign_pattern(&ladder.graph().laplacian()),
        "coupled-oscillator matrix has the Laplacian's sign pattern",
    ));

    // Per-mode Fresnel factor
    let mut worst_fresnel: f64 = 0.0;
    for (a, j) in [(1.0, 0.0), (2.0, 1.0), (1.0, 3.0), (0.5, -2.0)] {
        worst_fresnel =
            worst_fresnel.max(fresnel_mode_integral(a, j, &DEFAULT_EPSILONS)?.relative_error);
    }
    let divergent = matches!(
        fresnel_mode_integral(0.0, 1.0, &DEFAULT_EPSILONS),
        Err(Error::DivergentMode)
    );
    checks.push(CheckResult::new(
        "fresnel_oracle",
        if divergent {
            worst_fresnel
        } else {
            f64::INFINITY
        },
        1e-3,
        "regulated quadrature extrapolated to zero regulator; a=0 rejected",
    ));

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        config: VerifyConfig {
            command: "verify",
            n,
            seed,
            samples,
        },
        checks,
        resolved_sum_limits: ResolvedSumLimits::for_n(n),
        all_pass,
    })
}

fn null_mode_check(name: &str, spectral: &SpectralData) -> CheckResult {
    let Some(i) = spectral.null_index() else {
        return CheckResult::flag(name, false, format!("{} null modes", spectral.null_count()));
    };
    let u = spectral.mode(i);
    let cosine = u.iter().sum::<f64>().abs() / (u.len() as f64).sqrt() / norm(u);
    CheckResult::new(name, 1.0 - cosine, 1e-12, "1 - cos(null mode, all-ones)")
}

fn fixture_equivalence(
    fixture: &crate::chain_complex::OrientedGraph,
    six: &LadderComplex,
    rng: &mut ChaCha8Rng,
) -> Result<CheckResult> {
    let Some(map) = find_relabeling(fixture, six.graph())? else {
        return Ok(CheckResult::flag(
            "fixture_isomorphism",
            false,
            "no vertex relabeling found",
        ));
    };
    let fixture_spec = eigendecompose_symmetric(&fixture.laplacian(), ZeroTolerance::default())?;
    let six_spec = eigendecompose_symmetric(&six.graph().laplacian(), ZeroTolerance::default())?;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let links = random_links(rng, 7);
        let mapped = LinkValues::new(map.map_links(links.as_slice()))?;
        let a = phase_numeric(
            &assemble_kernel(fixture, &links, Scaling::unit())?,
            &fixture_spec,
        )?;
        let b = phase_numeric(
            &assemble_kernel(six.graph(), &mapped, Scaling::unit())?,
            &six_spec,
        )?;
        let c = ladder_phase_closed_form(six, &mapped, Scaling::unit())?.phase;
        worst = worst.max(rel_err(a, b)).max(rel_err(a, c));
    }
    Ok(CheckResult::new(
        "fixture_isomorphism",
        worst,
        1e-10,
        format!(
            "vertex map {:?}; phases agree across labelings",
            map.vertex_map
        ),
    ))
}

fn uniform_twin_slit_check(
    ladder: &LadderComplex,
    spectral: &SpectralData,
    rng: &mut ChaCha8Rng,
) -> Result<CheckResult> {
    let n = ladder.n() as f64;
    let mut worst: f64 = 0.0;
    let mut worst_st: f64 = 0.0;
    for _ in 0..5 {
        let (e_t, e_x) = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        let alpha = rng.gen_range(0.5..2.0);
        let scaling = Scaling::new(alpha, 1.0, 1.0)?;
        let links = uniform_ladder_links(ladder, e_t, e_x);
        let d = ladder_phase_closed_form(ladder, &links, scaling)?;
        let expected = alpha * alpha * (n / 2.0 * e_x * e_x + (n - 2.0) * e_t * e_t);
        let kernel = assemble_kernel(ladder.graph(), &links, scaling)?;
        let numeric_inner = -2.0 * phase_numeric(&kernel, spectral)?;
        worst = worst
            .max(rel_err(d.phi_s + d.phi_t, expected))
            .max(rel_err(numeric_inner, expected) * 1e-3);
        worst_st = worst_st.max(d.phi_st.abs());
    }
    Ok(CheckResult::new(
        "uniform_twin_slit",
        worst.max(worst_st),
        1e-12,
        "Φ_ST = 0 and Φ_S + Φ_T = α²((N/2) e_x² + (N-2) e_T²)",
    ))
}

fn symmetry_checks(
    ladder: &LadderComplex,
    spectral: &SpectralData,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckResult>> {
    let g = ladder.graph();
    let links = random_links(rng, g.edge_count());
    let base = Scaling::new(1.3, 0.8, 1.1)?;
    let phi = phase_numeric(&assemble_kernel(g, &links, base)?, spectral)?;

    let s = 1.7;
    let phi_alpha = phase_numeric(
        &assemble_kernel(
            g,
            &links,
            Scaling {
                alpha: s * base.alpha,
                ..base
            },
        )?,
        spectral,
    )?;
    let phi_beta = phase_numeric(
        &assemble_kernel(
            g,
            &links,
            Scaling {
                beta: s * base.beta,
                ..base
            },
        )?,
        spectral,
    )?;
    let scaling_err = rel_err(phi_alpha, s * s * phi).max(rel_err(phi_beta, phi / s));

    let v: Vec<f64> = (0..g.vertex_count())
        .map(|_| rng.gen_range(-20..=20) as f64)
        .collect();
    let shifted: Vec<f64> = v.iter().map(|x| x + 7.0).collect();
    let e1 = coboundary_links(g, &v)?;
    let e2 = coboundary_links(g, &shifted)?;
    let k1 = assemble_kernel(g, &LinkValues::new(e1.clone())?, base)?;
    let k2 = assemble_kernel(g, &LinkValues::new(e2.clone())?, base)?;
    let gauge_exact = e1 == e2
        && k1.source() == k2.source()
        && phase_numeric(&k1, spectral)? == phase_numeric(&k2, spectral)?;

    let mut vperm: Vec<usize> = (0..g.vertex_count()).collect();
    let mut eperm: Vec<usize> = (0..g.edge_count()).collect();
    vperm.shuffle(rng);
    eperm.shuffle(rng);
    let relabeled = g.relabeled(&vperm, &eperm)?;
    let mut moved = vec![0.0; links.len()];
    for (j, &x) in links.as_slice().iter().enumerate() {
        moved[eperm[j]] = x;
    }
    let rspec = eigendecompose_symmetric(&relabeled.laplacian(), ZeroTolerance::default())?;
    let phi_relabeled = phase_numeric(
        &assemble_kernel(&relabeled, &LinkValues::new(moved)?, base)?,
        &rspec,
    )?;

    Ok(vec![
        CheckResult::new("scaling_laws", scaling_err, 1e-12, "Φ ∝ α², Φ ∝ 1/β"),
        CheckResult::flag(
            "gauge_invariance",
            gauge_exact,
            "v → v + c·1 leaves e, J, Φ unchanged",
        ),
        CheckResult::new(
            "relabeling_invariance",
            rel_err(phi_relabeled, phi),
            1e-10,
            "random vertex and edge permutation",
        ),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub sample: usize,
    pub phase_numeric: f64,
    pub phase_closed_form: f64,
    pub relative_error: f64,
    pub phi_s: f64,
    pub phi_t: f64,
    pub phi_st: f64,
}

/// Spectral and closed-form phases for `samples` random link vectors at
/// each ladder size, unit scaling.
pub fn equivalence_sweep(
    sizes: &[usize],
    samples: usize,
    seed: u64,
) -> Result<Vec<EquivalenceRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(sizes.len() * samples);
    for &n in sizes {
        let ladder = build_canonical_ladder(n)?;
        let spectral =
            eigendecompose_symmetric(&ladder.graph().laplacian(), ZeroTolerance::default())?;
        for sample in 0..samples {
            let links = random_links(&mut rng, ladder.graph().edge_count());
            let kernel = assemble_kernel(ladder.graph(), &links, Scaling::unit())?;
            let numeric = phase_numeric(&kernel, &spectral)?;
            let closed = ladder_phase_closed_form(&ladder, &links, Scaling::unit())?;
            rows.push(EquivalenceRow {
                n,
                sample,
                phase_numeric: numeric,
                phase_closed_form: closed.phase,
                relative_error: rel_err(numeric, closed.phase),
                phi_s: closed.phi_s,
                phi_t: closed.phi_t,
                phi_st: closed.phi_st,
            });
        }
    }
    Ok(rows)
}
