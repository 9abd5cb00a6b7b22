//! Fixed values from independent derivations: exact rational projections,
//! characteristic polynomials, spanning-tree counts and exhaustive
//! isomorphism search.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use graph_amplitude::action::{assemble_kernel, LinkValues, Scaling};
use graph_amplitude::amplitude::{ladder_phase_closed_form, phase_numeric, symmetry_amplitude};
use graph_amplitude::chain_complex::{
    boundary1, boundary2, build_canonical_ladder, build_figure1_fixture, find_relabeling,
    OrientedGraph,
};
use graph_amplitude::matrix::{IntMatrix, Matrix};
use graph_amplitude::reference::{FIXTURE_LAPLACIAN, FIXTURE_SPECTRUM};
use graph_amplitude::spectral::{eigendecompose_with, EigenMethod, ZeroTolerance};
use graph_amplitude::twinslit::uniform_ladder_links;
use itertools::Itertools;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

/// Fraction-free determinant.
fn det_exact(m: &IntMatrix) -> i128 {
    let n = m.rows();
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|r| m.row(r).iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn shifted(l: &IntMatrix, lambda: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..l.rows())
        .map(|r| {
            let mut row = l.row(r).to_vec();
            row[r] -= lambda;
            row
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

fn fixture_laplacian() -> IntMatrix {
    IntMatrix::from_rows(&FIXTURE_LAPLACIAN)
}

#[test]
fn fixture_characteristic_polynomial_roots() {
    let l = fixture_laplacian();
    // λ(λ-1)(λ-2)(λ-3)²(λ-5): rank drop equals multiplicity
    for (lambda, mult) in [(0, 1), (1, 1), (2, 1), (3, 2), (5, 1)] {
        assert_eq!(shifted(&l, lambda).rank(), 6 - mult, "lambda = {lambda}");
    }
    for lambda in [4, 6, -1] {
        assert_ne!(det_exact(&shifted(&l, lambda)), 0);
    }
    // det(L - 4I) = p(4) with p(λ) = λ(λ-1)(λ-2)(λ-3)²(λ-5)
    assert_eq!(det_exact(&shifted(&l, 4)), -(4 * 3 * 2));
}

#[test]
fn spanning_tree_product() {
    // Product of nonzero Laplacian eigenvalues equals N times the number
    // of spanning trees; the reduced determinant counts the trees.
    let l = fixture_laplacian();
    let reduced: Vec<Vec<i64>> = (1..6).map(|r| l.row(r)[1..].to_vec()).collect();
    let trees = det_exact(&IntMatrix::from_rows(&reduced));
    assert_eq!(trees, 15);
    let product: f64 = FIXTURE_SPECTRUM.iter().filter(|&&x| x > 0.0).product();
    assert_eq!(product, 6.0 * trees as f64);

    let g = build_figure1_fixture();
    for method in [EigenMethod::Jacobi, EigenMethod::HouseholderQl] {
        let s = eigendecompose_with(&g.laplacian(), ZeroTolerance::default(), method).unwrap();
        let p: f64 = s.nonzero_modes().map(|i| s.eigenvalues()[i]).product();
        assert!(close(p, 90.0, 1e-12), "{method:?}: {p}");
    }
}

fn undirected(g: &OrientedGraph) -> BTreeSet<(usize, usize)> {
    g.edges()
        .iter()
        .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
        .collect()
}

#[test]
fn exhaustive_isomorphism_search() {
    let fixture = build_figure1_fixture();
    let six = build_canonical_ladder(6).unwrap();
    let target = undirected(six.graph());
    let hits: Vec<Vec<usize>> = (0..6)
        .permutations(6)
        .filter(|p| {
            let mapped: BTreeSet<_> = fixture
                .edges()
                .iter()
                .map(|e| (p[e.tail].min(p[e.head]), p[e.tail].max(p[e.head])))
                .collect();
            mapped == target
        })
        .collect();
    // The 2x3 grid has four automorphisms, so four isomorphisms.
    assert_eq!(hits.len(), 4);
    assert!(hits.contains(&(0..6).collect::<Vec<_>>()));

    let found = find_relabeling(&fixture, six.graph()).unwrap().unwrap();
    assert_eq!(found.vertex_map, (0..6).collect::<Vec<_>>());
    let positions: Vec<usize> = found.edge_map.iter().map(|&(k, _)| k).collect();
    assert_eq!(positions, vec![0, 5, 1, 4, 2, 3, 6]);
    assert!(found.edge_map.iter().all(|&(_, s)| s == 1));
}

#[test]
fn fixture_phase_against_exact_projection() {
    // Cut-space projections computed in exact rationals:
    // eᵀ(I - ∂₂(∂₂ᵀ∂₂)⁻¹∂₂ᵀ)e = 1964/15 for e = (1..7)
    let g = build_figure1_fixture();
    let s = eigendecompose_with(
        &g.laplacian(),
        ZeroTolerance::default(),
        EigenMethod::Jacobi,
    )
    .unwrap();
    let links = LinkValues::new((1..=7).map(f64::from).collect()).unwrap();
    let k = assemble_kernel(&g, &links, Scaling::unit()).unwrap();
    assert!(close(phase_numeric(&k, &s).unwrap(), -982.0 / 15.0, 1e-13));

    // and 103/30 for e = (1/2, -1, 2, 0, 3/2, -2, 1)
    let links = LinkValues::new(vec![0.5, -1.0, 2.0, 0.0, 1.5, -2.0, 1.0]).unwrap();
    let k = assemble_kernel(&g, &links, Scaling::unit()).unwrap();
    assert!(close(phase_numeric(&k, &s).unwrap(), -103.0 / 60.0, 1e-13));
}

#[test]
fn ladder_phase_against_exact_projection() {
    // N = 8, e_k = k with every third link negated: eᵀPe = 1391/7
    let ladder = build_canonical_ladder(8).unwrap();
    let e: Vec<f64> = (1..=10)
        .map(|k| if k % 3 == 0 { -k as f64 } else { k as f64 })
        .collect();
    let links = LinkValues::new(e).unwrap();
    let scaling = Scaling::new(2.0, 0.5, 1.5).unwrap();
    let expected = -4.0 * (1391.0 / 7.0) / (2.0 * 1.5 * 0.5);
    let d = ladder_phase_closed_form(&ladder, &links, scaling).unwrap();
    assert!(close(d.phase, expected, 1e-13), "{} vs {expected}", d.phase);
    assert!(close(d.total_inner, 4.0 * 1391.0 / 7.0, 1e-13));
    let s = eigendecompose_with(
        &ladder.graph().laplacian(),
        ZeroTolerance::default(),
        EigenMethod::Auto,
    )
    .unwrap();
    let k = assemble_kernel(ladder.graph(), &links, scaling).unwrap();
    assert!(close(phase_numeric(&k, &s).unwrap(), expected, 1e-12));
}

#[test]
fn uniform_ladder_phase_formula() {
    // (N/2) α² e_x² + (N-2) α² e_T² for uniform links
    for n in [4, 6, 10, 30] {
        let ladder = build_canonical_ladder(n).unwrap();
        let links = uniform_ladder_links(&ladder, 0.7, 1.3);
        let scaling = Scaling::new(1.5, 1.0, 1.0).unwrap();
        let d = ladder_phase_closed_form(&ladder, &links, scaling).unwrap();
        let nf = n as f64;
        let expected = 2.25 * (nf / 2.0 * 1.69 + (nf - 2.0) * 0.49);
        assert!(close(d.phi_s + d.phi_t, expected, 1e-12));
        assert!(d.phi_st.abs() <= 1e-12);
    }
}

#[test]
fn ladder_spectra_both_methods() {
    for n in [4, 6, 12, 40] {
        let ladder = build_canonical_ladder(n).unwrap();
        let mut expected: Vec<f64> = (0..n / 2)
            .flat_map(|j| {
                let s = (j as f64 * PI / n as f64).sin().powi(2);
                [4.0 * s, 4.0 * s + 2.0]
            })
            .collect();
        expected.sort_by(f64::total_cmp);
        for method in [EigenMethod::Jacobi, EigenMethod::HouseholderQl] {
            let s = eigendecompose_with(
                &ladder.graph().laplacian(),
                ZeroTolerance::default(),
                method,
            )
            .unwrap();
            for (a, b) in s.eigenvalues().iter().zip(&expected) {
                assert!((a - b).abs() < 1e-12, "{method:?} N={n}: {a} vs {b}");
            }
            let r = s.residuals(&ladder.graph().laplacian()).unwrap();
            assert!(r.max_eigen_residual < 1e-12 && r.orthonormality_error < 1e-12);
        }
    }
}

#[test]
fn degenerate_eigenspace_is_basis_independent() {
    // The eigenvalue 3 of the fixture is double. The phase depends only on
    // the projector onto that plane, which must annihilate L - 3I.
    let g = build_figure1_fixture();
    let l = g.laplacian();
    let mut l3 = l.clone();
    for i in 0..6 {
        l3[(i, i)] -= 3.0;
    }
    assert_eq!(shifted(&fixture_laplacian(), 3).rank(), 4);
    for method in [EigenMethod::Jacobi, EigenMethod::HouseholderQl] {
        let s = eigendecompose_with(&l, ZeroTolerance::default(), method).unwrap();
        let idx: Vec<usize> = (0..6)
            .filter(|&i| (s.eigenvalues()[i] - 3.0).abs() < 1e-9)
            .collect();
        assert_eq!(idx.len(), 2);
        let mut p = Matrix::zeros(6, 6);
        for &i in &idx {
            let u = s.mode(i);
            for r in 0..6 {
                for c in 0..6 {
                    p[(r, c)] += u[r] * u[c];
                }
            }
        }
        assert!((p.trace() - 2.0).abs() < 1e-12);
        assert!(l3.matmul(&p).unwrap().frobenius_norm() < 1e-12);
    }

    // Same phase from both solvers, whose degenerate bases differ.
    let links = LinkValues::new(vec![0.3, -1.2, 0.8, 2.0, -0.4, 1.1, 0.6]).unwrap();
    let k = assemble_kernel(&g, &links, Scaling::unit()).unwrap();
    let a = eigendecompose_with(&l, ZeroTolerance::default(), EigenMethod::Jacobi).unwrap();
    let b = eigendecompose_with(&l, ZeroTolerance::default(), EigenMethod::HouseholderQl).unwrap();
    assert!(close(
        phase_numeric(&k, &a).unwrap(),
        phase_numeric(&k, &b).unwrap(),
        1e-13
    ));
}

#[test]
fn trivial_source_gives_prefactor_only() {
    let g = build_figure1_fixture();
    let s = eigendecompose_with(
        &g.laplacian(),
        ZeroTolerance::default(),
        EigenMethod::Jacobi,
    )
    .unwrap();
    let k = assemble_kernel(&g, &LinkValues::zeros(7), Scaling::unit()).unwrap();
    let amp = symmetry_amplitude(&k, &s).unwrap();
    assert_eq!(amp.phase_total, 0.0);
    // (2π)^{5/2} / √90, five quarter turns
    let mag = (2.0 * PI).powf(2.5) / 90f64.sqrt();
    assert!(close(amp.prefactor_magnitude, mag, 1e-12));
    assert!(close(amp.prefactor_phase, 5.0 * PI / 4.0, 1e-15));
    assert!(close(amp.z.norm(), mag, 1e-12));
}

#[test]
fn boundary_matrices_compose_to_zero() {
    for n in [4, 6, 20] {
        let l = build_canonical_ladder(n).unwrap();
        let d1 = boundary1(l.graph());
        let d2 = boundary2(l.graph());
        assert!(d1.compose(&d2).unwrap().is_zero());
        // rank ∂₁ = N - 1, rank ∂₂ = number of plaquettes
        assert_eq!(d1.rank(), n - 1);
        assert_eq!(d2.rank(), n / 2 - 1);
    }
}
