//! Reference matrices for the six-vertex fixture, written out entry by
//! entry. Used as regression targets.

/// `∂₂` (7 links × 2 plaquettes).
pub const FIXTURE_BOUNDARY2: [[i64; 2]; 7] =
    [[-1, 0], [-1, 1], [0, -1], [1, 0], [1, 0], [0, 1], [0, -1]];

/// `∂₁` (6 vertices × 7 links).
pub const FIXTURE_BOUNDARY1: [[i64; 7]; 6] = [
    [-1, 0, 0, -1, 0, 0, 0],
    [1, -1, -1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, -1],
    [0, 0, 0, 1, -1, 0, 0],
    [0, 1, 0, 0, 1, -1, 0],
    [0, 0, 0, 0, 0, 1, 1],
];

/// `∂₁∂₁ᵀ` (6 × 6).
pub const FIXTURE_LAPLACIAN: [[i64; 6]; 6] = [
    [2, -1, 0, -1, 0, 0],
    [-1, 3, -1, 0, -1, 0],
    [0, -1, 2, 0, 0, -1],
    [-1, 0, 0, 2, -1, 0],
    [0, -1, 0, -1, 3, -1],
    [0, 0, -1, 0, -1, 2],
];

/// `∂₁e` written as signed one-based link terms per vertex:
/// `(-e1-e4, e1-e2-e3, e3-e7, e4-e5, e2+e5-e6, e6+e7)`.
pub const FIXTURE_DIVERGENCE_TERMS: [&[(i64, usize)]; 6] = [
    &[(-1, 1), (-1, 4)],
    &[(1, 1), (-1, 2), (-1, 3)],
    &[(1, 3), (-1, 7)],
    &[(1, 4), (-1, 5)],
    &[(1, 2), (1, 5), (-1, 6)],
    &[(1, 6), (1, 7)],
];

/// Eigenvalues of [`FIXTURE_LAPLACIAN`], from its characteristic
/// polynomial `λ(λ-1)(λ-2)(λ-3)²(λ-5)`.
pub const FIXTURE_SPECTRUM: [f64; 6] = [0.0, 1.0, 2.0, 3.0, 3.0, 5.0];

/// Coefficient matrix (vertices × links) of the symbolic divergence.
pub fn divergence_coefficients() -> [[i64; 7]; 6] {
    let mut m = [[0; 7]; 6];
    for (v, terms) in FIXTURE_DIVERGENCE_TERMS.iter().enumerate() {
        for &(sign, link) in terms.iter() {
            m[v][link - 1] += sign;
        }
    }
    m
}
