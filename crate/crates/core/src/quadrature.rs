//! Adaptive Gauss–Kronrod (7/15) integration of complex-valued functions.

use num_complex::Complex64;

// QUADPACK qk15 abscissae and weights
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel. Returns the Kronrod estimate and
/// `|K15 - G7|` as the error estimate.
pub fn gauss_kronrod15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).norm())
}

/// Recursive bisection until each panel's error estimate is below its
/// share of `abs_tol` (or `max_depth` is reached).
pub fn integrate_adaptive<F>(f: &F, a: f64, b: f64, abs_tol: f64, max_depth: u32) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (value, err) = gauss_kronrod15(f, a, b);
    if err <= abs_tol || max_depth == 0 {
        return value;
    }
    let mid = 0.5 * (a + b);
    integrate_adaptive(f, a, mid, 0.5 * abs_tol, max_depth - 1)
        + integrate_adaptive(f, mid, b, 0.5 * abs_tol, max_depth - 1)
}

/// Splits `[a, b]` into `panels` equal pieces and integrates each
/// adaptively.
pub fn integrate_panels<F>(f: &F, a: f64, b: f64, panels: usize, abs_tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let per_panel = abs_tol / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == panels { b } else { lo + h };
            integrate_adaptive(f, lo, hi, per_panel, 12)
        })
        .sum()
}
