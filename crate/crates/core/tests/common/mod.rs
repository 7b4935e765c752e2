//! Test-only oracles: adaptive Gauss-Kronrod quadrature.

#![allow(dead_code)]

use hindex_core::indicators::PUBLISHED_TABLE;
use hindex_core::SeriesSpec;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if depth == 0 || err <= rel_tol * value.abs().max(1e-300) {
        return value;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, rel_tol, depth - 1) + adaptive(f, mid, b, rel_tol, depth - 1)
}

/// Integral of `f` over `[a, b]` to relative tolerance 1e-9 per panel.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    adaptive(&f, a, b, 1e-9, 40)
}

/// Integral of `f` over `[a, inf)` through `t = a + s / (1 - s)`.
pub fn integrate_to_infinity(f: impl Fn(f64) -> f64, a: f64) -> f64 {
    let g = move |s: f64| {
        if s >= 1.0 {
            return 0.0;
        }
        let t = a + s / (1.0 - s);
        let v = f(t) / ((1.0 - s) * (1.0 - s));
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0)
}

pub fn study_specs() -> Vec<SeriesSpec> {
    PUBLISHED_TABLE.iter().map(|r| r.spec()).collect()
}
