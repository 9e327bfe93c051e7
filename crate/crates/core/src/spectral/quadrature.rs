#![allow(clippy::excessive_precision)]

use std::collections::BinaryHeap;

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: f64,
    /// `∫ |f|` estimate, the reference scale for the error.
    pub abs_value: f64,
    pub error: f64,
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    abs_value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for k in 0..7 {
        let dx = h * XGK[k];
        let (f1, f2) = (f(c - dx), f(c + dx));
        kronrod += WGK[k] * (f1 + f2);
        abs += WGK[k] * (f1.abs() + f2.abs());
        if k % 2 == 1 {
            gauss += WG[k / 2] * (f1 + f2);
        }
    }
    Segment {
        a,
        b,
        value: kronrod * h,
        abs_value: abs * h.abs(),
        error: ((kronrod - gauss) * h).abs(),
    }
}

/// Adaptive Gauss-Kronrod (7/15) integration of `f` over `[a, b]`, starting
/// from `panels` equal pieces and bisecting the worst piece until the summed
/// error estimate is below `rel_tol · ∫|f|`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize, rel_tol: f64) -> Quad {
    const MAX_SEGMENTS: usize = 4000;
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut heap: BinaryHeap<Segment> = (0..panels)
        .map(|k| {
            let lo = a + width * k as f64;
            let hi = if k + 1 == panels { b } else { lo + width };
            gk15(f, lo, hi)
        })
        .collect();
    loop {
        let (value, abs_value, error) = heap.iter().fold((0.0, 0.0, 0.0), |(v, s, e), g| {
            (v + g.value, s + g.abs_value, e + g.error)
        });
        let done = error <= rel_tol * abs_value || error == 0.0;
        if done || heap.len() >= MAX_SEGMENTS {
            return Quad {
                value,
                abs_value,
                error,
                converged: done,
            };
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gk15(f, worst.a, mid));
        heap.push(gk15(f, mid, worst.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integral() {
        let q = integrate(&|x: f64| (-x * x).exp(), -12.0, 12.0, 4, 1e-14);
        assert!(q.converged);
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn polynomial_exact() {
        let q = integrate(&|x: f64| x.powi(6) - 3.0 * x, 0.0, 2.0, 1, 1e-14);
        assert!((q.value - (128.0 / 7.0 - 6.0)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_cancels() {
        let q = integrate(
            &|x: f64| x.sin() * (-x * x / 8.0).exp(),
            -30.0,
            30.0,
            8,
            1e-13,
        );
        assert!(q.value.abs() < 1e-13 * q.abs_value);
    }
}
