use std::cell::Cell;

use num_complex::Complex64;

use super::quadrature::integrate;
use crate::error::{Error, Result};
use crate::exactalg::{horner, horner_abs, Rat};
use crate::par;
use crate::partition::Partition;
use crate::xhp::XhpFamily;

const REL_TOL: f64 = 1e-13;
const TAU_FLOOR: f64 = 1e-10;

/// Numerical Gram matrix of one XHP family.
#[derive(Debug, Clone)]
pub struct GramReport {
    pub y: f64,
    /// Integration interval `[-half_width, half_width]`.
    pub half_width: f64,
    pub degrees: Vec<usize>,
    pub gram: Vec<Vec<f64>>,
    /// `max |G_nm| / sqrt(G_nn G_mm)` over `n ≠ m`.
    pub max_offdiag_rel: f64,
    /// Closed-form norm `ν_{n-N}` per degree.
    pub nu: Vec<f64>,
    /// `G_nn / ν_{n-N}`.
    pub nu_ratio: Vec<f64>,
}

/// `2 sqrt(-πy) (-2y)^m (m+ℓ)! / Π_i (m - m_i)` with `m = n - N`.
pub fn norm_formula(p: &Partition, n: usize, y: f64) -> f64 {
    let l = p.len();
    let m = n as i64 - p.weight() as i64;
    let maya = p.maya_diagram(l);
    let fact: f64 = (1..=(m + l as i64).max(0)).map(|k| k as f64).product();
    let den: f64 = maya.iter().map(|&mi| (m - mi) as f64).product();
    2.0 * (-std::f64::consts::PI * y).sqrt() * (-2.0 * y).powi(m as i32) * fact / den
}

/// Gram matrix `∫ H_n H_m e^{x²/4y} / τ² dx` for `n, m ∈ I`, `n, m ≤ nmax`.
pub fn orthogonality_check(p: &Partition, y: f64, nmax: usize) -> Result<GramReport> {
    if !p.is_even() {
        return Err(Error::NotEven);
    }
    if y.is_nan() || y >= 0.0 {
        return Err(Error::NonNegativeY(y));
    }
    let yr = Rat::from_float(y).ok_or(Error::NonNegativeY(y))?;
    let family = XhpFamily::new(p)?;
    let degrees = p.degree_set(nmax);
    let polys: Vec<Vec<f64>> =
        par::map(&degrees, |&n| family.get(n).map(|h| h.eval_y(&yr).to_f64()))
            .into_iter()
            .collect::<Result<_>>()?;
    let tau = family.xtilde_det().eval_y(&yr).to_f64();

    let eval = |c: &[f64], x: f64| horner(c, Complex64::new(x, 0.0)).re;
    let weight = |x: f64| (x * x / (4.0 * y)).exp();

    let half_width = truncation(&polys, &tau, y);
    let panels = (4.0 * half_width).ceil() as usize;

    let pairs: Vec<(usize, usize)> = (0..degrees.len())
        .flat_map(|i| (i..degrees.len()).map(move |j| (i, j)))
        .collect();
    let entries = par::map(&pairs, |&(i, j)| -> Result<f64> {
        let small = Cell::new(None);
        let f = |x: f64| {
            let t = eval(&tau, x);
            if t.abs() < TAU_FLOOR {
                small.set(Some(x));
            }
            eval(&polys[i], x) * eval(&polys[j], x) * weight(x) / (t * t)
        };
        let q = integrate(&f, -half_width, half_width, panels, REL_TOL);
        if let Some(x) = small.get() {
            return Err(Error::TauVanishes(x));
        }
        if !q.converged {
            return Err(Error::ConvergenceFailure(pairs.len()));
        }
        Ok(q.value)
    });

    let k = degrees.len();
    let mut gram = vec![vec![0.0; k]; k];
    for (&(i, j), v) in pairs.iter().zip(entries) {
        let v = v?;
        gram[i][j] = v;
        gram[j][i] = v;
    }
    let mut max_offdiag_rel: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            if i != j {
                max_offdiag_rel =
                    max_offdiag_rel.max(gram[i][j].abs() / (gram[i][i] * gram[j][j]).sqrt());
            }
        }
    }
    let nu: Vec<f64> = degrees.iter().map(|&n| norm_formula(p, n, y)).collect();
    let nu_ratio = (0..k).map(|i| gram[i][i] / nu[i]).collect();
    Ok(GramReport {
        y,
        half_width,
        degrees,
        gram,
        max_offdiag_rel,
        nu,
        nu_ratio,
    })
}

/// Smallest `L` (on a half-unit grid) beyond which every diagonal integrand
/// is below `10⁻¹⁸` of its peak on `[-L, L]`.
fn truncation(polys: &[Vec<f64>], tau: &[f64], y: f64) -> f64 {
    let bound = |c: &[f64], x: f64| {
        let h = horner_abs(c, Complex64::new(x, 0.0));
        let t = horner(tau, Complex64::new(x, 0.0)).re;
        h * h * (x * x / (4.0 * y)).exp() / (t * t)
    };
    let exact = |c: &[f64], x: f64| {
        let h = horner(c, Complex64::new(x, 0.0)).re;
        let t = horner(tau, Complex64::new(x, 0.0)).re;
        h * h * (x * x / (4.0 * y)).exp() / (t * t)
    };
    let mut l = (-y).sqrt().max(0.5);
    loop {
        let ok = polys.iter().all(|c| {
            let steps = 200;
            let peak = (0..=steps)
                .map(|s| exact(c, l * s as f64 / steps as f64))
                .fold(0.0, f64::max);
            bound(c, l).max(bound(c, -l)) <= 1e-18 * peak
        });
        if ok {
            return l;
        }
        l += 0.5;
    }
}
