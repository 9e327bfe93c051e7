use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactalg::{horner, horner_abs};

/// All complex roots of a real polynomial (ascending coefficients) by
/// Durand-Kerner simultaneous iteration, each root then polished by a few
/// Newton steps.
pub fn polynomial_roots(coeffs: &[f64], max_iter: usize) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound on root moduli
    let radius = 1.0 + monic[..deg].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            seed.powu(k as u32) * (radius / 2.0).max(0.5) + Complex64::new(0.01 * k as f64, 0.0)
        })
        .collect();

    // stop once every iterate is a root up to rounding in its own evaluation
    let settled = |z: &[Complex64]| {
        z.iter()
            .all(|&r| horner(&monic, r).norm() <= 32.0 * f64::EPSILON * horner_abs(&monic, r))
    };
    let mut converged = false;
    for _ in 0..max_iter {
        let mut worst: f64 = 0.0;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let step = horner(&monic, z[i]) / den;
            z[i] -= step;
            worst = worst.max(step.norm() / (1.0 + z[i].norm()));
        }
        if !worst.is_finite() {
            break;
        }
        if worst < 1e-15 || settled(&z) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure(max_iter));
    }

    let deriv: Vec<f64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&deriv, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner(&monic, *r) / d;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    Ok(z)
}

/// Orders by real part, then imaginary part, treating real parts closer
/// than `tol` as equal.
pub fn sort_spectrum(values: &mut [Complex64], tol: f64) {
    values.sort_by(|a, b| {
        if (a.re - b.re).abs() <= tol {
            a.im.total_cmp(&b.im)
        } else {
            a.re.total_cmp(&b.re)
        }
    });
}
