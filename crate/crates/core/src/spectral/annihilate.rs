use num_complex::Complex64;
use num_traits::Zero;

use super::eigen::eigen_decompose;
use super::functional::Functional;
use super::linalg::{inverse, max_norm, to_complex, CMatrix};
use crate::cmpair::build_cm_pair;
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Rat, RatMatrix};
use crate::par;
use crate::partition::Partition;
use crate::xhp::XhpFamily;

/// The CM pair in the eigenbasis: `X' = S⁻¹ Zᵀ S`, `Z' = diag(γ)`,
/// `b' = S⁻¹ aᵀ`, `a' = bᵀ S`.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub x: CMatrix,
    pub z: CMatrix,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl DualPair {
    /// `‖[X', Z'] - I - b'a'‖_max`.
    pub fn cm_defect(&self) -> f64 {
        let n = self.x.rows();
        let comm = &self.x.matmul(&self.z) - &self.z.matmul(&self.x);
        let target = Matrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            self.b[i] * self.a[j] + id
        });
        max_norm(&(&comm - &target))
    }
}

/// Annihilating functionals of one family at one value of `y`.
#[derive(Debug, Clone)]
pub struct AnnihilatorSet {
    pub y: f64,
    pub gammas: Vec<Complex64>,
    pub thetas: Vec<Functional>,
    /// Per functional, the largest relative residual over the tested degrees.
    pub residual_report: Vec<f64>,
    pub degrees: Vec<usize>,
    pub dual: DualPair,
}

impl AnnihilatorSet {
    pub fn max_residual(&self) -> f64 {
        self.residual_report.iter().copied().fold(0.0, f64::max)
    }
}

/// `Xᵀ - 2y Zᵀ` for the CM pair of `p`, exactly.
pub fn stationary_matrix(p: &Partition, y: &Rat) -> Result<RatMatrix> {
    let c = build_cm_pair(p)?;
    let two_y = y * Rat::from_integer(2.into());
    let (x, z) = (c.x.to_rat(), c.z.to_rat());
    let n = c.size();
    Ok(Matrix::from_fn(n, n, |i, j| {
        &x[(j, i)] - &two_y * &z[(j, i)]
    }))
}

/// The functionals `θ_i = g_i(γ_i) Δ¹_{γ_i} + g_i'(γ_i) Δ⁰_{γ_i}` with
/// `g_i(x) = (a'_i b'_i + X'_ii (x - γ_i)) / Π_{n≠i} (x - γ_n)`, checked
/// against every `H_n^(λ)(·, y)` with `n ∈ I`, `n ≤ nmax`.
pub fn annihilators(p: &Partition, y: f64, tol: f64, nmax: usize) -> Result<AnnihilatorSet> {
    if y == 0.0 {
        return Err(Error::ZeroY);
    }
    if p.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let yr = Rat::from_float(y).ok_or(Error::ZeroY)?;
    let m = stationary_matrix(p, &yr)?;
    let eig = eigen_decompose(&m, tol)?;
    let c = build_cm_pair(p)?;
    let s = &eig.vectors;
    let s_inv = inverse(s);
    let zt = to_complex(&c.z.to_rat()).transpose();
    let to_c = |v: &[i64]| -> Vec<Complex64> {
        v.iter().map(|&t| Complex64::new(t as f64, 0.0)).collect()
    };
    let dual = DualPair {
        x: s_inv.matmul(&zt).matmul(s),
        z: Matrix::from_fn(eig.values.len(), eig.values.len(), |i, j| {
            if i == j {
                eig.values[i]
            } else {
                Complex64::zero()
            }
        }),
        a: s.vec_mul(&to_c(&c.b)),
        b: s_inv.mul_vec(&to_c(&c.a)),
    };

    let gammas = eig.values;
    let thetas: Vec<Functional> = (0..gammas.len())
        .map(|i| {
            let gi = gammas[i];
            let mut den = Complex64::new(1.0, 0.0);
            let mut log_deriv = Complex64::zero();
            for (k, &gk) in gammas.iter().enumerate() {
                if k != i {
                    den *= gi - gk;
                    log_deriv += (gi - gk).inv();
                }
            }
            let ab = dual.a[i] * dual.b[i];
            let g = ab / den;
            let dg = dual.x[(i, i)] / den - g * log_deriv;
            Functional::first_order(gi, g, dg)
        })
        .collect();

    let family = XhpFamily::new(p)?;
    let degrees = p.degree_set(nmax);
    let polys = par::map(&degrees, |&n| family.get(n).map(|h| h.eval_y(&yr)));
    let polys: Vec<_> = polys.into_iter().collect::<Result<_>>()?;
    let residual_report = par::map(&thetas, |t| {
        polys
            .iter()
            .map(|h| t.relative_residual(h))
            .fold(0.0, f64::max)
    });

    Ok(AnnihilatorSet {
        y,
        gammas,
        thetas,
        residual_report,
        degrees,
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn pair_11_golden_functional() {
        let set = annihilators(&part("1,1"), -2.0, 1e-10, 16).unwrap();
        assert!((set.gammas[0] - c(0.0, -2.0)).norm() <= 1e-10);
        assert!((set.gammas[1] - c(0.0, 2.0)).norm() <= 1e-10);
        let theta = &set.thetas[1];
        assert!((theta.coeff(1) - c(0.0, 0.25)).norm() <= 1e-10);
        assert!(theta.coeff(0).norm() <= 1e-10);
        assert!(
            set.max_residual() <= 1e-8,
            "{:?} {:?}",
            set.residual_report,
            set.thetas
        );
    }

    #[test]
    fn pair_11_dual_is_cm() {
        let set = annihilators(&part("1,1"), -2.0, 1e-10, 8).unwrap();
        assert!(set.dual.cm_defect() <= 1e-9);
        // basis-independent pieces of the printed intermediates
        for i in 0..2 {
            let ab = set.dual.a[i] * set.dual.b[i];
            assert!((ab - c(-1.0, 0.0)).norm() <= 1e-10);
        }
        assert!((set.dual.x[(0, 0)] - c(0.0, -0.25)).norm() <= 1e-10);
        assert!((set.dual.x[(1, 1)] - c(0.0, 0.25)).norm() <= 1e-10);
    }

    #[test]
    fn single_value_functional_fails() {
        // Δ⁰ at 2i is not in the span of the θ's
        let set = annihilators(&part("1,1"), -2.0, 1e-10, 16).unwrap();
        let bad = Functional::delta(c(0.0, 2.0), 0, c(1.0, 0.0));
        let yr = Rat::from_float(-2.0).unwrap();
        let family = XhpFamily::new(&part("1,1")).unwrap();
        let worst = set
            .degrees
            .iter()
            .map(|&n| bad.relative_residual(&family.get(n).unwrap().eval_y(&yr)))
            .fold(0.0, f64::max);
        assert!(worst > 1e-3);
    }

    #[test]
    fn family_2211() {
        let set = annihilators(&part("2,2,1,1"), -1.0, 1e-10, 20).unwrap();
        assert_eq!(set.thetas.len(), 6);
        for t in &set.thetas {
            assert_eq!(t.atoms.len(), 2);
            assert_eq!(t.atoms[0].point, t.atoms[1].point);
        }
        assert!(set.max_residual() <= 1e-8, "{:?}", set.residual_report);
        assert!(set.dual.cm_defect() <= 1e-9);
    }

    #[test]
    fn eigen_residual_on_stationary_matrix() {
        for spec in ["2", "2,1", "3,1", "2,2,1,1"] {
            let yr = Rat::from_float(-0.5).unwrap();
            let m = stationary_matrix(&part(spec), &yr).unwrap();
            let Ok(e) = eigen_decompose(&m, 1e-10) else {
                continue;
            };
            let cm = to_complex(&m);
            let n = cm.rows();
            let d = Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    e.values[i]
                } else {
                    Complex64::zero()
                }
            });
            let r = &cm.matmul(&e.vectors) - &e.vectors.matmul(&d);
            assert!(max_norm(&r) <= 1e-10 * max_norm(&cm), "{spec}");
        }
    }

    #[test]
    fn rejected_inputs() {
        assert!(matches!(
            annihilators(&part("1,1"), 0.0, 1e-10, 8),
            Err(Error::ZeroY)
        ));
        assert!(matches!(
            annihilators(&part("1,1"), 0.0, 1e-10, 8)
                .unwrap_err()
                .name(),
            "ZeroY"
        ));
        assert!(matches!(
            annihilators(&Partition::empty(), -1.0, 1e-10, 8),
            Err(Error::EmptyPartition)
        ));
    }
}
