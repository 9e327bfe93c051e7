use num_complex::Complex64;
use num_traits::Zero;

use crate::exactalg::{horner, horner_abs, BiPoly, Rat, UniPoly};

/// One term `coeff · Δ^order_point`, where `Δ^k_c f = f^(k)(c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: Complex64,
    pub order: u32,
    pub coeff: Complex64,
}

/// A finitely supported linear functional on polynomials in `x`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Functional {
    pub atoms: Vec<Atom>,
}

impl Functional {
    pub fn zero() -> Self {
        Functional::default()
    }

    /// `coeff · Δ^order_point`.
    pub fn delta(point: Complex64, order: u32, coeff: Complex64) -> Self {
        Functional {
            atoms: vec![Atom {
                point,
                order,
                coeff,
            }],
        }
    }

    /// `c1 Δ¹_γ + c0 Δ⁰_γ`.
    pub fn first_order(point: Complex64, c1: Complex64, c0: Complex64) -> Self {
        Functional {
            atoms: vec![
                Atom {
                    point,
                    order: 1,
                    coeff: c1,
                },
                Atom {
                    point,
                    order: 0,
                    coeff: c0,
                },
            ],
        }
    }

    /// Coefficient of the atom of the given order, zero if absent.
    pub fn coeff(&self, order: u32) -> Complex64 {
        self.atoms
            .iter()
            .filter(|a| a.order == order)
            .map(|a| a.coeff)
            .sum()
    }

    pub fn apply_uni(&self, p: &UniPoly) -> Complex64 {
        self.terms(p).map(|(v, _)| v).sum()
    }

    /// `|θ(p)|` divided by the rounding scale `max|c| · Σ_atoms Σ_k |p^(ord)_k| |γ|^k`,
    /// so a vanishing coefficient does not shrink the reference.
    pub fn relative_residual(&self, p: &UniPoly) -> f64 {
        let cmax = self
            .atoms
            .iter()
            .map(|a| a.coeff.norm())
            .fold(0.0, f64::max);
        let (value, scale) = self
            .terms(p)
            .fold((Complex64::zero(), 0.0), |(v, s), (tv, ts)| {
                (v + tv, s + ts)
            });
        let scale = cmax * scale;
        if scale == 0.0 {
            value.norm()
        } else {
            value.norm() / scale
        }
    }

    fn terms<'a>(&'a self, p: &UniPoly) -> impl Iterator<Item = (Complex64, f64)> + 'a {
        let max_order = self.atoms.iter().map(|a| a.order).max().unwrap_or(0);
        let mut derivs = vec![p.to_f64()];
        let mut cur = p.clone();
        for _ in 0..max_order {
            cur = cur.derivative();
            derivs.push(cur.to_f64());
        }
        self.atoms.iter().map(move |a| {
            let c = &derivs[a.order as usize];
            (a.coeff * horner(c, a.point), horner_abs(c, a.point))
        })
    }
}

/// `Σ coeff · (∂_x^order poly)(point, y)`. The derivatives and the
/// specialization at `y` are exact; only the final evaluation is floating.
pub fn apply_functional(f: &Functional, poly: &BiPoly, y: f64) -> Complex64 {
    let yr = Rat::from_float(y).expect("finite y");
    f.apply_uni(&poly.eval_y(&yr))
}
