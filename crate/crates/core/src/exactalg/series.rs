use num_bigint::BigInt;

use super::bipoly::BiPoly;
use super::Rat;

/// Truncated Laurent series in `z` with [`BiPoly`] coefficients.
///
/// Holds the coefficients of `z^low, …, z^(order-1)`. Everything below
/// `low` is zero; everything from `order` on is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSeries {
    low: i64,
    coeffs: Vec<BiPoly>,
}

impl ZSeries {
    /// Panics if `coeffs` is empty.
    pub fn new(low: i64, coeffs: Vec<BiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "series window must be nonempty");
        ZSeries { low, coeffs }
    }

    /// A Laurent polynomial known exactly, zero-padded up to `order`.
    pub fn from_laurent(low: i64, mut coeffs: Vec<BiPoly>, order: i64) -> Self {
        let want = (order - low).max(coeffs.len() as i64).max(1) as usize;
        coeffs.resize(want, BiPoly::zero());
        ZSeries { low, coeffs }
    }

    /// The series `1 + O(z^order)`.
    pub fn one(order: i64) -> Self {
        ZSeries::from_laurent(0, vec![BiPoly::one()], order)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn order(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.coeffs
    }

    /// Coefficient of `z^n`; `None` past the truncation order.
    pub fn coeff(&self, n: i64) -> Option<BiPoly> {
        if n < self.low {
            Some(BiPoly::zero())
        } else if n >= self.order() {
            None
        } else {
            Some(self.coeffs[(n - self.low) as usize].clone())
        }
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> ZSeries {
        ZSeries {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Product, truncated to the largest order both factors determine:
    /// `min(low_a + order_b, low_b + order_a)`.
    pub fn mul(&self, rhs: &ZSeries) -> ZSeries {
        let low = self.low + rhs.low;
        let order = (self.low + rhs.order()).min(rhs.low + self.order());
        let len = (order - low) as usize;
        let mut coeffs = vec![BiPoly::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        ZSeries { low, coeffs }
    }

    pub fn scale(&self, c: &BiPoly) -> ZSeries {
        ZSeries {
            low: self.low,
            coeffs: self.coeffs.iter().map(|p| p * c).collect(),
        }
    }

    /// Substitutes `y = y0` in every coefficient, keeping polynomials in `x`.
    pub fn eval_y(&self, y0: &Rat) -> ZSeries {
        ZSeries {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|p| {
                    let u = p.eval_y(y0);
                    BiPoly::from_terms(
                        u.coeffs()
                            .iter()
                            .enumerate()
                            .map(|(k, c)| (k as u32, 0, c.clone())),
                    )
                })
                .collect(),
        }
    }
}

/// `exp(xz + yz²)` through `z^(order-1)`, expanded directly as
/// `exp(xz)·exp(yz²)`: the coefficient of `zⁿ` is
/// `Σ_j x^(n-2j) y^j / ((n-2j)! j!)`.
pub fn exp_vacuum(order: usize) -> ZSeries {
    assert!(order >= 1, "order must be positive");
    let mut fact = vec![BigInt::from(1)];
    for k in 1..order {
        let next = &fact[k - 1] * k;
        fact.push(next);
    }
    let coeffs = (0..order)
        .map(|n| {
            BiPoly::from_terms((0..=n / 2).map(|j| {
                let c = Rat::new(BigInt::from(1), &fact[n - 2 * j] * &fact[j]);
                ((n - 2 * j) as u32, j as u32, c)
            }))
        })
        .collect();
    ZSeries { low: 0, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{hermite, rat};

    #[test]
    fn vacuum_coefficients() {
        let s = exp_vacuum(4);
        assert_eq!(s.order(), 4);
        let expect = BiPoly::from_terms([(2, 0, rat(1, 2)), (0, 1, rat(1, 1))]);
        assert_eq!(s.coeff(2).unwrap(), expect);
        assert_eq!(s.coeff(-1).unwrap(), BiPoly::zero());
        assert_eq!(s.coeff(4), None);
    }

    #[test]
    fn vacuum_matches_recurrence() {
        let s = exp_vacuum(26);
        let mut fact = Rat::from_integer(1.into());
        for n in 0..26usize {
            if n > 0 {
                fact *= Rat::from_integer(n.into());
            }
            assert_eq!(
                s.coeff(n as i64).unwrap().scale(&fact),
                hermite(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn identity_and_shift() {
        let s = exp_vacuum(6);
        assert_eq!(s.mul(&ZSeries::one(6)), s);
        let t = s.shift(3);
        assert_eq!(t.low(), 3);
        for n in 0..6 {
            assert_eq!(t.coeff(n + 3), s.coeff(n));
        }
    }

    #[test]
    fn product_order_bookkeeping() {
        // (z^-2 + O(z^3)) · (1 + z + O(z^4))
        let a = ZSeries::from_laurent(-2, vec![BiPoly::one()], 3);
        let b = ZSeries::from_laurent(0, vec![BiPoly::one(), BiPoly::one()], 4);
        let c = a.mul(&b);
        assert_eq!((c.low(), c.order()), (-2, 2));
        assert_eq!(c.coeff(-1).unwrap(), BiPoly::one());
        assert_eq!(c.coeff(0).unwrap(), BiPoly::zero());
    }

    #[test]
    fn exponential_law() {
        // exp(xz + yz²)² = exp(2xz + 2yz²), whose z² coefficient is (2x)²/2 + 2y
        let s = exp_vacuum(5);
        let sq = s.mul(&s);
        assert_eq!(sq.order(), 5);
        assert_eq!(
            sq.coeff(2).unwrap(),
            BiPoly::from_int_terms(&[(2, 0, 2), (0, 1, 2)])
        );
    }
}
