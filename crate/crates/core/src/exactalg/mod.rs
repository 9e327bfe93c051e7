//! Exact arithmetic over ℚ: bivariate polynomials, polynomial matrices with
//! fraction-free determinants, Wronskians and truncated Laurent series in `z`.

mod bipoly;
mod matrix;
mod series;
mod unipoly;

pub use bipoly::{hermite, hermite_table, BiPoly};
pub use matrix::{dot, wronskian, IntMatrix, Matrix, PolyMatrix, RatMatrix};
pub use series::{exp_vacuum, ZSeries};
pub use unipoly::{horner, horner_abs, UniPoly};

pub(crate) use bipoly::rat_to_f64;

/// Exact rational coefficient.
pub type Rat = num_rational::BigRational;

/// `num / den` as a [`Rat`].
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// `n!` as an exact rational.
pub fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::from_integer(1.into()), |acc, k| {
        acc * Rat::from_integer(k.into())
    })
}

/// Falling factorial `n (n-1) ⋯ (n-k+1) = n!/(n-k)!`.
pub fn falling(n: usize, k: usize) -> Rat {
    (n + 1 - k..=n).fold(Rat::from_integer(1.into()), |acc, j| {
        acc * Rat::from_integer(j.into())
    })
}
