//! Floating-point side: diagonalizing `Xᵀ - 2yZᵀ`, the annihilating
//! functionals built from its eigenbasis, and quadrature checks of
//! orthogonality on the real line.

mod annihilate;
mod eigen;
mod functional;
mod linalg;
mod ortho;
mod quadrature;
mod roots;

pub use annihilate::{annihilators, stationary_matrix, AnnihilatorSet, DualPair};
pub use eigen::{characteristic_polynomial, eigen_decompose, Eigen};
pub use functional::{apply_functional, Atom, Functional};
pub use linalg::{inverse, is_finite, max_norm, to_complex, CMatrix, Lu};
pub use ortho::{norm_formula, orthogonality_check, GramReport};
pub use quadrature::{integrate, Quad};
pub use roots::{polynomial_roots, sort_spectrum};
