use num_complex::Complex64;

use super::linalg::{max_norm, to_complex, CMatrix, Lu};
use super::roots::{polynomial_roots, sort_spectrum};
use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, Matrix, PolyMatrix, Rat, RatMatrix, UniPoly};

const ROOT_ITERATIONS: usize = 2000;
const INVERSE_ITERATIONS: usize = 12;

/// Eigenvalues in ascending (real, imaginary) order and a matrix whose
/// columns are matching eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<Complex64>,
    pub vectors: CMatrix,
}

/// `det(tI - m)` computed exactly, as a polynomial in `t`.
pub fn characteristic_polynomial(m: &RatMatrix) -> Result<UniPoly> {
    let n = m.rows();
    let shifted: PolyMatrix = Matrix::from_fn(n, n, |i, j| {
        let mut e = BiPoly::constant(-m[(i, j)].clone());
        if i == j {
            e += &BiPoly::x();
        }
        e
    });
    Ok(shifted.det()?.eval_y(&Rat::from_integer(0.into())))
}

/// Diagonalizes a rational matrix with simple spectrum.
///
/// The characteristic polynomial is formed exactly; a repeated root is
/// detected exactly through `gcd(p, p')` and reported as
/// [`Error::DegenerateSpectrum`], as is a numerical gap below `10³·tol`.
/// Eigenvectors come from shifted inverse iteration and are scaled so their
/// largest component is 1; each satisfies `‖m s - γ s‖ ≤ tol ‖m‖`.
pub fn eigen_decompose(m: &RatMatrix, tol: f64) -> Result<Eigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let charpoly = characteristic_polynomial(m)?;
    if !charpoly.is_squarefree() {
        return Err(Error::DegenerateSpectrum { gap: 0.0 });
    }
    let mut values = polynomial_roots(&charpoly.to_f64(), ROOT_ITERATIONS)?;
    let cm = to_complex(m);
    let scale = max_norm(&cm).max(1.0);
    sort_spectrum(&mut values, 1e-9 * scale);

    let gap = min_gap(&values);
    if gap < 1e3 * tol {
        return Err(Error::DegenerateSpectrum { gap });
    }

    let mut columns = Vec::with_capacity(n);
    for &g in &values {
        columns.push(eigenvector(&cm, g, tol)?);
    }
    let vectors = Matrix::from_fn(n, n, |i, j| columns[j][i]);
    Ok(Eigen { values, vectors })
}

fn min_gap(values: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}

fn eigenvector(m: &CMatrix, gamma: Complex64, tol: f64) -> Result<Vec<Complex64>> {
    let n = m.rows();
    let norm = max_norm(m).max(f64::MIN_POSITIVE);
    let shift = gamma + Complex64::new(1e3 * f64::EPSILON * norm.max(1.0), 0.0);
    let shifted = Matrix::from_fn(
        n,
        n,
        |i, j| {
            if i == j {
                m[(i, j)] - shift
            } else {
                m[(i, j)]
            }
        },
    );
    let lu = Lu::new(&shifted);
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(1.0, 0.37 * k as f64 + 0.11))
        .collect();
    for _ in 0..INVERSE_ITERATIONS {
        v = lu.solve(&v);
        normalize(&mut v);
        let mv = m.mul_vec(&v);
        let resid = mv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - gamma * b).norm())
            .fold(0.0, f64::max);
        if resid <= tol * norm {
            return Ok(v);
        }
    }
    Err(Error::ConvergenceFailure(INVERSE_ITERATIONS))
}

/// Scales so the component of largest modulus becomes 1.
fn normalize(v: &mut [Complex64]) {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or_default();
    if pivot.norm() > 0.0 {
        for c in v.iter_mut() {
            *c /= pivot;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, IntMatrix};

    #[test]
    fn diagonal_input() {
        let m = IntMatrix::from_rows(vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]).to_rat();
        let e = eigen_decompose(&m, 1e-10).unwrap();
        for (k, g) in e.values.iter().enumerate() {
            assert!((g - Complex64::new(k as f64 + 1.0, 0.0)).norm() < 1e-13);
        }
        let diff = &e.vectors - &CMatrix::identity(3);
        assert!(max_norm(&diff) < 1e-10);
    }

    #[test]
    fn pair_11_at_y_minus_2() {
        // Xᵀ - 2yZᵀ with y = -2
        let m = Matrix::from_rows(vec![
            vec![rat(0, 1), rat(-1, 1)],
            vec![rat(4, 1), rat(0, 1)],
        ]);
        let e = eigen_decompose(&m, 1e-10).unwrap();
        assert!((e.values[0] - Complex64::new(0.0, -2.0)).norm() < 1e-10);
        assert!((e.values[1] - Complex64::new(0.0, 2.0)).norm() < 1e-10);
        let cm = to_complex(&m);
        let lhs = cm.matmul(&e.vectors);
        let rhs = e.vectors.matmul(&Matrix::from_fn(2, 2, |i, j| {
            if i == j {
                e.values[i]
            } else {
                Complex64::default()
            }
        }));
        assert!(max_norm(&(&lhs - &rhs)) < 1e-10 * max_norm(&cm));
    }

    #[test]
    fn nilpotent_is_degenerate() {
        let m = IntMatrix::from_rows(vec![vec![0, 0], vec![1, 0]]).to_rat();
        assert!(matches!(
            eigen_decompose(&m, 1e-10),
            Err(Error::DegenerateSpectrum { .. })
        ));
        assert!(matches!(
            eigen_decompose(&RatMatrix::zeros(2, 3), 1e-10),
            Err(Error::NotSquare { .. })
        ));
    }
}
