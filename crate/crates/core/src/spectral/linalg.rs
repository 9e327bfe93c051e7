use num_complex::Complex64;
use num_traits::Zero;

use crate::exactalg::{rat_to_f64, Matrix, RatMatrix};

/// Dense complex matrix.
pub type CMatrix = Matrix<Complex64>;

pub fn to_complex(m: &RatMatrix) -> CMatrix {
    m.map(|v| Complex64::new(rat_to_f64(v), 0.0))
}

/// Largest entry modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.entries().iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.entries()
        .iter()
        .all(|v| v.re.is_finite() && v.im.is_finite())
}

/// LU factorization with partial pivoting, stored compactly.
pub struct Lu {
    lu: Vec<Vec<Complex64>>,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors a square matrix. Exactly zero pivots are replaced by a tiny
    /// value so near-singular shifted systems still solve.
    pub fn new(m: &CMatrix) -> Lu {
        let n = m.rows();
        let mut lu = m.to_rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let tiny = f64::EPSILON * max_norm(m).max(1.0);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[a][k].norm().total_cmp(&lu[b][k].norm()))
                .unwrap();
            lu.swap(k, p);
            perm.swap(k, p);
            if lu[k][k].norm() == 0.0 {
                lu[k][k] = Complex64::new(tiny, 0.0);
            }
            let (top, rest) = lu.split_at_mut(k + 1);
            let pivot = &top[k];
            for row in rest.iter_mut() {
                let f = row[k] / pivot[k];
                row[k] = f;
                for (r, p) in row[k + 1..].iter_mut().zip(&pivot[k + 1..]) {
                    *r -= f * p;
                }
            }
        }
        Lu { lu, perm }
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.len();
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[i][j] * y[j];
                y[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu[i][j] * y[j];
                y[i] -= t;
            }
            y[i] /= self.lu[i][i];
        }
        y
    }
}

pub fn inverse(m: &CMatrix) -> CMatrix {
    let n = m.rows();
    let lu = Lu::new(m);
    let cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::zero(); n];
            e[j] = Complex64::new(1.0, 0.0);
            lu.solve(&e)
        })
        .collect();
    Matrix::from_fn(n, n, |i, j| cols[j][i])
}
