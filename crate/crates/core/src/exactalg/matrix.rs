use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::Rat;
use crate::error::{Error, Result};
use crate::par;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<BiPoly>;
pub type IntMatrix = Matrix<i64>;
pub type RatMatrix = Matrix<Rat>;

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The submatrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let i = if i < r { i } else { i + 1 };
            let j = if j < c { j } else { j + 1 };
            self[(i, j)].clone()
        })
    }
}

impl<T: Zero + Clone> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Zero + One + Clone> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Zero + Clone,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + &self[(i, k)] * &rhs[(k, j)])
        })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |acc, i| acc + &v[i] * &self[(i, j)]))
            .collect()
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| c * v)
    }

    /// `self^k`, the identity for `k = 0`.
    pub fn pow(&self, k: usize) -> Self
    where
        T: One,
    {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }
}

/// Dot product of two equal-length vectors.
pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x * y)
}

impl<T> Add for &Matrix<T>
where
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T> Sub for &Matrix<T>
where
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T> Neg for &Matrix<T>
where
    for<'a> &'a T: Neg<Output = T>,
{
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|v| -v)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|v| v.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        f.debug_tuple("Matrix").field(&rows).finish()
    }
}

impl IntMatrix {
    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|&v| BiPoly::from_int(v))
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|&v| Rat::from_integer(v.into()))
    }
}

impl PolyMatrix {
    /// Fraction-free (Bareiss) determinant over `ℚ[x, y]`.
    ///
    /// A zero pivot is replaced by the first nonzero entry below it, with
    /// the sign flipped. A column with no nonzero pivot makes the matrix
    /// singular.
    pub fn det(&self) -> Result<BiPoly> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BiPoly::one());
        }
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = BiPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(BiPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let cross = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = cross
                        .div_exact(&prev)
                        .expect("Bareiss step must divide exactly");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Laplace expansion along the first row. Exponential cost; kept as an
    /// independent check on [`PolyMatrix::det`].
    pub fn det_cofactor(&self) -> Result<BiPoly> {
        let n = self.require_square()?;
        Ok(match n {
            0 => BiPoly::one(),
            1 => self[(0, 0)].clone(),
            _ => {
                let mut acc = BiPoly::zero();
                for j in 0..n {
                    if self[(0, j)].is_zero() {
                        continue;
                    }
                    let term = &self[(0, j)] * &self.minor(0, j).det_cofactor()?;
                    if j % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            }
        })
    }

    /// Transposed matrix of signed cofactors, so `m · adj(m) = det(m) I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(PolyMatrix::identity(1));
        }
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let cofactors = par::map(&cells, |&(i, j)| {
            let d = self.minor(i, j).det().expect("minor is square");
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        });
        // cofactor (i, j) lands at (j, i)
        Ok(Matrix::from_fn(n, n, |r, c| cofactors[c * n + r].clone()))
    }

    /// Substitutes `y = y0` in every entry and returns the rational matrix
    /// of the constant terms. Entries must not depend on `x`.
    pub fn to_rat_at(&self, y0: &Rat) -> Option<RatMatrix> {
        let mut out = Vec::with_capacity(self.data.len());
        for p in &self.data {
            let u = p.eval_y(y0);
            match u.degree() {
                None => out.push(Rat::zero()),
                Some(0) => out.push(u.coeffs()[0].clone()),
                Some(_) => return None,
            }
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: out,
        })
    }
}

/// `det [∂_x^i f_j]`. Panics on an empty argument list.
pub fn wronskian(fs: &[BiPoly]) -> BiPoly {
    assert!(!fs.is_empty(), "Wronskian of no functions");
    let n = fs.len();
    let mut rows = vec![fs.to_vec()];
    for i in 1..n {
        let next = rows[i - 1].iter().map(BiPoly::diff_x).collect();
        rows.push(next);
    }
    Matrix::from_rows(rows)
        .det()
        .expect("square by construction")
}
