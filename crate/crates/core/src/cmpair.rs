//! The Calogero-Moser pair `(X^λ, Z^λ)` attached to a partition.
//!
//! Both matrices are block matrices indexed by the diagonal boxes of the
//! Young diagram, the `k`-th block having size `N_k = α_k + β_k + 1` in
//! Frobenius coordinates. `Z^λ` is the block-diagonal upper shift; `X^λ`
//! carries the weights that make `[X, Z] - I = b a` of rank one.

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, IntMatrix, Matrix, PolyMatrix};
use crate::partition::Partition;

/// Matrices `X`, `Z` with row vector `a` and column vector `b` such that
/// `XZ - ZX - I = b a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMPair {
    pub x: IntMatrix,
    pub z: IntMatrix,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    /// Block sizes `N_k`; empty for pairs not built from a partition.
    pub block_sizes: Vec<usize>,
}

impl CMPair {
    /// Wraps arbitrary integer data. No check of the rank-one condition.
    pub fn new(x: IntMatrix, z: IntMatrix, a: Vec<i64>, b: Vec<i64>) -> Self {
        let n = x.rows();
        assert!(
            x.is_square() && z.rows() == n && z.cols() == n,
            "shape mismatch"
        );
        assert!(a.len() == n && b.len() == n, "vector length mismatch");
        CMPair {
            x,
            z,
            a,
            b,
            block_sizes: Vec::new(),
        }
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.x.rows()
    }

    /// `b a` as an `N × N` matrix.
    pub fn rank_one_product(&self) -> IntMatrix {
        Matrix::from_fn(self.size(), self.size(), |i, j| self.b[i] * self.a[j])
    }

    /// `XZ - ZX - I`.
    pub fn commutator_defect(&self) -> IntMatrix {
        let comm = &self.x.matmul(&self.z) - &self.z.matmul(&self.x);
        &comm - &IntMatrix::identity(self.size())
    }

    /// Smallest `k ≥ 0` with `Z^k = 0`, or `None` if `Z` is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let n = self.size();
        let mut power = IntMatrix::identity(n);
        for k in 0..=n {
            if power.is_zero() {
                return Some(k);
            }
            power = power.matmul(&self.z);
        }
        None
    }
}

/// Builds `(X^λ, Z^λ, a, b)` from the Frobenius coordinates of `p`.
pub fn build_cm_pair(p: &Partition) -> Result<CMPair> {
    let n = p.weight();
    if n == 0 {
        return Err(Error::EmptyPartition);
    }
    let fr = p.frobenius();
    let sizes = fr.block_sizes();
    let alpha: Vec<usize> = fr.arms.iter().map(|&v| v as usize).collect();
    let beta: Vec<usize> = fr.legs.iter().map(|&v| v as usize).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();

    let mut x = IntMatrix::zeros(n, n);
    let mut z = IntMatrix::zeros(n, n);
    // 1-based (row, col) inside block (bi, bj)
    let put = |m: &mut IntMatrix, bi: usize, bj: usize, r: usize, c: usize, v: i64| {
        debug_assert!((1..=sizes[bi]).contains(&r) && (1..=sizes[bj]).contains(&c));
        m[(offsets[bi] + r - 1, offsets[bj] + c - 1)] += v;
    };

    let blocks = sizes.len();
    for i in 0..blocks {
        let ni = sizes[i];
        for k in 1..=beta[i] {
            put(&mut x, i, i, k + 1, k, -(k as i64));
        }
        for k in 1..=alpha[i] {
            put(&mut x, i, i, ni + 1 - k, ni - k, k as i64);
        }
        for k in 1..ni {
            put(&mut z, i, i, k, k + 1, 1);
        }
        for j in 0..blocks {
            let nj = sizes[j] as i64;
            if i < j {
                // rows β_i + 2 + k stay inside block i because α_j < α_i
                for k in 0..=alpha[j] {
                    put(&mut x, i, j, beta[i] + 2 + k, beta[j] + 1 + k, nj);
                }
            } else if j < i {
                // columns β_j - k stay positive because β_i < β_j
                for k in 0..=beta[i] {
                    put(&mut x, i, j, beta[i] + 1 - k, beta[j] - k, -nj);
                }
            }
        }
    }

    let mut a = vec![0i64; n];
    let mut b = vec![0i64; n];
    for k in 0..blocks {
        let pos = offsets[k] + beta[k];
        b[pos] = 1;
        a[pos] = -(sizes[k] as i64);
    }

    Ok(CMPair {
        x,
        z,
        a,
        b,
        block_sizes: sizes,
    })
}

/// Checks `XZ - ZX - I = b a` entry by entry.
pub fn verify_rank_one(c: &CMPair) -> bool {
    c.commutator_defect() == c.rank_one_product()
}

/// `X̃ = -X + x I + 2y Z` with symbolic `x` and `y`.
pub fn x_tilde(c: &CMPair) -> PolyMatrix {
    let two_y = BiPoly::y().scale_int(2);
    Matrix::from_fn(c.size(), c.size(), |i, j| {
        let mut e = BiPoly::from_int(-c.x[(i, j)]);
        if i == j {
            e += &BiPoly::x();
        }
        if c.z[(i, j)] != 0 {
            e += &two_y.scale_int(c.z[(i, j)]);
        }
        e
    })
}

/// The bispectral partner `(Zᵀ, Xᵀ)` with `b' = aᵀ`, `a' = bᵀ`.
pub fn transpose_pair(c: &CMPair) -> CMPair {
    CMPair {
        x: c.z.transpose(),
        z: c.x.transpose(),
        a: c.b.clone(),
        b: c.a.clone(),
        block_sizes: Vec::new(),
    }
}
