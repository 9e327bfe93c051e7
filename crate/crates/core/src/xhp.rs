//! Exceptional Hermite polynomials `H_n^(λ)`.
//!
//! Two independent routes are provided:
//!
//! * [`xhp_wronskian`] evaluates the normalized Wronskian
//!   `Wr(H_{k_ℓ}, …, H_{k_1}, H_{n-N+ℓ})`;
//! * [`xhp_cmpair`] expands `H_n^(λ)` in classical Hermite polynomials with
//!   coefficients `a · adj(X̃) · Z^j · b` read off the CM pair.
//!
//! The wave function `(1 + a X̃⁻¹ (zI - Z)⁻¹ b) exp(xz + yz²)` is handled as
//! a numerator series over the single denominator `det X̃`, so everything
//! stays polynomial.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::cmpair::{build_cm_pair, transpose_pair, x_tilde, CMPair};
use crate::error::{Error, Result};
use crate::exactalg::{
    dot, exp_vacuum, falling, hermite_table, wronskian, BiPoly, IntMatrix, Matrix, PolyMatrix, Rat,
    ZSeries,
};
use crate::partition::Partition;

/// Which product normalizes the Wronskian `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauNormalization {
    /// `Π_{i<j} (k_i - k_j)` over all pairs.
    AllPairs,
    /// `Π_{i<j<ℓ} (k_i - k_j)`, leaving out every pair that involves `k_ℓ`.
    ExcludeLast,
}

/// `s(n) = Π_{k ∈ K_N} (n - k)`.
pub fn s_factor(p: &Partition, n: usize) -> Rat {
    p.excluded_degrees()
        .iter()
        .map(|&k| Rat::from_integer((n as i64 - k).into()))
        .fold(Rat::one(), |a, b| a * b)
}

fn vandermonde(ks: &[i64], norm: TauNormalization) -> Rat {
    let l = ks.len();
    let upto = match norm {
        TauNormalization::AllPairs => l,
        TauNormalization::ExcludeLast => l.saturating_sub(1),
    };
    let mut acc = Rat::one();
    for i in 0..upto {
        for j in i + 1..upto {
            acc *= Rat::from_integer((ks[i] - ks[j]).into());
        }
    }
    acc
}

fn hermites_for(ks: &[i64], table: &[BiPoly]) -> Vec<BiPoly> {
    // H_{k_ℓ}, …, H_{k_1}
    ks.iter()
        .rev()
        .map(|&k| table[k as usize].clone())
        .collect()
}

/// `Wr(H_{k_ℓ}, …, H_{k_1})` divided by the chosen normalization.
pub fn tau_wronskian_with(p: &Partition, norm: TauNormalization) -> BiPoly {
    let ks = p.index_set_k();
    if ks.is_empty() {
        return BiPoly::one();
    }
    let table = hermite_table(ks[0] as usize);
    let w = wronskian(&hermites_for(&ks, &table));
    w.scale(&vandermonde(&ks, norm).recip())
}

/// The Wronskian `τ`, normalized over all pairs (monic in `x`).
pub fn tau_wronskian(p: &Partition) -> BiPoly {
    tau_wronskian_with(p, TauNormalization::AllPairs)
}

pub(crate) fn xhp_wronskian_with(p: &Partition, n: usize, table: &[BiPoly]) -> Result<BiPoly> {
    if !p.contains_degree(n) {
        return Err(Error::DegreeExcluded(n));
    }
    let ks = p.index_set_k();
    let d = n as i64 - p.weight() as i64 + ks.len() as i64;
    debug_assert!(d >= 0, "degrees in I satisfy n - N + ℓ ≥ 0");
    let mut args = hermites_for(&ks, table);
    args.push(table[d as usize].clone());
    let w = wronskian(&args);
    let mut norm = vandermonde(&ks, TauNormalization::AllPairs);
    for &k in &ks {
        norm *= Rat::from_integer((d - k).into());
    }
    Ok(w.scale(&norm.recip()))
}

/// `H_n^(λ)` from the Wronskian definition.
pub fn xhp_wronskian(p: &Partition, n: usize) -> Result<BiPoly> {
    let top = p
        .index_set_k()
        .first()
        .map_or(0, |&k| k as usize)
        .max(n + p.len());
    xhp_wronskian_with(p, n, &hermite_table(top))
}

struct FamilyCache {
    hermites: Vec<BiPoly>,
    polys: BTreeMap<usize, BiPoly>,
}

/// A partition together with the exact data needed to produce its XHPs from
/// the CM pair. Computed members are cached; the cache is safe to share
/// across threads.
pub struct XhpFamily {
    partition: Partition,
    pair: Option<CMPair>,
    xtilde_det: BiPoly,
    tau_wr: BiPoly,
    /// `a · adj(X̃) · Z^j · b` for `j = 0..N`.
    moments: Vec<BiPoly>,
    cache: RwLock<FamilyCache>,
}

impl XhpFamily {
    pub fn new(p: &Partition) -> Result<Self> {
        let (pair, xtilde_det, moments) = if p.weight() == 0 {
            (None, BiPoly::one(), Vec::new())
        } else {
            let pair = build_cm_pair(p)?;
            let xt = x_tilde(&pair);
            let det = xt.det()?;
            let moments = moments(&pair, &xt.adjugate()?);
            (Some(pair), det, moments)
        };
        Ok(XhpFamily {
            partition: p.clone(),
            pair,
            xtilde_det,
            tau_wr: tau_wronskian(p),
            moments,
            cache: RwLock::new(FamilyCache {
                hermites: hermite_table(1),
                polys: BTreeMap::new(),
            }),
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// The CM pair; `None` for the empty partition.
    pub fn pair(&self) -> Option<&CMPair> {
        self.pair.as_ref()
    }

    /// `det X̃`.
    pub fn xtilde_det(&self) -> &BiPoly {
        &self.xtilde_det
    }

    /// Wronskian `τ`.
    pub fn tau_wr(&self) -> &BiPoly {
        &self.tau_wr
    }

    pub fn moments(&self) -> &[BiPoly] {
        &self.moments
    }

    /// Cached degrees, ascending.
    pub fn cached_degrees(&self) -> Vec<usize> {
        self.cache.read().unwrap().polys.keys().copied().collect()
    }

    fn hermites_up_to(&self, n: usize) -> Vec<BiPoly> {
        {
            let c = self.cache.read().unwrap();
            if c.hermites.len() > n {
                return c.hermites[..=n].to_vec();
            }
        }
        let table = hermite_table(n);
        let mut c = self.cache.write().unwrap();
        if c.hermites.len() < table.len() {
            c.hermites = table.clone();
        }
        table
    }

    /// `H_n^(λ)` from the CM-pair expansion.
    pub fn get(&self, n: usize) -> Result<BiPoly> {
        if let Some(h) = self.cache.read().unwrap().polys.get(&n) {
            return Ok(h.clone());
        }
        let s = s_factor(&self.partition, n);
        if s.is_zero() {
            return Err(Error::DegreeExcluded(n));
        }
        let big_n = self.partition.weight();
        let h = self.hermites_up_to(n);
        let mut acc = BiPoly::zero();
        for k in 0..=n.min(big_n.saturating_sub(1)) {
            if big_n == 0 {
                break;
            }
            let c = &self.moments[big_n - k - 1];
            if c.is_zero() {
                continue;
            }
            acc += &(&h[n - k] * c).scale(&falling(n, k));
        }
        if n >= big_n {
            acc += &(&h[n - big_n] * &self.xtilde_det).scale(&falling(n, big_n));
        }
        let poly = acc.scale(&s.recip());
        self.cache.write().unwrap().polys.insert(n, poly.clone());
        Ok(poly)
    }
}

/// `a · adj(X̃) · Z^j · b` for `j = 0..N`.
fn moments(pair: &CMPair, adj: &PolyMatrix) -> Vec<BiPoly> {
    let n = pair.size();
    let a: Vec<BiPoly> = pair.a.iter().map(|&v| BiPoly::from_int(v)).collect();
    let row = adj.vec_mul(&a);
    let mut v = pair.b.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let col: Vec<BiPoly> = v.iter().map(|&e| BiPoly::from_int(e)).collect();
        out.push(dot(&row, &col));
        v = pair.z.mul_vec(&v);
    }
    out
}

/// `H_n^(λ)` from the CM-pair expansion.
pub fn xhp_cmpair(p: &Partition, n: usize) -> Result<BiPoly> {
    XhpFamily::new(p)?.get(n)
}

/// `(τ from the Wronskian, det X̃)`.
pub fn tau(p: &Partition) -> Result<(BiPoly, BiPoly)> {
    let det = if p.weight() == 0 {
        BiPoly::one()
    } else {
        x_tilde(&build_cm_pair(p)?).det()?
    };
    Ok((tau_wronskian(p), det))
}

/// `det X̃ · (1 + a X̃⁻¹ (zI - Z)⁻¹ b)` as a series in `z`, together with the
/// denominator `det X̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePrefactor {
    pub numerator: ZSeries,
    pub denominator: BiPoly,
}

/// Expands the prefactor using `(zI - Z)⁻¹ = Σ_{j<N} z^{-j-1} Z^j`, valid
/// because `Z` is nilpotent. With `y = Some(y0)` the time `t_2` is fixed.
/// The numerator is a Laurent polynomial from `z^{-N}` to `z^0`, padded with
/// zeros up to `order`.
pub fn wave_prefactor(c: &CMPair, y: Option<&Rat>, order: i64) -> Result<WavePrefactor> {
    let n = c.size();
    if c.nilpotency_index().is_none() {
        return Err(Error::NotNilpotent);
    }
    let mut xt = x_tilde(c);
    if let Some(y0) = y {
        xt = xt.map(|e| {
            let u = e.eval_y(y0);
            BiPoly::from_terms(
                u.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (k as u32, 0, v.clone())),
            )
        });
    }
    let det = xt.det()?;
    let m = moments(c, &xt.adjugate()?);
    let mut coeffs = vec![BiPoly::zero(); n + 1];
    for (j, cj) in m.into_iter().enumerate() {
        coeffs[n - 1 - j] = cj;
    }
    coeffs[n] = det.clone();
    Ok(WavePrefactor {
        numerator: ZSeries::from_laurent(-(n as i64), coeffs, order),
        denominator: det,
    })
}

/// `z^N τ Ψ^(λ)` through `z^(order-1)`. The coefficient of `zⁿ` is
/// `s(n) H_n^(λ) / n!`.
pub fn generating_series(p: &Partition, order: usize) -> Result<ZSeries> {
    assert!(order >= 1, "order must be positive");
    let vacuum = exp_vacuum(order);
    if p.weight() == 0 {
        return Ok(vacuum);
    }
    let pair = build_cm_pair(p)?;
    let pre = wave_prefactor(&pair, None, order as i64)?;
    Ok(pre.numerator.shift(p.weight() as i64).mul(&vacuum))
}

/// Stationary wave function of `(X, Z)` without its `exp(xz)` factor, as
/// `(numerator, denominator)` polynomials in `x` and `z`. `z` occupies the
/// second variable slot of [`BiPoly`].
pub fn stationary_wave(c: &CMPair) -> Result<(BiPoly, BiPoly)> {
    let n = c.size();
    let shifted = |m: &IntMatrix, var: BiPoly| -> PolyMatrix {
        Matrix::from_fn(n, n, |i, j| {
            let mut e = BiPoly::from_int(-m[(i, j)]);
            if i == j {
                e += &var;
            }
            e
        })
    };
    let xm = shifted(&c.x, BiPoly::x());
    let zm = shifted(&c.z, BiPoly::y());
    let a: Vec<BiPoly> = c.a.iter().map(|&v| BiPoly::from_int(v)).collect();
    let b: Vec<BiPoly> = c.b.iter().map(|&v| BiPoly::from_int(v)).collect();
    let left = xm.adjugate()?.vec_mul(&a);
    let right = zm.adjugate()?.mul_vec(&b);
    let den = &xm.det()? * &zm.det()?;
    let num = &den + &dot(&left, &right);
    Ok((num, den))
}

/// Checks `Ψ^(Zᵀ,Xᵀ)(x, z) = Ψ^(X,Z)(z, x)` for stationary wave functions
/// by cross-multiplying the two rational prefactors.
pub fn bispectral_check(c: &CMPair) -> Result<bool> {
    swap_symmetric(c, &transpose_pair(c))
}

/// Whether the stationary wave function of `partner` equals that of `c`
/// with `x` and `z` exchanged.
pub fn swap_symmetric(c: &CMPair, partner: &CMPair) -> Result<bool> {
    let (num, den) = stationary_wave(c)?;
    let (tnum, tden) = stationary_wave(partner)?;
    Ok(&tnum * &den.swap_vars() == &num.swap_vars() * &tden)
}
