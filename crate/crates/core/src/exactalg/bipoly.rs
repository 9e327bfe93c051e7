use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::unipoly::UniPoly;
use super::Rat;

/// A polynomial in `x` and `y` with exact rational coefficients.
///
/// Terms are keyed by `(deg_x, deg_y)`; zero coefficients are never stored.
/// Weighted degree counts `x` as 1 and `y` as 2.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        BiPoly::constant(Rat::from_integer(c.into()))
    }

    pub fn monomial(c: Rat, ex: u32, ey: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ex, ey), c);
        }
        BiPoly { terms }
    }

    pub fn x() -> Self {
        BiPoly::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(Rat::one(), 0, 1)
    }

    /// Builds from `(ex, ey, coeff)` triples, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rat)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for (ex, ey, c) in terms {
            p.add_term(ex, ey, c);
        }
        p
    }

    /// Shorthand for integer coefficients.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        BiPoly::from_terms(
            terms
                .iter()
                .map(|&(ex, ey, c)| (ex, ey, Rat::from_integer(c.into()))),
        )
    }

    fn add_term(&mut self, ex: u32, ey: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((ex, ey)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `((ex, ey), coeff)` in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> Rat {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant value, if the polynomial has no `x` or `y`.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// `max(ex + 2 ey)`, or `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(ex, ey)| ex + 2 * ey).max()
    }

    /// True when every term has weighted degree `deg`. The zero polynomial
    /// counts as homogeneous of any degree.
    pub fn is_weighted_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|&(ex, ey)| ex + 2 * ey == deg)
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> BiPoly {
        self.scale(&Rat::from_integer(c.into()))
    }

    /// `∂/∂x`.
    pub fn diff_x(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((ex, _), _)| *ex > 0)
                .map(|(&(ex, ey), c)| ((ex - 1, ey), c * Rat::from_integer(ex.into())))
                .collect(),
        }
    }

    /// Exchanges the roles of the two variables.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(ex, ey), c)| ((ey, ex), c.clone()))
                .collect(),
        }
    }

    /// Substitutes a rational `y`, leaving a polynomial in `x`.
    pub fn eval_y(&self, y0: &Rat) -> UniPoly {
        let deg = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (&(ex, ey), c) in &self.terms {
            coeffs[ex as usize] += c * num_traits::pow(y0.clone(), ey as usize);
        }
        UniPoly::new(coeffs)
    }

    /// Substitutes a rational `x` and `y`.
    pub fn eval_rat(&self, x0: &Rat, y0: &Rat) -> Rat {
        self.terms
            .iter()
            .map(|(&(ex, ey), c)| {
                c * num_traits::pow(x0.clone(), ex as usize)
                    * num_traits::pow(y0.clone(), ey as usize)
            })
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Evaluates at complex machine numbers.
    pub fn eval(&self, x0: Complex64, y0: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(ex, ey), c)| rat_to_f64(c) * x0.powu(ex) * y0.powu(ey))
            .sum()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    ///
    /// Plain multivariate division under lex order with `x > y`: for an exact
    /// quotient the leading term of every remainder is divisible by the
    /// leading term of `d`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let (&(dx, dy), dc) = d.terms.iter().next_back()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((&(rx, ry), rc)) = rem.terms.iter().next_back() {
            if rx < dx || ry < dy {
                return None;
            }
            let qc = rc / dc;
            let (qx, qy) = (rx - dx, ry - dy);
            for (&(ex, ey), c) in &d.terms {
                rem.add_term(ex + qx, ey + qy, -(c * &qc));
            }
            quot.add_term(qx, qy, qc);
        }
        Some(quot)
    }

    /// Integer `x^n` power helper.
    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical JSON: `[{ex, ey, num, den}]` in display order.
    pub fn to_json(&self) -> Value {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(ex, ey)| std::cmp::Reverse((ex + 2 * ey, ex)));
        Value::Array(
            keys.into_iter()
                .map(|k| {
                    let c = &self.terms[&k];
                    json!({
                        "ex": k.0,
                        "ey": k.1,
                        "num": c.numer().to_string(),
                        "den": c.denom().to_string(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Option<BiPoly> {
        let mut p = BiPoly::zero();
        for rec in v.as_array()? {
            let ex = rec.get("ex")?.as_u64()? as u32;
            let ey = rec.get("ey")?.as_u64()? as u32;
            let num: BigInt = rec.get("num")?.as_str()?.parse().ok()?;
            let den: BigInt = rec.get("den")?.as_str()?.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            p.add_term(ex, ey, Rat::new(num, den));
        }
        Some(p)
    }

    /// Terms in display order: descending weighted degree, then descending
    /// power of `x`.
    fn display_terms(&self) -> Vec<(&(u32, u32), &Rat)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by_key(|(&(ex, ey), _)| std::cmp::Reverse((ex + 2 * ey, ex)));
        t
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&(ex, ey), c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut vars = Vec::new();
            for (name, e) in [("x", ex), ("y", ey)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ if latex => vars.push(format!("{name}^{{{e}}}")),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let coeff = if abs.is_one() && !vars.is_empty() {
                String::new()
            } else if abs.is_integer() {
                abs.numer().to_string()
            } else if latex {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            let sep = if latex { "" } else { " " };
            let mut pieces = Vec::new();
            if !coeff.is_empty() {
                pieces.push(coeff);
            }
            pieces.extend(vars);
            out.push_str(&pieces.join(sep));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }
}

pub(crate) fn rat_to_f64(c: &Rat) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back for values whose parts overflow f64
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<'a> Add<&'a BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &'a BiPoly) {
        for (&(ex, ey), c) in &rhs.terms {
            self.add_term(ex, ey, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &'a BiPoly) {
        for (&(ex, ey), c) in &rhs.terms {
            self.add_term(ex, ey, -c.clone());
        }
    }
}

impl<'a> Sub<&'a BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(mut self, rhs: BiPoly) -> BiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl<'a> Mul<&'a BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &'a BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                out.add_term(ax + bx, ay + by, ac * bc);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::one()
    }
}

/// Bivariate Hermite polynomials `H_0..=H_max` from the recurrence
/// `H_{n+1} = x H_n + 2 n y H_{n-1}`.
pub fn hermite_table(max: usize) -> Vec<BiPoly> {
    let mut table = Vec::with_capacity(max + 1);
    table.push(BiPoly::one());
    if max == 0 {
        return table;
    }
    table.push(BiPoly::x());
    let (x, y) = (BiPoly::x(), BiPoly::y());
    for n in 1..max {
        let next = &(&x * &table[n]) + &(&y * &table[n - 1]).scale_int(2 * n as i64);
        table.push(next);
    }
    table
}

/// The bivariate Hermite polynomial `H_n(x, y)`, generated by
/// `exp(xz + yz²) = Σ H_n zⁿ/n!`.
pub fn hermite(n: usize) -> BiPoly {
    hermite_table(n).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn x() -> BiPoly {
        BiPoly::x()
    }
    fn y() -> BiPoly {
        BiPoly::y()
    }

    #[test]
    fn ring_basics() {
        let p = &(&x() * &x()) + &y().scale_int(-2);
        assert_eq!(p.weighted_degree(), Some(2));
        assert!(p.is_weighted_homogeneous(2));
        assert_eq!(BiPoly::zero().weighted_degree(), None);
        let q = &(&x() * &x()) + &y().scale_int(2);
        assert_eq!(q.diff_x(), x().scale_int(2));
        assert!((&p - &p).is_zero());
        assert_eq!(p.to_string(), "x^2 - 2 y");
        assert_eq!(
            BiPoly::from_int_terms(&[(8, 0, 1), (6, 1, -20), (0, 4, -240)]).to_latex(),
            "x^{8} - 20x^{6}y - 240y^{4}"
        );
        assert_eq!(BiPoly::monomial(rat(-1, 3), 1, 1).to_string(), "-1/3 x y");
    }

    #[test]
    fn complex_eval_at_root() {
        let p = BiPoly::from_int_terms(&[(2, 0, 1), (0, 1, -2)]);
        let v = p.eval(Complex64::new(0.0, 2.0), Complex64::new(-2.0, 0.0));
        assert!(v.norm() < 1e-14);
        let u = p.eval_y(&rat(-2, 1));
        assert_eq!(u, UniPoly::from_ints(&[4, 0, 1]));
    }

    #[test]
    fn hermite_low_degrees() {
        assert_eq!(hermite(0), BiPoly::one());
        assert_eq!(hermite(1), x());
        assert_eq!(hermite(2), BiPoly::from_int_terms(&[(2, 0, 1), (0, 1, 2)]));
        assert_eq!(hermite(3), BiPoly::from_int_terms(&[(3, 0, 1), (1, 1, 6)]));
    }

    /// `n! Σ_{j} x^{n-2j} y^j / ((n-2j)! j!)`: coefficient of zⁿ in
    /// `exp(xz)·exp(yz²)` times n!.
    fn hermite_by_expansion(n: usize) -> BiPoly {
        let fact = |k: usize| -> BigInt { (1..=k).map(BigInt::from).product() };
        BiPoly::from_terms((0..=n / 2).map(|j| {
            let c = Rat::new(fact(n), fact(n - 2 * j) * fact(j));
            ((n - 2 * j) as u32, j as u32, c)
        }))
    }

    #[test]
    fn hermite_matches_generating_function() {
        let table = hermite_table(25);
        for (n, h) in table.iter().enumerate() {
            assert_eq!(h, &hermite_by_expansion(n), "n = {n}");
            assert!(h.is_weighted_homogeneous(n as u32));
        }
    }

    #[test]
    fn exact_division() {
        let a = BiPoly::from_int_terms(&[(2, 0, 1), (0, 1, -2)]);
        let b = BiPoly::from_int_terms(&[(3, 0, 1), (1, 1, 6), (0, 0, 5)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(BiPoly::zero().div_exact(&a), Some(BiPoly::zero()));
        assert_eq!(a.div_exact(&BiPoly::zero()), None);
    }

    #[test]
    fn json_shape() {
        let p = BiPoly::from_terms([(0, 1, rat(-1, 2)), (2, 0, rat(1, 1))]);
        let v = p.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"den":"1","ex":2,"ey":0,"num":"1"},{"den":"2","ex":0,"ey":1,"num":"-1"}]"#
        );
        assert_eq!(BiPoly::from_json(&v), Some(p));
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec((0u32..4, 0u32..3, -5i64..6), 0..6)
            .prop_map(|t| BiPoly::from_int_terms(&t))
    }

    proptest! {
        #[test]
        fn division_inverts_product(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            prop_assert_eq!(BiPoly::from_json(&a.to_json()), Some(a));
        }

        #[test]
        fn leibniz(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).diff_x();
            let rhs = &(&a.diff_x() * &b) + &(&a * &b.diff_x());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
