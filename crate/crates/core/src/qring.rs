//! Exact arithmetic in `Z[q, q^-1]` and `Q(q)`, quantum integers and binomials,
//! and the binary-weight functions `zeta` and `sigma`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere in the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `"p/q"` (denominator always present).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parsed = if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Rat::new(n, d)
    } else {
        let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Rat::from_integer(n)
    };
    Ok(parsed)
}

/// Inclusive range of internal degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub d_min: i64,
    pub d_max: i64,
}

impl DegreeWindow {
    pub fn new(d_min: i64, d_max: i64) -> Result<Self> {
        if d_min > d_max {
            return Err(Error::Domain(format!("empty window [{d_min}, {d_max}]")));
        }
        Ok(DegreeWindow { d_min, d_max })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.d_min <= d && d <= self.d_max
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.d_min..=self.d_max
    }
}

/// Sparse Laurent polynomial in `q` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rat::one())
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: Rat) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.values().next_back()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Substitutes `q -> q^d`.
    pub fn dilate(&self, d: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e * d, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Keeps only exponents in the window.
    pub fn truncate(&self, w: DegreeWindow) -> Self {
        LaurentPoly { coeffs: self.coeffs.range(w.d_min..=w.d_max).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Exact division; returns `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.div_rem(other);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Division with remainder after shifting both to ordinary polynomials.
    /// The quotient absorbs the exponent offsets.
    fn div_rem(&self, other: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!other.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let lo_a = self.min_exp().unwrap();
        let lo_b = other.min_exp().unwrap();
        let a = self.shift(-lo_a);
        let b = other.shift(-lo_b);
        let (q, r) = poly_div_rem(&a, &b);
        (q.shift(lo_a - lo_b), r.shift(lo_a))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (e, c) in &self.coeffs {
            map.insert(e.to_string(), serde_json::Value::String(rat_to_string(c)));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("Laurent polynomial must be an object".into()))?;
        let mut p = LaurentPoly::zero();
        for (k, c) in obj {
            let e: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            let c = c.as_str().ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            p.add_term(e, rat_from_str(c)?);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LaurentPoly::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Long division of ordinary polynomials (all exponents >= 0).
fn poly_div_rem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let db = b.max_exp().unwrap();
    let lb = b.leading_coeff().unwrap().clone();
    let mut r = a.clone();
    let mut q = LaurentPoly::zero();
    while let Some(dr) = r.max_exp() {
        if dr < db {
            break;
        }
        let c = r.leading_coeff().unwrap() / &lb;
        let t = LaurentPoly::monomial(dr - db, c);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    (q, r)
}

/// Monic gcd of two ordinary polynomials.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = poly_div_rem(&x, &y);
        x = y;
        y = r;
    }
    match x.leading_coeff() {
        Some(l) => {
            let inv = l.recip();
            x.scale(&inv)
        }
        None => x,
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            if *e == 0 {
                write!(f, "{a}")?;
            } else {
                if !unit {
                    write!(f, "{a}*")?;
                }
                if *e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&rat(-1))
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(LaurentPoly, Add, add);
forward_owned!(LaurentPoly, Sub, sub);
forward_owned!(LaurentPoly, Mul, mul);

/// Element of `Q(q)` kept as a reduced fraction. The denominator is an ordinary
/// polynomial with nonzero constant term and leading coefficient one, so two
/// equal rational functions have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    /// `1 / (1 - q^{2d})`, the norm of a generator of weight with `d_i = d`.
    pub fn geometric(d: i64) -> Self {
        let den = LaurentPoly::from_terms([(0, rat(1)), (2 * d, rat(-1))]);
        Self::normalize(LaurentPoly::one(), den)
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let lo_n = num.min_exp().unwrap();
        let lo_d = den.min_exp().unwrap();
        let n = num.shift(-lo_n);
        let d = den.shift(-lo_d);
        let g = poly_gcd(&n, &d);
        let n = n.div_exact(&g).expect("gcd divides numerator");
        let d = d.div_exact(&g).expect("gcd divides denominator");
        let lead = d.leading_coeff().unwrap().recip();
        RatFunc { num: n.scale(&lead).shift(lo_n - lo_d), den: d.scale(&lead) }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den == LaurentPoly::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::normalize(&self.num * p, self.den.clone())
    }

    pub fn shift(&self, k: i64) -> Self {
        RatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    /// If `self = c q^e`, returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        let p = self.as_poly()?;
        let mut it = p.terms();
        let (e, c) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((c.clone(), e))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(RatFunc, Add, add);
forward_owned!(RatFunc, Sub, sub);
forward_owned!(RatFunc, Mul, mul);

/// `[k]_d = (q^{dk} - q^{-dk}) / (q^d - q^{-d})`.
pub fn quantum_integer(k: i64, d: i64) -> LaurentPoly {
    assert!(d > 0, "quantum_integer needs d > 0");
    let sign = if k < 0 { rat(-1) } else { rat(1) };
    let m = k.abs();
    let mut p = LaurentPoly::zero();
    for t in 0..m {
        p.add_term(d * (m - 1 - 2 * t), sign.clone());
    }
    p
}

pub fn quantum_factorial(k: u32, d: i64) -> LaurentPoly {
    (1..=k as i64).fold(LaurentPoly::one(), |acc, l| &acc * &quantum_integer(l, d))
}

/// Quantum binomial, computed from the factorial ratio and from the subset sum;
/// the two must coincide.
pub fn quantum_binomial(n: u32, k: u32, d: i64) -> Result<LaurentPoly> {
    if k > n {
        return Err(Error::Domain(format!("binomial with k={k} > n={n}")));
    }
    let ratio = quantum_factorial(n, d)
        .div_exact(&(&quantum_factorial(k, d) * &quantum_factorial(n - k, d)))
        .expect("quantum binomial is a Laurent polynomial");
    let subsets = subset_binomial(n, k, d);
    assert_eq!(ratio, subsets, "quantum binomial formulas disagree at n={n}, k={k}, d={d}");
    Ok(ratio)
}

/// `q^{-dk(n+1)} * sum over k-subsets S of {1..n} of q^{2d Sum(S)}`.
fn subset_binomial(n: u32, k: u32, d: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for s in k_subsets(n as usize, k as usize) {
        let total: i64 = s.iter().map(|&x| x as i64).sum();
        p.add_term(2 * d * total - d * k as i64 * (n as i64 + 1), rat(1));
    }
    p
}

/// All `k`-element subsets of `{1, ..., n}`, as sorted vectors, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Binary weight: number of ones in the binary expansion.
pub fn zeta(k: u64) -> u64 {
    k.count_ones() as u64
}

/// `sigma(k) = sum of l * k_l - zeta(k)(zeta(k) - 1)/2` for `k = sum k_l 2^l`.
pub fn sigma(k: u64) -> u64 {
    let z = zeta(k);
    let weighted: u64 = (0..64).filter(|l| k >> l & 1 == 1).sum();
    weighted - z * (z.saturating_sub(1)) / 2
}

/// Ascending power-series expansion of `f`, truncated to `w`.
pub fn series_window(f: &RatFunc, w: DegreeWindow) -> Result<LaurentPoly> {
    let den = f.den();
    let c0 = den.coeff(0);
    if c0.is_zero() || den.min_exp() != Some(0) {
        return Err(Error::NotExpandable(format!("denominator {den} has zero constant term")));
    }
    if f.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let lo = f.num().min_exp().unwrap();
    if lo > w.d_max {
        return Ok(LaurentPoly::zero());
    }
    // Solve den * s = num coefficient by coefficient, from degree lo upwards.
    let inv0 = c0.recip();
    let mut s: BTreeMap<i64, Rat> = BTreeMap::new();
    for e in lo..=w.d_max {
        let mut acc = f.num().coeff(e);
        for (de, dc) in den.terms() {
            if de == 0 {
                continue;
            }
            if let Some(sc) = s.get(&(e - de)) {
                acc -= dc * sc;
            }
        }
        let v = acc * &inv0;
        if !v.is_zero() {
            s.insert(e, v);
        }
    }
    Ok(LaurentPoly::from_terms(s).truncate(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t)
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer(2, 1), lp(&[(1, 1), (-1, 1)]));
        assert!(quantum_integer(0, 1).is_zero());
        assert_eq!(quantum_integer(3, 2), lp(&[(4, 1), (0, 1), (-4, 1)]));
        // Defining ratio, checked by multiplying back.
        for k in -6..=6 {
            for d in 1..=3 {
                let lhs = &quantum_integer(k, d) * &lp(&[(d, 1), (-d, -1)]);
                assert_eq!(lhs, lp(&[(d * k, 1), (-d * k, -1)]));
            }
        }
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(quantum_factorial(0, 1), LaurentPoly::one());
        assert_eq!(quantum_factorial(2, 1), quantum_integer(2, 1));
        assert_eq!(quantum_factorial(3, 1), &quantum_integer(2, 1) * &quantum_integer(3, 1));
        assert_eq!(quantum_binomial(3, 1, 1).unwrap(), lp(&[(-2, 1), (0, 1), (2, 1)]));
        assert_eq!(quantum_binomial(2, 1, 1).unwrap(), lp(&[(-1, 1), (1, 1)]));
        assert_eq!(quantum_binomial(5, 0, 2).unwrap(), LaurentPoly::one());
        assert!(quantum_binomial(1, 2, 1).is_err());
    }

    #[test]
    fn binomial_formulas_agree() {
        for n in 0..=12 {
            for k in 0..=n {
                for d in 1..=3 {
                    quantum_binomial(n, k, d).unwrap();
                }
            }
        }
    }

    #[test]
    fn zeta_sigma_values() {
        assert_eq!((zeta(0), sigma(0)), (0, 0));
        assert_eq!(zeta(5), 2);
        assert_eq!(sigma(2), 1);
        assert_eq!(sigma(3), 0);
    }

    #[test]
    fn zeta_sigma_recursions() {
        for k in 0..(1u64 << 16) {
            assert_eq!(zeta(2 * k), zeta(k));
            assert_eq!(zeta(2 * k + 1), zeta(k) + 1);
            assert_eq!(sigma(2 * k), sigma(k) + zeta(k));
            assert_eq!(sigma(2 * k + 1), sigma(k));
        }
    }

    #[test]
    fn series_examples() {
        let w = |a, b| DegreeWindow::new(a, b).unwrap();
        let g = RatFunc::geometric(1);
        assert_eq!(series_window(&g, w(0, 6)).unwrap(), lp(&[(0, 1), (2, 1), (4, 1), (6, 1)]));
        let f = g.mul_poly(&lp(&[(0, 1), (2, 1)]));
        assert_eq!(series_window(&f, w(0, 4)).unwrap(), lp(&[(0, 1), (2, 2), (4, 2)]));
        assert_eq!(series_window(&g.shift(1), w(0, 3)).unwrap(), lp(&[(1, 1), (3, 1)]));
    }

    #[test]
    fn ratfunc_normal_form() {
        let a = RatFunc::new(lp(&[(0, 1), (2, -1)]), lp(&[(0, 2), (4, -2)])).unwrap();
        let b = RatFunc::new(lp(&[(0, 1)]), lp(&[(0, 2), (2, 2)])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.den().leading_coeff(), Some(&rat(1)));
        assert_eq!(a.den().min_exp(), Some(0));
        let z = &a - &b;
        assert!(z.is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let p = lp(&[(-2, 3), (5, -1)]);
        let v = p.to_json();
        assert_eq!(v.to_string(), r#"{"-2":"3/1","5":"-1/1"}"#);
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i64..5, -3i64..4), 0..5).prop_map(|t| LaurentPoly::from_int_terms(&t))
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), 1i64..3, 0usize..3).prop_map(|(n, d, k)| {
            let mut f = RatFunc::from_poly(n);
            for _ in 0..k {
                f = &f * &RatFunc::geometric(d);
            }
            f
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() && !b.is_zero() {
                let p = &a * &b;
                prop_assert_eq!(p.max_exp().unwrap(), a.max_exp().unwrap() + b.max_exp().unwrap());
                prop_assert_eq!(p.div_exact(&b).unwrap(), a.clone());
            }
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn bar_symmetry(k in -8i64..9, d in 1i64..4) {
            let p = quantum_integer(k, d);
            prop_assert_eq!(p.bar(), p);
        }

        #[test]
        fn series_multiplicative(f in arb_ratfunc(), g in arb_ratfunc()) {
            // Exact on the window when both series start at or above 0 and the
            // window starts at the lowest possible exponent.
            let w = DegreeWindow::new(-8, 8).unwrap();
            let wide = DegreeWindow::new(-16, 16).unwrap();
            let sf = series_window(&f, wide).unwrap();
            let sg = series_window(&g, wide).unwrap();
            let lhs = series_window(&(&f * &g), w).unwrap();
            prop_assert_eq!(lhs, (&sf * &sg).truncate(w));
        }

        #[test]
        fn ratfunc_field_laws(f in arb_ratfunc(), g in arb_ratfunc()) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            if !g.is_zero() {
                prop_assert_eq!(&f.div(&g).unwrap() * &g, f.clone());
            }
        }
    }
}
