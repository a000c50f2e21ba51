//! The affine nil Hecke algebra `H_n^0`, elements written `sum P_w(x) tau_w`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Interner};
use crate::polycalc::{canonical_word, longest_word, Perm, Poly};
use crate::qring::{rat, LaurentPoly, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct NilHeckeElement {
    n: usize,
    terms: BTreeMap<Perm, Poly>,
}

impl NilHeckeElement {
    pub fn zero(n: usize) -> Self {
        NilHeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly_tau(Poly::one(n), Perm::identity(n))
    }

    pub fn from_poly_tau(p: Poly, w: Perm) -> Self {
        let mut e = NilHeckeElement::zero(w.n());
        e.add(w, p);
        e
    }

    pub fn x(n: usize, k: usize) -> Self {
        Self::from_poly_tau(Poly::var(n, k), Perm::identity(n))
    }

    pub fn tau(n: usize, k: usize) -> Self {
        Self::from_poly_tau(Poly::one(n), Perm::from_word(n, &[k]))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, w: Perm, p: Poly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(|| Poly::zero(self.n));
        slot.add_assign_ref(&p);
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `(exponents, permutation, coefficient)` triples.
    pub fn monomials(&self) -> Vec<(Vec<u32>, Perm, Rat)> {
        let mut out = Vec::new();
        for (w, p) in &self.terms {
            for (a, c) in p.terms() {
                out.push((a.clone(), w.clone(), c.clone()));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = NilHeckeElement::zero(self.n);
        for (w, p) in &self.terms {
            out.add(w.clone(), p.scale(c));
        }
        out
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add(w.clone(), p.clone());
        }
        out
    }

    /// Degrees `2|a| - 2 l(w)` of the monomials present.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .monomials()
            .iter()
            .map(|(a, w, _)| 2 * a.iter().sum::<u32>() as i64 - 2 * w.length() as i64)
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `tau_k * self`.
    fn left_tau(&self, k: usize) -> Self {
        let mut out = NilHeckeElement::zero(self.n);
        for (w, p) in &self.terms {
            // tau_k P = s_k(P) tau_k + d_k(P)
            out.add(w.clone(), p.demazure_k(k));
            let sw = w.left_mul_s(k);
            if sw.length() > w.length() {
                out.add(sw, p.swap(k, k + 1));
            }
        }
        out
    }

    fn left_poly(&self, p: &Poly) -> Self {
        let mut out = NilHeckeElement::zero(self.n);
        for (w, q) in &self.terms {
            out.add(w.clone(), p * q);
        }
        out
    }
}

pub fn nh_multiply(u: &NilHeckeElement, v: &NilHeckeElement) -> Result<NilHeckeElement> {
    if u.n != v.n {
        return Err(Error::Domain(format!("nil Hecke ranks {} and {} differ", u.n, v.n)));
    }
    let mut out = NilHeckeElement::zero(u.n);
    for (w, p) in &u.terms {
        let mut t = v.clone();
        for &k in canonical_word(w).iter().rev() {
            t = t.left_tau(k);
        }
        out = out.sum(&t.left_poly(p));
    }
    Ok(out)
}

/// Faithful action on polynomials: `x_k` multiplies, `tau_k` acts by `d_k`.
pub fn nh_act(u: &NilHeckeElement, f: &Poly) -> Result<Poly> {
    if u.n != f.nvars() {
        return Err(Error::Domain(format!("rank {} element acting on {} variables", u.n, f.nvars())));
    }
    let mut out = Poly::zero(u.n);
    for (w, p) in &u.terms {
        let g = f.demazure_seq(&canonical_word(w))?;
        out.add_assign_ref(&(p * &g));
    }
    Ok(out)
}

/// `e_n = x_2 x_3^2 ... x_n^{n-1} tau_{w0}`.
pub fn idempotent_e(n: usize) -> NilHeckeElement {
    assert!(n >= 1);
    let a: Vec<u32> = (0..n as u32).collect();
    let w0 = Perm::from_word(n, &longest_word(1, n));
    NilHeckeElement::from_poly_tau(Poly::monomial(a, Rat::one()), w0)
}

/// All monomials `x^a tau_w` of degree `d` in `H_n^0`.
pub fn graded_basis(n: usize, d: i64) -> Vec<(Vec<u32>, Perm)> {
    let mut out = Vec::new();
    for w in all_perms(n) {
        let t = d + 2 * w.length() as i64;
        if t < 0 || t % 2 != 0 {
            continue;
        }
        for a in compositions((t / 2) as u32, n) {
            out.push((a, w.clone()));
        }
    }
    out
}

/// Dimension of `(H_n^0 e_n)_d`, the rank of right multiplication by `e_n`
/// on the degree-`d` basis.
pub fn column_space_dim(n: usize, d: i64) -> usize {
    let e = idempotent_e(n);
    let mut cols: Interner<(Vec<u32>, Perm)> = Interner::new();
    let mut ech = Echelon::new();
    for (a, w) in graded_basis(n, d) {
        let b = NilHeckeElement::from_poly_tau(Poly::monomial(a, Rat::one()), w);
        let prod = nh_multiply(&b, &e).expect("same rank");
        let row = crate::linalg::sparse_row(prod.monomials().into_iter().map(|(a, w, c)| (cols.id(&(a, w)), c)));
        ech.insert(row);
    }
    ech.rank()
}

/// Checks `dim H_d = sum_l c_l dim (H e_n)_{d+l}` where
/// `q^{-n(n-1)/2} [n]! = sum_l c_l q^l`, for `d` in `[lo, hi]`.
pub fn divided_power_rank_identity(n: usize, lo: i64, hi: i64) -> bool {
    let mult = crate::qring::quantum_factorial(n as u32, 1).shift(-((n * (n - 1) / 2) as i64));
    let (mlo, mhi) = (mult.min_exp().unwrap(), mult.max_exp().unwrap());
    let mut col = BTreeMap::new();
    for d in lo + mlo..=hi + mhi {
        col.insert(d, column_space_dim(n, d));
    }
    (lo..=hi).all(|d| {
        let lhs = graded_basis(n, d).len();
        let rhs: Rat = mult.terms().map(|(l, c)| c * rat(col[&(d + l)] as i64)).sum();
        rat(lhs as i64) == rhs
    })
}

/// Graded dimension of `H_n^0 e_n` as a generating function prefix, for reports.
pub fn column_space_series(n: usize, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_terms((lo..=hi).map(|d| (d, rat(column_space_dim(n, d) as i64))))
}

pub(crate) fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(Perm::from_images(cur).unwrap());
            return;
        }
        for v in 1..=used.len() {
            if !used[v - 1] {
                used[v - 1] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v - 1] = false;
            }
        }
    }
    rec(&mut cur, &mut used, &mut out);
    out
}

/// Exponent vectors of length `n` summing to `t`.
pub fn compositions(t: u32, n: usize) -> Vec<Vec<u32>> {
    weighted_compositions(t, &vec![1; n])
}

/// Exponent vectors `a` with `sum a_p w_p = t`.
pub fn weighted_compositions(t: u32, weights: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn rec(p: usize, left: u32, weights: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if p == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[p];
        let mut k = 0;
        while k * w <= left {
            cur[p] = k;
            rec(p + 1, left - k * w, weights, cur, out);
            k += 1;
        }
        cur[p] = 0;
    }
    if weights.is_empty() {
        if t == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, t, weights, &mut cur, &mut out);
    out
}

impl fmt::Debug for NilHeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NilHeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, p)| {
                let word = canonical_word(w);
                if word.is_empty() {
                    format!("({p})")
                } else {
                    let t: Vec<String> = word.iter().map(|k| format!("t{k}")).collect();
                    format!("({p})*{}", t.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Random element with up to three terms whose polynomial parts have
/// degree at most `max_degree`.
pub fn random_element<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> NilHeckeElement {
    let perms = all_perms(n);
    let mut e = NilHeckeElement::zero(n);
    for _ in 0..rng.gen_range(1..4) {
        let w = perms[rng.gen_range(0..perms.len())].clone();
        let a = compositions(rng.gen_range(0..=max_degree), n);
        let p = Poly::monomial(a[rng.gen_range(0..a.len())].clone(), rat(rng.gen_range(-3..4)));
        e = e.sum(&NilHeckeElement::from_poly_tau(p, w));
    }
    e
}

/// Compares symbolic products with the polynomial action on `pairs` random
/// pairs of rank at most `max_rank`. Returns the number of disagreements.
pub fn oracle_disagreements(seed: u64, pairs: usize, max_rank: usize, max_degree: u32) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..pairs {
        let n = rng.gen_range(1..=max_rank);
        let u = random_element(&mut rng, n, max_degree);
        let v = random_element(&mut rng, n, max_degree);
        let mut f = Poly::zero(n);
        for _ in 0..3 {
            let a = compositions(rng.gen_range(0..=max_degree), n);
            f.add_term(a[rng.gen_range(0..a.len())].clone(), rat(rng.gen_range(-2..3)));
        }
        let uv = nh_multiply(&u, &v)?;
        if nh_act(&uv, &f)? != nh_act(&u, &nh_act(&v, &f)?)? {
            bad += 1;
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_products() {
        let t1x2 = nh_multiply(&NilHeckeElement::tau(2, 1), &NilHeckeElement::x(2, 2)).unwrap();
        let expect = nh_multiply(&NilHeckeElement::x(2, 1), &NilHeckeElement::tau(2, 1)).unwrap().sum(&NilHeckeElement::one(2));
        assert_eq!(t1x2, expect);
        assert!(nh_multiply(&NilHeckeElement::tau(2, 1), &NilHeckeElement::tau(2, 1)).unwrap().is_zero());
        assert!(nh_multiply(&NilHeckeElement::tau(2, 1), &NilHeckeElement::tau(3, 1)).is_err());
    }

    #[test]
    fn idempotents() {
        assert_eq!(idempotent_e(1), NilHeckeElement::one(1));
        let e2 = nh_multiply(&NilHeckeElement::x(2, 2), &NilHeckeElement::tau(2, 1)).unwrap();
        assert_eq!(idempotent_e(2), e2);
        for n in 1..=5 {
            let e = idempotent_e(n);
            assert_eq!(nh_multiply(&e, &e).unwrap(), e, "e_{n} squared");
            assert_eq!(e.degrees(), vec![0]);
        }
    }

    #[test]
    fn actions() {
        assert_eq!(nh_act(&NilHeckeElement::tau(2, 1), &Poly::var(2, 2)).unwrap(), Poly::one(2));
        assert_eq!(nh_act(&NilHeckeElement::x(2, 1), &Poly::var(2, 2)).unwrap(), &Poly::var(2, 1) * &Poly::var(2, 2));
        assert!(nh_act(&idempotent_e(2), &Poly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn product_matches_action() {
        assert_eq!(oracle_disagreements(7, 200, 4, 6).unwrap(), 0);
    }

    #[test]
    fn divided_power_ranks() {
        for n in 1..=3 {
            assert!(divided_power_rank_identity(n, -12, 12), "n = {n}");
        }
    }

    #[test]
    fn column_space_of_e2() {
        // H e_2 = P tau_1, lowest degree -2.
        assert_eq!(column_space_series(2, -4, 2), LaurentPoly::from_int_terms(&[(-2, 1), (0, 2), (2, 3)]));
    }
}
