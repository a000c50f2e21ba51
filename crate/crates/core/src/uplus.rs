//! `U+` as the free algebra on the `e_i` with Lusztig's form. An element is
//! zero in `U+` exactly when it pairs to zero with every word.
//!
//! Words are written in product order: `[a, b]` is `e_a e_b`. Under the
//! isomorphism with `K_0` the word `[a_1, .., a_r]` goes to `1_nu` with `nu`
//! in display order, so its position-order sequence is the reverse.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::klr::KlrContext;
use crate::qring::{quantum_binomial, quantum_factorial, rat, series_window, DegreeWindow, LaurentPoly, RatFunc};
use crate::rootdata::{sequences, CartanDatum, Color, RootVector};

pub type Word = Vec<Color>;

/// Homogeneous element of the free algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct WordVector {
    beta: RootVector,
    terms: BTreeMap<Word, RatFunc>,
}

impl WordVector {
    pub fn zero(beta: RootVector) -> Self {
        WordVector { beta, terms: BTreeMap::new() }
    }

    pub fn word(datum: &CartanDatum, w: &[Color]) -> Self {
        WordVector { beta: datum.weight_of(w), terms: [(w.to_vec(), RatFunc::one())].into() }
    }

    /// The empty word, of weight zero.
    pub fn unit(datum: &CartanDatum) -> Self {
        Self::word(datum, &[])
    }

    /// `e_i^n`.
    pub fn power(datum: &CartanDatum, i: Color, n: usize) -> Self {
        Self::word(datum, &vec![i; n])
    }

    /// `e_i^(n) = e_i^n / [n]_i!`.
    pub fn divided_power(datum: &CartanDatum, i: Color, n: usize) -> Self {
        let f = RatFunc::from_poly(quantum_factorial(n as u32, datum.d(i)));
        Self::power(datum, i, n).scale(&f.recip().expect("nonzero factorial"))
    }

    pub fn beta(&self) -> &RootVector {
        &self.beta
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Color]) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Zero as an element of the free algebra.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Word, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(RatFunc::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            let key: Vec<_> = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).into_iter().collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    fn check_weight(&self, other: &Self) {
        assert!(self.terms.is_empty() || other.terms.is_empty() || self.beta == other.beta, "weight mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_weight(other);
        let mut out = if self.terms.is_empty() { other.clone() } else { self.clone() };
        if !self.terms.is_empty() {
            for (w, c) in &other.terms {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFunc::constant(rat(-1))))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return WordVector::zero(self.beta.clone());
        }
        WordVector { beta: self.beta.clone(), terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Concatenation product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = WordVector::zero(self.beta.add(&other.beta));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    pub fn show(&self, datum: &CartanDatum) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() { "1".to_string() } else { w.iter().map(|&a| format!("e_{}", datum.label(a))).collect::<Vec<_>>().join(" ") };
                format!("({c})·{word}")
            })
            .collect();
        parts.join(" + ")
    }

    pub fn to_json(&self, datum: &CartanDatum) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    json!({
                        "word": w.iter().map(|&a| datum.label(a)).collect::<Vec<_>>(),
                        "num": c.num().to_json(),
                        "den": c.den().to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl std::fmt::Debug for WordVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (w, c) in &self.terms {
            write!(f, "({c}){w:?} ")?;
        }
        Ok(())
    }
}

/// Memoised pairings of words, symmetric by construction of the key.
#[derive(Default)]
pub struct GramCache {
    pairs: RwLock<HashMap<(Word, Word), RatFunc>>,
}

impl GramCache {
    fn get(&self, a: &[Color], b: &[Color]) -> Option<RatFunc> {
        let key = if a <= b { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
        self.pairs.read().expect("gram cache").get(&key).cloned()
    }

    fn put(&self, a: &[Color], b: &[Color], v: RatFunc) {
        let key = if a <= b { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
        self.pairs.write().expect("gram cache").insert(key, v);
    }

    pub fn len(&self) -> usize {
        self.pairs.read().expect("gram cache").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The free algebra over a Cartan datum together with its form.
pub struct UPlus {
    datum: CartanDatum,
    height_bound: usize,
    cache: GramCache,
}

impl UPlus {
    pub fn new(datum: CartanDatum) -> Self {
        Self::with_height_bound(datum, crate::klr::DEFAULT_HEIGHT_BOUND)
    }

    pub fn with_height_bound(datum: CartanDatum, height_bound: usize) -> Self {
        UPlus { datum, height_bound, cache: GramCache::default() }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn cache(&self) -> &GramCache {
        &self.cache
    }

    /// All words of weight `beta`.
    pub fn words(&self, beta: &RootVector) -> Result<Vec<Word>> {
        sequences(beta, self.height_bound)
    }

    /// `(u, v e_i) = sum_{k : u_k = i} q^{sum_{l > k} i . u_l} (u without k, v) (e_i, e_i)`.
    pub fn pair_words(&self, u: &[Color], v: &[Color]) -> RatFunc {
        if u.len() != v.len() {
            return RatFunc::zero();
        }
        if u.is_empty() {
            return RatFunc::one();
        }
        if let Some(x) = self.cache.get(u, v) {
            return x;
        }
        let (&i, rest) = v.split_last().expect("nonempty");
        let mut acc = RatFunc::zero();
        let mut twist = 0;
        for k in (0..u.len()).rev() {
            if u[k] == i {
                let mut shorter = u.to_vec();
                shorter.remove(k);
                let inner = self.pair_words(&shorter, rest);
                if !inner.is_zero() {
                    acc = &acc + &inner.shift(twist);
                }
            }
            twist += self.datum.dot(i, u[k]);
        }
        let out = &acc * &RatFunc::geometric(self.datum.d(i));
        self.cache.put(u, v, out.clone());
        out
    }

    pub fn pair(&self, u: &WordVector, v: &WordVector) -> RatFunc {
        if u.beta != v.beta {
            return RatFunc::zero();
        }
        let mut acc = RatFunc::zero();
        for (a, x) in &u.terms {
            for (b, y) in &v.terms {
                let p = self.pair_words(a, b);
                if !p.is_zero() {
                    acc = &acc + &(&p * &(x * y));
                }
            }
        }
        acc
    }

    /// `v` vanishes in `U+`: it pairs to zero with every word of its weight.
    pub fn is_zero_mod_serre(&self, v: &WordVector) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        for w in self.words(&v.beta)? {
            if !self.pair(&WordVector::word(&self.datum, &w), v).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ad_{e_i}(v) = e_i v - q^{i . beta} v e_i`.
    pub fn ad_e(&self, i: Color, v: &WordVector) -> WordVector {
        let ei = WordVector::word(&self.datum, &[i]);
        let twist = RatFunc::q_pow(self.datum.root_dot(&self.datum.weight_of(&[i]), &v.beta));
        ei.mul(v).sub(&v.mul(&ei).scale(&twist))
    }

    /// `ad_{e_i}^(n)(v)` by the closed sum
    /// `sum_k (-1)^k q_i^{k(n + w - 1)} e_i^(n-k) v e_i^(k)`.
    pub fn ad_e_divided_closed(&self, n: usize, i: Color, v: &WordVector) -> WordVector {
        let di = self.datum.d(i);
        let w = self.datum.pairing(i, &v.beta);
        let mut out = WordVector::zero(v.beta.add_color(i, n as u32));
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = RatFunc::q_pow(di * k as i64 * (n as i64 + w - 1)).scale(&rat(sign));
            let term = WordVector::divided_power(&self.datum, i, n - k).mul(v).mul(&WordVector::divided_power(&self.datum, i, k));
            out = out.add(&term.scale(&c));
        }
        out
    }

    /// `ad_{e_i}^n(v) / [n]_i!`.
    pub fn ad_e_divided_iterated(&self, n: usize, i: Color, v: &WordVector) -> WordVector {
        let mut out = v.clone();
        for _ in 0..n {
            out = self.ad_e(i, &out);
        }
        let f = RatFunc::from_poly(quantum_factorial(n as u32, self.datum.d(i)));
        out.scale(&f.recip().expect("nonzero factorial"))
    }

    /// `ad_{e_i}^(n)(v)`, computed both ways; the two must coincide.
    pub fn ad_e_divided(&self, n: usize, i: Color, v: &WordVector) -> WordVector {
        let closed = self.ad_e_divided_closed(n, i, v);
        let iterated = self.ad_e_divided_iterated(n, i, v);
        assert_eq!(closed, iterated, "closed and iterated divided adjoint differ");
        closed
    }

    /// `sum_k (-1)^k [N choose k]_i e_i^{N-k} e_j e_i^k` with `N = 1 - c_ij`.
    pub fn serre_element(&self, i: Color, j: Color) -> Result<WordVector> {
        let top = (1 - self.datum.c(i, j)) as u32;
        let mut out = WordVector::zero(self.datum.weight_of(&[j]).add_color(i, top));
        for k in 0..=top {
            let b = quantum_binomial(top, k, self.datum.d(i))?;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut w = vec![i; (top - k) as usize];
            w.push(j);
            w.extend(std::iter::repeat(i).take(k as usize));
            out = out.add(&WordVector::word(&self.datum, &w).scale(&RatFunc::from_poly(b.scale(&rat(sign)))));
        }
        Ok(out)
    }

    /// `ad_{e_i}^(n)(e_j^m)` vanishes exactly when `n > -m c_ij`. Returns
    /// whether the observed vanishing agrees with that prediction.
    pub fn higher_serre_check(&self, n: usize, m: usize, i: Color, j: Color) -> Result<bool> {
        self.check_height(n + m)?;
        let v = self.ad_e_divided(n, i, &WordVector::power(&self.datum, j, m));
        let predicted = n as i64 > -(m as i64) * self.datum.c(i, j);
        Ok(self.is_zero_mod_serre(&v)? == predicted)
    }

    fn check_height(&self, h: usize) -> Result<()> {
        if h > self.height_bound {
            return Err(Error::Resource(format!("height {h} exceeds bound {}", self.height_bound)));
        }
        Ok(())
    }

    /// `v` lies in `U+[i]`: `(z e_i, v) = 0` for every word `z`.
    pub fn uplusi_member(&self, v: &WordVector, i: Color) -> Result<bool> {
        if v.beta.get(i) == 0 || v.is_zero() {
            return Ok(true);
        }
        let rest = RootVector(v.beta.0.iter().enumerate().map(|(c, &b)| if c == i as usize { b - 1 } else { b }).collect());
        for mut z in self.words(&rest)? {
            z.push(i);
            if !self.pair(&WordVector::word(&self.datum, &z), v).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ad(uv) = ad(u) v + q^{i . beta_u} u ad(v)` in the free algebra.
    pub fn q_leibniz_holds(&self, i: Color, u: &WordVector, v: &WordVector) -> bool {
        let lhs = self.ad_e(i, &u.mul(v));
        let twist = RatFunc::q_pow(self.datum.root_dot(&self.datum.weight_of(&[i]), &u.beta));
        let rhs = self.ad_e(i, u).mul(v).add(&u.mul(&self.ad_e(i, v)).scale(&twist));
        lhs == rhs
    }

    /// Rank of the pairing matrix of `vs` against all words of weight `beta`.
    pub fn gram_rank(&self, vs: &[WordVector], beta: &RootVector) -> Result<usize> {
        let words = self.words(beta)?;
        let rows: Vec<Vec<RatFunc>> = vs
            .iter()
            .map(|v| words.iter().map(|w| self.pair(&WordVector::word(&self.datum, w), v)).collect())
            .collect();
        Ok(ratfunc_rank(rows))
    }

    /// `dim U+_beta`.
    pub fn dimension(&self, beta: &RootVector) -> Result<usize> {
        let words: Vec<WordVector> = self.words(beta)?.iter().map(|w| WordVector::word(&self.datum, w)).collect();
        self.gram_rank(&words, beta)
    }

    /// The algebra generators `ad^(n)(e_j)`, `n <= -c_ij`, of `U+[i]`.
    pub fn uplusi_generators(&self, i: Color) -> Vec<WordVector> {
        let mut out = Vec::new();
        for j in self.datum.colors().filter(|&j| j != i) {
            for n in 0..=(-self.datum.c(i, j)) as usize {
                out.push(self.ad_e_divided(n, i, &WordVector::word(&self.datum, &[j])));
            }
        }
        out
    }

    /// Spanning set of `U+[i]_gamma`: products of generators of total weight `gamma`.
    fn uplusi_span(&self, gens: &[WordVector], gamma: &RootVector) -> Vec<WordVector> {
        if gamma.is_zero() {
            return vec![WordVector::unit(&self.datum)];
        }
        let mut out = Vec::new();
        for g in gens {
            if let Some(rest) = sub_root(gamma, &g.beta) {
                for tail in self.uplusi_span(gens, &rest) {
                    out.push(g.mul(&tail));
                }
            }
        }
        out
    }

    /// Multiplication `U+[i] ⊗ Q(q)[e_i] -> U+` in weight `beta` is an
    /// isomorphism: the products `u e_i^k` are independent and fill `U+_beta`.
    pub fn dec_shadow(&self, beta: &RootVector, i: Color) -> Result<bool> {
        let gens = self.uplusi_generators(i);
        let mut products = Vec::new();
        let mut expected = 0;
        for k in 0..=beta.get(i) {
            let Some(gamma) = sub_root(beta, &self.datum.weight_of(&vec![i; k as usize])) else { continue };
            let span = self.uplusi_span(&gens, &gamma);
            for s in &span {
                if !self.uplusi_member(s, i)? {
                    return Ok(false);
                }
            }
            expected += self.gram_rank(&span, &gamma)?;
            let ek = WordVector::power(&self.datum, i, k as usize);
            products.extend(span.iter().map(|s| s.mul(&ek)));
        }
        Ok(self.gram_rank(&products, beta)? == expected && expected == self.dimension(beta)?)
    }

    /// Compares `(e_mu, e_nu)` with the graded dimension of `1_mu H_beta 1_nu`
    /// for every pair of words, and measures the monomial relating them.
    pub fn k0_isometry_calibrate(&self, ctx: &KlrContext, beta: &RootVector, window: DegreeWindow) -> Result<K0Calibration> {
        self.check_height(beta.height())?;
        let wide = DegreeWindow::new(window.d_min - 16, window.d_max + 16)?;
        let mut entries = Vec::new();
        for mu in self.words(beta)? {
            for nu in self.words(beta)? {
                let pair = series_window(&self.pair_words(&mu, &nu), wide)?;
                let left: Vec<Color> = mu.iter().rev().copied().collect();
                let right: Vec<Color> = nu.iter().rev().copied().collect();
                let dim = ctx.graded_dim(&left, &right, wide.d_min, wide.d_max)?;
                let exponent = monomial_ratio(&pair, &dim, window);
                entries.push(K0Entry { mu: mu.clone(), nu, pair: pair.truncate(window), dim: dim.truncate(window), exponent });
            }
        }
        let exps: Vec<Option<Option<i64>>> = entries.iter().map(|e| e.exponent).filter(|e| *e != Some(None)).collect();
        let uniform = exps.iter().all(|e| e.is_some()) && exps.windows(2).all(|w| w[0] == w[1]);
        let factor = if uniform { exps.first().copied().flatten().flatten() } else { None };
        Ok(K0Calibration { beta: beta.clone(), entries, uniform, factor })
    }
}

fn sub_root(a: &RootVector, b: &RootVector) -> Option<RootVector> {
    let v: Option<Vec<u32>> = a.0.iter().zip(&b.0).map(|(x, y)| x.checked_sub(*y)).collect();
    v.map(RootVector)
}

/// `Some(Some(s))` if `pair = q^s dim` on the window, `Some(None)` if both
/// vanish, `None` if no monomial relates them. The inputs are expanded on a
/// wider window so that shifted comparisons stay complete.
fn monomial_ratio(pair: &LaurentPoly, dim: &LaurentPoly, window: DegreeWindow) -> Option<Option<i64>> {
    if pair.is_zero() && dim.is_zero() {
        return Some(None);
    }
    let s = pair.min_exp()? - dim.min_exp()?;
    (pair.truncate(window) == dim.shift(s).truncate(window)).then_some(Some(s))
}

/// One `(mu, nu)` comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Entry {
    pub mu: Word,
    pub nu: Word,
    pub pair: LaurentPoly,
    pub dim: LaurentPoly,
    /// `Some(Some(s))`: `pair = q^s dim`; `Some(None)`: both zero; `None`: no monomial.
    pub exponent: Option<Option<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Calibration {
    pub beta: RootVector,
    pub entries: Vec<K0Entry>,
    pub uniform: bool,
    pub factor: Option<i64>,
}

/// Rank over `Q(q)` by Gaussian elimination.
pub fn ratfunc_rank(mut rows: Vec<Vec<RatFunc>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip().expect("nonzero pivot");
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let f = &rows[r][c] * &inv;
            for cc in c..cols {
                let v = &rows[r][cc] - &(&f * &rows[rank][cc]);
                rows[r][cc] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Series of `(e_mu, e_nu)` truncated to a window, for reports.
pub fn pair_series(up: &UPlus, mu: &[Color], nu: &[Color], window: DegreeWindow) -> Result<LaurentPoly> {
    series_window(&up.pair_words(mu, nu), window)
}

/// Zero test used by callers that only hold coefficients as polynomials.
pub fn is_zero_series(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn geo(d: i64) -> RatFunc {
        RatFunc::geometric(d)
    }

    fn all() -> Vec<CartanDatum> {
        vec![CartanDatum::a2(), CartanDatum::b2_short_i(), CartanDatum::b2_long_i(), CartanDatum::g2_short_i()]
    }

    #[test]
    fn pairing_examples() {
        let up = UPlus::new(CartanDatum::a2());
        assert_eq!(up.pair_words(&[0], &[0]), geo(1));
        assert!(up.pair_words(&[0], &[1]).is_zero());
        let num = LaurentPoly::from_int_terms(&[(0, 1), (2, 1)]);
        assert_eq!(up.pair_words(&[0, 0], &[0, 0]), &RatFunc::from_poly(num) * &(&geo(1) * &geo(1)));
        assert!(up.pair_words(&[0], &[0, 0]).is_zero());
        assert_eq!(up.pair_words(&[], &[]), RatFunc::one());
        let b2 = UPlus::new(CartanDatum::b2_short_i());
        assert_eq!(b2.pair_words(&[1], &[1]), geo(2));
    }

    #[test]
    fn serre_elements_vanish() {
        for datum in all() {
            let up = UPlus::new(datum.clone());
            for i in datum.colors() {
                for j in datum.colors().filter(|&j| j != i) {
                    let s = up.serre_element(i, j).unwrap();
                    assert!(!s.is_zero());
                    assert!(up.is_zero_mod_serre(&s).unwrap(), "{}", s.show(&datum));
                }
                assert!(!up.is_zero_mod_serre(&WordVector::word(&datum, &[i])).unwrap());
            }
            assert!(up.is_zero_mod_serre(&WordVector::zero(datum.zero_root())).unwrap());
        }
    }

    #[test]
    fn adjoint_examples() {
        let datum = CartanDatum::a2();
        let up = UPlus::new(datum.clone());
        let ej = WordVector::word(&datum, &[1]);
        let expect = WordVector::word(&datum, &[0, 1]).sub(&WordVector::word(&datum, &[1, 0]).scale(&RatFunc::q_pow(-1)));
        assert_eq!(up.ad_e(0, &ej), expect);
        assert_eq!(up.ad_e_divided(0, 0, &ej), ej);
        let ei = WordVector::word(&datum, &[0]);
        let factor = RatFunc::from_poly(LaurentPoly::from_int_terms(&[(0, 1), (2, -1)]));
        assert_eq!(up.ad_e(0, &ei), WordVector::power(&datum, 0, 2).scale(&factor));
        // ad^(2)(e_j) is proportional to the Serre element
        let s = up.serre_element(0, 1).unwrap();
        let a = up.ad_e_divided(2, 0, &ej);
        assert_eq!(a.scale(&RatFunc::from_poly(quantum_factorial(2, 1))), s);
    }

    #[test]
    fn divided_routes_agree() {
        for datum in all() {
            let up = UPlus::new(datum.clone());
            for n in 0..=4usize {
                for v in [vec![1u8], vec![1, 1], vec![0, 1], vec![1, 0, 1]] {
                    if n + v.len() > 4 {
                        continue;
                    }
                    let w = WordVector::word(&datum, &v);
                    assert_eq!(up.ad_e_divided_closed(n, 0, &w), up.ad_e_divided_iterated(n, 0, &w));
                }
            }
        }
    }

    #[test]
    fn higher_serre_in_rank_two() {
        for (datum, bound) in [(CartanDatum::a2(), 5), (CartanDatum::b2_short_i(), 5), (CartanDatum::b2_long_i(), 5)] {
            let up = UPlus::new(datum.clone());
            for n in 0..=bound {
                for m in 1..=bound - n {
                    assert!(up.higher_serre_check(n, m, 0, 1).unwrap(), "n = {n}, m = {m}");
                }
            }
        }
        let up = UPlus::new(CartanDatum::b2_short_i());
        let v = up.ad_e_divided(3, 0, &WordVector::word(up.datum(), &[1]));
        assert!(up.is_zero_mod_serre(&v).unwrap());
        let v = up.ad_e_divided(2, 0, &WordVector::word(up.datum(), &[1]));
        assert!(!up.is_zero_mod_serre(&v).unwrap());
    }

    #[test]
    fn uplusi_examples() {
        for datum in all() {
            let up = UPlus::new(datum.clone());
            let ej = WordVector::word(&datum, &[1]);
            for n in 0..=(-datum.c(0, 1)) as usize {
                assert!(up.uplusi_member(&up.ad_e_divided(n, 0, &ej), 0).unwrap());
            }
            assert!(!up.uplusi_member(&WordVector::word(&datum, &[0]), 0).unwrap());
            assert!(up.uplusi_member(&ej, 0).unwrap());
            assert!(!up.uplusi_member(&WordVector::word(&datum, &[1, 0]), 0).unwrap());
        }
    }

    #[test]
    fn dec_shadow_small_weights() {
        for datum in [CartanDatum::a2(), CartanDatum::b2_short_i(), CartanDatum::b2_long_i()] {
            let up = UPlus::new(datum.clone());
            for beta in [vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![1, 2], vec![3, 0], vec![0, 3]] {
                assert!(up.dec_shadow(&RootVector(beta.clone()), 0).unwrap(), "{beta:?}");
            }
        }
    }

    #[test]
    fn dimensions_are_pbw_counts() {
        let up = UPlus::new(CartanDatum::a2());
        assert_eq!(up.dimension(&RootVector(vec![1, 1])).unwrap(), 2);
        assert_eq!(up.dimension(&RootVector(vec![2, 1])).unwrap(), 2);
        assert_eq!(up.dimension(&RootVector(vec![2, 2])).unwrap(), 3);
        let up = UPlus::new(CartanDatum::b2_short_i());
        assert_eq!(up.dimension(&RootVector(vec![2, 1])).unwrap(), 3);
        assert_eq!(up.dimension(&RootVector(vec![3, 1])).unwrap(), 3);
    }

    #[test]
    fn k0_calibration_single_colour() {
        let ctx = KlrContext::new(CartanDatum::a2());
        let up = UPlus::new(CartanDatum::a2());
        let w = DegreeWindow::new(0, 12).unwrap();
        let c = up.k0_isometry_calibrate(&ctx, &RootVector(vec![1, 0]), w).unwrap();
        assert!(c.uniform);
        assert_eq!(c.factor, Some(0));
        let c = up.k0_isometry_calibrate(&ctx, &RootVector(vec![2, 0]), w).unwrap();
        assert!(c.uniform);
        assert_eq!(c.factor, Some(2));
    }

    #[test]
    fn rank_over_function_field() {
        let q = RatFunc::q_pow(1);
        let rows = vec![vec![RatFunc::one(), q.clone()], vec![q.clone(), &q * &q]];
        assert_eq!(ratfunc_rank(rows), 1);
        let rows = vec![vec![RatFunc::one(), q.clone()], vec![q.clone(), RatFunc::one()]];
        assert_eq!(ratfunc_rank(rows), 2);
        assert_eq!(ratfunc_rank(vec![]), 0);
    }

    fn word_strategy(rank: u8, max: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(0..rank, 0..=max)
    }

    proptest! {
        #[test]
        fn form_is_symmetric(a in word_strategy(2, 4), b in word_strategy(2, 4), which in 0usize..4) {
            let up = UPlus::new(all()[which].clone());
            let fresh = UPlus::new(all()[which].clone());
            prop_assert_eq!(up.pair_words(&a, &b), fresh.pair_words(&b, &a));
        }

        #[test]
        fn q_leibniz(a in word_strategy(2, 3), b in word_strategy(2, 3), i in 0u8..2, which in 0usize..4) {
            let datum = all()[which].clone();
            let up = UPlus::new(datum.clone());
            prop_assert!(up.q_leibniz_holds(i, &WordVector::word(&datum, &a), &WordVector::word(&datum, &b)));
        }
    }
}
