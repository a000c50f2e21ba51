//! KLR algebras `H_beta`: normal form rewriting in the basis `x^a tau_w 1_nu`.
//!
//! A key `(nu, w)` stands for `tau_w 1_nu`, where `tau_w` is the product along
//! the canonical reduced word of `w`. The strand starting at bottom position
//! `p` ends at top position `w(p)`, so the top colours are `w(nu)`. Polynomials
//! sit to the left of the crossings and are in the top positions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::nilhecke::{all_perms, weighted_compositions, NilHeckeElement};
use crate::polycalc::{canonical_word, down, moves_between, up, MoveKind, Perm, Poly, QTable};
use crate::qring::{rat, rat_to_string, LaurentPoly, Rat};
use crate::rootdata::{sequences, CartanDatum, Color, RootVector};
#[cfg(test)]
use crate::rootdata::weights_up_to;

/// `(nu, w)` for the basis vector `tau_w 1_nu` (colour sequences in position order).
pub type Key = (Vec<Color>, Perm);

/// Colours read at the top of `tau_w 1_nu`.
pub fn top_colors(nu: &[Color], w: &Perm) -> Vec<Color> {
    let mut c = vec![0; nu.len()];
    for (p, &col) in nu.iter().enumerate() {
        c[w.image(p)] = col;
    }
    c
}

/// Shared rewriting state for one Cartan datum. Caches are append-only and
/// safe to use from several threads.
pub struct KlrContext {
    datum: CartanDatum,
    q: QTable,
    height_bound: usize,
    words: RwLock<HashMap<Perm, Arc<Vec<usize>>>>,
    crossings: RwLock<HashMap<(usize, Perm, Vec<Color>), Arc<KlrElement>>>,
    straightened: RwLock<HashMap<(Vec<usize>, Vec<Color>), Arc<KlrElement>>>,
}

impl fmt::Debug for KlrContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KlrContext").field("labels", &self.datum.labels()).field("height_bound", &self.height_bound).finish()
    }
}

pub const DEFAULT_HEIGHT_BOUND: usize = 10;

impl KlrContext {
    pub fn new(datum: CartanDatum) -> Self {
        Self::with_height_bound(datum, DEFAULT_HEIGHT_BOUND)
    }

    pub fn with_height_bound(datum: CartanDatum, height_bound: usize) -> Self {
        let q = QTable::new(&datum);
        KlrContext {
            datum,
            q,
            height_bound,
            words: RwLock::default(),
            crossings: RwLock::default(),
            straightened: RwLock::default(),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn qtable(&self) -> &QTable {
        &self.q
    }

    pub fn height_bound(&self) -> usize {
        self.height_bound
    }

    pub fn check_height(&self, n: usize) -> Result<()> {
        if n > self.height_bound {
            return Err(Error::Resource(format!("height {n} exceeds the bound {}", self.height_bound)));
        }
        Ok(())
    }

    pub fn word(&self, w: &Perm) -> Arc<Vec<usize>> {
        if let Some(v) = self.words.read().unwrap().get(w) {
            return v.clone();
        }
        let v = Arc::new(canonical_word(w));
        self.words.write().unwrap().insert(w.clone(), v.clone());
        v
    }

    /// All sequences of weight `beta`.
    pub fn sequences(&self, beta: &RootVector) -> Result<Vec<Vec<Color>>> {
        sequences(beta, self.height_bound)
    }

    fn check_nu(&self, nu: &[Color]) -> Result<RootVector> {
        self.check_height(nu.len())?;
        if let Some(&c) = nu.iter().find(|&&c| c as usize >= self.datum.rank()) {
            return Err(Error::Input(format!("colour {c} out of range")));
        }
        Ok(self.datum.weight_of(nu))
    }

    // ---- generators ----

    pub fn idem(&self, nu: &[Color]) -> Result<KlrElement> {
        let beta = self.check_nu(nu)?;
        Ok(KlrElement::monomial(beta, nu.to_vec(), Perm::identity(nu.len()), Poly::one(nu.len())))
    }

    /// `1_beta`, the sum of all `1_nu`.
    pub fn unit(&self, beta: &RootVector) -> Result<KlrElement> {
        let mut out = KlrElement::zero(beta.clone());
        for nu in self.sequences(beta)? {
            out.add_assign(&self.idem(&nu)?);
        }
        Ok(out)
    }

    /// `P 1_nu` for a polynomial in the positions of `nu`.
    pub fn poly_on(&self, nu: &[Color], p: Poly) -> Result<KlrElement> {
        let beta = self.check_nu(nu)?;
        if p.nvars() != nu.len() {
            return Err(Error::Input(format!("polynomial in {} variables on a sequence of length {}", p.nvars(), nu.len())));
        }
        Ok(KlrElement::monomial(beta, nu.to_vec(), Perm::identity(nu.len()), p))
    }

    pub fn x_on(&self, nu: &[Color], k: usize) -> Result<KlrElement> {
        let n = nu.len();
        if k == 0 || k > n {
            return Err(Error::Input(format!("x_{k} out of range for height {n}")));
        }
        self.poly_on(nu, Poly::var(n, k))
    }

    pub fn tau_on(&self, nu: &[Color], k: usize) -> Result<KlrElement> {
        let beta = self.check_nu(nu)?;
        let n = nu.len();
        if k == 0 || k >= n {
            return Err(Error::Input(format!("tau_{k} out of range for height {n}")));
        }
        Ok(KlrElement::monomial(beta, nu.to_vec(), Perm::identity(n).left_mul_s(k), Poly::one(n)))
    }

    /// `tau_{k_1} ... tau_{k_r} 1_nu` for any word.
    pub fn tau_word_on(&self, nu: &[Color], word: &[usize]) -> Result<KlrElement> {
        let mut e = self.idem(nu)?;
        for &k in word.iter().rev() {
            if k == 0 || k >= nu.len() {
                return Err(Error::Input(format!("tau_{k} out of range for height {}", nu.len())));
            }
            e = self.left_tau(k, &e);
        }
        Ok(e)
    }

    /// `tau_{k_1} ... tau_{k_r} u`.
    pub fn left_word(&self, word: &[usize], u: &KlrElement) -> KlrElement {
        let mut e = u.clone();
        for &k in word.iter().rev() {
            e = self.left_tau(k, &e);
        }
        e
    }

    /// A nil Hecke element acting on positions `offset+1 ..= offset+m` of
    /// `nu`, which must all carry the same colour.
    pub fn embed_nil_hecke(&self, nu: &[Color], offset: usize, e: &NilHeckeElement) -> Result<KlrElement> {
        let beta = self.check_nu(nu)?;
        let (n, m) = (nu.len(), e.rank());
        if offset + m > n || nu[offset..offset + m].windows(2).any(|p| p[0] != p[1]) {
            return Err(Error::Input(format!("positions {}..{} of {nu:?} do not carry one colour", offset + 1, offset + m)));
        }
        let map: Vec<usize> = (offset + 1..=offset + m).collect();
        let mut out = KlrElement::zero(beta);
        for (a, w, c) in e.monomials() {
            let p = Poly::monomial(a, c).rename(n, &map);
            out.add_poly_term(nu, &w.embed(n, offset), &p);
        }
        Ok(out)
    }

    /// `x_k 1_beta`.
    pub fn x(&self, beta: &RootVector, k: usize) -> Result<KlrElement> {
        self.sum_over(beta, |nu| self.x_on(nu, k))
    }

    /// `tau_k 1_beta`.
    pub fn tau(&self, beta: &RootVector, k: usize) -> Result<KlrElement> {
        self.sum_over(beta, |nu| self.tau_on(nu, k))
    }

    fn sum_over(&self, beta: &RootVector, f: impl Fn(&[Color]) -> Result<KlrElement>) -> Result<KlrElement> {
        let mut out = KlrElement::zero(beta.clone());
        for nu in self.sequences(beta)? {
            out.add_assign(&f(&nu)?);
        }
        Ok(out)
    }

    // ---- rewriting ----

    /// Product `u v` in normal form.
    pub fn multiply(&self, u: &KlrElement, v: &KlrElement) -> Result<KlrElement> {
        if u.beta != v.beta {
            return Err(Error::WeightMismatch(format!(
                "{} times {}",
                self.datum.show_root(&u.beta),
                self.datum.show_root(&v.beta)
            )));
        }
        self.check_height(u.height())?;
        let mut by_left: HashMap<Vec<Color>, KlrElement> = HashMap::new();
        for ((nu, w), p) in &v.terms {
            by_left
                .entry(top_colors(nu, w))
                .or_insert_with(|| KlrElement::zero(v.beta.clone()))
                .terms
                .insert((nu.clone(), w.clone()), p.clone());
        }
        let mut out = KlrElement::zero(u.beta.clone());
        for ((nu, w), p) in &u.terms {
            let Some(rhs) = by_left.get(nu) else { continue };
            let mut x = rhs.clone();
            for &k in self.word(w).iter().rev() {
                x = self.left_tau(k, &x);
            }
            out.add_assign(&x.left_poly(p));
        }
        Ok(out)
    }

    /// `tau_k u`, using `tau_k P = s_k(P) tau_k + d_k(P)` when the colours
    /// at top positions `k, k+1` agree.
    pub fn left_tau(&self, k: usize, u: &KlrElement) -> KlrElement {
        let mut out = KlrElement::zero(u.beta.clone());
        for ((nu, w), p) in &u.terms {
            let top = top_colors(nu, w);
            let crossed = self.crossing(k, w, nu);
            out.add_assign(&crossed.left_poly(&p.swap(k, k + 1)));
            if top[k - 1] == top[k] {
                out.add_poly_term(nu, w, &p.demazure_k(k));
            }
        }
        out
    }

    /// `tau_k tau_w 1_nu` in normal form.
    fn crossing(&self, k: usize, w: &Perm, nu: &[Color]) -> Arc<KlrElement> {
        let key = (k, w.clone(), nu.to_vec());
        if let Some(v) = self.crossings.read().unwrap().get(&key) {
            return v.clone();
        }
        let n = nu.len();
        let beta = self.datum.weight_of(nu);
        let result = if !w.has_left_descent(k) {
            let mut word = vec![k];
            word.extend(self.word(w).iter());
            (*self.straighten(&word, nu)).clone()
        } else {
            // tau_w = tau_k tau_{s_k w} + E, so tau_k tau_w = tau_k^2 tau_{s_k w} + tau_k E.
            let shorter = w.left_mul_s(k);
            let mut word = vec![k];
            word.extend(self.word(&shorter).iter());
            let mut err = (*self.straighten(&word, nu)).clone();
            err.add_poly_term(nu, w, &Poly::constant(n, rat(-1)));
            let c = top_colors(nu, &shorter);
            let q = self.q.q_at(c[k - 1], c[k], n, k, k + 1);
            let mut out = KlrElement::zero(beta);
            out.add_poly_term(nu, &shorter, &q);
            out.sub_assign(&self.left_tau(k, &err));
            out
        };
        let result = Arc::new(result);
        self.crossings.write().unwrap().insert(key, result.clone());
        result
    }

    /// `tau_word 1_nu` in normal form, for a reduced word.
    fn straighten(&self, word: &[usize], nu: &[Color]) -> Arc<KlrElement> {
        let key = (word.to_vec(), nu.to_vec());
        if let Some(v) = self.straightened.read().unwrap().get(&key) {
            return v.clone();
        }
        let n = nu.len();
        let w = Perm::from_word(n, word);
        let target = self.word(&w);
        let mut out = KlrElement::zero(self.datum.weight_of(nu));
        out.add_poly_term(nu, &w, &Poly::one(n));
        let mut cur = word.to_vec();
        for m in moves_between(word, &target) {
            if m.kind == MoveKind::Braid {
                let (a, b) = (cur[m.pos], cur[m.pos + 1]);
                let k = a.min(b);
                let tail = &cur[m.pos + 3..];
                let lam = top_colors(nu, &Perm::from_word(n, tail));
                if lam[k - 1] == lam[k + 1] {
                    // (tau_{k+1} tau_k tau_{k+1} - tau_k tau_{k+1} tau_k) 1_lam = P 1_lam
                    let p = self.q.q_at(lam[k - 1], lam[k], n, k + 2, k + 1).demazure(k, k + 2).expect("valid indices");
                    if !p.is_zero() {
                        let sign = if a == k + 1 { rat(1) } else { rat(-1) };
                        let mut e = (*self.straighten(tail, nu)).clone().left_poly(&p.scale(&sign));
                        for &l in cur[..m.pos].iter().rev() {
                            e = self.left_tau(l, &e);
                        }
                        out.add_assign(&e);
                    }
                }
            }
            crate::polycalc::apply_move(&mut cur, m);
        }
        let out = Arc::new(out);
        self.straightened.write().unwrap().insert(key, out.clone());
        out
    }

    // ---- structure ----

    /// `y ⋄ z`: `y` on the top positions, `z` on positions `1..m`.
    pub fn diamond(&self, y: &KlrElement, z: &KlrElement) -> Result<KlrElement> {
        let (n, m) = (y.height(), z.height());
        let total = n + m;
        self.check_height(total)?;
        let beta = y.beta.add(&z.beta);
        let mut out = KlrElement::zero(beta);
        let low_map: Vec<usize> = (1..=m).collect();
        let high_map: Vec<usize> = (m + 1..=total).collect();
        for ((nz, wz), pz) in &z.terms {
            let low_word: Vec<usize> = self.word(wz).to_vec();
            let pz = pz.rename(total, &low_map);
            for ((ny, wy), py) in &y.terms {
                let mut nu = nz.clone();
                nu.extend(ny.iter());
                let mut word: Vec<usize> = self.word(wy).iter().map(|k| k + m).collect();
                word.extend(low_word.iter());
                let p = &py.rename(total, &high_map) * &pz;
                out.add_assign(&self.straighten(&word, &nu).left_poly(&p));
            }
        }
        Ok(out)
    }

    /// The anti-automorphism reflecting diagrams left to right: positions
    /// `k -> n+1-k`, crossings `tau_l -> -tau_{n-l}`.
    pub fn rev(&self, u: &KlrElement) -> Result<KlrElement> {
        let n = u.height();
        let refl: Vec<usize> = (1..=n).rev().collect();
        let mut out = KlrElement::zero(u.beta.clone());
        for ((nu, w), p) in &u.terms {
            let word = self.word(w);
            let new_word: Vec<usize> = word.iter().rev().map(|&l| n - l).collect();
            let left: Vec<Color> = nu.iter().rev().copied().collect();
            // right idempotent of the reflected crossing is w'^-1(left)
            let wr = Perm::from_word(n, &new_word);
            let right = top_colors(&left, &wr.inverse());
            let sign = if word.len() % 2 == 0 { rat(1) } else { rat(-1) };
            let t = self.straighten(&new_word, &right).scale(&sign);
            let poly = self.poly_on(&right, p.rename(n, &refl))?;
            out.add_assign(&self.multiply(&t, &poly)?);
        }
        Ok(out)
    }

    /// Degree of `tau_w 1_nu`.
    pub fn tau_degree(&self, nu: &[Color], w: &Perm) -> i64 {
        w.inversions().map(|(a, b)| -self.datum.dot(nu[a], nu[b])).sum()
    }

    /// Degree of the monomial `x^a tau_w 1_nu`.
    pub fn degree(&self, nu: &[Color], w: &Perm, a: &[u32]) -> i64 {
        let top = top_colors(nu, w);
        let xs: i64 = a.iter().zip(&top).map(|(&e, &c)| e as i64 * self.datum.dot(c, c)).sum();
        xs + self.tau_degree(nu, w)
    }

    /// Distinct degrees occurring in `u`, ascending.
    pub fn degrees(&self, u: &KlrElement) -> Vec<i64> {
        let mut d: Vec<i64> = u
            .terms
            .iter()
            .flat_map(|((nu, w), p)| p.terms().map(move |(a, _)| self.degree(nu, w, a)))
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, u: &KlrElement) -> Option<i64> {
        match self.degrees(u).as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Normal form monomials `x^a tau_w 1_nu` of degree `d`, optionally with
    /// left colours `w(nu)` equal to `left`.
    pub fn graded_basis(&self, left: Option<&[Color]>, nu: &[Color], d: i64) -> Result<GradedBasis> {
        self.check_nu(nu)?;
        let mut keys = Vec::new();
        for w in all_perms(nu.len()) {
            let top = top_colors(nu, &w);
            if left.is_some_and(|l| l != top.as_slice()) {
                continue;
            }
            let rest = d - self.tau_degree(nu, &w);
            if rest < 0 {
                continue;
            }
            let weights: Vec<u32> = top.iter().map(|&c| self.datum.dot(c, c) as u32).collect();
            if nu.is_empty() {
                if rest == 0 {
                    keys.push((nu.to_vec(), w.clone(), Vec::new()));
                }
                continue;
            }
            for a in weighted_compositions(rest as u32, &weights) {
                keys.push((nu.to_vec(), w.clone(), a));
            }
        }
        Ok(GradedBasis { left: left.map(|l| l.to_vec()), right: nu.to_vec(), degree: d, keys })
    }

    /// Graded dimension of `1_left H 1_right` in the degrees of `window`.
    pub fn graded_dim(&self, left: &[Color], right: &[Color], lo: i64, hi: i64) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for d in lo..=hi {
            let k = self.graded_basis(Some(left), right, d)?.keys.len();
            if k > 0 {
                out.add_term(d, rat(k as i64));
            }
        }
        Ok(out)
    }

    // ---- presentation ----

    pub fn show(&self, u: &KlrElement) -> String {
        let mut out = String::new();
        let mut monos = self.monomials(u);
        // longest crossings first, then higher powers
        monos.sort_by(|x, y| (y.1.len(), &y.2, &y.0).cmp(&(x.1.len(), &x.2, &x.0)));
        for (nu, word, a, c) in monos {
            let mut factors: Vec<String> = Vec::new();
            for (p, &e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", p + 1)),
                    _ => factors.push(format!("x{}^{}", p + 1, e)),
                }
            }
            factors.extend(word.iter().map(|k| format!("t{k}")));
            factors.push(format!("1[{}]", self.datum.show_sequence(&nu)));
            let neg = c < Rat::zero();
            let mag = if neg { -c } else { c };
            let body = if mag.is_one() { factors.join("·") } else { format!("{}·{}", rat_to_string(&mag), factors.join("·")) };
            if out.is_empty() {
                out = if neg { format!("−{body}") } else { body };
            } else {
                out.push_str(if neg { " − " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// `(nu, canonical word, exponents, coefficient)` for every monomial.
    /// Like [`show`](Self::show) but with the polynomial in front of each
    /// crossing word collected, as in `(x1+x2)·1[j,i]`.
    pub fn show_grouped(&self, u: &KlrElement) -> String {
        let mut keys: Vec<(&Key, &Poly)> = u.terms().collect();
        keys.sort_by(|a, b| (b.0 .1.length(), &b.0 .0).cmp(&(a.0 .1.length(), &a.0 .0)));
        let mut parts: Vec<String> = Vec::new();
        for ((nu, w), p) in keys {
            let single = KlrElement { beta: u.beta.clone(), terms: [((nu.clone(), w.clone()), p.clone())].into() };
            if p.num_terms() == 1 {
                parts.push(self.show(&single));
                continue;
            }
            let mut factors = vec![format!("({})", p.to_string().replace('*', "·").replace('-', "−"))];
            factors.extend(self.word(w).iter().map(|k| format!("t{k}")));
            factors.push(format!("1[{}]", self.datum.show_sequence(nu)));
            parts.push(factors.join("·"));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('−') {
                Some(rest) => out.push_str(&format!(" − {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        out
    }

    pub fn monomials(&self, u: &KlrElement) -> Vec<(Vec<Color>, Vec<usize>, Vec<u32>, Rat)> {
        let mut out = Vec::new();
        for ((nu, w), p) in &u.terms {
            let word = self.word(w);
            for (a, c) in p.terms() {
                out.push((nu.clone(), word.to_vec(), a.clone(), c.clone()));
            }
        }
        out
    }

    pub fn to_json(&self, u: &KlrElement) -> Value {
        Value::Array(
            self.monomials(u)
                .into_iter()
                .map(|(nu, word, a, c)| {
                    let labels: Vec<&str> = nu.iter().rev().map(|&c| self.datum.label(c)).collect();
                    json!({"nu": labels, "word": word, "exps": a, "coeff": rat_to_string(&c)})
                })
                .collect(),
        )
    }
}

/// Finite linear combination of normal form monomials over a fixed weight.
#[derive(Clone, PartialEq, Eq)]
pub struct KlrElement {
    beta: RootVector,
    terms: BTreeMap<Key, Poly>,
}

impl KlrElement {
    pub fn zero(beta: RootVector) -> Self {
        KlrElement { beta, terms: BTreeMap::new() }
    }

    fn monomial(beta: RootVector, nu: Vec<Color>, w: Perm, p: Poly) -> Self {
        let mut e = KlrElement::zero(beta);
        if !p.is_zero() {
            e.terms.insert((nu, w), p);
        }
        e
    }

    pub fn beta(&self) -> &RootVector {
        &self.beta
    }

    pub fn height(&self) -> usize {
        self.beta.height()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient polynomial of `tau_w 1_nu`.
    pub fn coeff(&self, nu: &[Color], w: &Perm) -> Option<&Poly> {
        self.terms.get(&(nu.to_vec(), w.clone()))
    }

    pub fn num_monomials(&self) -> usize {
        self.terms.values().map(Poly::num_terms).sum()
    }

    fn add_poly_term(&mut self, nu: &[Color], w: &Perm, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let key = (nu.to_vec(), w.clone());
        match self.terms.get_mut(&key) {
            Some(slot) => {
                slot.add_assign_ref(p);
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, p.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &KlrElement) {
        for ((nu, w), p) in &other.terms {
            self.add_poly_term(nu, w, p);
        }
    }

    pub fn sub_assign(&mut self, other: &KlrElement) {
        for ((nu, w), p) in &other.terms {
            self.add_poly_term(nu, w, &-p);
        }
    }

    pub fn add(&self, other: &KlrElement) -> KlrElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &KlrElement) -> KlrElement {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scale(&self, c: &Rat) -> KlrElement {
        if c.is_zero() {
            return KlrElement::zero(self.beta.clone());
        }
        KlrElement { beta: self.beta.clone(), terms: self.terms.iter().map(|(k, p)| (k.clone(), p.scale(c))).collect() }
    }

    /// `P u` for a polynomial in the top positions.
    pub fn left_poly(&self, p: &Poly) -> KlrElement {
        let mut out = KlrElement::zero(self.beta.clone());
        for ((nu, w), q) in &self.terms {
            out.add_poly_term(nu, w, &(p * q));
        }
        out
    }

    /// Components with the given right idempotent.
    pub fn restrict_right(&self, nu: &[Color]) -> KlrElement {
        KlrElement {
            beta: self.beta.clone(),
            terms: self.terms.iter().filter(|((n, _), _)| n == nu).map(|(k, p)| (k.clone(), p.clone())).collect(),
        }
    }

    /// Right idempotents occurring in `self`.
    pub fn right_colors(&self) -> Vec<Vec<Color>> {
        let mut v: Vec<Vec<Color>> = self.terms.keys().map(|(nu, _)| nu.clone()).collect();
        v.dedup();
        v
    }
}

impl fmt::Debug for KlrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((nu, w), p)| format!("({p})*tau{:?}*1{:?}", canonical_word(w), nu.iter().rev().collect::<Vec<_>>()))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Monomials `x^a tau_w 1_nu` of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub left: Option<Vec<Color>>,
    pub right: Vec<Color>,
    pub degree: i64,
    pub keys: Vec<(Vec<Color>, Perm, Vec<u32>)>,
}

/// Vectors of the polynomial representation, `sum_nu f_nu 1_nu`.
pub type PolyVector = BTreeMap<Vec<Color>, Poly>;

/// The faithful polynomial representation on `sum_nu K[x] 1_nu`: `x_k`
/// multiplies, `tau_k` is `d_k` when the two colours agree and otherwise
/// swaps the variables and multiplies by one orientation of `Q`.
/// Written directly from the relations, so it serves as an independent
/// check on [`KlrContext::multiply`].
pub fn poly_action(ctx: &KlrContext, u: &KlrElement, v: &PolyVector) -> PolyVector {
    let mut out = PolyVector::new();
    for ((nu, w), p) in &u.terms {
        let Some(f) = v.get(nu) else { continue };
        let mut cur = vec![(nu.clone(), f.clone())];
        for &k in canonical_word(w).iter().rev() {
            cur = cur.into_iter().map(|(c, f)| act_tau(ctx, k, &c, &f)).collect();
        }
        for (c, f) in cur {
            let g = p * &f;
            let slot = out.entry(c).or_insert_with(|| Poly::zero(g.nvars()));
            slot.add_assign_ref(&g);
        }
    }
    out.retain(|_, f| !f.is_zero());
    out
}

fn act_tau(ctx: &KlrContext, k: usize, nu: &[Color], f: &Poly) -> (Vec<Color>, Poly) {
    let (a, b) = (nu[k - 1], nu[k]);
    if a == b {
        return (nu.to_vec(), f.demazure_k(k));
    }
    let mut swapped = nu.to_vec();
    swapped.swap(k - 1, k);
    let g = f.swap(k, k + 1);
    if a < b {
        (swapped, g)
    } else {
        (swapped, &ctx.q.q_at(b, a, nu.len(), k, k + 1) * &g)
    }
}

/// Checks of the defining relations and the multistrand identities. Each
/// returns a description of every failure; an empty list means all hold.
impl KlrContext {
    fn product(&self, parts: &[&KlrElement]) -> Result<KlrElement> {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = self.multiply(&acc, p)?;
        }
        Ok(acc)
    }

    /// The defining relations on every idempotent of weight `beta`.
    pub fn relation_failures(&self, beta: &RootVector) -> Result<Vec<String>> {
        let n = beta.height();
        let zero = KlrElement::zero(beta.clone());
        let x: Vec<KlrElement> = (1..=n).map(|k| self.x(beta, k)).collect::<Result<_>>()?;
        let t: Vec<KlrElement> = (1..n).map(|k| self.tau(beta, k)).collect::<Result<_>>()?;
        let seqs = self.sequences(beta)?;
        let mut failures = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                failures.push(what);
            }
        };
        let one = self.unit(beta)?;
        check(self.multiply(&one, &one)? == one, "unit".into());
        for nu in &seqs {
            let e = self.idem(nu)?;
            let at = self.datum.show_sequence(nu);
            for mu in &seqs {
                let prod = self.product(&[&e, &self.idem(mu)?])?;
                check(prod == if mu == nu { e.clone() } else { zero.clone() }, format!("idempotents {at}"));
            }
            for k in 1..=n {
                check(self.product(&[&x[k - 1], &e])? == self.product(&[&e, &x[k - 1]])?, format!("x{k} idempotent {at}"));
                for l in 1..=n {
                    let lhs = self.product(&[&x[k - 1], &x[l - 1], &e])?;
                    check(lhs == self.product(&[&x[l - 1], &x[k - 1], &e])?, format!("x{k} x{l} {at}"));
                }
            }
            for k in 1..n {
                let mut snu = nu.clone();
                snu.swap(k - 1, k);
                let tk = &t[k - 1];
                check(self.product(&[tk, &e])? == self.product(&[&self.idem(&snu)?, tk])?, format!("t{k} idempotent {at}"));
                let q = self.q.q_at(nu[k - 1], nu[k], n, k, k + 1);
                check(self.product(&[tk, tk, &e])? == self.poly_on(nu, q)?, format!("t{k}^2 {at}"));
                for l in 1..=n {
                    let sl = if l == k { k + 1 } else if l == k + 1 { k } else { l };
                    let lhs = self.product(&[tk, &x[l - 1], &e])?.sub(&self.product(&[&x[sl - 1], tk, &e])?);
                    let expect = if nu[k - 1] != nu[k] || (l != k && l != k + 1) {
                        zero.clone()
                    } else if l == k + 1 {
                        e.clone()
                    } else {
                        e.scale(&rat(-1))
                    };
                    check(lhs == expect, format!("t{k} x{l} {at}"));
                }
                for l in 1..n {
                    if l.abs_diff(k) > 1 {
                        let lhs = self.product(&[tk, &t[l - 1], &e])?;
                        check(lhs == self.product(&[&t[l - 1], tk, &e])?, format!("t{k} t{l} {at}"));
                    }
                }
                if k + 2 <= n {
                    let tk1 = &t[k];
                    let lhs = self.product(&[tk1, tk, tk1, &e])?.sub(&self.product(&[tk, tk1, tk, &e])?);
                    let rhs = if nu[k - 1] == nu[k + 1] {
                        let p = self.q.q_at(nu[k - 1], nu[k], n, k + 2, k + 1).demazure(k, k + 2)?;
                        self.poly_on(nu, p)?
                    } else {
                        zero.clone()
                    };
                    check(lhs == rhs, format!("braid at {k} {at}"));
                }
            }
        }
        Ok(failures)
    }

    /// Strand `i` passing over `nu` and back, on either side, and its
    /// reversed image; with `nu.len() <= 2` also the commutator of the two
    /// ways of moving an `i` strand across `nu` and another `i` strand.
    pub fn multistrand_failures(&self, i: Color, nu: &[Color]) -> Result<Vec<String>> {
        if nu.contains(&i) {
            return Err(Error::Input(format!("{} contains {}", self.datum.show_sequence(nu), self.datum.label(i))));
        }
        let n = nu.len();
        let at = self.datum.show_sequence(nu);
        let mut failures = Vec::new();
        let mut seq = nu.to_vec();
        seq.push(i);
        let trip = self.tau_word_on(&seq, &[down(n, 1), up(1, n)].concat())?;
        let mut map = vec![n + 1];
        map.extend(1..=n);
        let q = self.q.q_multi(i, nu).rename(n + 1, &map);
        if trip != self.poly_on(&seq, q)? {
            failures.push(format!("round trip over {at}"));
        }
        let below: Vec<Color> = [vec![i], nu.to_vec()].concat();
        let mirror = self.tau_word_on(&below, &[up(1, n), down(n, 1)].concat())?;
        if mirror != self.poly_on(&below, self.q.q_multi(i, nu))? {
            failures.push(format!("round trip under {at}"));
        }
        let reversed: Vec<Color> = seq.iter().rev().copied().collect();
        let mirror = self.tau_word_on(&reversed, &[up(1, n), down(n, 1)].concat())?;
        if mirror != self.rev(&trip)? {
            failures.push(format!("reversed round trip {at}"));
        }
        if n <= 2 {
            let mut seq = vec![i];
            seq.extend_from_slice(nu);
            seq.push(i);
            let a = [down(n + 1, 2), vec![1], up(2, n + 1)].concat();
            let b = [up(1, n), vec![n + 1], down(n, 1)].concat();
            let lhs = self.tau_word_on(&seq, &a)?.sub(&self.tau_word_on(&seq, &b)?);
            let mut map = vec![n + 2];
            map.extend(2..=n + 1);
            let q = self.q.q_multi(i, nu).rename(n + 2, &map).demazure(1, n + 2)?;
            if lhs != self.poly_on(&seq, q)? {
                failures.push(format!("braid commutator {at}"));
            }
        }
        Ok(failures)
    }
}

/// Colour sequences of length `n` avoiding `i`.
pub fn sequences_avoiding(datum: &CartanDatum, i: Color, n: usize) -> Vec<Vec<Color>> {
    let others: Vec<Color> = datum.colors().filter(|&c| c != i).collect();
    let mut out: Vec<Vec<Color>> = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| others.iter().map(move |&c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}
