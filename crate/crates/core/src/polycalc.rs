//! Polynomial rings `K[x_1..x_n]` with the symmetric group action, Demazure
//! operators, permutations with reduced words, and the `Q_ij` polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qring::{rat, Rat};
use crate::rootdata::{CartanDatum, Color};

pub type Exps = Vec<u32>;

/// Sparse polynomial in `n` commuting variables; exponent vectors index `x_1..x_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exps, Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(a: Exps, c: Rat) -> Self {
        let mut p = Poly::zero(a.len());
        p.add_term(a, c);
        p
    }

    /// `x_k` (1-based).
    pub fn var(n: usize, k: usize) -> Self {
        let mut a = vec![0; n];
        a[k - 1] = 1;
        Self::monomial(a, Rat::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, a: Exps, c: Rat) {
        debug_assert_eq!(a.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (a, c) in &other.terms {
            self.add_term(a.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Rat) {
        for (a, c) in &other.terms {
            self.add_term(a.clone(), c * s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: &[u32]) -> Rat {
        self.terms.get(a).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect() }
    }

    /// Multiplies by the monomial `x^b`.
    pub fn mul_monomial(&self, b: &[u32]) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.iter().zip(b).map(|(x, y)| x + y).collect(), c.clone())).collect(),
        }
    }

    /// Total degree of each monomial, if homogeneous in the plain grading.
    pub fn total_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|a| a.iter().sum()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Applies a permutation of the variables: `w(x_p) = x_{w(p)}`.
    pub fn act(&self, w: &Perm) -> Result<Poly> {
        if w.n() != self.n {
            return Err(Error::Domain(format!("permutation of size {} acting on {} variables", w.n(), self.n)));
        }
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            let mut b = vec![0; self.n];
            for p in 0..self.n {
                b[w.image(p)] = a[p];
            }
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    /// Swaps `x_k` and `x_l` (1-based).
    pub fn swap(&self, k: usize, l: usize) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| {
                    let mut b = a.clone();
                    b.swap(k - 1, l - 1);
                    (b, c.clone())
                })
                .collect(),
        }
    }

    /// `d_{k,l}(f) = (f - s_{k,l} f) / (x_l - x_k)`, 1-based indices.
    pub fn demazure(&self, k: usize, l: usize) -> Result<Poly> {
        if k == l || k == 0 || l == 0 || k > self.n || l > self.n {
            return Err(Error::Domain(format!("Demazure operator d_({k},{l}) on {} variables", self.n)));
        }
        let (ki, li) = (k - 1, l - 1);
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            let (ea, eb) = (a[ki], a[li]);
            if ea == eb {
                continue;
            }
            // x_k^ea x_l^eb - x_k^eb x_l^ea over (x_l - x_k).
            let (lo, hi, sign) = if eb > ea { (ea, eb, c.clone()) } else { (eb, ea, -c.clone()) };
            let gap = hi - lo;
            for t in 0..gap {
                let mut b = a.clone();
                b[li] = lo + t;
                b[ki] = lo + gap - 1 - t;
                out.add_term(b, sign.clone());
            }
        }
        Ok(out)
    }

    /// `d_k = d_{k,k+1}`.
    pub fn demazure_k(&self, k: usize) -> Poly {
        self.demazure(k, k + 1).expect("index in range")
    }

    /// Composition of `d_{w_1} ... d_{w_r}`: the rightmost letter acts first.
    pub fn demazure_seq(&self, word: &[usize]) -> Result<Poly> {
        let mut p = self.clone();
        for &k in word.iter().rev() {
            if k == 0 || k >= self.n {
                return Err(Error::Domain(format!("letter {k} out of range for {} variables", self.n)));
            }
            p = p.demazure_k(k);
        }
        Ok(p)
    }

    /// Substitutes `x_p -> x_{map[p]}` into a ring with `n_new` variables (1-based targets).
    pub fn rename(&self, n_new: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.n);
        let mut out = Poly::zero(n_new);
        for (a, c) in &self.terms {
            let mut b = vec![0; n_new];
            for p in 0..self.n {
                b[map[p] - 1] += a[p];
            }
            out.add_term(b, c.clone());
        }
        out
    }

    /// Evaluates at rational points.
    pub fn eval(&self, pt: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (a, c) in &self.terms {
            let mut m = c.clone();
            for (x, &e) in pt.iter().zip(a) {
                for _ in 0..e {
                    m *= x;
                }
            }
            s += m;
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            let mono: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(p, &e)| if e == 1 { format!("x{}", p + 1) } else { format!("x{}^{}", p + 1, e) })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &rat(-1));
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&rat(-1))
    }
}

/// Permutation of `{1..n}`, stored 0-based: `img[p] = w(p+1) - 1`.
/// Composition is of functions, `(a * b)(p) = a(b(p))`, and the word
/// `(k_1, ..., k_r)` denotes `s_{k_1} * ... * s_{k_r}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n as u8).collect() }
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm { img: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut p = Perm::identity(n);
        for &k in word.iter().rev() {
            p = p.left_mul_s(k);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// 0-based image of 0-based `p`.
    pub fn image(&self, p: usize) -> usize {
        self.img[p] as usize
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (p, &x) in self.img.iter().enumerate() {
            inv[x as usize] = p as u8;
        }
        Perm { img: inv }
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    /// `s_k * self`.
    pub fn left_mul_s(&self, k: usize) -> Perm {
        let (a, b) = ((k - 1) as u8, k as u8);
        Perm { img: self.img.iter().map(|&x| if x == a { b } else if x == b { a } else { x }).collect() }
    }

    /// `self * s_k`.
    pub fn right_mul_s(&self, k: usize) -> Perm {
        let mut img = self.img.clone();
        img.swap(k - 1, k);
        Perm { img }
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        let mut l = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.img[a] > self.img[b] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `l(s_k w) < l(w)`, i.e. `w^-1(k) > w^-1(k+1)`.
    pub fn has_left_descent(&self, k: usize) -> bool {
        let inv = self.inverse();
        inv.img[k - 1] > inv.img[k]
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(p, &x)| p == x as usize)
    }

    /// Places this permutation on positions `offset+1 .. offset+n` of `{1..total}`.
    pub fn embed(&self, total: usize, offset: usize) -> Perm {
        let mut img: Vec<u8> = (0..total as u8).collect();
        for (p, &x) in self.img.iter().enumerate() {
            img[offset + p] = (offset + x as usize) as u8;
        }
        Perm { img }
    }

    /// Pairs `(a, b)` (0-based, `a < b`) whose strands cross.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |a| (a + 1..n).filter(move |&b| self.img[a] > self.img[b]).map(move |b| (a, b)))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

/// Fixed reduced word of `w`: with `r = w^-1(n)`, the word is that of `w'`
/// (which fixes `n`) followed by `n-1, n-2, ..., r`, so that the strand
/// starting at `r` is carried to the top position `n` last.
pub fn canonical_word(w: &Perm) -> Vec<usize> {
    let mut word = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    let mut suffixes: Vec<Vec<usize>> = Vec::new();
    for n in (1..=w.n()).rev() {
        let r = cur.inverse().image(n - 1) + 1;
        let tail: Vec<usize> = (r..n).rev().collect();
        for k in r..n {
            cur = cur.right_mul_s(k);
        }
        suffixes.push(tail);
    }
    for s in suffixes.into_iter().rev() {
        word.extend(s);
    }
    word
}

pub fn is_reduced(n: usize, word: &[usize]) -> bool {
    Perm::from_word(n, word).length() == word.len()
}

/// Reduced word of the longest element permuting positions `k..=l`, via
/// `w0[k, m+1] = w0[k, m] s_m s_{m-1} ... s_k`.
pub fn longest_word(k: usize, l: usize) -> Vec<usize> {
    let mut word = Vec::new();
    for m in k..l {
        word.extend((k..=m).rev());
    }
    word
}

/// `[k, k+1, ..., l]`; empty when `k > l`.
pub fn up(k: usize, l: usize) -> Vec<usize> {
    (k..=l).collect()
}

/// `[l, l-1, ..., k]`; empty when `k > l`.
pub fn down(l: usize, k: usize) -> Vec<usize> {
    (k..=l).rev().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    /// `a b -> b a` with `|a - b| > 1`.
    Commute,
    /// `a b a -> b a b` with `|a - b| = 1`.
    Braid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub pos: usize,
    pub kind: MoveKind,
}

/// Applies a move to a word in place.
pub fn apply_move(word: &mut [usize], m: Move) {
    match m.kind {
        MoveKind::Commute => word.swap(m.pos, m.pos + 1),
        MoveKind::Braid => {
            let (a, b) = (word[m.pos], word[m.pos + 1]);
            debug_assert_eq!(word[m.pos + 2], a);
            word[m.pos] = b;
            word[m.pos + 1] = a;
            word[m.pos + 2] = b;
        }
    }
}

/// Sequence of commutation and braid moves turning the reduced word `word`
/// into the reduced word `target` of the same permutation.
pub fn moves_between(word: &[usize], target: &[usize]) -> Vec<Move> {
    let mut w = word.to_vec();
    let mut moves = Vec::new();
    for len in (1..=w.len()).rev() {
        end_with(&mut w, len, target[len - 1], &mut moves);
    }
    debug_assert_eq!(w, target);
    moves
}

/// Rewrites `w[..len]` so it ends in `s`, assuming `s` is a right descent.
fn end_with(w: &mut [usize], len: usize, s: usize, moves: &mut Vec<Move>) {
    let t = w[len - 1];
    if t == s {
        return;
    }
    assert!(len >= 2, "letter {s} is not a right descent");
    if t.abs_diff(s) > 1 {
        end_with(w, len - 1, s, moves);
        let m = Move { pos: len - 2, kind: MoveKind::Commute };
        apply_move(w, m);
        moves.push(m);
    } else {
        end_with(w, len - 1, s, moves);
        end_with(w, len - 2, t, moves);
        let m = Move { pos: len - 3, kind: MoveKind::Braid };
        apply_move(w, m);
        moves.push(m);
    }
}

/// The table of polynomials `Q_ij(u, v)`, each stored as a two-variable
/// polynomial with `u = x_1`, `v = x_2`.
#[derive(Clone, Debug)]
pub struct QTable {
    table: HashMap<(Color, Color), Poly>,
}

impl QTable {
    pub fn new(datum: &CartanDatum) -> Self {
        let mut table = HashMap::new();
        for i in datum.colors() {
            for j in datum.colors() {
                let p = if i == j {
                    Poly::zero(2)
                } else {
                    let spec = datum.q_spec(i, j);
                    let (tij, tji) = match &spec {
                        Some(s) => (s.t_ij.clone(), s.t_ji.clone()),
                        None => (rat(1), rat(1)),
                    };
                    let mut p = Poly::zero(2);
                    p.add_term(vec![(-datum.c(i, j)) as u32, 0], tij);
                    p.add_term(vec![0, (-datum.c(j, i)) as u32], tji);
                    if let Some(s) = spec {
                        for (a, b, c) in s.extra {
                            p.add_term(vec![a, b], c);
                        }
                    }
                    p
                };
                table.insert((i, j), p);
            }
        }
        QTable { table }
    }

    pub fn q(&self, i: Color, j: Color) -> &Poly {
        &self.table[&(i, j)]
    }

    /// `Q_ij(x_a, x_b)` in `n` variables (1-based `a`, `b`).
    pub fn q_at(&self, i: Color, j: Color, n: usize, a: usize, b: usize) -> Poly {
        self.q(i, j).rename(n, &[a, b])
    }

    /// `Q_{i,nu}(u, v_1..v_m) = prod over nu_k != i of Q_{i,nu_k}(u, v_k)`,
    /// as a polynomial in `m + 1` variables with `u = x_1`, `v_k = x_{k+1}`.
    pub fn q_multi(&self, i: Color, nu: &[Color]) -> Poly {
        let m = nu.len();
        let mut p = Poly::one(m + 1);
        for (k, &c) in nu.iter().enumerate() {
            if c != i {
                p = &p * &self.q_at(i, c, m + 1, 1, k + 2);
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, k: usize) -> Poly {
        Poly::var(n, k)
    }

    #[test]
    fn actions() {
        let s1 = Perm::from_word(2, &[1]);
        assert_eq!(x(2, 1).act(&s1).unwrap(), x(2, 2));
        assert_eq!(x(2, 1).act(&Perm::identity(2)).unwrap(), x(2, 1));
        let f = &(&x(2, 1) * &x(2, 1)) * &x(2, 2);
        assert_eq!(f.act(&s1).unwrap(), &(&x(2, 2) * &x(2, 2)) * &x(2, 1));
        assert!(x(2, 1).act(&Perm::identity(3)).is_err());
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(x(2, 2).demazure_k(1), Poly::one(2));
        assert!((&x(2, 1) * &x(2, 2)).demazure_k(1).is_zero());
        assert_eq!((&x(2, 2) * &x(2, 2)).demazure_k(1), &x(2, 1) + &x(2, 2));
        assert!(x(2, 1).demazure(1, 1).is_err());
        assert_eq!(x(3, 3).demazure_seq(&[]).unwrap(), x(3, 3));
        let x33 = &x(3, 3) * &x(3, 3);
        // d_1 d_2 (x3^2) = d_1(x2 + x3) = 1
        assert_eq!(x33.demazure_seq(&up(1, 2)).unwrap(), Poly::one(3));
    }

    #[test]
    fn words() {
        assert!(canonical_word(&Perm::identity(4)).is_empty());
        assert_eq!(longest_word(1, 2), vec![1]);
        assert_eq!(longest_word(1, 3), vec![1, 2, 1]);
        assert_eq!(canonical_word(&Perm::from_word(4, &up(1, 3))), up(1, 3));
        for n in 1..=5 {
            for w in all_perms(n) {
                let c = canonical_word(&w);
                assert_eq!(c.len(), w.length());
                assert_eq!(Perm::from_word(n, &c), w);
            }
        }
    }

    #[test]
    fn q_table_defaults() {
        let a2 = QTable::new(&CartanDatum::a2());
        assert_eq!(a2.q(0, 1), &(&x(2, 1) + &x(2, 2)));
        assert!(a2.q(0, 0).is_zero());
        assert_eq!(a2.q_multi(0, &[0, 0]), Poly::one(3));
        let b2 = QTable::new(&CartanDatum::b2_short_i());
        assert_eq!(b2.q(0, 1), &(&(&x(2, 1) * &x(2, 1)) + &x(2, 2)));
        assert_eq!(b2.q(1, 0), &(&x(2, 1) + &(&x(2, 2) * &x(2, 2))));
    }

    pub(crate) fn all_perms(n: usize) -> Vec<Perm> {
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
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, n), -3i64..4), 0..6).prop_map(move |t| {
            let mut p = Poly::zero(n);
            for (a, c) in t {
                p.add_term(a, rat(c));
            }
            p
        })
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn nil_coxeter_relations(f in arb_poly(5), k in 1usize..4) {
            prop_assert!(f.demazure_k(k).demazure_k(k).is_zero());
            prop_assert_eq!(f.demazure_seq(&[k + 1, k, k + 1]).unwrap(), f.demazure_seq(&[k, k + 1, k]).unwrap());
            if k + 2 <= 4 {
                prop_assert_eq!(f.demazure_seq(&[k, k + 2]).unwrap(), f.demazure_seq(&[k + 2, k]).unwrap());
            }
        }

        #[test]
        fn skewed_leibniz(f in arb_poly(4), g in arb_poly(4), k in 1usize..5, l in 1usize..5) {
            prop_assume!(k != l);
            let lhs = (&f * &g).demazure(k, l).unwrap();
            let rhs = &(&f.demazure(k, l).unwrap() * &g) + &(&f.swap(k, l) * &g.demazure(k, l).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn demazure_conjugation(f in arb_poly(4), w in arb_perm(4), k in 1usize..5, l in 1usize..5) {
            prop_assume!(k != l);
            let winv = w.inverse();
            let lhs = f.act(&winv).unwrap().demazure(k, l).unwrap().act(&w).unwrap();
            let rhs = f.demazure(w.image(k - 1) + 1, w.image(l - 1) + 1).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduced_words_agree(f in arb_poly(5), w in arb_perm(5), seed in proptest::collection::vec(0usize..8, 0..12)) {
            // Build another reduced word of w by applying random moves to the canonical one.
            let mut word = canonical_word(&w);
            for s in seed {
                if word.len() < 2 { break; }
                let p = s % (word.len() - 1);
                if word[p].abs_diff(word[p + 1]) > 1 {
                    apply_move(&mut word, Move { pos: p, kind: MoveKind::Commute });
                } else if p + 2 < word.len() && word[p] == word[p + 2] && word[p].abs_diff(word[p + 1]) == 1 {
                    apply_move(&mut word, Move { pos: p, kind: MoveKind::Braid });
                }
            }
            prop_assert!(is_reduced(5, &word));
            prop_assert_eq!(f.demazure_seq(&word).unwrap(), f.demazure_seq(&canonical_word(&w)).unwrap());
            // The move path back reproduces the canonical word.
            let mut back = word.clone();
            for m in moves_between(&word, &canonical_word(&w)) {
                apply_move(&mut back, m);
            }
            prop_assert_eq!(back, canonical_word(&w));
        }
    }
}
