//! The adjoint action of `E_i`: the complexes `Ad^n` and `Ad^(n)` of
//! induced projectives, their graded cohomology, and the dimension
//! identities relating them.
//!
//! Module shifts follow `(q^s M)_d = M_{d+s}`, so the graded dimension of
//! `q^s M` is `q^-s` times that of `M`. Every shift goes through
//! [`RefinedDims::shifted`] or [`module_shift_series`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::klr::{top_colors, KlrContext, KlrElement};
use crate::linalg::{DenseMatrix, Echelon, Interner, SparseRow};
use crate::nilhecke::{all_perms, idempotent_e, weighted_compositions};
use crate::polycalc::{longest_word, up, Perm, Poly};
use crate::qring::{k_subsets, quantum_integer, rat, sigma, zeta, DegreeWindow, LaurentPoly, RatFunc};
use crate::rootdata::{CartanDatum, Color, RootVector};

/// Graded dimension of `q^s M` given that of `M`.
pub fn module_shift_series(s: i64, dims: &LaurentPoly) -> LaurentPoly {
    dims.shift(-s)
}

/// `H_beta^i` vanishes iff `s_i(beta)` leaves the positive cone.
pub fn is_quotient_zero(datum: &CartanDatum, beta: &RootVector, i: Color) -> bool {
    !datum.reflect(i, beta).1
}

/// `sum_nu tau_{[1..r]} 1_{i,nu}`: right multiplication by it is `tau_{E_i,M}`.
pub fn tau_embed(ctx: &KlrContext, beta: &RootVector, i: Color) -> Result<KlrElement> {
    let r = beta.height();
    let mut out = KlrElement::zero(beta.add_color(i, 1));
    for nu in ctx.sequences(beta)? {
        let mut seq = nu;
        seq.push(i);
        out.add_assign(&ctx.tau_word_on(&seq, &up(1, r))?);
    }
    Ok(out)
}

/// `q^shift H f` with `f` the product of the idempotents `e_m` placed on
/// the given blocks of `1_right`.
#[derive(Clone, Debug)]
pub struct CyclicProjective {
    pub gamma: RootVector,
    pub right: Vec<Color>,
    /// 1-based inclusive position ranges carrying `e_m`.
    pub blocks: Vec<(usize, usize)>,
    pub f: KlrElement,
    pub shift: i64,
}

impl CyclicProjective {
    pub fn new(ctx: &KlrContext, right: Vec<Color>, blocks: Vec<(usize, usize)>, shift: i64) -> Result<Self> {
        let mut f = ctx.idem(&right)?;
        for &(a, b) in &blocks {
            let e = ctx.embed_nil_hecke(&right, a - 1, &idempotent_e(b + 1 - a))?;
            f = ctx.multiply(&f, &e)?;
        }
        if ctx.multiply(&f, &f)? != f {
            return Err(Error::Domain("block element is not idempotent".into()));
        }
        Ok(CyclicProjective { gamma: ctx.datum().weight_of(&right), right, blocks, f, shift })
    }

    /// Longest element of the block parabolic subgroup.
    fn block_longest(&self) -> Perm {
        let n = self.right.len();
        let mut p = Perm::identity(n);
        for &(a, b) in &self.blocks {
            p = p.compose(&Perm::from_word(n, &longest_word(a, b)));
        }
        p
    }

    /// Generators `Y_w = tau_w g` of `Hf = Hg`, `g = tau_{w_P} 1_right`,
    /// for `w` increasing on every block. `Hf` has basis `x^c Y_w`.
    fn generators(&self, ctx: &KlrContext) -> Vec<Generator> {
        let n = self.right.len();
        let wp = self.block_longest();
        let g = ctx.tau_word_on(&self.right, &ctx.word(&wp)).expect("valid sequence");
        all_perms(n)
            .into_iter()
            .filter(|w| self.blocks.iter().all(|&(a, b)| (a..b).all(|p| w.image(p - 1) < w.image(p))))
            .map(|w| {
                let lead = w.compose(&wp);
                let y = ctx.left_word(&ctx.word(&w), &g);
                Generator { left: top_colors(&self.right, &lead), degree: ctx.tau_degree(&self.right, &lead), y }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Generator {
    left: Vec<Color>,
    degree: i64,
    y: KlrElement,
}

/// A differential entry: right multiplication by `z` from `terms[k][src]`
/// to `terms[k-1][tgt]`.
#[derive(Clone, Debug)]
pub struct DiffEntry {
    pub src: usize,
    pub tgt: usize,
    pub z: KlrElement,
}

/// Complex `0 -> T_n -> ... -> T_0 -> 0`, `T_k` in cohomological degree `-k`.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    pub gamma: RootVector,
    pub terms: Vec<Vec<CyclicProjective>>,
    /// `diffs[k]` maps `T_k -> T_{k-1}`; `diffs[0]` is empty.
    pub diffs: Vec<Vec<DiffEntry>>,
}

/// Sequences `mu_k`: `i` on positions `1..k`, `nu` above, then `i` again.
fn mu(nu: &[Color], i: Color, n: usize, k: usize) -> Vec<Color> {
    let mut s = vec![i; k];
    s.extend_from_slice(nu);
    s.extend(std::iter::repeat(i).take(n - k));
    s
}

fn check_avoids(ctx: &KlrContext, nu: &[Color], i: Color) -> Result<()> {
    if nu.contains(&i) {
        return Err(Error::Input(format!("the sequence {} contains the colour {}", ctx.datum().show_sequence(nu), ctx.datum().label(i))));
    }
    Ok(())
}

/// `Ad^n(E_nu)`: terms `sum_{|S|=k} q_i^{kw + 2(sum S - k)} E_i^{n-k} E_nu E_i^k`.
pub fn build_ad_complex(ctx: &KlrContext, n: usize, nu: &[Color], i: Color) -> Result<ProjComplex> {
    check_avoids(ctx, nu, i)?;
    let r = nu.len();
    ctx.check_height(n + r)?;
    let datum = ctx.datum();
    let di = datum.d(i);
    let w = datum.pairing(i, &datum.weight_of(nu));
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();
    let mut terms = Vec::new();
    for (k, subs) in subsets.iter().enumerate() {
        let mut t = Vec::new();
        for s in subs {
            let sum: usize = s.iter().sum();
            let shift = di * (k as i64 * w + 2 * (sum as i64 - k as i64));
            t.push(CyclicProjective::new(ctx, mu(nu, i, n, k), vec![], shift)?);
        }
        terms.push(t);
    }
    let mut diffs = vec![Vec::new()];
    for k in 1..=n {
        let target = mu(nu, i, n, k - 1);
        let mut entries = Vec::new();
        for (src, s) in subsets[k].iter().enumerate() {
            for &l in s {
                let smaller: Vec<usize> = s.iter().copied().filter(|&x| x != l).collect();
                let tgt = subsets[k - 1].iter().position(|t| *t == smaller).expect("subset present");
                let above = s.iter().filter(|&&x| x > l).count();
                let below = s.iter().filter(|&&x| x < l).count();
                // the strand starting just above nu (plus the free i strands
                // skipped over) ends right above the remaining kept ones
                let word = up(k - below, k + r + l - 2 - below);
                let mut z = ctx.tau_word_on(&target, &word)?;
                if above % 2 == 1 {
                    z = z.scale(&rat(-1));
                }
                entries.push(DiffEntry { src, tgt, z });
            }
        }
        diffs.push(entries);
    }
    Ok(ProjComplex { gamma: datum.weight_of(&mu(nu, i, n, 0)), terms, diffs })
}

/// `Ad^(n)(E_nu)`: terms `q_i^{k(n+w-1)} E_i^(n-k) E_nu E_i^(k)`, realised as
/// `H f_k` with `f_k = e_{n-k} ⋄ 1_nu ⋄ e_k`.
pub fn build_divided_complex(ctx: &KlrContext, n: usize, nu: &[Color], i: Color) -> Result<ProjComplex> {
    check_avoids(ctx, nu, i)?;
    let r = nu.len();
    let big = n + r;
    ctx.check_height(big)?;
    let datum = ctx.datum();
    let di = datum.d(i);
    let w = datum.pairing(i, &datum.weight_of(nu));
    let (n64, mut terms) = (n as i64, Vec::new());
    for k in 0..=n {
        let k64 = k as i64;
        let divided = -(n64 - k64) * (n64 - k64 - 1) / 2 - k64 * (k64 - 1) / 2;
        let shift = di * (k64 * (n64 + w - 1) + divided);
        let mut blocks = Vec::new();
        if k >= 2 {
            blocks.push((1, k));
        }
        if n - k >= 2 {
            blocks.push((k + r + 1, big));
        }
        terms.push(vec![CyclicProjective::new(ctx, mu(nu, i, n, k), blocks, shift)?]);
    }
    let mut diffs = vec![Vec::new()];
    for k in 1..=n {
        let tau = ctx.tau_word_on(&mu(nu, i, n, k - 1), &up(k, big - 1))?;
        let mut z = ctx.multiply(&ctx.multiply(&terms[k][0].f, &tau)?, &terms[k - 1][0].f)?;
        if k % 2 == 0 {
            z = z.scale(&rat(-1));
        }
        diffs.push(vec![DiffEntry { src: 0, tgt: 0, z }]);
    }
    Ok(ProjComplex { gamma: datum.weight_of(&mu(nu, i, n, 0)), terms, diffs })
}

impl ProjComplex {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Composite of consecutive differentials is zero, as elements.
    pub fn d_squared_zero(&self, ctx: &KlrContext) -> Result<bool> {
        for k in 2..self.terms.len() {
            for src in 0..self.terms[k].len() {
                for tgt in 0..self.terms[k - 2].len() {
                    let mut acc = KlrElement::zero(self.gamma.clone());
                    for a in self.diffs[k].iter().filter(|e| e.src == src) {
                        for b in self.diffs[k - 1].iter().filter(|e| e.src == a.tgt && e.tgt == tgt) {
                            acc.add_assign(&ctx.multiply(&a.z, &b.z)?);
                        }
                    }
                    if !acc.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every entry satisfies `f_src z f_tgt = z` and has degree `shift_tgt - shift_src`.
    pub fn entries_well_formed(&self, ctx: &KlrContext) -> Result<bool> {
        for k in 1..self.terms.len() {
            for e in &self.diffs[k] {
                let (s, t) = (&self.terms[k][e.src], &self.terms[k - 1][e.tgt]);
                let sandwiched = ctx.multiply(&ctx.multiply(&s.f, &e.z)?, &t.f)?;
                if sandwiched != e.z {
                    return Ok(false);
                }
                if !e.z.is_zero() && ctx.homogeneous_degree(&e.z) != Some(t.shift - s.shift) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Lowest internal degree occurring in any term.
    pub fn min_degree(&self, ctx: &KlrContext) -> i64 {
        self.terms
            .iter()
            .flatten()
            .flat_map(|t| t.generators(ctx).into_iter().map(move |g| g.degree - t.shift))
            .min()
            .unwrap_or(0)
    }
}

/// Per-term generator data with differential images `Y_w z`.
struct TermData {
    shift: i64,
    gens: Vec<Generator>,
    /// `images[g]`: list of (target summand, `Y_g z`).
    images: Vec<Vec<(usize, KlrElement)>>,
}

fn term_data(ctx: &KlrContext, cplx: &ProjComplex) -> Result<Vec<Vec<TermData>>> {
    let mut out = Vec::new();
    for (k, terms) in cplx.terms.iter().enumerate() {
        let data: Result<Vec<TermData>> = terms
            .par_iter()
            .enumerate()
            .map(|(src, t)| {
                let gens = t.generators(ctx);
                let mut images = Vec::with_capacity(gens.len());
                for g in &gens {
                    let mut row = Vec::new();
                    if k > 0 {
                        for e in cplx.diffs[k].iter().filter(|e| e.src == src) {
                            row.push((e.tgt, ctx.multiply(&g.y, &e.z)?));
                        }
                    }
                    images.push(row);
                }
                Ok(TermData { shift: t.shift, gens, images })
            })
            .collect();
        out.push(data?);
    }
    Ok(out)
}

type Column = (usize, Vec<Color>, Perm, Vec<u32>);

/// Basis vectors of `T_k` in internal degree `d`: (summand, generator, exponents).
fn basis_in_degree(ctx: &KlrContext, data: &[TermData], d: i64) -> Vec<(usize, usize, Vec<u32>)> {
    let mut out = Vec::new();
    for (s, t) in data.iter().enumerate() {
        for (gi, g) in t.gens.iter().enumerate() {
            let rest = d + t.shift - g.degree;
            if rest < 0 {
                continue;
            }
            let weights: Vec<u32> = g.left.iter().map(|&c| ctx.datum().dot(c, c) as u32).collect();
            if weights.is_empty() {
                if rest == 0 {
                    out.push((s, gi, Vec::new()));
                }
                continue;
            }
            for c in weighted_compositions(rest as u32, &weights) {
                out.push((s, gi, c));
            }
        }
    }
    out
}

fn image_row(data: &[TermData], v: &(usize, usize, Vec<u32>), cols: &mut Interner<Column>) -> SparseRow {
    let (s, gi, c) = v;
    let mut entries = Vec::new();
    for (tgt, img) in &data[*s].images[*gi] {
        for ((nu, w), p) in img.terms() {
            for (a, coef) in p.mul_monomial(c).terms() {
                entries.push((cols.id(&(*tgt, nu.clone(), w.clone(), a.clone())), coef.clone()));
            }
        }
    }
    crate::linalg::sparse_row(entries)
}

/// Matrix of `T_k -> T_{k-1}` in internal degree `d`; rows index the basis
/// of `T_k`, columns the normal form monomials met in the images.
pub fn graded_component_matrix(ctx: &KlrContext, cplx: &ProjComplex, k: usize, d: i64) -> Result<DenseMatrix> {
    let data = term_data(ctx, cplx)?;
    let basis = basis_in_degree(ctx, &data[k], d);
    let mut cols = Interner::new();
    let rows: Vec<SparseRow> =
        if k == 0 { basis.iter().map(|_| Vec::new()).collect() } else { basis.iter().map(|v| image_row(&data[k], v, &mut cols)).collect() };
    let mut m = DenseMatrix::zeros(rows.len(), cols.len());
    for (r, row) in rows.into_iter().enumerate() {
        for (c, x) in row {
            m.data[r][c as usize] = x;
        }
    }
    Ok(m)
}

/// Graded dimensions of a module refined by the colour word read on the
/// left, valid in degrees `lo..=hi` and zero below `lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedDims {
    pub lo: i64,
    pub hi: i64,
    pub parts: BTreeMap<Vec<Color>, LaurentPoly>,
}

impl RefinedDims {
    pub fn zero(lo: i64, hi: i64) -> Self {
        RefinedDims { lo, hi, parts: BTreeMap::new() }
    }

    fn clean(mut self) -> Self {
        let (lo, hi) = (self.lo, self.hi);
        for p in self.parts.values_mut() {
            *p = LaurentPoly::from_terms(p.terms().filter(|(e, _)| *e >= lo && *e <= hi).map(|(e, c)| (e, c.clone())));
        }
        self.parts.retain(|_, p| !p.is_zero());
        self
    }

    /// Dimensions of `E_nu = H 1_nu`.
    pub fn projective(ctx: &KlrContext, nu: &[Color], lo: i64, hi: i64) -> Result<Self> {
        let beta = ctx.datum().weight_of(nu);
        let mut parts = BTreeMap::new();
        for lam in ctx.sequences(&beta)? {
            parts.insert(lam.clone(), ctx.graded_dim(&lam, nu, lo, hi)?);
        }
        let lo = lo.min(projective_min_degree(ctx, nu));
        let mut out = RefinedDims { lo, hi, parts };
        if lo < out.parts.values().filter_map(LaurentPoly::min_exp).min().unwrap_or(lo) {
            // recompute the part below the requested window
            for (lam, p) in out.parts.iter_mut() {
                *p = ctx.graded_dim(lam, nu, lo, hi)?;
            }
        }
        Ok(out.clean())
    }

    /// Dimensions of the generator `E_i = K[x]`.
    pub fn generator(ctx: &KlrContext, i: Color, hi: i64) -> Self {
        let di = ctx.datum().d(i);
        let mut p = LaurentPoly::zero();
        let mut e = 0;
        while e <= hi {
            p.add_term(e, rat(1));
            e += 2 * di;
        }
        RefinedDims { lo: 0, hi, parts: [(vec![i], p)].into() }.clean()
    }

    /// Dimensions of the unit module `K` of weight zero.
    pub fn unit(hi: i64) -> Self {
        RefinedDims { lo: 0, hi, parts: [(vec![], LaurentPoly::one())].into() }.clean()
    }

    pub fn total(&self) -> LaurentPoly {
        self.parts.values().fold(LaurentPoly::zero(), |a, p| &a + p)
    }

    pub fn part(&self, lam: &[Color]) -> LaurentPoly {
        self.parts.get(lam).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// `q^s M`.
    pub fn shifted(&self, s: i64) -> Self {
        RefinedDims {
            lo: self.lo - s,
            hi: self.hi - s,
            parts: self.parts.iter().map(|(k, p)| (k.clone(), module_shift_series(s, p))).collect(),
        }
    }

    /// `a M` for a Laurent polynomial `a` with nonnegative coefficients.
    pub fn scaled(&self, a: &LaurentPoly) -> Self {
        let Some(top) = a.max_exp() else { return RefinedDims::zero(self.lo, self.hi) };
        let mut out = RefinedDims::zero(self.lo - top, self.hi - top);
        for (e, c) in a.terms() {
            let s = self.shifted(e);
            for (k, p) in s.parts {
                let slot = out.parts.entry(k).or_default();
                *slot = &*slot + &p.scale(c);
            }
        }
        out.clean()
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let mut out = RefinedDims::zero(self.lo.min(other.lo), self.hi.min(other.hi));
        for (k, p) in &self.parts {
            out.parts.insert(k.clone(), p.clone());
        }
        for (k, p) in &other.parts {
            let slot = out.parts.entry(k.clone()).or_default();
            *slot = &*slot + &p.scale(&rat(sign));
        }
        out.clean()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    /// `F_i M = 1_{i, beta-i} M`, refined by the remaining colours.
    pub fn restrict_top(&self, i: Color) -> Self {
        let mut out = RefinedDims::zero(self.lo, self.hi);
        for (k, p) in &self.parts {
            if k.last() == Some(&i) {
                out.parts.insert(k[..k.len() - 1].to_vec(), p.clone());
            }
        }
        out.clean()
    }

    /// `M N = H 1_{beta,gamma} (M ⊠ N)`: `self` on top. Induced bases are
    /// indexed by shuffles; a shuffle costs `-sum top . bottom` over the
    /// crossing pairs of strands.
    pub fn product(&self, other: &Self, datum: &CartanDatum) -> Self {
        let mut parts: BTreeMap<Vec<Color>, LaurentPoly> = BTreeMap::new();
        let mut tau_min = 0i64;
        let mut pieces = Vec::new();
        for (top, p) in &self.parts {
            for (bottom, q) in &other.parts {
                let pq = p * q;
                for (lam, deg) in shuffles(datum, top, bottom) {
                    tau_min = tau_min.min(deg);
                    pieces.push((lam, deg, pq.clone()));
                }
            }
        }
        if self.parts.is_empty() || other.parts.is_empty() {
            tau_min = 0;
        }
        for (lam, deg, pq) in pieces {
            let slot = parts.entry(lam).or_default();
            *slot = &*slot + &pq.shift(deg);
        }
        let lo = self.lo + other.lo + tau_min;
        let hi = (self.hi + other.lo).min(other.hi + self.lo) + tau_min;
        RefinedDims { lo, hi, parts }.clean()
    }

    /// Restricts validity to a window.
    pub fn within(&self, w: DegreeWindow) -> Self {
        RefinedDims { lo: self.lo.max(w.d_min), hi: self.hi.min(w.d_max), parts: self.parts.clone() }.clean()
    }

    /// Equality on the common valid range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let (lo, hi) = (self.lo.max(other.lo), self.hi.min(other.hi));
        let a = RefinedDims { lo, hi, parts: self.parts.clone() }.clean();
        let b = RefinedDims { lo, hi, parts: other.parts.clone() }.clean();
        a.parts == b.parts
    }
}

fn projective_min_degree(ctx: &KlrContext, nu: &[Color]) -> i64 {
    all_perms(nu.len()).iter().map(|w| ctx.tau_degree(nu, w)).min().unwrap_or(0)
}

/// Interleavings of `top` (upper positions) with `bottom`, as the resulting
/// left colour word and the degree of the crossing.
fn shuffles(datum: &CartanDatum, top: &[Color], bottom: &[Color]) -> Vec<(Vec<Color>, i64)> {
    let (r, s) = (top.len(), bottom.len());
    let mut out = Vec::new();
    // choose which of the r + s positions hold strands of `top`
    for chosen in k_subsets(r + s, r) {
        let mut lam = Vec::with_capacity(r + s);
        let (mut a, mut b) = (0, 0);
        let mut deg = 0;
        for pos in 1..=r + s {
            if chosen.contains(&pos) {
                // this top strand crosses every bottom strand placed above it
                lam.push(top[a]);
                a += 1;
            } else {
                // the bottom strand crosses the top strands already placed below it
                deg -= top[..a].iter().map(|&t| datum.dot(t, bottom[b])).sum::<i64>();
                lam.push(bottom[b]);
                b += 1;
            }
        }
        out.push((lam, deg));
    }
    out
}

/// Cohomology dimensions of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimTable {
    pub window: DegreeWindow,
    /// `(k, d) -> dim H^{-k}_d`, nonzero entries only.
    pub dims: BTreeMap<(usize, i64), u64>,
    /// `H^{-k}` refined by left colour word.
    pub refined: BTreeMap<usize, RefinedDims>,
    /// Degrees whose values are not trustworthy. Each degree is computed
    /// exactly, so this stays empty.
    pub edge: Vec<i64>,
    /// `(k, d) -> dim T_k` in degree `d`.
    pub term_dims: BTreeMap<(usize, i64), u64>,
}

impl GradedDimTable {
    /// `H^{-k}` as a Laurent polynomial over the window.
    pub fn h(&self, k: usize) -> LaurentPoly {
        LaurentPoly::from_terms(self.dims.iter().filter(|((kk, _), _)| *kk == k).map(|((_, d), &v)| (*d, rat(v as i64))))
    }

    pub fn is_exact(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn negative_degrees_vanish(&self) -> bool {
        self.dims.keys().all(|&(k, _)| k == 0)
    }

    /// Dimensions of `H^{-k}` restricted to left colour words starting (on
    /// the left) with `prefix` (display order).
    pub fn filtered(&self, k: usize, prefix: &[Color]) -> LaurentPoly {
        let Some(r) = self.refined.get(&k) else { return LaurentPoly::zero() };
        r.parts
            .iter()
            .filter(|(lam, _)| lam.iter().rev().take(prefix.len()).eq(prefix.iter()))
            .fold(LaurentPoly::zero(), |a, (_, p)| &a + p)
    }

    /// Euler characteristic of the terms and of the cohomology agree.
    pub fn euler_consistent(&self) -> bool {
        let mut degs: Vec<i64> = self.term_dims.keys().map(|k| k.1).collect();
        degs.dedup();
        degs.iter().all(|&d| {
            let sign = |k: usize| if k % 2 == 0 { 1i64 } else { -1 };
            let t: i64 = self.term_dims.iter().filter(|((_, dd), _)| *dd == d).map(|((k, _), &v)| sign(*k) * v as i64).sum();
            let h: i64 = self.dims.iter().filter(|((_, dd), _)| *dd == d).map(|((k, _), &v)| sign(*k) * v as i64).sum();
            t == h
        })
    }
}

/// Cohomology of `cplx` in each degree of `window`, computed exactly per
/// degree and per left colour word. The computation always starts at the
/// lowest degree of the complex so that refined tables are complete below.
pub fn cohomology_dims(ctx: &KlrContext, cplx: &ProjComplex, window: DegreeWindow) -> Result<GradedDimTable> {
    let data = term_data(ctx, cplx)?;
    let start = cplx.min_degree(ctx).min(window.d_min);
    let degrees: Vec<i64> = (start..=window.d_max).collect();
    let per_degree: Vec<Vec<(usize, Vec<Color>, u64, u64)>> = degrees
        .par_iter()
        .map(|&d| {
            // (k, lambda) -> (dim T_k, rank of d_k out of T_k)
            let mut stats: BTreeMap<(usize, Vec<Color>), (u64, u64)> = BTreeMap::new();
            for (k, terms) in data.iter().enumerate() {
                let mut blocks: BTreeMap<Vec<Color>, (Vec<(usize, usize, Vec<u32>)>,)> = BTreeMap::new();
                for v in basis_in_degree(ctx, terms, d) {
                    let lam = terms[v.0].gens[v.1].left.clone();
                    blocks.entry(lam).or_insert_with(|| (Vec::new(),)).0.push(v);
                }
                for (lam, (vs,)) in blocks {
                    let rank = if k == 0 {
                        0
                    } else {
                        let mut cols = Interner::new();
                        let mut e = Echelon::new();
                        for v in &vs {
                            e.insert(image_row(terms, v, &mut cols));
                        }
                        e.rank() as u64
                    };
                    stats.insert((k, lam), (vs.len() as u64, rank));
                }
            }
            let mut out = Vec::new();
            for ((k, lam), &(dim, rank)) in &stats {
                let incoming = stats.get(&(k + 1, lam.clone())).map_or(0, |s| s.1);
                out.push((*k, lam.clone(), dim, dim - rank - incoming));
            }
            out
        })
        .collect();
    let mut table = GradedDimTable {
        window,
        dims: BTreeMap::new(),
        refined: (0..cplx.terms.len()).map(|k| (k, RefinedDims::zero(start, window.d_max))).collect(),
        edge: Vec::new(),
        term_dims: BTreeMap::new(),
    };
    for (d, rows) in degrees.iter().zip(per_degree) {
        for (k, lam, dim, h) in rows {
            *table.term_dims.entry((k, *d)).or_default() += dim;
            if h > 0 {
                *table.dims.entry((k, *d)).or_default() += h;
                let r = table.refined.get_mut(&k).expect("k in range");
                r.parts.entry(lam).or_default().add_term(*d, rat(h as i64));
            }
        }
    }
    table.dims.retain(|(_, d), _| window.contains(*d));
    table.term_dims.retain(|(_, d), _| window.contains(*d));
    Ok(table)
}

/// `grk ad^(n)(E_j) = q_i^{-n(n-1)/2} prod_{k<n} (1 - q_i^{2(-c_ij - k)}) / ((1-q_i^2)^n (1-q_j^2))`.
pub fn grk_ad_divided_ej(datum: &CartanDatum, n: u32, i: Color, j: Color) -> RatFunc {
    let nn = n as i64;
    let di = datum.d(i);
    let rest = grk_product(datum, n, i, j);
    rest.mul_poly(&LaurentPoly::q_pow(-di * nn * (nn - 1) / 2))
}

/// `grk ad^n(E_j)`, the same product times `sum_{w in S_n} q_i^{-2 l(w)}`.
pub fn grk_ad_power_ej(datum: &CartanDatum, n: u32, i: Color, j: Color) -> RatFunc {
    let di = datum.d(i);
    let mut lengths = LaurentPoly::zero();
    for w in all_perms(n as usize) {
        lengths.add_term(-2 * di * w.length() as i64, rat(1));
    }
    grk_product(datum, n, i, j).mul_poly(&lengths)
}

fn grk_product(datum: &CartanDatum, n: u32, i: Color, j: Color) -> RatFunc {
    let di = datum.d(i);
    let c = -datum.c(i, j);
    let mut num = LaurentPoly::one();
    for k in 0..n as i64 {
        num = &num * &(&LaurentPoly::one() - &LaurentPoly::q_pow(2 * di * (c - k)));
    }
    let mut out = RatFunc::from_poly(num);
    for _ in 0..n {
        out = &out * &RatFunc::geometric(di);
    }
    &out * &RatFunc::geometric(datum.d(j))
}

/// Modules built from generators that the identity checks understand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `E_nu = H 1_nu`, colours in position order.
    Projective(Vec<Color>),
    /// `ad^(n)(E_nu)`, the degree zero cohomology of the divided complex.
    AdDivided { n: usize, nu: Vec<Color> },
}

impl ModuleSpec {
    pub fn weight(&self, datum: &CartanDatum, i: Color) -> RootVector {
        match self {
            ModuleSpec::Projective(nu) => datum.weight_of(nu),
            ModuleSpec::AdDivided { n, nu } => datum.weight_of(nu).add_color(i, *n as u32),
        }
    }
}

/// Refined graded dimensions of a module from the family, in `lo..=hi`.
pub fn module_dims(ctx: &KlrContext, m: &ModuleSpec, i: Color, hi: i64) -> Result<RefinedDims> {
    match m {
        ModuleSpec::Projective(nu) => RefinedDims::projective(ctx, nu, projective_min_degree(ctx, nu), hi),
        ModuleSpec::AdDivided { n, nu } => ad_divided_dims(ctx, *n, nu, i, hi),
    }
}

/// `ad^(n)(E_nu)` refined, via cohomology.
pub fn ad_divided_dims(ctx: &KlrContext, n: usize, nu: &[Color], i: Color, hi: i64) -> Result<RefinedDims> {
    let c = build_divided_complex(ctx, n, nu, i)?;
    let lo = c.min_degree(ctx);
    let t = cohomology_dims(ctx, &c, DegreeWindow::new(lo, hi.max(lo))?)?;
    Ok(t.refined[&0].clone())
}

/// `ad^n(E_nu)` refined, via cohomology of the undivided complex.
pub fn ad_power_dims(ctx: &KlrContext, n: usize, nu: &[Color], i: Color, hi: i64) -> Result<RefinedDims> {
    let c = build_ad_complex(ctx, n, nu, i)?;
    let lo = c.min_degree(ctx);
    let t = cohomology_dims(ctx, &c, DegreeWindow::new(lo, hi.max(lo))?)?;
    Ok(t.refined[&0].clone())
}

/// `ad_{E_i}` of a module in the family, computed by cohomology:
/// `ad(E_nu)` from `Ad^1`, `ad(ad^(n) E_nu) = [n+1]_i ad^(n+1)(E_nu)`.
pub fn ad_e_dims(ctx: &KlrContext, m: &ModuleSpec, i: Color, hi: i64) -> Result<RefinedDims> {
    let di = ctx.datum().d(i);
    match m {
        ModuleSpec::Projective(nu) => ad_power_dims(ctx, 1, nu, i, hi),
        ModuleSpec::AdDivided { n, nu } => {
            let q = quantum_integer(*n as i64 + 1, di);
            let top = q.max_exp().unwrap_or(0);
            Ok(ad_divided_dims(ctx, n + 1, nu, i, hi + top)?.scaled(&q))
        }
    }
}

/// `ad_{E_i} N` for arbitrary refined dims, through the exact sequence
/// `0 -> q_i^w N E_i -> E_i N -> ad N -> 0`.
pub fn ad_e_via_ses(ctx: &KlrContext, n_dims: &RefinedDims, beta: &RootVector, i: Color) -> RefinedDims {
    let datum = ctx.datum();
    let w = datum.pairing(i, beta);
    let ei = RefinedDims::generator(ctx, i, n_dims.hi + 4 * datum.d(i) + n_dims.hi.abs() + 64);
    let left = ei.product(n_dims, datum);
    let right = n_dims.product(&ei, datum).shifted(datum.d(i) * w);
    left.sub(&right)
}

/// `ad_{F_i} M = q_i^{1-w} F_i M`.
pub fn ad_f(datum: &CartanDatum, m: &RefinedDims, beta: &RootVector, i: Color) -> RefinedDims {
    let w = datum.pairing(i, beta);
    m.restrict_top(i).shifted(datum.d(i) * (1 - w))
}

/// Outcome of a dimension identity: both sides over the compared range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub lo: i64,
    pub hi: i64,
    pub holds: bool,
}

fn compare(lhs: &RefinedDims, rhs: &RefinedDims, window: DegreeWindow) -> IdentityCheck {
    let lo = lhs.lo.max(rhs.lo).max(window.d_min);
    let hi = lhs.hi.min(rhs.hi).min(window.d_max);
    let cut = |r: &RefinedDims| RefinedDims { lo, hi, parts: r.parts.clone() }.clean();
    let (a, b) = (cut(lhs), cut(rhs));
    // a check that stops short of the window proves nothing about the rest
    let covered = lo <= hi && hi == window.d_max;
    IdentityCheck { lhs: a.total(), rhs: b.total(), lo, hi, holds: a.parts == b.parts && covered }
}

/// Headroom above the window so that products stay valid inside it.
fn headroom(ctx: &KlrContext, beta: &RootVector) -> i64 {
    let h = beta.height() as i64 + 2;
    let dmax = ctx.datum().colors().map(|c| ctx.datum().d(c)).max().unwrap_or(1);
    dmax * h * h
}

/// `dim E_i M = dim q_i^w M E_i + dim ad_E M`, per degree and left colour word.
pub fn ses_identity_check(ctx: &KlrContext, m: &ModuleSpec, i: Color, window: DegreeWindow) -> Result<IdentityCheck> {
    let datum = ctx.datum();
    let beta = m.weight(datum, i);
    let hi = window.d_max + headroom(ctx, &beta);
    let dims = module_dims(ctx, m, i, hi)?;
    let ei = RefinedDims::generator(ctx, i, hi);
    let lhs = ei.product(&dims, datum);
    let w = datum.pairing(i, &beta);
    let shifted = dims.product(&ei, datum).shifted(datum.d(i) * w);
    let ad = ad_e_dims(ctx, m, i, hi)?;
    Ok(compare(&lhs, &shifted.add(&ad), window))
}

/// The filtration of `ad^n(MN)` with subquotients
/// `q_i^{(n - zeta(k)) w + 2 sigma(k)} ad^{zeta(k)}(M) ad^{n - zeta(k)}(N)`.
pub fn nderivation_check(ctx: &KlrContext, n: usize, m_nu: &[Color], n_nu: &[Color], i: Color, window: DegreeWindow) -> Result<IdentityCheck> {
    let datum = ctx.datum();
    let beta = datum.weight_of(m_nu);
    let w = datum.pairing(i, &beta);
    let mut both = n_nu.to_vec();
    both.extend_from_slice(m_nu);
    let hi = window.d_max + headroom(ctx, &datum.weight_of(&both).add_color(i, n as u32));
    let lhs = ad_power_dims(ctx, n, &both, i, hi)?;
    let power = |nu: &[Color], k: usize| -> Result<RefinedDims> {
        if k == 0 {
            RefinedDims::projective(ctx, nu, projective_min_degree(ctx, nu), hi)
        } else {
            ad_power_dims(ctx, k, nu, i, hi)
        }
    };
    let mut rhs: Option<RefinedDims> = None;
    for k in 0..(1u64 << n) {
        let z = zeta(k) as usize;
        let s = datum.d(i) * ((n - z) as i64 * w + 2 * sigma(k) as i64);
        let piece = power(m_nu, z)?.product(&power(n_nu, n - z)?, datum).shifted(s);
        rhs = Some(match rhs {
            None => piece,
            Some(acc) => acc.add(&piece),
        });
    }
    Ok(compare(&lhs, &rhs.expect("at least one piece"), window))
}

/// `ad_E ad_F M` against `ad_F ad_E M` with the `[|w|]_i M` correction.
pub fn mackey_shadow_check(ctx: &KlrContext, m: &ModuleSpec, i: Color, window: DegreeWindow) -> Result<IdentityCheck> {
    let datum = ctx.datum();
    let beta = m.weight(datum, i);
    let w = datum.pairing(i, &beta);
    let hi = window.d_max + headroom(ctx, &beta);
    let dims = module_dims(ctx, m, i, hi)?;
    let ef = if beta.get(i) == 0 {
        RefinedDims::zero(dims.lo, dims.hi)
    } else {
        let smaller = RootVector(beta.0.iter().enumerate().map(|(c, &b)| if c == i as usize { b - 1 } else { b }).collect());
        ad_e_via_ses(ctx, &ad_f(datum, &dims, &beta, i), &smaller, i)
    };
    let ad = ad_e_dims(ctx, m, i, hi)?;
    let fe = ad_f(datum, &ad, &beta.add_color(i, 1), i);
    let corr = dims.scaled(&quantum_integer(w.abs(), datum.d(i)));
    let (lhs, rhs) = if w >= 0 { (ef, fe.add(&corr)) } else { (ef.add(&corr), fe) };
    Ok(compare(&lhs, &rhs, window))
}

/// Result of the categorified Serre test for one `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub n: usize,
    pub m: usize,
    pub expected_exact: bool,
    pub quotient_zero: bool,
    pub exact: bool,
    pub h0_nonzero: bool,
    pub negative_vanish: bool,
    pub d_squared_zero: bool,
}

impl SerreReport {
    pub fn passes(&self) -> bool {
        self.d_squared_zero
            && self.negative_vanish
            && self.exact == self.expected_exact
            && self.quotient_zero == self.expected_exact
            && (self.expected_exact || self.h0_nonzero)
    }
}

/// `Ad^(n)(E_j^m)` is exact iff `n > -m c_ij`.
pub fn serre_exactness_check(ctx: &KlrContext, n: usize, m: usize, i: Color, j: Color, window_len: i64) -> Result<SerreReport> {
    let datum = ctx.datum();
    let nu = vec![j; m];
    let c = build_divided_complex(ctx, n, &nu, i)?;
    let lo = c.min_degree(ctx);
    let t = cohomology_dims(ctx, &c, DegreeWindow::new(lo, lo + window_len)?)?;
    let beta = datum.weight_of(&nu).add_color(i, n as u32);
    Ok(SerreReport {
        n,
        m,
        expected_exact: n as i64 > -(m as i64) * datum.c(i, j),
        quotient_zero: is_quotient_zero(datum, &beta, i),
        exact: t.is_exact(),
        h0_nonzero: !t.h(0).is_zero(),
        negative_vanish: t.negative_degrees_vanish(),
        d_squared_zero: c.d_squared_zero(ctx)?,
    })
}

/// Graded dimensions of the terms, as the alternating sum predicted by the
/// quantum binomial expansion of `ad^n(y)`.
pub fn ad_euler_series(ctx: &KlrContext, n: usize, nu: &[Color], i: Color, window: DegreeWindow) -> Result<LaurentPoly> {
    let datum = ctx.datum();
    let di = datum.d(i);
    let w = datum.pairing(i, &datum.weight_of(nu));
    let mut total = LaurentPoly::zero();
    for k in 0..=n {
        let muk = mu(nu, i, n, k);
        let dims = RefinedDims::projective(ctx, &muk, window.d_min - 64, window.d_max + 64)?.total();
        // q_i^{kw} q_i^{-k} ... : sum over subsets of q_i^{kw + 2(sum S - k)} as module shifts
        let mut mult = LaurentPoly::zero();
        for s in k_subsets(n, k) {
            let sum: usize = s.iter().sum();
            mult.add_term(di * (k as i64 * w + 2 * (sum as i64 - k as i64)), rat(1));
        }
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        for (e, c) in mult.terms() {
            total = &total + &module_shift_series(e, &dims).scale(&(c * &sign));
        }
    }
    Ok(total.truncate(window))
}

/// The support of `ad^(1)(E_j)` reaches every even degree of the window.
pub fn growth_check(ctx: &KlrContext, i: Color, j: Color, hi: i64) -> Result<bool> {
    let dims = ad_divided_dims(ctx, 1, &[j], i, hi)?.total();
    let step = 2 * ctx.datum().d(i).min(ctx.datum().d(j));
    Ok((0..=hi).step_by(step as usize).all(|d| !dims.coeff(d).is_zero()))
}

/// `tau_{[1..r+s]} 1_{i,beta,gamma}` is the composite `(tau_{E_i,M} N)(M tau_{E_i,N})`.
pub fn tau_product_check(ctx: &KlrContext, top: &[Color], bottom: &[Color], i: Color) -> Result<bool> {
    let (r, s) = (top.len(), bottom.len());
    let mut seq = bottom.to_vec();
    seq.extend_from_slice(top);
    seq.push(i);
    let whole = ctx.tau_word_on(&seq, &up(1, r + s))?;
    // M tau_{E_i,N}: i crosses the bottom block only
    let mut mid = bottom.to_vec();
    mid.push(i);
    mid.extend_from_slice(top);
    let first = ctx.tau_word_on(&mid, &up(1, s))?;
    let second = ctx.tau_word_on(&seq, &up(s + 1, r + s))?;
    Ok(ctx.multiply(&first, &second)? == whole && whole.coeff(&seq, &Perm::from_word(r + s + 1, &up(1, r + s))).is_some_and(|p| p.is_one_poly()))
}

trait PolyExt {
    fn is_one_poly(&self) -> bool;
}

impl PolyExt for Poly {
    fn is_one_poly(&self) -> bool {
        self.num_terms() == 1 && self.coeff(&vec![0; self.nvars()]).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::series_window;

    fn win(lo: i64, hi: i64) -> DegreeWindow {
        DegreeWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn vanishing_examples() {
        let a2 = CartanDatum::a2();
        assert!(is_quotient_zero(&a2, &RootVector(vec![2, 1]), 0));
        assert!(!is_quotient_zero(&a2, &RootVector(vec![1, 1]), 0));
        assert!(!is_quotient_zero(&a2, &RootVector(vec![0, 0]), 0));
    }

    #[test]
    fn tau_embed_examples() {
        let ctx = KlrContext::new(CartanDatum::a2());
        assert_eq!(tau_embed(&ctx, &RootVector(vec![0, 0]), 0).unwrap(), ctx.idem(&[0]).unwrap());
        let t = tau_embed(&ctx, &RootVector(vec![0, 1]), 0).unwrap();
        assert_eq!(ctx.homogeneous_degree(&t), Some(1));
        let t = tau_embed(&ctx, &RootVector(vec![1, 0]), 0).unwrap();
        assert_eq!(t, ctx.tau_on(&[0, 0], 1).unwrap());
        assert_eq!(ctx.homogeneous_degree(&t), Some(-2));
        let ctx = KlrContext::new(CartanDatum::b2_short_i());
        for beta in [RootVector(vec![0, 1]), RootVector(vec![1, 1]), RootVector(vec![0, 2])] {
            let t = tau_embed(&ctx, &beta, 0).unwrap();
            assert_eq!(ctx.homogeneous_degree(&t), Some(-ctx.datum().root_dot(&RootVector(vec![1, 0]), &beta)));
        }
    }

    #[test]
    fn complexes_are_complexes() {
        for datum in [CartanDatum::a2(), CartanDatum::b2_short_i(), CartanDatum::b2_long_i()] {
            let ctx = KlrContext::new(datum);
            for n in 0..=3 {
                for nu in [vec![1], vec![1, 1]] {
                    if n + nu.len() > 4 {
                        continue;
                    }
                    let c = build_ad_complex(&ctx, n, &nu, 0).unwrap();
                    assert!(c.d_squared_zero(&ctx).unwrap(), "Ad^{n} on {nu:?}");
                    assert!(c.entries_well_formed(&ctx).unwrap());
                    let c = build_divided_complex(&ctx, n, &nu, 0).unwrap();
                    assert!(c.d_squared_zero(&ctx).unwrap(), "Ad^({n}) on {nu:?}");
                    assert!(c.entries_well_formed(&ctx).unwrap());
                }
            }
        }
    }

    #[test]
    fn divided_differential_absorbs_right_idempotent() {
        let ctx = KlrContext::new(CartanDatum::b2_short_i());
        let (n, nu) = (3usize, vec![1u8]);
        let c = build_divided_complex(&ctx, n, &nu, 0).unwrap();
        for k in 1..=n {
            let tau = ctx.tau_word_on(&mu(&nu, 0, n, k - 1), &up(k, n)).unwrap();
            let lhs = ctx.multiply(&c.terms[k][0].f, &tau).unwrap();
            let sign = if k % 2 == 0 { rat(-1) } else { rat(1) };
            assert_eq!(c.diffs[k][0].z, lhs.scale(&sign));
        }
    }

    #[test]
    fn small_complex_shapes() {
        let ctx = KlrContext::new(CartanDatum::a2());
        let c = build_ad_complex(&ctx, 0, &[1], 0).unwrap();
        assert_eq!(c.terms.len(), 1);
        let c = build_ad_complex(&ctx, 1, &[1], 0).unwrap();
        assert_eq!(c.terms[1][0].shift, -1);
        assert_eq!(c.diffs[1][0].z, tau_embed(&ctx, &RootVector(vec![0, 1]), 0).unwrap().restrict_right(&[1, 0]));
        let c = build_ad_complex(&ctx, 2, &[1], 0).unwrap();
        assert_eq!(c.terms.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 1]);
        let d = build_divided_complex(&ctx, 2, &[1], 0).unwrap();
        // w = -1: shifts k(n + w - 1) minus the divided-power corrections
        assert_eq!(d.terms.iter().map(|t| t[0].shift).collect::<Vec<_>>(), vec![-1, 0, -1]);
        let one = build_divided_complex(&ctx, 1, &[1], 0).unwrap();
        let plain = build_ad_complex(&ctx, 1, &[1], 0).unwrap();
        assert_eq!(one.diffs[1][0].z, plain.diffs[1][0].z);
    }

    #[test]
    fn component_matrix_examples() {
        let ctx = KlrContext::new(CartanDatum::a2());
        let c = build_ad_complex(&ctx, 1, &[1], 0).unwrap();
        let lo = c.min_degree(&ctx);
        // the first differential is injective
        let mut seen = 0;
        for d in lo..lo + 6 {
            let m = graded_component_matrix(&ctx, &c, 1, d).unwrap();
            assert_eq!(m.rank(), m.rows);
            seen += m.rows;
        }
        assert!(seen > 0);
        let z = graded_component_matrix(&ctx, &c, 0, 0).unwrap();
        assert!(z.is_zero());
        let empty = graded_component_matrix(&ctx, &c, 1, lo - 1).unwrap();
        assert_eq!((empty.rows, empty.rank()), (0, 0));
    }

    #[test]
    fn projective_cohomology_is_pbw_count() {
        let ctx = KlrContext::new(CartanDatum::a2());
        let c = build_ad_complex(&ctx, 0, &[1, 0], 1).unwrap_err();
        assert!(matches!(c, Error::Input(_)));
        let c = build_ad_complex(&ctx, 0, &[1, 1], 0).unwrap();
        let t = cohomology_dims(&ctx, &c, win(-4, 8)).unwrap();
        let pbw = ctx.graded_dim(&[1, 1], &[1, 1], -4, 8).unwrap();
        assert_eq!(t.h(0), pbw);
    }

    #[test]
    fn chevalley_graded_ranks() {
        let cases = [(CartanDatum::a2(), 1u32), (CartanDatum::b2_short_i(), 1), (CartanDatum::b2_short_i(), 2), (CartanDatum::b2_long_i(), 1)];
        for (datum, n) in cases {
            let ctx = KlrContext::new(datum.clone());
            let c = build_divided_complex(&ctx, n as usize, &[1], 0).unwrap();
            let lo = c.min_degree(&ctx);
            let t = cohomology_dims(&ctx, &c, win(lo, 12)).unwrap();
            let expect = series_window(&grk_ad_divided_ej(&datum, n, 0, 1), win(lo, 12)).unwrap();
            assert_eq!(t.h(0), expect, "n = {n}");
            assert!(t.negative_degrees_vanish());
            assert!(t.euler_consistent());
        }
        let a2 = CartanDatum::a2();
        assert_eq!(grk_ad_divided_ej(&a2, 1, 0, 1), RatFunc::geometric(1));
        assert!(grk_ad_divided_ej(&a2, 2, 0, 1).is_zero());
        assert_eq!(grk_ad_divided_ej(&a2, 0, 0, 1), RatFunc::geometric(1));
    }

    #[test]
    fn undivided_ranks_match_formula() {
        let datum = CartanDatum::b2_short_i();
        let ctx = KlrContext::new(datum.clone());
        for n in 1..=2u32 {
            let c = build_ad_complex(&ctx, n as usize, &[1], 0).unwrap();
            let lo = c.min_degree(&ctx);
            let t = cohomology_dims(&ctx, &c, win(lo, 10)).unwrap();
            assert_eq!(t.h(0), series_window(&grk_ad_power_ej(&datum, n, 0, 1), win(lo, 10)).unwrap());
            assert!(t.negative_degrees_vanish());
        }
    }

    #[test]
    fn euler_characteristic_matches_binomial_expansion() {
        let ctx = KlrContext::new(CartanDatum::a2());
        for n in 1..=2 {
            let c = build_ad_complex(&ctx, n, &[1], 0).unwrap();
            let w = win(c.min_degree(&ctx), 8);
            let t = cohomology_dims(&ctx, &c, w).unwrap();
            let mut chi = LaurentPoly::zero();
            for ((k, d), v) in &t.term_dims {
                chi.add_term(*d, rat(if k % 2 == 0 { *v as i64 } else { -(*v as i64) }));
            }
            assert_eq!(chi, ad_euler_series(&ctx, n, &[1], 0, w).unwrap());
        }
    }

    #[test]
    fn refined_products_match_pbw_counts() {
        let ctx = KlrContext::new(CartanDatum::b2_short_i());
        let datum = ctx.datum();
        let ei = RefinedDims::generator(&ctx, 0, 40);
        let ej = RefinedDims::generator(&ctx, 1, 40);
        let prod = ei.product(&ej, datum).product(&ei, datum);
        let direct = RefinedDims::projective(&ctx, &[0, 1, 0], -20, 40).unwrap();
        assert!(prod.agrees_with(&direct));
        assert!(prod.hi >= 20);
        let unit = RefinedDims::unit(40);
        assert!(unit.product(&ei, datum).agrees_with(&ei));
    }

    #[test]
    fn ses_for_generators() {
        let ctx = KlrContext::new(CartanDatum::a2());
        for m in [ModuleSpec::Projective(vec![1]), ModuleSpec::Projective(vec![1, 1])] {
            let r = ses_identity_check(&ctx, &m, 0, win(-6, 8)).unwrap();
            assert!(r.holds, "{m:?}: {r:?}");
        }
    }

    #[test]
    fn tau_product_small() {
        let ctx = KlrContext::new(CartanDatum::b2_long_i());
        for (top, bottom) in [(vec![1], vec![1]), (vec![0], vec![1]), (vec![1, 0], vec![1]), (vec![], vec![1, 1])] {
            assert!(tau_product_check(&ctx, &top, &bottom, 0).unwrap());
        }
    }

    #[test]
    fn growth_in_a2() {
        let ctx = KlrContext::new(CartanDatum::a2());
        assert!(growth_check(&ctx, 0, 1, 16).unwrap());
    }
}
