//! Sparse exact row reduction over the rationals.

use std::collections::HashMap;
use std::hash::Hash;

use num_traits::{One, Zero};

use crate::qring::Rat;

/// Sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(u32, Rat)>;

/// Incrementally built row-echelon basis. Every stored row is normalised to
/// leading coefficient one and keyed by its leading column.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    pivots: HashMap<u32, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; returns the (possibly zero) remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        while start < row.len() {
            let (c, coef) = (row[start].0, row[start].1.clone());
            match self.pivots.get(&c) {
                Some(p) => {
                    row = axpy(&row, p, &coef);
                    // All entries before `start` were left untouched, and the
                    // entry at `start` cancelled.
                }
                None => start += 1,
            }
        }
        row
    }

    /// Inserts a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        let inv = row[0].1.recip();
        let row: SparseRow = row.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.pivots.insert(row[0].0, row);
        true
    }

    /// Reduces only until the leading column is free of pivots.
    fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        while let Some((c, coef)) = row.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, p, &coef),
                None => break,
            }
        }
        row
    }
}

/// `a - s * b` for sparse rows.
fn axpy(a: &SparseRow, b: &SparseRow, s: &Rat) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0).unwrap_or(u32::MAX);
        let cb = b.get(j).map(|x| x.0).unwrap_or(u32::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(&b[j].1 * s)));
            j += 1;
        } else {
            let v = &a[i].1 - &b[j].1 * s;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Assigns dense column indices to arbitrary keys.
#[derive(Debug, Clone)]
pub struct Interner<K: Hash + Eq + Clone> {
    index: HashMap<K, u32>,
    keys: Vec<K>,
}

impl<K: Hash + Eq + Clone> Default for Interner<K> {
    fn default() -> Self {
        Interner { index: HashMap::new(), keys: Vec::new() }
    }
}

impl<K: Hash + Eq + Clone> Interner<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn id(&mut self, k: &K) -> u32 {
        if let Some(&i) = self.index.get(k) {
            return i;
        }
        let i = self.keys.len() as u32;
        self.index.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<u32> {
        self.index.get(k).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: u32) -> &K {
        &self.keys[i as usize]
    }
}

/// Builds a sorted sparse row from unsorted `(column, value)` pairs, merging duplicates.
pub fn sparse_row<I: IntoIterator<Item = (u32, Rat)>>(entries: I) -> SparseRow {
    let mut v: Vec<(u32, Rat)> = entries.into_iter().collect();
    v.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dense rational matrix, used where callers want to inspect entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rat>>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![vec![Rat::zero(); cols]; rows] }
    }

    pub fn rank(&self) -> usize {
        rank(self.data.iter().map(|r| {
            r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c as u32, x.clone())).collect()
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }
}
