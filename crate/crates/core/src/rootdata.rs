//! Cartan data, the positive root cone `Q+`, and colour sequences.
//!
//! Colours are dense indices into the datum's index set. A colour sequence
//! `nu` is stored in position order: `nu[p - 1]` is the colour at position `p`,
//! positions being numbered from the right. Display order (as in `1[a,b,c]`)
//! is the reverse.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::qring::{rat_from_str, Rat};

pub type Color = u8;

/// Extra data for one ordered pair in the `Q` table: the units `t_ij`, `t_ji`
/// and middle monomials `coeff * u^s v^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPairSpec {
    pub i: Color,
    pub j: Color,
    pub t_ij: Rat,
    pub t_ji: Rat,
    pub extra: Vec<(u32, u32, Rat)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    labels: Vec<String>,
    dot: Vec<Vec<i64>>,
    q_specs: Vec<QPairSpec>,
}

impl CartanDatum {
    pub fn new(labels: Vec<String>, dot: Vec<Vec<i64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Cartan("index set is empty".into()));
        }
        if n > Color::MAX as usize {
            return Err(Error::Cartan("index set too large".into()));
        }
        for (a, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(|c: char| c == ',' || c == '[' || c == ']' || c.is_whitespace()) {
                return Err(Error::Cartan(format!("label {l:?} is not a plain identifier")));
            }
            if labels[..a].contains(l) {
                return Err(Error::Cartan(format!("duplicate label {l:?}")));
            }
        }
        if dot.len() != n || dot.iter().any(|r| r.len() != n) {
            return Err(Error::Cartan(format!("dot matrix must be {n}x{n}")));
        }
        for a in 0..n {
            for b in 0..n {
                if dot[a][b] != dot[b][a] {
                    return Err(Error::Cartan(format!(
                        "dot matrix not symmetric: {}.{} = {} but {}.{} = {}",
                        labels[a], labels[b], dot[a][b], labels[b], labels[a], dot[b][a]
                    )));
                }
            }
            if dot[a][a] <= 0 || dot[a][a] % 2 != 0 {
                return Err(Error::Cartan(format!(
                    "{l}.{l} = {v} must be a positive even integer",
                    l = labels[a],
                    v = dot[a][a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                if dot[a][b] > 0 {
                    return Err(Error::Cartan(format!("{}.{} = {} must be <= 0", labels[a], labels[b], dot[a][b])));
                }
                if (2 * dot[a][b]) % dot[a][a] != 0 {
                    return Err(Error::Cartan(format!(
                        "c_{{{},{}}} = 2({}.{})/({}.{}) is not an integer",
                        labels[a], labels[b], labels[a], labels[b], labels[a], labels[a]
                    )));
                }
            }
        }
        Ok(CartanDatum { labels, dot, q_specs: Vec::new() })
    }

    /// Parses `{"index_set": [...], "dot": [[...]], "Q": [...]}`.
    ///
    /// Each `Q` entry reads `{"pair": ["i","j"], "t": [t_ij, t_ji], "extra": [{"s":1,"t":1,"coeff":"1"}]}`
    /// and describes `Q_ij(u,v) = t_ij u^{-c_ij} + t_ji v^{-c_ji} + sum coeff u^s v^t`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let labels: Vec<String> = v
            .get("index_set")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Cartan("missing \"index_set\" array".into()))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Cartan("index labels must be strings".into())))
            .collect::<Result<_>>()?;
        let dot: Vec<Vec<i64>> = v
            .get("dot")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Cartan("missing \"dot\" matrix".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Cartan("dot rows must be arrays".into()))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Cartan("dot entries must be integers".into())))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let mut datum = CartanDatum::new(labels, dot)?;
        if let Some(q) = v.get("Q") {
            let entries = q.as_array().ok_or_else(|| Error::Cartan("\"Q\" must be an array".into()))?;
            for e in entries {
                datum.add_q_spec(datum.parse_q_entry(e)?)?;
            }
        }
        Ok(datum)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    fn parse_q_entry(&self, e: &Value) -> Result<QPairSpec> {
        let pair = e
            .get("pair")
            .and_then(Value::as_array)
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Cartan("Q entry needs \"pair\": [i, j]".into()))?;
        let lab = |x: &Value| -> Result<Color> {
            let s = x.as_str().ok_or_else(|| Error::Cartan("Q pair labels must be strings".into()))?;
            self.color(s)
        };
        let (i, j) = (lab(&pair[0])?, lab(&pair[1])?);
        let scalar = |x: &Value| -> Result<Rat> {
            match x {
                Value::String(s) => rat_from_str(s).map_err(|e| Error::Cartan(e.to_string())),
                Value::Number(n) => n
                    .as_i64()
                    .map(crate::qring::rat)
                    .ok_or_else(|| Error::Cartan("Q scalars must be integers or \"p/q\" strings".into())),
                _ => Err(Error::Cartan("Q scalars must be integers or \"p/q\" strings".into())),
            }
        };
        let (t_ij, t_ji) = match e.get("t") {
            None => (crate::qring::rat(1), crate::qring::rat(1)),
            Some(t) => {
                let t = t.as_array().filter(|t| t.len() == 2).ok_or_else(|| Error::Cartan("\"t\" must be [t_ij, t_ji]".into()))?;
                (scalar(&t[0])?, scalar(&t[1])?)
            }
        };
        let mut extra = Vec::new();
        if let Some(x) = e.get("extra") {
            for m in x.as_array().ok_or_else(|| Error::Cartan("\"extra\" must be an array".into()))? {
                let s = m.get("s").and_then(Value::as_u64).ok_or_else(|| Error::Cartan("extra term needs \"s\"".into()))?;
                let t = m.get("t").and_then(Value::as_u64).ok_or_else(|| Error::Cartan("extra term needs \"t\"".into()))?;
                let c = scalar(m.get("coeff").ok_or_else(|| Error::Cartan("extra term needs \"coeff\"".into()))?)?;
                extra.push((s as u32, t as u32, c));
            }
        }
        Ok(QPairSpec { i, j, t_ij, t_ji, extra })
    }

    /// Registers a custom `Q_ij`. Checks that the units are invertible and
    /// that extra monomials have the right degree.
    pub fn add_q_spec(&mut self, spec: QPairSpec) -> Result<()> {
        let (i, j) = (spec.i, spec.j);
        let (li, lj) = (&self.labels[i as usize], &self.labels[j as usize]);
        if i == j {
            return Err(Error::Cartan(format!("Q_{{{li},{li}}} is fixed to 0 and cannot be configured")));
        }
        use num_traits::Zero;
        if spec.t_ij.is_zero() || spec.t_ji.is_zero() {
            return Err(Error::Cartan(format!("t for pair ({li},{lj}) must be invertible, got 0")));
        }
        let target = -self.dot(i, j);
        for (s, t, _) in &spec.extra {
            if *s == 0 || *t == 0 {
                return Err(Error::Cartan(format!("extra term u^{s} v^{t} for ({li},{lj}) needs s, t > 0")));
            }
            let deg = self.d(i) * *s as i64 + self.d(j) * *t as i64;
            if deg != target {
                return Err(Error::Cartan(format!(
                    "extra term u^{s} v^{t} for ({li},{lj}) has weighted degree {deg}, expected {target}"
                )));
            }
        }
        // Store in the orientation (i, j); a spec for (j, i) is the same data flipped.
        let flipped = QPairSpec {
            i: j,
            j: i,
            t_ij: spec.t_ji.clone(),
            t_ji: spec.t_ij.clone(),
            extra: spec.extra.iter().map(|(s, t, c)| (*t, *s, c.clone())).collect(),
        };
        if let Some(old) = self.q_specs.iter().find(|o| (o.i, o.j) == (j, i)) {
            if *old != flipped {
                return Err(Error::Cartan(format!("Q entries for ({li},{lj}) and ({lj},{li}) disagree")));
            }
            return Ok(());
        }
        self.q_specs.retain(|o| (o.i, o.j) != (i, j));
        self.q_specs.push(spec);
        Ok(())
    }

    /// Configured data for `Q_ij` in orientation `(i, j)`, if any.
    pub fn q_spec(&self, i: Color, j: Color) -> Option<QPairSpec> {
        for s in &self.q_specs {
            if (s.i, s.j) == (i, j) {
                return Some(s.clone());
            }
            if (s.i, s.j) == (j, i) {
                return Some(QPairSpec {
                    i,
                    j,
                    t_ij: s.t_ji.clone(),
                    t_ji: s.t_ij.clone(),
                    extra: s.extra.iter().map(|(a, b, c)| (*b, *a, c.clone())).collect(),
                });
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, c: Color) -> &str {
        &self.labels[c as usize]
    }

    pub fn color(&self, label: &str) -> Result<Color> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|p| p as Color)
            .ok_or_else(|| Error::Input(format!("unknown index {label:?}")))
    }

    /// `i . j`
    pub fn dot(&self, i: Color, j: Color) -> i64 {
        self.dot[i as usize][j as usize]
    }

    pub fn dot_matrix(&self) -> &[Vec<i64>] {
        &self.dot
    }

    /// `d_i = (i . i) / 2`
    pub fn d(&self, i: Color) -> i64 {
        self.dot(i, i) / 2
    }

    /// `c_ij = 2 (i . j) / (i . i)`
    pub fn c(&self, i: Color, j: Color) -> i64 {
        2 * self.dot(i, j) / self.dot(i, i)
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> {
        0..self.labels.len() as Color
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "index_set": self.labels, "dot": self.dot })
    }

    /// Type `A2`: labels `i`, `j`.
    pub fn a2() -> Self {
        Self::new(vec!["i".into(), "j".into()], vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    /// Type `B2` with `i` short: `c_ij = -2`, `c_ji = -1`.
    pub fn b2_short_i() -> Self {
        Self::new(vec!["i".into(), "j".into()], vec![vec![2, -2], vec![-2, 4]]).unwrap()
    }

    /// Type `B2` with `i` long: `c_ij = -1`, `c_ji = -2`.
    pub fn b2_long_i() -> Self {
        Self::new(vec!["i".into(), "j".into()], vec![vec![4, -2], vec![-2, 2]]).unwrap()
    }

    /// Type `G2` with `i` short: `c_ij = -3`, `c_ji = -1`.
    pub fn g2_short_i() -> Self {
        Self::new(vec!["i".into(), "j".into()], vec![vec![2, -3], vec![-3, 6]]).unwrap()
    }

    pub fn root(&self, coeffs: &[(Color, u32)]) -> RootVector {
        let mut v = vec![0u32; self.rank()];
        for &(c, k) in coeffs {
            v[c as usize] += k;
        }
        RootVector(v)
    }

    pub fn zero_root(&self) -> RootVector {
        RootVector(vec![0; self.rank()])
    }

    /// `<i^vee, beta> = sum_j c_ij beta_j`
    pub fn pairing(&self, i: Color, beta: &RootVector) -> i64 {
        beta.0.iter().enumerate().map(|(j, &b)| self.c(i, j as Color) * b as i64).sum()
    }

    /// `beta . gamma`
    pub fn root_dot(&self, beta: &RootVector, gamma: &RootVector) -> i64 {
        let mut s = 0;
        for (a, &x) in beta.0.iter().enumerate() {
            for (b, &y) in gamma.0.iter().enumerate() {
                s += self.dot[a][b] * x as i64 * y as i64;
            }
        }
        s
    }

    /// `s_i(beta) = beta - <i^vee, beta> i`, with a flag telling whether it stays in `Q+`.
    pub fn reflect(&self, i: Color, beta: &RootVector) -> (Vec<i64>, bool) {
        let w = self.pairing(i, beta);
        let mut v: Vec<i64> = beta.0.iter().map(|&b| b as i64).collect();
        v[i as usize] -= w;
        let inside = v.iter().all(|&x| x >= 0);
        (v, inside)
    }

    /// Weight of a colour sequence.
    pub fn weight_of(&self, nu: &[Color]) -> RootVector {
        let mut v = vec![0u32; self.rank()];
        for &c in nu {
            v[c as usize] += 1;
        }
        RootVector(v)
    }

    /// Parses a label list in display order (leftmost = highest position) into
    /// a position-ordered sequence.
    pub fn parse_sequence(&self, labels: &[&str]) -> Result<Vec<Color>> {
        let mut nu = labels.iter().map(|l| self.color(l.trim())).collect::<Result<Vec<_>>>()?;
        nu.reverse();
        Ok(nu)
    }

    /// Display form `i,j,...` (leftmost = highest position).
    pub fn show_sequence(&self, nu: &[Color]) -> String {
        nu.iter().rev().map(|&c| self.label(c)).collect::<Vec<_>>().join(",")
    }

    pub fn show_root(&self, beta: &RootVector) -> String {
        let parts: Vec<String> = beta
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(a, &k)| if k == 1 { self.labels[a].clone() } else { format!("{k}{}", self.labels[a]) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// Element of `Q+`, dense over the index set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<u32>);

impl RootVector {
    pub fn height(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn get(&self, c: Color) -> u32 {
        self.0[c as usize]
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_color(&self, c: Color, k: u32) -> RootVector {
        let mut v = self.0.clone();
        v[c as usize] += k;
        RootVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// All colour sequences of weight `beta`, in position order, sorted lexicographically.
pub fn sequences(beta: &RootVector, height_bound: usize) -> Result<Vec<Vec<Color>>> {
    let n = beta.height();
    if n > height_bound {
        return Err(Error::Resource(format!("height {n} exceeds bound {height_bound}")));
    }
    let mut out = Vec::new();
    let mut left = beta.0.clone();
    let mut cur = Vec::with_capacity(n);
    fn rec(left: &mut Vec<u32>, cur: &mut Vec<Color>, n: usize, out: &mut Vec<Vec<Color>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..left.len() {
            if left[c] > 0 {
                left[c] -= 1;
                cur.push(c as Color);
                rec(left, cur, n, out);
                cur.pop();
                left[c] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, n, &mut out);
    Ok(out)
}

/// Nonzero weights of height at most `max_height`, by height then lexicographically.
pub fn weights_up_to(rank: usize, max_height: usize) -> Vec<RootVector> {
    let mut out = Vec::new();
    let mut layer = vec![vec![0u32; rank]];
    for _ in 0..max_height {
        let mut next: Vec<Vec<u32>> = Vec::new();
        for v in &layer {
            for c in 0..rank {
                let mut w = v.clone();
                w[c] += 1;
                if !next.contains(&w) {
                    next.push(w);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned().map(RootVector));
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weight_enumeration() {
        let w = weights_up_to(2, 2);
        assert_eq!(w.len(), 5);
        assert!(w.iter().all(|b| (1..=2).contains(&b.height())));
        assert_eq!(weights_up_to(1, 3), vec![RootVector(vec![1]), RootVector(vec![2]), RootVector(vec![3])]);
    }

    #[test]
    fn heights_and_pairings() {
        let a2 = CartanDatum::a2();
        assert_eq!(a2.zero_root().height(), 0);
        assert_eq!(a2.root(&[(0, 1), (1, 1)]).height(), 2);
        assert_eq!(a2.root(&[(0, 3), (1, 2)]).height(), 5);
        assert_eq!(a2.pairing(0, &a2.root(&[(0, 1), (1, 1)])), 1);
        assert_eq!(a2.pairing(0, &a2.root(&[(0, 1)])), 2);
        let b2 = CartanDatum::b2_short_i();
        assert_eq!(b2.pairing(0, &b2.root(&[(1, 1)])), -2);
        assert_eq!(b2.c(1, 0), -1);
        let g2 = CartanDatum::g2_short_i();
        assert_eq!((g2.c(0, 1), g2.c(1, 0)), (-3, -1));
    }

    #[test]
    fn reflections() {
        let a2 = CartanDatum::a2();
        assert_eq!(a2.reflect(0, &a2.root(&[(0, 1)])), (vec![-1, 0], false));
        assert_eq!(a2.reflect(0, &a2.root(&[(0, 1), (1, 1)])), (vec![0, 1], true));
        assert_eq!(a2.reflect(0, &a2.root(&[(0, 2), (1, 1)])), (vec![-1, 1], false));
    }

    #[test]
    fn sequence_counts() {
        let a2 = CartanDatum::a2();
        assert_eq!(sequences(&a2.root(&[(0, 1)]), 6).unwrap(), vec![vec![0]]);
        assert_eq!(sequences(&a2.root(&[(0, 1), (1, 1)]), 6).unwrap().len(), 2);
        assert_eq!(sequences(&a2.root(&[(0, 2), (1, 1)]), 6).unwrap().len(), 3);
        assert!(sequences(&a2.root(&[(0, 5), (1, 2)]), 6).is_err());
    }

    #[test]
    fn validation_messages() {
        let bad = |dot: Vec<Vec<i64>>| CartanDatum::new(vec!["i".into(), "j".into()], dot).unwrap_err().to_string();
        assert!(bad(vec![vec![2, -1], vec![-2, 2]]).contains("not symmetric"));
        assert!(bad(vec![vec![3, -1], vec![-1, 2]]).contains("positive even"));
        assert!(bad(vec![vec![2, 1], vec![1, 2]]).contains("<= 0"));
        assert!(bad(vec![vec![4, -1], vec![-1, 2]]).contains("not an integer"));
    }

    #[test]
    fn json_with_q_block() {
        let s = r#"{"index_set":["i","j"],"dot":[[2,-1],[-1,2]],
                    "Q":[{"pair":["j","i"],"t":[2,"-1/3"]}]}"#;
        let d = CartanDatum::from_json_str(s).unwrap();
        let q = d.q_spec(0, 1).unwrap();
        assert_eq!(q.t_ij, crate::qring::rat_frac(-1, 3));
        assert_eq!(q.t_ji, crate::qring::rat(2));
        let zero = r#"{"index_set":["i","j"],"dot":[[2,-1],[-1,2]],"Q":[{"pair":["i","j"],"t":[0,1]}]}"#;
        assert!(CartanDatum::from_json_str(zero).unwrap_err().to_string().contains("invertible"));
    }

    fn multinomial(beta: &RootVector) -> usize {
        let f = |n: usize| (1..=n).product::<usize>();
        f(beta.height()) / beta.0.iter().map(|&k| f(k as usize)).product::<usize>()
    }

    proptest! {
        #[test]
        fn sequence_count_is_multinomial(a in 0u32..4, b in 0u32..4) {
            let d = CartanDatum::a2();
            let beta = d.root(&[(0, a), (1, b)]);
            prop_assume!(beta.height() <= 6);
            let seqs = sequences(&beta, 6).unwrap();
            prop_assert_eq!(seqs.len(), multinomial(&beta));
            prop_assert!(seqs.iter().all(|s| d.weight_of(s) == beta));
        }

        #[test]
        fn reflection_is_involution(a in 0u32..6, b in 0u32..6, i in 0u8..2) {
            let d = CartanDatum::b2_short_i();
            let beta = d.root(&[(0, a), (1, b)]);
            let (r, _) = d.reflect(i, &beta);
            // Reflect the signed vector again by hand.
            let w: i64 = r.iter().enumerate().map(|(j, &x)| d.c(i, j as u8) * x).sum();
            let mut back = r.clone();
            back[i as usize] -= w;
            prop_assert_eq!(back, beta.0.iter().map(|&x| x as i64).collect::<Vec<_>>());
        }

        #[test]
        fn pairing_is_linear(a in 0u32..5, b in 0u32..5, c in 0u32..5, e in 0u32..5) {
            let d = CartanDatum::g2_short_i();
            let x = d.root(&[(0, a), (1, b)]);
            let y = d.root(&[(0, c), (1, e)]);
            for i in 0..2u8 {
                prop_assert_eq!(d.pairing(i, &x.add(&y)), d.pairing(i, &x) + d.pairing(i, &y));
            }
        }
    }
}
