//! Verification suites and their JSON reports.

use klr_core::adjoint::{is_quotient_zero, mackey_shadow_check, serre_exactness_check, ses_identity_check, ModuleSpec};
use klr_core::klr::{sequences_avoiding, KlrContext};
use klr_core::nilhecke::{divided_power_rank_identity, idempotent_e, nh_multiply, oracle_disagreements};
use klr_core::qring::{DegreeWindow, RatFunc};
use klr_core::rootdata::{weights_up_to, CartanDatum, Color};
use klr_core::uplus::{UPlus, WordVector};
use klr_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const SUITES: &[&str] = &["relations", "nilhecke", "vanish", "serre", "mackey", "uplus", "k0"];

/// Settings shared by all suites.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub datum: CartanDatum,
    pub window: DegreeWindow,
    pub height_bound: usize,
    pub seed: u64,
}

/// One check in a report.
#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub anchor: &'static str,
    pub inputs: Value,
    pub expected_from: &'static str,
    pub observed: Value,
    pub pass: bool,
}

impl Entry {
    fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "anchor": self.anchor,
            "inputs": self.inputs,
            "expected_from": self.expected_from,
            "observed": self.observed,
            "pass": self.pass,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn to_json(&self, cfg: &RunConfig) -> Value {
        json!({
            "suite": self.suite,
            "cartan": cfg.datum.to_json(),
            "window": [cfg.window.d_min, cfg.window.d_max],
            "height_bound": cfg.height_bound,
            "seed": cfg.seed,
            "pass": self.pass(),
            "entries": self.entries.iter().map(Entry::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_table(&self) -> String {
        let width = self.entries.iter().map(|e| e.id.len()).max().unwrap_or(2).max(2);
        let mut out = format!("suite {}: {}\n", self.suite, if self.pass() { "pass" } else { "FAIL" });
        out.push_str(&format!("{:<width$}  {:<4}  {:<14}  observed\n", "id", "ok", "expected_from"));
        for e in &self.entries {
            out.push_str(&format!("{:<width$}  {:<4}  {:<14}  {}\n", e.id, if e.pass { "yes" } else { "NO" }, e.expected_from, e.observed));
        }
        out
    }
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report> {
    let mut entries = match name {
        "relations" => relations(cfg)?,
        "nilhecke" => nilhecke(cfg)?,
        "vanish" => vanish(cfg)?,
        "serre" => serre(cfg)?,
        "mackey" => mackey(cfg)?,
        "uplus" => uplus(cfg)?,
        "k0" => k0(cfg)?,
        other => return Err(klr_core::Error::Input(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(Report { suite: name.to_string(), entries })
}

fn context(cfg: &RunConfig) -> KlrContext {
    KlrContext::with_height_bound(cfg.datum.clone(), cfg.height_bound)
}

fn label_seq(datum: &CartanDatum, nu: &[Color]) -> String {
    datum.show_sequence(nu)
}

/// Ordered pairs of distinct colours.
fn pairs(datum: &CartanDatum) -> Vec<(Color, Color)> {
    datum.colors().flat_map(|i| datum.colors().filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

fn relations(cfg: &RunConfig) -> Result<Vec<Entry>> {
    let ctx = context(cfg);
    let datum = ctx.datum();
    let mut out = Vec::new();
    for beta in weights_up_to(datum.rank(), cfg.height_bound) {
        let failures = ctx.relation_failures(&beta)?;
        out.push(Entry {
            id: format!("relations/{}", datum.show_root(&beta)),
            anchor: "defining relations",
            inputs: json!({ "beta": datum.show_root(&beta) }),
            expected_from: "definition",
            observed: json!({ "failures": failures }),
            pass: failures.is_empty(),
        });
    }
    for i in datum.colors() {
        for n in 1..=cfg.height_bound.saturating_sub(2).min(3) {
            for nu in sequences_avoiding(datum, i, n) {
                let failures = ctx.multistrand_failures(i, &nu)?;
                out.push(Entry {
                    id: format!("multistrand/{}/{}", datum.label(i), label_seq(datum, &nu)),
                    anchor: "multistrand identities",
                    inputs: json!({ "i": datum.label(i), "nu": label_seq(datum, &nu) }),
                    expected_from: "closed-formula",
                    observed: json!({ "failures": failures }),
                    pass: failures.is_empty(),
                });
            }
        }
    }
    Ok(out)
}

fn nilhecke(cfg: &RunConfig) -> Result<Vec<Entry>> {
    let max_rank = cfg.height_bound.clamp(1, 4);
    let bad = oracle_disagreements(cfg.seed, 200, max_rank, 6)?;
    let mut out = vec![Entry {
        id: "oracle/products".into(),
        anchor: "faithful polynomial representation",
        inputs: json!({ "pairs": 200, "max_rank": max_rank, "max_degree": 6, "seed": cfg.seed }),
        expected_from: "oracle",
        observed: json!({ "disagreements": bad }),
        pass: bad == 0,
    }];
    for n in 1..=cfg.height_bound.clamp(1, 5) {
        let e = idempotent_e(n);
        let ok = nh_multiply(&e, &e)? == e;
        out.push(Entry {
            id: format!("idempotent/e{n}"),
            anchor: "idempotent e_n",
            inputs: json!({ "n": n }),
            expected_from: "definition",
            observed: json!({ "idempotent": ok }),
            pass: ok,
        });
    }
    for n in 1..=cfg.height_bound.clamp(1, 3) {
        let ok = divided_power_rank_identity(n, cfg.window.d_min, cfg.window.d_max);
        out.push(Entry {
            id: format!("divided-rank/n{n}"),
            anchor: "divided power decomposition",
            inputs: json!({ "n": n }),
            expected_from: "closed-formula",
            observed: json!({ "holds": ok }),
            pass: ok,
        });
    }
    Ok(out)
}

/// `(n, m)` with `n, m >= 1` and `n + m` within the height bound.
fn serre_range(cfg: &RunConfig) -> Vec<(usize, usize)> {
    let h = cfg.height_bound;
    (1..h).flat_map(|n| (1..=h - n).map(move |m| (n, m))).collect()
}

fn vanish(cfg: &RunConfig) -> Result<Vec<Entry>> {
    let ctx = context(cfg);
    let datum = ctx.datum();
    let up = UPlus::with_height_bound(datum.clone(), cfg.height_bound);
    let span = cfg.window.d_max - cfg.window.d_min;
    let mut out = Vec::new();
    for (i, j) in pairs(datum) {
        for (n, m) in serre_range(cfg) {
            let beta = datum.weight_of(&vec![j; m]).add_color(i, n as u32);
            let zero = is_quotient_zero(datum, &beta, i);
            let r = serre_exactness_check(&ctx, n, m, i, j, span)?;
            let dec = up.is_zero_mod_serre(&up.ad_e_divided(n, i, &WordVector::power(datum, j, m)))?;
            out.push(Entry {
                id: format!("vanish/{}{}/n{n}m{m}", datum.label(i), datum.label(j)),
                anchor: "vanishing of the quotient",
                inputs: json!({ "i": datum.label(i), "j": datum.label(j), "n": n, "m": m }),
                expected_from: "closed-formula",
                observed: json!({ "quotient_zero": zero, "complex_exact": r.exact, "uplus_zero": dec }),
                pass: zero == r.exact && zero == dec && zero == r.expected_exact,
            });
        }
    }
    Ok(out)
}

fn serre(cfg: &RunConfig) -> Result<Vec<Entry>> {
    let ctx = context(cfg);
    let datum = ctx.datum();
    let span = cfg.window.d_max - cfg.window.d_min;
    let mut out = Vec::new();
    for (i, j) in pairs(datum) {
        for (n, m) in serre_range(cfg) {
            let r = serre_exactness_check(&ctx, n, m, i, j, span)?;
            out.push(Entry {
                id: format!("serre/{}{}/n{n}m{m}", datum.label(i), datum.label(j)),
                anchor: "categorified higher Serre relations",
                inputs: json!({ "i": datum.label(i), "j": datum.label(j), "n": n, "m": m }),
                expected_from: "closed-formula",
                observed: json!({
                    "expected_exact": r.expected_exact,
                    "exact": r.exact,
                    "h0_nonzero": r.h0_nonzero,
                    "negative_degrees_vanish": r.negative_vanish,
                    "d_squared_zero": r.d_squared_zero,
                }),
                pass: r.passes(),
            });
        }
    }
    Ok(out)
}

fn mackey(cfg: &RunConfig) -> Result<Vec<Entry>> {
    let ctx = context(cfg);
    let datum = ctx.datum();
    let mut out = Vec::new();
    for (i, j) in pairs(datum) {
        let family = [("E_j", ModuleSpec::Projective(vec![j])), ("E_jE_j", ModuleSpec::Projective(vec![j, j])), ("ad(E_j)", ModuleSpec::AdDivided { n: 1, nu: vec![j] })];
        for (name, m) in family {
            if m.weight(datum, i).height() + 2 > cfg.height_bound {
                continue;
            }
            let tag = format!("{}{}", datum.label(i), datum.label(j));
            let r = ses_identity_check(&ctx, &m, i, cfg.window)?;
            out.push(Entry {
                id: format!("ses/{tag}/{name}"),
                anchor: "injectivity of tau and its exact sequence",
                inputs: json!({ "i": datum.label(i), "j": datum.label(j), "module": name }),
                expected_from: "oracle",
                observed: json!({ "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "range": [r.lo, r.hi] }),
                pass: r.holds,
            });
            if name == "E_jE_j" {
                continue;
            }
            let r = mackey_shadow_check(&ctx, &m, i, cfg.window)?;
            out.push(Entry {
                id: format!("mackey/{tag}/{name}"),
                anchor: "commutation of ad_E and ad_F",
                inputs: json!({ "i": datum.label(i), "j": datum.label(j), "module": name }),
                expected_from: "oracle",
                observed: json!({ "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "range": [r.lo, r.hi] }),
                pass: r.holds,
            });
        }
    }
    Ok(out)
}

fn uplus(cfg: &RunConfig) -> Result<Vec<Entry>> {
    let datum = &cfg.datum;
    let up = UPlus::with_height_bound(datum.clone(), cfg.height_bound);
    let mut out = Vec::new();
    for i in datum.colors() {
        let p = up.pair_words(&[i], &[i]);
        out.push(Entry {
            id: format!("form/{}", datum.label(i)),
            anchor: "norm of a generator",
            inputs: json!({ "i": datum.label(i) }),
            expected_from: "closed-formula",
            observed: json!(p.to_string()),
            pass: p == RatFunc::geometric(datum.d(i)),
        });
    }
    for (i, j) in pairs(datum) {
        let tag = format!("{}{}", datum.label(i), datum.label(j));
        let top = (1 - datum.c(i, j)) as usize;
        if top + 1 <= cfg.height_bound {
            let s = up.serre_element(i, j)?;
            let zero = up.is_zero_mod_serre(&s)?;
            out.push(Entry {
                id: format!("serre-element/{tag}"),
                anchor: "quantum Serre relations",
                inputs: json!({ "i": datum.label(i), "j": datum.label(j) }),
                expected_from: "closed-formula",
                observed: json!({ "zero": zero }),
                pass: zero,
            });
        }
        for (n, m) in serre_range(cfg) {
            let ok = up.higher_serre_check(n, m, i, j)?;
            out.push(Entry {
                id: format!("higher-serre/{tag}/n{n}m{m}"),
                anchor: "higher order quantum Serre relations",
                inputs: json!({ "i": datum.label(i), "j": datum.label(j), "n": n, "m": m }),
                expected_from: "closed-formula",
                observed: json!({ "matches": ok }),
                pass: ok,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rank = datum.rank() as Color;
    let (mut leibniz, mut symmetric) = (true, true);
    for _ in 0..50 {
        let mut word = |len: usize| -> Vec<Color> { (0..len).map(|_| rng.gen_range(0..rank)).collect() };
        let (a, b, c) = (word(2), word(2), word(cfg.height_bound.min(4)));
        let d: Vec<Color> = {
            let mut d = c.clone();
            d.reverse();
            d
        };
        let i = rng.gen_range(0..rank);
        leibniz &= up.q_leibniz_holds(i, &WordVector::word(datum, &a), &WordVector::word(datum, &b));
        symmetric &= up.pair_words(&c, &d) == UPlus::new(datum.clone()).pair_words(&d, &c);
    }
    out.push(Entry {
        id: "q-leibniz".into(),
        anchor: "q-Leibniz rule for ad_e",
        inputs: json!({ "samples": 50, "seed": cfg.seed }),
        expected_from: "definition",
        observed: json!({ "holds": leibniz }),
        pass: leibniz,
    });
    out.push(Entry {
        id: "form-symmetry".into(),
        anchor: "symmetry of the form",
        inputs: json!({ "samples": 50, "seed": cfg.seed }),
        expected_from: "definition",
        observed: json!({ "holds": symmetric }),
        pass: symmetric,
    });
    for i in datum.colors() {
        for beta in weights_up_to(datum.rank(), cfg.height_bound.min(3)) {
            let ok = up.dec_shadow(&beta, i)?;
            out.push(Entry {
                id: format!("decomposition/{}/{}", datum.label(i), datum.show_root(&beta)),
                anchor: "multiplication U+[i] x Q[e_i] -> U+",
                inputs: json!({ "i": datum.label(i), "beta": datum.show_root(&beta) }),
                expected_from: "oracle",
                observed: json!({ "injective_and_onto": ok }),
                pass: ok,
            });
        }
    }
    Ok(out)
}

fn k0(cfg: &RunConfig) -> Result<Vec<Entry>> {
    let ctx = context(cfg);
    let datum = ctx.datum();
    let up = UPlus::with_height_bound(datum.clone(), cfg.height_bound);
    let mut out = Vec::new();
    for beta in weights_up_to(datum.rank(), cfg.height_bound.min(3)) {
        let c = up.k0_isometry_calibrate(&ctx, &beta, cfg.window)?;
        let ratios: Vec<Value> = c
            .entries
            .iter()
            .map(|e| {
                json!({
                    "mu": e.mu.iter().map(|&a| datum.label(a)).collect::<Vec<_>>(),
                    "nu": e.nu.iter().map(|&a| datum.label(a)).collect::<Vec<_>>(),
                    "exponent": match e.exponent { Some(Some(s)) => json!(s), Some(None) => json!("both zero"), None => Value::Null },
                })
            })
            .collect();
        out.push(Entry {
            id: format!("k0/{}", datum.show_root(&beta)),
            anchor: "isometry of the Grothendieck group",
            inputs: json!({ "beta": datum.show_root(&beta) }),
            expected_from: "oracle",
            observed: json!({ "uniform": c.uniform, "factor_exponent": c.factor, "ratios": ratios }),
            pass: c.uniform,
        });
    }
    Ok(out)
}
