//! Expressions for `klr nf`.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := [integer ['*']] factor (['*' | '·'] factor)*  |  integer
//! factor := '1[' label (',' label)* ']' | 'x' k | 't' k | '(' expr ')'
//! ```
//! Juxtaposition multiplies. Idempotents list labels in display order.

use klr_core::klr::{KlrContext, KlrElement};
use klr_core::qring::rat;
use klr_core::rootdata::{Color, RootVector};
use klr_core::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.msg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Idem { pos: usize, labels: Vec<String> },
    X { pos: usize, k: usize },
    Tau { pos: usize, k: usize },
    Int(i64),
    Product(Vec<Expr>),
    Sum(Vec<(i64, Expr)>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.chars().count(), |_| self.at)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.at].iter().map(|c| c.1).collect();
        s.parse().or_else(|_| Err(ParseError { pos: start, msg: "number too large".into() }))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = 1;
        if self.peek() == Some('-') || self.peek() == Some('−') {
            self.at += 1;
            sign = -1;
        }
        loop {
            let t = self.term()?;
            terms.push((sign, t));
            self.skip_ws();
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') | Some('−') => sign = -1,
                _ => break,
            }
            self.at += 1;
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') | Some('·') if !factors.is_empty() => {
                    self.at += 1;
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    // `1[` starts an idempotent, any other number is a coefficient
                    if c == '1' && self.chars.get(self.at + 1).map(|c| c.1) == Some('[') {
                        factors.push(self.idempotent()?);
                    } else {
                        let n = self.number()?;
                        factors.push(Expr::Int(n as i64));
                    }
                }
                Some('x') | Some('t') => {
                    let pos = self.pos();
                    let c = self.peek().unwrap();
                    self.at += 1;
                    let k = self.number()? as usize;
                    if k == 0 {
                        return Err(ParseError { pos, msg: "strand indices start at 1".into() });
                    }
                    factors.push(if c == 'x' { Expr::X { pos, k } } else { Expr::Tau { pos, k } });
                }
                Some('q') => return self.err("degree annotations like q^n are not accepted: the grading is intrinsic"),
                Some('(') => {
                    self.at += 1;
                    let inner = self.expr()?;
                    self.skip_ws();
                    if self.peek() != Some(')') {
                        return self.err("expected ')'");
                    }
                    self.at += 1;
                    factors.push(inner);
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            return match self.peek() {
                Some(c) => self.err(format!("unexpected {c:?}")),
                None => self.err("unexpected end of input"),
            };
        }
        Ok(Expr::Product(factors))
    }

    fn idempotent(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        self.at += 2;
        let mut labels = Vec::new();
        let mut cur = String::new();
        loop {
            match self.peek() {
                None => return self.err("unclosed '['"),
                Some(']') => {
                    self.at += 1;
                    break;
                }
                Some(',') => {
                    labels.push(std::mem::take(&mut cur));
                    self.at += 1;
                }
                Some(c) => {
                    cur.push(c);
                    self.at += 1;
                }
            }
        }
        labels.push(cur);
        let labels: Vec<String> = labels.into_iter().map(|l| l.trim().to_string()).collect();
        if labels.iter().any(String::is_empty) {
            return Err(ParseError { pos, msg: "empty label in idempotent".into() });
        }
        Ok(Expr::Idem { pos, labels })
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { chars: src.chars().enumerate().map(|(i, c)| (i, c)).collect(), at: 0, src };
    let e = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        return p.err(format!("unexpected {:?}", p.peek().unwrap()));
    }
    Ok(e)
}

/// Errors from evaluating a parsed expression.
#[derive(Debug)]
pub enum EvalError {
    Parse(ParseError),
    Algebra(Error),
}

impl std::fmt::Display for EvalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvalError::Parse(e) => write!(f, "parse error {e}"),
            EvalError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

fn idempotents<'e>(e: &'e Expr, out: &mut Vec<(usize, &'e [String])>) {
    match e {
        Expr::Idem { pos, labels } => out.push((*pos, labels)),
        Expr::Product(v) => v.iter().for_each(|x| idempotents(x, out)),
        Expr::Sum(v) => v.iter().for_each(|x| idempotents(&x.1, out)),
        _ => {}
    }
}

/// The weight shared by all idempotents, or `fallback` if there are none.
pub fn weight_of(ctx: &KlrContext, e: &Expr, fallback: Option<RootVector>) -> Result<RootVector, EvalError> {
    let mut found = Vec::new();
    idempotents(e, &mut found);
    let mut beta: Option<RootVector> = None;
    for (pos, labels) in found {
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let nu = ctx.datum().parse_sequence(&refs).map_err(|e| EvalError::Parse(ParseError { pos, msg: e.to_string() }))?;
        let b = ctx.datum().weight_of(&nu);
        match &beta {
            Some(prev) if *prev != b => {
                return Err(EvalError::Algebra(Error::WeightMismatch(format!(
                    "1[{}] at column {} has weight {}, expected {}",
                    labels.join(","),
                    pos + 1,
                    ctx.datum().show_root(&b),
                    ctx.datum().show_root(prev)
                ))))
            }
            _ => beta = Some(b),
        }
    }
    if let (Some(b), Some(f)) = (&beta, &fallback) {
        if b != f {
            return Err(EvalError::Algebra(Error::WeightMismatch(format!(
                "expression has weight {}, --weight gives {}",
                ctx.datum().show_root(b),
                ctx.datum().show_root(f)
            ))));
        }
    }
    beta.or(fallback).ok_or_else(|| EvalError::Parse(ParseError { pos: 0, msg: "no idempotent fixes the weight; pass --weight".into() }))
}

pub fn evaluate(ctx: &KlrContext, e: &Expr, beta: &RootVector) -> Result<KlrElement, EvalError> {
    let alg = EvalError::Algebra;
    let located = |pos: usize, err: Error| EvalError::Parse(ParseError { pos, msg: err.to_string() });
    Ok(match e {
        Expr::Idem { pos, labels } => {
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            let nu: Vec<Color> = ctx.datum().parse_sequence(&refs).map_err(|err| located(*pos, err))?;
            ctx.idem(&nu).map_err(alg)?
        }
        Expr::X { pos, k } => ctx.x(beta, *k).map_err(|err| located(*pos, err))?,
        Expr::Tau { pos, k } => ctx.tau(beta, *k).map_err(|err| located(*pos, err))?,
        Expr::Int(n) => ctx.unit(beta).map_err(alg)?.scale(&rat(*n)),
        Expr::Product(fs) => {
            let mut acc = evaluate(ctx, &fs[0], beta)?;
            for f in &fs[1..] {
                acc = ctx.multiply(&acc, &evaluate(ctx, f, beta)?).map_err(alg)?;
            }
            acc
        }
        Expr::Sum(ts) => {
            let mut acc = KlrElement::zero(beta.clone());
            for (sign, t) in ts {
                acc.add_assign(&evaluate(ctx, t, beta)?.scale(&rat(*sign)));
            }
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use klr_core::rootdata::CartanDatum;

    fn nf(src: &str) -> Result<String, String> {
        let ctx = KlrContext::new(CartanDatum::a2());
        let e = parse(src).map_err(|e| e.to_string())?;
        let beta = weight_of(&ctx, &e, None).map_err(|e| e.to_string())?;
        Ok(ctx.show_grouped(&evaluate(&ctx, &e, &beta).map_err(|e| e.to_string())?))
    }

    #[test]
    fn normal_forms() {
        assert_eq!(nf("t1 t1 1[j,i]").unwrap(), "(x1+x2)·1[j,i]");
        assert_eq!(nf("t1 x1 1[i,i]").unwrap(), "x2·t1·1[i,i] − 1[i,i]");
        assert_eq!(nf("2 x1 1[i] - x1*1[i]").unwrap(), "x1·1[i]");
        assert_eq!(nf("(1[i,j] + 1[j,i]) t1 1[i,j]").unwrap(), "t1·1[i,j]");
        assert_eq!(nf("1[i,j] 1[j,i]").unwrap(), "0");
    }

    #[test]
    fn errors() {
        assert!(nf("1[i] 1[j]").unwrap_err().contains("weight mismatch"));
        assert!(nf("q^2 1[i]").unwrap_err().contains("column 1"));
        assert!(nf("x1 1[i] +").unwrap_err().contains("end of input"));
        assert!(nf("x0 1[i]").unwrap_err().contains("start at 1"));
        assert!(nf("1[i,k]").unwrap_err().contains("unknown index"));
        assert!(nf("x3 1[i,j]").is_err());
        assert!(nf("t1").unwrap_err().contains("--weight"));
        assert_eq!(parse("1[i").unwrap_err().msg, "unclosed '['");
    }
}
