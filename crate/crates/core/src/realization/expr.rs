//! Rational functions in named parameters, with coefficients in a quadratic field.
//!
//! Grammar: sums and differences of products; `*`, `/`, `^` (non-negative integer
//! exponents), parentheses, integer literals and single-letter names. The letter
//! `a` is the generator of the base field; every other letter is a parameter.
//! Juxtaposition multiplies, so `2e(e+1)` and `xz` are accepted.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, QuadField};

/// Exponent vector over the family's parameters.
type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    terms: BTreeMap<Exps, FieldElement>,
}

impl Poly {
    fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { terms }
    }

    fn var(k: &Arc<QuadField>, i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly { terms: BTreeMap::from([(e, FieldElement::one(k))]) }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let v = match terms.get(e) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if v.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(e.clone(), v);
            }
        }
        Poly { terms }
    }

    fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly { terms: BTreeMap::new() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out = out.add(&Poly { terms: BTreeMap::from([(e, c1 * c2)]) });
            }
        }
        out
    }

    fn eval(&self, k: &Arc<QuadField>, vals: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::zero(k);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &p) in vals.iter().zip(e) {
                if p > 0 {
                    t = &t * &v.pow(p);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&p| p == 0))
    }
}

/// `num / den`, never simplified; evaluation checks `den` first.
#[derive(Clone, Debug)]
pub struct ParamExpr {
    source: String,
    field: Arc<QuadField>,
    params: Vec<String>,
    num: Poly,
    den: Poly,
}

impl PartialEq for ParamExpr {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.params == other.params
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Name(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[start..i].iter().collect();
            let v = lit.parse().map_err(|_| bad(s, "integer literal too large"))?;
            out.push(Tok::Int(v));
        } else if c.is_ascii_alphabetic() {
            out.push(Tok::Name(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(bad(s, &format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn bad(src: &str, msg: &str) -> Error {
    Error::MalformedInput(format!("expression `{src}`: {msg}"))
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Arc<QuadField>,
    params: &'a [String],
}

/// Rational function as an unreduced pair.
type Frac = (Poly, Poly);

impl Parser<'_> {
    fn n(&self) -> usize {
        self.params.len()
    }

    fn one(&self) -> Poly {
        Poly::constant(FieldElement::one(self.field), self.n())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let (n, d) = self.term()?;
                (n.neg(), d)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let (n, d) = self.term()?;
            let n = if c == '-' { n.neg() } else { n };
            acc = (acc.0.mul(&d).add(&n.mul(&acc.1)), acc.1.mul(&d));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let (n, d) = self.power()?;
                    acc = (acc.0.mul(&n), acc.1.mul(&d));
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let (n, d) = self.power()?;
                    if n.terms.is_empty() {
                        return Err(bad(self.src, "division by zero"));
                    }
                    acc = (acc.0.mul(&d), acc.1.mul(&n));
                }
                Some(Tok::Int(_) | Tok::Name(_) | Tok::Op('(')) => {
                    let (n, d) = self.power()?;
                    acc = (acc.0.mul(&n), acc.1.mul(&d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Int(e)) = self.peek().cloned() else {
                return Err(bad(self.src, "exponent must be a non-negative integer"));
            };
            self.pos += 1;
            let (mut n, mut d) = (self.one(), self.one());
            for _ in 0..e {
                n = n.mul(&base.0);
                d = d.mul(&base.1);
            }
            return Ok((n, d));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        let tok = self.peek().cloned().ok_or_else(|| bad(self.src, "unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Int(v) => {
                let c = FieldElement::from_int(self.field, v as i64);
                Ok((Poly::constant(c, self.n()), self.one()))
            }
            Tok::Name('a') => {
                let a = FieldElement::alpha(self.field).map_err(|_| bad(self.src, "`a` used over Q"))?;
                Ok((Poly::constant(a, self.n()), self.one()))
            }
            Tok::Name(c) => {
                let i = self
                    .params
                    .iter()
                    .position(|p| p.len() == 1 && p.starts_with(c))
                    .ok_or_else(|| bad(self.src, &format!("unknown parameter `{c}`")))?;
                Ok((Poly::var(self.field, i, self.n()), self.one()))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(bad(self.src, "missing `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(bad(self.src, &format!("unexpected `{c}`"))),
        }
    }
}

impl ParamExpr {
    /// Parses `src` over `field` with the given single-letter parameter names.
    pub fn parse(src: &str, field: &Arc<QuadField>, params: &[String]) -> Result<Self> {
        if let Some(p) = params.iter().find(|p| p.len() != 1 || p.as_str() == "a") {
            return Err(Error::MalformedInput(format!("parameter name `{p}` must be one letter other than `a`")));
        }
        let toks = tokenize(src)?;
        let mut p = Parser { src, toks, pos: 0, field, params };
        let (num, den) = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(bad(src, "trailing input"));
        }
        Ok(ParamExpr { source: src.to_string(), field: field.clone(), params: params.to_vec(), num, den })
    }

    /// A field constant such as `1/2`, `-3` or `(1+a)/2`.
    pub fn parse_constant(src: &str, field: &Arc<QuadField>) -> Result<FieldElement> {
        ParamExpr::parse(src, field, &[])?.eval(&[])
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Value at `vals` (in parameter order). `DenominatorZero` if the
    /// denominator vanishes there.
    pub fn eval(&self, vals: &[FieldElement]) -> Result<FieldElement> {
        assert_eq!(vals.len(), self.params.len());
        let d = self.den.eval(&self.field, vals);
        if d.is_zero() {
            return Err(Error::DenominatorZero(self.source.clone()));
        }
        Ok(&self.num.eval(&self.field, vals) * &d.inv()?)
    }

    /// Whether the expression vanishes at `vals`; a vanishing denominator is an error.
    pub fn vanishes(&self, vals: &[FieldElement]) -> Result<bool> {
        Ok(self.eval(vals)?.is_zero())
    }
}
