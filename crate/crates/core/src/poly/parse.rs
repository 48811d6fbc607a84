//! Recursive-descent parser for polynomial text.
//!
//! Accepts sums and products of rational constants, declared variables,
//! nonnegative integer powers and parenthesized subexpressions. Division is
//! allowed by constants only. Operators are always explicit.

use std::collections::BTreeMap;

use super::{Monomial, Poly, Ring};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};

/// Sparse, possibly inhomogeneous polynomial keyed by exponent vectors.
type Sparse = BTreeMap<Vec<u32>, Rational>;

const MAX_EXPONENT: u32 = 256;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[i].1.to_digit(10).unwrap() as u64))
                    .ok_or(Error::Syntax { pos, msg: "integer literal too large".into() })?;
                i += 1;
            }
            out.push((Tok::Num(v), pos));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((Tok::Ident(s), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    lx: Lexer,
    vars: &'a [String],
    nv: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.lx.toks[self.lx.i].0
    }

    fn pos(&self) -> usize {
        self.lx.toks[self.lx.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.lx.toks[self.lx.i].0.clone();
        if t != Tok::End {
            self.lx.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut neg = false;
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                neg = true;
            }
            Tok::Sym('+') => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = scale(&acc, &Rational::from(-1));
        }
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(&acc, &t);
                }
                Tok::Sym('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(&acc, &scale(&t, &Rational::from(-1)));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = mul(&acc, &f);
                }
                Tok::Sym('/') => {
                    self.bump();
                    let pos = self.pos();
                    let f = self.factor()?;
                    let c = as_constant(&f, self.nv)
                        .ok_or(Error::Syntax { pos, msg: "division by a non-constant".into() })?;
                    let inv = c.inv().map_err(|_| Error::Syntax { pos, msg: "division by zero".into() })?;
                    acc = scale(&acc, &inv);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(') => {
                    return self.err("missing operator between factors");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == &Tok::Sym('^') {
            self.bump();
            let e = match self.bump() {
                Tok::Num(e) => e,
                _ => {
                    self.lx.i -= 1;
                    return self.err("expected a nonnegative integer exponent");
                }
            };
            if e > MAX_EXPONENT as u64 {
                return self.err("exponent too large");
            }
            let mut acc = one(self.nv);
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(constant(self.nv, Rational::from_integer(v))),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    let mut e = vec![0u32; self.nv];
                    e[i] = 1;
                    Ok(BTreeMap::from([(e, Rational::from(1))]))
                }
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if self.bump() != Tok::Sym(')') {
                    self.lx.i -= 1;
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::Syntax { pos, msg: format!("unexpected `{}`", show(&t)) }),
        }
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Num(v) => v.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Sym(c) => c.to_string(),
        Tok::End => "end of input".into(),
    }
}

fn one(nv: usize) -> Sparse {
    constant(nv, Rational::from(1))
}

fn constant(nv: usize, c: Rational) -> Sparse {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert(vec![0; nv], c);
    }
    m
}

fn as_constant(p: &Sparse, nv: usize) -> Option<Rational> {
    match p.len() {
        0 => Some(Rational::zero()),
        1 => p.get(&vec![0; nv]).cloned(),
        _ => None,
    }
}

fn add(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = a.clone();
    for (m, c) in b {
        let e = out.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            out.remove(m);
        }
    }
    out
}

fn scale(a: &Sparse, c: &Rational) -> Sparse {
    if c.is_zero() {
        return BTreeMap::new();
    }
    a.iter().map(|(m, v)| (m.clone(), v * c)).collect()
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out: Sparse = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m).or_insert_with(Rational::zero);
            *e += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Parse into exponent vectors over `vars`, with one extra trailing slot for
/// the parameter `t` when `with_t` is set. No homogeneity check.
pub fn parse_sparse(text: &str, vars: &[String], with_t: bool) -> Result<BTreeMap<Vec<u32>, Rational>> {
    let mut all: Vec<String> = vars.to_vec();
    if with_t {
        if vars.iter().any(|v| v == "t") {
            return Err(Error::Syntax { pos: 0, msg: "`t` is reserved for the family parameter".into() });
        }
        all.push("t".into());
    }
    let nv = all.len();
    let mut p = Parser { lx: Lexer { toks: lex(text)?, i: 0 }, vars: &all, nv };
    let out = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err(format!("unexpected `{}`", show(p.peek())));
    }
    Ok(out)
}

/// Parse a homogeneous form over the declared variables.
pub fn parse_poly(text: &str, ring: Ring, vars: &[String]) -> Result<Poly<Rational>> {
    let sparse = parse_sparse(text, vars, false)?;
    let n = vars.len();
    let degree = sparse.keys().next().map_or(0, |e| e.iter().sum::<u32>() as usize);
    Poly::new(ring, n, degree, sparse.into_iter().map(|(e, c)| (Monomial(e), c)))
}

/// Infer variable names from the identifiers in `text`.
///
/// Letters from `x,y,z` (or `a,b,c` in the dual ring) give the shortest prefix
/// of that list covering them; indexed names `x1, x2, ..` give `x1..xN` for
/// the largest index seen. Anything else is returned in order of appearance.
pub fn default_vars(text: &str, ring: Ring) -> Vec<String> {
    let (short, stem) = match ring {
        Ring::S => (["x", "y", "z"], "x"),
        Ring::T => (["a", "b", "c"], "a"),
    };
    let mut idents: Vec<String> = Vec::new();
    if let Ok(toks) = lex(text) {
        for (t, _) in toks {
            if let Tok::Ident(s) = t {
                if s != "t" && !idents.contains(&s) {
                    idents.push(s);
                }
            }
        }
    }
    if idents.iter().all(|s| short.contains(&s.as_str())) {
        let last = idents.iter().map(|s| short.iter().position(|v| v == s).unwrap()).max();
        return match last {
            Some(k) => short[..=k].iter().map(|s| s.to_string()).collect(),
            None => vec![short[0].to_string()],
        };
    }
    let indexed: Option<Vec<usize>> =
        idents.iter().map(|s| s.strip_prefix(stem).and_then(|r| r.parse::<usize>().ok()).filter(|&i| i >= 1)).collect();
    if let Some(ix) = indexed {
        let m = ix.into_iter().max().unwrap_or(1);
        return (1..=m).map(|i| format!("{stem}{i}")).collect();
    }
    idents
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_examples() {
        let f = parse_poly("x*y^2", Ring::S, &names(&["x", "y"])).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.len(), 1);
        let g = parse_poly("x^2*y - y^2*z", Ring::S, &names(&["x", "y", "z"])).unwrap();
        assert_eq!((g.degree(), g.len()), (3, 2));
        let h = parse_poly("-1/2*x^2 + (3/4)*x*y", Ring::S, &names(&["x", "y"])).unwrap();
        assert_eq!(h.to_string(), "-1/2*x^2 + 3/4*x*y");
    }

    #[test]
    fn rejects_bad_input() {
        let v = names(&["x", "y", "z"]);
        assert_eq!(parse_poly("x^2 + y^3", Ring::S, &v), Err(Error::NotHomogeneous));
        assert!(matches!(parse_poly("x y", Ring::S, &v), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("2x", Ring::S, &v), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x*w", Ring::S, &v), Err(Error::UnknownVariable { pos: 2, .. })));
        assert!(matches!(parse_poly("x/y", Ring::S, &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x/0", Ring::S, &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^", Ring::S, &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x+y", Ring::S, &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x $ y", Ring::S, &v), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn parameter_slot() {
        let v = names(&["x", "y"]);
        let p = parse_sparse("t*x^4 + x*y^3", &v, true).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.contains_key(&vec![4, 0, 1]));
        assert!(parse_sparse("t*x", &names(&["t"]), true).is_err());
    }

    #[test]
    fn infers_names() {
        assert_eq!(default_vars("x*y^2", Ring::S), names(&["x", "y"]));
        assert_eq!(default_vars("x^3 + z^3", Ring::S), names(&["x", "y", "z"]));
        assert_eq!(default_vars("x1*x3", Ring::S), names(&["x1", "x2", "x3"]));
        assert_eq!(default_vars("t*x^4 + x*y^3", Ring::S), names(&["x", "y"]));
        assert_eq!(default_vars("u*v", Ring::S), names(&["u", "v"]));
    }
}
