use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rational, UniPoly};
use crate::linalg::Matrix;
use crate::poly::{default_names, parse_sparse, Monomial, Poly, Ring};

type QPoly = UniPoly<Rational>;

/// A form in `S` whose coefficients are polynomials in a parameter `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoly {
    n: usize,
    d: usize,
    terms: BTreeMap<Monomial, QPoly>,
}

impl ParamPoly {
    pub fn zero(n: usize, d: usize) -> Self {
        ParamPoly { n, d, terms: BTreeMap::new() }
    }

    pub fn new(n: usize, d: usize, terms: impl IntoIterator<Item = (Monomial, QPoly)>) -> Result<Self> {
        let mut out = Self::zero(n, d);
        for (m, c) in terms {
            if m.nvars() != n {
                return Err(Error::VariableCountMismatch(m.nvars(), n));
            }
            if m.degree() != d && !c.is_zero() {
                return Err(Error::NotHomogeneous);
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(QPoly::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The family constant in `t`.
    pub fn from_poly(f: &Poly) -> Self {
        Self::from_t_powers(f.nvars(), f.degree(), std::slice::from_ref(f))
    }

    /// `sum_m t^m parts[m]`.
    pub fn from_t_powers(n: usize, d: usize, parts: &[Poly]) -> Self {
        let mut out = Self::zero(n, d);
        for (k, p) in parts.iter().enumerate() {
            assert!(p.is_zero() || (p.nvars() == n && p.degree() == d), "family part of wrong shape");
            for (m, c) in p.terms() {
                out.add_term(m.clone(), &QPoly::monomial(c.clone(), k));
            }
        }
        out
    }

    /// Parse text over `vars` with `t` as the parameter.
    pub fn parse(text: &str, vars: &[String]) -> Result<Self> {
        let sparse = parse_sparse(text, vars, true)?;
        let n = vars.len();
        let mut d = None;
        let mut terms = Vec::new();
        for (e, c) in sparse {
            let (xs, t) = e.split_at(n);
            let deg: u32 = xs.iter().sum();
            match d {
                None => d = Some(deg as usize),
                Some(d0) if d0 != deg as usize => return Err(Error::NotHomogeneous),
                _ => {}
            }
            terms.push((Monomial(xs.to_vec()), QPoly::monomial(c, t[0] as usize)));
        }
        Self::new(n, d.unwrap_or(0), terms)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms, largest monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QPoly)> {
        self.terms.iter().rev()
    }

    pub fn t_degree(&self) -> usize {
        self.terms.values().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    /// Coefficient of `t^k` as a form.
    pub fn t_coefficient(&self, k: usize) -> Poly {
        Poly::new(Ring::S, self.n, self.d, self.terms.iter().map(|(m, c)| (m.clone(), c.coeff(k)))).expect("homogeneous")
    }

    pub fn specialize(&self, t0: &Rational) -> Poly {
        Poly::new(Ring::S, self.n, self.d, self.terms.iter().map(|(m, c)| (m.clone(), c.eval(t0)))).expect("homogeneous")
    }

    /// The form at `t = 0`.
    pub fn limit(&self) -> Poly {
        self.t_coefficient(0)
    }

    /// Substitute `x_i -> sum_j m[i][j] x'_j` in every coefficient of `t`.
    pub fn substitute(&self, m: &Matrix) -> Self {
        let parts: Vec<Poly> = (0..=self.t_degree()).map(|k| self.t_coefficient(k).substitute(m)).collect();
        Self::from_t_powers(m.ncols(), self.d, &parts)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms() {
            for (k, a) in c.coeffs().iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                let mono = m.format(names);
                let tp = match k {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{k}"),
                };
                let full = match (tp.is_empty(), mono.is_empty()) {
                    (true, _) => mono,
                    (false, true) => tp,
                    (false, false) => format!("{tp}*{mono}"),
                };
                crate::field::unipoly::push_term(&mut out, a, &full);
            }
        }
        out
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names(Ring::S, self.n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn specialization() {
        let v = names(&["x", "y"]);
        let f = ParamPoly::parse("t*x^3 + x*y^2", &v).unwrap();
        let at1 = f.specialize(&Rational::from(1));
        assert_eq!(at1.to_string(), "x^3 + x*y^2");
        assert_eq!(f.limit().to_string(), "x*y^2");
        assert_eq!(f.t_degree(), 1);
        assert_eq!(f.to_string(), "t*x^3 + x*y^2");
        assert_eq!(ParamPoly::parse(&f.to_string(), &v).unwrap(), f);
    }

    #[test]
    fn homogeneity_in_x_only() {
        let v = names(&["x", "y"]);
        assert!(ParamPoly::parse("t^2*x + y", &v).is_ok());
        assert_eq!(ParamPoly::parse("x^2 + y", &v), Err(Error::NotHomogeneous));
    }
}
