use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{is_concise, GradedSubspace};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Matrix;
use crate::poly::{basis_len, Poly, Ring};

/// Random form in `dims.len()` blocks of variables with the given sizes,
/// each summand concise in its block, the blocks in general position.
/// Returns the form and the subspaces of `S_1` the summands live in.
pub fn random_direct_sum(dims: &[usize], d: usize, seed: u64) -> Result<(Poly, Vec<GradedSubspace>)> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::BadDims(format!("{dims:?}")));
    }
    if d < 3 {
        return Err(Error::BadDims(format!("degree {d} < 3")));
    }
    let n: usize = dims.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = loop {
        let rows: Vec<Vec<Rational>> =
            (0..n).map(|_| (0..n).map(|_| Rational::from(rng.random_range(-3..=3))).collect()).collect();
        let m = Matrix::from_rows(n, rows);
        if !m.determinant().is_zero() {
            break m;
        }
    };
    let mut f = Poly::zero(Ring::S, n, d);
    let mut spaces = Vec::new();
    let mut start = 0;
    for &a in dims {
        let summand = loop {
            let v: Vec<Rational> = (0..basis_len(a, d)).map(|_| Rational::from(rng.random_range(-5..=5))).collect();
            let g = Poly::from_vector(Ring::S, a, d, &v);
            if !g.is_zero() && is_concise(&g)? {
                break g;
            }
        };
        let block = p.select_rows(&(start..start + a).collect::<Vec<_>>());
        f = f.add(&summand.substitute(&block));
        spaces.push(GradedSubspace::from_rows(Ring::S, n, 1, block));
        start += a;
    }
    Ok((f, spaces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::span_of;

    #[test]
    fn shapes() {
        let (f, sp) = random_direct_sum(&[1, 2], 3, 7).unwrap();
        assert_eq!(f.nvars(), 3);
        assert!(is_concise(&f).unwrap());
        assert_eq!(sp.len(), 2);
        assert_eq!(span_of(&f).unwrap().dim(), 3);
        assert_eq!(random_direct_sum(&[1, 2], 3, 7).unwrap().0, f);
        assert!(random_direct_sum(&[], 3, 0).is_err());
        assert!(random_direct_sum(&[2, 0], 3, 0).is_err());
    }
}
