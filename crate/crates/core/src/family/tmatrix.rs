//! Exact linear algebra over `Q[t]`, used for ranks and kernels over `Q(t)`.

use crate::error::{Error, Result};
use crate::field::{Field, Rational, UniPoly};
use crate::linalg::Matrix;

pub(crate) type QPoly = UniPoly<Rational>;
pub(crate) type TMatrix = Vec<Vec<QPoly>>;

/// Rank over `Q(t)` by Bareiss elimination with full pivoting.
pub(crate) fn rank(mut a: TMatrix) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = QPoly::one();
    let mut r = 0;
    while r < m.min(n) {
        let Some((pi, pj)) = (r..m)
            .flat_map(|i| (r..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].degree())
        else {
            break;
        };
        a.swap(r, pi);
        for row in a.iter_mut() {
            row.swap(r, pj);
        }
        for i in r + 1..m {
            for j in r + 1..n {
                let v = a[r][r].mul(&a[i][j]).sub(&a[i][r].mul(&a[r][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][r] = QPoly::zero();
        }
        prev = a[r][r].clone();
        r += 1;
    }
    r
}

fn primitive(row: &mut [QPoly]) {
    let g = row.iter().fold(QPoly::zero(), |g, c| g.gcd(c));
    if g.degree().is_some_and(|d| d > 0) {
        for c in row.iter_mut() {
            *c = c.div_exact(&g).expect("gcd divides");
        }
    }
}

/// Right kernel over `Q(t)`, as primitive `Q[t]` vectors.
pub(crate) fn kernel(mut a: TMatrix, ncols: usize) -> TMatrix {
    let m = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(pi) = (r..m).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].degree()) else {
            continue;
        };
        a.swap(r, pi);
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..ncols {
                row[j] = prow[c].mul(&row[j]).sub(&f.mul(&prow[j]));
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut l = QPoly::one();
        for (i, &c) in pivots.iter().enumerate() {
            if !a[i][f].is_zero() {
                let p = &a[i][c];
                l = l.mul(p).div_exact(&l.gcd(p)).expect("lcm");
            }
        }
        let mut v = vec![QPoly::zero(); ncols];
        v[f] = l.clone();
        for (i, &c) in pivots.iter().enumerate() {
            if !a[i][f].is_zero() {
                v[c] = a[i][f].mul(&l.div_exact(&a[i][c]).expect("lcm")).neg();
            }
        }
        primitive(&mut v);
        out.push(v);
    }
    out
}

pub(crate) fn transpose(a: &TMatrix, ncols: usize) -> TMatrix {
    (0..ncols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

fn eval0(rows: &TMatrix, ncols: usize) -> Matrix<Rational> {
    Matrix::from_rows(ncols, rows.iter().map(|r| r.iter().map(|c| c.coeff(0)).collect()).collect())
}

/// Limit at `t = 0` of the `Q(t)`-span of `rows`: repeatedly replace a row by
/// a combination vanishing at 0 divided by `t` until the rows stay
/// independent at 0.
pub(crate) fn saturate_at_zero(mut rows: TMatrix, ncols: usize) -> Result<Matrix<Rational>> {
    let t = QPoly::monomial(Rational::one(), 1);
    let bound: usize = rows.iter().map(|r| r.iter().filter_map(|c| c.degree()).max().unwrap_or(0)).sum::<usize>() + 1;
    for _ in 0..=bound {
        for row in rows.iter_mut() {
            let v = row.iter().filter_map(|c| c.valuation()).min().unwrap_or(0);
            if v > 0 {
                let tv = QPoly::monomial(Rational::one(), v);
                for c in row.iter_mut() {
                    *c = c.div_exact(&tv).expect("t-power divides");
                }
            }
        }
        let at0 = eval0(&rows, ncols);
        let dep = at0.left_kernel();
        if dep.nrows() == 0 {
            return Ok(at0);
        }
        let c = dep.row(0);
        let j = (0..c.len()).rev().find(|&i| !c[i].is_zero()).expect("nonzero dependency");
        let mut comb = vec![QPoly::zero(); ncols];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (k, e) in comb.iter_mut().enumerate() {
                *e = e.add(&rows[i][k].scale(ci));
            }
        }
        rows[j] = comb.iter().map(|e| e.div_exact(&t).expect("vanishes at 0")).collect();
    }
    Err(Error::Internal(format!("t-saturation exceeded {bound} steps")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn rank_over_function_field() {
        // [[t, 1], [t^2, t]] has rank 1; [[t, 1], [1, t]] rank 2
        assert_eq!(rank(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[0, 0, 1]), p(&[0, 1])]]), 1);
        assert_eq!(rank(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[0, 1])]]), 2);
        assert_eq!(rank(vec![vec![p(&[]), p(&[])]]), 0);
    }

    #[test]
    fn kernel_and_limit() {
        // kernel of [t, 1] is (1, -t); limit at 0 is (1, 0)
        let k = kernel(vec![vec![p(&[0, 1]), p(&[1])]], 2);
        assert_eq!(k.len(), 1);
        assert!(k[0][1].add(&k[0][0].mul(&p(&[0, 1]))).is_zero());
        let lim = saturate_at_zero(k, 2).unwrap();
        assert_eq!(lim.rref().matrix, Matrix::from_i64(&[&[1, 0]]));
        // span{(1, t), (1, 0)} -> limit span{(1,0), (0,1)}
        let lim = saturate_at_zero(vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[1]), p(&[])]], 2).unwrap();
        assert_eq!(lim.rank(), 2);
    }

    proptest::proptest! {
        #[test]
        fn rank_matches_generic_specialization(
            e in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 12)
        ) {
            let a: TMatrix = e.chunks(4).map(|r| r.iter().map(|c| p(c)).collect()).collect();
            let r = rank(a.clone());
            let at = |t0: i64| {
                Matrix::from_rows(4, a.iter().map(|row| row.iter().map(|c| c.eval(&Rational::from(t0))).collect()).collect()).rank()
            };
            let best = (0..12).map(|t0| at(t0 * 7 - 30)).max().unwrap();
            proptest::prop_assert_eq!(r, best);
            let ker = kernel(a.clone(), 4);
            proptest::prop_assert_eq!(ker.len(), 4 - r);
            for v in &ker {
                for row in &a {
                    let s = row.iter().zip(v).fold(QPoly::zero(), |s, (x, y)| s.add(&x.mul(y)));
                    proptest::prop_assert!(s.is_zero());
                }
            }
        }
    }
}
