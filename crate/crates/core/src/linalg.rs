//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rational, UniPoly};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<K: Field = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<K>>,
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            let s: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", s.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<K: Field> {
    pub matrix: Matrix<K>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![K::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = K::one();
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<K>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| K::from_i64(v)).collect()).collect())
    }

    pub fn from_columns(rows: usize, cols: &[Vec<K>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vec<K>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<K>> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn push_row(&mut self, row: Vec<K>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j].add_assign_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|r| {
                let mut acc = K::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign_ref(&a.mul_ref(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![K::zero(); self.cols];
        for (c, r) in v.iter().zip(&self.data) {
            if c.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(r) {
                if !a.is_zero() {
                    o.add_assign_ref(&c.mul_ref(a));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub_ref(b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&K, &K) -> K) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect()).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate a polynomial at a square matrix (Horner).
    pub fn eval_poly(&self, p: &UniPoly<K>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.data[i][i].add_assign_ref(c);
            }
        }
        acc
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        Matrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data: self.data.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect(),
        }
    }

    /// Reduced row echelon form; zero rows are dropped.
    pub fn rref(&self) -> Rref<K> {
        let mut rows: Vec<Vec<K>> = self.data.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for c in rows[r][col..].iter_mut() {
                    if !c.is_zero() {
                        *c = c.mul_ref(&inv);
                    }
                }
            }
            let support: Vec<usize> = (col..self.cols).filter(|&j| !rows[r][j].is_zero()).collect();
            let (head, tail) = rows.split_at_mut(r);
            let (prow, tail) = tail.split_first_mut().unwrap();
            for other in head.iter_mut().chain(tail.iter_mut()) {
                if other[col].is_zero() {
                    continue;
                }
                let f = other[col].clone();
                for &j in &support {
                    other[j].sub_mul_assign(&f, &prow[j]);
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        Rref { matrix: Matrix { rows: r, cols: self.cols, data: rows }, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        self.rref().pivots.len()
    }

    /// Basis of `{v : self * v = 0}` as the rows of a matrix in RREF.
    pub fn kernel(&self) -> Matrix<K> {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![K::zero(); self.cols];
            v[f] = K::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.data[i][f].neg_ref();
            }
            out.push(v);
        }
        Matrix::from_rows(self.cols, out).rref().matrix
    }

    /// Basis of `{v : v * self = 0}`, rows in RREF.
    pub fn left_kernel(&self) -> Matrix<K> {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        Ok(matrix.select_columns(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn determinant(&self) -> K {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = K::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return K::zero();
            };
            if p != c {
                a.swap(p, c);
                det = det.neg_ref();
            }
            det = det.mul_ref(&a[c][c]);
            let inv = a[c][c].inv().unwrap();
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].mul_ref(&inv);
                for j in c..n {
                    let t = a[c][j].clone();
                    a[i][j].sub_mul_assign(&f, &t);
                }
            }
        }
        det
    }

    /// Solve `self * x = b` for some `x`, if solvable.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows);
        let col = Matrix::from_columns(self.rows, &[b.to_vec()]);
        let Rref { matrix, pivots } = self.hstack(&col).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = matrix.data[i][self.cols].clone();
        }
        Some(x)
    }
}

/// Row space operations on matrices whose rows span a subspace.
pub mod rowspace {
    use super::*;

    /// True if `v` lies in the row space of the RREF matrix `basis`.
    pub fn contains<K: Field>(basis: &Rref<K>, v: &[K]) -> bool {
        let mut w = v.to_vec();
        for (i, &p) in basis.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (j, b) in basis.matrix.data[i].iter().enumerate() {
                if !b.is_zero() {
                    w[j].sub_mul_assign(&f, b);
                }
            }
        }
        w.iter().all(|c| c.is_zero())
    }

    /// Sum of two row spaces, in RREF.
    pub fn sum<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
        a.vstack(b).rref().matrix
    }

    /// Intersection of two row spaces, in RREF.
    pub fn intersect<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
        assert_eq!(a.cols, b.cols);
        let a = a.rref().matrix;
        let b = b.rref().matrix;
        if a.rows == 0 || b.rows == 0 {
            return Matrix::zeros(0, a.cols);
        }
        let coeffs = a.vstack(&b).left_kernel();
        let mut out = Vec::new();
        for c in coeffs.rows() {
            out.push(a.vec_mul(&c[..a.rows]));
        }
        Matrix::from_rows(a.cols, out).rref().matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<Rational>;

    #[test]
    fn rref_and_kernel() {
        let m = M::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        let k = m.kernel();
        assert_eq!(k.nrows(), 1);
        assert!(m.mul_vec(k.row(0)).iter().all(|c| c.is_zero()));
        assert_eq!(m.rank(), 2);
        assert_eq!(m.left_kernel().nrows(), 1);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = M::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), M::identity(2));
        assert_eq!(m.determinant(), Rational::from(1));
        assert_eq!(M::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn intersection() {
        let a = M::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = M::from_i64(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rowspace::intersect(&a, &b), M::from_i64(&[&[0, 1, 0]]));
    }

    #[test]
    fn solve_system() {
        let m = M::from_i64(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[Rational::from(3), Rational::from(1)]).unwrap();
        assert_eq!(x, vec![Rational::from(2), Rational::from(1)]);
        let s = M::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(s.solve(&[Rational::from(1), Rational::from(2)]).is_none());
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity(v in proptest::collection::vec(-3i64..3, 12)) {
            let rows: Vec<Vec<Rational>> = v.chunks(4).map(|c| c.iter().map(|&x| Rational::from(x)).collect()).collect();
            let m = M::from_rows(4, rows);
            let k = m.kernel();
            proptest::prop_assert_eq!(m.rank() + k.nrows(), 4);
            for r in k.rows() {
                proptest::prop_assert!(m.mul_vec(r).iter().all(|c| c.is_zero()));
            }
            proptest::prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
