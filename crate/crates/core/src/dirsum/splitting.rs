use crate::apolarity::is_concise;
use crate::error::{Error, Result};
use crate::field::{Field, Rational, UniPoly};
use crate::linalg::Matrix;
use crate::poly::{Basis, LinearMap, Poly};

/// Basis of the splitting maps of a concise form.
///
/// A map is stored as the matrix whose column `j` is `L(a_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingSpace<K: Field = Rational> {
    pub basis: Vec<LinearMap<K>>,
    pub contains_identity: bool,
}

impl<K: Field> SplittingSpace<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The member `sum c_i basis_i`.
    pub fn combination(&self, coeffs: &[K]) -> Matrix<K> {
        let n = self.basis[0].matrix().nrows();
        let mut m = Matrix::zeros(n, n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m = m.add(&b.matrix().scale(c));
        }
        m
    }

    pub fn contains(&self, m: &Matrix<K>) -> bool {
        let rows: Vec<Vec<K>> = self.basis.iter().map(|b| flatten(b.matrix())).collect();
        let n2 = m.nrows() * m.ncols();
        let r = Matrix::from_rows(n2, rows).rref();
        crate::linalg::rowspace::contains(&r, &flatten(m))
    }
}

fn flatten<K: Field>(m: &Matrix<K>) -> Vec<K> {
    m.rows().iter().flat_map(|r| r.iter().cloned()).collect()
}

/// Solve for all `L` with `a_i L(a_j) - a_j L(a_i)` apolar to `f`.
///
/// The condition is tested on the pivot coordinates of the image of
/// `T_2 -> S_{d-2}`, which suffices since an element of that image vanishes
/// iff its pivot coordinates do.
pub fn splitting_space<K: Field>(f: &Poly<K>) -> Result<SplittingSpace<K>> {
    if !is_concise(f)? {
        return Err(Error::NotConciseInput);
    }
    let n = f.nvars();
    let d = f.degree();
    // second partials a_i a_k -| F, restricted to pivot coordinates
    let second: Vec<Vec<Vec<K>>> = if d < 2 {
        vec![vec![Vec::new(); n]; n]
    } else {
        let raw: Vec<Vec<Vec<K>>> =
            (0..n).map(|i| (0..n).map(|k| f.partial(i).partial(k).to_vector()).collect()).collect();
        let width = Basis::get(n, d - 2).len();
        let all: Vec<Vec<K>> = raw.iter().flat_map(|r| r.iter().cloned()).collect();
        let pivots = Matrix::from_rows(width, all).rref().pivots;
        raw.into_iter().map(|r| r.into_iter().map(|v| pivots.iter().map(|&p| v[p].clone()).collect()).collect()).collect()
    };
    let h2 = second[0][0].len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut a = Matrix::<K>::zeros(pairs.len() * h2, n * n);
    for (pi, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            for p in 0..h2 {
                // + M_kj a_i a_k - M_ki a_j a_k
                let row = pi * h2 + p;
                let v = &second[i][k][p];
                if !v.is_zero() {
                    let cur = a.get(row, k * n + j).add_ref(v);
                    a.set(row, k * n + j, cur);
                }
                let w = &second[j][k][p];
                if !w.is_zero() {
                    let cur = a.get(row, k * n + i).sub_ref(w);
                    a.set(row, k * n + i, cur);
                }
            }
        }
    }
    let kernel = a.kernel();
    let basis: Vec<LinearMap<K>> = kernel
        .rows()
        .iter()
        .map(|v| LinearMap::new(Matrix::from_rows(n, v.chunks(n).map(|c| c.to_vec()).collect())))
        .collect();
    let mut space = SplittingSpace { basis, contains_identity: false };
    space.contains_identity = space.contains(&Matrix::identity(n));
    if !space.contains_identity {
        return Err(Error::Internal("identity is not a splitting map".into()));
    }
    Ok(space)
}

/// Monic minimal polynomial of a square matrix, by the first linear
/// dependency among `I, M, M^2, ..`.
pub fn minimal_polynomial<K: Field>(m: &Matrix<K>) -> UniPoly<K> {
    let n = m.nrows();
    let mut powers = vec![flatten(&Matrix::<K>::identity(n))];
    let mut cur = Matrix::identity(n);
    for k in 1..=n {
        cur = cur.mul(m);
        powers.push(flatten(&cur));
        let cols = Matrix::from_columns(n * n, &powers[..k]);
        if let Some(x) = cols.solve(&powers[k]) {
            let mut c: Vec<K> = x.iter().map(|v| v.neg_ref()).collect();
            c.push(K::one());
            return UniPoly::new(c);
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}
