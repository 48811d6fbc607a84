use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::decompose::decompose_with;
use super::{verify_direct_sum, DecomposeOptions, DecompositionCertificate, DirectSum, DirectSumPart};
use crate::apolarity::{concise_reduce, GradedSubspace};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::linalg::Matrix;
use crate::poly::{LinearMap, Poly, Ring};

/// Split every direct summand further until each part is indecomposable,
/// a limit normal form, or a power of a linear form. Parts are ordered by
/// their RREF subspace matrices.
pub fn refine(cert: &DecompositionCertificate, f: &Poly, opts: &DecomposeOptions) -> Result<DecompositionCertificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7265_6669_6e65);
    refine_with(cert, f, opts, &mut rng)
}

fn refine_with(
    cert: &DecompositionCertificate,
    f: &Poly,
    opts: &DecomposeOptions,
    rng: &mut ChaCha8Rng,
) -> Result<DecompositionCertificate> {
    Ok(match cert {
        DecompositionCertificate::DirectSum(ds) if !ds.non_unique => {
            DecompositionCertificate::DirectSum(refine_direct_sum(f, ds, opts, rng)?)
        }
        DecompositionCertificate::NotConcise { reduction, inner } => DecompositionCertificate::NotConcise {
            reduction: reduction.clone(),
            inner: Box::new(refine_with(inner, &reduction.reduced, opts, rng)?),
        },
        c => c.clone(),
    })
}

fn refine_direct_sum(f: &Poly, ds: &DirectSum, opts: &DecomposeOptions, rng: &mut ChaCha8Rng) -> Result<DirectSum> {
    let n = f.nvars();
    let mut parts: Vec<DirectSumPart> = Vec::new();
    for part in &ds.parts {
        if part.subspace.dim() == 1 {
            parts.push(part.clone());
            continue;
        }
        let red = concise_reduce(&part.summand)?;
        let e = red.embedding.matrix();
        match decompose_with(&red.reduced, opts, rng)? {
            DecompositionCertificate::DirectSum(inner) => {
                let inner = refine_direct_sum(&red.reduced, &inner, opts, rng)?;
                for p in inner.parts {
                    parts.push(DirectSumPart {
                        subspace: GradedSubspace::from_rows(Ring::S, n, 1, p.subspace.basis().mul(e)),
                        summand: p.summand.substitute(e),
                    });
                }
            }
            _ => parts.push(part.clone()),
        }
    }
    parts.sort_by(|a, b| compare_rows(a.subspace.basis(), b.subspace.basis()));
    let forms: Vec<Vec<Rational>> = parts.iter().flat_map(|p| p.subspace.basis().rows().to_vec()).collect();
    let b = Matrix::from_rows(n, forms).inverse()?;
    let out = DirectSum { parts, coordinate_change: LinearMap::new(b), non_unique: false };
    verify_direct_sum(f, &out).map_err(|e| Error::Internal(format!("refined direct sum is invalid: {e:?}")))?;
    Ok(out)
}

fn compare_rows(a: &Matrix, b: &Matrix) -> std::cmp::Ordering {
    let fa: Vec<&Rational> = a.rows().iter().flatten().collect();
    let fb: Vec<&Rational> = b.rows().iter().flatten().collect();
    fb.cmp(&fa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirsum::decompose;
    use crate::poly::{default_names, parse_poly};

    fn s(text: &str, n: usize) -> Poly {
        parse_poly(text, Ring::S, &default_names(Ring::S, n)).unwrap()
    }

    fn refined(f: &Poly) -> DirectSum {
        let opts = DecomposeOptions::default();
        let c = decompose(f, &opts).unwrap();
        match refine(&c, f, &opts).unwrap() {
            DecompositionCertificate::DirectSum(ds) => ds,
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn fermat_three_parts() {
        let f = s("x^3 + y^3 + z^3", 3);
        let ds = refined(&f);
        let summands: Vec<String> = ds.parts.iter().map(|p| p.summand.to_string()).collect();
        assert_eq!(summands, vec!["x^3", "y^3", "z^3"]);
    }

    #[test]
    fn cube_plus_binary_cubic() {
        let f = s("x^3 + 2*y^3 + 6*y*z^2", 3);
        assert_eq!(refined(&f).parts.len(), 3);
    }

    #[test]
    fn determinant() {
        let f = s("x1*x4 - x2*x3", 4);
        let opts = DecomposeOptions::default();
        let c = decompose(&f, &opts).unwrap();
        let ds = match refine(&c, &f, &opts).unwrap() {
            DecompositionCertificate::DirectSum(ds) => ds,
            c => panic!("unexpected {c:?}"),
        };
        // quadrics split into rank-one pieces along a non-canonical basis
        assert!(ds.non_unique);
        assert_eq!(ds.parts.len(), 4);
    }
}
