//! Factorization of univariate polynomials over Q.
//!
//! Squarefree parts come from Yun's algorithm. Each squarefree part is made
//! primitive over Z, factored modulo a small prime (distinct degree, then
//! Cantor-Zassenhaus), Hensel lifted past the Mignotte bound and recombined.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, Rational, UniPoly};

type QPoly = UniPoly<Rational>;

/// `f = unit * prod p_i^{m_i}` with each `p_i` monic irreducible over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(QPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        let mut acc = QPoly::constant(self.unit.clone());
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m as u32));
        }
        acc
    }

    pub fn distinct_factors(&self) -> usize {
        self.factors.len()
    }
}

/// Yun's algorithm. Returns monic `(a_i, i)` with `f = lc * prod a_i^i`,
/// omitting trivial `a_i`.
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

/// Complete factorization over Q. The zero polynomial has unit zero and no factors.
pub fn factor_rational(f: &QPoly) -> Factorization {
    let unit = f.leading().cloned().unwrap_or_else(Rational::zero);
    let mut factors = Vec::new();
    for (part, m) in squarefree_decomposition(f) {
        for p in factor_squarefree(&part) {
            factors.push((p, m));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .cmp(&(b.0.degree(), b.0.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()))
    });
    Factorization { unit, factors }
}

/// Monic irreducible factors of a monic squarefree polynomial.
fn factor_squarefree(f: &QPoly) -> Vec<QPoly> {
    let mut out = Vec::new();
    let mut f = f.clone();
    if f.valuation() == Some(1) {
        out.push(QPoly::from_i64(&[0, 1]));
        f = f.div_exact(&QPoly::from_i64(&[0, 1])).expect("x divides");
    }
    match f.degree() {
        Some(0) | None => return out,
        Some(1) => {
            out.push(f);
            return out;
        }
        _ => {}
    }
    let g = primitive_integer(&f);
    for h in zassenhaus(&g) {
        out.push(to_rational_poly(&h).monic());
    }
    out
}

fn to_rational_poly(f: &[BigInt]) -> QPoly {
    QPoly::new(f.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Primitive integer multiple with positive leading coefficient.
fn primitive_integer(f: &QPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    for c in &mut v {
        *c = &*c / &g;
    }
    v
}

fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = lc.abs() * (BigInt::one() << n) * norm1;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);

    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut g = f.to_vec();
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let glc = g.last().unwrap().clone();
            let mut cand = vec![glc.clone()];
            for &i in &idx {
                cand = zmul_mod(&cand, &remaining[i], &modulus);
            }
            let cand = symmetric(&cand, &modulus);
            let cand = primitive_int(&cand);
            if let Some(q) = zdiv_exact(&g, &cand) {
                found.push(cand);
                g = q;
                let mut keep = Vec::new();
                for (i, h) in remaining.into_iter().enumerate() {
                    if !idx.contains(&i) {
                        keep.push(h);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
            if !next_subset(&mut idx, r) {
                break;
            }
        }
        s += 1;
    }
    found.push(primitive_int(&g));
    found
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn symmetric(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half: BigInt = m / 2;
    let mut v: Vec<BigInt> = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    ztrim(&mut v);
    v
}

fn primitive_int(f: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in f {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return f.to_vec();
    }
    if f.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

fn ztrim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zmul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in &mut out {
        *c = c.mod_floor(m);
    }
    ztrim(&mut out);
    out
}

/// Exact division over Z, `None` if it does not divide.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    let lb = &b[db];
    for i in (0..q.len()).rev() {
        let (c, r) = rem[i + db].div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        q[i] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

// Arithmetic in F_p[x] on little-endian u64 vectors, p < 2^31.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn reduce_int(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    trim(&mut v);
    v
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut v: Vec<u64> =
        (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect();
    trim(&mut v);
    v
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let li = inv_mod(b[db], p);
    let mut q = vec![0u64; rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db] * li % p;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * y % p) % p;
            }
        }
        q[i] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut q);
    (q, rem)
}

fn pmonic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv_mod(l, p);
            a.iter().map(|&c| c * li % p).collect()
        }
    }
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

/// Returns `(g, s, t)` with `s a + t b = g` monic.
fn pxgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = psub(&s0, &pmul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = psub(&t0, &pmul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let li = inv_mod(*r0.last().unwrap(), p);
    let sc = |v: &[u64]| -> Vec<u64> { v.iter().map(|&c| c * li % p).collect() };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn pderiv(a: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    trim(&mut v);
    v
}

fn ppow_mod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = pdivrem(base, m, p).1;
    for i in 0..e.bits() {
        if e.bit(i) {
            r = pdivrem(&pmul(&r, &b, p), m, p).1;
        }
        b = pdivrem(&pmul(&b, &b, p), m, p).1;
    }
    r
}

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Pick the prime (among the first few suitable ones) giving the fewest
/// modular factors, returning the monic factorization of `f / lc mod p`.
fn choose_prime(f: &[BigInt]) -> (u64, Vec<Vec<u64>>) {
    let n = f.len() - 1;
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let extra = (101u64..).step_by(2).filter(|&q| is_prime(q));
    for p in PRIMES.iter().copied().chain(extra) {
        let fp = reduce_int(f, p);
        if fp.len() != n + 1 {
            continue;
        }
        if pgcd(&fp, &pderiv(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&pmonic(&fp, p), p);
        let better = best.as_ref().is_none_or(|b| facs.len() < b.1.len());
        if better {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best.expect("some prime works")
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn factor_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 1;
    let pe = BigUint::from(p);
    while f.len() > 1 && 2 * d < f.len() {
        h = ppow_mod(&h, &pe, &f, p);
        let g = pgcd(&psub(&h, &x, p), &f, p);
        if g.len() > 1 {
            equal_degree(&g, d, p, &mut rng, &mut out);
            f = pdivrem(&f, &g, p).0;
            h = pdivrem(&h, &f, p).1;
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push(pmonic(&f, p));
    }
    out
}

fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = f.len() - 1;
    if n == d {
        out.push(pmonic(f, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Vec<u64> = {
            let mut v: Vec<u64> = (0..n).map(|_| rng.random_range(0..p)).collect();
            trim(&mut v);
            v
        };
        if a.len() < 2 {
            continue;
        }
        let b = psub(&ppow_mod(&a, &e, f, p), &[1], p);
        let g = pgcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = pdivrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&q, d, p, rng, out);
            return;
        }
    }
}

/// Lift `f = lc * prod g_i mod p` to `mod p^k`, factors monic.
fn hensel_lift(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    let lc = f.last().unwrap();
    let lc_inv = lc.modinv(&modulus).expect("lc invertible");
    let mut target: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let mut out = Vec::new();
    for i in 0..factors.len() - 1 {
        let g0 = &factors[i];
        let mut h0 = vec![1u64];
        for fac in &factors[i + 1..] {
            h0 = pmul(&h0, fac, p);
        }
        let (g, h) = lift_pair(&target, g0, &h0, p, k);
        out.push(g);
        target = h;
    }
    out.push(target);
    out
}

/// Lift a monic `F = g h mod p` to `mod p^k`.
fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let pb = BigInt::from(p);
    let (_, _, t) = pxgcd(g0, h0, p);
    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut pk = pb.clone();
    for _ in 1..k {
        let next = &pk * &pb;
        let gh = zmul_mod(&g, &h, &next);
        let mut e: Vec<BigInt> = (0..f.len())
            .map(|i| {
                let a = f[i].mod_floor(&next);
                let b = gh.get(i).cloned().unwrap_or_default();
                ((a - b).mod_floor(&next)) / &pk
            })
            .collect();
        ztrim(&mut e);
        let ep = reduce_int(&e, p);
        let dg = pdivrem(&pmul(&ep, &t, p), g0, p).1;
        let dh = pdivrem(&psub(&ep, &pmul(&dg, h0, p), p), g0, p).0;
        g = add_scaled(&g, &dg, &pk);
        h = add_scaled(&h, &dh, &pk);
        pk = next;
    }
    (g, h)
}

fn add_scaled(a: &[BigInt], d: &[u64], pk: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(d.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + pk * BigInt::from(d.get(i).copied().unwrap_or(0)))
        .collect()
}
