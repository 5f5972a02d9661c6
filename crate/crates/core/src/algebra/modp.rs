//! Dense polynomials over a small prime field `Z/pZ`, stored as `Vec<u64>`
//! lowest degree first with no trailing zeros.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

pub type Fp = Vec<u64>;

pub fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn from_int_poly(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced coefficient fits"))
            .collect(),
    )
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

#[cfg(test)]
pub fn add(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Division with remainder; `b` must be nonzero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    let db = deg(b).expect("division by zero polynomial mod p");
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if a.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + db], inv, p);
        if c == 0 {
            continue;
        }
        q[i] = c;
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - mul_mod(c, y, p)) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Fp {
    div_rem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        Some(&lc) => scale(a, inv_mod(lc, p), p),
        None => Vec::new(),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    monic(&x, p)
}

/// Returns `(s, t)` with `s*a + t*b = 1`; `a` and `b` must be coprime.
pub fn bezout(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(r0.len(), 1, "bezout called on non-coprime polynomials");
    let inv = inv_mod(r0[0], p);
    (scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &[u64], p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}

/// `base^e mod m`.
pub fn pow_poly_mod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Fp {
    let mut acc: Fp = rem(&[1], m, p);
    let base = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &base, p), m, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(g, d)` where `g` is the product of all irreducible factors of
/// degree `d`.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x: Fp = vec![0, 1];
    let mut h = rem(&x, &rest, p);
    let pe = BigUint::from(p);
    let mut d = 1;
    while deg(&rest).unwrap_or(0) >= 2 * d {
        h = pow_poly_mod(&h, &pe, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if deg(&g).unwrap_or(0) > 0 {
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(dr) = deg(&rest) {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of irreducibles of degree `d`.
/// Requires odd `p`.
pub fn equal_degree<R: Rng>(g: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = deg(g).expect("nonzero");
    if n == d {
        return vec![monic(g, p)];
    }
    let exponent = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(&pow_poly_mod(&a, &exponent, g, p), &[1], p);
        let h = gcd(&b, g, p);
        let dh = deg(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            let other = div_rem(g, &h, p).0;
            let mut out = equal_degree(&h, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// All monic irreducible factors of a monic squarefree `f` over `Z/pZ`.
pub fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<Fp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn splits_product_of_linears() {
        // (x-1)(x-2)(x-3) mod 7
        let p = 7;
        let f = mul(&mul(&[6, 1], &[5, 1], p), &[4, 1], p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f, p, &mut rng);
        assert_eq!(fs, vec![vec![4, 1], vec![5, 1], vec![6, 1]]);
    }

    #[test]
    fn distinct_degree_separates() {
        // (x^2 + 1)(x + 1) mod 3: x^2+1 is irreducible mod 3
        let p = 3;
        let f = mul(&[1, 0, 1], &[1, 1], p);
        let dd = distinct_degree(&f, p);
        assert_eq!(dd, vec![(vec![1, 1], 1), (vec![1, 0, 1], 2)]);
    }

    #[test]
    fn bezout_identity() {
        let p = 11;
        let a = vec![1, 0, 1];
        let b = vec![3, 1];
        let (s, t) = bezout(&a, &b, p);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}
