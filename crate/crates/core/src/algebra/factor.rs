//! Complete factorization over the rationals.
//!
//! Squarefree decomposition (Yun) followed by Zassenhaus on each squarefree
//! part: factor modulo a small prime, Hensel-lift to a modulus above the
//! Mignotte bound, then recombine the lifted factors by exhaustive subset
//! search. The result is exact; the only failure mode is a modular
//! factorization with more than [`MAX_MODULAR_FACTORS`] factors, which is
//! reported rather than truncated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::poly::RatPoly;
use crate::error::{Error, Result};

/// Recombination enumerates subsets of the modular factors, so this caps
/// the search at a fixed worst case.
pub const MAX_MODULAR_FACTORS: usize = 20;

const CANDIDATE_PRIMES: usize = 6;

/// Factors `p` into monic irreducible factors with multiplicities.
///
/// The factors are sorted by degree, then by coefficients, so the output is
/// deterministic. Their product times `lc(p)` equals `p`.
pub fn factor_over_rationals(p: &RatPoly) -> Result<Vec<(RatPoly, usize)>> {
    match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p)? {
        let (_, prim) = part.primitive_part();
        for f in zassenhaus(&prim)? {
            out.push((RatPoly::from_bigints(&f).monic(), mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
            .then(ma.cmp(mb))
    });
    Ok(out)
}

/// True iff `p` (degree >= 1) is irreducible over the rationals.
pub fn is_irreducible(p: &RatPoly) -> Result<bool> {
    let factors = factor_over_rationals(p)?;
    Ok(factors.len() == 1 && factors[0].1 == 1)
}

/// Yun's algorithm: monic pairwise coprime squarefree `a_i` with
/// `monic(p) = prod a_i^i`.
pub fn squarefree_decomposition(p: &RatPoly) -> Result<Vec<(RatPoly, usize)>> {
    let a = p.monic();
    if a.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let b = a.derivative();
    let c = a.gcd(&b)?;
    let mut w = a.div_exact(&c)?;
    let mut y = b.div_exact(&c)?;
    let mut z = &y - &w.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let g = if z.is_zero() { w.monic() } else { w.gcd(&z)? };
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g)?;
        y = z.div_exact(&g)?;
        z = &y - &w.derivative();
        i += 1;
    }
    Ok(out)
}

type IntPoly = Vec<BigInt>;

fn int_trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    int_trim(out)
}

fn symmetric_mod(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    int_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_int(a: &[u64]) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact division over the integers; `None` unless `b` divides `a` in Z[t].
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let db = b.len().checked_sub(1)?;
    if a.len() <= db {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(int_trim(q))
}

fn primitive(a: IntPoly) -> IntPoly {
    let mut g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return a;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    a.into_iter().map(|c| c / &g).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient.
fn zassenhaus(f: &[BigInt]) -> Result<Vec<IntPoly>> {
    let d = f.len() - 1;
    if d == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let lc = f[d].clone();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::from_int_poly(f, p);
        let dfp = modp::derivative(&fp, p);
        if dfp.is_empty() || modp::deg(&modp::gcd(&fp, &dfp, p)) != Some(0) {
            continue;
        }
        let factors = modp::factor_squarefree(&modp::monic(&fp, p), p, &mut rng);
        if factors.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= CANDIDATE_PRIMES {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is always admissible");
    if modular.len() > MAX_MODULAR_FACTORS {
        return Err(Error::FactorizationIncomplete {
            degree: d,
            modular_factors: modular.len(),
            limit: MAX_MODULAR_FACTORS,
        });
    }

    // Any factor g of f satisfies |g_i| <= 2^d * ||f||_2, and the
    // recombination works with lc(f) * g.
    let norm2_sq = f.iter().fold(BigInt::zero(), |acc, c| acc + c * c);
    let norm2 = norm2_sq.sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << d) * norm2;
    let target = bound * 2 + 1;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut exponent = 1;
    while modulus <= target {
        modulus *= &pb;
        exponent += 1;
    }

    let lifted = multifactor_lift(f, &modular, p, exponent, &modulus);
    Ok(recombine(f.to_vec(), lifted, &modulus))
}

/// Lifts `f = lc * prod factors (mod p)` to monic factors modulo `p^exponent`.
fn multifactor_lift(f: &[BigInt], factors: &[Fp], p: u64, exponent: u32, modulus: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero").clone();
        let inv = lc
            .modinv(modulus)
            .expect("leading coefficient is a unit modulo p^k");
        let scaled: IntPoly = f.iter().map(|c| c * &inv).collect();
        return vec![symmetric_mod(&scaled, modulus)];
    }
    let mid = factors.len() / 2;
    let g = factors[..mid]
        .iter()
        .fold(vec![1u64], |acc, h| modp::mul(&acc, h, p));
    let lc_p = modp::from_int_poly(&[f.last().unwrap().clone()], p)[0];
    let h = modp::scale(
        &factors[mid..]
            .iter()
            .fold(vec![1u64], |acc, h| modp::mul(&acc, h, p)),
        lc_p,
        p,
    );
    let (big_g, big_h) = hensel_pair(f, &g, &h, p, exponent);
    let mut out = multifactor_lift(&symmetric_mod(&big_g, modulus), &factors[..mid], p, exponent, modulus);
    out.extend(multifactor_lift(&symmetric_mod(&big_h, modulus), &factors[mid..], p, exponent, modulus));
    out
}

/// Linear Hensel lifting of `f = g h (mod p)` with `g` monic to a
/// factorization modulo `p^exponent`.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, exponent: u32) -> (IntPoly, IntPoly) {
    let (_, t) = modp::bezout(g, h, p);
    let mut big_g = to_int(g);
    let mut big_h = to_int(h);
    *big_h.last_mut().expect("nonzero") = f.last().expect("nonzero").clone();
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    for _ in 1..exponent {
        let prod = int_mul(&big_g, &big_h);
        let n = f.len().max(prod.len());
        let err: IntPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                let diff = a - b;
                debug_assert!((&diff % &pk).is_zero());
                diff / &pk
            })
            .collect();
        let e = modp::from_int_poly(&err, p);
        let dg = modp::rem(&modp::mul(&t, &e, p), g, p);
        let dh = modp::div_rem(&modp::sub(&e, &modp::mul(h, &dg, p), p), g, p).0;
        for (i, c) in dg.iter().enumerate() {
            big_g[i] += &pk * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            if i >= big_h.len() {
                big_h.push(BigInt::zero());
            }
            big_h[i] += &pk * BigInt::from(*c);
        }
        pk *= &pb;
    }
    (big_g, big_h)
}

fn recombine(mut f: IntPoly, mut factors: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut result = Vec::new();
    let mut size = 1;
    while 2 * size <= factors.len() {
        let mut found = None;
        let lc = f.last().expect("nonzero").clone();
        let f0 = f[0].clone();
        for subset in combinations(factors.len(), size) {
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| symmetric_mod(&int_mul(&acc, &factors[i]), modulus));
            // constant-term screen before the full trial division
            if !f0.is_zero() {
                let c0 = prod.first().cloned().unwrap_or_default();
                if c0.is_zero() || !(&lc * &f0 % &c0).is_zero() {
                    continue;
                }
            }
            let candidate = primitive(prod);
            if let Some(q) = int_div_exact(&f, &candidate) {
                found = Some((subset, candidate, q));
                break;
            }
        }
        match found {
            Some((subset, candidate, q)) => {
                result.push(candidate);
                f = q;
                factors = factors
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        result.push(primitive(f));
    }
    result
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn splits_difference_of_squares() {
        let fs = factor_over_rationals(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(fs, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn golden_quadratic_is_irreducible() {
        let fs = factor_over_rationals(&p(&[1, -3, 1])).unwrap();
        assert_eq!(fs, vec![(p(&[1, -3, 1]), 1)]);
    }

    #[test]
    fn quartic_is_irreducible() {
        assert!(is_irreducible(&p(&[1, -1, -1, -1, 1])).unwrap());
    }

    #[test]
    fn constant_input_rejected() {
        assert_eq!(factor_over_rationals(&p(&[3])), Err(Error::ConstantPolynomial));
        assert_eq!(factor_over_rationals(&RatPoly::zero()), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn multiplicities_from_yun() {
        // (t+1)^4 (t^2 - 3t + 1), times -1
        let f = -(&p(&[1, 1]).pow(4) * &p(&[1, -3, 1]));
        let fs = factor_over_rationals(&f).unwrap();
        assert_eq!(fs, vec![(p(&[1, 1]), 4), (p(&[1, -3, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_quartic() {
        // t^4 + 1 is irreducible over Q but splits modulo every prime
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])).unwrap());
        // t^4 - 10 t^2 + 1 (minimal polynomial of sqrt2 + sqrt3)
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
    }

    #[test]
    fn cyclotomic_product() {
        // t^12 - 1 = prod of cyclotomic polynomials for d | 12
        let fs = factor_over_rationals(&RatPoly::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        let degrees: Vec<usize> = fs.iter().map(|(f, _)| f.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn non_monic_factors() {
        // (2t + 1)(3t^2 - 1)
        let f = &p(&[1, 2]) * &p(&[-1, 0, 3]);
        let fs = factor_over_rationals(&f).unwrap();
        assert_eq!(fs.len(), 2);
        let prod = fs.iter().fold(RatPoly::one(), |acc, (g, _)| &acc * g);
        assert_eq!(prod.scale(f.leading().unwrap()), f);
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 1), vec![vec![0], vec![1], vec![2]]);
    }
}
