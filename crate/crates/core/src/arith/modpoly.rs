//! Polynomials over `Z/pZ` for a small odd prime `p`, with distinct-degree
//! and equal-degree (Cantor–Zassenhaus) factorization.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;

/// Dense polynomial over `Z/pZ`, lowest degree first, trimmed.
pub(crate) type Fp = Vec<u64>;

pub(crate) fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn deg(a: &Fp) -> usize {
    a.len().saturating_sub(1)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduces integer coefficients modulo `p`.
pub(crate) fn from_ints(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect(),
    )
}

#[cfg(test)]
pub(crate) fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
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
    trim(out)
}

pub(crate) fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub(crate) fn div_rem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by the zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + b.len() - 1] * inv % p;
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * bj % p) % p;
            }
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    div_rem(a, b, p).1
}

/// Monic gcd.
pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub(crate) fn xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = inv_mod(*r0.last().expect("nonzero gcd"), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// `base^e mod (m, p)`.
fn pow_poly_mod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub(crate) fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut i = 0;
    let pe = BigUint::from(p);
    while deg(&rest) >= 2 * (i + 1) {
        i += 1;
        h = pow_poly_mod(&h, &pe, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if deg(&g) > 0 {
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((g, i));
        }
    }
    if deg(&rest) > 0 {
        let d = deg(&rest);
        out.push((rest, d));
    }
    out
}

fn random_poly(n: usize, p: u64, rng: &mut ChaCha8Rng) -> Fp {
    trim((0..n).map(|_| rng.next_u64() % p).collect())
}

/// Splits a monic product of distinct irreducibles of degree `d`.
pub(crate) fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = deg(f);
    if n == d {
        return vec![f.clone()];
    }
    let e = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
    loop {
        let a = random_poly(n, p, rng);
        if deg(&a) == 0 {
            continue;
        }
        let g = gcd(&a, f, p);
        let split = if deg(&g) > 0 && deg(&g) < n {
            g
        } else {
            let b = pow_poly_mod(&a, &e, f, p);
            let g = gcd(&sub(&b, &vec![1], p), f, p);
            if deg(&g) == 0 || deg(&g) == n {
                continue;
            }
            g
        };
        let other = div_rem(f, &split, p).0;
        let mut out = equal_degree(&split, d, p, rng);
        out.extend(equal_degree(&monic(&other, p), d, p, rng));
        return out;
    }
}

/// Irreducible monic factors of a squarefree polynomial over `Z/pZ`.
pub(crate) fn factor_squarefree(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out
}

pub(crate) fn is_squarefree(f: &Fp, p: u64) -> bool {
    deg(&gcd(f, &derivative(f, p), p)) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::SeedableRng;

    #[test]
    fn factors_multiply_back() {
        let p = 7;
        // (x+1)(x+2)(x^2+1)(x^3+x+1) mod 7, all distinct
        let f = mul(
            &mul(&mul(&vec![1, 1], &vec![2, 1], p), &vec![1, 0, 1], p),
            &vec![1, 1, 0, 1],
            p,
        );
        assert!(is_squarefree(&f, p));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f, p, &mut rng);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, p));
        assert_eq!(prod, monic(&f, p));
        let mut degs: Vec<usize> = fs.iter().map(deg).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 3]);
    }

    #[test]
    fn xgcd_bezout() {
        let p = 11;
        let a: Fp = vec![3, 0, 1];
        let b: Fp = vec![1, 1];
        let (g, s, t) = xgcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }
}
