//! Factorization over the rationals: squarefree decomposition, modular
//! factorization, quadratic Hensel lifting and subset recombination.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::modpoly::{self, Fp};
use super::poly::{squarefree_decomposition, RatPoly};

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zreduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1u32;
    ztrim(
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

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zreduce(&out, m)
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    zreduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    zreduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect::<Vec<_>>(),
        m,
    )
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let mut r = zreduce(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + b.len() - 1].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(b.len() - 1);
    (ztrim(q), ztrim(r))
}

fn lift_fp(a: &Fp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn zinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from `f = g h (mod m)` with `s g + t h = 1 (mod m)`
/// to the same identities modulo `m^2`. `f` and `h` are monic.
fn hensel_step(
    f: &[BigInt],
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = zsub(f, &zmul(g, h, m2), m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e, m2), h, m2);
    let g2 = zadd(&zadd(g, &zmul(t, &e, m2), m2), &zmul(&q, g, m2), m2);
    let h2 = zadd(h, &r, m2);
    let b = zsub(&zadd(&zmul(s, &g2, m2), &zmul(t, &h2, m2), m2), &[BigInt::one()], m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b, m2), &h2, m2);
    let s2 = zsub(s, &d, m2);
    let t2 = zsub(&zsub(t, &zmul(t, &b, m2), m2), &zmul(&c, &g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts the monic modular factorization `f = prod factors (mod p)` to
/// monic factors modulo `modulus` (a power of `p`); `f` must be monic mod `modulus`.
fn multi_lift(f: &ZPoly, factors: &[Fp], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zreduce(f, modulus)];
    }
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(vec![1u64], |acc, g| modpoly::mul(&acc, g, p));
    let h0 = factors[mid..].iter().fold(vec![1u64], |acc, g| modpoly::mul(&acc, g, p));
    let (one, s0, t0) = modpoly::xgcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
    let mut m = BigInt::from(p);
    while &m < modulus {
        m = &m * &m;
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
    }
    let g = zreduce(&g, modulus);
    let h = zreduce(&h, modulus);
    let mut out = multi_lift(&g, &factors[..mid], p, modulus);
    out.extend(multi_lift(&h, &factors[mid..], p, modulus));
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Factor bound: every integer factor of `f` has coefficients below
/// `2^deg * ||f||_2`, scaled by the leading coefficient for recombination.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    (BigInt::one() << n) * norm * f.last().unwrap().abs()
}

fn primitive(a: &[BigInt]) -> ZPoly {
    RatPoly::from_bigints(a).primitive_integer_form()
}

/// Exact division over `Z[x]`; `None` if `d` does not divide `a`.
fn zdiv_exact(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let q = RatPoly::from_bigints(a).div_exact(&RatPoly::from_bigints(d))?;
    if q.coeffs().iter().all(|c| c.is_integer()) {
        Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors of a primitive squarefree integer polynomial of
/// positive degree.
fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    if f[0].is_zero() {
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&primitive(&f[1..])));
        return out;
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);

    // pick the admissible prime with the fewest modular factors among a few tries
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modpoly::from_ints(f, p);
        if modpoly::deg(&fp) != n || !modpoly::is_squarefree(&fp, p) {
            continue;
        }
        let facs = modpoly::factor_squarefree(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some prime is admissible");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    let bound = coefficient_bound(f) * 2 + 1;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
    }
    let lc_inv = zinv(&lc, &modulus);
    let f_monic: ZPoly = zreduce(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus);
    let lifted = multi_lift(&f_monic, &modular, p, &modulus);

    // recombination over subsets of increasing size
    let mut remaining: Vec<ZPoly> = lifted;
    let mut rest: ZPoly = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in combinations(remaining.len(), s) {
            let b = rest.last().unwrap().clone();
            let mut g: ZPoly = vec![b];
            for &i in &subset {
                g = zmul(&g, &remaining[i], &modulus);
            }
            let g = primitive(&zsymmetric(&g, &modulus));
            if g.len() < 2 {
                continue;
            }
            if let Some(q) = zdiv_exact(&rest, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                rest = primitive(&q);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, r)| r)
                    .collect();
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

/// Complete factorization over the rationals into primitive irreducible
/// factors with multiplicities. The product of `factor^multiplicity` equals
/// `p` up to a rational scalar.
pub fn factor_rational(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for g in factor_squarefree_primitive(&part.primitive_integer_form()) {
            out.push((RatPoly::from_bigints(&g), mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    out
}

/// Distinct irreducible factors, ignoring multiplicity.
pub fn irreducible_factors(p: &RatPoly) -> Vec<RatPoly> {
    factor_rational(p).into_iter().map(|(f, _)| f).collect()
}

pub fn is_irreducible(p: &RatPoly) -> bool {
    let f = factor_rational(p);
    p.degree() >= 1 && f.len() == 1 && f[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    fn product(fs: &[(RatPoly, usize)]) -> RatPoly {
        fs.iter().fold(RatPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    #[test]
    fn x4_minus_1() {
        let f = factor_rational(&p(&[-1, 0, 0, 0, 1]));
        assert_eq!(
            f,
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1), (p(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn golden_polynomial_is_irreducible() {
        assert_eq!(factor_rational(&p(&[-1, -1, 1])), vec![(p(&[-1, -1, 1]), 1)]);
    }

    #[test]
    fn unit_circle_quartic_splits() {
        // 25x^4 + 14x^2 + 25 = (5x^2 - 6x + 5)(5x^2 + 6x + 5)
        let f = p(&[25, 0, 14, 0, 25]);
        let fs = factor_rational(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), f);
        assert!(fs.iter().any(|(g, _)| *g == p(&[5, -6, 5])));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = p(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_rational(&f), vec![(f.clone(), 1)]);
        // x^8 - 40x^6 + 352x^4 - 960x^2 + 576 = minpoly of sqrt2+sqrt3+sqrt5
        let g = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert_eq!(factor_rational(&g).len(), 1);
    }

    #[test]
    fn multiplicities_and_content() {
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[3, 0, 2])) * &p(&[6]);
        let fs = factor_rational(&f);
        assert_eq!(fs, vec![(p(&[-1, 1]), 2), (p(&[3, 0, 2]), 1)]);
    }

    #[test]
    fn non_monic_factors() {
        let f = &(&p(&[1, 3]) * &p(&[-2, 5])) * &p(&[7, 1, 4]);
        let fs = factor_rational(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs).primitive(), f.primitive());
    }

    #[test]
    fn combos() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 1), vec![vec![0], vec![1], vec![2]]);
    }
}
