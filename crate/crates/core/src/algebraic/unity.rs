//! Exact root-of-unity detection.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::AlgebraicNumber;
use crate::arith::RatPoly;

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// `x^n mod m`.
fn x_pow_mod(n: u64, m: &RatPoly) -> RatPoly {
    let mut acc = RatPoly::one();
    let x = RatPoly::x().rem(m);
    for i in (0..64 - n.leading_zeros()).rev() {
        acc = (&acc * &acc).rem(m);
        if (n >> i) & 1 == 1 {
            acc = (&acc * &x).rem(m);
        }
    }
    acc
}

/// The multiplicative order of `a` when it is a root of unity.
///
/// Decided exactly: a root of unity of order `n` has the `n`-th cyclotomic
/// polynomial as minimal polynomial, so `phi(n) = deg` and `n <= 2 deg^2`;
/// each candidate is tested by exact division of `x^n - 1`.
pub fn root_of_unity_order(a: &AlgebraicNumber) -> Option<u64> {
    let p = a.minpoly();
    if !p.leading().abs().is_one() || a.is_zero() {
        return None;
    }
    if p.coeff(0).abs() != BigRational::one() {
        return None;
    }
    let d = p.degree() as u64;
    for n in 1..=2 * d * d {
        if euler_phi(n) != d {
            continue;
        }
        let r = x_pow_mod(n, p);
        if r == RatPoly::one() {
            return Some(n);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::tests::unit_z;
    use crate::algebraic::alg_pow;
    use crate::arith::poly::rat;
    use crate::arith::ComplexBox;

    fn root(coeffs: &[i64], x: BigRational, y: BigRational) -> AlgebraicNumber {
        AlgebraicNumber::from_poly_and_box(
            &RatPoly::from_ints(coeffs),
            &ComplexBox::new(x, y, rat(1, 4)),
        )
        .unwrap()
    }

    #[test]
    fn totients() {
        let phis: alloc::vec::Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(phis, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn known_orders() {
        assert_eq!(root_of_unity_order(&root(&[1, 0, 1], rat(0, 1), rat(1, 1))), Some(4));
        assert_eq!(root_of_unity_order(&root(&[1, -1, 1], rat(1, 2), rat(6, 7))), Some(6));
        assert_eq!(root_of_unity_order(&root(&[1, 1, 1], rat(-1, 2), rat(6, 7))), Some(3));
        assert_eq!(root_of_unity_order(&AlgebraicNumber::from_integer(1)), Some(1));
        assert_eq!(root_of_unity_order(&AlgebraicNumber::from_integer(-1)), Some(2));
        assert_eq!(root_of_unity_order(&unit_z()), None);
        assert_eq!(root_of_unity_order(&AlgebraicNumber::from_integer(2)), None);
    }

    #[test]
    fn order_is_minimal() {
        let w = root(&[1, -1, 1], rat(1, 2), rat(6, 7));
        let n = root_of_unity_order(&w).unwrap();
        assert!(alg_pow(&w, n as u32).unwrap().is_one());
        for m in 1..n {
            assert!(!alg_pow(&w, m as u32).unwrap().is_one());
        }
    }
}
