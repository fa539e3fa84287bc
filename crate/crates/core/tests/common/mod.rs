//! Shared helpers and independent numeric oracles for the integration tests.
#![allow(dead_code)]

use cosorbit_core::algebraic::{alg_arith, alg_sqrt_nonneg, AlgebraicNumber, ArithOp};
use cosorbit_core::continuize::{Angle, CosSumExpr, Valuation};
use cosorbit_core::field::NumberField;
use cosorbit_core::arith::transcendental::{cos, pi};
use cosorbit_core::arith::{ComplexBox, Dyadic, DyadicInterval, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn alg(n: i64, d: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(&q(n, d))
}

pub fn poly(c: &[i64]) -> RatPoly {
    RatPoly::from_ints(c)
}

/// The root of `p` near `x + iy`.
pub fn root_near(p: &[i64], x: (i64, i64), y: (i64, i64), r: (i64, i64)) -> AlgebraicNumber {
    AlgebraicNumber::from_poly_and_box(
        &RatPoly::from_ints(p),
        &ComplexBox::new(q(x.0, x.1), q(y.0, y.1), q(r.0, r.1)),
    )
    .unwrap()
}

/// `(3 + 4i) / 5`.
pub fn unit_z() -> AlgebraicNumber {
    root_near(&[5, -6, 5], (3, 5), (4, 5), (1, 10))
}

pub fn imag_unit() -> AlgebraicNumber {
    root_near(&[1, 0, 1], (0, 1), (1, 1), (1, 2))
}

/// `theta` in `[0, pi]` with `cos theta = alpha`, by bisection on the
/// certified cosine (decreasing on `[0, pi]`).
pub fn arccos(alpha: &BigRational, bits: u32) -> DyadicInterval {
    let prec = bits + 32;
    if *alpha == q(1, 1) {
        return DyadicInterval::from_int(0);
    }
    if *alpha == q(-1, 1) {
        return pi(prec);
    }
    // sin theta >= 2^-16 for the denominators used in tests
    assert!(q(1, 1) - alpha * alpha >= q(1, 1 << 32));
    let mut lo = Dyadic::zero();
    let mut hi = pi(prec).upper().clone();
    let target = Dyadic::pow2(-(bits as i64));
    while hi.sub(&lo) > target {
        let mid = lo.add(&hi).mul_pow2(-1);
        let c = cos(&DyadicInterval::point(mid.clone()), prec);
        if c.lower().to_rational() > *alpha {
            lo = mid;
        } else if c.upper().to_rational() < *alpha {
            hi = mid;
        } else {
            // |cos mid - alpha| <= 2^-prec, so |mid - theta| <= 2^(16 - prec)
            let r = Dyadic::pow2(-(bits as i64) - 1);
            return DyadicInterval::new(mid.sub(&r), mid.add(&r));
        }
    }
    DyadicInterval::new(lo, hi)
}

/// Certified `cos(t arccos alpha)`.
pub fn cos_multiple(alpha: &BigRational, t: u64, bits: u32) -> DyadicInterval {
    cos_multiples(alpha, t, bits).pop().unwrap()
}

/// Certified `cos(t arccos alpha)` for `t = 0..=n`, sharing one arccos.
pub fn cos_multiples(alpha: &BigRational, n: u64, bits: u32) -> Vec<DyadicInterval> {
    let extra = 64 - n.max(1).leading_zeros();
    let th = arccos(alpha, bits + extra + 4);
    (0..=n)
        .map(|t| cos(&th.mul(&DyadicInterval::from_int(t as i64), bits + 40), bits + 40))
        .collect()
}

/// Chebyshev `T_k(x)` evaluated directly.
pub fn chebyshev(k: u64, x: &BigRational) -> BigRational {
    let two = q(2, 1);
    let (mut a, mut b) = (q(1, 1), x.clone());
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = &two * x * &b - &a;
        a = b;
        b = c;
    }
    b
}

/// Brute-force `cos(t theta)` values for `t = 0..=n` via the double-angle
/// recursion on rationals (independent of the library's recurrence code).
pub fn cos_table(alpha: &BigRational, n: u64) -> Vec<BigRational> {
    (0..=n).map(|t| chebyshev(t, alpha)).collect()
}

/// `(3 + 4i)/5 * (1 + 2 sqrt2 i)/3`: degree 4, on the unit circle, not a root
/// of unity.
pub fn quartic_unit() -> AlgebraicNumber {
    let s = alg_sqrt_nonneg(&alg(2, 1)).unwrap();
    let v = alg_arith(ArithOp::Mul, &s, &imag_unit()).unwrap();
    let v = alg_arith(ArithOp::Mul, &v, &alg(2, 3)).unwrap();
    let v = alg_arith(ArithOp::Add, &v, &alg(1, 3)).unwrap();
    alg_arith(ArithOp::Mul, &unit_z(), &v).unwrap()
}

/// Unit-circle generators of degree 2 and 4 with their multiplicative order
/// (`None` for infinite order).
pub fn unit_circle_fields() -> Vec<(NumberField, Option<u64>)> {
    vec![
        (NumberField::new(unit_z()), None),
        (NumberField::new(root_near(&[13, -10, 13], (5, 13), (12, 13), (1, 100))), None),
        (NumberField::new(quartic_unit()), None),
        (NumberField::new(imag_unit()), Some(4)),
        (NumberField::new(root_near(&[1, 1, 1], (-1, 2), (866, 1000), (1, 100))), Some(3)),
        (NumberField::new(root_near(&[1, 1, 1, 1, 1], (309, 1000), (951, 1000), (1, 100))), Some(5)),
        (NumberField::new(root_near(&[1, 0, 0, 0, 1], (707, 1000), (707, 1000), (1, 100))), Some(8)),
    ]
}

/// `cos(t angle)` straight from the valuation.
pub fn angle_cos(a: &Angle, t: &DyadicInterval, val: &Valuation, prec: u32) -> DyadicInterval {
    let mut x = pi(prec).mul_rational(a.pi_coeff(), prec);
    for (i, c) in a.theta_coeffs().iter().enumerate() {
        x = x.add(&val.theta[i].mul_rational(c, prec), prec);
    }
    cos(&x.mul(t, prec), prec)
}

/// Term-by-term evaluation of a cosine sum.
pub fn cos_sum_direct(e: &CosSumExpr, t: &DyadicInterval, val: &Valuation, prec: u32) -> DyadicInterval {
    e.terms.iter().fold(DyadicInterval::from_rational(&e.constant, prec), |acc, term| {
        acc.add(&angle_cos(&term.angle, t, val, prec).mul_rational(&term.coeff, prec), prec)
    })
}

/// `(f - c)^2 + (cos 2 pi t - 1)^2`.
pub fn squared_form(f: &DyadicInterval, c: &BigRational, t: &DyadicInterval, prec: u32) -> DyadicInterval {
    let d = f.sub(&DyadicInterval::from_rational(c, prec), prec);
    let g = cos(&pi(prec).mul_pow2(1).mul(t, prec), prec).sub(&DyadicInterval::from_int(1), prec);
    d.square(prec).add(&g.square(prec), prec)
}
