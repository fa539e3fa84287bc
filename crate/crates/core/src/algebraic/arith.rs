//! Field operations on algebraic numbers by resultant annihilators, followed
//! by factorization and root selection.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::roots::{refine_root, root_target};
use super::{select_root, AlgebraicNumber};
use crate::arith::{poly_resultant_eliminate, BiPoly, ComplexBox, RatPoly};
use crate::error::{Error, Precision, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Bits needed to bound the modulus of `a`.
fn mag_bits(a: &AlgebraicNumber) -> u32 {
    let up = a.isolating_box().modulus_upper(16);
    let ceil = up.ceil().to_integer();
    ceil.bits() as u32 + 1
}

fn rational_op(op: ArithOp, x: &BigRational, y: &BigRational) -> Result<BigRational> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            x / y
        }
    })
}

/// Rebuilds the canonical form after an exact affine change of the root.
fn rebuild(poly: RatPoly, bx: ComplexBox) -> AlgebraicNumber {
    let poly = poly.primitive();
    let bx = refine_root(&poly, &bx, &root_target(&poly));
    AlgebraicNumber::from_parts(poly, bx)
}

fn add_rational(a: &AlgebraicNumber, q: &BigRational) -> AlgebraicNumber {
    let bx = a.isolating_box().add(&ComplexBox::from_rational(q));
    rebuild(a.minpoly().shift(&-q), bx)
}

fn mul_rational(a: &AlgebraicNumber, q: &BigRational) -> AlgebraicNumber {
    if q.is_zero() {
        return AlgebraicNumber::zero();
    }
    let bx = a.isolating_box().scale(q);
    rebuild(a.minpoly().scale_var(&q.recip()), bx)
}

pub fn alg_inv(a: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    alg_inv_with(a, &Precision::default())
}

fn alg_inv_with(a: &AlgebraicNumber, prec: &Precision) -> Result<AlgebraicNumber> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if let Some(q) = a.to_rational() {
        return Ok(AlgebraicNumber::from_rational(&q.recip()));
    }
    let rev = a.minpoly().reverse();
    select_root(&rev, |bits| a.enclosure(bits + 2 * mag_inv_bits(a) + 4).inv(64), prec)
}

/// Bits bounding `1 / |a|` for nonzero `a`.
fn mag_inv_bits(a: &AlgebraicNumber) -> u32 {
    let mut bits = 8;
    loop {
        let lo = a.enclosure(bits).modulus_lower(32);
        if lo.is_positive() {
            let inv = lo.recip().ceil().to_integer();
            return inv.bits() as u32 + 1;
        }
        bits *= 2;
    }
}

fn annihilator(op: ArithOp, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<RatPoly> {
    let bp = b.minpoly();
    let q = match op {
        ArithOp::Add => {
            let inner = BiPoly::y().add(&BiPoly::x().scale(&-BigRational::one()));
            BiPoly::substitute_into(bp, &inner)
        }
        ArithOp::Sub => {
            let inner = BiPoly::x().add(&BiPoly::y().scale(&-BigRational::one()));
            BiPoly::substitute_into(bp, &inner)
        }
        ArithOp::Mul => {
            let m = bp.degree();
            let mut xs = alloc::vec![RatPoly::zero(); m + 1];
            for (k, c) in bp.coeffs().iter().enumerate() {
                xs[m - k] = RatPoly::monomial(c.clone(), k);
            }
            BiPoly::new(xs)
        }
        ArithOp::Div => unreachable!("division goes through the inverse"),
    };
    poly_resultant_eliminate(a.minpoly(), &q)
}

pub fn alg_arith(op: ArithOp, a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    alg_arith_with(op, a, b, &Precision::default())
}

/// Exact `a op b`.
pub fn alg_arith_with(
    op: ArithOp,
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    prec: &Precision,
) -> Result<AlgebraicNumber> {
    if op == ArithOp::Div && b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    match (a.to_rational(), b.to_rational()) {
        (Some(x), Some(y)) => return Ok(AlgebraicNumber::from_rational(&rational_op(op, &x, &y)?)),
        (None, Some(y)) => {
            return Ok(match op {
                ArithOp::Add => add_rational(a, &y),
                ArithOp::Sub => add_rational(a, &-y),
                ArithOp::Mul => mul_rational(a, &y),
                ArithOp::Div => mul_rational(a, &y.recip()),
            })
        }
        (Some(x), None) => {
            return match op {
                ArithOp::Add => Ok(add_rational(b, &x)),
                ArithOp::Sub => Ok(add_rational(&b.neg(), &x)),
                ArithOp::Mul => Ok(mul_rational(b, &x)),
                ArithOp::Div => Ok(mul_rational(&alg_inv_with(b, prec)?, &x)),
            }
        }
        (None, None) => {}
    }
    if op == ArithOp::Div {
        let inv = alg_inv_with(b, prec)?;
        return alg_arith_with(ArithOp::Mul, a, &inv, prec);
    }
    if op == ArithOp::Sub && a.equals(b) {
        return Ok(AlgebraicNumber::zero());
    }
    let ann = annihilator(op, a, b)?;
    let extra = match op {
        ArithOp::Mul => mag_bits(a).max(mag_bits(b)) + 2,
        _ => 2,
    };
    select_root(
        &ann,
        |bits| {
            let ea = a.enclosure(bits + extra);
            let eb = b.enclosure(bits + extra);
            Some(match op {
                ArithOp::Add => ea.add(&eb),
                ArithOp::Sub => ea.sub(&eb),
                _ => ea.mul(&eb, bits + extra),
            })
        },
        prec,
    )
}

/// `a^n` for a natural exponent.
pub fn alg_pow(a: &AlgebraicNumber, n: u32) -> Result<AlgebraicNumber> {
    if n == 0 {
        return Ok(AlgebraicNumber::one());
    }
    if n == 1 {
        return Ok(a.clone());
    }
    if let Some(q) = a.to_rational() {
        return Ok(AlgebraicNumber::from_rational(&num_traits::pow(q, n as usize)));
    }
    let q = BiPoly::y().add(&BiPoly::x().pow(n as usize).scale(&-BigRational::one()));
    let ann = poly_resultant_eliminate(a.minpoly(), &q)?;
    let extra = n * (mag_bits(a) + 1) + 4;
    select_root(
        &ann,
        |bits| {
            let e = a.enclosure(bits + extra);
            let mut acc = e.clone();
            for _ in 1..n {
                acc = acc.mul(&e, bits + extra);
            }
            Some(acc)
        },
        &Precision::default(),
    )
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub fn alg_sqrt_nonneg(a: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    alg_sqrt_nonneg_with(a, &Precision::default())
}

/// The nonnegative square root of a nonnegative real number.
pub fn alg_sqrt_nonneg_with(a: &AlgebraicNumber, prec: &Precision) -> Result<AlgebraicNumber> {
    match a.sign_real()? {
        0 => return Ok(AlgebraicNumber::zero()),
        -1 => return Err(Error::NegativeInput),
        _ => {}
    }
    if let Some(q) = a.to_rational() {
        if let Some(r) = rational_sqrt(&q) {
            return Ok(AlgebraicNumber::from_rational(&r));
        }
    }
    let ann = a.minpoly().compose_square();
    select_root(&ann, |bits| Some(a.enclosure(2 * bits + 4).sqrt_real(bits + 8)), prec)
}
