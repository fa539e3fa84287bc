//! Rational disks in the complex plane with conservative disk arithmetic.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, DyadicInterval, Round};
use super::poly::RatPoly;

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRat { re, im }
    }

    pub fn zero() -> Self {
        CRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        CRat::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, q: &BigRational) -> CRat {
        CRat::new(&self.re * q, &self.im * q)
    }

    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &CRat) -> Option<CRat> {
        let n = o.norm_sq();
        if n.is_zero() {
            return None;
        }
        let conj = CRat::new(o.re.clone(), -o.im.clone());
        Some(self.mul(&conj).scale(&n.recip()))
    }

    pub fn abs_upper(&self, prec: u32) -> BigRational {
        sqrt_upper(&self.norm_sq(), prec)
    }

    pub fn abs_lower(&self, prec: u32) -> BigRational {
        sqrt_lower(&self.norm_sq(), prec)
    }

    /// Rounds both parts to the grid `2^-bits`; returns the point and an
    /// upper bound on the displacement.
    pub fn round(&self, bits: i64) -> (CRat, BigRational) {
        let re = Dyadic::from_rational_abs(&self.re, bits, Round::Down).to_rational();
        let im = Dyadic::from_rational_abs(&self.im, bits, Round::Down).to_rational();
        let err = if re == self.re && im == self.im {
            BigRational::zero()
        } else {
            // each part moves by less than 2^-bits
            Dyadic::pow2(1 - bits).to_rational()
        };
        (CRat::new(re, im), err)
    }
}

/// Horner evaluation at a complex rational point.
pub(crate) fn eval_complex(p: &RatPoly, z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

/// Coefficients of `p(z + d)` as a polynomial in `d`.
pub(crate) fn taylor_coefficients(p: &RatPoly, z: &CRat) -> Vec<CRat> {
    let mut c: Vec<CRat> = p.coeffs().iter().map(|q| CRat::real(q.clone())).collect();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = c[j + 1].mul(z);
            c[j] = c[j].add(&t);
        }
    }
    c
}

pub(crate) fn sqrt_upper(q: &BigRational, prec: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    Dyadic::from_rational(q, prec + 4, Round::Up)
        .sqrt(prec, Round::Up)
        .to_rational()
}

pub(crate) fn sqrt_lower(q: &BigRational, prec: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    Dyadic::from_rational(q, prec + 4, Round::Down)
        .sqrt(prec, Round::Down)
        .to_rational()
}

fn round_up_rel(q: &BigRational, prec: u32) -> BigRational {
    Dyadic::from_rational(q, prec, Round::Up).to_rational()
}

/// The closed disk `{ w : |w - (center_x + i center_y)| <= radius }`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBox {
    center_x: BigRational,
    center_y: BigRational,
    radius: BigRational,
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = Dyadic::from_rational(&self.center_x, 53, Round::Down).to_f64();
        let y = Dyadic::from_rational(&self.center_y, 53, Round::Down).to_f64();
        let r = Dyadic::from_rational(&self.radius, 53, Round::Up).to_f64();
        write!(f, "({x:e} {} {:e}i) ± {r:e}", if y < 0.0 { '-' } else { '+' }, y.abs())
    }
}

impl ComplexBox {
    pub fn new(center_x: BigRational, center_y: BigRational, radius: BigRational) -> Self {
        assert!(!radius.is_negative(), "negative box radius");
        ComplexBox {
            center_x,
            center_y,
            radius,
        }
    }

    pub fn point(center_x: BigRational, center_y: BigRational) -> Self {
        ComplexBox::new(center_x, center_y, BigRational::zero())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        ComplexBox::point(q.clone(), BigRational::zero())
    }

    pub(crate) fn from_crat(c: CRat, radius: BigRational) -> Self {
        ComplexBox::new(c.re, c.im, radius)
    }

    pub fn center_x(&self) -> &BigRational {
        &self.center_x
    }

    pub fn center_y(&self) -> &BigRational {
        &self.center_y
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub(crate) fn center(&self) -> CRat {
        CRat::new(self.center_x.clone(), self.center_y.clone())
    }

    pub fn with_radius(&self, radius: BigRational) -> Self {
        ComplexBox::new(self.center_x.clone(), self.center_y.clone(), radius)
    }

    pub fn is_point(&self) -> bool {
        self.radius.is_zero()
    }

    pub fn contains_point(&self, x: &BigRational, y: &BigRational) -> bool {
        let dx = x - &self.center_x;
        let dy = y - &self.center_y;
        &dx * &dx + &dy * &dy <= &self.radius * &self.radius
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_point(&BigRational::zero(), &BigRational::zero())
    }

    fn center_dist_sq(&self, other: &ComplexBox) -> BigRational {
        let dx = &other.center_x - &self.center_x;
        let dy = &other.center_y - &self.center_y;
        &dx * &dx + &dy * &dy
    }

    pub fn intersects(&self, other: &ComplexBox) -> bool {
        let r = &self.radius + &other.radius;
        self.center_dist_sq(other) <= &r * &r
    }

    /// `self` lies inside `other`.
    pub fn inside(&self, other: &ComplexBox) -> bool {
        if self.radius > other.radius {
            return false;
        }
        let r = &other.radius - &self.radius;
        self.center_dist_sq(other) <= &r * &r
    }

    /// Whether the disk meets the real axis.
    pub fn meets_real_axis(&self) -> bool {
        self.center_y.abs() <= self.radius
    }

    pub fn conj(&self) -> Self {
        ComplexBox::new(
            self.center_x.clone(),
            -self.center_y.clone(),
            self.radius.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        ComplexBox::new(
            -self.center_x.clone(),
            -self.center_y.clone(),
            self.radius.clone(),
        )
    }

    pub fn modulus_upper(&self, prec: u32) -> BigRational {
        self.center().abs_upper(prec) + &self.radius
    }

    pub fn modulus_lower(&self, prec: u32) -> BigRational {
        let v = self.center().abs_lower(prec) - &self.radius;
        if v.is_positive() {
            v
        } else {
            BigRational::zero()
        }
    }

    pub fn modulus(&self, prec: u32) -> DyadicInterval {
        DyadicInterval::from_rational_bounds(
            &self.modulus_lower(prec + 2),
            &self.modulus_upper(prec + 2),
            prec,
        )
    }

    pub fn re_interval(&self, prec: u32) -> DyadicInterval {
        DyadicInterval::from_rational_bounds(
            &(&self.center_x - &self.radius),
            &(&self.center_x + &self.radius),
            prec,
        )
    }

    pub fn im_interval(&self, prec: u32) -> DyadicInterval {
        DyadicInterval::from_rational_bounds(
            &(&self.center_y - &self.radius),
            &(&self.center_y + &self.radius),
            prec,
        )
    }

    /// Moves the center onto the grid `2^-bits` and rounds the radius up to
    /// a short dyadic; the result encloses `self`.
    pub fn round(&self, bits: i64) -> Self {
        let (c, err) = self.center().round(bits);
        let r = &self.radius + err;
        let r = if r.is_zero() { r } else { round_up_rel(&r, 32) };
        ComplexBox::from_crat(c, r)
    }

    pub fn add(&self, other: &ComplexBox) -> Self {
        ComplexBox::new(
            &self.center_x + &other.center_x,
            &self.center_y + &other.center_y,
            &self.radius + &other.radius,
        )
    }

    pub fn sub(&self, other: &ComplexBox) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        ComplexBox::new(&self.center_x * q, &self.center_y * q, &self.radius * q.abs())
    }

    /// Product disk; `prec` controls the modulus bounds in the radius.
    pub fn mul(&self, other: &ComplexBox, prec: u32) -> Self {
        let c = self.center().mul(&other.center());
        let mut r = &self.radius * &other.radius;
        if !other.radius.is_zero() {
            r += self.center().abs_upper(prec) * &other.radius;
        }
        if !self.radius.is_zero() {
            r += other.center().abs_upper(prec) * &self.radius;
        }
        ComplexBox::from_crat(c, r)
    }

    /// Reciprocal disk; `None` when the disk reaches zero.
    pub fn inv(&self, prec: u32) -> Option<Self> {
        let c = self.center();
        if c.is_zero() {
            return None;
        }
        let inv_c = CRat::real(BigRational::one()).div(&c)?;
        if self.radius.is_zero() {
            return Some(ComplexBox::from_crat(inv_c, BigRational::zero()));
        }
        let m = c.abs_lower(prec);
        let gap = &m - &self.radius;
        if !gap.is_positive() || m.is_zero() {
            return None;
        }
        let r = &self.radius / (&m * &gap);
        Some(ComplexBox::from_crat(inv_c, r))
    }

    pub fn div(&self, other: &ComplexBox, prec: u32) -> Option<Self> {
        Some(self.mul(&other.inv(prec)?, prec))
    }

    /// Principal square root of a disk lying in the closed right half plane
    /// of the real axis; used only for nonnegative reals.
    pub fn sqrt_real(&self, prec: u32) -> Self {
        let lo = &self.center_x - &self.radius;
        let hi = &self.center_x + &self.radius;
        let hi_s = sqrt_upper(&hi, prec);
        let lo_s = sqrt_lower(&lo, prec);
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (&hi_s + &lo_s) / &two;
        let rad = (&hi_s - &lo_s) / &two;
        ComplexBox::new(mid, BigRational::zero(), rad)
    }
}

/// Encloses `{ p(w) : w in box }`. The center is evaluated exactly at a
/// dyadic point near the box center; the radius bounds the Taylor tail.
pub fn poly_eval_box(p: &RatPoly, bx: &ComplexBox, precision_bits: u32) -> ComplexBox {
    assert!(precision_bits >= 8, "precision below 8 bits");
    let bits = precision_bits as i64;
    let (z, err) = bx.center().round(bits + 4);
    let r = bx.radius() + err;
    let coeffs = taylor_coefficients(p, &z);
    let mut radius = BigRational::zero();
    if !r.is_zero() {
        let r = round_up_rel(&r, 32);
        let mut rk = BigRational::one();
        for c in coeffs.iter().skip(1) {
            rk = round_up_rel(&(&rk * &r), 32);
            if !c.is_zero() {
                radius += round_up_rel(&c.abs_upper(precision_bits.min(64)), 32) * &rk;
            }
        }
    }
    let center = coeffs.into_iter().next().unwrap_or_else(CRat::zero);
    ComplexBox::from_crat(center, radius).round(bits + 4)
}
