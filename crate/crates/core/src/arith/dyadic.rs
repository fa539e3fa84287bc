//! Dyadic rationals `m * 2^e` and outward-rounded intervals over them.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rounding direction for inexact dyadic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// An exact dyadic rational `mant * 2^exp`, kept normalized (odd mantissa or zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

fn shl(x: &BigInt, k: u64) -> BigInt {
    x << k
}

/// Integer division rounding in the requested direction.
fn div_round(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => {
            let (q, r) = num.div_mod_floor(den);
            if r.is_zero() {
                q
            } else {
                q + 1
            }
        }
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Position of the most significant bit: `2^(msb-1) <= |x| < 2^msb`.
    pub fn msb(&self) -> i64 {
        self.mant.bits() as i64 + self.exp
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = shl(&self.mant, (self.exp - e) as u64);
        let b = shl(&other.mant, (other.exp - e) as u64);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Dyadic::new(&self.mant * k, self.exp)
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let den = BigInt::one() << shift;
        Dyadic::new(div_round(&self.mant, &den, dir), self.exp + shift as i64)
    }

    /// Rounds to a multiple of `2^-bits`.
    pub fn round_abs(&self, bits: i64, dir: Round) -> Self {
        if self.exp >= -bits {
            return self.clone();
        }
        let shift = (-bits - self.exp) as u64;
        let den = BigInt::one() << shift;
        Dyadic::new(div_round(&self.mant, &den, dir), -bits)
    }

    /// Rounds a rational to `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let num = q.numer();
        let den = q.denom();
        let s = prec as i64 + 2 - (num.bits() as i64 - den.bits() as i64);
        let (n, d) = if s >= 0 {
            (shl(num, s as u64), den.clone())
        } else {
            (num.clone(), shl(den, (-s) as u64))
        };
        Dyadic::new(div_round(&n, &d, dir), -s)
    }

    /// Rounds a rational to a multiple of `2^-bits`.
    pub fn from_rational_abs(q: &BigRational, bits: i64, dir: Round) -> Self {
        let (n, d) = if bits >= 0 {
            (shl(q.numer(), bits as u64), q.denom().clone())
        } else {
            (q.numer().clone(), shl(q.denom(), (-bits) as u64))
        };
        Dyadic::new(div_round(&n, &d, dir), -bits)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(shl(&self.mant, self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    /// Quotient rounded to `prec` significant bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let s = prec as i64 + 2 - (self.mant.bits() as i64 - other.mant.bits() as i64);
        let (n, d) = if s >= 0 {
            (shl(&self.mant, s as u64), other.mant.clone())
        } else {
            (self.mant.clone(), shl(&other.mant, (-s) as u64))
        };
        Dyadic::new(div_round(&n, &d, dir), self.exp - other.exp - s)
    }

    /// Square root of a nonnegative dyadic, rounded to about `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "dyadic sqrt of a negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // even shift with exp + shift >= 0 and about 2 * prec bits in n
        let want = 2 * (prec as i64 + 2) - self.mant.bits() as i64 - self.exp;
        let mut shift = want.max(-self.exp);
        if shift.rem_euclid(2) != 0 {
            shift += 1;
        }
        let n = shl(&self.mant, (self.exp + shift) as u64);
        let r = n.sqrt();
        let r = if dir == Round::Up && &r * &r != n {
            r + 1
        } else {
            r
        };
        // sqrt(mant * 2^exp) = sqrt(n) * 2^(-shift/2)
        Dyadic::new(r, -(shift / 2))
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            shl(&self.mant, self.exp as u64)
        } else {
            self.mant.div_floor(&(BigInt::one() << ((-self.exp) as u64)))
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Lossy conversion for diagnostics.
    pub fn to_f64(&self) -> f64 {
        let r = self.round(60, Round::Down);
        let m = num_traits::ToPrimitive::to_f64(&r.mant).unwrap_or(f64::NAN);
        let mut v = m;
        let mut e = r.exp;
        while e > 0 {
            v *= 2.0;
            e -= 1;
        }
        while e < 0 {
            v *= 0.5;
            e += 1;
        }
        v
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

/// Closed interval `[lower, upper]` with dyadic endpoints.
///
/// Every operation takes a precision in significant bits and rounds the
/// lower endpoint down and the upper endpoint up, so results always enclose
/// the exact image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    lower: Dyadic,
    upper: Dyadic,
}

impl DyadicInterval {
    pub fn new(lower: Dyadic, upper: Dyadic) -> Self {
        assert!(lower <= upper, "interval endpoints out of order");
        DyadicInterval { lower, upper }
    }

    pub fn point(x: Dyadic) -> Self {
        DyadicInterval {
            lower: x.clone(),
            upper: x,
        }
    }

    pub fn from_int(v: i64) -> Self {
        DyadicInterval::point(Dyadic::from_int(v))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        DyadicInterval {
            lower: Dyadic::from_rational(q, prec, Round::Down),
            upper: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    /// `[lo, hi]` from rational bounds.
    pub fn from_rational_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        DyadicInterval::new(
            Dyadic::from_rational(lo, prec, Round::Down),
            Dyadic::from_rational(hi, prec, Round::Up),
        )
    }

    /// `[center - radius, center + radius]`.
    pub fn around(center: &Dyadic, radius: &Dyadic) -> Self {
        DyadicInterval::new(center.sub(radius), center.add(radius))
    }

    pub fn lower(&self) -> &Dyadic {
        &self.lower
    }

    pub fn upper(&self) -> &Dyadic {
        &self.upper
    }

    pub fn width(&self) -> Dyadic {
        self.upper.sub(&self.lower)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lower.add(&self.upper).mul_pow2(-1)
    }

    /// Half the width.
    pub fn radius(&self) -> Dyadic {
        self.width().mul_pow2(-1)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn contains_zero(&self) -> bool {
        self.lower.signum() <= 0 && self.upper.signum() >= 0
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lower.to_rational() <= q && q <= &self.upper.to_rational()
    }

    /// `other` lies inside `self`.
    pub fn encloses(&self, other: &DyadicInterval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    pub fn intersects(&self, other: &DyadicInterval) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    pub fn is_positive(&self) -> bool {
        self.lower.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.upper.signum() < 0
    }

    pub fn hull(&self, other: &DyadicInterval) -> Self {
        DyadicInterval {
            lower: Dyadic::min(&self.lower, &other.lower),
            upper: Dyadic::max(&self.upper, &other.upper),
        }
    }

    fn rounded(lower: Dyadic, upper: Dyadic, prec: u32) -> Self {
        DyadicInterval {
            lower: lower.round(prec, Round::Down),
            upper: upper.round(prec, Round::Up),
        }
    }

    pub fn neg(&self) -> Self {
        DyadicInterval {
            lower: self.upper.neg(),
            upper: self.lower.neg(),
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Self::rounded(
            self.lower.add(&other.lower),
            self.upper.add(&other.upper),
            prec,
        )
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let p = [
            self.lower.mul(&other.lower),
            self.lower.mul(&other.upper),
            self.upper.mul(&other.lower),
            self.upper.mul(&other.upper),
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Self::rounded(lo, hi, prec)
    }

    pub fn square(&self, prec: u32) -> Self {
        let a = self.lower.square();
        let b = self.upper.square();
        if self.contains_zero() {
            DyadicInterval::rounded(Dyadic::zero(), Dyadic::max(&a, &b), prec)
        } else {
            DyadicInterval::rounded(Dyadic::min(&a, &b), Dyadic::max(&a, &b), prec)
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        DyadicInterval {
            lower: self.lower.mul_pow2(k),
            upper: self.upper.mul_pow2(k),
        }
    }

    pub fn mul_rational(&self, q: &BigRational, prec: u32) -> Self {
        self.mul(&DyadicInterval::from_rational(q, prec + 8), prec)
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn div(&self, other: &Self, prec: u32) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lower, &self.upper] {
            for b in [&other.lower, &other.upper] {
                let d = a.div(b, prec, Round::Down);
                let u = a.div(b, prec, Round::Up);
                lo = Some(match lo {
                    Some(l) if l <= d => l,
                    _ => d,
                });
                hi = Some(match hi {
                    Some(h) if h >= u => h,
                    _ => u,
                });
            }
        }
        Some(DyadicInterval {
            lower: lo.unwrap(),
            upper: hi.unwrap(),
        })
    }

    /// Square root of the nonnegative part (negative lower ends clamp to zero).
    pub fn sqrt(&self, prec: u32) -> Self {
        let lo = if self.lower.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lower.sqrt(prec, Round::Down)
        };
        let hi = if self.upper.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.upper.sqrt(prec, Round::Up)
        };
        DyadicInterval {
            lower: lo,
            upper: hi,
        }
    }

    pub fn abs(&self) -> Self {
        if self.lower.signum() >= 0 {
            self.clone()
        } else if self.upper.signum() <= 0 {
            self.neg()
        } else {
            DyadicInterval {
                lower: Dyadic::zero(),
                upper: Dyadic::max(&self.lower.neg(), &self.upper),
            }
        }
    }

    /// Pointwise `max(self, c)`.
    pub fn max_with(&self, c: &Dyadic) -> Self {
        DyadicInterval {
            lower: Dyadic::max(&self.lower, c),
            upper: Dyadic::max(&self.upper, c),
        }
    }

    /// Widens symmetrically by `err`.
    pub fn inflate(&self, err: &Dyadic) -> Self {
        DyadicInterval {
            lower: self.lower.sub(err),
            upper: self.upper.add(err),
        }
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lower.to_f64(), self.upper.to_f64())
    }
}
