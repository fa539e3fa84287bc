//! Certified enclosures of `pi`, `ln`, `exp`, `cos` and `sin`.
//!
//! Every function returns an interval guaranteed to contain the exact value.
//! Series are summed in interval arithmetic and the truncation error is
//! added explicitly, so the only source of width is rounding plus the tail
//! bound.

use num_bigint::BigInt;
use num_traits::Zero;

use super::dyadic::{Dyadic, DyadicInterval, Round};

fn guard(prec: u32) -> u32 {
    prec + 32
}

/// `atan(1/n)` for an integer `n >= 2`.
fn atan_inv(n: i64, prec: u32) -> DyadicInterval {
    let w = guard(prec);
    let n_big = BigInt::from(n);
    let n2 = &n_big * &n_big;
    let mut sum = DyadicInterval::from_int(0);
    // term_k = 1 / ((2k+1) n^(2k+1))
    let mut power = n_big.clone();
    let mut k: i64 = 0;
    let eps = Dyadic::pow2(-(w as i64) - 4);
    loop {
        let den = Dyadic::from_bigint(&power * BigInt::from(2 * k + 1));
        let lo = Dyadic::one().div(&den, w, Round::Down);
        let hi = Dyadic::one().div(&den, w, Round::Up);
        let term = DyadicInterval::new(lo, hi.clone());
        sum = if k % 2 == 0 {
            sum.add(&term, w)
        } else {
            sum.sub(&term, w)
        };
        if hi < eps {
            // alternating with decreasing terms: tail bounded by the next term
            return sum.inflate(&hi);
        }
        power *= &n2;
        k += 1;
    }
}

/// Enclosure of `pi` (Machin's formula).
pub fn pi(prec: u32) -> DyadicInterval {
    let w = guard(prec);
    let a = atan_inv(5, w).mul_pow2(4);
    let b = atan_inv(239, w).mul_pow2(2);
    a.sub(&b, w)
}

/// `atanh(s)` for a point `0 <= s <= 1/2`.
fn atanh_point(s: &DyadicInterval, prec: u32) -> DyadicInterval {
    let w = guard(prec);
    let s2 = s.square(w);
    let mut power = s.clone();
    let mut sum = DyadicInterval::from_int(0);
    let mut k: i64 = 0;
    let eps = Dyadic::pow2(-(w as i64) - 4);
    loop {
        let den = DyadicInterval::from_int(2 * k + 1);
        let term = power.div(&den, w).expect("positive denominator");
        sum = sum.add(&term, w);
        power = power.mul(&s2, w);
        k += 1;
        if power.upper() < &eps {
            // remaining terms: sum_{j>=k} s^(2j+1)/(2j+1) <= s^(2k+1) / (1 - s^2) <= 2 s^(2k+1)
            let tail = power.upper().mul_pow2(1);
            return sum.add(&DyadicInterval::new(Dyadic::zero(), tail), w);
        }
    }
}

/// Enclosure of `ln 2`.
pub fn ln2(prec: u32) -> DyadicInterval {
    let w = guard(prec);
    let third = DyadicInterval::new(
        Dyadic::one().div(&Dyadic::from_int(3), w, Round::Down),
        Dyadic::one().div(&Dyadic::from_int(3), w, Round::Up),
    );
    atanh_point(&third, w).mul_pow2(1)
}

/// `ln x` for a positive dyadic point.
fn ln_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    assert!(x.signum() > 0, "ln of a nonpositive value");
    let w = guard(prec);
    // x = y * 2^k with y in [1, 2)
    let k = x.msb() - 1;
    let y = x.mul_pow2(-k);
    let y_i = DyadicInterval::point(y.clone());
    let one = DyadicInterval::from_int(1);
    let s = y_i
        .sub(&one, w)
        .div(&y_i.add(&one, w), w)
        .expect("positive denominator");
    let frac = atanh_point(&s, w).mul_pow2(1);
    if k == 0 {
        frac
    } else {
        let l2 = ln2(w + 64);
        l2.mul(&DyadicInterval::from_int(k), w).add(&frac, w)
    }
}

/// Enclosure of `ln x` for an interval of positive reals.
pub fn ln(x: &DyadicInterval, prec: u32) -> DyadicInterval {
    assert!(x.is_positive(), "ln of an interval reaching zero");
    let lo = ln_point(x.lower(), prec);
    if x.lower() == x.upper() {
        return lo;
    }
    let hi = ln_point(x.upper(), prec);
    DyadicInterval::new(lo.lower().clone(), hi.upper().clone())
}

/// `exp x` for a dyadic point.
fn exp_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    // reduce to |r| <= 1/2 and square back
    let halvings = (x.msb() + 1).max(0);
    let w = guard(prec) + halvings as u32 + 8;
    let r = x.mul_pow2(-halvings);
    let r_i = DyadicInterval::point(r.clone());
    let mut term = DyadicInterval::from_int(1);
    let mut sum = DyadicInterval::from_int(1);
    let eps = Dyadic::pow2(-(w as i64) - 4);
    let mut n: i64 = 1;
    loop {
        term = term
            .mul(&r_i, w)
            .div(&DyadicInterval::from_int(n), w)
            .expect("positive denominator");
        sum = sum.add(&term, w);
        n += 1;
        let mag = Dyadic::max(&term.lower().abs(), &term.upper().abs());
        if mag < eps {
            // |r| <= 1/2: the tail is at most the last term
            sum = sum.inflate(&mag);
            break;
        }
    }
    for _ in 0..halvings {
        sum = sum.square(w);
    }
    sum
}

/// Enclosure of `exp x`.
pub fn exp(x: &DyadicInterval, prec: u32) -> DyadicInterval {
    let lo = exp_point(x.lower(), prec);
    if x.lower() == x.upper() {
        return lo;
    }
    let hi = exp_point(x.upper(), prec);
    DyadicInterval::new(lo.lower().clone(), hi.upper().clone())
}

/// Reduces a point modulo `2 pi`, returning an interval near zero.
fn reduce_two_pi(x: &Dyadic, prec: u32) -> DyadicInterval {
    let mag = x.msb().max(0) as u32;
    let w = guard(prec) + mag + 8;
    let two_pi = pi(w).mul_pow2(1);
    let k = x.div(&two_pi.midpoint(), 64, Round::Down);
    // nearest integer to x / 2pi
    let k = k.add(&Dyadic::pow2(-1)).floor();
    if k.is_zero() {
        return DyadicInterval::point(x.clone());
    }
    DyadicInterval::point(x.clone()).sub(&two_pi.mul(&DyadicInterval::point(Dyadic::from_bigint(k)), w), w)
}

/// Taylor series of cos (`odd == false`) or sin (`odd == true`) at a point.
fn trig_series(r: &Dyadic, odd: bool, prec: u32) -> DyadicInterval {
    let w = guard(prec);
    let r_i = DyadicInterval::point(r.clone());
    let r2 = r_i.square(w);
    let mut term = if odd { r_i.clone() } else { DyadicInterval::from_int(1) };
    let mut sum = term.clone();
    let mut n: i64 = if odd { 1 } else { 0 };
    let eps = Dyadic::pow2(-(w as i64) - 4);
    loop {
        let den = DyadicInterval::from_int((n + 1) * (n + 2));
        term = term.mul(&r2, w).div(&den, w).expect("positive").neg();
        sum = sum.add(&term, w);
        n += 2;
        let mag = Dyadic::max(&term.lower().abs(), &term.upper().abs());
        if mag < eps && Dyadic::from_int(n) > r.abs() {
            // the Lagrange remainder is bounded by the next term's magnitude,
            // which is smaller than the current one once n > |r|
            return sum.inflate(&mag);
        }
    }
}

fn trig(x: &DyadicInterval, odd: bool, prec: u32) -> DyadicInterval {
    // f(x) lies within rad(x) of f(mid x) since |f'| <= 1
    let mid = x.midpoint();
    let rad = x.radius();
    let reduced = reduce_two_pi(&mid, prec);
    let inner_mid = reduced.midpoint();
    let inner_rad = reduced.radius();
    let core = trig_series(&inner_mid, odd, prec);
    let out = core.inflate(&rad.add(&inner_rad));
    // clamp to [-1, 1]
    let lo = Dyadic::max(out.lower(), &Dyadic::from_int(-1));
    let hi = Dyadic::min(out.upper(), &Dyadic::one());
    DyadicInterval::new(lo, hi)
}

/// Enclosure of `cos x`.
pub fn cos(x: &DyadicInterval, prec: u32) -> DyadicInterval {
    trig(x, false, prec)
}

/// Enclosure of `sin x`.
pub fn sin(x: &DyadicInterval, prec: u32) -> DyadicInterval {
    trig(x, true, prec)
}

/// Enclosure of `x^n` for integer `n >= 0`.
pub fn powi(x: &DyadicInterval, n: u32, prec: u32) -> DyadicInterval {
    let mut acc = DyadicInterval::from_int(1);
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, prec);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, prec);
        }
    }
    acc
}

/// Midpoint-based `|x|` bound as a dyadic, handy for tolerance checks.
pub fn magnitude(x: &DyadicInterval) -> Dyadic {
    let a = x.lower().abs();
    let b = x.upper().abs();
    if a > b {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn width_ok(x: &DyadicInterval, bits: i64) -> bool {
        x.width() <= Dyadic::pow2(-bits)
    }

    #[test]
    fn pi_matches_known_digits() {
        let p = pi(200);
        // 3.14159265358979323846264338327950288
        let lo = Dyadic::from_rational(
            &num_rational::BigRational::new(
                "314159265358979323846264338327950".parse().unwrap(),
                "100000000000000000000000000000000".parse().unwrap(),
            ),
            200,
            Round::Down,
        );
        let hi = Dyadic::from_rational(
            &num_rational::BigRational::new(
                "314159265358979323846264338327951".parse().unwrap(),
                "100000000000000000000000000000000".parse().unwrap(),
            ),
            200,
            Round::Up,
        );
        assert!(lo <= *p.lower() && *p.upper() <= hi);
        assert!(width_ok(&p, 190));
    }

    #[test]
    fn ln_and_exp_are_inverse() {
        let x = DyadicInterval::from_int(5);
        let l = ln(&x, 120);
        assert!(width_ok(&l, 110));
        let back = exp(&l, 120);
        assert!(back.contains(&Dyadic::from_int(5)));
        let f = l.lower().to_f64();
        assert!((f - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn ln_of_small_values() {
        let x = DyadicInterval::point(Dyadic::new(BigInt::from(3), -7));
        let l = ln(&x, 80);
        assert!((l.midpoint().to_f64() - (3.0f64 / 128.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn cos_sin_pythagoras() {
        for v in [-1000i64, -3, 0, 1, 7, 314] {
            let x = DyadicInterval::from_int(v);
            let c = cos(&x, 100);
            let s = sin(&x, 100);
            let one = c.square(100).add(&s.square(100), 100);
            assert!(one.contains(&Dyadic::one()), "v = {v}");
            assert!(width_ok(&c, 80));
            assert!((c.midpoint().to_f64() - (v as f64).cos()).abs() < 1e-9);
        }
    }

    #[test]
    fn cos_of_pi_is_minus_one() {
        let p = pi(100);
        let c = cos(&p, 100);
        assert!(c.contains(&Dyadic::from_int(-1)));
    }

    #[test]
    fn exp_negative() {
        let x = DyadicInterval::from_int(-3);
        let e = exp(&x, 100);
        assert!((e.midpoint().to_f64() - (-3.0f64).exp()).abs() < 1e-14);
        assert!(width_ok(&e, 90));
    }
}
