//! `exists t >= t_min: cos(t theta) = c`, and the contracting case of
//! `r^t cos(t theta) = c`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::algebraic::{
    alg_arith_with, root_of_unity_order, select_root, AlgebraicNumber, ArithOp,
};
use crate::arith::transcendental::ln;
use crate::arith::{poly_resultant_eliminate, BiPoly, ComplexBox, RatPoly};
use crate::error::{Error, Precision, Result};
use crate::field::{membership_with, NumberField};
use crate::power::{solve_power_with, Certificate, Decision, PowerInstance};

#[derive(Clone, Debug)]
pub struct CosInstance {
    /// `cos theta`.
    pub alpha: AlgebraicNumber,
    pub c: AlgebraicNumber,
    pub t_min: u64,
}

impl CosInstance {
    pub fn new(alpha: AlgebraicNumber, c: AlgebraicNumber, t_min: u64) -> Self {
        CosInstance { alpha, c, t_min }
    }

    pub fn rational(alpha: &BigRational, c: &BigRational, t_min: u64) -> Self {
        CosInstance::new(
            AlgebraicNumber::from_rational(alpha),
            AlgebraicNumber::from_rational(c),
            t_min,
        )
    }
}

/// `z = r e^(i theta)` given through `r cos theta` and `r^2`.
#[derive(Clone, Debug)]
pub struct RCosInstance {
    pub r_cos: AlgebraicNumber,
    pub r_sq: AlgebraicNumber,
    pub c: AlgebraicNumber,
    pub t_min: u64,
}

impl RCosInstance {
    pub fn new(r_cos: AlgebraicNumber, r_sq: AlgebraicNumber, c: AlgebraicNumber, t_min: u64) -> Self {
        RCosInstance {
            r_cos,
            r_sq,
            c,
            t_min,
        }
    }
}

fn check_unit_interval(a: &AlgebraicNumber, name: &str) -> Result<()> {
    if !a.is_real() {
        return Err(Error::Domain(alloc::format!("{name} is not real")));
    }
    if !a.abs_at_most_one()? {
        return Err(Error::Domain(alloc::format!("|{name}| > 1")));
    }
    Ok(())
}

/// Disk around `a + i sqrt(1 - a^2)`, or `None` while `1 - a^2` is not yet
/// separated from zero.
fn unit_lift_enclosure(a: &AlgebraicNumber, bits: u32) -> Option<ComplexBox> {
    let w = bits + 8;
    let e = a.enclosure(w);
    let one = ComplexBox::from_rational(&BigRational::one());
    let d = one.sub(&e.mul(&e, w));
    if d.center_x() <= d.radius() {
        return None;
    }
    let s = d.sqrt_real(w);
    Some(ComplexBox::new(
        e.center_x().clone(),
        s.center_x().clone(),
        e.radius() + s.radius(),
    ))
}

pub fn build_z(alpha: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    build_z_with(alpha, &Precision::default())
}

/// `z = alpha + i sqrt(1 - alpha^2)`, so `z + 1/z = 2 alpha` and `|z| = 1`.
pub fn build_z_with(alpha: &AlgebraicNumber, prec: &Precision) -> Result<AlgebraicNumber> {
    check_unit_interval(alpha, "alpha")?;
    if let Some(q) = alpha.to_rational() {
        if q.abs().is_one() {
            return Ok(alpha.clone());
        }
        // q = n/d: z is a root of d x^2 - 2n x + d
        let (n, d) = (q.numer().clone(), q.denom().clone());
        let ann = RatPoly::from_bigints(&[d.clone(), -(n * 2u32), d]);
        return select_root(&ann, |bits| unit_lift_enclosure(alpha, bits), prec);
    }
    // Res_x(minpoly(alpha)(x), y^2 - 2 x y + 1)
    let lift = BiPoly::new(vec![
        RatPoly::from_ints(&[1, 0, 1]),
        RatPoly::from_ints(&[0, -2]),
    ]);
    let ann = poly_resultant_eliminate(alpha.minpoly(), &lift)?;
    select_root(&ann, |bits| unit_lift_enclosure(alpha, bits), prec)
}

pub fn build_targets(c: &AlgebraicNumber) -> Result<Vec<AlgebraicNumber>> {
    build_targets_with(c, &Precision::default())
}

/// The roots `c +- i sqrt(1 - c^2)` of `x^2 - 2 c x + 1`.
pub fn build_targets_with(c: &AlgebraicNumber, prec: &Precision) -> Result<Vec<AlgebraicNumber>> {
    let w = build_z_with(c, prec)?;
    if w.is_real() {
        return Ok(vec![w]);
    }
    let v = w.conj();
    Ok(vec![w, v])
}

pub fn decide_cos(inst: &CosInstance) -> Result<Decision> {
    decide_cos_with(inst, &Precision::default())
}

/// Exact decision of `exists t >= t_min: cos(t theta) = c` where
/// `cos theta = alpha`. A positive answer carries the least such `t`.
pub fn decide_cos_with(inst: &CosInstance, prec: &Precision) -> Result<Decision> {
    check_unit_interval(&inst.alpha, "alpha")?;
    check_unit_interval(&inst.c, "c")?;
    if let Some(a) = inst.alpha.to_rational() {
        if a.abs().is_one() {
            return Ok(trivial_orbit(&a, &inst.c, inst.t_min));
        }
    }
    let z = build_z_with(&inst.alpha, prec)?;
    let finite = root_of_unity_order(&z).is_some();
    let field = NumberField::new(z);
    let targets = build_targets_with(&inst.c, prec)?;

    let mut best: Option<u64> = None;
    let mut reached: Option<Certificate> = None;
    let mut off_orbit = false;
    for w in &targets {
        // a finite orbit holds only roots of unity
        if finite && root_of_unity_order(w).is_none() {
            off_orbit = true;
            continue;
        }
        let Some(fe) = membership_with(&field, w, prec)? else {
            continue;
        };
        let pi = PowerInstance::new(field.clone(), field.gen(), fe, inst.t_min);
        match solve_power_with(&pi, prec)? {
            Decision::Yes { witness } => {
                best = Some(best.map_or(witness, |b| b.min(witness)));
            }
            Decision::No { certificate } => reached = Some(certificate),
        }
    }
    Ok(match (best, reached) {
        (Some(t), _) => Decision::yes(t),
        (None, Some(cert)) => Decision::no(cert),
        (None, None) if off_orbit => Decision::no(Certificate::OrbitExhausted),
        (None, None) => Decision::no(Certificate::NotInField),
    })
}

/// `theta` in `{0, pi}`: the orbit of `cos(t theta)` is `{1}` or `{1, -1}`.
fn trivial_orbit(alpha: &BigRational, c: &AlgebraicNumber, t_min: u64) -> Decision {
    let Some(c) = c.to_rational() else {
        return Decision::no(Certificate::OrbitExhausted);
    };
    for t in t_min..t_min + 2 {
        let v = if alpha.is_negative() && t % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        if v == c {
            return Decision::yes(t);
        }
    }
    Decision::no(Certificate::OrbitExhausted)
}

pub fn decide_rcos_contracting(inst: &RCosInstance) -> Result<Decision> {
    decide_rcos_contracting_with(inst, &Precision::default())
}

/// Exact decision of `exists t >= t_min: r^t cos(t theta) = c` for `r <= 1`
/// and `c != 0`. For `r < 1` only `t <= ln|c| / ln r` can work, and every such
/// term is compared exactly.
pub fn decide_rcos_contracting_with(inst: &RCosInstance, prec: &Precision) -> Result<Decision> {
    let one = AlgebraicNumber::one();
    if !inst.r_cos.is_real() || !inst.c.is_real() {
        return Err(Error::Domain("r cos theta and c must be real".to_string()));
    }
    if inst.r_sq.sign_real()? <= 0 {
        return Err(Error::DegenerateInput("r^2 must be positive".to_string()));
    }
    let r_cos_sq = alg_arith_with(ArithOp::Mul, &inst.r_cos, &inst.r_cos, prec)?;
    if alg_arith_with(ArithOp::Sub, &inst.r_sq, &r_cos_sq, prec)?.sign_real()? < 0 {
        return Err(Error::Domain("(r cos theta)^2 exceeds r^2".to_string()));
    }
    match alg_arith_with(ArithOp::Sub, &inst.r_sq, &one, prec)?.sign_real()? {
        1 => return Err(Error::DegenerateInput("r > 1".to_string())),
        0 => {
            return decide_cos_with(
                &CosInstance::new(inst.r_cos.clone(), inst.c.clone(), inst.t_min),
                prec,
            )
        }
        _ => {}
    }
    if inst.c.is_zero() {
        return Err(Error::DegenerateInput("c = 0".to_string()));
    }
    let bound = contracting_bound(&inst.r_sq, &inst.c, prec)?.max(inst.t_min);
    let mut seq = RcosTerms::new(&inst.r_cos, &inst.r_sq);
    for t in 0..=bound {
        let a = seq.next(prec)?;
        if t >= inst.t_min && a.equals(&inst.c) {
            return Ok(Decision::yes(t));
        }
    }
    Ok(Decision::no(Certificate::BoundExhausted { bound }))
}

/// `ceil(ln|c| / ln r)` from outward-rounded enclosures, clamped at 0.
fn contracting_bound(r_sq: &AlgebraicNumber, c: &AlgebraicNumber, prec: &Precision) -> Result<u64> {
    let mut bits = 32u32;
    loop {
        let rs = r_sq.real_interval(bits);
        let cm = c.real_interval(bits).abs();
        if rs.is_positive() && cm.is_positive() {
            let lr = ln(&rs, bits);
            if lr.is_negative() {
                // ln r = ln(r^2) / 2
                let q = ln(&cm, bits)
                    .mul_pow2(1)
                    .div(&lr, bits)
                    .expect("negative denominator");
                let hi = q.upper().ceil();
                if !hi.is_positive() {
                    return Ok(0);
                }
                return hi
                    .to_u64()
                    .ok_or_else(|| Error::DegenerateInput("bound does not fit in u64".to_string()));
            }
        }
        bits = prec.escalate(bits)?;
    }
}

/// `a_t = r^t cos(t theta)` through `a_t = 2 r cos theta a_(t-1) - r^2 a_(t-2)`.
struct RcosTerms {
    state: RcosState,
    t: u64,
}

enum RcosState {
    Rational {
        r_cos: BigRational,
        r_sq: BigRational,
        prev: BigRational,
        cur: BigRational,
    },
    Algebraic {
        r_cos: AlgebraicNumber,
        r_sq: AlgebraicNumber,
        prev: AlgebraicNumber,
        cur: AlgebraicNumber,
    },
}

impl RcosTerms {
    fn new(r_cos: &AlgebraicNumber, r_sq: &AlgebraicNumber) -> Self {
        let state = match (r_cos.to_rational(), r_sq.to_rational()) {
            (Some(rc), Some(rs)) => RcosState::Rational {
                prev: BigRational::one(),
                cur: rc.clone(),
                r_cos: rc,
                r_sq: rs,
            },
            _ => RcosState::Algebraic {
                r_cos: r_cos.clone(),
                r_sq: r_sq.clone(),
                prev: AlgebraicNumber::one(),
                cur: r_cos.clone(),
            },
        };
        RcosTerms { state, t: 0 }
    }

    fn next(&mut self, prec: &Precision) -> Result<AlgebraicNumber> {
        let t = self.t;
        self.t += 1;
        match &mut self.state {
            RcosState::Rational {
                r_cos,
                r_sq,
                prev,
                cur,
            } => {
                if t == 0 {
                    return Ok(AlgebraicNumber::from_rational(prev));
                }
                if t > 1 {
                    let two = BigRational::from_integer(BigInt::from(2));
                    let next = &two * &*r_cos * &*cur - &*r_sq * &*prev;
                    *prev = core::mem::replace(cur, next);
                }
                Ok(AlgebraicNumber::from_rational(cur))
            }
            RcosState::Algebraic {
                r_cos,
                r_sq,
                prev,
                cur,
            } => {
                if t == 0 {
                    return Ok(prev.clone());
                }
                if t > 1 {
                    let two = AlgebraicNumber::from_integer(2);
                    let a = alg_arith_with(ArithOp::Mul, &two, r_cos, prec)?;
                    let a = alg_arith_with(ArithOp::Mul, &a, cur, prec)?;
                    let b = alg_arith_with(ArithOp::Mul, r_sq, prev, prec)?;
                    let next = alg_arith_with(ArithOp::Sub, &a, &b, prec)?;
                    *prev = core::mem::replace(cur, next);
                }
                Ok(cur.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::rat;

    fn q(n: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(&rat(n, d))
    }

    fn decide(a: (i64, i64), c: (i64, i64)) -> Decision {
        decide_cos(&CosInstance::rational(&rat(a.0, a.1), &rat(c.0, c.1), 0)).unwrap()
    }

    #[test]
    fn z_from_alpha() {
        let z = build_z(&q(3, 5)).unwrap();
        assert_eq!(z.minpoly(), &RatPoly::from_ints(&[5, -6, 5]));
        assert!(z.isolating_box().contains_point(&rat(3, 5), &rat(4, 5)));
        assert!(build_z(&q(1, 1)).unwrap().is_one());
        let z = build_z(&q(1, 2)).unwrap();
        assert_eq!(z.minpoly(), &RatPoly::from_ints(&[1, -1, 1]));
        assert!(z.isolating_box().center_y().is_positive());
        assert!(matches!(build_z(&q(2, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn z_from_irrational_alpha() {
        // cos(pi/4) = 1/sqrt2, z = e^(i pi/4), order 8
        let half = q(1, 2);
        let a = crate::algebraic::alg_sqrt_nonneg(&half).unwrap();
        let z = build_z(&a).unwrap();
        assert_eq!(z.minpoly(), &RatPoly::from_ints(&[1, 0, 0, 0, 1]));
        assert_eq!(root_of_unity_order(&z), Some(8));
    }

    #[test]
    fn targets() {
        let t = build_targets(&q(-7, 25)).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|w| w.minpoly() == &RatPoly::from_ints(&[25, 14, 25])));
        assert!(t[0].isolating_box().contains_point(&rat(-7, 25), &rat(24, 25)));
        assert!(t[1].isolating_box().contains_point(&rat(-7, 25), &rat(-24, 25)));
        assert_eq!(build_targets(&q(1, 1)).unwrap().len(), 1);
        let t = build_targets(&q(0, 1)).unwrap();
        assert_eq!(t[0].minpoly(), &RatPoly::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn decisions() {
        assert_eq!(decide((3, 5), (-7, 25)), Decision::yes(2));
        assert_eq!(decide((3, 5), (1, 2)), Decision::no(Certificate::NotInField));
        assert_eq!(decide((1, 2), (-1, 1)), Decision::yes(3));
        assert_eq!(decide((1, 2), (3, 5)), Decision::no(Certificate::OrbitExhausted));
        assert_eq!(decide((2, 7), (1, 1)), Decision::yes(0));
        assert_eq!(decide((1, 2), (0, 1)), Decision::no(Certificate::NotInField));
        assert_eq!(
            decide((3, 5), (4, 5)),
            Decision::no(Certificate::HeightCandidateFailed)
        );
    }

    #[test]
    fn degenerate_angles() {
        assert_eq!(decide((-1, 1), (-1, 1)), Decision::yes(1));
        assert_eq!(decide((1, 1), (-1, 1)), Decision::no(Certificate::OrbitExhausted));
        let d = decide_cos(&CosInstance::rational(&rat(-1, 1), &rat(1, 1), 1)).unwrap();
        assert_eq!(d, Decision::yes(2));
    }

    #[test]
    fn contracting() {
        let inst = |c: (i64, i64), t_min| RCosInstance::new(q(3, 10), q(1, 4), q(c.0, c.1), t_min);
        assert_eq!(
            decide_rcos_contracting(&inst((3, 10), 0)).unwrap(),
            Decision::yes(1)
        );
        assert_eq!(
            decide_rcos_contracting(&inst((1, 5), 0)).unwrap(),
            Decision::no(Certificate::BoundExhausted { bound: 3 })
        );
        assert_eq!(decide_rcos_contracting(&inst((1, 1), 0)).unwrap(), Decision::yes(0));
        assert_eq!(
            decide_rcos_contracting(&inst((-117, 1000), 0)).unwrap(),
            Decision::yes(3)
        );
        assert!(matches!(
            decide_rcos_contracting(&inst((0, 1), 0)),
            Err(Error::DegenerateInput(_))
        ));
        let wide = RCosInstance::new(q(3, 10), q(2, 1), q(1, 5), 0);
        assert!(matches!(
            decide_rcos_contracting(&wide),
            Err(Error::DegenerateInput(_))
        ));
        let unit = RCosInstance::new(q(3, 5), q(1, 1), q(-7, 25), 0);
        assert_eq!(decide_rcos_contracting(&unit).unwrap(), Decision::yes(2));
    }
}
