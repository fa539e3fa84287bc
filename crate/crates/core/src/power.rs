//! Deciding `z^t = w` for `t >= t_min` inside `Q(z)`.

use alloc::string::ToString;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebraic::{root_of_unity_order, weil_height, AlgebraicNumber};
use crate::arith::{DyadicInterval, RationalMatrix};
use crate::error::{Error, Precision, Result};
use crate::field::{fe_to_algebraic_with, multiplication_matrix, FieldElement, NumberField};

/// Why a decision came out negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// No target lies in `Q(z)`.
    NotInField,
    /// `z` has finite order and a full period was checked.
    OrbitExhausted,
    /// The height quotient admits no exponent that survives exact checking.
    HeightCandidateFailed,
    /// Every index up to `bound` was checked exactly.
    BoundExhausted { bound: u64 },
}

impl Certificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certificate::NotInField => "not-in-field",
            Certificate::OrbitExhausted => "orbit-exhausted",
            Certificate::HeightCandidateFailed => "height-candidate-failed",
            Certificate::BoundExhausted { .. } => "bound-exhausted",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes { witness: u64 },
    No { certificate: Certificate },
}

impl Decision {
    pub fn yes(witness: u64) -> Self {
        Decision::Yes { witness }
    }

    pub fn no(certificate: Certificate) -> Self {
        Decision::No { certificate }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes { .. })
    }

    pub fn witness(&self) -> Option<u64> {
        match self {
            Decision::Yes { witness } => Some(*witness),
            Decision::No { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self {
            Decision::Yes { .. } => None,
            Decision::No { certificate } => Some(*certificate),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PowerInstance {
    pub field: NumberField,
    pub base: FieldElement,
    pub target: FieldElement,
    pub t_min: u64,
}

impl PowerInstance {
    pub fn new(field: NumberField, base: FieldElement, target: FieldElement, t_min: u64) -> Self {
        PowerInstance {
            field,
            base,
            target,
            t_min,
        }
    }
}

pub fn solve_power(inst: &PowerInstance) -> Result<Decision> {
    solve_power_with(inst, &Precision::default())
}

fn base_algebraic(inst: &PowerInstance, prec: &Precision) -> Result<AlgebraicNumber> {
    if inst.base == inst.field.gen() {
        return Ok(inst.field.generator().clone());
    }
    fe_to_algebraic_with(&inst.field, &inst.base, prec)
}

/// Exact decision of `exists t >= t_min: base^t = target`.
///
/// A root of unity of order `n` is scanned over one period. Otherwise the
/// exponent is unique and `h(target) = t h(base)` with `h(base) > 0`, so a
/// narrow enclosure of the height quotient leaves at most three candidates,
/// each checked exactly.
pub fn solve_power_with(inst: &PowerInstance, prec: &Precision) -> Result<Decision> {
    let k = &inst.field;
    if inst.base.is_zero() {
        return Err(Error::DegenerateInput("base is zero".to_string()));
    }
    let z = base_algebraic(inst, prec)?;
    if let Some(n) = root_of_unity_order(&z) {
        let mut p = k.pow(&inst.base, inst.t_min);
        for t in inst.t_min..inst.t_min + n {
            if p == inst.target {
                return Ok(Decision::yes(t));
            }
            p = k.mul(&p, &inst.base);
        }
        return Ok(Decision::no(Certificate::OrbitExhausted));
    }
    if inst.target.is_zero() {
        return Ok(Decision::no(Certificate::HeightCandidateFailed));
    }
    let w = fe_to_algebraic_with(k, &inst.target, prec)?;
    let mut bits = prec.start_bits.max(64);
    loop {
        prec.check(bits)?;
        let hz = weil_height(&z, bits)?;
        let hw = weil_height(&w, bits)?;
        if hz.is_positive() {
            let q = hw
                .value()
                .div(hz.value(), bits)
                .expect("positive denominator");
            if q.width().to_f64() < 2.0 {
                return Ok(check_candidates(inst, &q));
            }
        }
        bits = prec.escalate(bits)?;
    }
}

fn check_candidates(inst: &PowerInstance, q: &DyadicInterval) -> Decision {
    let lo = q.lower().ceil().max(BigInt::from(inst.t_min));
    let hi = q.upper().floor();
    let mut t = lo;
    while t <= hi {
        let Some(tt) = t.to_u64() else { break };
        if inst.field.pow(&inst.base, tt) == inst.target {
            return Decision::yes(tt);
        }
        t += 1;
    }
    Decision::no(Certificate::HeightCandidateFailed)
}

/// `M^t e_0 = v` where `M` must be the multiplication matrix of its own first
/// column.
pub fn solve_orbit_multiplication(
    m: &RationalMatrix,
    v: &[num_rational::BigRational],
    field: &NumberField,
    t_min: u64,
) -> Result<Decision> {
    let d = field.degree();
    if m.dim() != d || v.len() != d {
        return Err(Error::InvalidInput("dimension does not match the field".to_string()));
    }
    let base = field.element(m.column(0))?;
    if &multiplication_matrix(field, &base) != m {
        return Err(Error::NotAMultiplicationMatrix);
    }
    if base.is_zero() && !v.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateInput("base is zero".to_string()));
    }
    let target = field.element(v.to_vec())?;
    solve_power(&PowerInstance::new(field.clone(), base, target, t_min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::rat;
    use crate::arith::{ComplexBox, RatPoly};

    fn field(p: &[i64], x: (i64, i64), y: (i64, i64)) -> NumberField {
        NumberField::new(
            AlgebraicNumber::from_poly_and_box(
                &RatPoly::from_ints(p),
                &ComplexBox::new(rat(x.0, x.1), rat(y.0, y.1), rat(1, 10)),
            )
            .unwrap(),
        )
    }

    fn unit() -> NumberField {
        field(&[5, -6, 5], (3, 5), (4, 5))
    }

    fn gauss() -> NumberField {
        field(&[1, 0, 1], (0, 1), (1, 1))
    }

    #[test]
    fn planted_fifth_power() {
        let k = unit();
        let w = k.pow(&k.gen(), 5);
        let d = solve_power(&PowerInstance::new(k.clone(), k.gen(), w, 0)).unwrap();
        assert_eq!(d, Decision::yes(5));
    }

    #[test]
    fn imaginary_unit_orbit() {
        let k = gauss();
        let minus_one = k.from_rational(&rat(-1, 1));
        let d = solve_power(&PowerInstance::new(k.clone(), k.gen(), minus_one, 0)).unwrap();
        assert_eq!(d, Decision::yes(2));
        let two = k.from_rational(&rat(2, 1));
        let d = solve_power(&PowerInstance::new(k.clone(), k.gen(), two, 0)).unwrap();
        assert_eq!(d, Decision::no(Certificate::OrbitExhausted));
    }

    #[test]
    fn equal_height_wrong_point() {
        // i = (5z - 3)/4, so (4+3i)/5 = 7/20 + (3/4) z
        let k = unit();
        let target = k.element(alloc::vec![rat(7, 20), rat(3, 4)]).unwrap();
        let d = solve_power(&PowerInstance::new(k.clone(), k.gen(), target, 0)).unwrap();
        assert_eq!(d, Decision::no(Certificate::HeightCandidateFailed));
    }

    #[test]
    fn t_min_respected() {
        let k = gauss();
        let one = k.one();
        let d = solve_power(&PowerInstance::new(k.clone(), k.gen(), one, 1)).unwrap();
        assert_eq!(d, Decision::yes(4));
        let k = unit();
        let d = solve_power(&PowerInstance::new(k.clone(), k.gen(), k.pow(&k.gen(), 3), 4)).unwrap();
        assert_eq!(d, Decision::no(Certificate::HeightCandidateFailed));
    }

    #[test]
    fn zero_base_rejected() {
        let k = unit();
        let e = solve_power(&PowerInstance::new(k.clone(), k.zero(), k.one(), 0)).unwrap_err();
        assert!(matches!(e, Error::DegenerateInput(_)));
    }

    #[test]
    fn orbit_wrapper() {
        let k = unit();
        let m = multiplication_matrix(&k, &k.gen());
        let d = solve_orbit_multiplication(&m, &[rat(-1, 1), rat(6, 5)], &k, 0).unwrap();
        assert_eq!(d, Decision::yes(2));
        let d = solve_orbit_multiplication(&RationalMatrix::identity(2), &[rat(1, 1), rat(0, 1)], &k, 3)
            .unwrap();
        assert_eq!(d, Decision::yes(3));
        let g = gauss();
        let mi = multiplication_matrix(&g, &g.gen());
        let d = solve_orbit_multiplication(&mi, &[rat(2, 1), rat(0, 1)], &g, 0).unwrap();
        assert!(!d.is_yes());
        let mut bad = RationalMatrix::identity(2);
        bad.set(0, 1, rat(1, 1));
        assert_eq!(
            solve_orbit_multiplication(&bad, &[rat(1, 1), rat(0, 1)], &k, 0).unwrap_err(),
            Error::NotAMultiplicationMatrix
        );
    }
}
