//! Turning `sum c_i cos(t A_i) = c` over the integers into one equation over
//! the reals: square the residual, add `(cos 2 pi t - 1)^2`, and expand the
//! products with `2 cos A cos B = cos(A + B) + cos(A - B)`.
//!
//! Angles are formal: rational combinations of symbols `theta_1, ..., theta_k`
//! and `pi`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::transcendental::{cos, exp, ln, pi};
use crate::arith::{DyadicInterval, RatPoly};
use crate::error::{Error, Result};

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `sum theta[i] * theta_(i+1) + pi_coeff * pi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle {
    theta: Vec<BigRational>,
    pi: BigRational,
}

impl Angle {
    pub fn new(mut theta: Vec<BigRational>, pi: BigRational) -> Self {
        trim(&mut theta);
        Angle { theta, pi }
    }

    pub fn zero() -> Self {
        Angle::new(Vec::new(), BigRational::zero())
    }

    /// `theta_(i+1)`.
    pub fn theta(i: usize) -> Self {
        let mut v = alloc::vec![BigRational::zero(); i + 1];
        v[i] = BigRational::one();
        Angle::new(v, BigRational::zero())
    }

    /// `q pi`.
    pub fn pi_multiple(q: BigRational) -> Self {
        Angle::new(Vec::new(), q)
    }

    pub fn theta_coeffs(&self) -> &[BigRational] {
        &self.theta
    }

    pub fn pi_coeff(&self) -> &BigRational {
        &self.pi
    }

    pub fn is_zero(&self) -> bool {
        self.theta.is_empty() && self.pi.is_zero()
    }

    pub fn neg(&self) -> Self {
        Angle {
            theta: self.theta.iter().map(|c| -c).collect(),
            pi: -&self.pi,
        }
    }

    pub fn add(&self, other: &Angle) -> Self {
        let n = self.theta.len().max(other.theta.len());
        let z = BigRational::zero();
        let theta = (0..n)
            .map(|i| self.theta.get(i).unwrap_or(&z) + other.theta.get(i).unwrap_or(&z))
            .collect();
        Angle::new(theta, &self.pi + &other.pi)
    }

    pub fn sub(&self, other: &Angle) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Angle::new(self.theta.iter().map(|c| c * q).collect(), &self.pi * q)
    }

    /// `true` when the first nonzero coordinate is positive (or the angle is 0).
    pub fn is_canonical(&self) -> bool {
        self.theta
            .iter()
            .chain(core::iter::once(&self.pi))
            .find(|c| !c.is_zero())
            .map_or(true, |c| c.is_positive())
    }

    /// The representative with the same cosine.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.neg()
        }
    }

    fn value(&self, val: &Valuation, prec: u32) -> Result<DyadicInterval> {
        let mut acc = DyadicInterval::from_int(0);
        for (i, c) in self.theta.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let th = val
                .theta
                .get(i)
                .ok_or_else(|| Error::MissingSymbol(format!("theta{}", i + 1)))?;
            acc = acc.add(&th.mul_rational(c, prec), prec);
        }
        if !self.pi.is_zero() {
            acc = acc.add(&pi(prec).mul_rational(&self.pi, prec), prec);
        }
        Ok(acc)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.theta.iter().enumerate() {
            if !c.is_zero() {
                if !first {
                    f.write_str(" + ")?;
                }
                write!(f, "{c}*theta{}", i + 1)?;
                first = false;
            }
        }
        if !self.pi.is_zero() || first {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{}*pi", self.pi)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosTerm {
    pub coeff: BigRational,
    pub angle: Angle,
}

impl CosTerm {
    pub fn new(coeff: BigRational, angle: Angle) -> Self {
        CosTerm { coeff, angle }
    }
}

/// `constant + sum coeff_i cos(t angle_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosSumExpr {
    pub constant: BigRational,
    pub terms: Vec<CosTerm>,
}

impl CosSumExpr {
    pub fn new(constant: BigRational, terms: Vec<CosTerm>) -> Self {
        CosSumExpr { constant, terms }
    }

    pub fn constant(c: BigRational) -> Self {
        CosSumExpr::new(c, Vec::new())
    }

    pub fn angles(&self) -> impl Iterator<Item = &Angle> {
        self.terms.iter().map(|t| &t.angle)
    }

    pub fn sub_constant(&self, c: &BigRational) -> Self {
        CosSumExpr::new(&self.constant - c, self.terms.clone())
    }

    pub fn add(&self, other: &CosSumExpr) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        normalize(&CosSumExpr::new(&self.constant + &other.constant, terms))
    }

    /// Product, expanded with `cos A cos B = (cos(A+B) + cos(A-B)) / 2`.
    pub fn mul(&self, other: &CosSumExpr) -> Self {
        let mut terms = Vec::new();
        let constant = &self.constant * &other.constant;
        for t in &other.terms {
            terms.push(CosTerm::new(&self.constant * &t.coeff, t.angle.clone()));
        }
        for s in &self.terms {
            terms.push(CosTerm::new(&other.constant * &s.coeff, s.angle.clone()));
            for t in &other.terms {
                let c = &s.coeff * &t.coeff * half();
                terms.push(CosTerm::new(c.clone(), s.angle.add(&t.angle)));
                terms.push(CosTerm::new(c, s.angle.sub(&t.angle)));
            }
        }
        normalize(&CosSumExpr::new(constant, terms))
    }
}

/// Canonical form: angles with positive leading coordinate, equal angles
/// merged, the zero angle folded into the constant, zero terms dropped, terms
/// sorted by angle.
pub fn normalize(expr: &CosSumExpr) -> CosSumExpr {
    let mut constant = expr.constant.clone();
    let mut acc: BTreeMap<Angle, BigRational> = BTreeMap::new();
    for t in &expr.terms {
        let a = t.angle.canonical();
        if a.is_zero() {
            constant += &t.coeff;
        } else {
            *acc.entry(a).or_insert_with(BigRational::zero) += &t.coeff;
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| CosTerm::new(c, a))
        .collect();
    CosSumExpr::new(constant, terms)
}

/// `(cos 2 pi t - 1)^2 = 3/2 + cos(4 pi t) / 2 - 2 cos(2 pi t)`, zero on the
/// reals exactly at the integers.
pub fn integrality_gadget() -> CosSumExpr {
    CosSumExpr::new(
        BigRational::new(BigInt::from(3), BigInt::from(2)),
        alloc::vec![
            CosTerm::new(half(), Angle::pi_multiple(int(4))),
            CosTerm::new(int(-2), Angle::pi_multiple(int(2))),
        ],
    )
}

/// `(expr - c)^2 + (cos 2 pi t - 1)^2` as a normalized cosine sum.
pub fn square_and_rewrite(expr: &CosSumExpr, c: &BigRational) -> CosSumExpr {
    let s = normalize(&expr.sub_constant(c));
    s.mul(&s).add(&integrality_gadget())
}

/// Exponent vector over base symbols `r_1, ..., r_m`: the base is
/// `prod r_i^tags[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseTag {
    tags: Vec<u32>,
}

impl BaseTag {
    pub fn new(mut tags: Vec<u32>) -> Self {
        while tags.last() == Some(&0) {
            tags.pop();
        }
        BaseTag { tags }
    }

    pub fn one() -> Self {
        BaseTag::default()
    }

    /// `r_(i+1)`.
    pub fn symbol(i: usize) -> Self {
        let mut v = alloc::vec![0; i + 1];
        v[i] = 1;
        BaseTag::new(v)
    }

    pub fn tags(&self) -> &[u32] {
        &self.tags
    }

    pub fn is_one(&self) -> bool {
        self.tags.is_empty()
    }

    /// Product of bases.
    pub fn mul(&self, other: &BaseTag) -> Self {
        let n = self.tags.len().max(other.tags.len());
        BaseTag::new(
            (0..n)
                .map(|i| self.tags.get(i).unwrap_or(&0) + other.tags.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    /// `ln` of the base.
    fn log_value(&self, val: &Valuation, prec: u32) -> Result<DyadicInterval> {
        let mut acc = DyadicInterval::from_int(0);
        for (i, &e) in self.tags.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let r = val
                .bases
                .get(i)
                .ok_or_else(|| Error::MissingSymbol(format!("r{}", i + 1)))?;
            if !r.is_positive() {
                return Err(Error::Domain(format!("r{} must be positive", i + 1)));
            }
            let l = ln(r, prec).mul(&DyadicInterval::from_int(e as i64), prec);
            acc = acc.add(&l, prec);
        }
        Ok(acc)
    }
}

/// `poly(t) * base^t * cos(t angle)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolyCosTerm {
    pub base: BaseTag,
    pub poly: RatPoly,
    pub angle: Angle,
}

impl ExpPolyCosTerm {
    pub fn new(base: BaseTag, poly: RatPoly, angle: Angle) -> Self {
        ExpPolyCosTerm { base, poly, angle }
    }
}

/// `constant + sum p_i(t) r_i^t cos(t A_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolyCosExpr {
    pub constant: BigRational,
    pub terms: Vec<ExpPolyCosTerm>,
}

impl ExpPolyCosExpr {
    pub fn new(constant: BigRational, terms: Vec<ExpPolyCosTerm>) -> Self {
        ExpPolyCosExpr { constant, terms }
    }

    pub fn add(&self, other: &ExpPolyCosExpr) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ep_normalize(&ExpPolyCosExpr::new(&self.constant + &other.constant, terms))
    }

    pub fn mul(&self, other: &ExpPolyCosExpr) -> Self {
        let constant = &self.constant * &other.constant;
        let mut terms = Vec::new();
        for t in &other.terms {
            terms.push(ExpPolyCosTerm::new(
                t.base.clone(),
                t.poly.scale(&self.constant),
                t.angle.clone(),
            ));
        }
        for s in &self.terms {
            terms.push(ExpPolyCosTerm::new(
                s.base.clone(),
                s.poly.scale(&other.constant),
                s.angle.clone(),
            ));
            for t in &other.terms {
                let base = s.base.mul(&t.base);
                let poly = (&s.poly * &t.poly).scale(&half());
                terms.push(ExpPolyCosTerm::new(base.clone(), poly.clone(), s.angle.add(&t.angle)));
                terms.push(ExpPolyCosTerm::new(base, poly, s.angle.sub(&t.angle)));
            }
        }
        ep_normalize(&ExpPolyCosExpr::new(constant, terms))
    }
}

impl From<&CosSumExpr> for ExpPolyCosExpr {
    fn from(e: &CosSumExpr) -> Self {
        ExpPolyCosExpr::new(
            e.constant.clone(),
            e.terms
                .iter()
                .map(|t| {
                    ExpPolyCosTerm::new(
                        BaseTag::one(),
                        RatPoly::constant(t.coeff.clone()),
                        t.angle.clone(),
                    )
                })
                .collect(),
        )
    }
}

/// Canonical form merging on `(base, angle)`; the constant part of a term
/// with base 1 and angle 0 moves into the constant.
pub fn ep_normalize(expr: &ExpPolyCosExpr) -> ExpPolyCosExpr {
    let mut constant = expr.constant.clone();
    let mut acc: BTreeMap<(BaseTag, Angle), RatPoly> = BTreeMap::new();
    for t in &expr.terms {
        let key = (t.base.clone(), t.angle.canonical());
        let e = acc.entry(key).or_insert_with(RatPoly::zero);
        *e = &*e + &t.poly;
    }
    let mut terms = Vec::new();
    for ((base, angle), mut poly) in acc {
        if base.is_one() && angle.is_zero() {
            constant += poly.coeff(0);
            let mut c = poly.into_coeffs();
            if !c.is_empty() {
                c[0] = BigRational::zero();
            }
            poly = RatPoly::new(c);
        }
        if !poly.is_zero() {
            terms.push(ExpPolyCosTerm::new(base, poly, angle));
        }
    }
    ExpPolyCosExpr::new(constant, terms)
}

/// `(expr - c)^2 + (cos 2 pi t - 1)^2`, expanded.
pub fn ep_square_and_rewrite(expr: &ExpPolyCosExpr, c: &BigRational) -> ExpPolyCosExpr {
    let s = ep_normalize(&ExpPolyCosExpr::new(&expr.constant - c, expr.terms.clone()));
    s.mul(&s).add(&ExpPolyCosExpr::from(&integrality_gadget()))
}

/// Certified values for `theta_1, ...` and the positive bases `r_1, ...`.
#[derive(Clone, Debug, Default)]
pub struct Valuation {
    pub theta: Vec<DyadicInterval>,
    pub bases: Vec<DyadicInterval>,
}

impl Valuation {
    pub fn new(theta: Vec<DyadicInterval>, bases: Vec<DyadicInterval>) -> Self {
        Valuation { theta, bases }
    }
}

fn poly_eval_interval(p: &RatPoly, t: &DyadicInterval, prec: u32) -> DyadicInterval {
    let mut acc = DyadicInterval::from_int(0);
    for c in p.coeffs().iter().rev() {
        acc = acc
            .mul(t, prec)
            .add(&DyadicInterval::from_rational(c, prec), prec);
    }
    acc
}

/// Enclosure of the expression at `t`.
pub fn ep_eval_numeric(
    expr: &ExpPolyCosExpr,
    t: &DyadicInterval,
    val: &Valuation,
    prec: u32,
) -> Result<DyadicInterval> {
    let mut acc = DyadicInterval::from_rational(&expr.constant, prec);
    for term in &expr.terms {
        let mut v = poly_eval_interval(&term.poly, t, prec);
        if !term.base.is_one() {
            let lb = term.base.log_value(val, prec)?;
            v = v.mul(&exp(&lb.mul(t, prec), prec), prec);
        }
        if !term.angle.is_zero() {
            let a = term.angle.value(val, prec)?;
            v = v.mul(&cos(&a.mul(t, prec), prec), prec);
        }
        acc = acc.add(&v, prec);
    }
    Ok(acc)
}

/// Enclosure of the cosine sum at `t`.
pub fn eval_numeric(
    expr: &CosSumExpr,
    t: &DyadicInterval,
    val: &Valuation,
    prec: u32,
) -> Result<DyadicInterval> {
    ep_eval_numeric(&ExpPolyCosExpr::from(expr), t, val, prec)
}
