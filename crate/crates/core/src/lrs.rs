//! Linear recurring sequences with rational coefficients.
//!
//! Terms are indexed from 0: `term_at(0)` is the first initial value. The
//! companion form follows the 1-based convention `a_1, ..., a_k`; see
//! [`INDEX_OFFSET`] and [`LinearRecurrence::term`].

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraic::{alg_arith, AlgebraicNumber, ArithOp};
use crate::arith::{ComplexBox, RatPoly, RationalMatrix};
use crate::engine::build_z;
use crate::error::{Error, Result};

/// `term(n) == term_at(n - INDEX_OFFSET)`.
pub const INDEX_OFFSET: u64 = 1;

/// Values a recurrence can carry.
pub trait LrsValue: Clone {
    /// `sum coeffs[i] * vals[i]`.
    fn lin_comb(coeffs: &[BigRational], vals: &[Self]) -> Result<Self>;
    fn same(&self, other: &Self) -> bool;
    /// Disk around the value of radius at most `2^-bits`.
    fn approx(&self, bits: u32) -> ComplexBox;
}

impl LrsValue for BigRational {
    fn lin_comb(coeffs: &[BigRational], vals: &[Self]) -> Result<Self> {
        Ok(coeffs
            .iter()
            .zip(vals)
            .fold(BigRational::zero(), |acc, (c, v)| acc + c * v))
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn approx(&self, _bits: u32) -> ComplexBox {
        ComplexBox::from_rational(self)
    }
}

impl LrsValue for AlgebraicNumber {
    fn lin_comb(coeffs: &[BigRational], vals: &[Self]) -> Result<Self> {
        let mut acc = AlgebraicNumber::zero();
        for (c, v) in coeffs.iter().zip(vals) {
            if c.is_zero() {
                continue;
            }
            let term = alg_arith(ArithOp::Mul, &AlgebraicNumber::from_rational(c), v)?;
            acc = alg_arith(ArithOp::Add, &acc, &term)?;
        }
        Ok(acc)
    }

    fn same(&self, other: &Self) -> bool {
        self.equals(other)
    }

    fn approx(&self, bits: u32) -> ComplexBox {
        self.enclosure(bits)
    }
}

/// `a_t = c_1 a_(t-1) + ... + c_k a_(t-k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRecurrence<V> {
    coeffs: Vec<BigRational>,
    initial: Vec<V>,
}

impl<V: LrsValue> LinearRecurrence<V> {
    /// `coeffs = (c_1, ..., c_k)`, `initial = (a_0, ..., a_(k-1))`.
    pub fn new(coeffs: Vec<BigRational>, initial: Vec<V>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("recurrence of order 0".to_string()));
        }
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(Error::InvalidInput("last coefficient is zero".to_string()));
        }
        if coeffs.len() != initial.len() {
            return Err(Error::InvalidInput(
                "need one initial value per coefficient".to_string(),
            ));
        }
        Ok(LinearRecurrence { coeffs, initial })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[V] {
        &self.initial
    }

    /// The first `n` terms.
    pub fn terms(&self, n: usize) -> Result<Vec<V>> {
        let k = self.order();
        let mut out: Vec<V> = self.initial.iter().take(n).cloned().collect();
        while out.len() < n {
            let len = out.len();
            // window[i] = a_(t-1-i) pairs with c_(i+1)
            let window: Vec<V> = (1..=k).map(|i| out[len - i].clone()).collect();
            out.push(V::lin_comb(&self.coeffs, &window)?);
        }
        Ok(out)
    }

    /// The term with 0-based index `t`.
    pub fn term_at(&self, t: u64) -> Result<V> {
        let n = usize::try_from(t).map_err(|_| Error::InvalidInput("index too large".to_string()))?;
        Ok(self.terms(n + 1)?.pop().expect("nonempty"))
    }

    /// The term with 1-based index `n`.
    pub fn term(&self, n: u64) -> Result<V> {
        if n < INDEX_OFFSET {
            return Err(Error::InvalidInput("1-based index must be positive".to_string()));
        }
        self.term_at(n - INDEX_OFFSET)
    }

    /// Every `t <= t_max` with `term_at(t) = c`. Candidates are screened with
    /// enclosures and confirmed exactly.
    pub fn scan_for_value(&self, c: &V, t_max: u64) -> Result<Vec<u64>> {
        let n = usize::try_from(t_max).map_err(|_| Error::InvalidInput("index too large".to_string()))?;
        let cb = c.approx(48);
        let mut hits = Vec::new();
        for (t, v) in self.terms(n + 1)?.iter().enumerate() {
            if v.approx(48).intersects(&cb) && v.same(c) {
                hits.push(t as u64);
            }
        }
        Ok(hits)
    }
}

pub fn term_at<V: LrsValue>(rec: &LinearRecurrence<V>, t: u64) -> Result<V> {
    rec.term_at(t)
}

pub fn scan_for_value<V: LrsValue>(rec: &LinearRecurrence<V>, c: &V, t_max: u64) -> Result<Vec<u64>> {
    rec.scan_for_value(c, t_max)
}

/// `u^T M^t v`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLRS {
    pub m: RationalMatrix,
    pub u: Vec<BigRational>,
    pub v: Vec<BigRational>,
}

impl MatrixLRS {
    pub fn eval(&self, t: u64) -> BigRational {
        let w = self.m.pow(t).mul_vec(&self.v);
        self.u.iter().zip(&w).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }
}

/// Companion matrix view: `u^T M^t v = a_(k+t)` in 1-based indexing, that is
/// `term_at(k - 1 + t)`.
pub fn companion_form(rec: &LinearRecurrence<BigRational>) -> MatrixLRS {
    let k = rec.order();
    let mut m = RationalMatrix::zeros(k);
    for (j, c) in rec.coeffs.iter().enumerate() {
        m.set(0, j, c.clone());
    }
    for i in 1..k {
        m.set(i, i - 1, BigRational::one());
    }
    let mut u = vec![BigRational::zero(); k];
    u[0] = BigRational::one();
    let v: Vec<BigRational> = rec.initial.iter().rev().cloned().collect();
    MatrixLRS { m, u, v }
}

/// Recurrence from a polynomial `p_d x^d + ... + p_0`:
/// `a_t = -(p_(d-1) a_(t-1) + ... + p_0 a_(t-d)) / p_d`.
fn coeffs_from_poly(p: &RatPoly) -> Vec<BigRational> {
    let d = p.degree();
    let lc = p.leading();
    (1..=d).map(|i| -p.coeff(d - i) / &lc).collect()
}

fn chebyshev_seeds<V: Clone>(
    alpha: &V,
    n: usize,
    one: V,
    step: impl Fn(&V, &V, &V) -> Result<V>,
) -> Result<Vec<V>> {
    let mut out = vec![one];
    if n > 1 {
        out.push(alpha.clone());
    }
    while out.len() < n {
        let l = out.len();
        out.push(step(alpha, &out[l - 1], &out[l - 2])?);
    }
    Ok(out)
}

/// `a_t = cos(t theta)` for `cos theta = alpha`, of order `deg minpoly(z)`
/// where `z = e^(i theta)`.
pub fn cos_recurrence(alpha: &BigRational) -> Result<LinearRecurrence<BigRational>> {
    let z = build_z(&AlgebraicNumber::from_rational(alpha))?;
    let coeffs = coeffs_from_poly(z.minpoly());
    let two = BigRational::from_integer(BigInt::from(2));
    let seeds = chebyshev_seeds(alpha, coeffs.len(), BigRational::one(), |a, p, pp| {
        Ok(&two * a * p - pp)
    })?;
    LinearRecurrence::new(coeffs, seeds)
}

/// [`cos_recurrence`] for an algebraic `cos theta`.
pub fn cos_recurrence_algebraic(alpha: &AlgebraicNumber) -> Result<LinearRecurrence<AlgebraicNumber>> {
    let z = build_z(alpha)?;
    let coeffs = coeffs_from_poly(z.minpoly());
    let two = AlgebraicNumber::from_integer(2);
    let seeds = chebyshev_seeds(alpha, coeffs.len(), AlgebraicNumber::one(), |a, p, pp| {
        let ta = alg_arith(ArithOp::Mul, &two, a)?;
        let x = alg_arith(ArithOp::Mul, &ta, p)?;
        alg_arith(ArithOp::Sub, &x, pp)
    })?;
    LinearRecurrence::new(coeffs, seeds)
}
