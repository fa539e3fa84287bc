//! Bivariate polynomials in `x` and `y` and resultant elimination of `x`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::determinant;
use super::poly::RatPoly;
use crate::error::{Error, Result};

/// `sum_i coeff_i(y) * x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    x_coeffs: Vec<RatPoly>,
}

impl BiPoly {
    pub fn new(mut x_coeffs: Vec<RatPoly>) -> Self {
        while x_coeffs.last().is_some_and(|c| c.is_zero()) {
            x_coeffs.pop();
        }
        BiPoly { x_coeffs }
    }

    /// A polynomial in `x` only.
    pub fn from_x(p: &RatPoly) -> Self {
        BiPoly::new(p.coeffs().iter().map(|c| RatPoly::constant(c.clone())).collect())
    }

    /// A polynomial in `y` only.
    pub fn from_y(p: &RatPoly) -> Self {
        BiPoly::new(vec![p.clone()])
    }

    pub fn x() -> Self {
        BiPoly::new(vec![RatPoly::zero(), RatPoly::one()])
    }

    pub fn y() -> Self {
        BiPoly::from_y(&RatPoly::x())
    }

    pub fn x_coeffs(&self) -> &[RatPoly] {
        &self.x_coeffs
    }

    pub fn degree_x(&self) -> usize {
        self.x_coeffs.len().saturating_sub(1)
    }

    pub fn degree_y(&self) -> usize {
        self.x_coeffs.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.x_coeffs.is_empty()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.x_coeffs.len().max(other.x_coeffs.len());
        let zero = RatPoly::zero();
        BiPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.x_coeffs.get(i).unwrap_or(&zero);
                    let b = other.x_coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> BiPoly {
        BiPoly::new(self.x_coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::default();
        }
        let mut out = vec![RatPoly::zero(); self.x_coeffs.len() + other.x_coeffs.len() - 1];
        for (i, a) in self.x_coeffs.iter().enumerate() {
            for (j, b) in other.x_coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }

    pub fn pow(&self, k: usize) -> BiPoly {
        let mut acc = BiPoly::from_y(&RatPoly::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `p(self)` for a univariate `p`.
    pub fn substitute_into(p: &RatPoly, inner: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::default();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(inner).add(&BiPoly::from_y(&RatPoly::constant(c.clone())));
        }
        acc
    }

    /// Coefficients in `x` after setting `y = y0`, padded to the formal degree.
    pub fn eval_y(&self, y0: &BigRational) -> Vec<BigRational> {
        self.x_coeffs.iter().map(|c| c.eval(y0)).collect()
    }
}

fn sylvester_determinant(p: &[BigRational], q: &[BigRational]) -> BigRational {
    // formal degrees m = len(p)-1, n = len(q)-1
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigRational::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in p.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in q.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Newton interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RatPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        let lin = RatPoly::new(vec![-xs[i].clone(), BigRational::one()]);
        acc = &(&acc * &lin) + &RatPoly::constant(dd[i].clone());
    }
    acc
}

/// `Res_x(p(x), q(x, y))`: a polynomial in `y` vanishing at every `y` for
/// which `p(x) = 0` and `q(x, y) = 0` share a root `x`.
pub fn poly_resultant_eliminate(p: &RatPoly, q: &BiPoly) -> Result<RatPoly> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("zero polynomial".to_string()));
    }
    let n = q.degree_x();
    if n == 0 {
        return Err(Error::DegenerateInput(
            "second polynomial is constant in x".to_string(),
        ));
    }
    let m = p.degree();
    if m == 0 {
        let c = p.coeff(0);
        let mut v = BigRational::one();
        for _ in 0..n {
            v *= &c;
        }
        return Ok(RatPoly::constant(v));
    }
    // Res is homogeneous of degree m in the coefficients of q
    let bound = m * q.degree_y();
    let xs: Vec<BigRational> = (0..=bound)
        .map(|i| BigRational::from_integer(BigInt::from(i)))
        .collect();
    let pc = p.coeffs().to_vec();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|y0| sylvester_determinant(&pc, &q.eval_y(y0)))
        .collect();
    Ok(interpolate(&xs, &ys))
}
