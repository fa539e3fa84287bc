//! Algebraic numbers as (minimal polynomial, isolating disk) pairs.

mod arith;
mod height;
pub mod roots;
mod unity;

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::complex_box::eval_complex;
use crate::arith::factor::irreducible_factors;
use crate::arith::{ComplexBox, Dyadic, DyadicInterval, RatPoly};
use crate::error::{Error, Precision, Result};
use roots::{isolate_squarefree, refine_root, root_target};

pub use arith::{
    alg_arith, alg_arith_with, alg_inv, alg_pow, alg_sqrt_nonneg, alg_sqrt_nonneg_with, ArithOp,
};
pub use height::{weil_height, HeightInterval};
pub use roots::isolate_roots;
pub use unity::{euler_phi, root_of_unity_order};

/// An algebraic number: its minimal polynomial in primitive integer form and
/// a disk that contains exactly one of its roots.
///
/// The disk radius never exceeds an eighth of the root separation bound, so
/// equality and realness are decided without further refinement.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: RatPoly,
    bx: ComplexBox,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "root of {} in {}", self.minpoly, self.bx),
        }
    }
}

pub fn alg_from_rational(q: &BigRational) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(q)
}

pub fn alg_conj(a: &AlgebraicNumber) -> AlgebraicNumber {
    a.conj()
}

pub fn alg_norm(a: &AlgebraicNumber) -> BigRational {
    a.norm()
}

pub fn is_algebraic_integer(a: &AlgebraicNumber) -> bool {
    a.is_algebraic_integer()
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> Self {
        AlgebraicNumber {
            minpoly: RatPoly::new(alloc::vec![-q.clone(), BigRational::one()]).primitive(),
            bx: ComplexBox::from_rational(q),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        AlgebraicNumber::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        AlgebraicNumber::from_integer(0)
    }

    pub fn one() -> Self {
        AlgebraicNumber::from_integer(1)
    }

    /// Trusted constructor: `minpoly` irreducible and `bx` an isolating disk
    /// within the radius target.
    pub(crate) fn from_parts(minpoly: RatPoly, bx: ComplexBox) -> Self {
        let minpoly = minpoly.primitive();
        if minpoly.degree() == 1 {
            return AlgebraicNumber::from_rational(&(-minpoly.coeff(0) / minpoly.coeff(1)));
        }
        let bx = if !bx.center_y().is_zero() && bx.meets_real_axis() {
            ComplexBox::new(bx.center_x().clone(), BigRational::zero(), bx.radius().clone())
        } else {
            bx
        };
        AlgebraicNumber { minpoly, bx }
    }

    /// Builds the number from any nonzero annihilating polynomial and a disk
    /// that contains exactly one of its roots. The polynomial is reduced to
    /// the minimal polynomial of that root.
    pub fn from_poly_and_box(p: &RatPoly, bx: &ComplexBox) -> Result<Self> {
        Self::from_poly_and_box_with(p, bx, &Precision::default())
    }

    pub fn from_poly_and_box_with(p: &RatPoly, bx: &ComplexBox, prec: &Precision) -> Result<Self> {
        if p.degree() == 0 {
            return Err(Error::InvalidInput(
                "annihilating polynomial must have positive degree".to_string(),
            ));
        }
        let factors = irreducible_factors(p);
        if bx.is_point() {
            let z = bx.center();
            for f in &factors {
                if !eval_complex(f, &z).is_zero() {
                    continue;
                }
                if f.degree() == 1 {
                    return Ok(AlgebraicNumber::from_rational(&(-f.coeff(0) / f.coeff(1))));
                }
                let b = isolate_squarefree(f, &root_target(f))
                    .into_iter()
                    .find(|b| b.contains_point(&z.re, &z.im))
                    .ok_or_else(|| Error::InvalidInput("root escaped its isolating disk".to_string()))?;
                return Ok(AlgebraicNumber::from_parts(f.clone(), b));
            }
            return Err(Error::InvalidInput(
                "point box is not a root of the polynomial".to_string(),
            ));
        }
        let mut pending: Vec<(RatPoly, ComplexBox)> = Vec::new();
        for f in &factors {
            for b in isolate_squarefree(f, &root_target(f)) {
                pending.push((f.clone(), b));
            }
        }
        let mut inside: Vec<(RatPoly, ComplexBox)> = Vec::new();
        let mut bits = 8u32;
        while !pending.is_empty() {
            let target = Dyadic::pow2(-(bits as i64)).to_rational();
            let mut next = Vec::new();
            for (f, b) in pending {
                if b.inside(bx) {
                    inside.push((f, b));
                } else if b.intersects(bx) {
                    next.push((f.clone(), refine_root(&f, &b, &target)));
                }
            }
            if inside.len() > 1 {
                return Err(Error::InvalidInput(
                    "box contains more than one root".to_string(),
                ));
            }
            pending = next;
            if !pending.is_empty() {
                bits = bits.saturating_mul(2);
                if bits > prec.cap_bits {
                    return Err(Error::InvalidInput(
                        "a root lies on the boundary of the box".to_string(),
                    ));
                }
            }
        }
        match inside.pop() {
            Some((f, b)) => Ok(AlgebraicNumber::from_parts(f, b)),
            None => Err(Error::InvalidInput("box contains no root".to_string())),
        }
    }

    pub fn minpoly(&self) -> &RatPoly {
        &self.minpoly
    }

    pub fn isolating_box(&self) -> &ComplexBox {
        &self.bx
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    /// Largest absolute coefficient of the minimal polynomial.
    pub fn height(&self) -> BigInt {
        self.minpoly.height()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.minpoly.leading().to_integer()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(-self.minpoly.coeff(0) / self.minpoly.coeff(1))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.minpoly.coeff(0).is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    pub fn is_real(&self) -> bool {
        self.bx.center_y().is_zero()
    }

    /// Sign of a real number.
    pub fn sign_real(&self) -> Result<i32> {
        if !self.is_real() {
            return Err(Error::Domain("sign of a non-real number".to_string()));
        }
        if let Some(q) = self.to_rational() {
            return Ok(if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            });
        }
        let mut bits = 16i64;
        let mut bx = self.bx.clone();
        loop {
            if bx.center_x().abs() > *bx.radius() {
                return Ok(if bx.center_x().is_positive() { 1 } else { -1 });
            }
            bx = refine_root(&self.minpoly, &bx, &Dyadic::pow2(-bits).to_rational());
            bits *= 2;
        }
    }

    /// Same minimal polynomial and the same root.
    pub fn equals(&self, other: &AlgebraicNumber) -> bool {
        self.minpoly == other.minpoly && self.bx.intersects(&other.bx)
    }

    pub fn conj(&self) -> Self {
        if self.is_real() {
            return self.clone();
        }
        AlgebraicNumber {
            minpoly: self.minpoly.clone(),
            bx: self.bx.conj(),
        }
    }

    pub fn neg(&self) -> Self {
        let q = self.minpoly.scale_var(&-BigRational::one()).primitive();
        AlgebraicNumber {
            minpoly: q,
            bx: self.bx.neg(),
        }
    }

    /// Product of all conjugates.
    pub fn norm(&self) -> BigRational {
        let d = self.degree();
        let v = self.minpoly.coeff(0) / self.minpoly.leading();
        if d % 2 == 0 {
            v
        } else {
            -v
        }
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly.leading().abs().is_one()
    }

    /// A disk around the number of radius at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> ComplexBox {
        refine_root(
            &self.minpoly,
            &self.bx,
            &Dyadic::pow2(-(bits as i64)).to_rational(),
        )
    }

    /// The same number with an isolating disk of radius at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> Self {
        AlgebraicNumber::from_parts(self.minpoly.clone(), self.enclosure(bits))
    }

    /// Enclosure of the real part.
    pub fn real_interval(&self, bits: u32) -> DyadicInterval {
        self.enclosure(bits).re_interval(bits + 2)
    }

    /// Enclosure of the modulus.
    pub fn modulus_interval(&self, bits: u32) -> DyadicInterval {
        self.enclosure(bits).modulus(bits + 2)
    }

    /// All roots of the minimal polynomial, this one included.
    pub fn conjugates(&self) -> Vec<AlgebraicNumber> {
        isolate_squarefree(&self.minpoly, &root_target(&self.minpoly))
            .into_iter()
            .map(|b| AlgebraicNumber::from_parts(self.minpoly.clone(), b))
            .collect()
    }

    /// `|self| <= 1` for a real number, decided exactly.
    pub fn abs_at_most_one(&self) -> Result<bool> {
        let one = AlgebraicNumber::one();
        let hi = alg_arith(ArithOp::Sub, self, &one)?.sign_real()?;
        let lo = alg_arith(ArithOp::Add, self, &one)?.sign_real()?;
        Ok(hi <= 0 && lo >= 0)
    }
}

/// Picks the unique root of `annihilator` lying in every enclosure produced by
/// `enclose(bits)` as `bits` grows. `enclose` may return `None` when it cannot
/// produce an enclosure at the requested precision yet.
pub(crate) fn select_root<F>(
    annihilator: &RatPoly,
    mut enclose: F,
    prec: &Precision,
) -> Result<AlgebraicNumber>
where
    F: FnMut(u32) -> Option<ComplexBox>,
{
    let mut cands: Vec<(RatPoly, ComplexBox)> = Vec::new();
    for f in irreducible_factors(annihilator) {
        for b in isolate_squarefree(&f, &root_target(&f)) {
            cands.push((f.clone(), b));
        }
    }
    let mut bits = 16u32;
    loop {
        if let Some(e) = enclose(bits) {
            cands.retain(|(_, b)| b.intersects(&e));
        }
        match cands.len() {
            0 => {
                return Err(Error::Domain(format!(
                    "no root of {annihilator} matches the enclosure"
                )))
            }
            1 => {
                let (f, b) = cands.pop().unwrap();
                return Ok(AlgebraicNumber::from_parts(f, b));
            }
            _ => {}
        }
        let t = Dyadic::pow2(-(bits as i64)).to_rational();
        for c in cands.iter_mut() {
            c.1 = refine_root(&c.0, &c.1, &t);
        }
        bits = prec.escalate(bits)?;
    }
}
