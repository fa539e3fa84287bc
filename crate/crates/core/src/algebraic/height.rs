//! Certified Weil heights.

use alloc::string::ToString;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::roots::{isolate_squarefree, refine_root, root_target};
use super::AlgebraicNumber;
use crate::arith::transcendental::ln;
use crate::arith::{Dyadic, DyadicInterval};
use crate::error::{Error, Result};

/// An enclosure of a logarithmic Weil height (natural log units).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightInterval {
    value: DyadicInterval,
}

impl HeightInterval {
    pub fn value(&self) -> &DyadicInterval {
        &self.value
    }

    pub fn lower(&self) -> &Dyadic {
        self.value.lower()
    }

    pub fn upper(&self) -> &Dyadic {
        self.value.upper()
    }

    pub fn width(&self) -> Dyadic {
        self.value.width()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.value.contains_rational(q)
    }

    /// `true` when the height is certainly positive.
    pub fn is_positive(&self) -> bool {
        self.value.lower().signum() > 0
    }
}

/// `h(a) = (ln|lc| + sum ln max(1, |root|)) / d`, enclosed in an interval of
/// width at most `2^-(precision_bits / 4)`.
pub fn weil_height(a: &AlgebraicNumber, precision_bits: u32) -> Result<HeightInterval> {
    if a.is_zero() {
        return Err(Error::DegenerateInput("height of zero".to_string()));
    }
    let p = a.minpoly();
    let d = p.degree() as u32;
    let want = (precision_bits / 4).max(1) as i64;
    let lc = DyadicInterval::point(Dyadic::from_bigint(p.leading().to_integer().abs()));
    let mut roots = isolate_squarefree(p, &root_target(p));
    let mut k = want + 8 + (32 - d.leading_zeros()) as i64;
    loop {
        let w = (k + 16) as u32;
        let r = Dyadic::pow2(-k).to_rational();
        for b in roots.iter_mut() {
            *b = refine_root(p, b, &r);
        }
        let mut sum = ln(&lc, w);
        for b in &roots {
            let m = b.modulus(w).max_with(&Dyadic::one());
            sum = sum.add(&ln(&m, w), w);
        }
        let h = sum.mul_rational(&BigRational::new(BigInt::from(1), BigInt::from(d)), w);
        if h.width() <= Dyadic::pow2(-want) {
            let lo = Dyadic::max(h.lower(), &Dyadic::zero());
            let hi = Dyadic::max(h.upper(), &Dyadic::zero());
            return Ok(HeightInterval {
                value: DyadicInterval::new(lo, hi),
            });
        }
        k += 16;
    }
}
