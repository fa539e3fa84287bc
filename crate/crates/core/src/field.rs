//! The number field `Q(z)` in its power basis `1, z, ..., z^(d-1)`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebraic::roots::root_target;
use crate::algebraic::{alg_arith_with, select_root, AlgebraicNumber, ArithOp};
use crate::arith::{poly_eval_box, poly_xgcd, ComplexBox, Dyadic, RatPoly, RationalMatrix};
use crate::error::{Error, Precision, Result};
use crate::lattice::integer_relation;

/// `Q(z)` for an algebraic `z`, with `z` fixed by its isolating disk.
#[derive(Clone, Debug)]
pub struct NumberField {
    generator: AlgebraicNumber,
    modulus: RatPoly,
}

/// Coordinates in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational value when only the constant coordinate is nonzero.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn to_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
}

impl NumberField {
    pub fn new(generator: AlgebraicNumber) -> Self {
        let modulus = generator.minpoly().monic();
        NumberField { generator, modulus }
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.generator
    }

    pub fn generator_minpoly(&self) -> &RatPoly {
        self.generator.minpoly()
    }

    pub fn generator_box(&self) -> &ComplexBox {
        self.generator.isolating_box()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn element(&self, coords: Vec<BigRational>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::InvalidInput("coordinate vector has the wrong length".to_string()));
        }
        Ok(FieldElement { coords })
    }

    /// Reduces a polynomial in `z` to coordinates.
    pub fn from_poly(&self, p: &RatPoly) -> FieldElement {
        let r = p.rem(&self.modulus);
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), BigRational::zero());
        FieldElement { coords }
    }

    pub fn from_rational(&self, q: &BigRational) -> FieldElement {
        self.from_poly(&RatPoly::constant(q.clone()))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coords: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(&BigRational::one())
    }

    /// The generator `z` itself.
    pub fn gen(&self) -> FieldElement {
        self.from_poly(&RatPoly::x())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, a: &FieldElement, q: &BigRational) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| x * q).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.from_poly(&(&a.to_poly() * &b.to_poly()))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // s a + t m = 1 since m is irreducible
        let (g, s, _) = poly_xgcd(&a.to_poly(), &self.modulus);
        debug_assert!(g.is_constant());
        Ok(self.from_poly(&s.scale(&g.coeff(0).recip())))
    }

    pub fn pow(&self, a: &FieldElement, t: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = t;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluates a polynomial with rational coefficients at a field element.
    pub fn eval_poly(&self, p: &RatPoly, a: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, a), &self.from_rational(c));
        }
        acc
    }
}

/// `a op b`; `b` is ignored for `Inv`.
pub fn fe_arith(
    op: FieldOp,
    field: &NumberField,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<FieldElement> {
    Ok(match op {
        FieldOp::Add => field.add(a, b),
        FieldOp::Sub => field.sub(a, b),
        FieldOp::Mul => field.mul(a, b),
        FieldOp::Inv => field.inv(a)?,
    })
}

pub fn fe_pow(field: &NumberField, a: &FieldElement, t: u64) -> FieldElement {
    field.pow(a, t)
}

/// Matrix of `x -> a x`; column `j` holds the coordinates of `a z^j`.
pub fn multiplication_matrix(field: &NumberField, a: &FieldElement) -> RationalMatrix {
    let d = field.degree();
    let mut cols = Vec::with_capacity(d);
    let mut col = a.clone();
    let z = field.gen();
    for _ in 0..d {
        cols.push(col.coords.clone());
        col = field.mul(&col, &z);
    }
    RationalMatrix::from_columns(cols).expect("square by construction")
}

/// Disk of radius at most `2^-bits` around the value of `a` at the
/// distinguished root.
pub fn embed(field: &NumberField, a: &FieldElement, bits: u32) -> ComplexBox {
    if let Some(q) = a.as_rational() {
        return ComplexBox::from_rational(&q);
    }
    let p = a.to_poly();
    let target = Dyadic::pow2(-(bits as i64)).to_rational();
    let mag = field
        .generator_box()
        .modulus_upper(16)
        .ceil()
        .to_integer()
        .bits() as u32;
    let height = p
        .coeffs()
        .iter()
        .map(|c| c.abs_bits())
        .max()
        .unwrap_or(0);
    let mut extra = 8 + mag * p.degree() as u32 + height;
    loop {
        let g = field.generator().enclosure(bits + extra);
        let e = poly_eval_box(&p, &g, bits + extra);
        if e.radius() <= &target {
            return e;
        }
        extra *= 2;
    }
}

trait AbsBits {
    fn abs_bits(&self) -> u32;
}

impl AbsBits for BigRational {
    fn abs_bits(&self) -> u32 {
        let n = self.numer().bits() as i64 - self.denom().bits() as i64 + 1;
        n.max(0) as u32
    }
}

pub fn fe_to_algebraic(field: &NumberField, a: &FieldElement) -> Result<AlgebraicNumber> {
    fe_to_algebraic_with(field, a, &Precision::default())
}

/// The exact algebraic number represented by `a`: a root of the
/// characteristic polynomial of its multiplication matrix, picked by `embed`.
pub fn fe_to_algebraic_with(
    field: &NumberField,
    a: &FieldElement,
    prec: &Precision,
) -> Result<AlgebraicNumber> {
    if let Some(q) = a.as_rational() {
        return Ok(AlgebraicNumber::from_rational(&q));
    }
    let cp = multiplication_matrix(field, a).charpoly();
    select_root(&cp, |bits| Some(embed(field, a, bits)), prec)
}

/// Exact check that coordinates `a` represent `w`.
fn represents(field: &NumberField, a: &FieldElement, w: &AlgebraicNumber) -> bool {
    if !field.eval_poly(w.minpoly(), a).is_zero() {
        return false;
    }
    // a is now some conjugate of w; the disks single it out
    let t = root_target(w.minpoly());
    let mut bits = 16u32;
    while Dyadic::pow2(-(bits as i64)).to_rational() > t {
        bits *= 2;
    }
    embed(field, a, bits).intersects(w.isolating_box())
}

fn try_relation(field: &NumberField, w: &AlgebraicNumber, bits: u32) -> Result<Option<FieldElement>> {
    let d = field.degree();
    let mut values: Vec<ComplexBox> = (0..d)
        .map(|i| embed(field, &field.from_poly(&RatPoly::monomial(BigRational::one(), i)), bits))
        .collect();
    values.push(w.enclosure(bits));
    let hb = BigInt::one() << (bits / 2) as usize;
    let cand = match integer_relation(&values, &hb) {
        Ok(c) => c,
        Err(Error::InsufficientPrecision) => return Ok(None),
        Err(e) => return Err(e),
    };
    let Some(cand) = cand else {
        return Ok(None);
    };
    let md = &cand.coefficients[d];
    if md.is_zero() {
        return Ok(None);
    }
    let md = BigRational::from_integer(md.clone());
    let coords: Vec<BigRational> = cand.coefficients[..d]
        .iter()
        .map(|m| -BigRational::from_integer(m.clone()) / &md)
        .collect();
    let a = FieldElement { coords };
    Ok(if represents(field, &a, w) { Some(a) } else { None })
}

/// Degree of `Q(z, w)` compared with `Q(z)`: `true` when `w` lies in `Q(z)`.
///
/// `[Q(z + l w) : Q]` equals `[Q(z, w) : Q]` for all but finitely many
/// rationals `l`, at most `(dz dw)^2` of them, so the maximum over
/// `(dz dw)^2 + 1` values is exact.
pub fn compositum_is_field(field: &NumberField, w: &AlgebraicNumber, prec: &Precision) -> Result<bool> {
    let dz = field.degree();
    let tries = (dz * w.degree()).pow(2) + 1;
    for l in 1..=tries {
        let lw = alg_arith_with(
            ArithOp::Mul,
            &AlgebraicNumber::from_integer(l as i64),
            w,
            prec,
        )?;
        let s = alg_arith_with(ArithOp::Add, field.generator(), &lw, prec)?;
        if s.degree() > dz {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn membership(field: &NumberField, w: &AlgebraicNumber) -> Result<Option<FieldElement>> {
    membership_with(field, w, &Precision::default())
}

/// Coordinates of `w` when it lies in the field, `None` otherwise. Both
/// outcomes are certified exactly.
pub fn membership_with(
    field: &NumberField,
    w: &AlgebraicNumber,
    prec: &Precision,
) -> Result<Option<FieldElement>> {
    if let Some(q) = w.to_rational() {
        return Ok(Some(field.from_rational(&q)));
    }
    let dz = field.degree();
    if dz % w.degree() != 0 {
        return Ok(None);
    }
    let mut bits = prec.start_bits.max(64) * 2;
    for _ in 0..3 {
        prec.check(bits)?;
        if let Some(a) = try_relation(field, w, bits)? {
            return Ok(Some(a));
        }
        bits *= 2;
    }
    if !compositum_is_field(field, w, prec)? {
        return Ok(None);
    }
    loop {
        bits = prec.escalate(bits)?;
        if let Some(a) = try_relation(field, w, bits)? {
            return Ok(Some(a));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::rat;

    pub(crate) fn unit_field() -> NumberField {
        NumberField::new(
            AlgebraicNumber::from_poly_and_box(
                &RatPoly::from_ints(&[5, -6, 5]),
                &ComplexBox::new(rat(3, 5), rat(4, 5), rat(1, 10)),
            )
            .unwrap(),
        )
    }

    fn sixth_root_field() -> NumberField {
        NumberField::new(
            AlgebraicNumber::from_poly_and_box(
                &RatPoly::from_ints(&[1, -1, 1]),
                &ComplexBox::new(rat(1, 2), rat(6, 7), rat(1, 10)),
            )
            .unwrap(),
        )
    }

    fn fe(f: &NumberField, c: &[(i64, i64)]) -> FieldElement {
        f.element(c.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn square_of_generator() {
        let k = unit_field();
        let z = k.gen();
        assert_eq!(k.mul(&z, &z), fe(&k, &[(-1, 1), (6, 5)]));
        assert_eq!(fe_pow(&k, &z, 2), fe(&k, &[(-1, 1), (6, 5)]));
        assert_eq!(fe_pow(&k, &z, 0), k.one());
    }

    #[test]
    fn inverse_roundtrip() {
        let k = unit_field();
        let a = fe(&k, &[(2, 3), (-7, 4)]);
        let inv = fe_arith(FieldOp::Inv, &k, &a, &k.zero()).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(k.inv(&k.zero()).unwrap_err(), Error::DivisionByZero);
        assert_eq!(
            fe_arith(FieldOp::Add, &k, &fe(&k, &[(1, 1), (0, 1)]), &fe(&k, &[(0, 1), (1, 1)])).unwrap(),
            fe(&k, &[(1, 1), (1, 1)])
        );
    }

    #[test]
    fn multiplication_matrix_columns() {
        let k = unit_field();
        let m = multiplication_matrix(&k, &k.gen());
        assert_eq!(m.column(0), vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(m.column(1), vec![rat(-1, 1), rat(6, 5)]);
        assert_eq!(multiplication_matrix(&k, &k.one()), RationalMatrix::identity(2));
        assert_eq!(
            m.charpoly(),
            k.generator_minpoly().monic()
        );
    }

    #[test]
    fn embedding_and_conversion() {
        let k = unit_field();
        let e = embed(&k, &k.gen(), 40);
        assert!(e.contains_point(&rat(3, 5), &rat(4, 5)));
        let w = fe_to_algebraic(&k, &fe(&k, &[(-1, 1), (6, 5)])).unwrap();
        assert_eq!(w.minpoly(), &RatPoly::from_ints(&[25, 14, 25]));
        assert!(w.isolating_box().contains_point(&rat(-7, 25), &rat(24, 25)));
        let q = fe_to_algebraic(&k, &fe(&k, &[(7, 3), (0, 1)])).unwrap();
        assert_eq!(q.to_rational(), Some(rat(7, 3)));
    }

    #[test]
    fn membership_of_square() {
        let k = unit_field();
        let w = fe_to_algebraic(&k, &fe(&k, &[(-1, 1), (6, 5)])).unwrap();
        assert_eq!(membership(&k, &w).unwrap(), Some(fe(&k, &[(-1, 1), (6, 5)])));
        let r = AlgebraicNumber::from_rational(&rat(7, 3));
        assert_eq!(membership(&k, &r).unwrap(), Some(fe(&k, &[(7, 3), (0, 1)])));
    }

    #[test]
    fn imaginary_unit_not_in_eisenstein_field() {
        let k = sixth_root_field();
        let i = AlgebraicNumber::from_poly_and_box(
            &RatPoly::from_ints(&[1, 0, 1]),
            &ComplexBox::new(rat(0, 1), rat(1, 1), rat(1, 2)),
        )
        .unwrap();
        assert_eq!(membership(&k, &i).unwrap(), None);
        assert!(!compositum_is_field(&k, &i, &Precision::default()).unwrap());
    }
}
