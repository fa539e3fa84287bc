//! Integral LLL reduction and integer-relation search.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{ComplexBox, DyadicInterval};
use crate::error::{Error, Result};

/// A lattice given by a basis of integer row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// Rejects ragged input and linearly dependent vectors.
    pub fn new(basis: Vec<Vec<BigInt>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidInput("empty basis".to_string()));
        }
        let dim = basis[0].len();
        if basis.iter().any(|b| b.len() != dim) {
            return Err(Error::InvalidInput("basis vectors differ in length".to_string()));
        }
        let lat = IntLattice { basis };
        if lat.gram_determinant().is_zero() {
            return Err(Error::DependentBasis);
        }
        Ok(lat)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        IntLattice::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram_determinant(&self) -> BigInt {
        let n = self.basis.len();
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(dot(&self.basis[i], &self.basis[j])))
                    .collect()
            })
            .collect();
        crate::arith::matrix::determinant(rows).to_integer()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b` for `b > 0`, ties upward.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * 2u32 + b).div_floor(&(b * 2u32))
}

struct Lll {
    b: Vec<Vec<BigInt>>,
    // d[0] = 1, d[i + 1] = Gram determinant of the first i + 1 vectors
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl Lll {
    fn redi(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        if (&self.lam[k][l] * 2u32).abs() <= *dl {
            return;
        }
        let q = round_div(&self.lam[k][l], dl);
        let bl = self.b[l].clone();
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lam[k][l] -= &q * dl;
        for i in 0..l {
            let v = &q * &self.lam[l][i];
            self.lam[k][i] -= v;
        }
    }

    fn swapi(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = self.lam[k - 1][j].clone();
            self.lam[k - 1][j] = t;
        }
        let lam = self.lam[k][k - 1].clone();
        let (dkm2, dkm1, dk) = (&self.d[k - 1], &self.d[k], &self.d[k + 1]);
        let bb = (dkm2 * dk + &lam * &lam) / dkm1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (dk * &self.lam[i][k - 1] - &lam * &t) / dkm1;
            self.lam[i][k - 1] = (&bb * &t + &lam * &self.lam[i][k]) / dk;
        }
        self.d[k] = bb;
    }
}

/// LLL-reduces the basis with Lovász parameter `delta` in `(1/4, 1)`, using
/// exact integer arithmetic throughout.
pub fn lll_reduce(lattice: &IntLattice, delta: &BigRational) -> Result<IntLattice> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if *delta <= quarter || *delta >= BigRational::one() {
        return Err(Error::InvalidInput("delta must lie in (1/4, 1)".to_string()));
    }
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    let n = lattice.basis.len();
    let mut st = Lll {
        b: lattice.basis.clone(),
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::one();
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return Err(Error::DependentBasis);
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * &u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentBasis);
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        loop {
            st.redi(k, k - 1);
            let lam = &st.lam[k][k - 1];
            let lhs = &q * &st.d[k + 1] * &st.d[k - 1];
            let rhs = &p * &st.d[k] * &st.d[k] - &q * lam * lam;
            if lhs < rhs {
                st.swapi(k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k - 1).rev() {
                    st.redi(k, l);
                }
                k += 1;
                break;
            }
        }
    }
    Ok(IntLattice { basis: st.b })
}

/// Checks size reduction and the Lovász condition exactly.
pub fn is_lll_reduced(lattice: &IntLattice, delta: &BigRational) -> bool {
    let b = &lattice.basis;
    let n = b.len();
    let to_q = |v: &Vec<BigInt>| -> Vec<BigRational> {
        v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
    };
    let qdot = |a: &[BigRational], c: &[BigRational]| -> BigRational {
        a.iter().zip(c).map(|(x, y)| x * y).sum()
    };
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for i in 0..n {
        let bi = to_q(&b[i]);
        let mut v = bi.clone();
        let mut mu_last = BigRational::zero();
        for j in 0..i {
            let mu = qdot(&bi, &star[j]) / &norms[j];
            if mu.abs() > half {
                return false;
            }
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu * y;
            }
            if j + 1 == i {
                mu_last = mu;
            }
        }
        let nv = qdot(&v, &v);
        if i > 0 && nv < (delta - &mu_last * &mu_last) * &norms[i - 1] {
            return false;
        }
        star.push(v);
        norms.push(nv);
    }
    true
}

/// An integer vector `m` proposed as a relation, with an enclosure of
/// `|sum m_i v_i|` computed from the input boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCandidate {
    pub coefficients: Vec<BigInt>,
    pub residual_bound: DyadicInterval,
}

fn scaled_round(q: &BigRational, bits: u32) -> BigInt {
    let s = q * BigRational::from_integer(BigInt::one() << bits);
    round_div(s.numer(), s.denom())
}

/// Usable scale exponent for a box radius: about `-log2(radius)`.
fn precision_of(r: &BigRational) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(r.denom().bits() as i64 - r.numer().bits() as i64)
}

/// Searches for a small integer relation among the complex values. The
/// result is heuristic and must be verified exactly by the caller.
pub fn integer_relation(
    values: &[ComplexBox],
    height_bound: &BigInt,
) -> Result<Option<RelationCandidate>> {
    let n = values.len();
    if n == 0 {
        return Ok(None);
    }
    let hb = height_bound.bits() as i64 + 2;
    let wanted = (2 * n as i64 * hb + 64).max(64);
    let avail = values
        .iter()
        .filter_map(|v| precision_of(v.radius()))
        .min()
        .map(|p| p - 2);
    let bits = match avail {
        Some(p) if p < 16 => return Err(Error::InsufficientPrecision),
        Some(p) => p.min(wanted),
        None => wanted,
    };
    let bits = bits.to_u32().ok_or(Error::InsufficientPrecision)?;
    let rows: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = vec![BigInt::zero(); n + 2];
            row[i] = BigInt::one();
            row[n] = scaled_round(v.center_x(), bits);
            row[n + 1] = scaled_round(v.center_y(), bits);
            row
        })
        .collect();
    let lat = IntLattice { basis: rows };
    let reduced = lll_reduce(&lat, &BigRational::new(BigInt::from(3), BigInt::from(4)))?;
    let mut best: Option<RelationCandidate> = None;
    for row in reduced.basis() {
        let m: Vec<BigInt> = row[..n].to_vec();
        if m.iter().all(|c| c.is_zero()) || m.iter().any(|c| c.abs() > *height_bound) {
            continue;
        }
        let mut acc = ComplexBox::from_rational(&BigRational::zero());
        for (c, v) in m.iter().zip(values) {
            acc = acc.add(&v.scale(&BigRational::from_integer(c.clone())));
        }
        if !acc.contains_zero() {
            continue;
        }
        let cand = RelationCandidate {
            residual_bound: acc.modulus(64),
            coefficients: normalize_sign(m),
        };
        let better = match &best {
            None => true,
            Some(b) => max_abs(&cand.coefficients) < max_abs(&b.coefficients),
        };
        if better {
            best = Some(cand);
        }
    }
    Ok(best)
}

fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// First nonzero entry positive.
fn normalize_sign(mut m: Vec<BigInt>) -> Vec<BigInt> {
    if m.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in m.iter_mut() {
            *c = -c.clone();
        }
    }
    m
}
