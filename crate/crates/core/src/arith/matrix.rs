//! Dense square matrices over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RatPoly;

/// A square matrix with rational entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds from rows; `None` unless the rows form a square matrix.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from columns.
    pub fn from_columns(cols: Vec<Vec<BigRational>>) -> Option<Self> {
        let m = RationalMatrix::from_rows(cols)?;
        Some(m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = RationalMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `self^t` by repeated squaring.
    pub fn pow(&self, mut t: u64) -> RationalMatrix {
        let mut acc = RationalMatrix::identity(self.n);
        let mut base = self.clone();
        while t > 0 {
            if t & 1 == 1 {
                acc = acc.mul(&base);
            }
            t >>= 1;
            if t > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn determinant(&self) -> BigRational {
        determinant(self.rows())
    }

    /// Characteristic polynomial `det(x I - M)` (monic), by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> RatPoly {
        let n = self.n;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = RationalMatrix::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
            let mut mk = self.mul(&m);
            for i in 0..n {
                let v = mk.get(i, i) + &coeffs[n - k + 1];
                mk.set(i, i, v);
            }
            let am = self.mul(&mk);
            coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
            m = mk;
        }
        RatPoly::new(coeffs)
    }
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(mut rows: Vec<Vec<BigRational>>) -> BigRational {
    let n = rows.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        let inv = p.recip();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] * &inv;
            for c in col..n {
                let v = &rows[col][c] * &f;
                rows[r][c] -= v;
            }
        }
    }
    det
}

/// Solves `A x = b` for square nonsingular `A`; `None` when singular.
pub fn solve(a: &RationalMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.dim();
    let mut rows: Vec<Vec<BigRational>> = a
        .rows()
        .into_iter()
        .zip(b)
        .map(|(mut r, v)| {
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(piv, col);
        let inv = rows[col][col].recip();
        for c in col..=n {
            rows[col][c] *= &inv;
        }
        for r in 0..n {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..=n {
                let v = &rows[col][c] * &f;
                rows[r][c] -= v;
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}
