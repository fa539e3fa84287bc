//! Certified complex root isolation by Durand–Kerner iteration on a dyadic
//! grid, with Newton inclusion disks as certificates.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, Zero};

use crate::arith::complex_box::{eval_complex, CRat};
use crate::arith::poly::{poly_squarefree, separation_bound};
use crate::arith::{ComplexBox, Dyadic, RatPoly, Round};

fn log2_ceil_inv(q: &BigRational) -> i64 {
    // about -log2(q), rounded so that 2^-result <= q
    q.denom().bits() as i64 - q.numer().bits() as i64 + 1
}

fn round_up(q: &BigRational) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    Dyadic::from_rational(q, 32, Round::Up).to_rational()
}

/// Radius every stored isolating disk must respect.
pub(crate) fn root_target(q: &RatPoly) -> BigRational {
    separation_bound(q) / BigRational::from_integer(BigInt::from(8))
}

fn cauchy_bound(q: &RatPoly) -> BigRational {
    let lc = q.leading().abs();
    let m = q.coeffs()[..q.degree()]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(BigRational::zero);
    m + BigRational::one()
}

/// `d |q(z)| / |q'(z)|` as a rational upper bound: the disk of this radius
/// around `z` contains a root of `q`.
fn inclusion_radius(q: &RatPoly, dq: &RatPoly, z: &CRat) -> Option<BigRational> {
    let v = eval_complex(q, z);
    if v.is_zero() {
        return Some(BigRational::zero());
    }
    let dv = eval_complex(dq, z);
    let lower = dv.abs_lower(64);
    if lower.is_zero() {
        return None;
    }
    let d = BigRational::from_integer(BigInt::from(q.degree()));
    Some(round_up(&(d * v.abs_upper(64) / lower)))
}

fn disjoint(a: &ComplexBox, b: &ComplexBox) -> bool {
    !a.intersects(b)
}

fn certify(q: &RatPoly, dq: &RatPoly, zs: &[CRat], target: &BigRational) -> Option<Vec<ComplexBox>> {
    let mut out = Vec::with_capacity(zs.len());
    for z in zs {
        let mut rho = inclusion_radius(q, dq, z)?;
        if rho.is_zero() {
            // exact hit; target is below half the separation
            rho = target.clone();
        }
        if rho > *target {
            return None;
        }
        out.push(ComplexBox::new(z.re.clone(), z.im.clone(), rho));
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if !disjoint(&out[i], &out[j]) {
                return None;
            }
        }
    }
    Some(out)
}

fn start_points(q: &RatPoly, bits: i64) -> Vec<CRat> {
    let r = cauchy_bound(q);
    let w = CRat::new(
        BigRational::new(BigInt::from(2), BigInt::from(5)),
        BigRational::new(BigInt::from(9), BigInt::from(10)),
    );
    let mut p = CRat::real(r);
    let mut out = Vec::with_capacity(q.degree());
    for _ in 0..q.degree() {
        out.push(p.round(bits).0);
        p = p.mul(&w);
    }
    out
}

fn f64_to_rational(v: f64) -> BigRational {
    let (m, e, sign) = FloatCore::integer_decode(v);
    let d = Dyadic::new(BigInt::from(sign) * BigInt::from(m), e as i64);
    d.to_rational()
}

/// Durand–Kerner in `f64`, used only to seed the exact iteration. `None`
/// when the coefficients do not fit or the iteration stalls.
fn float_seeds(q: &RatPoly, bits: i64) -> Option<Vec<CRat>> {
    let lc = q.leading();
    let c: Vec<f64> = q
        .coeffs()
        .iter()
        .map(|a| Dyadic::from_rational(&(a / &lc), 53, Round::Down).to_f64())
        .collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let d = q.degree();
    let r = c[..d].iter().fold(0.0f64, |m, x| if x.abs() > m { x.abs() } else { m }) + 1.0;
    let mut z: Vec<(f64, f64)> = Vec::with_capacity(d);
    let (mut x, mut y) = (r, 0.0);
    for _ in 0..d {
        z.push((x, y));
        (x, y) = (0.4 * x - 0.9 * y, 0.9 * x + 0.4 * y);
    }
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    for _ in 0..400 {
        let mut worst = 0.0f64;
        for k in 0..d {
            let mut v = (1.0, 0.0);
            for a in c[..d].iter().rev() {
                v = mul(v, z[k]);
                v.0 += a;
            }
            // c is monic: Horner above started from the leading 1
            let mut den = (1.0, 0.0);
            for j in 0..d {
                if j != k {
                    den = mul(den, (z[k].0 - z[j].0, z[k].1 - z[j].1));
                }
            }
            let n2 = den.0 * den.0 + den.1 * den.1;
            if n2 == 0.0 || !n2.is_finite() {
                return None;
            }
            let corr = ((v.0 * den.0 + v.1 * den.1) / n2, (v.1 * den.0 - v.0 * den.1) / n2);
            z[k] = (z[k].0 - corr.0, z[k].1 - corr.1);
            let m = corr.0 * corr.0 + corr.1 * corr.1;
            let s = 1.0 + z[k].0 * z[k].0 + z[k].1 * z[k].1;
            if m / s > worst {
                worst = m / s;
            }
        }
        if !worst.is_finite() {
            return None;
        }
        if worst < 1e-26 {
            return Some(
                z.into_iter()
                    .map(|(a, b)| CRat::new(f64_to_rational(a), f64_to_rational(b)).round(bits).0)
                    .collect(),
            );
        }
    }
    None
}

/// Complex dyadic with every operation rounded to a relative precision.
#[derive(Clone)]
struct Cd {
    re: Dyadic,
    im: Dyadic,
}

impl Cd {
    fn of(z: &CRat, p: u32) -> Cd {
        Cd {
            re: dy(&z.re, p),
            im: dy(&z.im, p),
        }
    }

    fn to_crat(&self) -> CRat {
        CRat::new(self.re.to_rational(), self.im.to_rational())
    }

    fn sub(&self, o: &Cd, p: u32) -> Cd {
        Cd {
            re: self.re.sub(&o.re).round(p, Round::Down),
            im: self.im.sub(&o.im).round(p, Round::Down),
        }
    }

    fn mul(&self, o: &Cd, p: u32) -> Cd {
        Cd {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)).round(p, Round::Down),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)).round(p, Round::Down),
        }
    }

    fn norm_sq(&self) -> Dyadic {
        self.re.square().add(&self.im.square())
    }

    fn div(&self, o: &Cd, p: u32) -> Option<Cd> {
        let n = o.norm_sq();
        if n.is_zero() {
            return None;
        }
        let conj = Cd {
            re: o.re.clone(),
            im: o.im.neg(),
        };
        let m = self.mul(&conj, p + 8);
        Some(Cd {
            re: m.re.div(&n, p, Round::Down),
            im: m.im.div(&n, p, Round::Down),
        })
    }
}

fn dy(q: &BigRational, p: u32) -> Dyadic {
    if q.is_zero() {
        Dyadic::zero()
    } else {
        Dyadic::from_rational(q, p, Round::Down)
    }
}

/// One Gauss–Seidel Durand–Kerner sweep on the monic coefficients `c`
/// (low to high, leading 1 omitted); returns the squared size of the largest
/// correction.
fn dk_sweep(c: &[Dyadic], zs: &mut [Cd], p: u32) -> Dyadic {
    let mut worst = Dyadic::zero();
    for k in 0..zs.len() {
        let mut den = Cd {
            re: Dyadic::one(),
            im: Dyadic::zero(),
        };
        for j in 0..zs.len() {
            if j != k {
                den = den.mul(&zs[k].sub(&zs[j], p), p);
            }
        }
        let mut v = Cd {
            re: Dyadic::one(),
            im: Dyadic::zero(),
        };
        for a in c.iter().rev() {
            v = v.mul(&zs[k], p);
            v.re = v.re.add(a).round(p, Round::Down);
        }
        let corr = match v.div(&den, p) {
            Some(c) => c,
            None => {
                // coincident iterates: nudge off the collision
                let e = Dyadic::pow2(-(p as i64 / 2)).mul_int(&BigInt::from(k as i64 + 1));
                Cd { re: e.clone(), im: e }
            }
        };
        zs[k] = zs[k].sub(&corr, p);
        let n = corr.norm_sq();
        if n > worst {
            worst = n;
        }
    }
    worst
}

/// Disks of radius at most `target`, one around each root of the squarefree
/// polynomial `q`, pairwise disjoint.
pub(crate) fn isolate_squarefree(q: &RatPoly, target: &BigRational) -> Vec<ComplexBox> {
    let d = q.degree();
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        let root = -q.coeff(0) / q.coeff(1);
        return alloc::vec![ComplexBox::from_rational(&root)];
    }
    let dq = q.derivative();
    let lc = q.leading();
    let mag = cauchy_bound(q).to_integer().bits() as i64;
    let mut bits = (log2_ceil_inv(target) + 2 * (d as i64).ilog2() as i64 + 24 + mag).max(64);
    let mut p: u32 = 64;
    let mut zs: Vec<Cd> = float_seeds(q, 64)
        .unwrap_or_else(|| start_points(q, 64))
        .iter()
        .map(|z| Cd::of(z, p))
        .collect();
    let mut sweeps = 60 + 20 * d;
    loop {
        let c: Vec<Dyadic> = q.coeffs()[..d].iter().map(|a| dy(&(a / &lc), p + 16)).collect();
        let tol = Dyadic::pow2(-2 * (p as i64 - 16 - mag));
        let mut converged = false;
        for _ in 0..sweeps {
            if dk_sweep(&c, &mut zs, p) <= tol {
                converged = true;
                break;
            }
        }
        if p as i64 >= bits {
            if converged {
                let exact: Vec<CRat> = zs.iter().map(Cd::to_crat).collect();
                if let Some(boxes) = certify(q, &dq, &exact, target) {
                    return boxes;
                }
            }
            bits *= 2;
        }
        p = (2 * p).min(bits as u32);
        sweeps = 12 + 2 * d;
    }
}

/// All distinct complex roots of `p`, each in its own disk whose radius is at
/// most an eighth of the root separation bound.
pub fn isolate_roots(p: &RatPoly) -> Vec<ComplexBox> {
    assert!(!p.is_zero(), "isolating roots of the zero polynomial");
    let q = poly_squarefree(p);
    let mut boxes = isolate_squarefree(&q, &root_target(&q));
    boxes.sort_by(|a, b| {
        a.center_x()
            .cmp(b.center_x())
            .then_with(|| a.center_y().cmp(b.center_y()))
    });
    boxes
}

/// Shrinks an isolating disk of the squarefree `q` to radius at most
/// `target`; the result lies inside `bx` or is the unique fresh isolating
/// disk meeting it.
pub(crate) fn refine_root(q: &RatPoly, bx: &ComplexBox, target: &BigRational) -> ComplexBox {
    if bx.radius() <= target {
        return bx.clone();
    }
    let d = q.degree();
    if d == 1 {
        return ComplexBox::from_rational(&(-q.coeff(0) / q.coeff(1)));
    }
    let dq = q.derivative();
    let mut bits = (log2_ceil_inv(target) + 16 + (d as i64).ilog2() as i64).max(64);
    let mut z = bx.center();
    for _ in 0..3 {
        for _ in 0..12 {
            let v = eval_complex(q, &z);
            let dv = eval_complex(&dq, &z);
            if let Some(step) = v.div(&dv) {
                z = z.sub(&step).round(bits).0;
            } else {
                break;
            }
            if let Some(rho) = inclusion_radius(q, &dq, &z) {
                let cand = ComplexBox::new(z.re.clone(), z.im.clone(), rho);
                if cand.radius() <= target && cand.inside(bx) {
                    return cand;
                }
            }
        }
        bits *= 2;
        z = bx.center();
    }
    let mut t = target.clone();
    loop {
        let all = isolate_squarefree(q, &t);
        let hits: Vec<&ComplexBox> = all.iter().filter(|b| b.intersects(bx)).collect();
        if hits.len() == 1 {
            return hits[0].clone();
        }
        t /= BigRational::from_integer(BigInt::from(16));
    }
}
