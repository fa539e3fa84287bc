mod common;

use common::{alg, chebyshev, cos_multiples, q};
use cosorbit_core::algebraic::{alg_arith, alg_sqrt_nonneg, ArithOp};
use cosorbit_core::arith::{Dyadic, RationalMatrix};
use cosorbit_core::lrs::{
    companion_form, cos_recurrence, cos_recurrence_algebraic, scan_for_value, term_at,
    LinearRecurrence, INDEX_OFFSET,
};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn rec(c: &[(i64, i64)], a: &[(i64, i64)]) -> LinearRecurrence<BigRational> {
    LinearRecurrence::new(
        c.iter().map(|&(n, d)| q(n, d)).collect(),
        a.iter().map(|&(n, d)| q(n, d)).collect(),
    )
    .unwrap()
}

/// Plain iteration, independent of the library's evaluation.
fn direct(coeffs: &[BigRational], init: &[BigRational], n: usize) -> Vec<BigRational> {
    let k = coeffs.len();
    let mut v = init.to_vec();
    while v.len() < n {
        let l = v.len();
        let x = (0..k).fold(BigRational::zero(), |acc, i| acc + &coeffs[i] * &v[l - 1 - i]);
        v.push(x);
    }
    v.truncate(n);
    v
}

#[test]
fn fibonacci() {
    let f = rec(&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]);
    assert_eq!(f.term_at(10).unwrap(), q(89, 1));
    assert_eq!(term_at(&f, 10).unwrap(), q(89, 1));
    assert_eq!(f.term(10 + INDEX_OFFSET).unwrap(), q(89, 1));
    let m = companion_form(&f);
    let want = RationalMatrix::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
    assert_eq!(m.m, want);
    assert_eq!(m.u, vec![q(1, 1), q(0, 1)]);
    assert_eq!(m.v, vec![q(1, 1), q(1, 1)]);
    assert_eq!(m.eval(9), q(89, 1));
}

#[test]
fn order_one() {
    let r = rec(&[(2, 1)], &[(3, 1)]);
    let m = companion_form(&r);
    assert_eq!(m.m, RationalMatrix::identity(1).scale(&q(2, 1)));
    for t in 0..10u32 {
        assert_eq!(m.eval(t as u64), q(3 * 2i64.pow(t), 1));
    }
}

#[test]
fn invalid_recurrences() {
    assert!(LinearRecurrence::<BigRational>::new(vec![], vec![]).is_err());
    assert!(LinearRecurrence::new(vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]).is_err());
    assert!(LinearRecurrence::new(vec![q(1, 1)], vec![q(1, 1), q(1, 1)]).is_err());
}

#[test]
fn cos_recurrence_examples() {
    let r = cos_recurrence(&q(3, 5)).unwrap();
    assert_eq!(r.coeffs(), &[q(6, 5), q(-1, 1)]);
    assert_eq!(r.initial(), &[q(1, 1), q(3, 5)]);
    assert_eq!(r.terms(4).unwrap(), vec![q(1, 1), q(3, 5), q(-7, 25), q(-117, 125)]);
    assert_eq!(scan_for_value(&r, &q(-7, 25), 50).unwrap(), vec![2]);
    assert_eq!(r.scan_for_value(&q(1, 1), 1).unwrap(), vec![0]);
    let m = companion_form(&r);
    assert_eq!(m.eval(1), q(-7, 25));
    let one = cos_recurrence(&q(1, 1)).unwrap();
    assert_eq!(one.coeffs(), &[q(1, 1)]);
    assert_eq!(one.initial(), &[q(1, 1)]);
    let six = cos_recurrence(&q(1, 2)).unwrap();
    assert_eq!(six.coeffs(), &[q(1, 1), q(-1, 1)]);
    let t = six.terms(13).unwrap();
    assert_eq!(&t[..6], &t[6..12]);
    assert_eq!(t[3], q(-1, 1));
    assert!(cos_recurrence(&q(5, 4)).is_err());
}

#[test]
fn algebraic_cos_recurrence() {
    let s = alg_sqrt_nonneg(&alg(2, 1)).unwrap();
    let a = alg_arith(ArithOp::Mul, &s, &alg(1, 2)).unwrap();
    let r = cos_recurrence_algebraic(&a).unwrap();
    assert_eq!(r.order(), 4);
    let t = r.terms(9).unwrap();
    assert!(t[2].is_zero());
    assert!(t[4].equals(&alg(-1, 1)));
    assert!(t[8].is_one());
    assert!(t[1].equals(&a));
    assert_eq!(r.scan_for_value(&alg(-1, 1), 20).unwrap(), vec![4, 12, 20]);
}

fn small() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn recurrence() -> impl Strategy<Value = (Vec<BigRational>, Vec<BigRational>)> {
    (1usize..=4).prop_flat_map(|k| {
        (
            proptest::collection::vec(small(), k),
            (1i64..=3, prop::bool::ANY).prop_map(|(n, s)| q(if s { n } else { -n }, 2)),
            proptest::collection::vec(small(), k),
        )
            .prop_map(|(mut c, last, a)| {
                let k = c.len();
                c[k - 1] = last;
                (c, a)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn companion_matches_iteration((c, a) in recurrence()) {
        let r = LinearRecurrence::new(c.clone(), a.clone()).unwrap();
        let k = r.order() as u64;
        let seq = direct(&c, &a, 21 + k as usize);
        prop_assert_eq!(r.terms(seq.len()).unwrap(), seq.clone());
        let m = companion_form(&r);
        for t in 0..=20u64 {
            prop_assert_eq!(m.eval(t), seq[(k - 1 + t) as usize].clone());
            prop_assert_eq!(r.term(k + t).unwrap(), seq[(k - 1 + t) as usize].clone());
        }
        // and back: the sequence read off u^T M^t v satisfies the recurrence
        let read: Vec<BigRational> = (0..=20).map(|t| m.eval(t)).collect();
        let again = direct(&c, &read[..k as usize], 21);
        prop_assert_eq!(read, again);
    }
}

fn check_cos_recurrence(alpha: &BigRational, n: u64) -> Result<(), TestCaseError> {
    let tol = Dyadic::pow2(-40);
    let terms = cos_recurrence(alpha).unwrap().terms(n as usize + 1).unwrap();
    let cosines = cos_multiples(alpha, n, 48);
    for (t, (a, iv)) in terms.iter().zip(cosines).enumerate() {
        prop_assert!(a.abs() <= BigRational::one(), "|a_{}| > 1", t);
        prop_assert_eq!(a, &chebyshev(t as u64, alpha));
        prop_assert!(iv.width() <= tol);
        let mid = iv.midpoint().to_rational();
        let slack = iv.width().add(&tol).to_rational();
        prop_assert!((a - mid).abs() <= slack, "t = {}", t);
    }
    Ok(())
}

#[test]
fn cos_recurrence_tracks_cosine() {
    for a in [q(3, 5), q(1, 2), q(5, 13), q(-7, 25)] {
        check_cos_recurrence(&a, 100).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn cos_recurrence_random_alpha(n in -15i64..=15, d in 1i64..=16) {
        prop_assume!(n.abs() <= d);
        check_cos_recurrence(&q(n, d), 100)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// `a_t = p a_(t-1) - s a_(t-2)` with `p^2 < 4s` has roots `r e^(+-i theta)`
    /// and closed form `r^t (A cos t theta + B sin t theta)`.
    #[test]
    fn complex_roots_closed_form(
        p in (-8i64..=8, 1i64..=4),
        s in (1i64..=9, 1i64..=4),
        a0 in small(),
        a1 in small(),
    ) {
        let (p, s) = (q(p.0, p.1), q(s.0, s.1));
        prop_assume!(&p * &p < q(4, 1) * &s);
        let r = LinearRecurrence::new(vec![p.clone(), -s.clone()], vec![a0.clone(), a1.clone()]).unwrap();
        let terms = r.terms(31).unwrap();
        let f = |x: &BigRational| x.to_f64().unwrap();
        let rad = f(&s).sqrt();
        let th = (f(&p) / (2.0 * rad)).acos();
        let big_a = f(&a0);
        let big_b = (f(&a1) - rad * big_a * th.cos()) / (rad * th.sin());
        for (t, a) in terms.iter().enumerate() {
            let t = t as f64;
            let closed = rad.powf(t) * (big_a * (t * th).cos() + big_b * (t * th).sin());
            let scale = rad.powf(t) * (big_a.abs() + big_b.abs()) + 1.0;
            prop_assert!((f(a) - closed).abs() <= 1e-9 * scale, "t {} exact {} closed {}", t, f(a), closed);
        }
    }
}
