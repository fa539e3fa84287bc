mod common;

use common::{angle_cos, arccos, cos_sum_direct, q, squared_form};
use cosorbit_core::arith::transcendental::{cos, exp, ln};
use cosorbit_core::arith::{DyadicInterval, RatPoly};
use cosorbit_core::continuize::{
    ep_eval_numeric, ep_normalize, ep_square_and_rewrite, eval_numeric, integrality_gadget,
    normalize, square_and_rewrite, Angle, BaseTag, CosSumExpr, CosTerm, ExpPolyCosExpr,
    ExpPolyCosTerm, Valuation,
};
use cosorbit_core::Error;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const PREC: u32 = 128;

fn iv(x: &BigRational) -> DyadicInterval {
    DyadicInterval::from_rational(x, PREC)
}

fn th(i: usize, c: BigRational) -> CosTerm {
    CosTerm::new(c, Angle::theta(i))
}

#[test]
fn normalize_examples() {
    let e = CosSumExpr::new(q(0, 1), vec![CosTerm::new(q(1, 1), Angle::theta(0).neg())]);
    assert_eq!(normalize(&e).terms, vec![th(0, q(1, 1))]);
    let e = CosSumExpr::new(q(0, 1), vec![th(0, q(1, 1)), th(0, q(2, 1))]);
    assert_eq!(normalize(&e).terms, vec![th(0, q(3, 1))]);
    let e = CosSumExpr::new(q(0, 1), vec![CosTerm::new(q(1, 1), Angle::zero())]);
    assert_eq!(normalize(&e), CosSumExpr::constant(q(1, 1)));
}

#[test]
fn square_examples() {
    let e = CosSumExpr::new(q(0, 1), vec![th(0, q(1, 1))]);
    let out = square_and_rewrite(&e, &q(0, 1));
    assert_eq!(out.constant, q(2, 1));
    let mut want = vec![
        CosTerm::new(q(1, 2), Angle::theta(0).scale(&q(2, 1))),
        CosTerm::new(q(1, 2), Angle::pi_multiple(q(4, 1))),
        CosTerm::new(q(-2, 1), Angle::pi_multiple(q(2, 1))),
    ];
    want.sort_by(|a, b| a.angle.cmp(&b.angle));
    assert_eq!(out.terms, want);
    // (cos 2 pi t - 1)^2 alone
    let g = square_and_rewrite(&CosSumExpr::constant(q(0, 1)), &q(0, 1));
    assert_eq!(g, normalize(&integrality_gadget()));
    assert_eq!(g.constant, q(3, 2));
    assert_eq!(g.terms.len(), 2);
}

#[test]
fn evaluation_examples() {
    let e = CosSumExpr::new(q(0, 1), vec![th(0, q(1, 1))]);
    let val = Valuation::new(vec![DyadicInterval::from_int(1)], vec![]);
    let v = eval_numeric(&e, &DyadicInterval::from_int(0), &val, PREC).unwrap();
    assert!(v.contains_rational(&q(1, 1)));
    // cos^2(1/2) + (cos pi - 1)^2
    let out = square_and_rewrite(&e, &q(0, 1));
    let v = eval_numeric(&out, &iv(&q(1, 2)), &val, PREC).unwrap();
    let c = cos(&iv(&q(1, 2)), PREC);
    let want = c.mul(&c, PREC).add(&DyadicInterval::from_int(4), PREC);
    assert!(v.intersects(&want));
    assert!(v.width().to_f64() < 1e-30);
    let g = integrality_gadget();
    for t in -3..=3 {
        let v = eval_numeric(&g, &DyadicInterval::from_int(t), &Valuation::default(), PREC).unwrap();
        assert!(v.contains_zero());
    }
    // c = 1 at t = 0 for any theta
    let out = square_and_rewrite(&e, &q(1, 1));
    let v = eval_numeric(&out, &DyadicInterval::from_int(0), &val, PREC).unwrap();
    assert!(v.contains_zero());
    let missing = eval_numeric(&e, &DyadicInterval::from_int(1), &Valuation::default(), PREC);
    assert_eq!(missing.unwrap_err(), Error::MissingSymbol("theta1".into()));
}

#[test]
fn exp_poly_examples() {
    let r1 = BaseTag::symbol(0);
    let e = ExpPolyCosExpr::new(
        q(0, 1),
        vec![ExpPolyCosTerm::new(r1.clone(), RatPoly::one(), Angle::theta(0))],
    );
    let out = ep_square_and_rewrite(&e, &q(0, 1));
    let r1sq = r1.mul(&r1);
    assert_eq!(r1sq.tags(), &[2]);
    let want = ep_normalize(&ExpPolyCosExpr::new(
        q(3, 2),
        vec![
            ExpPolyCosTerm::new(r1sq.clone(), RatPoly::constant(q(1, 2)), Angle::zero()),
            ExpPolyCosTerm::new(r1sq, RatPoly::constant(q(1, 2)), Angle::theta(0).scale(&q(2, 1))),
            ExpPolyCosTerm::new(BaseTag::one(), RatPoly::constant(q(1, 2)), Angle::pi_multiple(q(4, 1))),
            ExpPolyCosTerm::new(BaseTag::one(), RatPoly::constant(q(-2, 1)), Angle::pi_multiple(q(2, 1))),
        ],
    ));
    assert_eq!(out, want);
    // p(t) = t, r = 1, angle 0: the square is t^2
    let e = ExpPolyCosExpr::new(q(0, 1), vec![ExpPolyCosTerm::new(BaseTag::one(), RatPoly::x(), Angle::zero())]);
    let out = ep_square_and_rewrite(&e, &q(0, 1));
    assert!(out
        .terms
        .iter()
        .any(|t| t.base.is_one() && t.angle.is_zero() && t.poly == RatPoly::x().pow(2)));
    let out = ep_square_and_rewrite(&ExpPolyCosExpr::new(q(0, 1), vec![]), &q(0, 1));
    assert_eq!(out, ExpPolyCosExpr::from(&normalize(&integrality_gadget())));
    let missing = ep_eval_numeric(
        &ExpPolyCosExpr::new(q(0, 1), vec![ExpPolyCosTerm::new(r1.clone(), RatPoly::one(), Angle::zero())]),
        &DyadicInterval::from_int(1),
        &Valuation::default(),
        PREC,
    );
    assert_eq!(missing.unwrap_err(), Error::MissingSymbol("r1".into()));
}

#[test]
fn zero_grid_marks_the_solution() {
    // cos theta = 3/5, c = -7/25: cos(t theta) = c only at t = 2
    let theta = arccos(&q(3, 5), 200);
    let val = Valuation::new(vec![theta], vec![]);
    let e = CosSumExpr::new(q(0, 1), vec![th(0, q(1, 1))]);
    let out = square_and_rewrite(&e, &q(-7, 25));
    let mut zeros = Vec::new();
    for t in 0..=25 {
        let v = eval_numeric(&out, &DyadicInterval::from_int(t), &val, 256).unwrap();
        if v.contains_zero() {
            zeros.push(t);
        } else {
            assert!(v.is_positive());
        }
    }
    assert_eq!(zeros, vec![2]);
    // off the integers the gadget keeps it positive
    let v = eval_numeric(&out, &iv(&q(5, 2)), &val, 256).unwrap();
    assert!(v.is_positive());
}

fn small() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn angle() -> impl Strategy<Value = Angle> {
    (proptest::collection::vec(small(), 0..=3), small()).prop_map(|(t, p)| Angle::new(t, p))
}

fn cos_expr() -> impl Strategy<Value = CosSumExpr> {
    (small(), proptest::collection::vec((small(), angle()), 0..=4)).prop_map(|(c, ts)| {
        CosSumExpr::new(c, ts.into_iter().map(|(k, a)| CosTerm::new(k, a)).collect())
    })
}

fn valuation() -> impl Strategy<Value = Valuation> {
    (
        proptest::collection::vec((-30i64..=30, 1i64..=7), 3),
        proptest::collection::vec((1i64..=12, 1i64..=6), 3),
    )
        .prop_map(|(th, rs)| {
            Valuation::new(
                th.into_iter().map(|(n, d)| iv(&q(n, d))).collect(),
                rs.into_iter().map(|(n, d)| iv(&q(n, d))).collect(),
            )
        })
}

fn direct(e: &CosSumExpr, t: &DyadicInterval, val: &Valuation) -> DyadicInterval {
    cos_sum_direct(e, t, val, PREC)
}

fn squared(f: &DyadicInterval, c: &BigRational, t: &DyadicInterval) -> DyadicInterval {
    squared_form(f, c, t, PREC)
}

fn closure_ok(input: &CosSumExpr, out: &CosSumExpr) -> bool {
    let base: Vec<Angle> = normalize(input).angles().cloned().collect();
    let mut allowed = vec![Angle::pi_multiple(q(2, 1)), Angle::pi_multiple(q(4, 1))];
    for a in &base {
        allowed.push(a.canonical());
        allowed.push(a.scale(&q(2, 1)).canonical());
        for b in &base {
            allowed.push(a.add(b).canonical());
            allowed.push(a.sub(b).canonical());
        }
    }
    out.angles().all(|a| allowed.contains(a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pointwise_identity(
        e in cos_expr(),
        c in small(),
        t in (-40i64..=40, 1i64..=8),
        val in valuation(),
    ) {
        let t = iv(&q(t.0, t.1));
        let out = square_and_rewrite(&e, &c);
        let lhs = eval_numeric(&out, &t, &val, PREC).unwrap();
        let rhs = squared(&direct(&e, &t, &val), &c, &t);
        prop_assert!(lhs.intersects(&rhs), "{:?} vs {:?}", lhs, rhs);
        prop_assert!(lhs.width().to_f64() < 1e-20 && rhs.width().to_f64() < 1e-20);
        prop_assert!(closure_ok(&e, &out));
        prop_assert!(out.angles().all(|a| a.is_canonical() && !a.is_zero()));
        prop_assert!(out.terms.iter().all(|t| !t.coeff.is_zero()));
    }

    #[test]
    fn normalize_is_idempotent_and_value_preserving(
        e in cos_expr(),
        t in (-40i64..=40, 1i64..=8),
        val in valuation(),
    ) {
        let n = normalize(&e);
        prop_assert_eq!(normalize(&n), n.clone());
        let mut seen = Vec::new();
        for term in &n.terms {
            prop_assert!(!seen.contains(&term.angle));
            seen.push(term.angle.clone());
        }
        let t = iv(&q(t.0, t.1));
        let a = eval_numeric(&e, &t, &val, PREC).unwrap();
        let b = eval_numeric(&n, &t, &val, PREC).unwrap();
        prop_assert!(a.intersects(&b));
    }

    #[test]
    fn angle_arithmetic(a in angle(), b in angle(), k in small()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.neg().neg(), a.clone());
        prop_assert!(a.canonical().is_canonical());
        prop_assert_eq!(a.scale(&k).add(&a.scale(&(BigRational::one() - &k))), a.clone());
        prop_assert_eq!(a.canonical(), a.neg().canonical());
    }
}

fn ep_expr() -> impl Strategy<Value = ExpPolyCosExpr> {
    let term = (
        proptest::collection::vec(0u32..=2, 0..=3),
        proptest::collection::vec(small(), 1..=3),
        angle(),
    )
        .prop_map(|(tags, p, a)| ExpPolyCosTerm::new(BaseTag::new(tags), RatPoly::new(p), a));
    (small(), proptest::collection::vec(term, 0..=3)).prop_map(|(c, ts)| ExpPolyCosExpr::new(c, ts))
}

fn ep_direct(e: &ExpPolyCosExpr, t: &DyadicInterval, val: &Valuation) -> DyadicInterval {
    e.terms.iter().fold(iv(&e.constant), |acc, term| {
        let p = term
            .poly
            .coeffs()
            .iter()
            .rev()
            .fold(DyadicInterval::from_int(0), |s, c| s.mul(t, PREC).add(&iv(c), PREC));
        let mut lb = DyadicInterval::from_int(0);
        for (i, &k) in term.base.tags().iter().enumerate() {
            lb = lb.add(&ln(&val.bases[i], PREC).mul(&DyadicInterval::from_int(k as i64), PREC), PREC);
        }
        let v = p
            .mul(&exp(&lb.mul(t, PREC), PREC), PREC)
            .mul(&angle_cos(&term.angle, t, val, PREC), PREC);
        acc.add(&v, PREC)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn exp_poly_pointwise_identity(
        e in ep_expr(),
        c in small(),
        t in (-12i64..=12, 1i64..=4),
        val in valuation(),
    ) {
        let t = iv(&q(t.0, t.1));
        let out = ep_square_and_rewrite(&e, &c);
        let lhs = ep_eval_numeric(&out, &t, &val, PREC).unwrap();
        let rhs = squared(&ep_direct(&e, &t, &val), &c, &t);
        prop_assert!(lhs.intersects(&rhs), "{:?} vs {:?}", lhs, rhs);
        let n = ep_normalize(&out);
        prop_assert_eq!(&n, &out);
        let mut keys = Vec::new();
        for term in &out.terms {
            let k = (term.base.clone(), term.angle.clone());
            prop_assert!(!keys.contains(&k));
            keys.push(k);
        }
    }
}

#[test]
fn zero_coefficients_vanish() {
    let e = CosSumExpr::new(q(0, 1), vec![th(1, q(2, 1)), th(1, q(-2, 1)), th(0, BigRational::zero())]);
    assert_eq!(normalize(&e), CosSumExpr::constant(q(0, 1)));
}
