use super::*;
use crate::laurent::det::{det_rational, det_symbolic};
use proptest::prelude::*;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// `c * x1^a x2^b ...` with doubled exponents.
fn mono(nvars: usize, doubled: &[i64], c: i64) -> LaurentPoly {
    let exps = doubled.iter().map(|&d| HalfExp::from_doubled(d)).collect();
    LaurentPoly::term(Monomial::new(exps), rat(c), nvars)
}

fn x(nvars: usize, i: usize) -> LaurentPoly {
    LaurentPoly::var(nvars, i)
}

fn xinv(nvars: usize, i: usize) -> LaurentPoly {
    LaurentPoly::var_pow(nvars, i, -HalfExp::ONE)
}

#[test]
fn add_cancels_inverse() {
    let p = &x(1, 0) - &xinv(1, 0);
    let q = &xinv(1, 0) - &x(1, 0);
    assert!((&p + &q).is_zero());
}

#[test]
fn add_doubles() {
    let two_x = &x(1, 0) + &x(1, 0);
    assert_eq!(two_x, mono(1, &[2], 2));
    let h = mono(1, &[1], 1); // x^(1/2)
    assert_eq!(&h + &h, mono(1, &[1], 2));
}

#[test]
fn add_rejects_var_mismatch() {
    assert_eq!(
        x(1, 0).try_add(&x(2, 0)),
        Err(LaurentError::VarMismatch { left: 1, right: 2 })
    );
}

#[test]
fn mul_half_exponents_close() {
    let h = mono(1, &[1], 1);
    assert_eq!(&h * &h, x(1, 0));
}

#[test]
fn mul_difference_of_squares() {
    let p = &x(2, 0) - &x(2, 1);
    let q = &x(2, 0) + &x(2, 1);
    let expect = &mono(2, &[4, 0], 1) + &mono(2, &[0, 4], -1);
    assert_eq!(&p * &q, expect);
}

#[test]
fn mul_identity() {
    let p = &x(1, 0) - &xinv(1, 0);
    assert_eq!(&p * &LaurentPoly::one(1), p);
}

#[test]
fn exact_div_basic() {
    let p = &mono(2, &[4, 0], 1) + &mono(2, &[0, 4], -1); // x1^2 - x2^2
    let d = &x(2, 0) - &x(2, 1);
    assert_eq!(p.exact_div(&d).unwrap(), &x(2, 0) + &x(2, 1));
}

#[test]
fn exact_div_self() {
    let p = &(&x(2, 0) - &xinv(2, 1)) + &mono(2, &[1, 3], 5);
    assert_eq!(p.exact_div(&p).unwrap(), LaurentPoly::one(2));
}

#[test]
fn exact_div_schur_2_2() {
    // Bialternant numerator for shape (2,2) in two variables over the
    // Vandermonde; expected value expanded by hand cofactors:
    //   det [[x1^3, x1^2], [x2^3, x2^2]] = x1^2 x2^2 (x1 - x2).
    let num = det_symbolic(&[
        vec![mono(2, &[6, 0], 1), mono(2, &[4, 0], 1)],
        vec![mono(2, &[0, 6], 1), mono(2, &[0, 4], 1)],
    ])
    .unwrap();
    let vandermonde = &x(2, 0) - &x(2, 1);
    assert_eq!(num.exact_div(&vandermonde).unwrap(), mono(2, &[4, 4], 1));
}

#[test]
fn exact_div_detects_remainder() {
    let p = x(1, 0);
    let d = &x(1, 0) + &LaurentPoly::one(1);
    assert_eq!(p.exact_div(&d), Err(LaurentError::NonzeroRemainder));
}

#[test]
fn exact_div_by_zero() {
    assert_eq!(
        x(1, 0).exact_div(&LaurentPoly::zero(1)),
        Err(LaurentError::DivisionByZero)
    );
}

#[test]
fn substitute_bar_involution_negates_odd() {
    let p = &x(1, 0) - &xinv(1, 0);
    let q = p.substitute(&[Subst::invert(0)]).unwrap();
    assert_eq!(q, p.negate());
}

#[test]
fn substitute_negation_even_degree() {
    let p = &x(2, 0) * &x(2, 1);
    let q = p.substitute(&[Subst::negate(0), Subst::negate(1)]).unwrap();
    assert_eq!(q, p);
}

#[test]
fn substitute_q_powers() {
    let p = &x(2, 0) + &x(2, 1);
    let q = p
        .substitute(&[
            Subst::QPow {
                coeff: rat(1),
                power: HalfExp::from_int(1),
            },
            Subst::QPow {
                coeff: rat(1),
                power: HalfExp::from_int(2),
            },
        ])
        .unwrap();
    assert_eq!(q, &mono(1, &[2], 1) + &mono(1, &[4], 1));
}

#[test]
fn substitute_negative_base_half_exponent_fails() {
    let p = mono(1, &[1], 1); // x^(1/2)
    assert_eq!(
        p.substitute(&[Subst::negate(0)]),
        Err(LaurentError::NonSquareValue)
    );
}

#[test]
fn eval_examples() {
    let p = &x(1, 0) - &xinv(1, 0);
    assert_eq!(p.eval(&[rat(2)]).unwrap(), ratq(3, 2));

    let q = &x(2, 0) - &x(2, 1);
    assert_eq!(q.eval(&[rat(3), rat(3)]).unwrap(), rat(0));
}

#[test]
fn eval_zero_with_negative_exponent() {
    let p = xinv(1, 0);
    assert_eq!(p.eval(&[rat(0)]), Err(LaurentError::ZeroSubstitution));
}

#[test]
fn eval_half_exponent_needs_square() {
    let p = mono(1, &[1], 1);
    assert_eq!(p.eval(&[ratq(9, 4)]).unwrap(), ratq(3, 2));
    assert_eq!(p.eval(&[rat(2)]), Err(LaurentError::NonSquareValue));
}

#[test]
fn det_one_by_one() {
    let p = &x(1, 0) - &xinv(1, 0);
    assert_eq!(det_symbolic(&[vec![p.clone()]]).unwrap(), p);
}

#[test]
fn det_equal_rows_vanishes() {
    let row = vec![x(2, 0), x(2, 1)];
    assert!(det_symbolic(&[row.clone(), row]).unwrap().is_zero());
}

#[test]
fn det_vandermonde_2x2() {
    let m = vec![
        vec![x(2, 0), LaurentPoly::one(2)],
        vec![x(2, 1), LaurentPoly::one(2)],
    ];
    assert_eq!(det_symbolic(&m).unwrap(), &x(2, 0) - &x(2, 1));
}

#[test]
fn canonical_display() {
    let p = &(&mono(1, &[4], 1) + &LaurentPoly::one(1)) + &mono(1, &[-1], -3);
    assert_eq!(p.to_string(), "1 * x1^2 + 1 + -3 * x1^-1/2");
    assert_eq!(LaurentPoly::zero(3).to_string(), "0");
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratq(n, d))
}

fn arb_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((proptest::collection::vec(-6i64..=6, nvars), -5i64..=5), 0..5)
        .prop_map(move |terms| {
            let mut p = LaurentPoly::zero(nvars);
            for (exps, c) in terms {
                let m = Monomial::new(exps.into_iter().map(HalfExp::from_doubled).collect());
                p = &p + &LaurentPoly::term(m, rat(c), nvars);
            }
            p
        })
}

fn arb_nonzero_point(nvars: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec((1i64..=40, 1i64..=7, proptest::bool::ANY), nvars).prop_map(|v| {
        v.into_iter()
            .map(|(n, d, neg)| if neg { ratq(-n, d) } else { ratq(n, d) })
            .collect()
    })
}

/// Integer-exponent polynomials, for evaluation at arbitrary signed points.
fn arb_int_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((proptest::collection::vec(-3i64..=3, nvars), -5i64..=5), 0..5)
        .prop_map(move |terms| {
            let mut p = LaurentPoly::zero(nvars);
            for (exps, c) in terms {
                let m = Monomial::new(exps.into_iter().map(HalfExp::from_int).collect());
                p = &p + &LaurentPoly::term(m, rat(c), nvars);
            }
            p
        })
}

proptest! {
    #[test]
    fn prop_add_neg_cancels(p in arb_poly(2)) {
        prop_assert!((&p + &p.negate()).is_zero());
    }

    #[test]
    fn prop_div_inverts_mul(p in arb_poly(2), d in arb_poly(2)) {
        prop_assume!(!d.is_zero());
        let prod = &p * &d;
        prop_assert_eq!(prod.exact_div(&d).unwrap(), p);
    }

    #[test]
    fn prop_inversion_involution(p in arb_poly(2)) {
        let actions = [Subst::invert(0), Subst::Keep];
        let once = p.substitute(&actions).unwrap();
        prop_assert_eq!(once.substitute(&actions).unwrap(), p);
    }

    #[test]
    fn prop_det_alternating(rows in proptest::collection::vec(proptest::collection::vec(arb_poly(2), 3), 3)) {
        let d = det_symbolic(&rows).unwrap();
        let mut swapped = rows.clone();
        swapped.swap(0, 2);
        prop_assert_eq!(det_symbolic(&swapped).unwrap(), d.negate());
    }

    #[test]
    fn prop_eval_is_ring_hom(p in arb_int_poly(2), q in arb_int_poly(2), pt in arb_nonzero_point(2)) {
        let ep = p.eval(&pt).unwrap();
        let eq = q.eval(&pt).unwrap();
        prop_assert_eq!((&p * &q).eval(&pt).unwrap(), &ep * &eq);
        prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &ep + &eq);
    }

    #[test]
    fn prop_det_rational_matches_symbolic(entries in proptest::collection::vec(arb_rat(), 9)) {
        let m: Vec<Vec<Rat>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let sym: Vec<Vec<LaurentPoly>> = m
            .iter()
            .map(|r| r.iter().map(|v| LaurentPoly::constant(v.clone(), 1)).collect())
            .collect();
        let expect = det_symbolic(&sym).unwrap().as_constant().unwrap();
        prop_assert_eq!(det_rational(&m).unwrap(), expect);
    }
}
