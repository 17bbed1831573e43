//! Randomized laws for the exact-arithmetic kernel: ring axioms,
//! substitution homomorphism, exact division as a true inverse of
//! multiplication, series truncation consistency, and the q-binomial
//! recurrences. These guard the foundations that every identity check
//! builds on.

use num_bigint::BigInt;
use proptest::prelude::*;

use qlucas_core::poly::{LaurentPoly, Monomial, SubstMap, SubstTarget};
use qlucas_core::qfun::{binomial, p_poly, q_binomial, q_derivative, q_pochhammer, umbral_apply};
use qlucas_core::series::QSeries;

fn poly_from(terms: Vec<(i64, i64, i64, i64)>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (x, s, q, c) in terms {
        p.add_term(Monomial::new(x, s, q), BigInt::from(c));
    }
    p
}

prop_compose! {
    /// Laurent polynomials with up to 8 terms and exponents in [-5, 5].
    fn arb_poly()(terms in prop::collection::vec(
        (-5i64..=5, -5i64..=5, -5i64..=5, -9i64..=9),
        0..8,
    )) -> LaurentPoly {
        poly_from(terms)
    }
}

prop_compose! {
    /// Polynomials whose x-exponents are nonnegative (the q-derivative's
    /// domain).
    fn arb_poly_x_nonneg()(terms in prop::collection::vec(
        (0i64..=5, -3i64..=3, -3i64..=3, -9i64..=9),
        0..8,
    )) -> LaurentPoly {
        poly_from(terms)
    }
}

prop_compose! {
    /// Pure q-polynomials with nonnegative exponents, fit for series
    /// truncation.
    fn arb_q_poly()(terms in prop::collection::vec(
        (0i64..=8, -9i64..=9),
        0..6,
    )) -> LaurentPoly {
        poly_from(terms.into_iter().map(|(q, c)| (0, 0, q, c)).collect())
    }
}

prop_compose! {
    /// Invertible substitution targets: signed monomials with small
    /// exponents.
    fn arb_target()(sign in prop::bool::ANY, x in -2i64..=2, s in -2i64..=2, q in -2i64..=2)
        -> SubstTarget
    {
        SubstTarget::monomial(if sign { 1 } else { -1 }, x, s, q)
    }
}

prop_compose! {
    fn arb_subst()(
        x in prop::option::of(arb_target()),
        s in prop::option::of(arb_target()),
        q in prop::option::of(arb_target()),
    ) -> SubstMap {
        let mut map = SubstMap::new();
        if let Some(t) = x {
            map = map.x_to(t);
        }
        if let Some(t) = s {
            map = map.s_to(t);
        }
        if let Some(t) = q {
            map = map.q_to(t);
        }
        map
    }
}

prop_compose! {
    /// A pair (n, k) with 0 <= k <= n <= 40.
    fn arb_n_k()(n in 0i64..=40)(k in 0..=n, n in Just(n)) -> (i64, i64) {
        (n, k)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes_and_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_commutes_and_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn powers_compose(p in arb_poly(), a in 0u32..=3, b in 0u32..=3) {
        prop_assert_eq!(p.pow(a + b), &p.pow(a) * &p.pow(b));
    }

    #[test]
    fn valuations_are_additive(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (am, bm) = (a.min_exponents().unwrap(), b.min_exponents().unwrap());
        let pm = (&a * &b).min_exponents().unwrap();
        prop_assert_eq!(pm.x, am.x + bm.x);
        prop_assert_eq!(pm.s, am.s + bm.s);
        prop_assert_eq!(pm.q, am.q + bm.q);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        a in arb_poly(),
        b in arb_poly(),
        c in arb_poly(),
        map in arb_subst(),
    ) {
        let image = (&(&a * &b) + &c).substitute(&map).unwrap();
        let expected = &(&a.substitute(&map).unwrap() * &b.substitute(&map).unwrap())
            + &c.substitute(&map).unwrap();
        prop_assert_eq!(image, expected);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let quotient = (&a * &b).exact_div(&b).unwrap();
        prop_assert_eq!(quotient, a);
    }

    #[test]
    fn series_projection_is_multiplicative(a in arb_q_poly(), b in arb_q_poly()) {
        let product = QSeries::from_poly(&(&a * &b), 20).unwrap();
        let factors = QSeries::from_poly(&a, 20)
            .unwrap()
            .mul(&QSeries::from_poly(&b, 20).unwrap());
        prop_assert_eq!(product.coeffs(), factors.coeffs());
    }

    #[test]
    fn series_inverse_roundtrips(tail in arb_q_poly(), negative in prop::bool::ANY) {
        // unit constant term, arbitrary tail shifted up by one power of q
        let mut p = if negative { -LaurentPoly::one() } else { LaurentPoly::one() };
        p += &tail.mul_term(&BigInt::from(1), &Monomial::new(0, 0, 1));
        let series = QSeries::from_poly(&p, 16).unwrap();
        let product = series.mul(&series.inverse().unwrap());
        let identity = QSeries::one(16);
        prop_assert_eq!(product.coeffs(), identity.coeffs());
    }

    #[test]
    fn q_binomials_satisfy_both_recurrences((n, k) in arb_n_k()) {
        prop_assume!(n >= 1);
        let lhs = q_binomial(n, k);
        let first = &q_binomial(n - 1, k).mul_term(&BigInt::from(1), &Monomial::new(0, 0, k))
            + &q_binomial(n - 1, k - 1);
        prop_assert_eq!(&lhs, &first);
        let second = &q_binomial(n - 1, k)
            + &q_binomial(n - 1, k - 1).mul_term(&BigInt::from(1), &Monomial::new(0, 0, n - k));
        prop_assert_eq!(&lhs, &second);
    }

    #[test]
    fn q_binomials_are_symmetric((n, k) in arb_n_k()) {
        prop_assert_eq!(q_binomial(n, k), q_binomial(n, n - k));
    }

    #[test]
    fn q_binomials_specialize_to_binomials((n, k) in arb_n_k()) {
        let at_one = q_binomial(n, k).substitute(&SubstMap::q_one()).unwrap();
        prop_assert_eq!(at_one, LaurentPoly::term_big(binomial(n, k), Monomial::ONE));
    }

    #[test]
    fn q_binomials_clear_to_pochhammers((n, k) in arb_n_k()) {
        prop_assume!(n <= 25);
        let cleared = &(&q_binomial(n, k) * &q_pochhammer(k)) * &q_pochhammer(n - k);
        prop_assert_eq!(cleared, q_pochhammer(n));
    }

    #[test]
    fn rising_product_peels_one_factor(n in 1i64..=25) {
        // construction already asserts the product and sum forms agree;
        // additionally peel the topmost factor by exact division
        let mut factor = LaurentPoly::x();
        factor.add_term(Monomial::new(0, 1, n - 1), BigInt::from(1));
        prop_assert_eq!(p_poly(n).exact_div(&factor).unwrap(), p_poly(n - 1));
    }

    #[test]
    fn q_derivative_satisfies_the_quotient_rule(p in arb_poly_x_nonneg()) {
        // (1-q) x Dp = p(x) - p(qx)
        let mut one_minus_q_x = LaurentPoly::x();
        one_minus_q_x.add_term(Monomial::new(1, 0, 1), BigInt::from(-1));
        let lhs = &one_minus_q_x * &q_derivative(&p);
        let scaled = p
            .substitute(&SubstMap::new().x_to(SubstTarget::monomial(1, 1, 0, 1)))
            .unwrap();
        prop_assert_eq!(lhs, &p - &scaled);
    }

    #[test]
    fn umbral_operator_is_sq_linear(
        a in arb_poly_x_nonneg(),
        b in arb_poly_x_nonneg(),
        es in -3i64..=3,
        eq in -3i64..=3,
    ) {
        let scalar = Monomial::new(0, es, eq);
        let combined = &a + &b.mul_term(&BigInt::from(1), &scalar);
        let lhs = umbral_apply(&combined);
        let rhs = &umbral_apply(&a) + &umbral_apply(&b).mul_term(&BigInt::from(1), &scalar);
        prop_assert_eq!(lhs, rhs);
    }
}
