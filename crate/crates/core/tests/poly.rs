use grapeshot_core::poly::{binomial, in_r0, r0_homogeneous_basis, sha_star, Monomial, Poly, TensorPoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn e(i: usize) -> Poly {
    Poly::var(i)
}

fn names() -> Vec<String> {
    (1..=4).map(|i| format!("e{i}")).collect()
}

fn tensor(terms: &[(&[(usize, u32)], &[(usize, u32)], i64)]) -> TensorPoly {
    let mut t = TensorPoly::zero();
    for (l, r, c) in terms {
        t.add_term(
            Monomial::from_pairs(l.iter().copied()),
            Monomial::from_pairs(r.iter().copied()),
            BigInt::from(*c),
        );
    }
    t
}

#[test]
fn ring_arithmetic() {
    assert!(e(0).add(&e(0).neg()).is_zero());
    let lhs = e(0).sub(&e(1)).mul(&e(0).add(&e(1)));
    let rhs = e(0).pow(2).sub(&e(1).pow(2));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.display(&names()), "e1^2 - e2^2");
    assert_eq!(e(0).mul(&e(0)), Poly::term(Monomial::power(0, 2), 1));
    assert_eq!(Poly::constant(7).display(&names()), "7");
    assert_eq!(Poly::zero().display(&names()), "0");
}

#[test]
fn monomials() {
    let m = Monomial::from_pairs([(0, 2), (2, 1)]);
    assert_eq!(m.degree(), 3);
    assert_eq!(m.exponent(0), 2);
    assert!(m.is_free_of(1));
    assert!(Monomial::var(2).divides(&m));
    assert!(!Monomial::var(1).divides(&m));
    assert_eq!(m.display(&names()), "e1^2*e3");
    assert_eq!(Monomial::all_of_degree(&[0, 1], 2).len(), 3);
    assert_eq!(Monomial::all_of_degree(&[0, 1, 2], 0), vec![Monomial::one()]);
    // splittings of e1^2*e3: 3 * 2 = 6, coefficients sum to 2^3
    let s = m.splittings();
    assert_eq!(s.len(), 6);
    assert_eq!(s.iter().map(|(_, _, c)| c.clone()).sum::<BigInt>(), BigInt::from(8));
}

#[test]
fn binomials() {
    assert_eq!(binomial(4, 2), BigInt::from(6));
    assert_eq!(binomial(3, 5), BigInt::from(0));
    assert_eq!(binomial(0, 0), BigInt::from(1));
    assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
}

#[test]
fn coshuffle_of_polynomials() {
    assert_eq!(sha_star(&e(0)), tensor(&[(&[(0, 1)], &[], 1), (&[], &[(0, 1)], 1)]));
    assert_eq!(sha_star(&Poly::one()), tensor(&[(&[], &[], 1)]));
    assert_eq!(
        sha_star(&e(0).pow(2)),
        tensor(&[(&[(0, 2)], &[], 1), (&[(0, 1)], &[(0, 1)], 2), (&[], &[(0, 2)], 1)])
    );
    let p = e(0).mul(&e(1)).add(&e(0));
    let expected = tensor(&[
        (&[(0, 1), (1, 1)], &[], 1),
        (&[(0, 1)], &[(1, 1)], 1),
        (&[(1, 1)], &[(0, 1)], 1),
        (&[], &[(0, 1), (1, 1)], 1),
        (&[(0, 1)], &[], 1),
        (&[], &[(0, 1)], 1),
    ]);
    assert_eq!(sha_star(&p), expected);
}

#[test]
fn r0_membership() {
    assert!(in_r0(&e(0).sub(&e(1)), 0));
    assert!(in_r0(&Poly::constant(7), 0));
    assert!(!in_r0(&e(0), 0));
    assert!(in_r0(&e(0).sub(&e(1)).pow(2), 0));
    assert!(!in_r0(&e(1), 0));
    assert!(in_r0(&e(1).sub(&e(2)).mul(&e(3)).sub(&e(1).sub(&e(2)).mul(&e(0))), 0));
}

#[test]
fn r0_bases() {
    assert_eq!(r0_homogeneous_basis(&[0, 1], 0, 1), vec![e(1).sub(&e(0))]);
    assert_eq!(r0_homogeneous_basis(&[0, 1, 2], 0, 0), vec![Poly::one()]);
    let d2 = r0_homogeneous_basis(&[0, 1, 2], 0, 2);
    let a = e(1).sub(&e(0));
    let b = e(2).sub(&e(0));
    assert_eq!(d2.len(), 3);
    for p in [a.pow(2), a.mul(&b), b.pow(2)] {
        assert!(d2.contains(&p), "{}", p.display(&names()));
    }
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -3i64..4), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for (exps, c) in terms {
            p.add_term(Monomial::from_dense(&exps), BigInt::from(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn sha_star_is_multiplicative(p in poly_strategy(), q in poly_strategy()) {
        prop_assert_eq!(sha_star(&p.mul(&q)), sha_star(&p).mul(&sha_star(&q)));
    }

    #[test]
    fn sha_star_is_counital_and_cocommutative(p in poly_strategy()) {
        let s = sha_star(&p);
        prop_assert_eq!(s.counit_left(), p.clone());
        prop_assert_eq!(s.counit_right(), p);
        prop_assert_eq!(s.swap(), s);
    }

    #[test]
    fn ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn r0_basis_lies_in_r0(d in 0u32..4, e0 in 0usize..3) {
        for p in r0_homogeneous_basis(&[0, 1, 2], e0, d) {
            prop_assert!(in_r0(&p, e0));
            prop_assert!(p.is_homogeneous(d));
        }
    }

    #[test]
    fn binomial_pascal(n in 1u64..40, k in 1u64..40) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
}
