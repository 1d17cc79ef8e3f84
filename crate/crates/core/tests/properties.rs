use num_complex::Complex64;
use proptest::prelude::*;

use nilift_core::gowers::{u_norm, CyclicFn};
use nilift_core::nilgroup::{Group, HeisPoint, Lattice, LiftedPoint};
use nilift_core::pipeline::PartitionOfUnity;
use nilift_core::polyalg::{Poly, RatPoly};
use nilift_core::scalar::{Rational, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn poly(max_bound: usize) -> impl Strategy<Value = RatPoly> {
    (1..=max_bound).prop_flat_map(|s| prop::collection::vec(rational(), s + 1).prop_map(|c| Poly::new(c).unwrap()))
}

fn poly_of_bound(s: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(rational(), s + 1).prop_map(|c| Poly::new(c).unwrap())
}

fn heis() -> impl Strategy<Value = HeisPoint<Rational>> {
    (rational(), rational(), rational()).prop_map(|(x, y, z)| HeisPoint::new(x, y, z))
}

fn lifted_triple() -> impl Strategy<Value = [LiftedPoint<Rational>; 3]> {
    let point = |s: usize| (poly_of_bound(s), rational()).prop_map(|(q, t)| LiftedPoint::new(q, t));
    (1usize..=3).prop_flat_map(move |s| [point(s), point(s), point(s)])
}

fn unit(re: f64, im: f64) -> Complex64 {
    let z = Complex64::new(re, im);
    if z.norm() > 1.0 {
        z / z.norm()
    } else {
        z
    }
}

fn bounded_fn(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CyclicFn> {
    n.prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
            .prop_map(|v| CyclicFn::new(v.into_iter().map(|(a, b)| unit(a, b)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_composes(p in poly(4), a in rational(), b in rational()) {
        prop_assert_eq!(p.shift(&a).shift(&b), p.shift(&(a + b)));
    }

    #[test]
    fn shift_matches_evaluation(p in poly(4), a in rational(), t in rational()) {
        prop_assert_eq!(p.shift(&a).eval(&t), p.eval(&(t + a)));
    }

    #[test]
    fn binomial_round_trip(p in poly(5)) {
        prop_assert_eq!(p.to_binomial().to_monomial(), p);
    }

    #[test]
    fn integer_valued_matches_brute_force(
        coeffs in prop::collection::vec((-12i64..=12, prop::sample::select(vec![1i64, 2, 3, 4, 6])), 2..=4)
    ) {
        let p = Poly::new(coeffs.into_iter().map(|(n, d)| Rational::from_ratio(n, d)).collect()).unwrap();
        // a degree-s polynomial taking integer values at s+1 consecutive integers is integer-valued
        let brute = (-20..=20).all(|y| p.eval(&Rational::from_i64(y)).is_integer());
        prop_assert_eq!(p.is_integer_valued(), brute);
    }

    #[test]
    fn heisenberg_associative(g in heis(), h in heis(), k in heis()) {
        prop_assert_eq!(g.mul(&h).unwrap().mul(&k).unwrap(), g.mul(&h.mul(&k).unwrap()).unwrap());
    }

    #[test]
    fn heisenberg_reduce_is_canonical(g in heis(), gamma in (-5i64..5, -5i64..5, -5i64..5)) {
        let gamma = HeisPoint::from_ints(gamma.0, gamma.1, gamma.2);
        let moved = gamma.mul(&g).unwrap();
        // the representative depends only on the coset
        prop_assert_eq!(moved.reduce().0, g.reduce().0);
    }

    #[test]
    fn lifted_associative([g, h, k] in lifted_triple()) {
        prop_assert_eq!(g.mul(&h).unwrap().mul(&k).unwrap(), g.mul(&h.mul(&k).unwrap()).unwrap());
        prop_assert!(g.mul(&g.inv()).unwrap().is_identity());
    }

    #[test]
    fn lifted_reduce_is_canonical([g, h, _k] in lifted_triple()) {
        let (_, gamma) = h.reduce();
        let moved = gamma.mul(&g).unwrap();
        prop_assert!(gamma.in_lattice().unwrap());
        prop_assert_eq!(moved.reduce().0, g.reduce().0);
    }

    #[test]
    fn gowers_shift_invariant(f in bounded_fn(2..=24), c in -30i64..30, k in 2usize..=3) {
        let a = u_norm(&f, k).unwrap();
        let b = u_norm(&f.rotate(c), k).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn gowers_monotone(f in bounded_fn(1..=20), k in 1usize..=3) {
        prop_assert!(u_norm(&f, k).unwrap() <= u_norm(&f, k + 1).unwrap() + 1e-10);
    }

    #[test]
    fn partition_sums_to_one(u in 0.0f64..1.0) {
        let p = PartitionOfUnity::standard();
        prop_assert!((p.sum(u) - 1.0).abs() <= 1e-12);
        for m in 0..p.len() {
            let v = p.rho(m, u);
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }
}
