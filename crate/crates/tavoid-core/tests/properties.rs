//! Structure-level properties with randomized inputs: polynomial ring laws,
//! expansion round-trips, and interpolation exactness on arbitrary node
//! multisets. No numeric anchors here, only identities.

use num_traits::Zero;
use proptest::collection::vec;
use proptest::prelude::*;

use tavoid_core::gegenbauer::GegenbauerBasis;
use tavoid_core::interpolate::{hermite_interpolant, interpolant_poly, NodeMultiset};
use tavoid_core::potentials::{DerivativeOracle, PotentialError};
use tavoid_core::ratpoly::{rat, Rational, RationalPoly};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=16).prop_map(|(p, q)| rat(p, q))
}

fn poly(max_len: usize) -> impl Strategy<Value = RationalPoly> {
    vec(rational(), 0..=max_len).prop_map(RationalPoly::from_coeffs)
}

/// Nodes restricted to sixths of [−1, 1], coarse enough that repeated
/// (confluent) nodes occur often.
fn node_multiset() -> impl Strategy<Value = NodeMultiset> {
    vec(-6i64..=6, 1..=9).prop_map(|mut raw| {
        raw.sort_unstable();
        let nodes: Vec<Rational> = raw.into_iter().map(|p| rat(p, 6)).collect();
        NodeMultiset::new(nodes).unwrap()
    })
}

struct PolyOracle(RationalPoly);

impl DerivativeOracle<Rational> for PolyOracle {
    fn derivative(
        &self,
        t: &Rational,
        order: usize,
        _ctx: (),
    ) -> Result<Rational, PotentialError> {
        Ok(self.0.derivative_n(order).eval(t))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_distributes(a in poly(8), b in poly(8), c in poly(8)) {
        let lhs = &(&a + &b) * &c;
        let rhs = &(&a * &c) + &(&b * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_satisfies_leibniz(a in poly(7), b in poly(7)) {
        let lhs = (&a * &b).derivative_n(1);
        let rhs = &(&a.derivative_n(1) * &b) + &(&a * &b.derivative_n(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_a_ring_morphism(a in poly(8), b in poly(8), x in rational()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn expansion_round_trips(p in poly(15), dim in 3u32..=60) {
        let degree = p.degree().unwrap_or(0);
        let basis = GegenbauerBasis::new(dim, degree).unwrap();
        let e = basis.expand(&p).unwrap();
        prop_assert_eq!(basis.assemble(&e), p);
    }

    #[test]
    fn interpolation_is_projection(nodes in node_multiset(), p in poly(12)) {
        // truncating the polynomial to degree < node count makes it a fixed
        // point of interpolation on any multiset
        let n = nodes.len();
        let truncated = RationalPoly::from_coeffs(
            p.coeffs().iter().take(n).cloned().collect::<Vec<_>>(),
        );
        let ip = hermite_interpolant::<Rational, _>(&nodes, &PolyOracle(truncated.clone()), ())
            .unwrap();
        prop_assert_eq!(interpolant_poly(&ip), truncated);
    }

    #[test]
    fn interpolation_error_vanishes_to_multiplicity(
        nodes in node_multiset(),
        p in poly(14),
    ) {
        let ip = hermite_interpolant::<Rational, _>(&nodes, &PolyOracle(p.clone()), ()).unwrap();
        let f = interpolant_poly(&ip);
        let err = &p - &f;
        for (t, mult) in nodes.distinct() {
            for k in 0..mult {
                prop_assert!(
                    err.derivative_n(k).eval(&t).is_zero(),
                    "error^({k}) at {t} nonzero"
                );
            }
        }
    }

    #[test]
    fn product_poly_is_monic_of_full_degree(nodes in node_multiset()) {
        let w = nodes.product_poly();
        prop_assert_eq!(w.degree(), Some(nodes.len()));
        prop_assert_eq!(w.leading().cloned(), Some(rat(1, 1)));
        for (t, mult) in nodes.distinct() {
            for k in 0..mult {
                prop_assert!(w.derivative_n(k).eval(&t).is_zero());
            }
        }
    }
}
