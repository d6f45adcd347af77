//! Exact-kind end-to-end facts: the reference distribution and its
//! quadrature rule, frozen rational energies, and the interpolation
//! machinery reproducing polynomials bit for bit.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tavoid_core::certify::{lower_certificate_exact, upper_certificate_exact};
use tavoid_core::designs::{p48, solve_distribution, P48_POINTS};
use tavoid_core::gegenbauer::{GegenbauerBasis, WeightMoments};
use tavoid_core::interpolate::{
    hermite_interpolant, interpolant_poly, lower_nodes_t1, lower_nodes_t2, AvoidSet,
};
use tavoid_core::potentials::Potential;
use tavoid_core::ratpoly::{rat, rat_int, Rational, RationalPoly};

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> RationalPoly {
    let coeffs: Vec<Rational> = (0..=degree)
        .map(|_| rat(rng.gen_range(-50i64..=50), rng.gen_range(1i64..=12)))
        .collect();
    RationalPoly::from_coeffs(coeffs)
}

#[test]
fn distribution_solve_returns_reference_counts() {
    let support = [
        rat_int(-1),
        rat(-1, 2),
        rat(1, 2),
        rat(-1, 3),
        rat(1, 3),
        rat(-1, 6),
        rat(1, 6),
        rat_int(0),
    ];
    let d = solve_distribution(&support, P48_POINTS, 11, true, 48).unwrap();
    assert_eq!(d, p48());
    assert_eq!(d.entries().get(&rat_int(-1)), Some(&1));
    assert_eq!(d.entries().get(&rat(1, 2)), Some(&36_848));
    assert_eq!(d.entries().get(&rat(-1, 2)), Some(&36_848));
    assert_eq!(d.entries().get(&rat(1, 3)), Some(&1_678_887));
    assert_eq!(d.entries().get(&rat(1, 6)), Some(&12_608_784));
    assert_eq!(d.entries().get(&rat_int(0)), Some(&23_766_960));
}

#[test]
fn reference_moments_vanish_through_eleven() {
    let d = p48();
    let basis = GegenbauerBasis::new(48, 14).unwrap();
    for i in 1..=11 {
        assert!(d.moment(&basis, i).is_zero(), "M_{i} should vanish");
    }
    // antipodality forces the odd thirteenth moment to vanish as well, and
    // the fourteenth happens to vanish too; twelve is the first obstruction
    assert!(d.moment(&basis, 13).is_zero());
    assert!(d.moment(&basis, 14).is_zero());
    assert!(!d.moment(&basis, 12).is_zero());
    assert_eq!(d.strength(48).unwrap(), 11);
}

#[test]
fn quadrature_rule_exact_through_degree_eleven() {
    let d = p48();
    let q = d.quadrature(48).unwrap();
    assert_eq!(q.exactness(), 11);
    assert_eq!(q.weight_sum(), rat_int(1));
    for k in 0..=11 {
        assert!(
            q.residual(&RationalPoly::monomial(rat_int(1), k)).is_zero(),
            "t^{k} should integrate exactly"
        );
    }
    assert!(!q.residual(&RationalPoly::monomial(rat_int(1), 12)).is_zero());

    // the weighted abscissa sum and the weight-measure integral agree on 20
    // random polynomials of degree ≤ 11
    let mu = WeightMoments::new(48, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(4801);
    for _ in 0..20 {
        let p = random_poly(&mut rng, 11);
        let direct: Rational = q
            .points()
            .iter()
            .map(|(x, w)| p.eval(x) * w)
            .sum();
        assert_eq!(direct, mu.integrate(&p));
        assert!(q.residual(&p).is_zero());
    }
}

#[test]
fn frozen_rational_energies() {
    let d = p48();
    let r2 = Potential::parse("riesz:s=2").unwrap();
    let r4 = Potential::parse("riesz:s=4").unwrap();
    let mut coeffs = vec![rat_int(0); 13];
    coeffs[12] = rat_int(1);
    let p12 = Potential::poly_from_shifted(coeffs).unwrap();
    assert_eq!(d.energy(&r2).unwrap(), rat(22_503_930_761, 840));
    assert_eq!(d.energy(&r4).unwrap(), rat(9_891_249_715_919, 705_600));
    assert_eq!(d.energy(&p12).unwrap(), rat(158_582_230_423, 972));
}

#[test]
fn all_exact_bounds_pinch_the_design_energy() {
    let d = p48();
    let mut coeffs = vec![rat_int(0); 13];
    coeffs[12] = rat_int(1);
    let potentials = [
        Potential::parse("riesz:s=2").unwrap(),
        Potential::parse("riesz:s=4").unwrap(),
        Potential::poly_from_shifted(coeffs).unwrap(),
    ];
    for h in &potentials {
        let energy = d.energy(h).unwrap();
        for avoid in [AvoidSet::t1(), AvoidSet::t2()] {
            let c = lower_certificate_exact(h, &avoid, 48, P48_POINTS).unwrap();
            assert!(c.is_valid(), "{} lower {}", h.spec_string(), avoid.name());
            assert_eq!(c.bound, energy);
            assert_eq!(c.gap, Some(rat_int(0)));
        }
        if h.finite_at_one() {
            let c = upper_certificate_exact(h, &AvoidSet::t1(), 48, P48_POINTS).unwrap();
            assert!(c.is_valid());
            assert_eq!(c.bound, energy);
        }
    }
}

#[test]
fn hermite_reproduces_polynomials_bit_exactly() {
    // a degree ≤ 11 polynomial is its own interpolant on any 12-node multiset
    let mut rng = ChaCha8Rng::seed_from_u64(1148);
    for nodes in [lower_nodes_t1(), lower_nodes_t2()] {
        for _ in 0..50 {
            let degree = rng.gen_range(0..=11);
            let p = random_poly(&mut rng, degree);
            let h = poly_oracle(&p);
            let ip = hermite_interpolant::<Rational, _>(&nodes, &h, ()).unwrap();
            assert_eq!(interpolant_poly(&ip), p);
        }
    }
}

/// Wraps an arbitrary polynomial (no sign constraints) as a derivative
/// oracle, so interpolation can be exercised outside the potential builtins.
struct PolyOracle(RationalPoly);

fn poly_oracle(p: &RationalPoly) -> PolyOracle {
    PolyOracle(p.clone())
}

impl tavoid_core::potentials::DerivativeOracle<Rational> for PolyOracle {
    fn derivative(
        &self,
        t: &Rational,
        order: usize,
        _ctx: (),
    ) -> Result<Rational, tavoid_core::potentials::PotentialError> {
        Ok(self.0.derivative_n(order).eval(t))
    }
}

#[test]
fn interpolant_agrees_with_dense_confluent_solve() {
    // independent route: write the Hermite conditions as a dense linear
    // system in the monomial coefficients and eliminate naively
    let h = Potential::parse("riesz:s=4").unwrap();
    for nodes in [lower_nodes_t1(), lower_nodes_t2()] {
        let ip = hermite_interpolant::<Rational, _>(&nodes, &h, ()).unwrap();
        let n = nodes.len();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        for (t, mult) in nodes.distinct() {
            for k in 0..mult {
                // d^k/dt^k t^j at t, coefficient of c_j
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    row.push(RationalPoly::monomial(rat_int(1), j).derivative_n(k).eval(&t));
                }
                rows.push(row);
                rhs.push(h.eval_rational(&t, k).unwrap());
            }
        }
        let solved = gauss_solve(rows, rhs);
        assert_eq!(solved, ip.coeffs());
    }
}

fn gauss_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = &a[r][col] / &inv;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    (0..n).map(|i| &b[i] / &a[i][i]).collect()
}
