//! Decimal-kind pipeline against externally computed high-precision
//! anchors: Gaussian and odd-Riesz energies, certificate pinching, and
//! divided-difference positivity for absolutely monotone potentials.

use tavoid_core::certify::{
    lower_certificate_dec, sandwich_dec, upper_certificate_dec, verify_certificate_dec,
};
use tavoid_core::designs::{p48, P48_POINTS};
use tavoid_core::interpolate::{divided_differences, lower_nodes_t1, AvoidSet};
use tavoid_core::potentials::dec::Dec;
use tavoid_core::potentials::Potential;

// 60-digit reference energies of the built-in design, computed outside
// this crate with independent big-float arithmetic
const E_GAUSS_HALF: &str = "19484637.50060602442406929824169355335992827828011751675";
const E_GAUSS_ONE: &str = "7395293.404431010433135074293079605287570947581864815055";
const E_GAUSS_TWO: &str = "1133518.839784984565396699680489467764387259465467644428";
const E_RIESZ_THREE: &str =
    "19320464.5236852837516366621816606885435098662323438341386097";

fn close(a: &Dec, b: &Dec, exp: i64) -> bool {
    a.sub(b).abs() < Dec::pow10(exp, 60)
}

#[test]
fn design_energies_match_external_anchors() {
    let d = p48();
    let cases = [
        ("gauss:sigma=1/2", E_GAUSS_HALF),
        ("gauss:sigma=1", E_GAUSS_ONE),
        ("gauss:sigma=2", E_GAUSS_TWO),
        ("riesz:s=3", E_RIESZ_THREE),
    ];
    for (spec, anchor) in cases {
        let h = Potential::parse(spec).unwrap();
        let e = d.energy_dec(&h, 50).unwrap();
        let want = Dec::parse(anchor, 60).unwrap();
        // 50 working digits on a ~10⁷ value leave ~10⁻⁴² of slack
        assert!(close(&e, &want, -40), "{spec}: {e}");
    }
}

#[test]
fn gaussian_certificates_pinch_the_energy() {
    for (spec, anchor) in [
        ("gauss:sigma=1/2", E_GAUSS_HALF),
        ("gauss:sigma=1", E_GAUSS_ONE),
        ("gauss:sigma=2", E_GAUSS_TWO),
    ] {
        let h = Potential::parse(spec).unwrap();
        let want = Dec::parse(anchor, 60).unwrap();
        for avoid in [AvoidSet::t1(), AvoidSet::t2()] {
            let c = lower_certificate_dec(&h, &avoid, 48, P48_POINTS, 50).unwrap();
            assert!(
                c.is_valid(),
                "{spec} lower {}: {:?}",
                avoid.name(),
                c.failed_checks().collect::<Vec<_>>()
            );
            assert!(close(&c.bound, &want, -20), "{spec}: bound {}", c.bound);
        }
        let c = upper_certificate_dec(&h, &AvoidSet::t1(), 48, P48_POINTS, 50).unwrap();
        assert!(c.is_valid());
        assert!(close(&c.bound, &want, -20));
    }
}

#[test]
fn odd_riesz_lower_bound_is_sharp() {
    // s = 3 has no exact kind; the decimal lower certificates still close
    // the gap against the design energy
    let h = Potential::parse("riesz:s=3").unwrap();
    let want = Dec::parse(E_RIESZ_THREE, 60).unwrap();
    let c = lower_certificate_dec(&h, &AvoidSet::t2(), 48, P48_POINTS, 50).unwrap();
    assert!(
        c.is_valid(),
        "{:?}",
        c.failed_checks().collect::<Vec<_>>()
    );
    assert!(close(&c.bound, &want, -20), "bound {}", c.bound);
    assert!(verify_certificate_dec(&c).passed());
}

#[test]
fn divided_differences_of_abs_monotone_potentials_are_nonneg() {
    // absolute monotonicity forces every confluent divided difference to be
    // nonnegative; at 50 digits the smallest entries stay far above noise
    let nodes = lower_nodes_t1();
    for spec in ["gauss:sigma=1/2", "gauss:sigma=4", "riesz:s=3"] {
        let h = Potential::parse(spec).unwrap();
        let table = divided_differences::<Dec, _>(&nodes, &h, 50).unwrap();
        for (j, v) in table.leading_column().iter().enumerate() {
            assert!(!v.is_negative(), "{spec}: dd order {j} is {v}");
        }
    }
}

#[test]
fn sandwich_holds_at_reduced_precision() {
    for prec in [30, 40, 50] {
        let h = Potential::parse("gauss:sigma=1").unwrap();
        let r = sandwich_dec(&h, prec).unwrap();
        assert!(r.all_valid, "precision {prec}");
        assert!(r.coincide, "precision {prec}");
    }
}
