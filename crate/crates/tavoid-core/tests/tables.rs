//! The partial products Π(t − tᵢ) over the built-in lower node multisets
//! have known ultraspherical expansions in dimension 48; every coefficient
//! of the r = 9, 10, 11 stages is pinned here exactly.

use num_traits::Signed;
use tavoid_core::interpolate::{lower_nodes_t1, lower_nodes_t2, partial_products};
use tavoid_core::ratpoly::Rational;

const EXPANSIONS_FIRST: [(usize, &[&str]); 3] = [
    (9, &["107/336960", "9559/1684800", "1457/31104", "662371/2818800", "793877/1002240", "109123049/58631040", "2444141/808704", "1873655/582552", "296429/150336", "296429/575360"]),
    (10, &["37/2995200", "337/1123200", "984415/281428992", "1712633/67651200", "96599993/781747200", "584962/1374165", "1598663969/1504189440", "5878243/3106944", "651254513/288645120", "889287/575360", "3260719/7364608"]),
    (11, &["1/13478400", "3961/1758931200", "47/8794656", "-118957/811814400", "122059/1563494400", "376856011/32716120320", "231656467/3008378880", "399983395/1342199808", "439011349/577290240", "3260719/2589120", "16303595/14729216", "2075003/5523456"]),
];

const EXPANSIONS_SECOND: [(usize, &[&str]); 3] = [
    (9, &["7903/40435200", "371/105300", "47705/1617408", "15341599/101476800", "51317749/97718400", "677167211/527679360", "743869/336960", "12041729/4660416", "296429/167040", "296429/575360"]),
    (10, &["1981/48522240", "3983/5054400", "680701/93809664", "25583369/608860800", "79510417/469048320", "1585405927/3166076160", "331592191/300837888", "49704991/27962496", "118868029/57729024", "5039293/3452160", "3260719/7364608"]),
    (11, &["511/181958400", "40103/586310400", "328013/422143488", "40304803/7306329600", "391174091/14071449600", "30641555483/294445082880", "32981921/111421440", "98632555/149133312", "209575303/192430080", "296429/215760", "16303595/14729216", "2075003/5523456"]),
];

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn assert_table(
    nodes: &tavoid_core::interpolate::NodeMultiset,
    table: &[(usize, &[&str])],
    label: &str,
) {
    let pps = partial_products(nodes, 48).unwrap();
    for (r, expected) in table {
        let got = pps[*r].expansion.coeffs();
        assert_eq!(got.len(), expected.len(), "{label} r = {r}: wrong length");
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(
                got[i],
                q(want),
                "{label} r = {r}: coefficient g_{{{i},{r}}} disagrees"
            );
        }
    }
}

#[test]
fn first_lower_multiset_expansions() {
    assert_table(&lower_nodes_t1(), &EXPANSIONS_FIRST, "T1");
}

#[test]
fn second_lower_multiset_expansions() {
    assert_table(&lower_nodes_t2(), &EXPANSIONS_SECOND, "T2");
}

#[test]
fn partial_product_positivity() {
    // every stage through r = 10 (first multiset) resp. r = 11 (second) is
    // a nonnegative combination; the first multiset's final stage dips
    // negative only at index 3 — the excepted coefficient
    let pps = partial_products(&lower_nodes_t1(), 48).unwrap();
    for pp in &pps[..=10] {
        assert!(
            pp.expansion.coeffs().iter().all(|c| !c.is_negative()),
            "negative coefficient at stage r = {}",
            pp.r
        );
    }
    let negatives: Vec<usize> = pps[11]
        .expansion
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_negative())
        .map(|(i, _)| i)
        .collect();
    assert_eq!(negatives, [3]);

    // for the second multiset every stage entering the interpolant sum
    // (r ≤ 11) is nonnegative — the full product r = 12 is not used
    let pps = partial_products(&lower_nodes_t2(), 48).unwrap();
    for pp in &pps[..=11] {
        assert!(
            pp.expansion.coeffs().iter().all(|c| !c.is_negative()),
            "negative coefficient at stage r = {}",
            pp.r
        );
    }
}

#[test]
fn stage_polynomials_are_the_prefix_products() {
    use tavoid_core::ratpoly::RationalPoly;
    let nodes = lower_nodes_t1();
    let pps = partial_products(&nodes, 48).unwrap();
    assert_eq!(pps.len(), 13);
    assert_eq!(pps[0].poly, RationalPoly::one());
    assert_eq!(
        pps[12].poly,
        RationalPoly::from_roots(nodes.nodes()),
        "full stage is the monic node product"
    );
    for pp in &pps {
        assert_eq!(pp.poly.degree(), if pp.r == 0 { Some(0) } else { Some(pp.r) });
    }
}
