//! The one-shot reproduction suite: every published number the library is
//! expected to reproduce, re-derived from scratch and compared against the
//! frozen copies below. Zero inputs; the tables ship inside the binary.

use num_traits::Zero;
use serde::Serialize;

use tavoid_core::certify::{lower_certificate_exact, sandwich_dec, sandwich_exact};
use tavoid_core::designs::{p48, solve_distribution, P48_POINTS};
use tavoid_core::gegenbauer::GegenbauerBasis;
use tavoid_core::interpolate::{lower_nodes_t1, lower_nodes_t2, partial_products, AvoidSet};
use tavoid_core::potentials::Potential;
use tavoid_core::ratpoly::{rat_int, Rational, RationalPoly};

/// Published expansion coefficients of the r = 9, 10, 11 node-product
/// stages over the first lower multiset (dimension 48) …
const EXPANSIONS_FIRST: [(usize, &[&str]); 3] = [
    (9, &["107/336960", "9559/1684800", "1457/31104", "662371/2818800", "793877/1002240", "109123049/58631040", "2444141/808704", "1873655/582552", "296429/150336", "296429/575360"]),
    (10, &["37/2995200", "337/1123200", "984415/281428992", "1712633/67651200", "96599993/781747200", "584962/1374165", "1598663969/1504189440", "5878243/3106944", "651254513/288645120", "889287/575360", "3260719/7364608"]),
    (11, &["1/13478400", "3961/1758931200", "47/8794656", "-118957/811814400", "122059/1563494400", "376856011/32716120320", "231656467/3008378880", "399983395/1342199808", "439011349/577290240", "3260719/2589120", "16303595/14729216", "2075003/5523456"]),
];

/// … and over the second lower multiset.
const EXPANSIONS_SECOND: [(usize, &[&str]); 3] = [
    (9, &["7903/40435200", "371/105300", "47705/1617408", "15341599/101476800", "51317749/97718400", "677167211/527679360", "743869/336960", "12041729/4660416", "296429/167040", "296429/575360"]),
    (10, &["1981/48522240", "3983/5054400", "680701/93809664", "25583369/608860800", "79510417/469048320", "1585405927/3166076160", "331592191/300837888", "49704991/27962496", "118868029/57729024", "5039293/3452160", "3260719/7364608"]),
    (11, &["511/181958400", "40103/586310400", "328013/422143488", "40304803/7306329600", "391174091/14071449600", "30641555483/294445082880", "32981921/111421440", "98632555/149133312", "209575303/192430080", "296429/215760", "16303595/14729216", "2075003/5523456"]),
];

/// Inner-product counts of the reference code from one point's view.
const DISTRIBUTION: [(&str, u64); 8] = [
    ("-1", 1),
    ("-1/2", 36_848),
    ("-1/3", 1_678_887),
    ("-1/6", 12_608_784),
    ("0", 23_766_960),
    ("1/6", 12_608_784),
    ("1/3", 1_678_887),
    ("1/2", 36_848),
];

#[derive(Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub precision: u32,
    pub items: Vec<Item>,
    pub all_passed: bool,
}

fn item(name: &str, passed: bool, detail: impl Into<String>) -> Item {
    Item {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn table_item(
    name: &str,
    nodes: &tavoid_core::interpolate::NodeMultiset,
    table: &[(usize, &[&str])],
    corrupt: bool,
) -> Item {
    let mut expected: Vec<(usize, Vec<Rational>)> = table
        .iter()
        .map(|(r, row)| (*r, row.iter().map(|s| s.parse().unwrap()).collect()))
        .collect();
    if corrupt {
        // test hook: a deliberately wrong target must be reported as FAIL
        expected[0].1[0] += rat_int(1);
    }
    let pps = partial_products(nodes, 48).expect("built-in nodes expand");
    let mut mismatches = Vec::new();
    let mut compared = 0usize;
    for (r, row) in &expected {
        let got = pps[*r].expansion.coeffs();
        for (i, want) in row.iter().enumerate() {
            compared += 1;
            if &got[i] != want {
                mismatches.push(format!("g_{{{i},{r}}}"));
            }
        }
    }
    item(
        name,
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{compared} coefficients reproduced exactly")
        } else {
            format!("mismatch at {}", mismatches.join(", "))
        },
    )
}

fn distribution_item() -> Item {
    let support: Vec<Rational> = DISTRIBUTION.iter().map(|(s, _)| s.parse().unwrap()).collect();
    match solve_distribution(&support, P48_POINTS, 11, true, 48) {
        Ok(d) => {
            let ok = DISTRIBUTION
                .iter()
                .all(|(s, count)| d.entries().get(&s.parse().unwrap()) == Some(count));
            item(
                "distance distribution solve",
                ok && d == p48(),
                format!("support of {} classes, N = {P48_POINTS}", DISTRIBUTION.len()),
            )
        }
        Err(e) => item("distance distribution solve", false, format!("solver: {e}")),
    }
}

fn moments_item() -> Item {
    let d = p48();
    let basis = match GegenbauerBasis::new(48, 14) {
        Ok(b) => b,
        Err(e) => return item("moments vanish through strength 11", false, format!("{e}")),
    };
    let zero_through_eleven = (1..=11).all(|i| d.moment(&basis, i).is_zero());
    let thirteen_fourteen = d.moment(&basis, 13).is_zero() && d.moment(&basis, 14).is_zero();
    let twelve_nonzero = !d.moment(&basis, 12).is_zero();
    item(
        "moments vanish through strength 11",
        zero_through_eleven && thirteen_fourteen && twelve_nonzero,
        "M_1..M_11 = 0, M_13 = M_14 = 0, M_12 ≠ 0",
    )
}

fn quadrature_item() -> Item {
    let d = p48();
    let q = match d.quadrature(48) {
        Ok(q) => q,
        Err(e) => return item("quadrature rule exact through degree 11", false, format!("{e}")),
    };
    let exact = (0..=11).all(|k| q.residual(&RationalPoly::monomial(rat_int(1), k)).is_zero());
    let obstructed = !q.residual(&RationalPoly::monomial(rat_int(1), 12)).is_zero();
    let normalized = q.weight_sum() == rat_int(1);
    item(
        "quadrature rule exact through degree 11",
        exact && obstructed && normalized,
        "residuals 0 on t^0..t^11, nonzero on t^12, weights sum to 1",
    )
}

fn exact_lower_item(spec: &str) -> Item {
    let name = format!("{spec} lower bounds equal the design energy");
    let h = Potential::parse(spec).expect("built-in spec");
    let energy = match p48().energy(&h) {
        Ok(e) => e,
        Err(e) => return item(&name, false, format!("energy: {e}")),
    };
    for avoid in [AvoidSet::t1(), AvoidSet::t2()] {
        match lower_certificate_exact(&h, &avoid, 48, P48_POINTS) {
            Ok(c) => {
                if !c.is_valid() || c.bound != energy || c.gap != Some(rat_int(0)) {
                    return item(&name, false, format!("{} bound off", avoid.name()));
                }
            }
            Err(e) => return item(&name, false, format!("{e}")),
        }
    }
    item(&name, true, format!("both avoid sets, exact gap 0, energy {energy}"))
}

fn exact_sandwich_item(spec: &str) -> Item {
    let name = format!("{spec} sandwich equalities");
    let h = Potential::parse(spec).expect("built-in spec");
    match sandwich_exact(&h) {
        Ok(r) => item(
            &name,
            r.coincide && r.all_valid,
            format!("three bounds equal energy {}", r.energy),
        ),
        Err(e) => item(&name, false, format!("{e}")),
    }
}

fn dec_sandwich_item(spec: &str, prec: u32) -> Item {
    let name = format!("{spec} sandwich equalities at {prec} digits");
    let h = Potential::parse(spec).expect("built-in spec");
    match sandwich_dec(&h, prec) {
        Ok(r) => item(
            &name,
            r.coincide && r.all_valid,
            format!("three bounds within tolerance of energy {}", r.energy),
        ),
        Err(e) => item(&name, false, format!("{e}")),
    }
}

/// Runs the whole checklist. `corrupt` flips one frozen coefficient first,
/// proving the harness can fail.
pub fn run(prec: u32, corrupt: bool) -> Report {
    let mut items = Vec::new();
    items.push(table_item(
        "coefficient table, first avoid set (33 rationals)",
        &lower_nodes_t1(),
        &EXPANSIONS_FIRST,
        corrupt,
    ));
    items.push(table_item(
        "coefficient table, second avoid set (33 rationals)",
        &lower_nodes_t2(),
        &EXPANSIONS_SECOND,
        false,
    ));
    items.push(distribution_item());
    items.push(moments_item());
    items.push(quadrature_item());
    items.push(exact_lower_item("riesz:s=2"));
    items.push(exact_lower_item("riesz:s=4"));
    items.push(exact_sandwich_item("poly:[0,0,0,0,0,0,0,0,0,0,0,0,1]"));
    items.push(dec_sandwich_item("gauss:sigma=1/2", prec));
    items.push(dec_sandwich_item("gauss:sigma=1", prec));
    items.push(dec_sandwich_item("gauss:sigma=2", prec));
    let all_passed = items.iter().all(|i| i.passed);
    Report {
        precision: prec,
        items,
        all_passed,
    }
}
