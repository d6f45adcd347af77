//! Hermite interpolation at rational node multisets, plus the sign analysis
//! of the associated node products.
//!
//! Nodes are always rational and sorted ascending; a node repeated m times
//! imposes derivative matching up to order m−1 there. Divided-difference
//! tables use the confluent rule — a window of coincident nodes takes
//! h^{(j)}(x)/j! from the derivative oracle, everything else is the usual
//! quotient — and are generic over the scalar kind, so exact-rational and
//! decimal-float interpolants come from the same code path.
//!
//! The sign side: for a node product ω(t) = Π(t − tᵢ), every interval of
//! [−1,1] outside the avoided open set contains only even-multiplicity nodes
//! in its interior (that is what the built-in multisets are designed for),
//! so the sign of ω on each complement interval is decided combinatorially
//! and certified by one exact evaluation — no numerics involved.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::gegenbauer::{GegenbauerBasis, GegenbauerError, GegenbauerExpansion};
use crate::potentials::{DerivativeOracle, PotentialError};
use crate::ratpoly::{rat, rat_int, Rational, RationalPoly};

/// Hard cap on multiset size; keeps derivative orders and table sizes sane.
pub const MAX_NODES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpolateError {
    #[error("node multiset is empty")]
    Empty,
    #[error("node multiset has {len} entries, maximum is {MAX_NODES}")]
    TooMany { len: usize },
    #[error("nodes must be sorted ascending")]
    NotAscending,
    #[error("node {t} lies outside [-1, 1]")]
    OutOfRange { t: Rational },
    #[error("avoided interval ({lo}, {hi}) is invalid")]
    BadInterval { lo: Rational, hi: Rational },
    #[error("avoided intervals must be disjoint and sorted")]
    OverlappingIntervals,
    #[error(transparent)]
    Oracle(#[from] PotentialError),
    #[error(transparent)]
    Basis(#[from] GegenbauerError),
}

/// Sorted multiset of interpolation nodes in [−1, 1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMultiset {
    nodes: Vec<Rational>,
}

impl NodeMultiset {
    pub fn new(nodes: Vec<Rational>) -> Result<Self, InterpolateError> {
        if nodes.is_empty() {
            return Err(InterpolateError::Empty);
        }
        if nodes.len() > MAX_NODES {
            return Err(InterpolateError::TooMany { len: nodes.len() });
        }
        for w in nodes.windows(2) {
            if w[0] > w[1] {
                return Err(InterpolateError::NotAscending);
            }
        }
        let one = rat_int(1);
        for t in &nodes {
            if t < &(-one.clone()) || t > &one {
                return Err(InterpolateError::OutOfRange { t: t.clone() });
            }
        }
        Ok(NodeMultiset { nodes })
    }

    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn multiplicity(&self, t: &Rational) -> usize {
        self.nodes.iter().filter(|x| *x == t).count()
    }

    /// Distinct nodes with multiplicities, ascending.
    pub fn distinct(&self) -> Vec<(Rational, usize)> {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for t in &self.nodes {
            match out.last_mut() {
                Some((last, m)) if last == t => *m += 1,
                _ => out.push((t.clone(), 1)),
            }
        }
        out
    }

    pub fn max_multiplicity(&self) -> usize {
        self.distinct().into_iter().map(|(_, m)| m).max().unwrap_or(0)
    }

    /// ω(t) = Π (t − tᵢ), the full monic node product.
    pub fn product_poly(&self) -> RationalPoly {
        RationalPoly::from_roots(&self.nodes)
    }
}

fn nodes_from_i64(pairs: &[(i64, i64)]) -> NodeMultiset {
    let nodes = pairs.iter().map(|&(p, q)| rat(p, q)).collect();
    NodeMultiset::new(nodes).expect("built-in node multiset is valid")
}

/// Lower-bound nodes adapted to avoiding (−1/3,−1/6) ∪ (1/6,1/3):
/// doubles at −1, −1/2, 0, 1/2 and simple nodes at the avoided endpoints.
pub fn lower_nodes_t1() -> NodeMultiset {
    nodes_from_i64(&[
        (-1, 1),
        (-1, 1),
        (-1, 2),
        (-1, 2),
        (-1, 3),
        (-1, 6),
        (0, 1),
        (0, 1),
        (1, 6),
        (1, 3),
        (1, 2),
        (1, 2),
    ])
}

/// Lower-bound nodes adapted to avoiding (−1/2,−1/3) ∪ (1/3,1/2):
/// doubles at −1, −1/6, 0, 1/6.
pub fn lower_nodes_t2() -> NodeMultiset {
    nodes_from_i64(&[
        (-1, 1),
        (-1, 1),
        (-1, 2),
        (-1, 3),
        (-1, 6),
        (-1, 6),
        (0, 1),
        (0, 1),
        (1, 6),
        (1, 6),
        (1, 3),
        (1, 2),
    ])
}

/// Upper-bound nodes for the first avoided set: simple nodes at ±1 and the
/// avoided endpoints, doubles at ±1/2 and 0.
pub fn upper_nodes_t1() -> NodeMultiset {
    nodes_from_i64(&[
        (-1, 1),
        (-1, 2),
        (-1, 2),
        (-1, 3),
        (-1, 6),
        (0, 1),
        (0, 1),
        (1, 6),
        (1, 3),
        (1, 2),
        (1, 2),
        (1, 1),
    ])
}

/// A finite union of open intervals of forbidden inner products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidSet {
    name: String,
    intervals: Vec<(Rational, Rational)>,
}

impl AvoidSet {
    pub fn new(
        name: &str,
        intervals: Vec<(Rational, Rational)>,
    ) -> Result<Self, InterpolateError> {
        let one = rat_int(1);
        for (lo, hi) in &intervals {
            if lo >= hi || lo < &(-one.clone()) || hi > &one {
                return Err(InterpolateError::BadInterval {
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
            }
        }
        for w in intervals.windows(2) {
            if w[0].1 > w[1].0 {
                return Err(InterpolateError::OverlappingIntervals);
            }
        }
        Ok(AvoidSet {
            name: String::from(name),
            intervals,
        })
    }

    /// (−1/3, −1/6) ∪ (1/6, 1/3).
    pub fn t1() -> Self {
        AvoidSet::new("T1", vec![(rat(-1, 3), rat(-1, 6)), (rat(1, 6), rat(1, 3))])
            .expect("built-in avoid set")
    }

    /// (−1/2, −1/3) ∪ (1/3, 1/2).
    pub fn t2() -> Self {
        AvoidSet::new("T2", vec![(rat(-1, 2), rat(-1, 3)), (rat(1, 3), rat(1, 2))])
            .expect("built-in avoid set")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    /// Strict interior membership (the forbidden region is open).
    pub fn contains(&self, t: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo < t && t < hi)
    }

    /// Closed intervals making up [−1, 1] minus the avoided set, ascending.
    pub fn complement(&self) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        let mut lo = rat_int(-1);
        for (a, b) in &self.intervals {
            if &lo <= a {
                out.push((lo.clone(), a.clone()));
            }
            lo = b.clone();
        }
        if lo <= rat_int(1) {
            out.push((lo, rat_int(1)));
        }
        out
    }
}

/// Full confluent divided-difference table over scalar kind `S`.
/// `rows[j][i]` holds h[tᵢ,…,tᵢ₊ⱼ].
pub struct DivDiffTable<S> {
    nodes: Vec<Rational>,
    rows: Vec<Vec<S>>,
}

impl<S: crate::scalar::Scalar> DivDiffTable<S> {
    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.rows[j][i]
    }

    /// Newton coefficients h[t₀,…,tⱼ] for j = 0..n−1.
    pub fn leading_column(&self) -> Vec<S> {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }
}

fn factorial(k: usize) -> Rational {
    let mut f = rat_int(1);
    for j in 2..=k as i64 {
        f *= rat_int(j);
    }
    f
}

/// Builds the confluent divided-difference table of `h` at `nodes`: windows
/// of coincident nodes read h^{(j)}(x)/j! from the oracle, all other entries
/// are exact quotients of the previous row.
pub fn divided_differences<S, O>(
    nodes: &NodeMultiset,
    h: &O,
    ctx: S::Ctx,
) -> Result<DivDiffTable<S>, InterpolateError>
where
    S: crate::scalar::Scalar,
    O: DerivativeOracle<S>,
{
    let xs = nodes.nodes();
    let n = xs.len();
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(n);
    let mut row0 = Vec::with_capacity(n);
    for x in xs {
        row0.push(h.derivative(x, 0, ctx)?);
    }
    rows.push(row0);
    for j in 1..n {
        let mut row = Vec::with_capacity(n - j);
        for i in 0..n - j {
            let entry = if xs[i + j] == xs[i] {
                let d = h.derivative(&xs[i], j, ctx)?;
                d.div(&S::from_rational(&factorial(j), ctx))
            } else {
                let denom = S::from_rational(&(&xs[i + j] - &xs[i]), ctx);
                rows[j - 1][i + 1].sub(&rows[j - 1][i]).div(&denom)
            };
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(DivDiffTable {
        nodes: xs.to_vec(),
        rows,
    })
}

/// Hermite interpolant in Newton form, with expanded monomial coefficients.
pub struct Interpolant<S> {
    nodes: NodeMultiset,
    newton: Vec<S>,
    coeffs: Vec<S>,
}

impl<S: crate::scalar::Scalar> Interpolant<S> {
    pub fn nodes(&self) -> &NodeMultiset {
        &self.nodes
    }

    pub fn newton(&self) -> &[S] {
        &self.newton
    }

    /// Ascending monomial coefficients, length = node count.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree_bound(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Newton-form evaluation (exact for rational scalars).
    pub fn eval(&self, t: &Rational, ctx: S::Ctx) -> S {
        let tt = S::from_rational(t, ctx);
        let mut acc = self.newton.last().cloned().unwrap_or_else(|| S::zero(ctx));
        for j in (0..self.newton.len() - 1).rev() {
            let x = S::from_rational(&self.nodes.nodes()[j], ctx);
            acc = acc.mul(&tt.sub(&x)).add(&self.newton[j]);
        }
        acc
    }

    /// k-th derivative at t, from the monomial form.
    pub fn derivative_at(&self, t: &Rational, k: usize, ctx: S::Ctx) -> S {
        let mut d: Vec<S> = self.coeffs.clone();
        for _ in 0..k {
            d = d
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&S::from_rational(&rat_int(i as i64), ctx)))
                .collect();
        }
        let tt = S::from_rational(t, ctx);
        let mut acc = S::zero(ctx);
        for c in d.iter().rev() {
            acc = acc.mul(&tt).add(c);
        }
        acc
    }
}

/// Hermite interpolant of `h` at `nodes`: matches h^{(k)}(tᵢ) for every node
/// of multiplicity > k. Exact on polynomials of degree < node count.
pub fn hermite_interpolant<S, O>(
    nodes: &NodeMultiset,
    h: &O,
    ctx: S::Ctx,
) -> Result<Interpolant<S>, InterpolateError>
where
    S: crate::scalar::Scalar,
    O: DerivativeOracle<S>,
{
    let table = divided_differences(nodes, h, ctx)?;
    let newton = table.leading_column();
    let xs = nodes.nodes();
    // expand Σ newton[j]·Π_{l<j}(t − x_l) into monomial coefficients
    let n = xs.len();
    let mut coeffs = vec![S::zero(ctx); n];
    let mut basis = vec![S::zero(ctx); n];
    basis[0] = S::one(ctx);
    let mut basis_len = 1usize;
    for (j, dd) in newton.iter().enumerate() {
        for k in 0..basis_len {
            coeffs[k] = coeffs[k].add(&dd.mul(&basis[k]));
        }
        if j + 1 < n {
            // basis ← basis · (t − x_j)
            let x = S::from_rational(&xs[j], ctx);
            let mut next = vec![S::zero(ctx); n];
            for k in 0..basis_len {
                next[k + 1] = next[k + 1].add(&basis[k]);
                next[k] = next[k].sub(&basis[k].mul(&x));
            }
            basis = next;
            basis_len += 1;
        }
    }
    Ok(Interpolant {
        nodes: nodes.clone(),
        newton,
        coeffs,
    })
}

/// Exact-kind interpolant as a plain polynomial.
pub fn interpolant_poly(ip: &Interpolant<Rational>) -> RationalPoly {
    RationalPoly::from_coeffs(ip.coeffs().to_vec())
}

/// Partial node product Π_{i<r}(t − tᵢ) with its ultraspherical expansion.
pub struct PartialProduct {
    pub r: usize,
    pub poly: RationalPoly,
    pub expansion: GegenbauerExpansion,
}

/// All partial products r = 0..=len (r = 0 is the constant 1, r = len the
/// full node product), expanded for dimension `dim`.
pub fn partial_products(
    nodes: &NodeMultiset,
    dim: u32,
) -> Result<Vec<PartialProduct>, InterpolateError> {
    let basis = GegenbauerBasis::new(dim, nodes.len())?;
    let mut out = Vec::with_capacity(nodes.len() + 1);
    let mut poly = RationalPoly::one();
    for r in 0..=nodes.len() {
        if r > 0 {
            let root = &nodes.nodes()[r - 1];
            let factor =
                RationalPoly::from_coeffs(vec![-root.clone(), rat_int(1)]);
            poly = &poly * &factor;
        }
        let expansion = basis.expand(&poly)?;
        out.push(PartialProduct {
            r,
            poly: poly.clone(),
            expansion,
        });
    }
    Ok(out)
}

/// Sign of a node product on one closed complement interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalSign {
    NonNegative,
    NonPositive,
    IdenticallyZero,
    Mixed,
}

impl IntervalSign {
    pub fn as_str(&self) -> &'static str {
        match self {
            IntervalSign::NonNegative => "+",
            IntervalSign::NonPositive => "-",
            IntervalSign::IdenticallyZero => "0",
            IntervalSign::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PatternInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub sign: IntervalSign,
}

/// Sign pattern of ω(t) = Π(t − tᵢ) on [−1,1] minus the avoided set.
#[derive(Debug, Clone)]
pub struct SignPattern {
    pub intervals: Vec<PatternInterval>,
    pub nonneg_on_complement: bool,
    pub nonpos_on_complement: bool,
}

/// Decides the sign combinatorially: an interval with an odd-multiplicity
/// node strictly inside is mixed; otherwise the sign is constant off the
/// nodes and one exact evaluation certifies it.
pub fn remainder_sign(nodes: &NodeMultiset, avoid: &AvoidSet) -> SignPattern {
    let distinct = nodes.distinct();
    let omega = nodes.product_poly();
    let mut intervals = Vec::new();
    for (lo, hi) in avoid.complement() {
        let odd_inside = distinct
            .iter()
            .any(|(t, m)| m % 2 == 1 && lo < *t && *t < hi);
        let sign = if odd_inside {
            IntervalSign::Mixed
        } else {
            // sample any non-node point of [lo, hi]
            let mut cuts: Vec<Rational> = vec![lo.clone()];
            cuts.extend(
                distinct
                    .iter()
                    .map(|(t, _)| t.clone())
                    .filter(|t| &lo < t && t < &hi),
            );
            cuts.push(hi.clone());
            let mut value = rat_int(0);
            for w in cuts.windows(2) {
                if w[0] == w[1] {
                    continue;
                }
                let mid = (&w[0] + &w[1]) / rat_int(2);
                value = omega.eval(&mid);
                if !value.is_zero() {
                    break;
                }
            }
            if value.is_zero() {
                // single-point interval landing on a node
                IntervalSign::IdenticallyZero
            } else if value.is_positive() {
                IntervalSign::NonNegative
            } else {
                IntervalSign::NonPositive
            }
        };
        intervals.push(PatternInterval { lo, hi, sign });
    }
    let nonneg = intervals.iter().all(|p| {
        matches!(
            p.sign,
            IntervalSign::NonNegative | IntervalSign::IdenticallyZero
        )
    });
    let nonpos = intervals.iter().all(|p| {
        matches!(
            p.sign,
            IntervalSign::NonPositive | IntervalSign::IdenticallyZero
        )
    });
    SignPattern {
        intervals,
        nonneg_on_complement: nonneg,
        nonpos_on_complement: nonpos,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Potential;
    use crate::ratpoly::rat;

    struct PolyOracle(RationalPoly);
    impl DerivativeOracle<Rational> for PolyOracle {
        fn derivative(&self, t: &Rational, k: usize, _: ()) -> Result<Rational, PotentialError> {
            Ok(self.0.derivative_n(k).eval(t))
        }
    }

    #[test]
    fn multiset_validation() {
        assert!(matches!(
            NodeMultiset::new(vec![]),
            Err(InterpolateError::Empty)
        ));
        assert!(matches!(
            NodeMultiset::new(vec![rat_int(0); 17]),
            Err(InterpolateError::TooMany { len: 17 })
        ));
        assert!(matches!(
            NodeMultiset::new(vec![rat_int(1), rat_int(0)]),
            Err(InterpolateError::NotAscending)
        ));
        assert!(matches!(
            NodeMultiset::new(vec![rat(-3, 2)]),
            Err(InterpolateError::OutOfRange { .. })
        ));
        // repeats are fine when adjacent (sorted makes them adjacent)
        let m = NodeMultiset::new(vec![rat_int(0), rat_int(0), rat(1, 2)]).unwrap();
        assert_eq!(m.multiplicity(&rat_int(0)), 2);
        assert_eq!(m.max_multiplicity(), 2);
    }

    #[test]
    fn builtin_multisets() {
        for (m, len) in [
            (lower_nodes_t1(), 12),
            (lower_nodes_t2(), 12),
            (upper_nodes_t1(), 12),
        ] {
            assert_eq!(m.len(), len);
            assert_eq!(m.max_multiplicity(), 2);
        }
        let d = lower_nodes_t1().distinct();
        assert_eq!(
            d,
            vec![
                (rat_int(-1), 2),
                (rat(-1, 2), 2),
                (rat(-1, 3), 1),
                (rat(-1, 6), 1),
                (rat_int(0), 2),
                (rat(1, 6), 1),
                (rat(1, 3), 1),
                (rat(1, 2), 2),
            ]
        );
        // upper multiset is the T1 lower multiset with one −1 traded for +1
        let up = upper_nodes_t1();
        assert_eq!(up.multiplicity(&rat_int(-1)), 1);
        assert_eq!(up.multiplicity(&rat_int(1)), 1);
        // no built-in node lies strictly inside its avoided set
        for (m, a) in [
            (lower_nodes_t1(), AvoidSet::t1()),
            (lower_nodes_t2(), AvoidSet::t2()),
            (upper_nodes_t1(), AvoidSet::t1()),
        ] {
            assert!(m.nodes().iter().all(|t| !a.contains(t)));
        }
    }

    #[test]
    fn avoid_sets() {
        let t1 = AvoidSet::t1();
        assert!(t1.contains(&rat(1, 4)));
        assert!(!t1.contains(&rat(1, 6))); // open: endpoint allowed
        assert!(!t1.contains(&rat_int(0)));
        assert_eq!(
            t1.complement(),
            vec![
                (rat_int(-1), rat(-1, 3)),
                (rat(-1, 6), rat(1, 6)),
                (rat(1, 3), rat_int(1)),
            ]
        );
        assert!(AvoidSet::new("bad", vec![(rat(1, 2), rat(1, 3))]).is_err());
        assert!(AvoidSet::new(
            "bad",
            vec![(rat(-1, 2), rat(1, 4)), (rat(1, 8), rat(1, 2))]
        )
        .is_err());
    }

    #[test]
    fn confluent_table_trivial() {
        // h = t at the double node (0, 0): value row [0, 0], then h'(0)/1! = 1
        let m = NodeMultiset::new(vec![rat_int(0), rat_int(0)]).unwrap();
        let h = PolyOracle(RationalPoly::monomial(rat_int(1), 1));
        let table = divided_differences::<Rational, _>(&m, &h, ()).unwrap();
        assert_eq!(table.entry(0, 0), &rat_int(0));
        assert_eq!(table.entry(1, 0), &rat_int(0));
        assert_eq!(table.entry(0, 1), &rat_int(1));
    }

    #[test]
    fn table_kills_low_degree() {
        // for h = t², rows of order ≥ 3 vanish and the order-2 head is 1
        let m = lower_nodes_t1();
        let h = PolyOracle(RationalPoly::monomial(rat_int(1), 2));
        let table = divided_differences::<Rational, _>(&m, &h, ()).unwrap();
        assert_eq!(table.entry(0, 2), &rat_int(1));
        for j in 3..12 {
            for i in 0..12 - j {
                assert_eq!(table.entry(i, j), &rat_int(0), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn reproduces_low_degree_polynomials() {
        // degree ≤ 11 is reproduced exactly on 12 nodes
        let p = RationalPoly::from_coeffs(vec![
            rat(3, 7),
            rat(-1, 2),
            rat_int(2),
            rat(5, 3),
            rat_int(0),
            rat(-7, 11),
            rat_int(1),
            rat(2, 9),
            rat_int(-3),
            rat(1, 13),
            rat(4, 5),
            rat(-2, 3),
        ]);
        for m in [lower_nodes_t1(), lower_nodes_t2(), upper_nodes_t1()] {
            let ip = hermite_interpolant::<Rational, _>(&m, &PolyOracle(p.clone()), ()).unwrap();
            assert_eq!(interpolant_poly(&ip), p);
        }
    }

    #[test]
    fn degree_twelve_remainder_is_node_product() {
        // monic degree-12 input: h − f = ω exactly
        let m = lower_nodes_t1();
        let h = RationalPoly::monomial(rat_int(1), 12);
        let ip = hermite_interpolant::<Rational, _>(&m, &PolyOracle(h.clone()), ()).unwrap();
        let f = interpolant_poly(&ip);
        assert_eq!(&h - &f, m.product_poly());
    }

    #[test]
    fn newton_eval_matches_monomial_eval() {
        let m = lower_nodes_t2();
        let h = Potential::parse("riesz:s=4").unwrap();
        let ip = hermite_interpolant::<Rational, _>(&m, &h, ()).unwrap();
        let poly = interpolant_poly(&ip);
        for t in [rat_int(-1), rat(-2, 5), rat_int(0), rat(5, 7), rat_int(1)] {
            assert_eq!(ip.eval(&t, ()), poly.eval(&t));
        }
        // derivative_at agrees with the polynomial derivative
        for k in 0..3 {
            let d = poly.derivative_n(k);
            assert_eq!(ip.derivative_at(&rat(1, 7), k, ()), d.eval(&rat(1, 7)));
        }
    }

    #[test]
    fn matches_potential_at_nodes() {
        let m = lower_nodes_t1();
        let h = Potential::parse("riesz:s=4").unwrap();
        let ip = hermite_interpolant::<Rational, _>(&m, &h, ()).unwrap();
        for (t, mult) in m.distinct() {
            for k in 0..mult {
                assert_eq!(
                    ip.derivative_at(&t, k, ()),
                    h.eval_rational(&t, k).unwrap(),
                    "mismatch at {t}, order {k}"
                );
            }
        }
    }

    #[test]
    fn partial_product_telescoping() {
        let m = lower_nodes_t1();
        let pp = partial_products(&m, 48).unwrap();
        assert_eq!(pp.len(), 13);
        assert_eq!(pp[0].poly, RationalPoly::one());
        assert_eq!(pp[12].poly, m.product_poly());
        for r in 0..12 {
            let factor = RationalPoly::from_coeffs(vec![
                -m.nodes()[r].clone(),
                rat_int(1),
            ]);
            assert_eq!(&pp[r].poly * &factor, pp[r + 1].poly);
            assert_eq!(pp[r].expansion.degree(), pp[r].poly.degree().unwrap_or(0));
        }
        // spot anchors for the degree-9 and degree-11 expansions
        assert_eq!(pp[9].expansion.coeff(0), rat(107, 336960));
        assert_eq!(pp[11].expansion.coeff(3), rat(-118957, 811814400));
    }

    #[test]
    fn sign_patterns_of_builtins() {
        let lower1 = remainder_sign(&lower_nodes_t1(), &AvoidSet::t1());
        assert!(lower1.nonneg_on_complement);
        assert!(!lower1.nonpos_on_complement);
        assert_eq!(lower1.intervals.len(), 3);
        assert!(lower1
            .intervals
            .iter()
            .all(|p| p.sign == IntervalSign::NonNegative));

        let lower2 = remainder_sign(&lower_nodes_t2(), &AvoidSet::t2());
        assert!(lower2.nonneg_on_complement);

        let upper = remainder_sign(&upper_nodes_t1(), &AvoidSet::t1());
        assert!(upper.nonpos_on_complement);
        assert!(!upper.nonneg_on_complement);
        assert!(upper
            .intervals
            .iter()
            .all(|p| p.sign == IntervalSign::NonPositive));
    }

    #[test]
    fn sign_pattern_mixed_and_inside() {
        // a single simple node inside a complement interval flips sign there
        let m = NodeMultiset::new(vec![rat_int(0)]).unwrap();
        let pat = remainder_sign(&m, &AvoidSet::t1());
        assert_eq!(pat.intervals[1].sign, IntervalSign::Mixed);
        assert!(!pat.nonneg_on_complement && !pat.nonpos_on_complement);
        // inside the avoided set the full T1 lower product may dip negative
        let omega = lower_nodes_t1().product_poly();
        assert_eq!(omega.eval(&rat(1, 4)), rat(-875, 150994944));
    }
}
