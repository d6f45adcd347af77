//! Distance distributions of spherical codes, their moments, and the induced
//! quadrature rules.
//!
//! A distance distribution records, for one (hence, by symmetry class
//! assumptions, every) point of an N-point code, how many other points sit
//! at each inner product. The built-in [`p48`] distribution describes a
//! 52 416 000-point antipodal 11-design on S⁴⁷ whose inner products are
//! {0, ±1/6, ±1/3, ±1/2, −1}.
//!
//! Moments are tracked per point: the i-th moment is Σ_t A_t·P_i(t) + P_i(1),
//! i.e. M_i/N for the code's full i-th ultraspherical sum. A design of
//! strength τ has vanishing moments 1..=τ, which turns its distribution into
//! a positive quadrature rule exact on polynomials of degree ≤ τ.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::gegenbauer::{GegenbauerBasis, GegenbauerError, WeightMoments};
use crate::linalg::{solve_exact, LinSolveError};
use crate::potentials::dec::Dec;
use crate::potentials::{Potential, PotentialError};
use crate::ratpoly::{rat, rat_int, Rational, RationalPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistributionError {
    #[error("abscissa {t} outside [-1, 1)")]
    BadAbscissa { t: Rational },
    #[error("duplicate abscissa {t}")]
    DuplicateAbscissa { t: Rational },
    #[error("counts sum to {got}, expected N−1 = {expected}")]
    CountMismatch { got: u64, expected: u64 },
    #[error("a code must contain at least one point")]
    EmptyCode,
    #[error("antipodal distribution needs A(−1) = 1, got {got}")]
    MinusOneCount { got: u64 },
    #[error("antipodal distribution is asymmetric at t = {t}")]
    AsymmetricPair { t: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("support must contain −1 for antipodal codes")]
    MissingMinusOne,
    #[error("antipodal support must be ±-symmetric; {t} has no partner")]
    UnbalancedSupport { t: Rational },
    #[error("support abscissa {t} outside [-1, 1)")]
    BadSupport { t: Rational },
    #[error("duplicate support abscissa {t}")]
    DuplicateSupport { t: Rational },
    #[error("system is singular: counts are not determined")]
    Singular,
    #[error("equations are inconsistent: no such code can exist")]
    Inconsistent,
    #[error("count at t = {t} is not an integer: {value}")]
    NonIntegral { t: Rational, value: Rational },
    #[error("count at t = {t} is negative: {value}")]
    Negative { t: Rational, value: Rational },
    #[error(transparent)]
    Basis(#[from] GegenbauerError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

/// Per-point inner-product counts of an N-point code. Keys exclude +1 (a
/// point is not its own neighbor); counts sum to N−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceDistribution {
    n_points: u64,
    antipodal: bool,
    entries: BTreeMap<Rational, u64>,
}

impl DistanceDistribution {
    pub fn new(
        n_points: u64,
        antipodal: bool,
        entries: Vec<(Rational, u64)>,
    ) -> Result<Self, DistributionError> {
        if n_points == 0 {
            return Err(DistributionError::EmptyCode);
        }
        let mut map = BTreeMap::new();
        for (t, count) in entries {
            if t < rat_int(-1) || t >= rat_int(1) {
                return Err(DistributionError::BadAbscissa { t });
            }
            if count == 0 {
                continue;
            }
            if map.insert(t.clone(), count).is_some() {
                return Err(DistributionError::DuplicateAbscissa { t });
            }
        }
        let got: u64 = map.values().sum();
        if got != n_points - 1 {
            return Err(DistributionError::CountMismatch {
                got,
                expected: n_points - 1,
            });
        }
        if antipodal {
            match map.get(&rat_int(-1)) {
                Some(1) => {}
                other => {
                    return Err(DistributionError::MinusOneCount {
                        got: other.copied().unwrap_or(0),
                    })
                }
            }
            for (t, count) in &map {
                if t == &rat_int(-1) {
                    continue;
                }
                if map.get(&(-t)).copied().unwrap_or(0) != *count {
                    return Err(DistributionError::AsymmetricPair { t: t.clone() });
                }
            }
        }
        Ok(DistanceDistribution {
            n_points,
            antipodal,
            entries: map,
        })
    }

    pub fn n_points(&self) -> u64 {
        self.n_points
    }

    pub fn antipodal(&self) -> bool {
        self.antipodal
    }

    pub fn entries(&self) -> &BTreeMap<Rational, u64> {
        &self.entries
    }

    /// Σ_t A_t·p(t) over the distribution (no +1 term).
    pub fn sum_poly(&self, p: &RationalPoly) -> Rational {
        let mut acc = rat_int(0);
        for (t, count) in &self.entries {
            acc += p.eval(t) * Rational::from_integer((*count).into());
        }
        acc
    }

    /// Per-point moment M_i/N = Σ_t A_t·P_i(t) + 1.
    pub fn moment(&self, basis: &GegenbauerBasis, i: usize) -> Rational {
        self.sum_poly(basis.poly(i)) + rat_int(1)
    }

    /// Largest τ with vanishing moments 1..=τ (the design strength visible
    /// to this distribution), scanned up to a combinatorial cap.
    pub fn strength(&self, dim: u32) -> Result<usize, GegenbauerError> {
        let cap = 2 * (self.entries.len() + 1) + 2;
        let basis = GegenbauerBasis::new(dim, cap)?;
        let mut tau = 0;
        for i in 1..=cap {
            if !self.moment(&basis, i).is_zero() {
                break;
            }
            tau = i;
        }
        Ok(tau)
    }

    /// Per-point energy Σ_t A_t·h(t), exactly (exact-kind potentials only).
    pub fn energy(&self, h: &Potential) -> Result<Rational, PotentialError> {
        let mut acc = rat_int(0);
        for (t, count) in &self.entries {
            acc += h.eval_rational(t, 0)? * Rational::from_integer((*count).into());
        }
        Ok(acc)
    }

    /// Per-point energy in the decimal kind (any potential), computed with
    /// 10 guard digits and rounded to `prec`.
    pub fn energy_dec(&self, h: &Potential, prec: u32) -> Result<Dec, PotentialError> {
        let w = prec + 10;
        let mut acc = Dec::zero(w);
        for (t, count) in &self.entries {
            let term = h.eval_dec(t, 0, w)?;
            let count = Dec::from_rational(&Rational::from_integer((*count).into()), w);
            acc = acc.add(&term.mul(&count));
        }
        Ok(acc.with_prec(prec))
    }

    /// The quadrature rule induced on [−1,1]: abscissae = distribution keys
    /// plus +1, weights A_t/N and 1/N, exact up to the design strength.
    pub fn quadrature(&self, dim: u32) -> Result<QuadratureRule, GegenbauerError> {
        let exactness = self.strength(dim)?;
        let n = Rational::from_integer(self.n_points.into());
        let mut points: Vec<(Rational, Rational)> = self
            .entries
            .iter()
            .map(|(t, c)| (t.clone(), Rational::from_integer((*c).into()) / &n))
            .collect();
        points.push((rat_int(1), n.recip()));
        Ok(QuadratureRule {
            dim,
            points,
            exactness,
        })
    }
}

/// Positive rational quadrature on [−1,1] against the sphere weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadratureRule {
    dim: u32,
    points: Vec<(Rational, Rational)>,
    exactness: usize,
}

impl QuadratureRule {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// (abscissa, weight) pairs, ascending; weights sum to 1.
    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn exactness(&self) -> usize {
        self.exactness
    }

    pub fn weight_sum(&self) -> Rational {
        let mut acc = rat_int(0);
        for (_, w) in &self.points {
            acc += w;
        }
        acc
    }

    /// Σ wᵢ·p(xᵢ) − ∫p·w/∫w: zero whenever deg p ≤ exactness.
    pub fn residual(&self, p: &RationalPoly) -> Rational {
        let moments = WeightMoments::new(self.dim, p.coeffs().len().saturating_sub(1));
        let mut acc = -moments.integrate(p);
        for (x, w) in &self.points {
            acc += p.eval(x) * w;
        }
        acc
    }
}

/// The distance distribution shared by the four known tight-spectrum
/// 11-designs on S⁴⁷ with N = 52 416 000 points.
pub fn p48() -> DistanceDistribution {
    DistanceDistribution::new(
        52_416_000,
        true,
        vec![
            (rat_int(-1), 1),
            (rat(-1, 2), 36_848),
            (rat(-1, 3), 1_678_887),
            (rat(-1, 6), 12_608_784),
            (rat_int(0), 23_766_960),
            (rat(1, 6), 12_608_784),
            (rat(1, 3), 1_678_887),
            (rat(1, 2), 36_848),
        ],
    )
    .expect("reference distribution is valid")
}

pub const P48_DIM: u32 = 48;
pub const P48_POINTS: u64 = 52_416_000;

/// Recovers integer counts from support + size + design strength by exact
/// elimination. For antipodal codes the unknowns collapse to ± classes with
/// A(−1) = 1 pinned and odd moments vanishing identically; the full moment
/// set is re-checked on the result, so dropped equations cannot hide an
/// inconsistency.
pub fn solve_distribution(
    support: &[Rational],
    n_points: u64,
    strength: u32,
    antipodal: bool,
    dim: u32,
) -> Result<DistanceDistribution, SolveError> {
    let mut sup: Vec<Rational> = support.to_vec();
    sup.sort();
    for t in &sup {
        if t < &rat_int(-1) || t >= &rat_int(1) {
            return Err(SolveError::BadSupport { t: t.clone() });
        }
    }
    for w in sup.windows(2) {
        if w[0] == w[1] {
            return Err(SolveError::DuplicateSupport { t: w[0].clone() });
        }
    }
    if n_points == 0 {
        return Err(DistributionError::EmptyCode.into());
    }
    let basis = GegenbauerBasis::new(dim, strength as usize)?;
    let n_minus_1 = Rational::from_integer((n_points - 1).into());

    let (unknown_ts, rows, rhs): (Vec<Rational>, Vec<Vec<Rational>>, Vec<Rational>) = if antipodal
    {
        if !sup.contains(&rat_int(-1)) {
            return Err(SolveError::MissingMinusOne);
        }
        for t in &sup {
            if t != &rat_int(-1) && !t.is_zero() && !sup.contains(&(-t)) {
                return Err(SolveError::UnbalancedSupport { t: t.clone() });
            }
        }
        // unknowns: one per class {t, −t} with t ≥ 0 in the support
        let classes: Vec<Rational> = sup.iter().filter(|t| !t.is_negative()).cloned().collect();
        let class_weight = |t: &Rational| if t.is_zero() { rat_int(1) } else { rat_int(2) };
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        // count equation: 1 + Σ weight·v = N−1
        rows.push(classes.iter().map(class_weight).collect::<Vec<_>>());
        rhs.push(&n_minus_1 - rat_int(1));
        // even moments: 1 + P_i(−1) + Σ weight·P_i(t)·v = 0
        let mut i = 2;
        while i <= strength as usize {
            rows.push(
                classes
                    .iter()
                    .map(|t| class_weight(t) * basis.poly(i).eval(t))
                    .collect(),
            );
            rhs.push(rat_int(-2)); // −(P_i(1) + A₋₁·P_i(−1)) for even i
            i += 2;
        }
        (classes, rows, rhs)
    } else {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        rows.push(vec![rat_int(1); sup.len()]);
        rhs.push(n_minus_1.clone());
        for i in 1..=strength as usize {
            rows.push(sup.iter().map(|t| basis.poly(i).eval(t)).collect());
            rhs.push(rat_int(-1)); // −P_i(1)
        }
        (sup.clone(), rows, rhs)
    };

    let solution = solve_exact(&rows, &rhs).map_err(|e| match e {
        LinSolveError::Singular => SolveError::Singular,
        LinSolveError::Inconsistent => SolveError::Inconsistent,
    })?;

    // integrality and positivity: this is where impossible (N, strength)
    // combinations surface
    let mut entries: Vec<(Rational, u64)> = Vec::new();
    for (t, v) in unknown_ts.iter().zip(&solution) {
        if v.is_negative() {
            return Err(SolveError::Negative {
                t: t.clone(),
                value: v.clone(),
            });
        }
        if !v.is_integer() {
            return Err(SolveError::NonIntegral {
                t: t.clone(),
                value: v.clone(),
            });
        }
        let count: u64 = (v.to_integer())
            .try_into()
            .map_err(|_| SolveError::Negative {
                t: t.clone(),
                value: v.clone(),
            })?;
        entries.push((t.clone(), count));
        if antipodal && t.is_positive() {
            entries.push((-t.clone(), count));
        }
    }
    if antipodal {
        // the pinned antipode count; classes never include −1
        entries.push((rat_int(-1), 1));
    }

    let dist = DistanceDistribution::new(n_points, antipodal, entries)?;

    // replay every moment equation, including the ones the solver skipped
    for i in 1..=strength as usize {
        if !dist.moment(&basis, i).is_zero() {
            return Err(SolveError::Inconsistent);
        }
    }
    Ok(dist)
}
