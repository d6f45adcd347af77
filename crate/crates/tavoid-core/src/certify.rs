//! Linear-programming bound certificates for codes avoiding a set of inner
//! products.
//!
//! A **lower** certificate packages the Hermite interpolant f of a potential
//! h at the built-in node multiset for the avoided set, the ultraspherical
//! expansion of f with its sign report, and the value f₀·N − f(1). When
//! f ≤ h off the avoided set and the expansion satisfies the sign conditions
//! of the admissibility class, that value bounds the h-energy of every
//! N-point code (in the class) from below. An **upper** certificate is the
//! mirror image: g ≥ h everywhere on [−1,1] minus the avoided set with
//! deg g ≤ 11, so g₀·N − g(1) bounds the energy of strength-11 designs from
//! above.
//!
//! Certificates come in two kinds sharing one pipeline: exact rationals
//! (polynomial and even-exponent Riesz potentials — every check is decided
//! by exact arithmetic) and fixed-precision decimals (Gaussians, odd Riesz),
//! where comparisons carry explicit tolerances. A certificate stores only
//! raw inputs plus derived numbers; [`verify_certificate_exact`] /
//! [`verify_certificate_dec`] re-derive everything and flag any stored value
//! that does not match, so a certificate file is never trusted.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::designs::{p48, DistanceDistribution, P48_DIM, P48_POINTS};
use crate::gegenbauer::{sign_report, GegenbauerBasis, GegenbauerError, GegenbauerExpansion};
use crate::interpolate::{
    hermite_interpolant, interpolant_poly, lower_nodes_t1, lower_nodes_t2, remainder_sign,
    upper_nodes_t1, AvoidSet, Interpolant, InterpolateError, NodeMultiset, SignPattern,
};
use crate::potentials::dec::Dec;
use crate::potentials::{default_grid, Potential, PotentialError};
use crate::ratpoly::{rat, rat_int, Rational, RationalPoly};

/// Smallest decimal precision the float-kind tolerances are calibrated for.
pub const MIN_PRECISION: u32 = 30;
/// Default working precision for float-kind certificates.
pub const DEFAULT_PRECISION: u32 = 50;
/// Design strength backing the upper-bound admissibility class.
pub const DESIGN_STRENGTH: usize = 11;

/// Exponent of the float-kind comparison tolerance: 10⁻³⁰ at the default
/// 50 digits, loosened proportionally when the working precision drops.
fn tol_exp(prec: u32) -> i64 {
    (-30i64).max(20 - i64::from(prec))
}

/// Grid samples of the one-sided difference h − f may dip to −10⁻²⁵ …
const GRID_MARGIN_EXP: i64 = -25;
/// … and its curvature at tangency (double) nodes to −10⁻²⁰. Exact
/// tangencies make a naive ≥ 0 test fragile; these fixed margins do not
/// scale with precision.
const CURVATURE_MARGIN_EXP: i64 = -20;
/// Sampling resolution per complement interval for the tangency check.
const GRID_STEPS: i64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which codes a bound certificate speaks for, i.e. which sign conditions
/// its expansion must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityClass {
    /// fᵢ ≥ 0 for every i ≥ 1: the bound holds for all avoiding codes.
    AllCodes,
    /// deg ≤ τ and no sign conditions: the bound holds across spherical
    /// τ-designs, whose moments 1..=τ vanish.
    DesignTau { tau: usize },
    /// fᵢ ≥ 0 for i outside the exception set: the bound holds for codes
    /// whose moments vanish at every excepted index.
    MomentExceptions { exceptions: BTreeSet<usize> },
}

impl AdmissibilityClass {
    /// E = {3}: antipodal codes and spherical 3-designs both have M₃ = 0,
    /// so the third coefficient's sign never needs to be asserted.
    pub fn third_moment_zero() -> Self {
        let mut exceptions = BTreeSet::new();
        exceptions.insert(3);
        AdmissibilityClass::MomentExceptions { exceptions }
    }

    /// E = all odd indices up to `max_degree`: antipodal codes kill every
    /// odd moment.
    pub fn antipodal(max_degree: usize) -> Self {
        AdmissibilityClass::MomentExceptions {
            exceptions: (1..=max_degree).filter(|i| i % 2 == 1).collect(),
        }
    }

    /// Indices whose sign the certificate refuses to assert.
    pub fn exceptions(&self) -> BTreeSet<usize> {
        match self {
            AdmissibilityClass::MomentExceptions { exceptions } => exceptions.clone(),
            _ => BTreeSet::new(),
        }
    }

    /// Canonical string form; [`AdmissibilityClass::parse`] round-trips it.
    pub fn spec_string(&self) -> String {
        match self {
            AdmissibilityClass::AllCodes => String::from("all-codes"),
            AdmissibilityClass::DesignTau { tau } => format!("design-tau={tau}"),
            AdmissibilityClass::MomentExceptions { exceptions } => {
                let parts: Vec<String> = exceptions.iter().map(|i| i.to_string()).collect();
                format!("moment-exceptions={{{}}}", parts.join(","))
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "all-codes" {
            return Ok(AdmissibilityClass::AllCodes);
        }
        if let Some(v) = s.strip_prefix("design-tau=") {
            let tau = v
                .trim()
                .parse()
                .map_err(|_| format!("bad design strength `{v}`"))?;
            return Ok(AdmissibilityClass::DesignTau { tau });
        }
        if let Some(v) = s.strip_prefix("moment-exceptions=") {
            let inner = v
                .trim()
                .strip_prefix('{')
                .and_then(|x| x.strip_suffix('}'))
                .ok_or_else(|| format!("expected moment-exceptions={{i,...}}, got `{s}`"))?;
            let mut exceptions = BTreeSet::new();
            for part in inner.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let i = part
                    .parse()
                    .map_err(|_| format!("bad exception index `{part}`"))?;
                exceptions.insert(i);
            }
            return Ok(AdmissibilityClass::MomentExceptions { exceptions });
        }
        Err(format!("unknown admissibility class `{s}`"))
    }

    /// Human-readable statement of who the bound applies to.
    pub fn narrative(&self) -> String {
        match self {
            AdmissibilityClass::AllCodes => String::from("every code avoiding the set"),
            AdmissibilityClass::DesignTau { tau } => {
                format!("spherical {tau}-designs avoiding the set")
            }
            AdmissibilityClass::MomentExceptions { exceptions } => {
                let three: BTreeSet<usize> = [3usize].into_iter().collect();
                if exceptions == &three {
                    String::from(
                        "codes with vanishing third moment: antipodal codes or spherical 3-designs",
                    )
                } else if !exceptions.is_empty() && exceptions.iter().all(|i| i % 2 == 1) {
                    String::from("antipodal codes (all odd moments vanish)")
                } else {
                    format!("codes whose moments vanish at indices {exceptions:?}")
                }
            }
        }
    }
}

/// One named verification step with its outcome and a deterministic
/// human-readable detail line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: String::from(name),
        passed,
        detail,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("potential `{spec}` does not claim absolute monotonicity")]
    NotAbsMonotone { spec: String },
    #[error("potential `{spec}` is unbounded at t = 1; an upper bound needs h(1)")]
    InfiniteAtOne { spec: String },
    #[error("no built-in node multiset for avoided set `{name}` ({direction} bound)")]
    UnsupportedAvoid {
        direction: &'static str,
        name: String,
    },
    #[error("precision {prec} is below the supported minimum {min}")]
    PrecisionTooLow { prec: u32, min: u32 },
    #[error(transparent)]
    Interpolate(#[from] InterpolateError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Basis(#[from] GegenbauerError),
}

/// A self-contained bound certificate. Everything analytic is re-derivable
/// from `potential` + `nodes` + `avoid`; the stored coefficients and values
/// let external tools read the result and let verification detect tampering.
#[derive(Debug, Clone)]
pub struct BoundCertificate<S: crate::scalar::Scalar> {
    pub direction: Direction,
    pub dim: u32,
    pub n_points: u64,
    pub avoid: AvoidSet,
    pub nodes: NodeMultiset,
    pub potential: Potential,
    /// Ascending monomial coefficients of the interpolant.
    pub interpolant_coeffs: Vec<S>,
    /// Ultraspherical coefficients f₀..f_deg of the interpolant.
    pub gegenbauer_coeffs: Vec<S>,
    /// Indices whose sign is not asserted (mirrors the class exceptions).
    pub sign_exceptions: BTreeSet<usize>,
    pub class: AdmissibilityClass,
    /// f₀·N − f(1) (lower) resp. g₀·N − g(1) (upper).
    pub bound: S,
    /// Per-point energy of the built-in reference design, when (dim, N)
    /// matches it and the potential is finite on its inner products.
    pub design_energy: Option<S>,
    /// energy − bound (lower) resp. bound − energy (upper); zero exactly
    /// when the bound is attained.
    pub gap: Option<S>,
    pub checks: Vec<Check>,
    pub ctx: S::Ctx,
}

pub type ExactCertificate = BoundCertificate<Rational>;
pub type FloatCertificate = BoundCertificate<Dec>;

impl<S: crate::scalar::Scalar> BoundCertificate<S> {
    /// True when every recorded check passed.
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn lower_nodes_for(avoid: &AvoidSet) -> Result<NodeMultiset, CertifyError> {
    match avoid.name() {
        "T1" => Ok(lower_nodes_t1()),
        "T2" => Ok(lower_nodes_t2()),
        name => Err(CertifyError::UnsupportedAvoid {
            direction: "lower",
            name: String::from(name),
        }),
    }
}

fn lower_class_for(avoid: &AvoidSet) -> AdmissibilityClass {
    // T1 keeps the third-coefficient carve-out: the partial-product argument
    // cannot pin f₃'s sign uniformly in h, so the bound is stated for codes
    // with M₃ = 0. T2 needs no exceptions.
    if avoid.name() == "T1" {
        AdmissibilityClass::third_moment_zero()
    } else {
        AdmissibilityClass::AllCodes
    }
}

/// The node multiset a builder would use for this direction and avoided set.
pub fn builtin_nodes(direction: Direction, avoid: &AvoidSet) -> Result<NodeMultiset, CertifyError> {
    match direction {
        Direction::Lower => lower_nodes_for(avoid),
        Direction::Upper => {
            if avoid.name() == "T1" {
                Ok(upper_nodes_t1())
            } else {
                Err(CertifyError::UnsupportedAvoid {
                    direction: "upper",
                    name: String::from(avoid.name()),
                })
            }
        }
    }
}

fn reference_design(dim: u32, n_points: u64) -> Option<DistanceDistribution> {
    if dim == P48_DIM && n_points == P48_POINTS {
        Some(p48())
    } else {
        None
    }
}

/// Lower-bound certificate in the exact kind: every stored number is a
/// rational and every check is decided by exact arithmetic.
pub fn lower_certificate_exact(
    h: &Potential,
    avoid: &AvoidSet,
    dim: u32,
    n_points: u64,
) -> Result<ExactCertificate, CertifyError> {
    if !h.claims_abs_monotone() {
        return Err(CertifyError::NotAbsMonotone {
            spec: h.spec_string(),
        });
    }
    let nodes = lower_nodes_for(avoid)?;
    let class = lower_class_for(avoid);
    build_exact(Direction::Lower, h, avoid, &nodes, class, dim, n_points)
}

/// Upper-bound certificate in the exact kind. Only the first avoided set
/// has a built-in upper node multiset; the potential must be finite at 1.
pub fn upper_certificate_exact(
    h: &Potential,
    avoid: &AvoidSet,
    dim: u32,
    n_points: u64,
) -> Result<ExactCertificate, CertifyError> {
    let nodes = builtin_nodes(Direction::Upper, avoid)?;
    if !h.finite_at_one() {
        return Err(CertifyError::InfiniteAtOne {
            spec: h.spec_string(),
        });
    }
    if !h.claims_abs_monotone() {
        return Err(CertifyError::NotAbsMonotone {
            spec: h.spec_string(),
        });
    }
    let class = AdmissibilityClass::DesignTau {
        tau: DESIGN_STRENGTH,
    };
    build_exact(Direction::Upper, h, avoid, &nodes, class, dim, n_points)
}

/// Lower-bound certificate in the decimal kind at `prec` digits.
pub fn lower_certificate_dec(
    h: &Potential,
    avoid: &AvoidSet,
    dim: u32,
    n_points: u64,
    prec: u32,
) -> Result<FloatCertificate, CertifyError> {
    if prec < MIN_PRECISION {
        return Err(CertifyError::PrecisionTooLow {
            prec,
            min: MIN_PRECISION,
        });
    }
    if !h.claims_abs_monotone() {
        return Err(CertifyError::NotAbsMonotone {
            spec: h.spec_string(),
        });
    }
    let nodes = lower_nodes_for(avoid)?;
    let class = lower_class_for(avoid);
    build_dec(Direction::Lower, h, avoid, &nodes, class, dim, n_points, prec)
}

/// Upper-bound certificate in the decimal kind at `prec` digits.
pub fn upper_certificate_dec(
    h: &Potential,
    avoid: &AvoidSet,
    dim: u32,
    n_points: u64,
    prec: u32,
) -> Result<FloatCertificate, CertifyError> {
    if prec < MIN_PRECISION {
        return Err(CertifyError::PrecisionTooLow {
            prec,
            min: MIN_PRECISION,
        });
    }
    let nodes = builtin_nodes(Direction::Upper, avoid)?;
    if !h.finite_at_one() {
        return Err(CertifyError::InfiniteAtOne {
            spec: h.spec_string(),
        });
    }
    if !h.claims_abs_monotone() {
        return Err(CertifyError::NotAbsMonotone {
            spec: h.spec_string(),
        });
    }
    let class = AdmissibilityClass::DesignTau {
        tau: DESIGN_STRENGTH,
    };
    build_dec(Direction::Upper, h, avoid, &nodes, class, dim, n_points, prec)
}

fn pattern_detail(p: &SignPattern) -> String {
    let parts: Vec<String> = p
        .intervals
        .iter()
        .map(|iv| format!("[{},{}]:{}", iv.lo, iv.hi, iv.sign.as_str()))
        .collect();
    parts.join(" ")
}

fn nodes_outside_avoid_check(nodes: &NodeMultiset, avoid: &AvoidSet) -> Check {
    let inside: Vec<String> = nodes
        .nodes()
        .iter()
        .filter(|t| avoid.contains(t))
        .map(|t| t.to_string())
        .collect();
    if inside.is_empty() {
        check(
            "nodes_outside_avoid",
            true,
            format!(
                "all {} nodes lie outside the open set {}",
                nodes.len(),
                avoid.name()
            ),
        )
    } else {
        check(
            "nodes_outside_avoid",
            false,
            format!("nodes inside the avoided set: {}", inside.join(", ")),
        )
    }
}

fn remainder_sign_check(direction: Direction, nodes: &NodeMultiset, avoid: &AvoidSet) -> Check {
    let pattern = remainder_sign(nodes, avoid);
    let ok = match direction {
        Direction::Lower => pattern.nonneg_on_complement,
        Direction::Upper => pattern.nonpos_on_complement,
    };
    check(
        "remainder_sign",
        ok,
        format!("node product on the complement: {}", pattern_detail(&pattern)),
    )
}

fn remainder_derivative_check_exact(h: &Potential, order: usize) -> Result<Check, CertifyError> {
    let grid = default_grid(33);
    let mut min: Option<Rational> = None;
    for t in &grid {
        let v = h.eval_rational(t, order)?;
        min = Some(match min {
            Some(m) if m <= v => m,
            _ => v,
        });
    }
    let m = min.expect("grid is non-empty");
    Ok(check(
        "remainder_derivative_nonneg",
        !m.is_negative(),
        format!("min h^({order}) over {} grid points: {m}", grid.len()),
    ))
}

fn remainder_derivative_check_dec(
    h: &Potential,
    order: usize,
    prec: u32,
) -> Result<Check, CertifyError> {
    // closed-form derivatives: their signs are exact, no tolerance needed
    let grid = default_grid(33);
    let mut min: Option<Dec> = None;
    for t in &grid {
        let v = h.eval_dec(t, order, prec)?;
        min = Some(match min {
            Some(m) if m <= v => m,
            _ => v,
        });
    }
    let m = min.expect("grid is non-empty");
    Ok(check(
        "remainder_derivative_nonneg",
        !m.is_negative(),
        format!("min h^({order}) over {} grid points: {m}", grid.len()),
    ))
}

fn interpolation_check_exact(
    h: &Potential,
    ip: &Interpolant<Rational>,
    nodes: &NodeMultiset,
) -> Result<Check, CertifyError> {
    let mut bad: Vec<String> = Vec::new();
    let mut conditions = 0usize;
    for (t, mult) in nodes.distinct() {
        for k in 0..mult {
            conditions += 1;
            if ip.derivative_at(&t, k, ()) != h.eval_rational(&t, k)? {
                bad.push(format!("order {k} at t = {t}"));
            }
        }
    }
    Ok(check(
        "interpolation_conditions",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{conditions} conditions hold exactly")
        } else {
            format!("failed: {}", bad.join("; "))
        },
    ))
}

fn interpolation_check_dec(
    h: &Potential,
    ip: &Interpolant<Dec>,
    nodes: &NodeMultiset,
    prec: u32,
) -> Result<Check, CertifyError> {
    let tol = Dec::pow10(tol_exp(prec), prec);
    let mut bad: Vec<String> = Vec::new();
    let mut worst = Dec::zero(prec);
    for (t, mult) in nodes.distinct() {
        for k in 0..mult {
            let r = ip
                .derivative_at(&t, k, prec)
                .sub(&h.eval_dec(&t, k, prec)?)
                .abs();
            if worst < r {
                worst = r.clone();
            }
            if r > tol {
                bad.push(format!("order {k} at t = {t} (residual {r})"));
            }
        }
    }
    Ok(check(
        "interpolation_conditions",
        bad.is_empty(),
        if bad.is_empty() {
            format!("max residual {worst} ≤ 10^{}", tol_exp(prec))
        } else {
            format!("failed: {}", bad.join("; "))
        },
    ))
}

fn admissibility_check_exact(
    name: &str,
    class: &AdmissibilityClass,
    geg: &[Rational],
    dim: u32,
) -> Check {
    match class {
        AdmissibilityClass::DesignTau { tau } => {
            let deg = geg.len().saturating_sub(1);
            check(
                name,
                deg <= *tau,
                format!("deg ≤ {deg} within design strength τ = {tau}; no sign conditions"),
            )
        }
        _ => {
            let exceptions = class.exceptions();
            let e = GegenbauerExpansion::new(dim, geg.to_vec());
            let r = sign_report(&e, &exceptions);
            let signs: String = r.signs.iter().map(|s| s.to_string()).collect();
            check(
                name,
                r.admissible,
                if r.admissible {
                    format!(
                        "coefficient signs [{signs}], excepted negatives at {:?}",
                        r.used_exceptions
                    )
                } else {
                    format!(
                        "coefficient signs [{signs}], negative outside exceptions at {:?}",
                        r.violations
                    )
                },
            )
        }
    }
}

fn admissibility_check_dec(
    name: &str,
    class: &AdmissibilityClass,
    geg: &[Dec],
    prec: u32,
) -> Check {
    match class {
        AdmissibilityClass::DesignTau { tau } => {
            let deg = geg.len().saturating_sub(1);
            check(
                name,
                deg <= *tau,
                format!("deg ≤ {deg} within design strength τ = {tau}; no sign conditions"),
            )
        }
        _ => {
            let exceptions = class.exceptions();
            let tol = Dec::pow10(tol_exp(prec), prec);
            let neg = tol.neg();
            let mut signs = String::new();
            let mut violations: Vec<usize> = Vec::new();
            let mut used: Vec<usize> = Vec::new();
            for (i, c) in geg.iter().enumerate() {
                let s = if *c < neg {
                    '-'
                } else if *c > tol {
                    '+'
                } else {
                    '0'
                };
                signs.push(s);
                if i >= 1 && s == '-' {
                    if exceptions.contains(&i) {
                        used.push(i);
                    } else {
                        violations.push(i);
                    }
                }
            }
            check(
                name,
                violations.is_empty(),
                if violations.is_empty() {
                    format!(
                        "coefficient signs [{signs}] at tolerance 10^{}, excepted negatives at {used:?}",
                        tol_exp(prec)
                    )
                } else {
                    format!(
                        "coefficient signs [{signs}] at tolerance 10^{}, negative outside exceptions at {violations:?}",
                        tol_exp(prec)
                    )
                },
            )
        }
    }
}

fn tangency_check_dec(
    direction: Direction,
    h: &Potential,
    ip: &Interpolant<Dec>,
    nodes: &NodeMultiset,
    avoid: &AvoidSet,
    prec: u32,
) -> Result<Check, CertifyError> {
    // orient so the wanted inequality reads d ≥ 0: d = h − f for lower
    // bounds, f − h for upper bounds
    let orient = |d: Dec| match direction {
        Direction::Lower => d,
        Direction::Upper => d.neg(),
    };
    let grid_margin = Dec::pow10(GRID_MARGIN_EXP, prec).neg();
    let curv_margin = Dec::pow10(CURVATURE_MARGIN_EXP, prec).neg();

    let mut min_grid: Option<Dec> = None;
    for (lo, hi) in avoid.complement() {
        let span = &hi - &lo;
        for j in 0..=GRID_STEPS {
            let x = &lo + &span * rat(j, GRID_STEPS);
            let hv = match h.eval_dec(&x, 0, prec) {
                Ok(v) => v,
                // a pole (lower bounds only): h = +∞ dominates any f there
                Err(PotentialError::Unbounded { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            let d = orient(hv.sub(&ip.eval(&x, prec)));
            min_grid = Some(match min_grid {
                Some(m) if m <= d => m,
                _ => d,
            });
        }
    }
    let mut min_curv: Option<Dec> = None;
    for (t, mult) in nodes.distinct() {
        if mult >= 2 {
            let hv = h.eval_dec(&t, 2, prec)?;
            let d = orient(hv.sub(&ip.derivative_at(&t, 2, prec)));
            min_curv = Some(match min_curv {
                Some(m) if m <= d => m,
                _ => d,
            });
        }
    }

    let grid_ok = min_grid.as_ref().map_or(true, |m| *m >= grid_margin);
    let curv_ok = min_curv.as_ref().map_or(true, |m| *m >= curv_margin);
    let fmt_opt = |v: &Option<Dec>| match v {
        Some(d) => d.to_string(),
        None => String::from("n/a"),
    };
    Ok(check(
        "tangency_margins",
        grid_ok && curv_ok,
        format!(
            "min one-sided gap {} (≥ −10^{GRID_MARGIN_EXP}), min curvature at double nodes {} (≥ −10^{CURVATURE_MARGIN_EXP})",
            fmt_opt(&min_grid),
            fmt_opt(&min_curv)
        ),
    ))
}

#[allow(clippy::too_many_arguments)]
fn build_exact(
    direction: Direction,
    h: &Potential,
    avoid: &AvoidSet,
    nodes: &NodeMultiset,
    class: AdmissibilityClass,
    dim: u32,
    n_points: u64,
) -> Result<ExactCertificate, CertifyError> {
    let ip = hermite_interpolant::<Rational, _>(nodes, h, ())?;
    let basis = GegenbauerBasis::new(dim, nodes.len() - 1)?;
    let geg = basis.expand_scalar::<Rational>(ip.coeffs(), ())?;

    let mut checks = Vec::new();
    checks.push(nodes_outside_avoid_check(nodes, avoid));
    checks.push(remainder_derivative_check_exact(h, nodes.len())?);
    checks.push(remainder_sign_check(direction, nodes, avoid));
    checks.push(interpolation_check_exact(h, &ip, nodes)?);
    checks.push(admissibility_check_exact(
        "admissibility_signs",
        &class,
        &geg,
        dim,
    ));

    let n = Rational::from_integer(n_points.into());
    let f1 = ip.eval(&rat_int(1), ());
    let bound = &geg[0] * &n - &f1;

    let mut design_energy = None;
    let mut gap = None;
    if let Some(design) = reference_design(dim, n_points) {
        // second, independent route to f₀ through the design's quadrature
        // rule; exact agreement is the consistency identity behind equality
        let q = design.quadrature(dim)?;
        let poly = interpolant_poly(&ip);
        let mut f0q = rat_int(0);
        for (x, w) in q.points() {
            f0q += poly.eval(x) * w;
        }
        let via_quadrature = &f0q * &n - &f1;
        checks.push(check(
            "bound_routes_agree",
            via_quadrature == bound,
            format!("expansion route {bound}, quadrature route {via_quadrature}"),
        ));
        match design.energy(h) {
            Ok(energy) => {
                let g = match direction {
                    Direction::Lower => &energy - &bound,
                    Direction::Upper => &bound - &energy,
                };
                checks.push(check(
                    "bound_equals_design_energy",
                    g.is_zero(),
                    format!("bound {bound}, design energy {energy}, gap {g}"),
                ));
                design_energy = Some(energy);
                gap = Some(g);
            }
            // unbounded on an inner product: bound-only certificate
            Err(PotentialError::Unbounded { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }

    Ok(BoundCertificate {
        direction,
        dim,
        n_points,
        avoid: avoid.clone(),
        nodes: nodes.clone(),
        potential: h.clone(),
        interpolant_coeffs: ip.coeffs().to_vec(),
        gegenbauer_coeffs: geg,
        sign_exceptions: class.exceptions(),
        class,
        bound,
        design_energy,
        gap,
        checks,
        ctx: (),
    })
}

#[allow(clippy::too_many_arguments)]
fn build_dec(
    direction: Direction,
    h: &Potential,
    avoid: &AvoidSet,
    nodes: &NodeMultiset,
    class: AdmissibilityClass,
    dim: u32,
    n_points: u64,
    prec: u32,
) -> Result<FloatCertificate, CertifyError> {
    let ip = hermite_interpolant::<Dec, _>(nodes, h, prec)?;
    let basis = GegenbauerBasis::new(dim, nodes.len() - 1)?;
    let geg = basis.expand_scalar::<Dec>(ip.coeffs(), prec)?;

    let mut checks = Vec::new();
    checks.push(nodes_outside_avoid_check(nodes, avoid));
    checks.push(remainder_derivative_check_dec(h, nodes.len(), prec)?);
    checks.push(remainder_sign_check(direction, nodes, avoid));
    checks.push(interpolation_check_dec(h, &ip, nodes, prec)?);
    checks.push(admissibility_check_dec(
        "admissibility_signs",
        &class,
        &geg,
        prec,
    ));
    checks.push(tangency_check_dec(direction, h, &ip, nodes, avoid, prec)?);

    let n = Dec::from_rational(&Rational::from_integer(n_points.into()), prec);
    let f1 = ip.eval(&rat_int(1), prec);
    let bound = geg[0].mul(&n).sub(&f1);
    let rel_tol = |value: &Dec| {
        let scale = if value.is_zero() {
            Dec::one(prec)
        } else {
            value.abs()
        };
        Dec::pow10(tol_exp(prec), prec).mul(&scale)
    };

    let mut design_energy = None;
    let mut gap = None;
    if let Some(design) = reference_design(dim, n_points) {
        let q = design.quadrature(dim)?;
        let mut f0q = Dec::zero(prec);
        for (x, w) in q.points() {
            f0q = f0q.add(&ip.eval(x, prec).mul(&Dec::from_rational(w, prec)));
        }
        let via_quadrature = f0q.mul(&n).sub(&f1);
        let drift = via_quadrature.sub(&bound).abs();
        checks.push(check(
            "bound_routes_agree",
            drift <= rel_tol(&bound),
            format!(
                "expansion route {bound}, quadrature route {via_quadrature}, drift {drift}"
            ),
        ));
        match design.energy_dec(h, prec) {
            Ok(energy) => {
                let g = match direction {
                    Direction::Lower => energy.sub(&bound),
                    Direction::Upper => bound.sub(&energy),
                };
                checks.push(check(
                    "bound_equals_design_energy",
                    g.abs() <= rel_tol(&energy),
                    format!("bound {bound}, design energy {energy}, gap {g}"),
                ));
                design_energy = Some(energy);
                gap = Some(g);
            }
            Err(PotentialError::Unbounded { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }

    Ok(BoundCertificate {
        direction,
        dim,
        n_points,
        avoid: avoid.clone(),
        nodes: nodes.clone(),
        potential: h.clone(),
        interpolant_coeffs: ip.coeffs().to_vec(),
        gegenbauer_coeffs: geg,
        sign_exceptions: class.exceptions(),
        class,
        bound,
        design_energy,
        gap,
        checks,
        ctx: prec,
    })
}

/// Outcome of re-deriving a certificate from its raw inputs.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn rebuild_summary_checks<S: crate::scalar::Scalar>(
    stored: &BoundCertificate<S>,
    rebuilt: &BoundCertificate<S>,
) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.push(check(
        "rebuild",
        true,
        String::from("certificate rebuilt from raw inputs"),
    ));
    let failed: Vec<&str> = rebuilt.failed_checks().map(|c| c.name.as_str()).collect();
    checks.push(check(
        "rebuilt_checks_pass",
        failed.is_empty(),
        if failed.is_empty() {
            String::from("all rebuilt checks pass")
        } else {
            format!("rebuilt checks failing: {}", failed.join(", "))
        },
    ));
    checks.push(check(
        "nodes_match",
        stored.nodes == rebuilt.nodes,
        format!("{} stored nodes", stored.nodes.len()),
    ));
    checks.push(check(
        "exceptions_match_class",
        stored.sign_exceptions == stored.class.exceptions(),
        format!(
            "stored exceptions {:?}, class {}",
            stored.sign_exceptions,
            stored.class.spec_string()
        ),
    ));
    checks
}

/// Re-derives an exact certificate from its raw inputs and checks every
/// stored value against the recomputation. Failures are report entries,
/// never errors: a tampered certificate is data, not a precondition.
pub fn verify_certificate_exact(c: &ExactCertificate) -> VerificationReport {
    let rebuilt = match c.direction {
        Direction::Lower => lower_certificate_exact(&c.potential, &c.avoid, c.dim, c.n_points),
        Direction::Upper => upper_certificate_exact(&c.potential, &c.avoid, c.dim, c.n_points),
    };
    let rebuilt = match rebuilt {
        Ok(r) => r,
        Err(e) => {
            return VerificationReport {
                checks: alloc::vec![check(
                    "rebuild",
                    false,
                    format!("rebuilding from raw inputs failed: {e}"),
                )],
            }
        }
    };
    let mut checks = rebuild_summary_checks(c, &rebuilt);
    checks.push(check(
        "interpolant_matches",
        c.interpolant_coeffs == rebuilt.interpolant_coeffs,
        format!("{} stored coefficients", c.interpolant_coeffs.len()),
    ));
    checks.push(check(
        "expansion_matches",
        c.gegenbauer_coeffs == rebuilt.gegenbauer_coeffs,
        format!("{} stored coefficients", c.gegenbauer_coeffs.len()),
    ));

    // the bound from the certificate's own stored numbers
    let n = Rational::from_integer(c.n_points.into());
    let f1 = RationalPoly::from_coeffs(c.interpolant_coeffs.clone()).eval(&rat_int(1));
    let f0 = c
        .gegenbauer_coeffs
        .first()
        .cloned()
        .unwrap_or_else(|| rat_int(0));
    let recomputed = &f0 * &n - &f1;
    checks.push(check(
        "stored_bound_recomputed",
        recomputed == c.bound,
        format!("stored {}, recomputed {recomputed}", c.bound),
    ));
    checks.push(admissibility_check_exact(
        "stored_class_signs",
        &c.class,
        &c.gegenbauer_coeffs,
        c.dim,
    ));

    match (&c.design_energy, &rebuilt.design_energy) {
        (Some(stored), Some(fresh)) => {
            checks.push(check(
                "stored_energy_matches",
                stored == fresh,
                format!("stored {stored}, recomputed {fresh}"),
            ));
        }
        (None, None) => {}
        _ => checks.push(check(
            "stored_energy_matches",
            false,
            String::from("stored and recomputed design-energy presence disagree"),
        )),
    }
    match (&c.design_energy, &c.gap) {
        (Some(energy), Some(gap)) => {
            let expect = match c.direction {
                Direction::Lower => energy - &c.bound,
                Direction::Upper => &c.bound - energy,
            };
            checks.push(check(
                "stored_gap_consistent",
                gap == &expect,
                format!("stored {gap}, expected {expect}"),
            ));
        }
        (None, None) => {}
        _ => checks.push(check(
            "stored_gap_consistent",
            false,
            String::from("gap and design energy must be stored together"),
        )),
    }
    VerificationReport { checks }
}

/// Decimal-kind analogue of [`verify_certificate_exact`]; comparisons use
/// the precision-scaled tolerance instead of exact equality.
pub fn verify_certificate_dec(c: &FloatCertificate) -> VerificationReport {
    let prec = c.ctx;
    let rebuilt = match c.direction {
        Direction::Lower => {
            lower_certificate_dec(&c.potential, &c.avoid, c.dim, c.n_points, prec)
        }
        Direction::Upper => {
            upper_certificate_dec(&c.potential, &c.avoid, c.dim, c.n_points, prec)
        }
    };
    let rebuilt = match rebuilt {
        Ok(r) => r,
        Err(e) => {
            return VerificationReport {
                checks: alloc::vec![check(
                    "rebuild",
                    false,
                    format!("rebuilding from raw inputs failed: {e}"),
                )],
            }
        }
    };
    let tol = Dec::pow10(tol_exp(prec), prec);
    let rel_tol = |value: &Dec| {
        let scale = if value.is_zero() {
            Dec::one(prec)
        } else {
            value.abs()
        };
        tol.mul(&scale)
    };
    let vec_close = |a: &[Dec], b: &[Dec]| {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| x.sub(y).abs() <= tol)
    };

    let mut checks = rebuild_summary_checks(c, &rebuilt);
    checks.push(check(
        "interpolant_matches",
        vec_close(&c.interpolant_coeffs, &rebuilt.interpolant_coeffs),
        format!(
            "{} stored coefficients within 10^{}",
            c.interpolant_coeffs.len(),
            tol_exp(prec)
        ),
    ));
    checks.push(check(
        "expansion_matches",
        vec_close(&c.gegenbauer_coeffs, &rebuilt.gegenbauer_coeffs),
        format!(
            "{} stored coefficients within 10^{}",
            c.gegenbauer_coeffs.len(),
            tol_exp(prec)
        ),
    ));

    let n = Dec::from_rational(&Rational::from_integer(c.n_points.into()), prec);
    let mut f1 = Dec::zero(prec);
    for coeff in c.interpolant_coeffs.iter().rev() {
        f1 = f1.add(coeff); // Horner at t = 1 degenerates to a plain sum
    }
    let f0 = c
        .gegenbauer_coeffs
        .first()
        .cloned()
        .unwrap_or_else(|| Dec::zero(prec));
    let recomputed = f0.mul(&n).sub(&f1);
    checks.push(check(
        "stored_bound_recomputed",
        recomputed.sub(&c.bound).abs() <= rel_tol(&c.bound),
        format!("stored {}, recomputed {recomputed}", c.bound),
    ));
    checks.push(admissibility_check_dec(
        "stored_class_signs",
        &c.class,
        &c.gegenbauer_coeffs,
        prec,
    ));

    match (&c.design_energy, &rebuilt.design_energy) {
        (Some(stored), Some(fresh)) => {
            checks.push(check(
                "stored_energy_matches",
                stored.sub(fresh).abs() <= rel_tol(fresh),
                format!("stored {stored}, recomputed {fresh}"),
            ));
        }
        (None, None) => {}
        _ => checks.push(check(
            "stored_energy_matches",
            false,
            String::from("stored and recomputed design-energy presence disagree"),
        )),
    }
    match (&c.design_energy, &c.gap) {
        (Some(energy), Some(gap)) => {
            let expect = match c.direction {
                Direction::Lower => energy.sub(&c.bound),
                Direction::Upper => c.bound.sub(energy),
            };
            checks.push(check(
                "stored_gap_consistent",
                gap.sub(&expect).abs() <= rel_tol(energy),
                format!("stored {gap}, expected {expect}"),
            ));
        }
        (None, None) => {}
        _ => checks.push(check(
            "stored_gap_consistent",
            false,
            String::from("gap and design energy must be stored together"),
        )),
    }
    VerificationReport { checks }
}

/// Both lower bounds, the upper bound, and the reference design energy for
/// one potential — the three-theorem squeeze that forces equality.
#[derive(Debug, Clone)]
pub struct SandwichReport<S: crate::scalar::Scalar> {
    pub potential: String,
    pub lower_t1: BoundCertificate<S>,
    pub lower_t2: BoundCertificate<S>,
    pub upper: BoundCertificate<S>,
    pub energy: S,
    /// All three bounds equal the design energy (exactly, or within the
    /// kind's tolerance).
    pub coincide: bool,
    pub all_valid: bool,
}

/// Exact-kind sandwich for the built-in design. Requires h finite at 1
/// (the upper bound needs h(1)).
pub fn sandwich_exact(h: &Potential) -> Result<SandwichReport<Rational>, CertifyError> {
    if !h.finite_at_one() {
        return Err(CertifyError::InfiniteAtOne {
            spec: h.spec_string(),
        });
    }
    let lower_t1 = lower_certificate_exact(h, &AvoidSet::t1(), P48_DIM, P48_POINTS)?;
    let lower_t2 = lower_certificate_exact(h, &AvoidSet::t2(), P48_DIM, P48_POINTS)?;
    let upper = upper_certificate_exact(h, &AvoidSet::t1(), P48_DIM, P48_POINTS)?;
    let energy = p48().energy(h)?;
    let coincide =
        lower_t1.bound == energy && lower_t2.bound == energy && upper.bound == energy;
    let all_valid = lower_t1.is_valid() && lower_t2.is_valid() && upper.is_valid();
    Ok(SandwichReport {
        potential: h.spec_string(),
        lower_t1,
        lower_t2,
        upper,
        energy,
        coincide,
        all_valid,
    })
}

/// Decimal-kind sandwich at `prec` digits.
pub fn sandwich_dec(h: &Potential, prec: u32) -> Result<SandwichReport<Dec>, CertifyError> {
    if !h.finite_at_one() {
        return Err(CertifyError::InfiniteAtOne {
            spec: h.spec_string(),
        });
    }
    let lower_t1 = lower_certificate_dec(h, &AvoidSet::t1(), P48_DIM, P48_POINTS, prec)?;
    let lower_t2 = lower_certificate_dec(h, &AvoidSet::t2(), P48_DIM, P48_POINTS, prec)?;
    let upper = upper_certificate_dec(h, &AvoidSet::t1(), P48_DIM, P48_POINTS, prec)?;
    let energy = p48().energy_dec(h, prec)?;
    let tol = Dec::pow10(tol_exp(prec), prec).mul(&if energy.is_zero() {
        Dec::one(prec)
    } else {
        energy.abs()
    });
    let close = |b: &Dec| b.sub(&energy).abs() <= tol;
    let coincide = close(&lower_t1.bound) && close(&lower_t2.bound) && close(&upper.bound);
    let all_valid = lower_t1.is_valid() && lower_t2.is_valid() && upper.is_valid();
    Ok(SandwichReport {
        potential: h.spec_string(),
        lower_t1,
        lower_t2,
        upper,
        energy,
        coincide,
        all_valid,
    })
}
