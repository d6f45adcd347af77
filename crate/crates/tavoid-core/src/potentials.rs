//! Pair potentials and their derivative oracles.
//!
//! Three families, all absolutely monotone on [−1, 1) by construction:
//!
//! * `poly:[c0,c1,...]` — polynomials Σ cₖ(1+t)^k with every cₖ ≥ 0;
//! * `riesz:s=<int>` — inverse power laws (2−2t)^{−s/2} of the chordal
//!   distance, exact at rational t when s is even;
//! * `gauss:sigma=<rational>` — e^{2σ(t−1)}, σ > 0.
//!
//! Derivatives of any order come from closed forms, never finite differences.
//! Each family answers in two scalar kinds: exact rationals (when the family
//! supports it) and fixed-precision decimals.

pub mod dec;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::ratpoly::{poly_from_csv, rat_int, Rational, RationalPoly};
use crate::scalar::Scalar;
use dec::Dec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PotentialError {
    #[error("`{spec}` takes no exact rational values; use the decimal kind")]
    NotExact { spec: String },
    #[error("potential is unbounded at t = {t}")]
    Unbounded { t: Rational },
    #[error("shifted-basis coefficient {index} is negative")]
    NegativeCoefficient { index: usize },
    #[error("invalid potential: {0}")]
    Invalid(String),
}

/// Derivative oracle in scalar kind `S`: the k-th derivative of a function at
/// a rational point. Interpolation tables are built against this trait, so
/// the same divided-difference code serves exact and decimal scalars.
pub trait DerivativeOracle<S: Scalar> {
    fn derivative(&self, t: &Rational, order: usize, ctx: S::Ctx) -> Result<S, PotentialError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Rational values at rational points.
    Exact,
    /// Values require decimal arithmetic (odd Riesz exponents, Gaussians).
    Float,
}

#[derive(Clone, PartialEq, Eq)]
pub enum Potential {
    Poly {
        /// Coefficients on the basis (1+t)^k, all non-negative.
        shifted: Vec<Rational>,
        /// The same polynomial expanded in powers of t.
        expanded: RationalPoly,
    },
    Riesz { s: u32 },
    Gauss { sigma: Rational },
}

impl Potential {
    /// Builds Σ cₖ(1+t)^k, rejecting negative coefficients (non-negativity
    /// is what makes the family absolutely monotone).
    pub fn poly_from_shifted(coeffs: Vec<Rational>) -> Result<Self, PotentialError> {
        for (index, c) in coeffs.iter().enumerate() {
            if c.is_negative() {
                return Err(PotentialError::NegativeCoefficient { index });
            }
        }
        let one_plus_t = RationalPoly::from_coeffs([rat_int(1), rat_int(1)].to_vec());
        let mut expanded = RationalPoly::zero();
        let mut basis = RationalPoly::one();
        for c in &coeffs {
            expanded = &expanded + &basis.scale(c);
            basis = &basis * &one_plus_t;
        }
        Ok(Potential::Poly {
            shifted: coeffs,
            expanded,
        })
    }

    pub fn riesz(s: u32) -> Result<Self, PotentialError> {
        if s == 0 {
            return Err(PotentialError::Invalid("riesz exponent must be ≥ 1".into()));
        }
        Ok(Potential::Riesz { s })
    }

    pub fn gauss(sigma: Rational) -> Result<Self, PotentialError> {
        if !sigma.is_positive() {
            return Err(PotentialError::Invalid(format!(
                "gauss width must be positive, got {sigma}"
            )));
        }
        Ok(Potential::Gauss { sigma })
    }

    /// Parses the spec grammar: `poly:[c0,c1,...]`, `riesz:s=<int>`,
    /// `gauss:sigma=<rational>`.
    pub fn parse(spec: &str) -> Result<Self, PotentialError> {
        let spec = spec.trim();
        if let Some(body) = spec.strip_prefix("poly:") {
            let body = body.trim();
            let inner = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| {
                    PotentialError::Invalid("poly coefficients must be bracketed: poly:[...]".into())
                })?;
            let p = poly_from_csv(inner).map_err(PotentialError::Invalid)?;
            // keep the raw list (including trailing zeros trimmed by the parse)
            let coeffs: Vec<Rational> = inner
                .split(',')
                .map(|s| s.trim().parse::<Rational>())
                .collect::<Result<_, _>>()
                .map_err(|e| PotentialError::Invalid(e.to_string()))?;
            let _ = p;
            Self::poly_from_shifted(coeffs)
        } else if let Some(body) = spec.strip_prefix("riesz:") {
            let v = body
                .trim()
                .strip_prefix("s=")
                .ok_or_else(|| PotentialError::Invalid("expected riesz:s=<int>".into()))?;
            let s: u32 = v
                .trim()
                .parse()
                .map_err(|_| PotentialError::Invalid(format!("bad riesz exponent `{v}`")))?;
            Self::riesz(s)
        } else if let Some(body) = spec.strip_prefix("gauss:") {
            let v = body
                .trim()
                .strip_prefix("sigma=")
                .ok_or_else(|| PotentialError::Invalid("expected gauss:sigma=<rational>".into()))?;
            let sigma: Rational = v
                .trim()
                .parse()
                .map_err(|_| PotentialError::Invalid(format!("bad gauss width `{v}`")))?;
            Self::gauss(sigma)
        } else {
            Err(PotentialError::Invalid(format!(
                "unknown potential spec `{spec}` (expected poly:[...], riesz:s=..., gauss:sigma=...)"
            )))
        }
    }

    /// Canonical spec string; `parse` of the output reproduces the value.
    pub fn spec_string(&self) -> String {
        match self {
            Potential::Poly { shifted, .. } => {
                let parts: Vec<String> = shifted.iter().map(|c| c.to_string()).collect();
                format!("poly:[{}]", parts.join(","))
            }
            Potential::Riesz { s } => format!("riesz:s={s}"),
            Potential::Gauss { sigma } => format!("gauss:sigma={sigma}"),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Potential::Poly { .. } => Kind::Exact,
            Potential::Riesz { s } => {
                if s % 2 == 0 {
                    Kind::Exact
                } else {
                    Kind::Float
                }
            }
            Potential::Gauss { .. } => Kind::Float,
        }
    }

    /// False exactly for the Riesz family, which blows up at t = 1.
    pub fn finite_at_one(&self) -> bool {
        !matches!(self, Potential::Riesz { .. })
    }

    /// All built-in families are constructed absolutely monotone; the poly
    /// family enforces it by rejecting negative shifted coefficients.
    pub fn claims_abs_monotone(&self) -> bool {
        true
    }

    /// Π_{j<k} (s + 2j): the integer prefactor of the k-th Riesz derivative,
    /// from 2^k · (s/2)(s/2+1)⋯(s/2+k−1).
    fn riesz_prefactor(s: u32, order: usize) -> BigInt {
        let mut f = BigInt::one();
        for j in 0..order {
            f *= BigInt::from(s as u64 + 2 * j as u64);
        }
        f
    }

    /// k-th derivative at rational t, exactly. Errors for the decimal-only
    /// families and for Riesz potentials at t ≥ 1.
    pub fn eval_rational(&self, t: &Rational, order: usize) -> Result<Rational, PotentialError> {
        match self {
            Potential::Poly { expanded, .. } => Ok(expanded.derivative_n(order).eval(t)),
            Potential::Riesz { s } => {
                if *t >= rat_int(1) {
                    return Err(PotentialError::Unbounded { t: t.clone() });
                }
                if s % 2 != 0 {
                    return Err(PotentialError::NotExact {
                        spec: self.spec_string(),
                    });
                }
                let u = Rational::from_integer(2.into()) - t - t; // 2 − 2t > 0
                let m = (*s as usize) / 2 + order;
                let upow = num_traits::pow(u, m);
                Ok(Rational::from(Self::riesz_prefactor(*s, order)) / upow)
            }
            Potential::Gauss { .. } => Err(PotentialError::NotExact {
                spec: self.spec_string(),
            }),
        }
    }

    /// k-th derivative at rational t in the decimal kind, correct to well
    /// within one ulp at `prec` digits (computed with 10 guard digits).
    pub fn eval_dec(&self, t: &Rational, order: usize, prec: u32) -> Result<Dec, PotentialError> {
        match self {
            Potential::Poly { .. } => {
                let v = self.eval_rational(t, order)?;
                Ok(Dec::from_rational(&v, prec))
            }
            Potential::Riesz { s } => {
                if s % 2 == 0 {
                    let v = self.eval_rational(t, order)?;
                    return Ok(Dec::from_rational(&v, prec));
                }
                if *t >= rat_int(1) {
                    return Err(PotentialError::Unbounded { t: t.clone() });
                }
                let w = prec + 10;
                let u = Rational::from_integer(2.into()) - t - t;
                // (2−2t)^{−(s+2k)/2} = 1 / sqrt(u^{s+2k})
                let upow = num_traits::pow(u, *s as usize + 2 * order);
                let root = Dec::from_rational(&upow, w).sqrt();
                let factor =
                    Dec::from_rational(&Rational::from(Self::riesz_prefactor(*s, order)), w);
                Ok(factor.div(&root).with_prec(prec))
            }
            Potential::Gauss { sigma } => {
                let w = prec + 10;
                let two_sigma = sigma + sigma;
                let arg = &two_sigma * &(t - rat_int(1));
                let factor = num_traits::pow(two_sigma, order);
                let e = Dec::from_rational(&arg, w).exp();
                Ok(Dec::from_rational(&factor, w).mul(&e).with_prec(prec))
            }
        }
    }
}

impl DerivativeOracle<Rational> for Potential {
    fn derivative(&self, t: &Rational, order: usize, _: ()) -> Result<Rational, PotentialError> {
        self.eval_rational(t, order)
    }
}

impl DerivativeOracle<Dec> for Potential {
    fn derivative(&self, t: &Rational, order: usize, prec: u32) -> Result<Dec, PotentialError> {
        self.eval_dec(t, order, prec)
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec_string())
    }
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Potential({})", self.spec_string())
    }
}

/// Numeric absolute-monotonicity check: every derivative up to `max_order`
/// non-negative at every grid point. Diagnostic companion to
/// [`Potential::claims_abs_monotone`]; works for any derivative oracle.
pub struct AbsMonotoneWitness {
    pub ok: bool,
    /// Smallest derivative value seen across the whole sweep.
    pub min_value: Dec,
    /// (grid point, order) pairs where a derivative came out negative.
    pub violations: Vec<(Rational, usize)>,
}

pub fn abs_monotone_witness<O: DerivativeOracle<Dec>>(
    h: &O,
    grid: &[Rational],
    max_order: usize,
    prec: u32,
) -> Result<AbsMonotoneWitness, PotentialError> {
    let mut min_value: Option<Dec> = None;
    let mut violations = Vec::new();
    for t in grid {
        for order in 0..=max_order {
            let v = h.derivative(t, order, prec)?;
            if v.is_negative() {
                violations.push((t.clone(), order));
            }
            min_value = Some(match min_value {
                Some(m) if m <= v => m,
                _ => v,
            });
        }
    }
    Ok(AbsMonotoneWitness {
        ok: violations.is_empty(),
        min_value: min_value.unwrap_or_else(|| Dec::zero(prec)),
        violations,
    })
}

/// Uniform rational grid on [−1, a] with `points` samples (a = 1 − 1/points),
/// staying clear of the Riesz singularity at 1.
pub fn default_grid(points: usize) -> Vec<Rational> {
    let n = points.max(2) as i64;
    (0..n)
        .map(|i| {
            // −1 + 2i/n
            Rational::new((2 * i - n).into(), n.into())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, rat_int};

    #[test]
    fn parse_round_trip() {
        for spec in ["poly:[1,0,3/2]", "riesz:s=4", "gauss:sigma=1/2"] {
            let p = Potential::parse(spec).unwrap();
            assert_eq!(p.spec_string(), spec);
            assert_eq!(Potential::parse(&p.spec_string()).unwrap(), p);
        }
        assert!(Potential::parse("riesz:s=0").is_err());
        assert!(Potential::parse("gauss:sigma=0").is_err());
        assert!(Potential::parse("gauss:sigma=-1").is_err());
        assert!(Potential::parse("poly:[1,-2]").is_err());
        assert!(Potential::parse("poly:1,2").is_err());
        assert!(Potential::parse("newton:g=1").is_err());
        assert!(Potential::parse("riesz:s=x").is_err());
    }

    #[test]
    fn kinds_and_flags() {
        let r2 = Potential::parse("riesz:s=2").unwrap();
        let r3 = Potential::parse("riesz:s=3").unwrap();
        let g = Potential::parse("gauss:sigma=1").unwrap();
        let p = Potential::parse("poly:[0,1]").unwrap();
        assert_eq!(r2.kind(), Kind::Exact);
        assert_eq!(r3.kind(), Kind::Float);
        assert_eq!(g.kind(), Kind::Float);
        assert_eq!(p.kind(), Kind::Exact);
        assert!(!r2.finite_at_one());
        assert!(g.finite_at_one());
        assert!(p.finite_at_one());
    }

    #[test]
    fn riesz_even_values() {
        let h = Potential::parse("riesz:s=2").unwrap();
        // (2−2t)^{−1}
        assert_eq!(h.eval_rational(&rat(1, 2), 0).unwrap(), rat_int(1));
        assert_eq!(h.eval_rational(&rat_int(-1), 0).unwrap(), rat(1, 4));
        assert_eq!(h.eval_rational(&rat_int(0), 0).unwrap(), rat(1, 2));
        // h' = 2(2−2t)^{−2}: at 0 → 1/2
        assert_eq!(h.eval_rational(&rat_int(0), 1).unwrap(), rat(1, 2));
        // h'' = 8(2−2t)^{−3}: at 0 → 1
        assert_eq!(h.eval_rational(&rat_int(0), 2).unwrap(), rat_int(1));
        assert!(matches!(
            h.eval_rational(&rat_int(1), 0),
            Err(PotentialError::Unbounded { .. })
        ));
        assert!(matches!(
            h.eval_rational(&rat(3, 2), 0),
            Err(PotentialError::Unbounded { .. })
        ));
    }

    #[test]
    fn riesz_exact_at_design_abscissae() {
        let h = Potential::parse("riesz:s=4").unwrap();
        for t in [
            rat_int(-1),
            rat(-1, 2),
            rat(-1, 3),
            rat(-1, 6),
            rat_int(0),
            rat(1, 6),
            rat(1, 3),
            rat(1, 2),
        ] {
            let v = h.eval_rational(&t, 0).unwrap();
            assert!(v.is_positive());
        }
        assert_eq!(h.eval_rational(&rat(1, 2), 0).unwrap(), rat_int(1));
        assert_eq!(h.eval_rational(&rat_int(-1), 0).unwrap(), rat(1, 16));
    }

    #[test]
    fn riesz_odd_decimal() {
        let p = 55;
        let h = Potential::parse("riesz:s=3").unwrap();
        assert!(matches!(
            h.eval_rational(&rat_int(0), 0),
            Err(PotentialError::NotExact { .. })
        ));
        // (2−1)^{−3/2} = 1
        assert_eq!(h.eval_dec(&rat(1, 2), 0, p).unwrap(), Dec::one(p));
        // 2^{−3/2} = √2/4
        let sqrt2 = Dec::parse(
            "1.414213562373095048801688724209698078569671875376948073",
            p,
        )
        .unwrap();
        let expect = sqrt2.div(&Dec::from_u32(4, p));
        let got = h.eval_dec(&rat_int(0), 0, p).unwrap();
        assert!(got.sub(&expect).abs() < Dec::pow10(-(p as i64) + 2, p));
        // first derivative prefactor is s = 3: h'(0) = 3·2^{−5/2} = 3√2/8
        let expect1 = sqrt2.mul(&Dec::from_u32(3, p)).div(&Dec::from_u32(8, p));
        let got1 = h.eval_dec(&rat_int(0), 1, p).unwrap();
        assert!(got1.sub(&expect1).abs() < Dec::pow10(-(p as i64) + 2, p));
    }

    #[test]
    fn gauss_values() {
        let p = 55;
        let g = Potential::parse("gauss:sigma=4").unwrap();
        assert_eq!(g.eval_dec(&rat_int(1), 0, p).unwrap(), Dec::one(p));
        // e^{8(0−1)} = e^{−8}
        let expect = Dec::parse(
            "3.354626279025118388213891257808610193109001337203193605e-4",
            p,
        )
        .unwrap();
        assert_eq!(g.eval_dec(&rat_int(0), 0, p).unwrap(), expect);
        // with σ = 1/2 the second derivative equals the value
        let g2 = Potential::parse("gauss:sigma=1/2").unwrap();
        let v0 = g2.eval_dec(&rat(1, 3), 0, p).unwrap();
        let v2 = g2.eval_dec(&rat(1, 3), 2, p).unwrap();
        assert_eq!(v0, v2);
        assert!(g.eval_rational(&rat_int(0), 0).is_err());
    }

    #[test]
    fn poly_shifted_basis() {
        // (1+t)^12
        let mut coeffs = alloc::vec![rat_int(0); 13];
        coeffs[12] = rat_int(1);
        let h = Potential::poly_from_shifted(coeffs).unwrap();
        assert_eq!(h.eval_rational(&rat_int(0), 0).unwrap(), rat_int(1));
        assert_eq!(h.eval_rational(&rat_int(1), 0).unwrap(), rat_int(4096));
        // 12th derivative is the constant 12!
        let twelve_fact = rat_int(479001600);
        assert_eq!(h.eval_rational(&rat(1, 7), 12).unwrap(), twelve_fact);
        assert_eq!(h.eval_rational(&rat(-2, 3), 12).unwrap(), twelve_fact);
        assert_eq!(h.eval_rational(&rat_int(0), 13).unwrap(), rat_int(0));
        // decimal kind agrees with the exact kind
        let d = h.eval_dec(&rat(1, 6), 0, 40).unwrap();
        let exact = h.eval_rational(&rat(1, 6), 0).unwrap();
        assert_eq!(d, Dec::from_rational(&exact, 40));
    }

    #[test]
    fn witness_accepts_builtins_and_rejects_decreasing() {
        let grid = default_grid(21);
        assert_eq!(grid.len(), 21);
        assert_eq!(grid[0], rat_int(-1));
        for spec in ["riesz:s=4", "riesz:s=3", "gauss:sigma=2", "poly:[1,2,0,1/3]"] {
            let h = Potential::parse(spec).unwrap();
            let w = abs_monotone_witness(&h, &grid, 5, 40).unwrap();
            assert!(w.ok, "{spec} flagged at {:?}", w.violations);
            assert!(!w.min_value.is_negative());
        }

        struct Decreasing;
        impl DerivativeOracle<Dec> for Decreasing {
            fn derivative(
                &self,
                t: &Rational,
                order: usize,
                prec: u32,
            ) -> Result<Dec, PotentialError> {
                // −t: value −t, first derivative −1
                let v = match order {
                    0 => -t.clone(),
                    1 => rat_int(-1),
                    _ => rat_int(0),
                };
                Ok(Dec::from_rational(&v, prec))
            }
        }
        let w = abs_monotone_witness(&Decreasing, &grid, 2, 40).unwrap();
        assert!(!w.ok);
        assert!(w.violations.iter().any(|(_, k)| *k == 1));
        assert!(w.min_value.is_negative());
    }
}
