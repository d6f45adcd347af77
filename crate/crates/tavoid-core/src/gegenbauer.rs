//! Ultraspherical polynomials for S^{n−1}, normalized to P_i(1) = 1.
//!
//! These are the positive-definite kernels on the sphere: three-term
//! recurrence P_i = ((2i+n−4)·t·P_{i−1} − (i−1)·P_{i−2}) / (i+n−3) from the
//! seeds P_0 = 1, P_1 = t, orthogonal under w(t) = (1−t²)^{(n−3)/2}. The
//! basis is exact (rational coefficients), built once per dimension and then
//! read-only.
//!
//! [`WeightMoments`] carries the normalized moments ∫t^k w / ∫w via the
//! recurrence μ_{2m} = μ_{2m−2}·(2m−1)/(n+2m−2) (odd moments vanish), so
//! orthogonality can be *checked* by pure rational arithmetic without ever
//! materializing the weight's normalization constant.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::ratpoly::{rat_int, Rational, RationalPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GegenbauerError {
    #[error("dimension must be ≥ 3, got {0}")]
    DimensionTooSmall(u32),
    #[error("degree {degree} exceeds basis capacity {max}")]
    DegreeExceedsBasis { degree: usize, max: usize },
}

pub struct GegenbauerBasis {
    dim: u32,
    polys: Vec<RationalPoly>,
}

impl GegenbauerBasis {
    /// Basis for S^{n−1} holding degrees 0..=max_degree.
    pub fn new(dim: u32, max_degree: usize) -> Result<Self, GegenbauerError> {
        if dim < 3 {
            return Err(GegenbauerError::DimensionTooSmall(dim));
        }
        let n = dim as i64;
        let mut polys = Vec::with_capacity(max_degree + 1);
        polys.push(RationalPoly::one());
        if max_degree >= 1 {
            polys.push(RationalPoly::monomial(rat_int(1), 1));
        }
        let t = RationalPoly::monomial(rat_int(1), 1);
        for i in 2..=max_degree as i64 {
            let a = RationalPoly::constant(rat_int(2 * i + n - 4));
            let lhs = &(&a * &t) * &polys[(i - 1) as usize];
            let rhs = polys[(i - 2) as usize].scale(&rat_int(i - 1));
            let p = (&lhs - &rhs).scale(&rat_int(i + n - 3).recip());
            polys.push(p);
        }
        Ok(GegenbauerBasis { dim, polys })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// P_i; panics beyond the construction degree (size the basis up front).
    pub fn poly(&self, i: usize) -> &RationalPoly {
        assert!(
            i <= self.max_degree(),
            "basis holds degrees 0..={}, asked for {i}",
            self.max_degree()
        );
        &self.polys[i]
    }

    fn leading(&self, i: usize) -> Rational {
        self.poly(i).leading().cloned().unwrap_or_else(|| rat_int(1))
    }

    /// Exact expansion p = Σ fᵢ·Pᵢ by triangular back-substitution.
    pub fn expand(&self, p: &RationalPoly) -> Result<GegenbauerExpansion, GegenbauerError> {
        let coeffs = self.expand_scalar::<Rational>(p.coeffs(), ())?;
        Ok(GegenbauerExpansion {
            dim: self.dim,
            coeffs,
        })
    }

    /// The same back-substitution over any scalar kind; `coeffs` are
    /// ascending monomial coefficients. With rational scalars the residual
    /// cancels identically; with decimals it is roundoff-small.
    pub fn expand_scalar<S: crate::scalar::Scalar>(
        &self,
        coeffs: &[S],
        ctx: S::Ctx,
    ) -> Result<Vec<S>, GegenbauerError> {
        if coeffs.is_empty() {
            return Ok(Vec::new());
        }
        let degree = coeffs.len() - 1;
        if degree > self.max_degree() {
            return Err(GegenbauerError::DegreeExceedsBasis {
                degree,
                max: self.max_degree(),
            });
        }
        let mut residual: Vec<S> = coeffs.to_vec();
        let mut out = vec![S::zero(ctx); coeffs.len()];
        for i in (0..coeffs.len()).rev() {
            let lead = S::from_rational(&self.leading(i), ctx);
            let fi = residual[i].div(&lead);
            for (k, c) in self.poly(i).coeffs().iter().enumerate() {
                let sub = fi.mul(&S::from_rational(c, ctx));
                residual[k] = residual[k].sub(&sub);
            }
            out[i] = fi;
        }
        Ok(out)
    }

    /// Σ fᵢ·Pᵢ back to monomial form.
    pub fn assemble(&self, e: &GegenbauerExpansion) -> RationalPoly {
        let mut p = RationalPoly::zero();
        for (i, f) in e.coeffs.iter().enumerate() {
            if !f.is_zero() {
                p = &p + &self.poly(i).scale(f);
            }
        }
        p
    }

    /// ⟨P_i, P_j⟩ under the sphere weight, normalized by ∫w; exactly zero
    /// for i ≠ j.
    pub fn orthogonality_residual(&self, i: usize, j: usize) -> Rational {
        let prod = self.poly(i) * self.poly(j);
        WeightMoments::new(self.dim, i + j).integrate(&prod)
    }
}

/// Normalized weight moments μ_k = ∫ t^k (1−t²)^{(n−3)/2} dt / ∫ (1−t²)^{(n−3)/2} dt.
pub struct WeightMoments {
    dim: u32,
    mu: Vec<Rational>,
}

impl WeightMoments {
    pub fn new(dim: u32, max_k: usize) -> Self {
        let n = dim as i64;
        let mut mu = vec![rat_int(0); max_k + 1];
        mu[0] = rat_int(1);
        let mut m = 1i64;
        while (2 * m) as usize <= max_k {
            let prev = mu[(2 * m - 2) as usize].clone();
            mu[(2 * m) as usize] = prev * Rational::new((2 * m - 1).into(), (n + 2 * m - 2).into());
            m += 1;
        }
        WeightMoments { dim, mu }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn moment(&self, k: usize) -> &Rational {
        &self.mu[k]
    }

    /// ∫ p·w / ∫ w as a finite rational combination of moments.
    pub fn integrate(&self, p: &RationalPoly) -> Rational {
        assert!(
            p.coeffs().len() <= self.mu.len(),
            "moments held to k = {}, polynomial has degree {:?}",
            self.mu.len() - 1,
            p.degree()
        );
        let mut acc = rat_int(0);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * &self.mu[k];
            }
        }
        acc
    }
}

/// Coefficients of p = Σ fᵢ·Pᵢ for a fixed dimension, indexed by i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GegenbauerExpansion {
    dim: u32,
    coeffs: Vec<Rational>,
}

impl GegenbauerExpansion {
    pub fn new(dim: u32, coeffs: Vec<Rational>) -> Self {
        GegenbauerExpansion { dim, coeffs }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Mean term f₀ — the whole-sphere average of the expanded function.
    pub fn f0(&self) -> Rational {
        self.coeff(0)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// Sign classification of an expansion against the lower-bound rule:
/// fᵢ ≥ 0 for every i ≥ 1 outside the exception set.
#[derive(Debug, Clone)]
pub struct SignReport {
    pub signs: Vec<Sign>,
    /// Indices i ≥ 1 with fᵢ < 0 that are *not* excepted.
    pub violations: Vec<usize>,
    /// Excepted indices that are actually negative (information, not a fault).
    pub used_exceptions: Vec<usize>,
    pub admissible: bool,
}

pub fn sign_report(e: &GegenbauerExpansion, exceptions: &BTreeSet<usize>) -> SignReport {
    let signs: Vec<Sign> = e.coeffs().iter().map(Sign::of).collect();
    let mut violations = Vec::new();
    let mut used_exceptions = Vec::new();
    for (i, s) in signs.iter().enumerate().skip(1) {
        if *s == Sign::Negative {
            if exceptions.contains(&i) {
                used_exceptions.push(i);
            } else {
                violations.push(i);
            }
        }
    }
    SignReport {
        signs,
        admissible: violations.is_empty(),
        violations,
        used_exceptions,
    }
}

/// One-off accessors for callers that don't hold a basis.
pub fn gegenbauer_poly(dim: u32, degree: usize) -> Result<RationalPoly, GegenbauerError> {
    Ok(GegenbauerBasis::new(dim, degree)?.poly(degree).clone())
}

pub fn expand(p: &RationalPoly, dim: u32) -> Result<GegenbauerExpansion, GegenbauerError> {
    let degree = p.degree().unwrap_or(0);
    GegenbauerBasis::new(dim, degree)?.expand(p)
}
