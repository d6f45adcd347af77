//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial has an empty coefficient vector. Every operation is
//! exact; nothing here rounds.

use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator by `num-rational`.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational constants: `rat(1, 3)` is 1/3.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds from ascending-degree coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    /// Monic product `Π (t − rᵢ)`; the empty product is 1.
    pub fn from_roots(roots: &[Rational]) -> Self {
        let mut p = Self::one();
        for r in roots {
            let mut next = vec![Rational::zero(); p.coeffs.len() + 1];
            for (k, c) in p.coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * r);
            }
            p = Self::from_coeffs(next);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// k-th derivative.
    pub fn derivative_n(&self, k: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: Self) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: Self) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: Self) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if show_mag {
                    write!(f, "*")?;
                }
                write!(f, "t")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

/// Parses a comma-separated ascending coefficient list, each entry `p/q` or `p`.
pub fn poly_from_csv(s: &str) -> Result<RationalPoly, alloc::string::String> {
    let mut coeffs = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let c: Rational = part
            .parse()
            .map_err(|_| format!("invalid rational coefficient `{part}`"))?;
        coeffs.push(c);
    }
    Ok(RationalPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn trims_trailing_zeros() {
        let p = RationalPoly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(RationalPoly::from_coeffs(vec![rat_int(0)]).is_zero());
        assert_eq!(RationalPoly::zero().degree(), None);
    }

    #[test]
    fn eval_horner() {
        // t^2 - 1 at 3/2 = 5/4
        let p = RationalPoly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)]);
        assert_eq!(p.eval(&rat(3, 2)), rat(5, 4));
        assert_eq!(RationalPoly::zero().eval(&rat(3, 2)), rat_int(0));
        assert_eq!(p.eval(&rat_int(1)), rat_int(0));
    }

    #[test]
    fn derivative_basic() {
        // (t^3 - 2t)' = 3t^2 - 2
        let p = RationalPoly::from_coeffs(vec![rat_int(0), rat_int(-2), rat_int(0), rat_int(1)]);
        let d = p.derivative();
        assert_eq!(d.coeffs(), &[rat_int(-2), rat_int(0), rat_int(3)]);
        assert!(RationalPoly::constant(rat(7, 3)).derivative().is_zero());
        // third derivative of t^3 is 6
        assert_eq!(
            RationalPoly::monomial(rat_int(1), 3).derivative_n(3),
            RationalPoly::constant(rat_int(6))
        );
    }

    #[test]
    fn from_roots_expands() {
        // (t+1)^2 = t^2 + 2t + 1
        let p = RationalPoly::from_roots(&[rat_int(-1), rat_int(-1)]);
        assert_eq!(p.coeffs(), &[rat_int(1), rat_int(2), rat_int(1)]);
        assert_eq!(p.eval(&rat_int(-1)), rat_int(0));
        assert_eq!(RationalPoly::from_roots(&[]), RationalPoly::one());
        // leading coefficient is always 1
        let q = RationalPoly::from_roots(&[rat(1, 2), rat(-1, 3), rat_int(0)]);
        assert_eq!(q.leading(), Some(&rat_int(1)));
        assert_eq!(q.degree(), Some(3));
    }

    #[test]
    fn ring_ops() {
        let a = RationalPoly::from_roots(&[rat_int(1)]);
        let b = RationalPoly::from_roots(&[rat_int(-1)]);
        let prod = &a * &b;
        assert_eq!(prod.coeffs(), &[rat_int(-1), rat_int(0), rat_int(1)]);
        let sum = &a + &b;
        assert_eq!(sum.coeffs(), &[rat_int(0), rat_int(2)]);
        let diff = &a - &a;
        assert!(diff.is_zero());
        assert_eq!((-&a).coeff(0), rat_int(1));
    }

    #[test]
    fn display_readable() {
        let p = RationalPoly::from_coeffs(vec![rat_int(1), rat(-3, 47), rat_int(0), rat(50, 47)]);
        assert_eq!(p.to_string(), "50/47*t^3 - 3/47*t + 1");
        assert_eq!(RationalPoly::zero().to_string(), "0");
        assert_eq!(RationalPoly::monomial(rat_int(-1), 1).to_string(), "-t");
    }

    #[test]
    fn csv_parse() {
        let p = poly_from_csv("-1/2, 0, 3/2").unwrap();
        assert_eq!(p.coeffs(), &[rat(-1, 2), rat_int(0), rat(3, 2)]);
        assert!(poly_from_csv("1, x").is_err());
    }
}
