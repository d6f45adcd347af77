//! Fixed-precision decimal floats on top of `BigInt`.
//!
//! A `Dec` stores `mant · 10^exp` with the mantissa rounded (half-even) to a
//! context precision of `prec` significant decimal digits. The representation
//! is canonical — mantissa not divisible by 10, zero is `(0, 0)` — so equal
//! values have identical fields regardless of how they were computed, and
//! serialized values round-trip bit-exactly.
//!
//! Decimal rather than binary mantissas because every tolerance in the
//! certificate layer is stated in decimal digits, and certificates serialize
//! floats as decimal strings that must reproduce exactly.
//!
//! Accuracy contract: ring operations round correctly; `div` and `sqrt` carry
//! at least two guard digits and a sticky bit, so they are correct to well
//! under one unit in the last place; `exp` is computed at 12 extra working
//! digits (argument halving + Taylor + repeated squaring) leaving at least
//! ~7 digits of headroom beyond `prec`.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ratpoly::Rational;

#[derive(Clone)]
pub struct Dec {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn pow10(k: u64) -> BigUint {
    num_traits::pow(BigUint::from(10u32), k as usize)
}

/// Number of decimal digits of `n` (0 for zero). Estimates from the bit
/// length, then corrects with a single power-of-ten comparison.
fn decimal_digits(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 0;
    }
    let bits = n.bits();
    let est = (((bits - 1) as f64) * core::f64::consts::LOG10_2) as u64;
    if *n >= pow10(est + 1) {
        est + 2
    } else {
        est + 1
    }
}

/// Rounds `mant · 10^exp` to `prec` significant digits (half-even) and strips
/// trailing zeros. `sticky` asserts the true magnitude is strictly larger
/// than `|mant| · 10^exp`, which biases exact ties upward.
fn canonical(mant: BigInt, mut exp: i64, prec: u32, sticky: bool) -> Dec {
    debug_assert!(prec >= 1);
    let (sign, mut mag) = mant.into_parts();
    let d = decimal_digits(&mag);
    if d > prec as u64 {
        let shift = d - prec as u64;
        let ten_k = pow10(shift);
        let (q, r) = mag.div_rem(&ten_k);
        let two_r = &r << 1u32;
        let up = match two_r.cmp(&ten_k) {
            Ordering::Greater => true,
            Ordering::Equal => sticky || q.is_odd(),
            Ordering::Less => false,
        };
        mag = if up { q + 1u32 } else { q };
        exp += shift as i64;
    }
    if mag.is_zero() {
        return Dec {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        };
    }
    let ten = BigUint::from(10u32);
    while (&mag % &ten).is_zero() {
        mag /= &ten;
        exp += 1;
    }
    Dec {
        mant: BigInt::from_biguint(sign, mag),
        exp,
        prec,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecParseError(pub String);

impl fmt::Display for DecParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid decimal literal: {}", self.0)
    }
}

impl Dec {
    pub fn zero(prec: u32) -> Self {
        Dec {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Dec {
            mant: BigInt::one(),
            exp: 0,
            prec,
        }
    }

    pub fn from_u32(v: u32, prec: u32) -> Self {
        canonical(BigInt::from(v), 0, prec, false)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        canonical(BigInt::from(v), 0, prec, false)
    }

    /// `mant · 10^exp`, rounded into the context.
    pub fn scaled(mant: i64, exp: i64, prec: u32) -> Self {
        canonical(BigInt::from(mant), exp, prec, false)
    }

    /// Exactly 10^k (independent of precision). Tolerance constructor.
    pub fn pow10(k: i64, prec: u32) -> Self {
        Dec {
            mant: BigInt::one(),
            exp: k,
            prec,
        }
    }

    /// Correctly rounded `numer/denom` at `prec` digits.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        if r.is_zero() {
            return Dec::zero(prec);
        }
        let num = r.numer();
        let den = r.denom();
        let da = decimal_digits(num.magnitude());
        let db = decimal_digits(den.magnitude());
        let s = (prec as i64 + 2 + db as i64 - da as i64).max(0) as u64;
        let scaled = num.magnitude() * pow10(s);
        let (q, rem) = scaled.div_rem(den.magnitude());
        let sign = num.sign();
        canonical(BigInt::from_biguint(sign, q), -(s as i64), prec, !rem.is_zero())
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        canonical(self.mant.clone(), self.exp, prec, false)
    }

    /// Exponent of the leading decimal digit; `i64::MIN` for zero.
    pub fn magnitude_exponent(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exp + decimal_digits(self.mant.magnitude()) as i64 - 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant * BigInt::from(pow10((self.exp - e) as u64));
        let b = &rhs.mant * BigInt::from(pow10((rhs.exp - e) as u64));
        canonical(a + b, e, prec, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Dec {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        Dec {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        canonical(
            &self.mant * &rhs.mant,
            self.exp + rhs.exp,
            self.prec.max(rhs.prec),
            false,
        )
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "Dec division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Dec::zero(prec);
        }
        let da = decimal_digits(self.mant.magnitude());
        let db = decimal_digits(rhs.mant.magnitude());
        let s = (prec as i64 + 2 + db as i64 - da as i64).max(0) as u64;
        let scaled = self.mant.magnitude() * pow10(s);
        let (q, rem) = scaled.div_rem(rhs.mant.magnitude());
        let sign = self.mant.sign() * rhs.mant.sign();
        canonical(
            BigInt::from_biguint(sign, q),
            self.exp - rhs.exp - s as i64,
            prec,
            !rem.is_zero(),
        )
    }

    /// Small non-negative integer power by repeated multiplication.
    pub fn pow_u32(&self, k: u32) -> Self {
        let mut out = Dec::one(self.prec);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Square root of a non-negative value, faithful to under one ulp.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "Dec sqrt of negative value");
        if self.is_zero() {
            return Dec::zero(self.prec);
        }
        let p = self.prec;
        let d = decimal_digits(self.mant.magnitude());
        let mut s = (2 * (p as i64 + 3) - d as i64).max(0) as u64;
        if (self.exp - s as i64) % 2 != 0 {
            s += 1;
        }
        let m = self.mant.magnitude() * pow10(s);
        let r = m.sqrt();
        let rem = &m - &r * &r;
        canonical(
            BigInt::from_biguint(Sign::Plus, r),
            (self.exp - s as i64) / 2,
            p,
            !rem.is_zero(),
        )
    }

    /// e^self at the value's own precision, via halving reduction, Taylor
    /// series at 12 guard digits, and repeated squaring.
    pub fn exp(&self) -> Self {
        let p = self.prec;
        if self.is_zero() {
            return Dec::one(p);
        }
        let w = p + 12;
        let mut y = self.with_prec(w);
        let cutoff = Dec::scaled(3125, -5, w); // 1/32
        let half = Dec::scaled(5, -1, w);
        let mut halvings = 0u32;
        while y.abs() > cutoff {
            y = y.mul(&half);
            halvings += 1;
            assert!(halvings < 4096, "exp argument out of supported range");
        }
        let stop = -((w + 8) as i64);
        let mut sum = Dec::one(w);
        let mut term = Dec::one(w);
        let mut j = 1u32;
        loop {
            term = term.mul(&y).div(&Dec::from_u32(j, w));
            sum = sum.add(&term);
            if term.is_zero() || term.magnitude_exponent() < stop {
                break;
            }
            j += 1;
        }
        for _ in 0..halvings {
            sum = sum.mul(&sum);
        }
        sum.with_prec(p)
    }

    /// Parses `[+-]digits[.digits][e[+-]digits]`, rounding into the context.
    pub fn parse(s: &str, prec: u32) -> Result<Self, DecParseError> {
        let s = s.trim();
        let bad = || DecParseError(String::from(s));
        let (mant_part, exp_part) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], Some(&s[i + 1..])),
            None => (s, None),
        };
        let exp10: i64 = match exp_part {
            Some(e) => e.parse().map_err(|_| bad())?,
            None => 0,
        };
        let (sign, digits_part) = match mant_part.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, mant_part.strip_prefix('+').unwrap_or(mant_part)),
        };
        let mut digits = String::new();
        let mut frac_len = 0i64;
        let mut seen_dot = false;
        for c in digits_part.chars() {
            match c {
                '0'..='9' => {
                    digits.push(c);
                    if seen_dot {
                        frac_len += 1;
                    }
                }
                '.' if !seen_dot => seen_dot = true,
                _ => return Err(bad()),
            }
        }
        if digits.is_empty() {
            return Err(bad());
        }
        let mag: BigUint = digits.parse().map_err(|_| bad())?;
        Ok(canonical(
            BigInt::from_biguint(sign, mag),
            exp10 - frac_len,
            prec,
            false,
        ))
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        let sign_rank = |s: Sign| match s {
            Sign::Minus => 0,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        if sign_rank(sa) != sign_rank(sb) {
            return sign_rank(sa).cmp(&sign_rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // same nonzero sign: compare leading-digit exponents, then mantissas
        let ma = self.magnitude_exponent();
        let mb = other.magnitude_exponent();
        if ma != mb {
            let mag_ord = ma.cmp(&mb);
            return if sa == Sign::Plus {
                mag_ord
            } else {
                mag_ord.reverse()
            };
        }
        let e = self.exp.min(other.exp);
        let a = self.mant.magnitude() * pow10((self.exp - e) as u64);
        let b = other.mant.magnitude() * pow10((other.exp - e) as u64);
        let mag_ord = a.cmp(&b);
        if sa == Sign::Plus {
            mag_ord
        } else {
            mag_ord.reverse()
        }
    }
}

impl PartialEq for Dec {
    fn eq(&self, other: &Self) -> bool {
        // canonical representation: numeric equality is field equality
        self.mant == other.mant && self.exp == other.exp
    }
}

impl Eq for Dec {}

impl PartialOrd for Dec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for Dec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for Dec {
    /// Scientific notation with all stored digits: `-1.2345e-7`. Parsing the
    /// output at the same precision reproduces the value exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.mant.is_negative() {
            write!(f, "-")?;
        }
        let digits = self.mant.magnitude().to_str_radix(10);
        let sci_exp = self.exp + digits.len() as i64 - 1;
        let bytes = digits.as_bytes();
        write!(f, "{}", bytes[0] as char)?;
        if digits.len() > 1 {
            write!(f, ".{}", &digits[1..])?;
        }
        write!(f, "e{sci_exp}")
    }
}

impl fmt::Debug for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dec({self}@{})", self.prec)
    }
}

impl crate::scalar::Scalar for Dec {
    type Ctx = u32;

    fn from_rational(r: &Rational, ctx: u32) -> Self {
        Dec::from_rational(r, ctx)
    }
    fn zero(ctx: u32) -> Self {
        Dec::zero(ctx)
    }
    fn one(ctx: u32) -> Self {
        Dec::one(ctx)
    }
    fn add(&self, rhs: &Self) -> Self {
        Dec::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Dec::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Dec::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Dec::div(self, rhs)
    }
    fn neg(&self) -> Self {
        Dec::neg(self)
    }
    fn abs(&self) -> Self {
        Dec::abs(self)
    }
    fn is_zero(&self) -> bool {
        Dec::is_zero(self)
    }
}

/// Sum of a slice at the ambient precision.
pub fn dec_sum(values: &[Dec], prec: u32) -> Dec {
    let mut acc = Dec::zero(prec);
    for v in values {
        acc = acc.add(v);
    }
    acc
}

#[allow(unused)]
fn _assert_traits() {
    fn is_scalar<S: crate::scalar::Scalar>() {}
    is_scalar::<Dec>();
}
