//! Scalar abstraction feeding the interpolation engine.
//!
//! Divided-difference tables are built once, generically, and instantiated at
//! two scalar kinds: exact rationals (`Rational`, context `()`) and
//! fixed-precision decimal floats (`potentials::dec::Dec`, context = digit
//! count). Nodes stay rational in both kinds; only potential values differ.

use core::fmt;

use num_traits::Zero;

use crate::ratpoly::Rational;

pub trait Scalar: Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display {
    /// `()` for exact rationals; decimal significant-digit count for floats.
    type Ctx: Copy + core::fmt::Debug;

    fn from_rational(r: &Rational, ctx: Self::Ctx) -> Self;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division; `rhs` must be nonzero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Scalar for Rational {
    type Ctx = ();

    fn from_rational(r: &Rational, _: ()) -> Self {
        r.clone()
    }
    fn zero(_: ()) -> Self {
        Zero::zero()
    }
    fn one(_: ()) -> Self {
        num_traits::One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        num_traits::Signed::abs(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}
