//! Coefficient rings: arbitrary-precision integers, rationals and the field
//! with two elements.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Which coefficient ring a value belongs to. Used in diagnostics and to
/// pick the text grammar (subtraction is only meaningful away from 𝔽₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    Integer,
    Rational,
    Gf2,
    GaussianRational,
}

pub trait Coefficient:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const KIND: CoeffKind;

    /// Image of an integer under the canonical map ℤ → R.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Multiplicative inverse when `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// True when the printed form starts with a minus sign.
    fn is_negative(&self) -> bool {
        false
    }
}

/// Coefficient rings that are fields; quotient normal forms need these.
pub trait Field: Coefficient + Div<Output = Self> {}

impl Coefficient for BigInt {
    const KIND: CoeffKind = CoeffKind::Integer;

    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coefficient for BigRational {
    const KIND: CoeffKind = CoeffKind::Rational;

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for BigRational {}

/// Element of 𝔽₂.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2(bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);

    pub fn new(bit: bool) -> Self {
        Gf2(bit)
    }

    pub fn bit(self) -> bool {
        self.0
    }
}

impl Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Div for Gf2 {
    type Output = Gf2;
    fn div(self, rhs: Gf2) -> Gf2 {
        assert!(rhs.0, "division by zero in GF(2)");
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2::ONE
    }
}

impl Coefficient for Gf2 {
    const KIND: CoeffKind = CoeffKind::Gf2;

    fn from_bigint(n: &BigInt) -> Self {
        Gf2(n.is_odd())
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
}

impl Field for Gf2 {}

impl FromStr for Gf2 {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let n: BigInt = s.parse().map_err(|e| format!("{e}"))?;
        Ok(Gf2::from_bigint(&n))
    }
}

/// Reduce an integer modulo two.
pub fn mod2(n: &BigInt) -> Gf2 {
    Gf2::from_bigint(n)
}
