use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::polyring::{CoeffKind, Coefficient, Field};

/// `a + b·i` with `a, b ∈ ℚ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    /// `re_num/re_den + (im_num/im_den)·i`; panics on a zero denominator.
    pub fn from_fractions(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(re_num.into(), re_den.into()),
            BigRational::new(im_num.into(), im_den.into()),
        )
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|x|²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.recip().expect("division by zero Gaussian rational");
        &self * &inv
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
}

impl Coefficient for GaussianRational {
    const KIND: CoeffKind = CoeffKind::GaussianRational;

    fn from_bigint(n: &BigInt) -> Self {
        Self::real(BigRational::from_integer(n.clone()))
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.recip()
    }

    fn is_negative(&self) -> bool {
        if self.im.is_zero() {
            Signed::is_negative(&self.re)
        } else {
            self.re.is_zero() && Signed::is_negative(&self.im)
        }
    }
}

impl Field for GaussianRational {}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, b: &BigRational| {
            if b.is_one() {
                write!(f, "i")
            } else {
                write!(f, "{b}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if Signed::is_negative(&self.im) {
                    write!(f, "-")?;
                }
                imag(f, &self.im.abs())
            }
            (false, false) => {
                let sign = if Signed::is_negative(&self.im) { '-' } else { '+' };
                write!(f, "({} {sign} ", self.re)?;
                imag(f, &self.im.abs())?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Integers in JSON: plain numbers when they fit in 64 bits, decimal
/// strings otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(n: &BigInt) -> Self {
        n.to_i64().map(JsonInt::Small).unwrap_or_else(|| JsonInt::Big(n.to_string()))
    }

    fn to_big<E: serde::de::Error>(&self) -> Result<BigInt, E> {
        match self {
            JsonInt::Small(n) => Ok(BigInt::from(*n)),
            JsonInt::Big(s) => s.parse().map_err(E::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianJson {
    re_num: JsonInt,
    re_den: JsonInt,
    im_num: JsonInt,
    im_den: JsonInt,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussianJson {
            re_num: JsonInt::from_big(self.re.numer()),
            re_den: JsonInt::from_big(self.re.denom()),
            im_num: JsonInt::from_big(self.im.numer()),
            im_den: JsonInt::from_big(self.im.denom()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = GaussianJson::deserialize(d)?;
        let (rd, id) = (j.re_den.to_big::<D::Error>()?, j.im_den.to_big::<D::Error>()?);
        if rd.is_zero() || id.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Self::new(
            BigRational::new(j.re_num.to_big::<D::Error>()?, rd),
            BigRational::new(j.im_num.to_big::<D::Error>()?, id),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ints(a, b)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(g(1, 2) * g(3, -1), g(5, 5));
        assert_eq!(GaussianRational::i() * GaussianRational::i(), g(-1, 0));
        assert_eq!(g(5, 5) / g(3, -1), g(1, 2));
        assert_eq!(g(3, 4).norm_sqr(), BigRational::from_integer(25.into()));
        assert!(g(0, 0).recip().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(g(3, 0).to_string(), "3");
        assert_eq!(g(0, 1).to_string(), "i");
        assert_eq!(g(0, -2).to_string(), "-2*i");
        assert_eq!(g(1, -1).to_string(), "(1 - i)");
        assert_eq!(GaussianRational::from_fractions(1, 2, 3, 4).to_string(), "(1/2 + 3/4*i)");
        assert!(g(0, -2).is_negative());
        assert!(!g(-1, 1).is_negative());
    }

    #[test]
    fn json_round_trip() {
        let x = GaussianRational::from_fractions(-1, 2, 3, 1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"re_num":-1,"re_den":2,"im_num":3,"im_den":1}"#);
        assert_eq!(serde_json::from_str::<GaussianRational>(&s).unwrap(), x);
        let big = r#"{"re_num":"123456789012345678901234567890","re_den":1,"im_num":0,"im_den":1}"#;
        let y: GaussianRational = serde_json::from_str(big).unwrap();
        assert_eq!(serde_json::to_string(&y).unwrap(), big);
        assert!(serde_json::from_str::<GaussianRational>(r#"{"re_num":1,"re_den":0,"im_num":0,"im_den":1}"#).is_err());
    }

    proptest! {
        #[test]
        fn conjugation_is_a_multiplicative_involution(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
            let (x, y) = (g(a, b), g(c, d));
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
            prop_assert_eq!((x.clone() * x.conj()).im().clone(), BigRational::zero());
            if !y.is_zero() {
                prop_assert_eq!(x.clone() / y.clone() * y, x);
            }
        }
    }
}
