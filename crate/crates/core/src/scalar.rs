//! Exact arithmetic in ℚ(√q₀).
//!
//! Every value is `a + b·√q₀` with rational `a`, `b`. Because `q₀` is a prime the
//! pair `(a, b)` is unique, so equality is componentwise. The symbol `v` stands
//! for `√q₀`; `q = v²`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `a + b·√q0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    a: BigRational,
    b: BigRational,
    q0: u32,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn q0_pow(q0: u32, k: i64) -> BigRational {
    let base = BigInt::from(q0);
    let p = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl ExactScalar {
    pub fn new(q0: u32, a: BigRational, b: BigRational) -> Self {
        ExactScalar { a, b, q0 }
    }

    pub fn zero(q0: u32) -> Self {
        ExactScalar::new(q0, BigRational::zero(), BigRational::zero())
    }

    pub fn one(q0: u32) -> Self {
        ExactScalar::from_int(q0, 1)
    }

    pub fn from_int(q0: u32, n: i64) -> Self {
        ExactScalar::new(q0, rat(n), BigRational::zero())
    }

    pub fn from_bigint(q0: u32, n: BigInt) -> Self {
        ExactScalar::new(q0, BigRational::from_integer(n), BigRational::zero())
    }

    pub fn from_u64(q0: u32, n: u64) -> Self {
        ExactScalar::from_bigint(q0, BigInt::from(n))
    }

    pub fn from_ratio(q0: u32, num: i64, den: i64) -> Self {
        ExactScalar::new(
            q0,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `v^k` where `v = √q0`.
    pub fn vpow(q0: u32, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            ExactScalar::new(q0, q0_pow(q0, k / 2), BigRational::zero())
        } else {
            ExactScalar::new(q0, BigRational::zero(), q0_pow(q0, (k - 1) / 2))
        }
    }

    /// `q^k = v^{2k}`.
    pub fn qpow(q0: u32, k: i64) -> Self {
        ExactScalar::vpow(q0, 2 * k)
    }

    pub fn q0(&self) -> u32 {
        self.q0
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The rational value when `b = 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// The integer value when the scalar is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√q)(a − b√q) = a² − q b², nonzero since √q is irrational.
        let norm = &self.a * &self.a - rat(self.q0 as i64) * &self.b * &self.b;
        Some(ExactScalar::new(
            self.q0,
            &self.a / &norm,
            -(&self.b) / &norm,
        ))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = ExactScalar::one(self.q0);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }

    /// Returns `(sign, k)` when the value is `sign · v^k`.
    pub fn as_vpower(&self) -> Option<(i8, i64)> {
        let (val, odd) = match (self.a.is_zero(), self.b.is_zero()) {
            (false, true) => (&self.a, false),
            (true, false) => (&self.b, true),
            _ => return None,
        };
        let sign = if val.is_negative() { -1 } else { 1 };
        let abs = val.abs();
        let q = BigInt::from(self.q0);
        let (mut num, mut den) = (abs.numer().clone(), abs.denom().clone());
        let mut e: i64 = 0;
        if den.is_one() {
            while !num.is_one() {
                if (&num % &q).is_zero() {
                    num /= &q;
                    e += 1;
                } else {
                    return None;
                }
            }
        } else {
            if !num.is_one() {
                return None;
            }
            while !den.is_one() {
                if (&den % &q).is_zero() {
                    den /= &q;
                    e -= 1;
                } else {
                    return None;
                }
            }
        }
        Some((sign, 2 * e + i64::from(odd)))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q0, other.q0, "scalars over different base primes");
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some((sign, k)) = self.as_vpower() {
            let s = if sign < 0 { "-" } else { "" };
            return match k {
                0 => write!(f, "{s}1"),
                1 => write!(f, "{s}v"),
                _ => write!(f, "{s}v^{k}"),
            };
        }
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("{}*sqrt({})", self.b.abs(), self.q0);
        if self.a.is_zero() {
            let s = if self.b.is_negative() { "-" } else { "" };
            return write!(f, "{s}{root}");
        }
        let s = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {s} {root}", self.a)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})[q0={}]", self.a, self.b, self.q0)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            a: String,
            b: String,
        }
        Repr {
            a: self.a.to_string(),
            b: self.b.to_string(),
        }
        .serialize(s)
    }
}

/// Wire form of a scalar: rationals as `"p/q"` strings. The base prime comes from context.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ScalarRepr {
    pub a: String,
    pub b: String,
}

impl ScalarRepr {
    pub fn into_scalar(self, q0: u32) -> Result<ExactScalar, String> {
        let a: BigRational = self.a.parse().map_err(|e| format!("bad rational {:?}: {e}", self.a))?;
        let b: BigRational = self.b.parse().map_err(|e| format!("bad rational {:?}: {e}", self.b))?;
        Ok(ExactScalar::new(q0, a, b))
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    /// Deserializes against `q0 = 0`; callers re-tag with [`ExactScalar::with_q0`].
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        r.into_scalar(0).map_err(D::Error::custom)
    }
}

impl ExactScalar {
    pub fn with_q0(mut self, q0: u32) -> Self {
        self.q0 = q0;
        self
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        self.check(o);
        ExactScalar::new(self.q0, &self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        self.check(o);
        ExactScalar::new(self.q0, &self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        self.check(o);
        let q = rat(self.q0 as i64);
        ExactScalar::new(
            self.q0,
            &self.a * &o.a + q * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, o: &ExactScalar) -> ExactScalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(self.q0, -&self.a, -&self.b)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        self.check(o);
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        self.check(o);
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, o: &ExactScalar) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(q0: u32, a: (i64, i64), b: (i64, i64)) -> ExactScalar {
        ExactScalar::new(
            q0,
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
        )
    }

    #[test]
    fn vpow_examples() {
        assert_eq!(ExactScalar::vpow(2, 0), s(2, (1, 1), (0, 1)));
        assert_eq!(ExactScalar::vpow(2, 2), s(2, (2, 1), (0, 1)));
        // v^{-3} = 1/(q0·√q0) = √q0/q0².
        assert_eq!(ExactScalar::vpow(2, -3), s(2, (0, 1), (1, 4)));
        assert_eq!(ExactScalar::vpow(7, 1), s(7, (0, 1), (1, 1)));
    }

    #[test]
    fn qpow_examples() {
        assert_eq!(ExactScalar::qpow(3, 1), ExactScalar::from_int(3, 3));
        assert_eq!(ExactScalar::qpow(2, -1), ExactScalar::from_ratio(2, 1, 2));
        assert_eq!(ExactScalar::qpow(5, 2), ExactScalar::from_int(5, 25));
    }

    #[test]
    fn vpow_additive() {
        for q0 in [2, 3, 5, 7] {
            for j in -64..=64 {
                for k in [-64, -33, -7, -1, 0, 1, 2, 5, 31, 64] {
                    assert_eq!(
                        ExactScalar::vpow(q0, j) * ExactScalar::vpow(q0, k),
                        ExactScalar::vpow(q0, j + k)
                    );
                }
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(ExactScalar::vpow(2, -3).to_string(), "v^-3");
        assert_eq!(ExactScalar::vpow(3, 4).to_string(), "v^4");
        assert_eq!((-ExactScalar::vpow(3, 1)).to_string(), "-v");
        assert_eq!(ExactScalar::one(5).to_string(), "1");
        assert_eq!(ExactScalar::from_int(2, 3).to_string(), "3");
        assert_eq!(s(2, (1, 2), (3, 1)).to_string(), "1/2 + 3*sqrt(2)");
        assert_eq!(s(2, (0, 1), (15, 4)).to_string(), "15/4*sqrt(2)");
        assert_eq!(s(3, (2, 1), (-1, 1)).to_string(), "2 - 1*sqrt(3)");
    }

    #[test]
    fn json_roundtrip() {
        let x = s(3, (-5, 7), (2, 9));
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"a":"-5/7","b":"2/9"}"#);
        let back: ExactScalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back.with_q0(3), x);
    }

    #[test]
    fn inverse_and_pow() {
        let x = s(5, (3, 2), (-1, 3));
        assert!((x.inv().unwrap() * &x).is_one());
        assert_eq!(x.pow(3).unwrap(), &(&x * &x) * &x);
        assert_eq!(x.pow(-2).unwrap() * x.pow(2).unwrap(), ExactScalar::one(5));
        assert!(ExactScalar::zero(2).inv().is_none());
    }
}
