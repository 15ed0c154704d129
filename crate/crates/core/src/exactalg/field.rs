//! Base fields and their elements.
//!
//! Two kinds of field are supported: the rationals (arbitrary precision,
//! always stored reduced with a positive denominator) and prime fields
//! `F_p` for an odd prime `p`. Characteristic two is rejected at
//! construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl BaseField {
    /// The prime field `F_p`. Rejects `p = 2` and non-primes.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        if p >= 1 << 62 {
            return Err(Error::InvalidField(format!("modulus {p} is too large")));
        }
        Ok(BaseField::Prime(p))
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            BaseField::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den`; `den` must be nonzero in the field.
    pub fn frac(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.int(den);
        let inv = d
            .inv()
            .ok_or_else(|| Error::ZeroDivisor(format!("denominator {den} vanishes in {self}")))?;
        Ok(&self.int(num) * &inv)
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            BaseField::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// Parse `"n"` or `"n/d"` with decimal integers (sign allowed on `n`).
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {num:?}")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {den:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        let dn = self.from_bigint(&d);
        let inv = dn
            .inv()
            .ok_or_else(|| Error::Parse(format!("denominator of {s:?} vanishes in {self}")))?;
        Ok(&self.from_bigint(&n) * &inv)
    }

    /// All elements of a prime field, `0..p`. `None` over the rationals.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        self.modulus()
            .map(|p| (0..p).map(|v| Scalar::Mod { value: v, modulus: p }).collect())
    }

    /// Least quadratic non-residue of a prime field.
    pub fn least_non_residue(self) -> Option<Scalar> {
        let p = self.modulus()?;
        (2..p)
            .map(|v| Scalar::Mod { value: v, modulus: p })
            .find(|s| !s.is_square())
    }

    pub fn check_same(self, other: BaseField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of a [`BaseField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl Scalar {
    pub fn field(&self) -> BaseField {
        match self {
            Scalar::Rational(_) => BaseField::Rationals,
            Scalar::Mod { modulus, .. } => BaseField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            exp >>= 1;
        }
        Some(acc)
    }

    /// Whether the element is a square in its field (zero counts as a square).
    pub fn is_square(&self) -> bool {
        match self {
            Scalar::Rational(r) => is_perfect_square(r.numer()) && is_perfect_square(r.denom()),
            Scalar::Mod { value, modulus } => {
                *value == 0 || mod_pow(*value, (modulus - 1) / 2, *modulus) == 1
            }
        }
    }

    /// Sign over the rationals (`-1`, `0`, `1`); `None` over prime fields.
    pub fn sign(&self) -> Option<i32> {
        match self {
            Scalar::Rational(r) => Some(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }),
            Scalar::Mod { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Mod { value, .. } => Some(*value),
        }
    }

    /// Checked division.
    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        Some(self * &other.inv()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two_and_composites() {
        assert!(BaseField::prime(2).is_err());
        assert!(BaseField::prime(9).is_err());
        assert!(BaseField::prime(1).is_err());
        assert_eq!(BaseField::prime(7).unwrap(), BaseField::Prime(7));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = BaseField::Rationals;
        let a = q.frac(6, -4).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(q.parse("10/-4").unwrap().to_string(), "-5/2");
        assert_eq!((&a * &q.frac(-2, 3).unwrap()).to_string(), "1");
    }

    #[test]
    fn prime_field_inverse_and_squares() {
        let f = BaseField::prime(7).unwrap();
        let three = f.int(3);
        assert_eq!(&three * &three.inv().unwrap(), f.one());
        let squares: Vec<u64> = f
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| !x.is_zero() && x.is_square())
            .map(|x| x.residue().unwrap())
            .collect();
        assert_eq!(squares, vec![1, 2, 4]);
        assert_eq!(f.least_non_residue().unwrap().residue(), Some(3));
        assert_eq!(f.parse("-1/2").unwrap().residue(), Some(3));
    }

    #[test]
    fn rational_squares() {
        let q = BaseField::Rationals;
        assert!(q.frac(9, 4).unwrap().is_square());
        assert!(!q.frac(2, 1).unwrap().is_square());
        assert!(!q.int(-1).is_square());
    }
}
