//! Local symbols over the rationals and the integer helpers they need.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_prime::nt_funcs::factorize;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::is_prime_u64;
use crate::error::{Error, Result};

/// A place of the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Prime factors of `|n|` in increasing order, without multiplicity.
///
/// Fails only if a factor does not fit in a `u64`.
pub fn prime_factors(n: &BigInt) -> Result<Vec<u64>> {
    factor_map(n)?.into_keys().map(Ok).collect()
}

fn factor_map(n: &BigInt) -> Result<BTreeMap<u64, usize>> {
    if n.is_zero() {
        return Ok(BTreeMap::new());
    }
    factorize(n.magnitude().clone())
        .into_iter()
        .map(|(p, e)| {
            p.to_u64()
                .map(|p| (p, e))
                .ok_or_else(|| Error::Internal(format!("prime factor {p} exceeds u64")))
        })
        .collect()
}

/// Signed square-free integer in the square class of a nonzero rational.
pub fn square_free_class(r: &BigRational) -> Result<BigInt> {
    if r.is_zero() {
        return Err(Error::Degenerate("square class of zero".into()));
    }
    let n = r.numer() * r.denom();
    let mut out = BigInt::one();
    for (p, e) in factor_map(&n)? {
        if e % 2 == 1 {
            out *= BigInt::from(p);
        }
    }
    Ok(if n.is_negative() { -out } else { out })
}

fn integer_rep(r: &BigRational) -> BigInt {
    r.numer() * r.denom()
}

fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    while (&m % &bp).is_zero() {
        m /= &bp;
        e += 1;
    }
    (e, m)
}

fn legendre(u: &BigInt, p: u64) -> i32 {
    let r = u.mod_floor(&BigInt::from(p));
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &BigInt::from(p)).is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u64 {
    u.mod_floor(&BigInt::from(8)).to_u64().expect("residue mod 8")
}

/// Hilbert symbol `(a, b)_v` for nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("Hilbert symbol needs nonzero arguments".into()));
    }
    let (a, b) = (integer_rep(a), integer_rep(b));
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => {
            if !is_prime_u64(p) {
                return Err(Error::Precondition(format!("{p} is not a prime place")));
            }
            let (alpha, u) = split_valuation(&a, p);
            let (beta, v) = split_valuation(&b, p);
            if p == 2 {
                let (u8_, v8) = (mod8(&u), mod8(&v));
                let eps = |x: u64| ((x - 1) / 2) % 2;
                let omega = |x: u64| ((x * x - 1) / 8) % 2;
                let e = eps(u8_) * eps(v8) + alpha as u64 * omega(v8) + beta as u64 * omega(u8_);
                Ok(if e.is_multiple_of(2) { 1 } else { -1 })
            } else {
                let mut s = 1;
                if (alpha * beta) % 2 == 1 && p % 4 == 3 {
                    s = -s;
                }
                if beta % 2 == 1 {
                    s *= legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= legendre(&v, p);
                }
                Ok(s)
            }
        }
    }
}
