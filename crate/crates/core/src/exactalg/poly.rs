//! Dense univariate polynomials.
//!
//! `Poly<R>` is generic over the coefficient ring so that characteristic
//! polynomials of Laurent matrices can be expressed; [`UniPoly`] is the
//! common case of coefficients in the base field.

use std::fmt;

use super::field::{BaseField, Scalar};
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    field: BaseField,
    coeffs: Vec<R>,
}

pub type UniPoly = Poly<Scalar>;

impl<R: Ring> Poly<R> {
    /// Coefficients lowest degree first; trailing zeros are dropped.
    pub fn new(field: BaseField, coeffs: Vec<R>) -> Self {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero_poly(field: BaseField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        let field = c.field();
        Self::new(field, vec![c])
    }

    pub fn monomial(c: R, deg: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![R::zero(field); deg];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    /// The variable itself.
    pub fn var(field: BaseField) -> Self {
        Self::monomial(R::one(field), 1)
    }

    pub fn base_field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| R::zero(self.field))
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).plus(&other.coeff(i))).collect();
        Self::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(Ring::negated).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_poly(self.field);
        }
        let mut out = vec![R::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(self.field, out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(R::one(self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(self.field), |acc, c| acc.times(x).plus(c))
    }

    /// Division with remainder by a divisor whose leading coefficient is
    /// invertible in `R`.
    pub fn div_rem_unit(&self, b: &Self) -> Result<(Self, Self)> {
        let lead = b
            .leading()
            .ok_or_else(|| Error::ZeroDivisor("polynomial division by zero".into()))?;
        let lead_inv = lead.unit_inverse().ok_or(Error::NonMonic)?;
        let db = b.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero_poly(self.field), self.clone()));
        }
        let mut quot = vec![R::zero(self.field); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = rem[k + db].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(bj));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Self::new(self.field, quot), Self::new(self.field, rem)))
    }

    /// Division with remainder by a monic divisor.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        if b.coeffs.is_empty() {
            return Err(Error::ZeroDivisor("polynomial division by zero".into()));
        }
        if !b.is_monic() {
            return Err(Error::NonMonic);
        }
        self.div_rem_unit(b)
    }

    /// Exact quotient where every leading-coefficient step divides exactly.
    pub fn exact_quotient(&self, b: &Self) -> Option<Self> {
        let lead = b.leading()?;
        if self.coeffs.is_empty() {
            return Some(self.clone());
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![R::zero(self.field); rem.len() - db];
        for k in (0..quot.len()).rev() {
            if rem[k + db].is_zero() {
                continue;
            }
            let c = rem[k + db].exact_div(lead)?;
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(bj));
            }
            quot[k] = c;
        }
        if rem.iter().all(Ring::is_zero) {
            Some(Self::new(self.field, quot))
        } else {
            None
        }
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero(field: BaseField) -> Self {
        Self::zero_poly(field)
    }
    fn one(field: BaseField) -> Self {
        Self::constant(R::one(field))
    }
    fn from_scalar(s: Scalar) -> Self {
        Self::constant(R::from_scalar(s))
    }
    fn field(&self) -> BaseField {
        self.field
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.exact_quotient(other)
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0].unit_inverse().map(Self::constant),
            _ => None,
        }
    }
}

impl UniPoly {
    pub fn from_ints(field: BaseField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    /// `prod (t - r)` over the given roots.
    pub fn from_roots(field: BaseField, roots: &[Scalar]) -> Self {
        roots.iter().fold(Self::one(field), |acc, r| {
            acc.mul(&Self::new(field, vec![-r, field.one()]))
        })
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        Self::new(self.field, coeffs)
    }

    /// Scale to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem_unit(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// The square-free part `f / gcd(f, f')`, made monic.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem_unit(&g).expect("gcd is nonzero").0.monic()
    }

    /// Substitute `x -> q(x)`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero_poly(self.field), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, 0, "t")
    }
}

/// Shared renderer for polynomial-like values, highest degree first.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[Scalar], offset: i64, var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let d = i as i64 + offset;
        let neg = c.sign() == Some(-1);
        let mag = if neg { -c } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag.is_one();
        match (d, unit) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => {}
            (_, false) => write!(f, "{mag}*")?,
        }
        match d {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{d}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn long_division_examples() {
        let a = UniPoly::from_ints(q(), &[1, 0, 0, 1]);
        let b = UniPoly::from_ints(q(), &[-1, 0, 1]);
        let (qt, r) = a.divmod(&b).unwrap();
        assert_eq!(qt, UniPoly::from_ints(q(), &[0, 1]));
        assert_eq!(r, UniPoly::from_ints(q(), &[1, 1]));

        let (qt, r) = b.divmod(&b).unwrap();
        assert_eq!(qt, UniPoly::one(q()));
        assert!(r.is_zero());

        let (qt, r) = UniPoly::one(q()).divmod(&UniPoly::from_ints(q(), &[-2, 1])).unwrap();
        assert!(qt.is_zero());
        assert_eq!(r, UniPoly::one(q()));
    }

    #[test]
    fn non_monic_divisor_rejected() {
        let b = UniPoly::from_ints(q(), &[1, 2]);
        assert_eq!(UniPoly::one(q()).divmod(&b), Err(Error::NonMonic));
    }

    #[test]
    fn gcd_and_square_free() {
        let f = UniPoly::from_ints(q(), &[-1, 1]).pow(2).mul(&UniPoly::from_ints(q(), &[2, 1]));
        assert_eq!(f.square_free_part(), UniPoly::from_ints(q(), &[-2, 1, 1]));
        let g = UniPoly::from_ints(q(), &[-1, 0, 1]);
        assert_eq!(f.gcd(&g), UniPoly::from_ints(q(), &[-1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(q(), &[-1, 0, 2]).to_string(), "2*t^2 - 1");
        assert_eq!(UniPoly::zero(q()).to_string(), "0");
    }
}
