//! Laurent polynomials `k[t, t^-1]`.

use std::fmt;

use super::field::{BaseField, Scalar};
use super::poly::{write_terms, UniPoly};
use super::ring::Ring;
use crate::error::{Error, Result};

/// `t^val * body` with `body(0) != 0`; zero is stored as `val = 0` with an
/// empty body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    val: i64,
    body: UniPoly,
}

/// `L = c * t^v * n_tilde` with `n_tilde` monic and `n_tilde(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub v: i64,
    pub c: Scalar,
    pub n_tilde: UniPoly,
}

impl LaurentPoly {
    pub fn new(val: i64, body: UniPoly) -> Self {
        if body.is_zero() {
            return LaurentPoly { val: 0, body };
        }
        let field = body.base_field();
        let low = body.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
        let coeffs = body.into_coeffs().split_off(low);
        LaurentPoly {
            val: val + low as i64,
            body: UniPoly::new(field, coeffs),
        }
    }

    /// Coefficients of `t^val, t^(val+1), ...`.
    pub fn from_coeffs(field: BaseField, val: i64, coeffs: Vec<Scalar>) -> Self {
        Self::new(val, UniPoly::new(field, coeffs))
    }

    pub fn from_ints(field: BaseField, val: i64, coeffs: &[i64]) -> Self {
        Self::new(val, UniPoly::from_ints(field, coeffs))
    }

    pub fn from_poly(p: &UniPoly) -> Self {
        Self::new(0, p.clone())
    }

    pub fn monomial(c: Scalar, d: i64) -> Self {
        let field = c.field();
        Self::new(d, UniPoly::constant(c)).with_field(field)
    }

    fn with_field(self, field: BaseField) -> Self {
        if self.body.is_zero() {
            LaurentPoly { val: 0, body: UniPoly::zero(field) }
        } else {
            self
        }
    }

    /// The coordinate `t`.
    pub fn t(field: BaseField) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn body(&self) -> &UniPoly {
        &self.body
    }

    /// Lowest exponent with nonzero coefficient (`None` for zero).
    pub fn bottom_degree(&self) -> Option<i64> {
        (!self.body.is_zero()).then_some(self.val)
    }

    /// Highest exponent with nonzero coefficient (`None` for zero).
    pub fn top_degree(&self) -> Option<i64> {
        self.body.degree().map(|d| self.val + d as i64)
    }

    pub fn coeff(&self, d: i64) -> Scalar {
        if d < self.val {
            return self.body.base_field().zero();
        }
        self.body.coeff((d - self.val) as usize)
    }

    pub fn is_unit(&self) -> bool {
        self.body.degree() == Some(0)
    }

    /// A constant (t-free) element, or `None`.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.body.is_zero() {
            return Some(self.body.base_field().zero());
        }
        (self.val == 0 && self.body.degree() == Some(0)).then(|| self.body.coeff(0))
    }

    /// Ordinary polynomial if no negative powers occur.
    pub fn to_poly(&self) -> Option<UniPoly> {
        (self.val >= 0 || self.body.is_zero()).then(|| self.body.shift(self.val.max(0) as usize))
    }

    /// Factor `L = c * t^v * n_tilde`.
    pub fn normalize(&self) -> Result<Normalized> {
        let c = self
            .body
            .leading()
            .cloned()
            .ok_or_else(|| Error::ZeroDivisor("the zero Laurent polynomial has no normalization".into()))?;
        Ok(Normalized {
            v: self.val,
            n_tilde: self.body.monic(),
            c,
        })
    }

    /// Evaluate at a nonzero scalar.
    pub fn eval(&self, a: &Scalar) -> Result<Scalar> {
        let shift = a
            .pow(self.val)
            .ok_or_else(|| Error::ZeroDivisor("evaluation of a Laurent polynomial at 0".into()))?;
        Ok(&self.body.eval(a) * &shift)
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        if e < 0 {
            return self.unit_inverse()?.pow(-e);
        }
        let field = self.body.base_field();
        Some(LaurentPoly {
            val: self.val * e,
            body: self.body.pow(e as u32),
        }
        .with_field(field))
    }

    /// Substitute `t -> t^k` for `k >= 1`.
    pub fn inflate(&self, k: u32) -> Self {
        let field = self.body.base_field();
        let mut coeffs = vec![field.zero(); self.body.coeffs().len().saturating_sub(1) * k as usize + 1];
        for (i, c) in self.body.coeffs().iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Self::from_coeffs(field, self.val * k as i64, coeffs)
    }
}

impl Ring for LaurentPoly {
    fn zero(field: BaseField) -> Self {
        LaurentPoly { val: 0, body: UniPoly::zero(field) }
    }
    fn one(field: BaseField) -> Self {
        Self::constant(field.one())
    }
    fn from_scalar(s: Scalar) -> Self {
        Self::constant(s)
    }
    fn field(&self) -> BaseField {
        self.body.base_field()
    }
    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let v = self.val.min(other.val);
        let a = self.body.shift((self.val - v) as usize);
        let b = other.body.shift((other.val - v) as usize);
        Self::new(v, a.add(&b))
    }
    fn times(&self, other: &Self) -> Self {
        let field = self.field();
        Self::new(self.val + other.val, self.body.mul(&other.body)).with_field(field)
    }
    fn negated(&self) -> Self {
        LaurentPoly { val: self.val, body: self.body.neg() }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (q, r) = self.body.div_rem_unit(&other.body).ok()?;
        r.is_zero().then(|| Self::new(self.val - other.val, q))
    }
    fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        Some(Self::monomial(self.body.coeff(0).inv()?, -self.val))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.body.coeffs(), self.val, "t")
    }
}
