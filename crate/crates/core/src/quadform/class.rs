use std::fmt;

use super::invariants::{gw_invariants, square_class};
use super::space::QuadSpace;
use crate::error::{Error, Result};
use crate::exactalg::{BaseField, Scalar};

/// Formal difference `[pos] - [neg]` in the Grothendieck-Witt group.
#[derive(Clone, Debug)]
pub struct GwClass {
    pub pos: QuadSpace,
    pub neg: QuadSpace,
}

impl GwClass {
    pub fn zero(field: BaseField) -> Self {
        GwClass { pos: QuadSpace::zero(field), neg: QuadSpace::zero(field) }
    }

    pub fn of(q: QuadSpace) -> Self {
        let field = q.field();
        GwClass { pos: q, neg: QuadSpace::zero(field) }
    }

    pub fn field(&self) -> BaseField {
        self.pos.field()
    }

    /// Virtual rank.
    pub fn rank(&self) -> i64 {
        self.pos.rank() as i64 - self.neg.rank() as i64
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(GwClass {
            pos: self.pos.direct_sum(&other.pos)?,
            neg: self.neg.direct_sum(&other.neg)?,
        })
    }

    pub fn neg(&self) -> Self {
        GwClass { pos: self.neg.clone(), neg: self.pos.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Signed accumulation: `self + sign * other`.
    pub fn add_signed(&self, sign: i32, other: &Self) -> Result<Self> {
        if sign >= 0 {
            self.add(other)
        } else {
            self.sub(other)
        }
    }

    /// Multiply by the rank-one class `<lambda>`.
    pub fn scale(&self, lambda: &Scalar) -> Result<Self> {
        Ok(GwClass { pos: self.pos.scale(lambda)?, neg: self.neg.scale(lambda)? })
    }

    /// Whether the image in the Witt group vanishes.
    pub fn is_witt_zero(&self) -> Result<bool> {
        let minus_one = -self.field().one();
        is_metabolic(&self.pos.direct_sum(&self.neg.scale(&minus_one)?)?)
    }

    /// `Some(c)` (canonical square class) when the class equals `<c>`.
    pub fn as_rank_one(&self) -> Result<Option<Scalar>> {
        if self.rank() != 1 {
            return Ok(None);
        }
        let d = self
            .pos
            .det()
            .div(&self.neg.det())
            .expect("nondegenerate forms have nonzero determinant");
        let c = square_class(&d)?;
        let candidate = GwClass::of(QuadSpace::rank_one(c.clone())?);
        Ok(gw_equal(self, &candidate)?.then_some(c))
    }
}

impl fmt::Display for GwClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] - [{}]", self.pos, self.neg)
    }
}

/// Equality in GW(k): `a.pos + b.neg` and `b.pos + a.neg` are isometric.
pub fn gw_equal(a: &GwClass, b: &GwClass) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    let lhs = a.pos.direct_sum(&b.neg)?;
    let rhs = b.pos.direct_sum(&a.neg)?;
    if lhs.rank() != rhs.rank() {
        return Ok(false);
    }
    Ok(gw_invariants(&lhs)? == gw_invariants(&rhs)?)
}

/// Isometry of two spaces.
pub fn isometric(a: &QuadSpace, b: &QuadSpace) -> Result<bool> {
    gw_equal(&GwClass::of(a.clone()), &GwClass::of(b.clone()))
}

/// Witt class zero: even rank and isometric to a sum of hyperbolic planes.
pub fn is_metabolic(q: &QuadSpace) -> Result<bool> {
    if q.rank() % 2 == 1 {
        return Ok(false);
    }
    isometric(q, &QuadSpace::hyperbolic_sum(q.field(), q.rank() / 2))
}
