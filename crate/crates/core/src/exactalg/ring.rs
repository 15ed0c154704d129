use std::fmt::Debug;

use super::field::{BaseField, Scalar};

/// Commutative ring with unit over a fixed base field.
///
/// Method names avoid `add`/`mul` so that they never collide with the
/// operator traits implemented on the same types.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    fn zero(field: BaseField) -> Self;
    fn one(field: BaseField) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn field(&self) -> BaseField;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `self / other` when `other` divides `self` exactly.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    fn unit_inverse(&self) -> Option<Self>;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn is_one(&self) -> bool {
        *self == Self::one(self.field())
    }

    fn scaled(&self, c: &Scalar) -> Self {
        self.times(&Self::from_scalar(c.clone()))
    }
}

impl Ring for Scalar {
    fn zero(field: BaseField) -> Self {
        field.zero()
    }
    fn one(field: BaseField) -> Self {
        field.one()
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn field(&self) -> BaseField {
        Scalar::field(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div(other)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
}
