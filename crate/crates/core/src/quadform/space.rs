use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{BaseField, FieldMatrix, Scalar};

/// A nondegenerate symmetric bilinear form over the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSpace {
    gram: FieldMatrix,
}

/// A symmetric form that may be degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreQuadSpace {
    gram: FieldMatrix,
}

/// Output of [`PreQuadSpace::reduce_with_basis`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub space: QuadSpace,
    /// Basis of the radical.
    pub kernel: Vec<Vec<Scalar>>,
    /// Columns spanning the chosen complement of the radical.
    pub complement: FieldMatrix,
}

impl QuadSpace {
    pub fn new(gram: FieldMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Degenerate("Gram matrix is not symmetric".into()));
        }
        if gram.det_field()?.is_zero() {
            return Err(Error::Degenerate("Gram matrix is singular".into()));
        }
        Ok(QuadSpace { gram })
    }

    pub fn zero(field: BaseField) -> Self {
        QuadSpace { gram: FieldMatrix::zeros(field, 0, 0) }
    }

    pub fn diag(field: BaseField, entries: &[Scalar]) -> Result<Self> {
        Self::new(FieldMatrix::diagonal(field, entries))
    }

    pub fn diag_ints(field: BaseField, entries: &[i64]) -> Result<Self> {
        let e: Vec<Scalar> = entries.iter().map(|&x| field.int(x)).collect();
        Self::diag(field, &e)
    }

    /// `<a>`.
    pub fn rank_one(a: Scalar) -> Result<Self> {
        let field = a.field();
        Self::diag(field, &[a])
    }

    /// Hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic(field: BaseField) -> Self {
        QuadSpace { gram: FieldMatrix::from_ints(field, &[&[0, 1], &[1, 0]]) }
    }

    /// Orthogonal sum of `k` hyperbolic planes.
    pub fn hyperbolic_sum(field: BaseField, k: usize) -> Self {
        (0..k).fold(Self::zero(field), |acc, _| acc.direct_sum(&Self::hyperbolic(field)).expect("same field"))
    }

    pub fn field(&self) -> BaseField {
        self.gram.field()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    pub fn det(&self) -> Scalar {
        self.gram.det_field().expect("square Gram")
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.field().check_same(other.field())?;
        Ok(QuadSpace { gram: self.gram.block_diag(&other.gram) })
    }

    /// Multiply the form by a nonzero scalar.
    pub fn scale(&self, lambda: &Scalar) -> Result<Self> {
        self.field().check_same(lambda.field())?;
        if lambda.is_zero() {
            return Err(Error::Degenerate("scaling a form by zero".into()));
        }
        Ok(QuadSpace { gram: self.gram.scale(lambda) })
    }

    /// `P^T G P` for an invertible change of basis `P`.
    pub fn congruent(&self, p: &FieldMatrix) -> Result<Self> {
        let g = p.transpose().try_mul(&self.gram)?.try_mul(p)?;
        Self::new(g)
    }

    /// Diagonal entries of an isometric diagonal form.
    pub fn diagonalize(&self) -> Vec<Scalar> {
        diagonalize_gram(&self.gram).expect("nondegenerate form diagonalizes").0
    }

    /// Diagonal entries with the change of basis `P` satisfying
    /// `P^T G P = diag(entries)`.
    pub fn diagonalize_with_transform(&self) -> (Vec<Scalar>, FieldMatrix) {
        diagonalize_gram(&self.gram).expect("nondegenerate form diagonalizes")
    }
}

/// Symmetric Gaussian elimination. Pivots on the first nonzero diagonal
/// entry of the remaining block; if that block has zero diagonal, replaces
/// `e_i` by `e_i + e_j` for the first nonzero off-diagonal entry `(i, j)`.
pub(crate) fn diagonalize_gram(g: &FieldMatrix) -> Result<(Vec<Scalar>, FieldMatrix)> {
    let n = g.rows();
    let field = g.field();
    let mut a = g.clone();
    let mut p = FieldMatrix::identity(field, n);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = match (k..n).find(|&i| !a.get(i, i).is_zero()) {
            Some(i) => i,
            None => {
                let (i, j) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_zero())
                    .ok_or_else(|| Error::Degenerate("form has a nontrivial radical".into()))?;
                add_multiple(&mut a, &mut p, i, j, &field.one());
                i
            }
        };
        swap(&mut a, &mut p, k, pivot);
        let inv = a.get(k, k).inv().expect("nonzero pivot");
        for j in k + 1..n {
            if a.get(k, j).is_zero() {
                continue;
            }
            let c = -&(a.get(k, j) * &inv);
            add_multiple(&mut a, &mut p, j, k, &c);
        }
        out.push(a.get(k, k).clone());
    }
    Ok((out, p))
}

/// Replace basis vector `e_i` by `e_i + c e_j`.
fn add_multiple(a: &mut FieldMatrix, p: &mut FieldMatrix, i: usize, j: usize, c: &Scalar) {
    let n = a.rows();
    for col in 0..n {
        let v = a.get(i, col) + &(c * a.get(j, col));
        a.set(i, col, v);
    }
    for row in 0..n {
        let v = a.get(row, i) + &(c * a.get(row, j));
        a.set(row, i, v);
    }
    for row in 0..n {
        let v = p.get(row, i) + &(c * p.get(row, j));
        p.set(row, i, v);
    }
}

fn swap(a: &mut FieldMatrix, p: &mut FieldMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    a.swap_rows(i, j);
    for row in 0..n {
        let (x, y) = (a.get(row, i).clone(), a.get(row, j).clone());
        a.set(row, i, y);
        a.set(row, j, x);
        let (x, y) = (p.get(row, i).clone(), p.get(row, j).clone());
        p.set(row, i, y);
        p.set(row, j, x);
    }
}

impl PreQuadSpace {
    pub fn new(gram: FieldMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Degenerate("Gram matrix is not symmetric".into()));
        }
        Ok(PreQuadSpace { gram })
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    /// Quotient by the radical.
    pub fn reduce(&self) -> QuadSpace {
        self.reduce_with_basis().space
    }

    /// Quotient by the radical, together with the radical basis and the
    /// complement (standard basis vectors outside the radical's pivots).
    pub fn reduce_with_basis(&self) -> Reduction {
        let field = self.gram.field();
        let n = self.gram.rows();
        let kernel = self.gram.kernel_basis();
        let pivots = if kernel.is_empty() {
            Vec::new()
        } else {
            let rows: Vec<Vec<Scalar>> = kernel.clone();
            FieldMatrix::from_rows(field, rows).expect("equal lengths").rref().1
        };
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let complement = FieldMatrix::from_fn(field, n, free.len(), |i, j| {
            if i == free[j] {
                field.one()
            } else {
                field.zero()
            }
        });
        let g = complement.transpose().mul(&self.gram).mul(&complement);
        let space = QuadSpace::new(g).expect("quotient by the radical is nondegenerate");
        Reduction { space, kernel, complement }
    }
}

impl fmt::Display for QuadSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn check_transform(s: &QuadSpace) {
        let (d, p) = s.diagonalize_with_transform();
        let lhs = p.transpose().mul(s.gram()).mul(&p);
        assert_eq!(lhs, FieldMatrix::diagonal(s.field(), &d));
        assert!(!p.det_field().unwrap().is_zero());
    }

    #[test]
    fn diagonalize_examples() {
        let h = QuadSpace::hyperbolic(q());
        assert_eq!(h.diagonalize(), vec![q().int(2), q().frac(-1, 2).unwrap()]);
        check_transform(&h);

        assert_eq!(QuadSpace::diag_ints(q(), &[5]).unwrap().diagonalize(), vec![q().int(5)]);

        let s = QuadSpace::new(FieldMatrix::from_ints(q(), &[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(s.diagonalize(), vec![q().int(2), q().frac(3, 2).unwrap()]);
        check_transform(&s);
    }

    #[test]
    fn diagonalize_needs_polarization_midway() {
        let g = FieldMatrix::from_ints(q(), &[&[1, 1, 0], &[1, 1, 1], &[0, 1, 0]]);
        check_transform(&QuadSpace::new(g).unwrap());
    }

    #[test]
    fn degenerate_rejected() {
        assert!(QuadSpace::new(FieldMatrix::from_ints(q(), &[&[1, 1], &[1, 1]])).is_err());
        assert!(QuadSpace::new(FieldMatrix::from_ints(q(), &[&[1, 2], &[0, 1]])).is_err());
    }

    #[test]
    fn direct_sum_and_scale() {
        let a = QuadSpace::diag_ints(q(), &[1]).unwrap();
        let b = QuadSpace::diag_ints(q(), &[-1]).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap(), QuadSpace::diag_ints(q(), &[1, -1]).unwrap());
        assert_eq!(a.direct_sum(&QuadSpace::zero(q())).unwrap(), a);
        assert_eq!(a.scale(&q().int(-1)).unwrap(), b);
        assert!(a.scale(&q().zero()).is_err());
        let f5 = BaseField::prime(5).unwrap();
        assert!(a.direct_sum(&QuadSpace::diag_ints(f5, &[1]).unwrap()).is_err());
    }

    #[test]
    fn reduce_examples() {
        let p = PreQuadSpace::new(FieldMatrix::from_ints(q(), &[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(p.reduce(), QuadSpace::diag_ints(q(), &[1]).unwrap());
        let z = PreQuadSpace::new(FieldMatrix::zeros(q(), 2, 2)).unwrap();
        assert_eq!(z.reduce().rank(), 0);
        let ones = PreQuadSpace::new(FieldMatrix::from_ints(q(), &[&[1, 1], &[1, 1]])).unwrap();
        let r = ones.reduce_with_basis();
        assert_eq!(r.kernel, vec![vec![q().one(), q().int(-1)]]);
        assert_eq!(r.space, QuadSpace::diag_ints(q(), &[1]).unwrap());
    }
}
