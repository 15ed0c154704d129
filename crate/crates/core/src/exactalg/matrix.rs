//! Dense matrices over a commutative ring.

use std::fmt;

use super::field::{BaseField, Scalar};
use super::laurent::LaurentPoly;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    field: BaseField,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type FieldMatrix = Matrix<Scalar>;
pub type LaurentMatrix = Matrix<LaurentPoly>;

impl<R: Ring> Matrix<R> {
    /// Row-major constructor.
    pub fn new(field: BaseField, rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: BaseField, rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(field: BaseField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn zeros(field: BaseField, rows: usize, cols: usize) -> Self {
        Self::from_fn(field, rows, cols, |_, _| R::zero(field))
    }

    pub fn identity(field: BaseField, n: usize) -> Self {
        Self::scalar_matrix(n, R::one(field))
    }

    pub fn scalar_matrix(n: usize, c: R) -> Self {
        let field = c.field();
        Self::from_fn(field, n, n, |i, j| if i == j { c.clone() } else { R::zero(field) })
    }

    pub fn diagonal(field: BaseField, entries: &[R]) -> Self {
        let n = entries.len();
        Self::from_fn(field, n, n, |i, j| if i == j { entries[i].clone() } else { R::zero(field) })
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    fn same_shape(&self, other: &Self, what: &str) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "{what}: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_shape(other, "matrix add");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_shape(other, "matrix sub");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::negated)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    /// Product; panics on incompatible shapes (use [`Matrix::try_mul`] for input data).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(R::zero(self.field), |acc, j| acc.plus(&self.get(i, j).times(&v[j])))
            })
            .collect()
    }

    /// Kronecker product with `self` as the outer factor.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.field, self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols)
                .times(other.get(i % other.rows, j % other.cols))
        })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(self.field, r + other.rows, c + other.cols, |i, j| match (i < r, j < c) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - r, j - c).clone(),
            _ => R::zero(self.field),
        })
    }

    /// Assemble from a grid of equally sized blocks.
    pub fn from_blocks(field: BaseField, blocks: &[Vec<Self>]) -> Self {
        let br = blocks.len();
        if br == 0 {
            return Self::zeros(field, 0, 0);
        }
        let bc = blocks[0].len();
        let (h, w) = blocks
            .first()
            .and_then(|row| row.first())
            .map_or((0, 0), |b| (b.rows, b.cols));
        Self::from_fn(field, br * h, bc * w, |i, j| blocks[i / h.max(1)][j / w.max(1)].get(i % h, j % w).clone())
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(self.field, h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    fn minor_matrix(&self, skip_r: usize, skip_c: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != skip_r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != skip_c).collect();
        self.select(&rows, &cols)
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{what} of a {}x{} matrix", self.rows, self.cols)))
        }
    }

    /// Determinant: cofactor expansion up to size 4, fraction-free
    /// elimination above.
    pub fn det(&self) -> Result<R> {
        self.require_square("determinant")?;
        Ok(if self.rows <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        })
    }

    fn det_cofactor(&self) -> R {
        match self.rows {
            0 => R::one(self.field),
            1 => self.data[0].clone(),
            2 => self.get(0, 0).times(self.get(1, 1)).minus(&self.get(0, 1).times(self.get(1, 0))),
            n => (0..n).fold(R::zero(self.field), |acc, j| {
                let a = self.get(0, j);
                if a.is_zero() {
                    return acc;
                }
                let term = a.times(&self.minor_matrix(0, j).det_cofactor());
                if j % 2 == 0 {
                    acc.plus(&term)
                } else {
                    acc.minus(&term)
                }
            }),
        }
    }

    fn det_bareiss(&self) -> R {
        let n = self.rows;
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = R::one(self.field);
        for k in 0..n.saturating_sub(1) {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return R::zero(self.field);
                };
                a.swap_rows(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a.get(i, j).times(a.get(k, k)).minus(&a.get(i, k).times(a.get(k, j)));
                    let v = v.exact_div(&prev).expect("Bareiss step divides exactly");
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if negate {
            d.negated()
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Characteristic polynomial `det(x*I - M)` by Berkowitz's division-free
    /// recursion; coefficients lowest degree first.
    pub fn charpoly(&self) -> Result<Poly<R>> {
        self.require_square("characteristic polynomial")?;
        let top_first = self.berkowitz();
        Ok(Poly::new(self.field, top_first.into_iter().rev().collect()))
    }

    fn berkowitz(&self) -> Vec<R> {
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return vec![R::one(f)];
        }
        if n == 1 {
            return vec![R::one(f), self.data[0].negated()];
        }
        let a = self.get(0, 0);
        let row: Vec<R> = (1..n).map(|j| self.get(0, j).clone()).collect();
        let sub = self.block(1, 1, n - 1, n - 1);
        // diag[k] = -R A^(k-2) C for k >= 2
        let mut diag = vec![R::one(f), a.negated()];
        let mut col: Vec<R> = (1..n).map(|i| self.get(i, 0).clone()).collect();
        for _ in 0..n - 1 {
            let rc = row.iter().zip(&col).fold(R::zero(f), |acc, (r, c)| acc.plus(&r.times(c)));
            diag.push(rc.negated());
            col = sub.mul_vec(&col);
        }
        let inner = sub.berkowitz();
        (0..=n)
            .map(|i| {
                (0..n.min(i + 1)).fold(R::zero(f), |acc, j| acc.plus(&diag[i - j].times(&inner[j])))
            })
            .collect()
    }

    /// Adjugate, derived from the characteristic polynomial so that it stays
    /// division-free: `adj(M) = (-1)^(n+1) (M^(n-1) + c_(n-1) M^(n-2) + ... + c_1 I)`.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square("adjugate")?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let cp = self.charpoly()?;
        let mut acc = Self::identity(self.field, n);
        for k in (1..n).rev() {
            acc = self.mul(&acc).add(&Self::scalar_matrix(n, cp.coeff(k)));
        }
        let adj = if n.is_multiple_of(2) { acc.neg() } else { acc };
        debug_assert!({
            let d = Self::scalar_matrix(n, self.det()?);
            self.mul(&adj) == d && adj.mul(self) == d
        });
        Ok(adj)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Evaluate a polynomial with coefficients in the entry ring at this matrix.
    pub fn eval_poly(&self, p: &Poly<R>) -> Self {
        let n = self.rows;
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zeros(self.field, n, n), |acc, c| acc.mul(self).add(&Self::scalar_matrix(n, c.clone())))
    }

    /// Evaluate a Laurent polynomial with scalar coefficients at this matrix;
    /// `inverse` must be the inverse matrix when negative powers occur.
    pub fn eval_laurent(&self, l: &LaurentPoly, inverse: Option<&Self>) -> Result<Self> {
        let n = self.rows;
        let body = l
            .body()
            .coeffs()
            .iter()
            .rev()
            .fold(Self::zeros(self.field, n, n), |acc, c| {
                acc.mul(self).add(&Self::scalar_matrix(n, R::from_scalar(c.clone())))
            });
        if l.is_zero() || l.val() == 0 {
            return Ok(body);
        }
        let shift = if l.val() > 0 {
            self.pow(l.val() as u32)
        } else {
            let inv = inverse.ok_or_else(|| {
                Error::ZeroDivisor("negative power of a matrix without a supplied inverse".into())
            })?;
            inv.pow((-l.val()) as u32)
        };
        Ok(body.mul(&shift))
    }
}

impl FieldMatrix {
    pub fn from_ints(field: BaseField, rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect();
        Self::from_rows(field, data).expect("rectangular integer rows")
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in c..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j) - &(&factor * a.get(r, j));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space; each vector is scaled so that its
    /// first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero kernel vector");
                let inv = lead.inv().expect("nonzero");
                v.iter().map(|x| x * &inv).collect()
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det_field(&self) -> Result<Scalar> {
        self.require_square("determinant")?;
        let mut a = self.clone();
        let n = a.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c) * &inv;
                for j in c..n {
                    let v = a.get(i, j) - &(&factor * a.get(c, j));
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        let aug = Self::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::ZeroDivisor("singular matrix has no inverse".into()));
        }
        Ok(r.block(0, n, n, n))
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn column_space_contains(&self, other: &Self) -> bool {
        assert_eq!(self.rows, other.rows);
        let joined = Self::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        });
        joined.rank() == self.rank()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: BaseField, n: usize, cols: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, n, cols.len(), |i, j| cols[j][i].clone())
    }
}

impl LaurentMatrix {
    /// Evaluate every entry at `t = a`.
    pub fn eval_at(&self, a: &Scalar) -> Result<FieldMatrix> {
        self.try_map(|l| l.eval(a))
    }

    /// Inverse over `k[t, t^-1]`, available when the determinant is a unit.
    pub fn laurent_inverse(&self) -> Result<Self> {
        let d = self.det()?;
        let dinv = d
            .unit_inverse()
            .ok_or_else(|| Error::ZeroDivisor(format!("determinant {d} is not a unit")))?;
        Ok(self.adjugate()?.scale(&dinv))
    }

    /// Constant matrix if no entry involves `t`.
    pub fn as_constant(&self) -> Option<FieldMatrix> {
        let data = self.data.iter().map(LaurentPoly::as_constant).collect::<Option<Vec<_>>>()?;
        Some(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }
}

impl FieldMatrix {
    pub fn to_laurent(&self) -> LaurentMatrix {
        self.map(|c| LaurentPoly::constant(c.clone()))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
