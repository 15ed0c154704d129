//! Quadratic correspondences between the affine models `pt` and `G_m`.
//!
//! A correspondence is a free module over the source coordinate ring
//! (`k` or `k[t, t^-1]`) with a symmetric unimodular Gram matrix and, when
//! the target is `G_m`, the matrix by which the target coordinate `u` acts.
//! All matrices are stored over the Laurent ring; a `pt` source forces
//! constant entries.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{BaseField, FieldMatrix, LaurentMatrix, LaurentPoly, Ring, Scalar};
use crate::quadform::QuadSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineModel {
    Pt,
    Gm,
}

impl fmt::Display for AffineModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineModel::Pt => write!(f, "pt"),
            AffineModel::Gm => write!(f, "gm"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Correspondence {
    source: AffineModel,
    target: AffineModel,
    gram: LaurentMatrix,
    action: Option<LaurentMatrix>,
}

/// Violations found by [`Correspondence::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Correspondence {
    /// Build and validate.
    pub fn new(
        source: AffineModel,
        target: AffineModel,
        gram: LaurentMatrix,
        action: Option<LaurentMatrix>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(source, target, gram, action);
        let report = c.validate();
        if report.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidCorrespondence(report.violations.join("; ")))
        }
    }

    /// Build without validation; pair with [`Correspondence::validate`].
    pub fn new_unchecked(
        source: AffineModel,
        target: AffineModel,
        gram: LaurentMatrix,
        action: Option<LaurentMatrix>,
    ) -> Self {
        Correspondence { source, target, gram, action }
    }

    pub fn source(&self) -> AffineModel {
        self.source
    }

    pub fn target(&self) -> AffineModel {
        self.target
    }

    pub fn gram(&self) -> &LaurentMatrix {
        &self.gram
    }

    pub fn action(&self) -> Option<&LaurentMatrix> {
        self.action.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> BaseField {
        self.gram.field()
    }

    /// The target action; errors when the target is `pt`.
    pub fn require_action(&self) -> Result<&LaurentMatrix> {
        self.action
            .as_ref()
            .ok_or_else(|| Error::ModelMismatch("correspondence has no target action".into()))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let r = self.gram.rows();
        if !self.gram.is_square() {
            v.push(format!("Gram is {}x{}, not square", self.gram.rows(), self.gram.cols()));
        } else if !self.gram.is_symmetric() {
            v.push("Gram is not symmetric".into());
        }
        let unit_det = |m: &LaurentMatrix| -> Option<bool> {
            let d = m.det().ok()?;
            Some(match self.source {
                AffineModel::Pt => d.as_constant().is_some_and(|c| !c.is_zero()),
                AffineModel::Gm => d.is_unit(),
            })
        };
        if self.gram.is_square() && unit_det(&self.gram) == Some(false) {
            let d = self.gram.det().expect("square");
            v.push(format!("det of Gram = {d} is not a unit of the source ring"));
        }
        let constant = |m: &LaurentMatrix| m.as_constant().is_some();
        if self.source == AffineModel::Pt && !constant(&self.gram) {
            v.push("Gram over a pt source must have constant entries".into());
        }
        match (&self.action, self.target) {
            (Some(_), AffineModel::Pt) => v.push("target action present but target is pt".into()),
            (None, AffineModel::Gm) => v.push("target is gm but no action is given".into()),
            (Some(u), AffineModel::Gm) => {
                if u.rows() != r || u.cols() != r {
                    v.push(format!("action is {}x{}, expected {r}x{r}", u.rows(), u.cols()));
                } else {
                    if unit_det(u) == Some(false) {
                        let d = u.det().expect("square");
                        v.push(format!("det of action = {d} is not a unit of the source ring"));
                    }
                    if self.gram.is_square() && u.transpose().mul(&self.gram) != self.gram.mul(u) {
                        v.push("action is not self-adjoint: U^T G != G U".into());
                    }
                    if self.source == AffineModel::Pt && !constant(u) {
                        v.push("action over a pt source must have constant entries".into());
                    }
                }
            }
            (None, AffineModel::Pt) => {}
        }
        ValidationReport { violations: v }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::ModelMismatch(format!(
                "direct sum of {}->{} and {}->{}",
                self.source, self.target, other.source, other.target
            )));
        }
        self.field().check_same(other.field())?;
        let action = match (&self.action, &other.action) {
            (Some(a), Some(b)) => Some(a.block_diag(b)),
            _ => None,
        };
        Ok(Correspondence { gram: self.gram.block_diag(&other.gram), action, ..*self })
    }

    /// A quadratic space over `k` viewed as a correspondence `pt -> pt`.
    pub fn from_space(q: &QuadSpace) -> Self {
        Correspondence {
            source: AffineModel::Pt,
            target: AffineModel::Pt,
            gram: q.gram().to_laurent(),
            action: None,
        }
    }

    /// The quadratic space of a `pt -> pt` correspondence.
    pub fn to_space(&self) -> Result<QuadSpace> {
        if (self.source, self.target) != (AffineModel::Pt, AffineModel::Pt) {
            return Err(Error::ModelMismatch("only pt -> pt correspondences are quadratic spaces".into()));
        }
        QuadSpace::new(self.constant_gram()?)
    }

    /// Gram as a field matrix when every entry is constant.
    pub fn constant_gram(&self) -> Result<FieldMatrix> {
        self.gram
            .as_constant()
            .ok_or_else(|| Error::ModelMismatch("Gram has non-constant entries".into()))
    }

    /// Forget the target (compose with the projection to `pt`).
    pub fn forget_target(&self) -> Self {
        Correspondence { target: AffineModel::Pt, action: None, ..self.clone() }
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} rank {} G={}", self.source, self.target, self.rank(), self.gram)?;
        if let Some(u) = &self.action {
            write!(f, " U={u}")?;
        }
        Ok(())
    }
}

fn one_by_one(l: LaurentPoly) -> LaurentMatrix {
    let field = l.field();
    LaurentMatrix::new(field, 1, 1, vec![l]).expect("1x1")
}

/// The diagonal of `G_m` with its unit form: `G = [1]`, `U = [t]`.
pub fn identity_gm(field: BaseField) -> Correspondence {
    Correspondence {
        source: AffineModel::Gm,
        target: AffineModel::Gm,
        gram: one_by_one(LaurentPoly::one(field)),
        action: Some(one_by_one(LaurentPoly::t(field))),
    }
}

/// `<1>` as a correspondence `pt -> pt`.
pub fn identity_pt(field: BaseField) -> Correspondence {
    Correspondence {
        source: AffineModel::Pt,
        target: AffineModel::Pt,
        gram: one_by_one(LaurentPoly::one(field)),
        action: None,
    }
}

/// Unit section `pt -> G_m` at the point `1`.
pub fn unit_section(field: BaseField) -> Correspondence {
    Correspondence {
        source: AffineModel::Pt,
        target: AffineModel::Gm,
        gram: one_by_one(LaurentPoly::one(field)),
        action: Some(one_by_one(LaurentPoly::one(field))),
    }
}

/// Structure projection `G_m -> pt`.
pub fn projection(field: BaseField) -> Correspondence {
    Correspondence {
        source: AffineModel::Gm,
        target: AffineModel::Pt,
        gram: one_by_one(LaurentPoly::one(field)),
        action: None,
    }
}

/// The idempotent `unit_section o projection` on `G_m`: `G = [1]`, `U = [1]`.
pub fn unit_gm(field: BaseField) -> Correspondence {
    Correspondence {
        source: AffineModel::Gm,
        target: AffineModel::Gm,
        gram: one_by_one(LaurentPoly::one(field)),
        action: Some(one_by_one(LaurentPoly::one(field))),
    }
}

/// `Phi x id_{G_m}` for a correspondence `pt -> pt`.
pub fn boxtimes_gm(phi: &Correspondence) -> Result<Correspondence> {
    if (phi.source, phi.target) != (AffineModel::Pt, AffineModel::Pt) {
        return Err(Error::ModelMismatch("boxtimes expects a pt -> pt correspondence".into()));
    }
    let report = phi.validate();
    if !report.is_valid() {
        return Err(Error::InvalidCorrespondence(report.violations.join("; ")));
    }
    let field = phi.field();
    Ok(Correspondence {
        source: AffineModel::Gm,
        target: AffineModel::Gm,
        gram: phi.gram.clone(),
        action: Some(LaurentMatrix::scalar_matrix(phi.rank(), LaurentPoly::t(field))),
    })
}

/// Evaluate a matrix with Laurent entries in the middle coordinate at the
/// middle action `u` (a matrix over the outer source ring), block by block.
fn substitute_blocks(m: &LaurentMatrix, u: &LaurentMatrix, u_inv: &LaurentMatrix) -> Result<Vec<Vec<LaurentMatrix>>> {
    (0..m.rows())
        .map(|j| {
            (0..m.cols())
                .map(|l| u.eval_laurent(m.get(j, l), Some(u_inv)))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Composite `b o a` of `a: X -> Y` and `b: Y -> Z`.
///
/// The basis of the result is `f_j (x) e_i` at index `j * rank(a) + i`
/// with `f_j` from `b` and `e_i` from `a`.
pub fn compose(b: &Correspondence, a: &Correspondence) -> Result<Correspondence> {
    if a.target != b.source {
        return Err(Error::ModelMismatch(format!(
            "cannot compose {}->{} after {}->{}",
            b.source, b.target, a.source, a.target
        )));
    }
    a.field().check_same(b.field())?;
    let field = a.field();
    let (ra, rb) = (a.rank(), b.rank());
    let (gram, action) = match a.target {
        AffineModel::Pt => {
            let gram = b.gram.kron(&a.gram);
            let action = b
                .action
                .as_ref()
                .map(|ub| ub.kron(&LaurentMatrix::identity(field, ra)));
            (gram, action)
        }
        AffineModel::Gm => {
            let ua = a.require_action()?;
            let ua_inv = ua.laurent_inverse()?;
            let gb = substitute_blocks(&b.gram, ua, &ua_inv)?;
            let blocks: Vec<Vec<LaurentMatrix>> = gb
                .into_iter()
                .map(|row| row.into_iter().map(|p| a.gram.mul(&p)).collect())
                .collect();
            let gram = if rb == 0 || ra == 0 {
                LaurentMatrix::zeros(field, ra * rb, ra * rb)
            } else {
                LaurentMatrix::from_blocks(field, &blocks)
            };
            let action = match &b.action {
                Some(ub) if rb > 0 && ra > 0 => {
                    Some(LaurentMatrix::from_blocks(field, &substitute_blocks(ub, ua, &ua_inv)?))
                }
                Some(_) => Some(LaurentMatrix::zeros(field, ra * rb, ra * rb)),
                None => None,
            };
            (gram, action)
        }
    };
    let out = Correspondence { source: a.source, target: b.target, gram, action };
    if !out.gram.is_symmetric() {
        return Err(Error::Internal("composite Gram is not symmetric".into()));
    }
    let report = out.validate();
    if !report.is_valid() {
        return Err(Error::InvalidCorrespondence(format!(
            "composite fails validation: {}",
            report.violations.join("; ")
        )));
    }
    Ok(out)
}

/// Evaluate the source coordinate at `t = a`.
pub fn specialize(c: &Correspondence, a: &Scalar) -> Result<Correspondence> {
    if c.source != AffineModel::Gm {
        return Err(Error::ModelMismatch("specialization needs a gm source".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroDivisor("specialization at t = 0".into()));
    }
    let gram = c.gram.eval_at(a)?.to_laurent();
    let action = c.action.as_ref().map(|u| u.eval_at(a).map(|m| m.to_laurent())).transpose()?;
    Correspondence::new(AffineModel::Pt, c.target, gram, action)
}

/// Signed sum of correspondences with a common source and target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: Vec<(i32, Correspondence)>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum { terms: Vec::new() }
    }

    pub fn single(c: Correspondence) -> Self {
        FormalSum { terms: vec![(1, c)] }
    }

    pub fn terms(&self) -> &[(i32, Correspondence)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `sign * c`, cancelling an identical term of opposite sign.
    pub fn push(&mut self, sign: i32, c: Correspondence) -> Result<()> {
        if sign != 1 && sign != -1 {
            return Err(Error::Precondition(format!("term sign must be +1 or -1, got {sign}")));
        }
        if let Some((_, first)) = self.terms.first() {
            if (first.source, first.target) != (c.source, c.target) {
                return Err(Error::ModelMismatch("formal sum terms must share source and target".into()));
            }
        }
        if let Some(i) = self.terms.iter().position(|(s, t)| *s == -sign && *t == c) {
            self.terms.remove(i);
        } else {
            self.terms.push((sign, c));
        }
        Ok(())
    }

    pub fn extend(&mut self, sign: i32, other: &FormalSum) -> Result<()> {
        for (s, c) in &other.terms {
            self.push(sign * s, c.clone())?;
        }
        Ok(())
    }
}

/// The four signed terms of `(id - p1)(id - p2)` applied to `c`, where the
/// projectors compose with [`unit_gm`] on the target and source side.
pub fn dot_terms(c: &Correspondence) -> Result<Vec<(i32, Correspondence)>> {
    if (c.source, c.target) != (AffineModel::Gm, AffineModel::Gm) {
        return Err(Error::ModelMismatch("dot projector expects gm -> gm".into()));
    }
    let unit = unit_gm(c.field());
    let left = compose(&unit, c)?;
    let right = compose(c, &unit)?;
    let both = compose(&unit, &right)?;
    Ok(vec![(1, c.clone()), (-1, left), (-1, right), (1, both)])
}

/// [`dot_terms`] collected into a [`FormalSum`] with pairwise cancellation.
pub fn dot_expand(c: &Correspondence) -> Result<FormalSum> {
    let mut s = FormalSum::new();
    for (sign, t) in dot_terms(c)? {
        s.push(sign, t)?;
    }
    Ok(s)
}

/// Bounds read off the characteristic polynomial of the target action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityBound {
    /// `det(t^n I - U)` has non-overlapping blocks `b_i t^(n i)` for `n > n_p`.
    pub n_p: i64,
    /// Minus the bottom `t`-degree of `det U`.
    pub m_p: i64,
}

pub fn stability_bound(c: &Correspondence) -> Result<StabilityBound> {
    if (c.source, c.target) != (AffineModel::Gm, AffineModel::Gm) {
        return Err(Error::ModelMismatch("stability bound expects gm -> gm".into()));
    }
    let u = c.require_action()?;
    let cp = u.charpoly()?;
    let coeffs = cp.coeffs();
    let nonzero: Vec<(i64, i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, b)| Some((i as i64, b.top_degree()?, b.bottom_degree()?)))
        .collect();
    let m_p = match nonzero.first() {
        Some(&(0, _, e0)) => -e0,
        Some(_) => return Err(Error::InvalidCorrespondence("target action is singular".into())),
        None => 0,
    };
    let n_p = nonzero
        .windows(2)
        .map(|w| {
            let (j, d_j, _) = w[0];
            let (i, _, e_i) = w[1];
            (d_j - e_i).div_euclid(i - j)
        })
        .max()
        .unwrap_or(0);
    Ok(StabilityBound { n_p, m_p })
}
