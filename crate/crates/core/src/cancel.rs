//! The cancellation map `rho`: from correspondences `G_m -> G_m` (over
//! `pt`) back to quadratic spaces over `k`.
//!
//! For an applicable triple `(f, N, g)` with `m_f g = N I` on `P`, the
//! module `P/NP` carries the form `l_N(G(x, y))`. Twisting by `g` leaves a
//! radical equal to `f (P/NP)`, and the quotient lives on `P/fP`.

use std::fmt;

use crate::corr::{
    boxtimes_gm, dot_expand, identity_gm, specialize, stability_bound, AffineModel, Correspondence, FormalSum,
};
use crate::error::{Error, Result};
use crate::exactalg::{BaseField, FieldMatrix, LaurentMatrix, LaurentPoly, Ring, Scalar, UniPoly};
use crate::par;
use crate::quadform::{gw_equal, gw_invariants, is_metabolic, GwClass, GwInvariants, PreQuadSpace, QuadSpace};
use crate::residue::{residue_form, FunctionalMode};

/// `Plus(n)` is `f = t^n - 1`; `Minus(n)` is `f = t^n - u`, acting on `P`
/// as `t^n I - U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FSpec {
    Plus(u32),
    Minus(u32),
}

impl FSpec {
    pub fn n(self) -> u32 {
        match self {
            FSpec::Plus(n) | FSpec::Minus(n) => n,
        }
    }
}

impl fmt::Display for FSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSpec::Plus(n) => write!(f, "t^{n} - 1"),
            FSpec::Minus(n) => write!(f, "t^{n} - u"),
        }
    }
}

fn require_gm_gm(c: &Correspondence) -> Result<&LaurentMatrix> {
    if (c.source(), c.target()) != (AffineModel::Gm, AffineModel::Gm) {
        return Err(Error::ModelMismatch(format!(
            "expected a gm -> gm correspondence, got {} -> {}",
            c.source(),
            c.target()
        )));
    }
    c.require_action()
}

/// Matrix of multiplication by `f` on `P`.
pub fn mf_matrix(c: &Correspondence, f: FSpec) -> Result<LaurentMatrix> {
    let u = require_gm_gm(c)?;
    let field = c.field();
    let r = c.rank();
    let tn = LaurentPoly::monomial(field.one(), f.n() as i64);
    Ok(match f {
        FSpec::Plus(_) => LaurentMatrix::scalar_matrix(r, tn.minus(&LaurentPoly::one(field))),
        FSpec::Minus(_) => LaurentMatrix::scalar_matrix(r, tn).sub(u),
    })
}

/// `N_P(f) = det(m_f)`.
pub fn det_norm(c: &Correspondence, f: FSpec) -> Result<LaurentPoly> {
    let d = mf_matrix(c, f)?.det()?;
    if d.is_zero() {
        return Err(Error::NotApplicable(format!("{f} is a zero divisor on P")));
    }
    Ok(d)
}

/// The cofactor `g = adj(m_f)`, so that `m_f g = g m_f = N_P(f) I`.
pub fn adjugate_g(c: &Correspondence, f: FSpec) -> Result<LaurentMatrix> {
    let mf = mf_matrix(c, f)?;
    let norm = det_norm(c, f)?;
    let g = mf.adjugate()?;
    let r = c.rank();
    let target = LaurentMatrix::scalar_matrix(r, norm);
    if mf.mul(&g) != target || g.mul(&mf) != target {
        return Err(Error::Internal("adjugate identity m_f g = N I fails".into()));
    }
    if c.gram().mul(&g) != g.transpose().mul(c.gram()) {
        return Err(Error::Internal("cofactor is not self-adjoint for the Gram pairing".into()));
    }
    Ok(g)
}

/// An applicable triple `(f, N, g)` on a fixed correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTriple {
    pub fspec: FSpec,
    pub norm: LaurentPoly,
    pub g: LaurentMatrix,
    pub mf: LaurentMatrix,
    /// `dim_k P/fP`, the degree of the normalized `N_P(f)`.
    pub quotient_dim: usize,
}

impl FTriple {
    /// `(f, N_P(f), adj(m_f))`.
    pub fn canonical(c: &Correspondence, f: FSpec) -> Result<Self> {
        let mf = mf_matrix(c, f)?;
        let norm = det_norm(c, f)?;
        let g = adjugate_g(c, f)?;
        let quotient_dim = normalized_degree(&norm)?;
        Ok(FTriple { fspec: f, norm, g, mf, quotient_dim })
    }

    /// Multiply norm and cofactor by a polynomial.
    pub fn padded(&self, pad: &UniPoly) -> Self {
        let p = LaurentPoly::from_poly(pad);
        FTriple {
            norm: self.norm.times(&p),
            g: self.g.scale(&p),
            ..self.clone()
        }
    }

    pub fn degree(&self) -> Result<usize> {
        normalized_degree(&self.norm)
    }

    /// Check `m_f g = N I` exactly.
    pub fn check_applicable(&self) -> Result<()> {
        if self.norm.is_zero() {
            return Err(Error::NotApplicable("norm is zero".into()));
        }
        let r = self.mf.rows();
        if self.mf.mul(&self.g) != LaurentMatrix::scalar_matrix(r, self.norm.clone()) {
            return Err(Error::NotApplicable(format!("m_f g != N I for {}", self.fspec)));
        }
        Ok(())
    }
}

fn normalized_degree(n: &LaurentPoly) -> Result<usize> {
    Ok(n.normalize()?.n_tilde.degree().unwrap_or(0))
}

/// How the norms are padded up to a common degree `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Padding {
    /// `t^d + eps`.
    #[default]
    Binomial,
    /// `t^d + a_(d-1) t^(d-1) + ... + a_1 t + eps`; missing middle
    /// coefficients are zero, extra ones are ignored.
    WithMiddle(Vec<Scalar>),
}

/// Padding factor of degree `delta` for a norm whose normalized constant
/// term is `c0`. `eps` makes the padded constant term `-1` when `c0 = +-1`
/// and is `+1` otherwise.
pub fn padding_factor(field: BaseField, delta: usize, c0: &Scalar, rule: &Padding) -> UniPoly {
    let one = field.one();
    let minus_one = -&one;
    let eps = if *c0 == one { minus_one } else { one.clone() };
    if delta == 0 {
        return UniPoly::one(field);
    }
    let mut coeffs = vec![field.zero(); delta + 1];
    coeffs[0] = eps;
    coeffs[delta] = one;
    if let Padding::WithMiddle(mid) = rule {
        for (k, a) in mid.iter().take(delta - 1).enumerate() {
            coeffs[k + 1] = a.clone();
        }
    }
    UniPoly::new(field, coeffs)
}

/// Plus and minus triples padded to a common `(n, m)`.
#[derive(Clone, Debug)]
pub struct BiTriple {
    pub n: u32,
    pub m: usize,
    pub plus: FTriple,
    pub minus: FTriple,
}

fn check_stability(c: &Correspondence, n: u32) -> Result<()> {
    let b = stability_bound(c)?;
    if (n as i64) <= b.n_p {
        return Err(Error::Stability { n: n as i64, bound: b.n_p });
    }
    Ok(())
}

/// Larger of the plus and minus normalized norm degrees.
pub fn canonical_degree(c: &Correspondence, n: u32) -> Result<usize> {
    let p = FTriple::canonical(c, FSpec::Plus(n))?.degree()?;
    let m = FTriple::canonical(c, FSpec::Minus(n))?.degree()?;
    Ok(p.max(m))
}

pub fn make_bitriple(c: &Correspondence, n: u32, m_target: Option<usize>) -> Result<BiTriple> {
    make_bitriple_with(c, n, m_target, &Padding::Binomial)
}

pub fn make_bitriple_with(c: &Correspondence, n: u32, m_target: Option<usize>, rule: &Padding) -> Result<BiTriple> {
    require_gm_gm(c)?;
    check_stability(c, n)?;
    let plus = FTriple::canonical(c, FSpec::Plus(n))?;
    let minus = FTriple::canonical(c, FSpec::Minus(n))?;
    let canonical = plus.degree()?.max(minus.degree()?);
    let m = m_target.unwrap_or(canonical);
    if m < canonical {
        return Err(Error::Padding(format!("target degree {m} is below the canonical degree {canonical}")));
    }
    let pad = |t: FTriple| -> Result<FTriple> {
        let d = t.degree()?;
        let c0 = t.norm.normalize()?.n_tilde.coeff(0);
        let out = t.padded(&padding_factor(c.field(), m - d, &c0, rule));
        out.check_applicable()?;
        Ok(out)
    };
    Ok(BiTriple { n, m, plus: pad(plus)?, minus: pad(minus)? })
}

/// Evaluate each Laurent entry at the matrix `t` and assemble the blocks.
fn eval_blocks(m: &LaurentMatrix, t: &FieldMatrix, t_inv: &FieldMatrix) -> Result<FieldMatrix> {
    let field = t.field();
    let k = t.rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = FieldMatrix::zeros(field, rows * k, cols * k);
    for j in 0..rows {
        for l in 0..cols {
            let b = t.eval_laurent(m.get(j, l), Some(t_inv))?;
            for a in 0..k {
                for c in 0..k {
                    out.set(j * k + a, l * k + c, b.get(a, c).clone());
                }
            }
        }
    }
    Ok(out)
}

fn composite_from_form(c: &Correspondence, s: &FieldMatrix, tm: &FieldMatrix, tm_inv: &FieldMatrix) -> Result<FieldMatrix> {
    let gram_blocks = eval_blocks(c.gram(), tm, tm_inv)?;
    let composed = FieldMatrix::identity(c.field(), c.rank()).kron(s).mul(&gram_blocks);
    if !composed.is_symmetric() {
        return Err(Error::Internal("Gram of the composite with <N> is not symmetric".into()));
    }
    Ok(composed)
}

/// Gram of `C o <N>` on `P/NP`, basis `f_j (x) t^i` at index `j m + i`.
pub fn composite_gram(c: &Correspondence, norm: &LaurentPoly, mode: FunctionalMode) -> Result<FieldMatrix> {
    require_gm_gm(c)?;
    let form = residue_form(norm, mode)?;
    let tm_inv = form.action.inverse()?;
    composite_from_form(c, &form.gram, &form.action, &tm_inv)
}

/// Intermediate data of one [`rho_triple`] run.
#[derive(Clone, Debug)]
pub struct RhoTrace {
    pub space: QuadSpace,
    /// `dim_k P/NP = r m`.
    pub module_dim: usize,
    pub radical_dim: usize,
    /// `dim_k P/fP`.
    pub quotient_dim: usize,
}

pub fn rho_triple(c: &Correspondence, t: &FTriple, mode: FunctionalMode) -> Result<QuadSpace> {
    Ok(rho_triple_traced(c, t, mode)?.space)
}

/// [`rho_triple`] with its dimension bookkeeping. The radical of the
/// twisted form is checked to equal the image of `m_f` on `P/NP`.
pub fn rho_triple_traced(c: &Correspondence, t: &FTriple, mode: FunctionalMode) -> Result<RhoTrace> {
    require_gm_gm(c)?;
    t.check_applicable()?;
    let field = c.field();
    let r = c.rank();
    if r == 0 {
        return Ok(RhoTrace { space: QuadSpace::zero(field), module_dim: 0, radical_dim: 0, quotient_dim: 0 });
    }
    let form = residue_form(&t.norm, mode)?;
    let m = form.dim();
    let tm = &form.action;
    let tm_inv = tm.inverse()?;
    let composed = composite_from_form(c, &form.gram, tm, &tm_inv)?;
    let e = eval_blocks(&t.g, tm, &tm_inv)?;
    let f = eval_blocks(&t.mf, tm, &tm_inv)?;
    if !e.mul(&f).is_zero() {
        return Err(Error::Internal("g f does not vanish on P/NP".into()));
    }
    let twisted = e.transpose().mul(&composed);
    if !twisted.is_symmetric() {
        return Err(Error::Internal("g-twisted Gram is not symmetric".into()));
    }
    let red = PreQuadSpace::new(twisted)?.reduce_with_basis();
    let module_dim = r * m;
    let radical_dim = red.kernel.len();
    let quotient_dim = red.space.rank();
    if quotient_dim != t.quotient_dim || radical_dim + quotient_dim != module_dim {
        return Err(Error::Internal(format!(
            "dimension bookkeeping: module {module_dim}, radical {radical_dim}, quotient {quotient_dim}, expected quotient {}",
            t.quotient_dim
        )));
    }
    let kernel = FieldMatrix::from_columns(field, module_dim, &red.kernel);
    if !f.column_space_contains(&kernel) || !kernel.column_space_contains(&f) {
        return Err(Error::Internal("radical differs from f (P/NP)".into()));
    }
    Ok(RhoTrace { space: red.space, module_dim, radical_dim, quotient_dim })
}

/// Options shared by the `rho` entry points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RhoOptions {
    pub mode: FunctionalMode,
    pub padding: Padding,
}

/// `rho_+ - rho_-` of a single correspondence at a fixed `(n, m)`.
pub fn rho_bitriple(c: &Correspondence, n: u32, m: usize, opts: &RhoOptions) -> Result<GwClass> {
    if c.rank() == 0 {
        return Ok(GwClass::zero(c.field()));
    }
    let bt = make_bitriple_with(c, n, Some(m), &opts.padding)?;
    let plus = rho_triple(c, &bt.plus, opts.mode)?;
    let minus = rho_triple(c, &bt.minus, opts.mode)?;
    Ok(GwClass { pos: plus, neg: minus })
}

/// Raw `rho_n` of a formal sum, with every term padded to the largest
/// canonical degree among the terms.
pub fn rho_n(field: BaseField, sum: &FormalSum, n: u32, opts: &RhoOptions) -> Result<GwClass> {
    let terms = sum.terms();
    for (_, c) in terms {
        field.check_same(c.field())?;
        require_gm_gm(c)?;
        check_stability(c, n)?;
    }
    let degrees = par::try_map(terms, |(_, c)| if c.rank() == 0 { Ok(0) } else { canonical_degree(c, n) })?;
    let m = degrees.into_iter().max().unwrap_or(0);
    let parts = par::try_map(terms, |(s, c)| Ok((*s, rho_bitriple(c, n, m, opts)?)))?;
    parts
        .iter()
        .try_fold(GwClass::zero(field), |acc, (s, x)| acc.add_signed(*s, x))
}

/// The square class `beta_n` with `rho_n(dot(<1> x id)) = <beta_n>`.
pub fn beta_calibrate(field: BaseField, n: u32, opts: &RhoOptions) -> Result<Scalar> {
    if n < 2 {
        return Err(Error::Precondition(format!("calibration needs n >= 2, got {n}")));
    }
    let one = Correspondence::from_space(&QuadSpace::rank_one(field.one())?);
    let x = rho_n(field, &dot_expand(&boxtimes_gm(&one)?)?, n, opts)?;
    x.as_rank_one()?
        .ok_or_else(|| Error::Calibration(format!("rho_{n} of the unit form is {x}, not a rank-one class")))
}

/// `rho_n` corrected by the calibrated `beta_n`.
pub fn rho_tilde(field: BaseField, sum: &FormalSum, n: u32, opts: &RhoOptions) -> Result<GwClass> {
    let beta = beta_calibrate(field, n, opts)?;
    rho_n(field, sum, n, opts)?.scale(&beta)
}

/// Outcome of a class-level check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Invariants of the two sides after cross-addition.
    pub lhs: Option<GwInvariants>,
    pub rhs: Option<GwInvariants>,
    pub detail: String,
}

fn compare(name: String, a: &GwClass, b: &GwClass, detail: String) -> Result<CheckReport> {
    let passed = gw_equal(a, b)?;
    let lhs = gw_invariants(&a.pos.direct_sum(&b.neg)?)?;
    let rhs = gw_invariants(&b.pos.direct_sum(&a.neg)?)?;
    Ok(CheckReport { name, passed, lhs: Some(lhs), rhs: Some(rhs), detail })
}

/// `rho_n(dot(Phi x id)) = <beta_n> [Phi]`.
pub fn left_inverse_check(phi: &Correspondence, n: u32, opts: &RhoOptions) -> Result<CheckReport> {
    let field = phi.field();
    let space = phi.to_space()?;
    let beta = beta_calibrate(field, n, opts)?;
    let lhs = rho_n(field, &dot_expand(&boxtimes_gm(phi)?)?, n, opts)?;
    let rhs = GwClass::of(space.clone()).scale(&beta)?;
    compare(
        format!("left inverse, n = {n}, Phi = {space}"),
        &lhs,
        &rhs,
        format!("beta_{n} = {beta}; rho = {lhs}"),
    )
}

/// `<(t - x)(t - y)>` is `<x - y> + <y - x>`, hence metabolic.
pub fn permutation_fiber_check(x: &Scalar, y: &Scalar, mode: FunctionalMode) -> Result<CheckReport> {
    let field = x.field();
    field.check_same(y.field())?;
    if x == y {
        return Err(Error::Precondition("permutation fiber needs x != y".into()));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::Precondition("permutation fiber needs units x, y".into()));
    }
    let poly = UniPoly::from_roots(field, &[x.clone(), y.clone()]);
    let space = residue_form(&LaurentPoly::from_poly(&poly), mode)?.space()?;
    let expected = QuadSpace::diag(field, &[x - y, y - x])?;
    let mut report = compare(
        format!("permutation fiber ({x}, {y}) over {field}"),
        &GwClass::of(space.clone()),
        &GwClass::of(expected),
        String::new(),
    )?;
    let metabolic = is_metabolic(&space)?;
    report.passed &= metabolic;
    report.detail = format!("<(t - {x})(t - {y})> = {space}, metabolic: {metabolic}");
    Ok(report)
}

/// `Phi' x C` for a `pt -> pt` spectator `Phi'`, as a `gm -> gm` term.
fn with_spectator(c: &Correspondence, spectator: &FieldMatrix) -> Result<Correspondence> {
    let field = c.field();
    let s = spectator.to_laurent();
    let u = c.require_action()?;
    Correspondence::new(
        AffineModel::Gm,
        AffineModel::Gm,
        s.kron(c.gram()),
        Some(LaurentMatrix::identity(field, s.rows()).kron(u)),
    )
}

/// Specializations of `id x rho(Phi x id)` against `rho` run with a
/// spectator `G_m` factor fixed at each sample point.
pub fn naturality_boxtimes_check(
    phi: &Correspondence,
    n: u32,
    samples: &[Scalar],
    opts: &RhoOptions,
) -> Result<CheckReport> {
    let field = phi.field();
    phi.to_space()?;
    let sum = dot_expand(&boxtimes_gm(phi)?)?;
    let out = rho_n(field, &sum, n, opts)?;
    let lift = |q: &QuadSpace| boxtimes_gm(&Correspondence::from_space(q));
    let (pos, neg) = (lift(&out.pos)?, lift(&out.neg)?);
    let id = identity_gm(field);
    let mut passed = true;
    let mut last = None;
    for a in samples {
        let side = |c: &Correspondence| -> Result<QuadSpace> {
            if c.rank() == 0 {
                return Ok(QuadSpace::zero(field));
            }
            specialize(c, a)?.forget_target().to_space()
        };
        let lhs = GwClass { pos: side(&pos)?, neg: side(&neg)? };
        let spectator = specialize(&id, a)?.constant_gram()?;
        let mut carried = FormalSum::new();
        for (s, c) in sum.terms() {
            carried.push(*s, with_spectator(c, &spectator)?)?;
        }
        let rhs = rho_n(field, &carried, n, opts)?;
        let r = compare(format!("naturality at {a}"), &lhs, &rhs, String::new())?;
        passed &= r.passed && r.lhs == r.rhs;
        last = Some(r);
    }
    let (lhs, rhs) = last.map(|r| (r.lhs, r.rhs)).unwrap_or((None, None));
    Ok(CheckReport {
        name: format!("naturality under boxtimes, n = {n}"),
        passed,
        lhs,
        rhs,
        detail: format!("{} sample points", samples.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr::unit_gm;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn lp(val: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(q(), val, c)
    }

    fn phi(entries: &[i64]) -> Correspondence {
        boxtimes_gm(&Correspondence::from_space(&QuadSpace::diag_ints(q(), entries).unwrap())).unwrap()
    }

    #[test]
    fn mf_examples() {
        let id = identity_gm(q());
        assert_eq!(mf_matrix(&id, FSpec::Minus(2)).unwrap().get(0, 0), &lp(1, &[-1, 1]));
        assert_eq!(mf_matrix(&id, FSpec::Plus(2)).unwrap().get(0, 0), &lp(0, &[-1, 0, 1]));
        assert_eq!(mf_matrix(&unit_gm(q()), FSpec::Minus(1)).unwrap().get(0, 0), &lp(0, &[-1, 1]));
    }

    #[test]
    fn norm_examples() {
        let id = identity_gm(q());
        for n in 1..5u32 {
            let mut c = vec![0; n as usize + 1];
            c[0] = -1;
            c[n as usize] = 1;
            assert_eq!(det_norm(&id, FSpec::Plus(n)).unwrap(), lp(0, &c));
        }
        assert_eq!(det_norm(&id, FSpec::Minus(2)).unwrap(), lp(1, &[-1, 1]));
        let sq = lp(0, &[-1, 0, 1]).times(&lp(0, &[-1, 0, 1]));
        assert_eq!(det_norm(&phi(&[1, 1]), FSpec::Plus(2)).unwrap(), sq);
        assert!(matches!(det_norm(&unit_gm(q()), FSpec::Minus(0)), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn adjugate_examples() {
        let id = identity_gm(q());
        assert_eq!(adjugate_g(&id, FSpec::Minus(2)).unwrap(), LaurentMatrix::identity(q(), 1));
        let g = adjugate_g(&phi(&[1, 1]), FSpec::Plus(2)).unwrap();
        assert_eq!(g, LaurentMatrix::scalar_matrix(2, lp(0, &[-1, 0, 1])));
    }

    #[test]
    fn bitriple_examples() {
        let bt = make_bitriple(&identity_gm(q()), 2, None).unwrap();
        assert_eq!(bt.plus.norm, lp(0, &[-1, 0, 1]));
        assert_eq!(bt.m, 2);
        // t^2 - t normalizes to t - 1; padded by t + 1 to degree 2.
        assert_eq!(bt.minus.norm, lp(1, &[-1, 0, 1]));
        let bt = make_bitriple(&unit_gm(q()), 2, None).unwrap();
        assert_eq!(bt.minus.norm, lp(0, &[-1, 0, 1]));
        assert!(matches!(make_bitriple(&identity_gm(q()), 0, None), Err(Error::Stability { .. })));
        assert!(matches!(make_bitriple(&identity_gm(q()), 1, None), Err(Error::Stability { .. })));
        assert!(matches!(make_bitriple(&identity_gm(q()), 3, Some(2)), Err(Error::Padding(_))));
    }

    #[test]
    fn padding_sign() {
        let p = padding_factor(q(), 1, &q().int(-1), &Padding::Binomial);
        assert_eq!(p, UniPoly::from_ints(q(), &[1, 1]));
        let p = padding_factor(q(), 2, &q().one(), &Padding::WithMiddle(vec![q().int(5), q().int(9)]));
        assert_eq!(p, UniPoly::from_ints(q(), &[-1, 5, 1]));
        assert_eq!(padding_factor(q(), 1, &q().int(3), &Padding::Binomial), UniPoly::from_ints(q(), &[1, 1]));
    }

    #[test]
    fn rho_triple_examples() {
        let id = identity_gm(q());
        let plus = FTriple::canonical(&id, FSpec::Plus(2)).unwrap();
        let tr = rho_triple_traced(&id, &plus, FunctionalMode::Coefficient).unwrap();
        assert_eq!(tr.space, QuadSpace::hyperbolic(q()));
        assert_eq!(tr.radical_dim, 0);
        let minus = FTriple::canonical(&id, FSpec::Minus(2)).unwrap();
        let tr = rho_triple_traced(&id, &minus, FunctionalMode::Coefficient).unwrap();
        assert_eq!((tr.module_dim, tr.quotient_dim), (1, 1));
        let bt = make_bitriple(&id, 2, None).unwrap();
        let tr = rho_triple_traced(&id, &bt.minus, FunctionalMode::Coefficient).unwrap();
        assert_eq!((tr.module_dim, tr.radical_dim, tr.quotient_dim), (2, 1, 1));
    }

    #[test]
    fn rho_triple_gram_matches_composition() {
        for c in [phi(&[1, 3]), identity_gm(q())] {
            let t = FTriple::canonical(&c, FSpec::Minus(3)).unwrap();
            let res = crate::residue::residue_space(&t.norm, FunctionalMode::Coefficient).unwrap();
            let composed = crate::corr::compose(&c, &res).unwrap().constant_gram().unwrap();
            assert_eq!(composite_gram(&c, &t.norm, FunctionalMode::Coefficient).unwrap(), composed);
        }
    }

    #[test]
    fn calibration_is_minus_one() {
        let opts = RhoOptions::default();
        for n in 2..5 {
            assert_eq!(beta_calibrate(q(), n, &opts).unwrap(), q().int(-1));
        }
        for p in [5, 7] {
            let f = BaseField::prime(p).unwrap();
            let expected = crate::quadform::square_class(&-f.one()).unwrap();
            assert_eq!(beta_calibrate(f, 2, &opts).unwrap(), expected);
        }
    }

    #[test]
    fn unit_section_term_vanishes() {
        let opts = RhoOptions::default();
        let c = phi(&[2]);
        let unit_term = crate::corr::compose(&unit_gm(q()), &c).unwrap();
        let x = rho_n(q(), &FormalSum::single(unit_term), 2, &opts).unwrap();
        assert!(gw_equal(&x, &GwClass::zero(q())).unwrap());
        assert!(rho_n(q(), &dot_expand(&unit_gm(q())).unwrap(), 2, &opts).unwrap().rank() == 0);
    }

    #[test]
    fn left_inverse_small() {
        let opts = RhoOptions::default();
        for e in [&[1][..], &[-1], &[2], &[1, 3]] {
            let c = Correspondence::from_space(&QuadSpace::diag_ints(q(), e).unwrap());
            assert!(left_inverse_check(&c, 2, &opts).unwrap().passed, "{e:?}");
        }
    }

    #[test]
    fn permutation_examples() {
        let m = FunctionalMode::Coefficient;
        assert!(permutation_fiber_check(&q().one(), &q().int(-1), m).unwrap().passed);
        assert!(permutation_fiber_check(&q().one(), &q().int(4), m).unwrap().passed);
        let f5 = BaseField::prime(5).unwrap();
        assert!(permutation_fiber_check(&f5.int(2), &f5.int(3), m).unwrap().passed);
        assert!(!permutation_fiber_check(&q().one(), &q().int(-1), FunctionalMode::JuniorTrace).unwrap().passed);
        assert!(permutation_fiber_check(&q().one(), &q().one(), m).is_err());
    }

    #[test]
    fn naturality_examples() {
        let opts = RhoOptions::default();
        let samples = [q().int(1), q().int(2), q().int(3)];
        for e in [&[1][..], &[2], &[]] {
            let c = Correspondence::from_space(&QuadSpace::diag_ints(q(), e).unwrap());
            assert!(naturality_boxtimes_check(&c, 2, &samples, &opts).unwrap().passed);
        }
    }
}
