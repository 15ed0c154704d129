//! The quadratic space `<N>` on `k[t]/(N)` for a Laurent polynomial `N`.
//!
//! `N = c t^v N~` is split into a unit part and a monic polynomial `N~` with
//! nonzero constant term. The form is `(a, b) -> l(ab)` for a linear
//! functional `l` on `k[t]/(N~)`:
//!
//! * coefficient mode: `l(a) = c^-1 * [t^(m-1)] (t^-v a mod N~)`, the sum of
//!   residues of `a / N` at the roots of `N~`;
//! * junior-trace mode: `l(a) = c^-1 *` the constant term, in `k[N~]`, of the
//!   trace of multiplication by `t^-v a` on `k[t]` as a free `k[N~]`-module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::corr::{AffineModel, Correspondence};
use crate::error::{Error, Result};
use crate::exactalg::hilbert::prime_factors;
use crate::exactalg::{BaseField, FieldMatrix, LaurentPoly, Normalized, Ring, Scalar, UniPoly};
use crate::quadform::QuadSpace;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FunctionalMode {
    #[default]
    Coefficient,
    JuniorTrace,
}

impl fmt::Display for FunctionalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalMode::Coefficient => write!(f, "coefficient"),
            FunctionalMode::JuniorTrace => write!(f, "junior-trace"),
        }
    }
}

/// `k[t]/(modulus)` for a monic modulus; elements are polynomials of degree
/// below `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    modulus: UniPoly,
}

impl FiniteAlgebra {
    pub fn new(modulus: UniPoly) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::NonMonic);
        }
        Ok(FiniteAlgebra { modulus })
    }

    /// An algebra in which `t` is invertible (`modulus(0) != 0`).
    pub fn on_gm(modulus: UniPoly) -> Result<Self> {
        if modulus.coeff(0).is_zero() {
            return Err(Error::ZeroDivisor("modulus vanishes at t = 0".into()));
        }
        Self::new(modulus)
    }

    pub fn field(&self) -> BaseField {
        self.modulus.base_field()
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.modulus.degree().expect("monic modulus is nonzero")
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.divmod(&self.modulus).expect("monic modulus").1
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&a.mul(b))
    }

    /// Inverse of a unit via the extended Euclidean algorithm.
    pub fn inverse(&self, a: &UniPoly) -> Option<UniPoly> {
        let field = self.field();
        let (mut r0, mut r1) = (self.modulus.clone(), self.reduce(a));
        let (mut s0, mut s1) = (UniPoly::zero(field), UniPoly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem_unit(&r1).ok()?;
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.coeff(0).inv()?;
        Some(self.reduce(&s0.scale(&c)))
    }

    /// `t^k` in the algebra; negative powers need `t` invertible.
    pub fn t_pow(&self, k: i64) -> Result<UniPoly> {
        let field = self.field();
        let base = if k >= 0 {
            UniPoly::var(field)
        } else {
            self.inverse(&UniPoly::var(field))
                .ok_or_else(|| Error::ZeroDivisor("t is not invertible in the algebra".into()))?
        };
        let mut acc = self.reduce(&UniPoly::one(field));
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `t` on the monomial basis (column `j` is
    /// `t^(j+1) mod modulus`).
    pub fn companion(&self) -> FieldMatrix {
        let m = self.dim();
        let field = self.field();
        FieldMatrix::from_fn(field, m, m, |i, j| {
            if j + 1 < m {
                if i == j + 1 {
                    field.one()
                } else {
                    field.zero()
                }
            } else {
                -&self.modulus.coeff(i)
            }
        })
    }

    /// Coordinates of a reduced element.
    pub fn coords(&self, a: &UniPoly) -> Vec<Scalar> {
        let r = self.reduce(a);
        (0..self.dim()).map(|i| r.coeff(i)).collect()
    }

    /// Trace of multiplication by `a` read off as the constant term of the
    /// `k[modulus]`-linear trace: expand `a t^i` in base-`modulus` digits
    /// and keep the `t^i` coefficient of the lowest digit.
    pub fn junior_trace(&self, a: &UniPoly) -> Scalar {
        let field = self.field();
        let m = self.dim();
        (0..m).fold(field.zero(), |acc, i| {
            let digits = self.digits(&a.shift(i));
            let low = digits.first().cloned().unwrap_or_else(|| UniPoly::zero(field));
            &acc + &low.coeff(i)
        })
    }

    /// Base-`modulus` digits `p = sum_k d_k modulus^k`, lowest first.
    pub fn digits(&self, p: &UniPoly) -> Vec<UniPoly> {
        let mut out = Vec::new();
        let mut rest = p.clone();
        while !rest.is_zero() {
            let (q, r) = rest.divmod(&self.modulus).expect("monic modulus");
            out.push(r);
            rest = q;
        }
        out
    }
}

/// Linear functional `l` defining `<N>`.
#[derive(Clone, Debug)]
pub struct ResidueFunctional {
    pub algebra: FiniteAlgebra,
    pub mode: FunctionalMode,
    pub norm: Normalized,
    c_inv: Scalar,
    t_shift: UniPoly,
}

impl ResidueFunctional {
    /// `l` applied to a polynomial in `t`.
    pub fn eval(&self, a: &UniPoly) -> Scalar {
        let shifted = self.algebra.mul(&self.t_shift, a);
        let raw = match self.mode {
            FunctionalMode::Coefficient => shifted.coeff(self.algebra.dim() - 1),
            FunctionalMode::JuniorTrace => self.algebra.junior_trace(&shifted),
        };
        &self.c_inv * &raw
    }

    /// `l` applied to a Laurent polynomial.
    pub fn eval_laurent(&self, a: &LaurentPoly) -> Result<Scalar> {
        let shift = self.algebra.t_pow(a.val())?;
        Ok(self.eval(&self.algebra.mul(&shift, a.body())))
    }
}

pub fn residue_functional(n: &LaurentPoly, mode: FunctionalMode) -> Result<ResidueFunctional> {
    let norm = n.normalize()?;
    let algebra = FiniteAlgebra::on_gm(norm.n_tilde.clone())?;
    let c_inv = norm.c.inv().expect("leading coefficient is nonzero");
    let t_shift = algebra.t_pow(-norm.v)?;
    Ok(ResidueFunctional { algebra, mode, norm, c_inv, t_shift })
}

/// Gram `S_ij = l(t^(i+j))` and the companion action `T` of `<N>`.
#[derive(Clone, Debug)]
pub struct ResidueForm {
    pub gram: FieldMatrix,
    pub action: FieldMatrix,
    pub functional: ResidueFunctional,
}

impl ResidueForm {
    pub fn space(&self) -> Result<QuadSpace> {
        QuadSpace::new(self.gram.clone())
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
}

pub fn residue_form(n: &LaurentPoly, mode: FunctionalMode) -> Result<ResidueForm> {
    let l = residue_functional(n, mode)?;
    let m = l.algebra.dim();
    let field = l.algebra.field();
    if m == 0 {
        return Err(Error::Precondition(format!("{n} is a unit; <N> would be zero-dimensional")));
    }
    let powers: Vec<Scalar> = (0..2 * m - 1)
        .map(|k| l.eval(&UniPoly::monomial(field.one(), k)))
        .collect();
    let gram = FieldMatrix::from_fn(field, m, m, |i, j| powers[i + j].clone());
    let action = l.algebra.companion();
    if action.transpose().mul(&gram) != gram.mul(&action) {
        return Err(Error::Internal("multiplication by t is not self-adjoint".into()));
    }
    if gram.det_field()?.is_zero() {
        return Err(Error::Internal(format!(
            "{mode} functional gives a degenerate form for {n}"
        )));
    }
    Ok(ResidueForm { gram, action, functional: l })
}

/// `<N>` as a correspondence `pt -> G_m`.
pub fn residue_space(n: &LaurentPoly, mode: FunctionalMode) -> Result<Correspondence> {
    let f = residue_form(n, mode)?;
    Correspondence::new(
        AffineModel::Pt,
        AffineModel::Gm,
        f.gram.to_laurent(),
        Some(f.action.to_laurent()),
    )
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let mut divs = vec![BigInt::one()];
    for p in prime_factors(&n)? {
        let bp = BigInt::from(p);
        let mut e = 0;
        let mut m = n.clone();
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &bp;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Roots in the base field, listed by increasing absolute value with the
/// positive root first (rationals) or by residue (prime fields).
pub fn roots(p: &UniPoly) -> Result<Vec<Scalar>> {
    let field = p.base_field();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let candidates: Vec<Scalar> = match field {
        BaseField::Prime(_) => field.elements().expect("prime field"),
        BaseField::Rationals => {
            let mut lcm = BigInt::one();
            for c in p.coeffs() {
                lcm = lcm.lcm(c.as_rational().expect("rational").denom());
            }
            let ints: Vec<BigInt> = p
                .coeffs()
                .iter()
                .map(|c| (c.as_rational().expect("rational") * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
            let mut out = Vec::new();
            if low > 0 {
                out.push(field.zero());
            }
            let lead = ints.last().expect("nonzero polynomial");
            let mut cands = Vec::new();
            for a in divisors(&ints[low])? {
                for b in divisors(lead)? {
                    let r = BigRational::new(a.clone(), b);
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort_by(|x, y| x.abs().cmp(&y.abs()).then(y.cmp(x)));
            cands.dedup();
            out.extend(cands.into_iter().map(Scalar::Rational));
            out
        }
    };
    Ok(candidates.into_iter().filter(|x| p.eval(x).is_zero()).collect())
}

/// The diagonal form `<c^-1 a^-v N~'(a)>` over the roots `a` of `N~`.
pub fn split_at_simple_roots(n: &LaurentPoly) -> Result<QuadSpace> {
    let norm = n.normalize()?;
    let rs = roots(&norm.n_tilde)?;
    let m = norm.n_tilde.degree().unwrap_or(0);
    if rs.len() != m {
        return Err(Error::NotApplicable(format!(
            "{} does not split into distinct linear factors",
            norm.n_tilde
        )));
    }
    let d = norm.n_tilde.derivative();
    let c_inv = norm.c.inv().expect("nonzero");
    let entries: Vec<Scalar> = rs
        .iter()
        .map(|a| &(&c_inv * &a.pow(-norm.v).expect("roots are nonzero")) * &d.eval(a))
        .collect();
    QuadSpace::diag(n.field(), &entries)
}

/// Square root `s` of `q` with `s = 1` modulo the nilradical, by Newton
/// iteration `s <- (s + q/s) / 2`.
pub fn sqrt_one_plus_nilpotent(alg: &FiniteAlgebra, q: &UniPoly) -> Result<UniPoly> {
    let field = alg.field();
    let one = UniPoly::one(field);
    let q = alg.reduce(q);
    let radical = alg.modulus().square_free_part();
    let (_, rem) = q.sub(&one).div_rem_unit(&radical)?;
    if !rem.is_zero() {
        return Err(Error::Precondition("element is not 1 modulo the nilradical".into()));
    }
    let half = field.frac(1, 2)?;
    let mut s = alg.reduce(&one);
    for _ in 0..=usize::BITS {
        if alg.mul(&s, &s) == q {
            return Ok(s);
        }
        let inv = alg
            .inverse(&s)
            .ok_or_else(|| Error::Internal("Newton iterate is not a unit".into()))?;
        s = alg.reduce(&s.add(&alg.mul(&q, &inv)).scale(&half));
    }
    Err(Error::Internal("Newton iteration did not converge".into()))
}
