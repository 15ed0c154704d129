//! Seeded generators for randomized checks. Every generator draws from a
//! caller-owned [`ChaCha8Rng`], so a seed fixes the whole run.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::corr::{boxtimes_gm, AffineModel, Correspondence};
use crate::error::Result;
use crate::exactalg::{BaseField, FieldMatrix, LaurentMatrix, LaurentPoly, Ring, Scalar};
use crate::quadform::QuadSpace;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero scalar: `a/b` with `|a| <= 9`, `1 <= b <= 3` over the
/// rationals, uniform over `F_p^*`.
pub fn unit(field: BaseField, rng: &mut Rng64) -> Scalar {
    match field {
        BaseField::Rationals => {
            let a = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let b = rng.gen_range(1..=3);
            field.frac(a, b).expect("nonzero denominator")
        }
        BaseField::Prime(p) => field.int(rng.gen_range(1..p) as i64),
    }
}

/// Any scalar, small over the rationals.
pub fn scalar(field: BaseField, rng: &mut Rng64) -> Scalar {
    match field {
        BaseField::Rationals => field.int(rng.gen_range(-4..=4)),
        BaseField::Prime(p) => field.int(rng.gen_range(0..p) as i64),
    }
}

/// Two distinct units.
pub fn distinct_units(field: BaseField, rng: &mut Rng64) -> (Scalar, Scalar) {
    let x = unit(field, rng);
    loop {
        let y = unit(field, rng);
        if y != x {
            return (x, y);
        }
    }
}

/// Invertible matrix: product of random unipotent lower and upper factors.
pub fn invertible(field: BaseField, n: usize, rng: &mut Rng64) -> FieldMatrix {
    let upper = FieldMatrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Less => scalar(field, rng),
        std::cmp::Ordering::Greater => field.zero(),
    });
    let lower = FieldMatrix::from_fn(field, n, n, |i, j| if i > j { scalar(field, rng) } else { field.zero() })
        .add(&FieldMatrix::identity(field, n));
    lower.mul(&upper)
}

/// A quadratic space of the given rank: random units on the diagonal,
/// moved by a random change of basis.
pub fn form(field: BaseField, rank: usize, rng: &mut Rng64) -> QuadSpace {
    let d: Vec<Scalar> = (0..rank).map(|_| unit(field, rng)).collect();
    let p = invertible(field, rank, rng);
    QuadSpace::diag(field, &d)
        .and_then(|q| q.congruent(&p))
        .expect("congruent to a nondegenerate diagonal form")
}

/// `Q + (-Q)` for a random `Q` of rank 1 or 2, as a `pt -> pt` input.
pub fn metabolic(field: BaseField, rng: &mut Rng64) -> Correspondence {
    let q = form(field, rng.gen_range(1..=2), rng);
    let m = q.direct_sum(&q.scale(&-field.one()).expect("nonzero")).expect("same field");
    Correspondence::from_space(&m)
}

/// `Phi x id` for a random form `Phi` of rank `1..=max_rank`.
pub fn boxtimes_input(field: BaseField, max_rank: usize, rng: &mut Rng64) -> Result<Correspondence> {
    let q = form(field, rng.gen_range(1..=max_rank), rng);
    boxtimes_gm(&Correspondence::from_space(&q))
}

/// `c t^k` with `k` in `-1..=1`.
fn laurent_monomial(field: BaseField, rng: &mut Rng64) -> LaurentPoly {
    LaurentPoly::monomial(unit(field, rng), rng.gen_range(-1..=1))
}

/// A unimodular matrix over `k[t, t^-1]` and its inverse, built from
/// `steps` elementary row operations.
fn unimodular(field: BaseField, n: usize, steps: usize, rng: &mut Rng64) -> (LaurentMatrix, LaurentMatrix) {
    let mut a = LaurentMatrix::identity(field, n);
    let mut inv = LaurentMatrix::identity(field, n);
    if n < 2 {
        return (a, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let x = laurent_monomial(field, rng);
        let mut e = LaurentMatrix::identity(field, n);
        e.set(i, j, x.clone());
        let mut e_inv = LaurentMatrix::identity(field, n);
        e_inv.set(i, j, x.negated());
        a = e.mul(&a);
        inv = inv.mul(&e_inv);
    }
    (a, inv)
}

/// A valid `gm -> gm` correspondence of the given rank with a
/// non-constant action: `G = B^T D B`, `U = B^-1 D^-1 S B` with `D`
/// constant diagonal and `S = A^T D' A` for unimodular `A, B` and a
/// diagonal of monomials `D'`.
pub fn gm_correspondence(field: BaseField, rank: usize, rng: &mut Rng64) -> Correspondence {
    let d: Vec<Scalar> = (0..rank).map(|_| unit(field, rng)).collect();
    let d_inv: Vec<Scalar> = d.iter().map(|x| x.inv().expect("unit")).collect();
    let dm = FieldMatrix::diagonal(field, &d).to_laurent();
    let dm_inv = FieldMatrix::diagonal(field, &d_inv).to_laurent();
    let monos: Vec<LaurentPoly> = (0..rank).map(|_| laurent_monomial(field, rng)).collect();
    let (a, _) = unimodular(field, rank, 1, rng);
    let (b, b_inv) = unimodular(field, rank, 1, rng);
    let s = a.transpose().mul(&LaurentMatrix::diagonal(field, &monos)).mul(&a);
    let gram = b.transpose().mul(&dm).mul(&b);
    let action = b_inv.mul(&dm_inv).mul(&s).mul(&b);
    Correspondence::new(AffineModel::Gm, AffineModel::Gm, gram, Some(action))
        .expect("construction is self-adjoint with unit determinants")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_runs_repeat() {
        let f = BaseField::Rationals;
        let a: Vec<_> = (0..5).map(|s| gm_correspondence(f, 2, &mut rng(s))).collect();
        let b: Vec<_> = (0..5).map(|s| gm_correspondence(f, 2, &mut rng(s))).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn generated_correspondences_validate() {
        for field in [BaseField::Rationals, BaseField::prime(5).unwrap(), BaseField::prime(7).unwrap()] {
            let mut r = rng(11);
            for rank in 1..=3 {
                for _ in 0..5 {
                    assert!(gm_correspondence(field, rank, &mut r).validate().is_valid());
                }
            }
            for _ in 0..5 {
                let m = metabolic(field, &mut r).to_space().unwrap();
                assert!(crate::quadform::is_metabolic(&m).unwrap());
            }
        }
    }
}
