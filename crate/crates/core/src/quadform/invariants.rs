use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::space::QuadSpace;
use crate::error::{Error, Result};
use crate::exactalg::hilbert::{prime_factors, square_free_class};
use crate::exactalg::{hilbert_symbol, BaseField, Place, Scalar};

/// Canonical representative of the square class of a nonzero scalar:
/// a signed square-free integer over the rationals, `1` or the least
/// non-residue over `F_p`.
pub fn square_class(s: &Scalar) -> Result<Scalar> {
    if s.is_zero() {
        return Err(Error::Degenerate("zero has no square class".into()));
    }
    match s {
        Scalar::Rational(r) => Ok(Scalar::Rational(BigRational::from_integer(square_free_class(r)?))),
        Scalar::Mod { .. } => {
            let f = s.field();
            Ok(if s.is_square() {
                f.one()
            } else {
                f.least_non_residue().expect("odd prime field has non-residues")
            })
        }
    }
}

/// Isometry invariants of a quadratic space.
///
/// Over `F_p` only `rank` and `disc` are populated; they are complete. Over
/// the rationals the signature and Hasse symbols complete the picture.
/// Places absent from `hasse` carry the symbol `+1`.
#[derive(Clone, Debug)]
pub struct GwInvariants {
    pub field: BaseField,
    pub rank: usize,
    pub disc: Scalar,
    pub signature: Option<i64>,
    pub hasse: BTreeMap<Place, i32>,
}

impl GwInvariants {
    pub fn hasse_at(&self, place: Place) -> i32 {
        self.hasse.get(&place).copied().unwrap_or(1)
    }
}

impl PartialEq for GwInvariants {
    fn eq(&self, other: &Self) -> bool {
        if (self.field, self.rank, &self.disc, self.signature)
            != (other.field, other.rank, &other.disc, other.signature)
        {
            return false;
        }
        let places: BTreeSet<Place> = self.hasse.keys().chain(other.hasse.keys()).copied().collect();
        places.into_iter().all(|p| self.hasse_at(p) == other.hasse_at(p))
    }
}

impl Eq for GwInvariants {}

impl fmt::Display for GwInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} disc {}", self.rank, self.disc)?;
        if let Some(s) = self.signature {
            write!(f, " signature {s}")?;
        }
        let bad: Vec<String> = self
            .hasse
            .iter()
            .filter(|(_, &v)| v == -1)
            .map(|(p, _)| p.to_string())
            .collect();
        if self.signature.is_some() {
            write!(f, " hasse(-1 at) {{{}}}", bad.join(","))?;
        }
        Ok(())
    }
}

/// Places where a rational form can have a nontrivial Hasse symbol: the
/// real place, 2, and primes dividing the determinant or an entry
/// denominator. Every other prime sees a unimodular lattice.
fn relevant_places(q: &QuadSpace, det: &BigRational) -> Result<Vec<Place>> {
    let mut denoms = BigInt::one();
    for e in q.gram().entries() {
        if let Some(r) = e.as_rational() {
            denoms = denoms.lcm(r.denom());
        }
    }
    let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
    for n in [det.numer(), det.denom(), &denoms] {
        primes.extend(prime_factors(n)?);
    }
    Ok(std::iter::once(Place::Real).chain(primes.into_iter().map(Place::Prime)).collect())
}

pub fn gw_invariants(q: &QuadSpace) -> Result<GwInvariants> {
    let field = q.field();
    let r = q.rank();
    let det = q.det();
    let sign_twist = if (r * r.saturating_sub(1) / 2) % 2 == 1 { -field.one() } else { field.one() };
    let disc = square_class(&(&sign_twist * &det))?;
    if field != BaseField::Rationals {
        return Ok(GwInvariants { field, rank: r, disc, signature: None, hasse: BTreeMap::new() });
    }
    let diag = q.diagonalize();
    let signature = diag.iter().map(|d| i64::from(d.sign().expect("rational"))).sum();
    let ds: Vec<&BigRational> = diag.iter().map(|d| d.as_rational().expect("rational")).collect();
    let mut hasse = BTreeMap::new();
    for place in relevant_places(q, det.as_rational().expect("rational"))? {
        let mut h = 1;
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                h *= hilbert_symbol(ds[i], ds[j], place)?;
            }
        }
        hasse.insert(place, h);
    }
    Ok(GwInvariants { field, rank: r, disc, signature: Some(signature), hasse })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn worked_examples() {
        let inv = gw_invariants(&QuadSpace::diag_ints(q(), &[1, -1]).unwrap()).unwrap();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.signature, Some(0));
        assert_eq!(inv.disc, q().one());
        assert!(inv.hasse.values().all(|&h| h == 1));

        let inv = gw_invariants(&QuadSpace::diag_ints(q(), &[1, 1, -2]).unwrap()).unwrap();
        assert_eq!(inv.signature, Some(1));

        let f3 = BaseField::prime(3).unwrap();
        let inv = gw_invariants(&QuadSpace::diag_ints(f3, &[1, 1]).unwrap()).unwrap();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.disc, f3.int(2));
    }

    #[test]
    fn hasse_detects_quaternion_norm_form() {
        // <1,1,1,1> vs <1,1,3,3>: same rank, disc, signature; Hasse differs at 3 and 2.
        let a = gw_invariants(&QuadSpace::diag_ints(q(), &[1, 1, 1, 1]).unwrap()).unwrap();
        let b = gw_invariants(&QuadSpace::diag_ints(q(), &[1, 1, 3, 3]).unwrap()).unwrap();
        assert_eq!((a.rank, &a.disc, a.signature), (b.rank, &b.disc, b.signature));
        assert_ne!(a, b);
    }

    #[test]
    fn square_class_representatives() {
        assert_eq!(square_class(&q().frac(-18, 4).unwrap()).unwrap(), q().int(-2));
        let f7 = BaseField::prime(7).unwrap();
        assert_eq!(square_class(&f7.int(5)).unwrap(), f7.int(3));
        assert_eq!(square_class(&f7.int(2)).unwrap(), f7.int(1));
        assert!(square_class(&q().zero()).is_err());
    }
}
