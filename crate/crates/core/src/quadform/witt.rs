use std::fmt;

use super::class::is_metabolic;
use super::space::QuadSpace;
use crate::error::{Error, Result};
use crate::exactalg::BaseField;

/// Isomorphism type of `W(F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittGroup {
    Cyclic4,
    Klein4,
}

impl fmt::Display for WittGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittGroup::Cyclic4 => write!(f, "Z/4"),
            WittGroup::Klein4 => write!(f, "Z/2 x Z/2"),
        }
    }
}

/// Addition table of the Witt group of a prime field.
#[derive(Clone, Debug)]
pub struct WittTable {
    pub p: u64,
    /// Representatives: `0`, `<1>`, `<u>`, `<1, -u>` with `u` the least non-residue.
    pub elements: Vec<QuadSpace>,
    pub labels: Vec<String>,
    /// `table[i][j]` is the index of `elements[i] + elements[j]`.
    pub table: Vec<Vec<usize>>,
    pub group: WittGroup,
}

fn classify(q: &QuadSpace, reps: &[QuadSpace]) -> Result<usize> {
    let minus_one = -q.field().one();
    for (i, r) in reps.iter().enumerate() {
        if is_metabolic(&q.direct_sum(&r.scale(&minus_one)?)?)? {
            return Ok(i);
        }
    }
    Err(Error::Internal(format!("form {q} matches no Witt class representative")))
}

pub fn witt_table(p: u64) -> Result<WittTable> {
    let field = BaseField::prime(p)?;
    let u = field.least_non_residue().expect("odd prime field has non-residues");
    let elements = vec![
        QuadSpace::zero(field),
        QuadSpace::rank_one(field.one())?,
        QuadSpace::rank_one(u.clone())?,
        QuadSpace::diag(field, &[field.one(), -&u])?,
    ];
    let labels = vec!["0".to_string(), "<1>".to_string(), format!("<{u}>"), format!("<1,{}>", -&u)];
    let mut table = vec![vec![0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            table[i][j] = classify(&elements[i].direct_sum(&elements[j])?, &elements)?;
        }
    }
    let order = |x: usize| {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = table[acc][x];
            k += 1;
        }
        k
    };
    let group = if (1..4).any(|x| order(x) == 4) { WittGroup::Cyclic4 } else { WittGroup::Klein4 };
    Ok(WittTable { p, elements, labels, table, group })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(witt_table(3).unwrap().group, WittGroup::Cyclic4);
        assert_eq!(witt_table(5).unwrap().group, WittGroup::Klein4);
        assert_eq!(witt_table(7).unwrap().group, WittGroup::Cyclic4);
        assert!(witt_table(2).is_err());
    }

    #[test]
    fn table_is_a_group_table() {
        let t = witt_table(11).unwrap();
        for i in 0..4 {
            assert_eq!(t.table[0][i], i);
            let mut row = t.table[i].clone();
            row.sort();
            assert_eq!(row, vec![0, 1, 2, 3]);
            for j in 0..4 {
                assert_eq!(t.table[i][j], t.table[j][i]);
            }
        }
    }
}
