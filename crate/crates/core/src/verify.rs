//! The verification suite: ten class-level identities checked exactly.
//!
//! Each check returns a [`CheckOutcome`]; errors raised inside a check are
//! reported as failures with the error text. [`run_all`] fans the checks
//! out over [`crate::par`] and returns them ordered by id.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::cancel::{
    det_norm, left_inverse_check, make_bitriple_with, permutation_fiber_check, rho_n, rho_triple,
    rho_triple_traced, FSpec, FTriple, Padding, RhoOptions,
};
use crate::corr::{boxtimes_gm, compose, dot_expand, projection, stability_bound, unit_section, Correspondence, FormalSum};
use crate::error::{Error, Result};
use crate::exactalg::{BaseField, FieldMatrix, LaurentMatrix, LaurentPoly, Ring, Scalar};
use crate::par;
use crate::quadform::{gw_equal, witt_table, GwClass, QuadSpace, WittGroup};
use crate::random::{self, Rng64};
use crate::residue::FunctionalMode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub mode: FunctionalMode,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 20240521, mode: FunctionalMode::Coefficient }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2?}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.detail
        )
    }
}

/// The fields every sweep runs over.
pub fn sweep_fields() -> Vec<BaseField> {
    vec![BaseField::Rationals, BaseField::Prime(5), BaseField::Prime(7)]
}

pub const CHECKS: [(u8, &str); 10] = [
    (1, "left-inverse"),
    (2, "metabolic-preservation"),
    (3, "permutation-fiber"),
    (4, "norm-identities"),
    (5, "cofactor-radical"),
    (6, "unit-section-vanishing"),
    (7, "witt-tables"),
    (8, "gw-oracle-equivalence"),
    (9, "functional-discrimination"),
    (10, "triple-independence"),
];

fn outcome(id: u8, f: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    let name = CHECKS.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("unknown");
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckOutcome { id, name, passed, detail, elapsed: start.elapsed() }
}

/// Per-field seed so that fields draw independent streams.
fn field_rng(cfg: &VerifyConfig, field: BaseField, salt: u64) -> Rng64 {
    let tag = field.modulus().unwrap_or(0);
    random::rng(cfg.seed ^ (tag << 32) ^ (salt << 48))
}

fn opts(cfg: &VerifyConfig) -> RhoOptions {
    RhoOptions { mode: cfg.mode, padding: Padding::Binomial }
}

fn failures(items: Vec<(String, bool)>) -> (bool, usize, Vec<String>) {
    let total = items.len();
    let bad: Vec<String> = items.into_iter().filter(|(_, ok)| !ok).map(|(s, _)| s).collect();
    (bad.is_empty(), total, bad)
}

fn summary(items: Vec<(String, bool)>) -> (bool, String) {
    let (ok, total, bad) = failures(items);
    if ok {
        (true, format!("{total}/{total} cases"))
    } else {
        (false, format!("{}/{total} failed: {}", bad.len(), bad.join("; ")))
    }
}

fn phi_catalogue(field: BaseField) -> Result<Vec<(String, QuadSpace)>> {
    Ok(vec![
        ("<1>".into(), QuadSpace::diag_ints(field, &[1])?),
        ("<-1>".into(), QuadSpace::diag_ints(field, &[-1])?),
        ("<2>".into(), QuadSpace::diag_ints(field, &[2])?),
        ("<1,3>".into(), QuadSpace::diag_ints(field, &[1, 3])?),
        ("H".into(), QuadSpace::hyperbolic(field)),
    ])
}

pub fn left_inverse(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(1, || {
        let mut cases = Vec::new();
        for field in sweep_fields() {
            for (label, phi) in phi_catalogue(field)? {
                for n in 2..=4 {
                    cases.push((field, label.clone(), phi.clone(), n));
                }
            }
        }
        let o = opts(cfg);
        let results = par::try_map(&cases, |(field, label, phi, n)| {
            let r = left_inverse_check(&Correspondence::from_space(phi), *n, &o)?;
            Ok((format!("{field} {label} n={n}"), r.passed))
        })?;
        Ok(summary(results))
    })
}

/// Witt class of `rho_n` on random metabolic inputs.
pub fn metabolic_preservation(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(2, || metabolic_cases(cfg).map(summary))
}

fn metabolic_cases(cfg: &VerifyConfig) -> Result<Vec<(String, bool)>> {
    let mut cases = Vec::new();
    for field in sweep_fields() {
        let mut rng = field_rng(cfg, field, 2);
        for i in 0..20 {
            let c = random::metabolic(field, &mut rng);
            for n in 2..=3 {
                cases.push((field, i, c.clone(), n));
            }
        }
    }
    let o = opts(cfg);
    par::try_map(&cases, |(field, i, c, n)| {
        let x = rho_n(*field, &dot_expand(&boxtimes_gm(c)?)?, *n, &o)?;
        Ok((format!("{field} #{i} n={n}"), x.is_witt_zero()?))
    })
}

pub fn permutation_fiber(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(3, || permutation_cases(cfg, cfg.mode).map(summary))
}

fn permutation_cases(cfg: &VerifyConfig, mode: FunctionalMode) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for field in sweep_fields() {
        let mut rng = field_rng(cfg, field, 3);
        for _ in 0..20 {
            let (x, y) = random::distinct_units(field, &mut rng);
            let r = permutation_fiber_check(&x, &y, mode)?;
            out.push((r.name, r.passed));
        }
    }
    Ok(out)
}

/// `N_P(t^n - 1) = (t^n - 1)^r`, and above the stability bound the minus
/// norm is monic of degree `n r + M_P` with nonzero constant term.
pub fn norm_identities(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(4, || {
        let mut items = Vec::new();
        for field in sweep_fields() {
            let mut rng = field_rng(cfg, field, 4);
            for rank in 1..=3usize {
                for i in 0..4 {
                    let c = random::gm_correspondence(field, rank, &mut rng);
                    let b = stability_bound(&c)?;
                    for n in 1..=3u32 {
                        let tn = LaurentPoly::monomial(field.one(), n as i64).minus(&LaurentPoly::one(field));
                        let expected = (0..rank).fold(LaurentPoly::one(field), |acc, _| acc.times(&tn));
                        items.push((format!("{field} r={rank} #{i} plus n={n}"), det_norm(&c, FSpec::Plus(n))? == expected));
                    }
                    for n in [b.n_p + 1, b.n_p + 2] {
                        let n = n.max(1) as u32;
                        let norm = det_norm(&c, FSpec::Minus(n))?.normalize()?;
                        let ok = norm.c.is_one()
                            && !norm.n_tilde.coeff(0).is_zero()
                            && norm.n_tilde.degree() == Some((n as i64 * rank as i64 + b.m_p) as usize);
                        items.push((format!("{field} r={rank} #{i} minus n={n}"), ok));
                    }
                }
            }
        }
        Ok(summary(items))
    })
}

/// Adjugate identity on random correspondences, and the radical and
/// dimension assertions of every `rho_triple` run.
pub fn cofactor_radical(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(5, || {
        let mut cases = Vec::new();
        for field in sweep_fields() {
            let mut rng = field_rng(cfg, field, 5);
            for rank in 1..=2usize {
                for i in 0..3 {
                    cases.push((field, rank, i, random::gm_correspondence(field, rank, &mut rng)));
                }
            }
            cases.push((field, 1, 99, random::boxtimes_input(field, 2, &mut rng)?));
        }
        let mode = cfg.mode;
        let items = par::try_map(&cases, |(field, rank, i, c)| {
            let n = (stability_bound(c)?.n_p + 1).max(1) as u32;
            let mut ok = true;
            for f in [FSpec::Plus(n), FSpec::Minus(n)] {
                let t = FTriple::canonical(c, f)?;
                let r = t.mf.rows();
                ok &= t.mf.mul(&t.g) == LaurentMatrix::scalar_matrix(r, t.norm.clone());
                let bt = make_bitriple_with(c, n, None, &Padding::Binomial)?;
                for tr in [&bt.plus, &bt.minus] {
                    let trace = rho_triple_traced(c, tr, mode)?;
                    ok &= trace.module_dim == r * bt.m && trace.radical_dim + trace.quotient_dim == trace.module_dim;
                }
            }
            Ok((format!("{field} r={rank} #{i}"), ok))
        })?;
        Ok(summary(items))
    })
}

/// `unit_section o Q o projection` for `Q = Phi` contributes zero.
pub fn unit_section_term(phi: &QuadSpace) -> Result<Correspondence> {
    let field = phi.field();
    let q = compose(&Correspondence::from_space(phi), &projection(field))?;
    compose(&unit_section(field), &q)
}

pub fn unit_section_vanishing(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(6, || {
        let o = opts(cfg);
        let mut items = Vec::new();
        for field in sweep_fields() {
            for a in [1, 2] {
                let term = unit_section_term(&QuadSpace::diag_ints(field, &[a])?)?;
                for n in 2..=3 {
                    let x = rho_n(field, &FormalSum::single(term.clone()), n, &o)?;
                    items.push((format!("{field} <{a}> n={n}"), gw_equal(&x, &GwClass::zero(field))?));
                }
            }
        }
        Ok(summary(items))
    })
}

pub fn witt_tables(_cfg: &VerifyConfig) -> CheckOutcome {
    outcome(7, || {
        let expected = [(3, WittGroup::Cyclic4), (5, WittGroup::Klein4), (7, WittGroup::Cyclic4)];
        let mut items = Vec::new();
        for (p, g) in expected {
            let t = witt_table(p)?;
            items.push((format!("W(F_{p}) = {}", t.group), t.group == g));
        }
        Ok(summary(items))
    })
}

/// Congruence orbits of all nondegenerate symmetric `r x r` matrices over
/// `F_p`, by breadth-first search under elementary generators of `GL_r`.
pub fn congruence_orbits(field: BaseField, r: usize) -> Result<Vec<Vec<FieldMatrix>>> {
    let elements = field
        .elements()
        .ok_or_else(|| Error::Precondition("orbit enumeration needs a prime field".into()))?;
    let gens = gl_generators(field, r);
    let sym_entries = r * (r + 1) / 2;
    let total = elements.len().pow(sym_entries as u32);
    let mut seen: HashMap<FieldMatrix, usize> = HashMap::new();
    let mut orbits: Vec<Vec<FieldMatrix>> = Vec::new();
    for code in 0..total {
        let g = symmetric_from_code(field, r, code, &elements);
        if seen.contains_key(&g) || g.det_field()?.is_zero() {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![g.clone()];
        seen.insert(g.clone(), id);
        let mut queue = VecDeque::from([g]);
        while let Some(x) = queue.pop_front() {
            for p in &gens {
                let y = p.transpose().mul(&x).mul(p);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), id);
                    orbit.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

fn symmetric_from_code(field: BaseField, r: usize, mut code: usize, elements: &[Scalar]) -> FieldMatrix {
    let q = elements.len();
    let mut g = FieldMatrix::zeros(field, r, r);
    for i in 0..r {
        for j in i..r {
            let v = elements[code % q].clone();
            code /= q;
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    g
}

fn gl_generators(field: BaseField, r: usize) -> Vec<FieldMatrix> {
    let mut gens = Vec::new();
    let u = field.least_non_residue().expect("prime field");
    for i in 0..r {
        let mut d = FieldMatrix::identity(field, r);
        d.set(i, i, u.clone());
        gens.push(d);
        for j in 0..r {
            if i != j {
                let mut e = FieldMatrix::identity(field, r);
                e.set(i, j, field.one());
                gens.push(e);
            }
        }
    }
    gens
}

/// `gw_equal` agrees with congruence-orbit membership over `F_3` and
/// `F_5` for ranks `1..=3`: each matrix is equal to its own orbit's
/// representative and to no other.
pub fn gw_oracle_equivalence(_cfg: &VerifyConfig) -> CheckOutcome {
    outcome(8, || {
        let mut cases = Vec::new();
        for p in [3, 5] {
            for r in 1..=3 {
                cases.push((BaseField::prime(p)?, r));
            }
        }
        let items = par::try_map(&cases, |&(field, r)| {
            let orbits = congruence_orbits(field, r)?;
            let reps: Vec<GwClass> = orbits
                .iter()
                .map(|o| QuadSpace::new(o[0].clone()).map(GwClass::of))
                .collect::<Result<_>>()?;
            let mut ok = true;
            for (k, orbit) in orbits.iter().enumerate() {
                for g in orbit {
                    let x = GwClass::of(QuadSpace::new(g.clone())?);
                    for (j, rep) in reps.iter().enumerate() {
                        ok &= gw_equal(&x, rep)? == (j == k);
                    }
                }
            }
            Ok((format!("{field} rank {r}: {} orbits", orbits.len()), ok))
        })?;
        let (passed, detail) = summary(items.clone());
        let orbits: Vec<String> = items.into_iter().map(|(s, _)| s).collect();
        Ok((passed, format!("{detail} ({})", orbits.join(", "))))
    })
}

/// Coefficient mode passes the permutation and metabolic checks, the
/// junior-trace functional fails the permutation fiber at `(1, -1)`.
pub fn functional_discrimination(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(9, || {
        let coeff = VerifyConfig { mode: FunctionalMode::Coefficient, ..cfg.clone() };
        let (perm, _, _) = failures(permutation_cases(&coeff, FunctionalMode::Coefficient)?);
        let (meta, _, _) = failures(metabolic_cases(&coeff)?);
        let q = BaseField::Rationals;
        let jt = permutation_fiber_check(&q.one(), &q.int(-1), FunctionalMode::JuniorTrace)?;
        let passed = perm && meta && !jt.passed;
        Ok((
            passed,
            format!(
                "coefficient: permutation {perm}, metabolic {meta}; junior-trace at (1,-1): {} ({})",
                if jt.passed { "passes" } else { "fails" },
                jt.detail
            ),
        ))
    })
}

/// Two paddings with the same end coefficients give equal `rho_triple`
/// classes.
pub fn triple_independence(cfg: &VerifyConfig) -> CheckOutcome {
    outcome(10, || {
        let mut cases = Vec::new();
        let mut rng = random::rng(cfg.seed ^ 10);
        let fields = sweep_fields();
        for i in 0..10 {
            let field = fields[i % fields.len()];
            let rank = rng.gen_range(1..=2);
            let c = random::gm_correspondence(field, rank, &mut rng);
            let extra = rng.gen_range(2..=3);
            let mid: Vec<Scalar> = (0..4).map(|_| random::unit(field, &mut rng)).collect();
            cases.push((i, c, extra, mid));
        }
        let mode = cfg.mode;
        let items = par::try_map(&cases, |(i, c, extra, mid)| {
            let n = (stability_bound(c)?.n_p + 1).max(1) as u32;
            let m = crate::cancel::canonical_degree(c, n)? + extra;
            let a = make_bitriple_with(c, n, Some(m), &Padding::Binomial)?;
            let b = make_bitriple_with(c, n, Some(m), &Padding::WithMiddle(mid.clone()))?;
            if a.plus.norm == b.plus.norm {
                return Err(Error::Internal("paddings coincide".into()));
            }
            let mut ok = true;
            for (x, y) in [(&a.plus, &b.plus), (&a.minus, &b.minus)] {
                let qa = GwClass::of(rho_triple(c, x, mode)?);
                let qb = GwClass::of(rho_triple(c, y, mode)?);
                ok &= gw_equal(&qa, &qb)?;
            }
            Ok((format!("#{i} {} n={n} m={m}", c.field()), ok))
        })?;
        Ok(summary(items))
    })
}

pub fn run_check(id: u8, cfg: &VerifyConfig) -> Option<CheckOutcome> {
    Some(match id {
        1 => left_inverse(cfg),
        2 => metabolic_preservation(cfg),
        3 => permutation_fiber(cfg),
        4 => norm_identities(cfg),
        5 => cofactor_radical(cfg),
        6 => unit_section_vanishing(cfg),
        7 => witt_tables(cfg),
        8 => gw_oracle_equivalence(cfg),
        9 => functional_discrimination(cfg),
        10 => triple_independence(cfg),
        _ => return None,
    })
}

/// All checks, ordered by id.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let ids: Vec<u8> = CHECKS.iter().map(|c| c.0).collect();
    par::map(&ids, |&id| run_check(id, cfg).expect("known id"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_counts() {
        let f3 = BaseField::prime(3).unwrap();
        assert_eq!(congruence_orbits(f3, 1).unwrap().len(), 2);
        let sizes: usize = congruence_orbits(f3, 2).unwrap().iter().map(Vec::len).sum();
        // Nondegenerate symmetric 2x2 over F_3: 27 - 9 singular.
        assert_eq!(sizes, 18);
    }

    #[test]
    fn cheap_checks_pass() {
        let cfg = VerifyConfig::default();
        for id in [3, 6, 7] {
            let o = run_check(id, &cfg).unwrap();
            assert!(o.passed, "{o}");
        }
    }
}
