//! Command-line front end for the gwcorr engine. Every subcommand reads
//! JSON (or plain arguments), prints one JSON document, and maps the
//! outcome to an exit code: 0 success, 1 failed check, 2 input error.

pub mod json;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use gwcorr::cancel::{
    beta_calibrate, left_inverse_check, permutation_fiber_check, rho_n, CheckReport, RhoOptions,
};
use gwcorr::corr::{boxtimes_gm, compose, dot_expand, AffineModel};
use gwcorr::exactalg::{BaseField, LaurentPoly};
use gwcorr::quadform::{gw_equal, gw_invariants, is_metabolic, witt_table, GwClass};
use gwcorr::residue::{residue_form, FunctionalMode};
use gwcorr::verify::{run_all, VerifyConfig};
use serde_json::{json, Value};

use json::{JsonCorr, JsonField, JsonForm};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] gwcorr::Error),
}

impl CliError {
    /// Engine errors caused by the caller's data count as input errors;
    /// a broken internal invariant counts as a failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Engine(gwcorr::Error::Internal(_) | gwcorr::Error::Calibration(_)) => 1,
            CliError::Engine(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[default]
    Coefficient,
    JuniorTrace,
}

impl From<Mode> for FunctionalMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Coefficient => FunctionalMode::Coefficient,
            Mode::JuniorTrace => FunctionalMode::JuniorTrace,
        }
    }
}

/// `q` or `fp:<p>`.
pub fn parse_field(s: &str) -> Result<BaseField, String> {
    match s.to_ascii_lowercase().as_str() {
        "q" => Ok(BaseField::Rationals),
        other => {
            let p = other
                .strip_prefix("fp:")
                .ok_or_else(|| format!("expected q or fp:<p>, got {s:?}"))?;
            let p: u64 = p.parse().map_err(|_| format!("not a prime: {p:?}"))?;
            BaseField::prime(p).map_err(|e| e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gwcorr", version, about = "Exact Grothendieck-Witt correspondence calculus")]
pub struct Cli {
    /// Base field for inputs that do not carry one: q or fp:<p>.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: BaseField,
    /// Residue functional.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Coefficient)]
    pub mode: Mode,
    /// Also write the JSON result to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, discriminant, signature and Hasse symbols of a form.
    Invariants { form: PathBuf },
    /// Equality of two forms in the Grothendieck-Witt group.
    EqualGw { a: PathBuf, b: PathBuf },
    /// Equality of two forms in the Witt group.
    EqualW { a: PathBuf, b: PathBuf },
    /// Orthogonal diagonalization with its change of basis.
    Diagonalize { form: PathBuf },
    /// Residue form of c t^val (c_0 + c_1 t + ...), coefficients ascending.
    ResidueForm {
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        val: i64,
        #[arg(required = true, allow_negative_numbers = true)]
        coeffs: Vec<String>,
    },
    /// Composite B o A of two correspondences.
    Compose { b: PathBuf, a: PathBuf },
    /// Phi x id on Gm for a form or a pt -> pt correspondence Phi.
    Boxtimes { phi: PathBuf },
    /// rho_n of the four-term expansion of a Gm -> Gm correspondence.
    Rho {
        #[arg(long)]
        n: u32,
        /// Multiply by beta_n so that rho(Phi x id) = Phi.
        #[arg(long)]
        calibrated: bool,
        corr: PathBuf,
    },
    /// rho_n(Phi x id) = beta_n Phi for a form or pt -> pt correspondence.
    LeftInverseCheck {
        #[arg(long, default_value_t = 2)]
        n: u32,
        phi: PathBuf,
    },
    /// Residue form of (t - x)(t - y) against <x - y, y - x>.
    PermutationCheck {
        #[arg(allow_negative_numbers = true)]
        x: String,
        #[arg(allow_negative_numbers = true)]
        y: String,
    },
    /// Addition table of the Witt group of F_p.
    WittTable { p: u64 },
    /// Run the full verification suite.
    Verify {
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
    },
}

/// JSON document plus exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub value: Value,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { code: 0, value }
    }

    fn check(passed: bool, value: Value) -> Self {
        Outcome { code: if passed { 0 } else { 1 }, value }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_form(path: &Path) -> Result<gwcorr::quadform::QuadSpace, CliError> {
    json::from_str::<JsonForm>(&read(path)?, &path.display().to_string())?.to_space()
}

fn load_corr(path: &Path, field: BaseField) -> Result<gwcorr::corr::Correspondence, CliError> {
    json::from_str::<JsonCorr>(&read(path)?, &path.display().to_string())?.to_corr(field)
}

fn load_phi(path: &Path, field: BaseField) -> Result<gwcorr::corr::Correspondence, CliError> {
    let phi = json::corr_or_form(&read(path)?, &path.display().to_string(), field)?;
    if phi.source() != AffineModel::Pt || phi.target() != AffineModel::Pt {
        return Err(CliError::Input(format!("{}: expected a pt -> pt correspondence", path.display())));
    }
    Ok(phi)
}

fn report(r: &CheckReport) -> Value {
    json!({
        "name": r.name,
        "passed": r.passed,
        "detail": r.detail,
        "lhs": r.lhs.as_ref().map(json::invariants),
        "rhs": r.rhs.as_ref().map(json::invariants),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let field = cli.field;
    let mode: FunctionalMode = cli.mode.into();
    let opts = RhoOptions { mode, ..RhoOptions::default() };
    match &cli.command {
        Command::Invariants { form } => {
            let q = load_form(form)?;
            let mut v = json::invariants(&gw_invariants(&q)?);
            v["witt_zero"] = json!(is_metabolic(&q)?);
            Ok(Outcome::ok(v))
        }
        Command::EqualGw { a, b } => {
            let (a, b) = (load_form(a)?, load_form(b)?);
            Ok(Outcome::ok(json!({ "equal": gw_equal(&GwClass::of(a), &GwClass::of(b))? })))
        }
        Command::EqualW { a, b } => {
            let (a, b) = (load_form(a)?, load_form(b)?);
            let diff = a.direct_sum(&b.scale(&-b.field().one())?)?;
            Ok(Outcome::ok(json!({ "equal": is_metabolic(&diff)? })))
        }
        Command::Diagonalize { form } => {
            let q = load_form(form)?;
            let (d, p) = q.diagonalize_with_transform();
            Ok(Outcome::ok(json!({
                "field": JsonField::of(q.field()),
                "diagonal": d.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "transform": json::strings(&p),
            })))
        }
        Command::ResidueForm { val, coeffs } => {
            let cs = coeffs
                .iter()
                .enumerate()
                .map(|(k, s)| field.parse(s).map_err(|e| CliError::Input(format!("coeffs[{k}]: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let n = LaurentPoly::from_coeffs(field, *val, cs);
            let form = residue_form(&n, mode)?;
            let q = form.space()?;
            Ok(Outcome::ok(json!({
                "mode": mode.to_string(),
                "form": JsonForm::of(&q),
                "action": json::strings(&form.action),
                "invariants": json::invariants(&gw_invariants(&q)?),
            })))
        }
        Command::Compose { b, a } => {
            let c = compose(&load_corr(b, field)?, &load_corr(a, field)?)?;
            Ok(Outcome::ok(serde_json::to_value(JsonCorr::of(&c)).expect("serializable")))
        }
        Command::Boxtimes { phi } => {
            let c = boxtimes_gm(&load_phi(phi, field)?)?;
            Ok(Outcome::ok(serde_json::to_value(JsonCorr::of(&c)).expect("serializable")))
        }
        Command::Rho { n, calibrated, corr } => {
            let c = load_corr(corr, field)?;
            let mut rho = rho_n(c.field(), &dot_expand(&c)?, *n, &opts)?;
            if *calibrated {
                rho = rho.scale(&beta_calibrate(c.field(), *n, &opts)?)?;
            }
            let mut v = json::class(&rho)?;
            v["n"] = json!(n);
            v["calibrated"] = json!(calibrated);
            Ok(Outcome::ok(v))
        }
        Command::LeftInverseCheck { n, phi } => {
            let r = left_inverse_check(&load_phi(phi, field)?, *n, &opts)?;
            Ok(Outcome::check(r.passed, report(&r)))
        }
        Command::PermutationCheck { x, y } => {
            let x = field.parse(x).map_err(|e| CliError::Input(format!("x: {e}")))?;
            let y = field.parse(y).map_err(|e| CliError::Input(format!("y: {e}")))?;
            let r = permutation_fiber_check(&x, &y, mode)?;
            Ok(Outcome::check(r.passed, report(&r)))
        }
        Command::WittTable { p } => {
            let t = witt_table(*p)?;
            let reps: Vec<Value> = t
                .labels
                .iter()
                .zip(&t.elements)
                .map(|(l, q)| json!({ "label": l, "gram": JsonForm::of(q).gram }))
                .collect();
            Ok(Outcome::ok(json!({
                "p": t.p,
                "group": t.group.to_string(),
                "elements": reps,
                "table": t.table,
            })))
        }
        Command::Verify { seed } => {
            let cfg = VerifyConfig { seed: *seed, mode };
            let outcomes = run_all(&cfg);
            let passed = outcomes.iter().all(|o| o.passed);
            for o in &outcomes {
                eprintln!("{o}");
            }
            let checks: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail }))
                .collect();
            Ok(Outcome::check(
                passed,
                json!({ "seed": seed, "mode": mode.to_string(), "passed": passed, "checks": checks }),
            ))
        }
    }
}
