//! JSON encodings of fields, forms, Laurent polynomials and correspondences.
//! Scalars are always strings so that nothing passes through a float.

use gwcorr::corr::{AffineModel, Correspondence};
use gwcorr::exactalg::{BaseField, FieldMatrix, LaurentMatrix, LaurentPoly, Scalar};
use gwcorr::quadform::{GwClass, GwInvariants, QuadSpace};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum JsonField {
    Q,
    Fp { p: u64 },
}

impl JsonField {
    pub fn to_field(self) -> Result<BaseField, CliError> {
        match self {
            JsonField::Q => Ok(BaseField::Rationals),
            JsonField::Fp { p } => BaseField::prime(p).map_err(|e| CliError::Input(format!("field.p: {e}"))),
        }
    }

    pub fn of(field: BaseField) -> Self {
        match field {
            BaseField::Rationals => JsonField::Q,
            BaseField::Prime(p) => JsonField::Fp { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonForm {
    pub field: JsonField,
    pub gram: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonLaurent {
    pub val: i64,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JsonModel {
    Pt,
    Gm,
}

impl From<JsonModel> for AffineModel {
    fn from(m: JsonModel) -> Self {
        match m {
            JsonModel::Pt => AffineModel::Pt,
            JsonModel::Gm => AffineModel::Gm,
        }
    }
}

impl From<AffineModel> for JsonModel {
    fn from(m: AffineModel) -> Self {
        match m {
            AffineModel::Pt => JsonModel::Pt,
            AffineModel::Gm => JsonModel::Gm,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonCorr {
    pub source: JsonModel,
    pub target: JsonModel,
    pub rank: usize,
    /// Falls back to the `--field` flag when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<JsonField>,
    pub gram: Vec<Vec<JsonLaurent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<JsonLaurent>>>,
}

/// Deserialize with errors addressed by their JSON path.
pub fn from_str<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("{origin}: at {path}: {}", e.inner()))
    })
}

fn scalar(field: BaseField, s: &str, path: &str) -> Result<Scalar, CliError> {
    field.parse(s).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn square<T>(rows: &[Vec<T>], n: usize, path: &str) -> Result<(), CliError> {
    if rows.len() != n {
        return Err(CliError::Input(format!("{path}: expected {n} rows, found {}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Input(format!("{path}[{i}]: expected {n} entries, found {}", row.len())));
        }
    }
    Ok(())
}

impl JsonForm {
    pub fn to_space(&self) -> Result<QuadSpace, CliError> {
        let field = self.field.to_field()?;
        let n = self.gram.len();
        square(&self.gram, n, "gram")?;
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in self.gram.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                data.push(scalar(field, s, &format!("gram[{i}][{j}]"))?);
            }
        }
        let gram = FieldMatrix::new(field, n, n, data).map_err(|e| CliError::Input(format!("gram: {e}")))?;
        QuadSpace::new(gram).map_err(|e| CliError::Input(format!("gram: {e}")))
    }

    pub fn of(q: &QuadSpace) -> Self {
        JsonForm { field: JsonField::of(q.field()), gram: strings(q.gram()) }
    }
}

pub fn strings(m: &FieldMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

impl JsonLaurent {
    pub fn to_laurent(&self, field: BaseField, path: &str) -> Result<LaurentPoly, CliError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, s)| scalar(field, s, &format!("{path}.coeffs[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::from_coeffs(field, self.val, coeffs))
    }

    /// Canonical encoding: `val` is the lowest degree present and the
    /// coefficient list has no trailing zeros. Zero is `{"val": 0, "coeffs": []}`.
    pub fn of(l: &LaurentPoly) -> Self {
        match (l.bottom_degree(), l.top_degree()) {
            (Some(lo), Some(hi)) => JsonLaurent {
                val: lo,
                coeffs: (lo..=hi).map(|d| l.coeff(d).to_string()).collect(),
            },
            _ => JsonLaurent { val: 0, coeffs: Vec::new() },
        }
    }
}

fn laurent_matrix(
    field: BaseField,
    rows: &[Vec<JsonLaurent>],
    n: usize,
    name: &str,
) -> Result<LaurentMatrix, CliError> {
    square(rows, n, name)?;
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            data.push(e.to_laurent(field, &format!("{name}[{i}][{j}]"))?);
        }
    }
    LaurentMatrix::new(field, n, n, data).map_err(|e| CliError::Input(format!("{name}: {e}")))
}

fn laurent_rows(m: &LaurentMatrix) -> Vec<Vec<JsonLaurent>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| JsonLaurent::of(m.get(i, j))).collect()).collect()
}

impl JsonCorr {
    pub fn to_corr(&self, default_field: BaseField) -> Result<Correspondence, CliError> {
        let field = match self.field {
            Some(f) => f.to_field()?,
            None => default_field,
        };
        let gram = laurent_matrix(field, &self.gram, self.rank, "gram")?;
        let action = match &self.action {
            Some(a) => Some(laurent_matrix(field, a, self.rank, "action")?),
            None => None,
        };
        Correspondence::new(self.source.into(), self.target.into(), gram, action)
            .map_err(|e| CliError::Input(format!("correspondence: {e}")))
    }

    pub fn of(c: &Correspondence) -> Self {
        JsonCorr {
            source: c.source().into(),
            target: c.target().into(),
            rank: c.rank(),
            field: Some(JsonField::of(c.field())),
            gram: laurent_rows(c.gram()),
            action: c.action().map(laurent_rows),
        }
    }
}

/// Either encoding, told apart by the presence of `source`.
pub fn corr_or_form(text: &str, origin: &str, default_field: BaseField) -> Result<Correspondence, CliError> {
    let v: Value = from_str(text, origin)?;
    if v.get("source").is_some() {
        from_str::<JsonCorr>(text, origin)?.to_corr(default_field)
    } else {
        Ok(Correspondence::from_space(&from_str::<JsonForm>(text, origin)?.to_space()?))
    }
}

pub fn invariants(inv: &GwInvariants) -> Value {
    let mut out = json!({
        "field": JsonField::of(inv.field),
        "rank": inv.rank,
        "disc": inv.disc.to_string(),
    });
    if let Some(s) = inv.signature {
        out["signature"] = json!(s);
        let hasse: serde_json::Map<String, Value> =
            inv.hasse.iter().map(|(p, v)| (p.to_string(), json!(v))).collect();
        out["hasse"] = Value::Object(hasse);
    }
    out
}

pub fn class(c: &GwClass) -> Result<Value, CliError> {
    let mut out = json!({
        "field": JsonField::of(c.field()),
        "rank": c.rank(),
        "pos": JsonForm::of(&c.pos).gram,
        "neg": JsonForm::of(&c.neg).gram,
    });
    if let Some(a) = c.as_rank_one()? {
        out["rank_one"] = json!(a.to_string());
    }
    Ok(out)
}
