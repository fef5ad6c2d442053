//! Matrix interchange format and canonical JSON output.
//!
//! A matrix file is a JSON object with keys `field` (a [`FieldSpec`]),
//! `n`, `d`, `coeffs` (a list of `d` integer `n x n` arrays, reduced into
//! the field on load) and optional `name` / `provenance` strings.
//! Extension-field entries use the base-`p` digit encoding described on
//! [`ExtField`](crate::scalars::ExtField); prime-field entries are written as
//! symmetric residues.

use std::any::Any;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::polymat::LinearMatrix;
use crate::scalars::{AnyField, ExtField, Field, FieldSpec, PrimeField, Rationals};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldSpec,
    pub n: usize,
    pub d: usize,
    pub coeffs: Vec<Vec<Vec<Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.coeffs.len() != file.d {
            return Err(Error::Parse(format!(
                "expected {} coefficient matrices, found {}",
                file.d,
                file.coeffs.len()
            )));
        }
        for (k, m) in file.coeffs.iter().enumerate() {
            if m.len() != file.n || m.iter().any(|row| row.len() != file.n) {
                return Err(Error::Parse(format!("coefficient matrix {k} is not {0}x{0}", file.n)));
            }
        }
        Ok(file)
    }

    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("matrix files serialize");
        let mut out = canonical_json(&value);
        out.push('\n');
        out
    }

    pub fn to_matrix(&self) -> Result<AnyLinearMatrix> {
        let ints = self
            .coeffs
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().map(parse_int).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(match AnyField::from_spec(&self.field)? {
            AnyField::Prime(f) => AnyLinearMatrix::Prime(build(&f, &ints)?),
            AnyField::Extension(f) => AnyLinearMatrix::Extension(build(&f, &ints)?),
            AnyField::Rational(f) => AnyLinearMatrix::Rational(build(&f, &ints)?),
        })
    }

    pub fn from_matrix<F: Field>(m: &LinearMatrix<F>) -> Result<Self> {
        let f = m.field();
        let coeffs = m
            .coeffs()
            .iter()
            .map(|c| {
                c.to_rows()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| {
                                let v = f.to_bigint(x).ok_or_else(|| {
                                    Error::Parse(format!("entry {} has no integer representative", f.format(x)))
                                })?;
                                Ok(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field: f.spec(), n: m.n(), d: m.d(), coeffs, name: None, provenance: None })
    }

    /// SHA-256 over the canonical form of field, size and coefficients.
    pub fn content_hash(&self) -> String {
        let bare = MatrixFile { name: None, provenance: None, ..self.clone() };
        hex::encode(Sha256::digest(bare.to_canonical_json().as_bytes()))
    }
}

fn parse_int(n: &Number) -> Result<BigInt> {
    BigInt::from_str(&n.to_string()).map_err(|_| Error::Parse(format!("`{n}` is not an integer")))
}

fn build<F: Field>(field: &F, ints: &[Vec<Vec<BigInt>>]) -> Result<LinearMatrix<F>> {
    let mats = ints
        .iter()
        .map(|m| {
            Mat::from_rows(
                field,
                m.iter().map(|row| row.iter().map(|v| field.from_bigint(v)).collect()).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    LinearMatrix::new(field, mats)
}

/// JSON with sorted keys, two-space indentation, and arrays of scalars
/// kept on one line.
pub fn canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    let end = "  ".repeat(indent);
    match v {
        Value::Object(map) if !map.is_empty() => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                if k > 0 {
                    out.push_str(",\n");
                }
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(key).unwrap());
                out.push_str(": ");
                write_value(&map[key.as_str()], indent + 1, out);
            }
            out.push('\n');
            out.push_str(&end);
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, indent, out);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(",\n");
                    }
                    out.push_str(&pad);
                    write_value(x, indent + 1, out);
                }
                out.push('\n');
                out.push_str(&end);
                out.push(']');
            }
        }
        other => out.push_str(&serde_json::to_string(other).unwrap()),
    }
}

/// A matrix of linear forms over a field chosen at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyLinearMatrix {
    Prime(LinearMatrix<PrimeField>),
    Extension(LinearMatrix<ExtField>),
    Rational(LinearMatrix<Rationals>),
}

/// Runs `$body` with `$m` bound to the typed matrix inside an [`AnyLinearMatrix`].
#[macro_export]
macro_rules! with_matrix {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::io::AnyLinearMatrix::Prime($m) => $body,
            $crate::io::AnyLinearMatrix::Extension($m) => $body,
            $crate::io::AnyLinearMatrix::Rational($m) => $body,
        }
    };
}

impl AnyLinearMatrix {
    /// Wraps a typed matrix; fails for field types defined outside this crate.
    pub fn from_typed<F: Field>(m: &LinearMatrix<F>) -> Result<Self> {
        let any: &dyn Any = m;
        if let Some(m) = any.downcast_ref::<LinearMatrix<PrimeField>>() {
            Ok(Self::Prime(m.clone()))
        } else if let Some(m) = any.downcast_ref::<LinearMatrix<ExtField>>() {
            Ok(Self::Extension(m.clone()))
        } else if let Some(m) = any.downcast_ref::<LinearMatrix<Rationals>>() {
            Ok(Self::Rational(m.clone()))
        } else {
            Err(Error::UnsupportedField(m.field().spec().to_string()))
        }
    }

    pub fn n(&self) -> usize {
        with_matrix!(self, m => m.n())
    }

    pub fn d(&self) -> usize {
        with_matrix!(self, m => m.d())
    }

    pub fn is_skew(&self) -> bool {
        with_matrix!(self, m => m.is_skew())
    }

    pub fn field_spec(&self) -> FieldSpec {
        with_matrix!(self, m => m.field().spec())
    }

    pub fn to_file(&self) -> Result<MatrixFile> {
        with_matrix!(self, m => MatrixFile::from_matrix(m))
    }
}
