//! Matrix documents: `{"ring": {...}, "matrix": [[e, e], [e, e]]}`.
//!
//! Integer entries are decimal strings. Polynomial entries over `F_p` are
//! ascending coefficient arrays with every coefficient in `[0, p)`.

use std::path::Path;

use num_bigint::BigInt;
use pidmat::ring::is_prime_u64;
use pidmat::{FpPoly, Mat2, Pid};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub const MAX_DEGREE: usize = 12;
pub const MAX_DIGITS: usize = 4096;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDocument {
    ring: RingSpec,
    matrix: [[Value; 2]; 2],
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RingSpec {
    Int,
    Polyfp { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Int(Mat2<BigInt>),
    Poly(Mat2<FpPoly>),
}

/// Element encoding for reports.
pub trait Encode: Pid {
    fn encode(&self) -> Value;
    fn ring(&self) -> Value;
}

impl Encode for BigInt {
    fn encode(&self) -> Value {
        Value::String(self.to_string())
    }

    fn ring(&self) -> Value {
        json!({"kind": "int"})
    }
}

impl Encode for FpPoly {
    fn encode(&self) -> Value {
        json!(self.coeffs())
    }

    fn ring(&self) -> Value {
        json!({"kind": "polyfp", "p": self.modulus()})
    }
}

pub fn encode_matrix<R: Encode>(m: &Mat2<R>) -> Value {
    let [[a, b], [c, d]] = m.entries();
    json!([[a.encode(), b.encode()], [c.encode(), d.encode()]])
}

pub fn encode_all<'a, R: Encode + 'a>(xs: impl IntoIterator<Item = &'a R>) -> Value {
    Value::Array(xs.into_iter().map(Encode::encode).collect())
}

fn parse_int(v: &Value) -> Result<BigInt, CliError> {
    let s = v
        .as_str()
        .ok_or_else(|| CliError::Input(format!("integer entry {v} must be a decimal string")))?;
    if s.trim_start_matches(['-', '+']).len() > MAX_DIGITS {
        return Err(CliError::Limit(format!("integer entry longer than {MAX_DIGITS} digits")));
    }
    s.parse()
        .map_err(|_| CliError::Input(format!("{s:?} is not a decimal integer")))
}

fn parse_poly(v: &Value, p: u64) -> Result<FpPoly, CliError> {
    let items = v
        .as_array()
        .ok_or_else(|| CliError::Input(format!("polynomial entry {v} must be a coefficient array")))?;
    let mut coeffs = Vec::with_capacity(items.len());
    for c in items {
        let c = c
            .as_u64()
            .ok_or_else(|| CliError::Input(format!("coefficient {c} is not a nonnegative integer")))?;
        if c >= p {
            return Err(CliError::Input(format!("coefficient {c} is not reduced modulo {p}")));
        }
        coeffs.push(c);
    }
    let poly = FpPoly::new(p, coeffs);
    if poly.degree().is_some_and(|d| d > MAX_DEGREE) {
        return Err(CliError::Limit(format!("polynomial degree exceeds {MAX_DEGREE}")));
    }
    Ok(poly)
}

fn build<R: Pid>(
    rows: &[[Value; 2]; 2],
    mut parse: impl FnMut(&Value) -> Result<R, CliError>,
) -> Result<Mat2<R>, CliError> {
    let [[a, b], [c, d]] = rows;
    Ok(Mat2::new([[parse(a)?, parse(b)?], [parse(c)?, parse(d)?]])?)
}

pub fn parse_document(text: &str) -> Result<AnyMatrix, CliError> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed matrix document: {e}")))?;
    match doc.ring {
        RingSpec::Int => Ok(AnyMatrix::Int(build(&doc.matrix, parse_int)?)),
        RingSpec::Polyfp { p } => {
            if !is_prime_u64(p) {
                return Err(CliError::NonPrimeModulus(p));
            }
            Ok(AnyMatrix::Poly(build(&doc.matrix, |v| parse_poly(v, p))?))
        }
    }
}

pub fn load(path: &Path) -> Result<AnyMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Operands of one invocation, all over the same ring.
pub enum Operands {
    Int(Vec<Mat2<BigInt>>),
    Poly(Vec<Mat2<FpPoly>>),
}

pub fn same_ring(mats: Vec<AnyMatrix>) -> Result<Operands, CliError> {
    let mismatch = || CliError::Input("operands are over different rings".into());
    match mats.first() {
        Some(AnyMatrix::Int(_)) => mats
            .into_iter()
            .map(|m| match m {
                AnyMatrix::Int(m) => Ok(m),
                AnyMatrix::Poly(_) => Err(mismatch()),
            })
            .collect::<Result<_, _>>()
            .map(Operands::Int),
        Some(AnyMatrix::Poly(first)) => {
            let p = first.like().modulus();
            mats.into_iter()
                .map(|m| match m {
                    AnyMatrix::Poly(m) if m.like().modulus() == p => Ok(m),
                    _ => Err(mismatch()),
                })
                .collect::<Result<_, _>>()
                .map(Operands::Poly)
        }
        None => Err(CliError::Input("no operands".into())),
    }
}
