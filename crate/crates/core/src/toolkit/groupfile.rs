//! The JSON group file format.
//!
//! ```json
//! { "schema": 1,
//!   "field": [1, 0, 1],
//!   "generators": [ [ [ [[0,1],[1,1]], [[0,1],[0,1]] ], ... ], ... ] }
//! ```
//!
//! `field` lists the monic minimal polynomial's coefficients from the
//! constant term up (`[0, 1]`, the default, is Q). Every matrix entry is a
//! list of `m` rational coordinates in the power basis, each rational an
//! integer pair `[numerator, denominator]`. Integers beyond 64 bits may be
//! written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{Field, NfElem, NumberField};
use crate::error::Error;
use crate::linalg::Mat;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub field: NumberField,
    pub generators: Vec<Mat<NfElem>>,
    pub name: Option<String>,
}

fn schema(path: &str, msg: impl Into<String>) -> Error {
    Error::Schema { path: path.to_string(), msg: msg.into() }
}

fn integer(v: &Value, path: &str) -> Result<BigInt, Error> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(schema(path, "expected an integer"))
            }
        }
        Value::String(s) => s.parse::<BigInt>().map_err(|_| schema(path, format!("'{s}' is not a decimal integer"))),
        _ => Err(schema(path, "expected an integer")),
    }
}

fn array<'a>(v: &'a Value, path: &str, what: &str) -> Result<&'a Vec<Value>, Error> {
    v.as_array().ok_or_else(|| schema(path, format!("expected {what}")))
}

fn rational(v: &Value, path: &str) -> Result<BigRational, Error> {
    let pair = array(v, path, "a [numerator, denominator] pair")?;
    if pair.len() != 2 {
        return Err(schema(path, format!("expected a [numerator, denominator] pair, found {} entries", pair.len())));
    }
    let num = integer(&pair[0], &format!("{path}[0]"))?;
    let den = integer(&pair[1], &format!("{path}[1]"))?;
    if den.is_zero() {
        return Err(schema(&format!("{path}[1]"), "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl GroupFile {
    pub fn new(field: NumberField, generators: Vec<Mat<NfElem>>) -> Self {
        GroupFile { field, generators, name: None }
    }

    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, |g| g.n())
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let v: Value = serde_json::from_str(text).map_err(|e| schema("$", format!("invalid JSON: {e}")))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, Error> {
        let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
        match obj.get("schema") {
            Some(s) if s.as_u64() == Some(SCHEMA_VERSION) => {}
            Some(s) => return Err(schema("$.schema", format!("unsupported schema version {s}"))),
            None => return Err(schema("$.schema", "missing schema version")),
        }
        let field = match obj.get("field") {
            None => NumberField::rationals(),
            Some(f) => {
                let coeffs = array(f, "$.field", "a coefficient list")?
                    .iter()
                    .enumerate()
                    .map(|(i, c)| integer(c, &format!("$.field[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                if coeffs.len() == 2 && coeffs[0].is_zero() && coeffs[1].is_one() {
                    NumberField::rationals()
                } else {
                    NumberField::new(coeffs).map_err(|e| schema("$.field", e.to_string()))?
                }
            }
        };
        let m = field.degree();
        let gens_v = array(obj.get("generators").ok_or_else(|| schema("$.generators", "missing"))?, "$.generators", "a list of matrices")?;
        let mut generators = Vec::with_capacity(gens_v.len());
        let mut n = None;
        for (gi, g) in gens_v.iter().enumerate() {
            let gp = format!("$.generators[{gi}]");
            let rows = array(g, &gp, "a matrix (list of rows)")?;
            if rows.is_empty() {
                return Err(schema(&gp, "empty matrix"));
            }
            if let Some(n0) = n {
                if rows.len() != n0 {
                    return Err(schema(&gp, format!("expected {n0} rows like the first generator, found {}", rows.len())));
                }
            }
            n = Some(rows.len());
            let mut out = Vec::with_capacity(rows.len());
            for (ri, r) in rows.iter().enumerate() {
                let rp = format!("{gp}[{ri}]");
                let entries = array(r, &rp, "a row")?;
                if entries.len() != rows.len() {
                    return Err(schema(&rp, format!("matrix is not square: row has {} entries, expected {}", entries.len(), rows.len())));
                }
                let mut row = Vec::with_capacity(entries.len());
                for (ci, e) in entries.iter().enumerate() {
                    let ep = format!("{rp}[{ci}]");
                    let coords = array(e, &ep, "a list of field coordinates")?;
                    if coords.len() != m {
                        return Err(schema(&ep, format!("expected {m} coordinates, found {}", coords.len())));
                    }
                    let c = coords.iter().enumerate().map(|(i, q)| rational(q, &format!("{ep}[{i}]"))).collect::<Result<Vec<_>, _>>()?;
                    row.push(field.elem(c));
                }
                out.push(row);
            }
            let mat = Mat::from_rows(out);
            if mat.inverse(&field).is_none() {
                return Err(schema(&gp, "matrix is singular"));
            }
            generators.push(mat);
        }
        let name = obj.get("name").and_then(|s| s.as_str()).map(str::to_string);
        Ok(GroupFile { field, generators, name })
    }

    pub fn to_value(&self) -> Value {
        let num = |x: &BigInt| -> Value {
            match i64::try_from(x) {
                Ok(i) => json!(i),
                Err(_) => json!(x.to_string()),
            }
        };
        let field: Vec<Value> = self.field.minpoly().iter().map(num).collect();
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| {
                Value::Array(
                    g.rows()
                        .map(|r| {
                            Value::Array(r.iter().map(|e| Value::Array(e.coords().iter().map(|q| json!([num(q.numer()), num(q.denom())])).collect())).collect())
                        })
                        .collect(),
                )
            })
            .collect();
        let mut v = json!({ "schema": SCHEMA_VERSION, "field": field, "generators": gens });
        if let Some(name) = &self.name {
            v["name"] = json!(name);
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("group file serializes")
    }

    /// Integer matrices over Q, for fixtures.
    pub fn from_integer_matrices(mats: &[Vec<Vec<i64>>]) -> Self {
        let k = NumberField::rationals();
        let gens = mats.iter().map(|m| Mat::from_rows(m.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect())).collect();
        GroupFile::new(k, gens)
    }
}
