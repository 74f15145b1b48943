//! JSON encoding of rings, elements and matrices.
//!
//! Rings are tag strings (`"fp:7"`, `"rationals"`, `"dyadic"`, `"laurent2"`,
//! `"truncnil:<base>:<k>"`). Scalars are `[num, den]` pairs; Laurent
//! elements are lists of `[exp_t, exp_z, [num, den]]`; truncated elements are
//! the list of their `k` base-ring payloads. Integers that do not fit in an
//! `i64` are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value as Json};

use super::elem::RingElem;
use super::matrix::InvMatrix;
use super::spec::{LaurentPoly, RingSpec, Value};
use crate::error::{Error, Result};

fn int_to_json(n: &BigInt) -> Json {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json(j: &Json) -> Result<BigInt> {
    match j {
        Json::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Json::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        _ => Err(Error::Parse(format!("expected integer, got {j}"))),
    }
}

fn frac_to_json(q: &BigRational) -> Json {
    json!([int_to_json(q.numer()), int_to_json(q.denom())])
}

fn frac_from_json(j: &Json) -> Result<BigRational> {
    match j {
        Json::Array(v) if v.len() == 2 => {
            let num = int_from_json(&v[0])?;
            let den = int_from_json(&v[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        }
        // bare integers are accepted as a convenience
        Json::Number(_) | Json::String(_) => Ok(BigRational::from_integer(int_from_json(j)?)),
        _ => Err(Error::Parse(format!("expected [num, den], got {j}"))),
    }
}

pub(crate) fn value_to_json(spec: &RingSpec, v: &Value) -> Json {
    match (spec, v) {
        (_, Value::Residue(r)) => json!([r, 1]),
        (_, Value::Frac(q)) => frac_to_json(q),
        (_, Value::Laurent(poly)) => Json::Array(
            poly.iter()
                .map(|(&(i, j), c)| json!([i, j, frac_to_json(c)]))
                .collect(),
        ),
        (RingSpec::TruncNil { base, .. }, Value::Trunc(cs)) => {
            Json::Array(cs.iter().map(|c| value_to_json(base, c)).collect())
        }
        _ => Json::Null,
    }
}

pub(crate) fn value_from_json(spec: &RingSpec, j: &Json) -> Result<Value> {
    let value = match spec {
        RingSpec::PrimeField(_) | RingSpec::Rationals | RingSpec::Dyadic => {
            spec.from_rational(&frac_from_json(j)?)?
        }
        RingSpec::Laurent2 => {
            let terms = j
                .as_array()
                .ok_or_else(|| Error::Parse("Laurent payload must be a list".into()))?;
            let mut poly = LaurentPoly::new();
            for t in terms {
                let parts = t
                    .as_array()
                    .filter(|p| p.len() == 3)
                    .ok_or_else(|| Error::Parse(format!("bad Laurent term {t}")))?;
                let i = parts[0]
                    .as_i64()
                    .ok_or_else(|| Error::Parse("t exponent".into()))?;
                let e = parts[1]
                    .as_i64()
                    .ok_or_else(|| Error::Parse("z exponent".into()))?;
                let c = frac_from_json(&parts[2])?;
                if poly.insert((i, e), c).is_some() {
                    return Err(Error::Parse(format!("repeated monomial ({i}, {e})")));
                }
            }
            RingElem::laurent(poly)?.into_value()
        }
        RingSpec::TruncNil { base, k } => {
            let cs = j
                .as_array()
                .ok_or_else(|| Error::Parse("truncated payload must be a list".into()))?;
            if cs.len() > *k {
                return Err(Error::Parse(format!(
                    "{} coefficients for truncation order {k}",
                    cs.len()
                )));
            }
            let mut out = vec![base.zero(); *k];
            for (i, c) in cs.iter().enumerate() {
                out[i] = value_from_json(base, c)?;
            }
            Value::Trunc(out)
        }
    };
    if !spec.owns(&value) {
        return Err(Error::Parse(format!("payload not canonical for {spec}")));
    }
    Ok(value)
}

impl RingElem {
    pub fn to_json(&self) -> Json {
        json!({"ring": self.spec().tag(), "value": value_to_json(self.spec(), self.value())})
    }

    pub fn from_json(j: &Json) -> Result<Self> {
        let obj = j
            .as_object()
            .ok_or_else(|| Error::Parse("element must be an object".into()))?;
        for key in obj.keys() {
            if key != "ring" && key != "value" {
                return Err(Error::Parse(format!("unknown field {key:?}")));
            }
        }
        let spec = RingSpec::parse_tag(
            obj.get("ring")
                .and_then(Json::as_str)
                .ok_or_else(|| Error::Parse("missing ring".into()))?,
        )?;
        let payload = obj
            .get("value")
            .ok_or_else(|| Error::Parse("missing value".into()))?;
        Ok(RingElem::from_value(spec.clone(), value_from_json(&spec, payload)?))
    }

    /// Payload only, for contexts where the ring is stated once.
    pub fn payload_json(&self) -> Json {
        value_to_json(self.spec(), self.value())
    }

    pub fn from_payload_json(spec: &RingSpec, j: &Json) -> Result<Self> {
        Ok(RingElem::from_value(spec.clone(), value_from_json(spec, j)?))
    }
}

impl InvMatrix {
    pub fn to_json(&self) -> Json {
        let entries: Vec<Json> = (0..self.rows())
            .map(|i| {
                Json::Array(
                    (0..self.cols())
                        .map(|j| value_to_json(self.ring(), self.val(i, j)))
                        .collect(),
                )
            })
            .collect();
        json!({
            "ring": self.ring().tag(),
            "rows": self.rows(),
            "cols": self.cols(),
            "entries": entries,
        })
    }

    pub fn from_json(j: &Json) -> Result<Self> {
        let obj = j
            .as_object()
            .ok_or_else(|| Error::Parse("matrix must be an object".into()))?;
        for key in obj.keys() {
            if !["ring", "rows", "cols", "entries"].contains(&key.as_str()) {
                return Err(Error::Parse(format!("unknown field {key:?}")));
            }
        }
        let spec = RingSpec::parse_tag(
            obj.get("ring")
                .and_then(Json::as_str)
                .ok_or_else(|| Error::Parse("missing ring".into()))?,
        )?;
        let rows = obj
            .get("entries")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Parse("missing entries".into()))?;
        let parsed = Self::entries_from_json(&spec, rows)?;
        let declared = |key: &str| obj.get(key).and_then(Json::as_u64).map(|v| v as usize);
        if declared("rows").is_some_and(|r| r != parsed.rows())
            || declared("cols").is_some_and(|c| c != parsed.cols())
        {
            return Err(Error::Parse("declared shape does not match entries".into()));
        }
        Ok(parsed)
    }

    /// Rows of element payloads over a known ring.
    pub fn entries_from_json(spec: &RingSpec, rows: &[Json]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("matrix row must be a list".into()))?;
            out.push(
                row.iter()
                    .map(|e| RingElem::from_payload_json(spec, e))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        InvMatrix::from_rows(spec, out)
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let tag = String::deserialize(d)?;
        RingSpec::parse_tag(&tag).map_err(D::Error::custom)
    }
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RingElem::from_json(&Json::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for InvMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        InvMatrix::from_json(&Json::deserialize(d)?).map_err(D::Error::custom)
    }
}
