//! Coefficient rings with involution and the raw arithmetic on their values.
//!
//! Every supported ring has 2 invertible. Values are kept in canonical form:
//! rationals are reduced, Laurent polynomials carry no zero coefficients and
//! truncated polynomials always have exactly `k` coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{self, is_power_of_two};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    /// `F_p` for an odd prime `p`, trivial involution.
    PrimeField(u64),
    /// `Q`, trivial involution.
    Rationals,
    /// `Z[1/2]`, trivial involution.
    Dyadic,
    /// `Z[1/2][t, 1/t, z, 1/z]` with `t -> 1/t`, `z -> 1/z`.
    Laurent2,
    /// `B[x]/(x^k)` with `x` fixed by the involution.
    TruncNil { base: Box<RingSpec>, k: usize },
}

/// Exponent of `t` and `z` in a Laurent monomial.
pub type Monomial = (i64, i64);

/// Sparse Laurent polynomial with dyadic coefficients.
pub type LaurentPoly = BTreeMap<Monomial, BigRational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Value {
    Residue(u64),
    Frac(BigRational),
    Laurent(LaurentPoly),
    Trunc(Vec<Value>),
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        let spec = RingSpec::PrimeField(p);
        spec.validate()?;
        Ok(spec)
    }

    pub fn trunc_nil(base: RingSpec, k: usize) -> Result<Self> {
        let spec = RingSpec::TruncNil {
            base: Box::new(base),
            k,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::PrimeField(p) => {
                if *p == 2 || !arith::is_prime(*p) || *p >= (1 << 32) {
                    return Err(Error::InvalidRing(format!(
                        "F_{p}: need an odd prime below 2^32"
                    )));
                }
                Ok(())
            }
            RingSpec::TruncNil { base, k } => {
                if *k == 0 {
                    return Err(Error::InvalidRing("truncation order k must be >= 1".into()));
                }
                if matches!(**base, RingSpec::TruncNil { .. }) {
                    return Err(Error::InvalidRing(
                        "nested truncated rings are not supported".into(),
                    ));
                }
                base.validate()
            }
            _ => Ok(()),
        }
    }

    /// The base ring of a truncated ring; `None` otherwise.
    pub fn nil_base(&self) -> Option<(&RingSpec, usize)> {
        match self {
            RingSpec::TruncNil { base, k } => Some((base, *k)),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::PrimeField(_) | RingSpec::Rationals)
    }

    /// Short tag used in JSON and on the command line.
    pub fn tag(&self) -> String {
        match self {
            RingSpec::PrimeField(p) => format!("fp:{p}"),
            RingSpec::Rationals => "rationals".into(),
            RingSpec::Dyadic => "dyadic".into(),
            RingSpec::Laurent2 => "laurent2".into(),
            RingSpec::TruncNil { base, k } => format!("truncnil:{}:{k}", base.tag()),
        }
    }

    /// Inverse of [`RingSpec::tag`]. Also accepts `q` for the rationals.
    pub fn parse_tag(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = match s {
            "q" | "Q" | "rationals" => RingSpec::Rationals,
            "dyadic" | "Z[1/2]" => RingSpec::Dyadic,
            "laurent2" => RingSpec::Laurent2,
            _ => {
                if let Some(p) = s.strip_prefix("fp:") {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad prime in ring tag {s:?}")))?;
                    RingSpec::PrimeField(p)
                } else if let Some(rest) = s.strip_prefix("truncnil:") {
                    let (base, k) = rest
                        .rsplit_once(':')
                        .ok_or_else(|| Error::Parse(format!("bad truncnil tag {s:?}")))?;
                    let k: usize = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad truncation order in {s:?}")))?;
                    RingSpec::TruncNil {
                        base: Box::new(RingSpec::parse_tag(base)?),
                        k,
                    }
                } else {
                    return Err(Error::Parse(format!("unknown ring tag {s:?}")));
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    // ---- raw value arithmetic -------------------------------------------

    pub(crate) fn zero(&self) -> Value {
        match self {
            RingSpec::PrimeField(_) => Value::Residue(0),
            RingSpec::Rationals | RingSpec::Dyadic => Value::Frac(BigRational::zero()),
            RingSpec::Laurent2 => Value::Laurent(LaurentPoly::new()),
            RingSpec::TruncNil { base, k } => Value::Trunc(vec![base.zero(); *k]),
        }
    }

    pub(crate) fn one(&self) -> Value {
        self.from_int(1)
    }

    pub(crate) fn from_int(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub(crate) fn from_bigint(&self, n: &BigInt) -> Value {
        self.from_rational(&BigRational::from_integer(n.clone()))
            .expect("integers embed in every supported ring")
    }

    /// Image of a rational number, when it lies in the ring.
    pub(crate) fn from_rational(&self, q: &BigRational) -> Result<Value> {
        let not_here = || Error::NotRepresentable {
            value: q.to_string(),
            ring: self.tag(),
        };
        match self {
            RingSpec::PrimeField(p) => {
                let den = arith::mod_u64(q.denom(), *p);
                if den == 0 {
                    return Err(not_here());
                }
                let num = arith::mod_u64(q.numer(), *p);
                Ok(Value::Residue(mul_mod(num, arith::pow_mod(den, p - 2, *p), *p)))
            }
            RingSpec::Rationals => Ok(Value::Frac(q.clone())),
            RingSpec::Dyadic => {
                if is_power_of_two(q.denom()) {
                    Ok(Value::Frac(q.clone()))
                } else {
                    Err(not_here())
                }
            }
            RingSpec::Laurent2 => {
                if !is_power_of_two(q.denom()) {
                    return Err(not_here());
                }
                let mut poly = LaurentPoly::new();
                if !q.is_zero() {
                    poly.insert((0, 0), q.clone());
                }
                Ok(Value::Laurent(poly))
            }
            RingSpec::TruncNil { base, k } => {
                let mut coeffs = vec![base.zero(); *k];
                coeffs[0] = base.from_rational(q)?;
                Ok(Value::Trunc(coeffs))
            }
        }
    }

    pub(crate) fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Residue(r) => *r == 0,
            Value::Frac(q) => q.is_zero(),
            Value::Laurent(poly) => poly.is_empty(),
            Value::Trunc(cs) => {
                let base = self.nil_base().expect("truncated value").0;
                cs.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub(crate) fn add(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (RingSpec::PrimeField(p), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue((x + y) % p)
            }
            (_, Value::Frac(x), Value::Frac(y)) => Value::Frac(x + y),
            (_, Value::Laurent(x), Value::Laurent(y)) => {
                let mut out = x.clone();
                for (m, c) in y {
                    add_term(&mut out, *m, c.clone());
                }
                Value::Laurent(out)
            }
            (RingSpec::TruncNil { base, .. }, Value::Trunc(x), Value::Trunc(y)) => {
                Value::Trunc(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("value does not belong to {}", self.tag()),
        }
    }

    pub(crate) fn neg(&self, a: &Value) -> Value {
        match (self, a) {
            (RingSpec::PrimeField(p), Value::Residue(x)) => Value::Residue((p - x) % p),
            (_, Value::Frac(x)) => Value::Frac(-x),
            (_, Value::Laurent(x)) => {
                Value::Laurent(x.iter().map(|(m, c)| (*m, -c)).collect())
            }
            (RingSpec::TruncNil { base, .. }, Value::Trunc(x)) => {
                Value::Trunc(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => panic!("value does not belong to {}", self.tag()),
        }
    }

    pub(crate) fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub(crate) fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (RingSpec::PrimeField(p), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(mul_mod(*x, *y, *p))
            }
            (_, Value::Frac(x), Value::Frac(y)) => Value::Frac(x * y),
            (_, Value::Laurent(x), Value::Laurent(y)) => {
                let mut out = LaurentPoly::new();
                for ((i1, j1), c1) in x {
                    for ((i2, j2), c2) in y {
                        add_term(&mut out, (i1 + i2, j1 + j2), c1 * c2);
                    }
                }
                Value::Laurent(out)
            }
            (RingSpec::TruncNil { base, k }, Value::Trunc(x), Value::Trunc(y)) => {
                let mut out = vec![base.zero(); *k];
                for (i, u) in x.iter().enumerate() {
                    if base.is_zero(u) {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate().take(k - i) {
                        let prod = base.mul(u, v);
                        out[i + j] = base.add(&out[i + j], &prod);
                    }
                }
                Value::Trunc(out)
            }
            _ => panic!("value does not belong to {}", self.tag()),
        }
    }

    pub(crate) fn is_unit(&self, a: &Value) -> bool {
        match (self, a) {
            (RingSpec::PrimeField(_), Value::Residue(x)) => *x != 0,
            (RingSpec::Rationals, Value::Frac(q)) => !q.is_zero(),
            (RingSpec::Dyadic, Value::Frac(q)) => is_power_of_two(q.numer()),
            (RingSpec::Laurent2, Value::Laurent(poly)) => {
                poly.len() == 1 && poly.values().all(|c| is_power_of_two(c.numer()))
            }
            (RingSpec::TruncNil { base, .. }, Value::Trunc(cs)) => base.is_unit(&cs[0]),
            _ => false,
        }
    }

    pub(crate) fn inv(&self, a: &Value) -> Result<Value> {
        if !self.is_unit(a) {
            return Err(Error::NonUnit(self.display(a)));
        }
        Ok(match (self, a) {
            (RingSpec::PrimeField(p), Value::Residue(x)) => {
                Value::Residue(arith::pow_mod(*x, p - 2, *p))
            }
            (_, Value::Frac(q)) => Value::Frac(q.recip()),
            (_, Value::Laurent(poly)) => {
                let (&(i, j), c) = poly.iter().next().expect("unit monomial");
                let mut out = LaurentPoly::new();
                out.insert((-i, -j), c.recip());
                Value::Laurent(out)
            }
            (RingSpec::TruncNil { base, k }, Value::Trunc(cs)) => {
                // a = c0 (1 + n) with n nilpotent: a^-1 = c0^-1 sum (-n)^j
                let c0_inv = base.inv(&cs[0])?;
                let c0_inv_t = self.constant(c0_inv);
                let mut n = self.mul(&c0_inv_t, a);
                if let Value::Trunc(ref mut v) = n {
                    v[0] = base.zero();
                }
                let minus_n = self.neg(&n);
                let mut term = self.one();
                let mut acc = self.one();
                for _ in 1..*k {
                    term = self.mul(&term, &minus_n);
                    acc = self.add(&acc, &term);
                }
                self.mul(&acc, &c0_inv_t)
            }
            _ => unreachable!(),
        })
    }

    pub(crate) fn involute(&self, a: &Value) -> Value {
        match (self, a) {
            (_, Value::Laurent(poly)) => Value::Laurent(
                poly.iter()
                    .map(|(&(i, j), c)| ((-i, -j), c.clone()))
                    .collect(),
            ),
            (RingSpec::TruncNil { base, .. }, Value::Trunc(cs)) => {
                Value::Trunc(cs.iter().map(|c| base.involute(c)).collect())
            }
            _ => a.clone(),
        }
    }

    /// Constant of a truncated ring from a base value.
    pub(crate) fn constant(&self, c: Value) -> Value {
        let (base, k) = self.nil_base().expect("truncated ring");
        let mut coeffs = vec![base.zero(); k];
        coeffs[0] = c;
        Value::Trunc(coeffs)
    }

    /// Checks that a value is in canonical form for this ring.
    pub(crate) fn owns(&self, a: &Value) -> bool {
        match (self, a) {
            (RingSpec::PrimeField(p), Value::Residue(x)) => x < p,
            (RingSpec::Rationals, Value::Frac(_)) => true,
            (RingSpec::Dyadic, Value::Frac(q)) => is_power_of_two(q.denom()),
            (RingSpec::Laurent2, Value::Laurent(poly)) => poly
                .values()
                .all(|c| !c.is_zero() && is_power_of_two(c.denom())),
            (RingSpec::TruncNil { base, k }, Value::Trunc(cs)) => {
                cs.len() == *k && cs.iter().all(|c| base.owns(c))
            }
            _ => false,
        }
    }

    pub(crate) fn display(&self, a: &Value) -> String {
        match (self, a) {
            (_, Value::Residue(x)) => x.to_string(),
            (_, Value::Frac(q)) => q.to_string(),
            (_, Value::Laurent(poly)) => display_laurent(poly),
            (RingSpec::TruncNil { base, .. }, Value::Trunc(cs)) => {
                let mut parts = Vec::new();
                for (i, c) in cs.iter().enumerate() {
                    if base.is_zero(c) {
                        continue;
                    }
                    let s = base.display(c);
                    let coeff = if s.contains(' ') { format!("({s})") } else { s };
                    parts.push(match i {
                        0 => coeff,
                        1 => format!("{coeff}*x"),
                        _ => format!("{coeff}*x^{i}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
            _ => "<foreign value>".into(),
        }
    }

    /// Integer residue for prime-field values.
    pub(crate) fn residue(a: &Value) -> Option<u64> {
        match a {
            Value::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub(crate) fn as_rational(a: &Value) -> Option<&BigRational> {
        match a {
            Value::Frac(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_term(poly: &mut LaurentPoly, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = poly.entry(m).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        poly.remove(&m);
    }
}

fn display_laurent(poly: &LaurentPoly) -> String {
    if poly.is_empty() {
        return "0".into();
    }
    let var = |name: &str, e: i64| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    let mut parts = Vec::new();
    for (&(i, j), c) in poly.iter().rev() {
        let mut factors: Vec<String> = [var("t", i), var("z", j)].into_iter().flatten().collect();
        if factors.is_empty() || !c.is_one() {
            factors.insert(0, c.to_string());
        }
        parts.push(factors.join("*"));
    }
    parts.join(" + ")
}
