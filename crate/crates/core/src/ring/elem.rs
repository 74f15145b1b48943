use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::spec::{LaurentPoly, Monomial, RingSpec, Value};
use crate::error::{Error, Result};

/// An exact element of one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    spec: RingSpec,
    value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Binary/unary arithmetic with explicit ring checking. `b` is ignored for
/// the unary operations.
pub fn ring_arith(a: &RingElem, b: &RingElem, op: ArithOp) -> Result<RingElem> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

impl RingElem {
    pub(crate) fn from_value(spec: RingSpec, value: Value) -> Self {
        debug_assert!(spec.owns(&value), "non-canonical value for {spec}");
        RingElem { spec, value }
    }

    pub(crate) fn value(&self) -> &Value {
        &self.value
    }

    pub(crate) fn into_value(self) -> Value {
        self.value
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn zero(spec: &RingSpec) -> Self {
        Self::from_value(spec.clone(), spec.zero())
    }

    pub fn one(spec: &RingSpec) -> Self {
        Self::from_value(spec.clone(), spec.one())
    }

    pub fn from_int(spec: &RingSpec, n: i64) -> Self {
        Self::from_value(spec.clone(), spec.from_int(n))
    }

    pub fn from_bigint(spec: &RingSpec, n: &BigInt) -> Self {
        Self::from_value(spec.clone(), spec.from_bigint(n))
    }

    pub fn from_rational(spec: &RingSpec, q: &BigRational) -> Result<Self> {
        Ok(Self::from_value(spec.clone(), spec.from_rational(q)?))
    }

    /// `num/den` in the given ring.
    pub fn from_frac(spec: &RingSpec, num: i64, den: i64) -> Result<Self> {
        Self::from_rational(spec, &BigRational::new(num.into(), den.into()))
    }

    /// `coeff * t^i * z^j` in the Laurent ring.
    pub fn laurent_monomial(coeff: &BigRational, exps: Monomial) -> Result<Self> {
        let mut poly = LaurentPoly::new();
        poly.insert(exps, coeff.clone());
        Self::laurent(poly)
    }

    pub fn laurent(poly: LaurentPoly) -> Result<Self> {
        let mut clean = LaurentPoly::new();
        for (m, c) in poly {
            if !crate::arith::is_power_of_two(c.denom()) {
                return Err(Error::NotRepresentable {
                    value: c.to_string(),
                    ring: RingSpec::Laurent2.tag(),
                });
            }
            if !c.is_zero() {
                clean.insert(m, c);
            }
        }
        Ok(Self::from_value(RingSpec::Laurent2, Value::Laurent(clean)))
    }

    pub fn t() -> Self {
        Self::laurent_monomial(&BigRational::from_integer(1.into()), (1, 0)).unwrap()
    }

    pub fn z() -> Self {
        Self::laurent_monomial(&BigRational::from_integer(1.into()), (0, 1)).unwrap()
    }

    /// Coefficients of a Laurent element, keyed by `(exp_t, exp_z)`.
    pub fn laurent_terms(&self) -> Option<&LaurentPoly> {
        match &self.value {
            Value::Laurent(p) => Some(p),
            _ => None,
        }
    }

    /// The nilpotent generator `x` of `B[x]/(x^k)`.
    pub fn nil_x(spec: &RingSpec) -> Result<Self> {
        let (base, k) = spec
            .nil_base()
            .ok_or_else(|| Error::InvalidRing(format!("{spec} has no nilpotent generator")))?;
        let mut coeffs = vec![base.zero(); k];
        if k > 1 {
            coeffs[1] = base.one();
        }
        Ok(Self::from_value(spec.clone(), Value::Trunc(coeffs)))
    }

    /// Builds `sum c_i x^i` from base-ring coefficients (missing ones are zero,
    /// those at or above `k` are dropped).
    pub fn from_nil_coeffs(spec: &RingSpec, coeffs: &[RingElem]) -> Result<Self> {
        let (base, k) = spec
            .nil_base()
            .ok_or_else(|| Error::InvalidRing(format!("{spec} is not a truncated ring")))?;
        let mut out = vec![base.zero(); k];
        for (i, c) in coeffs.iter().enumerate().take(k) {
            if c.spec() != base {
                return Err(mismatch(base, c.spec()));
            }
            out[i] = c.value.clone();
        }
        Ok(Self::from_value(spec.clone(), Value::Trunc(out)))
    }

    /// Coefficients over the base ring of a truncated element.
    pub fn nil_coeffs(&self) -> Option<Vec<RingElem>> {
        let (base, _) = self.spec.nil_base()?;
        match &self.value {
            Value::Trunc(cs) => Some(
                cs.iter()
                    .map(|c| RingElem::from_value(base.clone(), c.clone()))
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.spec.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.value == self.spec.one()
    }

    pub fn is_unit(&self) -> bool {
        self.spec.is_unit(&self.value)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_value(
            self.spec.clone(),
            self.spec.add(&self.value, &other.value),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_value(
            self.spec.clone(),
            self.spec.sub(&self.value, &other.value),
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_value(
            self.spec.clone(),
            self.spec.mul(&self.value, &other.value),
        ))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self::from_value(self.spec.clone(), self.spec.inv(&self.value)?))
    }

    pub fn involute(&self) -> Self {
        Self::from_value(self.spec.clone(), self.spec.involute(&self.value))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.spec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rational value for `Rationals`/`Dyadic` elements.
    pub fn to_rational(&self) -> Option<BigRational> {
        RingSpec::as_rational(&self.value).cloned()
    }

    /// Residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        RingSpec::residue(&self.value)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(mismatch(&self.spec, &other.spec));
        }
        Ok(())
    }
}

pub(crate) fn mismatch(a: &RingSpec, b: &RingSpec) -> Error {
    Error::SpecMismatch {
        left: a.tag(),
        right: b.tag(),
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.display(&self.value))
    }
}

// Operator forms panic on mixed rings; use the `checked_*` methods when the
// rings are not known to agree.
impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::from_value(self.spec.clone(), self.spec.neg(&self.value))
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}
