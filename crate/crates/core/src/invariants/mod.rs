//! Complete Witt-class invariants over F_p, Q and Z[1/2].

mod hilbert;
mod table;

pub use hilbert::{hilbert_symbol, is_local_square, relevant_places, Place};
pub use table::{witt_ring_table, BasisElem, WittRingTable};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Map, Value as Json};

use crate::arith::{least_nonresidue, legendre, squarefree_class, valuation};
use crate::error::{Error, Result};
use crate::forms::{diagonalize, GramForm};
use crate::ring::RingSpec;

/// Invariant tuple of a Witt class. Fields not meaningful for the ring are
/// left at their zero values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WittClass {
    pub ring: RingSpec,
    pub dim_mod2: u8,
    /// Sylvester signature (Q and Z[1/2]).
    pub signature: i64,
    /// Signed discriminant `(-1)^(n(n-1)/2) det` modulo squares.
    pub disc: BigInt,
    /// Primes where the Witt (Clifford) invariant is -1 (Q only).
    pub hasse: BTreeMap<u64, i8>,
    /// `v_2(det) mod 2` (Z[1/2] only).
    pub dyadic_disc_parity: u8,
}

impl WittClass {
    pub fn zero(ring: &RingSpec) -> Self {
        WittClass {
            ring: ring.clone(),
            dim_mod2: 0,
            signature: 0,
            disc: BigInt::one(),
            hasse: BTreeMap::new(),
            dyadic_disc_parity: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(&self.ring)
    }

    /// The complete invariants only, keyed by name.
    pub fn to_json(&self) -> Json {
        match self.ring {
            RingSpec::Dyadic => json!({"signature": self.signature, "parity": self.dyadic_disc_parity}),
            RingSpec::PrimeField(_) => json!({"dim_mod2": self.dim_mod2, "disc": int_json(&self.disc)}),
            _ => {
                let hasse: Map<String, Json> =
                    self.hasse.iter().map(|(p, s)| (p.to_string(), json!(s))).collect();
                json!({
                    "dim_mod2": self.dim_mod2,
                    "signature": self.signature,
                    "disc": int_json(&self.disc),
                    "hasse": hasse,
                })
            }
        }
    }
}

fn int_json(n: &BigInt) -> Json {
    n.to_i64().map_or_else(|| json!(n.to_string()), |v| json!(v))
}

impl std::fmt::Display for WittClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

fn signed_disc_sign(n: usize) -> i64 {
    if (n * n.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Clifford invariant from the Hasse invariant `s` of a diagonal form of
/// dimension `n` and determinant `d`.
fn clifford_correction(n: usize, d: &BigRational, p: crate::invariants::Place) -> i8 {
    let m1 = BigRational::from_integer(-BigInt::one());
    let h = |a: &BigRational, b: &BigRational| hilbert_symbol(a, b, p).expect("nonzero");
    match n % 8 {
        1 | 2 => 1,
        3 | 4 => h(&m1, &-d),
        5 | 6 => h(&m1, &m1),
        _ => h(&m1, d),
    }
}

fn rational_diagonal(f: &GramForm) -> Result<Vec<BigRational>> {
    let q = f.change_ring(&RingSpec::Rationals)?;
    Ok(diagonalize(&q)?
        .form
        .diagonal_entries()
        .iter()
        .map(|e| e.to_rational().expect("rational"))
        .collect())
}

pub fn witt_class(f: &GramForm) -> Result<WittClass> {
    let ring = f.ring().clone();
    let supported = matches!(ring, RingSpec::PrimeField(_) | RingSpec::Rationals | RingSpec::Dyadic);
    if !supported {
        return Err(Error::Unsupported {
            ring: ring.tag(),
            reason: "Witt invariants over F_p, Q and Z[1/2]".into(),
        });
    }
    if f.epsilon() == -1 {
        // skew unimodular forms over fields and Z[1/2] are hyperbolic
        return Ok(WittClass::zero(&ring));
    }
    let n = f.dim();
    let mut class = WittClass::zero(&ring);
    class.dim_mod2 = (n % 2) as u8;
    let sgn = BigRational::from_integer(signed_disc_sign(n).into());
    match ring {
        RingSpec::PrimeField(p) => {
            let det = f.gram().det()?;
            let r = det.residue().expect("residue");
            let sd = if signed_disc_sign(n) == -1 { (p - r) % p } else { r };
            class.disc = if legendre(sd, p) == 1 {
                BigInt::one()
            } else {
                BigInt::from(least_nonresidue(p))
            };
        }
        RingSpec::Rationals => {
            let d = rational_diagonal(f)?;
            class.signature = signature(&d);
            let det: BigRational = d.iter().product();
            class.disc = squarefree_class(&(&det * &sgn));
            for v in relevant_places(&d) {
                if v == Place::Real {
                    continue;
                }
                let mut s: i8 = 1;
                for i in 0..n {
                    for j in i + 1..n {
                        s *= hilbert_symbol(&d[i], &d[j], v)?;
                    }
                }
                let c = s * clifford_correction(n, &det, v);
                if c == -1 {
                    if let Place::Prime(p) = v {
                        class.hasse.insert(p, -1);
                    }
                }
            }
        }
        RingSpec::Dyadic => {
            let d = rational_diagonal(f)?;
            class.signature = signature(&d);
            let det = f.gram().det()?.to_rational().expect("dyadic");
            let parity = valuation(&det, 2).rem_euclid(2) as u8;
            class.dyadic_disc_parity = parity;
            let sign = if (&det * &sgn).is_positive() { 1 } else { -1 };
            class.disc = BigInt::from(sign * if parity == 1 { 2 } else { 1 });
        }
        _ => unreachable!(),
    }
    Ok(class)
}

fn signature(d: &[BigRational]) -> i64 {
    d.iter().map(|a| if a.is_positive() { 1 } else { -1 }).sum()
}

pub fn witt_equiv(f: &GramForm, g: &GramForm) -> Result<bool> {
    if f.ring() != g.ring() {
        return Err(Error::SpecMismatch {
            left: f.ring().tag(),
            right: g.ring().tag(),
        });
    }
    if f.epsilon() != g.epsilon() {
        return Err(Error::InvalidParameter("forms have different epsilon".into()));
    }
    Ok(witt_class(f)? == witt_class(g)?)
}
