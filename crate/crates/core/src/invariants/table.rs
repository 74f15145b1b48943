//! Additive structure and multiplication table of a Witt ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value as Json};

use super::{witt_class, WittClass};
use crate::arith::least_nonresidue;
use crate::error::{Error, Result};
use crate::forms::{orth_sum, tensor, witt_decompose, GramForm};
use crate::ring::{InvMatrix, RingSpec};
use crate::stab::{FgAbGroup, IntMatrix};

/// Cap on the number of classes enumerated over a finite field.
const CLASS_BOUND: usize = 256;

/// A basis element of the identified group, as a formal combination of
/// forms.
#[derive(Clone, Debug)]
pub struct BasisElem {
    pub label: String,
    pub form: GramForm,
    pub class: WittClass,
    /// `None` for a free generator.
    pub order: Option<BigInt>,
}

#[derive(Clone, Debug)]
pub struct WittRingTable {
    pub ring: RingSpec,
    pub group: FgAbGroup,
    pub generators: Vec<GramForm>,
    pub generator_classes: Vec<WittClass>,
    pub basis: Vec<BasisElem>,
    /// Every class, sorted, when the group is finite.
    pub classes: Option<Vec<WittClass>>,
    /// `sums[i][j]` is the class of `g_i ⊥ g_j`.
    pub sums: Vec<Vec<WittClass>>,
    /// `products[i][j]` is the class of `g_i ⊗ g_j`.
    pub products: Vec<Vec<WittClass>>,
}

impl WittRingTable {
    pub fn to_json(&self) -> Json {
        let basis: Vec<Json> = self
            .basis
            .iter()
            .map(|b| {
                json!({
                    "label": b.label,
                    "class": b.class.to_json(),
                    "order": b.order.as_ref().map(|o| o.to_string()),
                })
            })
            .collect();
        let table = |t: &Vec<Vec<WittClass>>| -> Json {
            t.iter()
                .map(|row| row.iter().map(WittClass::to_json).collect::<Vec<_>>())
                .collect()
        };
        let mut out = json!({
            "ring": self.ring.tag(),
            "group": self.group.to_string(),
            "generators": basis,
            "input_generators": self.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "sums": table(&self.sums),
            "products": table(&self.products),
        });
        if let Some(cs) = &self.classes {
            out["order"] = json!(cs.len());
            out["classes"] = cs.iter().map(WittClass::to_json).collect();
        }
        out
    }
}

fn default_generators(ring: &RingSpec) -> Result<Vec<GramForm>> {
    match ring {
        RingSpec::Dyadic => [1, 2, -1, -2]
            .iter()
            .map(|&a| GramForm::diag_ints(ring, &[a]))
            .collect(),
        RingSpec::PrimeField(p) => [1, least_nonresidue(*p) as i64]
            .iter()
            .map(|&a| GramForm::diag_ints(ring, &[a]))
            .collect(),
        other => Err(unsupported(other)),
    }
}

fn unsupported(ring: &RingSpec) -> Error {
    Error::Unsupported {
        ring: ring.tag(),
        reason: "Witt ring tables over F_p and Z[1/2]".into(),
    }
}

fn zero_form(ring: &RingSpec) -> GramForm {
    GramForm::new(InvMatrix::zeros(ring, 0, 0), 1).expect("empty form")
}

/// `Σ c_i g_i` as a form (negative coefficients use `-g_i`).
fn combination(ring: &RingSpec, gens: &[GramForm], coeffs: &[BigInt]) -> Result<GramForm> {
    let mut acc = zero_form(ring);
    for (g, c) in gens.iter().zip(coeffs) {
        let term = if c.is_negative() { g.negated() } else { g.clone() };
        for _ in 0..c.abs().to_usize().expect("small coefficient") {
            acc = orth_sum(&acc, &term)?;
        }
    }
    Ok(acc)
}

fn label(gens: &[GramForm], coeffs: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (g, c) in gens.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "- " } else { "+ " };
        let mag = c.abs();
        let body = if mag == BigInt::from(1) {
            g.to_string()
        } else {
            format!("{mag}{g}")
        };
        parts.push(format!("{sign}{body}"));
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}

/// Identifies the additive group generated by the classes of `generators`
/// (defaults when empty) and tabulates sums and products.
pub fn witt_ring_table(ring: &RingSpec, generators: &[GramForm]) -> Result<WittRingTable> {
    let gens = if generators.is_empty() {
        default_generators(ring)?
    } else {
        generators.to_vec()
    };
    for g in &gens {
        if g.ring() != ring {
            return Err(Error::SpecMismatch {
                left: ring.tag(),
                right: g.ring().tag(),
            });
        }
        if g.epsilon() != 1 {
            return Err(Error::InvalidParameter("generators must be symmetric forms".into()));
        }
    }
    let classes = gens.iter().map(witt_class).collect::<Result<Vec<_>>>()?;
    let square = |op: fn(&GramForm, &GramForm) -> Result<GramForm>| -> Result<Vec<Vec<WittClass>>> {
        gens.iter()
            .map(|a| gens.iter().map(|b| witt_class(&op(a, b)?)).collect())
            .collect()
    };
    let sums = square(orth_sum)?;
    let products = square(tensor)?;
    match ring {
        RingSpec::Dyadic => dyadic_table(ring, gens, classes, sums, products),
        RingSpec::PrimeField(_) => finite_table(ring, gens, classes, sums, products),
        other => Err(unsupported(other)),
    }
}

/// Coordinates of a class in `Z ⊕ Z/2`.
fn dyadic_coords(c: &WittClass) -> Vec<BigInt> {
    vec![c.signature.into(), c.dyadic_disc_parity.into()]
}

fn dyadic_table(
    ring: &RingSpec,
    gens: Vec<GramForm>,
    classes: Vec<WittClass>,
    sums: Vec<Vec<WittClass>>,
    products: Vec<Vec<WittClass>>,
) -> Result<WittRingTable> {
    let ambient = FgAbGroup::from_orders(1, &[BigInt::from(2)])?;
    let vecs: Vec<Vec<BigInt>> = classes.iter().map(dyadic_coords).collect();
    let group = ambient.subgroup_generated(&vecs);
    // membership in the generated subgroup of Z ⊕ Z/2
    let lattice = IntMatrix::from_columns(2, &vecs).hcat(ambient.relations());
    let smith = crate::stab::smith_normal_form(&lattice);
    for row in &products {
        for c in row {
            if !smith.spans(&dyadic_coords(c)) {
                return Err(Error::NotClosed(format!("product class {c} escapes the generated group")));
            }
        }
    }
    let full = group.free_rank() == 1 && group.torsion() == [BigInt::from(2)];
    let basis = if full {
        let one = GramForm::diag_ints(ring, &[1])?;
        let diff = GramForm::diag_ints(ring, &[1, -2])?;
        let (c1, c2) = (witt_class(&one)?, witt_class(&diff)?);
        assert_eq!(dyadic_coords(&c1), vec![BigInt::from(1), BigInt::from(0)]);
        assert_eq!(dyadic_coords(&c2), vec![BigInt::from(0), BigInt::from(1)]);
        vec![
            BasisElem {
                label: "<1>".into(),
                form: one,
                class: c1,
                order: None,
            },
            BasisElem {
                label: "<1> - <2>".into(),
                form: diff,
                class: c2,
                order: Some(BigInt::from(2)),
            },
        ]
    } else {
        canonical_basis(ring, &gens, &group)?
    };
    Ok(WittRingTable {
        ring: ring.clone(),
        group,
        generators: gens,
        generator_classes: classes,
        basis,
        classes: None,
        sums,
        products,
    })
}

/// Basis read off the canonical coordinates of a group presented on the
/// generators.
fn canonical_basis(ring: &RingSpec, gens: &[GramForm], group: &FgAbGroup) -> Result<Vec<BasisElem>> {
    let from = group.from_canonical();
    let moduli = group.canonical_moduli();
    (0..group.canonical_len())
        .map(|k| {
            let coeffs = from.column(k);
            let form = combination(ring, gens, &coeffs)?;
            Ok(BasisElem {
                label: label(gens, &coeffs),
                class: witt_class(&form)?,
                form,
                order: (!moduli[k].is_zero()).then(|| moduli[k].clone()),
            })
        })
        .collect()
}

/// Breadth-first closure of the generated classes; every edge that meets a
/// known class contributes a relation among the generators.
fn finite_table(
    ring: &RingSpec,
    gens: Vec<GramForm>,
    classes: Vec<WittClass>,
    sums: Vec<Vec<WittClass>>,
    products: Vec<Vec<WittClass>>,
) -> Result<WittRingTable> {
    let k = gens.len();
    let mut seen: BTreeMap<WittClass, (GramForm, Vec<BigInt>)> = BTreeMap::new();
    let zero = zero_form(ring);
    seen.insert(witt_class(&zero)?, (zero, vec![BigInt::zero(); k]));
    let mut queue = vec![witt_class(&zero_form(ring))?];
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    while let Some(c) = queue.pop() {
        let (rep, coeffs) = seen[&c].clone();
        for (i, g) in gens.iter().enumerate() {
            let sum = witt_decompose(&orth_sum(&rep, g)?, 1)?.anisotropic;
            let sc = witt_class(&sum)?;
            let mut next = coeffs.clone();
            next[i] += 1;
            match seen.get(&sc) {
                Some((_, known)) => {
                    let rel: Vec<BigInt> = next.iter().zip(known).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|x| !x.is_zero()) {
                        relations.push(rel);
                    }
                }
                None => {
                    if seen.len() >= CLASS_BOUND {
                        return Err(Error::NotClosed(format!("more than {CLASS_BOUND} classes")));
                    }
                    seen.insert(sc.clone(), (sum, next));
                    queue.push(sc);
                }
            }
        }
    }
    for row in &products {
        for c in row {
            if !seen.contains_key(c) {
                return Err(Error::NotClosed(format!("product class {c} escapes the generated set")));
            }
        }
    }
    let group = FgAbGroup::presented(IntMatrix::from_columns(k, &relations));
    let all: Vec<WittClass> = seen.keys().cloned().collect();
    assert_eq!(
        BigInt::from(all.len()),
        group.torsion_order(),
        "class count disagrees with the computed group"
    );
    let basis = canonical_basis(ring, &gens, &group)?;
    Ok(WittRingTable {
        ring: ring.clone(),
        group,
        generators: gens,
        generator_classes: classes,
        basis,
        classes: Some(all),
        sums,
        products,
    })
}
