//! The Bott element matrix over `Z[1/2][t, 1/t, z, 1/z]` and its checkable
//! identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ring::{InvMatrix, RingElem, RingSpec};

/// `p = u p0 u^-1 = [[a, b], [c, d]]` and the matrix `M` built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottData {
    pub p0: InvMatrix,
    pub u: InvMatrix,
    pub p: InvMatrix,
    pub a: RingElem,
    pub b: RingElem,
    pub c: RingElem,
    pub d: RingElem,
    pub m: InvMatrix,
}

fn lam() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn cst(q: &BigRational) -> RingElem {
    RingElem::from_rational(&RingSpec::Laurent2, q).expect("dyadic constant")
}

fn int(n: i64) -> RingElem {
    RingElem::from_int(&RingSpec::Laurent2, n)
}

/// The data with `λ = λ̄ = 1/2`. Panics if any defining identity fails.
pub fn build_bott() -> BottData {
    let bd = build_bott_with(&lam(), &lam()).expect("λ = 1/2 is accepted");
    let report = verify_bott_suite(&bd);
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        panic!("Bott identity failed: {} ({})", bad.name, bad.detail);
    }
    bd
}

/// Only `λ = λ̄ = 1/2` is accepted; the construction is not parametric.
pub fn build_bott_with(lambda: &BigRational, lambda_bar: &BigRational) -> Result<BottData> {
    if *lambda != lam() || *lambda_bar != lam() {
        return Err(Error::InvalidParameter(format!(
            "the Bott matrix is defined for λ = λ̄ = 1/2 only, got λ = {lambda}, λ̄ = {lambda_bar}"
        )));
    }
    let r = RingSpec::Laurent2;
    let (l, lb) = (cst(lambda), cst(lambda_bar));
    let z = RingElem::z();
    let t = RingElem::t();
    let one = int(1);
    let u = InvMatrix::from_rows(
        &r,
        vec![
            vec![&(&lb * &z) + &l, &(&l * &lb) * &(&z - &one)],
            vec![&z - &one, &(&l * &z) + &lb],
        ],
    )?;
    let p0 = InvMatrix::from_ints(&r, &[vec![1, 0], vec![0, 0]])?;
    let p = &(&u * &p0) * &u.inverse()?;
    let (a, b, c, d) = (p.get(0, 0), p.get(0, 1), p.get(1, 0), p.get(1, 1));
    let tinv = t.inv()?;
    let m = InvMatrix::from_rows(
        &r,
        vec![
            vec![
                &b * &(&(&t + &tinv) - &int(2)),
                &a + &(&(&one - &a) * &t),
            ],
            vec![-&(&(&one - &d) + &(&d * &tinv)), -&c],
        ],
    )?;
    Ok(BottData {
        p0,
        u,
        p,
        a,
        b,
        c,
        d,
        m,
    })
}

/// Values substituted for `t` and `z`; `None` leaves the variable symbolic.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    pub t: Option<RingElem>,
    pub z: Option<RingElem>,
}

impl Assignment {
    /// The ring the substituted entries live in.
    fn target(&self) -> Result<RingSpec> {
        let rings: Vec<&RingSpec> = [&self.t, &self.z].iter().filter_map(|v| v.as_ref().map(RingElem::spec)).collect();
        let symbolic = self.t.is_none() || self.z.is_none();
        let target = match rings.first() {
            Some(r) => (*r).clone(),
            None => RingSpec::Laurent2,
        };
        if let Some(other) = rings.iter().find(|r| ***r != target) {
            return Err(Error::SpecMismatch {
                left: target.tag(),
                right: other.tag(),
            });
        }
        if symbolic && target != RingSpec::Laurent2 {
            return Err(Error::InvalidParameter(
                "a variable left symbolic needs values in laurent2".into(),
            ));
        }
        for (name, v) in [("t", &self.t), ("z", &self.z)] {
            if let Some(v) = v {
                if !v.is_unit() {
                    return Err(Error::NonUnitAssignment(format!("{name} := {v}")));
                }
            }
        }
        Ok(target)
    }
}

fn int_pow(x: &RingElem, x_inv: &RingElem, e: i64) -> RingElem {
    if e >= 0 {
        x.pow(e as u32)
    } else {
        x_inv.pow(e.unsigned_abs() as u32)
    }
}

/// Entrywise substitution into a Laurent matrix.
pub fn substitute(m: &InvMatrix, asg: &Assignment) -> Result<InvMatrix> {
    if *m.ring() != RingSpec::Laurent2 {
        return Err(Error::SpecMismatch {
            left: RingSpec::Laurent2.tag(),
            right: m.ring().tag(),
        });
    }
    let target = asg.target()?;
    let tv = asg.t.clone().unwrap_or_else(RingElem::t);
    let zv = asg.z.clone().unwrap_or_else(RingElem::z);
    let (ti, zi) = (tv.inv()?, zv.inv()?);
    m.map_entries(&target, |e| {
        let mut acc = RingElem::zero(&target);
        for (&(i, j), c) in e.laurent_terms().expect("laurent entry") {
            let term = &(&RingElem::from_rational(&target, c)? * &int_pow(&tv, &ti, i)) * &int_pow(&zv, &zi, j);
            acc = &acc + &term;
        }
        Ok(acc)
    })
}

/// `M` with the given substitution.
pub fn specialize(bd: &BottData, asg: &Assignment) -> Result<InvMatrix> {
    substitute(&bd.m, asg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct BottReport {
    pub checks: Vec<BottCheck>,
    /// Relations under the involution found by computation, not asserted.
    pub observed: Vec<String>,
}

impl BottReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&BottCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "all_passed": self.all_passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
            "observed_relations": self.observed,
        })
    }
}

fn bar(m: &InvMatrix) -> InvMatrix {
    m.conj_transpose().transpose()
}

/// How `x̄` relates to `x`, if by a sign.
fn conj_relation(name: &str, x: &RingElem) -> String {
    let xb = x.involute();
    if xb == *x {
        format!("conj({name}) = {name}")
    } else if xb == -x {
        format!("conj({name}) = -{name}")
    } else {
        format!("conj({name}) = {xb}")
    }
}

fn matrix_relations(m: &InvMatrix) -> Vec<String> {
    let ms = m.conj_transpose();
    let mut out = Vec::new();
    if ms == *m {
        out.push("M* = M".into());
    } else if ms == -m {
        out.push("M* = -M".into());
    } else {
        out.push("M* is not ±M".into());
    }
    if let Ok(inv) = m.inverse() {
        if ms == inv {
            out.push("M* = M^-1".into());
        } else if ms == -&inv {
            out.push("M* = -M^-1".into());
        } else {
            out.push("M* is not ±M^-1".into());
        }
    }
    if bar(m) == *m {
        out.push("entries of M are fixed by t -> 1/t, z -> 1/z".into());
    }
    out
}

/// Runs every matrix-level identity on `bd` and records the outcome of each.
pub fn verify_bott_suite(bd: &BottData) -> BottReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(BottCheck {
            name: name.into(),
            passed,
            detail,
        })
    };
    let r = RingSpec::Laurent2;
    let shown = |x: Result<RingElem>| x.map_or_else(|e| e.to_string(), |v| v.to_string());

    let det_u = bd.u.det();
    push("det(u) = z", det_u.as_ref().is_ok_and(|d| *d == RingElem::z()), shown(det_u.clone()));
    let inverse = bd.u.inverse();
    let inv_ok = inverse
        .as_ref()
        .is_ok_and(|ui| (&bd.u * ui).is_identity() && (ui * &bd.u).is_identity());
    push("u invertible", inv_ok, "u u^-1 = u^-1 u = I".into());
    push(
        "p = u p0 u^-1",
        &bd.p * &bd.u == &bd.u * &bd.p0,
        "checked as p u = u p0".into(),
    );
    push("p^2 = p", &bd.p * &bd.p == bd.p, bd.p.to_string());
    let entries = [bd.a.clone(), bd.b.clone(), bd.c.clone(), bd.d.clone()];
    push(
        "entries of p",
        entries == [bd.p.get(0, 0), bd.p.get(0, 1), bd.p.get(1, 0), bd.p.get(1, 1)],
        "a, b, c, d read from p".into(),
    );
    let tr = &bd.a + &bd.d;
    push("a + d = 1", tr.is_one(), tr.to_string());
    let det_m = bd.m.det();
    push(
        "det(M) is a unit",
        det_m.as_ref().is_ok_and(RingElem::is_unit),
        shown(det_m.clone()),
    );

    let z1 = Assignment {
        t: None,
        z: Some(RingElem::one(&r)),
    };
    let p_z1 = substitute(&bd.p, &z1);
    push(
        "z := 1 gives p = p0",
        p_z1.as_ref().is_ok_and(|p| *p == bd.p0),
        p_z1.as_ref().map_or_else(|e| e.to_string(), ToString::to_string),
    );
    let std = InvMatrix::from_ints(&r, &[vec![0, 1], vec![-1, 0]]).expect("2x2");
    let m_z1 = specialize(bd, &z1);
    push(
        "z := 1 gives M = [[0, 1], [-1, 0]]",
        m_z1.as_ref().is_ok_and(|m| *m == std),
        m_z1.as_ref().map_or_else(|e| e.to_string(), ToString::to_string),
    );
    let t1 = Assignment {
        t: Some(RingElem::one(&r)),
        z: None,
    };
    let m_t1 = specialize(bd, &t1);
    let expect_t1 = InvMatrix::from_rows(
        &r,
        vec![vec![int(0), int(1)], vec![int(-1), -&bd.c]],
    )
    .expect("2x2");
    push(
        "t := 1 gives M = [[0, 1], [-1, -c]]",
        m_t1.as_ref().is_ok_and(|m| *m == expect_t1),
        m_t1.as_ref().map_or_else(|e| e.to_string(), ToString::to_string),
    );
    let det_t1 = m_t1.and_then(|m| m.det());
    push("t := 1 gives det(M) = 1", det_t1.as_ref().is_ok_and(RingElem::is_one), shown(det_t1));
    let dy = RingSpec::Dyadic;
    let both = Assignment {
        t: Some(RingElem::one(&dy)),
        z: Some(RingElem::one(&dy)),
    };
    let m_both = specialize(bd, &both);
    let std_dy = InvMatrix::from_ints(&dy, &[vec![0, 1], vec![-1, 0]]).expect("2x2");
    push(
        "t, z := 1 in Z[1/2] gives [[0, 1], [-1, 0]]",
        m_both.as_ref().is_ok_and(|m| *m == std_dy),
        m_both.as_ref().map_or_else(|e| e.to_string(), ToString::to_string),
    );
    let same = specialize(bd, &Assignment::default());
    push(
        "empty substitution leaves M unchanged",
        same.as_ref().is_ok_and(|m| *m == bd.m),
        String::new(),
    );

    let mut observed: Vec<String> = [("a", &bd.a), ("b", &bd.b), ("c", &bd.c), ("d", &bd.d)]
        .iter()
        .map(|(n, x)| conj_relation(n, x))
        .collect();
    if let Ok(d) = &det_m {
        observed.push(format!("det(M) = {d}"));
    }
    observed.extend(matrix_relations(&bd.m));
    BottReport { checks, observed }
}

/// `M` entrywise, both as exact payloads and as readable strings.
pub fn export(bd: &BottData) -> Json {
    let named = |m: &InvMatrix| -> Json {
        m.to_rows()
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect()
    };
    json!({
        "ring": RingSpec::Laurent2.tag(),
        "lambda": "1/2",
        "M": bd.m.to_json(),
        "M_display": named(&bd.m),
        "p": bd.p.to_json(),
        "p_display": named(&bd.p),
        "u": bd.u.to_json(),
        "u_display": named(&bd.u),
    })
}
