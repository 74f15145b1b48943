//! Lifting self-adjoint involutions and unitaries along `B[x]/(x^k) -> B`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ring::{InvMatrix, RingElem, RingSpec};

/// Keeps the constant coefficient of every entry.
pub fn reduce_mod_i(m: &InvMatrix) -> Result<InvMatrix> {
    let (base, _) = m
        .ring()
        .nil_base()
        .ok_or_else(|| Error::InvalidRing(format!("{} is not a truncated ring", m.ring())))?;
    let base = base.clone();
    m.map_entries(&base, |e| Ok(e.nil_coeffs().expect("truncated entry")[0].clone()))
}

/// Base-ring matrix viewed in `B[x]/(x^k)`.
pub fn embed(m: &InvMatrix, target: &RingSpec) -> Result<InvMatrix> {
    m.map_entries(target, |e| RingElem::from_nil_coeffs(target, std::slice::from_ref(e)))
}

/// `J` with `J² = I` and `J* = J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfAdjInvolution {
    j: InvMatrix,
}

impl SelfAdjInvolution {
    pub fn new(j: InvMatrix) -> Result<Self> {
        if !j.is_square() {
            return Err(Error::Dimension("involution must be square".into()));
        }
        if !(&j * &j).is_identity() {
            return Err(Error::NotInvolution("J² ≠ I".into()));
        }
        if !j.is_self_adjoint() {
            return Err(Error::NotInvolution("J* ≠ J".into()));
        }
        Ok(SelfAdjInvolution { j })
    }

    pub fn matrix(&self) -> &InvMatrix {
        &self.j
    }

    pub fn ring(&self) -> &RingSpec {
        self.j.ring()
    }

    pub fn reduce(&self) -> Result<SelfAdjInvolution> {
        SelfAdjInvolution::new(reduce_mod_i(&self.j)?)
    }
}

/// Intermediate values of [`lift_involution`].
#[derive(Clone, Debug)]
pub struct InvolutionLift {
    pub eta: InvMatrix,
    pub s: InvMatrix,
    pub gamma: InvMatrix,
    pub u: InvMatrix,
    pub lifted: SelfAdjInvolution,
}

fn half(m: &InvMatrix) -> Result<InvMatrix> {
    m.scale_frac(1, 2)
}

/// `SU` with `S = R + η/2`, `η = R* - R` and `U = (S²)^(-1/2)`.
pub fn lift_involution_steps(jbar: &SelfAdjInvolution, r: &InvMatrix) -> Result<InvolutionLift> {
    let reduced = reduce_mod_i(r)?;
    if reduced != *jbar.matrix() {
        return Err(Error::NotALift);
    }
    let n = r.rows();
    let id = InvMatrix::identity(r.ring(), n);
    let eta = &r.conj_transpose() - r;
    let s = r + &half(&eta)?;
    let gamma = &(&s * &s) - &id;
    let u = gamma.inv_sqrt_one_plus()?;
    let su = &s * &u;
    assert!(s.is_self_adjoint(), "S is self-adjoint");
    assert_eq!(&gamma * &s, &s * &gamma, "γ commutes with S");
    let lifted = SelfAdjInvolution::new(su).expect("SU is a self-adjoint involution");
    assert_eq!(reduce_mod_i(lifted.matrix())?, *jbar.matrix(), "SU lifts J̄");
    Ok(InvolutionLift {
        eta,
        s,
        gamma,
        u,
        lifted,
    })
}

pub fn lift_involution(jbar: &SelfAdjInvolution, r: &InvMatrix) -> Result<SelfAdjInvolution> {
    Ok(lift_involution_steps(jbar, r)?.lifted)
}

/// `P = (I - J)/2`, self-adjoint and idempotent.
pub fn associated_projection(j: &SelfAdjInvolution) -> InvMatrix {
    let id = InvMatrix::identity(j.ring(), j.matrix().rows());
    let p = half(&(&id - j.matrix())).expect("2 is invertible");
    debug_assert_eq!(&p * &p, p);
    p
}

fn is_unitary(m: &InvMatrix) -> bool {
    (m * &m.conj_transpose()).is_identity()
}

/// `γ = β (β*β)^(-1/2)`: unitary and congruent to `β` modulo the ideal.
pub fn lift_unitary(alpha: &InvMatrix, beta: &InvMatrix) -> Result<InvMatrix> {
    if !alpha.is_square() || !is_unitary(alpha) {
        return Err(Error::NotUnitaryMod);
    }
    if reduce_mod_i(beta)? != *alpha {
        return Err(Error::NotALift);
    }
    let id = InvMatrix::identity(beta.ring(), beta.rows());
    let g = &(&beta.conj_transpose() * beta) - &id;
    let gamma = beta * &g.inv_sqrt_one_plus()?;
    assert!(is_unitary(&gamma), "polar factor is unitary");
    Ok(gamma)
}

/// `δ' = δ (δδ*)^(-1/2)` with `δ = (I + J₂J₁)/2`; unitary, `≡ I` modulo the
/// ideal, and `δ' J₁ δ'^-1 = J₂`.
pub fn conjugating_unitary(j1: &SelfAdjInvolution, j2: &SelfAdjInvolution) -> Result<InvMatrix> {
    if j1.ring() != j2.ring() {
        return Err(Error::SpecMismatch {
            left: j1.ring().tag(),
            right: j2.ring().tag(),
        });
    }
    if j1.matrix().rows() != j2.matrix().rows() {
        return Err(Error::Dimension("involutions of different size".into()));
    }
    if reduce_mod_i(j1.matrix())? != reduce_mod_i(j2.matrix())? {
        return Err(Error::NotCongruent);
    }
    let (a, b) = (j1.matrix(), j2.matrix());
    let id = InvMatrix::identity(a.ring(), a.rows());
    let delta = half(&(&id + &(b * a)))?;
    assert_eq!(&delta * a, b * &delta, "δ J₁ = J₂ δ");
    let dd = &delta * &delta.conj_transpose();
    assert_eq!(&dd * a, a * &dd, "δδ* commutes with J₁");
    let w = (&dd - &id).inv_sqrt_one_plus()?;
    let out = &delta * &w;
    assert!(is_unitary(&out), "δ' is unitary");
    assert_eq!(&(&out * a) * &out.conj_transpose(), *b, "δ' conjugates J₁ to J₂");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemoReport {
    pub base: RingSpec,
    pub k: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub surjectivity_passed: usize,
    pub injectivity_passed: usize,
}

impl DemoReport {
    pub fn all_passed(&self) -> bool {
        self.surjectivity_passed == self.trials && self.injectivity_passed == self.trials
    }

    pub fn to_json(&self) -> Json {
        json!({
            "base": self.base.tag(),
            "k": self.k,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "surjectivity": {"passed": self.surjectivity_passed, "total": self.trials},
            "injectivity": {"passed": self.injectivity_passed, "total": self.trials},
            "all_passed": self.all_passed(),
            "projection_convention": "P = (I - J)/2",
        })
    }
}

pub const MAX_N: usize = 8;
pub const MAX_K: usize = 6;

fn small(rng: &mut ChaCha8Rng, base: &RingSpec) -> RingElem {
    match base {
        RingSpec::PrimeField(p) => RingElem::from_int(base, rng.gen_range(0..*p as i64)),
        _ => RingElem::from_int(base, rng.gen_range(-3..=3)),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, base: &RingSpec, n: usize) -> InvMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| small(rng, base)).collect()).collect();
    InvMatrix::from_rows(base, rows).expect("square")
}

/// `I - 2vvᵀ/(vᵀv)`, a symmetric orthogonal reflection.
fn reflection(rng: &mut ChaCha8Rng, base: &RingSpec, n: usize) -> InvMatrix {
    loop {
        let v: Vec<RingElem> = (0..n).map(|_| small(rng, base)).collect();
        let norm = v.iter().fold(RingElem::zero(base), |acc, x| &acc + &(x * x));
        if norm.is_zero() {
            continue;
        }
        let c = &RingElem::from_int(base, 2) * &norm.inv().expect("field");
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let delta = RingElem::from_int(base, i64::from(i == j));
                        &delta - &(&c * &(&v[i] * &v[j]))
                    })
                    .collect()
            })
            .collect();
        return InvMatrix::from_rows(base, rows).expect("square");
    }
}

/// `O diag(±1) Oᵀ` for a product of two random reflections `O`.
fn random_involution(rng: &mut ChaCha8Rng, base: &RingSpec, n: usize) -> SelfAdjInvolution {
    let o = &reflection(rng, base, n) * &reflection(rng, base, n);
    let signs: Vec<RingElem> = (0..n)
        .map(|_| RingElem::from_int(base, if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    let d = InvMatrix::diagonal(base, &signs).expect("diagonal");
    SelfAdjInvolution::new(&(&o * &d) * &o.transpose()).expect("conjugate of a sign matrix")
}

/// `m` plus a random element of `x·M_n(B[x]/(x^k))`.
fn perturb(rng: &mut ChaCha8Rng, m: &InvMatrix, spec: &RingSpec) -> InvMatrix {
    let (base, k) = spec.nil_base().expect("truncated");
    let base = base.clone();
    let mut out = embed(m, spec).expect("embedding");
    let x = RingElem::nil_x(spec).expect("truncated");
    let mut xp = x.clone();
    for _ in 1..k {
        let noise = embed(&random_matrix(rng, &base, m.rows()), spec).expect("embedding");
        out = &out + &noise.scale(&xp).expect("same ring");
        xp = &xp * &x;
    }
    out
}

fn surjective_ok(jbar: &SelfAdjInvolution, r: &InvMatrix) -> Option<SelfAdjInvolution> {
    let lifted = lift_involution(jbar, r).ok()?;
    let m = lifted.matrix();
    let ok = (m * m).is_identity() && m.is_self_adjoint() && reduce_mod_i(m).ok()? == *jbar.matrix();
    ok.then_some(lifted)
}

fn injective_ok(j1: &SelfAdjInvolution, j2: &SelfAdjInvolution) -> bool {
    let Ok(d) = conjugating_unitary(j1, j2) else {
        return false;
    };
    let reduced_identity = reduce_mod_i(&d).is_ok_and(|m| m.is_identity());
    is_unitary(&d) && &(&d * j1.matrix()) * &d.conj_transpose() == *j2.matrix() && reduced_identity
}

/// One surjectivity and one injectivity check with a per-trial seed.
fn trial(base: &RingSpec, spec: &RingSpec, n: usize, seed: u64, i: usize) -> (bool, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    let jbar = random_involution(&mut rng, base, n);
    let r1 = perturb(&mut rng, jbar.matrix(), spec);
    let Some(j1) = surjective_ok(&jbar, &r1) else {
        return (false, false);
    };
    // a second lift from another R, then conjugated by a unitary ≡ I
    let r2 = perturb(&mut rng, jbar.matrix(), spec);
    let Ok(j2) = lift_involution(&jbar, &r2) else {
        return (true, false);
    };
    let id = InvMatrix::identity(base, n);
    let beta = perturb(&mut rng, &id, spec);
    let Ok(nu) = lift_unitary(&id, &beta) else {
        return (true, false);
    };
    let j2 = SelfAdjInvolution::new(&(&nu * j2.matrix()) * &nu.conj_transpose());
    let inj = j2.is_ok_and(|j2| injective_ok(&j1, &j2));
    (true, inj)
}

/// Random lifts and conjugators over `B[x]/(x^k)`, `n × n`, with trial `i`
/// seeded from `(seed, i)`.
pub fn roundtrip_isomorphism_demo(base: &RingSpec, k: usize, n: usize, trials: usize, seed: u64) -> Result<DemoReport> {
    if !matches!(base, RingSpec::Rationals | RingSpec::PrimeField(_)) {
        return Err(Error::Unsupported {
            ring: base.tag(),
            reason: "the lifting demo runs over Q or F_p".into(),
        });
    }
    if n == 0 || n > MAX_N || k == 0 || k > MAX_K {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= n <= {MAX_N} and 1 <= k <= {MAX_K}, got n = {n}, k = {k}"
        )));
    }
    let spec = RingSpec::trunc_nil(base.clone(), k)?;
    let results: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| trial(base, &spec, n, seed, i))
        .collect();
    Ok(DemoReport {
        base: base.clone(),
        k,
        n,
        trials,
        seed,
        surjectivity_passed: results.iter().filter(|r| r.0).count(),
        injectivity_passed: results.iter().filter(|r| r.1).count(),
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn tq(k: usize) -> RingSpec {
        RingSpec::trunc_nil(RingSpec::Rationals, k).unwrap()
    }

    fn poly(spec: &RingSpec, cs: &[i64]) -> RingElem {
        let (base, _) = spec.nil_base().unwrap();
        let cs: Vec<RingElem> = cs.iter().map(|&c| RingElem::from_int(base, c)).collect();
        RingElem::from_nil_coeffs(spec, &cs).unwrap()
    }

    fn one_by_one(spec: &RingSpec, cs: &[i64]) -> InvMatrix {
        InvMatrix::from_rows(spec, vec![vec![poly(spec, cs)]]).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let s = tq(3);
        let m = InvMatrix::from_rows(&s, vec![vec![poly(&s, &[1, 2]), poly(&s, &[0, 0, 5])], vec![poly(&s, &[0, 1]), poly(&s, &[1, 0, 1])]]).unwrap();
        assert!(reduce_mod_i(&m).unwrap().is_identity());
        assert_eq!(reduce_mod_i(&InvMatrix::identity(&RingSpec::Rationals, 2)).unwrap_err().kind(), "InvalidRing");
    }

    #[test]
    fn lift_of_one_plus_cx() {
        let s = tq(2);
        let jbar = SelfAdjInvolution::new(InvMatrix::identity(&RingSpec::Rationals, 1)).unwrap();
        let steps = lift_involution_steps(&jbar, &one_by_one(&s, &[1, 3])).unwrap();
        assert!(steps.eta.is_zero());
        assert_eq!(steps.s, one_by_one(&s, &[1, 3]));
        assert_eq!(steps.gamma, one_by_one(&s, &[0, 6]));
        assert_eq!(steps.u, one_by_one(&s, &[1, -3]));
        assert!(steps.lifted.matrix().is_identity());
    }

    #[test]
    fn fixed_points_and_errors() {
        let s = tq(3);
        let jbar = SelfAdjInvolution::new(InvMatrix::from_ints(&RingSpec::Rationals, &[vec![0, 1], vec![1, 0]]).unwrap()).unwrap();
        let r = embed(jbar.matrix(), &s).unwrap();
        let steps = lift_involution_steps(&jbar, &r).unwrap();
        assert!(steps.eta.is_zero() && steps.gamma.is_zero() && steps.u.is_identity());
        assert_eq!(steps.lifted.matrix(), &r);
        let wrong = embed(&InvMatrix::identity(&RingSpec::Rationals, 2), &s).unwrap();
        assert_eq!(lift_involution(&jbar, &wrong).unwrap_err().kind(), "NotALift");
        let bad = InvMatrix::from_ints(&RingSpec::Rationals, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(SelfAdjInvolution::new(bad).unwrap_err().kind(), "NotInvolution");
    }

    #[test]
    fn projections() {
        let q = RingSpec::Rationals;
        let p = |rows: &[Vec<i64>]| associated_projection(&SelfAdjInvolution::new(InvMatrix::from_ints(&q, rows).unwrap()).unwrap());
        assert!(p(&[vec![1, 0], vec![0, 1]]).is_zero());
        assert!(p(&[vec![-1, 0], vec![0, -1]]).is_identity());
        assert_eq!(p(&[vec![1, 0], vec![0, -1]]), InvMatrix::from_ints(&q, &[vec![0, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn unitary_examples() {
        let s = tq(2);
        let one = InvMatrix::identity(&RingSpec::Rationals, 1);
        assert!(lift_unitary(&one, &one_by_one(&s, &[1, 1])).unwrap().is_identity());
        let sigma = InvMatrix::from_ints(&RingSpec::Rationals, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let beta = embed(&sigma, &s).unwrap();
        assert_eq!(lift_unitary(&sigma, &beta).unwrap(), beta);
        let not_unitary = InvMatrix::from_ints(&RingSpec::Rationals, &[vec![2]]).unwrap();
        assert_eq!(lift_unitary(&not_unitary, &one_by_one(&s, &[2])).unwrap_err().kind(), "NotUnitaryMod");
        assert_eq!(lift_unitary(&one, &one_by_one(&s, &[-1])).unwrap_err().kind(), "NotALift");
    }

    #[test]
    fn polar_factor_order_matters() {
        // β (ββ*)^(-1/2) is not unitary here, β (β*β)^(-1/2) is
        let s = tq(3);
        let q = RingSpec::Rationals;
        let id = embed(&InvMatrix::identity(&q, 2), &s).unwrap();
        let x = RingElem::nil_x(&s).unwrap();
        let n = embed(&InvMatrix::from_ints(&q, &[vec![0, 1], vec![0, 0]]).unwrap(), &s).unwrap();
        let beta = &id + &n.scale(&x).unwrap();
        let wrong = &beta * &(&(&beta * &beta.conj_transpose()) - &id).inv_sqrt_one_plus().unwrap();
        assert!(!is_unitary(&wrong));
        assert!(is_unitary(&lift_unitary(&InvMatrix::identity(&q, 2), &beta).unwrap()));
    }

    #[test]
    fn conjugator_examples() {
        let s = tq(2);
        let j = SelfAdjInvolution::new(one_by_one(&s, &[1])).unwrap();
        assert!(conjugating_unitary(&j, &j).unwrap().is_identity());
        let other = SelfAdjInvolution::new(one_by_one(&s, &[-1])).unwrap();
        assert_eq!(conjugating_unitary(&j, &other).unwrap_err().kind(), "NotCongruent");
    }

    #[test]
    fn printed_delta_order_fails() {
        // (1 + J₁J₂)/2 does not intertwine in general; (1 + J₂J₁)/2 does
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let base = RingSpec::prime_field(5).unwrap();
        let spec = RingSpec::trunc_nil(base.clone(), 3).unwrap();
        let mut seen_failure = false;
        for _ in 0..20 {
            let jbar = random_involution(&mut rng, &base, 3);
            let a = lift_involution(&jbar, &perturb(&mut rng, jbar.matrix(), &spec)).unwrap();
            let b = lift_involution(&jbar, &perturb(&mut rng, jbar.matrix(), &spec)).unwrap();
            let (a, b) = (a.matrix(), b.matrix());
            let id = InvMatrix::identity(&spec, 3);
            let printed = half(&(&id + &(a * b))).unwrap();
            seen_failure |= &printed * a != b * &printed;
            let used = half(&(&id + &(b * a))).unwrap();
            assert_eq!(&used * a, b * &used);
        }
        assert!(seen_failure);
    }

    #[test]
    fn demo_small() {
        for (base, k, n) in [(RingSpec::Rationals, 2, 2), (RingSpec::prime_field(5).unwrap(), 4, 4), (RingSpec::Rationals, 1, 3)] {
            let rep = roundtrip_isomorphism_demo(&base, k, n, 20, 1).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_json());
        }
        assert_eq!(roundtrip_isomorphism_demo(&RingSpec::Rationals, 7, 2, 1, 0).unwrap_err().kind(), "InvalidParameter");
        assert_eq!(roundtrip_isomorphism_demo(&RingSpec::Dyadic, 2, 2, 1, 0).unwrap_err().kind(), "Unsupported");
        let a = roundtrip_isomorphism_demo(&RingSpec::Rationals, 3, 3, 8, 42).unwrap();
        let b = roundtrip_isomorphism_demo(&RingSpec::Rationals, 3, 3, 8, 42).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn lifted_involutions_f5(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = RingSpec::prime_field(5).unwrap();
            let spec = RingSpec::trunc_nil(base.clone(), 4).unwrap();
            let jbar = random_involution(&mut rng, &base, 4);
            let r = perturb(&mut rng, jbar.matrix(), &spec);
            let out = lift_involution(&jbar, &r).unwrap();
            prop_assert!((out.matrix() * out.matrix()).is_identity());
            prop_assert!(out.matrix().is_self_adjoint());
            prop_assert_eq!(&reduce_mod_i(out.matrix()).unwrap(), jbar.matrix());
            prop_assert_eq!(&out.reduce().unwrap(), &jbar);
        }

        #[test]
        fn unitary_lift_f7(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = RingSpec::prime_field(7).unwrap();
            let spec = RingSpec::trunc_nil(base.clone(), 3).unwrap();
            let alpha = &reflection(&mut rng, &base, 3) * &reflection(&mut rng, &base, 3);
            let beta = perturb(&mut rng, &alpha, &spec);
            let g = lift_unitary(&alpha, &beta).unwrap();
            prop_assert!(is_unitary(&g));
            prop_assert_eq!(&reduce_mod_i(&g).unwrap(), &alpha);
        }

        #[test]
        fn conjugators_f5(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = RingSpec::prime_field(5).unwrap();
            let spec = RingSpec::trunc_nil(base.clone(), 3).unwrap();
            let jbar = random_involution(&mut rng, &base, 4);
            let j1 = lift_involution(&jbar, &perturb(&mut rng, jbar.matrix(), &spec)).unwrap();
            let id = InvMatrix::identity(&base, 4);
            let nu = lift_unitary(&id, &perturb(&mut rng, &id, &spec)).unwrap();
            let j2 = SelfAdjInvolution::new(&(&nu * j1.matrix()) * &nu.conj_transpose()).unwrap();
            let d = conjugating_unitary(&j1, &j2).unwrap();
            prop_assert!(is_unitary(&d));
            prop_assert_eq!(&(&(&d * j1.matrix()) * &d.conj_transpose()), j2.matrix());
        }

        #[test]
        fn reduction_is_a_homomorphism(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = RingSpec::Rationals;
            let spec = tq(3);
            let (ma, mb) = (random_matrix(&mut rng, &base, 3), random_matrix(&mut rng, &base, 3));
            let (a, b) = (perturb(&mut rng, &ma, &spec), perturb(&mut rng, &mb, &spec));
            prop_assert_eq!(reduce_mod_i(&(&a * &b)).unwrap(), &reduce_mod_i(&a).unwrap() * &reduce_mod_i(&b).unwrap());
            prop_assert_eq!(reduce_mod_i(&a.conj_transpose()).unwrap(), reduce_mod_i(&a).unwrap().conj_transpose());
        }

        #[test]
        fn lift_independent_of_choice(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = RingSpec::Rationals;
            let spec = tq(3);
            let jbar = random_involution(&mut rng, &base, 3);
            let a = lift_involution(&jbar, &perturb(&mut rng, jbar.matrix(), &spec)).unwrap();
            let b = lift_involution(&jbar, &perturb(&mut rng, jbar.matrix(), &spec)).unwrap();
            let d = conjugating_unitary(&a, &b).unwrap();
            prop_assert!(reduce_mod_i(&d).unwrap().is_identity());
        }
    }
}
