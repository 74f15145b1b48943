//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints one PASS or FAIL line; exits nonzero if any fails.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wittstab_core::bott::{build_bott, verify_bott_suite};
use wittstab_core::forms::{isotropy_oracle, orth_sum, symplectic_basis, witt_decompose, GramForm};
use wittstab_core::invariants::{hilbert_symbol, relevant_places, witt_class, witt_equiv, witt_ring_table};
use wittstab_core::lift::roundtrip_isomorphism_demo;
use wittstab_core::stab::{
    catalog_lookup, catalog_map, colimit, exactness_check, shift_invariance_check, CatalogKey, FgAbGroup, GroupHom,
    GroupSeq, IntMatrix,
};
use wittstab_core::{InvMatrix, RingElem, RingSpec};

type Outcome = Result<String, String>;

/// `(name, time limit in seconds, check)`.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// 1
fn dyadic_witt_ring() -> Outcome {
    let r = RingSpec::Dyadic;
    let t = ok(witt_ring_table(&r, &[]))?;
    ensure(t.group.free_rank() == 1, "free rank is not 1")?;
    ensure(t.group.torsion() == [BigInt::from(2)], format!("torsion {:?}", t.group.torsion()))?;
    let one = ok(GramForm::diag_ints(&r, &[1]))?;
    let two = ok(GramForm::diag_ints(&r, &[2]))?;
    let free = ok(witt_class(&one))?;
    let tors = ok(witt_class(&ok(orth_sum(&one, &two.negated()))?))?;
    let free_gen = t.basis.iter().find(|b| b.order.is_none()).ok_or("no free generator")?;
    let tors_gen = t.basis.iter().find(|b| b.order == Some(BigInt::from(2))).ok_or("no 2-torsion generator")?;
    ensure(free_gen.class == free, format!("free generator is {}", free_gen.label))?;
    ensure(tors_gen.class == tors, format!("torsion generator is {}", tors_gen.label))?;
    ensure(!tors.is_zero(), "<1> - <2> is zero")?;
    let f = ok(GramForm::diag_ints(&r, &[1, 1, -2, -2]))?;
    let v = ok(isotropy_oracle(&f, 4))?.ok_or("no isotropic vector in <1,1,-2,-2>")?;
    ensure(v.iter().any(|x| !x.is_zero()) && f.value(&v).is_zero(), "witness is not isotropic")?;
    let spec: Vec<RingElem> = [1, 1, 0, 1].iter().map(|&x| RingElem::from_int(&r, x)).collect();
    ensure(f.value(&spec).is_zero(), "(1,1,0,1) is not isotropic")?;
    let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    Ok(format!("Z+Z/2 with <1> and <1>-<2>; isotropic vector ({})", shown.join(",")))
}

// 2
fn bott_suite() -> Outcome {
    let report = verify_bott_suite(&build_bott());
    let required = [
        "det(u) = z",
        "p^2 = p",
        "a + d = 1",
        "det(M) is a unit",
        "z := 1 gives M = [[0, 1], [-1, 0]]",
        "t := 1 gives det(M) = 1",
    ];
    for name in required {
        let c = report.check(name).ok_or(format!("missing check {name:?}"))?;
        ensure(c.passed, format!("{name}: {}", c.detail))?;
    }
    ensure(report.all_passed(), "a secondary identity failed")?;
    Ok(format!("{} identities hold", report.checks.len()))
}

// 3
fn localization_at_two() -> Outcome {
    let entry = ok(catalog_lookup(&CatalogKey::new("Wtop", -8, "reals", 1)))?;
    ensure(entry.group.free_rank() == 1 && entry.group.torsion().is_empty(), "catalogued group is not Z")?;
    let m = ok(catalog_map("bott4-top"))?;
    ensure(m.map.matrix().to_rows() == vec![vec![BigInt::from(8)]], "catalogued map is not x8")?;
    let c = colimit(&ok(GroupSeq::periodic(m.map))?);
    ensure(c.rank == 1 && c.inverted_primes == [2] && c.torsion.is_empty(), format!("got {c:?}"))?;
    Ok("colim(Z, x8) = Z[1/2]".into())
}

#[derive(Clone)]
struct Shape {
    rank: usize,
    orders: Vec<i64>,
}

impl Shape {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        loop {
            let rank = rng.gen_range(0..3);
            let orders: Vec<i64> = (0..rng.gen_range(0..3)).map(|_| [2, 3, 4, 6, 8][rng.gen_range(0..5)]).collect();
            if rank + orders.len() > 0 {
                return Shape { rank, orders };
            }
        }
    }

    fn group(&self) -> FgAbGroup {
        let o: Vec<BigInt> = self.orders.iter().map(|&d| d.into()).collect();
        FgAbGroup::from_orders(self.rank, &o).unwrap()
    }

    fn order(&self, i: usize) -> Option<i64> {
        (i >= self.rank).then(|| self.orders[i - self.rank])
    }

    fn ngens(&self) -> usize {
        self.rank + self.orders.len()
    }
}

/// A random homomorphism; entries are adjusted so the map is well defined.
fn random_hom(rng: &mut ChaCha8Rng, src: &Shape, dst: &Shape) -> GroupHom {
    let rows: Vec<Vec<i64>> = (0..dst.ngens())
        .map(|i| {
            (0..src.ngens())
                .map(|j| {
                    let x = rng.gen_range(-4..5);
                    match (src.order(j), dst.order(i)) {
                        (Some(_), None) => 0,
                        (Some(d), Some(e)) => x * (e / d.gcd(&e)),
                        _ => x,
                    }
                })
                .collect()
        })
        .collect();
    GroupHom::new(src.group(), dst.group(), IntMatrix::from_rows(&rows)).unwrap()
}

// 4
fn shift_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for s in 0..50 {
        let mut shapes: Vec<Shape> = (0..rng.gen_range(0..3)).map(|_| Shape::random(&mut rng)).collect();
        let split = shapes.len();
        let cycle_len = rng.gen_range(1..4);
        shapes.extend((0..cycle_len).map(|_| Shape::random(&mut rng)));
        shapes.push(shapes[split].clone());
        let maps: Vec<GroupHom> = shapes.windows(2).map(|w| random_hom(&mut rng, &w[0], &w[1])).collect();
        let seq = ok(GroupSeq::new(maps[..split].to_vec(), maps[split..].to_vec()))?;
        let base = colimit(&seq);
        for k in 1..=4 {
            ensure(colimit(&seq.shift(k)) == base, format!("sequence {s}: shift by {k} changes the colimit"))?;
            ensure(shift_invariance_check(&seq, k), format!("sequence {s}: shift check {k} failed"))?;
        }
    }
    Ok("50 sequences, k = 1..4".into())
}

fn hom(src: &FgAbGroup, dst: &FgAbGroup, rows: &[Vec<i64>]) -> GroupHom {
    GroupHom::new(src.clone(), dst.clone(), IntMatrix::from_rows(rows)).unwrap()
}

/// `(chain, expected failing nodes)`.
fn hand_chains() -> Vec<(&'static str, Vec<GroupHom>, Vec<usize>)> {
    let o = FgAbGroup::trivial();
    let z = FgAbGroup::free(1);
    let z2 = FgAbGroup::free(2);
    let c = FgAbGroup::cyclic;
    let zz2 = FgAbGroup::from_orders(1, &[BigInt::from(2)]).unwrap();
    let c2c2 = FgAbGroup::from_orders(0, &[BigInt::from(2), BigInt::from(2)]).unwrap();
    vec![
        // exact
        ("0 > Z > Z > Z/2 > 0", vec![GroupHom::zero(&o, &z), hom(&z, &z, &[vec![2]]), hom(&z, &c(2), &[vec![1]]), GroupHom::zero(&c(2), &o)], vec![]),
        ("0 > Z/2 > Z/4 > Z/2 > 0", vec![GroupHom::zero(&o, &c(2)), hom(&c(2), &c(4), &[vec![2]]), hom(&c(4), &c(2), &[vec![1]]), GroupHom::zero(&c(2), &o)], vec![]),
        ("0 > Z > Z^2 > Z > 0", vec![GroupHom::zero(&o, &z), hom(&z, &z2, &[vec![1], vec![0]]), hom(&z2, &z, &[vec![0, 1]]), GroupHom::zero(&z, &o)], vec![]),
        ("0 > Z > Z > Z/3 > 0", vec![GroupHom::zero(&o, &z), hom(&z, &z, &[vec![3]]), hom(&z, &c(3), &[vec![1]]), GroupHom::zero(&c(3), &o)], vec![]),
        ("Z > Z > Z > Z", vec![hom(&z, &z, &[vec![0]]), hom(&z, &z, &[vec![1]]), hom(&z, &z, &[vec![0]])], vec![]),
        ("0 > Z/2 > Z/2+Z/2 > Z/2 > 0", vec![GroupHom::zero(&o, &c(2)), hom(&c(2), &c2c2, &[vec![1], vec![0]]), hom(&c2c2, &c(2), &[vec![0, 1]]), GroupHom::zero(&c(2), &o)], vec![]),
        ("0 > Z > Z+Z/2 > Z/2+Z/2 > 0", vec![GroupHom::zero(&o, &z), hom(&z, &zz2, &[vec![2], vec![0]]), hom(&zz2, &c2c2, &[vec![1, 0], vec![0, 1]]), GroupHom::zero(&c2c2, &o)], vec![]),
        ("0 > Z/3 > Z/6 > Z/2 > 0", vec![GroupHom::zero(&o, &c(3)), hom(&c(3), &c(6), &[vec![2]]), hom(&c(6), &c(2), &[vec![1]]), GroupHom::zero(&c(2), &o)], vec![]),
        ("Z/4 > Z/4 > Z/4 > Z/4", vec![hom(&c(4), &c(4), &[vec![2]]), hom(&c(4), &c(4), &[vec![2]]), hom(&c(4), &c(4), &[vec![2]])], vec![]),
        ("Z/2 > Z/4 > Z/4 > Z/2", vec![hom(&c(2), &c(4), &[vec![2]]), hom(&c(4), &c(4), &[vec![2]]), hom(&c(4), &c(2), &[vec![1]])], vec![]),
        // planted failures
        ("0 > Z > Z > Z/4 > 0", vec![GroupHom::zero(&o, &z), hom(&z, &z, &[vec![2]]), hom(&z, &c(4), &[vec![1]]), GroupHom::zero(&c(4), &o)], vec![2]),
        ("0 > Z > Z > 0", vec![GroupHom::zero(&o, &z), hom(&z, &z, &[vec![2]]), GroupHom::zero(&z, &o)], vec![2]),
        ("0 > Z/2 > Z/4 > 0", vec![GroupHom::zero(&o, &c(2)), hom(&c(2), &c(4), &[vec![2]]), GroupHom::zero(&c(4), &o)], vec![2]),
        ("0 > Z > Z^2 > Z > 0 (not injective)", vec![GroupHom::zero(&o, &z), hom(&z, &z2, &[vec![0], vec![0]]), hom(&z2, &z, &[vec![0, 1]]), GroupHom::zero(&z, &o)], vec![1, 2]),
        ("0 > Z > Z^2 > Z > 0 (not surjective)", vec![GroupHom::zero(&o, &z), hom(&z, &z2, &[vec![1], vec![0]]), hom(&z2, &z, &[vec![0, 2]]), GroupHom::zero(&z, &o)], vec![3]),
        ("Z > Z > Z > Z", vec![hom(&z, &z, &[vec![0]]), hom(&z, &z, &[vec![0]]), hom(&z, &z, &[vec![0]])], vec![1, 2]),
        ("0 > Z/2 > Z/2+Z/2 > Z/2 > 0 (twisted)", vec![GroupHom::zero(&o, &c(2)), hom(&c(2), &c2c2, &[vec![1], vec![1]]), hom(&c2c2, &c(2), &[vec![0, 1]]), GroupHom::zero(&c(2), &o)], vec![2]),
        ("0 > Z/3 > Z/6 > Z/3 > 0", vec![GroupHom::zero(&o, &c(3)), hom(&c(3), &c(6), &[vec![2]]), hom(&c(6), &c(3), &[vec![1]]), GroupHom::zero(&c(3), &o)], vec![2]),
        ("Z/4 > Z/4 > Z/4", vec![hom(&c(4), &c(4), &[vec![2]]), hom(&c(4), &c(4), &[vec![1]])], vec![1]),
        ("0 > Z > Z+Z/2 > Z/2 > 0", vec![GroupHom::zero(&o, &z), hom(&z, &zz2, &[vec![1], vec![1]]), hom(&zz2, &c(2), &[vec![0, 1]]), GroupHom::zero(&c(2), &o)], vec![2]),
    ]
}

// 5
fn exactness_suite() -> Outcome {
    let chains = hand_chains();
    ensure(chains.len() == 20, "suite is not 20 chains")?;
    let exact = chains.iter().filter(|c| c.2.is_empty()).count();
    ensure(exact == 10, format!("{exact} chains are meant to be exact"))?;
    for (name, chain, expected) in &chains {
        let got = ok(exactness_check(chain))?;
        ensure(&got == expected, format!("{name}: failures {got:?}, expected {expected:?}"))?;
    }
    Ok("10 exact, 10 planted failures, located exactly".into())
}

// 6
fn roundtrip_demo() -> Outcome {
    let mut runs: Vec<(RingSpec, usize, usize)> = Vec::new();
    for k in 2..=4 {
        for n in 2..=4 {
            runs.push((RingSpec::Rationals, k, n));
        }
    }
    runs.push((ok(RingSpec::prime_field(5))?, 3, 4));
    for (base, k, n) in &runs {
        let r = ok(roundtrip_isomorphism_demo(base, *k, *n, 100, 0))?;
        ensure(
            r.all_passed(),
            format!(
                "{} k={k} n={n}: surjectivity {}/100, injectivity {}/100",
                base.tag(),
                r.surjectivity_passed,
                r.injectivity_passed
            ),
        )?;
    }
    Ok(format!("{} configurations x 100 trials", runs.len()))
}

fn multisets(values: &[i64], max_len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![(vec![], 0usize)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (m, start) in frontier {
            for (i, &v) in values.iter().enumerate().skip(start) {
                let mut m2: Vec<i64> = m.clone();
                m2.push(v);
                out.push(m2.clone());
                next.push((m2, i));
            }
        }
        frontier = next;
    }
    out
}

/// All pairs of diagonal forms with entries from `values`, compared
/// against splitting `f ⊥ -g` by explicit isotropic vectors.
fn completeness_over(ring: &RingSpec, values: &[i64], normalize: impl Fn(i64) -> i64) -> Result<usize, String> {
    let forms: Vec<(Vec<i64>, GramForm)> = multisets(values, 4)
        .into_iter()
        .map(|m| {
            let f = GramForm::diag_ints(ring, &m).unwrap();
            (m, f)
        })
        .collect();
    let mut oracle: HashMap<Vec<i64>, bool> = HashMap::new();
    let mut pairs = 0;
    for (i, (a, f)) in forms.iter().enumerate() {
        for (b, g) in &forms[i..] {
            let mut key: Vec<i64> = a.iter().copied().chain(b.iter().map(|&x| normalize(-x))).collect();
            key.sort_unstable();
            let split = match oracle.get(&key) {
                Some(&s) => s,
                None => {
                    let s = GramForm::diag_ints(ring, &key).unwrap();
                    let d = ok(witt_decompose(&s, 8))?;
                    ensure(d.certified, format!("oracle inconclusive on {key:?}"))?;
                    let split = d.anisotropic.dim() == 0;
                    oracle.insert(key, split);
                    split
                }
            };
            let eq = ok(witt_equiv(f, g))?;
            ensure(eq == split, format!("{}: {a:?} vs {b:?}: invariants say {eq}, oracle says {split}", ring.tag()))?;
            pairs += 1;
        }
    }
    Ok(pairs)
}

// 7
fn completeness() -> Outcome {
    let mut total = 0;
    for p in [5i64, 7, 11] {
        let ring = ok(RingSpec::prime_field(p as u64))?;
        let values: Vec<i64> = (1..p).collect();
        total += completeness_over(&ring, &values, |x| x.rem_euclid(p))?;
    }
    total += completeness_over(&RingSpec::Dyadic, &[-2, -1, 1, 2], |x| x)?;
    Ok(format!("{total} pairs agree"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-500..=500);
        let d: i64 = rng.gen_range(1..=200);
        if n != 0 {
            return BigRational::new(n.into(), d.into());
        }
    }
}

// 8
fn hilbert_product_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let mut prod = 1i8;
        for v in relevant_places(&[a.clone(), b.clone()]) {
            prod *= ok(hilbert_symbol(&a, &b, v))?;
        }
        ensure(prod == 1, format!("product over places for ({a}, {b}) is {prod}"))?;
    }
    Ok("200 pairs".into())
}

fn standard_symplectic(ring: &RingSpec, n: usize) -> InvMatrix {
    let mut m = InvMatrix::zeros(ring, n, n);
    for i in (0..n).step_by(2) {
        m.set(i, i + 1, RingElem::one(ring)).unwrap();
        m.set(i + 1, i, RingElem::from_int(ring, -1)).unwrap();
    }
    m
}

fn random_skew(rng: &mut ChaCha8Rng, ring: &RingSpec, n: usize) -> GramForm {
    loop {
        let mut m = InvMatrix::zeros(ring, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = RingElem::from_int(ring, rng.gen_range(-5..=5));
                m.set(j, i, -&x).unwrap();
                m.set(i, j, x).unwrap();
            }
        }
        if let Ok(f) = GramForm::new(m, -1) {
            return f;
        }
    }
}

// 9
fn symplectic_triviality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for ring in [ok(RingSpec::prime_field(7))?, RingSpec::Rationals] {
        for t in 0..50 {
            let n = [2, 4, 6][t % 3];
            let f = random_skew(&mut rng, &ring, n);
            let p = ok(symplectic_basis(&f))?;
            ensure(!ok(p.det())?.is_zero(), "basis change is singular")?;
            let g = &(&p.transpose() * f.gram()) * &p;
            ensure(g == standard_symplectic(&ring, n), format!("{} trial {t}: not congruent to the standard form", ring.tag()))?;
        }
    }
    Ok("50 forms each over F_7 and Q".into())
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 9] = [
        ("Witt ring of Z[1/2]", 1, dyadic_witt_ring),
        ("Bott suite", 1, bott_suite),
        ("localization of (Z, x8)", 1, localization_at_two),
        ("shift invariance", 10, shift_invariance),
        ("exactness checker", 5, exactness_suite),
        ("nilpotent round trip", 60, roundtrip_demo),
        ("invariant completeness", 120, completeness),
        ("Hilbert product formula", 5, hilbert_product_formula),
        ("symplectic triviality", 10, symplectic_triviality),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!("{detail}, but over the {limit} s limit")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({:.2} s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
