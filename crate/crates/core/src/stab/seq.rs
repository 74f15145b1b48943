//! Eventually periodic sequences of groups, their direct limits, and
//! exactness of finite chains.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value as Json};

use super::group::{group_name, FgAbGroup, GroupHom};
use super::intmat::{smith_normal_form, IntMatrix};
use crate::arith::{factor, prime_divisors};
use crate::error::{Error, Result};
use crate::ring::{InvMatrix, RingElem, RingSpec};

/// `G_0 -> G_1 -> ... -> H_0 -> H_1 -> ... -> H_{L-1} -> H_0 -> ...`
///
/// The prefix is a finite chain; the period is a cycle of maps repeated
/// forever (a single endomorphism when `L = 1`).
#[derive(Clone, Debug)]
pub struct GroupSeq {
    prefix: Vec<GroupHom>,
    period: Vec<GroupHom>,
}

impl GroupSeq {
    pub fn new(prefix: Vec<GroupHom>, period: Vec<GroupHom>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::IllFormed("empty period".into()));
        }
        check_composable(&prefix)?;
        check_composable(&period)?;
        let start = period[0].source();
        if let Some(last) = prefix.last() {
            if !last.target().same_presentation(start) {
                return Err(Error::IllFormed("prefix does not end at the period group".into()));
            }
        }
        if !period[period.len() - 1].target().same_presentation(start) {
            return Err(Error::IllFormed("period maps do not close up".into()));
        }
        Ok(GroupSeq { prefix, period })
    }

    /// Constant sequence `G -g-> G -g-> ...`.
    pub fn periodic(g: GroupHom) -> Result<Self> {
        Self::new(Vec::new(), vec![g])
    }

    pub fn prefix(&self) -> &[GroupHom] {
        &self.prefix
    }

    pub fn period(&self) -> &[GroupHom] {
        &self.period
    }

    /// Drops the first `k` groups of the sequence.
    pub fn shift(&self, k: usize) -> Self {
        if k <= self.prefix.len() {
            return GroupSeq {
                prefix: self.prefix[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let j = (k - self.prefix.len()) % self.period.len();
        let mut period = self.period[j..].to_vec();
        period.extend_from_slice(&self.period[..j]);
        GroupSeq {
            prefix: Vec::new(),
            period,
        }
    }

    /// The composite of one full period, an endomorphism of its first group.
    pub fn period_endomorphism(&self) -> GroupHom {
        let mut g = self.period[0].clone();
        for h in &self.period[1..] {
            g = h.after(&g).expect("validated at construction");
        }
        g
    }
}

fn check_composable(maps: &[GroupHom]) -> Result<()> {
    for (i, w) in maps.windows(2).enumerate() {
        if !w[0].target().same_presentation(w[1].source()) {
            return Err(Error::IllFormed(format!(
                "map {i} does not compose with map {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// `(Z[1/P])^rank ⊕ torsion`, where `P` is the set of inverted primes.
///
/// Coarse when the free part is not scalar: `diag(2, 3)` gives rank 2 with
/// primes `{2, 3}`, though the limit is `Z[1/2] ⊕ Z[1/3]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimResult {
    pub rank: usize,
    pub inverted_primes: Vec<u64>,
    pub torsion: Vec<BigInt>,
}

impl ColimResult {
    pub fn to_json(&self) -> Json {
        json!({
            "rank": self.rank,
            "inverted_primes": self.inverted_primes,
            "torsion": self.torsion.iter().map(ToString::to_string).map(|s| s.parse::<i64>().map(Json::from).unwrap_or(Json::String(s))).collect::<Vec<_>>(),
        })
    }

    pub fn describe(&self) -> String {
        let base = if self.inverted_primes.is_empty() {
            "Z".to_string()
        } else {
            let ps: Vec<String> = self.inverted_primes.iter().map(|p| format!("1/{p}")).collect();
            format!("Z[{}]", ps.join(","))
        };
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(base),
            r => parts.push(format!("{base}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// Direct limit of an eventually periodic sequence.
pub fn colimit(seq: &GroupSeq) -> ColimResult {
    let g = seq.period_endomorphism();
    let h = g.source();
    let r = h.free_rank();
    let c = g.canonical_matrix();

    // torsion maps to torsion, so the free rows of torsion columns vanish
    debug_assert!((0..r).all(|i| (r..c.cols()).all(|j| c[(i, j)].is_zero())));

    let (rank, inverted_primes) = free_part(&c.select_rows(&(0..r).collect::<Vec<_>>()).select_cols(&(0..r).collect::<Vec<_>>()));
    let tors_idx: Vec<usize> = (r..c.rows()).collect();
    let t = c.select_rows(&tors_idx).select_cols(&tors_idx);
    let torsion = eventual_torsion(h.torsion(), &t);
    ColimResult {
        rank,
        inverted_primes,
        torsion,
    }
}

/// Rank of the eventual image of `a` over Q and the primes dividing the
/// determinant of `a` restricted to it.
fn free_part(a: &IntMatrix) -> (usize, Vec<u64>) {
    let n = a.rows();
    if n == 0 {
        return (0, Vec::new());
    }
    let q = RingSpec::Rationals;
    let rows: Vec<Vec<RingElem>> = a
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|v| RingElem::from_bigint(&q, v)).collect())
        .collect();
    let m = InvMatrix::from_rows(&q, rows).expect("square rational matrix");
    let cp = m.charpoly().expect("charpoly over a field");
    // cp[i] is the coefficient of x^(n - i); strip the factor x^k
    let last = (0..=n)
        .rev()
        .find(|&i| !cp[i].is_zero())
        .expect("leading coefficient is 1");
    let rank = last;
    if rank == 0 {
        return (0, Vec::new());
    }
    let c0 = cp[last].to_rational().expect("rational coefficient");
    debug_assert!(c0.is_integer());
    (rank, prime_divisors(c0.numer()))
}

/// Invariant factors of the eventual image of `t` acting on
/// `⊕ Z/orders[i]` (canonical coordinates).
fn eventual_torsion(orders: &[BigInt], t: &IntMatrix) -> Vec<BigInt> {
    if orders.is_empty() {
        return Vec::new();
    }
    let f = FgAbGroup::from_orders(0, orders).expect("invariant factors are positive");
    let order: BigInt = orders.iter().product();
    // each strict decrease of the image divides its order by at least a prime
    let steps: u32 = factor(&order).iter().map(|&(_, e)| e).sum::<u32>().max(1);
    let mut power = IntMatrix::identity(t.rows());
    for _ in 0..steps {
        power = t * &power;
        power.reduce_rows(orders);
    }
    f.subgroup_generated(&power.columns()).torsion().to_vec()
}

/// Whether shifting the sequence by `k` leaves its direct limit unchanged.
pub fn shift_invariance_check(seq: &GroupSeq, k: usize) -> bool {
    colimit(seq) == colimit(&seq.shift(k))
}

/// `G ⊗ Z[1/2]`: odd torsion survives, 2 is inverted on the free part.
pub fn tensor_z_half(g: &FgAbGroup) -> ColimResult {
    let two = BigInt::from(2);
    let torsion = g
        .torsion()
        .iter()
        .map(|d| {
            let mut d = d.clone();
            while (&d % &two).is_zero() {
                d /= &two;
            }
            d
        })
        .filter(|d| !d.is_one())
        .collect();
    ColimResult {
        rank: g.free_rank(),
        inverted_primes: if g.free_rank() > 0 { vec![2] } else { Vec::new() },
        torsion,
    }
}

/// Interior positions of `G_0 -> G_1 -> ... -> G_m` where image and kernel
/// differ. Node `i` is the target of map `i - 1`.
pub fn exactness_check(chain: &[GroupHom]) -> Result<Vec<usize>> {
    check_composable(chain)?;
    let mut failures = Vec::new();
    for i in 1..chain.len() {
        let (into, out) = (&chain[i - 1], &chain[i]);
        let node = out.source();
        let n = node.ngens();
        let rel = node.relations().columns();
        let mut im = into.matrix().columns();
        im.extend(rel.iter().cloned());
        let mut ker = out.kernel_generators();
        ker.extend(rel);
        if !same_lattice(n, &im, &ker) {
            failures.push(i);
        }
    }
    Ok(failures)
}

fn same_lattice(n: usize, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let contains = |outer: &[Vec<BigInt>], inner: &[Vec<BigInt>]| {
        let s = smith_normal_form(&IntMatrix::from_columns(n, outer));
        inner.iter().all(|v| s.spans(v))
    };
    contains(a, b) && contains(b, a)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    rank: usize,
    #[serde(default)]
    torsion: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Step {
    group: GroupSpec,
    #[serde(default)]
    map: Option<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PeriodSpec {
    One(Step),
    Cycle(Vec<Step>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeqSpec {
    #[serde(default)]
    prefix: Vec<Step>,
    period: PeriodSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainSpec {
    chain: Vec<Step>,
}

impl GroupSpec {
    fn build(&self) -> Result<FgAbGroup> {
        let orders: Vec<BigInt> = self.torsion.iter().map(|&d| BigInt::from(d)).collect();
        FgAbGroup::from_orders(self.rank, &orders)
    }
}

fn int_matrix(rows: &[Vec<i64>], nrows: usize, ncols: usize) -> Result<IntMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::IllFormed(format!("map must be {nrows}x{ncols}")));
    }
    // a k x 0 matrix has no rows to carry its width
    let mut m = IntMatrix::zeros(nrows, ncols);
    for (i, r) in rows.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            m[(i, j)] = BigInt::from(v);
        }
    }
    Ok(m)
}

/// Builds maps `steps[i].group -> next(i)` where `next` resolves the target.
fn link(steps: &[Step], groups: &[FgAbGroup], next: impl Fn(usize) -> FgAbGroup) -> Result<Vec<GroupHom>> {
    steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let target = next(i);
            let map = s
                .map
                .as_ref()
                .ok_or_else(|| Error::IllFormed(format!("step {i} has no map")))?;
            let m = int_matrix(map, target.ngens(), groups[i].ngens())?;
            GroupHom::new(groups[i].clone(), target, m)
        })
        .collect()
}

fn parse<T: for<'de> Deserialize<'de>>(j: &Json) -> Result<T> {
    T::deserialize(j).map_err(|e| Error::Parse(e.to_string()))
}

impl GroupSeq {
    /// `{"prefix": [{"group", "map"}...], "period": {"group", "map"}}`; the
    /// period may also be a list of steps forming a cycle.
    pub fn from_json(j: &Json) -> Result<Self> {
        let spec: SeqSpec = parse(j)?;
        let period_steps = match spec.period {
            PeriodSpec::One(s) => vec![s],
            PeriodSpec::Cycle(v) => v,
        };
        if period_steps.is_empty() {
            return Err(Error::IllFormed("empty period".into()));
        }
        let pg = period_steps
            .iter()
            .map(|s| s.group.build())
            .collect::<Result<Vec<_>>>()?;
        let xg = spec
            .prefix
            .iter()
            .map(|s| s.group.build())
            .collect::<Result<Vec<_>>>()?;
        let period = link(&period_steps, &pg, |i| pg[(i + 1) % pg.len()].clone())?;
        let prefix = link(&spec.prefix, &xg, |i| {
            xg.get(i + 1).cloned().unwrap_or_else(|| pg[0].clone())
        })?;
        GroupSeq::new(prefix, period)
    }
}

/// `{"chain": [{"group", "map"}, ..., {"group"}]}`; each map goes to the
/// next group and the last step carries no map.
pub fn chain_from_json(j: &Json) -> Result<Vec<GroupHom>> {
    let spec: ChainSpec = parse(j)?;
    let groups = spec
        .chain
        .iter()
        .map(|s| s.group.build())
        .collect::<Result<Vec<_>>>()?;
    let Some((last, init)) = spec.chain.split_last() else {
        return Err(Error::IllFormed("empty chain".into()));
    };
    if last.map.is_some() {
        return Err(Error::IllFormed("last group of a chain takes no map".into()));
    }
    link(init, &groups, |i| groups[i + 1].clone())
}

pub fn group_json(g: &FgAbGroup) -> Json {
    json!({
        "rank": g.free_rank(),
        "torsion": g.torsion().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "name": group_name(g.free_rank(), g.torsion()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn hom(s: &FgAbGroup, t: &FgAbGroup, rows: &[Vec<i64>]) -> GroupHom {
        GroupHom::new(s.clone(), t.clone(), m(rows)).unwrap()
    }

    #[test]
    fn times_eight_is_z_half() {
        let z = FgAbGroup::free(1);
        let c = colimit(&GroupSeq::periodic(GroupHom::scalar(&z, 8)).unwrap());
        assert_eq!(c, ColimResult { rank: 1, inverted_primes: vec![2], torsion: vec![] });
        assert_eq!(c.describe(), "Z[1/2]");
        let c = colimit(&GroupSeq::periodic(GroupHom::identity(&z)).unwrap());
        assert_eq!(c.describe(), "Z");
    }

    #[test]
    fn free_plus_torsion() {
        let g = FgAbGroup::from_orders(1, &big(&[2])).unwrap();
        let c = colimit(&GroupSeq::periodic(hom(&g, &g, &[vec![8, 0], vec![0, 1]])).unwrap());
        assert_eq!(c.rank, 1);
        assert_eq!(c.inverted_primes, vec![2]);
        assert_eq!(c.torsion, big(&[2]));
        // torsion killed by a nilpotent action, free part by a nilpotent block
        let g = FgAbGroup::from_orders(2, &big(&[4])).unwrap();
        let c = colimit(&GroupSeq::periodic(hom(&g, &g, &[vec![0, 1, 0], vec![0, 0, 0], vec![1, 0, 2]])).unwrap());
        assert_eq!(c, ColimResult { rank: 0, inverted_primes: vec![], torsion: vec![] });
    }

    #[test]
    fn eventual_image_with_kernel() {
        // diag(0, 6): eventual image is the second axis, det 6 there
        let g = FgAbGroup::free(2);
        let c = colimit(&GroupSeq::periodic(hom(&g, &g, &[vec![0, 0], vec![0, 6]])).unwrap());
        assert_eq!(c, ColimResult { rank: 1, inverted_primes: vec![2, 3], torsion: vec![] });
    }

    #[test]
    fn torsion_by_iteration() {
        // Z/8 under multiplication by 2 dies; Z/9 under 2 survives
        let g = FgAbGroup::from_orders(0, &big(&[8, 9])).unwrap();
        let h = GroupHom::scalar(&g, 2);
        let c = colimit(&GroupSeq::periodic(h.clone()).unwrap());
        assert_eq!(c.torsion, big(&[9]));
        let mut p = h.clone();
        for n in 1..12 {
            let img = p.image();
            if n >= 3 {
                assert_eq!(img.torsion(), big(&[9]).as_slice());
            }
            p = h.after(&p).unwrap();
        }
    }

    #[test]
    fn prefix_absorbed_under_shift() {
        let z4 = FgAbGroup::cyclic(4);
        let z2 = FgAbGroup::cyclic(2);
        let seq = GroupSeq::new(
            vec![hom(&z4, &z2, &[vec![1]])],
            vec![GroupHom::identity(&z2)],
        )
        .unwrap();
        for k in 0..4 {
            assert!(shift_invariance_check(&seq, k));
        }
        assert_eq!(colimit(&seq).torsion, big(&[2]));
    }

    #[test]
    fn cycle_shift_rotates() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::from_orders(1, &big(&[3])).unwrap();
        let seq = GroupSeq::new(
            vec![],
            vec![hom(&z, &z2, &[vec![2], vec![1]]), hom(&z2, &z, &[vec![5, 0]])],
        )
        .unwrap();
        let c = colimit(&seq);
        assert_eq!(c, ColimResult { rank: 1, inverted_primes: vec![2, 5], torsion: vec![] });
        assert!(shift_invariance_check(&seq, 1));
        assert_eq!(seq.shift(1).period()[0].source().to_string(), "Z+Z/3");
    }

    #[test]
    fn ill_formed_sequences() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        assert!(GroupSeq::new(vec![], vec![hom(&z, &z2, &[vec![1]])]).is_err());
        assert!(GroupSeq::new(vec![], vec![]).is_err());
        assert!(exactness_check(&[GroupHom::identity(&z), GroupHom::identity(&z2)]).is_err());
    }

    #[test]
    fn exactness_examples() {
        let zero = FgAbGroup::trivial();
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let z4 = FgAbGroup::cyclic(4);
        let ok = [
            GroupHom::zero(&zero, &z),
            GroupHom::identity(&z),
            GroupHom::zero(&z, &zero),
        ];
        assert!(exactness_check(&ok).unwrap().is_empty());
        let ses = [
            GroupHom::zero(&zero, &z),
            GroupHom::scalar(&z, 2),
            hom(&z, &z2, &[vec![1]]),
            GroupHom::zero(&z2, &zero),
        ];
        assert!(exactness_check(&ses).unwrap().is_empty());
        let bad = [
            GroupHom::zero(&zero, &z),
            GroupHom::scalar(&z, 2),
            hom(&z, &z4, &[vec![1]]),
            GroupHom::zero(&z4, &zero),
        ];
        assert_eq!(exactness_check(&bad).unwrap(), vec![2]);
    }

    #[test]
    fn tensor_half_matches_times_eight() {
        for (r, t) in [(1, vec![2]), (0, vec![6]), (2, vec![3, 12]), (0, vec![])] {
            let g = FgAbGroup::from_orders(r, &big(&t)).unwrap();
            let c = colimit(&GroupSeq::periodic(GroupHom::scalar(&g, 8)).unwrap());
            assert_eq!(c, tensor_z_half(&g), "{g}");
        }
    }

    #[test]
    fn json_formats() {
        let j = json!({"prefix": [], "period": {"group": {"rank": 1, "torsion": []}, "map": [[8]]}});
        let c = colimit(&GroupSeq::from_json(&j).unwrap());
        assert_eq!(c.to_json(), json!({"rank": 1, "inverted_primes": [2], "torsion": []}));
        let j = json!({"period": {"group": {"rank": 1}, "map": [[8]], "extra": 1}});
        assert!(GroupSeq::from_json(&j).is_err());
        let j = json!({"chain": [
            {"group": {"rank": 0}, "map": [[]]},
            {"group": {"rank": 1}, "map": [[2]]},
            {"group": {"rank": 1}, "map": [[1]]},
            {"group": {"rank": 0, "torsion": [2]}, "map": []},
            {"group": {"rank": 0}}
        ]});
        // first map is 1x0: a row with no entries
        let chain = chain_from_json(&j).unwrap();
        assert!(exactness_check(&chain).unwrap().is_empty());
    }
}
