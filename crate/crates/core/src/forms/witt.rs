//! Isotropy search, local anisotropy certificates and Witt decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::diag::{diagonalize, symplectic_basis};
use super::GramForm;
use crate::arith::{is_power_of_two, legendre};
use crate::error::{Error, Result};
use crate::invariants::{hilbert_symbol, is_local_square, relevant_places, Place};
use crate::ring::{InvMatrix, RingElem, RingSpec};
use crate::stab::{smith_normal_form, IntMatrix};

/// `p* gram p = H^hyperbolic_rank ⊥ anisotropic`, hyperbolic pairs first.
#[derive(Clone, Debug)]
pub struct WittDecomposition {
    pub hyperbolic_rank: usize,
    pub anisotropic: GramForm,
    pub change_of_basis: InvMatrix,
    /// False when the search bound ran out on a form that is isotropic
    /// but for which no vector was found.
    pub certified: bool,
}

/// Why a form represents zero only trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisotropyWitness {
    Empty,
    Rank1,
    /// Binary form whose `-det` is not a square.
    NonSquareDisc,
    /// Anisotropic over the completion at this place.
    Local(Place),
}

fn scalar_rational(e: &RingElem) -> BigRational {
    e.to_rational().expect("scalar ring")
}

/// Exact anisotropy test over F_p, Q and Z[1/2]; `None` means isotropic.
pub fn anisotropy_certificate(f: &GramForm) -> Result<Option<AnisotropyWitness>> {
    if f.epsilon() != 1 {
        return Err(Error::InvalidParameter("isotropy of skew forms".into()));
    }
    let n = f.dim();
    if n == 0 {
        return Ok(Some(AnisotropyWitness::Empty));
    }
    if n == 1 {
        return Ok(Some(AnisotropyWitness::Rank1));
    }
    match f.ring() {
        RingSpec::PrimeField(p) => {
            if n >= 3 {
                return Ok(None);
            }
            let minus_det = -f.gram().det()?;
            let r = minus_det.residue().expect("residue");
            Ok((legendre(r, *p) == -1).then_some(AnisotropyWitness::NonSquareDisc))
        }
        RingSpec::Rationals | RingSpec::Dyadic => {
            let q = f.change_ring(&RingSpec::Rationals)?;
            let d: Vec<BigRational> = diagonalize(&q)?
                .form
                .diagonal_entries()
                .iter()
                .map(scalar_rational)
                .collect();
            Ok(rational_certificate(&d))
        }
        other => Err(Error::Unsupported {
            ring: other.tag(),
            reason: "isotropy is decided over F_p, Q and Z[1/2]".into(),
        }),
    }
}

fn is_rational_square(q: &BigRational) -> bool {
    let sq = |n: &BigInt| {
        let r = num_integer::Roots::sqrt(n);
        &r * &r == *n
    };
    !q.is_negative() && sq(q.numer()) && sq(q.denom())
}

/// Hasse–Minkowski, one place at a time, for a diagonal form over Q.
fn rational_certificate(d: &[BigRational]) -> Option<AnisotropyWitness> {
    let n = d.len();
    if n == 2 {
        let minus_det = -(&d[0] * &d[1]);
        return (!is_rational_square(&minus_det)).then_some(AnisotropyWitness::NonSquareDisc);
    }
    if n >= 5 {
        let definite = d.iter().all(Signed::is_positive) || d.iter().all(Signed::is_negative);
        return definite.then_some(AnisotropyWitness::Local(Place::Real));
    }
    let h = |a: &BigRational, b: &BigRational, v| hilbert_symbol(a, b, v).expect("nonzero");
    for v in relevant_places(d) {
        let isotropic = if n == 3 {
            // a x² + b y² + c z² = 0  iff  (-ac, -bc)_v = 1
            let ac = -(&d[0] * &d[2]);
            let bc = -(&d[1] * &d[2]);
            h(&ac, &bc, v) == 1
        } else {
            let disc: BigRational = d.iter().product();
            let mut hasse = 1;
            for i in 0..n {
                for j in i + 1..n {
                    hasse *= h(&d[i], &d[j], v);
                }
            }
            let m1 = BigRational::from_integer(-BigInt::one());
            !is_local_square(&disc, v) || hasse == h(&m1, &m1, v)
        };
        if !isotropic {
            return Some(AnisotropyWitness::Local(v));
        }
    }
    None
}

/// A nonzero `v` with `v* G v = 0`.
///
/// Over F_p the search is exhaustive and returns the lexicographically
/// least witness, so `None` is a proof. Over Q and Z[1/2] the form is first
/// diagonalized with squarefree entries; integer vectors in that basis are
/// tried by increasing height up to `height_bound`, coordinates in the order
/// `0, 1, -1, 2, -2, ...` with the first nonzero one positive. The witness
/// is mapped back and returned primitive.
pub fn isotropy_oracle(f: &GramForm, height_bound: u64) -> Result<Option<Vec<RingElem>>> {
    let ring = f.ring().clone();
    let n = f.dim();
    if n == 0 {
        return Ok(None);
    }
    match ring {
        RingSpec::PrimeField(p) => {
            let g: Vec<u64> = f
                .gram()
                .to_rows()
                .iter()
                .flatten()
                .map(|e| e.residue().expect("residue"))
                .collect();
            let mut v = vec![0u64; n];
            v[n - 1] = 1;
            loop {
                if quad_mod(&g, &v, p) == 0 {
                    return Ok(Some(v.iter().map(|&x| RingElem::from_int(&ring, x as i64)).collect()));
                }
                if !odometer(&mut v, p) {
                    return Ok(None);
                }
            }
        }
        RingSpec::Rationals | RingSpec::Dyadic => {
            // search in a normalized diagonal basis, so that rescaling by
            // squares or powers of 2 does not change what the bound reaches
            let qf = f.change_ring(&RingSpec::Rationals)?;
            let d = diagonalize(&qf)?;
            let g = integral_gram(&d.form);
            for h in 1..=height_bound as i64 {
                if let Some(w) = search_height(&g, n, h) {
                    let w: Vec<BigRational> = w.iter().map(|&x| BigRational::from_integer(x.into())).collect();
                    let v: Vec<BigRational> = (0..n)
                        .map(|i| (0..n).map(|j| scalar_rational(&d.p.get(i, j)) * &w[j]).sum())
                        .collect();
                    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
                    let c = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                    return Ok(Some(ints.iter().map(|x| RingElem::from_bigint(&ring, &(x / &c))).collect()));
                }
            }
            Ok(None)
        }
        other => Err(Error::Unsupported {
            ring: other.tag(),
            reason: "isotropy search over F_p, Q and Z[1/2]".into(),
        }),
    }
}

fn quad_mod(g: &[u64], v: &[u64], p: u64) -> u64 {
    let n = v.len();
    let mut acc: u128 = 0;
    for i in 0..n {
        if v[i] == 0 {
            continue;
        }
        let mut row: u128 = 0;
        for j in 0..n {
            row = (row + g[i * n + j] as u128 * v[j] as u128) % p as u128;
        }
        acc = (acc + row * v[i] as u128) % p as u128;
    }
    acc as u64
}

/// Next vector in lexicographic order over `0..p`; false after the last.
fn odometer(v: &mut [u64], p: u64) -> bool {
    for x in v.iter_mut().rev() {
        *x += 1;
        if *x < p {
            return true;
        }
        *x = 0;
    }
    false
}

/// Gram matrix cleared of denominators.
fn integral_gram(f: &GramForm) -> Vec<BigInt> {
    let entries: Vec<BigRational> = f.gram().to_rows().iter().flatten().map(scalar_rational).collect();
    let l = entries.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    entries
        .iter()
        .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
        .collect()
}

fn search_height(g: &[BigInt], n: usize, h: i64) -> Option<Vec<i64>> {
    let order: Vec<i64> = std::iter::once(0).chain((1..=h).flat_map(|k| [k, -k])).collect();
    let mut idx = vec![0usize; n];
    loop {
        let v: Vec<i64> = idx.iter().map(|&i| order[i]).collect();
        let top = v.iter().map(|x| x.abs()).max().unwrap_or(0);
        let lead_positive = v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if top == h && lead_positive && quad_int(g, &v).is_zero() {
            return Some(v);
        }
        if !odometer_idx(&mut idx, order.len()) {
            return None;
        }
    }
}

fn odometer_idx(idx: &mut [usize], base: usize) -> bool {
    for x in idx.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn quad_int(g: &[BigInt], v: &[i64]) -> BigInt {
    let n = v.len();
    let mut acc = BigInt::zero();
    for i in 0..n {
        if v[i] == 0 {
            continue;
        }
        for j in 0..n {
            if v[j] != 0 {
                acc += &g[i * n + j] * (v[i] * v[j]);
            }
        }
    }
    acc
}

/// Splits off hyperbolic planes until the rest is certified anisotropic or
/// the search bound is exhausted.
pub fn witt_decompose(f: &GramForm, height_bound: u64) -> Result<WittDecomposition> {
    let ring = f.ring().clone();
    let n = f.dim();
    if f.epsilon() == -1 {
        let p = symplectic_basis(f)?;
        return Ok(WittDecomposition {
            hyperbolic_rank: n / 2,
            anisotropic: GramForm::new(InvMatrix::zeros(&ring, 0, 0), -1)?,
            change_of_basis: p,
            certified: true,
        });
    }
    if !matches!(ring, RingSpec::PrimeField(_) | RingSpec::Rationals | RingSpec::Dyadic) {
        return Err(Error::Unsupported {
            ring: ring.tag(),
            reason: "Witt decomposition over F_p, Q and Z[1/2]".into(),
        });
    }
    let mut pairs: Vec<Vec<RingElem>> = Vec::new();
    let mut cur = InvMatrix::identity(&ring, n);
    let certified;
    loop {
        let g = f.congruent(&cur)?;
        if anisotropy_certificate(&g)?.is_some() {
            certified = true;
            break;
        }
        let Some(v) = isotropy_oracle(&g, height_bound)? else {
            certified = false;
            break;
        };
        let v = primitive(&v);
        let (e, fv) = hyperbolic_pair(&g, &v)?;
        let rows = vec![pairing_row(&g, &e), pairing_row(&g, &fv)];
        let k = kernel(&ring, &rows, g.dim())?;
        pairs.push(cur.try_mul(&column(&ring, &e))?.column(0));
        pairs.push(cur.try_mul(&column(&ring, &fv))?.column(0));
        cur = cur.try_mul(&InvMatrix::from_columns(&ring, g.dim(), &k)?)?;
    }
    // present the anisotropic part diagonally when that stays invertible
    let aniso = f.congruent(&cur)?;
    if aniso.dim() > 0 {
        if let Ok(d) = diagonalize(&aniso) {
            if d.unimodular {
                cur = cur.try_mul(&d.p)?;
            }
        }
    }
    let mut cols = pairs;
    cols.extend((0..cur.cols()).map(|j| cur.column(j)));
    let change_of_basis = InvMatrix::from_columns(&ring, n, &cols)?;
    Ok(WittDecomposition {
        hyperbolic_rank: (n - cur.cols()) / 2,
        anisotropic: f.congruent(&cur)?,
        change_of_basis,
        certified,
    })
}

fn column(ring: &RingSpec, v: &[RingElem]) -> InvMatrix {
    InvMatrix::from_columns(ring, v.len(), &[v.to_vec()]).expect("column")
}

/// Divides an integer vector by its content.
fn primitive(v: &[RingElem]) -> Vec<RingElem> {
    let Some(ints) = v
        .iter()
        .map(|e| e.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer()))
        .collect::<Option<Vec<BigInt>>>()
    else {
        return v.to_vec();
    };
    let c = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    let ring = v[0].spec();
    ints.iter().map(|x| RingElem::from_bigint(ring, &(x / &c))).collect()
}

/// `b(x, ·)` as a row.
fn pairing_row(g: &GramForm, x: &[RingElem]) -> Vec<RingElem> {
    let n = g.dim();
    (0..n)
        .map(|j| {
            let mut acc = RingElem::zero(g.ring());
            for (i, xi) in x.iter().enumerate() {
                acc = &acc + &(&xi.involute() * &g.gram().get(i, j));
            }
            acc
        })
        .collect()
}

/// From isotropic `v`, the pair `(v, w - q(w)/2 v)` with `b(v, w) = 1`.
fn hyperbolic_pair(g: &GramForm, v: &[RingElem]) -> Result<(Vec<RingElem>, Vec<RingElem>)> {
    let ring = g.ring().clone();
    let r = pairing_row(g, v);
    let w = solve_unit_pairing(&ring, &r)?;
    let half = RingElem::from_frac(&ring, 1, 2)?;
    let c = &g.value(&w) * &half;
    let f: Vec<RingElem> = w.iter().zip(v).map(|(wi, vi)| wi - &(&c * vi)).collect();
    debug_assert!(g.value(&f).is_zero() && g.bilinear(v, &f).is_one());
    Ok((v.to_vec(), f))
}

/// Some `w` with `r · w = 1`.
fn solve_unit_pairing(ring: &RingSpec, r: &[RingElem]) -> Result<Vec<RingElem>> {
    let n = r.len();
    if ring.is_field() {
        let j = r
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::DegenerateForm("isotropic vector in the radical".into()))?;
        let mut w = vec![RingElem::zero(ring); n];
        w[j] = r[j].inv()?;
        return Ok(w);
    }
    let (ints, scale) = clear_denominators(r);
    let s = smith_normal_form(&IntMatrix::from_big_rows(1, n, vec![ints]));
    let g = s.d[(0, 0)].clone();
    if !is_power_of_two(&g) {
        return Err(Error::DegenerateForm("pairing with an isotropic vector is not onto".into()));
    }
    // r·V e_1 = U⁻¹ g, and U is ±1
    let sign = s.u[(0, 0)].clone();
    let factor = BigRational::new(scale * sign, g);
    s.v.column(0)
        .iter()
        .map(|x| RingElem::from_rational(ring, &(BigRational::from_integer(x.clone()) * &factor)))
        .collect()
}

/// Integer vector `2^k r` and the multiplier `2^k`.
fn clear_denominators(r: &[RingElem]) -> (Vec<BigInt>, BigInt) {
    let qs: Vec<BigRational> = r.iter().map(scalar_rational).collect();
    let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints = qs
        .iter()
        .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    (ints, l)
}

/// Basis of `{x : row · x = 0 for each row}`.
fn kernel(ring: &RingSpec, rows: &[Vec<RingElem>], n: usize) -> Result<Vec<Vec<RingElem>>> {
    if ring.is_field() {
        return Ok(field_kernel(ring, rows, n));
    }
    let m = IntMatrix::from_big_rows(rows.len(), n, rows.iter().map(|r| clear_denominators(r).0).collect());
    smith_normal_form(&m)
        .kernel_basis()
        .into_iter()
        .map(|k| k.iter().map(|x| Ok(RingElem::from_bigint(ring, x))).collect())
        .collect()
}

fn field_kernel(ring: &RingSpec, rows: &[Vec<RingElem>], n: usize) -> Vec<Vec<RingElem>> {
    let mut a: Vec<Vec<RingElem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, i);
        let inv = a[r][c].inv().expect("field");
        a[r] = a[r].iter().map(|x| x * &inv).collect();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                a[i] = a[i].iter().zip(&pr).map(|(x, y)| x - &(&f * y)).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![RingElem::zero(ring); n];
            v[free] = RingElem::one(ring);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][free];
            }
            v
        })
        .collect()
}
