//! Diagonalization of symmetric forms and symplectic bases of skew ones.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::GramForm;
use crate::arith::{squarefree_class, valuation};
use crate::error::{Error, Result};
use crate::ring::{InvMatrix, RingElem, RingSpec};

/// Running congruence `g = p* G0 p` updated by elementary basis changes.
pub(crate) struct Congruence {
    pub g: InvMatrix,
    pub p: InvMatrix,
}

impl Congruence {
    pub fn new(g: &InvMatrix) -> Self {
        Congruence {
            g: g.clone(),
            p: InvMatrix::identity(g.ring(), g.rows()),
        }
    }

    /// `e_dst += c e_src`.
    pub fn add(&mut self, dst: usize, src: usize, c: &RingElem) {
        let n = self.g.rows();
        let cb = c.involute();
        for i in 0..n {
            let v = &self.g.get(i, dst) + &(&self.g.get(i, src) * c);
            self.g.set(i, dst, v).expect("same ring");
        }
        for j in 0..n {
            let v = &self.g.get(dst, j) + &(&cb * &self.g.get(src, j));
            self.g.set(dst, j, v).expect("same ring");
        }
        for i in 0..self.p.rows() {
            let v = &self.p.get(i, dst) + &(&self.p.get(i, src) * c);
            self.p.set(i, dst, v).expect("same ring");
        }
    }

    /// `e_i *= c`.
    pub fn scale(&mut self, i: usize, c: &RingElem) {
        let n = self.g.rows();
        let cb = c.involute();
        for k in 0..n {
            let v = &self.g.get(k, i) * c;
            self.g.set(k, i, v).expect("same ring");
        }
        for k in 0..n {
            let v = &cb * &self.g.get(i, k);
            self.g.set(i, k, v).expect("same ring");
        }
        for k in 0..self.p.rows() {
            let v = &self.p.get(k, i) * c;
            self.p.set(k, i, v).expect("same ring");
        }
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.g.rows();
        for k in 0..n {
            let (x, y) = (self.g.get(k, a), self.g.get(k, b));
            self.g.set(k, a, y).expect("same ring");
            self.g.set(k, b, x).expect("same ring");
        }
        for k in 0..n {
            let (x, y) = (self.g.get(a, k), self.g.get(b, k));
            self.g.set(a, k, y).expect("same ring");
            self.g.set(b, k, x).expect("same ring");
        }
        for k in 0..self.p.rows() {
            let (x, y) = (self.p.get(k, a), self.p.get(k, b));
            self.p.set(k, a, y).expect("same ring");
            self.p.set(k, b, x).expect("same ring");
        }
    }
}

/// `p* gram p = form`, with `form` diagonal.
///
/// `unimodular` is false when no unit pivots exist over Z[1/2]; the
/// computation is then carried out over Q and `p`, `form` live there.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub p: InvMatrix,
    pub form: GramForm,
    pub unimodular: bool,
}

fn dyadic_candidates(ring: &RingSpec) -> Vec<RingElem> {
    let mut out = Vec::new();
    for (n, d) in [(1, 1), (2, 1), (1, 2), (3, 1), (4, 1), (3, 2), (1, 4)] {
        let c = RingElem::from_frac(ring, n, d).expect("dyadic candidate");
        let neg = -&c;
        out.push(c);
        out.push(neg);
    }
    out
}

fn pivot_size(e: &RingElem) -> BigInt {
    e.to_rational().map_or_else(BigInt::zero, |q| (q.numer() * q.denom()).abs())
}

/// Symmetric elimination with pivots accepted by `is_pivot`. Returns false
/// when no pivot can be found.
fn eliminate(c: &mut Congruence, is_pivot: impl Fn(&RingElem) -> bool, shifts: &[RingElem]) -> bool {
    let n = c.g.rows();
    for k in 0..n {
        // smallest usable pivot first, which keeps the diagonal small
        let best = (k..n)
            .filter(|&i| is_pivot(&c.g.get(i, i)))
            .min_by_key(|&i| pivot_size(&c.g.get(i, i)));
        if let Some(i) = best {
            c.swap(k, i);
        } else {
            // e_i + s e_j has norm G_ii + s G_ij + s̄ G_ji + s s̄ G_jj
            let mut found = None;
            'search: for i in k..n {
                for j in k..n {
                    if i == j || c.g.get(i, j).is_zero() {
                        continue;
                    }
                    for s in shifts {
                        let sb = s.involute();
                        let q = &(&(&c.g.get(i, i) + &(s * &c.g.get(i, j)))
                            + &(&sb * &c.g.get(j, i)))
                            + &(&(s * &sb) * &c.g.get(j, j));
                        if is_pivot(&q) {
                            found = Some((i, j, sb));
                            break 'search;
                        }
                    }
                }
            }
            let Some((i, j, s)) = found else {
                return false;
            };
            c.add(i, j, &s);
            c.swap(k, i);
        }
        let inv = c.g.get(k, k).inv().expect("pivot is a unit");
        for j in k + 1..n {
            let g = c.g.get(k, j);
            if !g.is_zero() {
                c.add(j, k, &-(&inv * &g));
            }
        }
    }
    true
}

/// Multiplier `m` with `m² d` a squarefree integer (Q) or `d` divided by
/// an even power of 2 (Z[1/2]).
fn square_normalizer(ring: &RingSpec, d: &RingElem) -> Option<RingElem> {
    let q = d.to_rational()?;
    match ring {
        RingSpec::Rationals => {
            let target = BigRational::from_integer(squarefree_class(&q));
            let ratio = target / q;
            let (n, m) = (ratio.numer().abs().sqrt(), ratio.denom().sqrt());
            Some(RingElem::from_rational(ring, &BigRational::new(n, m)).expect("rational"))
        }
        RingSpec::Dyadic => {
            let half = valuation(&q, 2).div_euclid(2);
            let m = BigRational::new(1.into(), 2.into()).pow(half as i32);
            Some(RingElem::from_rational(ring, &m).expect("power of two"))
        }
        _ => None,
    }
}

pub fn diagonalize(f: &GramForm) -> Result<Diagonalization> {
    if f.epsilon() != 1 {
        return Err(Error::InvalidParameter("diagonalization needs a symmetric form".into()));
    }
    let ring = f.ring().clone();
    match ring {
        RingSpec::PrimeField(_) | RingSpec::Rationals => {
            let mut c = Congruence::new(f.gram());
            let one = [RingElem::one(&ring)];
            if !eliminate(&mut c, |e| !e.is_zero(), &one) {
                return Err(Error::DegenerateForm("no pivot".into()));
            }
            finish(f, c, &ring, true)
        }
        RingSpec::Dyadic => {
            let mut c = Congruence::new(f.gram());
            if eliminate(&mut c, RingElem::is_unit, &dyadic_candidates(&ring)) {
                return finish(f, c, &ring, true);
            }
            let mut d = diagonalize(&f.change_ring(&RingSpec::Rationals)?)?;
            d.unimodular = false;
            Ok(d)
        }
        _ => Err(Error::Unsupported {
            ring: ring.tag(),
            reason: "diagonalization needs a field or Z[1/2]".into(),
        }),
    }
}

fn finish(f: &GramForm, mut c: Congruence, ring: &RingSpec, unimodular: bool) -> Result<Diagonalization> {
    for i in 0..f.dim() {
        if let Some(m) = square_normalizer(ring, &c.g.get(i, i)) {
            if !m.is_one() {
                c.scale(i, &m);
            }
        }
    }
    let form = GramForm::new(c.g, 1)?;
    debug_assert!(form.is_diagonal());
    Ok(Diagonalization {
        p: c.p,
        form,
        unimodular,
    })
}

/// Basis `e_1, f_1, e_2, f_2, ...` in which a skew form is block diagonal
/// with blocks `[[0, 1], [-1, 0]]`.
pub fn symplectic_basis(f: &GramForm) -> Result<InvMatrix> {
    if f.epsilon() != -1 {
        return Err(Error::InvalidParameter("symplectic basis needs a skew form".into()));
    }
    symplectic_basis_of(f.gram())
}

/// As [`symplectic_basis`], from a raw Gram matrix.
pub fn symplectic_basis_of(gram: &InvMatrix) -> Result<InvMatrix> {
    let ring = gram.ring().clone();
    if !ring.is_field() {
        return Err(Error::Unsupported {
            ring: ring.tag(),
            reason: "symplectic bases are computed over fields".into(),
        });
    }
    let f = GramForm::new(gram.clone(), -1)?;
    let n = f.dim();
    let mut rest: Vec<Vec<RingElem>> = (0..n)
        .map(|i| (0..n).map(|j| RingElem::from_int(&ring, (i == j).into())).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    while !rest.is_empty() {
        let x = rest.remove(0);
        let (k, bxy) = rest
            .iter()
            .enumerate()
            .map(|(k, y)| (k, f.bilinear(&x, y)))
            .find(|(_, b)| !b.is_zero())
            .ok_or_else(|| Error::DegenerateForm("vector orthogonal to the rest".into()))?;
        let y = rest.remove(k);
        let inv = bxy.inv()?;
        let e = x;
        let fv: Vec<RingElem> = y.iter().map(|a| a * &inv).collect();
        // z' = z - b(z, f) e + b(z, e) f kills both pairings
        rest = rest
            .into_iter()
            .map(|z| {
                let (bzf, bze) = (f.bilinear(&z, &fv), f.bilinear(&z, &e));
                z.iter()
                    .zip(&e)
                    .zip(&fv)
                    .map(|((zi, ei), fi)| &(zi - &(&bzf * ei)) + &(&bze * fi))
                    .collect()
            })
            .collect();
        out.push(e);
        out.push(fv);
    }
    InvMatrix::from_columns(&ring, n, &out)
}
