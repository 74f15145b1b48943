//! ε-symmetric bilinear forms given by Gram matrices.

mod diag;
mod witt;

pub use diag::{diagonalize, symplectic_basis, symplectic_basis_of, Diagonalization};
pub use witt::{anisotropy_certificate, AnisotropyWitness, isotropy_oracle, witt_decompose, WittDecomposition};

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::ring::{InvMatrix, RingElem, RingSpec};

/// Nondegenerate form with `gram* = epsilon * gram`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramForm {
    epsilon: i8,
    gram: InvMatrix,
}

impl GramForm {
    pub fn new(gram: InvMatrix, epsilon: i8) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !gram.is_square() {
            return Err(Error::Dimension(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let eps = RingElem::from_int(gram.ring(), epsilon.into());
        if gram.conj_transpose() != gram.scale(&eps)? {
            return Err(Error::NotSymmetric(epsilon));
        }
        let det = gram.det()?;
        if !det.is_unit() {
            if epsilon == -1 && gram.rows() % 2 == 1 {
                return Err(Error::OddRank(gram.rows()));
            }
            return Err(Error::DegenerateForm(format!("determinant {det} is not a unit")));
        }
        Ok(GramForm { epsilon, gram })
    }

    /// `⟨a_1, ..., a_n⟩`.
    pub fn diagonal(ring: &RingSpec, entries: &[RingElem]) -> Result<Self> {
        Self::new(InvMatrix::diagonal(ring, entries)?, 1)
    }

    pub fn diag_ints(ring: &RingSpec, entries: &[i64]) -> Result<Self> {
        let es: Vec<RingElem> = entries.iter().map(|&a| RingElem::from_int(ring, a)).collect();
        Self::diagonal(ring, &es)
    }

    pub fn ring(&self) -> &RingSpec {
        self.gram.ring()
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn gram(&self) -> &InvMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| i == j || self.gram.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<RingElem> {
        (0..self.dim()).map(|i| self.gram.get(i, i)).collect()
    }

    /// `v* G w`.
    pub fn bilinear(&self, v: &[RingElem], w: &[RingElem]) -> RingElem {
        let ring = self.ring();
        let mut acc = RingElem::zero(ring);
        for (i, vi) in v.iter().enumerate() {
            let vi = vi.involute();
            for (j, wj) in w.iter().enumerate() {
                let g = self.gram.get(i, j);
                if !g.is_zero() {
                    acc = &acc + &(&(&vi * &g) * wj);
                }
            }
        }
        acc
    }

    pub fn value(&self, v: &[RingElem]) -> RingElem {
        self.bilinear(v, v)
    }

    /// The form in the basis given by the columns of `p`: `p* G p`.
    pub fn congruent(&self, p: &InvMatrix) -> Result<Self> {
        let g = p.conj_transpose().try_mul(&self.gram)?.try_mul(p)?;
        Self::new(g, self.epsilon)
    }

    /// `-f`.
    pub fn negated(&self) -> Self {
        GramForm {
            epsilon: self.epsilon,
            gram: -&self.gram,
        }
    }

    /// The same Gram matrix read over another ring.
    pub fn change_ring(&self, target: &RingSpec) -> Result<Self> {
        let gram = self.gram.map_entries(target, |e| {
            let q = e.to_rational().ok_or_else(|| Error::Unsupported {
                ring: self.ring().tag(),
                reason: "entries are not scalars".into(),
            })?;
            RingElem::from_rational(target, &q)
        })?;
        Self::new(gram, self.epsilon)
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .gram
            .to_rows()
            .iter()
            .map(|r| Json::Array(r.iter().map(RingElem::payload_json).collect()))
            .collect();
        json!({"ring": self.ring().tag(), "epsilon": self.epsilon, "gram": rows})
    }

    /// `{"ring", "epsilon", "gram"}` or `{"ring", "diag"}`; epsilon
    /// defaults to 1.
    pub fn from_json(j: &Json) -> Result<Self> {
        let obj = j
            .as_object()
            .ok_or_else(|| Error::Parse("form must be an object".into()))?;
        for key in obj.keys() {
            if !["ring", "epsilon", "gram", "diag"].contains(&key.as_str()) {
                return Err(Error::Parse(format!("unknown field {key:?}")));
            }
        }
        let ring = RingSpec::parse_tag(
            obj.get("ring")
                .and_then(Json::as_str)
                .ok_or_else(|| Error::Parse("missing ring".into()))?,
        )?;
        let epsilon = match obj.get("epsilon") {
            None => 1,
            Some(e) => e
                .as_i64()
                .filter(|e| *e == 1 || *e == -1)
                .ok_or_else(|| Error::Parse(format!("epsilon must be 1 or -1, got {e}")))?
                as i8,
        };
        match (obj.get("gram"), obj.get("diag")) {
            (Some(g), None) => {
                let rows = g
                    .as_array()
                    .ok_or_else(|| Error::Parse("gram must be a list of rows".into()))?;
                Self::new(InvMatrix::entries_from_json(&ring, rows)?, epsilon)
            }
            (None, Some(d)) => {
                if epsilon != 1 {
                    return Err(Error::Parse("diagonal shorthand is for symmetric forms".into()));
                }
                let entries = d
                    .as_array()
                    .ok_or_else(|| Error::Parse("diag must be a list".into()))?
                    .iter()
                    .map(|e| RingElem::from_payload_json(&ring, e))
                    .collect::<Result<Vec<_>>>()?;
                Self::diagonal(&ring, &entries)
            }
            _ => Err(Error::Parse("exactly one of gram and diag is required".into())),
        }
    }
}

impl std::fmt::Display for GramForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.epsilon == 1 && self.is_diagonal() {
            let es: Vec<String> = self.diagonal_entries().iter().map(ToString::to_string).collect();
            write!(f, "<{}>", es.join(", "))
        } else {
            write!(f, "{} (epsilon {})", self.gram, self.epsilon)
        }
    }
}

fn check_epsilon(epsilon: i8) -> Result<()> {
    if epsilon == 1 || epsilon == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon must be 1 or -1, got {epsilon}")))
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    Ok(())
}

/// `[[0, I], [εI, 0]]` of size `2n`.
pub fn hyperbolic(n: usize, epsilon: i8, ring: &RingSpec) -> Result<GramForm> {
    check_epsilon(epsilon)?;
    check_rank(n)?;
    GramForm::new(block_swap(n, epsilon, ring), epsilon)
}

fn block_swap(n: usize, epsilon: i8, ring: &RingSpec) -> InvMatrix {
    let mut m = InvMatrix::zeros(ring, 2 * n, 2 * n);
    let one = RingElem::one(ring);
    let eps = RingElem::from_int(ring, epsilon.into());
    for i in 0..n {
        m.set(i, n + i, one.clone()).expect("same ring");
        m.set(n + i, i, eps.clone()).expect("same ring");
    }
    m
}

/// The automorphism `[[0, I], [εI, 0]]` of `hyperbolic(n, ε)`, checked to
/// be an isometry.
pub fn interchange_isometry(n: usize, epsilon: i8, ring: &RingSpec) -> Result<InvMatrix> {
    let h = hyperbolic(n, epsilon, ring)?;
    let sigma = block_swap(n, epsilon, ring);
    let pulled = &(&sigma.conj_transpose() * h.gram()) * &sigma;
    assert_eq!(&pulled, h.gram(), "interchange map is not an isometry");
    Ok(sigma)
}

fn same_kind(f: &GramForm, g: &GramForm) -> Result<()> {
    if f.ring() != g.ring() {
        return Err(Error::SpecMismatch {
            left: f.ring().tag(),
            right: g.ring().tag(),
        });
    }
    Ok(())
}

pub fn orth_sum(f: &GramForm, g: &GramForm) -> Result<GramForm> {
    same_kind(f, g)?;
    if f.epsilon != g.epsilon {
        return Err(Error::InvalidParameter("orthogonal sum of forms with different epsilon".into()));
    }
    GramForm::new(InvMatrix::block_diag(f.ring(), &[f.gram(), g.gram()])?, f.epsilon)
}

/// Kronecker product; the sign is the product of the two signs.
pub fn tensor(f: &GramForm, g: &GramForm) -> Result<GramForm> {
    same_kind(f, g)?;
    GramForm::new(f.gram.kron(&g.gram)?, f.epsilon * g.epsilon)
}
