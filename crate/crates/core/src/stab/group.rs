//! Finitely presented abelian groups and homomorphisms between them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::intmat::{smith_normal_form, IntMatrix, Smith};
use crate::error::{Error, Result};

/// `Z^n / colspan(relations)`, with its canonical decomposition cached.
///
/// Canonical coordinates list the free summands first and then the cyclic
/// torsion summands `Z/d_1, Z/d_2, ...` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct FgAbGroup {
    relations: IntMatrix,
    smith: Smith,
    free_rank: usize,
    torsion: Vec<BigInt>,
    to_canon: IntMatrix,
    from_canon: IntMatrix,
}

impl FgAbGroup {
    /// Group on `ngens` generators subject to the columns of `relations`.
    pub fn presented(relations: IntMatrix) -> Self {
        let n = relations.rows();
        let smith = smith_normal_form(&relations);
        let inv = smith.invariants();
        let tors_idx: Vec<usize> = (0..smith.rank).filter(|&i| !inv[i].is_one()).collect();
        let free_idx: Vec<usize> = (smith.rank..n).collect();
        let order: Vec<usize> = free_idx.iter().chain(&tors_idx).copied().collect();
        let to_canon = smith.u.select_rows(&order);
        let from_canon = smith.u_inv.select_cols(&order);
        FgAbGroup {
            free_rank: free_idx.len(),
            torsion: tors_idx.iter().map(|&i| inv[i].clone()).collect(),
            relations,
            smith,
            to_canon,
            from_canon,
        }
    }

    /// `Z^rank ⊕ Z/t_1 ⊕ ...` presented directly; orders must be positive.
    pub fn from_orders(rank: usize, orders: &[BigInt]) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|d| !d.is_positive()) {
            return Err(Error::InvalidParameter(format!(
                "cyclic order must be positive, got {bad}"
            )));
        }
        let n = rank + orders.len();
        let mut rel = IntMatrix::zeros(n, orders.len());
        for (j, d) in orders.iter().enumerate() {
            rel[(rank + j, j)] = d.clone();
        }
        Ok(Self::presented(rel))
    }

    pub fn free(rank: usize) -> Self {
        Self::presented(IntMatrix::zeros(rank, 0))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(0, &[BigInt::from(order)]).expect("positive order")
    }

    pub fn ngens(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of canonical coordinates.
    pub fn canonical_len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Moduli of the canonical coordinates (0 for free ones).
    pub fn canonical_moduli(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.free_rank)
            .chain(self.torsion.iter().cloned())
            .collect()
    }

    /// Matrix sending generator coordinates to canonical coordinates.
    pub fn to_canonical(&self) -> &IntMatrix {
        &self.to_canon
    }

    /// Matrix sending canonical coordinates back to generator coordinates.
    pub fn from_canonical(&self) -> &IntMatrix {
        &self.from_canon
    }

    pub fn same_presentation(&self, other: &Self) -> bool {
        self.relations == other.relations
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Whether `v` (generator coordinates) is zero in the group.
    pub fn is_zero_elem(&self, v: &[BigInt]) -> bool {
        self.smith.spans(v)
    }

    /// The subgroup generated by the given elements, presented on them.
    pub fn subgroup_generated(&self, gens: &[Vec<BigInt>]) -> Self {
        let w = IntMatrix::from_columns(self.ngens(), gens);
        Self::presented(relation_lattice(&w, &self.relations))
    }
}

/// Relations among the columns of `w` modulo `colspan(rel)`: the projection
/// of `ker [w | rel]` onto the first block.
fn relation_lattice(w: &IntMatrix, rel: &IntMatrix) -> IntMatrix {
    let k = w.cols();
    let s = smith_normal_form(&w.hcat(rel));
    let cols: Vec<Vec<BigInt>> = s
        .kernel_basis()
        .into_iter()
        .map(|v| v[..k].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    IntMatrix::from_columns(k, &cols)
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.is_isomorphic(other)
    }
}

impl Eq for FgAbGroup {}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", group_name(self.free_rank, &self.torsion))
    }
}

/// Short name such as `Z+Z/2`, `Z^2`, or `0`.
pub fn group_name(rank: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Homomorphism given by an integer matrix on generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks the shape and that relations of the source land in relations
    /// of the target.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::IllFormed(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for r in source.relations.columns() {
            if !target.is_zero_elem(&matrix.apply(&r)) {
                return Err(Error::IllFormed(
                    "map does not send relations to relations".into(),
                ));
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by `m` on `g`.
    pub fn scalar(g: &FgAbGroup, m: i64) -> Self {
        let mut matrix = IntMatrix::identity(g.ngens());
        for i in 0..g.ngens() {
            matrix[(i, i)] = BigInt::from(m);
        }
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if !first.target.same_presentation(&self.source) {
            return Err(Error::IllFormed("maps are not composable".into()));
        }
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    /// The map in canonical coordinates, torsion rows reduced.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let mut m = &(self.target.to_canonical() * &self.matrix) * self.source.from_canonical();
        m.reduce_rows(&self.target.canonical_moduli());
        m
    }

    /// Generators of the kernel, in source generator coordinates.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        relation_lattice(&self.matrix, self.target.relations()).columns()
    }

    pub fn image(&self) -> FgAbGroup {
        self.target.subgroup_generated(&self.matrix.columns())
    }

    pub fn kernel(&self) -> FgAbGroup {
        self.source.subgroup_generated(&self.kernel_generators())
    }
}
