use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::elem::{mismatch, RingElem};
use super::spec::{RingSpec, Value};
use crate::arith::binom_neg_half;
use crate::error::{Error, Result};

/// Dense matrix over a ring with involution. Entries are stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

impl InvMatrix {
    pub(crate) fn from_values(ring: RingSpec, rows: usize, cols: usize, data: Vec<Value>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        InvMatrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(ring: &RingSpec, rows: usize, cols: usize) -> Self {
        Self::from_values(ring.clone(), rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: &RingSpec, rows: Vec<Vec<RingElem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for e in row {
                if e.spec() != ring {
                    return Err(mismatch(ring, e.spec()));
                }
                data.push(e.into_value());
            }
        }
        Ok(Self::from_values(ring.clone(), nrows, ncols, data))
    }

    /// Integer matrix mapped into `ring`.
    pub fn from_ints(ring: &RingSpec, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|&v| RingElem::from_int(ring, v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(ring: &RingSpec, diag: &[RingElem]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(ring, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone())?;
        }
        Ok(m)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn val(&self, i: usize, j: usize) -> &Value {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn set_val(&mut self, i: usize, j: usize, v: Value) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> RingElem {
        RingElem::from_value(self.ring.clone(), self.val(i, j).clone())
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElem) -> Result<()> {
        if e.spec() != &self.ring {
            return Err(mismatch(&self.ring, e.spec()));
        }
        self.set_val(i, j, e.into_value());
        Ok(())
    }

    pub fn to_rows(&self) -> Vec<Vec<RingElem>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(ring: &RingSpec, rows: usize, cols: &[Vec<RingElem>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension("column length".into()));
            }
            for (i, e) in col.iter().enumerate() {
                m.set(i, j, e.clone())?;
            }
        }
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.ring.is_zero(v))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.ring, self.rows)
    }

    /// Entrywise image under `f`, landing in `target`.
    pub fn map_entries<F>(&self, target: &RingSpec, mut f: F) -> Result<Self>
    where
        F: FnMut(&RingElem) -> Result<RingElem>,
    {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = f(&self.get(i, j))?;
                if e.spec() != target {
                    return Err(mismatch(target, e.spec()));
                }
                data.push(e.into_value());
            }
        }
        Ok(Self::from_values(target.clone(), self.rows, self.cols, data))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.val(i, j).clone());
            }
        }
        Self::from_values(self.ring.clone(), self.cols, self.rows, data)
    }

    /// `M*`: transpose composed with the entrywise involution.
    pub fn conj_transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.ring.involute(self.val(i, j)));
            }
        }
        Self::from_values(self.ring.clone(), self.cols, self.rows, data)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.ring != rhs.ring {
            return Err(mismatch(&self.ring, &rhs.ring));
        }
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.val(i, l);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.val(l, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Value, &Value) -> Value) -> Result<Self> {
        if self.ring != rhs.ring {
            return Err(mismatch(&self.ring, &rhs.ring));
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self::from_values(self.ring.clone(), self.rows, self.cols, data))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let r = self.ring.clone();
        self.zip_with(rhs, |a, b| r.add(a, b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        let r = self.ring.clone();
        self.zip_with(rhs, |a, b| r.sub(a, b))
    }

    pub fn scale(&self, c: &RingElem) -> Result<Self> {
        if c.spec() != &self.ring {
            return Err(mismatch(&self.ring, c.spec()));
        }
        let data = self
            .data
            .iter()
            .map(|v| self.ring.mul(c.value(), v))
            .collect();
        Ok(Self::from_values(self.ring.clone(), self.rows, self.cols, data))
    }

    /// Scalar multiple by a dyadic rational such as 1/2.
    pub fn scale_frac(&self, num: i64, den: i64) -> Result<Self> {
        self.scale(&RingElem::from_frac(&self.ring, num, den)?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Self::identity(&self.ring, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn trace(&self) -> RingElem {
        let mut acc = self.ring.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = self.ring.add(&acc, self.val(i, i));
        }
        RingElem::from_value(self.ring.clone(), acc)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.val(i, j).clone());
            }
        }
        Self::from_values(self.ring.clone(), rows.len(), cols.len(), data)
    }

    pub fn block_diag(ring: &RingSpec, blocks: &[&InvMatrix]) -> Result<Self> {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if &b.ring != ring {
                return Err(mismatch(ring, &b.ring));
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set_val(r0 + i, c0 + j, b.val(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Kronecker product `self (x) rhs`.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        if self.ring != rhs.ring {
            return Err(mismatch(&self.ring, &rhs.ring));
        }
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set_val(
                            i * rhs.rows + k,
                            j * rhs.cols + l,
                            r.mul(self.val(i, j), rhs.val(k, l)),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficients `[1, c_{n-1}, ..., c_0]` of `det(x I - M)`, highest degree
    /// first, by the division-free Samuelson-Berkowitz recursion. Valid over
    /// any commutative ring.
    pub fn charpoly(&self) -> Result<Vec<RingElem>> {
        if !self.is_square() {
            return Err(Error::Dimension("characteristic polynomial of non-square matrix".into()));
        }
        let r = &self.ring;
        let n = self.rows;
        let mut poly = vec![r.one()];
        // grow from the bottom-right 1x1 block upward
        for k in (0..n).rev() {
            let m = n - k - 1; // size of the trailing block below/right of (k,k)
            let a11 = self.val(k, k);
            let row: Vec<&Value> = (k + 1..n).map(|j| self.val(k, j)).collect();
            let mut col: Vec<Value> = (k + 1..n).map(|i| self.val(i, k).clone()).collect();
            // Toeplitz column: 1, -a11, -R C, -R A C, ..., -R A^{m-1} C
            let mut toeplitz = vec![r.one(), r.neg(a11)];
            for _ in 0..m {
                let mut dot = r.zero();
                for (x, y) in row.iter().zip(&col) {
                    dot = r.add(&dot, &r.mul(x, y));
                }
                toeplitz.push(r.neg(&dot));
                // col <- A_trailing * col
                let mut next = Vec::with_capacity(m);
                for i in k + 1..n {
                    let mut acc = r.zero();
                    for (jj, c) in col.iter().enumerate() {
                        acc = r.add(&acc, &r.mul(self.val(i, k + 1 + jj), c));
                    }
                    next.push(acc);
                }
                col = next;
            }
            let mut new_poly = Vec::with_capacity(m + 2);
            for i in 0..m + 2 {
                let mut acc = r.zero();
                for (j, p) in poly.iter().enumerate() {
                    if j <= i && i - j < toeplitz.len() {
                        acc = r.add(&acc, &r.mul(&toeplitz[i - j], p));
                    }
                }
                new_poly.push(acc);
            }
            poly = new_poly;
        }
        Ok(poly
            .into_iter()
            .map(|v| RingElem::from_value(r.clone(), v))
            .collect())
    }

    pub fn det(&self) -> Result<RingElem> {
        let cp = self.charpoly()?;
        let c0 = cp.last().expect("nonempty").clone();
        Ok(if self.rows % 2 == 0 { c0 } else { -c0 })
    }

    /// Adjugate via Cayley-Hamilton: `adj(M) = (-1)^(n+1) (M^(n-1) + c_{n-1} M^(n-2) + ... + c_1 I)`.
    pub fn adjugate(&self) -> Result<Self> {
        let cp = self.charpoly()?;
        let n = self.rows;
        let r = &self.ring;
        if n == 0 {
            return Ok(Self::zeros(r, 0, 0));
        }
        // Horner: Q = ((M + c_{n-1}) M + c_{n-2}) M + ... + c_1
        let id = Self::identity(r, n);
        let mut q = id.clone();
        for c in cp.iter().take(n).skip(1) {
            q = (&q * self).try_add(&id.scale(c)?)?;
        }
        if n % 2 == 0 {
            Ok(-&q)
        } else {
            Ok(q)
        }
    }

    /// Exact determinant, and the inverse when the determinant is a unit.
    pub fn det_and_inverse(&self) -> Result<(RingElem, Option<Self>)> {
        let det = self.det()?;
        if !det.is_unit() {
            return Ok((det, None));
        }
        let inv = self.adjugate()?.scale(&det.inv()?)?;
        Ok((det, Some(inv)))
    }

    pub fn inverse(&self) -> Result<Self> {
        let (det, inv) = self.det_and_inverse()?;
        inv.ok_or_else(|| Error::NonUnit(format!("determinant {det}")))
    }

    /// Whether every entry lies in the nilpotent ideal: `(x)` for truncated
    /// rings, `0` for the reduced rings.
    pub fn in_nil_ideal(&self) -> bool {
        match self.ring.nil_base() {
            Some((base, _)) => self.data.iter().all(|v| match v {
                Value::Trunc(cs) => base.is_zero(&cs[0]),
                _ => false,
            }),
            None => self.is_zero(),
        }
    }

    /// `(I + g)^(-1/2)` as the binomial series `sum_j C(-1/2, j) g^j`, which
    /// terminates because `g` is nilpotent.
    pub fn inv_sqrt_one_plus(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("series of a non-square matrix".into()));
        }
        if !self.in_nil_ideal() {
            return Err(Error::NotNilpotent);
        }
        let mut acc = Self::identity(&self.ring, self.rows);
        let mut power = self.clone();
        let mut j = 1;
        while !power.is_zero() {
            let c = RingElem::from_rational(&self.ring, &binom_neg_half(j))?;
            acc = acc.try_add(&power.scale(&c)?)?;
            power = &power * self;
            j += 1;
        }
        Ok(acc)
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.is_square() && self.conj_transpose() == *self
    }
}

impl fmt::Display for InvMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.ring.display(self.val(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

// Operators panic on ring or shape mismatch, like fixed-size linear algebra
// libraries; the `try_*` methods report it instead.
impl Mul for &InvMatrix {
    type Output = InvMatrix;
    fn mul(self, rhs: &InvMatrix) -> InvMatrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl Add for &InvMatrix {
    type Output = InvMatrix;
    fn add(self, rhs: &InvMatrix) -> InvMatrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl Sub for &InvMatrix {
    type Output = InvMatrix;
    fn sub(self, rhs: &InvMatrix) -> InvMatrix {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl Neg for &InvMatrix {
    type Output = InvMatrix;
    fn neg(self) -> InvMatrix {
        let data = self.data.iter().map(|v| self.ring.neg(v)).collect();
        InvMatrix::from_values(self.ring.clone(), self.rows, self.cols, data)
    }
}
