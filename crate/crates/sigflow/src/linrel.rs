//! Exact linear algebra over the configured field: dense matrices,
//! reduced row echelon form, and linear relations (canonical subspaces of
//! `k^(m+n)`) with composition, tensor, dagger and decidable equality.
//!
//! A relation is stored as the unique RREF basis of its subspace, so
//! equality of relations is entry-by-entry comparison. Inputs occupy
//! coordinates `0..m`, outputs `m..m+n`.

use crate::exactfield::{FieldElem, FieldTag};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("relation is not the graph of a map: {0}")]
    NotAMap(NotAMapReason),
    #[error("brute-force oracle domain has {points} points, above the limit {limit}")]
    OracleTooLarge { points: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotAMapReason {
    /// Some input vector is unrelated to any output (input projection is
    /// not surjective).
    NotTotal,
    /// Some input is related to more than one output.
    NotFunctional,
}

impl std::fmt::Display for NotAMapReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotAMapReason::NotTotal => write!(f, "not total"),
            NotAMapReason::NotFunctional => write!(f, "not functional"),
        }
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix; all entries share one field tag (kept even for
/// empty shapes so degenerate matrices stay well-tagged).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    tag: FieldTag,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zero(tag: FieldTag, rows: usize, cols: usize) -> Matrix {
        Matrix { tag, rows, cols, data: vec![FieldElem::zero(tag); rows * cols] }
    }

    pub fn identity(tag: FieldTag, n: usize) -> Matrix {
        let mut m = Matrix::zero(tag, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::one(tag));
        }
        m
    }

    pub fn from_fn(
        tag: FieldTag,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert_eq!(v.tag(), tag);
                data.push(v);
            }
        }
        Matrix { tag, rows, cols, data }
    }

    pub fn from_rows(
        tag: FieldTag,
        cols: usize,
        rows: Vec<Vec<FieldElem>>,
    ) -> Result<Matrix, LinAlgError> {
        for r in &rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch(format!(
                    "row of length {} in a {cols}-column matrix",
                    r.len()
                )));
            }
        }
        let nrows = rows.len();
        Ok(Matrix { tag, rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        debug_assert_eq!(v.tag(), self.tag);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(self.tag, self.rows, other.cols, |i, j| {
            let mut acc = FieldElem::zero(self.tag);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    /// Block-diagonal direct sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let zero = FieldElem::zero(self.tag);
        Matrix::from_fn(self.tag, self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                zero.clone()
            }
        })
    }
}

/// In-place Gauss–Jordan elimination. Returns the pivot columns; rows are
/// left normalized (pivot 1, zeros above and below) with zero rows sunk to
/// the bottom. Pivot choice is the first nonzero entry in column order.
fn gauss_jordan(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        let Some(pivot_row) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        // swap into place
        if pivot_row != r {
            for j in 0..m.cols {
                let a = m.get(r, j).clone();
                let b = m.get(pivot_row, j).clone();
                m.set(r, j, b);
                m.set(pivot_row, j, a);
            }
        }
        let inv = m.get(r, col).inv().expect("pivot entry is nonzero");
        for j in 0..m.cols {
            m.set(r, j, m.get(r, j).mul(&inv));
        }
        for i in 0..m.rows {
            if i != r && !m.get(i, col).is_zero() {
                let factor = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    pivots
}

/// Unique reduced row echelon form of the row space, zero rows dropped.
pub fn rref(m: &Matrix) -> Matrix {
    rref_with_pivots(m).0
}

pub(crate) fn rref_with_pivots(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut work = m.clone();
    let pivots = gauss_jordan(&mut work);
    let rank = pivots.len();
    work.data.truncate(rank * work.cols);
    work.rows = rank;
    (work, pivots)
}

/// Basis of the null space `{x : M·x = 0}`, one vector per free column in
/// ascending column order (a canonical choice).
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<FieldElem>> {
    let (r, pivots) = rref_with_pivots(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![FieldElem::zero(m.tag); m.cols];
        v[free] = FieldElem::one(m.tag);
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = r.get(i, free).neg();
        }
        basis.push(v);
    }
    basis
}

/// Rank of a matrix.
pub fn rank(m: &Matrix) -> usize {
    rref_with_pivots(m).1.len()
}

// ---------------------------------------------------------------------------
// Linear relations
// ---------------------------------------------------------------------------

/// A linear relation `k^m ↛ k^n`: the canonical (RREF, no zero rows)
/// basis of a subspace of `k^(m+n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinRel {
    m: usize,
    n: usize,
    basis: Matrix,
}

impl LinRel {
    /// Canonical relation spanned by the given vectors of `k^(m+n)`.
    pub fn span(
        tag: FieldTag,
        m: usize,
        n: usize,
        rows: Vec<Vec<FieldElem>>,
    ) -> Result<LinRel, LinAlgError> {
        let raw = Matrix::from_rows(tag, m + n, rows)?;
        Ok(LinRel { m, n, basis: rref(&raw) })
    }

    /// The zero-dimensional relation on a signature (contains only the
    /// zero vector; for `(0,0)` this is the unique relation).
    pub fn zero_rel(tag: FieldTag, m: usize, n: usize) -> LinRel {
        LinRel { m, n, basis: Matrix::zero(tag, 0, m + n) }
    }

    /// The identity relation on `k^n`.
    pub fn identity(tag: FieldTag, n: usize) -> LinRel {
        graph_of(&Matrix::identity(tag, n))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn tag(&self) -> FieldTag {
        self.basis.tag()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Membership test by elimination against the canonical basis.
    pub fn contains(&self, z: &[FieldElem]) -> bool {
        assert_eq!(z.len(), self.m + self.n);
        let mut v: Vec<FieldElem> = z.to_vec();
        for i in 0..self.basis.rows() {
            let pivot = self
                .basis
                .row(i)
                .iter()
                .position(|e| !e.is_zero())
                .expect("canonical basis has no zero rows");
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for (j, vj) in v.iter_mut().enumerate() {
                    *vj = vj.sub(&factor.mul(self.basis.get(i, j)));
                }
            }
        }
        v.iter().all(|e| e.is_zero())
    }
}

/// Decidable equality: signatures match and canonical bases are
/// entry-identical.
pub fn rel_equal(a: &LinRel, b: &LinRel) -> bool {
    a == b
}

/// Relational composite `L2 ∘ L`: pairs `(u, w)` such that some middle
/// vector `v` has `(u, v) ∈ L` and `(v, w) ∈ L2`.
///
/// With `L` spanned by rows `(uᵢ|vᵢ)` and `L2` by `(v'ⱼ|wⱼ)`, the kernel
/// of the `p × (r₁+r₂)` matrix whose columns are `vᵢ` and `−v'ⱼ` yields the
/// coefficient pairs `(a, b)` with `Σaᵢvᵢ = Σbⱼv'ⱼ`; the composite is
/// spanned by the corresponding `(Σaᵢuᵢ | Σbⱼwⱼ)`.
pub fn rel_compose(l1: &LinRel, l2: &LinRel) -> Result<LinRel, LinAlgError> {
    if l1.n != l2.m {
        return Err(LinAlgError::DimensionMismatch(format!(
            "composing a relation with {} outputs into one with {} inputs",
            l1.n, l2.m
        )));
    }
    let tag = l1.tag();
    let (m, p, n) = (l1.m, l1.n, l2.n);
    let (r1, r2) = (l1.dim(), l2.dim());
    let middle = Matrix::from_fn(tag, p, r1 + r2, |k, c| {
        if c < r1 {
            l1.basis.get(c, m + k).clone()
        } else {
            l2.basis.get(c - r1, k).neg()
        }
    });
    let mut rows = Vec::new();
    for ab in kernel_basis(&middle) {
        let mut row = vec![FieldElem::zero(tag); m + n];
        for (i, a) in ab[..r1].iter().enumerate() {
            for (x, rx) in row.iter_mut().enumerate().take(m) {
                *rx = rx.add(&a.mul(l1.basis.get(i, x)));
            }
        }
        for (j, b) in ab[r1..].iter().enumerate() {
            for y in 0..n {
                row[m + y] = row[m + y].add(&b.mul(l2.basis.get(j, p + y)));
            }
        }
        rows.push(row);
    }
    LinRel::span(tag, m, n, rows)
}

/// Direct-sum tensor: inputs of `L` precede inputs of `L2`, outputs of `L`
/// precede outputs of `L2`.
pub fn rel_tensor(l1: &LinRel, l2: &LinRel) -> LinRel {
    let tag = l1.tag();
    let (m1, n1, m2, n2) = (l1.m, l1.n, l2.m, l2.n);
    let cols = m1 + m2 + n1 + n2;
    let mut rows = Vec::with_capacity(l1.dim() + l2.dim());
    for i in 0..l1.dim() {
        let mut row = vec![FieldElem::zero(tag); cols];
        row[..m1].clone_from_slice(&l1.basis.row(i)[..m1]);
        row[m1 + m2..m1 + m2 + n1].clone_from_slice(&l1.basis.row(i)[m1..]);
        rows.push(row);
    }
    for j in 0..l2.dim() {
        let mut row = vec![FieldElem::zero(tag); cols];
        row[m1..m1 + m2].clone_from_slice(&l2.basis.row(j)[..m2]);
        row[m1 + m2 + n1..].clone_from_slice(&l2.basis.row(j)[m2..]);
        rows.push(row);
    }
    LinRel::span(tag, m1 + m2, n1 + n2, rows).expect("rows constructed with matching width")
}

/// The adjoint `L† = {(v, u) : (u, v) ∈ L}`.
pub fn rel_dagger(l: &LinRel) -> LinRel {
    let tag = l.tag();
    let rows = (0..l.dim())
        .map(|i| {
            let r = l.basis.row(i);
            let mut row = Vec::with_capacity(l.m + l.n);
            row.extend_from_slice(&r[l.m..]);
            row.extend_from_slice(&r[..l.m]);
            row
        })
        .collect();
    LinRel::span(tag, l.n, l.m, rows).expect("rows constructed with matching width")
}

/// Graph of a linear map: for `A : k^m → k^n` (an `n×m` matrix), the span
/// of the rows `(eᵢ | A·eᵢ)`.
pub fn graph_of(a: &Matrix) -> LinRel {
    let tag = a.tag();
    let (n, m) = (a.rows(), a.cols());
    let rows = (0..m)
        .map(|i| {
            let mut row = vec![FieldElem::zero(tag); m + n];
            row[i] = FieldElem::one(tag);
            for j in 0..n {
                row[m + j] = a.get(j, i).clone();
            }
            row
        })
        .collect();
    LinRel::span(tag, m, n, rows).expect("rows constructed with matching width")
}

/// Recover the matrix of a relation that is the graph of a map.
///
/// Succeeds iff `dim L = m` and the input block of the basis has rank `m`;
/// in canonical form the pivots then form an identity on the input block
/// and the output block is the transposed matrix.
pub fn as_map(l: &LinRel) -> Result<Matrix, LinAlgError> {
    let input_block = Matrix::from_fn(l.tag(), l.dim(), l.m, |i, j| l.basis.get(i, j).clone());
    let ri = rank(&input_block);
    if l.dim() > ri {
        // some (0 | w), w ≠ 0 lies in L: one input maps to several outputs
        return Err(LinAlgError::NotAMap(NotAMapReason::NotFunctional));
    }
    if ri < l.m {
        return Err(LinAlgError::NotAMap(NotAMapReason::NotTotal));
    }
    // dim = m and input rank m force pivots exactly on the input columns.
    Ok(Matrix::from_fn(l.tag(), l.n, l.m, |j, i| l.basis.get(i, l.m + j).clone()))
}

/// Constraint view: the RREF matrix `C` with `L = {z : C·z = 0}`;
/// `C` has `m+n` columns and `m+n − dim L` rows.
pub fn annihilator(l: &LinRel) -> Matrix {
    let tag = l.tag();
    let rows = kernel_basis(&l.basis);
    let raw = Matrix::from_rows(tag, l.m + l.n, rows).expect("kernel vectors have full width");
    rref(&raw)
}

/// Test oracle: compose two relations over `GF(p)` by enumerating every
/// vector, materializing the relations as finite sets and composing
/// set-theoretically. Refuses when `p^(m+p+n)` exceeds `10^6`.
pub fn brute_compose(l1: &LinRel, l2: &LinRel) -> Result<LinRel, LinAlgError> {
    const LIMIT: u64 = 1_000_000;
    if l1.n != l2.m {
        return Err(LinAlgError::DimensionMismatch(format!(
            "composing a relation with {} outputs into one with {} inputs",
            l1.n, l2.m
        )));
    }
    let tag = l1.tag();
    let FieldTag::GFp(p) = tag else {
        return Err(LinAlgError::DimensionMismatch(
            "brute-force oracle only runs over GF(p)".to_string(),
        ));
    };
    let (m, mid, n) = (l1.m, l1.n, l2.n);
    let points = (p as u64).checked_pow((m + mid + n) as u32).unwrap_or(u64::MAX);
    if points > LIMIT {
        return Err(LinAlgError::OracleTooLarge { points, limit: LIMIT });
    }

    let residue = |e: &FieldElem| -> u32 {
        match e {
            FieldElem::GFp { r, .. } => *r,
            _ => unreachable!("oracle relations are over GF(p)"),
        }
    };
    let elems: Vec<FieldElem> = (0..p).map(|v| FieldElem::from_int(tag, v as i64)).collect();
    let enumerate = |len: usize| -> Vec<Vec<FieldElem>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for v in &out {
                for e in &elems {
                    let mut w = v.clone();
                    w.push(e.clone());
                    next.push(w);
                }
            }
            out = next;
        }
        out
    };

    // index middle values of the first relation's members
    let mut by_middle: std::collections::HashMap<Vec<u32>, Vec<Vec<FieldElem>>> =
        std::collections::HashMap::new();
    for z in enumerate(m + mid) {
        if l1.contains(&z) {
            let key: Vec<u32> = z[m..].iter().map(residue).collect();
            by_middle.entry(key).or_default().push(z[..m].to_vec());
        }
    }
    let mut rows = Vec::new();
    for z in enumerate(mid + n) {
        if l2.contains(&z) {
            let key: Vec<u32> = z[..mid].iter().map(residue).collect();
            if let Some(us) = by_middle.get(&key) {
                for u in us {
                    let mut row = u.clone();
                    row.extend_from_slice(&z[mid..]);
                    rows.push(row);
                }
            }
        }
    }
    LinRel::span(tag, m, n, rows)
}

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

/// Canonical relation text format: header `rel m n dim`, then one line per
/// basis row of space-separated scalar literals.
pub fn format_rel(l: &LinRel) -> String {
    let mut out = format!("rel {} {} {}\n", l.m, l.n, l.dim());
    for i in 0..l.dim() {
        let line: Vec<String> =
            l.basis.row(i).iter().map(crate::exactfield::format_scalar).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Matrix block format: header `matrix rows cols`, then one line per row.
pub fn format_matrix(a: &Matrix) -> String {
    let mut out = format!("matrix {} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let line: Vec<String> = a.row(i).iter().map(crate::exactfield::format_scalar).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
