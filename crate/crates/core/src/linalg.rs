//! Exact dense linear algebra over the prime fields F_p, p in {2, 3, 5, 7}.
//!
//! Everything is computed over residues stored as `u8`; there is no floating
//! point anywhere in this crate. Subspaces are kept in reduced row-echelon
//! form so that equal subspaces have identical representations.

use crate::error::{Error, Result};

pub const SUPPORTED_MODULI: [u8; 4] = [2, 3, 5, 7];

/// Default cap on exhaustive enumerations (p^dim and friends).
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

/// Checks that `p` is one of the supported primes.
pub fn validate_modulus(p: u64) -> Result<u8> {
    if SUPPORTED_MODULI.contains(&(p as u8)) && p <= 7 {
        Ok(p as u8)
    } else {
        Err(Error::UnsupportedModulus(p))
    }
}

#[inline]
fn add_mod(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 + b as u16) % p as u16) as u8
}

#[inline]
fn mul_mod(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

#[inline]
fn neg_mod(a: u8, p: u8) -> u8 {
    if a == 0 { 0 } else { p - a }
}

#[inline]
fn inv_mod(a: u8, p: u8) -> u8 {
    debug_assert!(a != 0 && a < p);
    // p <= 7, a linear scan is fine
    (1..p).find(|&b| mul_mod(a, b, p) == 1).expect("unit in a prime field")
}

/// Dense row-major matrix over F_p. Zero-row and zero-column shapes are
/// valid and show up constantly (maps in and out of zero vertex spaces).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    p: u8,
    entries: Vec<u8>,
}

impl MatrixFp {
    pub fn new(rows: usize, cols: usize, entries: Vec<u64>, p: u64) -> Result<Self> {
        let p = validate_modulus(p)?;
        if entries.len() != rows * cols {
            return Err(Error::BadEntryCount { rows, cols, given: entries.len() });
        }
        let mut data = Vec::with_capacity(entries.len());
        for &e in &entries {
            if e >= p as u64 {
                return Err(Error::EntryOutOfRange { entry: e, modulus: p as u64 });
            }
            data.push(e as u8);
        }
        Ok(MatrixFp { rows, cols, p, entries: data })
    }

    /// Constructor for residues already known to be reduced mod `p`.
    pub(crate) fn from_reduced(rows: usize, cols: usize, entries: Vec<u8>, p: u8) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|&e| e < p));
        MatrixFp { rows, cols, p, entries }
    }

    pub fn zeros(rows: usize, cols: usize, p: u8) -> Self {
        MatrixFp { rows, cols, p, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u8) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(v < self.p);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = MatrixFp::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        MatrixFp { rows: self.rows, cols: self.cols, p: self.p, entries }
    }

    pub fn scale(&self, c: u8) -> MatrixFp {
        let entries = self.entries.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        MatrixFp { rows: self.rows, cols: self.cols, p: self.p, entries }
    }

    pub fn mul(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.p, other.p);
        let mut out = MatrixFp::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add_mod(out.get(i, j), mul_mod(a, other.get(k, j), self.p), self.p);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u8;
                for j in 0..self.cols {
                    acc = add_mod(acc, mul_mod(self.get(i, j), v[j], self.p), self.p);
                }
                acc
            })
            .collect()
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        MatrixFp { rows: self.rows + other.rows, cols: self.cols, p: self.p, entries }
    }

    /// Reduced row-echelon form and rank. Pivots are chosen deterministically:
    /// leftmost column first, smallest row index within the column. Zero rows
    /// stay in place at the bottom, so the shape is preserved.
    pub fn rref(&self) -> (MatrixFp, usize) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..m.cols {
                    let a = m.get(pivot_row, j);
                    let b = m.get(src, j);
                    m.set(pivot_row, j, b);
                    m.set(src, j, a);
                }
            }
            let inv = inv_mod(m.get(pivot_row, col), p);
            for j in 0..m.cols {
                m.set(pivot_row, j, mul_mod(m.get(pivot_row, j), inv, p));
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = add_mod(
                        m.get(r, j),
                        mul_mod(neg_mod(factor, p), m.get(pivot_row, j), p),
                        p,
                    );
                    m.set(r, j, v);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Canonical basis of the right kernel {v : M v = 0}.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, rank) = self.rref();
        let mut pivot_cols = Vec::with_capacity(rank);
        for row in 0..rank {
            let col = (0..r.cols).find(|&c| r.get(row, c) != 0).expect("nonzero row");
            pivot_cols.push(col);
        }
        let mut basis_rows = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = neg_mod(r.get(row, free), self.p);
            }
            basis_rows.push(v);
        }
        Subspace::span(self.cols, self.p, basis_rows)
    }

    /// Canonical basis of the left kernel {x : x M = 0}.
    pub fn left_kernel_basis(&self) -> Subspace {
        self.transpose().kernel_basis()
    }
}

/// Solution space of a homogeneous system: the constraint rows are stacked
/// into one matrix and the kernel is returned. An empty constraint set (zero
/// rows) yields the full ambient space.
pub fn solve_all(constraints: &MatrixFp) -> Subspace {
    constraints.kernel_basis()
}

/// A subspace of F_p^ambient stored by its reduced row-echelon basis with no
/// zero rows. The representation is canonical: equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    p: u8,
    basis: MatrixFp,
}

impl Subspace {
    pub fn zero(ambient: usize, p: u8) -> Self {
        Subspace { ambient, p, basis: MatrixFp::zeros(0, ambient, p) }
    }

    pub fn full(ambient: usize, p: u8) -> Self {
        Subspace { ambient, p, basis: MatrixFp::identity(ambient, p) }
    }

    /// Canonical subspace spanned by the given row vectors.
    pub fn span<I>(ambient: usize, p: u8, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let mut entries = Vec::new();
        let mut n = 0usize;
        for row in rows {
            assert_eq!(row.len(), ambient, "spanning vector length mismatch");
            entries.extend_from_slice(&row);
            n += 1;
        }
        let m = MatrixFp::from_reduced(n, ambient, entries, p);
        Self::from_matrix_rows(&m)
    }

    /// Canonical subspace spanned by the rows of a matrix.
    pub fn from_matrix_rows(m: &MatrixFp) -> Self {
        let (r, rank) = m.rref();
        let mut entries = Vec::with_capacity(rank * m.cols());
        for row in 0..rank {
            entries.extend_from_slice(r.row(row));
        }
        Subspace {
            ambient: m.cols(),
            p: m.modulus(),
            basis: MatrixFp::from_reduced(rank, m.cols(), entries, m.modulus()),
        }
    }

    /// Column space of a matrix, i.e. the span of its columns.
    pub fn column_space(m: &MatrixFp) -> Self {
        Self::from_matrix_rows(&m.transpose())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixFp {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.basis.rows()).map(move |i| self.basis.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Columns holding the pivots of the echelon basis, in row order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.rows())
            .map(|i| (0..self.ambient).find(|&c| self.basis.get(i, c) != 0).expect("nonzero row"))
            .collect()
    }

    /// Residual of `v` after eliminating against the basis; zero iff `v` lies
    /// in the subspace.
    fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let mut w = v.to_vec();
        for (row, &pc) in self.pivots().iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for j in 0..self.ambient {
                w[j] = add_mod(w[j], mul_mod(neg_mod(c, self.p), self.basis.get(row, j), self.p), self.p);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    /// With a reduced basis, coordinates are just the entries at the pivots.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&pc| v[pc]).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        other.basis_rows().all(|row| self.contains(row))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_matrix_rows(&self.basis.vstack(&other.basis))
    }

    /// Intersection via the left kernel of the stacked bases: a combination
    /// u A = v B is exactly a vector of the intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let a = &self.basis;
        let b = &other.basis;
        let stacked = a.vstack(&b.scale(neg_mod(1, self.p)));
        let left = stacked.left_kernel_basis();
        let rows = left.basis_rows().map(|x| {
            let mut w = vec![0u8; self.ambient];
            for (i, &xi) in x.iter().take(a.rows()).enumerate() {
                if xi == 0 {
                    continue;
                }
                for j in 0..self.ambient {
                    w[j] = add_mod(w[j], mul_mod(xi, a.get(i, j), self.p), self.p);
                }
            }
            w
        });
        let rows: Vec<Vec<u8>> = rows.collect();
        Subspace::span(self.ambient, self.p, rows)
    }
}

/// Iterator over all vectors of F_p^dim in lexicographic order, most
/// significant coordinate first: (0,..,0), (0,..,1), ...
pub struct VectorEnumerator {
    dim: usize,
    p: u8,
    current: Option<Vec<u8>>,
}

impl Iterator for VectorEnumerator {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let out = self.current.clone()?;
        // odometer increment, rightmost digit fastest
        let cur = self.current.as_mut().unwrap();
        let mut i = self.dim;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] + 1 < self.p {
                cur[i] += 1;
                for d in cur.iter_mut().skip(i + 1) {
                    *d = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Number of vectors in F_p^dim, checked against `cap`.
pub fn count_vectors(dim: usize, p: u8, cap: u64, what: &str) -> Result<u64> {
    let total = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::CapExceeded { what: what.to_string(), needed: total, cap });
    }
    Ok(total as u64)
}

/// Enumerates every vector of F_p^dim exactly once, erroring out when
/// p^dim exceeds `cap`.
pub fn enumerate_vectors(dim: usize, p: u8, cap: u64) -> Result<VectorEnumerator> {
    count_vectors(dim, p, cap, "vector enumeration")?;
    Ok(VectorEnumerator { dim, p, current: Some(vec![0; dim]) })
}

/// All subspaces of F_p^ambient, each exactly once, via enumeration of
/// reduced echelon bases (pivot column set plus free entries). Intended for
/// small ambient dimensions; used as the exhaustive oracle in tests.
pub fn enumerate_subspaces(ambient: usize, p: u8) -> Vec<Subspace> {
    let mut out = vec![Subspace::zero(ambient, p)];
    for rank in 1..=ambient {
        for pivot_cols in combinations(ambient, rank) {
            // free positions: (row, col) with col > pivot of the row and col not a pivot
            let mut free = Vec::new();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                for col in pc + 1..ambient {
                    if !pivot_cols.contains(&col) {
                        free.push((row, col));
                    }
                }
            }
            let fills = VectorEnumerator { dim: free.len(), p, current: Some(vec![0; free.len()]) };
            for fill in fills {
                let mut m = MatrixFp::zeros(rank, ambient, p);
                for (row, &pc) in pivot_cols.iter().enumerate() {
                    m.set(row, pc, 1);
                }
                for (&(row, col), &v) in free.iter().zip(&fill) {
                    m.set(row, col, v);
                }
                out.push(Subspace { ambient, p, basis: m });
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
