//! Exact linear algebra over Q.
//!
//! Matrices are stored as sorted sparse rows. Everything that needs a
//! canonical answer (kernel bases, quotient representatives, solutions) goes
//! through [`Matrix::rref`], which pivots on the first nonzero column and the
//! smallest available row index. Plain ranks use a cheaper incremental
//! elimination that never reduces above the pivot.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// A sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

/// A dense coordinate vector.
pub type Vector = Vec<Rational>;

/// `x + c * y` for sparse vectors.
pub fn axpy(x: &[(usize, Rational)], c: &Rational, y: &[(usize, Rational)]) -> SparseVec {
    if c.is_zero() {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let xi = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let yj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if xi < yj {
            out.push(x[i].clone());
            i += 1;
        } else if yj < xi {
            out.push((yj, c * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + &(c * &y[j].1);
            if !v.is_zero() {
                out.push((xi, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(x: &[(usize, Rational)], c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, v * c)).collect()
}

/// Converts a dense vector to sparse form.
pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Converts a sparse vector to a dense vector of length `n`.
pub fn to_dense(v: &[(usize, Rational)], n: usize) -> Vector {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Accumulates unsorted `(index, value)` contributions into a sparse vector.
pub fn collect_sparse(mut entries: Vec<(usize, Rational)>) -> SparseVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// A rational matrix with sparse rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    /// Nonzero rows of the reduced form; row `i` has leading 1 at `pivots[i]`.
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, Rational::one())]).collect() }
    }

    /// Builds from sparse rows. Entries must be sorted, in range and nonzero.
    pub fn from_sparse_rows(rows: usize, cols: usize, data: Vec<SparseVec>) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|(c, v)| *c < cols && !v.is_zero())));
        Matrix { rows, cols, data }
    }

    /// Builds from sparse columns.
    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let cols = columns.len();
        let mut data = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                assert!(*r < rows, "column entry out of range");
                data[*r].push((c, v.clone()));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vector]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        Self::from_dense_shape(rows.len(), cols, rows)
    }

    fn from_dense_shape(nrows: usize, cols: usize, rows: &[Vector]) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix { rows: nrows, cols, data: rows.iter().map(|r| to_sparse(r)).collect() }
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        Self::from_dense_shape(rows.len(), cols, &dense)
    }

    /// Matrix whose columns are the given dense vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let sparse: Vec<SparseVec> = columns
            .iter()
            .map(|c| {
                assert_eq!(c.len(), rows, "column length mismatch");
                to_sparse(c)
            })
            .collect();
        Self::from_sparse_columns(rows, &sparse)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        self.data.iter().map(|r| to_dense(r, self.cols)).collect()
    }

    /// Column `c` as a dense vector.
    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Columns as sparse vectors.
    pub fn sparse_columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vector {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| row.iter().map(|(c, v)| v * &x[*c]).sum())
            .collect()
    }

    pub fn mul_sparse(&self, x: &[(usize, Rational)]) -> SparseVec {
        let mut dense = vec![Rational::zero(); self.cols];
        for (i, v) in x {
            dense[*i] = v.clone();
        }
        to_sparse(&self.mul_vec(&dense))
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec = Vec::new();
                for (k, v) in row {
                    acc = axpy(&acc, v, &rhs.data[*k]);
                }
                acc
            })
            .collect();
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        let one = Rational::one();
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| axpy(a, &one, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| scale(r, c)).collect() }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.scaled(&Rational::from_int(-1)))
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                r
            })
            .collect();
        Matrix { rows: self.rows, cols: self.cols + rhs.cols, data }
    }

    /// `self ⊗ I_n`, with index `i * n + μ`.
    pub fn kron_identity(&self, n: usize) -> Matrix {
        if n == 1 {
            return self.clone();
        }
        let mut data = Vec::with_capacity(self.rows * n);
        for row in &self.data {
            for mu in 0..n {
                data.push(row.iter().map(|(j, v)| (j * n + mu, v.clone())).collect());
            }
        }
        Matrix { rows: self.rows * n, cols: self.cols * n, data }
    }

    /// The rows with the given indices, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    /// The columns with the given (ascending) indices.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]), "column selection must ascend");
        let mut new_of = vec![usize::MAX; self.cols];
        for (t, &j) in idx.iter().enumerate() {
            new_of[j] = t;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| new_of[*j] != usize::MAX)
                    .map(|(j, v)| (new_of[*j], v.clone()))
                    .collect()
            })
            .collect();
        Matrix { rows: self.rows, cols: idx.len(), data }
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.cols < self.rows {
            return self.transpose().rank();
        }
        let mut pivot_of: Vec<Option<usize>> = vec![None; self.cols];
        let mut basis: Vec<SparseVec> = Vec::new();
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by_key(|&i| self.data[i].len());
        for i in order {
            let mut r = self.data[i].clone();
            while let Some((lead, coeff)) = r.first().cloned() {
                match pivot_of[lead] {
                    Some(p) => r = axpy(&r, &(-&coeff), &basis[p]),
                    None => {
                        let inv = coeff.recip();
                        pivot_of[lead] = Some(basis.len());
                        basis.push(scale(&r, &inv));
                        break;
                    }
                }
            }
        }
        basis.len()
    }

    /// Reduced row echelon form with deterministic pivoting.
    pub fn rref(&self) -> Echelon {
        let mut work: Vec<SparseVec> = self.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut done = 0usize;
        let mut pivots = Vec::new();
        for col in 0..self.cols {
            // rows below `done` have zeros in every column < col
            let found = (done..work.len()).find(|&i| work[i].first().map(|e| e.0) == Some(col));
            let Some(i) = found else { continue };
            work.swap(done, i);
            let inv = work[done][0].1.recip();
            work[done] = scale(&work[done], &inv);
            let pivot_row = work[done].clone();
            for (k, row) in work.iter_mut().enumerate() {
                if k == done {
                    continue;
                }
                if let Ok(pos) = row.binary_search_by_key(&col, |e| e.0) {
                    let c = -&row[pos].1;
                    *row = axpy(row, &c, &pivot_row);
                }
            }
            pivots.push(col);
            done += 1;
            if done == work.len() {
                break;
            }
        }
        work.truncate(done);
        Echelon { cols: self.cols, rows: work, pivots }
    }

    /// A basis of the null space, one vector per free column (ascending), each
    /// with a 1 in its free column and 0 in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let e = self.rref();
        e.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in e.rows.iter().zip(&e.pivots) {
                    if let Ok(k) = row.binary_search_by_key(&f, |x| x.0) {
                        v[p] = -&row[k].1;
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the image.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let rhs = Matrix::from_columns(self.rows, &[b.to_vec()]);
        let e = self.hstack(&rhs).rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if let Some((c, v)) = row.last() {
                if *c == self.cols {
                    x[p] = v.clone();
                }
            }
        }
        Some(x)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let e = self.hstack(&Matrix::identity(n)).rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let data = e.rows[..n]
            .iter()
            .map(|r| r.iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v.clone())).collect())
            .collect();
        Some(Matrix { rows: n, cols: n, data })
    }

    /// Dense rows of rational strings (for serialization).
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.to_dense().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Dense<'a> {
            rows: usize,
            cols: usize,
            entries: &'a [Vector],
        }
        let dense = self.to_dense();
        Dense { rows: self.rows, cols: self.cols, entries: &dense }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Dense {
            rows: usize,
            cols: usize,
            entries: Vec<Vector>,
        }
        let m = Dense::deserialize(d)?;
        if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
            return Err(serde::de::Error::custom("matrix entries do not match shape"));
        }
        Ok(Matrix::from_dense_shape(m.rows, m.cols, &m.entries))
    }
}

/// `rank(m)`.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// `kernel_basis(m)`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

/// `solve(m, b)`.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vector> {
    m.solve(b)
}

/// A quotient `Q^n / span(sub)` with a chosen complement of coordinate
/// directions.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient_dim: usize,
    /// Reduced echelon basis of the subspace being quotiented out.
    pub sub_basis: Vec<SparseVec>,
    /// Coordinate directions spanning the chosen complement, ascending.
    pub rep_coords: Vec<usize>,
    /// Ambient coordinates to quotient coordinates.
    pub project: Matrix,
}

impl Subquotient {
    pub fn dim(&self) -> usize {
        self.rep_coords.len()
    }

    /// The chosen representatives as ambient vectors.
    pub fn rep_basis(&self) -> Vec<Vector> {
        self.rep_coords
            .iter()
            .map(|&j| {
                let mut v = vec![Rational::zero(); self.ambient_dim];
                v[j] = Rational::one();
                v
            })
            .collect()
    }

    /// Quotient coordinates of an ambient sparse vector.
    pub fn project_sparse(&self, v: &[(usize, Rational)]) -> SparseVec {
        // column access on `project` through the transpose would be wasteful;
        // reuse the echelon structure instead
        let mut acc: Vec<(usize, Rational)> = Vec::new();
        for (i, x) in v {
            match self.rep_coords.binary_search(i) {
                Ok(t) => acc.push((t, x.clone())),
                Err(_) => {
                    let row = self
                        .sub_basis
                        .iter()
                        .find(|r| r.first().map(|e| e.0) == Some(*i))
                        .expect("non-representative coordinate must be a pivot");
                    for (j, y) in row.iter().skip(1) {
                        if let Ok(t) = self.rep_coords.binary_search(j) {
                            acc.push((t, -(x * y)));
                        }
                    }
                }
            }
        }
        collect_sparse(acc)
    }

    pub fn project_vec(&self, v: &[Rational]) -> Vector {
        self.project.mul_vec(v)
    }
}

/// The quotient of `Q^ambient_dim` by the span of `sub`.
pub fn quotient(ambient_dim: usize, sub: &[Vector]) -> Subquotient {
    assert!(sub.iter().all(|v| v.len() == ambient_dim), "subspace vector of wrong length");
    let m = Matrix::from_dense_shape(sub.len(), ambient_dim, sub);
    quotient_of_rows(&m)
}

/// The quotient of `Q^cols` by the row space of `m`.
pub fn quotient_of_rows(m: &Matrix) -> Subquotient {
    let ambient_dim = m.cols();
    let e = m.rref();
    let rep_coords = e.free_columns();
    let mut rows = vec![Vec::new(); rep_coords.len()];
    for (t, &j) in rep_coords.iter().enumerate() {
        rows[t].push((j, Rational::one()));
    }
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        for (j, y) in row.iter() {
            if let Ok(t) = rep_coords.binary_search(j) {
                rows[t].push((p, -y));
            }
        }
    }
    let data = rows.into_iter().map(collect_sparse).collect();
    let project = Matrix::from_sparse_rows(rep_coords.len(), ambient_dim, data);
    Subquotient { ambient_dim, sub_basis: e.rows, rep_coords, project }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
        let k = Matrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn quotient_examples() {
        let s = quotient(3, &[vec![q(1), q(0), q(0)]]);
        assert_eq!(s.rep_coords, vec![1, 2]);
        let all = quotient(2, &[vec![q(1), q(1)], vec![q(0), q(3)]]);
        assert_eq!(all.dim(), 0);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-2)];
        assert_eq!(Matrix::identity(2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(2, 2).solve(&b), None);
        assert_eq!(Matrix::zeros(2, 2).solve(&[q(0), q(0)]), Some(vec![q(0), q(0)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rref_pivots_first_nonzero_column() {
        let m = Matrix::from_i64(&[&[0, 2, 4], &[0, 1, 2], &[1, 0, 0]]);
        let e = m.rref();
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.rows[1], vec![(1, q(1)), (2, q(2))]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r).prop_map(move |rows| {
                let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                Matrix::from_i64(&refs)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            prop_assert_eq!(m.rank(), m.rref().rank());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            if !k.is_empty() {
                prop_assert_eq!(Matrix::from_columns(m.cols(), &k).rank(), k.len());
            }
        }

        #[test]
        fn solve_reproduces_image(m in small_matrix(), seed in proptest::collection::vec(-4i64..5, 6)) {
            let x: Vector = (0..m.cols()).map(|i| q(seed[i])).collect();
            let b = m.mul_vec(&x);
            let y = m.solve(&b).expect("image vector must be solvable");
            prop_assert_eq!(m.mul_vec(&y), b);
        }

        #[test]
        fn subquotient_invariants(m in small_matrix()) {
            let s = quotient_of_rows(&m);
            prop_assert_eq!(s.dim() + m.rank(), m.cols());
            let incl = Matrix::from_columns(m.cols(), &s.rep_basis());
            prop_assert_eq!(s.project.mul(&incl), Matrix::identity(s.dim()));
            prop_assert!(s.project.mul(&m.transpose()).is_zero());
            for r in 0..m.rows() {
                prop_assert!(s.project_sparse(m.row(r)).is_empty());
            }
            let v: Vector = (0..m.cols()).map(|i| q(i as i64 - 2)).collect();
            prop_assert_eq!(to_dense(&s.project_sparse(&to_sparse(&v)), s.dim()), s.project_vec(&v));
        }
    }
}
