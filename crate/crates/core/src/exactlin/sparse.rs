use serde::{Deserialize, Serialize};

use super::Scalar;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Scalar::one())] }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(d: &[Scalar]) -> Self {
        SparseVec {
            entries: d
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn from_ints(d: &[i64]) -> Self {
        Self::from_dense(&d.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut d = vec![Scalar::zero(); n];
        for (i, v) in &self.entries {
            d[*i] = v.clone();
        }
        d
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|p| p.0)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, c * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Scalar::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut s = Scalar::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += &(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    /// Relabels indices through `f`; `f` must be injective on the support.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect())
    }

    /// Keeps only indices for which `f` returns `Some`, relabelled.
    pub fn filter_map_indices(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))).collect(),
        )
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, rows: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < ncols)));
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }

    /// The matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        SparseMatrix::from_rows(nrows, cols.to_vec()).transpose()
    }

    pub fn from_dense(d: &[Vec<Scalar>]) -> Self {
        let ncols = d.first().map_or(0, |r| r.len());
        SparseMatrix::from_rows(ncols, d.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_ints(d: &[&[i64]]) -> Self {
        let ncols = d.first().map_or(0, |r| r.len());
        SparseMatrix::from_rows(ncols, d.iter().map(|r| SparseVec::from_ints(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.nnz()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let r = &self.rows[i];
        let delta = &v - &r.get(j);
        self.rows[i] = r.axpy(&delta, &SparseVec::unit(j));
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                cols[j].push((i, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot(v)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        )
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = SparseVec::new();
                for (k, a) in r.iter() {
                    acc = acc.axpy(a, &other.rows[k]);
                }
                acc
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&-Scalar::one(), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        SparseMatrix {
            nrows: rows.len(),
            ncols: cols.len(),
            rows: rows
                .iter()
                .map(|&r| {
                    self.rows[r].filter_map_indices(|j| (pos[j] != usize::MAX).then_some(pos[j]))
                })
                .collect(),
        }
    }

    /// Entries of `self` as `(row, col, value)` triples in row-major order.
    pub fn triples(&self) -> Vec<(usize, usize, Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, j, v.clone())))
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let shift = self.ncols;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r.map_indices(|j| j + shift)));
        SparseMatrix { nrows: self.nrows + other.nrows, ncols: self.ncols + other.ncols, rows }
    }

    /// Kronecker product, row index `i * other.nrows + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for a in &self.rows {
            for b in &other.rows {
                let mut pairs = Vec::with_capacity(a.nnz() * b.nnz());
                for (j, x) in a.iter() {
                    for (l, y) in b.iter() {
                        pairs.push((j * other.ncols + l, x * y));
                    }
                }
                rows.push(SparseVec::from_pairs(pairs));
            }
        }
        SparseMatrix { nrows: self.nrows * other.nrows, ncols: self.ncols * other.ncols, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let a = SparseVec::from_ints(&[1, 0, 2]);
        let b = SparseVec::from_ints(&[1, 1, 0]);
        let c = a.axpy(&Scalar::from_int(-1), &b);
        assert_eq!(c, SparseVec::from_ints(&[0, -1, 2]));
        assert_eq!(c.nnz(), 2);
        assert_eq!(a.dot(&b), Scalar::one());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_ints(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = SparseMatrix::from_ints(&[&[1, 0, 1], &[0, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, SparseMatrix::from_ints(&[&[1, 2, 1], &[0, 1, 0], &[3, 0, 3]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert_eq!(b.transpose().mul(&a.transpose()), ab.transpose());
        let v = SparseVec::from_ints(&[1, 1]);
        assert_eq!(a.mul_vec(&v), SparseVec::from_ints(&[3, 1, 3]));
    }

    #[test]
    fn kron_mixed_product() {
        let a = SparseMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        let b = SparseMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let c = SparseMatrix::from_ints(&[&[2, 0], &[1, 1]]);
        let d = SparseMatrix::from_ints(&[&[1, 1], &[0, 3]]);
        assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }
}
