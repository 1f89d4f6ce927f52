use super::{Scalar, SparseMatrix, SparseVec};

/// Rows in echelon form with unit leading entries, built one vector at a
/// time. Call [`Echelon::into_subspace`] to finish the back-substitution.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce_dense(&self, v: &SparseVec) -> Vec<Scalar> {
        let mut acc = v.to_dense(self.ncols);
        let start = v.leading().map_or(self.ncols, |(i, _)| i);
        for c in start..self.ncols {
            if acc[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coef = std::mem::take(&mut acc[c]);
                for (j, x) in self.rows[r].iter().skip(1) {
                    acc[j] -= &(&coef * x);
                }
            }
        }
        acc
    }

    /// Adds `v`; returns `true` when it raised the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        if v.is_zero() {
            return false;
        }
        let acc = self.reduce_dense(v);
        let Some(lead) = acc.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = acc[lead].recip();
        let row = SparseVec::from_pairs(
            acc.into_iter()
                .enumerate()
                .skip(lead)
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, &x * &inv))
                .collect(),
        );
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a SparseVec>) {
        for v in vs {
            self.insert(v);
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_dense(v).iter().all(|x| x.is_zero())
    }

    /// The representative of `v` modulo the span with zeros in every pivot column.
    /// This is linear in `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if v.is_zero() {
            return SparseVec::new();
        }
        SparseVec::from_dense(&self.reduce_dense(v))
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduced row echelon form.
    pub fn into_subspace(self) -> Subspace {
        let ncols = self.ncols;
        let mut order: Vec<(usize, SparseVec)> = self
            .rows
            .into_iter()
            .map(|r| (r.leading().expect("stored rows are nonzero").0, r))
            .collect();
        order.sort_by_key(|p| p.0);
        let mut is_pivot = vec![usize::MAX; ncols];
        for (k, (p, _)) in order.iter().enumerate() {
            is_pivot[*p] = k;
        }
        // Rows with larger pivots are finished first, so each row needs a
        // single sweep over the pivot columns to its right.
        for k in (0..order.len()).rev() {
            let hits: Vec<(usize, Scalar)> = order[k]
                .1
                .iter()
                .skip(1)
                .filter(|(j, _)| is_pivot[*j] != usize::MAX)
                .map(|(j, x)| (is_pivot[j], x.clone()))
                .collect();
            if hits.is_empty() {
                continue;
            }
            let mut acc = order[k].1.to_dense(ncols);
            for (r, coef) in hits {
                for (j, x) in order[r].1.iter() {
                    acc[j] -= &(&coef * x);
                }
            }
            order[k].1 = SparseVec::from_dense(&acc);
        }
        let (pivots, rows) = order.into_iter().unzip();
        Subspace { ambient: ncols, pivots, rows }
    }
}

/// A subspace of `Q^n` stored by its reduced row echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// stored bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, pivots: (0..ambient).collect(), rows: (0..ambient).map(SparseVec::unit).collect() }
    }

    pub fn span<'a>(ambient: usize, vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Echelon::new(ambient);
        e.extend(vs);
        e.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn pivot_coeffs(&self, v: &SparseVec) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v.get(p)).collect()
    }

    /// `v` minus its projection along the pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let coeffs = self.pivot_coeffs(v);
        if coeffs.iter().all(|c| c.is_zero()) {
            return v.clone();
        }
        let mut acc = v.to_dense(self.ambient);
        for (row, c) in self.rows.iter().zip(&coeffs) {
            if c.is_zero() {
                continue;
            }
            for (j, x) in row.iter() {
                acc[j] -= &(c * x);
            }
        }
        SparseVec::from_dense(&acc)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in [`Subspace::basis`], or `None` if `v` is outside.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        self.contains(v).then(|| self.pivot_coeffs(v))
    }

    /// Coordinates read off the pivot columns without a membership check.
    pub fn coords_unchecked(&self, v: &SparseVec) -> Vec<Scalar> {
        self.pivot_coeffs(v)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> SparseVec {
        let mut acc = vec![Scalar::zero(); self.ambient];
        for (row, c) in self.rows.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (j, x) in row.iter() {
                acc[j] += &(c * x);
            }
        }
        SparseVec::from_dense(&acc)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // Kernel of [A^T | -B^T]: pairs (a, b) with a.A = b.B.
        let k = self.dim();
        let mut cols: Vec<SparseVec> = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| r.neg()));
        let m = SparseMatrix::from_columns(self.ambient, &cols);
        let vecs: Vec<SparseVec> = kernel_basis(&m)
            .iter()
            .map(|x| {
                let a: Vec<Scalar> = (0..k).map(|i| x.get(i)).collect();
                self.combine(&a)
            })
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// `dim self - dim sub`; `None` when `sub` is not contained in `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Option<usize> {
        sub.is_subspace_of(self).then(|| self.dim() - sub.dim())
    }

    /// Unit vectors on the non-pivot columns; they span a complement.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut piv = vec![false; self.ambient];
        for &p in &self.pivots {
            piv[p] = true;
        }
        (0..self.ambient).filter(|&j| !piv[j]).collect()
    }
}

/// Coordinates with respect to a fixed, linearly independent list of vectors.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    ambient: usize,
    len: usize,
    aug: Subspace,
}

impl Coordinatizer {
    /// Returns `None` if the vectors are dependent.
    pub fn new(ambient: usize, basis: &[SparseVec]) -> Option<Self> {
        let len = basis.len();
        let rows: Vec<SparseVec> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| b.add(&SparseVec::unit(ambient + i)))
            .collect();
        let aug = Subspace::span(ambient + len, &rows);
        if aug.pivots().iter().any(|&p| p >= ambient) {
            return None;
        }
        Some(Coordinatizer { ambient, len, aug })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coefficients `c` with `v = sum c_i basis_i`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.aug.reduce(v);
        if r.leading().is_some_and(|(i, _)| i < self.ambient) {
            return None;
        }
        Some(r.filter_map_indices(|j| j.checked_sub(self.ambient)).neg())
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut e = Echelon::new(m.ncols());
    e.extend(m.rows());
    e.rank()
}

pub fn row_space(m: &SparseMatrix) -> Subspace {
    Subspace::span(m.ncols(), m.rows())
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let rref = row_space(m);
    rref.complement_units()
        .into_iter()
        .map(|f| {
            let mut pairs = vec![(f, Scalar::one())];
            for (row, &p) in rref.basis().iter().zip(rref.pivots()) {
                let x = row.get(f);
                if !x.is_zero() {
                    pairs.push((p, -x));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect()
}

pub fn column_space(m: &SparseMatrix) -> Subspace {
    Subspace::span(m.nrows(), m.transpose().rows())
}

/// Canonical basis of the column space.
pub fn image_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    column_space(m).basis().to_vec()
}

/// Some `x` with `m x = b`, free variables set to zero.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let n = m.ncols();
    let rows: Vec<SparseVec> = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let bi = b.get(i);
            if bi.is_zero() {
                r.clone()
            } else {
                r.add(&SparseVec::from_pairs(vec![(n, bi)]))
            }
        })
        .collect();
    let rref = Subspace::span(n + 1, &rows);
    if rref.pivots().last() == Some(&n) {
        return None;
    }
    Some(SparseVec::from_pairs(
        rref.basis().iter().zip(rref.pivots()).map(|(r, &p)| (p, r.get(n))).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// Textbook dense elimination, kept deliberately naive.
    fn oracle_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        let ncols = a.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[rank][c];
                    for j in 0..ncols {
                        let t = &f * &a[rank][j];
                        a[i][j] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_rank_and_kernel() {
        let m = SparseMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 0]]);
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m.transpose());
        assert_eq!(k, vec![SparseVec::from_ints(&[-2, 1, 0])]);
        let kk = kernel_basis(&m);
        assert_eq!(kk, vec![SparseVec::from_ints(&[-3, 0, 1])]);
        assert!(m.mul_vec(&kk[0]).is_zero());
    }

    #[test]
    fn solve_triangular() {
        let m = SparseMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        let x = solve(&m, &SparseVec::from_ints(&[3, 1])).unwrap();
        assert_eq!(x, SparseVec::from_ints(&[2, 1]));
        let sing = SparseMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(solve(&sing, &SparseVec::from_ints(&[1, 2])).is_none());
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(3, &[SparseVec::from_ints(&[1, 1, 0]), SparseVec::from_ints(&[0, 1, 1])]);
        let b = Subspace::span(3, &[SparseVec::from_ints(&[1, 0, -1]), SparseVec::from_ints(&[2, 3, 1])]);
        assert_eq!(a, b);
        assert_eq!(a.basis()[0], SparseVec::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn intersection_and_quotient() {
        let a = Subspace::span(4, &[SparseVec::from_ints(&[1, 0, 0, 0]), SparseVec::from_ints(&[0, 1, 0, 0])]);
        let b = Subspace::span(4, &[SparseVec::from_ints(&[1, 1, 0, 0]), SparseVec::from_ints(&[0, 0, 1, 0])]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&SparseVec::from_ints(&[3, 3, 0, 0])));
        assert_eq!(a.quotient_dim(&c), Some(1));
        assert_eq!(c.quotient_dim(&a), None);
    }

    #[test]
    fn coordinatizer_recovers_coefficients() {
        let basis = vec![SparseVec::from_ints(&[1, 1, 0]), SparseVec::from_ints(&[0, 2, 1])];
        let co = Coordinatizer::new(3, &basis).unwrap();
        let v = basis[0].scale(&q(3)).axpy(&Scalar::new(-1, 2), &basis[1]);
        assert_eq!(co.coords(&v).unwrap(), SparseVec::from_pairs(vec![(0, q(3)), (1, Scalar::new(-1, 2))]));
        assert!(co.coords(&SparseVec::unit(0)).is_none());
        assert!(Coordinatizer::new(3, &[basis[0].clone(), basis[0].scale(&q(2))]).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(rows in small_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = SparseMatrix::from_ints(&refs);
            prop_assert_eq!(rank(&m), oracle_rank(&rows));
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = SparseMatrix::from_ints(&refs);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len() + rank(&m), m.ncols());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
            prop_assert_eq!(Subspace::span(m.ncols(), &k).dim(), k.len());
        }

        #[test]
        fn image_and_solve_agree(rows in small_matrix(), x in prop::collection::vec(-3i64..4, 7)) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = SparseMatrix::from_ints(&refs);
            let x = SparseVec::from_ints(&x[..m.ncols()]);
            let b = m.mul_vec(&x);
            prop_assert!(column_space(&m).contains(&b));
            let y = solve(&m, &b).unwrap();
            prop_assert_eq!(m.mul_vec(&y), b);
        }

        #[test]
        fn intersection_dimension_formula(a in small_matrix(), b in small_matrix()) {
            let n = 6;
            let pad = |r: &Vec<i64>| { let mut r = r.clone(); r.resize(n, 0); SparseVec::from_ints(&r) };
            let sa = Subspace::span(n, &a.iter().map(pad).collect::<Vec<_>>());
            let sb = Subspace::span(n, &b.iter().map(pad).collect::<Vec<_>>());
            let i = sa.intersect(&sb);
            prop_assert_eq!(i.dim() + sa.sum(&sb).dim(), sa.dim() + sb.dim());
            prop_assert!(i.is_subspace_of(&sa) && i.is_subspace_of(&sb));
        }
    }
}
