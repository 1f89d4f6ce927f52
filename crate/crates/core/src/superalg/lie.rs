use serde::{Deserialize, Serialize};

use super::{koszul, koszul_scalar, Parity, SuperSpace};
use crate::exactlin::{kernel_basis, Scalar, SparseMatrix, SparseVec};

/// A Lie superalgebra given by structure constants on a parity-homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSuperalgebra {
    pub space: SuperSpace,
    /// `table[i][j] = [x_i, x_j]`.
    table: Vec<Vec<SparseVec>>,
    /// Optional Z-degree of each basis element.
    pub grading: Option<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum JacobiViolation {
    #[error("bracket [{0},{1}] has the wrong parity")]
    Parity(usize, usize),
    #[error("[{0},{1}] is not super-antisymmetric")]
    Antisymmetry(usize, usize),
    #[error("super Jacobi identity fails on ({0},{1},{2})")]
    Jacobi(usize, usize, usize),
    #[error("bracket [{0},{1}] violates the grading")]
    Grading(usize, usize),
}

impl LieSuperalgebra {
    pub fn new(space: SuperSpace, table: Vec<Vec<SparseVec>>) -> Self {
        let n = space.dim();
        assert!(table.len() == n && table.iter().all(|r| r.len() == n));
        LieSuperalgebra { space, table, grading: None }
    }

    /// Builds the table from a bilinear bracket on basis indices.
    pub fn from_fn(space: SuperSpace, mut f: impl FnMut(usize, usize) -> SparseVec) -> Self {
        let n = space.dim();
        let table = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        LieSuperalgebra { space, table, grading: None }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn superdim(&self) -> (usize, usize) {
        self.space.superdim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.space.parities
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc = acc.axpy(&(a * b), &self.table[i][j]);
            }
        }
        acc
    }

    /// Overwrites one structure constant; used to inject faults in tests.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let v = &self.table[i][j];
        let delta = &c - &v.get(k);
        self.table[i][j] = v.axpy(&delta, &SparseVec::unit(k));
    }

    /// Matrix of `ad x_i` in the basis.
    pub fn ad(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.dim(), &self.table[i])
    }

    /// Checks parity, super-antisymmetry, super Jacobi and, if present, the grading.
    pub fn check_jacobi(&self) -> Result<(), JacobiViolation> {
        let n = self.dim();
        let p = self.parities();
        for i in 0..n {
            for j in 0..n {
                let b = &self.table[i][j];
                if b.iter().any(|(k, _)| p[k] != p[i] + p[j]) {
                    return Err(JacobiViolation::Parity(i, j));
                }
                let other = self.table[j][i].scale(&-koszul_scalar(p[i], p[j]));
                if *b != other {
                    return Err(JacobiViolation::Antisymmetry(i, j));
                }
                if let Some(g) = &self.grading {
                    if b.iter().any(|(k, _)| g[k] != g[i] + g[j]) {
                        return Err(JacobiViolation::Grading(i, j));
                    }
                }
            }
        }
        // [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]]
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.bracket(&SparseVec::unit(i), &self.table[j][k]);
                    let r1 = self.bracket(&self.table[i][j], &SparseVec::unit(k));
                    let r2 = self.bracket(&SparseVec::unit(j), &self.table[i][k]);
                    let rhs = r1.axpy(&koszul_scalar(p[i], p[j]), &r2);
                    if lhs != rhs {
                        return Err(JacobiViolation::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The adjoint module.
    pub fn adjoint(&self) -> ModuleAction {
        ModuleAction {
            module: self.space.clone(),
            op_parities: self.parities().to_vec(),
            mats: (0..self.dim()).map(|i| self.ad(i)).collect(),
        }
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<SparseVec> {
        let n = self.dim();
        // Stack ad(x)(e_j) over all j as rows of a linear condition on x.
        let mut rows = Vec::new();
        for j in 0..n {
            let cols: Vec<SparseVec> = (0..n).map(|i| self.table[i][j].clone()).collect();
            rows.extend(SparseMatrix::from_columns(n, &cols).rows().iter().cloned());
        }
        kernel_basis(&SparseMatrix::from_rows(n, rows))
    }

    /// Structure constants as `(i, j, k, c)` with `[x_i, x_j] = sum c x_k`.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, c) in v.iter() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    /// Quotient by a central element; drops the last basis index on which `z` is supported.
    pub fn quotient_by_central(&self, z: &SparseVec) -> (LieSuperalgebra, usize) {
        let (d, zd) = z.iter().last().map(|(i, c)| (i, c.clone())).expect("nonzero central element");
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| i != d).collect();
        let pos = |i: usize| if i < d { i } else { i - 1 };
        let reduce = |v: &SparseVec| {
            let c = v.get(d);
            let r = if c.is_zero() { v.clone() } else { v.axpy(&-(&c / &zd), z) };
            r.map_indices(pos)
        };
        let space = SuperSpace::new(
            keep.iter().map(|&i| self.space.labels[i].clone()).collect(),
            keep.iter().map(|&i| self.parity(i)).collect(),
        );
        let table = keep.iter().map(|&i| keep.iter().map(|&j| reduce(&self.table[i][j])).collect()).collect();
        let grading = self.grading.as_ref().map(|g| keep.iter().map(|&i| g[i]).collect());
        (LieSuperalgebra { space, table, grading }, d)
    }
}

/// Operators on a superspace, one per element of some acting family.
///
/// For a module of a Lie superalgebra the `k`-th operator is the action of
/// the `k`-th basis element; extra operators (a torus outside the algebra,
/// say) may be appended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleAction {
    pub module: SuperSpace,
    pub op_parities: Vec<Parity>,
    pub mats: Vec<SparseMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RepViolation {
    #[error("operator {0} does not shift parity by its own parity")]
    Parity(usize),
    #[error("representation identity fails on ({0},{1})")]
    Bracket(usize, usize),
    #[error("operator count {0} does not match algebra dimension {1}")]
    Count(usize, usize),
}

impl ModuleAction {
    pub fn new(module: SuperSpace, op_parities: Vec<Parity>, mats: Vec<SparseMatrix>) -> Self {
        assert_eq!(op_parities.len(), mats.len());
        ModuleAction { module, op_parities, mats }
    }

    pub fn trivial(module: SuperSpace, op_parities: Vec<Parity>) -> Self {
        let n = module.dim();
        let mats = vec![SparseMatrix::zeros(n, n); op_parities.len()];
        ModuleAction { module, op_parities, mats }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    /// Checks that operators are parity-homogeneous of their stated parity.
    pub fn check_parities(&self) -> Result<(), RepViolation> {
        let p = &self.module.parities;
        for (k, (m, px)) in self.mats.iter().zip(&self.op_parities).enumerate() {
            if m.triples().iter().any(|(r, c, _)| p[*r] != p[*c] + *px) {
                return Err(RepViolation::Parity(k));
            }
        }
        Ok(())
    }

    /// `rho([x,y]) = rho(x) rho(y) - (-1)^{p(x)p(y)} rho(y) rho(x)` on the
    /// first `alg.dim()` operators.
    pub fn check_representation(&self, alg: &LieSuperalgebra) -> Result<(), RepViolation> {
        let n = alg.dim();
        if self.len() < n {
            return Err(RepViolation::Count(self.len(), n));
        }
        self.check_parities()?;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_element(alg.bracket_basis(i, j));
                let xy = self.mats[i].mul(&self.mats[j]);
                let yx = self.mats[j].mul(&self.mats[i]);
                let rhs = xy.axpy(&-koszul_scalar(alg.parity(i), alg.parity(j)), &yx);
                if lhs != rhs {
                    return Err(RepViolation::Bracket(i, j));
                }
            }
        }
        Ok(())
    }

    /// `rho(x)` for a combination `x` of the operators.
    pub fn apply_element(&self, x: &SparseVec) -> SparseMatrix {
        let n = self.dim();
        let mut acc = SparseMatrix::zeros(n, n);
        for (i, c) in x.iter() {
            acc = acc.axpy(c, &self.mats[i]);
        }
        acc
    }

    /// Combinations of the operators that act by zero.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let n = self.dim();
        let cols: Vec<SparseVec> = self
            .mats
            .iter()
            .map(|m| SparseVec::from_pairs(m.triples().into_iter().map(|(r, c, v)| (r * n + c, v)).collect()))
            .collect();
        kernel_basis(&SparseMatrix::from_columns(n * n, &cols))
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().is_empty()
    }

    fn koszul_diag(parities: &[Parity], px: Parity) -> SparseMatrix {
        let rows = parities
            .iter()
            .enumerate()
            .map(|(i, p)| SparseVec::from_pairs(vec![(i, Scalar::from_int(koszul(px, *p)))]))
            .collect();
        SparseMatrix::from_rows(parities.len(), rows)
    }

    /// `x(u (x) v) = (xu) (x) v + (-1)^{p(x)p(u)} u (x) (xv)`.
    pub fn tensor(&self, other: &ModuleAction) -> ModuleAction {
        assert_eq!(self.op_parities, other.op_parities, "tensor of actions of different families");
        let ib = SparseMatrix::identity(other.dim());
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .zip(&self.op_parities)
            .map(|((a, b), px)| a.kron(&ib).add(&Self::koszul_diag(&self.module.parities, *px).kron(b)))
            .collect();
        ModuleAction { module: self.module.tensor(&other.module), op_parities: self.op_parities.clone(), mats }
    }

    /// `(x phi)(u) = -(-1)^{p(x)p(phi)} phi(xu)`.
    pub fn dual(&self) -> ModuleAction {
        let p = &self.module.parities;
        let mats = self
            .mats
            .iter()
            .zip(&self.op_parities)
            .map(|(m, px)| {
                let t = m.transpose();
                let rows = t
                    .rows()
                    .iter()
                    .map(|r| SparseVec::from_pairs(r.iter().map(|(b, v)| (b, v * &Scalar::from_int(-koszul(*px, p[b])))).collect()))
                    .collect();
                SparseMatrix::from_rows(self.dim(), rows)
            })
            .collect();
        ModuleAction { module: self.module.dual(), op_parities: self.op_parities.clone(), mats }
    }

    /// Same operators on the parity-flipped space.
    pub fn flip(&self) -> ModuleAction {
        ModuleAction { module: self.module.flip(), op_parities: self.op_parities.clone(), mats: self.mats.clone() }
    }

    /// Operators restricted to a sub-list.
    pub fn select_ops(&self, idx: &[usize]) -> ModuleAction {
        ModuleAction {
            module: self.module.clone(),
            op_parities: idx.iter().map(|&i| self.op_parities[i]).collect(),
            mats: idx.iter().map(|&i| self.mats[i].clone()).collect(),
        }
    }

    /// Appends more operators on the same space.
    pub fn with_extra(&self, parities: &[Parity], mats: &[SparseMatrix]) -> ModuleAction {
        let mut out = self.clone();
        out.op_parities.extend_from_slice(parities);
        out.mats.extend_from_slice(mats);
        out
    }
}
