//! Depth-one gradings: the pair `(g_{-1}, g_0)` with its torus and raising operators.

mod families;
mod label;

use serde::{Deserialize, Serialize};

use crate::exactlin::{kernel_basis, row_space, Coordinatizer, Scalar, SparseMatrix, SparseVec};
use crate::repmod::Weight;
use crate::superalg::{supercommutator, FamilyError, LieSuperalgebra, MatrixSuperalgebra, ModuleAction, Parity, RepViolation, SuperSpace};

pub use families::{
    osp_grading, pe_family_pair, pe_grading_tower, q_grading, sl_depth1_grading, sl_standard_grading, PeKind,
    ReferenceGrading,
};
pub use label::{build_case, CaseLabel, LabelError};

#[derive(Debug, thiserror::Error)]
pub enum GradingError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Representation(#[from] RepViolation),
    #[error("{0}")]
    Parameters(String),
    #[error("g_{{-1}} is not stable under g_0")]
    NotClosed,
    #[error("torus element {0} is not diagonal on the chosen bases")]
    NonDiagonalTorus(String),
    #[error("no central generators were recorded for this pair")]
    NoCentralRecord,
    #[error("dropping the central generators does not leave a subalgebra")]
    NotASubalgebra,
}

/// A diagonal torus element, given by its eigenvalues on the bases of `g_{-1}` and `g_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusOp {
    pub name: String,
    pub on_gm1: Vec<Scalar>,
    pub on_g0: Vec<Scalar>,
}

/// An operator acting on every term of the tower: its matrices on `g_{-1}` and on `g_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub parity: Parity,
    pub on_gm1: SparseMatrix,
    pub on_g0: SparseMatrix,
}

/// The pair `(g_{-1}, g_0)` plus the data needed to analyse modules over it.
#[derive(Clone, Debug)]
pub struct GradedPair {
    pub label: String,
    pub g0: LieSuperalgebra,
    /// Action of the `g_0` basis on `g_{-1}`.
    pub gm1: ModuleAction,
    /// Torus coordinates: the first `n_eps` are epsilons, the rest deltas.
    pub torus: Vec<TorusOp>,
    pub n_eps: usize,
    /// Basis indices of `g_0` spanning the distinguished center, if recorded.
    pub central: Option<Vec<usize>>,
    /// Basis indices of `g_0` used as raising operators.
    pub raising: Vec<usize>,
}

impl GradedPair {
    pub fn n_delta(&self) -> usize {
        self.torus.len() - self.n_eps
    }

    pub fn dim_g0(&self) -> usize {
        self.g0.dim()
    }

    pub fn dim_gm1(&self) -> usize {
        self.gm1.dim()
    }

    fn weight_at(&self, pick: impl Fn(&TorusOp) -> Scalar) -> Weight {
        Weight::from_coords(self.torus.iter().map(pick).collect(), self.n_eps)
    }

    pub fn weights_gm1(&self) -> Vec<Weight> {
        (0..self.dim_gm1()).map(|i| self.weight_at(|t| t.on_gm1[i].clone())).collect()
    }

    pub fn weights_g0(&self) -> Vec<Weight> {
        (0..self.dim_g0()).map(|i| self.weight_at(|t| t.on_g0[i].clone())).collect()
    }

    /// All operators: the `g_0` basis followed by the torus.
    pub fn operators(&self) -> Vec<Operator> {
        let mut ops: Vec<Operator> = (0..self.dim_g0())
            .map(|a| Operator { parity: self.g0.parity(a), on_gm1: self.gm1.mats[a].clone(), on_g0: self.g0.ad(a) })
            .collect();
        for t in &self.torus {
            ops.push(Operator { parity: Parity::Even, on_gm1: diag(&t.on_gm1), on_g0: diag(&t.on_g0) });
        }
        ops
    }

    /// Torus combinations `sum c_i t_i` that act on `g_{-1}` and `g_0` exactly as
    /// some element of `g_0` does, as coefficient vectors `c`.
    pub fn inner_torus(&self) -> Vec<SparseVec> {
        let (n, g, t) = (self.dim_gm1(), self.dim_g0(), self.torus.len());
        let flat = |a: &SparseMatrix, b: &SparseMatrix| -> SparseVec {
            let mut pairs: Vec<(usize, Scalar)> = a.triples().into_iter().map(|(r, c, x)| (r * n + c, x)).collect();
            pairs.extend(b.triples().into_iter().map(|(r, c, x)| (n * n + r * g + c, x)));
            SparseVec::from_pairs(pairs)
        };
        let mut cols: Vec<SparseVec> = self.torus.iter().map(|x| flat(&diag(&x.on_gm1), &diag(&x.on_g0))).collect();
        cols.extend((0..g).map(|a| flat(&self.gm1.mats[a], &self.g0.ad(a)).neg()));
        let m = SparseMatrix::from_columns(n * n + g * g, &cols);
        let proj: Vec<SparseVec> = kernel_basis(&m).iter().map(|v| v.filter_map_indices(|i| (i < t).then_some(i))).collect();
        row_space(&SparseMatrix::from_rows(t, proj)).basis().to_vec()
    }

    /// Whether two weights agree as functionals on the part of the torus lying in `g_0`.
    pub fn same_g0_weight(&self, a: &Weight, b: &Weight) -> bool {
        let diff = a - b;
        let d: Vec<&Scalar> = diff.eps.iter().chain(&diff.delta).collect();
        self.inner_torus().iter().all(|c| c.iter().fold(Scalar::zero(), |s, (i, x)| s + x * d[i]).is_zero())
    }

    /// Combinations of `g_0` acting by zero on `g_{-1}`.
    pub fn action_kernel(&self) -> Vec<SparseVec> {
        self.gm1.kernel()
    }

    pub fn is_faithful(&self) -> bool {
        self.action_kernel().is_empty()
    }

    pub fn check(&self) -> Result<(), GradingError> {
        self.gm1.check_representation(&self.g0)?;
        Ok(())
    }

    fn set_raising(&mut self) {
        self.raising = self.weights_g0().iter().enumerate().filter(|(_, w)| w.is_positive()).map(|(i, _)| i).collect();
    }

    /// `g_0` replaced by the subalgebra spanned by the non-central basis elements.
    pub fn reduced(&self) -> Result<GradedPair, GradingError> {
        let central = self.central.as_ref().ok_or(GradingError::NoCentralRecord)?;
        if central.is_empty() {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.dim_g0()).filter(|i| !central.contains(i)).collect();
        let mut pos = vec![usize::MAX; self.dim_g0()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let mut table = Vec::with_capacity(keep.len());
        for &i in &keep {
            let mut row = Vec::with_capacity(keep.len());
            for &j in &keep {
                let b = self.g0.bracket_basis(i, j);
                if b.iter().any(|(k, _)| pos[k] == usize::MAX) {
                    return Err(GradingError::NotASubalgebra);
                }
                row.push(b.map_indices(|k| pos[k]));
            }
            table.push(row);
        }
        let space = SuperSpace::new(
            keep.iter().map(|&i| self.g0.space.labels[i].clone()).collect(),
            keep.iter().map(|&i| self.g0.parity(i)).collect(),
        );
        let mut out = GradedPair {
            label: format!("reduced:{}", self.label),
            g0: LieSuperalgebra::new(space, table),
            gm1: self.gm1.select_ops(&keep),
            torus: self
                .torus
                .iter()
                .map(|t| TorusOp { name: t.name.clone(), on_gm1: t.on_gm1.clone(), on_g0: keep.iter().map(|&i| t.on_g0[i].clone()).collect() })
                .collect(),
            n_eps: self.n_eps,
            central: Some(Vec::new()),
            raising: Vec::new(),
        };
        out.set_raising();
        Ok(out)
    }

    /// Same pair with the `g_{-1}` basis permuted: new vector `i` is old vector `perm[i]`.
    pub fn permute_gm1(&self, perm: &[usize]) -> GradedPair {
        let n = self.dim_gm1();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mats = self
            .gm1
            .mats
            .iter()
            .map(|m| {
                let rows = perm.iter().map(|&p| m.row(p).map_indices(|c| inv[c])).collect();
                SparseMatrix::from_rows(n, rows)
            })
            .collect();
        let module = SuperSpace::new(
            perm.iter().map(|&p| self.gm1.module.labels[p].clone()).collect(),
            perm.iter().map(|&p| self.gm1.module.parities[p]).collect(),
        );
        let mut out = self.clone();
        out.gm1 = ModuleAction::new(module, self.gm1.op_parities.clone(), mats);
        for t in &mut out.torus {
            t.on_gm1 = perm.iter().map(|&p| t.on_gm1[p].clone()).collect();
        }
        out
    }
}

pub(crate) fn diag(d: &[Scalar]) -> SparseMatrix {
    SparseMatrix::from_rows(d.len(), d.iter().enumerate().map(|(i, x)| SparseVec::from_pairs(vec![(i, x.clone())])).collect())
}

fn flatten(m: &SparseMatrix) -> SparseVec {
    let n = m.ncols();
    SparseVec::from_pairs(m.triples().into_iter().map(|(r, c, v)| (r * n + c, v)).collect())
}

/// Eigenvalues of `ad t` on a basis of matrices, if each is an eigenvector.
fn ad_diag(name: &str, t: &SparseMatrix, basis: &[SparseMatrix]) -> Result<Vec<Scalar>, GradingError> {
    basis
        .iter()
        .map(|b| {
            let c = supercommutator(t, Parity::Even, b, Parity::Even);
            let (r, col, x) = b.triples().into_iter().next().expect("nonzero basis matrix");
            let lambda = &c.get(r, col) / &x;
            if c == b.scale(&lambda) {
                Ok(lambda)
            } else {
                Err(GradingError::NonDiagonalTorus(name.to_string()))
            }
        })
        .collect()
}

/// Inputs for [`assemble`]: everything is realized inside `gl(V)`.
pub(crate) struct MatrixPair<'a> {
    pub label: String,
    pub g0: &'a MatrixSuperalgebra,
    /// `None`: `g_{-1} = V` with the standard action.
    pub gm1: Option<(Vec<String>, Vec<SparseMatrix>)>,
    pub torus: Vec<(String, Vec<Scalar>)>,
    pub n_eps: usize,
    pub central: Option<Vec<usize>>,
    /// A central element of `g_0` acting trivially, to be factored out.
    pub quotient_by: Option<SparseMatrix>,
}

pub(crate) fn assemble(p: MatrixPair<'_>) -> Result<GradedPair, GradingError> {
    let g0 = p.g0;
    let mut alg = g0.try_to_lie()?;
    let (module, mats, torus_gm1): (SuperSpace, Vec<SparseMatrix>, Vec<Vec<Scalar>>) = match &p.gm1 {
        None => {
            let tg: Vec<Vec<Scalar>> = p.torus.iter().map(|(_, d)| d.clone()).collect();
            (g0.vspace.clone(), g0.basis.clone(), tg)
        }
        Some((labels, basis)) => {
            let nv = g0.vspace.dim();
            let parities = basis
                .iter()
                .map(|b| crate::superalg::matrix_parity(&g0.vspace.parities, b).ok_or(GradingError::NotClosed))
                .collect::<Result<Vec<_>, _>>()?;
            let flat: Vec<SparseVec> = basis.iter().map(flatten).collect();
            let co = Coordinatizer::new(nv * nv, &flat).ok_or(GradingError::NotClosed)?;
            let mut mats = Vec::with_capacity(g0.dim());
            for (a, x) in g0.basis.iter().enumerate() {
                let cols = basis
                    .iter()
                    .zip(&parities)
                    .map(|(v, pv)| co.coords(&flatten(&supercommutator(x, g0.parity(a), v, *pv))).ok_or(GradingError::NotClosed))
                    .collect::<Result<Vec<_>, _>>()?;
                mats.push(SparseMatrix::from_columns(basis.len(), &cols));
            }
            let tg = p
                .torus
                .iter()
                .map(|(name, d)| ad_diag(name, &diag(d), basis))
                .collect::<Result<Vec<_>, _>>()?;
            (SuperSpace::new(labels.clone(), parities), mats, tg)
        }
    };
    let mut torus: Vec<TorusOp> = p
        .torus
        .iter()
        .zip(torus_gm1)
        .map(|((name, d), on_gm1)| Ok(TorusOp { name: name.clone(), on_gm1, on_g0: ad_diag(name, &diag(d), &g0.basis)? }))
        .collect::<Result<Vec<_>, GradingError>>()?;
    let mut gm1 = ModuleAction::new(module, alg.parities().to_vec(), mats);
    let mut central = p.central.clone();
    if let Some(z) = &p.quotient_by {
        let zc = g0.coords(z).ok_or(GradingError::NotClosed)?;
        if !gm1.apply_element(&zc).is_zero() {
            return Err(GradingError::Parameters("quotient element acts nontrivially".into()));
        }
        let (q, d) = alg.quotient_by_central(&zc);
        alg = q;
        let keep: Vec<usize> = (0..g0.dim()).filter(|&i| i != d).collect();
        gm1 = gm1.select_ops(&keep);
        for t in &mut torus {
            t.on_g0 = keep.iter().map(|&i| t.on_g0[i].clone()).collect();
        }
        if let Some(c) = &mut central {
            c.retain(|&i| i != d);
            for i in c.iter_mut() {
                if *i > d {
                    *i -= 1;
                }
            }
        }
    }
    let mut pair = GradedPair { label: p.label, g0: alg, gm1, torus, n_eps: p.n_eps, central, raising: Vec::new() };
    pair.set_raising();
    pair.check()?;
    Ok(pair)
}

#[cfg(test)]
mod tests;
