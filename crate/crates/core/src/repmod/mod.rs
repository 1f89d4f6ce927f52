//! Module structure of g0-representations: weights, highest vectors,
//! composition series and splitting.

mod report;
mod submodule;
mod weight;
mod weyl;

use crate::exactlin::{Blocks, SparseMatrix, SparseVec};
use crate::grading::GradedPair;
use crate::prolong::ProlongationTower;
use crate::spencer::{cochain_operators, Cochains};
use crate::superalg::Parity;

pub use report::{composition_report, composition_series, Factor, FactorReport, HighestReport, ModuleReport, SplitReport, WeightCount};
pub use submodule::{detect_splitting, generate_submodule, highest_vectors, weight_decompose, GradedSubspace, HighestVector};
pub use weight::{ParseWeightError, Weight};
pub use weyl::{product_dim, weyl_dim};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepmodError {
    #[error("weight {0:?} is not dominant")]
    NonDominant(Vec<i64>),
    #[error("weight {0} has non-integral coordinates")]
    NonIntegral(String),
    #[error("torus operator {0} is not diagonal with the recorded weights")]
    NonSemisimpleTorus(usize),
    #[error("operator {0} does not shift weights and parities homogeneously")]
    Inhomogeneous(usize),
    #[error("subspace is not stable under the operators")]
    NotInvariant,
    #[error("nonzero quotient without a highest vector")]
    NoHighestVector,
}

/// A module over the operators of a graded pair, on a basis of weight vectors.
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub parities: Vec<Parity>,
    pub weights: Vec<Weight>,
    pub op_parities: Vec<Parity>,
    pub op_weights: Vec<Weight>,
    pub ops: Vec<SparseMatrix>,
    /// Operators annihilating highest vectors.
    pub raising: Vec<usize>,
    /// Operators that are torus elements, in weight-coordinate order.
    pub torus: Vec<usize>,
    blocks: Blocks,
    op_cols: Vec<Vec<SparseVec>>,
}

impl WeightModule {
    pub fn from_parts(
        parities: Vec<Parity>,
        weights: Vec<Weight>,
        op_parities: Vec<Parity>,
        op_weights: Vec<Weight>,
        ops: Vec<SparseMatrix>,
        raising: Vec<usize>,
        torus: Vec<usize>,
    ) -> Self {
        assert_eq!(parities.len(), weights.len());
        assert_eq!(op_parities.len(), ops.len());
        assert_eq!(op_weights.len(), ops.len());
        let keys: Vec<(Parity, &Weight)> = parities.iter().copied().zip(&weights).collect();
        let blocks = Blocks::from_keys(&keys);
        let op_cols = ops.iter().map(|m| if m.ncols() == 0 { vec![] } else { m.columns() }).collect();
        WeightModule { parities, weights, op_parities, op_weights, ops, raising, torus, blocks, op_cols }
    }

    /// The operators of `pair`: its `g_0` basis followed by its torus.
    pub fn new(parities: Vec<Parity>, weights: Vec<Weight>, pair: &GradedPair, ops: Vec<SparseMatrix>) -> Self {
        let mut op_parities = pair.g0.parities().to_vec();
        let mut op_weights = pair.weights_g0();
        let g = pair.dim_g0();
        for _ in &pair.torus {
            op_parities.push(Parity::Even);
            op_weights.push(Weight::zero(pair.n_eps, pair.n_delta()));
        }
        let torus = (g..g + pair.torus.len()).collect();
        WeightModule::from_parts(parities, weights, op_parities, op_weights, ops, pair.raising.clone(), torus)
    }

    /// The term `g_k` of a tower.
    pub fn from_term(tower: &ProlongationTower, k: i32) -> Option<Self> {
        let t = tower.term(k)?;
        Some(WeightModule::new(t.parities.clone(), t.weights.clone(), &tower.pair, t.ops.clone()))
    }

    pub fn from_cochains(tower: &ProlongationTower, c: &Cochains) -> Self {
        WeightModule::new(c.parities.clone(), c.weights.clone(), &tower.pair, cochain_operators(tower, c))
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    pub fn apply(&self, o: usize, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, x) in v.iter() {
            pairs.extend(self.op_cols[o][i].iter().map(|(r, y)| (r, x * y)));
        }
        SparseVec::from_pairs(pairs)
    }

    /// Splits `v` into its (parity, weight) components.
    pub fn components(&self, v: &SparseVec) -> Vec<(usize, SparseVec)> {
        let mut parts: std::collections::BTreeMap<usize, Vec<(usize, crate::exactlin::Scalar)>> = Default::default();
        for (i, x) in v.iter() {
            parts.entry(self.blocks.block_of(i)).or_default().push((i, x.clone()));
        }
        parts.into_iter().map(|(b, p)| (b, SparseVec::from_pairs(p))).collect()
    }

    pub fn block_weight(&self, b: usize) -> &Weight {
        &self.weights[self.blocks.members(b)[0]]
    }

    pub fn block_parity(&self, b: usize) -> Parity {
        self.parities[self.blocks.members(b)[0]]
    }

    /// Torus operators are diagonal with the recorded weights, and every operator
    /// shifts weight and parity by its own.
    pub fn check_weights(&self) -> Result<(), RepmodError> {
        for (c, &o) in self.torus.iter().enumerate() {
            for (r, col, x) in self.ops[o].triples() {
                if r != col {
                    return Err(RepmodError::NonSemisimpleTorus(o));
                }
                let w = &self.weights[r];
                let coord = if c < w.eps.len() { &w.eps[c] } else { &w.delta[c - w.eps.len()] };
                if &x != coord {
                    return Err(RepmodError::NonSemisimpleTorus(o));
                }
            }
            for i in 0..self.dim() {
                let w = &self.weights[i];
                let coord = if c < w.eps.len() { &w.eps[c] } else { &w.delta[c - w.eps.len()] };
                if !coord.is_zero() && self.ops[o].get(i, i).is_zero() {
                    return Err(RepmodError::NonSemisimpleTorus(o));
                }
            }
        }
        for (o, m) in self.ops.iter().enumerate() {
            for (r, c, _) in m.triples() {
                if self.parities[r] != self.parities[c] + self.op_parities[o] || self.weights[r] != &self.weights[c] + &self.op_weights[o] {
                    return Err(RepmodError::Inhomogeneous(o));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
