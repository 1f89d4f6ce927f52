//! Kernels, images and ranks of maps that respect a partition of the coordinates.
//!
//! Weight-preserving maps are block diagonal once rows and columns are grouped
//! by weight, so elimination can run on each block separately.

use std::collections::BTreeMap;

use super::{kernel_basis, Subspace, SparseMatrix, SparseVec};

/// A partition of `0..n` into numbered blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    block: Vec<usize>,
    position: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Blocks {
    /// Blocks are the classes of equal keys, numbered in increasing key order.
    pub fn from_keys<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut ids: BTreeMap<K, usize> = keys.iter().map(|k| (k.clone(), 0)).collect();
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let mut members = vec![Vec::new(); ids.len()];
        let block: Vec<usize> = keys.iter().map(|k| ids[k]).collect();
        let mut position = Vec::with_capacity(block.len());
        for (i, &b) in block.iter().enumerate() {
            position.push(members[b].len());
            members[b].push(i);
        }
        Blocks { block, position, members }
    }

    pub fn single(n: usize) -> Self {
        Blocks::from_keys(&vec![(); n])
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block[i]
    }

    pub fn members(&self, b: usize) -> &[usize] {
        &self.members[b]
    }

    /// Position of `i` inside its block.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    /// The block containing the support of `v`, which must lie in one block.
    pub fn block_of_vec(&self, v: &SparseVec) -> Option<usize> {
        let b = self.block[v.leading()?.0];
        debug_assert!(v.iter().all(|(i, _)| self.block[i] == b), "vector spans several blocks");
        Some(b)
    }

    /// `v` in the local coordinates of its block.
    pub fn localize(&self, v: &SparseVec) -> SparseVec {
        v.map_indices(|i| self.position[i])
    }

    /// A local vector of block `b` in global coordinates.
    pub fn globalize(&self, b: usize, v: &SparseVec) -> SparseVec {
        v.map_indices(|j| self.members[b][j])
    }
}

/// Columns of one block, reindexed to the rows they actually touch.
struct Local {
    rows: Vec<usize>,
    cols: Vec<SparseVec>,
}

fn local_columns(columns: &[SparseVec], members: &[usize]) -> Local {
    let mut rows: Vec<usize> = members.iter().flat_map(|&j| columns[j].iter().map(|(i, _)| i)).collect();
    rows.sort_unstable();
    rows.dedup();
    let cols = members
        .iter()
        .map(|&j| columns[j].map_indices(|i| rows.binary_search(&i).expect("row collected above")))
        .collect();
    Local { rows, cols }
}

/// Basis of `ker m`, block by block. Every row of `m` must be supported in a single column block.
pub fn block_kernel(m: &SparseMatrix, cols: &Blocks) -> Vec<SparseVec> {
    assert_eq!(m.ncols(), cols.size());
    let columns = m.columns();
    let mut out = Vec::new();
    for b in 0..cols.len() {
        let members = cols.members(b);
        let local = local_columns(&columns, members);
        let lm = SparseMatrix::from_columns(local.rows.len(), &local.cols);
        for k in kernel_basis(&lm) {
            out.push(k.map_indices(|j| members[j]));
        }
    }
    out
}

/// Canonical basis of the column space, block by block. Columns from different
/// blocks must have disjoint row supports.
pub fn block_image(m: &SparseMatrix, cols: &Blocks) -> Vec<Vec<SparseVec>> {
    assert_eq!(m.ncols(), cols.size());
    let columns = m.columns();
    (0..cols.len())
        .map(|b| {
            let local = local_columns(&columns, cols.members(b));
            Subspace::span(local.rows.len(), &local.cols).basis().iter().map(|v| v.map_indices(|i| local.rows[i])).collect()
        })
        .collect()
}

pub fn block_rank(m: &SparseMatrix, cols: &Blocks) -> usize {
    block_image(m, cols).iter().map(Vec::len).sum()
}
