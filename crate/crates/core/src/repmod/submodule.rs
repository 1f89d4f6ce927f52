use std::collections::{BTreeMap, VecDeque};

use super::{RepmodError, Weight, WeightModule};
use crate::exactlin::{kernel_basis, solve, Coordinatizer, Echelon, Scalar, SparseMatrix, SparseVec};
use crate::superalg::Parity;

/// A subspace spanned by (parity, weight)-homogeneous vectors, stored blockwise
/// in the local coordinates of the module's blocks.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    parts: Vec<Echelon>,
}

impl GradedSubspace {
    pub fn zero(m: &WeightModule) -> Self {
        let b = m.blocks();
        GradedSubspace { parts: (0..b.len()).map(|i| Echelon::new(b.members(i).len())).collect() }
    }

    pub fn full(m: &WeightModule) -> Self {
        let mut s = GradedSubspace::zero(m);
        for i in 0..m.dim() {
            s.insert(m, &SparseVec::unit(i));
        }
        s
    }

    /// The span of arbitrary vectors, split into components first.
    pub fn span<'a>(m: &WeightModule, vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut s = GradedSubspace::zero(m);
        for v in vs {
            for (_, c) in m.components(v) {
                s.insert(m, &c);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(Echelon::rank).sum()
    }

    pub fn block_dim(&self, b: usize) -> usize {
        self.parts[b].rank()
    }

    /// Adds a homogeneous vector; returns `true` if the dimension grew.
    pub fn insert(&mut self, m: &WeightModule, v: &SparseVec) -> bool {
        match m.blocks().block_of_vec(v) {
            None => false,
            Some(b) => self.parts[b].insert(&m.blocks().localize(v)),
        }
    }

    pub fn contains(&self, m: &WeightModule, v: &SparseVec) -> bool {
        m.components(v).iter().all(|(b, c)| self.parts[*b].contains(&m.blocks().localize(c)))
    }

    /// Representative of `v` modulo this subspace, linear in `v`.
    pub fn reduce(&self, m: &WeightModule, v: &SparseVec) -> SparseVec {
        let pieces: Vec<SparseVec> =
            m.components(v).into_iter().map(|(b, c)| m.blocks().globalize(b, &self.parts[b].reduce(&m.blocks().localize(&c)))).collect();
        pieces.iter().fold(SparseVec::new(), |acc, p| acc.add(p))
    }

    /// Homogeneous basis vectors of block `b`, in global coordinates.
    pub fn block_basis(&self, m: &WeightModule, b: usize) -> Vec<SparseVec> {
        self.parts[b].rows().iter().map(|r| m.blocks().globalize(b, r)).collect()
    }

    pub fn basis(&self, m: &WeightModule) -> Vec<SparseVec> {
        (0..self.parts.len()).flat_map(|b| self.block_basis(m, b)).collect()
    }

    pub fn is_subspace_of(&self, m: &WeightModule, other: &GradedSubspace) -> bool {
        self.basis(m).iter().all(|v| other.contains(m, v))
    }

    pub fn is_invariant(&self, m: &WeightModule) -> bool {
        self.basis(m).iter().all(|v| (0..m.ops.len()).all(|o| self.contains(m, &m.apply(o, v))))
    }
}

/// A weight vector killed by every raising operator, possibly modulo a submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestVector {
    pub vector: SparseVec,
    pub weight: Weight,
    pub parity: Parity,
}

/// Weight multiplicities of a graded subspace, as `(even, odd)` counts.
pub fn weight_decompose(m: &WeightModule, space: &GradedSubspace) -> BTreeMap<Weight, (usize, usize)> {
    let mut out: BTreeMap<Weight, (usize, usize)> = BTreeMap::new();
    for b in 0..m.blocks().len() {
        let d = space.block_dim(b);
        if d == 0 {
            continue;
        }
        let e = out.entry(m.block_weight(b).clone()).or_default();
        if m.block_parity(b).is_odd() {
            e.1 += d;
        } else {
            e.0 += d;
        }
    }
    out
}

/// Smallest invariant subspace containing `start` and `gens`.
pub fn generate_submodule(m: &WeightModule, start: &GradedSubspace, gens: &[SparseVec]) -> GradedSubspace {
    let mut s = start.clone();
    let mut queue: VecDeque<SparseVec> = VecDeque::new();
    for g in gens {
        for (_, c) in m.components(g) {
            if s.insert(m, &c) {
                queue.push_back(c);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for o in 0..m.ops.len() {
            let y = m.apply(o, &v);
            for (_, c) in m.components(&y) {
                if s.insert(m, &c) {
                    queue.push_back(c);
                }
            }
        }
    }
    s
}

/// Highest vectors of `space` modulo `modulo`, one basis per weight block.
///
/// Returned vectors are independent modulo `modulo` and reduced against it.
pub fn highest_vectors(m: &WeightModule, space: &GradedSubspace, modulo: Option<&GradedSubspace>) -> Vec<HighestVector> {
    let zero = GradedSubspace::zero(m);
    let u = modulo.unwrap_or(&zero);
    let mut out = Vec::new();
    for b in 0..m.blocks().len() {
        if space.block_dim(b) <= u.block_dim(b) {
            continue;
        }
        let mut reps = Echelon::new(m.blocks().members(b).len());
        let mut cs = Vec::new();
        for v in space.block_basis(m, b) {
            let r = u.reduce(m, &v);
            if reps.insert(&m.blocks().localize(&r)) {
                cs.push(r);
            }
        }
        // stack the reduced images under every raising operator
        let n = m.dim();
        let cols: Vec<SparseVec> = cs
            .iter()
            .map(|c| {
                let pairs: Vec<(usize, Scalar)> = m
                    .raising
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &o)| u.reduce(m, &m.apply(o, c)).iter().map(|(i, x)| (k * n + i, x.clone())).collect::<Vec<_>>())
                    .collect();
                SparseVec::from_pairs(pairs)
            })
            .collect();
        let a = SparseMatrix::from_columns(n * m.raising.len(), &cols);
        for k in kernel_basis(&a) {
            let v = k.iter().fold(SparseVec::new(), |acc, (i, x)| acc.axpy(x, &cs[i]));
            out.push(HighestVector { vector: v, weight: m.block_weight(b).clone(), parity: m.block_parity(b) });
        }
    }
    out
}

/// Whether `sub / lower` has an invariant complement in `ambient / lower`.
///
/// Writes operators in a basis adapted to `lower < sub < ambient` and looks for
/// an even weight-preserving `P` from the top quotient to `sub / lower` with
/// `x_S P - P x_Q = -x_SQ` for every operator `x`.
pub fn detect_splitting(m: &WeightModule, lower: &GradedSubspace, sub: &GradedSubspace, ambient: &GradedSubspace) -> Result<bool, RepmodError> {
    if !lower.is_subspace_of(m, sub) || !sub.is_subspace_of(m, ambient) {
        return Err(RepmodError::NotInvariant);
    }
    for s in [lower, sub, ambient] {
        if !s.is_invariant(m) {
            return Err(RepmodError::NotInvariant);
        }
    }
    let blocks = m.blocks();
    // per block: [lower | S | Q] in local coordinates
    let mut s_vecs: Vec<(usize, SparseVec)> = Vec::new();
    let mut q_vecs: Vec<(usize, SparseVec)> = Vec::new();
    let mut coord: Vec<Option<(Coordinatizer, usize, Vec<usize>, Vec<usize>)>> = Vec::with_capacity(blocks.len());
    for b in 0..blocks.len() {
        if ambient.block_dim(b) == lower.block_dim(b) {
            coord.push(None);
            continue;
        }
        let mut e = Echelon::new(blocks.members(b).len());
        let mut all: Vec<SparseVec> = Vec::new();
        for v in lower.block_basis(m, b) {
            e.insert(&blocks.localize(&v));
            all.push(blocks.localize(&v));
        }
        let nl = all.len();
        let mut s_ids = Vec::new();
        for v in sub.block_basis(m, b) {
            if e.insert(&blocks.localize(&v)) {
                all.push(blocks.localize(&v));
                s_ids.push(s_vecs.len());
                s_vecs.push((b, v));
            }
        }
        let mut q_ids = Vec::new();
        for v in ambient.block_basis(m, b) {
            if e.insert(&blocks.localize(&v)) {
                all.push(blocks.localize(&v));
                q_ids.push(q_vecs.len());
                q_vecs.push((b, v));
            }
        }
        let co = Coordinatizer::new(blocks.members(b).len(), &all).expect("independent by construction");
        coord.push(Some((co, nl, s_ids, q_ids)));
    }
    if s_vecs.is_empty() || q_vecs.is_empty() {
        return Ok(true);
    }
    // coordinates of x.v split into S and Q parts
    let split = |y: &SparseVec| -> (Vec<(usize, Scalar)>, Vec<(usize, Scalar)>) {
        let mut sp = Vec::new();
        let mut qp = Vec::new();
        for (b, c) in m.components(y) {
            let Some((co, nl, s_ids, q_ids)) = coord[b].as_ref() else {
                debug_assert!(lower.contains(m, &c));
                continue;
            };
            let x = co.coords(&blocks.localize(&c)).expect("image stays inside the ambient module");
            for (j, val) in x.iter() {
                if j < *nl {
                    continue;
                }
                let j = j - nl;
                if j < s_ids.len() {
                    sp.push((s_ids[j], val.clone()));
                } else {
                    qp.push((q_ids[j - s_ids.len()], val.clone()));
                }
            }
        }
        (sp, qp)
    };
    // unknowns P[s][q] for s, q in the same block
    let mut unknown: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut s_of_block: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, (b, _)) in s_vecs.iter().enumerate() {
        s_of_block.entry(*b).or_default().push(i);
    }
    for (j, (b, _)) in q_vecs.iter().enumerate() {
        for &i in s_of_block.get(b).map_or(&[][..], |v| v.as_slice()) {
            let n = unknown.len();
            unknown.insert((i, j), n);
        }
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut rhs: Vec<(usize, Scalar)> = Vec::new();
    for o in 0..m.ops.len() {
        let xs: Vec<Vec<(usize, Scalar)>> = s_vecs
            .iter()
            .map(|(_, v)| {
                let (sp, qp) = split(&m.apply(o, v));
                debug_assert!(qp.is_empty(), "sub is invariant");
                sp
            })
            .collect();
        for (q, (_, v)) in q_vecs.iter().enumerate() {
            let (sq, qq) = split(&m.apply(o, v));
            let mut eq: BTreeMap<usize, (Vec<(usize, Scalar)>, Scalar)> = BTreeMap::new();
            for (s2, col) in xs.iter().enumerate() {
                if let Some(&u) = unknown.get(&(s2, q)) {
                    for (s, val) in col {
                        eq.entry(*s).or_insert_with(|| (Vec::new(), Scalar::zero())).0.push((u, val.clone()));
                    }
                }
            }
            for (q2, val) in &qq {
                for &s in s_of_block.get(&q_vecs[*q2].0).map_or(&[][..], |v| v.as_slice()) {
                    if let Some(&u) = unknown.get(&(s, *q2)) {
                        eq.entry(s).or_insert_with(|| (Vec::new(), Scalar::zero())).0.push((u, -val));
                    }
                }
            }
            for (s, val) in sq {
                eq.entry(s).or_insert_with(|| (Vec::new(), Scalar::zero())).1 -= &val;
            }
            for (_, (pairs, r)) in eq {
                let row = SparseVec::from_pairs(pairs);
                if row.is_zero() && r.is_zero() {
                    continue;
                }
                if !r.is_zero() {
                    rhs.push((rows.len(), r));
                }
                rows.push(row);
            }
        }
    }
    let nrows = rows.len();
    let a = SparseMatrix::from_rows(unknown.len(), rows);
    let b = SparseVec::from_pairs(rhs);
    debug_assert!(b.max_index().is_none_or(|i| i < nrows));
    Ok(solve(&a, &b).is_some())
}
