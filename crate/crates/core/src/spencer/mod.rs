//! Spencer cochains `C^{k,s} = g_{k-s} (x) E^s(g_{-1}^*)` and their cohomology.
//!
//! The differential `C^{k,s} -> C^{k,s+1}` is
//! `a (x) mu -> sum_j a(v_j) (x) xi_j mu`, where `xi_j` is the dual basis
//! and `E(g_{-1}^*)` is the super-exterior algebra. It preserves weights, so
//! every rank below is computed one weight block at a time.

use crate::exactlin::{block_image, block_kernel, Blocks, Coordinatizer, Echelon, Scalar, SparseMatrix, SparseVec};
use crate::prolong::{ProlongationTower, Term};
use crate::repmod::{Weight, WeightModule};
use crate::superalg::{koszul, ModuleAction, Parity, PowerKind, PowerSpace, SuperSpace};

#[derive(Debug, thiserror::Error)]
pub enum SpencerError {
    #[error("g_{0} is needed but the tower was not prolonged that far")]
    NotComputed(i32),
    #[error("C^{{{0},{1}}} is not defined")]
    Undefined(i32, usize),
}

/// The cochain space `C^{k,s}` with its weight basis.
#[derive(Clone, Debug)]
pub struct Cochains {
    pub k: i32,
    pub s: usize,
    pub coeff_dim: usize,
    pub power: PowerSpace,
    pub parities: Vec<Parity>,
    pub weights: Vec<Weight>,
}

impl Cochains {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn superdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn index(&self, a: usize, mu: usize) -> usize {
        a * self.power.dim() + mu
    }

    /// Partition of the basis by (parity, weight).
    pub fn blocks(&self) -> Blocks {
        let keys: Vec<(Parity, &Weight)> = self.parities.iter().copied().zip(&self.weights).collect();
        Blocks::from_keys(&keys)
    }
}

fn coefficient_term(tower: &ProlongationTower, d: i32) -> Result<Option<&Term>, SpencerError> {
    match tower.term(d) {
        Some(t) => Ok(Some(t)),
        None if tower.stabilized && d > tower.max_degree() => Ok(None),
        None => Err(SpencerError::NotComputed(d)),
    }
}

pub fn cochain_space(tower: &ProlongationTower, k: i32, s: usize) -> Result<Cochains, SpencerError> {
    let d = k - s as i32;
    if d < -1 {
        return Err(SpencerError::Undefined(k, s));
    }
    let gm1 = &tower.terms[0];
    let power = PowerSpace::new(PowerKind::Ext, &gm1.parities, s);
    let mu_weights: Vec<Weight> = power
        .monomials
        .iter()
        .map(|m| m.iter().fold(Weight::zero(tower.pair.n_eps, tower.pair.n_delta()), |w, &j| &w - &gm1.weights[j]))
        .collect();
    let mut parities = Vec::new();
    let mut weights = Vec::new();
    let coeff_dim = match coefficient_term(tower, d)? {
        Some(t) => {
            for a in 0..t.dim() {
                for mu in 0..power.dim() {
                    parities.push(t.parities[a] + power.parity_of(mu));
                    weights.push(&t.weights[a] + &mu_weights[mu]);
                }
            }
            t.dim()
        }
        None => 0,
    };
    Ok(Cochains { k, s, coeff_dim, power, parities, weights })
}

/// Matrix of `C^{k,s} -> C^{k,s+1}`.
pub fn spencer_differential(tower: &ProlongationTower, k: i32, s: usize) -> Result<SparseMatrix, SpencerError> {
    let src = cochain_space(tower, k, s)?;
    let dst = cochain_space(tower, k, s + 1)?;
    Ok(differential(tower, &src, &dst))
}

fn differential(tower: &ProlongationTower, src: &Cochains, dst: &Cochains) -> SparseMatrix {
    let n = tower.n();
    if src.coeff_dim == 0 || dst.coeff_dim == 0 {
        return SparseMatrix::zeros(dst.dim(), src.dim());
    }
    let t = tower.term(src.k - src.s as i32).expect("nonzero coefficients are computed");
    let ev: Vec<Vec<SparseVec>> = t.eval.iter().map(|e| e.columns()).collect();
    // xi_j mu for every j and mu
    let mult: Vec<Vec<Option<(usize, i64)>>> = src
        .power
        .monomials
        .iter()
        .map(|m| {
            (0..n)
                .map(|j| {
                    let mut w = Vec::with_capacity(m.len() + 1);
                    w.push(j);
                    w.extend_from_slice(m);
                    dst.power.word(&w)
                })
                .collect()
        })
        .collect();
    let mut cols = Vec::with_capacity(src.dim());
    for a in 0..src.coeff_dim {
        for mu in 0..src.power.dim() {
            let mut pairs = Vec::new();
            for j in 0..n {
                if let Some((nu, sign)) = mult[mu][j] {
                    for (b, x) in ev[j][a].iter() {
                        pairs.push((dst.index(b, nu), if sign == 1 { x.clone() } else { -x }));
                    }
                }
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
    }
    SparseMatrix::from_columns(dst.dim(), &cols)
}

/// Operator matrices on `C^{k,s}`: `x(a (x) mu) = (xa) (x) mu + (-1)^{p(x)p(a)} a (x) (x mu)`.
pub fn cochain_operators(tower: &ProlongationTower, c: &Cochains) -> Vec<SparseMatrix> {
    let nops = tower.op_parities.len();
    if c.coeff_dim == 0 {
        return vec![SparseMatrix::zeros(0, 0); nops];
    }
    let t = tower.term(c.k - c.s as i32).expect("nonzero coefficients are computed");
    let gm1 = &tower.terms[0];
    let base = ModuleAction::new(SuperSpace::anonymous("v", gm1.parities.clone()), tower.op_parities.clone(), gm1.ops.clone());
    let on_power = c.power.action(&base.dual());
    (0..nops)
        .map(|o| {
            let px = tower.op_parities[o];
            let coeff_cols = t.ops[o].columns();
            let pow_cols = on_power.mats[o].columns();
            let mut cols = Vec::with_capacity(c.dim());
            for a in 0..c.coeff_dim {
                let sign = Scalar::from_int(koszul(px, t.parities[a]));
                for mu in 0..c.power.dim() {
                    let mut pairs: Vec<(usize, Scalar)> = coeff_cols[a].iter().map(|(b, x)| (c.index(b, mu), x.clone())).collect();
                    pairs.extend(pow_cols[mu].iter().map(|(nu, y)| (c.index(a, nu), &sign * y)));
                    cols.push(SparseVec::from_pairs(pairs));
                }
            }
            SparseMatrix::from_columns(c.dim(), &cols)
        })
        .collect()
}

/// `C^{k,s-1} -> C^{k,s} -> C^{k,s+1}`.
#[derive(Clone, Debug)]
pub struct SpencerComplex {
    pub k: i32,
    pub s: usize,
    pub before: Cochains,
    pub middle: Cochains,
    pub after: Cochains,
    pub d_in: SparseMatrix,
    pub d_out: SparseMatrix,
}

impl SpencerComplex {
    pub fn new(tower: &ProlongationTower, k: i32, s: usize) -> Result<Self, SpencerError> {
        if s == 0 {
            return Err(SpencerError::Undefined(k, 0));
        }
        let before = cochain_space(tower, k, s - 1)?;
        let middle = cochain_space(tower, k, s)?;
        let after = cochain_space(tower, k, s + 1).or_else(|e| match e {
            // the row ends at C^{k,k+1}
            SpencerError::Undefined(..) => Ok(Cochains { k, s: s + 1, coeff_dim: 0, power: PowerSpace::new(PowerKind::Ext, &[], 0), parities: vec![], weights: vec![] }),
            e => Err(e),
        })?;
        let d_in = differential(tower, &before, &middle);
        let d_out = differential(tower, &middle, &after);
        Ok(SpencerComplex { k, s, before, middle, after, d_in, d_out })
    }

    pub fn composite_is_zero(&self) -> bool {
        self.d_out.mul(&self.d_in).is_zero()
    }
}

/// `H^{k,s}` with a chosen basis of representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub complex: SpencerComplex,
    pub kernel_dim: usize,
    pub image_dim: usize,
    /// Representatives in `C^{k,s}`, a complement of the image inside the kernel.
    pub transversal: Vec<SparseVec>,
    pub parities: Vec<Parity>,
    pub weights: Vec<Weight>,
    /// Image basis, grouped by block of `C^{k,s}`.
    pub image: Vec<SparseVec>,
    /// Block of each transversal vector.
    block_of: Vec<usize>,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.transversal.len()
    }

    pub fn superdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    /// The induced action of the pair's operators, as a module in the transversal basis.
    pub fn module(&self, tower: &ProlongationTower) -> WeightModule {
        let ops = cochain_operators(tower, &self.complex.middle);
        let blocks = self.complex.middle.blocks();
        // per block: coordinates relative to image + transversal vectors
        let mut per_block: Vec<(Vec<SparseVec>, usize)> = vec![(Vec::new(), 0); blocks.len()];
        for v in &self.image {
            let b = blocks.block_of(v.leading().expect("nonzero").0);
            per_block[b].0.push(v.clone());
            per_block[b].1 += 1;
        }
        let mut t_index = vec![Vec::new(); blocks.len()];
        for (i, v) in self.transversal.iter().enumerate() {
            per_block[self.block_of[i]].0.push(v.clone());
            t_index[self.block_of[i]].push(i);
        }
        let local: Vec<Option<(Vec<usize>, Coordinatizer)>> = per_block
            .iter()
            .enumerate()
            .map(|(b, (vs, _))| {
                if t_index[b].is_empty() {
                    return None;
                }
                let rows = blocks.members(b).to_vec();
                let lv: Vec<SparseVec> = vs.iter().map(|v| v.map_indices(|i| rows.binary_search(&i).expect("vector inside its block"))).collect();
                Some((rows.clone(), Coordinatizer::new(rows.len(), &lv).expect("independent")))
            })
            .collect();
        let mats = ops
            .iter()
            .map(|m| {
                let cols: Vec<SparseVec> = self
                    .transversal
                    .iter()
                    .map(|t| {
                        let y = m.mul_vec(t);
                        let Some((lead, _)) = y.leading() else { return SparseVec::new() };
                        let b = blocks.block_of(lead);
                        match &local[b] {
                            None => {
                                debug_assert!(self.image_contains(b, &y, &blocks), "action leaves the kernel");
                                SparseVec::new()
                            }
                            Some((rows, co)) => {
                                let ly = y.map_indices(|i| rows.binary_search(&i).expect("weight vector"));
                                let c = co.coords(&ly).expect("the kernel is stable under the action");
                                let skip = per_block[b].1;
                                c.filter_map_indices(|j| j.checked_sub(skip).map(|q| t_index[b][q]))
                            }
                        }
                    })
                    .collect();
                SparseMatrix::from_columns(self.dim(), &cols)
            })
            .collect();
        WeightModule::new(self.parities.clone(), self.weights.clone(), &tower.pair, mats)
    }

    fn image_contains(&self, b: usize, y: &SparseVec, blocks: &Blocks) -> bool {
        let mut e = Echelon::new(blocks.size());
        e.extend(self.image.iter().filter(|v| blocks.block_of(v.leading().expect("nonzero").0) == b));
        e.contains(y)
    }
}

/// `H^{k,s}`, computed blockwise.
pub fn spencer_cohomology(tower: &ProlongationTower, k: i32, s: usize) -> Result<CohomologySpace, SpencerError> {
    let complex = SpencerComplex::new(tower, k, s)?;
    let blocks = complex.middle.blocks();
    let kernel = block_kernel(&complex.d_out, &blocks);
    let image_src = complex.before.blocks();
    let image_blocks = block_image(&complex.d_in, &image_src);
    let image: Vec<SparseVec> = image_blocks.into_iter().flatten().collect();

    let mut by_block_img: Vec<Vec<&SparseVec>> = vec![Vec::new(); blocks.len()];
    for v in &image {
        by_block_img[blocks.block_of(v.leading().expect("nonzero").0)].push(v);
    }
    let mut by_block_ker: Vec<Vec<&SparseVec>> = vec![Vec::new(); blocks.len()];
    for v in &kernel {
        by_block_ker[blocks.block_of(v.leading().expect("nonzero").0)].push(v);
    }
    let mut transversal = Vec::new();
    let mut block_of = Vec::new();
    for b in 0..blocks.len() {
        if by_block_ker[b].len() == by_block_img[b].len() {
            continue;
        }
        let rows = blocks.members(b);
        let loc = |v: &SparseVec| v.map_indices(|i| rows.binary_search(&i).expect("vector inside its block"));
        let mut e = Echelon::new(rows.len());
        for v in &by_block_img[b] {
            e.insert(&loc(v));
        }
        for v in &by_block_ker[b] {
            if e.insert(&loc(v)) {
                transversal.push((*v).clone());
                block_of.push(b);
            }
        }
    }
    let parities = transversal.iter().map(|v| complex.middle.parities[v.leading().expect("nonzero").0]).collect();
    let weights = transversal.iter().map(|v| complex.middle.weights[v.leading().expect("nonzero").0].clone()).collect();
    Ok(CohomologySpace { kernel_dim: kernel.len(), image_dim: image.len(), transversal, parities, weights, image, block_of, complex })
}

/// Dimension of `H^{k,s}` only.
pub fn cohomology_dim(tower: &ProlongationTower, k: i32, s: usize) -> Result<usize, SpencerError> {
    let c = SpencerComplex::new(tower, k, s)?;
    let ker = c.middle.dim() - crate::exactlin::block_rank(&c.d_out, &c.middle.blocks());
    let im = crate::exactlin::block_rank(&c.d_in, &c.before.blocks());
    Ok(ker - im)
}

/// Result of comparing the two Euler characteristics of a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub k: i32,
    pub cochain_dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    pub passed: bool,
}

/// Euler characteristic of the full row `C^{k,0} -> ... -> C^{k,k+1}`, once from
/// cochain dimensions and once from `dim ker / (ker ∩ im)`.
pub fn euler_check(tower: &ProlongationTower, k: i32) -> Result<EulerCheck, SpencerError> {
    let spaces = (0..=(k + 1) as usize).map(|s| cochain_space(tower, k, s)).collect::<Result<Vec<_>, _>>()?;
    let diffs: Vec<SparseMatrix> = spaces.windows(2).map(|w| differential(tower, &w[0], &w[1])).collect();
    Ok(euler_from(k, &spaces, &diffs))
}

/// The same check on explicitly given differentials (which need not square to zero).
pub fn euler_from(k: i32, spaces: &[Cochains], diffs: &[SparseMatrix]) -> EulerCheck {
    use crate::exactlin::Subspace;
    let dims: Vec<usize> = spaces.iter().map(Cochains::dim).collect();
    let mut h = Vec::with_capacity(spaces.len());
    for s in 0..spaces.len() {
        let n = dims[s];
        let ker = if s < diffs.len() {
            Subspace::span(n, &block_kernel(&diffs[s], &Blocks::single(n)))
        } else {
            Subspace::full(n)
        };
        let im = if s > 0 { Subspace::span(n, &diffs[s - 1].columns()) } else { Subspace::zero(n) };
        h.push(ker.dim() - ker.intersect(&im).dim());
    }
    let chi = |v: &[usize]| v.iter().enumerate().map(|(s, &d)| if s % 2 == 0 { d as i64 } else { -(d as i64) }).sum::<i64>();
    EulerCheck { k, passed: chi(&dims) == chi(&h), cochain_dims: dims, cohomology_dims: h }
}

#[cfg(test)]
mod tests;
