//! Cartan prolongation of a pair `(g_{-1}, g_0)`.
//!
//! Each `g_k` with `k >= 1` is stored as a subspace of `Hom(g_{-1}, g_{k-1})`,
//! coordinate `a * N + j` holding the `a`-th coordinate of `X(v_j)` where
//! `N = dim g_{-1}`. [`ProlongationTower::embed_full`] unfolds an element into
//! `g_0 (x) (g_{-1}^*)^{(x) k}`.

use crate::exactlin::{block_kernel, Blocks, Scalar, SparseMatrix, SparseVec, Subspace};
use crate::grading::GradedPair;
use crate::repmod::Weight;
use crate::superalg::{koszul, Parity};

/// One term `g_k` of the tower.
#[derive(Clone, Debug)]
pub struct Term {
    pub degree: i32,
    pub parities: Vec<Parity>,
    pub weights: Vec<Weight>,
    /// For `k >= 1`, the term as a subspace of `Hom(g_{-1}, g_{k-1})`.
    pub space: Option<Subspace>,
    /// `eval[j]` sends `X` to `X(v_j)` in `g_{k-1}`; empty for `g_{-1}`.
    pub eval: Vec<SparseMatrix>,
    /// Matrix of each operator of the pair on this term.
    pub ops: Vec<SparseMatrix>,
}

impl Term {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn superdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }
}

/// The terms `g_{-1}, g_0, g_1, ...` of a prolongation.
#[derive(Clone, Debug)]
pub struct ProlongationTower {
    pub pair: GradedPair,
    /// `terms[i]` is `g_{i-1}`.
    pub terms: Vec<Term>,
    pub op_parities: Vec<Parity>,
    /// The last computed term is zero.
    pub stabilized: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ProlongError {
    #[error("degree {0} is outside the computed tower")]
    OutOfRange(i32),
    #[error("vector is not in the stored term g_{0}")]
    NotInTerm(i32),
}

pub fn default_kmax(pair: &GradedPair) -> usize {
    2 + pair.dim_gm1()
}

/// Prolongs until a zero term or until `g_kmax` has been computed.
pub fn cartan_prolong(pair: &GradedPair, kmax: usize) -> ProlongationTower {
    let mut t = ProlongationTower::new(pair);
    while !t.stabilized && t.max_degree() < kmax as i32 {
        t.prolong_step();
    }
    t
}

impl ProlongationTower {
    /// The tower holding only `g_{-1}` and `g_0`.
    pub fn new(pair: &GradedPair) -> Self {
        let ops = pair.operators();
        let op_parities: Vec<Parity> = ops.iter().map(|o| o.parity).collect();
        let n = pair.dim_gm1();
        let gm1 = Term {
            degree: -1,
            parities: pair.gm1.module.parities.clone(),
            weights: pair.weights_gm1(),
            space: None,
            eval: Vec::new(),
            ops: ops.iter().map(|o| o.on_gm1.clone()).collect(),
        };
        let eval = (0..n)
            .map(|j| {
                let cols: Vec<SparseVec> = pair.gm1.mats.iter().map(|m| m.columns().swap_remove(j)).collect();
                SparseMatrix::from_columns(n, &cols)
            })
            .collect();
        let g0 = Term {
            degree: 0,
            parities: pair.g0.parities().to_vec(),
            weights: pair.weights_g0(),
            space: None,
            eval,
            ops: ops.iter().map(|o| o.on_g0.clone()).collect(),
        };
        let stabilized = g0.dim() == 0;
        ProlongationTower { pair: pair.clone(), terms: vec![gm1, g0], op_parities, stabilized }
    }

    pub fn n(&self) -> usize {
        self.terms[0].dim()
    }

    pub fn max_degree(&self) -> i32 {
        self.terms.len() as i32 - 2
    }

    pub fn term(&self, k: i32) -> Option<&Term> {
        usize::try_from(k + 1).ok().and_then(|i| self.terms.get(i))
    }

    /// `dim g_k`, zero above a stabilized top.
    pub fn dim(&self, k: i32) -> usize {
        match self.term(k) {
            Some(t) => t.dim(),
            None if self.stabilized && k > self.max_degree() => 0,
            None => panic!("g_{k} was not computed"),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Term::dim).collect()
    }

    /// Computed up to `kmax` without reaching zero.
    pub fn truncated(&self) -> bool {
        !self.stabilized
    }

    /// Parity of ambient coordinate `a * N + j` of `Hom(g_{-1}, g_{k-1})`.
    fn hom_parity(&self, prev: &Term, c: usize) -> Parity {
        let n = self.n();
        prev.parities[c / n] + self.terms[0].parities[c % n]
    }

    /// Computes the next term.
    pub fn prolong_step(&mut self) -> &Term {
        let n = self.n();
        let k = self.max_degree() + 1;
        let prev = self.terms.last().expect("g_0 present");
        let np = prev.dim();
        let amb = np * n;
        let gm1 = &self.terms[0];

        // X(v_i)(v_j) - (-1)^{p_i p_j} X(v_j)(v_i) for i <= j, one row block per pair.
        let below = prev.eval.first().map_or(0, SparseMatrix::nrows);
        let mut rows: Vec<SparseVec> = Vec::new();
        let ev_cols: Vec<Vec<SparseVec>> = prev.eval.iter().map(|e| e.columns()).collect();
        for i in 0..n {
            for j in i..n {
                let s = Scalar::from_int(koszul(gm1.parities[i], gm1.parities[j]));
                let mut block: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); below];
                for a in 0..np {
                    for (r, x) in ev_cols[j][a].iter() {
                        block[r].push((a * n + i, x.clone()));
                    }
                    for (r, x) in ev_cols[i][a].iter() {
                        block[r].push((a * n + j, -(&s * x)));
                    }
                }
                rows.extend(block.into_iter().map(SparseVec::from_pairs).filter(|r| !r.is_zero()));
            }
        }
        let m = SparseMatrix::from_rows(amb, rows);
        let keys: Vec<(Parity, Weight)> = (0..amb).map(|c| (self.hom_parity(prev, c), &prev.weights[c / n] - &gm1.weights[c % n])).collect();
        let ker = block_kernel(&m, &Blocks::from_keys(&keys));
        let space = Subspace::span(amb, &ker);

        let parities: Vec<Parity> = space.pivots().iter().map(|&c| self.hom_parity(prev, c)).collect();
        let weights: Vec<Weight> = space.pivots().iter().map(|&c| keys[c].1.clone()).collect();
        let eval: Vec<SparseMatrix> = (0..n)
            .map(|j| {
                let cols: Vec<SparseVec> =
                    space.basis().iter().map(|b| b.filter_map_indices(|c| (c % n == j).then_some(c / n))).collect();
                SparseMatrix::from_columns(np, &cols)
            })
            .collect();
        let ops = (0..self.op_parities.len())
            .map(|o| {
                let on_prev = prev.ops[o].columns();
                let cols: Vec<SparseVec> = space
                    .basis()
                    .iter()
                    .zip(&parities)
                    .map(|(b, &pb)| {
                        let y = self.act_hom(o, &on_prev, b, pb);
                        debug_assert!(space.contains(&y), "g_{k} is not stable under the operators");
                        SparseVec::from_dense(&space.coords_unchecked(&y))
                    })
                    .collect();
                SparseMatrix::from_columns(space.dim(), &cols)
            })
            .collect();
        let term = Term { degree: k, parities, weights, space: Some(space), eval, ops };
        self.stabilized = term.dim() == 0;
        self.terms.push(term);
        self.terms.last().expect("just pushed")
    }

    /// `[x, X](v) = x.(X(v)) - (-1)^{p(x)p(X)} X(x.v)` on `Hom(g_{-1}, g_{k-1})`.
    fn act_hom(&self, o: usize, on_prev: &[SparseVec], x: &SparseVec, px: Parity) -> SparseVec {
        let n = self.n();
        let on_gm1 = &self.terms[0].ops[o];
        let sign = Scalar::from_int(-koszul(self.op_parities[o], px));
        let mut pairs = Vec::new();
        for (c, val) in x.iter() {
            let (a, j) = (c / n, c % n);
            // first term: column a of the operator on g_{k-1}, same slot j
            for (r, y) in on_prev[a].iter() {
                pairs.push((r * n + j, val * y));
            }
            // second term: X(x.v_i) picks up X(v_j) with coefficient R_{ji}
            for (i, rji) in on_gm1.row(j).iter() {
                pairs.push((a * n + i, &(val * rji) * &sign));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `[X, v]` for `X` in `g_i` (coordinates in the term basis) and `v` in `g_{-1}`.
    pub fn tower_bracket(&self, i: i32, x: &SparseVec, v: &SparseVec) -> Result<SparseVec, ProlongError> {
        let t = self.term(i).filter(|_| i >= 0).ok_or(ProlongError::OutOfRange(i))?;
        if x.max_index().is_some_and(|m| m >= t.dim()) {
            return Err(ProlongError::NotInTerm(i));
        }
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out = out.axpy(c, &t.eval[j].mul_vec(x));
        }
        Ok(out)
    }

    /// Coordinates of an ambient `Hom(g_{-1}, g_{k-1})` vector in the basis of `g_k`.
    pub fn coords_in(&self, k: i32, ambient: &SparseVec) -> Result<SparseVec, ProlongError> {
        let t = self.term(k).ok_or(ProlongError::OutOfRange(k))?;
        let s = t.space.as_ref().ok_or(ProlongError::OutOfRange(k))?;
        s.coords(ambient).map(|c| SparseVec::from_dense(&c)).ok_or(ProlongError::NotInTerm(k))
    }

    /// Basis vector `b` of `g_k` as an element of `g_0 (x) (g_{-1}^*)^{(x) k}`,
    /// index `a N^k + j_1 N^{k-1} + ... + j_k` for `X(v_{j_1})...(v_{j_k}) = x_a`.
    pub fn embed_full(&self, k: i32, b: usize) -> SparseVec {
        let n = self.n();
        if k == 0 {
            return SparseVec::unit(b);
        }
        let t = self.term(k).expect("computed term");
        let row = &t.space.as_ref().expect("k >= 1").basis()[b];
        let inner = n.pow(k as u32 - 1);
        let mut pairs = Vec::new();
        for (c, x) in row.iter() {
            let (a, j) = (c / n, c % n);
            for (idx, y) in self.embed_full(k - 1, a).iter() {
                pairs.push(((idx / inner) * inner * n + j * inner + idx % inner, x * y));
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{build_case, pe_grading_tower};

    fn tower(label: &str) -> ProlongationTower {
        let p = build_case(label).unwrap();
        cartan_prolong(&p, default_kmax(&p))
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn vect_zero_n() {
        for n in 2..=3 {
            let t = tower(&format!("sl-std:1:{n}"));
            assert!(t.stabilized);
            let expect: Vec<usize> = (0..=n + 1).map(|k| n * binom(n, k)).collect();
            assert_eq!(t.dims(), expect);
            assert_eq!(t.dims().iter().sum::<usize>(), n << n);
        }
    }

    #[test]
    fn periplectic_towers_match_reference_gradings() {
        for n in 2..=3 {
            let (pe, spe) = pe_grading_tower(n).unwrap();
            let a = tower(&format!("cpe:{n}"));
            let b = tower(&format!("pe-ext:{n}:1:{n}"));
            for (t, r) in [(a, pe), (b, spe)] {
                assert!(t.stabilized);
                let dims: Vec<usize> = (-1..=t.max_degree()).map(|k| r.dim(k)).collect();
                assert_eq!(t.dims(), dims);
            }
            assert_eq!(tower(&format!("spe:{n}")).dims(), vec![2 * n, n * n - 1 + n * n, 0]);
            assert_eq!(tower(&format!("pe:{n}")).dim(1), 0);
        }
    }

    #[test]
    fn standard_sl_grading_returns_the_algebra() {
        assert_eq!(tower("sl-std:2:3").dims(), vec![6, 12, 6, 0]);
        assert_eq!(tower("q:3:1:+").dims(), vec![4, 8, 4, 0]);
        assert_eq!(tower("osp:5:2").dims(), vec![5, 13, 5, 0]);
    }

    #[test]
    fn terms_are_supersymmetric_in_every_slot() {
        for l in ["cpe:2", "sl-std:1:3", "sl-d1:2:3:0:1"] {
            let t = tower(l);
            let n = t.n();
            let par = &t.terms[0].parities;
            for k in 2..=t.max_degree() {
                for b in 0..t.dim(k) {
                    let full = t.embed_full(k, b);
                    for (idx, x) in full.iter() {
                        // swap the adjacent slots s, s+1 (slot 0 is the outermost)
                        let mut js: Vec<usize> = (0..k).map(|s| (idx / n.pow((k - 1 - s) as u32)) % n).collect();
                        let a = idx / n.pow(k as u32);
                        for s in 0..(k as usize - 1) {
                            js.swap(s, s + 1);
                            let sw = js.iter().fold(a, |acc, &j| acc * n + j);
                            js.swap(s, s + 1);
                            let sign = koszul(par[js[s]], par[js[s + 1]]);
                            assert_eq!(full.get(sw), x * &Scalar::from_int(sign), "{l} g_{k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn operators_form_representations() {
        let t = tower("cpe:2");
        for term in &t.terms {
            for a in 0..t.pair.dim_g0() {
                for b in 0..t.pair.dim_g0() {
                    let (pa, pb) = (t.op_parities[a], t.op_parities[b]);
                    let lhs = term.ops[a].mul(&term.ops[b]).axpy(&Scalar::from_int(-koszul(pa, pb)), &term.ops[b].mul(&term.ops[a]));
                    let br = t.pair.g0.bracket_basis(a, b);
                    let rhs = br.iter().fold(SparseMatrix::zeros(term.dim(), term.dim()), |m, (c, x)| m.axpy(x, &term.ops[c]));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn faithful_pairs_are_transitive() {
        let t = tower("cpe:3");
        for k in 1..=t.max_degree() {
            let stacked = SparseMatrix::from_rows(t.dim(k), t.term(k).unwrap().eval.iter().flat_map(|e| e.rows().to_vec()).collect());
            assert_eq!(crate::exactlin::rank(&stacked), t.dim(k));
        }
    }

    #[test]
    fn bracket_with_gm1() {
        let t = tower("sl-std:1:2");
        let x = SparseVec::unit(0);
        let v = SparseVec::unit(1);
        let y = t.tower_bracket(1, &x, &v).unwrap();
        assert_eq!(y, t.term(1).unwrap().eval[1].mul_vec(&x));
        assert!(t.tower_bracket(-1, &x, &v).is_err());
        assert!(t.tower_bracket(1, &SparseVec::unit(99), &v).is_err());
        let g0 = t.tower_bracket(0, &SparseVec::unit(0), &v).unwrap();
        assert_eq!(g0, t.pair.gm1.mats[0].mul_vec(&v));
    }

    #[test]
    fn non_faithful_tower_contains_central_powers() {
        let t = tower("sl-std:2:2");
        let z = t.pair.central.clone().unwrap()[0];
        let n = t.n();
        // z (x) xi_j lies in g_1 for every j
        for j in 0..n {
            assert!(t.coords_in(1, &SparseVec::unit(z * n + j)).is_ok());
        }
    }
}
