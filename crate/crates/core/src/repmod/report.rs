use serde::{Deserialize, Serialize};

use super::{detect_splitting, generate_submodule, highest_vectors, weight_decompose, GradedSubspace, RepmodError, Weight, WeightModule};
use crate::exactlin::{Echelon, Scalar, SparseVec};
use crate::superalg::Parity;

/// One composition factor of a series.
#[derive(Clone, Debug)]
pub struct Factor {
    pub weight: Weight,
    pub dim: usize,
    pub parity: Parity,
    pub highest: SparseVec,
    /// The zero-weight part of the enveloping algebra acts on the top weight
    /// space by the full matrix algebra, so the factor stays simple over C.
    pub absolutely_irreducible: bool,
}

/// A composition series `0 = F_0 < F_1 < ... < F_r = space` built from the bottom.
///
/// Each step takes a highest vector of lexicographically smallest weight in the
/// current quotient; the submodule it generates has no other highest weights,
/// so it is simple once its top weight space is irreducible.
pub fn composition_series(m: &WeightModule, space: &GradedSubspace) -> Result<(Vec<GradedSubspace>, Vec<Factor>), RepmodError> {
    let mut filtration = vec![GradedSubspace::zero(m)];
    let mut factors = Vec::new();
    let total = space.dim();
    while filtration.last().expect("nonempty").dim() < total {
        let u = filtration.last().expect("nonempty");
        let hv = highest_vectors(m, space, Some(u));
        let mu = hv.iter().map(|h| &h.weight).min().ok_or(RepmodError::NoHighestVector)?.clone();
        let mut best: Option<(GradedSubspace, &SparseVec, Parity)> = None;
        for h in hv.iter().filter(|h| h.weight == mu) {
            let s = generate_submodule(m, u, std::slice::from_ref(&h.vector));
            if best.as_ref().is_none_or(|(b, _, _)| s.dim() < b.dim()) {
                best = Some((s, &h.vector, h.parity));
            }
        }
        let (s, v, parity) = best.expect("at least one candidate");
        let absolutely_irreducible = top_is_full_matrix_algebra(m, u, &s, &mu);
        factors.push(Factor { weight: mu, dim: s.dim() - u.dim(), parity, highest: v.clone(), absolutely_irreducible });
        filtration.push(s);
    }
    Ok((filtration, factors))
}

/// Checks that the operators generate `End(S_mu / U_mu)`: the span of
/// `(a b_1, ..., a b_d)` over all words `a` of weight zero must have dimension `d^2`.
fn top_is_full_matrix_algebra(m: &WeightModule, u: &GradedSubspace, s: &GradedSubspace, mu: &Weight) -> bool {
    let n = m.dim();
    let mut tops = Vec::new();
    for b in 0..m.blocks().len() {
        if m.block_weight(b) != mu {
            continue;
        }
        let mut e = Echelon::new(m.blocks().members(b).len());
        for v in s.block_basis(m, b) {
            let r = u.reduce(m, &v);
            if e.insert(&m.blocks().localize(&r)) {
                tops.push(r);
            }
        }
    }
    let d = tops.len();
    if d <= 1 {
        return true;
    }
    let flatten = |vs: &[SparseVec]| -> SparseVec {
        SparseVec::from_pairs(vs.iter().enumerate().flat_map(|(i, v)| v.iter().map(move |(j, x)| (i * n + j, x.clone()))).collect())
    };
    let mut span = Echelon::new(d * n);
    let mut queue = std::collections::VecDeque::new();
    span.insert(&flatten(&tops));
    queue.push_back(tops);
    let mut at_mu = 1;
    while let Some(t) = queue.pop_front() {
        for o in 0..m.ops.len() {
            let y: Vec<SparseVec> = t.iter().map(|v| u.reduce(m, &m.apply(o, v))).collect();
            if span.insert(&flatten(&y)) {
                let w = y.iter().find_map(|v| v.leading().map(|(i, _)| &m.weights[i]));
                if w == Some(mu) {
                    at_mu += 1;
                }
                queue.push_back(y);
            }
        }
    }
    at_mu == d * d
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCount {
    pub weight: Weight,
    pub even: usize,
    pub odd: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestReport {
    pub weight: Weight,
    pub parity: Parity,
    pub coords: Vec<(usize, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub weight: Weight,
    pub dim: usize,
    pub parity: Parity,
    #[serde(default = "yes", skip_serializing_if = "Clone::clone")]
    pub absolutely_irreducible: bool,
}

fn yes() -> bool {
    true
}

/// Splitting of the extension formed by two adjacent factors, `lower` below `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub lower: usize,
    pub upper: usize,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub dim: usize,
    pub weight_multiplicities: Vec<WeightCount>,
    pub highest: Vec<HighestReport>,
    /// Bottom to top.
    pub factors: Vec<FactorReport>,
    pub splitness: Vec<SplitReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ModuleReport {
    pub fn factor_weights(&self) -> Vec<(Weight, Parity)> {
        self.factors.iter().map(|f| (f.weight.clone(), f.parity)).collect()
    }
}

/// Weights, highest vectors, a composition series and the splitting of each adjacent pair.
pub fn composition_report(m: &WeightModule, space: &GradedSubspace) -> Result<ModuleReport, RepmodError> {
    let (filtration, factors) = composition_series(m, space)?;
    let mut splitness = Vec::new();
    for i in 0..factors.len().saturating_sub(1) {
        let split = detect_splitting(m, &filtration[i], &filtration[i + 1], &filtration[i + 2])?;
        splitness.push(SplitReport { lower: i, upper: i + 1, split });
    }
    let mut notes = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        if !f.absolutely_irreducible {
            notes.push(format!("factor {i} ({}) is simple over Q but its top weight space is not absolutely irreducible", f.weight));
        }
    }
    let report = ModuleReport {
        dim: space.dim(),
        weight_multiplicities: weight_decompose(m, space).into_iter().map(|(weight, (even, odd))| WeightCount { weight, even, odd }).collect(),
        highest: highest_vectors(m, space, None)
            .into_iter()
            .map(|h| HighestReport { weight: h.weight, parity: h.parity, coords: h.vector.entries().to_vec() })
            .collect(),
        factors: factors
            .iter()
            .map(|f| FactorReport { weight: f.weight.clone(), dim: f.dim, parity: f.parity, absolutely_irreducible: f.absolutely_irreducible })
            .collect(),
        splitness,
        notes,
    };
    debug_assert_eq!(report.factors.iter().map(|f| f.dim).sum::<usize>(), report.dim);
    Ok(report)
}
