//! Super-symmetric and super-exterior powers.
//!
//! A monomial is a nondecreasing list of basis indices. In the exterior power
//! `x_a x_b = -(-1)^{p(a)p(b)} x_b x_a`, so even generators anticommute and
//! cannot repeat while odd ones commute. The symmetric power is the mirror
//! image.

use std::collections::HashMap;

use super::{koszul, ModuleAction, Parity, SuperSpace};
use crate::exactlin::{Scalar, SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerKind {
    Sym,
    Ext,
}

impl PowerKind {
    /// Sign picked up by swapping adjacent generators of parities `a`, `b`.
    pub fn swap_sign(self, a: Parity, b: Parity) -> i64 {
        match self {
            PowerKind::Sym => koszul(a, b),
            PowerKind::Ext => -koszul(a, b),
        }
    }

    pub fn allows_repeat(self, p: Parity) -> bool {
        match self {
            PowerKind::Sym => !p.is_odd(),
            PowerKind::Ext => p.is_odd(),
        }
    }

    /// Sorts a word into a monomial, returning the sign, or `None` when it vanishes.
    pub fn normalize(self, parities: &[Parity], word: &[usize]) -> Option<(i64, Vec<usize>)> {
        let mut w = word.to_vec();
        let mut sign = 1;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                sign *= self.swap_sign(parities[w[j - 1]], parities[w[j]]);
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        if w.windows(2).any(|p| p[0] == p[1] && !self.allows_repeat(parities[p[0]])) {
            return None;
        }
        Some((sign, w))
    }
}

/// All monomials of degree `s`, in lexicographic order.
pub fn power_basis(kind: PowerKind, parities: &[Parity], s: usize) -> Vec<Vec<usize>> {
    fn rec(kind: PowerKind, parities: &[Parity], s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..parities.len() {
            if cur.last() == Some(&i) && !kind.allows_repeat(parities[i]) {
                continue;
            }
            cur.push(i);
            rec(kind, parities, s, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(kind, parities, s, 0, &mut Vec::new(), &mut out);
    out
}

/// The degree-`s` power of a superspace with an index over its monomials.
#[derive(Clone, Debug)]
pub struct PowerSpace {
    pub kind: PowerKind,
    pub base: Vec<Parity>,
    pub degree: usize,
    pub monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PowerSpace {
    pub fn new(kind: PowerKind, base: &[Parity], degree: usize) -> Self {
        let monomials = power_basis(kind, base, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        PowerSpace { kind, base: base.to_vec(), degree, monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, mono: &[usize]) -> Option<usize> {
        self.index.get(mono).copied()
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        Parity::sum(self.monomials[i].iter().map(|&a| self.base[a]))
    }

    pub fn space(&self, labels: &[String]) -> SuperSpace {
        let sep = match self.kind {
            PowerKind::Sym => ".",
            PowerKind::Ext => "^",
        };
        let l = self
            .monomials
            .iter()
            .map(|m| if m.is_empty() { "1".to_string() } else { m.iter().map(|&a| labels[a].as_str()).collect::<Vec<_>>().join(sep) })
            .collect();
        SuperSpace::new(l, (0..self.dim()).map(|i| self.parity_of(i)).collect())
    }

    /// Coordinates of an arbitrary word, as `(index, sign)`.
    pub fn word(&self, w: &[usize]) -> Option<(usize, i64)> {
        let (sign, m) = self.kind.normalize(&self.base, w)?;
        Some((self.index[&m], sign))
    }

    /// Induced action, each operator acting as a signed derivation.
    pub fn action(&self, base: &ModuleAction) -> ModuleAction {
        assert_eq!(base.module.parities, self.base);
        let cols: Vec<Vec<Vec<(usize, Scalar)>>> = base.mats.iter().map(|m| m.columns().into_iter().map(|c| c.entries().to_vec()).collect()).collect();
        let mats = cols
            .iter()
            .zip(&base.op_parities)
            .map(|(mcols, px)| {
                let cs: Vec<SparseVec> = self.monomials.iter().map(|mono| self.derive(mono, *px, mcols)).collect();
                SparseMatrix::from_columns(self.dim(), &cs)
            })
            .collect();
        ModuleAction::new(self.space(&base.module.labels), base.op_parities.clone(), mats)
    }

    fn derive(&self, mono: &[usize], px: Parity, cols: &[Vec<(usize, Scalar)>]) -> SparseVec {
        let mut pairs = Vec::new();
        let mut before = Parity::Even;
        for k in 0..mono.len() {
            let outer = koszul(px, before);
            for (a, c) in &cols[mono[k]] {
                let mut w = mono.to_vec();
                w[k] = *a;
                if let Some((i, s)) = self.word(&w) {
                    pairs.push((i, c * &Scalar::from_int(outer * s)));
                }
            }
            before = before + self.base[mono[k]];
        }
        SparseVec::from_pairs(pairs)
    }

    fn tensor_index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &a| acc * self.base.len() + a)
    }

    /// Tensor power to power: a tensor word maps to its normalized monomial.
    pub fn projection(&self) -> SparseMatrix {
        let n = self.base.len();
        let total = n.pow(self.degree as u32);
        let cols: Vec<SparseVec> = (0..total)
            .map(|t| {
                let mut w = vec![0; self.degree];
                let mut r = t;
                for k in (0..self.degree).rev() {
                    w[k] = r % n;
                    r /= n;
                }
                match self.word(&w) {
                    Some((i, s)) => SparseVec::from_pairs(vec![(i, Scalar::from_int(s))]),
                    None => SparseVec::new(),
                }
            })
            .collect();
        SparseMatrix::from_columns(self.dim(), &cols)
    }

    /// Power to tensor power: the signed average over all orderings.
    pub fn embedding(&self) -> SparseMatrix {
        let n = self.base.len();
        let total = n.pow(self.degree as u32);
        let fact: i64 = (1..=self.degree as i64).product();
        let cols: Vec<SparseVec> = self
            .monomials
            .iter()
            .map(|m| {
                let mut pairs = Vec::new();
                permute(m, &mut |w| {
                    // sign relating the ordered word back to the monomial
                    let (s, _) = self.kind.normalize(&self.base, w).expect("monomial words do not vanish");
                    pairs.push((self.tensor_index(w), Scalar::new(s, fact)));
                });
                SparseVec::from_pairs(pairs)
            })
            .collect();
        SparseMatrix::from_columns(total, &cols)
    }
}

/// Calls `f` on every permutation of `items` (with repetition, so equal
/// entries produce repeated words, matching the `1/s!` normalization).
fn permute(items: &[usize], f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], used: &mut Vec<bool>, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == items.len() {
            f(cur);
            return;
        }
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                cur.push(items[i]);
                rec(items, used, cur, f);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(items, &mut vec![false; items.len()], &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::build_gl;

    fn sdim(kind: PowerKind, m: usize, n: usize, s: usize) -> (usize, usize) {
        let v = SuperSpace::standard(m, n);
        PowerSpace::new(kind, &v.parities, s).space(&v.labels).superdim()
    }

    #[test]
    fn small_power_superdims() {
        assert_eq!(sdim(PowerKind::Sym, 2, 0, 2), (3, 0));
        assert_eq!(sdim(PowerKind::Sym, 0, 2, 2), (1, 0));
        assert_eq!(sdim(PowerKind::Sym, 1, 1, 2), (1, 1));
        assert_eq!(sdim(PowerKind::Ext, 2, 0, 2), (1, 0));
        assert_eq!(sdim(PowerKind::Ext, 0, 2, 2), (3, 0));
        assert_eq!(sdim(PowerKind::Ext, 1, 1, 2), (1, 1));
        assert_eq!(sdim(PowerKind::Ext, 0, 4, 3).0 + sdim(PowerKind::Ext, 0, 4, 3).1, 20);
    }

    #[test]
    fn square_counts_add_up() {
        for (m, n) in [(2, 3), (3, 1), (0, 4), (2, 2)] {
            let (se, so) = sdim(PowerKind::Sym, m, n, 2);
            let (ee, eo) = sdim(PowerKind::Ext, m, n, 2);
            let (te, to) = SuperSpace::standard(m, n).tensor(&SuperSpace::standard(m, n)).superdim();
            assert_eq!((se + ee, so + eo), (te, to));
            assert_eq!((se, so), (m * (m + 1) / 2 + n * (n.max(1) - 1) / 2, m * n));
            assert_eq!((ee, eo), (m * (m.max(1) - 1) / 2 + n * (n + 1) / 2, m * n));
        }
    }

    #[test]
    fn embedding_is_a_section_and_equivariant() {
        let gl = build_gl(1, 2);
        let std = gl.standard_action();
        let t3 = std.tensor(&std).tensor(&std);
        for kind in [PowerKind::Sym, PowerKind::Ext] {
            for s in 1..=3 {
                let p = PowerSpace::new(kind, &std.module.parities, s);
                let act = p.action(&std);
                act.check_representation(&gl.to_lie()).unwrap();
                assert_eq!(p.projection().mul(&p.embedding()), SparseMatrix::identity(p.dim()));
                if s == 3 {
                    let (emb, proj) = (p.embedding(), p.projection());
                    for (a, t) in act.mats.iter().zip(&t3.mats) {
                        assert_eq!(&t.mul(&emb), &emb.mul(a));
                        assert_eq!(&proj.mul(t), &a.mul(&proj));
                    }
                }
            }
        }
    }
}
