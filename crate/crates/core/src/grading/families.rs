use std::collections::BTreeMap;

use super::{ad_diag, assemble, diag, GradedPair, GradingError, MatrixPair};
use crate::exactlin::{kernel_basis, Echelon, Scalar, SparseMatrix, SparseVec};
use crate::superalg::{
    build_cpe, build_osp, build_pe, build_pe_extension, build_spe, koszul, osp_form, q_form, LieSuperalgebra,
    MatrixSuperalgebra, Parity, SuperSpace,
};

fn unit(n: usize, r: usize, c: usize) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(n, n);
    m.set(r, c, Scalar::one());
    m
}

fn diag_unit(n: usize, entries: &[(usize, i64)]) -> Vec<Scalar> {
    let mut d = vec![Scalar::zero(); n];
    for &(i, c) in entries {
        d[i] = Scalar::from_int(c);
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeKind {
    Pe,
    Spe,
    Cpe,
    /// spe(n) with `a tau + b z` adjoined.
    Ext(Scalar, Scalar),
}

/// `(V, g_0)` for the periplectic family acting on its standard module.
pub fn pe_family_pair(kind: &PeKind, n: usize) -> Result<GradedPair, GradingError> {
    let (alg, label, central) = match kind {
        PeKind::Pe => (build_pe(n)?, format!("pe:{n}"), vec![]),
        PeKind::Spe => (build_spe(n)?, format!("spe:{n}"), vec![]),
        PeKind::Cpe => {
            let a = build_cpe(n)?;
            let z = a.dim() - 1;
            (a, format!("cpe:{n}"), vec![z])
        }
        PeKind::Ext(a, b) => {
            let alg = build_pe_extension(n, a, b)?;
            let t = alg.dim() - 1;
            (alg, format!("pe-ext:{n}:{a}:{b}"), if a.is_zero() { vec![t] } else { vec![] })
        }
    };
    let torus = (0..n).map(|i| (format!("t{}", i + 1), diag_unit(2 * n, &[(i, 1), (n + i, -1)]))).collect();
    assemble(MatrixPair { label, g0: &alg, gm1: None, torus, n_eps: n, central: Some(central), quotient_by: None })
}

/// Block-diagonal supertraceless matrices on `V = W' + W''`.
///
/// The diagonal part is spanned by the per-block `h`'s and then topped up
/// from `extra` in order; returns which of the `extra` candidates were kept.
fn block_sl(v: &SuperSpace, blocks: &[Vec<usize>], extra: &[(String, SparseMatrix)]) -> (Vec<String>, Vec<SparseMatrix>, Vec<usize>) {
    let d = v.dim();
    let lab = |r: usize, c: usize| format!("E({},{})", v.labels[r], v.labels[c]);
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for b in blocks {
        for &r in b {
            for &c in b {
                if r != c {
                    labels.push(lab(r, c));
                    basis.push(unit(d, r, c));
                }
            }
        }
    }
    let mut diag_rank = Echelon::new(d * d);
    for b in blocks {
        for w in b.windows(2) {
            let (i, j) = (w[0], w[1]);
            let s = koszul(v.parities[i] + v.parities[j], Parity::Odd);
            let h = unit(d, i, i).axpy(&Scalar::from_int(-s), &unit(d, j, j));
            diag_rank.insert(&flat(&h));
            labels.push(format!("H({},{})", v.labels[i], v.labels[j]));
            basis.push(h);
        }
    }
    let target = d - 1;
    let mut kept = Vec::new();
    for (k, (l, m)) in extra.iter().enumerate() {
        if diag_rank.rank() == target {
            break;
        }
        if diag_rank.insert(&flat(m)) {
            kept.push(k);
            labels.push(l.clone());
            basis.push(m.clone());
        }
    }
    (labels, basis, kept)
}

fn flat(m: &SparseMatrix) -> SparseVec {
    let n = m.ncols();
    SparseVec::from_pairs(m.triples().into_iter().map(|(r, c, v)| (r * n + c, v)).collect())
}

fn block_identity(d: usize, idx: &[usize], c: &Scalar) -> SparseMatrix {
    let mut v = vec![Scalar::zero(); d];
    for &i in idx {
        v[i] = c.clone();
    }
    diag(&v)
}

/// Depth-one grading of sl(m|n) with `g_1 = V(m-p|q) (x) U(p|n-q)^*`.
///
/// The basis of `V` is reordered as `W' = (e_1..e_{m-p}, f_1..f_q)` followed
/// by `W'' = (e_{m-p+1}..e_m, f_{q+1}..f_n)`; epsilons index `W'`, deltas `W''`.
pub fn sl_depth1_grading(m: usize, n: usize, p: usize, q: usize) -> Result<GradedPair, GradingError> {
    if p > m || q > n {
        return Err(GradingError::Parameters(format!("need p <= m and q <= n, got m={m} n={n} p={p} q={q}")));
    }
    let (d1, d2) = (m - p + q, p + n - q);
    if d1 == 0 || d2 == 0 {
        return Err(GradingError::Parameters("one of the two blocks is empty".into()));
    }
    let mut labels: Vec<String> = (1..=m - p).map(|i| format!("e{i}")).chain((1..=q).map(|j| format!("f{j}"))).collect();
    labels.extend((m - p + 1..=m).map(|i| format!("e{i}")).chain((q + 1..=n).map(|j| format!("f{j}"))));
    let mut parities = vec![Parity::Even; m - p];
    parities.extend(vec![Parity::Odd; q]);
    parities.extend(vec![Parity::Even; p]);
    parities.extend(vec![Parity::Odd; n - q]);
    let v = SuperSpace::new(labels, parities);
    let d = v.dim();
    let w1: Vec<usize> = (0..d1).collect();
    let w2: Vec<usize> = (d1..d).collect();
    let sdim = |idx: &[usize]| idx.iter().map(|&i| if v.parities[i].is_odd() { -1 } else { 1 }).sum::<i64>();
    let (s1, s2) = (sdim(&w1), sdim(&w2));

    let mut extra = Vec::new();
    if s1 + s2 != 0 {
        // alpha 1_{W'} + (alpha + 1) 1_{W''}, supertraceless, acting as 1 on g_{-1}
        let alpha = Scalar::new(-s2, s1 + s2);
        let beta = &alpha + &Scalar::one();
        extra.push(("Z".to_string(), block_identity(d, &w1, &alpha).add(&block_identity(d, &w2, &beta))));
    } else {
        extra.push(("Z".to_string(), SparseMatrix::identity(d)));
    }
    let s = koszul(v.parities[0] + v.parities[d1], Parity::Odd);
    extra.push(("H(W',W'')".to_string(), unit(d, 0, 0).axpy(&Scalar::from_int(-s), &unit(d, d1, d1))));
    let (g0_labels, g0_basis, kept) = block_sl(&v, &[w1.clone(), w2.clone()], &extra);
    let central = if kept.first() == Some(&0) { vec![g0_labels.len() - kept.len()] } else { vec![] };
    let g0 = MatrixSuperalgebra::new(format!("sl({m}|{n})_0"), v.clone(), g0_labels, g0_basis)?;

    let mut gl = Vec::new();
    let mut gb = Vec::new();
    for &r in &w2 {
        for &c in &w1 {
            gl.push(format!("E({},{})", v.labels[r], v.labels[c]));
            gb.push(unit(d, r, c));
        }
    }
    let mut torus: Vec<(String, Vec<Scalar>)> = w1.iter().enumerate().map(|(k, &i)| (format!("eps{}", k + 1), diag_unit(d, &[(i, 1)]))).collect();
    torus.extend(w2.iter().enumerate().map(|(k, &i)| (format!("delta{}", k + 1), diag_unit(d, &[(i, 1)]))));
    let label = if p == 0 && q == 0 { format!("sl-std:{m}:{n}") } else { format!("sl-d1:{m}:{n}:{p}:{q}") };
    assemble(MatrixPair { label, g0: &g0, gm1: Some((gl, gb)), torus, n_eps: d1, central: Some(central), quotient_by: None })
}

/// Standard grading `g_{-1} = U (x) V^*` of sl(m|n).
pub fn sl_standard_grading(m: usize, n: usize) -> Result<GradedPair, GradingError> {
    sl_depth1_grading(m, n, 0, 0)
}

/// Grading of psq(n) with `g_0 = ps(q(p) + q(n-p))`; `plus` picks the
/// summand of `Hom(V_1, V_2)` supercommuting with `J`.
pub fn q_grading(n: usize, p: usize, plus: bool) -> Result<GradedPair, GradingError> {
    if p < 1 || p >= n {
        return Err(GradingError::Parameters(format!("need 1 <= p < n, got n={n} p={p}")));
    }
    let d = 2 * n;
    let v = SuperSpace::standard(n, n);
    let b1: Vec<usize> = (0..p).collect();
    let b2: Vec<usize> = (p..n).collect();
    let a = |i: usize, j: usize| unit(d, i, j).add(&unit(d, n + i, n + j));
    let b = |i: usize, j: usize| unit(d, i, n + j).add(&unit(d, n + i, j));
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for blk in [&b1, &b2] {
        for &i in blk {
            for &j in blk {
                labels.push(format!("A{},{}", i + 1, j + 1));
                basis.push(a(i, j));
            }
        }
    }
    for blk in [&b1, &b2] {
        for &i in blk {
            for &j in blk {
                if i != j {
                    labels.push(format!("B{},{}", i + 1, j + 1));
                    basis.push(b(i, j));
                }
            }
        }
    }
    for i in 0..n - 1 {
        labels.push(format!("K{}", i + 1));
        basis.push(b(i, i).sub(&b(i + 1, i + 1)));
    }
    let g0 = MatrixSuperalgebra::new(format!("s(q({p})+q({}))", n - p), v.clone(), labels, basis)?;

    // T(X) = (-1)^{p(X)} J^{-1} X J on Hom(V_1, V_2); T^2 = 1.
    let j = q_form(n);
    let jinv = j.scale(&-Scalar::one());
    let rows2: Vec<usize> = b2.iter().copied().chain(b2.iter().map(|&i| n + i)).collect();
    let cols1: Vec<usize> = b1.iter().copied().chain(b1.iter().map(|&i| n + i)).collect();
    let mut gl = Vec::new();
    let mut gb = Vec::new();
    for par in [Parity::Even, Parity::Odd] {
        let units: Vec<(usize, usize)> = rows2
            .iter()
            .flat_map(|&r| cols1.iter().map(move |&c| (r, c)))
            .filter(|&(r, c)| v.parities[r] + v.parities[c] == par)
            .collect();
        let sign = Scalar::from_int(if plus { 1 } else { -1 });
        let cols: Vec<SparseVec> = units
            .iter()
            .map(|&(r, c)| {
                let x = unit(d, r, c);
                let tx = jinv.mul(&x).mul(&j).scale(&Scalar::from_int(koszul(par, Parity::Odd)));
                flat(&tx).axpy(&-&sign, &flat(&x))
            })
            .collect();
        for k in kernel_basis(&SparseMatrix::from_columns(d * d, &cols)) {
            let mut m = SparseMatrix::zeros(d, d);
            for (i, x) in k.iter() {
                m.set(units[i].0, units[i].1, x.clone());
            }
            let (r, c) = units[k.leading().unwrap().0];
            gl.push(format!("{}({},{})", if par.is_odd() { "Y" } else { "X" }, v.labels[r], v.labels[c]));
            gb.push(m);
        }
    }
    let mut torus: Vec<(String, Vec<Scalar>)> = b1.iter().enumerate().map(|(k, &i)| (format!("eps{}", k + 1), diag_unit(d, &[(i, 1), (n + i, 1)]))).collect();
    torus.extend(b2.iter().enumerate().map(|(k, &i)| (format!("delta{}", k + 1), diag_unit(d, &[(i, 1), (n + i, 1)]))));
    let label = format!("q:{n}:{p}:{}", if plus { "+" } else { "-" });
    assemble(MatrixPair {
        label,
        g0: &g0,
        gm1: Some((gl, gb)),
        torus,
        n_eps: p,
        central: Some(vec![]),
        quotient_by: Some(SparseMatrix::identity(d)),
    })
}

/// The grading of osp(m|2n) by `h = E_11 - E_mm`: `g_0 = osp(m-2|2n) + <z>`, `z = -h`.
pub fn osp_grading(m: usize, n: usize) -> Result<GradedPair, GradingError> {
    let full = build_osp(m, n)?;
    let v = full.vspace.clone();
    let d = v.dim();
    let h = diag(&diag_unit(d, &[(0, 1), (m - 1, -1)]));
    let mid = SuperSpace::standard(m - 2, 2 * n);
    let (ml, mb) = crate::superalg::form_preserving(&mid.parities, &osp_form(m - 2, n));
    let embed = |k: usize| if k < m - 2 { k + 1 } else { k + 2 };
    let mut labels = ml;
    let mut basis: Vec<SparseMatrix> = mb
        .iter()
        .map(|x| {
            let mut y = SparseMatrix::zeros(d, d);
            for (r, c, val) in x.triples() {
                y.set(embed(r), embed(c), val);
            }
            y
        })
        .collect();
    labels.push("Z".into());
    basis.push(h.scale(&-Scalar::one()));
    let z = basis.len() - 1;
    let g0 = MatrixSuperalgebra::new(format!("cosp({}|{})", m - 2, 2 * n), v.clone(), labels, basis)?;
    let degs = ad_diag("h", &h, &full.basis)?;
    let mut gl = Vec::new();
    let mut gb = Vec::new();
    for (i, dg) in degs.iter().enumerate() {
        if *dg == Scalar::from_int(-1) {
            gl.push(format!("G{}", gl.len() + 1));
            gb.push(full.basis[i].clone());
        }
    }
    let r = (m - 2) / 2;
    let mut torus: Vec<(String, Vec<Scalar>)> = (1..=r).map(|i| (format!("eps{i}"), diag_unit(d, &[(i, 1), (m - 1 - i, -1)]))).collect();
    torus.extend((1..=n).map(|j| (format!("delta{j}"), diag_unit(d, &[(m + j - 1, 1), (m + 2 * n - j, -1)]))));
    assemble(MatrixPair {
        label: format!("osp:{m}:{}", 2 * n),
        g0: &g0,
        gm1: Some((gl, gb)),
        torus,
        n_eps: r,
        central: Some(vec![z]),
        quotient_by: None,
    })
}

/// A Z-graded Lie superalgebra with known components.
#[derive(Clone, Debug)]
pub struct ReferenceGrading {
    pub name: String,
    pub algebra: LieSuperalgebra,
}

impl ReferenceGrading {
    /// Grades a matrix algebra by the eigenvalues of `ad h`.
    pub fn from_element(alg: &MatrixSuperalgebra, h: &SparseMatrix) -> Result<Self, GradingError> {
        let degs = ad_diag("h", h, &alg.basis)?;
        let grading = degs
            .iter()
            .map(|x| x.to_i64().map(|k| k as i32).ok_or_else(|| GradingError::Parameters("non-integral degree".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let mut algebra = alg.try_to_lie()?;
        algebra.grading = Some(grading);
        Ok(ReferenceGrading { name: alg.name.clone(), algebra })
    }

    /// Superdimension of each nonzero component.
    pub fn dims(&self) -> BTreeMap<i32, (usize, usize)> {
        let mut out = BTreeMap::new();
        for (i, g) in self.algebra.grading.as_ref().expect("graded").iter().enumerate() {
            let e = out.entry(*g).or_insert((0, 0));
            if self.algebra.parity(i).is_odd() {
                e.1 += 1;
            } else {
                e.0 += 1;
            }
        }
        out
    }

    pub fn dim(&self, k: i32) -> usize {
        self.dims().get(&k).map_or(0, |(a, b)| a + b)
    }
}

/// pe(n+1) and spe(n+1) graded by `h = diag(0,..,0,1, 0,..,0,-1)`.
pub fn pe_grading_tower(n: usize) -> Result<(ReferenceGrading, ReferenceGrading), GradingError> {
    if n < 2 {
        return Err(GradingError::Parameters("pe grading needs n >= 2".into()));
    }
    let m = n + 1;
    let h = diag(&diag_unit(2 * m, &[(n, 1), (2 * m - 1, -1)]));
    Ok((ReferenceGrading::from_element(&build_pe(m)?, &h)?, ReferenceGrading::from_element(&build_spe(m)?, &h)?))
}
