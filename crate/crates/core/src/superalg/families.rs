use super::{koszul, koszul_scalar, LieSuperalgebra, ModuleAction, Parity, SuperSpace};
use crate::exactlin::{kernel_basis, Coordinatizer, Scalar, SparseMatrix, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("{0} needs size at least {1}")]
    TooSmall(&'static str, usize),
    #[error("psl(m|n) needs m == n, got ({0}|{1})")]
    NotSquare(usize, usize),
    #[error("the adjoined element a*tau + b*z must be nonzero")]
    ZeroExtension,
    #[error("basis matrix {0} is not parity-homogeneous")]
    Inhomogeneous(usize),
    #[error("basis matrices are linearly dependent")]
    Dependent,
    #[error("basis is not closed under the supercommutator")]
    NotClosed,
}

/// Parity of a nonzero matrix on a superspace, if homogeneous.
pub fn matrix_parity(vpar: &[Parity], m: &SparseMatrix) -> Option<Parity> {
    let mut it = m.triples().into_iter().map(|(r, c, _)| vpar[r] + vpar[c]);
    let first = it.next()?;
    it.all(|p| p == first).then_some(first)
}

/// `[a, b] = ab - (-1)^{p(a)p(b)} ba`.
pub fn supercommutator(a: &SparseMatrix, pa: Parity, b: &SparseMatrix, pb: Parity) -> SparseMatrix {
    a.mul(b).axpy(&-koszul_scalar(pa, pb), &b.mul(a))
}

fn flatten(m: &SparseMatrix) -> SparseVec {
    let n = m.ncols();
    SparseVec::from_pairs(m.triples().into_iter().map(|(r, c, v)| (r * n + c, v)).collect())
}

fn unflatten(n: usize, v: &SparseVec) -> SparseMatrix {
    let mut rows = vec![Vec::new(); n];
    for (i, x) in v.iter() {
        rows[i / n].push((i % n, x.clone()));
    }
    SparseMatrix::from_rows(n, rows.into_iter().map(SparseVec::from_pairs).collect())
}

fn unit(n: usize, r: usize, c: usize) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(n, n);
    m.set(r, c, Scalar::one());
    m
}

fn diag(d: &[Scalar]) -> SparseMatrix {
    SparseMatrix::from_rows(d.len(), d.iter().enumerate().map(|(i, x)| SparseVec::from_pairs(vec![(i, x.clone())])).collect())
}

/// `B(Xu, v) + (-1)^{p(X)p(u)} B(u, Xv)` over basis pairs `(u, v)`, with `B(u, v) = u^T F v`.
pub fn invariance_defect(vpar: &[Parity], form: &SparseMatrix, x: &SparseMatrix, px: Parity) -> SparseMatrix {
    let left = x.transpose().mul(form);
    let right = form.mul(x);
    let rows = (0..vpar.len()).map(|c| left.row(c).axpy(&Scalar::from_int(koszul(px, vpar[c])), right.row(c))).collect();
    SparseMatrix::from_rows(vpar.len(), rows)
}

/// A Lie superalgebra realized by matrices on a superspace.
#[derive(Clone, Debug)]
pub struct MatrixSuperalgebra {
    pub name: String,
    pub vspace: SuperSpace,
    pub space: SuperSpace,
    pub basis: Vec<SparseMatrix>,
    coord: Coordinatizer,
}

impl MatrixSuperalgebra {
    pub fn new(name: impl Into<String>, vspace: SuperSpace, labels: Vec<String>, basis: Vec<SparseMatrix>) -> Result<Self, FamilyError> {
        let n = vspace.dim();
        let parities = basis
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_parity(&vspace.parities, m).ok_or(FamilyError::Inhomogeneous(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let flat: Vec<SparseVec> = basis.iter().map(flatten).collect();
        let coord = Coordinatizer::new(n * n, &flat).ok_or(FamilyError::Dependent)?;
        Ok(MatrixSuperalgebra { name: name.into(), vspace, space: SuperSpace::new(labels, parities), basis, coord })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn superdim(&self) -> (usize, usize) {
        self.space.superdim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parities[i]
    }

    /// Coordinates of a matrix in the basis, if it lies in the span.
    pub fn coords(&self, m: &SparseMatrix) -> Option<SparseVec> {
        self.coord.coords(&flatten(m))
    }

    pub fn element_matrix(&self, x: &SparseVec) -> SparseMatrix {
        let n = self.vspace.dim();
        let mut acc = SparseMatrix::zeros(n, n);
        for (i, c) in x.iter() {
            acc = acc.axpy(c, &self.basis[i]);
        }
        acc
    }

    pub fn try_to_lie(&self) -> Result<LieSuperalgebra, FamilyError> {
        let n = self.dim();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = supercommutator(&self.basis[i], self.parity(i), &self.basis[j], self.parity(j));
                table[i][j] = self.coords(&c).ok_or(FamilyError::NotClosed)?;
            }
        }
        Ok(LieSuperalgebra::new(self.space.clone(), table))
    }

    pub fn to_lie(&self) -> LieSuperalgebra {
        self.try_to_lie().expect("matrix basis closed under the bracket")
    }

    pub fn standard_action(&self) -> ModuleAction {
        ModuleAction::new(self.vspace.clone(), self.space.parities.clone(), self.basis.clone())
    }

    /// Appends one more basis matrix.
    pub fn adjoin(&self, label: &str, m: SparseMatrix) -> Result<Self, FamilyError> {
        let mut labels = self.space.labels.clone();
        labels.push(label.to_string());
        let mut basis = self.basis.clone();
        basis.push(m);
        MatrixSuperalgebra::new(self.name.clone(), self.vspace.clone(), labels, basis)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

pub fn supertrace(vpar: &[Parity], m: &SparseMatrix) -> Scalar {
    let mut s = Scalar::zero();
    for (i, p) in vpar.iter().enumerate() {
        let x = m.get(i, i);
        if p.is_odd() {
            s -= &x;
        } else {
            s += &x;
        }
    }
    s
}

/// gl(m|n) with matrix units `E_{rc}` in row-major order.
pub fn build_gl(m: usize, n: usize) -> MatrixSuperalgebra {
    let v = SuperSpace::standard(m, n);
    let d = m + n;
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for r in 0..d {
        for c in 0..d {
            labels.push(format!("E{},{}", r + 1, c + 1));
            basis.push(unit(d, r, c));
        }
    }
    MatrixSuperalgebra::new(format!("gl({m}|{n})"), v, labels, basis).expect("matrix units are independent")
}

/// Supertraceless matrices on an arbitrary superspace: off-diagonal units,
/// then `E_ii - (-1)^{p_i + p_{i+1}} E_{i+1,i+1}`.
pub(crate) fn sl_on(v: &SuperSpace) -> (Vec<String>, Vec<SparseMatrix>) {
    let d = v.dim();
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for r in 0..d {
        for c in 0..d {
            if r != c {
                labels.push(format!("E{},{}", r + 1, c + 1));
                basis.push(unit(d, r, c));
            }
        }
    }
    for i in 0..d.saturating_sub(1) {
        let s = koszul(v.parities[i] + v.parities[i + 1], Parity::Odd);
        labels.push(format!("H{}", i + 1));
        basis.push(unit(d, i, i).axpy(&Scalar::from_int(-s), &unit(d, i + 1, i + 1)));
    }
    (labels, basis)
}

pub fn build_sl(m: usize, n: usize) -> Result<MatrixSuperalgebra, FamilyError> {
    if m + n < 2 {
        return Err(FamilyError::TooSmall("sl", 2));
    }
    let v = SuperSpace::standard(m, n);
    let (labels, basis) = sl_on(&v);
    MatrixSuperalgebra::new(format!("sl({m}|{n})"), v, labels, basis)
}

/// psl(n|n) = sl(n|n) modulo the identity.
pub fn build_psl(m: usize, n: usize) -> Result<LieSuperalgebra, FamilyError> {
    if m != n {
        return Err(FamilyError::NotSquare(m, n));
    }
    if n < 2 {
        return Err(FamilyError::TooSmall("psl", 2));
    }
    let sl = build_sl(n, n)?;
    let z = sl.coords(&SparseMatrix::identity(2 * n)).expect("identity is supertraceless when m = n");
    Ok(sl.to_lie().quotient_by_central(&z).0)
}

fn pe_a(n: usize, i: usize, j: usize) -> SparseMatrix {
    unit(2 * n, i, j).sub(&unit(2 * n, n + j, n + i))
}

fn pe_odd(n: usize) -> (Vec<String>, Vec<SparseMatrix>) {
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i..n {
            labels.push(format!("B{},{}", i + 1, j + 1));
            let b = if i == j { unit(2 * n, i, n + i) } else { unit(2 * n, i, n + j).add(&unit(2 * n, j, n + i)) };
            basis.push(b);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            labels.push(format!("C{},{}", i + 1, j + 1));
            basis.push(unit(2 * n, n + i, j).sub(&unit(2 * n, n + j, i)));
        }
    }
    (labels, basis)
}

/// The odd form `P = antidiag(1_n, 1_n)` preserved by pe(n).
pub fn pe_form(n: usize) -> SparseMatrix {
    let mut f = SparseMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        f.set(i, n + i, Scalar::one());
        f.set(n + i, i, Scalar::one());
    }
    f
}

/// pe(n): `[[A, B], [C, -A^T]]`, `B` symmetric, `C` antisymmetric.
pub fn build_pe(n: usize) -> Result<MatrixSuperalgebra, FamilyError> {
    if n < 2 {
        return Err(FamilyError::TooSmall("pe", 2));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("A{},{}", i + 1, j + 1));
            basis.push(pe_a(n, i, j));
        }
    }
    let (l, b) = pe_odd(n);
    labels.extend(l);
    basis.extend(b);
    MatrixSuperalgebra::new(format!("pe({n})"), SuperSpace::standard(n, n), labels, basis)
}

/// spe(n) = pe(n) with `tr A = 0`.
pub fn build_spe(n: usize) -> Result<MatrixSuperalgebra, FamilyError> {
    if n < 2 {
        return Err(FamilyError::TooSmall("spe", 2));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("A{},{}", i + 1, j + 1));
                basis.push(pe_a(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        labels.push(format!("H{}", i + 1));
        basis.push(pe_a(n, i, i).sub(&pe_a(n, i + 1, i + 1)));
    }
    let (l, b) = pe_odd(n);
    labels.extend(l);
    basis.extend(b);
    MatrixSuperalgebra::new(format!("spe({n})"), SuperSpace::standard(n, n), labels, basis)
}

/// `a tau + b z` with `tau = diag(1_n, -1_n)` and `z = 1_{2n}`.
pub fn tau_z(n: usize, a: &Scalar, b: &Scalar) -> SparseMatrix {
    let mut d = vec![a + b; n];
    d.extend(std::iter::repeat_n(b - a, n));
    diag(&d)
}

/// spe(n) with `a tau + b z` adjoined.
pub fn build_pe_extension(n: usize, a: &Scalar, b: &Scalar) -> Result<MatrixSuperalgebra, FamilyError> {
    if a.is_zero() && b.is_zero() {
        return Err(FamilyError::ZeroExtension);
    }
    let spe = build_spe(n)?;
    Ok(spe.adjoin("T", tau_z(n, a, b))?.renamed(format!("spe({n})+<{a}t+{b}z>")))
}

/// cpe(n) = pe(n) plus the identity.
pub fn build_cpe(n: usize) -> Result<MatrixSuperalgebra, FamilyError> {
    Ok(build_pe(n)?.adjoin("Z", SparseMatrix::identity(2 * n))?.renamed(format!("cpe({n})")))
}

/// q(n): `[[A, B], [B, A]]`, the supercommutant of `J = antidiag(1_n, -1_n)`.
pub fn build_q(n: usize) -> Result<MatrixSuperalgebra, FamilyError> {
    q_like(n, false)
}

/// The odd involution-like matrix `J_{2n}`.
pub fn q_form(n: usize) -> SparseMatrix {
    let mut j = SparseMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j.set(i, n + i, Scalar::one());
        j.set(n + i, i, -Scalar::one());
    }
    j
}

fn q_like(n: usize, traceless_odd: bool) -> Result<MatrixSuperalgebra, FamilyError> {
    if n < 1 {
        return Err(FamilyError::TooSmall("q", 1));
    }
    let d = 2 * n;
    let a = |i, j| unit(d, i, j).add(&unit(d, n + i, n + j));
    let b = |i, j| unit(d, i, n + j).add(&unit(d, n + i, j));
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("A{},{}", i + 1, j + 1));
            basis.push(a(i, j));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if traceless_odd && i == j {
                continue;
            }
            labels.push(format!("B{},{}", i + 1, j + 1));
            basis.push(b(i, j));
        }
    }
    if traceless_odd {
        for i in 0..n - 1 {
            labels.push(format!("K{}", i + 1));
            basis.push(b(i, i).sub(&b(i + 1, i + 1)));
        }
    }
    let name = if traceless_odd { format!("sq({n})") } else { format!("q({n})") };
    MatrixSuperalgebra::new(name, SuperSpace::standard(n, n), labels, basis)
}

/// psq(n) = sq(n) modulo the identity, `sq` being `otr B = 0`.
pub fn build_psq(n: usize) -> Result<LieSuperalgebra, FamilyError> {
    if n < 2 {
        return Err(FamilyError::TooSmall("psq", 2));
    }
    let sq = q_like(n, true)?;
    let z = sq.coords(&SparseMatrix::identity(2 * n)).expect("identity lies in sq(n)");
    Ok(sq.to_lie().quotient_by_central(&z).0)
}

/// Even supersymmetric form in hyperbolic coordinates: `e_i` pairs with
/// `e_{m+1-i}`, and `f_j` with `f_{2n+1-j}` (sign `+` for `j <= n`).
pub fn osp_form(m: usize, n: usize) -> SparseMatrix {
    let d = m + 2 * n;
    let mut f = SparseMatrix::zeros(d, d);
    for i in 0..m {
        f.set(i, m - 1 - i, Scalar::one());
    }
    for j in 0..2 * n {
        let s = if j < n { 1 } else { -1 };
        f.set(m + j, m + 2 * n - 1 - j, Scalar::from_int(s));
    }
    f
}

/// Matrices preserving a form, one basis per parity, found as a kernel over matrix units.
pub fn form_preserving(vpar: &[Parity], form: &SparseMatrix) -> (Vec<String>, Vec<SparseMatrix>) {
    let d = vpar.len();
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for px in [Parity::Even, Parity::Odd] {
        let units: Vec<(usize, usize)> = (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).filter(|&(r, c)| vpar[r] + vpar[c] == px).collect();
        let cols: Vec<SparseVec> = units.iter().map(|&(r, c)| flatten(&invariance_defect(vpar, form, &unit(d, r, c), px))).collect();
        let cond = SparseMatrix::from_columns(d * d, &cols);
        for k in kernel_basis(&cond) {
            let m = SparseVec::from_pairs(k.iter().map(|(i, x)| (units[i].0 * d + units[i].1, x.clone())).collect());
            labels.push(format!("{}{}", if px.is_odd() { "Y" } else { "X" }, labels.len() + 1));
            basis.push(unflatten(d, &m));
        }
    }
    (labels, basis)
}

/// osp(m|2n) on the hyperbolic form [`osp_form`].
pub fn build_osp(m: usize, n: usize) -> Result<MatrixSuperalgebra, FamilyError> {
    if m < 3 || n < 1 {
        return Err(FamilyError::TooSmall("osp", 3));
    }
    let v = SuperSpace::standard(m, 2 * n);
    let (labels, basis) = form_preserving(&v.parities, &osp_form(m, n));
    MatrixSuperalgebra::new(format!("osp({m}|{})", 2 * n), v, labels, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_superdims() {
        assert_eq!(build_gl(1, 1).superdim(), (2, 2));
        assert_eq!(build_gl(2, 3).superdim(), (13, 12));
        assert_eq!(build_sl(2, 3).unwrap().superdim(), (12, 12));
        assert_eq!(build_psl(2, 2).unwrap().superdim(), (6, 8));
        assert_eq!(build_pe(2).unwrap().superdim(), (4, 4));
        assert_eq!(build_spe(3).unwrap().superdim(), (8, 9));
        assert_eq!(build_q(2).unwrap().superdim(), (4, 4));
        assert_eq!(build_psq(3).unwrap().superdim(), (8, 8));
        assert_eq!(build_osp(4, 1).unwrap().superdim(), (9, 8));
        assert_eq!(build_osp(3, 1).unwrap().superdim(), (6, 6));
        assert_eq!(build_osp(5, 1).unwrap().superdim(), (13, 10));
        assert!(matches!(build_psl(2, 3), Err(FamilyError::NotSquare(2, 3))));
        assert!(build_pe(1).is_err());
        assert!(build_pe_extension(3, &Scalar::zero(), &Scalar::zero()).is_err());
    }

    #[test]
    fn supertrace_of_identity() {
        let v = SuperSpace::standard(2, 3);
        assert_eq!(supertrace(&v.parities, &SparseMatrix::identity(5)), Scalar::from_int(-1));
        let sl = build_sl(2, 3).unwrap();
        assert!(sl.basis.iter().all(|b| supertrace(&v.parities, b).is_zero()));
    }

    #[test]
    fn constructors_satisfy_jacobi() {
        build_gl(2, 2).to_lie().check_jacobi().unwrap();
        build_spe(3).unwrap().to_lie().check_jacobi().unwrap();
        build_psl(2, 2).unwrap().check_jacobi().unwrap();
        build_psq(3).unwrap().check_jacobi().unwrap();
        build_osp(4, 1).unwrap().to_lie().check_jacobi().unwrap();
        build_cpe(2).unwrap().to_lie().check_jacobi().unwrap();
        build_pe_extension(2, &Scalar::from_int(1), &Scalar::from_int(2)).unwrap().to_lie().check_jacobi().unwrap();
    }

    #[test]
    fn pe_preserves_odd_form() {
        for n in 2..=3 {
            let pe = build_pe(n).unwrap();
            let f = pe_form(n);
            for (i, x) in pe.basis.iter().enumerate() {
                assert!(invariance_defect(&pe.vspace.parities, &f, x, pe.parity(i)).is_zero(), "{}", pe.space.labels[i]);
            }
        }
    }

    #[test]
    fn osp_preserves_even_form() {
        let osp = build_osp(5, 1).unwrap();
        let f = osp_form(5, 1);
        assert_eq!(f.transpose().get(5, 6), f.get(6, 5));
        for (i, x) in osp.basis.iter().enumerate() {
            assert!(invariance_defect(&osp.vspace.parities, &f, x, osp.parity(i)).is_zero());
        }
    }

    #[test]
    fn q_commutes_with_j() {
        let q = build_q(3).unwrap();
        let j = q_form(3);
        for (i, x) in q.basis.iter().enumerate() {
            assert!(supercommutator(x, q.parity(i), &j, Parity::Odd).is_zero());
        }
    }

    #[test]
    fn cpe_center_acts_as_identity() {
        let cpe = build_cpe(3).unwrap();
        let z = cpe.to_lie().center();
        assert_eq!(z.len(), 1);
        let m = cpe.element_matrix(&z[0]);
        assert_eq!(m.scale(&m.get(0, 0).recip()), SparseMatrix::identity(6));
    }
}
