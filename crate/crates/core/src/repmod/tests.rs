use proptest::prelude::*;

use super::*;
use crate::exactlin::{kernel_basis, Scalar, SparseMatrix, SparseVec};
use crate::grading::{build_case, GradedPair};
use crate::superalg::{ModuleAction, Parity, PowerKind, PowerSpace, SuperSpace};

fn pair(label: &str) -> GradedPair {
    build_case(label).unwrap()
}

/// `g_{-1}` with the torus appended as extra operators.
fn base(p: &GradedPair) -> ModuleAction {
    let ops = p.operators();
    let g = p.dim_g0();
    p.gm1.with_extra(&vec![Parity::Even; ops.len() - g], &ops[g..].iter().map(|o| o.on_gm1.clone()).collect::<Vec<_>>())
}

/// Weights are read off the diagonal of the torus operators.
fn module(p: &GradedPair, a: &ModuleAction) -> WeightModule {
    let g = p.dim_g0();
    let weights = (0..a.dim())
        .map(|i| Weight::from_coords((g..a.mats.len()).map(|o| a.mats[o].get(i, i)).collect(), p.n_eps))
        .collect();
    let m = WeightModule::new(a.module.parities.clone(), weights, p, a.mats.clone());
    m.check_weights().unwrap();
    m
}

fn trivial(p: &GradedPair, parity: Parity) -> ModuleAction {
    ModuleAction::trivial(SuperSpace::anonymous("t", vec![parity]), base(p).op_parities)
}

fn direct_sum(parts: &[ModuleAction]) -> ModuleAction {
    let mut parities = Vec::new();
    for a in parts {
        parities.extend_from_slice(&a.module.parities);
    }
    let mats = (0..parts[0].mats.len()).map(|o| parts.iter().skip(1).fold(parts[0].mats[o].clone(), |acc, a| acc.direct_sum(&a.mats[o]))).collect();
    ModuleAction::new(SuperSpace::anonymous("m", parities), parts[0].op_parities.clone(), mats)
}

/// Dimension of the even weight-preserving endomorphisms commuting with every operator.
fn commutant_dim(m: &WeightModule) -> usize {
    let n = m.dim();
    let mut unknown = std::collections::BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if m.blocks().block_of(i) == m.blocks().block_of(j) {
                let k = unknown.len();
                unknown.insert((i, j), k);
            }
        }
    }
    let mut rows = Vec::new();
    for x in &m.ops {
        let d = x.to_dense();
        // (xX - Xx)[r][c] = sum_t x[r][t] X[t][c] - X[r][t] x[t][c]
        for r in 0..n {
            for c in 0..n {
                let mut pairs = Vec::new();
                for t in 0..n {
                    if let Some(&u) = unknown.get(&(t, c)) {
                        if !d[r][t].is_zero() {
                            pairs.push((u, d[r][t].clone()));
                        }
                    }
                    if let Some(&u) = unknown.get(&(r, t)) {
                        if !d[t][c].is_zero() {
                            pairs.push((u, -&d[t][c]));
                        }
                    }
                }
                let v = SparseVec::from_pairs(pairs);
                if !v.is_zero() {
                    rows.push(v);
                }
            }
        }
    }
    kernel_basis(&SparseMatrix::from_rows(unknown.len(), rows)).len()
}

#[test]
fn standard_module_of_pe_is_simple() {
    let p = pair("pe:2");
    let m = module(&p, &base(&p));
    let r = composition_report(&m, &GradedSubspace::full(&m)).unwrap();
    assert_eq!(r.dim, 4);
    assert_eq!(r.factors.len(), 1);
    assert_eq!(r.factors[0].weight, Weight::from_ints(&[1, 0], &[]));
    assert_eq!(r.highest.len(), 1);
    assert!(r.splitness.is_empty());
    let counts: Vec<(Weight, usize, usize)> = r.weight_multiplicities.iter().map(|w| (w.weight.clone(), w.even, w.odd)).collect();
    assert_eq!(
        counts,
        vec![
            (Weight::from_ints(&[-1, 0], &[]), 0, 1),
            (Weight::from_ints(&[0, -1], &[]), 0, 1),
            (Weight::from_ints(&[0, 1], &[]), 1, 0),
            (Weight::from_ints(&[1, 0], &[]), 1, 0),
        ]
    );
}

#[test]
fn gl_standard_weights() {
    // g_{-1} of sl-std(2,3) is V (x) W* for gl(2) + gl(3): one factor
    let p = pair("sl-std:2:3");
    let m = module(&p, &base(&p));
    let (_, f) = composition_series(&m, &GradedSubspace::full(&m)).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].dim, 6);
    assert_eq!(product_dim(&f[0].weight).unwrap(), 6);
}

#[test]
fn zero_space_has_nothing() {
    let p = pair("pe:2");
    let m = module(&p, &base(&p));
    let z = GradedSubspace::zero(&m);
    assert!(highest_vectors(&m, &z, None).is_empty());
    let r = composition_report(&m, &z).unwrap();
    assert_eq!(r.dim, 0);
    assert!(r.factors.is_empty());
}

#[test]
fn exterior_square_of_dual_is_a_nonsplit_extension() {
    for n in [2, 3] {
        let p = pair(&format!("pe:{n}"));
        let b = base(&p);
        let a = PowerSpace::new(PowerKind::Ext, &b.module.parities, 2).action(&b.dual());
        let m = module(&p, &a);
        let full = GradedSubspace::full(&m);
        let r = composition_report(&m, &full).unwrap();
        assert_eq!(r.factors.iter().map(|f| f.dim).sum::<usize>(), m.dim());
        assert!(r.factors.len() >= 2, "{n}: {:?}", r.factors);
        // a single nonsplit step leaves only scalars in the commutant
        if r.factors.len() == 2 {
            assert_eq!(!r.splitness[0].split, commutant_dim(&m) == 1, "{n}");
        }
        // the highest vector of the top factor generates everything
        let (filt, f) = composition_series(&m, &full).unwrap();
        assert_eq!(filt.len(), f.len() + 1);
        for w in filt.windows(2) {
            assert!(w[0].is_subspace_of(&m, &w[1]));
            assert!(w[1].is_invariant(&m));
        }
    }
}

#[test]
fn generated_submodule_of_a_lowest_factor_is_proper() {
    let p = pair("pe:3");
    let b = base(&p);
    let a = PowerSpace::new(PowerKind::Sym, &b.module.parities, 2).action(&b);
    let m = module(&p, &a);
    let full = GradedSubspace::full(&m);
    let (filt, f) = composition_series(&m, &full).unwrap();
    if f.len() > 1 {
        let s = generate_submodule(&m, &GradedSubspace::zero(&m), std::slice::from_ref(&f[0].highest));
        assert!(s.dim() < m.dim());
        assert_eq!(s.dim(), filt[1].dim());
    }
}

#[test]
fn detect_splitting_rejects_non_invariant_input() {
    let p = pair("pe:2");
    let m = module(&p, &base(&p));
    let line = GradedSubspace::span(&m, [&SparseVec::unit(0)]);
    let full = GradedSubspace::full(&m);
    assert_eq!(detect_splitting(&m, &GradedSubspace::zero(&m), &line, &full), Err(RepmodError::NotInvariant));
}

#[test]
fn report_roundtrips_through_json() {
    let p = pair("pe:2");
    let b = base(&p);
    let m = module(&p, &direct_sum(&[b.clone(), trivial(&p, Parity::Odd)]));
    let r = composition_report(&m, &GradedSubspace::full(&m)).unwrap();
    let back: ModuleReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn weyl_dims_match_factor_dims_for_gl_blocks() {
    // trivially graded sl-std(1,3): g_0 = gl(1) + gl(3) acting on W*
    let p = pair("sl-std:1:3");
    let m = module(&p, &base(&p));
    let (_, f) = composition_series(&m, &GradedSubspace::full(&m)).unwrap();
    for x in &f {
        assert!(x.absolutely_irreducible);
        assert_eq!(product_dim(&x.weight).unwrap() as usize, x.dim);
    }
}

fn piece(p: &GradedPair, k: u8) -> ModuleAction {
    let b = base(p);
    match k % 4 {
        0 => b,
        1 => b.dual(),
        2 => trivial(p, Parity::Even),
        _ => trivial(p, Parity::Odd),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn direct_sums_of_simples_split(kinds in proptest::collection::vec(0u8..4, 2..4)) {
        let p = pair("pe:2");
        let parts: Vec<ModuleAction> = kinds.iter().map(|&k| piece(&p, k)).collect();
        let m = module(&p, &direct_sum(&parts));
        let r = composition_report(&m, &GradedSubspace::full(&m)).unwrap();
        prop_assert_eq!(r.factors.len(), parts.len());
        prop_assert!(r.splitness.iter().all(|s| s.split));
        let mut dims: Vec<usize> = r.factors.iter().map(|f| f.dim).collect();
        let mut want: Vec<usize> = parts.iter().map(ModuleAction::dim).collect();
        dims.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(dims, want);
    }

    #[test]
    fn scaling_a_basis_vector_keeps_the_report(i in 0usize..4, c in 1i64..5) {
        let p = pair("pe:2");
        let a = base(&p);
        let s = SparseMatrix::from_rows(4, (0..4).map(|j| SparseVec::from_pairs(vec![(j, if j == i { Scalar::from_int(c) } else { Scalar::one() })])).collect());
        let sinv = SparseMatrix::from_rows(4, (0..4).map(|j| SparseVec::from_pairs(vec![(j, if j == i { Scalar::new(1, c) } else { Scalar::one() })])).collect());
        let b = ModuleAction::new(a.module.clone(), a.op_parities.clone(), a.mats.iter().map(|x| s.mul(x).mul(&sinv)).collect());
        let r1 = composition_report(&module(&p, &a), &GradedSubspace::full(&module(&p, &a))).unwrap();
        let m2 = module(&p, &b);
        let r2 = composition_report(&m2, &GradedSubspace::full(&m2)).unwrap();
        prop_assert_eq!(r1.factors, r2.factors);
        prop_assert_eq!(r1.weight_multiplicities, r2.weight_multiplicities);
    }
}
