use super::*;

fn pair(label: &str) -> GradedPair {
    build_case(label).unwrap_or_else(|e| panic!("{label}: {e}"))
}

#[test]
fn small_cases_are_representations() {
    for l in [
        "pe:2", "spe:3", "cpe:3", "pe-ext:3:1:3", "pe-ext:2:0:1", "sl-std:1:3", "sl-std:2:2", "sl-std:2:3", "sl-std:3:2",
        "sl-d1:2:3:0:1", "sl-d1:3:4:0:1", "sl-d1:2:4:1:1", "q:3:1:+", "q:3:1:-", "osp:4:2", "osp:5:2",
    ] {
        let p = pair(l);
        p.g0.check_jacobi().unwrap();
        p.check().unwrap();
        assert_eq!(p.label, l);
        for t in &p.torus {
            assert_eq!(t.on_gm1.len(), p.dim_gm1());
            assert_eq!(t.on_g0.len(), p.dim_g0());
        }
    }
}

#[test]
fn sl_standard_sizes() {
    let p = pair("sl-std:2:3");
    assert_eq!(p.gm1.module.superdim(), (0, 6));
    assert_eq!(p.dim_g0(), 12);
    assert!(p.is_faithful());
    assert_eq!(p.reduced().unwrap().dim_g0(), 11);

    let q = pair("sl-std:2:2");
    assert!(!q.is_faithful());
    assert_eq!(q.action_kernel().len(), 1);
}

#[test]
fn depth_one_sl_sizes() {
    let p = pair("sl-d1:2:3:0:1");
    assert_eq!(p.gm1.module.superdim(), (2, 4));
    // c(sl(2|1) + sl(2)): 8 + 3 + 1
    assert_eq!(p.dim_g0(), 12);
    assert_eq!(p.central.as_deref(), Some(&[p.dim_g0() - 1][..]));

    let a = sl_depth1_grading(2, 3, 0, 0).unwrap();
    let b = sl_standard_grading(2, 3).unwrap();
    assert_eq!(a.gm1.mats, b.gm1.mats);
    assert!(sl_depth1_grading(2, 3, 3, 0).is_err());
    assert!(sl_depth1_grading(1, 1, 1, 1).is_ok());
    assert!(sl_depth1_grading(1, 1, 1, 0).is_err());
    assert!(sl_depth1_grading(2, 1, 2, 0).is_err());
}

#[test]
fn queer_sizes() {
    for l in ["q:3:1:+", "q:3:1:-"] {
        let p = pair(l);
        assert_eq!(p.gm1.module.superdim(), (2, 2));
        assert_eq!(p.g0.superdim(), (4, 4));
        assert!(p.is_faithful());
    }
    assert!(q_grading(3, 0, true).is_err());
    assert!(q_grading(3, 3, true).is_err());
}

#[test]
fn osp_sizes() {
    let p = pair("osp:4:2");
    assert_eq!(p.gm1.module.superdim(), (2, 2));
    assert_eq!(p.g0.superdim(), (5, 4));
    let r = pair("reduced:osp:4:2");
    assert_eq!(r.g0.superdim(), (4, 4));

    let p = pair("osp:5:2");
    assert_eq!(p.gm1.module.superdim(), (3, 2));
    assert_eq!(pair("reduced:osp:5:2").g0.superdim(), (6, 6));
}

#[test]
fn central_element_is_the_identity_on_gm1() {
    for l in ["cpe:3", "sl-std:2:3", "sl-d1:2:3:0:1", "osp:5:2"] {
        let p = pair(l);
        let c = p.central.clone().unwrap();
        assert_eq!(c.len(), 1, "{l}");
        assert_eq!(p.gm1.mats[c[0]], SparseMatrix::identity(p.dim_gm1()), "{l}");
    }
}

#[test]
fn reference_pe_towers() {
    let (pe, spe) = pe_grading_tower(2).unwrap();
    pe.algebra.check_jacobi().unwrap();
    let dims: Vec<usize> = (-1..=2).map(|k| pe.dim(k)).collect();
    assert_eq!(dims, vec![4, 9, 4, 1]);
    assert_eq!(pe.dims()[&2], (0, 1));
    assert_eq!(spe.dim(0), 8);

    let (_, spe) = pe_grading_tower(3).unwrap();
    spe.algebra.check_jacobi().unwrap();
    let dims: Vec<usize> = (-1..=2).map(|k| spe.dim(k)).collect();
    assert_eq!(dims, vec![6, 18, 6, 1]);
    assert!(pe_grading_tower(1).is_err());
}

#[test]
fn raising_operators_have_positive_weight() {
    let p = pair("spe:3");
    let w = p.weights_g0();
    assert!(!p.raising.is_empty());
    for &i in &p.raising {
        assert!(w[i].is_positive());
    }
    // A_12, A_13, A_23 and the B's with i <= j, plus the C's with i < j of positive weight
    assert_eq!(p.raising.len(), 3 + 6);
}

#[test]
fn permuting_gm1_keeps_a_representation() {
    let p = pair("sl-d1:2:3:0:1");
    let n = p.dim_gm1();
    let perm: Vec<usize> = (0..n).rev().collect();
    let q = p.permute_gm1(&perm);
    q.check().unwrap();
    assert_eq!(q.weights_gm1()[0], p.weights_gm1()[n - 1]);
}

#[test]
fn reduce_without_record_fails() {
    let mut p = pair("spe:2");
    assert_eq!(p.reduced().unwrap().dim_g0(), p.dim_g0());
    p.central = None;
    assert!(matches!(p.reduced(), Err(GradingError::NoCentralRecord)));
}

#[test]
fn inner_torus_sees_only_the_torus_of_g0() {
    assert_eq!(pair("pe:3").inner_torus().len(), 3);
    assert_eq!(pair("spe:3").inner_torus().len(), 2);
    let w = |s: &str| s.parse::<Weight>().unwrap();
    let (a, b) = (Weight::parse("3e1", 3, 0).unwrap(), w("2e1-e2-e3"));
    assert!(pair("pe-ext:3:1:3").same_g0_weight(&a, &b));
    assert!(!pair("pe:3").same_g0_weight(&a, &b));
    // the center makes up for the supertrace: every diagonal matrix acts as an element of g_0
    let p = pair("sl-d1:3:2:1:1");
    assert_eq!(p.inner_torus().len(), p.torus.len());
    let (a, b) = (Weight::parse("e1-d1", 3, 2).unwrap(), Weight::parse("e1-d2", 3, 2).unwrap());
    assert!(!p.same_g0_weight(&a, &b));
}
