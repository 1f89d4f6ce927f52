use super::*;
use crate::exactlin::rank;
use crate::grading::build_case;
use crate::prolong::{cartan_prolong, default_kmax};

fn tower(label: &str) -> ProlongationTower {
    let p = build_case(label).unwrap();
    cartan_prolong(&p, default_kmax(&p))
}

const SMALL: [&str; 6] = ["sl-std:1:2", "pe:2", "spe:2", "cpe:2", "sl-std:2:2", "q:3:1:+"];

#[test]
fn differential_squares_to_zero_and_commutes_with_operators() {
    for l in SMALL {
        let t = tower(l);
        for k in 0..=t.max_degree().min(3) {
            for s in 1..=2usize {
                let Ok(c) = SpencerComplex::new(&t, k, s) else { continue };
                assert!(c.composite_is_zero(), "{l} ({k},{s})");
                let (a, b, d) = (cochain_operators(&t, &c.before), cochain_operators(&t, &c.middle), cochain_operators(&t, &c.after));
                for o in 0..t.op_parities.len() {
                    if c.before.dim() > 0 && c.middle.dim() > 0 {
                        assert_eq!(c.d_in.mul(&a[o]), b[o].mul(&c.d_in), "{l} ({k},{s}) op {o}");
                    }
                    if c.middle.dim() > 0 && c.after.dim() > 0 {
                        assert_eq!(c.d_out.mul(&b[o]), d[o].mul(&c.d_out), "{l} ({k},{s}) op {o}");
                    }
                }
            }
        }
    }
}

#[test]
fn cochain_operators_form_representations() {
    let t = tower("cpe:2");
    let c = cochain_space(&t, 2, 2).unwrap();
    let m = crate::repmod::WeightModule::from_cochains(&t, &c);
    m.check_weights().unwrap();
    let g0 = &t.pair.g0;
    let ops = cochain_operators(&t, &c);
    for i in 0..g0.dim() {
        for j in 0..g0.dim() {
            let sign = Scalar::from_int(koszul(g0.parity(i), g0.parity(j)));
            let lhs = ops[i].mul(&ops[j]).sub(&ops[j].mul(&ops[i]).scale(&sign));
            let rhs = g0.bracket_basis(i, j).iter().fold(SparseMatrix::zeros(c.dim(), c.dim()), |acc, (k, x)| acc.axpy(x, &ops[k]));
            assert_eq!(lhs, rhs, "[{i},{j}]");
        }
    }
}

#[test]
fn kernel_in_degree_one_is_the_next_term() {
    for l in SMALL {
        let t = tower(l);
        for k in 1..t.max_degree() {
            let d = spencer_differential(&t, k, 1).unwrap();
            let c = cochain_space(&t, k, 1).unwrap();
            // dim Im = dim(g_{k-1} (x) g_{-1}^*) - dim g_k
            assert_eq!(rank(&d), c.dim() - t.dim(k), "{l} k={k}");
        }
    }
}

#[test]
fn cochain_dimensions() {
    let t = tower("sl-std:1:2");
    assert_eq!(cochain_space(&t, 1, 2).unwrap().dim(), 6);
    let t = tower("cpe:2");
    assert_eq!(cochain_space(&t, 2, 2).unwrap().dim(), 72);
    assert_eq!(cochain_space(&t, 2, 2).unwrap().superdim(), (36, 36));
    assert!(matches!(cochain_space(&t, 0, 2), Err(SpencerError::Undefined(0, 2))));
}

#[test]
fn order_one_for_periplectic_pairs() {
    for n in [2, 3] {
        assert_eq!(cohomology_dim(&tower(&format!("pe:{n}")), 1, 2).unwrap(), 0);
        assert_eq!(cohomology_dim(&tower(&format!("cpe:{n}")), 1, 2).unwrap(), 0);
        assert_eq!(cohomology_dim(&tower(&format!("spe:{n}")), 1, 2).unwrap(), 2 * n);
    }
}

#[test]
fn vector_fields_have_no_structure_functions() {
    for n in [2i32, 3] {
        let t = tower(&format!("sl-std:1:{n}"));
        for k in 1..=(n + 1) {
            assert_eq!(cohomology_dim(&t, k, 2).unwrap(), 0, "n={n} k={k}");
        }
    }
}

#[test]
fn cohomology_space_agrees_with_dimension_count() {
    for l in ["spe:2", "sl-std:2:2"] {
        let t = tower(l);
        for k in 1..=2 {
            let h = spencer_cohomology(&t, k, 2).unwrap();
            assert_eq!(h.dim(), cohomology_dim(&t, k, 2).unwrap());
            assert_eq!(h.dim() + h.image_dim, h.kernel_dim);
            let m = h.module(&t);
            m.check_weights().unwrap();
            assert_eq!(m.dim(), h.dim());
        }
    }
}

#[test]
fn euler_characteristic_telescopes() {
    for l in SMALL {
        let t = tower(l);
        for k in 0..=t.max_degree().min(2) {
            let e = euler_check(&t, k).unwrap();
            assert!(e.passed, "{l} k={k}: {e:?}");
            assert_eq!(e.cochain_dims.len(), k as usize + 2);
        }
    }
}

#[test]
fn euler_check_catches_a_broken_differential() {
    let t = tower("cpe:2");
    let k = 1;
    let spaces: Vec<Cochains> = (0..=2).map(|s| cochain_space(&t, k, s).unwrap()).collect();
    let mut diffs: Vec<SparseMatrix> = (0..2).map(|s| spencer_differential(&t, k, s).unwrap()).collect();
    assert!(euler_from(k, &spaces, &diffs).passed);
    // a nonzero map C^{1,1} -> C^{1,2} that does not kill the image of C^{1,0}
    let (r, c) = (diffs[1].nrows(), diffs[1].ncols());
    let src = diffs[0].triples()[0].0;
    diffs[1] = SparseMatrix::zeros(r, c);
    diffs[1].set(0, src, Scalar::one());
    assert!(!euler_from(k, &spaces, &diffs).passed);
}

#[test]
fn dimensions_do_not_depend_on_basis_order() {
    for l in ["spe:2", "sl-std:2:2", "q:3:1:+"] {
        let p = build_case(l).unwrap();
        let n = p.dim_gm1();
        let perm: Vec<usize> = (0..n).rev().collect();
        let a = cartan_prolong(&p, default_kmax(&p));
        let b = cartan_prolong(&p.permute_gm1(&perm), default_kmax(&p));
        assert_eq!(a.dims(), b.dims());
        for k in 1..=2 {
            assert_eq!(cohomology_dim(&a, k, 2).unwrap(), cohomology_dim(&b, k, 2).unwrap(), "{l} k={k}");
        }
    }
}
