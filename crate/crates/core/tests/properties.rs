use nashkit::explog::{exp_hyperbolic, exp_nilpotent, log_hyperbolic, log_unipotent};
use nashkit::jordan::{additive_jordan, multiplicative_jordan, JordanTriple};
use nashkit::json::{matrix_from_json, matrix_to_json};
use nashkit::liealg::{in_subspace, lie_closure};
use nashkit::linalg::Linalg;
use nashkit::matrix::rel_diff;
use nashkit::poly::char_poly;
use nashkit::replica::replica_hyperbolic;
use nashkit::scalar::{q, qi};
use nashkit::{Mat, Matrix, Q};
use proptest::prelude::*;

fn int_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Mat<Q>> {
    prop::collection::vec(lo..=hi, n * n).prop_map(move |v| Mat::from_vec(n, n, v.into_iter().map(qi).collect()))
}

fn rational_matrix(n: usize) -> impl Strategy<Value = Mat<Q>> {
    prop::collection::vec((-9i64..=9, 1i64..=5), n * n)
        .prop_map(move |v| Mat::from_vec(n, n, v.into_iter().map(|(a, b)| q(a, b)).collect()))
}

fn invertible(n: usize) -> impl Strategy<Value = Mat<Q>> {
    int_matrix(n, -3, 3).prop_filter("singular", move |m| Q::rank(m, 0.0) == n)
}

fn strictly_upper(n: usize) -> impl Strategy<Value = Mat<Q>> {
    rational_matrix(n).prop_map(move |m| Mat::from_fn(n, n, |i, j| if i < j { m[(i, j)].clone() } else { qi(0) }))
}

fn parts(t: &JordanTriple) -> [Mat<f64>; 3] {
    [t.e.to_f64(), t.h.to_f64(), t.u.to_f64()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn char_poly_is_a_conjugation_invariant(x in rational_matrix(3), p in invertible(3)) {
        let pinv = Q::inverse(&p, 0.0).unwrap();
        prop_assert_eq!(char_poly(&p.mul(&x).mul(&pinv)), char_poly(&x));
    }

    #[test]
    fn nullspace_vectors_are_killed(x in int_matrix(4, -2, 2)) {
        let ns = Q::nullspace(&x, 0.0);
        prop_assert_eq!(ns.len(), 4 - Q::rank(&x, 0.0));
        for v in &ns {
            prop_assert!(x.mul_vec(v).iter().all(|c| *c == qi(0)));
        }
        let xf = x.to_f64();
        let nsf = f64::nullspace(&xf, 1e-10);
        prop_assert_eq!(nsf.len(), ns.len());
        for v in &nsf {
            prop_assert!(xf.mul_vec(v).iter().all(|c| c.abs() < 1e-9));
        }
    }

    #[test]
    fn jordan_parts_commute_with_block_doubling(x in invertible(3)) {
        let single = multiplicative_jordan(&Matrix::Exact(x.clone())).unwrap();
        let double = multiplicative_jordan(&Matrix::Exact(x.block_diag(&x))).unwrap();
        for (a, b) in parts(&single).iter().zip(parts(&double).iter()) {
            prop_assert!(rel_diff(b, &a.block_diag(a)) < 1e-9);
        }
        let single = additive_jordan(&Matrix::Exact(x.clone())).unwrap();
        let double = additive_jordan(&Matrix::Exact(x.block_diag(&x))).unwrap();
        for (a, b) in parts(&single).iter().zip(parts(&double).iter()) {
            prop_assert!(rel_diff(b, &a.block_diag(a)) < 1e-9);
        }
    }

    #[test]
    fn exact_exp_log_roundtrip(n in strictly_upper(4)) {
        let nm = Matrix::Exact(n.clone());
        prop_assert_eq!(log_unipotent(&exp_nilpotent(&nm).unwrap()).unwrap(), nm);
        let u = Matrix::Exact(n.add_scalar(&qi(1)));
        prop_assert_eq!(exp_nilpotent(&log_unipotent(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn hyperbolic_exp_log_roundtrip(v in prop::collection::vec(-2.0f64..2.0, 9)) {
        let a = Mat::from_vec(3, 3, v);
        let sym = a.add(&a.transpose()).scale(&0.5);
        let x = Matrix::Approx { m: sym.clone(), tol: 1e-8 };
        let back = log_hyperbolic(&exp_hyperbolic(&x).unwrap()).unwrap();
        prop_assert!(rel_diff(&back.to_f64(), &sym) < 1e-9);
    }

    #[test]
    fn two_by_two_parts_match_closed_form(x in invertible(2)) {
        let t = multiplicative_jordan(&Matrix::Exact(x.clone())).unwrap();
        let (want_e, want_h, want_u) = closed_form(&x.to_f64());
        let [e, h, u] = parts(&t);
        prop_assert!(rel_diff(&e, &want_e) < 1e-9, "e {:?} vs {:?}", e, want_e);
        prop_assert!(rel_diff(&h, &want_h) < 1e-9, "h {:?} vs {:?}", h, want_h);
        prop_assert!(rel_diff(&u, &want_u) < 1e-9, "u {:?} vs {:?}", u, want_u);
    }

    #[test]
    fn replica_dimension_survives_block_doubling(exps in prop::collection::vec((-2i32..=2, -2i32..=2, -1i32..=1), 1..4)) {
        let diag: Vec<Q> = exps
            .iter()
            .map(|&(a, b, c)| qi(2).pow(a) * qi(3).pow(b) * qi(6).pow(c))
            .collect();
        let x = Mat::diag(&diag);
        let single = replica_hyperbolic(&Matrix::Exact(x.clone())).unwrap();
        let double = replica_hyperbolic(&Matrix::Exact(x.block_diag(&x))).unwrap();
        prop_assert_eq!(single.dimension, double.dimension);
    }

    #[test]
    fn matrix_json_roundtrip(x in rational_matrix(3), v in prop::collection::vec(-1e6f64..1e6, 4)) {
        let m = Matrix::Exact(x);
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m), 1e-8).unwrap(), m);
        let a = Matrix::Approx { m: Mat::from_vec(2, 2, v), tol: 1e-8 };
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&a), 1e-8).unwrap(), a);
    }

    #[test]
    fn closure_contains_and_closes(a in int_matrix(3, -1, 1), b in int_matrix(3, -1, 1)) {
        let g = lie_closure(3, &[a.clone(), b.clone()], 0.0).unwrap();
        prop_assert!(g.contains(&a) && g.contains(&b));
        for x in g.basis() {
            for y in g.basis() {
                prop_assert!(in_subspace(g.basis(), &x.bracket(y), 0.0));
            }
        }
    }
}

/// `e`, `h`, `u` of an invertible real 2×2 matrix from its eigenvalues.
fn closed_form(x: &Mat<f64>) -> (Mat<f64>, Mat<f64>, Mat<f64>) {
    let id = Mat::<f64>::identity(2);
    let tr = x.trace();
    let det = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
    let disc = tr * tr - 4.0 * det;
    if disc.abs() < 1e-12 {
        let l = tr / 2.0;
        return (id.scale(&l.signum()), id.scale(&l.abs()), x.scale(&(1.0 / l)));
    }
    if disc < 0.0 {
        let r = det.sqrt();
        return (x.scale(&(1.0 / r)), id.scale(&r), id);
    }
    let (l1, l2) = ((tr + disc.sqrt()) / 2.0, (tr - disc.sqrt()) / 2.0);
    let p1 = x.sub(&id.scale(&l2)).scale(&(1.0 / (l1 - l2)));
    let p2 = id.sub(&p1);
    let e = p1.scale(&l1.signum()).add(&p2.scale(&l2.signum()));
    let h = p1.scale(&l1.abs()).add(&p2.scale(&l2.abs()));
    (e, h, id)
}
