//! Randomized invariants over shape graphs (n ≤ 40) and small arbitrary graphs.

mod common;

use cgl_core::catalog;
use cgl_core::energy::{energies, CertifiedReal};
use cgl_core::graph::ShapeExpr;
use common::*;
use proptest::prelude::*;

fn close(a: &CertifiedReal, b: f64) -> bool {
    (a.approx() - b).abs() <= 1e-9 * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn recognize_inverts_build(expr in shape_expr()) {
        check_recognize(&expr);
    }

    #[test]
    fn trace_identities_on_shapes(expr in shape_expr()) {
        check_trace_identities(&ShapeExpr::parse(&expr).unwrap().build());
    }

    #[test]
    fn trace_identities_on_random_graphs(g in random_graph(12)) {
        check_trace_identities(&g);
    }

    #[test]
    fn complement_zagreb_matches_direct(expr in shape_expr(), g in random_graph(16)) {
        check_complement_zagreb(&ShapeExpr::parse(&expr).unwrap().build());
        check_complement_zagreb(&g);
    }

    #[test]
    fn closed_form_agrees_with_pipeline(expr in shape_expr()) {
        check_closed_form(&ShapeExpr::parse(&expr).unwrap().build());
    }

    #[test]
    fn eigen_oracle_on_shapes(expr in shape_expr()) {
        check_eigen_oracle(&ShapeExpr::parse(&expr).unwrap().build());
    }

    #[test]
    fn eigen_oracle_on_random_graphs(g in random_graph(12)) {
        check_eigen_oracle(&g);
    }

    #[test]
    fn adjacency_and_cn_energies_add_over_union(a in shape_expr(), b in shape_expr()) {
        let ga = ShapeExpr::parse(&a).unwrap().build();
        let gb = ShapeExpr::parse(&b).unwrap().build();
        prop_assume!(ga.n() + gb.n() <= 40);
        let (ea, eb) = (energies(&ga).unwrap(), energies(&gb).unwrap());
        let eu = energies(&ga.disjoint_union(&gb)).unwrap();
        prop_assert!(close(&eu.e, ea.e.approx() + eb.e.approx()));
        prop_assert!(close(&eu.ecn, ea.ecn.approx() + eb.ecn.approx()));
        if let (Some(x), Some(y), Some(z)) = (&ea.e.exact, &eb.e.exact, &eu.e.exact) {
            prop_assert_eq!(x + y, z.clone());
        }
    }

    #[test]
    fn energies_certify(g in random_graph(12), expr in shape_expr()) {
        for g in [g.clone(), g.complement(), ShapeExpr::parse(&expr).unwrap().build()] {
            let e = energies(&g).unwrap();
            prop_assert!(e.e.lo <= e.e.hi);
            prop_assert_eq!(e.e_le_holds, e.e.approx() <= e.le.approx() + 1e-9);
        }
    }

    #[test]
    fn degree_centralizer_identity(idx in 0usize..catalog::all().len()) {
        check_degree_centralizer(catalog::all()[idx].name);
    }
}
