//! Strategies and checks shared by the property suite and the acceptance run.
#![allow(dead_code)]

use cgl_core::catalog;
use cgl_core::charpoly::{char_poly, matrix_of, MatrixKind};
use cgl_core::graph::{recognize, ShapeExpr, SimpleGraph};
use cgl_core::spectrum::{closed_form_spectrum, spectrum, Spectrum};
use cgl_core::zagreb::{complement_zagreb, zagreb_indices};
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub const KINDS: [MatrixKind; 4] = [MatrixKind::A, MatrixKind::L, MatrixKind::Q, MatrixKind::CN];

/// Agreement required between exact eigenvalues and the floating-point solver.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

pub fn component() -> impl Strategy<Value = (String, usize)> {
    prop_oneof![
        4 => (1usize..=8).prop_map(|k| (format!("K{k}"), k)),
        2 => (2usize..=4).prop_map(|m| (format!("F{m}"), 2 * m + 1)),
        1 => Just(("D".to_string(), 9)),
    ]
}

/// Shape expressions with at most 40 vertices.
pub fn shape_expr() -> impl Strategy<Value = String> {
    prop::collection::vec((component(), 1usize..=4), 1..=5).prop_map(|parts| {
        let mut total = 0;
        let mut terms = Vec::new();
        for ((c, size), copies) in parts {
            let fit = copies.min((40 - total) / size);
            if fit > 0 {
                total += fit * size;
                terms.push(format!("{fit}{c}"));
            }
        }
        if terms.is_empty() {
            terms.push("K2".into());
        }
        terms.join(" + ")
    })
}

pub fn random_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = SimpleGraph::new(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        g.add_edge(i, j).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

pub fn expanded(s: &Spectrum) -> Vec<f64> {
    let mut v: Vec<f64> = s
        .entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.value.approx(), e.mult))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn check_trace_identities(g: &SimpleGraph) {
    let m2 = 2 * g.edge_count() as i64;
    for kind in KINDS {
        let mat = matrix_of(g, kind);
        let p = char_poly(&mat);
        let n = g.n();
        assert_eq!(p.degree(), n);
        // x^n + c1 x^(n-1) + c2 x^(n-2) + ...
        let c1 = p.coeff(n - 1);
        let c2 = if n >= 2 { p.coeff(n - 2) } else { BigInt::from(0) };
        assert_eq!(-c1.clone(), BigInt::from(mat.trace()), "{kind:?}");
        let sum_sq: i64 = mat.entries().iter().map(|x| x * x).sum();
        assert_eq!(&c1 * &c1 - 2 * c2, BigInt::from(sum_sq), "{kind:?}");
        if kind == MatrixKind::A {
            assert_eq!(sum_sq, m2);
        }
        let s = spectrum(&mat);
        assert_eq!(s.total_multiplicity(), n);
        let approx_sq: f64 = expanded(&s).iter().map(|x| x * x).sum();
        assert!((approx_sq - sum_sq as f64).abs() <= 1e-6 * (1.0 + sum_sq as f64));
        let (lo, hi) = s.trace_bounds();
        let t = BigRational::from_integer(mat.trace().into());
        assert!(lo <= t && t <= hi, "{kind:?}");
    }
}

pub fn check_eigen_oracle(g: &SimpleGraph) {
    for kind in KINDS {
        let mat = matrix_of(g, kind);
        let n = g.n();
        let dense = DMatrix::from_fn(n, n, |i, j| mat.get(i, j) as f64);
        let mut oracle: Vec<f64> = SymmetricEigen::new(dense).eigenvalues.iter().copied().collect();
        oracle.sort_by(f64::total_cmp);
        let exact = expanded(&spectrum(&mat));
        for (a, b) in exact.iter().zip(&oracle) {
            assert!((a - b).abs() <= ORACLE_TOLERANCE * (1.0 + b.abs()), "{kind:?}: {a} vs {b}");
        }
    }
}


pub fn check_recognize(expr: &str) {
    let e = ShapeExpr::parse(expr).unwrap();
    let g = e.build();
    assert_eq!(recognize(&g), e.descriptor(), "{expr}");
    let n = g.n();
    // Reversal is a relabelling that moves every vertex.
    let perm: Vec<usize> = (0..n).rev().collect();
    assert_eq!(recognize(&g.relabel(&perm)), e.descriptor(), "{expr}");
}

pub fn check_complement_zagreb(g: &SimpleGraph) {
    let z = zagreb_indices(g);
    let zc = zagreb_indices(&g.complement());
    let (m1, m2) = complement_zagreb(z.n, z.m, &z.m1, &z.m2).unwrap();
    assert_eq!(m1, zc.m1);
    assert_eq!(m2, BigRational::from_integer(zc.m2));
}

pub fn check_closed_form(g: &SimpleGraph) {
    let shape = recognize(g);
    for kind in KINDS {
        if let Ok(cf) = closed_form_spectrum(&shape, kind) {
            let exact = spectrum(&matrix_of(g, kind));
            assert!(cf.agrees_with(&exact), "{kind:?}: {cf} vs {exact}");
        }
    }
}

pub fn check_degree_centralizer(name: &str) {
    let grp = catalog::build(name).unwrap();
    let g = grp.commuting_graph().unwrap();
    let z = grp.center().len();
    for (v, &x) in grp.non_central_elements().iter().enumerate() {
        assert_eq!(g.degree(v), grp.centralizer(x).unwrap().len() - z - 1, "{name}");
    }
}
