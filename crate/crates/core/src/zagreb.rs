//! First and second Zagreb indices and the Hansen–Vukičević comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{serialize_bigint, serialize_ratio};
use crate::graph::SimpleGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZagrebError {
    #[error("graph has no edges, so M2/m is undefined")]
    EmptyEdgeSet,
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZagrebReport {
    pub n: u64,
    pub m: u64,
    #[serde(serialize_with = "serialize_bigint")]
    pub m1: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub m2: BigInt,
    /// Absent when the graph has no edges.
    pub hv: Option<HvVerdict>,
}

/// Compares `M2/m` against `M1/n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HvVerdict {
    #[serde(serialize_with = "serialize_ratio")]
    pub lhs: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: BigRational,
    pub holds: bool,
    pub equality: bool,
}

impl HvVerdict {
    /// Decided by comparing `M2·n` with `M1·m` as integers.
    pub fn from_indices(n: u64, m: u64, m1: &BigInt, m2: &BigInt) -> Option<Self> {
        if m == 0 || n == 0 {
            return None;
        }
        let left = m2 * BigInt::from(n);
        let right = m1 * BigInt::from(m);
        Some(Self {
            lhs: BigRational::new(m2.clone(), BigInt::from(m)),
            rhs: BigRational::new(m1.clone(), BigInt::from(n)),
            holds: left >= right,
            equality: left == right,
        })
    }
}

pub fn zagreb_indices(g: &SimpleGraph) -> ZagrebReport {
    let deg = g.degrees();
    let m1: u64 = deg.iter().map(|&d| (d * d) as u64).sum();
    let m2: u64 = g.edges().iter().map(|&(u, v)| (deg[u] * deg[v]) as u64).sum();
    let (n, m) = (g.n() as u64, g.edge_count() as u64);
    let (m1, m2) = (BigInt::from(m1), BigInt::from(m2));
    let hv = HvVerdict::from_indices(n, m, &m1, &m2);
    ZagrebReport { n, m, m1, m2, hv }
}

/// Zagreb report that insists on a verdict.
pub fn hv_check(g: &SimpleGraph) -> Result<ZagrebReport, ZagrebError> {
    let r = zagreb_indices(g);
    if r.hv.is_none() {
        return Err(ZagrebError::EmptyEdgeSet);
    }
    Ok(r)
}

/// Zagreb indices of the complement from those of the graph:
///
/// ```text
/// M1c = n(n−1)² − 4m(n−1) + M1
/// M2c = n(n−1)³/2 + 2m² − 3m(n−1)² + (n − 3/2)·M1 − M2
/// ```
pub fn complement_zagreb(
    n: u64,
    m: u64,
    m1: &BigInt,
    m2: &BigInt,
) -> Result<(BigInt, BigRational), ZagrebError> {
    let max_edges = n * n.saturating_sub(1) / 2;
    if m > max_edges {
        return Err(ZagrebError::InconsistentInputs(format!(
            "{m} edges exceed C({n},2) = {max_edges}"
        )));
    }
    if m1.is_odd() {
        // Σ deg² has the parity of Σ deg = 2m.
        return Err(ZagrebError::InconsistentInputs(format!("M1 = {m1} is odd")));
    }
    let nb = BigInt::from(n);
    let mb = BigInt::from(m);
    let n1 = &nb - 1;
    let m1c = &nb * &n1 * &n1 - BigInt::from(4) * &mb * &n1 + m1;
    let rat = |x: BigInt| BigRational::from_integer(x);
    let m2c = rat(&nb * &n1 * &n1 * &n1) / rat(BigInt::from(2))
        + rat(BigInt::from(2) * &mb * &mb)
        - rat(BigInt::from(3) * &mb * &n1 * &n1)
        + (rat(nb.clone()) - BigRational::new(3.into(), 2.into())) * rat(m1.clone())
        - rat(m2.clone());
    if m2c < BigRational::zero() {
        return Err(ZagrebError::InconsistentInputs(format!("negative complement M2 {m2c}")));
    }
    Ok((m1c, m2c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ShapeExpr;

    fn report(expr: &str) -> ZagrebReport {
        zagreb_indices(&ShapeExpr::parse(expr).unwrap().build())
    }

    #[test]
    fn clique_indices() {
        let r = report("K4");
        assert_eq!((r.m1, r.m2), (36.into(), 54.into()));
    }

    #[test]
    fn published_shapes() {
        let r = report("K8+3K4");
        assert_eq!((r.n, r.m), (20, 46));
        assert_eq!((r.m1.clone(), r.m2.clone()), (500.into(), 1534.into()));
        let r = report("3K6");
        let hv = r.hv.unwrap();
        assert!(hv.holds && hv.equality);
        assert_eq!(hv.lhs, BigRational::from_integer(25.into()));
    }

    #[test]
    fn complement_formula_values() {
        let (a, b) = complement_zagreb(20, 46, &500.into(), &1534.into()).unwrap();
        assert_eq!(a, 4224.into());
        assert_eq!(b, BigRational::from_integer(30720.into()));
        let (a, b) = complement_zagreb(71, 109, &932.into(), &2128.into()).unwrap();
        assert_eq!(a, 318312.into());
        assert_eq!(b, BigRational::from_integer(10660608.into()));
    }

    #[test]
    fn inconsistent_inputs() {
        assert!(complement_zagreb(3, 4, &0.into(), &0.into()).is_err());
        assert!(complement_zagreb(4, 2, &5.into(), &0.into()).is_err());
    }

    #[test]
    fn empty_edge_set() {
        let g = SimpleGraph::new(3);
        assert_eq!(hv_check(&g).unwrap_err(), ZagrebError::EmptyEdgeSet);
        assert!(zagreb_indices(&g).hv.is_none());
    }

    #[test]
    fn star_plus_triangle_fails() {
        let g = SimpleGraph::star(5).disjoint_union(&SimpleGraph::complete(3));
        assert!(!hv_check(&g).unwrap().hv.unwrap().holds);
    }
}
