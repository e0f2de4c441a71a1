//! Genus of graphs whose components are all recognized, plus Euler bounds.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{recognize, Component, ShapeDescriptor, SimpleGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusClass {
    Planar,
    Toroidal,
    DoubleToroidal,
    TripleToroidal,
    /// Exact genus of 4 or more.
    Higher(u64),
    /// Some component is unrecognized; the payload is the Euler bound.
    UnknownBoundedBelow(u64),
}

impl GenusClass {
    pub fn from_exact(g: u64) -> Self {
        match g {
            0 => Self::Planar,
            1 => Self::Toroidal,
            2 => Self::DoubleToroidal,
            3 => Self::TripleToroidal,
            g => Self::Higher(g),
        }
    }
}

impl fmt::Display for GenusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Planar => write!(f, "planar"),
            Self::Toroidal => write!(f, "toroidal"),
            Self::DoubleToroidal => write!(f, "double-toroidal"),
            Self::TripleToroidal => write!(f, "triple-toroidal"),
            Self::Higher(g) => write!(f, "genus-{g}"),
            Self::UnknownBoundedBelow(b) => write!(f, "unknown-bounded-below-{b}"),
        }
    }
}

impl Serialize for GenusClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub exact_genus: Option<u64>,
    pub euler_lower_bound: u64,
    pub class_label: GenusClass,
}

/// Genus of `K_k`: `⌈(k−3)(k−4)/12⌉` for `k ≥ 3`.
pub fn clique_genus(k: usize) -> u64 {
    if k <= 4 {
        return 0;
    }
    let p = ((k - 3) * (k - 4)) as u64;
    p.div_ceil(12)
}

/// `max(0, ⌈(m − 3n + 6)/6⌉)` for a connected graph with `n ≥ 3`.
pub fn euler_bound(n: usize, m: usize) -> u64 {
    if n < 3 {
        return 0;
    }
    let excess = m as i64 - 3 * n as i64 + 6;
    if excess <= 0 {
        0
    } else {
        (excess as u64).div_ceil(6)
    }
}

fn component_genus(c: &Component) -> Option<u64> {
    match c {
        Component::Clique(k) => Some(clique_genus(*k)),
        Component::Friendship(_) | Component::NamedD => Some(0),
        Component::Other { .. } => None,
    }
}

pub fn genus_of_shape(shape: &ShapeDescriptor) -> GenusReport {
    let mut exact = Some(0u64);
    let mut bound = 0u64;
    for (c, &k) in &shape.components {
        bound += euler_bound(c.vertex_count(), c.edge_count()) * k as u64;
        exact = match (exact, component_genus(c)) {
            (Some(total), Some(g)) => Some(total + g * k as u64),
            _ => None,
        };
    }
    let class_label = match exact {
        Some(g) => GenusClass::from_exact(g),
        None => GenusClass::UnknownBoundedBelow(bound),
    };
    GenusReport { exact_genus: exact, euler_lower_bound: bound, class_label }
}

pub fn genus_classify(g: &SimpleGraph) -> GenusReport {
    genus_of_shape(&recognize(g))
}
