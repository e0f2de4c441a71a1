//! Finite groups stored as dense multiplication tables.
//!
//! Groups are produced by closing a generator set under multiplication.
//! Elements are numbered in breadth-first discovery order with the identity
//! at index 0, so repeated builds from the same generators give identical
//! tables.

mod matrix;
mod perm;
pub mod word;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;

pub use matrix::Mat2;
pub use perm::Permutation;

/// Closure cap used when callers do not supply one.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure generated more than {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("empty generator set")]
    EmptyGeneratorSet,
    #[error("generators do not share one degree")]
    DegreeMismatch,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("generator {index} is singular mod {p}")]
    SingularGenerator { index: usize, p: u32 },
    #[error("element {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("the group is abelian")]
    AbelianGroup,
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
}

/// Immutable finite group. Element 0 is the identity.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupData", into = "GroupData")]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GroupData {
    order: usize,
    table: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl From<FiniteGroup> for GroupData {
    fn from(g: FiniteGroup) -> Self {
        Self { order: g.order, table: g.table, generators: g.generators, labels: g.labels }
    }
}

impl TryFrom<GroupData> for FiniteGroup {
    type Error = GroupError;

    fn try_from(d: GroupData) -> Result<Self, Self::Error> {
        FiniteGroup::from_table(d.order, d.table, d.generators, d.labels)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Closes `gens` under `mul`, starting from `identity`.
    ///
    /// Returns the group together with the concrete element behind every
    /// index. Frontier elements are multiplied on the right by each generator
    /// in turn, so numbering follows discovery order.
    pub fn generate<T, F>(
        gens: &[T],
        identity: T,
        mul: F,
        cap: usize,
    ) -> Result<(Self, Vec<T>), GroupError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        if gens.is_empty() {
            return Err(GroupError::EmptyGeneratorSet);
        }
        let cap = cap.max(1);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &e in &frontier {
                for g in gens {
                    let p = mul(&elements[e], g);
                    if !index.contains_key(&p) {
                        if elements.len() >= cap {
                            return Err(GroupError::ClosureExceedsCap { cap });
                        }
                        index.insert(p.clone(), elements.len() as u32);
                        next.push(elements.len());
                        elements.push(p);
                    }
                }
            }
            frontier = next;
        }

        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elements[a], &elements[b])];
            }
        }
        let generators = gens.iter().map(|g| index[g] as usize).collect();
        let group = Self::from_table(n, table, generators, None)?;
        Ok((group, elements))
    }

    /// Builds a group from a complete multiplication table, checking identity
    /// at index 0 and that every row and column is a permutation.
    pub fn from_table(
        order: usize,
        table: Vec<u32>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order == 0 || table.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "table of length {} for order {order}",
                table.len()
            )));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(GroupError::InvalidTable("label count differs from order".into()));
            }
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(GroupError::InvalidTable("generator index out of range".into()));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(GroupError::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for b in 0..order {
                let r = table[a * order + b] as usize;
                let c = table[b * order + a] as usize;
                if r >= order || c >= order || row_seen[r] || col_seen[c] {
                    return Err(GroupError::InvalidTable("not a latin square".into()));
                }
                row_seen[r] = true;
                col_seen[c] = true;
                if r == 0 {
                    inverse[a] = b as u32;
                }
            }
        }
        Ok(Self { order, table, inverse, generators, labels })
    }

    pub fn from_permutation_generators(
        gens: &[Permutation],
        cap: usize,
    ) -> Result<Self, GroupError> {
        let first = gens.first().ok_or(GroupError::EmptyGeneratorSet)?;
        if gens.iter().any(|g| g.degree() != first.degree()) {
            return Err(GroupError::DegreeMismatch);
        }
        let identity = Permutation::identity(first.degree());
        let (mut group, elements) = Self::generate(gens, identity, Permutation::then, cap)?;
        group.labels = Some(elements.iter().map(ToString::to_string).collect());
        Ok(group)
    }

    /// Group generated by invertible 2×2 matrices over Z/pZ.
    pub fn from_matrix_generators(
        p: u32,
        gens: &[[u32; 4]],
        cap: usize,
    ) -> Result<Self, GroupError> {
        if !matrix::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if gens.is_empty() {
            return Err(GroupError::EmptyGeneratorSet);
        }
        let mats: Vec<Mat2> = gens.iter().map(|&e| Mat2::new(e, p)).collect();
        if let Some(index) = mats.iter().position(|m| m.det(p) == 0) {
            return Err(GroupError::SingularGenerator { index, p });
        }
        let (mut group, elements) =
            Self::generate(&mats, Mat2::identity(), |a, b| a.mul(b, p), cap)?;
        group.labels = Some(elements.iter().map(ToString::to_string).collect());
        Ok(group)
    }

    /// Direct product with pairs `(g, h)` stored at index `g * |H| + h`.
    /// Generators are those of `self` paired with the identity, followed by
    /// those of `other`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            let (a1, a2) = (a / m, a % m);
            for b in 0..order {
                let (b1, b2) = (b / m, b % m);
                table[a * order + b] =
                    (self.product(a1, b1) * m + other.product(a2, b2)) as u32;
            }
        }
        let generators = self
            .generators
            .iter()
            .map(|&g| g * m)
            .chain(other.generators.iter().copied())
            .collect();
        let labels = match (&self.labels, &other.labels) {
            (Some(l1), Some(l2)) => Some(
                (0..order)
                    .map(|a| format!("({}, {})", l1[a / m], l2[a % m]))
                    .collect(),
            ),
            _ => None,
        };
        Self::from_table(order, table, generators, labels)
            .expect("direct product of valid tables is a valid table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn power(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.product(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.product(x, a);
            k += 1;
        }
        k
    }

    /// Indices of the generators this group was built from.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.product(a, b) == self.product(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    fn check_index(&self, x: usize) -> Result<(), GroupError> {
        if x < self.order {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange { index: x, order: self.order })
        }
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| (0..self.order).all(|y| self.commutes(x, y)))
            .collect()
    }

    pub fn centralizer(&self, x: usize) -> Result<Vec<usize>, GroupError> {
        self.check_index(x)?;
        Ok((0..self.order).filter(|&y| self.commutes(x, y)).collect())
    }

    pub fn non_central_elements(&self) -> Vec<usize> {
        let center: HashSet<usize> = self.center().into_iter().collect();
        (0..self.order).filter(|x| !center.contains(x)).collect()
    }

    /// Distinct centralizers of non-central elements, by set equality.
    pub fn distinct_centralizers(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        let non_central = self.non_central_elements();
        if non_central.is_empty() {
            return Err(GroupError::AbelianGroup);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in non_central {
            let c = self.centralizer(x)?;
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        Ok(out)
    }

    pub fn centralizer_census(&self) -> Result<CentralizerCensus, GroupError> {
        let mut census = CentralizerCensus::default();
        for c in self.distinct_centralizers()? {
            *census.entries.entry(c.len()).or_insert(0) += 1;
        }
        Ok(census)
    }

    /// True when every centralizer of a non-central element is abelian.
    pub fn is_ac_group(&self) -> Result<bool, GroupError> {
        Ok(self.distinct_centralizers()?.iter().all(|c| {
            c.iter()
                .enumerate()
                .all(|(i, &a)| c[i + 1..].iter().all(|&b| self.commutes(a, b)))
        }))
    }

    /// Commuting graph on the non-central elements, in increasing index order.
    pub fn commuting_graph(&self) -> Result<SimpleGraph, GroupError> {
        let vertices = self.non_central_elements();
        if vertices.is_empty() {
            return Err(GroupError::AbelianGroup);
        }
        let mut g = SimpleGraph::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.commutes(a, b) {
                    g.add_edge(i, j).expect("indices are in range and distinct");
                }
            }
        }
        g.set_labels(vertices.iter().map(|&v| self.label(v)).collect());
        Ok(g)
    }

    /// Exhaustive associativity check, O(n³).
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.product(a, b);
                (0..n).all(|c| self.product(ab, c) == self.product(a, self.product(b, c)))
            })
        })
    }

    /// Identity, inverse and associativity axioms. Associativity is checked
    /// exhaustively up to order 200 and on a deterministic sample above that.
    pub fn satisfies_axioms(&self) -> bool {
        let n = self.order;
        let identity_ok = (0..n).all(|x| self.product(0, x) == x && self.product(x, 0) == x);
        let inverse_ok = (0..n).all(|x| {
            self.product(x, self.inverse(x)) == 0 && self.product(self.inverse(x), x) == 0
        });
        let assoc_ok = if n <= 200 {
            self.is_associative()
        } else {
            let step = n / 50 + 1;
            (0..n).step_by(step).all(|a| {
                (0..n).step_by(step).all(|b| {
                    (0..n).all(|c| {
                        self.product(self.product(a, b), c)
                            == self.product(a, self.product(b, c))
                    })
                })
            })
        };
        identity_ok && inverse_ok && assoc_ok
    }
}

/// Counts of distinct centralizers of non-central elements, keyed by size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerCensus {
    entries: BTreeMap<usize, usize>,
}

impl CentralizerCensus {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        let mut entries = BTreeMap::new();
        for &(size, count) in pairs {
            *entries.entry(size).or_insert(0) += count;
        }
        Self { entries }
    }

    /// `(size, count)` pairs, largest centralizers first.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.entries.iter().rev().map(|(&s, &c)| (s, c)).collect()
    }

    pub fn total_centralizers(&self) -> usize {
        self.entries.values().sum()
    }
}

impl fmt::Display for CentralizerCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.pairs().iter().map(|(s, c)| format!("({s},{c})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(n: u32) -> FiniteGroup {
        let r: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
        let s: Vec<u32> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutation_generators(
            &[Permutation::new(r).unwrap(), Permutation::new(s).unwrap()],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn dihedral_order_and_axioms() {
        let g = dihedral(9);
        assert_eq!(g.order(), 18);
        assert!(g.satisfies_axioms());
        assert_eq!(g.label(0), "()");
    }

    #[test]
    fn closure_respects_cap() {
        let r = Permutation::parse_cycles(9, "(0 1 2 3 4 5 6 7 8)").unwrap();
        let s = Permutation::parse_cycles(9, "(1 8)(2 7)(3 6)(4 5)").unwrap();
        let err = FiniteGroup::from_permutation_generators(&[r, s], 10).unwrap_err();
        assert_eq!(err, GroupError::ClosureExceedsCap { cap: 10 });
    }

    #[test]
    fn empty_and_mismatched_generators() {
        assert_eq!(
            FiniteGroup::from_permutation_generators(&[], 100).unwrap_err(),
            GroupError::EmptyGeneratorSet
        );
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(
            FiniteGroup::from_permutation_generators(&[a, b], 100).unwrap_err(),
            GroupError::DegreeMismatch
        );
    }

    #[test]
    fn matrix_groups() {
        // GL(2,2)
        let g = FiniteGroup::from_matrix_generators(2, &[[1, 1, 0, 1], [0, 1, 1, 0]], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(
            FiniteGroup::from_matrix_generators(3, &[[1, 2, 2, 1]], 100).unwrap_err(),
            GroupError::SingularGenerator { index: 0, p: 3 }
        );
        assert_eq!(
            FiniteGroup::from_matrix_generators(4, &[[1, 1, 0, 1]], 100).unwrap_err(),
            GroupError::NotPrime(4)
        );
    }

    #[test]
    fn identity_centralizer_is_whole_group() {
        let g = dihedral(10);
        assert_eq!(g.centralizer(0).unwrap().len(), 20);
        assert!(matches!(g.centralizer(20), Err(GroupError::IndexOutOfRange { .. })));
    }

    #[test]
    fn abelian_groups_have_no_census() {
        let c5 = FiniteGroup::from_permutation_generators(
            &[Permutation::parse_cycles(5, "(0 1 2 3 4)").unwrap()],
            100,
        )
        .unwrap();
        assert!(c5.is_abelian());
        assert_eq!(c5.centralizer_census().unwrap_err(), GroupError::AbelianGroup);
        assert_eq!(c5.commuting_graph().unwrap_err(), GroupError::AbelianGroup);
        assert_eq!(c5.is_ac_group().unwrap_err(), GroupError::AbelianGroup);
    }

    #[test]
    fn direct_product_orders_and_center() {
        let d8 = dihedral(4);
        let c3 = FiniteGroup::from_permutation_generators(
            &[Permutation::parse_cycles(3, "(0 1 2)").unwrap()],
            100,
        )
        .unwrap();
        let g = d8.direct_product(&c3);
        assert_eq!(g.order(), 24);
        assert!(g.satisfies_axioms());
        assert_eq!(g.center().len(), 6);
        assert_eq!(g.generators().len(), 3);
    }

    #[test]
    fn serde_round_trip_validates() {
        let g = dihedral(5);
        let json = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(g, back);
        let broken = json.replacen("\"table\":[0,", "\"table\":[1,", 1);
        assert!(serde_json::from_str::<FiniteGroup>(&broken).is_err());
    }

    #[test]
    fn census_display_orders_by_size() {
        let c = CentralizerCensus::from_pairs(&[(4, 6), (8, 3), (6, 4)]);
        assert_eq!(c.to_string(), "{(8,3),(6,4),(4,6)}");
        assert_eq!(c.total_centralizers(), 13);
    }
}
