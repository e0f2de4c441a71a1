use std::fmt;
use std::str::FromStr;

use super::GroupError;

/// A permutation of `{0, .., degree - 1}` stored as its image list.
///
/// Permutations act on the right: `a.then(&b)` maps `i` to `b(a(i))`, and
/// that is the group product `a * b` used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, GroupError> {
        let d = images.len();
        if d == 0 {
            return Err(GroupError::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            let i = i as usize;
            if i >= d || seen[i] {
                return Err(GroupError::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{d}"
                )));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let p = p as usize;
                if p >= degree || touched[p] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "cycle {cycle:?} leaves 0..{degree} or overlaps another cycle"
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` on the given degree.
    /// The empty string and `()` denote the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::InvalidPermutation(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| GroupError::InvalidPermutation(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>().map_err(|_| {
                        GroupError::InvalidPermutation(format!("bad point {s:?} in {text:?}"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Places `self` on points `offset..offset + degree` of a permutation of `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Self {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + j;
        }
        Self { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = GroupError;

    /// Accepts an image list such as `[2, 0, 1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| GroupError::InvalidPermutation(format!("expected [..] image list, got {s:?}")))?;
        let images = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| GroupError::InvalidPermutation(format!("bad image {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_composes_to_identity() {
        let p = Permutation::parse_cycles(6, "(0 1 2)(3 5)").unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn right_action_convention() {
        let a = Permutation::parse_cycles(3, "(0 1)").unwrap();
        let b = Permutation::parse_cycles(3, "(1 2)").unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::from_cycles(4, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_and_parse() {
        let p = Permutation::parse_cycles(8, "(3 4 5 6 7)(1 2)").unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4 5 6 7)");
        let q: Permutation = "[1, 2, 0]".parse().unwrap();
        assert_eq!(q.to_string(), "(0 1 2)");
    }
}
