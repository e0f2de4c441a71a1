//! Shape expressions and structural recognition of graph components.
//!
//! Grammar (`*` binds tighter than `v`, which binds tighter than `+`):
//!
//! ```text
//! expr    := join ('+' join)*          '⊔' is accepted for '+'
//! join    := term ('v' term)*          '∨' is accepted for 'v'
//! term    := [count ['*']] primary     "3K2", "3*K2" and "3(K1 v 3K2)" all work
//! primary := 'K' int | 'F' int | 'D' | '(' expr ')'
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{GraphError, SimpleGraph};

/// Largest component size that gets an exhaustive canonical form.
pub const CANONICAL_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeExpr {
    Clique(usize),
    Friendship(usize),
    NamedD,
    Repeat(usize, Box<ShapeExpr>),
    Union(Vec<ShapeExpr>),
    Join(Box<ShapeExpr>, Box<ShapeExpr>),
}

impl ShapeExpr {
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let chars: Vec<char> = text
            .chars()
            .map(|c| match c {
                '⊔' => '+',
                '∨' => 'v',
                '·' | '×' => '*',
                c => c,
            })
            .filter(|c| !c.is_whitespace())
            .collect();
        let mut p = ExprParser { chars: &chars, pos: 0, text };
        let e = p.expr()?;
        if p.pos != chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    pub fn build(&self) -> SimpleGraph {
        match self {
            ShapeExpr::Clique(k) => SimpleGraph::complete(*k),
            ShapeExpr::Friendship(m) => SimpleGraph::friendship(*m),
            ShapeExpr::NamedD => SimpleGraph::graph_d(),
            ShapeExpr::Repeat(a, e) => {
                let one = e.build();
                (0..*a).fold(SimpleGraph::new(0), |acc, _| acc.disjoint_union(&one))
            }
            ShapeExpr::Union(parts) => parts
                .iter()
                .fold(SimpleGraph::new(0), |acc, p| acc.disjoint_union(&p.build())),
            ShapeExpr::Join(a, b) => a.build().join(&b.build()),
        }
    }

    /// Descriptor predicted from the expression alone. Joins other than the
    /// clique and friendship patterns fall back to building and recognizing.
    pub fn descriptor(&self) -> ShapeDescriptor {
        let mut d = ShapeDescriptor::default();
        self.collect(&mut d, 1);
        d
    }

    fn collect(&self, d: &mut ShapeDescriptor, times: usize) {
        match self {
            ShapeExpr::Clique(0) => {}
            ShapeExpr::Clique(k) => d.add(Component::Clique(*k), times),
            ShapeExpr::Friendship(0) => d.add(Component::Clique(1), times),
            ShapeExpr::Friendship(1) => d.add(Component::Clique(3), times),
            ShapeExpr::Friendship(m) => d.add(Component::Friendship(*m), times),
            ShapeExpr::NamedD => d.add(Component::NamedD, times),
            ShapeExpr::Repeat(a, e) => e.collect(d, times * a),
            ShapeExpr::Union(parts) => parts.iter().for_each(|p| p.collect(d, times)),
            ShapeExpr::Join(..) => {
                for (c, k) in recognize(&self.build()).components {
                    d.add(c, k * times);
                }
            }
        }
    }
}

impl fmt::Display for ShapeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeExpr::Clique(k) => write!(f, "K{k}"),
            ShapeExpr::Friendship(m) => write!(f, "F{m}"),
            ShapeExpr::NamedD => write!(f, "D"),
            ShapeExpr::Repeat(a, e) => match **e {
                ShapeExpr::Union(_) | ShapeExpr::Join(..) => write!(f, "{a}({e})"),
                _ => write!(f, "{a}{e}"),
            },
            ShapeExpr::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ⊔ ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            ShapeExpr::Join(a, b) => {
                let wrap = |e: &ShapeExpr| matches!(e, ShapeExpr::Union(_));
                if wrap(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " ∨ ")?;
                if wrap(b) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

struct ExprParser<'a> {
    chars: &'a [char],
    pos: usize,
    text: &'a str,
}

impl ExprParser<'_> {
    fn error(&self, what: &str) -> GraphError {
        GraphError::MalformedExpression(format!("{what} at offset {} in {:?}", self.pos, self.text))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn expr(&mut self) -> Result<ShapeExpr, GraphError> {
        let mut parts = vec![self.join()?];
        while self.eat('+') {
            parts.push(self.join()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { ShapeExpr::Union(parts) })
    }

    fn join(&mut self) -> Result<ShapeExpr, GraphError> {
        let mut e = self.term()?;
        while self.eat('v') {
            let rhs = self.term()?;
            e = ShapeExpr::Join(Box::new(e), Box::new(rhs));
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<ShapeExpr, GraphError> {
        let save = self.pos;
        match self.number() {
            Some(count) => {
                self.eat('*');
                if self.peek().is_none() {
                    self.pos = save;
                    return Err(self.error("count without a term"));
                }
                let e = self.primary()?;
                Ok(ShapeExpr::Repeat(count, Box::new(e)))
            }
            None if self.pos != save => Err(self.error("count out of range")),
            None => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<ShapeExpr, GraphError> {
        match self.peek() {
            Some('K') => {
                self.pos += 1;
                self.number().map(ShapeExpr::Clique).ok_or_else(|| self.error("expected K<n>"))
            }
            Some('F') => {
                self.pos += 1;
                self.number().map(ShapeExpr::Friendship).ok_or_else(|| self.error("expected F<m>"))
            }
            Some('D') => {
                self.pos += 1;
                Ok(ShapeExpr::NamedD)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.error("expected K<n>, F<m>, D or '('")),
        }
    }
}

/// One recognized connected component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Clique(usize),
    Friendship(usize),
    NamedD,
    Other { n: usize, m: usize, certificate: String },
}

impl Component {
    pub fn vertex_count(&self) -> usize {
        match self {
            Component::Clique(k) => *k,
            Component::Friendship(m) => 2 * m + 1,
            Component::NamedD => 9,
            Component::Other { n, .. } => *n,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Component::Clique(k) => k * k.saturating_sub(1) / 2,
            Component::Friendship(m) => 3 * m,
            Component::NamedD => 12,
            Component::Other { m, .. } => *m,
        }
    }

    pub fn is_named(&self) -> bool {
        !matches!(self, Component::Other { .. })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Clique(k) => write!(f, "K{k}"),
            Component::Friendship(m) => write!(f, "F{m}"),
            Component::NamedD => write!(f, "D"),
            Component::Other { n, m, .. } => write!(f, "G[n={n},m={m}]"),
        }
    }
}

/// Multiset of recognized components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShapeDescriptor {
    pub components: BTreeMap<Component, usize>,
}

impl ShapeDescriptor {
    fn add(&mut self, c: Component, times: usize) {
        if times > 0 {
            *self.components.entry(c).or_insert(0) += times;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(|(c, k)| c.vertex_count() * k).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|(c, k)| c.edge_count() * k).sum()
    }

    pub fn component_count(&self) -> usize {
        self.components.values().sum()
    }

    pub fn fully_named(&self) -> bool {
        self.components.keys().all(Component::is_named)
    }

    /// Components in display order: larger components first.
    pub fn ordered(&self) -> Vec<(&Component, usize)> {
        let mut v: Vec<(&Component, usize)> = self.components.iter().map(|(c, &k)| (c, k)).collect();
        v.sort_by(|a, b| b.0.vertex_count().cmp(&a.0.vertex_count()).then(a.0.cmp(b.0)));
        v
    }

    /// Rebuilds a shape expression when every component is named.
    pub fn to_expr(&self) -> Option<ShapeExpr> {
        if !self.fully_named() {
            return None;
        }
        let parts: Vec<ShapeExpr> = self
            .ordered()
            .into_iter()
            .map(|(c, k)| {
                let e = match c {
                    Component::Clique(n) => ShapeExpr::Clique(*n),
                    Component::Friendship(m) => ShapeExpr::Friendship(*m),
                    Component::NamedD => ShapeExpr::NamedD,
                    Component::Other { .. } => unreachable!("checked fully_named"),
                };
                if k == 1 { e } else { ShapeExpr::Repeat(k, Box::new(e)) }
            })
            .collect();
        Some(ShapeExpr::Union(parts))
    }
}

impl fmt::Display for ShapeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        for (i, (c, k)) in self.ordered().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ⊔ ")?;
            }
            if k > 1 {
                write!(f, "{k}")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for ShapeDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Decomposes `g` into components and names each one.
pub fn recognize(g: &SimpleGraph) -> ShapeDescriptor {
    let mut d = ShapeDescriptor::default();
    for c in g.components() {
        d.add(classify(&c.graph), 1);
    }
    d
}

/// Names a connected graph.
pub fn classify(g: &SimpleGraph) -> Component {
    let n = g.n();
    let degrees = g.degrees();
    if degrees.iter().all(|&d| d + 1 == n) {
        return Component::Clique(n);
    }
    if let Some(m) = friendship_order(g, &degrees) {
        return Component::Friendship(m);
    }
    let m = g.edge_count();
    if n <= CANONICAL_LIMIT {
        let certificate = canonical_certificate(g);
        if n == 9 && m == 12 && certificate == canonical_certificate(&SimpleGraph::graph_d()) {
            return Component::NamedD;
        }
        return Component::Other { n, m, certificate };
    }
    let mut sorted = degrees;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let seq: Vec<String> = sorted.iter().map(ToString::to_string).collect();
    Component::Other { n, m, certificate: format!("deg:{}", seq.join(",")) }
}

fn friendship_order(g: &SimpleGraph, degrees: &[usize]) -> Option<usize> {
    let n = g.n();
    if n < 5 || n.is_multiple_of(2) {
        return None;
    }
    let m = (n - 1) / 2;
    let hubs: Vec<usize> = (0..n).filter(|&v| degrees[v] == 2 * m).collect();
    if hubs.len() != 1 {
        return None;
    }
    let hub = hubs[0];
    // Every other vertex has degree 2 and touches the hub, so its second
    // neighbour pairs it off; the pairing is symmetric by construction.
    let ok = (0..n).filter(|&v| v != hub).all(|v| degrees[v] == 2 && g.has_edge(v, hub));
    ok.then_some(m)
}

/// Canonical form of a small graph: the lexicographically smallest
/// column-wise upper-triangle bit string over all vertex orders that respect
/// the colour-refinement partition. Equal strings imply isomorphic graphs.
pub fn canonical_certificate(g: &SimpleGraph) -> String {
    let n = g.n();
    let colours = refine_colours(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (v, &c) in colours.iter().enumerate() {
        if cells.len() <= c {
            cells.resize(c + 1, Vec::new());
        }
        cells[c].push(v);
    }
    // Slot i of the ordering must hold a vertex of colour slot_colour[i].
    let slot_colour: Vec<usize> =
        cells.iter().enumerate().flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len())).collect();

    let mut search = CanonSearch {
        g,
        colours: &colours,
        slot_colour: &slot_colour,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        bits: Vec::new(),
        best: None,
    };
    search.run();
    let bits = search.best.unwrap_or_default();
    let mut out = format!("{n}:");
    for chunk in bits.chunks(4) {
        let mut nibble = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            nibble |= (b as u8) << (3 - i);
        }
        out.push(char::from_digit(u32::from(nibble), 16).expect("nibble < 16"));
    }
    out
}

struct CanonSearch<'a> {
    g: &'a SimpleGraph,
    colours: &'a [usize],
    slot_colour: &'a [usize],
    order: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let n = self.g.n();
        if self.order.len() == n {
            if self.best.as_ref().is_none_or(|b| self.bits < *b) {
                self.best = Some(self.bits.clone());
            }
            return;
        }
        let slot = self.order.len();
        for v in 0..n {
            if self.used[v] || self.colours[v] != self.slot_colour[slot] {
                continue;
            }
            let mark = self.bits.len();
            for &u in &self.order {
                self.bits.push(self.g.has_edge(u, v));
            }
            // Prune when the prefix is already worse than the best string.
            let worse = self
                .best
                .as_ref()
                .is_some_and(|b| self.bits.as_slice() > &b[..self.bits.len()]);
            if !worse {
                self.used[v] = true;
                self.order.push(v);
                self.run();
                self.order.pop();
                self.used[v] = false;
            }
            self.bits.truncate(mark);
        }
    }
}

/// Stable colour refinement; colours are ranks of canonical signatures so
/// they do not depend on vertex numbering.
fn refine_colours(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut colours = vec![0usize; n];
    let mut classes = 1;
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colours[u]).collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        colours = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        if distinct.len() == classes {
            return colours;
        }
        classes = distinct.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(pairs: &[(Component, usize)]) -> ShapeDescriptor {
        let mut d = ShapeDescriptor::default();
        for (c, k) in pairs {
            d.add(c.clone(), *k);
        }
        d
    }

    #[test]
    fn parses_published_shapes() {
        let e = ShapeExpr::parse("K8 ⊔ 9(K1∨3K2)").unwrap();
        let g = e.build();
        assert_eq!((g.n(), g.edge_count()), (71, 109));
        let g = ShapeExpr::parse("K8 + 3*K4").unwrap().build();
        assert_eq!((g.n(), g.edge_count()), (20, 46));
        let g = ShapeExpr::parse("K1 v 3K2").unwrap().build();
        assert_eq!((g.n(), g.edge_count()), (7, 9));
        let g = ShapeExpr::parse("7K2 + D").unwrap().build();
        assert_eq!((g.n(), g.edge_count()), (23, 19));
    }

    #[test]
    fn precedence() {
        // v binds tighter than +
        let g = ShapeExpr::parse("K1 v 5K1 + K3").unwrap().build();
        assert_eq!((g.n(), g.edge_count()), (9, 8));
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn malformed_expressions() {
        for bad in ["", "K", "K8 +", "3", "(K2", "X4", "K2 v", "K8 ⊔⊔ K1"] {
            assert!(ShapeExpr::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn recognizes_components() {
        let g = ShapeExpr::parse("K8 + 9F3").unwrap().build();
        assert_eq!(
            recognize(&g),
            desc(&[(Component::Clique(8), 1), (Component::Friendship(3), 9)])
        );
        let g = ShapeExpr::parse("7K2 + D").unwrap().build();
        assert_eq!(recognize(&g), desc(&[(Component::Clique(2), 7), (Component::NamedD, 1)]));
        // F1 is a triangle
        assert_eq!(recognize(&SimpleGraph::friendship(1)), desc(&[(Component::Clique(3), 1)]));
    }

    #[test]
    fn display_orders_by_size() {
        let g = ShapeExpr::parse("6K2 + 3K6 + 4K4").unwrap().build();
        assert_eq!(recognize(&g).to_string(), "3K6 ⊔ 4K4 ⊔ 6K2");
        let d = recognize(&ShapeExpr::parse("K8+9F3").unwrap().build());
        assert_eq!(d.to_string(), "K8 ⊔ 9F3");
        assert_eq!(ShapeExpr::parse(&d.to_string()).unwrap().descriptor(), d);
    }

    #[test]
    fn certificate_is_isomorphism_invariant() {
        let p = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let q = p.relabel(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_certificate(&p), canonical_certificate(&q));
        let star = SimpleGraph::star(4);
        assert_ne!(canonical_certificate(&p), canonical_certificate(&star));
        // Petersen graph: vertex-transitive, refinement gives one cell.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let pet = SimpleGraph::from_edges(10, &edges).unwrap();
        let shuffled = pet.relabel(&[9, 2, 7, 0, 5, 1, 8, 3, 6, 4]);
        assert_eq!(canonical_certificate(&pet), canonical_certificate(&shuffled));
    }

    #[test]
    fn d_is_recognized_after_relabeling() {
        let d = SimpleGraph::graph_d().relabel(&[4, 7, 0, 2, 8, 1, 6, 3, 5]);
        assert_eq!(classify(&d), Component::NamedD);
    }
}
