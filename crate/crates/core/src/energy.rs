//! Graph energies with certified bounds, classification flags and the
//! ordering of E, LE and LE+.
//!
//! An energy is `Σ mult·|λ − s|` over a spectrum. Rational eigenvalues
//! contribute exactly. When every root of an irrational factor lies on one
//! side of `s`, the factor's contribution is exact as well, since the sum of
//! its roots is a coefficient ratio. Remaining roots become terms keyed by the
//! polynomial of `|λ − s|` and the root's rank, so two energies with the same
//! terms differ by exactly the difference of their rational parts. Roots of
//! quadratic factors are surds and are summed exactly in Q(√d).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::charpoly::{matrix_of, MatrixKind};
use crate::exact::{ratio_string, ratio_to_f64};
use crate::graph::SimpleGraph;
use crate::poly::IntPoly;
use crate::spectrum::{spectrum, EigenValue, IsolatedRoot, Spectrum, DEFAULT_BITS};

/// Precisions tried before giving up on a comparison.
pub const REFINEMENT_BITS: [u32; 4] = [40, 80, 160, 320];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnergyError {
    #[error("could not separate {0} after refining to 2^-320")]
    UncertifiedComparison(String),
}

/// The four spectra of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectra {
    #[serde(rename = "A")]
    pub a: Spectrum,
    #[serde(rename = "L")]
    pub l: Spectrum,
    #[serde(rename = "Q")]
    pub q: Spectrum,
    #[serde(rename = "CN")]
    pub cn: Spectrum,
}

impl Spectra {
    pub fn of(g: &SimpleGraph) -> Self {
        let s = |k| spectrum(&matrix_of(g, k));
        Self { a: s(MatrixKind::A), l: s(MatrixKind::L), q: s(MatrixKind::Q), cn: s(MatrixKind::CN) }
    }

    pub fn get(&self, kind: MatrixKind) -> &Spectrum {
        match kind {
            MatrixKind::A => &self.a,
            MatrixKind::L => &self.l,
            MatrixKind::Q => &self.q,
            MatrixKind::CN => &self.cn,
        }
    }
}

/// Real number known to lie in `[lo, hi]`, exact when `exact` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: Option<BigRational>,
}

impl CertifiedReal {
    pub fn exact(v: BigRational) -> Self {
        Self { lo: v.clone(), hi: v.clone(), exact: Some(v) }
    }

    pub fn approx(&self) -> f64 {
        match &self.exact {
            Some(v) => ratio_to_f64(v),
            None => ratio_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into()))),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Decimal rounded to six places.
    pub fn decimal(&self) -> String {
        format!("{:.6}", self.approx())
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Some(v) => write!(f, "{} ({})", ratio_string(v), self.decimal()),
            None => write!(f, "≈{}", self.decimal()),
        }
    }
}

impl Serialize for CertifiedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::json!({
            "value": self.decimal(),
            "exact": self.exact.as_ref().map(ratio_string),
            "bounds": [ratio_to_f64(&self.lo), ratio_to_f64(&self.hi)],
        })
        .serialize(s)
    }
}

/// Key of an irrational term: polynomial of `|λ − s|` and the rank of the
/// root among that polynomial's real roots.
type TermKey = (IntPoly, usize);

#[derive(Clone, Debug)]
struct Term {
    mult: usize,
    lo: BigRational,
    hi: BigRational,
}

/// Energy split into an exact part in Q(√d₁, √d₂, …) and irrational terms
/// of degree three or more.
#[derive(Clone, Debug)]
pub struct EnergySum {
    rational: BigRational,
    /// Square-free `d` to the coefficient of `√d`.
    surds: BTreeMap<BigInt, BigRational>,
    terms: BTreeMap<TermKey, Term>,
}

/// Roots of one factor with their multiplicities.
type RootGroup = (Arc<IntPoly>, Vec<(IsolatedRoot, usize)>);

/// Bits used to bound `√d` for the quadratic part.
const SURD_BITS: u64 = 256;

fn sqrt_bounds(d: &BigInt) -> (BigRational, BigRational) {
    let scaled: BigInt = d << (2 * SURD_BITS);
    let root = scaled.sqrt();
    let den = BigInt::one() << SURD_BITS;
    (BigRational::new(root.clone(), den.clone()), BigRational::new(root + 1, den))
}

/// Sign of `r + c·√d` for square-free `d > 1`.
fn sign_of_surd(r: &BigRational, c: &BigRational, d: &BigInt) -> Ordering {
    let zero = BigRational::zero();
    if c.is_zero() {
        return r.cmp(&zero);
    }
    if !r.is_negative() && c.is_positive() {
        return Ordering::Greater;
    }
    if !r.is_positive() && c.is_negative() {
        return Ordering::Less;
    }
    let r2 = r * r;
    let c2d = c * c * BigRational::from_integer(d.clone());
    if r.is_positive() {
        r2.cmp(&c2d)
    } else {
        c2d.cmp(&r2)
    }
}

impl EnergySum {
    /// `Σ mult·|λ − shift|` over `spec`.
    pub fn new(spec: &Spectrum, shift: &BigRational) -> Self {
        let mut rational = BigRational::zero();
        let mut surds: BTreeMap<BigInt, BigRational> = BTreeMap::new();
        let mut terms: BTreeMap<TermKey, Term> = BTreeMap::new();
        let mut groups: Vec<RootGroup> = Vec::new();
        for e in &spec.entries {
            match &e.value {
                EigenValue::Exact(v) => {
                    rational += BigRational::from_integer(e.mult.into()) * (v - shift).abs();
                }
                EigenValue::Isolated(r) => {
                    let r = separate(r, shift);
                    match groups.iter_mut().find(|(f, _)| **f == *r.factor) {
                        Some((_, list)) => list.push((r, e.mult)),
                        None => groups.push((r.factor.clone(), vec![(r, e.mult)])),
                    }
                }
            }
        }
        for (factor, roots) in groups {
            let d = factor.degree();
            let same_mult = roots.iter().all(|(_, m)| *m == roots[0].1);
            let above = roots.iter().all(|(r, _)| r.lo() > *shift);
            let below = roots.iter().all(|(r, _)| r.hi() < *shift);
            if roots.len() == d && same_mult && (above || below) {
                // Σ roots = −c_(d−1)/c_d
                let c = factor.coeffs();
                let sum = BigRational::new(-c[d - 1].clone(), c[d].clone());
                let dev = sum - BigRational::from_integer(BigInt::from(d)) * shift;
                rational += BigRational::from_integer(roots[0].1.into()) * dev.abs();
                continue;
            }
            let count = roots.len();
            let shifted = factor.taylor_shift(shift);
            let reflected = shifted.reflect();
            for (i, (r, mult)) in roots.into_iter().enumerate() {
                if let Some(q) = r.as_surd() {
                    let m = BigRational::from_integer(mult.into());
                    let m = if r.lo() > *shift { m } else { -m };
                    rational += &m * (&q.a - shift);
                    *surds.entry(q.d.clone()).or_insert_with(BigRational::zero) += &m * &q.b;
                    continue;
                }
                let (key, lo, hi) = if r.lo() > *shift {
                    ((shifted.clone(), i), r.lo() - shift, r.hi() - shift)
                } else {
                    ((reflected.clone(), count - 1 - i), shift - r.hi(), shift - r.lo())
                };
                let t = terms.entry(key).or_insert(Term { mult: 0, lo, hi });
                t.mult += mult;
            }
        }
        surds.retain(|_, c| !c.is_zero());
        Self { rational, surds, terms }
    }

    pub fn is_exact(&self) -> bool {
        self.terms.is_empty() && self.surds.is_empty()
    }

    pub fn bounds(&self) -> (BigRational, BigRational) {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        for (d, c) in &self.surds {
            let (slo, shi) = sqrt_bounds(d);
            if c.is_positive() {
                lo += c * slo;
                hi += c * shi;
            } else {
                lo += c * shi;
                hi += c * slo;
            }
        }
        for t in self.terms.values() {
            let m = BigRational::from_integer(t.mult.into());
            lo += &m * &t.lo;
            hi += &m * &t.hi;
        }
        (lo, hi)
    }

    pub fn certified(&self) -> CertifiedReal {
        if self.is_exact() {
            return CertifiedReal::exact(self.rational.clone());
        }
        let (lo, hi) = self.bounds();
        CertifiedReal { lo, hi, exact: None }
    }

    fn same_terms(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ka, ta), (kb, tb))| ka == kb && ta.mult == tb.mult)
    }

    /// Ordering when it can be certified at the current precision.
    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.same_terms(other) {
            let r = &self.rational - &other.rational;
            let mut diff = self.surds.clone();
            for (d, c) in &other.surds {
                *diff.entry(d.clone()).or_insert_with(BigRational::zero) -= c;
            }
            diff.retain(|_, c| !c.is_zero());
            match diff.len() {
                0 => return Some(r.cmp(&BigRational::zero())),
                1 => {
                    let (d, c) = diff.iter().next().expect("one entry");
                    return Some(sign_of_surd(&r, c, d));
                }
                _ => {}
            }
        }
        let (alo, ahi) = self.bounds();
        let (blo, bhi) = other.bounds();
        if ahi < blo {
            Some(Ordering::Less)
        } else if alo > bhi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn try_cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        if self.terms.is_empty() && self.surds.len() <= 1 {
            let rest = &self.rational - r;
            return Some(match self.surds.iter().next() {
                Some((d, c)) => sign_of_surd(&rest, c, d),
                None => rest.cmp(&BigRational::zero()),
            });
        }
        let (lo, hi) = self.bounds();
        if hi < *r {
            Some(Ordering::Less)
        } else if lo > *r {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Narrows `r` until its interval excludes `shift`.
fn separate(r: &IsolatedRoot, shift: &BigRational) -> IsolatedRoot {
    let mut r = r.clone();
    let mut bits = DEFAULT_BITS;
    while r.contains(shift) {
        bits += 20;
        assert!(bits < 4096, "an irrational root cannot equal a rational shift");
        r = r.refined(bits);
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnergyKind {
    E,
    LE,
    LEPlus,
    ECN,
}

impl fmt::Display for EnergyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergyKind::E => "E",
            EnergyKind::LE => "LE",
            EnergyKind::LEPlus => "LE+",
            EnergyKind::ECN => "ECN",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnergyFlags {
    pub hypoenergetic: bool,
    pub hyperenergetic: bool,
    pub l_hyper: bool,
    pub q_hyper: bool,
    pub cn_hyper: bool,
}

/// E, LE and LE+ sorted increasingly, with ties grouped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EleChain {
    pub groups: Vec<Vec<EnergyKind>>,
}

impl EleChain {
    pub fn parse(text: &str) -> Option<Self> {
        let mut groups = Vec::new();
        for part in text.split('<') {
            let mut g = Vec::new();
            for name in part.split('=') {
                g.push(match name.trim() {
                    "E" => EnergyKind::E,
                    "LE" => EnergyKind::LE,
                    "LE+" => EnergyKind::LEPlus,
                    _ => return None,
                });
            }
            g.sort();
            groups.push(g);
        }
        Some(Self { groups })
    }

    /// Relation between two members of the chain.
    pub fn relation(&self, a: EnergyKind, b: EnergyKind) -> Option<Ordering> {
        let pos = |k| self.groups.iter().position(|g| g.contains(&k));
        Some(pos(a)?.cmp(&pos(b)?))
    }
}

impl fmt::Display for EleChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| g.iter().map(ToString::to_string).collect::<Vec<_>>().join(" = "))
            .collect();
        f.write_str(&parts.join(" < "))
    }
}

impl Serialize for EleChain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnergyReport {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "E")]
    pub e: CertifiedReal,
    #[serde(rename = "LE")]
    pub le: CertifiedReal,
    #[serde(rename = "LE+")]
    pub le_plus: CertifiedReal,
    #[serde(rename = "ECN")]
    pub ecn: CertifiedReal,
    pub flags: EnergyFlags,
    pub ordering: EleChain,
    /// `E ≤ LE`.
    pub e_le_holds: bool,
}

impl EnergyReport {
    pub fn get(&self, kind: EnergyKind) -> &CertifiedReal {
        match kind {
            EnergyKind::E => &self.e,
            EnergyKind::LE => &self.le,
            EnergyKind::LEPlus => &self.le_plus,
            EnergyKind::ECN => &self.ecn,
        }
    }
}

/// Energy sums of one graph at a fixed precision.
struct Sums {
    e: EnergySum,
    le: EnergySum,
    le_plus: EnergySum,
    ecn: EnergySum,
}

impl Sums {
    fn at(spectra: &Spectra, shift: &BigRational, bits: u32) -> Self {
        let refine = |s: &Spectrum| if bits > DEFAULT_BITS { s.refined(bits) } else { s.clone() };
        let zero = BigRational::zero();
        Self {
            e: EnergySum::new(&refine(&spectra.a), &zero),
            le: EnergySum::new(&refine(&spectra.l), shift),
            le_plus: EnergySum::new(&refine(&spectra.q), shift),
            ecn: EnergySum::new(&refine(&spectra.cn), &zero),
        }
    }

    fn get(&self, k: EnergyKind) -> &EnergySum {
        match k {
            EnergyKind::E => &self.e,
            EnergyKind::LE => &self.le,
            EnergyKind::LEPlus => &self.le_plus,
            EnergyKind::ECN => &self.ecn,
        }
    }
}

/// Energies of `g` from freshly computed spectra.
pub fn energies(g: &SimpleGraph) -> Result<EnergyReport, EnergyError> {
    energies_from_spectra(g.n(), g.edge_count(), &Spectra::of(g))
}

pub fn energies_from_spectra(
    n: usize,
    m: usize,
    spectra: &Spectra,
) -> Result<EnergyReport, EnergyError> {
    let zero = CertifiedReal::exact(BigRational::zero());
    if n <= 1 {
        return Ok(EnergyReport {
            n,
            m,
            e: zero.clone(),
            le: zero.clone(),
            le_plus: zero.clone(),
            ecn: zero,
            flags: EnergyFlags::default(),
            ordering: EleChain {
                groups: vec![vec![EnergyKind::E, EnergyKind::LE, EnergyKind::LEPlus]],
            },
            e_le_holds: true,
        });
    }
    let shift = BigRational::new(BigInt::from(2 * m), BigInt::from(n));
    let levels: Vec<Sums> = Vec::new();
    let mut cache = Precision { spectra, shift, levels };

    let nn = n as i64;
    let kn = BigRational::from_integer(BigInt::from(2 * (nn - 1)));
    let cn_base = BigRational::from_integer(BigInt::from(2 * (nn - 1) * (nn - 2)));
    let nq = BigRational::from_integer(BigInt::from(nn));

    let flags = EnergyFlags {
        hypoenergetic: cache.cmp_rational(EnergyKind::E, &nq)? == Ordering::Less,
        hyperenergetic: cache.cmp_rational(EnergyKind::E, &kn)? == Ordering::Greater,
        l_hyper: cache.cmp_rational(EnergyKind::LE, &kn)? == Ordering::Greater,
        q_hyper: cache.cmp_rational(EnergyKind::LEPlus, &kn)? == Ordering::Greater,
        cn_hyper: cache.cmp_rational(EnergyKind::ECN, &cn_base)? == Ordering::Greater,
    };

    let kinds = [EnergyKind::E, EnergyKind::LE, EnergyKind::LEPlus];
    let mut rel = BTreeMap::new();
    for (i, &a) in kinds.iter().enumerate() {
        for &b in &kinds[i + 1..] {
            rel.insert((a, b), cache.cmp(a, b)?);
        }
    }
    let ordering = chain_from(&kinds, &rel);
    let e_le_holds = rel[&(EnergyKind::E, EnergyKind::LE)] != Ordering::Greater;

    let top = &cache.levels[0];
    Ok(EnergyReport {
        n,
        m,
        e: top.e.certified(),
        le: top.le.certified(),
        le_plus: top.le_plus.certified(),
        ecn: top.ecn.certified(),
        flags,
        ordering,
        e_le_holds,
    })
}

/// Energy sums computed lazily at increasing precision.
struct Precision<'a> {
    spectra: &'a Spectra,
    shift: BigRational,
    levels: Vec<Sums>,
}

impl Precision<'_> {
    fn level(&mut self, i: usize) -> &Sums {
        while self.levels.len() <= i {
            let bits = REFINEMENT_BITS[self.levels.len()];
            self.levels.push(Sums::at(self.spectra, &self.shift, bits));
        }
        &self.levels[i]
    }

    fn cmp(&mut self, a: EnergyKind, b: EnergyKind) -> Result<Ordering, EnergyError> {
        for i in 0..REFINEMENT_BITS.len() {
            let s = self.level(i);
            if let Some(o) = s.get(a).try_cmp(s.get(b)) {
                return Ok(o);
            }
        }
        Err(EnergyError::UncertifiedComparison(format!("{a} and {b}")))
    }

    fn cmp_rational(&mut self, a: EnergyKind, r: &BigRational) -> Result<Ordering, EnergyError> {
        for i in 0..REFINEMENT_BITS.len() {
            if let Some(o) = self.level(i).get(a).try_cmp_rational(r) {
                return Ok(o);
            }
        }
        Err(EnergyError::UncertifiedComparison(format!("{a} and {}", ratio_string(r))))
    }
}

fn chain_from(kinds: &[EnergyKind], rel: &BTreeMap<(EnergyKind, EnergyKind), Ordering>) -> EleChain {
    let cmp = |a: EnergyKind, b: EnergyKind| -> Ordering {
        if a == b {
            Ordering::Equal
        } else if let Some(o) = rel.get(&(a, b)) {
            *o
        } else {
            rel[&(b, a)].reverse()
        }
    };
    let mut sorted = kinds.to_vec();
    sorted.sort_by(|&a, &b| cmp(a, b).then(a.cmp(&b)));
    let mut groups: Vec<Vec<EnergyKind>> = Vec::new();
    for k in sorted {
        match groups.last_mut() {
            Some(g) if cmp(g[0], k) == Ordering::Equal => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    EleChain { groups }
}

/// `Σ|λ|` of a spectrum, certified.
pub fn absolute_sum(spec: &Spectrum) -> CertifiedReal {
    EnergySum::new(spec, &BigRational::zero()).certified()
}
