//! Exact spectra of integer symmetric matrices.
//!
//! The pipeline strips integer roots from the characteristic polynomial by a
//! bounded sieve with exact deflation, splits the rest into square-free parts
//! (each part's exponent is the multiplicity of its roots), factors each part
//! where a numeric-guided search can prove a factorization, and isolates the
//! remaining real roots with Sturm sequences.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::charpoly::{char_poly, MatrixKind, SymMatrix};
use crate::exact::{ratio_string, ratio_to_f64};
use crate::graph::{Component, ShapeDescriptor};
use crate::poly::{isolate_real_roots, refine_interval, Dyadic, IntPoly, RealRoot};

/// Isolating intervals are refined to width at most `2^-DEFAULT_BITS`.
pub const DEFAULT_BITS: u32 = 40;
/// Above this Fujiwara bound the integer sieve is skipped.
const SIEVE_LIMIT: u64 = 1 << 22;
/// Largest square-free part that gets a factor search.
const FACTOR_SEARCH_DEGREE: usize = 24;
/// Largest factor degree tried by the subset search.
const FACTOR_SUBSET_MAX: usize = 4;
const SIEVE_PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("no closed form for component {0}")]
    UnsupportedComponent(String),
}

/// Real root of `factor` inside the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub factor: Arc<IntPoly>,
    /// True when `factor` is proven irreducible over Q.
    pub irreducible: bool,
}

impl IsolatedRoot {
    pub fn lo(&self) -> BigRational {
        self.lo.to_rational()
    }

    pub fn hi(&self) -> BigRational {
        self.hi.to_rational()
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }

    pub fn midpoint(&self) -> BigRational {
        (self.lo() + self.hi()) / BigRational::from_integer(2.into())
    }

    pub fn approx(&self) -> f64 {
        ratio_to_f64(&self.midpoint())
    }

    /// Same root narrowed to width at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> Self {
        match refine_interval(&self.factor, self.lo.clone(), self.hi.clone(), bits) {
            RealRoot::Interval { lo, hi } => Self { lo, hi, ..self.clone() },
            // The factor has no rational roots, so bisection never lands on one.
            RealRoot::Exact(_) => unreachable!("isolated roots are irrational"),
        }
    }

    /// Whether `x` lies in the closed interval.
    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo() <= *x && *x <= self.hi()
    }

    /// The root as a quadratic surd when its factor is quadratic.
    pub fn as_surd(&self) -> Option<QuadraticSurd> {
        if self.factor.degree() != 2 {
            return None;
        }
        let c = self.factor.coeffs();
        let (a, b, cc) = (&c[2], &c[1], &c[0]);
        let disc = b * b - BigInt::from(4) * a * cc;
        let two_a = BigInt::from(2) * a;
        let base = BigRational::new(-b, two_a.clone());
        let plus = QuadraticSurd::new(base.clone(), BigRational::new(BigInt::one(), two_a.clone()), disc.clone());
        let minus = QuadraticSurd::new(base, BigRational::new(-BigInt::one(), two_a), disc);
        [plus, minus].into_iter().find(|s| s.lies_in(&self.lo(), &self.hi()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenValue {
    Exact(BigRational),
    Isolated(IsolatedRoot),
}

impl EigenValue {
    pub fn approx(&self) -> f64 {
        match self {
            EigenValue::Exact(r) => ratio_to_f64(r),
            EigenValue::Isolated(i) => i.approx(),
        }
    }

    fn sort_key(&self) -> BigRational {
        match self {
            EigenValue::Exact(r) => r.clone(),
            EigenValue::Isolated(i) => i.midpoint(),
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            EigenValue::Exact(r) => Some(r),
            EigenValue::Isolated(_) => None,
        }
    }
}

impl fmt::Display for EigenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenValue::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            EigenValue::Exact(r) => write!(f, "{}", ratio_string(r)),
            EigenValue::Isolated(i) => match i.as_surd() {
                Some(s) => write!(f, "{s}"),
                None => write!(f, "root of {} ≈ {:.6}", i.factor, i.approx()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: EigenValue,
    pub mult: usize,
}

impl Serialize for SpectrumEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        match &self.value {
            EigenValue::Exact(r) => map.serialize_entry("value", &ratio_string(r))?,
            EigenValue::Isolated(i) => {
                let factor: Vec<serde_json::Value> =
                    i.factor.coeffs_high().iter().map(int_json).collect();
                let v = serde_json::json!({
                    "interval": [ratio_string(&i.lo()), ratio_string(&i.hi())],
                    "factor": factor,
                });
                map.serialize_entry("value", &v)?;
            }
        }
        map.serialize_entry("mult", &self.mult)?;
        map.serialize_entry("approx", &format!("{:.6}", self.value.approx()))?;
        map.end()
    }
}

fn int_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

/// Eigenvalues with multiplicities, in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.mult).sum()
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.value, EigenValue::Exact(_)))
    }

    /// Multiplicity of an exact rational eigenvalue (0 when absent).
    pub fn mult_of(&self, v: &BigRational) -> usize {
        self.entries
            .iter()
            .filter(|e| e.value.exact() == Some(v))
            .map(|e| e.mult)
            .sum()
    }

    /// Rational eigenvalues as `(value, mult)`.
    pub fn rational_part(&self) -> Vec<(BigRational, usize)> {
        self.entries
            .iter()
            .filter_map(|e| e.value.exact().map(|v| (v.clone(), e.mult)))
            .collect()
    }

    /// Distinct factors of the irrational eigenvalues.
    pub fn factors(&self) -> Vec<Arc<IntPoly>> {
        let mut out: Vec<Arc<IntPoly>> = Vec::new();
        for e in &self.entries {
            if let EigenValue::Isolated(i) = &e.value {
                if !out.iter().any(|f| **f == *i.factor) {
                    out.push(i.factor.clone());
                }
            }
        }
        out
    }

    /// Multiplicity of the root of `factor` that equals the surd `s`, if the
    /// spectrum holds it.
    pub fn mult_of_surd(&self, s: &QuadraticSurd) -> usize {
        self.entries
            .iter()
            .filter(|e| match &e.value {
                EigenValue::Exact(r) => s.as_rational().as_ref() == Some(r),
                EigenValue::Isolated(i) => {
                    s.as_rational().is_none()
                        && *i.factor == s.minimal_poly()
                        && s.lies_in(&i.lo(), &i.hi())
                }
            })
            .map(|e| e.mult)
            .sum()
    }

    /// Copy with every interval narrowed to width at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|e| SpectrumEntry {
                    value: match &e.value {
                        EigenValue::Isolated(i) => EigenValue::Isolated(i.refined(bits)),
                        v => v.clone(),
                    },
                    mult: e.mult,
                })
                .collect(),
        }
    }

    /// Interval enclosing `Σ mult·value`.
    pub fn trace_bounds(&self) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for e in &self.entries {
            let m = BigRational::from_integer(e.mult.into());
            match &e.value {
                EigenValue::Exact(r) => {
                    lo += &m * r;
                    hi += &m * r;
                }
                EigenValue::Isolated(i) => {
                    lo += &m * i.lo();
                    hi += &m * i.hi();
                }
            }
        }
        (lo, hi)
    }

    /// Same multiplicities, equal rational values, and for irrational values
    /// the same factor with overlapping intervals.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| {
                a.mult == b.mult
                    && match (&a.value, &b.value) {
                        (EigenValue::Exact(x), EigenValue::Exact(y)) => x == y,
                        (EigenValue::Isolated(x), EigenValue::Isolated(y)) => {
                            x.factor == y.factor && x.lo() <= y.hi() && y.lo() <= x.hi()
                        }
                        _ => false,
                    }
            })
    }

    fn from_parts(mut parts: Vec<SpectrumEntry>) -> Self {
        parts.sort_by_key(|a| a.value.sort_key());
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        for p in parts {
            if let Some(last) = entries.last_mut() {
                let same = match (&last.value, &p.value) {
                    (EigenValue::Exact(x), EigenValue::Exact(y)) => x == y,
                    (EigenValue::Isolated(x), EigenValue::Isolated(y)) => {
                        x.factor == y.factor && x.lo() <= y.hi() && y.lo() <= x.hi()
                    }
                    _ => false,
                };
                if same {
                    last.mult += p.mult;
                    continue;
                }
            }
            entries.push(p);
        }
        Self { entries }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({})^{}", e.value, e.mult)?;
        }
        write!(f, "}}")
    }
}

pub fn spectrum(m: &SymMatrix) -> Spectrum {
    spectrum_of_char_poly(&char_poly(m))
}

/// Spectrum read off a monic integer polynomial whose roots are all real.
pub fn spectrum_of_char_poly(cp: &IntPoly) -> Spectrum {
    assert!(cp.is_monic(), "characteristic polynomials are monic");
    let mut parts = Vec::new();
    let mut rest = cp.clone();

    let mut zero_mult = 0;
    while rest.degree() > 0 && rest.coeff(0).is_zero() {
        rest = IntPoly::new(rest.coeffs()[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        parts.push(SpectrumEntry { value: EigenValue::Exact(BigRational::zero()), mult: zero_mult });
    }

    if rest.degree() > 0 {
        let bound = rest.fujiwara_bound();
        if bound <= BigInt::from(SIEVE_LIMIT) {
            let b = bound.to_i64().expect("bounded by the sieve limit");
            let (found, residual) = integer_roots(&rest, b);
            for (r, mult) in found {
                parts.push(SpectrumEntry { value: EigenValue::Exact(BigRational::from_integer(r)), mult });
            }
            rest = residual;
        }
    }

    for (i, part) in rest.square_free_decomposition().into_iter().enumerate() {
        if part.degree() == 0 {
            continue;
        }
        let mult = i + 1;
        for root in isolate_factored(&part) {
            parts.push(SpectrumEntry { value: root, mult });
        }
    }
    Spectrum::from_parts(parts)
}

/// Integer roots in `[−b, b]` with multiplicities, and the deflated residual.
fn integer_roots(p: &IntPoly, b: i64) -> (Vec<(BigInt, usize)>, IntPoly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    let prime = BigInt::from(SIEVE_PRIME);
    let residues: Vec<u64> = p
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&prime).to_u64().expect("residue fits"))
        .collect();
    let eval_mod = |t: i64| -> u64 {
        let x = t.rem_euclid(SIEVE_PRIME as i64) as u64;
        residues.iter().rev().fold(0u64, |acc, &c| {
            ((u128::from(acc) * u128::from(x) + u128::from(c)) % u128::from(SIEVE_PRIME)) as u64
        })
    };
    let constant = p.coeff(0);
    for t in -b..=b {
        if rest.degree() == 0 {
            break;
        }
        if t == 0 || eval_mod(t) != 0 || !(&constant % t).is_zero() {
            continue;
        }
        let tb = BigInt::from(t);
        let mut mult = 0;
        while let Some(q) = rest.deflate_root(&tb) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((tb, mult));
        }
    }
    (found, rest)
}

/// Splits a square-free monic polynomial into factors and isolates the roots
/// of each, annotating every root with its factor.
fn isolate_factored(part: &IntPoly) -> Vec<EigenValue> {
    let root_bits = root_bound_bits(part);
    let bits = DEFAULT_BITS.max(64 + 4 * root_bits);
    let roots = isolate_real_roots(part, bits);
    let mut out = Vec::new();

    let mut exact = Vec::new();
    let mut intervals = Vec::new();
    for r in roots {
        match r {
            RealRoot::Exact(v) => exact.push(v),
            RealRoot::Interval { lo, hi } => intervals.push((lo, hi)),
        }
    }
    let mut rest = part.clone();
    for v in &exact {
        let lin = crate::poly::rational_to_primitive(&[-v.clone(), BigRational::one()]);
        rest = rest.div_exact(&lin).expect("exact root divides");
        out.push(EigenValue::Exact(v.clone()));
    }
    if rest.degree() == 0 {
        return out;
    }

    let all_real = intervals.len() == rest.degree();
    let factors = if rest.is_monic() && all_real && rest.degree() <= FACTOR_SEARCH_DEGREE {
        factor_by_roots(&rest, &intervals)
    } else {
        // No search: only degree 2 and 3 without rational roots are provably irreducible.
        vec![(rest.clone(), (0..intervals.len()).collect(), rest.degree() <= 3)]
    };
    for (factor, idx, irreducible) in factors {
        let factor = Arc::new(factor);
        for i in idx {
            let (lo, hi) = intervals[i].clone();
            let root = IsolatedRoot { lo, hi, factor: factor.clone(), irreducible };
            out.push(EigenValue::Isolated(root));
        }
    }
    out
}

fn root_bound_bits(p: &IntPoly) -> u32 {
    p.root_bound().bits() as u32
}

/// Numeric-guided factor search. Returns `(factor, root indices, irreducible)`.
fn factor_by_roots(
    p: &IntPoly,
    intervals: &[(Dyadic, Dyadic)],
) -> Vec<(IntPoly, Vec<usize>, bool)> {
    let mids: Vec<BigRational> = intervals
        .iter()
        .map(|(lo, hi)| (lo.to_rational() + hi.to_rational()) / BigRational::from_integer(2.into()))
        .collect();
    let approx: Vec<f64> = mids.iter().map(ratio_to_f64).collect();

    let mut out = Vec::new();
    let mut remaining: Vec<usize> = (0..intervals.len()).collect();
    let mut rest = p.clone();
    'search: loop {
        let d = remaining.len();
        let max_k = FACTOR_SUBSET_MAX.min(d / 2);
        for k in 2..=max_k {
            let mut found = None;
            for_each_subset(d, k, &mut |subset| {
                let idx: Vec<usize> = subset.iter().map(|&s| remaining[s]).collect();
                if let Some(f) = candidate_factor(&idx, &approx, &mids) {
                    if let Some(q) = rest.div_exact(&f) {
                        found = Some((f, idx, q));
                        return true;
                    }
                }
                false
            });
            if let Some((f, idx, q)) = found {
                remaining.retain(|i| !idx.contains(i));
                out.push((f, idx, true));
                rest = q;
                continue 'search;
            }
        }
        // No factor of degree ≤ max_k: irreducible when any split would need one.
        let proven = d <= 3 || d <= 2 * FACTOR_SUBSET_MAX + 1;
        out.push((rest, remaining, proven));
        break;
    }
    out
}

/// Monic polynomial with the given roots, rounded to integers, when the
/// floating-point product is plausibly integral.
fn candidate_factor(idx: &[usize], approx: &[f64], mids: &[BigRational]) -> Option<IntPoly> {
    let sum: f64 = idx.iter().map(|&i| approx[i]).sum();
    let scale: f64 = idx.iter().map(|&i| 1.0 + approx[i].abs()).product();
    let tol = 1e-6_f64.max(1e-9 * scale);
    if scale < 1e12 && (sum - sum.round()).abs() > tol {
        return None;
    }
    let mut fc = vec![1.0f64];
    for &i in idx {
        let mut next = vec![0.0; fc.len() + 1];
        for (j, &c) in fc.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * approx[i];
        }
        fc = next;
    }
    if scale < 1e12 && fc.iter().any(|c| (c - c.round()).abs() > tol) {
        return None;
    }
    let mut exact = vec![BigRational::one()];
    for &i in idx {
        let mut next = vec![BigRational::zero(); exact.len() + 1];
        for (j, c) in exact.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &mids[i];
        }
        exact = next;
    }
    Some(IntPoly::new(exact.iter().map(BigRational::round).map(|r| r.to_integer()).collect()))
}

/// Calls `f` on each k-subset of `0..n` in lexicographic order until it
/// returns true.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact number `a + b·√d` with `d` square-free and greater than 1, or a
/// rational when `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadraticSurd {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "real surds only");
        // Pull square factors out of d.
        let (mut outside, mut inside) = (BigInt::one(), d);
        let mut f = BigInt::from(2);
        while &f * &f <= inside {
            while (&inside % (&f * &f)).is_zero() {
                inside /= &f * &f;
                outside *= &f;
            }
            f += 1;
        }
        let mut b = b * BigRational::from_integer(outside);
        let mut a = a;
        if inside.is_one() {
            a += &b;
            b = BigRational::zero();
        }
        if inside.is_zero() {
            b = BigRational::zero();
        }
        if b.is_zero() {
            inside = BigInt::zero();
        }
        Self { a, b, d: inside }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), d: BigInt::zero() }
    }

    /// `(p + s·√d) / q` with small integers.
    pub fn from_ints(p: i64, s: i64, d: i64, q: i64) -> Self {
        Self::new(
            BigRational::new(p.into(), q.into()),
            BigRational::new(s.into(), q.into()),
            d.into(),
        )
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    /// Primitive integer polynomial of least degree with this root.
    pub fn minimal_poly(&self) -> IntPoly {
        if self.b.is_zero() {
            return crate::poly::rational_to_primitive(&[-self.a.clone(), BigRational::one()]);
        }
        // (x − a)² − b²d
        let c0 = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone());
        let c1 = -BigRational::from_integer(2.into()) * &self.a;
        crate::poly::rational_to_primitive(&[c0, c1, BigRational::one()])
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        // a + b√d ? r  ⇔  b√d ? r − a
        let rhs = r - &self.a;
        if self.b.is_zero() {
            return BigRational::zero().cmp(&rhs);
        }
        let lhs_sign = self.b.is_positive();
        match (lhs_sign, rhs.is_negative() || rhs.is_zero()) {
            (true, true) => Ordering::Greater,
            (false, false) => Ordering::Less,
            _ => {
                let l2 = &self.b * &self.b * BigRational::from_integer(self.d.clone());
                let r2 = &rhs * &rhs;
                if lhs_sign {
                    l2.cmp(&r2)
                } else {
                    r2.cmp(&l2)
                }
            }
        }
    }

    /// Whether `lo ≤ self ≤ hi`.
    pub fn lies_in(&self, lo: &BigRational, hi: &BigRational) -> bool {
        self.cmp_rational(lo) != Ordering::Less && self.cmp_rational(hi) != Ordering::Greater
    }

    pub fn approx(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Spectrum value: exact when rational, otherwise an isolated root of the
    /// minimal polynomial.
    pub fn to_eigenvalue(&self) -> EigenValue {
        if let Some(r) = self.as_rational() {
            return EigenValue::Exact(r);
        }
        let f = self.minimal_poly();
        let idx = if self.b.is_positive() { 1 } else { 0 };
        match isolate_real_roots(&f, DEFAULT_BITS).swap_remove(idx) {
            RealRoot::Interval { lo, hi } => {
                EigenValue::Isolated(IsolatedRoot { lo, hi, factor: Arc::new(f), irreducible: true })
            }
            RealRoot::Exact(_) => unreachable!("irrational surd"),
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let q = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * BigRational::from_integer(q.clone())).to_integer();
        let s = (&self.b * BigRational::from_integer(q.clone())).to_integer();
        let sign = if s.is_negative() { '-' } else { '+' };
        let coeff = if s.abs().is_one() { String::new() } else { s.abs().to_string() };
        let body = if p.is_zero() {
            format!("{}{coeff}√{}", if s.is_negative() { "-" } else { "" }, self.d)
        } else {
            format!("{p}{sign}{coeff}√{}", self.d)
        };
        if q.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{q}")
        }
    }
}

fn exact(v: i64) -> EigenValue {
    EigenValue::Exact(BigRational::from_integer(v.into()))
}

fn entry(value: EigenValue, mult: usize) -> Option<SpectrumEntry> {
    (mult > 0).then_some(SpectrumEntry { value, mult })
}

/// Spectrum assembled from per-component closed forms.
pub fn closed_form_spectrum(
    shape: &ShapeDescriptor,
    kind: MatrixKind,
) -> Result<Spectrum, SpectrumError> {
    let mut parts = Vec::new();
    for (c, &copies) in &shape.components {
        for e in component_spectrum(c, kind)? {
            parts.push(SpectrumEntry { value: e.value, mult: e.mult * copies });
        }
    }
    Ok(Spectrum::from_parts(parts))
}

fn component_spectrum(c: &Component, kind: MatrixKind) -> Result<Vec<SpectrumEntry>, SpectrumError> {
    let list = match *c {
        Component::Clique(k) => {
            let k = k as i64;
            let rest = (k - 1) as usize;
            match kind {
                MatrixKind::A => vec![entry(exact(k - 1), 1), entry(exact(-1), rest)],
                MatrixKind::L => vec![entry(exact(0), 1), entry(exact(k), rest)],
                MatrixKind::Q => vec![entry(exact(2 * k - 2), 1), entry(exact(k - 2), rest)],
                MatrixKind::CN => {
                    vec![entry(exact((k - 1) * (k - 2)), 1), entry(exact(-(k - 2)), rest)]
                }
            }
        }
        Component::Friendship(m) => {
            let mi = m as i64;
            match kind {
                MatrixKind::A => vec![
                    entry(QuadraticSurd::from_ints(1, 1, 8 * mi + 1, 2).to_eigenvalue(), 1),
                    entry(QuadraticSurd::from_ints(1, -1, 8 * mi + 1, 2).to_eigenvalue(), 1),
                    entry(exact(1), m - 1),
                    entry(exact(-1), m),
                ],
                MatrixKind::L => vec![
                    entry(exact(0), 1),
                    entry(exact(2 * mi + 1), 1),
                    entry(exact(3), m),
                    entry(exact(1), m - 1),
                ],
                MatrixKind::Q => {
                    let disc = 4 * mi * mi - 4 * mi + 9;
                    vec![
                        entry(exact(1), m),
                        entry(exact(3), m - 1),
                        entry(QuadraticSurd::from_ints(2 * mi + 3, 1, disc, 2).to_eigenvalue(), 1),
                        entry(QuadraticSurd::from_ints(2 * mi + 3, -1, disc, 2).to_eigenvalue(), 1),
                    ]
                }
                MatrixKind::CN => vec![entry(exact(2 * mi), 1), entry(exact(-1), 2 * m)],
            }
        }
        ref other => return Err(SpectrumError::UnsupportedComponent(other.to_string())),
    };
    Ok(list.into_iter().flatten().collect())
}

/// Parses a surd written as `(p ± s√d)/q`, `p ± s√d`, or a plain rational.
pub fn parse_surd(text: &str) -> Option<QuadraticSurd> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (body, q) = match t.rsplit_once(")/") {
        Some((b, q)) => (b.strip_prefix('(')?.to_string(), q.parse::<i64>().ok()?),
        None => (t.clone(), 1),
    };
    let Some(root_at) = body.find('√') else {
        let r = crate::exact::parse_ratio(&body)?;
        return Some(QuadraticSurd::rational(r / BigRational::from_integer(q.into())));
    };
    let d: i64 = body[root_at + '√'.len_utf8()..].parse().ok()?;
    let head = &body[..root_at];
    // head is "p+s", "p-s", "p+", "p-", "s", "-" or empty
    let split = head.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last();
    let (p, s) = match split {
        Some((i, _)) => (head[..i].parse::<i64>().ok()?, &head[i..]),
        None => (0, head),
    };
    let s = match s {
        "" | "+" => 1,
        "-" => -1,
        s => s.parse::<i64>().ok()?,
    };
    Some(QuadraticSurd::from_ints(p, s, d, q))
}

/// Integer square root when `v` is a perfect square.
pub fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}
