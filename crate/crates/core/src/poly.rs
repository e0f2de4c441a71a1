//! Dense polynomials over Z with the exact algorithms the spectrum needs:
//! gcd by primitive remainder sequences, square-free decomposition, Sturm
//! sequences and dyadic root isolation.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients stored lowest degree first with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients given highest degree first, as usually written.
    pub fn from_high(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    /// `x − r`.
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Coefficients highest degree first.
    pub fn coeffs_high(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Divides by the positive content only, keeping the sign.
    fn sign_preserving_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Value at `x` modulo a prime `p < 2^63`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            let c = c.mod_floor(&pb);
            let c = u64::try_from(c).expect("residue fits");
            acc = ((u128::from(acc) * u128::from(x) + u128::from(c)) % u128::from(p)) as u64;
        }
        acc
    }

    /// Sign of `self(num / 2^exp)`.
    pub fn sign_at_dyadic(&self, x: &Dyadic) -> Sign {
        if self.is_zero() {
            return Sign::NoSign;
        }
        let d = self.degree();
        let mut h = self.coeffs[d].clone();
        for i in (0..d).rev() {
            h = h * &x.num + (&self.coeffs[i] << (x.exp as usize * (d - i)));
        }
        h.sign()
    }

    /// Sign of `self(x)` at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> Sign {
        let v = self.eval(x);
        if v.is_zero() {
            Sign::NoSign
        } else if v.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Quotient and remainder by `d`, exact over Z. Returns `None` when the
    /// division is not exact in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Divides by `x − r` when `r` is a root, by synthetic division.
    pub fn deflate_root(&self, r: &BigInt) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.degree();
        let mut q = vec![BigInt::zero(); d];
        let mut acc = BigInt::zero();
        for i in (0..=d).rev() {
            acc = acc * r + &self.coeffs[i];
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        acc.is_zero().then(|| Self::new(q))
    }

    /// Pseudo-remainder scaled by `|lc(b)|^(deg a − deg b + 1)`, so its sign
    /// agrees with the true remainder.
    pub fn signed_pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return self.clone();
        }
        let lc = b.leading();
        let lc_abs = lc.abs();
        let db = b.degree();
        let mut r = self.coeffs.clone();
        let mut steps = self.degree() - db + 1;
        while r.len() > db && !r.is_empty() {
            let top = r.pop().expect("non-empty");
            let shift = r.len() - db;
            // r·|lc| − top·sgn(lc)·b·x^shift
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            let t = if lc.is_negative() { -top } else { top };
            for (j, bc) in b.coeffs[..db].iter().enumerate() {
                r[shift + j] -= &t * bc;
            }
            steps -= 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
        }
        let mut out = Self::new(r);
        if steps > 0 {
            out = out.scale(&lc_abs.pow(steps as u32));
        }
        out
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Yun's square-free decomposition of a primitive polynomial:
    /// `self = Π parts[i]^(i+1)` up to sign, each part square-free.
    pub fn square_free_decomposition(&self) -> Vec<Self> {
        let f = self.primitive();
        if f.degree() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides f").primitive();
        // a0 is primitive, so division that is exact over Q is exact over Z.
        let mut c = df.div_exact(&a0).expect("gcd divides f'");
        let mut d = c.sub(&b.derivative());
        let mut parts = Vec::new();
        while b.degree() > 0 {
            let a = b.gcd(&d);
            parts.push(a.clone());
            let nb = b.div_exact(&a).expect("gcd divides b");
            c = d.div_exact(&a).expect("gcd divides d");
            d = c.sub(&nb.derivative());
            b = nb;
        }
        while parts.last().is_some_and(|p| p.degree() == 0) {
            parts.pop();
        }
        parts
    }

    /// Sturm sequence of a square-free polynomial.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].degree() == 0 {
                break;
            }
            let r = seq[n - 2].signed_pseudo_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg().sign_preserving_primitive());
        }
        seq
    }

    /// Upper bound on the absolute value of every complex root (Cauchy).
    pub fn root_bound(&self) -> BigInt {
        let lc = self.leading().abs();
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default();
        Integer::div_ceil(&max, &lc) + 1
    }

    /// Fujiwara bound `2·max |a_(n−i)/a_n|^(1/i)` for a monic polynomial,
    /// rounded up to an integer.
    pub fn fujiwara_bound(&self) -> BigInt {
        assert!(self.is_monic(), "Fujiwara bound is computed for monic polynomials");
        let n = self.degree();
        let mut best = BigInt::zero();
        for i in 1..=n {
            let mut c = self.coeffs[n - i].abs();
            if i == n {
                c = Integer::div_ceil(&c, &BigInt::from(2));
            }
            best = best.max(ceil_root(&c, i as u32));
        }
        best * 2
    }

    /// `self(x + s)` made primitive, for rational `s`.
    pub fn taylor_shift(&self, s: &BigRational) -> Self {
        let mut acc: Vec<BigRational> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc = acc·(x + s) + c
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] += a;
                next[i] += a * s;
            }
            next[0] += BigRational::from_integer(c.clone());
            acc = next;
        }
        rational_to_primitive(&acc)
    }

    /// `self(−x)` made primitive.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
        .primitive()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Clears denominators and returns the primitive integer polynomial.
pub fn rational_to_primitive(coeffs: &[BigRational]) -> IntPoly {
    let l = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    IntPoly::new(coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect())
        .primitive()
}

/// Smallest integer `r ≥ 0` with `r^k ≥ x`.
pub fn ceil_root(x: &BigInt, k: u32) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let r = x.nth_root(k);
    if r.pow(k) < *x {
        r + 1
    } else {
        r
    }
}

/// Number `num / 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: u32,
}

impl Dyadic {
    pub fn integer(v: BigInt) -> Self {
        Self { num: v, exp: 0 }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp as usize)
    }

    fn at_exp(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp) as usize
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let e = self.exp.max(other.exp) + 1;
        let s = self.at_exp(e - 1) + other.at_exp(e - 1);
        Self { num: s, exp: e }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.exp > 0 && self.num.is_even() {
            self.num >>= 1;
            self.exp -= 1;
        }
        self
    }
}

/// Sign variations of a Sturm sequence at a dyadic point, zeros skipped.
pub fn sign_variations(seq: &[IntPoly], x: &Dyadic) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at_dyadic(x);
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// A real root located either exactly or inside `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(BigRational),
    Interval { lo: Dyadic, hi: Dyadic },
}

/// Isolates every real root of a square-free polynomial and refines each
/// interval to width at most `2^-bits`. Roots come out in increasing order.
pub fn isolate_real_roots(p: &IntPoly, bits: u32) -> Vec<RealRoot> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let seq = p.sturm_sequence();
    let bound = p.root_bound();
    let mut k = 0u32;
    while (BigInt::one() << k as usize) <= bound {
        k += 1;
    }
    let lo = Dyadic::integer(-(BigInt::one() << k as usize));
    let hi = Dyadic::integer(BigInt::one() << k as usize);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    // Depth-first with the right half pushed first keeps output ascending.
    while let Some((a, b)) = stack.pop() {
        let count = sign_variations(&seq, &a) - sign_variations(&seq, &b);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(refine_interval(p, a, b, bits));
            continue;
        }
        let m = a.midpoint(&b);
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out
}

/// Narrows an interval `(a, b]` containing exactly one simple root of `p`.
pub fn refine_interval(p: &IntPoly, mut a: Dyadic, mut b: Dyadic, bits: u32) -> RealRoot {
    let mut sb = p.sign_at_dyadic(&b);
    if sb == Sign::NoSign {
        return RealRoot::Exact(b.to_rational());
    }
    loop {
        let width_exp = a.exp.max(b.exp);
        let width = b.at_exp(width_exp) - a.at_exp(width_exp);
        // width / 2^width_exp <= 2^-bits
        if (width << bits as usize) <= (BigInt::one() << width_exp as usize) {
            return RealRoot::Interval { lo: a, hi: b };
        }
        let m = a.midpoint(&b);
        let sm = p.sign_at_dyadic(&m);
        if sm == Sign::NoSign {
            return RealRoot::Exact(m.to_rational());
        }
        if sm != sb {
            a = m;
        } else {
            b = m;
            sb = sm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_high(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, 0, -1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[1, -1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        assert_eq!(a.to_string(), "x^2 - 1");
        assert_eq!(p(&[1, -60, -472, 288]).to_string(), "x^3 - 60x^2 - 472x + 288");
        assert_eq!(b.mul(&b), p(&[1, 2, 1]));
        assert_eq!(p(&[1, -3, -2]).derivative(), p(&[2, -3]));
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-2)(x+1)^2
        let f = p(&[1, 0, -3, -2]);
        assert_eq!(f.gcd(&f.derivative()), p(&[1, 1]));
        let parts = f.square_free_decomposition();
        assert_eq!(parts, vec![p(&[1, -2]), p(&[1, 1])]);
        // x^2 (x^2 - 2)^3 (x - 5)
        let g = p(&[1, 0]).pow(2).mul(&p(&[1, 0, -2]).pow(3)).mul(&p(&[1, -5]));
        let parts = g.square_free_decomposition();
        assert_eq!(parts, vec![p(&[1, -5]), p(&[1, 0]), p(&[1, 0, -2])]);
    }

    #[test]
    fn square_free_with_content() {
        // 4(x - 1/2)^2 = (2x - 1)^2
        let f = p(&[4, -4, 1]);
        assert_eq!(f.square_free_decomposition(), vec![IntPoly::one(), p(&[2, -1])]);
    }

    #[test]
    fn pseudo_remainder_sign() {
        let a = p(&[1, 0, 0, 0]);
        let b = p(&[-2, 1]);
        // x^3 mod (1 - 2x): remainder at x = 1/2 is 1/8 > 0
        let r = a.signed_pseudo_rem(&b);
        assert_eq!(r.degree(), 0);
        assert!(r.leading().is_positive());
    }

    #[test]
    fn isolates_sqrt2() {
        let roots = isolate_real_roots(&p(&[1, 0, -2]), 40);
        assert_eq!(roots.len(), 2);
        match &roots[1] {
            RealRoot::Interval { lo, hi } => {
                let (l, h) = (lo.to_rational(), hi.to_rational());
                assert!(&l * &l < BigRational::from_integer(2.into()));
                assert!(&h * &h > BigRational::from_integer(2.into()));
                assert!(h - l <= BigRational::new(1.into(), BigInt::one() << 40));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isolates_close_roots_and_exact_dyadics() {
        let f = p(&[4, -8, 3]); // roots 1/2, 3/2
        let roots = isolate_real_roots(&f, 40);
        assert_eq!(
            roots,
            vec![
                RealRoot::Exact(BigRational::new(1.into(), 2.into())),
                RealRoot::Exact(BigRational::new(3.into(), 2.into()))
            ]
        );
        let cubic = p(&[1, -60, -472, 288]);
        assert_eq!(isolate_real_roots(&cubic, 40).len(), 3);
    }

    #[test]
    fn bounds() {
        let f = p(&[1, -60, -472, 288]);
        assert!(f.fujiwara_bound() >= BigInt::from(68));
        assert_eq!(ceil_root(&BigInt::from(9), 2), BigInt::from(3));
        assert_eq!(ceil_root(&BigInt::from(10), 2), BigInt::from(4));
    }

    #[test]
    fn shifts() {
        let f = p(&[1, 0, -2]);
        // (x + 1)^2 - 2
        assert_eq!(f.taylor_shift(&BigRational::from_integer(1.into())), p(&[1, 2, -1]));
        // (x + 1/2)^2 - 2 = x^2 + x - 7/4 -> 4x^2 + 4x - 7
        assert_eq!(f.taylor_shift(&BigRational::new(1.into(), 2.into())), p(&[4, 4, -7]));
        assert_eq!(p(&[1, -1, 3]).reflect(), p(&[1, 1, 3]));
        assert_eq!(p(&[1, 0, -3, -2]).eval_mod(2, 1_000_003), 0);
    }
}
