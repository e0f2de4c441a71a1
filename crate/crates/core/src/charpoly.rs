//! Graph matrices and exact characteristic polynomials.
//!
//! The characteristic polynomial is computed modulo several 62-bit primes by
//! Hessenberg reduction and recombined with the Chinese remainder theorem.
//! Enough primes are used that their product exceeds twice the bound
//! `(1 + R)^n` on every coefficient, where `R` is the largest absolute row
//! sum, so the symmetric residue is the true integer coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;
use crate::poly::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixKind {
    /// Adjacency.
    A,
    /// Laplacian `D − A`.
    L,
    /// Signless Laplacian `D + A`.
    Q,
    /// Common-neighbourhood counts off the diagonal.
    CN,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 4] = [MatrixKind::A, MatrixKind::L, MatrixKind::Q, MatrixKind::CN];
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::A => "A",
            MatrixKind::L => "L",
            MatrixKind::Q => "Q",
            MatrixKind::CN => "CN",
        })
    }
}

/// Symmetric integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl SymMatrix {
    /// Panics unless `entries` is a symmetric `n × n` array.
    pub fn new(n: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count");
        for i in 0..n {
            for j in 0..i {
                assert_eq!(entries[i * n + j], entries[j * n + i], "matrix is not symmetric");
            }
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_row_sum(&self) -> u64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).unsigned_abs()).sum::<u64>())
            .max()
            .unwrap_or(0)
    }
}

pub fn matrix_of(g: &SimpleGraph, kind: MatrixKind) -> SymMatrix {
    let n = g.n();
    let mut e = vec![0i64; n * n];
    match kind {
        MatrixKind::A | MatrixKind::L | MatrixKind::Q => {
            let off = if kind == MatrixKind::L { -1 } else { 1 };
            for (u, v) in g.edges() {
                e[u * n + v] = if kind == MatrixKind::A { 1 } else { off };
                e[v * n + u] = e[u * n + v];
            }
            if kind != MatrixKind::A {
                for v in 0..n {
                    e[v * n + v] = g.degree(v) as i64;
                }
            }
        }
        MatrixKind::CN => {
            let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
            for u in 0..n {
                for v in u + 1..n {
                    let c = nbrs[u].iter().filter(|&&w| g.has_edge(v, w)).count() as i64;
                    e[u * n + v] = c;
                    e[v * n + u] = c;
                }
            }
        }
    }
    SymMatrix { n, entries: e }
}

/// Exact monic characteristic polynomial `det(xI − M)`.
pub fn char_poly(m: &SymMatrix) -> IntPoly {
    let n = m.n();
    if n == 0 {
        return IntPoly::one();
    }
    let bound = (BigInt::from(m.max_abs_row_sum()) + 1u32).pow(n as u32);
    let needed = bound * 2u32;

    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut primes = PrimeStream::new();
    while modulus <= needed {
        let p = primes.next_prime();
        let cp = char_poly_mod(m, p);
        let pb = BigInt::from(p);
        let inv = mod_inverse(&(&modulus % &pb), &pb);
        for (r, &c) in residues.iter_mut().zip(&cp) {
            // r + modulus·((c − r)·modulus⁻¹ mod p)
            let delta = ((BigInt::from(c) - &*r).mod_floor(&pb) * &inv).mod_floor(&pb);
            *r += &modulus * delta;
        }
        modulus *= pb;
    }
    let half = &modulus >> 1usize;
    let coeffs = residues
        .into_iter()
        .map(|r| if r > half { r - &modulus } else { r })
        .collect();
    IntPoly::new(coeffs)
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "modulus is coprime to the prime");
    e.x.mod_floor(p)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62 in decreasing order.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        Self { next: (1u64 << 62) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return c;
            }
        }
    }
}

/// Characteristic polynomial mod `p`, coefficients lowest degree first.
fn char_poly_mod(m: &SymMatrix, p: u64) -> Vec<u64> {
    let n = m.n();
    let mut h: Vec<u64> = m
        .entries()
        .iter()
        .map(|&x| x.rem_euclid(p as i64) as u64)
        .collect();
    let at = |i: usize, j: usize| i * n + j;

    // Reduce to upper Hessenberg form by similarity transforms.
    for col in 0..n.saturating_sub(2) {
        let pivot_row = col + 1;
        let Some(i) = (pivot_row..n).find(|&i| h[at(i, col)] != 0) else {
            continue;
        };
        if i != pivot_row {
            for j in 0..n {
                h.swap(at(i, j), at(pivot_row, j));
            }
            for j in 0..n {
                h.swap(at(j, i), at(j, pivot_row));
            }
        }
        let inv = powmod(h[at(pivot_row, col)], p - 2, p);
        for i in pivot_row + 1..n {
            let u = mulmod(h[at(i, col)], inv, p);
            if u == 0 {
                continue;
            }
            // row_i −= u·row_pivot
            for j in 0..n {
                let s = mulmod(u, h[at(pivot_row, j)], p);
                h[at(i, j)] = (h[at(i, j)] + p - s) % p;
            }
            // col_pivot += u·col_i
            for j in 0..n {
                let s = mulmod(u, h[at(j, i)], p);
                h[at(j, pivot_row)] = (h[at(j, pivot_row)] + s) % p;
            }
        }
    }

    // p_k = (x − h_kk)·p_(k−1) − Σ_(i<k) (Π_(j=i+1..k) h_(j,j−1))·h_(i,k)·p_(i−1)
    // with 1-based indices; polys[k] has degree k.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let hk = |i: usize, j: usize| h[at(i - 1, j - 1)];
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mulmod(c, hk(k, k), p)) % p;
        }
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = mulmod(t, hk(i + 1, i), p);
            if t == 0 {
                break;
            }
            let f = mulmod(t, hk(i, k), p);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                next[d] = (next[d] + p - mulmod(f, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    /// Faddeev–LeVerrier over the rationals.
    fn leverrier(m: &SymMatrix) -> IntPoly {
        let n = m.n();
        let r = |v: i64| BigRational::from_integer(v.into());
        let a: Vec<BigRational> = m.entries().iter().map(|&x| r(x)).collect();
        let mut mk = vec![BigRational::zero(); n * n];
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = r(1);
        for k in 1..=n {
            // M_k = A·M_(k−1) + c_(n−k+1)·I
            let mut next = vec![BigRational::zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigRational::zero();
                    for l in 0..n {
                        s += &a[i * n + l] * &mk[l * n + j];
                    }
                    if i == j {
                        s += &coeffs[n - k + 1];
                    }
                    next[i * n + j] = s;
                }
            }
            mk = next;
            let mut tr = BigRational::zero();
            for i in 0..n {
                for l in 0..n {
                    tr += &a[i * n + l] * &mk[l * n + i];
                }
            }
            coeffs[n - k] = -tr / r(k as i64);
        }
        IntPoly::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
    }

    #[test]
    fn small_cliques() {
        let k3 = matrix_of(&SimpleGraph::complete(3), MatrixKind::A);
        assert_eq!(char_poly(&k3), IntPoly::from_high(&[1, 0, -3, -2]));
        let k2 = matrix_of(&SimpleGraph::complete(2), MatrixKind::A);
        assert_eq!(char_poly(&k2), IntPoly::from_high(&[1, 0, -1]));
        assert_eq!(matrix_of(&SimpleGraph::complete(2), MatrixKind::L).entries(), &[1, -1, -1, 1]);
    }

    #[test]
    fn cn_of_k8() {
        let cn = matrix_of(&SimpleGraph::complete(8), MatrixKind::CN);
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(cn.get(i, j), if i == j { 0 } else { 6 });
            }
        }
    }

    #[test]
    fn agrees_with_leverrier() {
        let g = SimpleGraph::friendship(2)
            .disjoint_union(&SimpleGraph::star(3))
            .complement();
        for kind in MatrixKind::ALL {
            let m = matrix_of(&g, kind);
            assert_eq!(char_poly(&m), leverrier(&m), "{kind}");
        }
    }

    #[test]
    fn needs_pivoting() {
        // zero sub-diagonal entries force row/column swaps
        let m = SymMatrix::new(4, vec![0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 3, 0, 1, 0, 0, -1]);
        assert_eq!(char_poly(&m), leverrier(&m));
        assert_eq!(char_poly(&SymMatrix::new(0, vec![])), IntPoly::one());
    }

    #[test]
    fn miller_rabin() {
        assert!(is_prime_u64(2) && is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(561) && !is_prime_u64(1));
        assert!(is_prime_u64((1u64 << 61) - 1));
    }
}
