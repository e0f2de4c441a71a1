use std::fmt;

/// A 2×2 matrix over Z/pZ, row-major `[a, b, c, d]` for `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub entries: [u32; 4],
}

impl Mat2 {
    pub fn new(entries: [u32; 4], p: u32) -> Self {
        Self { entries: entries.map(|e| e % p) }
    }

    pub fn identity() -> Self {
        Self { entries: [1, 0, 0, 1] }
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        let [a, b, c, d] = self.entries.map(u64::from);
        let [e, f, g, h] = other.entries.map(u64::from);
        let p = u64::from(p);
        Self {
            entries: [
                ((a * e + b * g) % p) as u32,
                ((a * f + b * h) % p) as u32,
                ((c * e + d * g) % p) as u32,
                ((c * f + d * h) % p) as u32,
            ],
        }
    }

    pub fn det(&self, p: u32) -> u32 {
        let [a, b, c, d] = self.entries.map(u64::from);
        let p = u64::from(p);
        ((a * d + p * p - b * c % p) % p) as u32
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_mod_p() {
        assert_eq!(Mat2::new([1, 1, 0, 1], 3).det(3), 1);
        assert_eq!(Mat2::new([0, 1, 1, 0], 3).det(3), 2);
        assert_eq!(Mat2::new([1, 2, 2, 1], 3).det(3), 0);
    }

    #[test]
    fn product_is_standard_matrix_product() {
        let a = Mat2::new([1, 1, 0, 1], 5);
        let b = Mat2::new([1, 0, 1, 1], 5);
        assert_eq!(a.mul(&b, 5).entries, [2, 1, 1, 1]);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(17));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
    }
}
