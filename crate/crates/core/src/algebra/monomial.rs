//! Packed monomials.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of ring variables (ambient coordinates plus auxiliary ones).
pub const MAX_VARS: usize = 12;

/// A power product `x_0^a_0 * ... * x_{k-1}^a_{k-1}` with the total degree cached.
///
/// Unused trailing slots are always zero, so monomials from rings with fewer
/// variables embed into larger rings without conversion.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const fn one() -> Self {
        Self {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        assert!(i < MAX_VARS, "variable index {i} exceeds MAX_VARS");
        let mut m = Self::one();
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u32).sum();
        m
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Total degree restricted to the variables in `mask`.
    #[inline]
    pub fn degree_in(&self, mask: u32) -> u32 {
        if mask == full_mask() {
            return self.deg;
        }
        let mut d = 0;
        for i in 0..MAX_VARS {
            if mask & (1 << i) != 0 {
                d += self.exps[i] as u32;
            }
        }
        d
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bitmask of variables occurring with positive exponent.
    pub fn support(&self) -> u32 {
        let mut s = 0;
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                s |= 1 << i;
            }
        }
        s
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let exps: [u16; MAX_VARS] = std::array::from_fn(|i| {
            self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow")
        });
        Self {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let exps: [u16; MAX_VARS] = std::array::from_fn(|i| other.exps[i] - self.exps[i]);
        Some(Self {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: [u16; MAX_VARS] = std::array::from_fn(|i| self.exps[i].max(other.exps[i]));
        Self::from_exps(&exps)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let exps: [u16; MAX_VARS] = std::array::from_fn(|i| self.exps[i].min(other.exps[i]));
        Self::from_exps(&exps)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Copy with variable `i` set to exponent zero.
    pub fn without_var(&self, i: usize) -> Self {
        let mut m = *self;
        m.deg -= m.exps[i] as u32;
        m.exps[i] = 0;
        m
    }

    /// Re-index variables: exponent of old variable `i` moves to slot `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Self {
        let mut exps = [0u16; MAX_VARS];
        for (i, &j) in map.iter().enumerate() {
            exps[j] += self.exps[i];
        }
        debug_assert!(self.exps[map.len()..].iter().all(|&e| e == 0));
        Self::from_exps(&exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[inline]
pub const fn full_mask() -> u32 {
    (1 << MAX_VARS) - 1
}

/// Graded reverse lexicographic comparison on the variables of `mask`.
#[inline]
pub fn cmp_degrevlex_in(a: &Monomial, b: &Monomial, mask: u32) -> Ordering {
    let (da, db) = (a.degree_in(mask), b.degree_in(mask));
    if da != db {
        return da.cmp(&db);
    }
    revlex_tiebreak(a, b, mask)
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent in
/// the last differing variable is larger.
#[inline]
pub fn revlex_tiebreak(a: &Monomial, b: &Monomial, mask: u32) -> Ordering {
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) == 0 {
            continue;
        }
        let (x, y) = (a.exps[i], b.exps[i]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

/// Canonical storage order for polynomials.
#[inline]
pub fn cmp_canonical(a: &Monomial, b: &Monomial) -> Ordering {
    if a.deg != b.deg {
        return a.deg.cmp(&b.deg);
    }
    revlex_tiebreak(a, b, full_mask())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotient() {
        let a = Monomial::from_exps(&[1, 2]);
        let b = Monomial::from_exps(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(Monomial::from_exps(&[1, 0, 1])));
        assert_eq!(a.lcm(&b), b);
        assert_eq!(a.gcd(&b), a);
    }

    #[test]
    fn degrevlex_basics() {
        // x > y > z; among degree 2: x^2 > xy > y^2 > xz > yz > z^2
        let mons = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]]
            .map(|e| Monomial::from_exps(&e));
        for w in mons.windows(2) {
            assert_eq!(cmp_canonical(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(cmp_canonical(&Monomial::one(), &Monomial::var(2)), Ordering::Less);
    }
}
