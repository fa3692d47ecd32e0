use std::cmp::Ordering;
use std::fmt;

/// A strictly increasing index subset of `{1, …, 8}`, stored as a bitmask
/// (bit `i − 1` for index `i`).
///
/// Ordered by grade, then lexicographically on the index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(u8);

impl Mono {
    pub const EMPTY: Mono = Mono(0);

    pub fn single(i: usize) -> Self {
        assert!((1..=8).contains(&i), "index out of range");
        Self(1 << (i - 1))
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        Self(((1u16 << n) - 1) as u8)
    }

    /// From 1-based indices; `None` on repeats or out-of-range entries.
    pub fn from_indices(idx: &[usize]) -> Option<Self> {
        let mut mask = 0u8;
        for &i in idx {
            if !(1..=8).contains(&i) || mask & (1 << (i - 1)) != 0 {
                return None;
            }
            mask |= 1 << (i - 1);
        }
        Some(Self(mask))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn from_mask(mask: u8) -> Self {
        Self(mask)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> impl DoubleEndedIterator<Item = usize> {
        (1..=8).filter(move |&i| self.contains(i))
    }

    /// Complement inside `{1, …, n}`.
    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & Self::full(n).0)
    }

    /// `e^a ∧ e^b = ±e^{a∪b}`; returns the union and whether the sign is
    /// negative, or `None` if the sets overlap.
    pub fn wedge(self, other: Mono) -> Option<(Mono, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Parity of pairs (i in a, j in b) with i > j.
        let mut inversions = 0;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            inversions += (self.0 >> j).count_ones();
            b &= b - 1;
        }
        Some((Mono(self.0 | other.0), inversions % 2 == 1))
    }

    /// Removes index `i`, returning the rest and whether the sign
    /// `(−1)^position` is negative.
    pub fn remove(self, i: usize) -> Option<(Mono, bool)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u16 << (i - 1)) - 1) as u8).count_ones();
        Some((Mono(self.0 & !(1 << (i - 1))), below % 2 == 1))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{self}")
    }
}

/// All grade-`k` monomials on `{1, …, n}` in lexicographic order.
pub fn monomials(n: usize, k: usize) -> Vec<Mono> {
    let mut out: Vec<Mono> = (0u16..(1 << n))
        .map(|m| Mono(m as u8))
        .filter(|m| m.grade() == k)
        .collect();
    out.sort();
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_sign_is_merge_parity() {
        let a = Mono::from_indices(&[1, 3]).unwrap();
        let b = Mono::from_indices(&[2]).unwrap();
        assert_eq!(a.wedge(b), Some((Mono::from_indices(&[1, 2, 3]).unwrap(), true)));
        assert_eq!(b.wedge(a), Some((Mono::from_indices(&[1, 2, 3]).unwrap(), true)));
        assert_eq!(a.wedge(a), None);
    }

    #[test]
    fn monomial_counts() {
        for n in [6, 7] {
            for k in 0..=n {
                assert_eq!(monomials(n, k).len(), binomial(n, k));
            }
        }
        let m3 = monomials(7, 3);
        assert_eq!(m3[0].to_string(), "123");
        assert_eq!(m3[1].to_string(), "124");
        assert_eq!(m3[34].to_string(), "567");
    }
}
