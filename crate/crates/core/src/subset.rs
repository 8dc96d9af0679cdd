use std::fmt;

use serde::{Deserialize, Serialize};

/// Maximum number of elements a [`crate::poset::FinitePoset`] may carry.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of the element indices of a fixed finite poset, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_indices(ix: impl IntoIterator<Item = usize>) -> Subset {
        ix.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_proper_subset(self, o: Subset) -> bool {
        self.is_subset(o) && self != o
    }

    pub fn meets(self, o: Subset) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self` (including ∅ and `self`).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(Subset(c))
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration_counts() {
        let s = Subset::from_indices([1, 3, 4]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn iter_ordered() {
        let s = Subset::from_indices([5, 0, 63]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 63]);
        assert_eq!(s.to_string(), "{0,5,63}");
    }
}
