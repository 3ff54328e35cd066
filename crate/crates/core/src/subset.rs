use std::fmt;

use serde::{Deserialize, Serialize};

/// A subset of the generator set, stored as a bitmask (so `n <= 64`).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
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

    pub fn singleton(x: usize) -> Subset {
        Subset(1u64 << x)
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 & (1u64 << x) != 0
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the subset under a map on letters.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Subset {
        Subset::from_iter(self.iter().map(f))
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0u64, |m, x| m | (1u64 << x)))
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Vec<usize> {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = String;

    fn try_from(v: Vec<usize>) -> Result<Subset, String> {
        match v.iter().find(|&&x| x >= 64) {
            Some(x) => Err(format!("subset element {x} exceeds 63")),
            None => Ok(Subset::from_iter(v)),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", x + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_as_index_list() {
        let a = Subset::from_iter([3, 1]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,3]");
        assert_eq!(serde_json::from_str::<Subset>("[3,1]").unwrap(), a);
        assert!(serde_json::from_str::<Subset>("[64]").is_err());
    }

    #[test]
    fn basic_ops() {
        let a = Subset::from_iter([0, 2]);
        assert_eq!(a.len(), 2);
        assert!(a.contains(2) && !a.contains(1));
        assert_eq!(a.complement(3), Subset::singleton(1));
        assert!(a.is_subset_of(Subset::full(3)));
        assert_eq!(a.to_string(), "{x1,x3}");
        assert_eq!(Subset::full(64).len(), 64);
    }
}
