//! Permutations of `{0, .., k-1}` and their cycle structure.
//!
//! Internally everything is 0-based. Text and JSON forms are 1-based, which
//! is the convention used for boundary labels everywhere else.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the image of `i` (0-based).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &img in &images {
            if img >= k {
                return Err(Error::NotAPermutation(format!("image {} out of range", img + 1)));
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(Error::NotAPermutation(format!("image {} repeated", img + 1)));
            }
        }
        Ok(Self { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let images = images
            .iter()
            .map(|&x| {
                x.checked_sub(1)
                    .ok_or_else(|| Error::NotAPermutation("images start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn identity(k: usize) -> Self {
        Self {
            images: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition {
            size: self.len(),
            cycles,
        }
    }

    /// Parses the one-line form `[3,1,2]` (1-based, brackets optional).
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .unwrap_or(trimmed);
        if inner.trim().is_empty() {
            return Self::new(Vec::new());
        }
        let images = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::NotAPermutation(format!("bad entry {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(&images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    size: usize,
    images: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson {
            size: self.len(),
            images: self.to_one_based(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PermutationJson::deserialize(d)?;
        if raw.size != raw.images.len() {
            return Err(D::Error::custom("size does not match image count"));
        }
        Permutation::from_one_based(&raw.images).map_err(D::Error::custom)
    }
}

/// Disjoint cycles, each starting at its smallest element, ordered by that
/// element. Fixed points are kept as cycles of length one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    size: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Cycles with an odd number of inversions, i.e. of even length.
    pub fn odd_cycles(&self) -> impl Iterator<Item = &[usize]> {
        self.cycles
            .iter()
            .filter(|c| c.len() % 2 == 0)
            .map(Vec::as_slice)
    }

    pub fn odd_cycle_count(&self) -> usize {
        self.odd_cycles().count()
    }

    /// Cycle notation without fixed points; `id` for the identity.
    pub fn to_compact_string(&self) -> String {
        let moved: Vec<String> = self
            .cycles
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let items: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", items.join(" "))
            })
            .collect();
        if moved.is_empty() {
            "id".into()
        } else {
            moved.concat()
        }
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.size).collect();
        for cycle in &self.cycles {
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation { images }
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(one_based: &[usize]) -> Permutation {
        Permutation::from_one_based(one_based).unwrap()
    }

    #[test]
    fn cycle_decomposition_examples() {
        let c = p(&[2, 1, 3]).cycles();
        assert_eq!(c.cycles(), &[vec![0, 1], vec![2]]);
        assert_eq!(c.to_string(), "(1 2)(3)");

        let c = Permutation::identity(4).cycles();
        assert_eq!(c.lengths(), vec![1, 1, 1, 1]);

        let c = p(&[4, 3, 2, 1]).cycles();
        assert_eq!(c.to_string(), "(1 4)(2 3)");

        assert_eq!(p(&[3, 2, 1]).cycles().to_compact_string(), "(1 3)");
        assert_eq!(Permutation::identity(3).cycles().to_compact_string(), "id");
    }

    #[test]
    fn odd_cycle_counts() {
        assert_eq!(Permutation::identity(5).cycles().odd_cycle_count(), 0);
        assert_eq!(p(&[4, 3, 2, 1]).cycles().odd_cycle_count(), 2);
        // (1 3 2): odd length, so an even cycle.
        assert_eq!(p(&[3, 1, 2]).cycles().odd_cycle_count(), 0);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[3, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::parse("[1,x]").is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let x: Permutation = "[3,1,2]".parse().unwrap();
        assert_eq!(x.images(), &[2, 0, 1]);
        assert_eq!(x.to_string(), "[3,1,2]");
        assert_eq!(Permutation::parse(" 3 1 2 ").unwrap(), x);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"size":3,"images":[3,1,2]}"#);
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), x);
        assert!(serde_json::from_str::<Permutation>(r#"{"size":2,"images":[3,1,2]}"#).is_err());
    }

    #[test]
    fn composition_order() {
        let a = p(&[2, 3, 1]);
        let b = p(&[2, 1, 3]);
        // (a ∘ b)(1) = a(b(1)) = a(2) = 3
        assert_eq!(a.compose(&b).unwrap().apply(0), 2);
        assert!(a.compose(&Permutation::identity(2)).is_err());
    }

    fn perm_strategy() -> impl Strategy<Value = Permutation> {
        (1usize..12)
            .prop_flat_map(|k| Just((0..k).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn cycles_rebuild_the_permutation(x in perm_strategy()) {
            let c = x.cycles();
            prop_assert_eq!(c.lengths().iter().sum::<usize>(), x.len());
            prop_assert_eq!(c.to_permutation(), x.clone());
            for cycle in c.cycles() {
                prop_assert_eq!(cycle[0], *cycle.iter().min().unwrap());
            }
        }

        #[test]
        fn inverse_composes_to_identity(x in perm_strategy()) {
            prop_assert!(x.compose(&x.inverse()).unwrap().is_identity());
            prop_assert_eq!(Permutation::parse(&x.to_string()).unwrap(), x);
        }
    }
}
