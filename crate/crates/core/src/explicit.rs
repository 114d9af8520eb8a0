//! Explicit set families: a universe of named elements and a set of bitsets over it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest universe an explicit family can index.
pub const MAX_EXPLICIT_UNIVERSE: usize = 128;

/// A subset of a universe, bit `i` standing for the universe's `i`-th element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetBits(pub u128);

impl SetBits {
    pub const EMPTY: SetBits = SetBits(0);

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        SetBits(positions.into_iter().fold(0u128, |acc, p| acc | (1u128 << p)))
    }

    pub fn contains(self, pos: usize) -> bool {
        self.0 >> pos & 1 == 1
    }

    pub fn with(self, pos: usize) -> Self {
        SetBits(self.0 | 1u128 << pos)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SetBits) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SetBits) -> Self {
        SetBits(self.0 | other.0)
    }

    pub fn intersection(self, other: SetBits) -> Self {
        SetBits(self.0 & other.0)
    }

    pub fn difference(self, other: SetBits) -> Self {
        SetBits(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: SetBits) -> Self {
        SetBits(self.0 ^ other.0)
    }

    pub fn positions(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..128).filter(move |&i| bits >> i & 1 == 1)
    }
}

/// A family of subsets of a named universe, held element by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitFamily {
    universe: Vec<String>,
    sets: BTreeSet<SetBits>,
}

impl ExplicitFamily {
    /// Empty family (no sets) over `universe`.
    pub fn new<I, S>(universe: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        if universe.len() > MAX_EXPLICIT_UNIVERSE {
            return Err(Error::UniverseTooLarge {
                n: universe.len(),
                max: MAX_EXPLICIT_UNIVERSE,
            });
        }
        for (i, name) in universe.iter().enumerate() {
            if universe[..i].contains(name) {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        Ok(ExplicitFamily {
            universe,
            sets: BTreeSet::new(),
        })
    }

    /// Family over `universe` holding the listed sets, each given by element names.
    pub fn from_named_sets<U, S, I, N>(universe: U, sets: I) -> Result<Self>
    where
        U: IntoIterator<Item = S>,
        S: Into<String>,
        I: IntoIterator<Item = N>,
        N: IntoIterator,
        N::Item: AsRef<str>,
    {
        let mut family = ExplicitFamily::new(universe)?;
        for set in sets {
            let bits = family.bits_of(set)?;
            family.sets.insert(bits);
        }
        Ok(family)
    }

    pub fn from_bits<U, S, I>(universe: U, sets: I) -> Result<Self>
    where
        U: IntoIterator<Item = S>,
        S: Into<String>,
        I: IntoIterator<Item = SetBits>,
    {
        let mut family = ExplicitFamily::new(universe)?;
        let limit = family.full_set();
        for bits in sets {
            if !bits.is_subset(limit) {
                return Err(Error::InvalidParameter(format!(
                    "set {:#x} uses positions outside a universe of {}",
                    bits.0,
                    family.universe.len()
                )));
            }
            family.sets.insert(bits);
        }
        Ok(family)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|u| u == name)
    }

    pub fn bits_of<N>(&self, names: N) -> Result<SetBits>
    where
        N: IntoIterator,
        N::Item: AsRef<str>,
    {
        let mut bits = SetBits::EMPTY;
        for name in names {
            let name = name.as_ref();
            let pos = self
                .position(name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
            bits = bits.with(pos);
        }
        Ok(bits)
    }

    /// The set holding every universe element.
    pub fn full_set(&self) -> SetBits {
        let n = self.universe.len();
        if n == 128 {
            SetBits(u128::MAX)
        } else {
            SetBits((1u128 << n) - 1)
        }
    }

    /// Inserts a set, returning whether it was new.
    pub fn insert(&mut self, bits: SetBits) -> bool {
        debug_assert!(bits.is_subset(self.full_set()));
        self.sets.insert(bits)
    }

    pub fn contains(&self, bits: SetBits) -> bool {
        self.sets.contains(&bits)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = SetBits> + '_ {
        self.sets.iter().copied()
    }

    pub fn sets(&self) -> &BTreeSet<SetBits> {
        &self.sets
    }

    /// Same universe, new set collection.
    pub fn with_sets<I: IntoIterator<Item = SetBits>>(&self, sets: I) -> Self {
        ExplicitFamily {
            universe: self.universe.clone(),
            sets: sets.into_iter().collect(),
        }
    }

    pub fn names(&self, bits: SetBits) -> Vec<&str> {
        bits.positions().map(|p| self.universe[p].as_str()).collect()
    }

    /// Sets as name lists, ordered by size and then by universe position.
    pub fn named_sets(&self) -> Vec<Vec<&str>> {
        let mut sets: Vec<SetBits> = self.iter().collect();
        sets.sort_by_key(|s| (s.len(), s.positions().collect::<Vec<_>>()));
        sets.into_iter().map(|s| self.names(s)).collect()
    }
}

impl fmt::Display for ExplicitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, set) in self.named_sets().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{}}}", set.join(","))?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_construction() {
        let fam = ExplicitFamily::from_named_sets(["a", "b", "c"], [vec!["a"], vec!["c", "a"]])
            .unwrap();
        assert_eq!(fam.len(), 2);
        assert!(fam.contains(SetBits(0b101)));
        assert_eq!(fam.to_string(), "{{a}, {a,c}}");
    }

    #[test]
    fn unknown_and_duplicate_names() {
        assert!(matches!(
            ExplicitFamily::from_named_sets(["a"], [vec!["b"]]),
            Err(Error::UnknownElement(_))
        ));
        assert!(matches!(
            ExplicitFamily::new(["a", "a"]),
            Err(Error::DuplicateElement(_))
        ));
    }

    #[test]
    fn bits_outside_universe_rejected() {
        assert!(ExplicitFamily::from_bits(["a"], [SetBits(0b10)]).is_err());
    }

    #[test]
    fn set_algebra() {
        let a = SetBits(0b0110);
        let b = SetBits(0b0011);
        assert_eq!(a.union(b), SetBits(0b0111));
        assert_eq!(a.intersection(b), SetBits(0b0010));
        assert_eq!(a.difference(b), SetBits(0b0100));
        assert_eq!(a.symmetric_difference(b), SetBits(0b0101));
        assert!(SetBits(0b0010).is_subset(a));
        assert_eq!(a.positions().collect::<Vec<_>>(), vec![1, 2]);
    }
}
