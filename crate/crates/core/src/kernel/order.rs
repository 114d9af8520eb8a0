use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Total order of element names. Level 0 is the first element branched on.
#[derive(Clone, Debug, Default)]
pub struct VariableOrder {
    names: Vec<String>,
    levels: FxHashMap<String, usize>,
}

impl VariableOrder {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut order = VariableOrder::default();
        for name in names {
            let name = name.into();
            if order.levels.contains_key(&name) {
                return Err(Error::DuplicateElement(name));
            }
            order.levels.insert(name.clone(), order.names.len());
            order.names.push(name);
        }
        Ok(order)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn level(&self, name: &str) -> Option<usize> {
        self.levels.get(name).copied()
    }

    pub fn level_of(&self, name: &str) -> Result<usize> {
        self.level(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn name(&self, level: usize) -> &str {
        &self.names[level]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Same names in a different order, `perm[i]` being the old level placed at level `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} elements",
                perm.len(),
                self.len()
            )));
        }
        VariableOrder::new(perm.iter().map(|&i| self.names[i].clone()))
    }
}

impl PartialEq for VariableOrder {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VariableOrder {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_are_positions() {
        let order = VariableOrder::new(["a", "b", "c"]).unwrap();
        assert_eq!(order.level("a"), Some(0));
        assert_eq!(order.level("c"), Some(2));
        assert_eq!(order.name(1), "b");
        assert!(order.level("d").is_none());
    }

    #[test]
    fn rejects_duplicates() {
        assert!(matches!(
            VariableOrder::new(["a", "b", "a"]),
            Err(Error::DuplicateElement(name)) if name == "a"
        ));
    }

    #[test]
    fn permuted_order() {
        let order = VariableOrder::new(["a", "b", "c"]).unwrap();
        let p = order.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.names(), &["c", "a", "b"]);
        assert!(order.permuted(&[0, 0, 1]).is_err());
    }
}
