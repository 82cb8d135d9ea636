use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::graph::CanonicalKey;

/// Formal integer combination of canonical classes, kept free of zero
/// coefficients and ordered by key.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LinearCombination {
    terms: BTreeMap<CanonicalKey, i64>,
}

impl LinearCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: CanonicalKey, coeff: i64) -> Self {
        let mut lc = Self::new();
        lc.add_term(key, coeff);
        lc
    }

    pub fn add_term(&mut self, key: CanonicalKey, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(coeff).expect("coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &LinearCombination, scale: i64) {
        for (k, &c) in &other.terms {
            self.add_term(k.clone(), c.checked_mul(scale).expect("coefficient overflow"));
        }
    }

    pub fn scaled(&self, scale: i64) -> LinearCombination {
        let mut out = LinearCombination::new();
        out.add_scaled(self, scale);
        out
    }

    pub fn coefficient(&self, key: &CanonicalKey) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.terms.keys()
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&CanonicalKey) -> bool) -> LinearCombination {
        LinearCombination {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
        }
    }
}

impl FromIterator<(CanonicalKey, i64)> for LinearCombination {
    fn from_iter<I: IntoIterator<Item = (CanonicalKey, i64)>>(iter: I) -> Self {
        let mut lc = LinearCombination::new();
        for (k, c) in iter {
            lc.add_term(k, c);
        }
        lc
    }
}

impl fmt::Debug for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| (k.hex(), c))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(b: u8) -> CanonicalKey {
        CanonicalKey(vec![b].into_boxed_slice())
    }

    #[test]
    fn cancellation_removes_entries() {
        let mut lc = LinearCombination::single(k(1), 2);
        lc.add_term(k(2), 1);
        lc.add_term(k(1), -2);
        assert_eq!(lc.len(), 1);
        assert_eq!(lc.coefficient(&k(2)), 1);
        lc.add_scaled(&LinearCombination::single(k(2), 1), -1);
        assert!(lc.is_zero());
    }
}
