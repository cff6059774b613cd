use std::collections::BTreeSet;
use std::fmt;

use crate::ring::UNIT;

/// One basis element `ring ⊗ generator` of the extended complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainTerm {
    pub generator: String,
    pub ring: String,
}

impl ChainTerm {
    pub fn new(ring: impl Into<String>, generator: impl Into<String>) -> Self {
        Self {
            ring: ring.into(),
            generator: generator.into(),
        }
    }
}

impl fmt::Display for ChainTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ring == UNIT {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}*{}", self.ring, self.generator)
        }
    }
}

/// A Z/2 combination of [`ChainTerm`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChainElement {
    terms: BTreeSet<ChainTerm>,
}

impl ChainElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &ChainTerm> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term; a repeated term cancels.
    pub fn toggle(&mut self, term: ChainTerm) {
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    pub fn add_assign(&mut self, other: &ChainElement) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }
}

impl FromIterator<ChainTerm> for ChainElement {
    fn from_iter<I: IntoIterator<Item = ChainTerm>>(iter: I) -> Self {
        let mut e = ChainElement::zero();
        for t in iter {
            e.toggle(t);
        }
        e
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
