use std::collections::BTreeMap;

use super::{ChainElement, ChainTerm, FilteredComplex};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// A basis element `e ⊗ g` of the total complex with its gradings.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalBasis {
    pub generator: usize,
    pub ring: usize,
    /// Degree filtration index p (the generator degree).
    pub filtration: i32,
    /// Ring degree q.
    pub ring_degree: u32,
    /// Total degree p + q.
    pub degree: i32,
    /// Value filtration level (the generator value).
    pub value: f64,
}

/// The extended complex `R ⊗ C` as a plain Z/2 complex.
///
/// Basis elements are sorted by (value, generator name, ring index), so the
/// highest set index of a vector carries the largest value in its support.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    complex: FilteredComplex,
    basis: Vec<TotalBasis>,
    position: BTreeMap<(usize, usize), usize>,
    differential: Gf2Matrix,
}

impl TotalComplex {
    pub fn new(c: &FilteredComplex) -> Result<Self> {
        let report = c.validate();
        if !report.is_ok() {
            return Err(Error::Invalid(report));
        }
        Self::assemble(c)
    }

    /// Assembles without running [`FilteredComplex::validate`]; `d'² = 0` is
    /// still verified.
    pub fn assemble(c: &FilteredComplex) -> Result<Self> {
        let ring = c.ring();
        let trunc = ring.truncation_degree();
        let mut basis = Vec::new();
        for (gi, g) in c.generators().iter().enumerate() {
            for ri in 0..ring.len() {
                let q = ring.degree(ri);
                if q > trunc {
                    continue;
                }
                basis.push(TotalBasis {
                    generator: gi,
                    ring: ri,
                    filtration: g.degree,
                    ring_degree: q,
                    degree: g.degree + q as i32,
                    value: g.value,
                });
            }
        }
        let gens = c.generators();
        basis.sort_by(|x, y| {
            x.value
                .total_cmp(&y.value)
                .then_with(|| gens[x.generator].name.cmp(&gens[y.generator].name))
                .then(x.ring.cmp(&y.ring))
        });
        let position: BTreeMap<_, _> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| ((b.generator, b.ring), i))
            .collect();
        let n = basis.len();
        let mut columns = Vec::with_capacity(n);
        for b in &basis {
            let mut col = Gf2Vector::zeros(n);
            let e = crate::ring::RingElement::basis(ring.len(), b.ring);
            for r in ring.diff_unchecked(&e).terms() {
                if let Some(&i) = position.get(&(b.generator, r)) {
                    col.flip(i);
                }
            }
            for (target, coeff) in c.outgoing(b.generator) {
                for r in ring.mul_unchecked(&e, coeff).terms() {
                    if let Some(&i) = position.get(&(target, r)) {
                        col.flip(i);
                    }
                }
            }
            columns.push(col);
        }
        let differential = Gf2Matrix::from_columns(n, columns)?;
        let total = Self {
            complex: c.clone(),
            basis,
            position,
            differential,
        };
        let bad = total.square_defects();
        if bad > 0 {
            return Err(Error::TruncationArtifact {
                count: bad,
                truncation: trunc,
            });
        }
        Ok(total)
    }

    /// Number of basis columns `j` with `d'(d'(e_j)) != 0`.
    pub fn square_defects(&self) -> usize {
        (0..self.len())
            .filter(|&j| !self.apply(self.differential.column(j)).is_zero())
            .count()
    }

    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[TotalBasis] {
        &self.basis
    }

    pub fn differential(&self) -> &Gf2Matrix {
        &self.differential
    }

    pub fn position(&self, generator: usize, ring: usize) -> Option<usize> {
        self.position.get(&(generator, ring)).copied()
    }

    pub fn term(&self, i: usize) -> ChainTerm {
        let b = &self.basis[i];
        ChainTerm::new(
            self.complex.ring().name(b.ring),
            self.complex.generators()[b.generator].name.clone(),
        )
    }

    pub fn label(&self, i: usize) -> String {
        self.term(i).to_string()
    }

    /// `d'` applied to a vector.
    pub fn apply(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut out = Gf2Vector::zeros(self.len());
        for j in v.ones() {
            out.add_assign(self.differential.column(j));
        }
        out
    }

    pub fn chain(&self, v: &Gf2Vector) -> ChainElement {
        v.ones().map(|i| self.term(i)).collect()
    }

    pub fn vector(&self, e: &ChainElement) -> Result<Gf2Vector> {
        let mut v = Gf2Vector::zeros(self.len());
        for t in e.terms() {
            let g = self.complex.index_of(&t.generator)?;
            let r = self.complex.ring().index_of(&t.ring)?;
            let i = self.position(g, r).ok_or_else(|| Error::UnknownName {
                kind: "basis element",
                name: t.to_string(),
            })?;
            v.flip(i);
        }
        Ok(v)
    }

    /// Total degree of a nonzero vector, if homogeneous.
    pub fn degree_of(&self, v: &Gf2Vector) -> Option<i32> {
        let mut degrees = v.ones().map(|i| self.basis[i].degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Largest generator value in the support, `None` for zero.
    pub fn max_value(&self, v: &Gf2Vector) -> Option<f64> {
        v.low().map(|i| self.basis[i].value)
    }

    pub fn mask(&self, pred: impl Fn(&TotalBasis) -> bool) -> Gf2Vector {
        let mut m = Gf2Vector::zeros(self.len());
        for (i, b) in self.basis.iter().enumerate() {
            if pred(b) {
                m.set(i, true);
            }
        }
        m
    }

    pub fn degree_mask(&self, n: i32) -> Gf2Vector {
        self.mask(|b| b.degree == n)
    }

    /// Distinct total degrees, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Basis indices of one total degree.
    pub fn indices_in_degree(&self, n: i32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.basis[i].degree == n).collect()
    }
}
