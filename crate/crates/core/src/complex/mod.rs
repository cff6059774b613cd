//! Filtered complexes over a ring model.
//!
//! A complex is a set of generators, each with an integer degree and a real
//! value, plus a differential whose coefficients are ring elements. Two
//! filtrations coexist and are never conflated: the degree filtration (by
//! generator degree) drives spectral sequences, the value filtration drives
//! truncations and spectral numbers.

mod chain;
mod derive;
mod total;

use std::collections::BTreeMap;

pub use chain::{ChainElement, ChainTerm};
pub use total::{TotalBasis, TotalComplex};

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingModel};
use crate::validation::{ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    /// Morse or Maslov index.
    pub degree: i32,
    /// Critical value or action.
    pub value: f64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32, value: f64) -> Self {
        Self {
            name: name.into(),
            degree,
            value,
        }
    }
}

/// One term `coefficient ⊗ target` of the differential of `source`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialEntry {
    pub source: String,
    pub target: String,
    pub coefficient: RingElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplex {
    ring: RingModel,
    generators: Vec<Generator>,
    entries: Vec<DifferentialEntry>,
    strict_decrease: bool,
    index: BTreeMap<String, usize>,
    /// (source index, target index) -> coefficient
    coefficients: BTreeMap<(usize, usize), RingElement>,
}

impl FilteredComplex {
    pub fn new(
        ring: RingModel,
        generators: Vec<Generator>,
        entries: Vec<DifferentialEntry>,
        strict_decrease: bool,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateName {
                    kind: "generator",
                    name: g.name.clone(),
                });
            }
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| Error::UnknownName {
                kind: "generator",
                name: name.to_string(),
            })
        };
        let mut coefficients = BTreeMap::new();
        for e in &entries {
            let key = (lookup(&e.source)?, lookup(&e.target)?);
            if e.coefficient.bits().len() != ring.len() {
                return Err(Error::DimensionMismatch {
                    expected: ring.len(),
                    found: e.coefficient.bits().len(),
                });
            }
            if e.coefficient.is_zero() {
                return Err(Error::Malformed(format!(
                    "entry {} -> {} has a zero coefficient",
                    e.source, e.target
                )));
            }
            if coefficients.insert(key, e.coefficient.clone()).is_some() {
                return Err(Error::Malformed(format!(
                    "entry {} -> {} listed twice",
                    e.source, e.target
                )));
            }
        }
        Ok(Self {
            ring,
            generators,
            entries,
            strict_decrease,
            index,
            coefficients,
        })
    }

    /// Convenience constructor from names: each entry is
    /// `(source, target, coefficient terms)`.
    pub fn build(ring: RingModel, generators: &[(&str, i32, f64)], entries: &[(&str, &str, &[&str])]) -> Result<Self> {
        let gens = generators.iter().map(|&(n, d, v)| Generator::new(n, d, v)).collect();
        let entries = entries
            .iter()
            .map(|&(s, t, coeff)| {
                Ok(DifferentialEntry {
                    source: s.to_string(),
                    target: t.to_string(),
                    coefficient: ring.element(coeff)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens, entries, true)
    }

    /// A complex over the trivial ring; entries carry coefficient `1`.
    pub fn plain(generators: &[(&str, i32, f64)], entries: &[(&str, &str)]) -> Result<Self> {
        let ring = RingModel::trivial();
        let one: &[&str] = &[crate::ring::UNIT];
        let entries: Vec<_> = entries.iter().map(|&(s, t)| (s, t, one)).collect();
        Self::build(ring, generators, &entries)
    }

    pub fn ring(&self) -> &RingModel {
        &self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn entries(&self) -> &[DifferentialEntry] {
        &self.entries
    }

    pub fn strict_decrease(&self) -> bool {
        self.strict_decrease
    }

    pub fn with_strict_decrease(mut self, strict: bool) -> Self {
        self.strict_decrease = strict;
        self
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownName {
            kind: "generator",
            name: name.to_string(),
        })
    }

    pub fn generator(&self, name: &str) -> Result<&Generator> {
        Ok(&self.generators[self.index_of(name)?])
    }

    pub fn coefficient(&self, source: usize, target: usize) -> Option<&RingElement> {
        self.coefficients.get(&(source, target))
    }

    /// Outgoing entries of generator `source` as (target index, coefficient).
    pub fn outgoing(&self, source: usize) -> impl Iterator<Item = (usize, &RingElement)> {
        self.coefficients
            .range((source, 0)..=(source, usize::MAX))
            .map(|(&(_, t), c)| (t, c))
    }

    pub fn is_plain(&self) -> bool {
        self.ring.is_trivial()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.generators.iter().map(|g| g.degree).max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.generators.iter().map(|g| g.degree).min()
    }

    /// Distinct generator values, ascending.
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.generators.iter().map(|g| g.value).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Checks the ring, the degree rule, value monotonicity and flatness
    /// (the Maurer-Cartan equation `d(a_pq) + Σ_r a_pr a_rq = 0`, which is
    /// equivalent to the extended differential squaring to zero).
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.ring.validate();
        self.check_degrees_and_values(&mut report);
        self.check_flatness(&mut report);
        report
    }

    fn check_degrees_and_values(&self, report: &mut ValidationReport) {
        for (&(s, t), coeff) in &self.coefficients {
            let (gs, gt) = (&self.generators[s], &self.generators[t]);
            if gs.degree <= gt.degree {
                report.push(Violation::EntryDegree {
                    source: gs.name.clone(),
                    target: gt.name.clone(),
                    detail: format!("source degree {} must exceed target degree {}", gs.degree, gt.degree),
                });
            } else {
                let want = (gs.degree - gt.degree - 1) as u32;
                if self.ring.degree_of(coeff) != Some(want) {
                    report.push(Violation::EntryDegree {
                        source: gs.name.clone(),
                        target: gt.name.clone(),
                        detail: format!(
                            "coefficient {} must be homogeneous of degree {want}",
                            self.ring.format(coeff)
                        ),
                    });
                }
            }
            let ok = if self.strict_decrease {
                gs.value > gt.value
            } else {
                gs.value >= gt.value
            };
            if !ok {
                report.push(Violation::ValueMonotonicity {
                    source: gs.name.clone(),
                    target: gt.name.clone(),
                    source_value: gs.value,
                    target_value: gt.value,
                });
            }
        }
    }

    /// Maurer-Cartan residuals, keyed by (source, target) index pairs.
    pub fn flatness_residuals(&self) -> BTreeMap<(usize, usize), RingElement> {
        let mut residuals: BTreeMap<(usize, usize), RingElement> = BTreeMap::new();
        for (&(p, q), a_pq) in &self.coefficients {
            residuals
                .entry((p, q))
                .or_insert_with(|| self.ring.zero())
                .add_assign(&self.ring.diff_unchecked(a_pq));
            for (r, a_qr) in self.outgoing(q) {
                residuals
                    .entry((p, r))
                    .or_insert_with(|| self.ring.zero())
                    .add_assign(&self.ring.mul_unchecked(a_pq, a_qr));
            }
        }
        residuals
    }

    fn check_flatness(&self, report: &mut ValidationReport) {
        for ((p, q), residual) in self.flatness_residuals() {
            if !residual.is_zero() {
                report.push(Violation::Flatness {
                    source: self.generators[p].name.clone(),
                    target: self.generators[q].name.clone(),
                    residual: self.ring.format(&residual),
                });
            }
        }
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Assembles the extended complex `R ⊗ C` with `d'(a⊗p) = (da)⊗p + a·∂p`.
    pub fn total_complex(&self) -> Result<TotalComplex> {
        TotalComplex::new(self)
    }
}
