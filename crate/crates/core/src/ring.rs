//! Degree-truncated models of the differential ring of chains on a based
//! loop space.
//!
//! A model is a finite graded basis together with multiplication and
//! differential tables. Products whose degree exceeds the truncation degree
//! are zero. Products with the unit `1` are implicit and need not be listed.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::validation::{ValidationReport, Violation};

pub const UNIT: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingBasisElement {
    pub name: String,
    pub degree: u32,
}

impl RingBasisElement {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// A Z/2 combination of ring basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement(Gf2Vector);

impl RingElement {
    pub fn zero(basis_len: usize) -> Self {
        Self(Gf2Vector::zeros(basis_len))
    }

    pub fn basis(basis_len: usize, index: usize) -> Self {
        Self(Gf2Vector::unit(basis_len, index))
    }

    pub fn from_indices(basis_len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self(Gf2Vector::from_indices(basis_len, indices))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn bits(&self) -> &Gf2Vector {
        &self.0
    }

    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn add_assign(&mut self, other: &RingElement) {
        self.0.add_assign(&other.0);
    }

    pub fn plus(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingModel {
    basis: Vec<RingBasisElement>,
    truncation_degree: u32,
    index: BTreeMap<String, usize>,
    mult: BTreeMap<(usize, usize), RingElement>,
    diff: BTreeMap<usize, RingElement>,
}

/// A row of the multiplication table by name: `left * right = result`.
pub type MultEntry = (String, String, Vec<String>);
/// A row of the differential table by name: `d(element) = result`.
pub type DiffEntry = (String, Vec<String>);

impl RingModel {
    pub fn new(
        basis: Vec<RingBasisElement>,
        truncation_degree: u32,
        mult: &[MultEntry],
        diff: &[DiffEntry],
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::DuplicateName {
                    kind: "ring basis element",
                    name: b.name.clone(),
                });
            }
        }
        let mut ring = RingModel {
            basis,
            truncation_degree,
            index,
            mult: BTreeMap::new(),
            diff: BTreeMap::new(),
        };
        for (l, r, result) in mult {
            let key = (ring.index_of(l)?, ring.index_of(r)?);
            let value = ring.element(result)?;
            if ring.mult.insert(key, value).is_some() {
                return Err(Error::Malformed(format!("product {l}*{r} listed twice")));
            }
        }
        for (x, result) in diff {
            let key = ring.index_of(x)?;
            let value = ring.element(result)?;
            if ring.diff.insert(key, value).is_some() {
                return Err(Error::Malformed(format!("differential of {x} listed twice")));
            }
        }
        Ok(ring)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let owned = |v: &[(&str, &str, &[&str])]| -> Vec<MultEntry> {
            v.iter()
                .map(|(l, r, res)| {
                    (
                        l.to_string(),
                        r.to_string(),
                        res.iter().map(|s| s.to_string()).collect(),
                    )
                })
                .collect()
        };
        match name {
            "trivial" => Self::trivial_checked(),
            // generators of chains on the loop spaces of S^2 and S^4, and their product
            "s2xs4" => Self::new(
                vec![
                    RingBasisElement::new(UNIT, 0),
                    RingBasisElement::new("a", 1),
                    RingBasisElement::new("b", 3),
                    RingBasisElement::new("g", 4),
                ],
                4,
                &owned(&[("a", "b", &["g"]), ("b", "a", &["g"])]),
                &[],
            ),
            "s2xs4-sum" => Self::new(
                vec![
                    RingBasisElement::new(UNIT, 0),
                    RingBasisElement::new("a1", 1),
                    RingBasisElement::new("a2", 1),
                    RingBasisElement::new("b1", 3),
                    RingBasisElement::new("b2", 3),
                    RingBasisElement::new("g", 4),
                ],
                4,
                &owned(&[
                    ("a1", "b1", &["g"]),
                    ("b1", "a1", &["g"]),
                    ("a2", "b2", &["g"]),
                    ("b2", "a2", &["g"]),
                ]),
                &[],
            ),
            other => Err(Error::UnknownName {
                kind: "built-in ring",
                name: other.to_string(),
            }),
        }
    }

    fn trivial_checked() -> Result<Self> {
        Self::new(vec![RingBasisElement::new(UNIT, 0)], 0, &[], &[])
    }

    /// The ground field Z/2 concentrated in degree 0.
    pub fn trivial() -> Self {
        Self::trivial_checked().expect("trivial ring is well formed")
    }

    pub fn basis(&self) -> &[RingBasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    /// True when the model is just Z/2 in degree 0, which involves no
    /// truncation at all.
    pub fn is_trivial(&self) -> bool {
        self.basis.len() == 1 && self.unit().is_some()
    }

    pub fn unit(&self) -> Option<usize> {
        self.index.get(UNIT).copied().filter(|&i| self.basis[i].degree == 0)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownName {
            kind: "ring element",
            name: name.to_string(),
        })
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    /// Z/2 combination of the named basis elements; repeats cancel.
    pub fn element<S: AsRef<str>>(&self, names: &[S]) -> Result<RingElement> {
        let idx = names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingElement::from_indices(self.len(), idx))
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(self.len())
    }

    /// Degree of a homogeneous nonzero element; `None` for zero or mixed.
    pub fn degree_of(&self, e: &RingElement) -> Option<u32> {
        let mut degrees = e.terms().map(|i| self.basis[i].degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Product of two basis elements under the truncation rule.
    pub fn mul_basis(&self, i: usize, j: usize) -> RingElement {
        if self.basis[i].degree + self.basis[j].degree > self.truncation_degree {
            return self.zero();
        }
        if let Some(p) = self.mult.get(&(i, j)) {
            return p.clone();
        }
        match self.unit() {
            Some(u) if u == i => RingElement::basis(self.len(), j),
            Some(u) if u == j => RingElement::basis(self.len(), i),
            _ => self.zero(),
        }
    }

    fn check(&self, e: &RingElement) -> Result<()> {
        if e.0.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: e.0.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the multiplication table.
    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = self.zero();
        for i in a.terms() {
            for j in b.terms() {
                out.add_assign(&self.mul_basis(i, j));
            }
        }
        out
    }

    pub fn multiply_named(&self, a: &str, b: &str) -> Result<RingElement> {
        Ok(self.mul_basis(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn diff_basis(&self, i: usize) -> RingElement {
        self.diff.get(&i).cloned().unwrap_or_else(|| self.zero())
    }

    pub fn differential(&self, a: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        Ok(self.diff_unchecked(a))
    }

    pub(crate) fn diff_unchecked(&self, a: &RingElement) -> RingElement {
        let mut out = self.zero();
        for i in a.terms() {
            out.add_assign(&self.diff_basis(i));
        }
        out
    }

    pub fn has_nonzero_differential(&self) -> bool {
        self.diff.values().any(|d| !d.is_zero())
    }

    pub fn mult_entries(&self) -> impl Iterator<Item = (usize, usize, &RingElement)> {
        self.mult.iter().map(|(&(i, j), e)| (i, j, e))
    }

    pub fn diff_entries(&self) -> impl Iterator<Item = (usize, &RingElement)> {
        self.diff.iter().map(|(&i, e)| (i, e))
    }

    pub fn format(&self, e: &RingElement) -> String {
        FormatRing(self, e).to_string()
    }

    /// Checks every ring axiom on the tables and reports each failure with
    /// its witness. Commutativity is not an axiom and is not checked.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.len();
        let t = self.truncation_degree;
        let deg = |i: usize| self.basis[i].degree;

        let Some(unit) = self.unit() else {
            report.push(Violation::RingMissingUnit);
            return report;
        };

        for i in 0..n {
            if deg(i) > t {
                report.push(Violation::RingElementDegree {
                    element: self.name(i).to_string(),
                    degree: deg(i),
                    truncation: t,
                });
            }
        }

        for i in 0..n {
            let x = RingElement::basis(n, i);
            for (label, p) in [("1*x", self.mul_basis(unit, i)), ("x*1", self.mul_basis(i, unit))] {
                if p != x {
                    report.push(Violation::RingUnit {
                        element: self.name(i).to_string(),
                        detail: format!("{label} = {}", self.format(&p)),
                    });
                }
            }
        }
        if !self.diff_basis(unit).is_zero() {
            report.push(Violation::RingDifferentialDegree {
                element: UNIT.to_string(),
                detail: "the unit must be a cycle".to_string(),
            });
        }

        for (&(i, j), p) in &self.mult {
            if p.is_zero() {
                continue;
            }
            let want = deg(i) + deg(j);
            if want > t {
                report.push(Violation::RingProductDegree {
                    left: self.name(i).to_string(),
                    right: self.name(j).to_string(),
                    detail: format!(
                        "degree {want} exceeds truncation {t} but the table lists {}",
                        self.format(p)
                    ),
                });
            } else if self.degree_of(p) != Some(want) {
                report.push(Violation::RingProductDegree {
                    left: self.name(i).to_string(),
                    right: self.name(j).to_string(),
                    detail: format!("result {} is not homogeneous of degree {want}", self.format(p)),
                });
            }
        }

        for (&i, d) in &self.diff {
            if d.is_zero() {
                continue;
            }
            let ok = deg(i) >= 1 && self.degree_of(d) == Some(deg(i) - 1);
            if !ok {
                report.push(Violation::RingDifferentialDegree {
                    element: self.name(i).to_string(),
                    detail: format!("d = {} from degree {}", self.format(d), deg(i)),
                });
            }
        }

        for i in 0..n {
            let dd = self.diff_unchecked(&self.diff_basis(i));
            if !dd.is_zero() {
                report.push(Violation::RingDifferentialSquare {
                    element: self.name(i).to_string(),
                    residual: self.format(&dd),
                });
            }
        }

        for i in 0..n {
            for j in 0..n {
                if deg(i) + deg(j) > t {
                    continue;
                }
                let xy = self.mul_basis(i, j);
                for k in 0..n {
                    if deg(i) + deg(j) + deg(k) > t {
                        continue;
                    }
                    let left = self.mul_unchecked(&xy, &RingElement::basis(n, k));
                    let yz = self.mul_basis(j, k);
                    let right = self.mul_unchecked(&RingElement::basis(n, i), &yz);
                    let residual = left.plus(&right);
                    if !residual.is_zero() {
                        report.push(Violation::RingAssociativity {
                            x: self.name(i).to_string(),
                            y: self.name(j).to_string(),
                            z: self.name(k).to_string(),
                            residual: self.format(&residual),
                        });
                    }
                }
                let x = RingElement::basis(n, i);
                let y = RingElement::basis(n, j);
                let mut residual = self.diff_unchecked(&xy);
                residual.add_assign(&self.mul_unchecked(&self.diff_basis(i), &y));
                residual.add_assign(&self.mul_unchecked(&x, &self.diff_basis(j)));
                if !residual.is_zero() {
                    report.push(Violation::RingLeibniz {
                        x: self.name(i).to_string(),
                        y: self.name(j).to_string(),
                        residual: self.format(&residual),
                    });
                }
            }
        }
        report
    }
}

struct FormatRing<'a>(&'a RingModel, &'a RingElement);

impl fmt::Display for FormatRing<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.1.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(self.0.name(i))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
