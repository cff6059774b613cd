//! Higher spectral invariants `σ̄ʳ`, `σ̃ʳ` from the value truncations
//! `C^ν ⊂ C → C/C^ν`, and the gap report.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{ChainElement, ChainTerm, FilteredComplex};
use crate::error::{Error, Result};
use crate::gf2::Subspace;
use crate::homology::{FilteredHomology, HomologyClass};
use crate::par::{self, Execution};
use crate::ring::{RingModel, UNIT};
use crate::spectral::{self, ComplexView, PageClass, SpectralPage};
use crate::validation::{ValidationReport, Violation};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HigherInvariantValue {
    pub r: u32,
    pub class: String,
    pub sigma_bar: f64,
    pub sigma_tilde: f64,
    /// `σ̄ - σ(1)`, when `H_0` is one-dimensional.
    pub c_bar: Option<f64>,
    pub c_tilde: Option<f64>,
}

/// Page `r` of a complex together with the sorted value list used for
/// the ν-scans.
#[derive(Clone, Debug)]
pub struct HigherInvariants {
    page: SpectralPage,
    values: Vec<f64>,
    normalization: Option<f64>,
    exec: Execution,
}

impl HigherInvariants {
    pub fn new(c: &FilteredComplex, r: u32, exec: Execution) -> Result<Self> {
        spectral::check_page_request(c.ring(), r)?;
        let total = Arc::new(c.total_complex()?);
        let normalization = FilteredHomology::from_total((*total).clone()).normalization();
        let page = SpectralPage::compute(ComplexView::full(total), r, exec)?;
        Ok(Self {
            page,
            values: c.sorted_values(),
            normalization,
            exec,
        })
    }

    pub fn page(&self) -> &SpectralPage {
        &self.page
    }

    pub fn r(&self) -> u32 {
        self.page.r()
    }

    /// `σ(1)` of the total complex, if `dim H_0 = 1`.
    pub fn normalization(&self) -> Option<f64> {
        self.normalization
    }

    pub fn class(&self, e: &ChainElement) -> Result<PageClass> {
        self.page.class_of_chain(e)
    }

    fn total(&self) -> &Arc<crate::complex::TotalComplex> {
        self.page.view().shared_total()
    }

    /// Whether `α` lies in the image of page `r` of `C^ν`.
    pub fn in_truncation_image(&self, class: &PageClass, nu: f64) -> bool {
        let view = ComplexView::below(self.total().clone(), nu);
        let n = class.p + class.q;
        let z = view.z(self.r() as i32, class.p, n);
        let cell = self.page.cell(class.p, class.q).expect("class cell exists");
        let images = z
            .basis()
            .iter()
            .map(|v| cell.coords(v).expect("subcomplex cycles survive"));
        let span = Subspace::from_owned(cell.dim(), images).expect("cell dimension");
        span.contains(&class.coefficients).expect("cell dimension")
    }

    /// Whether `α` maps to zero on page `r` of `C/C^ν`.
    pub fn vanishes_in_quotient(&self, class: &PageClass, nu: f64) -> bool {
        let view = ComplexView::above(self.total().clone(), nu);
        let x = view.project(&class.vector);
        if x.is_zero() {
            return true;
        }
        let n = class.p + class.q;
        view.denominator(self.r() as i32, class.p, n)
            .contains(&x)
            .expect("same ambient")
    }

    fn first_value(&self, pred: impl Fn(f64) -> bool + Sync + Send) -> f64 {
        let at =
            par::position_first(self.exec, &self.values, |&nu| pred(nu)).expect("the largest value always qualifies");
        self.values[at]
    }

    pub fn sigma_bar(&self, class: &PageClass) -> Result<f64> {
        if class.is_zero() {
            return Err(Error::ZeroClass);
        }
        Ok(self.first_value(|nu| self.in_truncation_image(class, nu)))
    }

    pub fn sigma_tilde(&self, class: &PageClass) -> Result<f64> {
        if class.is_zero() {
            return Err(Error::ZeroClass);
        }
        Ok(self.first_value(|nu| self.vanishes_in_quotient(class, nu)))
    }

    /// Both invariants and their normalized versions; errors if the
    /// ordering `σ̃ ≤ σ̄` fails.
    pub fn value(&self, class: &PageClass) -> Result<HigherInvariantValue> {
        let sigma_bar = self.sigma_bar(class)?;
        let sigma_tilde = self.sigma_tilde(class)?;
        if sigma_tilde > sigma_bar {
            return Err(Error::InternalConsistency(format!(
                "page {}: tilde value {sigma_tilde} above bar value {sigma_bar} for {}",
                self.r(),
                class.representative
            )));
        }
        let norm = |s: f64| self.normalization.map(|n| s - n);
        Ok(HigherInvariantValue {
            r: self.r(),
            class: class.representative.to_string(),
            sigma_bar,
            sigma_tilde,
            c_bar: norm(sigma_bar),
            c_tilde: norm(sigma_tilde),
        })
    }
}

/// Higher invariants of the page-`r` class represented by `class`.
pub fn higher(c: &FilteredComplex, r: u32, class: &ChainElement, exec: Execution) -> Result<HigherInvariantValue> {
    let h = HigherInvariants::new(c, r, exec)?;
    let k = h.class(class)?;
    h.value(&k)
}

/// `Σ x_j ⊗ z_j` for ring tags `x_j` and homology classes `α_j` of the
/// underlying plain complex with representatives `z_j`.
pub fn tensor_representative(ring: &RingModel, terms: &[(&str, &HomologyClass)]) -> Result<ChainElement> {
    check_decomposition(ring, terms)?;
    let mut out = ChainElement::zero();
    for (tag, class) in terms {
        for t in class.representative.terms() {
            if t.ring != UNIT {
                return Err(Error::Malformed(format!("{t} is not a plain chain")));
            }
            out.toggle(ChainTerm::new(*tag, t.generator.clone()));
        }
    }
    Ok(out)
}

fn check_decomposition(ring: &RingModel, terms: &[(&str, &HomologyClass)]) -> Result<()> {
    let Some((first_tag, first)) = terms.first() else {
        return Err(Error::Malformed("empty decomposition".into()));
    };
    let q = ring.degree(ring.index_of(first_tag)?);
    let mut seen = BTreeSet::new();
    for (tag, class) in terms {
        if !seen.insert(*tag) {
            return Err(Error::Malformed(format!("ring tag {tag} repeated")));
        }
        if class.coefficients.is_zero() {
            return Err(Error::ZeroClass);
        }
        if ring.degree(ring.index_of(tag)?) != q || class.degree != first.degree {
            return Err(Error::Malformed("decomposition terms live in different cells".into()));
        }
    }
    Ok(())
}

/// `max_j σ(α_j)` for a page-2 class `Σ x_j ⊗ α_j`; `plain` is the homology
/// of the complex the `α_j` belong to.
pub fn mixed_page_sigma(plain: &FilteredHomology, ring: &RingModel, terms: &[(&str, &HomologyClass)]) -> Result<f64> {
    check_decomposition(ring, terms)?;
    terms
        .iter()
        .map(|(_, class)| plain.sigma(class))
        .try_fold(f64::NEG_INFINITY, |acc, s| Ok(acc.max(s?)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapEntry {
    pub r: u32,
    pub source: String,
    pub target: String,
    pub source_cell: (i32, i32),
    pub target_cell: (i32, i32),
    pub source_bar: f64,
    pub source_tilde: f64,
    pub target_tilde: f64,
    /// `c̄ʳ(α) - c̃ʳ(β)`.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub entries: Vec<GapEntry>,
    /// Smallest gap; an upper bound on the geometric width constant.
    pub min_gap: Option<f64>,
    /// `c([top])` of the ring-degree-0 line; a lower bound on the Hofer
    /// distance.
    pub hofer_lower_bound: Option<f64>,
    pub checks: ValidationReport,
}

/// Scans pages `2..=max_r` for basis classes with nonzero `d_r` and records
/// the value gaps, checking `c̃ʳ(α) ≥ c̃ʳ(β)` on every entry.
pub fn gap_report(c: &FilteredComplex, max_r: u32, exec: Execution) -> Result<GapReport> {
    for r in 2..=max_r {
        spectral::check_page_request(c.ring(), r)?;
    }
    let mut entries = Vec::new();
    for r in 2..=max_r {
        let h = HigherInvariants::new(c, r, exec)?;
        let sources: Vec<(PageClass, PageClass)> = h
            .page()
            .basis_classes()
            .into_iter()
            .map(|a| Ok((h.page().differential(&a)?, a)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(b, _)| !b.is_zero())
            .map(|(b, a)| (a, b))
            .collect();
        let computed = par::try_map(exec, &sources, |(a, b)| -> Result<GapEntry> {
            let va = h.value(a)?;
            let tb = h.sigma_tilde(b)?;
            let (bar, tilde_a, tilde_b) = match h.normalization() {
                Some(n) => (va.sigma_bar - n, va.sigma_tilde - n, tb - n),
                None => (va.sigma_bar, va.sigma_tilde, tb),
            };
            Ok(GapEntry {
                r,
                source: a.representative.to_string(),
                target: b.representative.to_string(),
                source_cell: a.cell(),
                target_cell: b.cell(),
                source_bar: bar,
                source_tilde: tilde_a,
                target_tilde: tilde_b,
                gap: bar - tilde_b,
            })
        })?;
        entries.extend(computed);
    }
    let mut checks = ValidationReport::new();
    for e in &entries {
        if e.source_tilde < e.target_tilde {
            checks.push(Violation::GapOrdering {
                page: e.r,
                source: e.source.clone(),
                target: e.target.clone(),
                source_tilde: e.source_tilde,
                target_tilde: e.target_tilde,
            });
        }
    }
    let min_gap = entries.iter().map(|e| e.gap).min_by(f64::total_cmp);
    Ok(GapReport {
        entries,
        min_gap,
        hofer_lower_bound: hofer_lower_bound(c),
        checks,
    })
}

/// `c` of the top class of the ring-degree-0 line.
pub fn hofer_lower_bound(c: &FilteredComplex) -> Option<f64> {
    let plain = c.underlying_plain();
    let h = FilteredHomology::new(&plain).ok()?;
    let (&d, _) = h.ranks().iter().rev().find(|(_, &r)| r > 0)?;
    let classes = h.classes(d);
    if classes.len() != 1 {
        return None;
    }
    h.absolute(&classes[0]).ok()
}

/// Sorted distinct values with every midpoint and one point beyond each end.
pub fn refined_grid(values: &[f64]) -> Vec<f64> {
    let mut grid = Vec::new();
    if let (Some(first), Some(last)) = (values.first(), values.last()) {
        grid.push(first - 1.0);
        for w in values.windows(2) {
            grid.push(w[0]);
            grid.push((w[0] + w[1]) / 2.0);
        }
        grid.push(*last);
        grid.push(last + 1.0);
    }
    grid
}

/// Brute-force `σ̄` over an explicit grid (for cross-checking the scan).
pub fn sigma_bar_on_grid(h: &HigherInvariants, class: &PageClass, grid: &[f64]) -> Option<f64> {
    grid.iter().copied().find(|&nu| h.in_truncation_image(class, nu))
}

pub fn sigma_tilde_on_grid(h: &HigherInvariants, class: &PageClass, grid: &[f64]) -> Option<f64> {
    grid.iter().copied().find(|&nu| h.vanishes_in_quotient(class, nu))
}
