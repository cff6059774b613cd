//! The invariant report: every table the command-line tool prints, as plain
//! data with a text rendering and a JSON form.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{ChainElement, FilteredComplex};
use crate::error::Result;
use crate::format::{format_value, Document};
use crate::higher::{gap_report, GapReport, HigherInvariantValue, HigherInvariants};
use crate::homology::FilteredHomology;
use crate::par::Execution;
use crate::spectral::{self, ComplexView, SpectralPage};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub degree: i32,
    /// The value text as read.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankRow {
    pub degree: i32,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassRow {
    pub degree: i32,
    pub representative: String,
    pub sigma: f64,
    pub c: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomologySection {
    pub ranks: Vec<RankRow>,
    /// Ranks of the ring-degree-0 line, for complexes over a nontrivial ring.
    pub base_ranks: Option<Vec<RankRow>>,
    /// `σ(1)`, subtracted to get absolute values.
    pub normalization: Option<f64>,
    pub classes: Vec<ClassRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellRow {
    pub p: i32,
    pub q: i32,
    pub dim: usize,
    pub representatives: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PageDump {
    pub r: u32,
    pub cells: Vec<CellRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    /// Smallest gap-report entry: an upper bound on the width constant.
    pub width_upper_bound: Option<f64>,
    /// `c([top])`: a lower bound on the Hofer distance.
    pub hofer_lower_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub format_version: u32,
    pub ring: Vec<String>,
    pub truncation_degree: u32,
    pub generators: Vec<GeneratorRow>,
    pub homology: HomologySection,
    pub pages: Vec<PageDump>,
    pub higher: Vec<HigherInvariantValue>,
    pub gaps: Option<GapReport>,
    pub bounds: Bounds,
}

/// Largest page the report computes by default: the stable page, capped
/// where the ring truncation stops permitting pages.
pub fn default_max_page(c: &FilteredComplex) -> Result<u32> {
    let view = ComplexView::full(Arc::new(c.total_complex()?));
    let stable = spectral::stable_page_index(&view).max(2);
    Ok(if c.ring().is_trivial() {
        stable
    } else {
        stable.min(c.ring().truncation_degree() + 1)
    })
}

pub fn homology_section(c: &FilteredComplex) -> Result<HomologySection> {
    let h = FilteredHomology::new(c)?;
    let classes = h
        .all_classes()
        .iter()
        .map(|k| {
            let v = h.spectral_number(k)?;
            Ok(ClassRow {
                degree: k.degree,
                representative: k.representative.to_string(),
                sigma: v.relative,
                c: v.absolute,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = |h: &FilteredHomology| {
        h.ranks()
            .into_iter()
            .map(|(degree, rank)| RankRow { degree, rank })
            .collect::<Vec<_>>()
    };
    let base_ranks = if c.ring().is_trivial() {
        None
    } else {
        Some(rows(&FilteredHomology::new(&c.underlying_plain())?))
    };
    Ok(HomologySection {
        ranks: rows(&h),
        base_ranks,
        normalization: h.normalization(),
        classes,
    })
}

/// The row for one class expression.
pub fn class_row(c: &FilteredComplex, class: &ChainElement) -> Result<ClassRow> {
    let h = FilteredHomology::new(c)?;
    let k = h.class_of_chain(class)?;
    let v = h.spectral_number(&k)?;
    Ok(ClassRow {
        degree: k.degree,
        representative: k.representative.to_string(),
        sigma: v.relative,
        c: v.absolute,
    })
}

pub fn page_dump(page: &SpectralPage) -> PageDump {
    let total = page.view().total();
    PageDump {
        r: page.r(),
        cells: page
            .cells()
            .filter(|cell| cell.dim() > 0)
            .map(|cell| CellRow {
                p: cell.p,
                q: cell.q,
                dim: cell.dim(),
                representatives: cell.reps().iter().map(|v| total.chain(v).to_string()).collect(),
            })
            .collect(),
    }
}

/// Pages `1..=max_r`, refusing pages beyond the ring truncation.
pub fn pages(c: &FilteredComplex, max_r: u32, exec: Execution) -> Result<Vec<PageDump>> {
    for r in 1..=max_r {
        spectral::check_page_request(c.ring(), r)?;
    }
    let total = Arc::new(c.total_complex()?);
    (1..=max_r)
        .map(|r| {
            Ok(page_dump(&SpectralPage::compute(
                ComplexView::full(total.clone()),
                r,
                exec,
            )?))
        })
        .collect()
}

/// Higher invariants of every basis class on pages `2..=max_r`.
pub fn higher_table(c: &FilteredComplex, max_r: u32, exec: Execution) -> Result<Vec<HigherInvariantValue>> {
    let mut out = Vec::new();
    for r in 2..=max_r {
        let h = HigherInvariants::new(c, r, exec)?;
        for k in h.page().basis_classes() {
            out.push(h.value(&k)?);
        }
    }
    Ok(out)
}

pub fn build(doc: &Document, max_page: Option<u32>, exec: Execution) -> Result<InvariantReport> {
    let c = &doc.complex;
    let max_r = match max_page {
        Some(r) => r,
        None => default_max_page(c)?,
    };
    let gaps = if max_r >= 2 {
        Some(gap_report(c, max_r, exec)?)
    } else {
        None
    };
    let ring = c.ring();
    Ok(InvariantReport {
        format_version: crate::format::FORMAT_VERSION,
        ring: ring.basis().iter().map(|b| b.name.clone()).collect(),
        truncation_degree: ring.truncation_degree(),
        generators: c
            .generators()
            .iter()
            .zip(&doc.value_text)
            .map(|(g, text)| GeneratorRow {
                name: g.name.clone(),
                degree: g.degree,
                value: text.clone(),
            })
            .collect(),
        homology: homology_section(c)?,
        pages: pages(c, max_r, exec)?,
        higher: higher_table(c, max_r, exec)?,
        bounds: Bounds {
            width_upper_bound: gaps.as_ref().and_then(|g| g.min_gap),
            hofer_lower_bound: crate::higher::hofer_lower_bound(c),
        },
        gaps,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), format_value)
}

impl fmt::Display for HomologySection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "homology")?;
        for r in &self.ranks {
            writeln!(f, "  H_{} = {}", r.degree, r.rank)?;
        }
        if let Some(base) = &self.base_ranks {
            writeln!(f, "ring-degree-0 line")?;
            for r in base {
                writeln!(f, "  H_{} = {}", r.degree, r.rank)?;
            }
        }
        writeln!(f, "normalization sigma(1) = {}", opt(self.normalization))?;
        writeln!(f, "classes (degree, sigma, c, representative)")?;
        for k in &self.classes {
            writeln!(f, "{}", ClassLine(k))?;
        }
        Ok(())
    }
}

pub struct ClassLine<'a>(pub &'a ClassRow);

impl fmt::Display for ClassLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.0;
        write!(
            f,
            "  {:>3}  sigma = {:<8}  c = {:<8}  {}",
            k.degree,
            format_value(k.sigma),
            opt(k.c),
            k.representative
        )
    }
}

impl fmt::Display for PageDump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "page {}", self.r)?;
        if self.cells.is_empty() {
            writeln!(f, "  (empty)")?;
        }
        for cell in &self.cells {
            writeln!(
                f,
                "  E({}, {}) dim {}: {}",
                cell.p,
                cell.q,
                cell.dim,
                cell.representatives.join(" | ")
            )?;
        }
        Ok(())
    }
}

pub struct HigherLine<'a>(pub &'a HigherInvariantValue);

impl fmt::Display for HigherLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.0;
        write!(
            f,
            "  r = {}  {}: sigma_bar = {}  sigma_tilde = {}  c_bar = {}  c_tilde = {}",
            v.r,
            v.class,
            format_value(v.sigma_bar),
            format_value(v.sigma_tilde),
            opt(v.c_bar),
            opt(v.c_tilde)
        )
    }
}

impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gap report")?;
        if self.entries.is_empty() {
            writeln!(f, "  no nonzero differentials")?;
        }
        for e in &self.entries {
            writeln!(
                f,
                "  d_{}({}) = {}  gap = {}  (c_bar = {}, c_tilde = {} -> {})",
                e.r,
                e.source,
                e.target,
                format_value(e.gap),
                format_value(e.source_bar),
                format_value(e.source_tilde),
                format_value(e.target_tilde)
            )?;
        }
        writeln!(f, "min gap = {}", opt(self.min_gap))?;
        writeln!(f, "hofer lower bound = {}", opt(self.hofer_lower_bound))?;
        if !self.checks.is_ok() {
            write!(f, "{}", self.checks)?;
        }
        Ok(())
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(
            s,
            "ring {{{}}} truncated above degree {}",
            self.ring.join(", "),
            self.truncation_degree
        )?;
        writeln!(s, "generators")?;
        for g in &self.generators {
            writeln!(s, "  {} degree {} value {}", g.name, g.degree, g.value)?;
        }
        write!(s, "{}", self.homology)?;
        for p in &self.pages {
            write!(s, "{p}")?;
        }
        writeln!(s, "higher invariants")?;
        for v in &self.higher {
            writeln!(s, "{}", HigherLine(v))?;
        }
        if let Some(g) = &self.gaps {
            write!(s, "{g}")?;
        }
        writeln!(s, "bounds")?;
        writeln!(s, "  width upper bound = {}", opt(self.bounds.width_upper_bound))?;
        writeln!(s, "  hofer lower bound = {}", opt(self.bounds.hofer_lower_bound))?;
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn fixture_b_report() {
        let doc = Document::new(builtin::s2xs4());
        let r = build(&doc, None, Execution::Sequential).unwrap();
        assert_eq!(r.pages.len(), 5);
        let base: Vec<_> = r
            .homology
            .base_ranks
            .as_ref()
            .unwrap()
            .iter()
            .filter(|x| x.rank > 0)
            .map(|x| (x.degree, x.rank))
            .collect();
        assert_eq!(base, [(0, 1), (2, 1), (4, 1), (6, 1)]);
        let v = r.higher.iter().find(|v| v.r == 2 && v.class == "a*p4").unwrap();
        assert_eq!(v.c_bar, Some(2.1));
        assert_eq!(r.bounds.hofer_lower_bound, Some(4.0));
        let text = r.to_string();
        assert!(text.contains("a*p4"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["bounds"]["hofer_lower_bound"], 4.0);
    }

    #[test]
    fn circle_report() {
        let doc = Document::new(builtin::circle_shift(5.0).unwrap());
        let r = build(&doc, None, Execution::Parallel).unwrap();
        let top = r.homology.classes.iter().find(|k| k.degree == 1).unwrap();
        assert_eq!(top.c, Some(10.0));
        assert!(r.gaps.unwrap().entries.is_empty());
    }

    #[test]
    fn pages_refuse_past_truncation() {
        let c = builtin::s2xs4();
        assert!(pages(&c, 5, Execution::Sequential).is_ok());
        assert!(matches!(
            pages(&c, 9, Execution::Sequential),
            Err(crate::Error::TruncationInsufficient { .. })
        ));
    }
}
