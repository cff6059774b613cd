//! The spectral sequence of the degree filtration of the total complex.
//!
//! Pages are computed directly from
//! `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1})`, keeping chain-level
//! representatives; `d_r` has bidegree `(-r, r-1)`.

mod view;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use view::{ComplexView, ViewKind};

use crate::complex::{ChainElement, FilteredComplex};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, Quotient, Subspace};
use crate::par::{self, Execution};
use crate::ring::RingModel;

#[derive(Clone, Debug)]
pub struct PageCell {
    pub p: i32,
    pub q: i32,
    quotient: Quotient,
}

impl PageCell {
    pub fn degree(&self) -> i32 {
        self.p + self.q
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Chain-level representatives of the cell basis.
    pub fn reps(&self) -> &[Gf2Vector] {
        self.quotient.reps()
    }

    /// Coordinates of `v`, or `None` when `v` is not in `Z^r_p`.
    pub fn coords(&self, v: &Gf2Vector) -> Option<Gf2Vector> {
        self.quotient.coords(v)
    }

    pub fn lift(&self, coords: &Gf2Vector) -> Gf2Vector {
        self.quotient.lift(coords)
    }
}

/// A class on a page: coordinates over its cell basis plus a chain-level
/// representative.
#[derive(Clone, Debug, PartialEq)]
pub struct PageClass {
    pub r: u32,
    pub p: i32,
    pub q: i32,
    pub coefficients: Gf2Vector,
    pub representative: ChainElement,
    pub vector: Gf2Vector,
}

impl PageClass {
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_zero()
    }

    pub fn cell(&self) -> (i32, i32) {
        (self.p, self.q)
    }
}

#[derive(Clone, Debug)]
pub struct SpectralPage {
    r: u32,
    view: ComplexView,
    cells: BTreeMap<(i32, i32), PageCell>,
}

/// Errors when page `r` would need ring degrees above the truncation: `d_r`
/// moves ring degree up by `r - 1`, so that shift must stay within it.
pub fn check_page_request(ring: &RingModel, r: u32) -> Result<()> {
    let needed = r.saturating_sub(1);
    if !ring.is_trivial() && needed > ring.truncation_degree() {
        return Err(Error::TruncationInsufficient {
            page: r,
            needed,
            truncation: ring.truncation_degree(),
        });
    }
    Ok(())
}

/// Page `r` of a validating complex, refusing pages beyond the ring
/// truncation window.
pub fn page(c: &FilteredComplex, r: u32, exec: Execution) -> Result<SpectralPage> {
    check_page_request(c.ring(), r)?;
    let total = Arc::new(c.total_complex()?);
    SpectralPage::compute(ComplexView::full(total), r, exec)
}

/// The stabilized page, `r` one past the filtration spread.
pub fn limit_page(c: &FilteredComplex, exec: Execution) -> Result<SpectralPage> {
    let total = Arc::new(c.total_complex()?);
    let view = ComplexView::full(total);
    let r = stable_page_index(&view);
    SpectralPage::compute(view, r, exec)
}

/// First page index from which every differential vanishes.
pub fn stable_page_index(view: &ComplexView) -> u32 {
    view.filtration_range().map_or(1, |(lo, hi)| (hi - lo + 1) as u32)
}

impl SpectralPage {
    /// Computes page `r` of a view without the truncation refusal.
    pub fn compute(view: ComplexView, r: u32, exec: Execution) -> Result<Self> {
        let keys: Vec<(i32, i32)> = view.cell_keys().into_iter().collect();
        let ri = r as i32;
        let cells = par::try_map(exec, &keys, |&(p, q)| {
            Ok(PageCell {
                p,
                q,
                quotient: view.cell(ri, p, q)?,
            })
        })?;
        Ok(Self {
            r,
            view,
            cells: keys.into_iter().zip(cells).collect(),
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn view(&self) -> &ComplexView {
        &self.view
    }

    pub fn cells(&self) -> impl Iterator<Item = &PageCell> {
        self.cells.values()
    }

    pub fn cell(&self, p: i32, q: i32) -> Option<&PageCell> {
        self.cells.get(&(p, q))
    }

    /// Dimensions of the nonzero cells.
    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        self.cells
            .iter()
            .filter(|(_, c)| c.dim() > 0)
            .map(|(&k, c)| (k, c.dim()))
            .collect()
    }

    /// Sum of cell dimensions per total degree.
    /// Total dimension per degree, nonzero degrees only.
    pub fn total_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for c in self.cells.values().filter(|c| c.dim() > 0) {
            *out.entry(c.degree()).or_default() += c.dim();
        }
        out
    }

    fn make_class(&self, p: i32, q: i32, coefficients: Gf2Vector, vector: Gf2Vector) -> PageClass {
        PageClass {
            r: self.r,
            p,
            q,
            coefficients,
            representative: self.view.total().chain(&vector),
            vector,
        }
    }

    /// Basis classes of one cell.
    pub fn classes(&self, p: i32, q: i32) -> Vec<PageClass> {
        let Some(cell) = self.cell(p, q) else {
            return Vec::new();
        };
        let k = cell.dim();
        cell.reps()
            .iter()
            .enumerate()
            .map(|(i, v)| self.make_class(p, q, Gf2Vector::unit(k, i), v.clone()))
            .collect()
    }

    /// Basis classes of every cell.
    pub fn basis_classes(&self) -> Vec<PageClass> {
        self.cells.keys().flat_map(|&(p, q)| self.classes(p, q)).collect()
    }

    /// The class of a chain-level vector in the cell of its top filtration
    /// index; errors unless it lies in `Z^r_p`.
    pub fn class_of(&self, v: &Gf2Vector) -> Result<PageClass> {
        let v = self.view.project(v);
        let total = self.view.total();
        let n = total.degree_of(&v).ok_or_else(|| {
            if v.is_zero() {
                Error::ZeroClass
            } else {
                Error::Malformed(format!("{} is not homogeneous", total.chain(&v)))
            }
        })?;
        let p = v.ones().map(|i| total.basis()[i].filtration).max().expect("nonzero");
        let q = n - p;
        let cell = self
            .cell(p, q)
            .ok_or_else(|| Error::InternalConsistency(format!("missing cell ({p}, {q})")))?;
        let coefficients = cell.coords(&v).ok_or_else(|| {
            Error::Malformed(format!(
                "{} does not survive to page {}: its differential leaves F_{}",
                total.chain(&v),
                self.r,
                p - self.r as i32
            ))
        })?;
        Ok(self.make_class(p, q, coefficients, v))
    }

    pub fn class_of_chain(&self, e: &ChainElement) -> Result<PageClass> {
        self.class_of(&self.view.total().vector(e)?)
    }

    /// Reduces a vector of degree `p + q` into cell `(p, q)`. Cells absent
    /// from the view have dimension zero.
    fn coords_in(&self, p: i32, q: i32, v: &Gf2Vector) -> Result<Gf2Vector> {
        match self.cell(p, q) {
            Some(cell) => cell.coords(v).ok_or_else(|| {
                Error::InternalConsistency(format!("image {} not in Z^{}_{p}", self.view.total().chain(v), self.r))
            }),
            // no basis element of filtration exactly p, so v lies in F_{p-1},
            // which is inside the denominator
            None => Ok(Gf2Vector::zeros(0)),
        }
    }

    /// `d_r` of a class, landing in cell `(p - r, q + r - 1)`.
    pub fn differential(&self, class: &PageClass) -> Result<PageClass> {
        let r = self.r as i32;
        let (tp, tq) = (class.p - r, class.q + r - 1);
        let image = self.view.d(&class.vector);
        let coefficients = self.coords_in(tp, tq, &image)?;
        let vector = match self.cell(tp, tq) {
            Some(cell) if !coefficients.is_zero() => cell.lift(&coefficients),
            _ => image,
        };
        Ok(self.make_class(tp, tq, coefficients, vector))
    }

    /// Matrix of `d_r` out of cell `(p, q)` in cell coordinates.
    pub fn differential_matrix(&self, p: i32, q: i32) -> Result<Gf2Matrix> {
        let r = self.r as i32;
        let target_dim = self.cell(p - r, q + r - 1).map_or(0, PageCell::dim);
        let columns = self
            .classes(p, q)
            .iter()
            .map(|c| Ok(self.differential(c)?.coefficients.resized(target_dim)))
            .collect::<Result<Vec<_>>>()?;
        Gf2Matrix::from_columns(target_dim, columns)
    }

    pub fn has_nonzero_differential(&self) -> Result<bool> {
        for &(p, q) in self.cells.keys() {
            if !self.differential_matrix(p, q)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether `d_r ∘ d_r = 0` on every cell.
    pub fn square_is_zero(&self) -> Result<bool> {
        let r = self.r as i32;
        for &(p, q) in self.cells.keys() {
            let first = self.differential_matrix(p, q)?;
            let second = self.differential_matrix(p - r, q + r - 1)?;
            if first.row_count() == 0 || second.column_count() == 0 {
                continue;
            }
            if !second.mul(&first)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generator pairs `(x, y)` with a nonzero differential entry of index
    /// gap at most `r`, listed when `d_r` is nonzero.
    pub fn nonzero_dr_witness(&self) -> Result<Vec<(String, String)>> {
        if !self.has_nonzero_differential()? {
            return Ok(Vec::new());
        }
        let c = self.view.total().complex();
        let r = self.r as i32;
        Ok(c.entries()
            .iter()
            .filter(|e| {
                let gap = c.generator(&e.source).map(|g| g.degree).unwrap_or(0)
                    - c.generator(&e.target).map(|g| g.degree).unwrap_or(0);
                (1..=r).contains(&gap)
            })
            .map(|e| (e.source.clone(), e.target.clone()))
            .collect())
    }
}

/// `E^{r+1}` as the homology of `(E^r, d_r)`, cross-checked against the
/// direct computation: cellwise dimensions must agree and the direct page's
/// representatives must give independent `d_r`-cycles modulo boundaries.
pub fn turn_page(page: &SpectralPage, exec: Execution) -> Result<SpectralPage> {
    let next = SpectralPage::compute(page.view.clone(), page.r + 1, exec)?;
    let r = page.r as i32;
    let keys: Vec<(i32, i32)> = page.cells.keys().copied().collect();
    par::try_map(exec, &keys, |&(p, q)| -> Result<()> {
        let dim = page.cell(p, q).map_or(0, PageCell::dim);
        let out = page.differential_matrix(p, q)?;
        let incoming = page.differential_matrix(p + r, q - r + 1)?;
        let kernel_dim = dim - out.rank();
        let image = Subspace::span(dim, incoming.columns())?;
        let homology_dim = kernel_dim - image.dim();
        let direct_dim = next.cell(p, q).map_or(0, PageCell::dim);
        if homology_dim != direct_dim {
            return Err(Error::InternalConsistency(format!(
                "cell ({p}, {q}): H(E^{r}) has dimension {homology_dim}, E^{} has {direct_dim}",
                r + 1
            )));
        }
        let cell = page.cell(p, q);
        let mut acc = image;
        for rep in next.cell(p, q).map(PageCell::reps).unwrap_or_default() {
            let coords = cell.and_then(|c| c.coords(rep)).ok_or_else(|| {
                Error::InternalConsistency(format!("cell ({p}, {q}): page {} class outside page {r}", r + 1))
            })?;
            if !out.mul_vector(&coords)?.is_zero() || !acc.insert(&coords)? {
                return Err(Error::InternalConsistency(format!(
                    "cell ({p}, {q}): page {} classes do not match d_{r}-homology",
                    r + 1
                )));
            }
        }
        Ok(())
    })?;
    Ok(next)
}
