use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::{TotalBasis, TotalComplex};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, Quotient, Subspace};

/// Which part of a total complex a view covers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ViewKind {
    Full,
    /// The subcomplex of basis elements with value `≤ ν`.
    Below(f64),
    /// The quotient by the `≤ ν` subcomplex.
    Above(f64),
}

/// A subset `S` of the total basis closed under either `d` (a subcomplex)
/// or its complement (a quotient), with differential `π_S ∘ d`.
///
/// Vectors keep the ambient length of the full total complex.
#[derive(Clone, Debug)]
pub struct ComplexView {
    total: Arc<TotalComplex>,
    mask: Gf2Vector,
    kind: ViewKind,
}

impl ComplexView {
    pub fn full(total: Arc<TotalComplex>) -> Self {
        let mask = total.mask(|_| true);
        Self {
            total,
            mask,
            kind: ViewKind::Full,
        }
    }

    pub fn below(total: Arc<TotalComplex>, nu: f64) -> Self {
        let mask = total.mask(|b| b.value <= nu);
        Self {
            total,
            mask,
            kind: ViewKind::Below(nu),
        }
    }

    pub fn above(total: Arc<TotalComplex>, nu: f64) -> Self {
        let mask = total.mask(|b| b.value > nu);
        Self {
            total,
            mask,
            kind: ViewKind::Above(nu),
        }
    }

    pub fn total(&self) -> &TotalComplex {
        &self.total
    }

    pub fn shared_total(&self) -> &Arc<TotalComplex> {
        &self.total
    }

    pub fn kind(&self) -> ViewKind {
        self.kind
    }

    pub fn mask(&self) -> &Gf2Vector {
        &self.mask
    }

    pub fn ambient(&self) -> usize {
        self.total.len()
    }

    /// The view's differential.
    pub fn d(&self, v: &Gf2Vector) -> Gf2Vector {
        self.total.apply(&v.masked(&self.mask)).masked(&self.mask)
    }

    pub fn project(&self, v: &Gf2Vector) -> Gf2Vector {
        v.masked(&self.mask)
    }

    fn indices(&self, pred: impl Fn(&TotalBasis) -> bool) -> Vec<usize> {
        self.mask.ones().filter(|&i| pred(&self.total.basis()[i])).collect()
    }

    /// `(p, q)` of every basis element in the view.
    pub fn cell_keys(&self) -> BTreeSet<(i32, i32)> {
        self.mask
            .ones()
            .map(|i| {
                let b = &self.total.basis()[i];
                (b.filtration, b.ring_degree as i32)
            })
            .collect()
    }

    /// Smallest and largest degree-filtration index present.
    pub fn filtration_range(&self) -> Option<(i32, i32)> {
        let mut it = self.mask.ones().map(|i| self.total.basis()[i].filtration);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), p| (lo.min(p), hi.max(p))))
    }

    /// `Z^r_{p}` in total degree `n`: elements of `F_p` whose differential
    /// lies in `F_{p-r}`. For `r ≤ 0` this is all of `F_p`.
    pub fn z(&self, r: i32, p: i32, n: i32) -> Subspace {
        let idx = self.indices(|b| b.filtration <= p && b.degree == n);
        let ambient = self.ambient();
        let units = |sel: &[usize]| -> Vec<Gf2Vector> { sel.iter().map(|&i| Gf2Vector::unit(ambient, i)).collect() };
        if r <= 0 || idx.is_empty() {
            return Subspace::from_owned(ambient, units(&idx)).expect("same ambient");
        }
        let high = self.total.mask(|b| b.filtration > p - r);
        let columns: Vec<Gf2Vector> = idx
            .iter()
            .map(|&i| self.d(&Gf2Vector::unit(ambient, i)).masked(&high))
            .collect();
        let m = Gf2Matrix::from_columns(ambient, columns).expect("uniform column length");
        let vectors = m.kernel().into_iter().map(|k| {
            let mut v = Gf2Vector::zeros(ambient);
            for t in k.ones() {
                v.flip(idx[t]);
            }
            v
        });
        Subspace::from_owned(ambient, vectors).expect("same ambient")
    }

    /// `Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}` in total degree `n`.
    pub fn denominator(&self, r: i32, p: i32, n: i32) -> Subspace {
        let lower = self.z(r - 1, p - 1, n);
        let upper = self.z(r - 1, p + r - 1, n + 1);
        let images: Vec<Gf2Vector> = upper.basis().iter().map(|v| self.d(v)).collect();
        let boundaries = Subspace::from_owned(self.ambient(), images).expect("same ambient");
        lower.sum(&boundaries).expect("same ambient")
    }

    /// The subquotient `E^r_{p,q}`.
    pub fn cell(&self, r: i32, p: i32, q: i32) -> Result<Quotient> {
        let n = p + q;
        let numerator = self.z(r, p, n);
        let denominator = self.denominator(r, p, n);
        Quotient::new(&numerator, &denominator).map_err(|e| match e {
            Error::NotASubspace => {
                Error::InternalConsistency(format!("page {r} cell ({p}, {q}): boundary part not inside cycles"))
            }
            other => other,
        })
    }
}
