//! Homology of the total complex and homological spectral numbers.

mod action;
mod duality;
mod maps;

use std::collections::BTreeMap;

use serde::Serialize;

pub use action::{cup_length, product_inequality, validate_action, ActionTable, CupLength};
pub use duality::check_duality;
pub use maps::check_filtered_map;

use crate::complex::{ChainElement, FilteredComplex, TotalComplex};
use crate::error::{Error, Result};
use crate::gf2::{column_reduce, Gf2Vector};

/// Enumeration cap of [`FilteredHomology::sigma_oracle`], in total basis
/// elements.
pub const ORACLE_CAP: usize = 20;

/// A homology class with a chain-level cycle representative.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyClass {
    pub degree: i32,
    /// Coordinates over the persistence basis of this degree.
    pub coefficients: Gf2Vector,
    pub representative: ChainElement,
    /// The representative as a vector over the total basis.
    pub vector: Gf2Vector,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantValue {
    /// The spectral number σ, a generator value.
    pub relative: f64,
    /// `σ(α) - σ(1)`, when `H_0` is one-dimensional.
    pub absolute: Option<f64>,
}

/// Persistence reduction of the total complex over its value-sorted basis.
///
/// The essential (never killed) columns give a basis of homology whose
/// representatives are optimal: each one's largest value is its spectral
/// number.
#[derive(Clone, Debug)]
pub struct FilteredHomology {
    total: TotalComplex,
    /// Reduced boundary columns keyed by their lowest row.
    boundaries: BTreeMap<usize, Gf2Vector>,
    /// Essential cycles keyed by birth index (which is also their low).
    essential: BTreeMap<usize, Gf2Vector>,
}

impl FilteredHomology {
    pub fn new(c: &FilteredComplex) -> Result<Self> {
        Ok(Self::from_total(c.total_complex()?))
    }

    pub fn from_total(total: TotalComplex) -> Self {
        let red = column_reduce(total.differential());
        let mut boundaries = BTreeMap::new();
        for (&j, &low) in &red.pivots {
            boundaries.insert(low, red.reduced.column(j).clone());
        }
        let mut essential = BTreeMap::new();
        for j in 0..total.len() {
            if red.reduced.column(j).is_zero() && !boundaries.contains_key(&j) {
                essential.insert(j, red.ops.column(j).clone());
            }
        }
        Self {
            total,
            boundaries,
            essential,
        }
    }

    pub fn total(&self) -> &TotalComplex {
        &self.total
    }

    pub fn complex(&self) -> &FilteredComplex {
        self.total.complex()
    }

    /// Rank of homology per total degree (degrees with rank 0 included).
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        let mut ranks: BTreeMap<i32, usize> = self.total.degrees().into_iter().map(|d| (d, 0)).collect();
        for &j in self.essential.keys() {
            *ranks.entry(self.total.basis()[j].degree).or_default() += 1;
        }
        ranks
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.births(degree).len()
    }

    /// Birth indices of the essential classes in one degree, ascending.
    fn births(&self, degree: i32) -> Vec<usize> {
        self.essential
            .keys()
            .copied()
            .filter(|&j| self.total.basis()[j].degree == degree)
            .collect()
    }

    /// The persistence basis of `H_degree`, ordered by spectral number.
    pub fn classes(&self, degree: i32) -> Vec<HomologyClass> {
        let births = self.births(degree);
        let k = births.len();
        births
            .iter()
            .enumerate()
            .map(|(i, j)| self.make_class(degree, Gf2Vector::unit(k, i), self.essential[j].clone()))
            .collect()
    }

    /// Every persistence basis class, by degree.
    pub fn all_classes(&self) -> Vec<HomologyClass> {
        self.ranks().keys().flat_map(|&d| self.classes(d)).collect()
    }

    fn make_class(&self, degree: i32, coefficients: Gf2Vector, vector: Gf2Vector) -> HomologyClass {
        HomologyClass {
            degree,
            coefficients,
            representative: self.total.chain(&vector),
            vector,
        }
    }

    /// Reduces `v` against the boundary echelon; the result has the least
    /// possible largest value within `v + B`.
    pub fn reduce_by_boundaries(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut z = v.clone();
        while let Some(low) = z.low() {
            match self.boundaries.get(&low) {
                Some(b) => z.add_assign(b),
                None => break,
            }
        }
        z
    }

    pub fn is_boundary(&self, v: &Gf2Vector) -> bool {
        let mut z = v.clone();
        while let Some(low) = z.low() {
            match self.boundaries.get(&low) {
                Some(b) => z.add_assign(b),
                None => return false,
            }
        }
        true
    }

    pub fn is_cycle(&self, v: &Gf2Vector) -> bool {
        self.total.apply(v).is_zero()
    }

    /// Coordinates of a cycle over the persistence basis of its degree.
    pub fn coordinates(&self, v: &Gf2Vector) -> Result<(i32, Gf2Vector)> {
        if !self.is_cycle(v) {
            return Err(Error::Malformed(format!("{} is not a cycle", self.total.chain(v))));
        }
        let degree = match self.total.degree_of(v) {
            Some(d) => d,
            None if v.is_zero() => return Err(Error::ZeroClass),
            None => return Err(Error::Malformed(format!("{} is not homogeneous", self.total.chain(v)))),
        };
        let births = self.births(degree);
        let mut coords = Gf2Vector::zeros(births.len());
        let mut z = v.clone();
        while let Some(low) = z.low() {
            if let Some(b) = self.boundaries.get(&low) {
                z.add_assign(b);
            } else if let Some(e) = self.essential.get(&low) {
                z.add_assign(e);
                let i = births.binary_search(&low).expect("birth of this degree");
                coords.flip(i);
            } else {
                return Err(Error::InternalConsistency(format!(
                    "cycle with unmatched low {}",
                    self.total.label(low)
                )));
            }
        }
        Ok((degree, coords))
    }

    /// The class of a cycle given as a vector.
    pub fn class_of(&self, v: &Gf2Vector) -> Result<HomologyClass> {
        let (degree, coefficients) = self.coordinates(v)?;
        Ok(self.make_class(degree, coefficients, v.clone()))
    }

    pub fn class_of_chain(&self, e: &ChainElement) -> Result<HomologyClass> {
        self.class_of(&self.total.vector(e)?)
    }

    /// The class with the given coordinates over the persistence basis.
    pub fn class_from_coordinates(&self, degree: i32, coefficients: &Gf2Vector) -> Result<HomologyClass> {
        let births = self.births(degree);
        if coefficients.len() != births.len() {
            return Err(Error::DimensionMismatch {
                expected: births.len(),
                found: coefficients.len(),
            });
        }
        let mut v = Gf2Vector::zeros(self.total.len());
        for i in coefficients.ones() {
            v.add_assign(&self.essential[&births[i]]);
        }
        Ok(self.make_class(degree, coefficients.clone(), v))
    }

    /// Homological spectral number: the least ν such that the class has a
    /// representative supported on values `≤ ν`.
    pub fn sigma(&self, class: &HomologyClass) -> Result<f64> {
        let z = self.reduce_by_boundaries(&class.vector);
        self.total.max_value(&z).ok_or(Error::ZeroClass)
    }

    /// Spectral number of a cycle vector.
    pub fn sigma_of(&self, v: &Gf2Vector) -> Result<f64> {
        let z = self.reduce_by_boundaries(v);
        self.total.max_value(&z).ok_or(Error::ZeroClass)
    }

    /// The generator of `H_0`, which must be one-dimensional.
    pub fn unit_class(&self) -> Result<HomologyClass> {
        let mut classes = self.classes(0);
        if classes.len() != 1 {
            return Err(Error::NormalizationUnavailable { dim: classes.len() });
        }
        Ok(classes.remove(0))
    }

    /// `σ(1)`, when available.
    pub fn normalization(&self) -> Option<f64> {
        let unit = self.unit_class().ok()?;
        self.sigma(&unit).ok()
    }

    pub fn spectral_number(&self, class: &HomologyClass) -> Result<InvariantValue> {
        let relative = self.sigma(class)?;
        Ok(InvariantValue {
            relative,
            absolute: self.normalization().map(|s1| relative - s1),
        })
    }

    /// `c(α) = σ(α) - σ(1)`; errors when `dim H_0 != 1`.
    pub fn absolute(&self, class: &HomologyClass) -> Result<f64> {
        let unit = self.unit_class()?;
        Ok(self.sigma(class)? - self.sigma(&unit)?)
    }

    /// Brute-force spectral number: minimum over the whole coset
    /// `representative + B` of the largest support value. Shares nothing
    /// with the reduction except the assembled matrix and basis values.
    pub fn sigma_oracle(&self, class: &HomologyClass) -> Result<f64> {
        let n = self.total.len();
        if n > ORACLE_CAP {
            return Err(Error::OracleTooLarge {
                size: n,
                cap: ORACLE_CAP,
            });
        }
        if class.vector.is_zero() {
            return Err(Error::ZeroClass);
        }
        let d = self.total.differential();
        let generators: Vec<&Gf2Vector> = self
            .total
            .indices_in_degree(class.degree + 1)
            .into_iter()
            .map(|j| d.column(j))
            .collect();
        let values: Vec<f64> = self.total.basis().iter().map(|b| b.value).collect();
        let max_value = |v: &Gf2Vector| {
            v.ones()
                .map(|i| values[i])
                .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))))
        };
        let mut current = class.vector.clone();
        let mut best: Option<f64> = None;
        // Gray-code walk visits every subset of boundary generators once
        for step in 0u64..(1u64 << generators.len()) {
            if step > 0 {
                current.add_assign(generators[step.trailing_zeros() as usize]);
            }
            match max_value(&current) {
                Some(m) => best = Some(best.map_or(m, |b| b.min(m))),
                None => return Err(Error::ZeroClass),
            }
        }
        best.ok_or(Error::ZeroClass)
    }

    /// Every nonzero class of one degree, or `None` if there are more than
    /// `2^max_rank - 1`.
    pub fn enumerate_classes(&self, degree: i32, max_rank: usize) -> Option<Vec<HomologyClass>> {
        let k = self.rank(degree);
        if k > max_rank {
            return None;
        }
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << k) {
            let coeffs = Gf2Vector::from_indices(k, (0..k).filter(|i| mask >> i & 1 == 1));
            out.push(self.class_from_coordinates(degree, &coeffs).expect("matching length"));
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::complex::ChainTerm;
    use proptest::prelude::*;

    fn gen_chain(names: &[&str]) -> ChainElement {
        names.iter().map(|n| ChainTerm::new("1", *n)).collect()
    }

    #[test]
    fn fixture_a_homology() {
        let h = FilteredHomology::new(&builtin::fix_a()).unwrap();
        assert_eq!(h.rank(0), 1);
        assert_eq!(h.rank(1), 0);
        let b = h.class_of_chain(&gen_chain(&["b"])).unwrap();
        let c = h.class_of_chain(&gen_chain(&["c"])).unwrap();
        assert_eq!(b.coefficients, c.coefficients);
        assert_eq!(h.sigma(&b).unwrap(), 0.0);
        assert_eq!(h.sigma_oracle(&b).unwrap(), 0.0);
        assert_eq!(h.absolute(&b).unwrap(), 0.0);
    }

    #[test]
    fn fixture_b_ranks() {
        let h = FilteredHomology::new(&builtin::s2xs4()).unwrap();
        let ranks = h.ranks();
        // direct kernel/image count on the 16-element basis
        let t = h.total();
        for (&d, &r) in &ranks {
            let idx = t.indices_in_degree(d);
            let kernel_dim = {
                let cols: Vec<_> = idx.iter().map(|&j| t.differential().column(j).clone()).collect();
                let m = crate::gf2::Gf2Matrix::from_columns(t.len(), cols).unwrap();
                idx.len() - m.rank()
            };
            let image_dim = {
                let cols: Vec<_> = t
                    .indices_in_degree(d + 1)
                    .iter()
                    .map(|&j| t.differential().column(j).clone())
                    .collect();
                crate::gf2::Gf2Matrix::from_columns(t.len(), cols).unwrap().rank()
            };
            assert_eq!(r, kernel_dim - image_dim, "degree {d}");
        }
        let plain = FilteredHomology::new(&builtin::s2xs4().underlying_plain()).unwrap();
        let p4 = plain.class_of_chain(&gen_chain(&["p4"])).unwrap();
        assert_eq!(plain.sigma(&p4).unwrap(), 2.1);
        assert_eq!(plain.absolute(&p4).unwrap(), 2.1);
        for d in [0, 2, 4, 6] {
            assert_eq!(plain.rank(d), 1);
        }
    }

    #[test]
    fn zero_differential_classes_are_generators() {
        let c = FilteredComplex::plain(&[("x", 0, 0.5), ("y", 0, 1.5), ("z", 2, 3.0)], &[]).unwrap();
        let h = FilteredHomology::new(&c).unwrap();
        for (name, value) in [("x", 0.5), ("y", 1.5), ("z", 3.0)] {
            let k = h.class_of_chain(&gen_chain(&[name])).unwrap();
            assert_eq!(h.sigma(&k).unwrap(), value);
            assert_eq!(h.sigma_oracle(&k).unwrap(), value);
        }
        assert!(matches!(
            h.absolute(&h.classes(2)[0]),
            Err(Error::NormalizationUnavailable { dim: 2 })
        ));
    }

    #[test]
    fn zero_and_non_cycles_are_rejected() {
        let h = FilteredHomology::new(&builtin::fix_a()).unwrap();
        assert!(h.class_of_chain(&gen_chain(&["a"])).is_err());
        let zero = h.class_of_chain(&gen_chain(&["b", "c"])).unwrap();
        assert!(matches!(h.sigma(&zero), Err(Error::ZeroClass)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduction_matches_enumeration(seed in 0u64..10_000, n in 2usize..9) {
            let c = builtin::random(&builtin::RandomParams { generators: n, degrees: 3, seed, ring: None }).unwrap();
            let h = FilteredHomology::new(&c).unwrap();
            for &d in h.ranks().keys() {
                for k in h.enumerate_classes(d, 4).unwrap_or_default() {
                    prop_assert_eq!(h.sigma(&k).unwrap(), h.sigma_oracle(&k).unwrap());
                }
            }
        }

        #[test]
        fn uniform_shift_moves_sigma_exactly(seed in 0u64..10_000, eps in 0.0f64..3.0) {
            let c = builtin::random(&builtin::RandomParams { generators: 6, degrees: 3, seed, ring: None }).unwrap();
            let eps = (eps * 8.0).round() / 8.0;
            let h = FilteredHomology::new(&c).unwrap();
            let hs = FilteredHomology::new(&c.shifted(eps)).unwrap();
            for k in h.all_classes() {
                let ks = hs.class_of_chain(&k.representative).unwrap();
                prop_assert_eq!(hs.sigma(&ks).unwrap(), h.sigma(&k).unwrap() + eps);
                if let (Ok(a), Ok(b)) = (h.absolute(&k), hs.absolute(&ks)) {
                    prop_assert_eq!(a, b);
                }
            }
        }
    }
}
