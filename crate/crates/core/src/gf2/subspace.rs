use super::{Gf2Matrix, Gf2Vector};
use crate::error::{Error, Result};

/// A linear subspace of `(Z/2)^n` held in fully reduced echelon form.
///
/// Every basis vector has a distinct low (highest set index) and is zero at
/// the lows of all other basis vectors, which makes the basis canonical: two
/// subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// Sorted by low, ascending.
    basis: Vec<Gf2Vector>,
    lows: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            lows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient).map(|i| Gf2Vector::unit(ambient, i)).collect(),
            lows: (0..ambient).collect(),
        }
    }

    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a Gf2Vector>) -> Result<Self> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn from_owned(ambient: usize, vectors: impl IntoIterator<Item = Gf2Vector>) -> Result<Self> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(&v)?;
        }
        Ok(s)
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Gf2Vector] {
        &self.basis
    }

    pub fn lows(&self) -> &[usize] {
        &self.lows
    }

    fn check_len(&self, v: &Gf2Vector) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace. Its low, if
    /// any, is the minimum low over the whole coset `v + self`.
    pub fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        let mut r = v.clone();
        for (b, &low) in self.basis.iter().zip(&self.lows) {
            if r.get(low) {
                r.add_assign(b);
            }
        }
        r
    }

    pub fn contains(&self, v: &Gf2Vector) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.reduce(v).is_zero())
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &Gf2Vector) -> Result<bool> {
        self.check_len(v)?;
        let r = self.reduce(v);
        let Some(low) = r.low() else {
            return Ok(false);
        };
        for b in &mut self.basis {
            if b.get(low) {
                b.add_assign(&r);
            }
        }
        let at = self.lows.partition_point(|&l| l < low);
        self.lows.insert(at, low);
        self.basis.insert(at, r);
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b)?;
        }
        Ok(s)
    }

    /// Intersection via the kernel of `[A | B]`: pairs `(x, y)` with
    /// `A x = B y` give the common vectors `A x`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let k = self.dim();
        let stacked = Gf2Matrix::from_columns(self.ambient, self.basis.iter().chain(&other.basis).cloned().collect())?;
        let mut out = Subspace::zero(self.ambient);
        for z in stacked.kernel() {
            let mut v = Gf2Vector::zeros(self.ambient);
            for i in z.ones().take_while(|&i| i < k) {
                v.add_assign(&self.basis[i]);
            }
            out.insert(&v)?;
        }
        Ok(out)
    }

    /// Lifts a basis of `self / sub` to vectors of `self`, each reduced
    /// modulo `sub` and the previously chosen lifts.
    pub fn quotient_basis(&self, sub: &Subspace) -> Result<Vec<Gf2Vector>> {
        if !sub.is_subspace_of(self)? {
            return Err(Error::NotASubspace);
        }
        let mut acc = sub.clone();
        let mut lifts = Vec::with_capacity(self.dim() - sub.dim());
        for b in &self.basis {
            let r = acc.reduce(b);
            if !r.is_zero() {
                acc.insert(&r)?;
                lifts.push(r);
            }
        }
        Ok(lifts)
    }
}

/// A subquotient `numerator / denominator` with fixed representatives and a
/// coordinate map onto them.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient: usize,
    reps: Vec<Gf2Vector>,
    /// Fully reduced echelon rows spanning the numerator, each tagged with
    /// its coordinates over `reps` (the denominator part is forgotten).
    rows: Vec<(Gf2Vector, Gf2Vector)>,
    lows: Vec<usize>,
}

impl Quotient {
    pub fn new(numerator: &Subspace, denominator: &Subspace) -> Result<Self> {
        let reps = numerator.quotient_basis(denominator)?;
        let ambient = numerator.ambient();
        let k = reps.len();
        let mut q = Quotient {
            ambient,
            reps: Vec::new(),
            rows: Vec::new(),
            lows: Vec::new(),
        };
        for b in denominator.basis() {
            q.push_row(b.clone(), Gf2Vector::zeros(k));
        }
        for (i, r) in reps.iter().enumerate() {
            q.push_row(r.clone(), Gf2Vector::unit(k, i));
        }
        q.reps = reps;
        Ok(q)
    }

    fn push_row(&mut self, mut v: Gf2Vector, mut tag: Gf2Vector) {
        for ((row, row_tag), &low) in self.rows.iter().zip(&self.lows) {
            if v.get(low) {
                v.add_assign(row);
                tag.add_assign(row_tag);
            }
        }
        let low = v.low().expect("subquotient rows are independent");
        for (row, row_tag) in &mut self.rows {
            if row.get(low) {
                row.add_assign(&v);
                row_tag.add_assign(&tag);
            }
        }
        let at = self.lows.partition_point(|&l| l < low);
        self.lows.insert(at, low);
        self.rows.insert(at, (v, tag));
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reps(&self) -> &[Gf2Vector] {
        &self.reps
    }

    /// Coordinates of the class of `v`, or `None` when `v` is not in the
    /// numerator.
    pub fn coords(&self, v: &Gf2Vector) -> Option<Gf2Vector> {
        let mut r = v.clone();
        let mut tag = Gf2Vector::zeros(self.reps.len());
        for ((row, row_tag), &low) in self.rows.iter().zip(&self.lows) {
            if r.get(low) {
                r.add_assign(row);
                tag.add_assign(row_tag);
            }
        }
        r.is_zero().then_some(tag)
    }

    /// Chain-level representative of a coordinate vector.
    pub fn lift(&self, coords: &Gf2Vector) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.ambient);
        for i in coords.ones() {
            v.add_assign(&self.reps[i]);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, idx: &[usize]) -> Gf2Vector {
        Gf2Vector::from_indices(n, idx.iter().copied())
    }

    /// All vectors of a span, by enumerating coefficient choices.
    fn enumerate(n: usize, gens: &[Gf2Vector]) -> std::collections::BTreeSet<Vec<bool>> {
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << gens.len()) {
            let mut v = Gf2Vector::zeros(n);
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v.add_assign(g);
                }
            }
            out.insert((0..n).map(|i| v.get(i)).collect());
        }
        out
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = Subspace::span(3, &[e(3, &[0]), e(3, &[1])]).unwrap();
        let b = Subspace::span(3, &[e(3, &[1]), e(3, &[2])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::span(3, &[e(3, &[1])]).unwrap());
    }

    #[test]
    fn quotient_by_diagonal_has_dimension_one() {
        let s = Subspace::span(3, &[e(3, &[0]), e(3, &[1])]).unwrap();
        let sub = Subspace::span(3, &[e(3, &[0, 1])]).unwrap();
        let lifts = s.quotient_basis(&sub).unwrap();
        assert_eq!(lifts.len(), 1);
        assert!(s.contains(&lifts[0]).unwrap());
        assert!(!sub.contains(&lifts[0]).unwrap());
    }

    #[test]
    fn quotient_requires_containment() {
        let s = Subspace::span(3, &[e(3, &[0])]).unwrap();
        let sub = Subspace::span(3, &[e(3, &[1])]).unwrap();
        assert!(matches!(s.quotient_basis(&sub), Err(Error::NotASubspace)));
    }

    #[test]
    fn canonical_basis_is_independent_of_spanning_set() {
        let a = Subspace::span(4, &[e(4, &[0, 1]), e(4, &[1, 3]), e(4, &[2])]).unwrap();
        let b = Subspace::span(4, &[e(4, &[0, 3]), e(4, &[2]), e(4, &[0, 1]), e(4, &[0, 2, 3])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_subspaces_satisfy_modular_law() {
        let n = 8;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let mut pick = |k: usize| -> Vec<Gf2Vector> {
                (0..k)
                    .map(|_| Gf2Vector::from_bits(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>()))
                    .collect()
            };
            let ga = pick(4);
            let gb = pick(5);
            let a = Subspace::span(n, &ga).unwrap();
            let b = Subspace::span(n, &gb).unwrap();
            let sum = a.sum(&b).unwrap();
            let int = a.intersect(&b).unwrap();
            assert_eq!(sum.dim() + int.dim(), a.dim() + b.dim());

            // enumeration oracle over all 2^8 vectors
            let ea = enumerate(n, &ga);
            let eb = enumerate(n, &gb);
            let common: std::collections::BTreeSet<_> = ea.intersection(&eb).cloned().collect();
            assert_eq!(common.len(), 1 << int.dim());
            assert_eq!(ea.len(), 1 << a.dim());
            for v in int.basis() {
                assert!(a.contains(v).unwrap() && b.contains(v).unwrap());
            }
        }
    }

    #[test]
    fn quotient_coordinates_round_trip() {
        let n = 6;
        let num = Subspace::span(n, &[e(n, &[0]), e(n, &[1, 2]), e(n, &[3]), e(n, &[4, 5])]).unwrap();
        let den = Subspace::span(n, &[e(n, &[0, 3])]).unwrap();
        let q = Quotient::new(&num, &den).unwrap();
        assert_eq!(q.dim(), 3);
        for mask in 0u32..8 {
            let c = Gf2Vector::from_indices(3, (0..3).filter(|i| mask >> i & 1 == 1));
            let mut v = q.lift(&c);
            assert_eq!(q.coords(&v).unwrap(), c);
            v.add_assign(&den.basis()[0]);
            assert_eq!(q.coords(&v).unwrap(), c);
        }
        assert!(q.coords(&e(n, &[4])).is_none());
    }
}
