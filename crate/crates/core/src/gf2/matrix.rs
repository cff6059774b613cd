use std::collections::BTreeMap;

use super::Gf2Vector;
use crate::error::{Error, Result};

/// Column-major matrix over Z/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    columns: Vec<Gf2Vector>,
}

/// Output of [`column_reduce`]: `reduced = original * ops`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: Gf2Matrix,
    /// Change of basis; upper unitriangular because only earlier columns are
    /// ever added to later ones.
    pub ops: Gf2Matrix,
    /// Column index -> pivot (lowest nonzero) row, for every nonzero reduced column.
    pub pivots: BTreeMap<usize, usize>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            columns: vec![Gf2Vector::zeros(rows); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            columns: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: bad.len(),
            });
        }
        Ok(Self { rows, columns })
    }

    /// Builds a matrix from row-major 0/1 data; convenient in tests.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols, "ragged row {i}");
            for (j, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    m.columns[j].set(i, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn row_count(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Gf2Vector] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Gf2Vector {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.columns[j].get(i)
    }

    pub fn push_column(&mut self, column: Gf2Vector) -> Result<()> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: column.len(),
            });
        }
        self.columns.push(column);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Gf2Vector::is_zero)
    }

    pub fn mul_vector(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        if x.len() != self.columns.len() {
            return Err(Error::DimensionMismatch {
                expected: self.columns.len(),
                found: x.len(),
            });
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for j in x.ones() {
            out.add_assign(&self.columns[j]);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if other.rows != self.columns.len() {
            return Err(Error::DimensionMismatch {
                expected: self.columns.len(),
                found: other.rows,
            });
        }
        let columns = other
            .columns
            .iter()
            .map(|c| self.mul_vector(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Gf2Matrix {
            rows: self.rows,
            columns,
        })
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.columns.len(), self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for i in col.ones() {
                t.columns[i].set(j, true);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        column_reduce(self).pivots.len()
    }

    /// Basis of the null space, read off the change-of-basis columns whose
    /// reduced column vanished.
    pub fn kernel(&self) -> Vec<Gf2Vector> {
        let red = column_reduce(self);
        red.reduced
            .columns
            .iter()
            .zip(red.ops.columns)
            .filter(|(r, _)| r.is_zero())
            .map(|(_, v)| v)
            .collect()
    }

    /// Basis of the column space with pairwise distinct lows.
    pub fn image(&self) -> Vec<Gf2Vector> {
        column_reduce(self)
            .reduced
            .columns
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect()
    }
}

/// Persistence-style left-to-right column reduction.
///
/// Each column is reduced by adding earlier columns until its lowest nonzero
/// row is not the pivot of any earlier column (or it vanishes).
pub fn column_reduce(m: &Gf2Matrix) -> Reduction {
    let n = m.column_count();
    let mut reduced = m.clone();
    let mut ops = Gf2Matrix::identity(n);
    let mut pivots = BTreeMap::new();
    let mut column_of_row: BTreeMap<usize, usize> = BTreeMap::new();

    for j in 0..n {
        while let Some(low) = reduced.columns[j].low() {
            match column_of_row.get(&low) {
                Some(&i) => {
                    let (left, right) = reduced.columns.split_at_mut(j);
                    right[0].add_assign(&left[i]);
                    let (left, right) = ops.columns.split_at_mut(j);
                    right[0].add_assign(&left[i]);
                }
                None => {
                    column_of_row.insert(low, j);
                    pivots.insert(j, low);
                    break;
                }
            }
        }
    }

    Reduction { reduced, ops, pivots }
}

/// Solves `m x = target`. Returns `Ok(None)` when the target is outside the
/// column span.
pub fn solve(m: &Gf2Matrix, target: &Gf2Vector) -> Result<Option<Gf2Vector>> {
    if target.len() != m.row_count() {
        return Err(Error::DimensionMismatch {
            expected: m.row_count(),
            found: target.len(),
        });
    }
    let red = column_reduce(m);
    let column_of_row: BTreeMap<usize, usize> = red.pivots.iter().map(|(&c, &r)| (r, c)).collect();
    let mut residual = target.clone();
    let mut x = Gf2Vector::zeros(m.column_count());
    while let Some(low) = residual.low() {
        let Some(&j) = column_of_row.get(&low) else {
            return Ok(None);
        };
        residual.add_assign(&red.reduced.columns[j]);
        x.add_assign(&red.ops.columns[j]);
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook row echelon elimination on a dense row-major copy; shares no
    /// code with `column_reduce`.
    fn rank_by_row_elimination(m: &Gf2Matrix) -> usize {
        let mut rows: Vec<Vec<bool>> = (0..m.row_count())
            .map(|i| (0..m.column_count()).map(|j| m.get(i, j)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.column_count() {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in 0..rows.len() {
                if r != rank && rows[r][col] {
                    let src = rows[rank].clone();
                    for (a, b) in rows[r].iter_mut().zip(src) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                if rng.gen_bool(0.4) {
                    m.columns[j].set(i, true);
                }
            }
        }
        m
    }

    #[test]
    fn identity_reduces_to_itself() {
        let red = column_reduce(&Gf2Matrix::identity(2));
        assert_eq!(red.reduced, Gf2Matrix::identity(2));
        assert_eq!(red.pivots, BTreeMap::from([(0, 0), (1, 1)]));
    }

    #[test]
    fn duplicate_columns_cancel() {
        let m = Gf2Matrix::from_rows(&[&[1, 1], &[1, 1]]);
        let red = column_reduce(&m);
        assert!(red.reduced.column(1).is_zero());
        assert_eq!(red.pivots, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn reduction_matches_row_elimination_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = random_matrix(&mut rng, 6, 6);
            let red = column_reduce(&m);
            assert_eq!(red.pivots.len(), rank_by_row_elimination(&m));
            assert_eq!(m.mul(&red.ops).unwrap(), red.reduced);
            // ops is upper unitriangular
            for (j, col) in red.ops.columns().iter().enumerate() {
                assert!(col.get(j));
                assert!(col.low() == Some(j));
            }
            let lows: Vec<_> = red.pivots.values().collect();
            let mut dedup = lows.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(lows.len(), dedup.len());
        }
    }

    #[test]
    fn solve_identity_and_outside_span() {
        let e1 = Gf2Vector::unit(2, 1);
        assert_eq!(solve(&Gf2Matrix::identity(2), &e1).unwrap(), Some(e1));
        let m = Gf2Matrix::from_rows(&[&[1], &[1]]);
        let target = Gf2Vector::unit(2, 0);
        assert_eq!(solve(&m, &target).unwrap(), None);
    }

    #[test]
    fn solve_rejects_wrong_length() {
        let err = solve(&Gf2Matrix::identity(3), &Gf2Vector::zeros(2)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn solve_random_consistent_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = random_matrix(&mut rng, 7, 5);
            let x0 = Gf2Vector::from_bits(&(0..5).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            let target = m.mul_vector(&x0).unwrap();
            let x = solve(&m, &target).unwrap().expect("consistent system");
            assert_eq!(m.mul_vector(&x).unwrap(), target);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 4, 7);
            let ker = m.kernel();
            assert_eq!(ker.len() + m.rank(), 7);
            for v in ker {
                assert!(m.mul_vector(&v).unwrap().is_zero());
            }
        }
    }
}
