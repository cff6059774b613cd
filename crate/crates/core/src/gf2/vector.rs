use std::fmt;
use std::ops::{BitXor, BitXorAssign};

const WORD_BITS: usize = 64;

/// A dense, bit-packed vector over the two-element field.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` are
/// always zero so that word-wise equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Vector {
    words: Vec<u64>,
    len: usize,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector with ones at the given indices. Repeated indices
    /// cancel, as they would in a Z/2 sum.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// In-place addition over Z/2.
    #[inline]
    pub fn add_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Keeps only the coordinates where `mask` is set.
    pub fn and_assign(&mut self, mask: &Gf2Vector) {
        assert_eq!(self.len, mask.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&mask.words) {
            *a &= *b;
        }
    }

    pub fn masked(&self, mask: &Gf2Vector) -> Gf2Vector {
        let mut v = self.clone();
        v.and_assign(mask);
        v
    }

    /// Index of the highest set bit (the "low" of a column in persistence
    /// terminology, where rows are listed top to bottom).
    pub fn low(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over Z/2.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Re-embeds this vector in a space of a different length. Coordinates
    /// past the new length must be zero.
    pub fn resized(&self, len: usize) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(len);
        for i in self.ones() {
            v.set(i, true);
        }
        v
    }
}

/// Iterator over set bit positions, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD_BITS + tz);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl BitXorAssign<&Gf2Vector> for Gf2Vector {
    fn bitxor_assign(&mut self, rhs: &Gf2Vector) {
        self.add_assign(rhs);
    }
}

impl BitXor<&Gf2Vector> for &Gf2Vector {
    type Output = Gf2Vector;

    fn bitxor(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_sum_is_zero() {
        let v = Gf2Vector::from_indices(130, [0, 5, 64, 129]);
        assert!((&v ^ &v).is_zero());
    }

    #[test]
    fn low_and_ones_cross_word_boundaries() {
        let v = Gf2Vector::from_indices(200, [3, 63, 64, 150]);
        assert_eq!(v.low(), Some(150));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 63, 64, 150]);
        assert_eq!(Gf2Vector::zeros(70).low(), None);
        assert_eq!(v.count_ones(), 4);
    }

    #[test]
    fn repeated_indices_cancel() {
        let v = Gf2Vector::from_indices(4, [1, 1, 2]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn dot_product_counts_parity() {
        let a = Gf2Vector::from_bits(&[true, true, false, true]);
        let b = Gf2Vector::from_bits(&[true, true, true, false]);
        assert!(!a.dot(&b));
        let c = Gf2Vector::from_bits(&[true, false, false, false]);
        assert!(a.dot(&c));
    }
}
