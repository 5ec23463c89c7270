//! Dense linear algebra over GF(2) on packed 64-bit rows.

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut row = BitRow::zeros(len);
        for i in ones {
            row.flip(i);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Grows the row with zero bits; never shrinks.
    pub fn resize(&mut self, len: usize) {
        if len > self.len {
            self.len = len;
            self.words.resize(len.div_ceil(64), 0);
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// `self ^= other`; `other` may be shorter.
    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert!(other.len <= self.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitRow>,
    ncols: usize,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Gf2Matrix {
            rows: vec![BitRow::zeros(ncols); nrows],
            ncols,
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitRow>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "row length mismatch");
        Gf2Matrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitRow {
        &self.rows[r]
    }

    /// Rank by in-place Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot = &head[rank];
            for row in tail.iter_mut() {
                if row.get(col) {
                    row.xor_assign(pivot);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Finds a subset of rows summing to `target`, as an indicator over rows.
    pub fn solve_rows(&self, target: &BitRow) -> Option<BitRow> {
        let mut basis = Gf2Basis::new(self.ncols);
        for row in &self.rows {
            basis.insert(row.clone());
        }
        basis.express(target)
    }
}

/// Incrementally maintained row-echelon basis that remembers, for every
/// stored row, which inserted vectors it is a combination of.
#[derive(Clone, Debug)]
pub struct Gf2Basis {
    ncols: usize,
    inserted: usize,
    rows: Vec<(BitRow, BitRow)>,
    by_pivot: BTreeMap<usize, usize>,
}

impl Gf2Basis {
    pub fn new(ncols: usize) -> Self {
        Gf2Basis {
            ncols,
            inserted: 0,
            rows: Vec::new(),
            by_pivot: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered via [`Gf2Basis::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, mut v: BitRow) -> (BitRow, BitRow) {
        v.resize(self.ncols);
        let mut combo = BitRow::zeros(self.inserted);
        for (&pivot, &idx) in &self.by_pivot {
            if v.get(pivot) {
                let (row, c) = &self.rows[idx];
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        self.reduce(v.clone()).0.is_zero()
    }

    /// Inserts `v`; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, v: BitRow) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (residual, mut combo) = self.reduce(v);
        match residual.first_one() {
            None => false,
            Some(pivot) => {
                combo.resize(self.inserted);
                combo.flip(index);
                self.by_pivot.insert(pivot, self.rows.len());
                self.rows.push((residual, combo));
                true
            }
        }
    }

    /// Indicator over inserted vectors whose sum is `target`, if any.
    pub fn express(&self, target: &BitRow) -> Option<BitRow> {
        let (residual, combo) = self.reduce(target.clone());
        residual.is_zero().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let m = Gf2Matrix::from_rows(
            3,
            vec![
                BitRow::from_indices(3, [0, 1]),
                BitRow::from_indices(3, [1, 2]),
                BitRow::from_indices(3, [0, 2]),
            ],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(Gf2Matrix::zeros(4, 70).rank(), 0);
        let mut id = Gf2Matrix::zeros(130, 130);
        for i in 0..130 {
            id.set(i, i, true);
        }
        assert_eq!(id.rank(), 130);
    }

    #[test]
    fn solve_finds_row_combination() {
        let m = Gf2Matrix::from_rows(
            4,
            vec![
                BitRow::from_indices(4, [0, 1]),
                BitRow::from_indices(4, [1, 2]),
                BitRow::from_indices(4, [3]),
            ],
        );
        let target = BitRow::from_indices(4, [0, 2, 3]);
        let x = m.solve_rows(&target).unwrap();
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(m.solve_rows(&BitRow::from_indices(4, [0])).is_none());
    }

    #[test]
    fn basis_tracks_dependencies() {
        let mut b = Gf2Basis::new(100);
        assert!(b.insert(BitRow::from_indices(100, [3, 70])));
        assert!(b.insert(BitRow::from_indices(100, [70, 99])));
        assert!(!b.insert(BitRow::from_indices(100, [3, 99])));
        assert_eq!(b.rank(), 2);
        let c = b.express(&BitRow::from_indices(100, [3, 99])).unwrap();
        assert_eq!(c.ones().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn ones_iterates_across_words() {
        let r = BitRow::from_indices(200, [0, 63, 64, 199]);
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![0, 63, 64, 199]);
        assert_eq!(r.count_ones(), 4);
        assert_eq!(r.first_one(), Some(0));
    }
}
