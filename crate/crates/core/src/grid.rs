//! Rectangular partially filled arrays of nonzero integers.
//!
//! A [`Grid`] is the carrier for Heffter arrays, Heffter array set members
//! and all intermediate blocks. Coordinates are 1-based, matching the
//! external document format. Entries are exact `i64` integers; zero entries
//! are rejected at insertion.

use crate::Error;
use std::fmt;

/// A partially filled `rows x cols` array of nonzero integers.
#[derive(Clone, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    cells: Vec<Option<i64>>,
}

impl Grid {
    /// An empty grid with the given positive dimensions.
    pub fn new(rows: usize, cols: usize) -> Result<Self, Error> {
        if rows == 0 {
            return Err(Error::NonPositiveDimension(rows as i64));
        }
        if cols == 0 {
            return Err(Error::NonPositiveDimension(cols as i64));
        }
        Ok(Grid {
            rows,
            cols,
            cells: vec![None; rows * cols],
        })
    }

    /// A totally filled grid from row-major rows of nonzero values.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut g = Grid::new(r, c)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::SizeMismatch(r, c, i + 1, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                g.set(i + 1, j + 1, v)?;
            }
        }
        Ok(g)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn index(&self, row: usize, col: usize) -> Result<usize, Error> {
        if row == 0 || col == 0 || row > self.rows || col > self.cols {
            return Err(Error::OutOfBounds {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((row - 1) * self.cols + (col - 1))
    }

    /// Entry at 1-based `(row, col)`, or `None` if the cell is empty.
    ///
    /// # Panics
    /// Panics if the coordinate is out of bounds.
    pub fn get(&self, row: usize, col: usize) -> Option<i64> {
        let idx = self.index(row, col).expect("coordinate in bounds");
        self.cells[idx]
    }

    /// Fills an empty cell. Rejects zero values, out-of-bounds coordinates
    /// and already filled cells.
    pub fn set(&mut self, row: usize, col: usize, value: i64) -> Result<(), Error> {
        if value == 0 {
            return Err(Error::ZeroEntry { row, col });
        }
        let idx = self.index(row, col)?;
        if self.cells[idx].is_some() {
            return Err(Error::CellOccupied { row, col });
        }
        self.cells[idx] = Some(value);
        Ok(())
    }

    /// Number of filled cells.
    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|c| c.is_none())
    }

    /// Iterates filled cells in row-major order as `(row, col, value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cells.iter().enumerate().filter_map(move |(i, c)| {
            c.map(|v| (i / self.cols + 1, i % self.cols + 1, v))
        })
    }

    /// The set of filled coordinates, row-major.
    pub fn skeleton(&self) -> Vec<(usize, usize)> {
        self.iter().map(|(r, c, _)| (r, c)).collect()
    }

    /// The multiset of absolute values of the entries, sorted ascending.
    pub fn support(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self.iter().map(|(_, _, v)| v.unsigned_abs()).collect();
        s.sort_unstable();
        s
    }

    /// Row sums, indexed 0..rows.
    pub fn row_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rows];
        for (r, _, v) in self.iter() {
            sums[r - 1] += v;
        }
        sums
    }

    /// Column sums, indexed 0..cols.
    pub fn col_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.cols];
        for (_, c, v) in self.iter() {
            sums[c - 1] += v;
        }
        sums
    }

    /// Filled-cell count per row.
    pub fn row_fills(&self) -> Vec<usize> {
        let mut fills = vec![0usize; self.rows];
        for (r, _, _) in self.iter() {
            fills[r - 1] += 1;
        }
        fills
    }

    /// Filled-cell count per column.
    pub fn col_fills(&self) -> Vec<usize> {
        let mut fills = vec![0usize; self.cols];
        for (_, c, _) in self.iter() {
            fills[c - 1] += 1;
        }
        fills
    }

    /// Adds `alpha` to every positive entry and subtracts it from every
    /// negative entry. The skeleton is preserved; on a shiftable array all
    /// zero line sums are preserved.
    pub fn shift(&self, alpha: i64) -> Result<Grid, Error> {
        if alpha <= 0 {
            return Err(Error::NonPositiveShift(alpha));
        }
        let mut out = Grid::new(self.rows, self.cols)?;
        for (r, c, v) in self.iter() {
            let shifted = if v > 0 {
                v.checked_add(alpha)
            } else {
                v.checked_sub(alpha)
            }
            .ok_or(Error::ShiftOverflow { row: r, col: c })?;
            out.set(r, c, shifted)?;
        }
        Ok(out)
    }

    /// Flips the sign of every entry.
    pub fn negate(&self) -> Grid {
        let mut out = Grid::new(self.rows, self.cols).expect("same dims");
        for (r, c, v) in self.iter() {
            out.set(r, c, -v).expect("negation of nonzero is nonzero");
        }
        out
    }

    /// Swaps rows and columns.
    pub fn transpose(&self) -> Grid {
        let mut out = Grid::new(self.cols, self.rows).expect("same dims");
        for (r, c, v) in self.iter() {
            out.set(c, r, v).expect("fresh cell");
        }
        out
    }

    /// Overlaps two same-sized grids with disjoint skeletons. A skeleton
    /// collision is an error naming the first colliding coordinate.
    pub fn overlay(&self, other: &Grid) -> Result<Grid, Error> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::SizeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.set(r, c, v)?;
        }
        Ok(out)
    }

    /// Copies a block into this grid with its (1,1) cell at `(r0, c0)`.
    pub fn place(&mut self, block: &Grid, r0: usize, c0: usize) -> Result<(), Error> {
        for (r, c, v) in block.iter() {
            self.set(r0 + r - 1, c0 + c - 1, v)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Grid {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .iter()
            .map(|(_, _, v)| format!("{v}").len())
            .max()
            .unwrap_or(1);
        for r in 1..=self.rows {
            for c in 1..=self.cols {
                if c > 1 {
                    write!(f, " ")?;
                }
                match self.get(r, c) {
                    Some(v) => write!(f, "{v:>width$}")?,
                    None => write!(f, "{:>width$}", ".")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Grid {
        Grid::from_rows(&[vec![5, -6, -7, 8], vec![-5, 6, 7, -8]]).unwrap()
    }

    #[test]
    fn rejects_zero_entries_and_collisions() {
        let mut g = Grid::new(2, 2).unwrap();
        assert_eq!(g.set(1, 1, 0), Err(Error::ZeroEntry { row: 1, col: 1 }));
        g.set(1, 1, 3).unwrap();
        assert_eq!(g.set(1, 1, 4), Err(Error::CellOccupied { row: 1, col: 1 }));
        assert!(matches!(g.set(3, 1, 1), Err(Error::OutOfBounds { .. })));
    }

    #[test]
    fn shift_acts_entrywise() {
        let g = sample();
        let shifted = g.shift(10).unwrap();
        let expected =
            Grid::from_rows(&[vec![15, -16, -17, 18], vec![-15, 16, 17, -18]]).unwrap();
        assert_eq!(shifted, expected);
        assert_eq!(g.shift(0), Err(Error::NonPositiveShift(0)));
        assert_eq!(g.shift(-3), Err(Error::NonPositiveShift(-3)));
    }

    #[test]
    fn shift_preserves_skeleton() {
        let g = sample();
        assert_eq!(g.shift(7).unwrap().skeleton(), g.skeleton());
    }

    #[test]
    fn shift_and_negate_commute_to_opposite_entries() {
        let g = sample();
        let a = g.shift(10).unwrap();
        let b = g.negate().shift(10).unwrap();
        for (r, c, v) in a.iter() {
            assert_eq!(b.get(r, c), Some(-v));
        }
    }

    #[test]
    fn involutions() {
        let g = sample();
        assert_eq!(g.negate().negate(), g);
        assert_eq!(g.transpose().transpose(), g);
    }

    #[test]
    fn overlay_disjoint_and_collision() {
        let mut a = Grid::new(2, 2).unwrap();
        a.set(1, 1, 4).unwrap();
        let mut b = Grid::new(2, 2).unwrap();
        b.set(2, 2, -4).unwrap();
        let c = a.overlay(&b).unwrap();
        assert_eq!(c.filled(), 2);

        let empty = Grid::new(2, 2).unwrap();
        assert_eq!(a.overlay(&empty).unwrap(), a);

        let mut d = Grid::new(2, 2).unwrap();
        d.set(1, 1, 9).unwrap();
        assert_eq!(
            a.overlay(&d),
            Err(Error::CellOccupied { row: 1, col: 1 })
        );
    }

    #[test]
    fn support_matches_skeleton_size() {
        let g = sample();
        assert_eq!(g.support().len(), g.skeleton().len());
        assert_eq!(g.support(), vec![5, 5, 6, 6, 7, 7, 8, 8]);
    }
}
