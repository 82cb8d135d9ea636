//! Sparse integer matrices and their Matrix Market export.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pair::Bidegree;

/// Exact sparse matrix. Entries are sorted by `(col, row)`, distinct and
/// nonzero. Rows and columns are partitioned into consecutive blocks, one
/// per basis slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    num_rows: usize,
    num_cols: usize,
    entries: Vec<(usize, usize, i64)>,
    row_slices: Vec<(Bidegree, usize)>,
    col_slices: Vec<(Bidegree, usize)>,
}

impl SparseIntMatrix {
    pub fn new(
        num_rows: usize,
        num_cols: usize,
        mut entries: Vec<(usize, usize, i64)>,
        row_slices: Vec<(Bidegree, usize)>,
        col_slices: Vec<(Bidegree, usize)>,
    ) -> Result<Self> {
        if row_slices.iter().map(|s| s.1).sum::<usize>() != num_rows
            || col_slices.iter().map(|s| s.1).sum::<usize>() != num_cols
        {
            return Err(Error::Structural("slice sizes do not add up to the matrix shape".into()));
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        for w in entries.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::Structural(format!("duplicate entry ({}, {})", w[0].0, w[0].1)));
            }
        }
        if let Some(&(r, c, _)) = entries.iter().find(|&&(r, c, v)| r >= num_rows || c >= num_cols || v == 0) {
            return Err(Error::Structural(format!("bad entry at ({r}, {c})")));
        }
        Ok(SparseIntMatrix {
            num_rows,
            num_cols,
            entries,
            row_slices,
            col_slices,
        })
    }

    /// Matrix without slice annotations.
    pub fn from_entries(num_rows: usize, num_cols: usize, entries: Vec<(usize, usize, i64)>) -> Result<Self> {
        let rs = if num_rows > 0 { vec![(Bidegree::new(0, 0, 0, 0), num_rows)] } else { vec![] };
        let cs = if num_cols > 0 { vec![(Bidegree::new(0, 0, 0, 0), num_cols)] } else { vec![] };
        SparseIntMatrix::new(num_rows, num_cols, entries, rs, cs)
    }

    pub fn zero(num_rows: usize, num_cols: usize) -> Self {
        SparseIntMatrix::from_entries(num_rows, num_cols, vec![]).expect("valid")
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn row_slices(&self) -> &[(Bidegree, usize)] {
        &self.row_slices
    }

    pub fn col_slices(&self) -> &[(Bidegree, usize)] {
        &self.col_slices
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries
            .binary_search_by_key(&(c, r), |&(rr, cc, _)| (cc, rr))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    /// Rows as sparse vectors `(col, value)` sorted by column.
    pub fn rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.num_rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        SparseIntMatrix::new(
            self.num_cols,
            self.num_rows,
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect(),
            self.col_slices.clone(),
            self.row_slices.clone(),
        )
        .expect("transpose of a valid matrix")
    }

    /// `self * other`, exactly (with overflow checks).
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.num_cols != other.num_rows {
            return Err(Error::ChainMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.num_rows, self.num_cols, other.num_rows, other.num_cols
            )));
        }
        let rows = self.rows();
        let mut acc = std::collections::BTreeMap::new();
        let by_row_other = other.rows();
        for (i, row) in rows.iter().enumerate() {
            for &(k, a) in row {
                for &(j, b) in &by_row_other[k] {
                    let e = acc.entry((i, j)).or_insert(0i64);
                    *e = e
                        .checked_add(a.checked_mul(b).ok_or_else(|| Error::Structural("overflow".into()))?)
                        .ok_or_else(|| Error::Structural("overflow".into()))?;
                }
            }
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0).map(|((i, j), v)| (i, j, v)).collect();
        SparseIntMatrix::new(
            self.num_rows,
            other.num_cols,
            entries,
            self.row_slices.clone(),
            other.col_slices.clone(),
        )
    }

    /// Matrix Market coordinate integer format (1-based indices).
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::from("%%MatrixMarket matrix coordinate integer general\n");
        let _ = writeln!(s, "{} {} {}", self.num_rows, self.num_cols, self.entries.len());
        for &(r, c, v) in &self.entries {
            let _ = writeln!(s, "{} {} {}", r + 1, c + 1, v);
        }
        s
    }

    pub fn from_matrix_market(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.starts_with('%') && !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let nums = |l: &str| -> Result<Vec<i64>> {
            l.split_whitespace()
                .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad number {x:?}"))))
                .collect()
        };
        let h = nums(header)?;
        if h.len() != 3 || h.iter().any(|&x| x < 0) {
            return Err(Error::Parse("bad size line".into()));
        }
        let mut entries = Vec::with_capacity(h[2] as usize);
        for l in lines {
            let e = nums(l)?;
            if e.len() != 3 || e[0] < 1 || e[1] < 1 {
                return Err(Error::Parse(format!("bad entry line {l:?}")));
            }
            entries.push((e[0] as usize - 1, e[1] as usize - 1, e[2]));
        }
        if entries.len() != h[2] as usize {
            return Err(Error::Parse("entry count mismatch".into()));
        }
        SparseIntMatrix::from_entries(h[0] as usize, h[1] as usize, entries)
    }

    /// Sidecar naming the slice blocks: `rows <bidegree> <len>` and
    /// `cols <bidegree> <len>` lines, plus any extra `file` lines.
    pub fn slices_sidecar(&self, files: &[(&str, &str)]) -> String {
        let mut s = String::new();
        for (b, n) in &self.row_slices {
            let _ = writeln!(s, "rows {b} {n}");
        }
        for (b, n) in &self.col_slices {
            let _ = writeln!(s, "cols {b} {n}");
        }
        for (role, f) in files {
            let _ = writeln!(s, "file {role} {f}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_market_roundtrip() {
        let m = SparseIntMatrix::from_entries(3, 2, vec![(0, 0, 1), (2, 1, -4)]).unwrap();
        let back = SparseIntMatrix::from_matrix_market(&m.to_matrix_market()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.get(2, 1), -4);
        assert_eq!(back.get(1, 1), 0);
    }

    #[test]
    fn rejects_duplicates_and_zeros() {
        assert!(SparseIntMatrix::from_entries(2, 2, vec![(0, 0, 1), (0, 0, 2)]).is_err());
        assert!(SparseIntMatrix::from_entries(2, 2, vec![(0, 0, 0)]).is_err());
        assert!(SparseIntMatrix::from_entries(2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn product() {
        let a = SparseIntMatrix::from_entries(2, 2, vec![(0, 0, 1), (0, 1, 1), (1, 1, 2)]).unwrap();
        let b = SparseIntMatrix::from_entries(2, 1, vec![(0, 0, 2), (1, 0, -2)]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.entries(), &[(1, 0, -4)]);
    }
}
