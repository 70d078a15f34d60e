//! Exact linear algebra over the rationals: just enough Gaussian
//! elimination for determinants, ranks and membership tests.

use num_traits::{One, Zero};

use crate::poly::Rat;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-full elimination (fine at this scale).
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let Some(pr) = pivot else {
                return Rat::zero();
            };
            if pr != col {
                m.swap_rows(pr, col);
                det = -det;
            }
            let pv = m[(col, col)].clone();
            det *= &pv;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pv;
                for c in col..n {
                    let delta = &factor * &m[(col, c)];
                    m[(r, c)] -= delta;
                }
            }
        }
        det
    }

    /// Inverse, or `None` for a singular matrix.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pr = (col..n).find(|&r| !m[(r, col)].is_zero())?;
            m.swap_rows(pr, col);
            inv.swap_rows(pr, col);
            let pv = m[(col, col)].clone();
            for c in 0..n {
                m[(col, c)] /= &pv;
                inv[(col, c)] /= &pv;
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in 0..n {
                    let dm = &factor * &m[(col, c)];
                    m[(r, c)] -= dm;
                    let di = &factor * &inv[(col, c)];
                    inv[(r, c)] -= di;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

/// Sparse vector: (column, coefficient) pairs sorted by column, no zeros.
pub type SparseVec = Vec<(usize, Rat)>;

fn sparse_axpy(v: &SparseVec, factor: &Rat, row: &SparseVec) -> SparseVec {
    // v - factor * row, merging sorted supports.
    let mut out = Vec::with_capacity(v.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < row.len() {
        match (v.get(i), row.get(j)) {
            (Some((ci, cv)), Some((cj, rv))) if ci == cj => {
                let val = cv - &(factor * rv);
                if !val.is_zero() {
                    out.push((*ci, val));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, cv)), Some((cj, _))) if ci < cj => {
                out.push((*ci, cv.clone()));
                i += 1;
            }
            (Some(_), Some((cj, rv))) => {
                let val = -(factor * rv);
                if !val.is_zero() {
                    out.push((*cj, val));
                }
                j += 1;
            }
            (Some((ci, cv)), None) => {
                out.push((*ci, cv.clone()));
                i += 1;
            }
            (None, Some((cj, rv))) => {
                let val = -(factor * rv);
                if !val.is_zero() {
                    out.push((*cj, val));
                }
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// Row space of a set of vectors in reduced row-echelon form, stored
/// sparsely. Supports rank queries and exact membership tests, which is
/// all the colength computation needs.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    /// Echelon rows, leading coefficient 1, sorted by pivot column.
    rows: Vec<SparseVec>,
    /// Pivot column of each echelon row.
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn to_sparse(v: Vec<Rat>) -> SparseVec {
        v.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Reduce `v` against the current rows; the remainder has zeros in all
    /// pivot columns.
    fn reduce_sparse(&self, mut v: SparseVec) -> SparseVec {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let Ok(at) = v.binary_search_by_key(&pc, |(c, _)| *c) else {
                continue;
            };
            let factor = v[at].1.clone();
            v = sparse_axpy(&v, &factor, row);
        }
        v
    }

    pub fn reduce(&self, v: Vec<Rat>) -> Vec<Rat> {
        let reduced = self.reduce_sparse(Self::to_sparse(v));
        let mut out = vec![Rat::zero(); self.cols];
        for (c, val) in reduced {
            out[c] = val;
        }
        out
    }

    /// Insert a sparse vector; returns true if it enlarged the space.
    pub fn insert_sparse(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.cols));
        let mut v = self.reduce_sparse(v);
        if v.is_empty() {
            return false;
        }
        let pc = v[0].0;
        let lead = v[0].1.clone();
        for (_, c) in v.iter_mut() {
            *c /= &lead;
        }
        // Back-substitute into existing rows to keep the form reduced.
        for row in self.rows.iter_mut() {
            if let Ok(at) = row.binary_search_by_key(&pc, |(c, _)| *c) {
                let factor = row[at].1.clone();
                *row = sparse_axpy(row, &factor, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    /// Insert a dense vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.insert_sparse(Self::to_sparse(v))
    }

    pub fn contains(&self, v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce_sparse(Self::to_sparse(v)).is_empty()
    }

    pub fn contains_sparse(&self, v: SparseVec) -> bool {
        self.reduce_sparse(v).is_empty()
    }
}

/// Rank of a list of rational vectors.
pub fn rank_of(vectors: &[Vec<Rat>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut space = RowSpace::new(first.len());
    for v in vectors {
        space.insert(v.clone());
    }
    space.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn det_and_inverse() {
        let m = RatMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), RatMatrix::identity(2));
        let s = RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), rat(0));
        assert!(s.inverse().is_none());
    }

    #[test]
    fn row_space_membership() {
        let mut space = RowSpace::new(3);
        assert!(space.insert(vec![rat(1), rat(1), rat(0)]));
        assert!(space.insert(vec![rat(0), rat(1), rat(1)]));
        assert!(!space.insert(vec![rat(1), rat(2), rat(1)]));
        assert_eq!(space.rank(), 2);
        assert!(space.contains(vec![rat(2), rat(3), rat(1)]));
        assert!(!space.contains(vec![rat(0), rat(0), rat(1)]));
    }
}
