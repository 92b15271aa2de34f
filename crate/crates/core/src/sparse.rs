//! Row-major sparse matrix used for every weighted update in the crate.

use rayon::prelude::*;

/// Rows below this count are multiplied sequentially.
const PAR_MIN_ROWS: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseRows {
    offsets: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseRows {
    pub fn from_rows<I, R>(rows: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = (u32, f64)>,
    {
        let mut offsets = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            offsets.push(cols.len());
        }
        Self {
            offsets,
            cols,
            vals,
        }
    }

    pub fn rows(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> (&[u32], &[f64]) {
        let r = self.offsets[i]..self.offsets[i + 1];
        (&self.cols[r.clone()], &self.vals[r])
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).1.iter().sum()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&(j as u32)).map_or(0.0, |p| vals[p])
    }

    /// `row · x` summed in stored column order.
    #[inline]
    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        let (cols, vals) = self.row(i);
        cols.iter()
            .zip(vals)
            .map(|(&c, &w)| w * x[c as usize])
            .sum()
    }

    /// Writes `f(i, row_i · x)` into `out[i]` for every row.
    ///
    /// Each entry depends only on its own row, so the result does not depend
    /// on how rows are scheduled across threads.
    pub fn map_product<F>(&self, x: &[f64], out: &mut [f64], f: F)
    where
        F: Fn(usize, f64) -> f64 + Sync,
    {
        debug_assert_eq!(out.len(), self.rows());
        if out.len() < PAR_MIN_ROWS {
            for (i, o) in out.iter_mut().enumerate() {
                *o = f(i, self.row_dot(i, x));
            }
        } else {
            out.par_iter_mut()
                .enumerate()
                .with_min_len(1024)
                .for_each(|(i, o)| *o = f(i, self.row_dot(i, x)));
        }
    }
}

/// Infinity-norm of `a - b`.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_lookup() {
        let m = SparseRows::from_rows(vec![vec![(1, 0.5), (2, 0.5)], vec![], vec![(0, 1.0)]]);
        assert_eq!((m.rows(), m.nnz()), (3, 3));
        let mut out = vec![0.0; 3];
        m.map_product(&[1.0, 2.0, 4.0], &mut out, |_, s| s);
        assert_eq!(out, vec![3.0, 0.0, 1.0]);
        assert_eq!(m.get(0, 2), 0.5);
        assert_eq!(m.get(1, 0), 0.0);
        assert_eq!(m.row_sum(0), 1.0);
    }
}
