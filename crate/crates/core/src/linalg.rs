//! Dense linear algebra over F_p for graded pieces.

use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: u32, k: Field) {
        let idx = i * self.cols + j;
        self.data[idx] = k.add(self.data[idx], v);
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, k: Field) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = k.char() as u64;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(l, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, k: Field) -> Vec<usize> {
        let p = k.char() as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = k.inv_nz(self.get(r, c)) as u64;
            for j in c..self.cols {
                let idx = r * self.cols + j;
                self.data[idx] = ((self.data[idx] as u64 * inv) % p) as u32;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let f = p - f;
                for j in c..self.cols {
                    let src = self.data[r * self.cols + j] as u64;
                    if src != 0 {
                        let idx = i * self.cols + j;
                        self.data[idx] = ((self.data[idx] as u64 + f * src) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, k: Field) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows < self.cols {
            self.transpose().rank_forward(k)
        } else {
            self.rank_forward(k)
        }
    }

    fn rank_forward(&self, k: Field) -> usize {
        let mut m = self.clone();
        m.rref(k).len()
    }

    /// A basis of `{v : self * v = 0}`.
    pub fn kernel(&self, k: Field) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(k);
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = k.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        let k = Field::new(7).unwrap();
        let m = Matrix::from_columns(2, &[vec![1, 2], vec![2, 4], vec![0, 1]]);
        assert_eq!(m.rank(k), 2);
        let m = Matrix::from_columns(2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(k), 1);
        assert_eq!(Matrix::zeros(0, 3).rank(k), 0);
        assert_eq!(Matrix::identity(4).rank(k), 4);
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 0usize..6, cols in 0usize..6, seed in prop::collection::vec(0u32..5, 36)) {
            let k = Field::new(5).unwrap();
            let mut m = Matrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, seed[i * 6 + j]);
                }
            }
            let ker = m.kernel(k);
            prop_assert_eq!(m.rank(k) + ker.len(), cols);
            prop_assert_eq!(m.rank(k), m.transpose().rank(k));
            for v in ker {
                let vm = Matrix::from_columns(cols, &[v]);
                prop_assert!(m.mul(&vm, k).is_zero());
            }
        }
    }
}
