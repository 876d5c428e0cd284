//! Exact linear algebra over the rationals: incremental row spaces and kernels.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse rational vector indexed by coordinates.
pub type SparseVec = BTreeMap<usize, BigRational>;

/// A row-reduced spanning set supporting membership tests.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: Vec<SparseVec>,
    // pivot coordinate -> row
    pivots: BTreeMap<usize, usize>,
}

impl RowSpace {
    pub fn new() -> RowSpace {
        RowSpace::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let Some((&col, coeff)) = v.iter().find(|(c, _)| self.pivots.contains_key(c)) else {
                return v;
            };
            let coeff = coeff.clone();
            let row = &self.rows[self.pivots[&col]];
            for (&c, x) in row {
                let entry = v.entry(c).or_insert_with(BigRational::zero);
                *entry -= &coeff * x;
                if entry.is_zero() {
                    v.remove(&c);
                }
            }
        }
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / lead;
        let r: SparseVec = r.iter().map(|(&c, x)| (c, x * &inv)).collect();
        // Keep earlier rows reduced against the new pivot.
        for row in &mut self.rows {
            if let Some(x) = row.get(&pivot).cloned() {
                for (&c, y) in &r {
                    let entry = row.entry(c).or_insert_with(BigRational::zero);
                    *entry -= &x * y;
                    if entry.is_zero() {
                        row.remove(&c);
                    }
                }
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Basis of `{x : A x = 0}` for a dense `rows × cols` matrix.
pub fn kernel(matrix: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of the relations `Σ x_c · columns[c] = 0` among sparse columns.
pub fn column_kernel(columns: &[SparseVec]) -> Vec<Vec<BigRational>> {
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    for col in columns {
        for &r in col.keys() {
            let next = rows.len();
            rows.entry(r).or_insert(next);
        }
    }
    let mut matrix = vec![vec![BigRational::zero(); columns.len()]; rows.len()];
    for (c, col) in columns.iter().enumerate() {
        for (r, q) in col {
            matrix[rows[r]][c] = q.clone();
        }
    }
    kernel(&matrix, columns.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, x)| (c, rat(x, 1))).collect()
    }

    #[test]
    fn membership() {
        let mut rs = RowSpace::new();
        assert!(rs.insert(&sv(&[(0, 1), (1, 1)])));
        assert!(rs.insert(&sv(&[(1, 2), (2, 1)])));
        assert!(!rs.insert(&sv(&[(0, 2), (1, 4), (2, 1)])));
        assert!(rs.contains(&sv(&[(0, 1), (1, -1), (2, -1)])));
        assert!(!rs.contains(&sv(&[(2, 1)])));
        assert_eq!(rs.rank(), 2);
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigRational = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }
}
