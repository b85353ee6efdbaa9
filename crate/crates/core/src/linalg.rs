//! Dense matrices over GF(3): rank, kernels, and congruence diagonalization
//! of symmetric matrices.
//!
//! Everything here is exact trit arithmetic on row-major `u8` storage. The
//! matrices that arise are n x n for n <= 80, so there is nothing to gain
//! from sparse or blocked representations.

use crate::gf3;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat3 {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Mat3 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat3 {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat3::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows; panics on ragged input or non-trit entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat3::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                assert!(v < 3, "entries must be trits");
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
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Mat3 {
        let mut t = Mat3::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for (j, &vj) in v.iter().enumerate() {
                    acc += (self.get(i, j) * vj) as u32;
                }
                (acc % 3) as u8
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Mat3) -> Mat3 {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat3::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = gf3::add(out.get(i, j), gf3::mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Rank via Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            let inv = gf3::inv(m.get(rank, col));
            for j in 0..m.cols {
                m.set(rank, j, gf3::mul(inv, m.get(rank, j)));
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let c = m.get(r, col);
                    for j in 0..m.cols {
                        let v = gf3::sub(m.get(r, j), gf3::mul(c, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel {x : Mx = 0}, via reduced row echelon form.
    /// The basis vectors are the standard free-column solutions.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            let inv = gf3::inv(m.get(rank, col));
            for j in 0..m.cols {
                m.set(rank, j, gf3::mul(inv, m.get(rank, j)));
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) != 0 {
                    let c = m.get(r, col);
                    for j in 0..m.cols {
                        let v = gf3::sub(m.get(r, j), gf3::mul(c, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivot_col_of_row.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u8; m.cols];
            v[free] = 1;
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = gf3::neg(m.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let t = self.get(a, j);
            self.set(a, j, self.get(b, j));
            self.set(b, j, t);
        }
    }

    fn add_row(&mut self, src: usize, dst: usize, c: u8) {
        for j in 0..self.cols {
            let v = gf3::add(self.get(dst, j), gf3::mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, src: usize, dst: usize, c: u8) {
        for i in 0..self.rows {
            let v = gf3::add(self.get(i, dst), gf3::mul(c, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let t = self.get(i, a);
            self.set(i, a, self.get(i, b));
            self.set(i, b, t);
        }
    }
}

/// Result of congruence diagonalization: transform * m * transform^T is the
/// diagonal matrix with the returned entries.
pub struct SymDiag {
    pub diag: Vec<u8>,
    pub transform: Mat3,
}

/// Diagonalize a symmetric matrix over GF(3) by a congruence P M P^T = D.
/// Works for any odd characteristic: whenever the remaining block has a
/// nonzero entry but a zero diagonal, adding one row and the matching column
/// moves twice that entry onto the diagonal.
pub fn diagonalize_symmetric(m: &Mat3) -> SymDiag {
    assert!(m.is_symmetric(), "congruence diagonalization needs symmetry");
    let n = m.rows();
    let mut a = m.clone();
    let mut p = Mat3::identity(n);
    for k in 0..n {
        if a.get(k, k) == 0 {
            // pull a nonzero diagonal entry into position k if one exists
            if let Some(i) = (k + 1..n).find(|&i| a.get(i, i) != 0) {
                a.swap_rows(k, i);
                a.swap_cols(k, i);
                p.swap_rows(k, i);
            } else if let Some((i, j)) = first_offdiag(&a, k) {
                // a[i][j] != 0 with zero diagonal: row/col addition makes
                // a[i][i] = 2 a[i][j] != 0 in odd characteristic
                a.add_row(j, i, 1);
                a.add_col(j, i, 1);
                p.add_row(j, i, 1);
                if i != k {
                    a.swap_rows(k, i);
                    a.swap_cols(k, i);
                    p.swap_rows(k, i);
                }
            } else {
                break; // remaining block is zero
            }
        }
        let pivot = a.get(k, k);
        let pivot_inv = gf3::inv(pivot);
        for i in k + 1..n {
            let c = a.get(i, k);
            if c != 0 {
                let factor = gf3::neg(gf3::mul(c, pivot_inv));
                a.add_row(k, i, factor);
                a.add_col(k, i, factor);
                p.add_row(k, i, factor);
            }
        }
    }
    let diag = (0..n).map(|i| a.get(i, i)).collect();
    SymDiag { diag, transform: p }
}

fn first_offdiag(a: &Mat3, from: usize) -> Option<(usize, usize)> {
    let n = a.rows();
    for i in from..n {
        for j in from..n {
            if i != j && a.get(i, j) != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn rank_of_standard_matrices() {
        assert_eq!(Mat3::zeros(4, 4).rank(), 0);
        assert_eq!(Mat3::identity(5).rank(), 5);
        // second row is twice the first
        let m = Mat3::from_rows(&[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Mat3::from_rows(&[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        assert_eq!(Mat3::identity(3).kernel_basis().len(), 0);
        assert_eq!(Mat3::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn rank_plus_kernel_dim_is_cols() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            let mut m = Mat3::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, rng.gen_range(0..3));
                }
            }
            let basis = m.kernel_basis();
            assert_eq!(m.rank() + basis.len(), cols);
            for v in &basis {
                assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn diagonalization_of_hyperbolic_plane() {
        // [[0,1],[1,0]] has no nonzero diagonal; the repair step must fire
        let m = Mat3::from_rows(&[vec![0, 1], vec![1, 0]]);
        let out = diagonalize_symmetric(&m);
        assert_eq!(out.diag.iter().filter(|&&d| d != 0).count(), 2);
        check_congruence(&m, &out);
    }

    #[test]
    fn diagonalization_fixed_points() {
        let id = Mat3::identity(4);
        let out = diagonalize_symmetric(&id);
        assert_eq!(out.diag, vec![1, 1, 1, 1]);
        let z = Mat3::zeros(3, 3);
        let out = diagonalize_symmetric(&z);
        assert_eq!(out.diag, vec![0, 0, 0]);
    }

    #[test]
    fn diagonalization_of_random_symmetric_matrices() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(1..8);
            let mut m = Mat3::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let v = rng.gen_range(0..3);
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            let out = diagonalize_symmetric(&m);
            check_congruence(&m, &out);
            let nonzero = out.diag.iter().filter(|&&d| d != 0).count();
            assert_eq!(nonzero, m.rank(), "rank must survive congruence");
            assert_eq!(out.transform.rank(), n, "transform must be invertible");
        }
    }

    fn check_congruence(m: &Mat3, out: &SymDiag) {
        let n = m.rows();
        let d = out.transform.mul_mat(m).mul_mat(&out.transform.transpose());
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { out.diag[i] } else { 0 };
                assert_eq!(d.get(i, j), expect, "entry ({i},{j})");
            }
        }
    }
}
