//! Dense matrices over a table field.

use super::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fe>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_vec(r, c, rows.concat())
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Fe>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut r = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    r.data[idx] = f.add(r.data[idx], f.mul(a, o.get(k, j)));
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_vec(
            self.rows,
            self.cols,
            self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect(),
        )
    }

    pub fn sub(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_vec(
            self.rows,
            self.cols,
            self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        )
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Mat {
        Mat::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|&a| f.mul(c, a)).collect(),
        )
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut r = Mat::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            r.data[i * r.cols..i * r.cols + self.cols].copy_from_slice(self.row(i));
            r.data[i * r.cols + self.cols..(i + 1) * r.cols].copy_from_slice(o.row(i));
        }
        r
    }

    /// `[self ; o]`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat::from_vec(self.rows + o.rows, self.cols, data)
    }

    /// Block diagonal `diag(self, o)`.
    pub fn block_diag(&self, o: &Mat) -> Mat {
        let mut r = Mat::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(i, j, self.get(i, j));
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                r.set(self.rows + i, self.cols + j, o.get(i, j));
            }
        }
        r
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut r = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                r.set(a, b, self.get(i, j));
            }
        }
        r
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let x = m.get(r, j);
                m.set(r, j, f.mul(inv, x));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let x = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref(f).1.len()
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &Field) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let (red, piv) = self.hstack(&Mat::identity(n)).rref(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(red.submatrix(&(0..n).collect::<Vec<_>>(), &cols))
    }

    /// Basis of the right nullspace, as the columns of a `cols × k` matrix.
    pub fn nullspace(&self, f: &Field) -> Mat {
        let (red, piv) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut basis = Mat::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (r, &pc) in piv.iter().enumerate() {
                basis.set(pc, k, f.neg(red.get(r, fc)));
            }
        }
        basis
    }

    /// Basis of the column space, as the columns of a `rows × r` matrix.
    pub fn column_space(&self, f: &Field) -> Mat {
        let (_, piv) = self.rref(f);
        let cols: Vec<Vec<Fe>> = piv.iter().map(|&c| self.col(c)).collect();
        Mat::from_cols(self.rows, &cols)
    }

    /// Extends the independent columns of `self` to a basis of the ambient space,
    /// returning only the added columns (standard basis vectors).
    pub fn complement(&self, f: &Field) -> Mat {
        let n = self.rows;
        let mut cur = self.clone();
        let mut rank = cur.rank(f);
        let mut added = Vec::new();
        for i in 0..n {
            if rank == n {
                break;
            }
            let mut e = vec![0; n];
            e[i] = 1;
            let trial = cur.hstack(&Mat::from_cols(n, std::slice::from_ref(&e)));
            let r = trial.rank(f);
            if r > rank {
                cur = trial;
                rank = r;
                added.push(e);
            }
        }
        Mat::from_cols(n, &added)
    }
}

/// Subspace of 𝔽ⁿ held by a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub n: usize,
    /// `k × n` RREF basis.
    pub basis: Mat,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rref(basis: Mat, pivots: Vec<usize>) -> Subspace {
        Subspace {
            n: basis.cols,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, f: &Field, v: &[Fe]) -> bool {
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                *wj = f.sub(*wj, f.mul(c, self.basis.get(r, j)));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Basis vectors as columns of an `n × k` matrix.
    pub fn as_columns(&self) -> Mat {
        self.basis.transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip_f9() {
        let f = Field::new(3, 2).unwrap();
        let a = Mat::from_rows(&[vec![1, 4, 0], vec![2, 0, 7], vec![0, 5, 3]]);
        if let Some(ai) = a.inverse(&f) {
            assert_eq!(a.mul(&f, &ai), Mat::identity(3));
        } else {
            assert!(a.rank(&f) < 3);
        }
        let sing = Mat::from_rows(&[vec![1, 2], vec![1, 2]]);
        assert!(sing.inverse(&f).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Field::new(2, 2).unwrap();
        let a = Mat::from_rows(&[vec![1, 2, 3, 0], vec![2, 3, 1, 1]]);
        let ns = a.nullspace(&f);
        assert_eq!(ns.cols, 4 - a.rank(&f));
        assert!(a.mul(&f, &ns).is_zero());
    }

    #[test]
    fn complement_completes_basis() {
        let f = Field::new(5, 1).unwrap();
        let a = Mat::from_cols(3, &[vec![1, 1, 0]]);
        let c = a.complement(&f);
        assert_eq!(c.cols, 2);
        assert!(a.hstack(&c).is_invertible(&f));
    }
}
