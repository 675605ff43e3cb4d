//! Dense exact matrices and reduced row echelon form.
//!
//! Elimination always takes the leftmost available pivot column and, within
//! it, the first row with a nonzero entry, so results are reproducible.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of row reduction: `transform * original = reduced`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Selects the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| self.row(i)).collect();
        Matrix::from_rows(&rows, self.cols)
    }

    pub fn echelon(&self) -> Echelon {
        let mut r = self.clone();
        let mut e = Matrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&i| !r[(i, col)].is_zero()) else {
                continue;
            };
            r.swap_rows(p, next);
            e.swap_rows(p, next);
            let inv = r[(next, col)].recip();
            r.scale_row(next, &inv);
            e.scale_row(next, &inv);
            for i in 0..self.rows {
                if i != next && !r[(i, col)].is_zero() {
                    let f = r[(i, col)].clone();
                    r.axpy_row(i, next, &f);
                    e.axpy_row(i, next, &f);
                }
            }
            pivots.push(col);
            next += 1;
        }
        Echelon {
            reduced: r,
            pivots,
            transform: e,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let ech = self.echelon();
        (ech.pivots.len() == self.rows).then_some(ech.transform)
    }

    /// Basis of the null space, returned in reduced echelon form.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let mut free = vec![true; self.cols];
        for &p in &ech.pivots {
            free[p] = false;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&j| free[j]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (row, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced[(row, f)].clone();
            }
            basis.push(v);
        }
        row_space_basis(&basis, self.cols)
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` if
    /// the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let ech = self.echelon();
        solve_with(&ech, self.cols, b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            if !x.is_zero() {
                *x *= c;
            }
        }
    }

    /// row[i] -= f * row[src]
    fn axpy_row(&mut self, i: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = s * f;
                self.data[i * self.cols + j] -= d;
            }
        }
    }
}

/// Solves using a precomputed echelon form of a `rows x cols` matrix.
pub fn solve_with(ech: &Echelon, cols: usize, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let c = ech.transform.mul_vec(b);
    let rank = ech.pivots.len();
    if c[rank..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (row, &p) in ech.pivots.iter().enumerate() {
        x[p] = c[row].clone();
    }
    Some(x)
}

/// Reduced echelon basis of the span of `vectors` (each of length `dim`).
pub fn row_space_basis(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let ech = Matrix::from_rows(vectors, dim).echelon();
    (0..ech.pivots.len()).map(|i| ech.reduced.row(i)).collect()
}

/// Is `v` in the span of `vectors`?
pub fn in_span(vectors: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let dim = v.len();
    let r0 = row_space_basis(vectors, dim).len();
    let mut all = vectors.to_vec();
    all.push(v.to_vec());
    row_space_basis(&all, dim).len() == r0
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::scalar::format).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let r: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Matrix::from_rows(&r, cols)
    }

    #[test]
    fn echelon_transform_reproduces_reduced() {
        let a = m(&[&[0, 2, 4], &[1, 1, 1], &[2, 4, 6]]);
        let ech = a.echelon();
        assert_eq!(ech.transform.mul(&a), ech.reduced);
        assert_eq!(ech.pivots, vec![0, 1]);
        assert_eq!(ech.reduced.row(1), vec![int(0), int(1), int(2)]);
    }

    #[test]
    fn inverse_of_invertible() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        let x = m(&[&[3, 0], &[0, 2]]).solve(&[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![frac(1, 3), frac(1, 2)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[int(1), int(2)]).is_none());
    }

    #[test]
    fn span_membership() {
        let vs = vec![vec![int(1), int(1), int(0)]];
        assert!(in_span(&vs, &[int(2), int(2), int(0)]));
        assert!(!in_span(&vs, &[int(1), int(0), int(0)]));
        assert!(in_span(&[], &[int(0), int(0)]));
    }
}
