//! Small dense complex linear algebra: pivoted elimination, Householder
//! least squares, and numeric rank.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::LinalgError;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    /// `max_i |(A x - b)_i|`.
    pub fn residual(&self, x: &[Complex64], b: &[Complex64]) -> f64 {
        self.mul_vec(x)
            .iter()
            .zip(b)
            .map(|(l, r)| (l - r).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Gaussian elimination with complete pivoting over the first `pivot_cols`
/// columns; later columns ride along. Returns the number of pivots larger
/// than `tol` times the largest initial magnitude, the reduced matrix, and
/// the column permutation.
fn eliminate(a: &ComplexMatrix, pivot_cols: usize, tol: f64) -> (usize, ComplexMatrix, Vec<usize>) {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut col_perm: Vec<usize> = (0..pivot_cols).collect();
    let mut scale: f64 = 0.0;
    for i in 0..rows {
        for j in 0..pivot_cols {
            scale = scale.max(m[(i, j)].norm());
        }
    }
    let floor = tol * scale;
    let mut rank = 0;
    while rank < rows.min(pivot_cols) {
        let mut best = (rank, rank, -1.0f64);
        for i in rank..rows {
            for j in rank..pivot_cols {
                let v = m[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        let (pi, pj, pv) = best;
        if pv <= floor || pv == 0.0 {
            break;
        }
        if pi != rank {
            for j in 0..cols {
                m.data.swap(pi * cols + j, rank * cols + j);
            }
        }
        if pj != rank {
            for i in 0..rows {
                m.data.swap(i * cols + pj, i * cols + rank);
            }
            col_perm.swap(pj, rank);
        }
        let pivot = m[(rank, rank)];
        for i in rank + 1..rows {
            let factor = m[(i, rank)] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in rank..cols {
                let v = m[(rank, j)];
                m[(i, j)] -= factor * v;
            }
        }
        rank += 1;
    }
    (rank, m, col_perm)
}

/// Rank by complete-pivoting elimination; an entry counts as zero when its
/// magnitude is at most `tol` times the largest initial magnitude.
pub fn numeric_rank(a: &ComplexMatrix, tol: f64) -> usize {
    eliminate(a, a.cols, tol).0
}

/// Solves the square system `a x = b` by elimination with complete pivoting.
pub fn solve(a: &ComplexMatrix, b: &[Complex64], tol: f64) -> Result<Vec<Complex64>, LinalgError> {
    let n = a.rows;
    if a.cols != n || b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            rows: a.rows,
            cols: a.cols,
            rhs: b.len(),
        });
    }
    let aug = ComplexMatrix::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)] } else { b[i] });
    let (rank, r, col_perm) = eliminate(&aug, n, tol);
    if rank < n {
        return Err(LinalgError::Singular { rank, needed: n });
    }
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let s: Complex64 = (i + 1..n).map(|j| r[(i, j)] * y[j]).sum();
        y[i] = (r[(i, n)] - s) / r[(i, i)];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for (k, &c) in col_perm.iter().enumerate() {
        x[c] = y[k];
    }
    Ok(x)
}

/// Least-squares solution of `a x ~ b` by Householder QR with column
/// pivoting. Fails when the numeric rank is below the column count.
pub fn lstsq(a: &ComplexMatrix, b: &[Complex64], tol: f64) -> Result<Vec<Complex64>, LinalgError> {
    let (rows, cols) = (a.rows, a.cols);
    if b.len() != rows || rows < cols {
        return Err(LinalgError::DimensionMismatch {
            rows,
            cols,
            rhs: b.len(),
        });
    }
    let mut r = a.clone();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| r[(i, j)].norm_sqr()).sum())
        .collect();
    let floor = tol * a.max_abs();

    for k in 0..cols {
        let (pj, _) = norms
            .iter()
            .enumerate()
            .skip(k)
            .max_by(|x, y| x.1.total_cmp(y.1))
            .expect("nonempty");
        if pj != k {
            for i in 0..rows {
                r.data.swap(i * cols + pj, i * cols + k);
            }
            perm.swap(pj, k);
            norms.swap(pj, k);
        }
        let alpha: f64 = (k..rows).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha <= floor || alpha == 0.0 {
            return Err(LinalgError::Singular { rank: k, needed: cols });
        }
        let head = r[(k, k)];
        let phase = if head.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            head / head.norm()
        };
        // v = x + phase * alpha * e_1, H = I - 2 v v^H / (v^H v)
        let mut v: Vec<Complex64> = (k..rows).map(|i| r[(i, k)]).collect();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        for j in k..cols {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| vi.conj() * r[(k + t, j)])
                .sum();
            let f = dot * (2.0 / vnorm2);
            for (t, vi) in v.iter().enumerate() {
                r[(k + t, j)] -= f * vi;
            }
        }
        let dot: Complex64 = v
            .iter()
            .enumerate()
            .map(|(t, vi)| vi.conj() * rhs[k + t])
            .sum();
        let f = dot * (2.0 / vnorm2);
        for (t, vi) in v.iter().enumerate() {
            rhs[k + t] -= f * vi;
        }
        for (j, norm) in norms.iter_mut().enumerate().skip(k + 1) {
            *norm = (k + 1..rows).map(|i| r[(i, j)].norm_sqr()).sum();
        }
    }

    let mut y = vec![Complex64::new(0.0, 0.0); cols];
    for i in (0..cols).rev() {
        let s: Complex64 = (i + 1..cols).map(|j| r[(i, j)] * y[j]).sum();
        y[i] = (rhs[i] - s) / r[(i, i)];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); cols];
    for (k, &c) in perm.iter().enumerate() {
        x[c] = y[k];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_examples() {
        let id = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]);
        assert_eq!(numeric_rank(&id, 1e-12), 2);

        let u = [c(1.0, 0.0), c(0.0, 1.0)];
        let v = [c(1.0, 0.0), c(-1.0, 0.0)];
        let outer = ComplexMatrix::from_fn(2, 2, |i, j| u[i] * v[j]);
        assert_eq!(numeric_rank(&outer, 1e-12), 1);

        let tall = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ]);
        assert_eq!(numeric_rank(&tall, 1e-12), 2);
        assert_eq!(numeric_rank(&ComplexMatrix::zeros(2, 3), 1e-12), 0);
    }

    #[test]
    fn square_solve() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(2.0, 1.0), c(1.0, 0.0)],
            vec![c(1.0, -1.0), c(0.5, 0.0), c(0.0, 3.0)],
            vec![c(4.0, 0.0), c(0.0, -2.0), c(1.0, 1.0)],
        ]);
        let x_true = [c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0)];
        let b = a.mul_vec(&x_true);
        let x = solve(&a, &b, 1e-12).unwrap();
        for (l, r) in x.iter().zip(&x_true) {
            assert!((l - r).norm() < 1e-13);
        }
        let sing = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]]);
        assert!(matches!(
            solve(&sing, &[c(1.0, 0.0), c(2.0, 0.0)], 1e-12),
            Err(LinalgError::Singular { rank: 1, needed: 2 })
        ));
    }

    #[test]
    fn least_squares_overdetermined() {
        // fit a line through exact data plus check orthogonality of residual
        let a = ComplexMatrix::from_fn(5, 2, |i, j| if j == 0 { c(1.0, 0.0) } else { c(i as f64, 0.5) });
        let x_true = [c(0.5, -1.0), c(2.0, 0.0)];
        let mut b = a.mul_vec(&x_true);
        let x = lstsq(&a, &b, 1e-12).unwrap();
        assert!((x[0] - x_true[0]).norm() < 1e-13 && (x[1] - x_true[1]).norm() < 1e-13);

        b[2] += c(1.0, 0.0);
        let x = lstsq(&a, &b, 1e-12).unwrap();
        let r: Vec<Complex64> = a.mul_vec(&x).iter().zip(&b).map(|(l, r)| r - l).collect();
        for j in 0..2 {
            let dot: Complex64 = (0..5).map(|i| a[(i, j)].conj() * r[i]).sum();
            assert!(dot.norm() < 1e-12);
        }
    }

    #[test]
    fn least_squares_rank_deficient() {
        let a = ComplexMatrix::from_fn(4, 2, |i, _| c(i as f64 + 1.0, 0.0));
        assert!(matches!(
            lstsq(&a, &[c(1.0, 0.0); 4], 1e-12),
            Err(LinalgError::Singular { .. })
        ));
    }
}
