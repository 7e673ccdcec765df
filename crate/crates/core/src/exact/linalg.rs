//! Dense exact linear algebra: row reduction over `Q` and Hermite normal
//! form over `Z`. Pivoting always takes the lowest available index.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// Entries strictly above the diagonal vanish.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// `[a | b]`.
    pub fn hconcat(a: &QMatrix, b: &QMatrix) -> QMatrix {
        assert_eq!(a.rows, b.rows);
        let mut m = QMatrix::zeros(a.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)].clone();
            }
            for j in 0..b.cols {
                m[(i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip().unwrap();
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let d = &f * &m[(r, j)];
                        m[(i, j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Forward elimination only; no back substitution.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip().unwrap();
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let d = &f * &m[(r, j)];
                        m[(i, j)] -= d;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Solves `self * x = b`, returning one solution (free variables zero).
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<Rational>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|j| self.column(j)).collect()
    }

    pub fn column_span_contains(&self, v: &[Rational]) -> bool {
        self.solve(v).is_some()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// True when the column spans of `a` and `b` agree; otherwise a column of one
/// that is missing from the other.
pub fn compare_column_spans(a: &QMatrix, b: &QMatrix) -> Result<(), Vec<Rational>> {
    assert_eq!(a.rows(), b.rows());
    let joint = QMatrix::hconcat(a, b).rank();
    let missing_from = |x: &QMatrix, y: &QMatrix| x.column_space().into_iter().find(|v| !y.column_span_contains(v));
    if b.rank() < joint {
        return Err(missing_from(a, b).expect("rank deficit has a witness"));
    }
    if a.rank() < joint {
        return Err(missing_from(b, a).expect("rank deficit has a witness"));
    }
    Ok(())
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * m = h`, `u`
/// unimodular and `h` in echelon form with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..rows).map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for k in r + 1..rows {
            if h[k][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, k);
                u.swap(r, k);
                continue;
            }
            let a = h[r][c].clone();
            let b = h[k][c].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            combine(&mut h, r, k, &s, &t, &bg, &ag);
            combine(&mut u, r, k, &s, &t, &bg, &ag);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h[r]);
            negate_row(&mut u[r]);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                sub_multiple(&mut h, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (h, u, pivots)
}

// row_r <- s*row_r + t*row_k ; row_k <- -bg*row_r + ag*row_k
fn combine(m: &mut [Vec<BigInt>], r: usize, k: usize, s: &BigInt, t: &BigInt, bg: &BigInt, ag: &BigInt) {
    for j in 0..m[r].len() {
        let x = m[r][j].clone();
        let y = m[k][j].clone();
        m[r][j] = s * &x + t * &y;
        m[k][j] = ag * &y - bg * &x;
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row {
        *x = -&*x;
    }
}

fn sub_multiple(m: &mut [Vec<BigInt>], i: usize, r: usize, q: &BigInt) {
    for j in 0..m[i].len() {
        let d = q * &m[r][j];
        m[i][j] -= d;
    }
}

/// Finds integers `x` with `sum_i x_i * gens[i] = target`, if any exist.
pub fn integer_combination(gens: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    if gens.is_empty() {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    let (h, u, pivots) = hermite_normal_form(gens);
    let mut residual = target.to_vec();
    let mut x = vec![BigInt::zero(); gens.len()];
    for (i, &c) in pivots.iter().enumerate() {
        let (q, rem) = residual[c].div_rem(&h[i][c]);
        if !rem.is_zero() {
            return None;
        }
        if q.is_zero() {
            continue;
        }
        for j in 0..residual.len() {
            let d = &q * &h[i][j];
            residual[j] -= d;
        }
        for j in 0..x.len() {
            let d = &q * &u[i][j];
            x[j] += d;
        }
    }
    residual.iter().all(Zero::is_zero).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn z(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rref_rank_and_solve() {
        let m = QMatrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]]);
        assert_eq!(m.rank(), 2);
        let b = vec![q(5), q(10), q(1)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_rows(vec![vec![q(2), q(0)], vec![q(3), Rational::new(1, 2)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        assert!(QMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]).inverse().is_none());
    }

    #[test]
    fn hnf_is_unimodular_transform() {
        let m = z(&[&[4, 6, 2], &[2, 3, 7], &[6, 9, 9], &[0, 0, 5]]);
        let (h, u, pivots) = hermite_normal_form(&m);
        for i in 0..m.len() {
            for j in 0..3 {
                let s: BigInt = (0..m.len()).map(|k| &u[i][k] * &m[k][j]).sum();
                assert_eq!(s, h[i][j]);
            }
        }
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(h[0][0], BigInt::from(2));
    }

    #[test]
    fn integer_membership() {
        let gens = z(&[&[2, 0], &[0, 3]]);
        let x = integer_combination(&gens, &[BigInt::from(4), BigInt::from(-9)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(-3)]);
        assert!(integer_combination(&gens, &[BigInt::from(1), BigInt::from(0)]).is_none());
        // Lattice generated by 6 and 10 contains 2 but not 1.
        let gens = z(&[&[6], &[10]]);
        let x = integer_combination(&gens, &[BigInt::from(2)]).unwrap();
        assert_eq!(&x[0] * 6 + &x[1] * 10, BigInt::from(2));
        assert!(integer_combination(&gens, &[BigInt::from(1)]).is_none());
    }
}
