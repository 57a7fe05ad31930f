//! Exact rational linear algebra: dense matrices, Gauss-Jordan inverses,
//! fraction-free rank, and kernel bases.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Dense matrix of exact rationals, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch("ragged matrix rows".into()));
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Exact inverse by Gauss-Jordan, `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let x = &a[(col, j)] * &factor;
                    a[(r, j)] = &a[(r, j)] - &x;
                    let y = &inv[(col, j)] * &factor;
                    inv[(r, j)] = &inv[(r, j)] - &y;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

/// Exact rank via fraction-free (Bareiss) elimination over the integers,
/// after clearing denominators row by row.
pub fn rational_rank(matrix: &QMatrix) -> usize {
    let (nrows, ncols) = (matrix.rows, matrix.cols);
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(nrows);
    for r in 0..nrows {
        let mut lcm = BigInt::one();
        for c in 0..ncols {
            let den = matrix[(r, c)].denom();
            lcm = num_integer::lcm(lcm, den.clone());
        }
        m.push(
            (0..ncols)
                .map(|c| {
                    let v = &matrix[(r, c)];
                    v.numer() * (&lcm / v.denom())
                })
                .collect(),
        );
    }

    let mut rank = 0usize;
    let mut prev_pivot = BigInt::one();
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            for c in col + 1..ncols {
                let val = (&m[r][c] * &pivot - &m[r][col] * &m[row][c]) / &prev_pivot;
                m[r][c] = val;
            }
            m[r][col] = BigInt::zero();
        }
        prev_pivot = pivot;
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Exact rank together with a basis of the right kernel, via reduced row
/// echelon form in rational arithmetic. The rank agrees with
/// [`rational_rank`]; the relation `rank + kernel.len() == cols` holds.
pub fn rank_and_kernel(matrix: &QMatrix) -> (usize, Vec<Vec<Rat>>) {
    let (nrows, ncols) = (matrix.rows, matrix.cols);
    let mut m = matrix.clone();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (row..nrows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, pivot_row);
        let p = m[(row, col)].clone();
        for c in col..ncols {
            m[(row, c)] = &m[(row, c)] / &p;
        }
        for r in 0..nrows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for c in col..ncols {
                let x = &m[(row, c)] * &factor;
                m[(r, c)] = &m[(r, c)] - &x;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }

    let rank = pivot_cols.len();
    let mut kernel = Vec::with_capacity(ncols - rank);
    let is_pivot = {
        let mut v = vec![false; ncols];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut vec = vec![Rat::zero(); ncols];
        vec[free] = Rat::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            vec[pc] = -m[(r, free)].clone();
        }
        kernel.push(vec);
    }
    debug_assert_eq!(rank, rational_rank(matrix));
    (rank, kernel)
}

/// Scales a rational vector to coprime integers, keeping orientation;
/// used for deterministic kernel output.
pub fn normalize_vector(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num_integer::gcd(gcd, x.clone());
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(&x / &gcd))
        .collect()
}

mod num_integer {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    pub fn gcd(a: BigInt, b: BigInt) -> BigInt {
        let (mut a, mut b) = (a.abs(), b.abs());
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(a: BigInt, b: BigInt) -> BigInt {
        if a.is_zero() || b.is_zero() {
            return BigInt::zero();
        }
        let g = gcd(a.clone(), b.clone());
        (a / g) * b
    }
}
