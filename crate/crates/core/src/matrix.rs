//! Small dense integer matrices: fraction-free determinant and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, data }
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

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    /// Bareiss elimination; every intermediate division is exact.
    pub fn determinant(&self) -> Result<BigInt> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_dst -= k * row_src
    fn sub_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] -= v;
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] -= v;
        }
    }

    /// Diagonal of the Smith normal form, non-negative, each dividing the next.
    /// Has `min(rows, cols)` entries; zeros come last.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        let mut a = self.clone();
        let n = a.rows.min(a.cols);
        let mut out = Vec::with_capacity(n);
        for t in 0..n {
            loop {
                // smallest nonzero entry of the remaining block becomes the pivot
                let pivot = (t..a.rows)
                    .flat_map(|i| (t..a.cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a[(i, j)].is_zero())
                    .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
                let Some((pi, pj)) = pivot else {
                    out.resize(n, BigInt::zero());
                    return out;
                };
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);

                let mut clean = true;
                for i in t + 1..a.rows {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.sub_row(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
                for j in t + 1..a.cols {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.sub_col(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }
                // divisibility: fold an offending row into row t and retry
                let bad = (t + 1..a.rows).find(|&i| {
                    (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)]))
                });
                match bad {
                    Some(i) => a.sub_row(t, i, &-BigInt::one()),
                    None => break,
                }
            }
            out.push(a[(t, t)].abs());
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
