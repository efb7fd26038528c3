//! Exact integer matrices: rank and an integral left-kernel vector.
//!
//! Generic over the integer scalar so callers can pick `i64`, `i128`, or an
//! arbitrary-precision type. Elimination runs over `Ratio<T>`, so results are
//! exact for any scalar that does not overflow on the intermediate values.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> IntMatrix<T>
where
    T: Integer + Signed + Clone,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Reduced row echelon form over the rationals and its pivot columns.
    fn rref(&self) -> (Vec<Vec<Ratio<T>>>, Vec<usize>) {
        let mut m: Vec<Vec<Ratio<T>>> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .cloned()
                    .map(Ratio::from_integer)
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            if top == self.rows {
                break;
            }
            let Some(p) = (top..self.rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(top, p);
            let lead = m[top][c].clone();
            for x in m[top].iter_mut() {
                *x = x.clone() / lead.clone();
            }
            for r in 0..self.rows {
                if r != top && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    let pivot_row = m[top].clone();
                    for (x, p) in m[r].iter_mut().zip(pivot_row) {
                        *x = x.clone() - f.clone() * p;
                    }
                }
            }
            pivots.push(c);
            top += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A primitive nonzero integer vector `x` with `x^T M = 0`, or `None`
    /// when the rows are linearly independent. The first nonzero entry is
    /// positive.
    pub fn left_kernel_vector(&self) -> Option<Vec<T>> {
        let t = self.transpose();
        let (rref, pivots) = t.rref();
        let free = (0..t.cols).find(|c| !pivots.contains(c))?;
        let mut x: Vec<Ratio<T>> = vec![Ratio::zero(); t.cols];
        x[free] = Ratio::from_integer(T::one());
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -rref[r][free].clone();
        }
        let lcm = x.iter().fold(T::one(), |acc, q| acc.lcm(q.denom()));
        let mut ints: Vec<T> = x
            .into_iter()
            .map(|q| (q * Ratio::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(T::zero(), |acc, v| acc.gcd(v));
        let first_negative = ints
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_negative());
        for v in ints.iter_mut() {
            *v = v.clone() / g.clone();
            if first_negative {
                *v = -v.clone();
            }
        }
        Some(ints)
    }
}
