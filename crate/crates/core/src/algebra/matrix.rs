//! Dense matrices over the rationals and rational span membership.

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(rows, cols.len())?;
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = self.get(row, col).recip();
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = self.get(r, j) - &factor * self.get(row, j);
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Decides whether `target` is a rational combination of `generators`.
///
/// Returns the coefficients of one such combination, or `None` when the
/// target lies outside the span. All vectors must have the target's length.
pub fn in_rational_span(target: &[Rational], generators: &[Vec<Rational>]) -> Result<Option<Vec<Rational>>> {
    for g in generators {
        if g.len() != target.len() {
            return Err(Error::DimensionMismatch {
                expected: target.len(),
                found: g.len(),
            });
        }
    }
    if target.iter().all(Zero::is_zero) {
        return Ok(Some(vec![Rational::zero(); generators.len()]));
    }
    if generators.is_empty() {
        return Ok(None);
    }
    // augmented system [G | target]
    let mut cols: Vec<Vec<Rational>> = generators.to_vec();
    cols.push(target.to_vec());
    let mut m = RatMatrix::from_columns(&cols)?;
    let pivots = m.rref();
    let aug = generators.len();
    if pivots.contains(&aug) {
        return Ok(None);
    }
    let mut coeffs = vec![Rational::zero(); aug];
    for (row, &col) in pivots.iter().enumerate() {
        coeffs[col] = m.get(row, aug).clone();
    }
    debug_assert!(combination_equals(&coeffs, generators, target));
    Ok(Some(coeffs))
}

fn combination_equals(coeffs: &[Rational], generators: &[Vec<Rational>], target: &[Rational]) -> bool {
    (0..target.len()).all(|i| {
        let s = coeffs
            .iter()
            .zip(generators)
            .fold(Rational::zero(), |acc, (c, g)| acc + c * &g[i]);
        s == target[i]
    })
}

/// The unit vector `(1, 0, ..., 0)` of length `n`.
pub fn unit_first(n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    if let Some(first) = v.first_mut() {
        *first = Rational::one();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn golden_independence() {
        let target = vec![int(1), int(0)];
        let gens = vec![vec![rat(4, 5), rat(-1, 5)]];
        assert_eq!(in_rational_span(&target, &gens).unwrap(), None);
    }

    #[test]
    fn one_dimensional_membership() {
        let target = vec![int(1)];
        let gens = vec![vec![rat(1, 2)]];
        assert_eq!(in_rational_span(&target, &gens).unwrap(), Some(vec![int(2)]));
    }

    #[test]
    fn zero_target_is_always_in_span() {
        let target = vec![int(0), int(0), int(0)];
        let gens = vec![vec![int(1), int(2), int(3)], vec![int(0), int(1), int(0)]];
        assert_eq!(in_rational_span(&target, &gens).unwrap(), Some(vec![int(0), int(0)]));
        assert_eq!(in_rational_span(&target, &[]).unwrap(), Some(vec![]));
    }

    #[test]
    fn dimension_mismatch() {
        let err = in_rational_span(&[int(1)], &[vec![int(1), int(2)]]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, found: 2 });
        assert_eq!(RatMatrix::zeros(0, 3), Err(Error::EmptyMatrix));
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = RatMatrix::from_rows(&[vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(1)]]).unwrap();
        assert_eq!(m.rank(), 2);
    }
}
