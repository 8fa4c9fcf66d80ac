//! Dense exact linear algebra over the rationals.
//!
//! Solving and kernels use rational Gauss-Jordan elimination; [`rank`] uses
//! fraction-free (Bareiss) elimination on an integer copy of the matrix, so
//! the two routes can cross-check each other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{bit_size, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// How elimination chooses a pivot among the nonzero candidates of a column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Entry with the fewest numerator plus denominator bits.
    #[default]
    SmallestBitSize,
    /// Topmost nonzero entry.
    FirstNonzero,
}

/// `A x = b` has no unique solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Singular {
    pub rank: usize,
    /// Nonzero `w` with `A w = 0`.
    pub witness: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must be rows * cols"
        );
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| crate::rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Copy with column `c` removed.
    pub fn without_column(&self, c: usize) -> Self {
        let entries = (0..self.rows)
            .flat_map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(move |(j, _)| *j != c)
                    .map(|(_, v)| v.clone())
            })
            .collect();
        Self::new(self.rows, self.cols - 1, entries)
    }

    /// Copy with `extra` appended as a final column.
    pub fn with_column(&self, extra: &[Rational]) -> Self {
        assert_eq!(extra.len(), self.rows);
        let entries = (0..self.rows)
            .flat_map(|r| {
                self.row(r)
                    .iter()
                    .cloned()
                    .chain(std::iter::once(extra[r].clone()))
            })
            .collect();
        Self::new(self.rows, self.cols + 1, entries)
    }

    /// Copy with `extra` appended as a final row.
    pub fn with_row(&self, extra: &[Rational]) -> Self {
        assert_eq!(extra.len(), self.cols);
        let mut entries = self.entries.clone();
        entries.extend(extra.iter().cloned());
        Self::new(self.rows + 1, self.cols, entries)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

fn choose_pivot<'a>(
    candidates: impl Iterator<Item = (usize, &'a Rational)>,
    rule: PivotRule,
) -> Option<usize> {
    let mut nonzero = candidates.filter(|(_, v)| !v.is_zero());
    match rule {
        PivotRule::FirstNonzero => nonzero.next().map(|(i, _)| i),
        PivotRule::SmallestBitSize => nonzero.min_by_key(|(_, v)| bit_size(v)).map(|(i, _)| i),
    }
}

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
fn rref(m: &mut [Vec<Rational>], cols: usize, rule: PivotRule) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = choose_pivot((r..m.len()).map(|i| (i, &m[i][c])), rule) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r][c..].iter_mut() {
            *v *= &inv;
        }
        let (pivot_row, pivot_rest) = {
            let (head, tail) = m.split_at_mut(r);
            let (pr, after) = tail.split_first_mut().unwrap();
            (pr, head.iter_mut().chain(after.iter_mut()))
        };
        for row in pivot_rest {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (dst, src) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(m: &[Vec<Rational>], cols: usize, pivots: &[usize]) -> Vec<Vec<Rational>> {
    let free = (0..cols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][f].clone();
        }
        v
    })
    .collect()
}

/// Exact solution of a square system, choosing pivots by bit size.
pub fn solve_square(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>, Singular> {
    solve_square_with(a, b, PivotRule::default())
}

pub fn solve_square_with(
    a: &RatMatrix,
    b: &[Rational],
    rule: PivotRule,
) -> Result<Vec<Rational>, Singular> {
    assert_eq!(a.rows, a.cols, "solve_square needs a square matrix");
    assert_eq!(b.len(), a.rows, "right-hand side length must match");
    let n = a.rows;
    let mut m = a.with_column(b).to_rows();
    let pivots = rref(&mut m, n, rule);
    if pivots.len() < n {
        let witness = kernel_from_rref(&m, n, &pivots)
            .into_iter()
            .next()
            .expect("rank deficiency implies a kernel vector");
        return Err(Singular {
            rank: pivots.len(),
            witness,
        });
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Basis of `ker A`; empty iff `A` has full column rank.
pub fn nullspace(a: &RatMatrix) -> Vec<Vec<Rational>> {
    nullspace_with(a, PivotRule::default())
}

pub fn nullspace_with(a: &RatMatrix, rule: PivotRule) -> Vec<Vec<Rational>> {
    let mut m = a.to_rows();
    let pivots = rref(&mut m, a.cols, rule);
    kernel_from_rref(&m, a.cols, &pivots)
}

/// Rank by fraction-free elimination: each row is scaled to integers, then
/// Bareiss steps keep every intermediate entry an integer minor.
pub fn rank(a: &RatMatrix) -> usize {
    let mut m: Vec<Vec<BigInt>> = (0..a.rows)
        .map(|r| {
            let row = a.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..a.cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].bits())
        else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..a.cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let x = solve_square(&RatMatrix::identity(3), &ints(&[1, 2, 3])).unwrap();
        assert_eq!(x, ints(&[1, 2, 3]));
    }

    #[test]
    fn solve_upper_triangular() {
        let a = RatMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(solve_square(&a, &ints(&[1, 1])).unwrap(), ints(&[0, 1]));
    }

    #[test]
    fn singular_carries_rank_and_witness() {
        let a = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        let err = solve_square(&a, &ints(&[1, 1])).unwrap_err();
        assert_eq!(err.rank, 1);
        assert_eq!(err.witness, ints(&[-1, 1]));
        assert!(a.mul_vec(&err.witness).iter().all(Zero::is_zero));
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&RatMatrix::identity(2)).is_empty());
        let k = nullspace(&RatMatrix::from_ints(&[&[1, 1]]));
        assert_eq!(k, vec![ints(&[-1, 1])]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(4)), 4);
        assert_eq!(rank(&RatMatrix::zeros(3, 5)), 0);
        assert_eq!(rank(&RatMatrix::from_ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(
            rank(&RatMatrix::from_ints(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])),
            2
        );
    }

    #[test]
    fn rank_with_fractions() {
        let a = RatMatrix::from_rows(vec![
            vec![crate::rational::frac(1, 2), crate::rational::frac(1, 3)],
            vec![int(3), int(2)],
        ]);
        assert_eq!(rank(&a), 1);
    }
}
