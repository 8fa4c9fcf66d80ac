//! Linearized Hermite-Pade systems shared by the type I and type II solvers.
//!
//! Unknowns are the coefficients of polynomials `0..=m`, each in ascending
//! order, concatenated by polynomial index. One of them, the constant term of
//! the normalized polynomial, is pinned to 1.

use num_traits::{One, Zero};

use crate::linalg::RatMatrix;
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    bounds: Vec<usize>,
    offsets: Vec<usize>,
    pinned: usize,
}

impl Layout {
    /// `bounds[j]` is the degree bound of polynomial `j`; the constant term of
    /// polynomial `pinned` is the normalized unknown.
    pub fn new(bounds: Vec<usize>, pinned: usize) -> Self {
        let mut offsets = Vec::with_capacity(bounds.len());
        let mut acc = 0;
        for b in &bounds {
            offsets.push(acc);
            acc += b + 1;
        }
        Layout {
            bounds,
            offsets,
            pinned,
        }
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn pinned(&self) -> usize {
        self.pinned
    }

    /// Number of coefficients, the pinned one included.
    pub fn unknowns(&self) -> usize {
        self.bounds.iter().map(|b| b + 1).sum()
    }

    /// Column of coefficient `i` of polynomial `j` in the unnormalized system.
    pub fn column(&self, j: usize, i: usize) -> usize {
        debug_assert!(i <= self.bounds[j]);
        self.offsets[j] + i
    }

    pub fn pinned_column(&self) -> usize {
        self.column(self.pinned, 0)
    }

    /// Column of the top coefficient of the pinned polynomial.
    pub fn leading_column(&self) -> usize {
        self.column(self.pinned, self.bounds[self.pinned])
    }

    /// Maps a column of the unnormalized system to the pinned (square) one.
    pub fn reduced_column(&self, full: usize) -> Option<usize> {
        let p = self.pinned_column();
        match full.cmp(&p) {
            std::cmp::Ordering::Less => Some(full),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(full - 1),
        }
    }

    /// Reinserts the pinned coefficient into a reduced solution vector.
    pub fn expand(&self, reduced: &[Rational], pinned_value: Rational) -> Vec<Rational> {
        let p = self.pinned_column();
        let mut full = Vec::with_capacity(reduced.len() + 1);
        full.extend_from_slice(&reduced[..p]);
        full.push(pinned_value);
        full.extend_from_slice(&reduced[p..]);
        full
    }

    /// Splits a full coefficient vector into its polynomials.
    pub fn split(&self, full: &[Rational]) -> Vec<Polynomial> {
        assert_eq!(full.len(), self.unknowns());
        self.bounds
            .iter()
            .zip(&self.offsets)
            .map(|(b, o)| Polynomial::new(full[*o..=*o + *b].to_vec()))
            .collect()
    }
}

/// Homogeneous `N x (N + 1)` system plus its unknown layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpSystem {
    pub layout: Layout,
    pub unnormalized: RatMatrix,
}

impl HpSystem {
    /// Square system with the pinned coefficient moved to the right-hand side.
    pub fn pinned(&self) -> (RatMatrix, Vec<Rational>) {
        let col = self.layout.pinned_column();
        let b = self
            .unnormalized
            .column(col)
            .into_iter()
            .map(|v| -v)
            .collect();
        (self.unnormalized.without_column(col), b)
    }

    /// `[[A, b], [e_lead, 0]]` for the pinned system `A x = b`; singular
    /// exactly when the solution has a vanishing top coefficient in the pinned
    /// polynomial.
    pub fn degree_probe(&self) -> RatMatrix {
        let (a, b) = self.pinned();
        let lead = self
            .layout
            .reduced_column(self.layout.leading_column())
            .expect("the leading column is never the pinned constant term");
        let mut row = vec![Rational::zero(); a.cols() + 1];
        row[lead] = Rational::one();
        a.with_column(&b).with_row(&row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn columns_and_expansion() {
        let l = Layout::new(vec![1, 0, 2], 2);
        assert_eq!(l.unknowns(), 6);
        assert_eq!(l.column(2, 0), 3);
        assert_eq!(l.pinned_column(), 3);
        assert_eq!(l.leading_column(), 5);
        assert_eq!(l.reduced_column(5), Some(4));
        assert_eq!(l.reduced_column(3), None);
        let full = l.expand(&[int(1), int(2), int(3), int(4), int(5)], int(9));
        assert_eq!(
            l.split(&full),
            vec![
                Polynomial::from_ints(&[1, 2]),
                Polynomial::from_ints(&[3]),
                Polynomial::from_ints(&[9, 4, 5]),
            ]
        );
    }
}
