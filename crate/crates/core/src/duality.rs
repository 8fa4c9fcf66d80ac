//! The two polynomial matrices built from type I and type II solutions and
//! the exact check that their product is the identity.
//!
//! Row `k` of `M1` is `u_k = (z Q_0, ..., Q_k, ..., z Q_m)` from the type I
//! solution at `n_k`. Column `s` of `M2` is `v_s = (z P_0, ..., P_s, ..., z P_m)`
//! from the type II solution at `d_s`, so entry `(k, s)` of `M1 M2` is the
//! scalar product `u_k . v_s`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::type1::Type1Solution;
use crate::type2::Type2Solution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(dim: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        PolyMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim * dim)
            .map(|i| {
                if i / dim == i % dim {
                    Polynomial::one()
                } else {
                    Polynomial::zero()
                }
            })
            .collect();
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.dim + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        &mut self.entries[r * self.dim + c]
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Polynomial::degree).max()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let d = self.dim;
        let entries = (0..d * d)
            .map(|idx| {
                let (r, c) = (idx / d, idx % d);
                (0..d).fold(Polynomial::zero(), |acc, t| {
                    &acc + &(self.get(r, t) * other.get(t, c))
                })
            })
            .collect();
        Ok(PolyMatrix::new(d, entries))
    }

    /// Determinant by fraction-free elimination over `Q[z]`; every division
    /// is exact.
    pub fn det(&self) -> Polynomial {
        let d = self.dim;
        if d == 0 {
            return Polynomial::one();
        }
        let mut m = self.rows();
        let mut prev = Polynomial::one();
        let mut negate = false;
        for k in 0..d - 1 {
            let Some(p) = (k..d)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].degree())
            else {
                return Polynomial::zero();
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .exact_div(&prev)
                        .expect("fraction-free step divides exactly");
                }
                m[i][k] = Polynomial::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[d - 1][d - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

/// Row `k` of `M1`: `z Q_j` off the diagonal slot, `Q_k` on it.
pub fn u_vector(sol: &Type1Solution) -> Vec<Polynomial> {
    weighted(&sol.q, sol.index.k)
}

/// Column `s` of `M2`: `z P_j` off the diagonal slot, `P_s` on it.
pub fn v_vector(sol: &Type2Solution) -> Vec<Polynomial> {
    weighted(&sol.p, sol.index.s)
}

fn weighted(polys: &[Polynomial], slot: usize) -> Vec<Polynomial> {
    polys
        .iter()
        .enumerate()
        .map(|(j, p)| if j == slot { p.clone() } else { p.shift(1) })
        .collect()
}

/// Each item is `(n, m, slot, fingerprint)`; slots must run `0..dim`.
fn check_family<'a>(
    items: impl Iterator<Item = (usize, usize, usize, &'a str)>,
    dim: usize,
) -> Result<()> {
    let items: Vec<_> = items.collect();
    let Some(&(n0, m0, _, fp0)) = items.first() else {
        return Err(Error::MixedInputs("no solutions given".into()));
    };
    if m0 + 1 != dim {
        return Err(Error::MixedInputs(format!(
            "{dim} solutions for a tuple with m = {m0}"
        )));
    }
    for (pos, &(n, m, slot, fp)) in items.iter().enumerate() {
        if n != n0 {
            return Err(Error::MixedInputs(format!(
                "n = {n} at position {pos}, expected {n0}"
            )));
        }
        if m != m0 || fp != fp0 {
            return Err(Error::MixedInputs(format!(
                "solution at position {pos} belongs to a different tuple"
            )));
        }
        if slot != pos {
            return Err(Error::MixedInputs(format!(
                "solution at position {pos} is for index {slot}"
            )));
        }
    }
    Ok(())
}

pub fn assemble_m1(sols: &[Type1Solution]) -> Result<PolyMatrix> {
    check_family(
        sols.iter()
            .map(|s| (s.index.n, s.index.m, s.index.k, s.fingerprint.as_str())),
        sols.len(),
    )?;
    Ok(PolyMatrix::from_rows(sols.iter().map(u_vector).collect()))
}

pub fn assemble_m2(sols: &[Type2Solution]) -> Result<PolyMatrix> {
    check_family(
        sols.iter()
            .map(|s| (s.index.n, s.index.m, s.index.s, s.fingerprint.as_str())),
        sols.len(),
    )?;
    let cols: Vec<Vec<Polynomial>> = sols.iter().map(v_vector).collect();
    let d = cols.len();
    let entries = (0..d * d).map(|i| cols[i % d][i / d].clone()).collect();
    Ok(PolyMatrix::new(d, entries))
}

/// `u_k . v_s` for all `k, s`, straight from the solution vectors.
pub fn scalar_products(
    type1: &[Type1Solution],
    type2: &[Type2Solution],
) -> Result<Vec<Vec<Polynomial>>> {
    if type1.len() != type2.len() {
        return Err(Error::DimensionMismatch {
            left: type1.len(),
            right: type2.len(),
        });
    }
    let us: Vec<_> = type1.iter().map(u_vector).collect();
    let vs: Vec<_> = type2.iter().map(v_vector).collect();
    Ok(us
        .iter()
        .map(|u| {
            vs.iter()
                .map(|v| {
                    u.iter()
                        .zip(v)
                        .fold(Polynomial::zero(), |acc, (a, b)| &acc + &(a * b))
                })
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EntryStatus {
    Ok,
    /// The entry is a polynomial of positive degree.
    NotConstant {
        degree: usize,
    },
    /// The entry is constant but not the expected 0 or 1.
    WrongConstant {
        #[serde(serialize_with = "ser_rational")]
        value: Rational,
    },
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryCheck {
    pub row: usize,
    pub col: usize,
    pub value: Polynomial,
    pub status: EntryStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub product: PolyMatrix,
    pub holds: bool,
    pub entries: Vec<EntryCheck>,
}

impl DualityReport {
    /// Positions `(row, col)` of the entries that break the identity.
    pub fn offending(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|e| e.status != EntryStatus::Ok)
            .map(|e| (e.row, e.col))
            .collect()
    }
}

fn classify_entry(row: usize, col: usize, value: Polynomial) -> EntryCheck {
    let expected = if row == col {
        Rational::one()
    } else {
        Rational::zero()
    };
    let status = match value.degree() {
        Some(d) if d > 0 => EntryStatus::NotConstant { degree: d },
        _ if value.coeff(0) != expected => EntryStatus::WrongConstant {
            value: value.coeff(0),
        },
        _ => EntryStatus::Ok,
    };
    EntryCheck {
        row,
        col,
        value,
        status,
    }
}

/// Multiplies and classifies every entry of `M1 M2` against the identity.
pub fn check_duality(m1: &PolyMatrix, m2: &PolyMatrix) -> Result<DualityReport> {
    let product = m1.mul(m2)?;
    let d = product.dim();
    let entries: Vec<EntryCheck> = (0..d * d)
        .map(|i| classify_entry(i / d, i % d, product.get(i / d, i % d).clone()))
        .collect();
    let holds = entries.iter().all(|e| e.status == EntryStatus::Ok);
    Ok(DualityReport {
        product,
        holds,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn worked_m1() -> PolyMatrix {
        PolyMatrix::from_rows(vec![
            vec![p(&[1, 1]), p(&[0, -1])],
            vec![p(&[0, 1]), p(&[1, -1])],
        ])
    }

    fn worked_m2() -> PolyMatrix {
        PolyMatrix::from_rows(vec![
            vec![p(&[1, -1]), p(&[0, 1])],
            vec![p(&[0, -1]), p(&[1, 1])],
        ])
    }

    #[test]
    fn multiplication_basics() {
        let a = worked_m1();
        assert_eq!(a.mul(&PolyMatrix::identity(2)).unwrap(), a);
        let swap = PolyMatrix::from_rows(vec![vec![p(&[0]), p(&[1])], vec![p(&[1]), p(&[0])]]);
        assert!(swap.mul(&swap).unwrap().is_identity());
        assert!(matches!(
            a.mul(&PolyMatrix::identity(3)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn worked_product_is_identity() {
        let r = check_duality(&worked_m1(), &worked_m2()).unwrap();
        assert!(r.holds);
        assert!(r.offending().is_empty());
    }

    #[test]
    fn sign_flip_is_reported() {
        let mut m2 = worked_m2();
        *m2.get_mut(0, 1) = p(&[0, -1]);
        let r = check_duality(&worked_m1(), &m2).unwrap();
        assert!(!r.holds);
        assert!(r.offending().contains(&(0, 1)));
    }

    #[test]
    fn identity_pair() {
        let i = PolyMatrix::identity(3);
        assert!(check_duality(&i, &i).unwrap().holds);
    }

    #[test]
    fn determinants() {
        assert_eq!(PolyMatrix::identity(3).det(), Polynomial::one());
        assert_eq!(worked_m1().det(), Polynomial::one());
        let zero_row = PolyMatrix::from_rows(vec![vec![p(&[1, 2]), p(&[3])], vec![p(&[]), p(&[])]]);
        assert!(zero_row.det().is_zero());
        let needs_swap = PolyMatrix::from_rows(vec![
            vec![p(&[0]), p(&[1]), p(&[0])],
            vec![p(&[1]), p(&[0]), p(&[0])],
            vec![p(&[0]), p(&[0]), p(&[0, 1])],
        ]);
        assert_eq!(needs_swap.det(), p(&[0, -1]));
    }

    #[test]
    fn orientation_matters() {
        // Reading M2 by rows instead of columns breaks the (0, 0) entry.
        let rows_m2 = PolyMatrix::from_rows(vec![
            vec![p(&[1, -1]), p(&[0, -1])],
            vec![p(&[0, 1]), p(&[1, 1])],
        ]);
        let prod = worked_m1().mul(&rows_m2).unwrap();
        assert_eq!(prod.get(0, 0), &p(&[1, 0, -2]));
    }
}
