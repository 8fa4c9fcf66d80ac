//! Normality ("general position") of a tuple at the indices the duality
//! construction uses, and seeded random tuples for experiments.
//!
//! Only the `2(m+1)` systems instantiated at a given `n` are examined: type I
//! at every `n_k` and type II at every `d_s`. Nothing is claimed about other
//! multi-indices.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result, SystemId};
use crate::linalg::{nullspace, rank};
use crate::poly::Polynomial;
use crate::rational::{frac, Rational};
use crate::series::Order;
use crate::system::HpSystem;
use crate::tuple::SeriesTuple;
use crate::type1::{type1_system, MultiIndexType1};
use crate::type2::{type2_system, MultiIndexType2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Normal,
    /// The pinned system is singular. `witness` is a nonzero polynomial vector
    /// satisfying the order condition with the pinned coefficient equal to 0.
    Singular {
        rank: usize,
        size: usize,
        witness: Vec<Polynomial>,
    },
    /// The normalized polynomial misses its full degree.
    DegreeDrop {
        polynomial: usize,
    },
    /// The recomputed residual falls short of the required order. `pair` is
    /// the partner index for type II systems.
    OrderShortfall {
        pair: Option<usize>,
        achieved: Order,
    },
}

impl Verdict {
    pub fn is_normal(&self) -> bool {
        matches!(self, Verdict::Normal)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Normal => f.write_str("normal"),
            Verdict::Singular {
                rank,
                size,
                witness,
            } => {
                write!(f, "singular (rank {rank} of {size}); kernel witness (")?;
                for (j, w) in witness.iter().enumerate() {
                    if j > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str(")")
            }
            Verdict::DegreeDrop { polynomial } => {
                write!(f, "degree drop in polynomial {polynomial}")
            }
            Verdict::OrderShortfall { pair, achieved } => match pair {
                Some(j) => write!(f, "order shortfall for pair j = {j}: achieved {achieved}"),
                None => write!(f, "order shortfall: achieved {achieved}"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub n: usize,
    pub m: usize,
    /// Verdict at `n_k` for `k = 0..=m`.
    pub type1: Vec<Verdict>,
    /// Verdict at `d_s` for `s = 0..=m`.
    pub type2: Vec<Verdict>,
}

impl NormalityReport {
    /// True iff all `2(m+1)` verdicts are normal.
    pub fn general_position_at_n(&self) -> bool {
        self.type1.iter().chain(&self.type2).all(Verdict::is_normal)
    }

    pub fn failures(&self) -> Vec<(SystemId, &Verdict)> {
        let t1 = self
            .type1
            .iter()
            .enumerate()
            .map(|(k, v)| (SystemId::Type1 { k }, v));
        let t2 = self
            .type2
            .iter()
            .enumerate()
            .map(|(s, v)| (SystemId::Type2 { s }, v));
        t1.chain(t2).filter(|(_, v)| !v.is_normal()).collect()
    }
}

/// Rank-path classification of one system.
///
/// A singular pinned matrix gives a kernel witness. Otherwise the bordered
/// matrix from [`HpSystem::degree_probe`] is singular exactly when the
/// normalized solution loses its top coefficient. The linear system encodes
/// the order condition exactly, so this path never reports an order shortfall.
pub fn classify(system: &HpSystem) -> Verdict {
    let (a, _) = system.pinned();
    let size = a.rows();
    let r = rank(&a);
    if r < size {
        let w = nullspace(&a)
            .into_iter()
            .next()
            .expect("rank deficiency implies a kernel vector");
        let witness = system
            .layout
            .split(&system.layout.expand(&w, Rational::zero()));
        return Verdict::Singular {
            rank: r,
            size,
            witness,
        };
    }
    if rank(&system.degree_probe()) == size {
        return Verdict::DegreeDrop {
            polynomial: system.layout.pinned(),
        };
    }
    Verdict::Normal
}

pub fn check_general_position(f: &SeriesTuple, n: usize) -> Result<NormalityReport> {
    let m = f.m();
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    f.require(m * n + n)?;
    let ids: Vec<SystemId> = (0..=m)
        .map(|k| SystemId::Type1 { k })
        .chain((0..=m).map(|s| SystemId::Type2 { s }))
        .collect();
    let verdicts: Vec<Verdict> = ids
        .par_iter()
        .map(|id| {
            let system = match *id {
                SystemId::Type1 { k } => type1_system(f, &MultiIndexType1::new(n, k, m)?),
                SystemId::Type2 { s } => type2_system(f, &MultiIndexType2::new(n, s, m)?),
            }?;
            Ok(classify(&system))
        })
        .collect::<Result<_>>()?;
    let (type1, type2) = verdicts.split_at(m + 1);
    Ok(NormalityReport {
        n,
        m,
        type1: type1.to_vec(),
        type2: type2.to_vec(),
    })
}

/// Deterministic tuple of `m + 1` series with `num_coeffs` coefficients each.
///
/// Numerators are uniform in `[-height, height]` and denominators in
/// `[1, height]`; a zero leading coefficient is redrawn.
pub fn random_tuple(seed: u64, m: usize, num_coeffs: usize, height: u32) -> Result<SeriesTuple> {
    if m == 0 || num_coeffs == 0 || height == 0 {
        return Err(Error::InvalidArgument(format!(
            "random_tuple needs m >= 1, num_coeffs >= 1, height >= 1; got {m}, {num_coeffs}, {height}"
        )));
    }
    let h = i64::from(height);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| frac(rng.gen_range(-h..=h), rng.gen_range(1..=h));
    let coefficients = (0..=m)
        .map(|_| {
            let mut cs = Vec::with_capacity(num_coeffs);
            let mut lead = draw(&mut rng);
            while lead.is_zero() {
                lead = draw(&mut rng);
            }
            cs.push(lead);
            cs.extend((1..num_coeffs).map(|_| draw(&mut rng)));
            cs
        })
        .collect();
    SeriesTuple::new(coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn tuple(rows: &[&[i64]]) -> SeriesTuple {
        SeriesTuple::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| int(c)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn worked_tuple_is_normal() {
        let r = check_general_position(&tuple(&[&[1, 0], &[1, 1]]), 1).unwrap();
        assert!(r.general_position_at_n());
        assert_eq!(r.type1.len() + r.type2.len(), 4);
    }

    #[test]
    fn geometric_series_fails_with_witnesses() {
        let r = check_general_position(&tuple(&[&[1, 0, 0, 0], &[1, 1, 1, 1]]), 2).unwrap();
        assert!(!r.general_position_at_n());
        assert!(!r.failures().is_empty());
        assert!(r
            .failures()
            .iter()
            .any(|(_, v)| matches!(v, Verdict::Singular { .. })));
    }

    #[test]
    fn short_window() {
        assert!(matches!(
            check_general_position(&tuple(&[&[1, 0], &[1, 1]]), 2),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn random_tuple_is_deterministic() {
        let a = random_tuple(1, 1, 4, 10).unwrap();
        let b = random_tuple(1, 1, 4, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_tuple(2, 1, 4, 10).unwrap());
        for j in 0..=a.m() {
            assert!(!num_traits::Zero::is_zero(&a.c(j, 0)));
            assert_eq!(a.available(j), 4);
        }
    }
}
