//! Type I Hermite-Pade polynomials at infinity.
//!
//! For the multi-index `n_k = (n-1, ..., n, ..., n-1)` (with `n` in slot `k`)
//! we look for `Q_0, ..., Q_m`, `deg Q_j <= n-1` for `j != k` and
//! `deg Q_k <= n`, such that
//!
//! ```text
//! sum_{j != k} z Q_j f_j  +  Q_k f_k  =  O(z^-mn),   z -> oo,
//! ```
//!
//! normalized by `Q_k(0) = 1`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result, SystemId};
use crate::linalg::{solve_square, RatMatrix};
use crate::normality::Verdict;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::{LaurentSeries, Order};
use crate::system::{HpSystem, Layout};
use crate::tuple::SeriesTuple;
use crate::verify::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiIndexType1 {
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

impl MultiIndexType1 {
    pub fn new(n: usize, k: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 || k > m {
            return Err(Error::InvalidArgument(format!(
                "type I index needs n >= 1, m >= 1, 0 <= k <= m; got n = {n}, k = {k}, m = {m}"
            )));
        }
        Ok(MultiIndexType1 { n, k, m })
    }

    /// Degree bounds `(n-1, ..., n, ..., n-1)`.
    pub fn degree_bounds(&self) -> Vec<usize> {
        (0..=self.m)
            .map(|j| if j == self.k { self.n } else { self.n - 1 })
            .collect()
    }

    /// Power of `z` multiplying `Q_j`.
    pub fn weight(&self, j: usize) -> usize {
        usize::from(j != self.k)
    }

    /// Required vanishing order `mn` of the residual.
    pub fn order(&self) -> usize {
        self.m * self.n
    }

    /// Number of equations (and of free unknowns), `mn + n`.
    pub fn size(&self) -> usize {
        self.m * self.n + self.n
    }

    /// Coefficients `c_0 .. c_(mn+n-1)` of every series are needed.
    pub fn required_coeffs(&self) -> usize {
        self.size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type1Solution {
    pub index: MultiIndexType1,
    /// Fingerprint of the tuple the solution was computed for.
    pub fingerprint: String,
    pub q: Vec<Polynomial>,
    pub residual: LaurentSeries,
    pub residual_order: Order,
}

fn check_index(f: &SeriesTuple, idx: &MultiIndexType1) -> Result<()> {
    if f.m() != idx.m {
        return Err(Error::InvalidArgument(format!(
            "index is for m = {}, tuple has m = {}",
            idx.m,
            f.m()
        )));
    }
    f.require(idx.required_coeffs())
}

/// Unnormalized system: one row per power `z^p`, `p = n, n-1, ..., -mn+1`.
pub fn type1_system(f: &SeriesTuple, idx: &MultiIndexType1) -> Result<HpSystem> {
    check_index(f, idx)?;
    let layout = Layout::new(idx.degree_bounds(), idx.k);
    let rows = idx.size();
    let mut a = RatMatrix::zeros(rows, layout.unknowns());
    let n = idx.n as i64;
    for r in 0..rows {
        let p = n - r as i64;
        for j in 0..=idx.m {
            let e = idx.weight(j) as i64;
            for i in 0..=layout.bounds()[j] {
                // coefficient of z^p in z^e z^i f_j is c_(e + i - p)
                let l = e + i as i64 - p;
                if l >= 0 {
                    a.set(r, layout.column(j, i), f.c(j, l as usize));
                }
            }
        }
    }
    Ok(HpSystem {
        layout,
        unnormalized: a,
    })
}

/// Square system `A x = b` with `Q_k(0)` pinned to 1.
pub fn build_type1_system(
    f: &SeriesTuple,
    idx: &MultiIndexType1,
) -> Result<(RatMatrix, Vec<Rational>)> {
    Ok(type1_system(f, idx)?.pinned())
}

/// `sum_{j != k} z Q_j f_j + Q_k f_k`, computed by series arithmetic.
pub fn type1_residual(f: &SeriesTuple, idx: &MultiIndexType1, q: &[Polynomial]) -> LaurentSeries {
    q.iter()
        .enumerate()
        .map(|(j, qj)| LaurentSeries::poly_shift_mul(qj, idx.weight(j), f.get(j)))
        .reduce(|acc, t| acc.add(&t))
        .expect("at least one polynomial")
}

pub fn solve_type1(f: &SeriesTuple, idx: &MultiIndexType1) -> Result<Type1Solution> {
    let system = type1_system(f, idx)?;
    let (a, b) = system.pinned();
    let not_normal = |verdict| Error::NotNormal {
        system: SystemId::Type1 { k: idx.k },
        n: idx.n,
        verdict: Box::new(verdict),
    };
    let x = solve_square(&a, &b).map_err(|s| {
        let witness = system
            .layout
            .split(&system.layout.expand(&s.witness, Rational::zero()));
        not_normal(Verdict::Singular {
            rank: s.rank,
            size: a.rows(),
            witness,
        })
    })?;
    let q = system
        .layout
        .split(&system.layout.expand(&x, Rational::one()));
    if q[idx.k].degree() != Some(idx.n) {
        return Err(not_normal(Verdict::DegreeDrop { polynomial: idx.k }));
    }
    let residual = type1_residual(f, idx, &q);
    let residual_order = residual.residual_order();
    if !residual_order.reaches(idx.order() as i64) {
        return Err(not_normal(Verdict::OrderShortfall {
            pair: None,
            achieved: residual_order,
        }));
    }
    debug_assert!(q[idx.k].coeff(0).is_one());
    Ok(Type1Solution {
        index: *idx,
        fingerprint: f.fingerprint().to_owned(),
        q,
        residual,
        residual_order,
    })
}

/// Rechecks every contract of `sol` from scratch with series arithmetic.
pub fn verify_type1(f: &SeriesTuple, sol: &Type1Solution) -> VerificationReport {
    let idx = &sol.index;
    let mut report = VerificationReport::default();
    report.push(
        "tuple",
        sol.fingerprint == f.fingerprint() && f.m() == idx.m,
        format!("solution fingerprint {}", sol.fingerprint),
    );
    if sol.q.len() != idx.m + 1 {
        report.push(
            "degree-bound",
            false,
            format!("{} polynomials, expected {}", sol.q.len(), idx.m + 1),
        );
        return report;
    }
    let bounds = idx.degree_bounds();
    let over: Vec<usize> = (0..=idx.m)
        .filter(|&j| sol.q[j].degree().is_some_and(|d| d > bounds[j]))
        .collect();
    report.push(
        "degree-bound",
        over.is_empty(),
        format!("polynomials over their bound: {over:?}"),
    );
    let qk = &sol.q[idx.k];
    report.push(
        "degree-attainment",
        qk.degree() == Some(idx.n),
        format!("deg Q_{} = {:?}, expected {}", idx.k, qk.degree(), idx.n),
    );
    let q0 = qk.coeff(0);
    report.push(
        "normalization",
        q0.is_one(),
        format!("Q_{}(0) = {q0}", idx.k),
    );
    if f.require(idx.required_coeffs()).is_err() || f.m() != idx.m {
        report.push("residual-order", false, "tuple window too short to recheck");
        return report;
    }
    let order = type1_residual(f, idx, &sol.q).residual_order();
    report.push(
        "residual-order",
        order.reaches(idx.order() as i64),
        format!("order {order}, required {}", idx.order()),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn tuple(rows: &[&[i64]]) -> SeriesTuple {
        SeriesTuple::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| int(c)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn worked() -> SeriesTuple {
        tuple(&[&[1, 0], &[1, 1]])
    }

    #[test]
    fn system_for_k0() {
        let idx = MultiIndexType1::new(1, 0, 1).unwrap();
        let (a, b) = build_type1_system(&worked(), &idx).unwrap();
        // unknowns (q1 of Q0, q0 of Q1): q1 + q0 = 0, q0 = -1
        assert_eq!(a, RatMatrix::from_ints(&[&[1, 1], &[0, 1]]));
        assert_eq!(b, vec![int(0), int(-1)]);
    }

    #[test]
    fn system_for_k1() {
        let idx = MultiIndexType1::new(1, 1, 1).unwrap();
        let (a, b) = build_type1_system(&worked(), &idx).unwrap();
        // unknowns (c0 of Q0, d1 of Q1): c0 + d1 = 0, d1 = -1
        assert_eq!(a, RatMatrix::from_ints(&[&[1, 1], &[0, 1]]));
        assert_eq!(b, vec![int(0), int(-1)]);
    }

    #[test]
    fn short_window_is_rejected() {
        let t = tuple(&[&[1, 0], &[1, 1]]);
        let idx = MultiIndexType1::new(2, 0, 1).unwrap();
        assert!(matches!(
            build_type1_system(&t, &idx),
            Err(Error::InsufficientTruncation {
                required: 4,
                available: 2,
                ..
            })
        ));
    }

    #[test]
    fn solves_worked_example() {
        let t = worked();
        let s0 = solve_type1(&t, &MultiIndexType1::new(1, 0, 1).unwrap()).unwrap();
        assert_eq!(
            s0.q,
            vec![Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[-1])]
        );
        assert!(s0.residual_order.reaches(1));
        let s1 = solve_type1(&t, &MultiIndexType1::new(1, 1, 1).unwrap()).unwrap();
        assert_eq!(
            s1.q,
            vec![Polynomial::from_ints(&[1]), Polynomial::from_ints(&[1, -1])]
        );
    }

    #[test]
    fn residual_is_exactly_one_over_z_with_exact_tail() {
        // f_0 = 1 and f_1 = 1 + 1/z known exactly through z^-2.
        let t = tuple(&[&[1, 0, 0], &[1, 1, 0]]);
        let idx = MultiIndexType1::new(1, 1, 1).unwrap();
        let r = type1_residual(
            &t,
            &idx,
            &[Polynomial::from_ints(&[1]), Polynomial::from_ints(&[1, -1])],
        );
        assert_eq!(r, LaurentSeries::from_coeffs(-1, vec![int(1)]));
        assert_eq!(r.residual_order(), Order::Exact(1));
    }

    #[test]
    fn geometric_series_is_not_normal_at_n2() {
        let t = tuple(&[&[1, 0, 0, 0], &[1, 1, 1, 1]]);
        let err = solve_type1(&t, &MultiIndexType1::new(2, 0, 1).unwrap()).unwrap_err();
        let Error::NotNormal { verdict, .. } = err else {
            panic!("expected NotNormal, got {err:?}");
        };
        let Verdict::Singular {
            rank,
            size,
            witness,
        } = *verdict
        else {
            panic!("expected a singular verdict");
        };
        assert_eq!((rank, size), (3, 4));
        assert!(witness[0].coeff(0).is_zero());
        assert!(witness.iter().any(|w| !w.is_zero()));
    }

    #[test]
    fn verify_passes_and_reports_exact_order() {
        let t = SeriesTuple::new(vec![
            vec![int(1), int(0), int(0)],
            vec![int(1), int(1), frac(1, 2)],
        ])
        .unwrap();
        let sol = solve_type1(&t, &MultiIndexType1::new(1, 0, 1).unwrap()).unwrap();
        assert_eq!(
            sol.q,
            vec![Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[-1])]
        );
        assert_eq!(
            sol.residual,
            LaurentSeries::from_coeffs(-1, vec![frac(-1, 2)])
        );
        assert_eq!(sol.residual_order, Order::Exact(1));
        assert!(verify_type1(&t, &sol).passed());
    }

    #[test]
    fn verify_catches_tampering() {
        let t = worked();
        let sol = solve_type1(&t, &MultiIndexType1::new(1, 0, 1).unwrap()).unwrap();

        let mut bad = sol.clone();
        bad.q[0] = Polynomial::from_ints(&[2, 1]);
        let r = verify_type1(&t, &bad);
        assert!(!r.passed());
        assert!(r.failed().contains(&"normalization"));

        let mut bad = sol.clone();
        bad.q[1] = Polynomial::from_ints(&[-1, 1]);
        let r = verify_type1(&t, &bad);
        assert!(r.failed().contains(&"degree-bound"));

        let other = tuple(&[&[1, 0], &[1, 2]]);
        assert!(verify_type1(&other, &sol).failed().contains(&"tuple"));
    }

    #[test]
    fn rejects_bad_index() {
        assert!(MultiIndexType1::new(0, 0, 1).is_err());
        assert!(MultiIndexType1::new(1, 2, 1).is_err());
    }
}
