//! Type II Hermite-Pade polynomials at infinity.
//!
//! For `d_s = (mn-1, ..., mn, ..., mn-1)` (with `mn` in slot `s`) we look for
//! `P_0, ..., P_m`, `deg P_j <= mn-1` for `j != s` and `deg P_s <= mn`, with
//!
//! ```text
//! z f_s P_j - f_j P_s = O(z^-n)   for every j != s,
//! ```
//!
//! all `m` conditions solved jointly and normalized by `P_s(0) = 1`.

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
pub struct MultiIndexType2 {
    pub n: usize,
    pub s: usize,
    pub m: usize,
}

impl MultiIndexType2 {
    pub fn new(n: usize, s: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 || s > m {
            return Err(Error::InvalidArgument(format!(
                "type II index needs n >= 1, m >= 1, 0 <= s <= m; got n = {n}, s = {s}, m = {m}"
            )));
        }
        Ok(MultiIndexType2 { n, s, m })
    }

    pub fn mn(&self) -> usize {
        self.m * self.n
    }

    /// Degree bounds `(mn-1, ..., mn, ..., mn-1)`.
    pub fn degree_bounds(&self) -> Vec<usize> {
        (0..=self.m)
            .map(|j| {
                if j == self.s {
                    self.mn()
                } else {
                    self.mn() - 1
                }
            })
            .collect()
    }

    /// The `m` partner indices `j != s`, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.m).filter(move |&j| j != self.s)
    }

    /// Equations per pair, `mn + n`.
    pub fn block(&self) -> usize {
        self.mn() + self.n
    }

    pub fn size(&self) -> usize {
        self.m * self.block()
    }

    pub fn required_coeffs(&self) -> usize {
        self.mn() + self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairResidual {
    /// Partner index `j != s`.
    pub j: usize,
    pub series: LaurentSeries,
    pub order: Order,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type2Solution {
    pub index: MultiIndexType2,
    pub fingerprint: String,
    pub p: Vec<Polynomial>,
    pub residuals: Vec<PairResidual>,
}

/// Unnormalized system: for each `j != s` (ascending) one row per power
/// `z^p`, `p = mn, mn-1, ..., -n+1`.
pub fn type2_system(f: &SeriesTuple, idx: &MultiIndexType2) -> Result<HpSystem> {
    if f.m() != idx.m {
        return Err(Error::InvalidArgument(format!(
            "index is for m = {}, tuple has m = {}",
            idx.m,
            f.m()
        )));
    }
    f.require(idx.required_coeffs())?;
    let layout = Layout::new(idx.degree_bounds(), idx.s);
    let mut a = RatMatrix::zeros(idx.size(), layout.unknowns());
    let s = idx.s;
    let top = idx.mn() as i64;
    for (block, j) in idx.pairs().enumerate() {
        for t in 0..idx.block() {
            let row = block * idx.block() + t;
            let p = top - t as i64;
            // z f_s P_j: coefficient c_(s, 1 + i - p)
            for i in 0..=layout.bounds()[j] {
                let l = 1 + i as i64 - p;
                if l >= 0 {
                    a.set(row, layout.column(j, i), f.c(s, l as usize));
                }
            }
            // -f_j P_s: coefficient -c_(j, i - p)
            for i in 0..=layout.bounds()[s] {
                let l = i as i64 - p;
                if l >= 0 {
                    a.set(row, layout.column(s, i), -f.c(j, l as usize));
                }
            }
        }
    }
    Ok(HpSystem {
        layout,
        unnormalized: a,
    })
}

/// Square system `A x = b` with `P_s(0)` pinned to 1.
pub fn build_type2_system(
    f: &SeriesTuple,
    idx: &MultiIndexType2,
) -> Result<(RatMatrix, Vec<Rational>)> {
    Ok(type2_system(f, idx)?.pinned())
}

/// `z f_s P_j - f_j P_s` for every `j != s`, by series arithmetic.
pub fn type2_residuals(
    f: &SeriesTuple,
    idx: &MultiIndexType2,
    p: &[Polynomial],
) -> Vec<PairResidual> {
    let s = idx.s;
    idx.pairs()
        .map(|j| {
            let lhs = LaurentSeries::poly_shift_mul(&p[j], 1, f.get(s));
            let rhs = LaurentSeries::poly_shift_mul(&p[s], 0, f.get(j));
            let series = lhs.sub(&rhs);
            let order = series.residual_order();
            PairResidual { j, series, order }
        })
        .collect()
}

pub fn solve_type2(f: &SeriesTuple, idx: &MultiIndexType2) -> Result<Type2Solution> {
    let system = type2_system(f, idx)?;
    let (a, b) = system.pinned();
    let not_normal = |verdict| Error::NotNormal {
        system: SystemId::Type2 { s: idx.s },
        n: idx.n,
        verdict: Box::new(verdict),
    };
    let x = solve_square(&a, &b).map_err(|e| {
        let witness = system
            .layout
            .split(&system.layout.expand(&e.witness, Rational::zero()));
        not_normal(Verdict::Singular {
            rank: e.rank,
            size: a.rows(),
            witness,
        })
    })?;
    let p = system
        .layout
        .split(&system.layout.expand(&x, Rational::one()));
    if p[idx.s].degree() != Some(idx.mn()) {
        return Err(not_normal(Verdict::DegreeDrop { polynomial: idx.s }));
    }
    let residuals = type2_residuals(f, idx, &p);
    if let Some(bad) = residuals.iter().find(|r| !r.order.reaches(idx.n as i64)) {
        return Err(not_normal(Verdict::OrderShortfall {
            pair: Some(bad.j),
            achieved: bad.order,
        }));
    }
    Ok(Type2Solution {
        index: *idx,
        fingerprint: f.fingerprint().to_owned(),
        p,
        residuals,
    })
}

pub fn verify_type2(f: &SeriesTuple, sol: &Type2Solution) -> VerificationReport {
    let idx = &sol.index;
    let mut report = VerificationReport::default();
    report.push(
        "tuple",
        sol.fingerprint == f.fingerprint() && f.m() == idx.m,
        format!("solution fingerprint {}", sol.fingerprint),
    );
    if sol.p.len() != idx.m + 1 {
        report.push(
            "degree-bound",
            false,
            format!("{} polynomials, expected {}", sol.p.len(), idx.m + 1),
        );
        return report;
    }
    let bounds = idx.degree_bounds();
    let over: Vec<usize> = (0..=idx.m)
        .filter(|&j| sol.p[j].degree().is_some_and(|d| d > bounds[j]))
        .collect();
    report.push(
        "degree-bound",
        over.is_empty(),
        format!("polynomials over their bound: {over:?}"),
    );
    let ps = &sol.p[idx.s];
    report.push(
        "degree-attainment",
        ps.degree() == Some(idx.mn()),
        format!("deg P_{} = {:?}, expected {}", idx.s, ps.degree(), idx.mn()),
    );
    let p0 = ps.coeff(0);
    report.push(
        "normalization",
        p0.is_one(),
        format!("P_{}(0) = {p0}", idx.s),
    );
    if f.require(idx.required_coeffs()).is_err() || f.m() != idx.m {
        report.push("residual-order", false, "tuple window too short to recheck");
        return report;
    }
    let residuals = type2_residuals(f, idx, &sol.p);
    let short: Vec<(usize, Order)> = residuals
        .iter()
        .filter(|r| !r.order.reaches(idx.n as i64))
        .map(|r| (r.j, r.order))
        .collect();
    let orders: Vec<String> = residuals
        .iter()
        .map(|r| format!("j={}: {}", r.j, r.order))
        .collect();
    report.push(
        "residual-order",
        short.is_empty(),
        format!("orders [{}], required {}", orders.join(", "), idx.n),
    );
    report
}

impl Type2Solution {
    /// Whether every pairwise residual is certified `O(z^-n)`.
    pub fn all_orders_reached(&self) -> bool {
        self.residuals
            .iter()
            .all(|r| r.order.reaches(self.index.n as i64))
    }

    /// Smallest certified order over the pairs.
    pub fn min_order(&self) -> Option<Order> {
        self.residuals
            .iter()
            .map(|r| r.order)
            .min_by_key(|o| o.value())
    }
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

    fn worked() -> SeriesTuple {
        tuple(&[&[1, 0], &[1, 1]])
    }

    #[test]
    fn system_for_s0() {
        let (a, b) =
            build_type2_system(&worked(), &MultiIndexType2::new(1, 0, 1).unwrap()).unwrap();
        // unknowns (p1 of P0, b0 of P1): b0 - p1 = 0, -p1 = 1
        assert_eq!(a, RatMatrix::from_ints(&[&[-1, 1], &[-1, 0]]));
        assert_eq!(b, vec![int(0), int(1)]);
    }

    #[test]
    fn system_for_s1() {
        let (a, b) =
            build_type2_system(&worked(), &MultiIndexType2::new(1, 1, 1).unwrap()).unwrap();
        // unknowns (e0 of P0, g1 of P1): e0 - g1 = 0, e0 - 1 = 0
        assert_eq!(a, RatMatrix::from_ints(&[&[1, -1], &[1, 0]]));
        assert_eq!(b, vec![int(0), int(1)]);
    }

    #[test]
    fn short_window_is_rejected() {
        let t = worked();
        assert!(matches!(
            build_type2_system(&t, &MultiIndexType2::new(2, 0, 1).unwrap()),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn solves_worked_example() {
        let t = worked();
        let s0 = solve_type2(&t, &MultiIndexType2::new(1, 0, 1).unwrap()).unwrap();
        assert_eq!(
            s0.p,
            vec![
                Polynomial::from_ints(&[1, -1]),
                Polynomial::from_ints(&[-1])
            ]
        );
        let s1 = solve_type2(&t, &MultiIndexType2::new(1, 1, 1).unwrap()).unwrap();
        assert_eq!(
            s1.p,
            vec![Polynomial::from_ints(&[1]), Polynomial::from_ints(&[1, 1])]
        );
        assert!(s0.all_orders_reached() && s1.all_orders_reached());
    }

    #[test]
    fn residual_with_exact_tail() {
        // z * 1 * (-1) - (1 + 1/z)(1 - z) = -1/z
        let t = tuple(&[&[1, 0, 0], &[1, 1, 0]]);
        let idx = MultiIndexType2::new(1, 0, 1).unwrap();
        let r = type2_residuals(
            &t,
            &idx,
            &[
                Polynomial::from_ints(&[1, -1]),
                Polynomial::from_ints(&[-1]),
            ],
        );
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].series, LaurentSeries::from_coeffs(-1, vec![int(-1)]));
        assert_eq!(r[0].order, Order::Exact(1));
    }

    #[test]
    fn geometric_series_is_not_normal_at_n2() {
        let t = tuple(&[&[1, 0, 0, 0], &[1, 1, 1, 1]]);
        let err = solve_type2(&t, &MultiIndexType2::new(2, 0, 1).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotNormal { .. }), "{err:?}");
    }

    #[test]
    fn verify_catches_tampering() {
        let t = worked();
        let sol = solve_type2(&t, &MultiIndexType2::new(1, 0, 1).unwrap()).unwrap();
        assert!(verify_type2(&t, &sol).passed());

        let mut bad = sol.clone();
        bad.p[0] = Polynomial::from_ints(&[0, -1]);
        assert!(verify_type2(&t, &bad).failed().contains(&"normalization"));

        let mut bad = sol.clone();
        bad.p[1] = Polynomial::from_ints(&[-1, 1]);
        assert!(verify_type2(&t, &bad).failed().contains(&"degree-bound"));
    }

    #[test]
    fn m2_conditions_are_joint() {
        let t = tuple(&[&[1, 2, -1, 3], &[2, -1, 1, 1], &[1, 1, 2, -3]]);
        let idx = MultiIndexType2::new(1, 1, 2).unwrap();
        let sol = solve_type2(&t, &idx).unwrap();
        assert_eq!(
            sol.residuals.iter().map(|r| r.j).collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert!(sol.all_orders_reached());
        assert!(verify_type2(&t, &sol).passed());
    }
}
