//! Solve all `2(m+1)` systems at one `n`, assemble `M1` and `M2`, and check
//! their product.

use rayon::prelude::*;

use crate::duality::{assemble_m1, assemble_m2, check_duality, DualityReport, PolyMatrix};
use crate::error::Result;
use crate::poly::Polynomial;
use crate::tuple::SeriesTuple;
use crate::type1::{solve_type1, MultiIndexType1, Type1Solution};
use crate::type2::{solve_type2, MultiIndexType2, Type2Solution};

#[derive(Clone, Debug)]
pub struct DualityRun {
    pub n: usize,
    pub type1: Vec<Type1Solution>,
    pub type2: Vec<Type2Solution>,
    pub m1: PolyMatrix,
    pub m2: PolyMatrix,
    pub report: DualityReport,
    pub det_m1: Polynomial,
    pub det_m2: Polynomial,
}

impl DualityRun {
    pub fn holds(&self) -> bool {
        self.report.holds
    }
}

/// All type I solutions at `n`, `k = 0..=m`. Fails on the first non-normal `k`.
pub fn solve_all_type1(f: &SeriesTuple, n: usize) -> Result<Vec<Type1Solution>> {
    let m = f.m();
    (0..=m)
        .into_par_iter()
        .map(|k| solve_type1(f, &MultiIndexType1::new(n, k, m)?))
        .collect()
}

pub fn solve_all_type2(f: &SeriesTuple, n: usize) -> Result<Vec<Type2Solution>> {
    let m = f.m();
    (0..=m)
        .into_par_iter()
        .map(|s| solve_type2(f, &MultiIndexType2::new(n, s, m)?))
        .collect()
}

pub fn run_duality(f: &SeriesTuple, n: usize) -> Result<DualityRun> {
    let (type1, type2) = rayon::join(|| solve_all_type1(f, n), || solve_all_type2(f, n));
    let (type1, type2) = (type1?, type2?);
    let m1 = assemble_m1(&type1)?;
    let m2 = assemble_m2(&type2)?;
    let report = check_duality(&m1, &m2)?;
    let det_m1 = m1.det();
    let det_m2 = m2.det();
    Ok(DualityRun {
        n,
        type1,
        type2,
        m1,
        m2,
        report,
        det_m1,
        det_m2,
    })
}
