//! Exact type I and type II Hermite-Pade polynomials for a tuple of formal
//! power series at infinity, and the unimodular pair of polynomial matrices
//! they generate.
//!
//! Given `[f_0, ..., f_m]` in nonnegative powers of `1/z` with `f_j(oo) != 0`,
//! the type I solutions at the indices `n_k` form the rows of `M1`, the type II
//! solutions at `d_s` form the columns of `M2`, and for a tuple in general
//! position `M1(z) M2(z)` is exactly the identity. Everything is computed over
//! the rationals, so that identity is checked with zero tolerance.
//!
//! ```
//! use hpdual::{io::parse_tuple, pipeline::run_duality};
//!
//! let f = parse_tuple(r#"{"m": 1, "coefficients": [["1", "0"], ["1", "1"]]}"#).unwrap();
//! let run = run_duality(&f, 1).unwrap();
//! assert!(run.report.holds);
//! assert_eq!(run.m1.get(0, 0).to_string(), "1 + 1*z");
//! ```

pub mod cli;
pub mod duality;
pub mod error;
pub mod io;
pub mod linalg;
pub mod normality;
pub mod pipeline;
pub mod poly;
pub mod rational;
pub mod series;
pub mod system;
pub mod tuple;
pub mod type1;
pub mod type2;
pub mod verify;

pub use duality::{check_duality, DualityReport, PolyMatrix};
pub use error::{Error, Result, SystemId};
pub use normality::{check_general_position, random_tuple, NormalityReport, Verdict};
pub use poly::Polynomial;
pub use rational::Rational;
pub use series::{LaurentSeries, Order};
pub use tuple::SeriesTuple;
pub use type1::{solve_type1, verify_type1, MultiIndexType1, Type1Solution};
pub use type2::{solve_type2, verify_type2, MultiIndexType2, Type2Solution};
