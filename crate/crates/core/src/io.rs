//! JSON tuple documents and JSON views of results.
//!
//! ```json
//! {"schema_version": "1", "m": 1, "coefficients": [["1", "0"], ["1", "1"]]}
//! ```
//!
//! `coefficients[j][l]` is the coefficient of `z^-l` in `f_j`, written as
//! `"p/q"` or `"p"`. `schema_version` may be omitted.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::normality::NormalityReport;
use crate::pipeline::DualityRun;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::tuple::SeriesTuple;
use crate::type1::Type1Solution;
use crate::type2::Type2Solution;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDocument {
    #[serde(default = "default_version")]
    pub schema_version: String,
    pub m: usize,
    pub coefficients: Vec<Vec<String>>,
}

fn default_version() -> String {
    SCHEMA_VERSION.to_owned()
}

impl TupleDocument {
    pub fn from_tuple(f: &SeriesTuple) -> Self {
        TupleDocument {
            schema_version: default_version(),
            m: f.m(),
            coefficients: f
                .coefficient_lists()
                .iter()
                .map(|cs| cs.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_tuple(&self) -> Result<SeriesTuple> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema_version {:?}",
                self.schema_version
            )));
        }
        if self.coefficients.len() != self.m + 1 {
            return Err(Error::Schema(format!(
                "m = {} needs {} series, found {}",
                self.m,
                self.m + 1,
                self.coefficients.len()
            )));
        }
        if self.m == 0 {
            return Err(Error::Schema("m must be at least 1".into()));
        }
        let len = self.coefficients[0].len();
        if len == 0 {
            return Err(Error::Schema("series 0 has no coefficients".into()));
        }
        if let Some(j) = self.coefficients.iter().position(|cs| cs.len() != len) {
            return Err(Error::Schema(format!(
                "series {j} has {} coefficients, series 0 has {len}",
                self.coefficients[j].len()
            )));
        }
        let parsed: Vec<Vec<Rational>> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(j, cs)| {
                cs.iter()
                    .enumerate()
                    .map(|(l, text)| {
                        parse_rational(text).map_err(|reason| Error::Parse {
                            position: format!("coefficients[{j}][{l}]"),
                            reason,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        SeriesTuple::new(parsed)
    }
}

pub fn parse_tuple(document: &str) -> Result<SeriesTuple> {
    let doc: TupleDocument = serde_json::from_str(document).map_err(|e| Error::Parse {
        position: format!("line {} column {}", e.line(), e.column()),
        reason: e.to_string(),
    })?;
    doc.to_tuple()
}

pub fn serialize_tuple(f: &SeriesTuple) -> String {
    serde_json::to_string_pretty(&TupleDocument::from_tuple(f)).expect("document serializes")
}

pub fn type1_json(s: &Type1Solution) -> Value {
    json!({
        "k": s.index.k,
        "n": s.index.n,
        "m": s.index.m,
        "q": s.q,
        "residual": s.residual,
        "residual_order": s.residual_order,
        "required_order": s.index.order(),
    })
}

pub fn type2_json(s: &Type2Solution) -> Value {
    json!({
        "s": s.index.s,
        "n": s.index.n,
        "m": s.index.m,
        "p": s.p,
        "residuals": s.residuals,
        "required_order": s.index.n,
    })
}

pub fn normality_json(report: &NormalityReport) -> Value {
    json!({
        "n": report.n,
        "m": report.m,
        "general_position_at_n": report.general_position_at_n(),
        "type1": report.type1,
        "type2": report.type2,
    })
}

/// Everything a duality run produced; matrices are row lists of coefficient
/// lists.
pub fn duality_json(f: &SeriesTuple, run: &DualityRun) -> Value {
    json!({
        "m": f.m(),
        "n": run.n,
        "fingerprint": f.fingerprint(),
        "type1": run.type1.iter().map(type1_json).collect::<Vec<_>>(),
        "type2": run.type2.iter().map(type2_json).collect::<Vec<_>>(),
        "m1": run.m1.rows(),
        "m2": run.m2.rows(),
        "product": run.report.product.rows(),
        "det_m1": run.det_m1,
        "det_m2": run.det_m2,
        "holds": run.holds(),
        "entries": run.report.entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn parses_worked_tuple() {
        let t = parse_tuple(r#"{"m":1, "coefficients":[["1","0"],["1","1"]]}"#).unwrap();
        assert_eq!(t.m(), 1);
        assert_eq!(
            t.coefficient_lists(),
            vec![vec![int(1), int(0)], vec![int(1), int(1)]]
        );
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let err = parse_tuple(r#"{"m":1, "coefficients":[["1","1/0"],["1","1"]]}"#).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { position, .. } if position == "coefficients[0][1]"),
            "{err:?}"
        );
    }

    #[test]
    fn leading_zero() {
        let err = parse_tuple(r#"{"m":1, "coefficients":[["1","0"],["0","1"]]}"#).unwrap_err();
        assert!(matches!(err, Error::LeadingZero { series: 1 }));
    }

    #[test]
    fn schema_errors() {
        for doc in [
            r#"{"m":2, "coefficients":[["1"],["1"]]}"#,
            r#"{"m":1, "coefficients":[["1","2"],["1"]]}"#,
            r#"{"m":1, "coefficients":[[],[]]}"#,
            r#"{"schema_version":"9", "m":1, "coefficients":[["1"],["1"]]}"#,
            r#"{"m":0, "coefficients":[["1"]]}"#,
        ] {
            assert!(matches!(parse_tuple(doc), Err(Error::Schema(_))), "{doc}");
        }
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(parse_tuple("{\"m\":"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_tuple(r#"{"m":1, "coefficients":[[1,2],[1,1]]}"#),
            Err(Error::Parse { .. })
        ));
    }
}
