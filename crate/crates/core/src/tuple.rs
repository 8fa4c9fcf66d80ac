use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::LaurentSeries;

/// The tuple `[f_0, ..., f_m]` of series in nonnegative powers of `1/z`,
/// each with a nonzero value at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTuple {
    series: Vec<LaurentSeries>,
    fingerprint: String,
}

impl SeriesTuple {
    /// `coefficients[j][l]` is the coefficient of `z^-l` in `f_j`.
    pub fn new(coefficients: Vec<Vec<Rational>>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::Schema(format!(
                "a tuple needs at least two series, got {}",
                coefficients.len()
            )));
        }
        let mut series = Vec::with_capacity(coefficients.len());
        for (j, cs) in coefficients.into_iter().enumerate() {
            match cs.first() {
                None => return Err(Error::Schema(format!("series {j} has no coefficients"))),
                Some(c) if num_traits::Zero::is_zero(c) => {
                    return Err(Error::LeadingZero { series: j })
                }
                Some(_) => {}
            }
            series.push(LaurentSeries::at_infinity(cs));
        }
        let fingerprint = fingerprint(&series);
        Ok(SeriesTuple {
            series,
            fingerprint,
        })
    }

    /// Index of the last series (the tuple has `m + 1` entries).
    pub fn m(&self) -> usize {
        self.series.len() - 1
    }

    pub fn series(&self) -> &[LaurentSeries] {
        &self.series
    }

    pub fn get(&self, j: usize) -> &LaurentSeries {
        &self.series[j]
    }

    /// Hex SHA-256 over every series' window and coefficients.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Number of known coefficients `c_0, ..., c_L` of `f_j`.
    pub fn available(&self, j: usize) -> usize {
        (-self.series[j].known_through() + 1) as usize
    }

    /// Coefficient of `z^-l` in `f_j`; `l` must be inside the window.
    pub fn c(&self, j: usize, l: usize) -> Rational {
        self.series[j]
            .coeff(-(l as i64))
            .expect("coefficient index outside the trust window")
    }

    /// Coefficient lists as given, `c_0 ... c_L` per series.
    pub fn coefficient_lists(&self) -> Vec<Vec<Rational>> {
        (0..self.series.len())
            .map(|j| (0..self.available(j)).map(|l| self.c(j, l)).collect())
            .collect()
    }

    /// Fails unless every series knows at least `required` coefficients.
    pub fn require(&self, required: usize) -> Result<()> {
        for j in 0..self.series.len() {
            let available = self.available(j);
            if available < required {
                return Err(Error::InsufficientTruncation {
                    series: j,
                    required,
                    available,
                });
            }
        }
        Ok(())
    }

    /// Every series multiplied by `lambda`.
    pub fn scaled(&self, lambda: &Rational) -> Result<Self> {
        Self::new(
            self.coefficient_lists()
                .into_iter()
                .map(|cs| cs.into_iter().map(|c| c * lambda).collect())
                .collect(),
        )
    }
}

fn fingerprint(series: &[LaurentSeries]) -> String {
    let mut h = Sha256::new();
    for f in series {
        h.update(f.known_through().to_le_bytes());
        for c in f.coeffs() {
            h.update(c.to_string().as_bytes());
            h.update(b";");
        }
        h.update(b"|");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn rejects_leading_zero() {
        let err = SeriesTuple::new(vec![vec![int(1)], vec![int(0), int(1)]]).unwrap_err();
        assert!(matches!(err, Error::LeadingZero { series: 1 }));
    }

    #[test]
    fn fingerprint_tracks_contents() {
        let a = SeriesTuple::new(vec![vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        let b = SeriesTuple::new(vec![vec![int(1), int(0)], vec![int(1), int(2)]]).unwrap();
        let c = SeriesTuple::new(vec![vec![int(1)], vec![int(1), int(1)]]).unwrap();
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
    }

    #[test]
    fn coefficient_access() {
        let t = SeriesTuple::new(vec![
            vec![int(2), int(0), int(0)],
            vec![int(1), int(3), int(5)],
        ])
        .unwrap();
        assert_eq!(t.m(), 1);
        assert_eq!(t.available(0), 3);
        assert_eq!(t.c(1, 2), int(5));
        assert_eq!(t.c(0, 1), int(0));
        assert!(t.require(3).is_ok());
        assert!(matches!(
            t.require(4),
            Err(Error::InsufficientTruncation {
                series: 0,
                required: 4,
                available: 3
            })
        ));
    }
}
