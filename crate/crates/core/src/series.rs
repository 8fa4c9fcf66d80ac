//! Truncated Laurent series in `1/z` with exact coefficients and an explicit
//! trust window.
//!
//! A value stores the coefficients of `z^p` for `known_through <= p <= top_power`.
//! Powers above `top_power` are zero; powers below `known_through` are
//! *unknown*, never assumed zero. Every operation propagates the window so
//! that an order claim `O(z^-d)` is only ever made from computed data.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    top_power: i64,
    /// `coeffs[t]` is the coefficient of `z^(top_power - t)`.
    coeffs: Vec<Rational>,
    known_through: i64,
}

/// Vanishing order at infinity of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// The series is `c z^-d + ...` with `c != 0` inside the trust window.
    Exact(i64),
    /// Every trusted coefficient vanishes; only a lower bound is known.
    AtLeast(i64),
}

impl Order {
    pub fn value(self) -> i64 {
        match self {
            Order::Exact(d) | Order::AtLeast(d) => d,
        }
    }

    /// Whether the series is certified to be `O(z^-d)`.
    pub fn reaches(self, d: i64) -> bool {
        self.value() >= d
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact(d) => write!(f, "{d}"),
            Order::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

impl LaurentSeries {
    /// Builds a series from coefficients of `z^top_power, z^(top_power-1), ...`;
    /// the last one given sets the trust window.
    ///
    /// Panics if `coeffs` is empty; use [`LaurentSeries::zero`] for that.
    pub fn from_coeffs(top_power: i64, coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        let known_through = top_power - coeffs.len() as i64 + 1;
        Self::normalized(top_power, coeffs, known_through)
    }

    /// Series `c_0 + c_1/z + ... + c_L/z^L + O(z^-(L+1))`.
    pub fn at_infinity(coeffs: Vec<Rational>) -> Self {
        Self::from_coeffs(0, coeffs)
    }

    /// Zero known down to `z^known_through`.
    pub fn zero(known_through: i64) -> Self {
        LaurentSeries {
            top_power: known_through - 1,
            coeffs: Vec::new(),
            known_through,
        }
    }

    fn normalized(top_power: i64, mut coeffs: Vec<Rational>, known_through: i64) -> Self {
        debug_assert_eq!(coeffs.len() as i64, top_power - known_through + 1);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        if coeffs.is_empty() {
            return Self::zero(known_through);
        }
        LaurentSeries {
            top_power: top_power - lead as i64,
            coeffs,
            known_through,
        }
    }

    /// Highest power with a nonzero coefficient; `known_through - 1` for a zero series.
    pub fn top_power(&self) -> i64 {
        self.top_power
    }

    pub fn known_through(&self) -> i64 {
        self.known_through
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// True when every trusted coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^p`, or `None` if it lies below the trust window.
    pub fn coeff(&self, p: i64) -> Option<Rational> {
        if p < self.known_through {
            None
        } else if p > self.top_power {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(self.top_power - p) as usize].clone())
        }
    }

    /// Coefficient of `z^p` for `p` inside the window.
    fn known(&self, p: i64) -> Rational {
        self.coeff(p).expect("coefficient below the trust window")
    }

    /// Dense coefficients of `z^hi, ..., z^lo`, all inside the window.
    fn dense(&self, hi: i64, lo: i64) -> Vec<Rational> {
        (lo..=hi).rev().map(|p| self.known(p)).collect()
    }

    /// Discards coefficients below `z^known_through`. Never widens the window.
    pub fn truncate(&self, known_through: i64) -> Self {
        let kt = known_through.max(self.known_through);
        if kt > self.top_power {
            return Self::zero(kt);
        }
        let coeffs = self.dense(self.top_power, kt);
        Self::normalized(self.top_power, coeffs, kt)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::normalized(self.top_power, coeffs, self.known_through)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Coefficient-wise sum on the intersection of the two trust windows.
    pub fn add(&self, other: &Self) -> Self {
        let kt = self.known_through.max(other.known_through);
        let top = self.top_power.max(other.top_power);
        if top < kt {
            return Self::zero(kt);
        }
        let coeffs = (kt..=top)
            .rev()
            .map(|p| self.known(p) + other.known(p))
            .collect();
        Self::normalized(top, coeffs, kt)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. The result is trusted down to
    /// `max(a.known_through + b.top_power, b.known_through + a.top_power)`.
    pub fn mul(&self, other: &Self) -> Self {
        let kt = (self.known_through + other.top_power).max(other.known_through + self.top_power);
        let top = self.top_power + other.top_power;
        if self.is_zero() || other.is_zero() || top < kt {
            return Self::zero(kt);
        }
        let len = (top - kt + 1) as usize;
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                out[i + j] += a * b;
            }
        }
        Self::normalized(top, out, kt)
    }

    /// `z^e * q(z) * f(z)`.
    ///
    /// The coefficient of `z^p` in the product sums `q_i * f_(p-e-i)` over
    /// `0 <= i <= deg q`; the deepest coefficient of `f` is needed at
    /// `i = deg q`, so the result is trusted down to `e + deg q + f.known_through`.
    pub fn poly_shift_mul(q: &Polynomial, e: usize, f: &Self) -> Self {
        let e = e as i64;
        let Some(deg) = q.degree() else {
            return Self::zero(e + f.known_through);
        };
        let deg = deg as i64;
        let kt = e + deg + f.known_through;
        let top = e + deg + f.top_power;
        if f.is_zero() || top < kt {
            return Self::zero(kt);
        }
        let coeffs = (kt..=top)
            .rev()
            .map(|p| {
                let mut acc = Rational::zero();
                for (i, qi) in q.coeffs().iter().enumerate() {
                    if qi.is_zero() {
                        continue;
                    }
                    let fp = p - e - i as i64;
                    if fp <= f.top_power {
                        acc += qi * f.known(fp);
                    }
                }
                acc
            })
            .collect();
        Self::normalized(top, coeffs, kt)
    }

    /// Largest `d` with the series certified `O(z^-d)`.
    pub fn residual_order(&self) -> Order {
        if self.is_zero() {
            Order::AtLeast(-self.known_through + 1)
        } else {
            Order::Exact(-self.top_power)
        }
    }

    /// First `terms + 1` coefficients of `1/f` for `f = c_0 + c_1/z + ...`, `c_0 != 0`.
    pub fn reciprocal(&self, terms: usize) -> Result<Self> {
        if self.is_zero() || self.top_power < 0 {
            return Err(Error::LeadingZero { series: 0 });
        }
        if self.top_power > 0 {
            return Err(Error::InvalidArgument(format!(
                "reciprocal needs a series in nonnegative powers of 1/z, got top power {}",
                self.top_power
            )));
        }
        let available = (-self.known_through + 1) as usize;
        if available < terms + 1 {
            return Err(Error::InsufficientTruncation {
                series: 0,
                required: terms + 1,
                available,
            });
        }
        let c = &self.coeffs;
        let inv_lead = c[0].recip();
        let mut g: Vec<Rational> = Vec::with_capacity(terms + 1);
        g.push(inv_lead.clone());
        for l in 1..=terms {
            let s: Rational = (1..=l).map(|i| &c[i] * &g[l - i]).sum();
            g.push(-s * &inv_lead);
        }
        Ok(Self::at_infinity(g))
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("LaurentSeries", 3)?;
        st.serialize_field("top_power", &self.top_power)?;
        st.serialize_field("known_through", &self.known_through)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.top_power - t as i64;
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match p {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.known_through - 1)
    }
}
