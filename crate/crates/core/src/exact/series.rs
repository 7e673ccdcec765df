//! Power series in one distinguished variable, truncated at a fixed degree.
//!
//! Coefficients are [`LaurentPoly`] values over a common ring that does not
//! contain the series variable. Every operation works on coefficients
//! `0..=max_degree` only.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    var: String,
    ring: Arc<Ring>,
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    pub fn zero(var: &str, ring: &Arc<Ring>, max_degree: usize) -> Self {
        TruncatedSeries {
            var: var.to_string(),
            ring: ring.clone(),
            coeffs: vec![LaurentPoly::zero(ring); max_degree + 1],
        }
    }

    pub fn one(var: &str, ring: &Arc<Ring>, max_degree: usize) -> Self {
        let mut s = Self::zero(var, ring, max_degree);
        s.coeffs[0] = LaurentPoly::one(ring);
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything past `max_degree` is dropped.
    pub fn from_coeffs(
        var: &str,
        ring: &Arc<Ring>,
        max_degree: usize,
        coeffs: impl IntoIterator<Item = LaurentPoly>,
    ) -> Result<Self> {
        let mut s = Self::zero(var, ring, max_degree);
        for (k, c) in coeffs.into_iter().enumerate() {
            s.coeffs[0].same_ring(&c)?;
            if k <= max_degree {
                s.coeffs[k] = c;
            }
        }
        Ok(s)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    fn compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.var != other.var || self.max_degree() != other.max_degree() {
            return Err(Error::InvalidArgument(format!(
                "series mismatch: {}^{} vs {}^{}",
                self.var,
                self.max_degree(),
                other.var,
                other.max_degree()
            )));
        }
        self.coeffs[0].same_ring(&other.coeffs[0])
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { coeffs, ..self.clone() })
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(other)?;
        let n = self.max_degree();
        let mut out = Self::zero(&self.var, &self.ring, n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().map(|c| c.scale(q)).collect();
        TruncatedSeries { coeffs, ..self.clone() }
    }

    /// `t * d/dt`, which keeps the truncation degree.
    pub fn euler_derivative(&self) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| c.scale(&Rational::from(k as i64))).collect();
        TruncatedSeries { coeffs, ..self.clone() }
    }

    /// `d/dt`; the top coefficient becomes unknown and is set to zero, so the
    /// result is exact only through degree `max_degree - 1`.
    pub fn derivative(&self) -> TruncatedSeries {
        let n = self.max_degree();
        let mut out = Self::zero(&self.var, &self.ring, n);
        for k in 1..=n {
            out.coeffs[k - 1] = self.coeffs[k].scale(&Rational::from(k as i64));
        }
        out
    }

    /// `f(t) -> f(-t)`.
    pub fn negate_var(&self) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect();
        TruncatedSeries { coeffs, ..self.clone() }
    }

    /// Multiplicative inverse; the constant coefficient must be a unit of the
    /// coefficient ring.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let c0_inv = self.coeffs[0].inverse()?;
        let n = self.max_degree();
        let mut out = Self::zero(&self.var, &self.ring, n);
        out.coeffs[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = LaurentPoly::zero(&self.ring);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !out.coeffs[k - i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &out.coeffs[k - i]);
                }
            }
            out.coeffs[k] = -&(&acc * &c0_inv);
        }
        Ok(out)
    }

    fn require_unit(&self) -> Result<()> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            Err(Error::NotUnitSeries)
        }
    }

    /// `ln(1 + u) = sum_{k>=1} (-1)^{k+1} u^k / k` for a series with constant term 1.
    pub fn log(&self) -> Result<TruncatedSeries> {
        self.require_unit()?;
        let n = self.max_degree();
        let mut u = self.clone();
        u.coeffs[0] = LaurentPoly::zero(&self.ring);
        let mut out = Self::zero(&self.var, &self.ring, n);
        let mut power = u.clone();
        for k in 1..=n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rational::new(sign, k as i64)))?;
            power = power.mul(&u)?;
        }
        Ok(out)
    }

    /// `exp(u) = sum_k u^k / k!` for a series with zero constant term.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.max_degree();
        let mut out = Self::one(&self.var, &self.ring, n);
        let mut term = Self::one(&self.var, &self.ring, n);
        for k in 1..=n {
            term = term.mul(self)?.scale(&Rational::new(1, k as i64));
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// Returns `t * (db/dt) / b`; requires constant coefficient 1.
///
/// For a total Borel class `b_t` the power sums are
/// `s_t = -series_log_derivative(b_{-t})`.
pub fn series_log_derivative(b: &TruncatedSeries) -> Result<TruncatedSeries> {
    b.require_unit()?;
    b.euler_derivative().mul(&b.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_parse;

    fn ring() -> Arc<Ring> {
        Ring::polynomial(&["xi1", "xi2"]).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        poly_parse(s, &ring()).unwrap()
    }

    #[test]
    fn single_root_geometric() {
        let b = TruncatedSeries::from_coeffs("t", &ring(), 6, [p("1"), p("xi1")]).unwrap();
        let d = series_log_derivative(&b).unwrap();
        for k in 1..=6 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(d.coeff(k), &p(&format!("{sign}*xi1^{k}")), "k={k}");
        }
        assert!(d.coeff(0).is_zero());
    }

    #[test]
    fn rank_zero() {
        let b = TruncatedSeries::one("t", &ring(), 5);
        assert!(series_log_derivative(&b).unwrap().is_zero());
    }

    #[test]
    fn two_roots_match_power_sums() {
        // Oracle: -t d/dt ln b(-t) must equal sum_n (xi1^n + xi2^n) t^n.
        let n = 10;
        let b = TruncatedSeries::from_coeffs("t", &ring(), n, [p("1"), p("xi1 + xi2"), p("xi1*xi2")]).unwrap();
        let s = series_log_derivative(&b.negate_var()).unwrap().scale(&Rational::from(-1));
        for k in 1..=n {
            assert_eq!(s.coeff(k), &p(&format!("xi1^{k} + xi2^{k}")));
        }
    }

    #[test]
    fn non_unit_rejected() {
        let b = TruncatedSeries::from_coeffs("t", &ring(), 3, [p("2"), p("xi1")]).unwrap();
        assert_eq!(series_log_derivative(&b), Err(Error::NotUnitSeries));
        assert_eq!(b.log(), Err(Error::NotUnitSeries));
    }

    #[test]
    fn exp_log_roundtrip() {
        let b =
            TruncatedSeries::from_coeffs("t", &ring(), 7, [p("1"), p("xi1 - 2"), p("1/3*xi2"), p("xi1*xi2")]).unwrap();
        assert_eq!(b.log().unwrap().exp().unwrap(), b);
    }

    #[test]
    fn inverse_is_inverse() {
        let b = TruncatedSeries::from_coeffs("t", &ring(), 8, [p("1"), p("xi1"), p("-xi2^2")]).unwrap();
        let prod = b.mul(&b.inverse().unwrap()).unwrap();
        assert_eq!(prod, TruncatedSeries::one("t", &ring(), 8));
    }
}
