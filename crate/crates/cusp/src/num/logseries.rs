//! Polynomials in `L = log t` with Laurent-series coefficients.
//!
//! Expansions at an ideal point mix powers of `t` with powers of `log t`
//! (for example `log m(t) = a1*log t + log of the unit part`). This ring
//! is closed under the operations the limit computation needs: products,
//! `d/dt`, and `integral from 0 to t` of terms `t^n log^k t` with `n >= 0`
//! (plus the `t^-1 log^k t` terms, which integrate to pure log powers).

use std::ops::{Add, Mul, Neg, Sub};

use crate::num::big::{BigComplex, BigReal};
use crate::num::series::Series;
use crate::{Error, Result};

/// `sum_k coeffs[k] * L^k`, `L = log t`.
#[derive(Clone, Debug)]
pub struct LogSeries {
    coeffs: Vec<Series>,
}

impl LogSeries {
    pub fn from_series(s: Series) -> Self {
        LogSeries { coeffs: vec![s] }
    }

    pub fn zero(order: i64, prec: u32) -> Self {
        LogSeries { coeffs: vec![Series::zero(order, prec)] }
    }

    /// `c * L^k`.
    pub fn log_power(c: BigComplex, k: usize, order: i64) -> Self {
        let prec = c.prec();
        let mut coeffs = vec![Series::zero(order, prec); k + 1];
        coeffs[k] = Series::constant(c, order);
        LogSeries { coeffs }
    }

    pub fn log_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn series_part(&self, k: usize) -> Series {
        self.coeffs.get(k).cloned().unwrap_or_else(|| {
            Series::zero(self.coeffs[0].order(), self.coeffs[0].prec())
        })
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
        self
    }

    pub fn scale(&self, c: &BigComplex) -> LogSeries {
        LogSeries { coeffs: self.coeffs.iter().map(|s| s.scale(c)).collect() }
    }

    pub fn scale_i64(&self, k: i64) -> LogSeries {
        LogSeries { coeffs: self.coeffs.iter().map(|s| s.scale_i64(k)).collect() }
    }

    pub fn derivative(&self) -> LogSeries {
        // d/dt (s_k L^k) = s_k' L^k + k s_k t^-1 L^{k-1}
        let n = self.coeffs.len();
        let order = self.coeffs[0].order() - 1;
        let prec = self.coeffs[0].prec();
        let mut out = vec![Series::zero(order, prec); n];
        for (k, s) in self.coeffs.iter().enumerate() {
            out[k] = &out[k] + &s.derivative();
            if k > 0 {
                let down = s.scale_i64(k as i64).shift(-1).truncate(order);
                out[k - 1] = &out[k - 1] + &down;
            }
        }
        LogSeries { coeffs: out }.normalized()
    }

    /// `integral from 0 to t`, termwise. Handles `t^n L^k` for `n >= 0`
    /// (boundary terms vanish) and `t^-1 L^k -> L^{k+1}/(k+1)`.
    /// Exponents below -1 are rejected.
    pub fn integrate(&self) -> Result<LogSeries> {
        let prec = self.coeffs[0].prec();
        let order = self.coeffs[0].order() + 1;
        let mut out = vec![Series::zero(order, prec); self.coeffs.len() + 1];
        for (k, s) in self.coeffs.iter().enumerate() {
            if let Some(v) = s.valuation(24) {
                if v < -1 {
                    return Err(Error::Series(format!(
                        "cannot integrate t^{v} log^{k} t term"
                    )));
                }
            }
            // residue part: c * t^-1 L^k integrates to c L^{k+1}/(k+1)
            let mut rest = s.clone();
            if s.order() >= -1 {
                let residue = s.coeff(-1)?;
                if !residue.is_zero() {
                    let c = residue.scale_rational(&rug::Rational::from((1, (k as i64) + 1)));
                    out[k + 1] = &out[k + 1] + &Series::constant(c, order);
                    rest = &rest - &Series::monomial(residue, -1, s.order());
                }
            }
            // remaining part integrates by parts:
            //   I(t^n L^k) = t^{n+1}/(n+1) L^k - k/(n+1) I(t^n L^{k-1})
            let mut j = k as i64;
            let mut cur = rest;
            loop {
                let integrated = cur.integrate()?;
                out[j as usize] = &out[j as usize] + &integrated;
                if j == 0 {
                    break;
                }
                // -j/(n+1) factor folds in termwise: divide each term of
                // `integrated` by t once more? No: use the recurrence on the
                // already-integrated series: I(c t^n L^j) = c t^{n+1}/(n+1) L^j
                //   - j * I( c t^n /(n+1) L^{j-1} )
                cur = integrated.scale_i64(-j).shift(-1).truncate(cur.order());
                j -= 1;
            }
        }
        Ok(LogSeries { coeffs: out }.normalized())
    }

    /// Evaluate at a numeric point given a value for `log t`.
    pub fn eval(&self, t: &BigComplex, log_t: &BigComplex) -> Result<BigComplex> {
        let prec = t.prec();
        let mut acc = BigComplex::zero(prec);
        for s in self.coeffs.iter().rev() {
            acc = &(&acc * log_t) + &s.eval(t)?;
        }
        Ok(acc)
    }

    /// Maximum coefficient magnitude over all genuine log terms (`k >= 1`).
    pub fn log_part_max_abs(&self) -> BigReal {
        let prec = self.coeffs[0].prec();
        let mut m = BigReal::new(prec);
        for s in self.coeffs.iter().skip(1) {
            let a = s.max_abs();
            if a > m {
                m = a;
            }
        }
        m
    }
}

impl Add for &LogSeries {
    type Output = LogSeries;
    fn add(self, rhs: &LogSeries) -> LogSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let order = self.coeffs[0].order().min(rhs.coeffs[0].order());
        let prec = self.coeffs[0].prec().min(rhs.coeffs[0].prec());
        let zero = Series::zero(order, prec);
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).unwrap_or(&zero);
            let b = rhs.coeffs.get(k).unwrap_or(&zero);
            out.push(&a.truncate(order) + &b.truncate(order));
        }
        LogSeries { coeffs: out }.normalized()
    }
}

impl Sub for &LogSeries {
    type Output = LogSeries;
    fn sub(self, rhs: &LogSeries) -> LogSeries {
        self + &(-rhs)
    }
}

impl Neg for &LogSeries {
    type Output = LogSeries;
    fn neg(self) -> LogSeries {
        LogSeries { coeffs: self.coeffs.iter().map(|s| -s).collect() }
    }
}

impl Mul for &LogSeries {
    type Output = LogSeries;
    fn mul(self, rhs: &LogSeries) -> LogSeries {
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        // series multiplication can lower the reliable order; take the
        // pessimistic bound over all coefficient pairs
        let mut order = i64::MAX;
        for a in &self.coeffs {
            for b in &rhs.coeffs {
                order = order.min((a.order() + b.val_bound()).min(b.order() + a.val_bound()));
            }
        }
        let prec = self.coeffs[0].prec().min(rhs.coeffs[0].prec());
        let mut out = vec![Series::zero(order, prec); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b).truncate(order);
            }
        }
        LogSeries { coeffs: out }.normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, prec: u32) -> BigComplex {
        BigComplex::from_f64(x, 0.0, prec)
    }

    #[test]
    fn derivative_of_log_is_one_over_t() {
        let l = LogSeries::log_power(c(1.0, 192), 1, 8);
        let d = l.derivative();
        assert_eq!(d.log_degree(), 0);
        assert!(d.series_part(0).coeff(-1).unwrap().approx_eq(&c(1.0, 192)));
    }

    #[test]
    fn integrate_one_over_t_gives_log() {
        let f = LogSeries::from_series(Series::monomial(c(1.0, 192), -1, 8));
        let i = f.integrate().unwrap();
        assert_eq!(i.log_degree(), 1);
        assert!(i.series_part(1).coeff(0).unwrap().approx_eq(&c(1.0, 192)));
        assert!(i.series_part(0).is_zero());
    }

    #[test]
    fn integrate_t_log_t() {
        // integral of t L = t^2/2 L - t^2/4
        let f = LogSeries::log_power(c(1.0, 192), 1, 8) .mul_t();
        let i = f.integrate().unwrap();
        assert!(i.series_part(1).coeff(2).unwrap().approx_eq(&c(0.5, 192)));
        assert!(i.series_part(0).coeff(2).unwrap().approx_eq(&c(-0.25, 192)));
    }

    #[test]
    fn derivative_inverts_integrate() {
        let prec = 192;
        let mut f = LogSeries::log_power(c(2.0, prec), 2, 10);
        f = &f + &LogSeries::from_series(Series::monomial(c(3.0, prec), 1, 10));
        f = &f + &LogSeries::from_series(Series::monomial(c(-1.0, prec), -1, 10));
        let back = f.integrate().unwrap().derivative();
        for k in 0..=back.log_degree().max(f.log_degree()) {
            let a = back.series_part(k);
            let b = f.series_part(k);
            let order = a.order().min(b.order());
            for e in -1..=order {
                assert!(
                    a.coeff(e).unwrap().approx_eq(&b.coeff(e).unwrap()),
                    "L^{k} t^{e}"
                );
            }
        }
    }
}

impl LogSeries {
    /// Multiply by the plain series `t` (test helper and convenience).
    pub fn mul_t(&self) -> LogSeries {
        LogSeries { coeffs: self.coeffs.iter().map(|s| s.shift(1)).collect() }
    }
}
