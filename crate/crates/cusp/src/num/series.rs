//! Truncated Laurent series with arbitrary-precision complex coefficients.
//!
//! A `Series` tracks coefficients for exponents `val..=order`; everything
//! above `order` is unknown (`O(t^{order+1})`), everything below `val` is
//! exactly zero. The valuation may be negative, so `m(t) = t^-1(1 + ...)`
//! is a first-class value. Arithmetic is exact to the stated truncation
//! order.

use std::ops::{Add, Mul, Neg, Sub};

use crate::num::big::{BigComplex, BigReal};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Series {
    prec: u32,
    /// Exponent of `coeffs[0]`. Meaningless when `coeffs` is empty.
    val: i64,
    /// Highest tracked exponent, inclusive.
    order: i64,
    coeffs: Vec<BigComplex>,
}

impl Series {
    pub fn zero(order: i64, prec: u32) -> Self {
        Series { prec, val: order + 1, order, coeffs: Vec::new() }
    }

    pub fn constant(c: BigComplex, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn one(order: i64, prec: u32) -> Self {
        Self::monomial(BigComplex::one(prec), 0, order)
    }

    /// The series `c * t^k + O(t^{order+1})`.
    pub fn monomial(c: BigComplex, k: i64, order: i64) -> Self {
        let prec = c.prec();
        if k > order {
            return Self::zero(order, prec);
        }
        Series { prec, val: k, order, coeffs: vec![c] }
    }

    /// The series `t + O(t^{order+1})`.
    pub fn t(order: i64, prec: u32) -> Self {
        Self::monomial(BigComplex::one(prec), 1, order)
    }

    pub fn from_coeffs(val: i64, coeffs: Vec<BigComplex>, order: i64) -> Self {
        let prec = coeffs.iter().map(|c| c.prec()).min().unwrap_or(crate::num::big::DEFAULT_PREC);
        let mut s = Series { prec, val, order, coeffs };
        s.clamp();
        s
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Valuation lower bound: the stored valuation, or `order + 1` for a
    /// zero series (which is `O(t^{order+1})`).
    pub fn val_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.order + 1
        } else {
            self.val
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `t^k` (exactly zero below the valuation).
    /// Requesting a coefficient above the truncation order is an error.
    pub fn coeff(&self, k: i64) -> Result<BigComplex> {
        if k > self.order {
            return Err(Error::Series(format!(
                "coefficient t^{k} beyond truncation order {}",
                self.order
            )));
        }
        if self.coeffs.is_empty() || k < self.val {
            return Ok(BigComplex::zero(self.prec));
        }
        let idx = (k - self.val) as usize;
        if idx >= self.coeffs.len() {
            return Ok(BigComplex::zero(self.prec));
        }
        Ok(self.coeffs[idx].clone())
    }

    /// Lowest exponent whose coefficient is not negligible, if any.
    pub fn valuation(&self, margin: u32) -> Option<i64> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_negligible(margin) {
                return Some(self.val + i as i64);
            }
        }
        None
    }

    /// Largest coefficient magnitude, as a crude scale for tolerances.
    pub fn max_abs(&self) -> BigReal {
        let mut m = BigReal::new(self.prec);
        for c in &self.coeffs {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    fn clamp(&mut self) {
        // keep only exponents <= order; drop exact zeros at the front
        if self.coeffs.is_empty() {
            self.val = self.order + 1;
            return;
        }
        let len = ((self.order - self.val + 1).max(0)) as usize;
        self.coeffs.truncate(len);
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = self.order + 1;
        }
    }

    pub fn truncate(&self, order: i64) -> Series {
        let mut s = self.clone();
        s.order = s.order.min(order);
        s.clamp();
        s
    }

    pub fn scale(&self, c: &BigComplex) -> Series {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Series { prec: self.prec.min(c.prec()), val: self.val, order: self.order, coeffs }
    }

    pub fn scale_i64(&self, k: i64) -> Series {
        let coeffs = self.coeffs.iter().map(|a| a.scale_i64(k)).collect();
        Series { prec: self.prec, val: self.val, order: self.order, coeffs }
    }

    /// Multiply by `t^k` (shifts exponents, keeps the same number of
    /// tracked coefficients).
    pub fn shift(&self, k: i64) -> Series {
        Series {
            prec: self.prec,
            val: self.val + k,
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitute `t -> c*t`.
    pub fn subst_scale(&self, c: &BigComplex) -> Result<Series> {
        let prec = self.prec.min(c.prec());
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            let p = c.powi(self.val + i as i64)?;
            coeffs.push(a * &p);
        }
        Ok(Series { prec, val: self.val, order: self.order, coeffs })
    }

    /// Substitute `t -> t^m` for `m >= 1`.
    pub fn subst_pow(&self, m: i64) -> Result<Series> {
        if m < 1 {
            return Err(Error::Series("t -> t^m needs m >= 1".into()));
        }
        let mut out = Series::zero(self.order * m, self.prec);
        for (i, a) in self.coeffs.iter().enumerate() {
            let k = (self.val + i as i64) * m;
            out = &out + &Series::monomial(a.clone(), k, out.order);
        }
        Ok(out)
    }

    pub fn derivative(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a.scale_i64(self.val + i as i64));
        }
        let mut s = Series { prec: self.prec, val: self.val - 1, order: self.order - 1, coeffs };
        s.clamp();
        s
    }

    /// Termwise antiderivative with zero constant term.
    /// Errors if a `t^-1` coefficient is present (that term integrates to a log).
    pub fn integrate(&self) -> Result<Series> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k == -1 {
                if !a.is_negligible(24) {
                    return Err(Error::Series("t^-1 term has no series antiderivative".into()));
                }
                coeffs.push(BigComplex::zero(self.prec));
                continue;
            }
            let d = BigComplex::from_i64(k + 1, self.prec);
            coeffs.push(&(a.clone()) / &d);
        }
        let mut s = Series { prec: self.prec, val: self.val + 1, order: self.order + 1, coeffs };
        s.clamp();
        Ok(s)
    }

    /// Multiplicative inverse. The leading tracked coefficient must be
    /// non-negligible; the result has valuation `-val`.
    pub fn inverse(&self) -> Result<Series> {
        let mut a = self.clone();
        a.clamp();
        let v = a
            .valuation(24)
            .ok_or_else(|| Error::Series("inverse of (numerically) zero series".into()))?;
        // drop negligible leading junk so the pivot is the true leading term
        a.coeffs.drain(..(v - a.val) as usize);
        a.val = v;
        let n = (a.order - v + 1) as usize; // number of coefficients we can produce
        let lead = a.coeffs[0].clone();
        let lead_inv = lead.inv()?;
        let mut out: Vec<BigComplex> = Vec::with_capacity(n);
        out.push(lead_inv.clone());
        for k in 1..n {
            // b_k = -(sum_{j=1..=k} a_j b_{k-j}) / a_0
            let mut acc = BigComplex::zero(self.prec);
            for j in 1..=k {
                if j < a.coeffs.len() {
                    acc = &acc + &(&a.coeffs[j] * &out[k - j]);
                }
            }
            out.push(&(-&acc) * &lead_inv);
        }
        Ok(Series { prec: self.prec, val: -v, order: a.order - 2 * v, coeffs: out })
    }

    /// Composition `self(g)` where `g` has valuation >= 1 and `self` has
    /// valuation >= 0 (Horner evaluation in the series ring).
    pub fn compose(&self, g: &Series) -> Result<Series> {
        if self.val < 0 {
            return Err(Error::Series("composition needs a non-negative valuation".into()));
        }
        if !g.coeffs.is_empty() && g.val < 1 {
            return Err(Error::Series("inner series must vanish at t=0".into()));
        }
        let order = self.order.min(g.order);
        let mut acc = Series::zero(order, self.prec);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Series::constant(a.clone(), order);
        }
        // account for the valuation prefix t^val -> g^val
        if self.val > 0 {
            let mut p = Series::one(order, self.prec);
            for _ in 0..self.val {
                p = &p * g;
            }
            acc = &acc * &p;
        }
        Ok(acc)
    }

    /// `log` of a series with leading coefficient 1 and valuation 0;
    /// the result has zero constant term.
    pub fn log1(&self) -> Result<Series> {
        if self.order < 0 {
            return Err(Error::Series("log1 needs a constant term in range".into()));
        }
        let c0 = self.coeff(0)?;
        if self.val > 0 || !c0.approx_eq(&BigComplex::one(self.prec)) {
            return Err(Error::Series("log1 expects a 1 + O(t) series".into()));
        }
        // log f = integral of f'/f
        let f_prime = self.derivative();
        let quotient = &f_prime * &self.inverse()?;
        quotient.truncate(self.order - 1).integrate()
    }

    /// `exp` of a series with valuation >= 1.
    pub fn exp1(&self) -> Result<Series> {
        if !self.coeffs.is_empty() && self.val < 1 {
            return Err(Error::Series("exp1 expects an O(t) series".into()));
        }
        let order = self.order;
        let n_terms = order.max(0) as usize + 1;
        let mut exp_coeffs = Vec::with_capacity(n_terms);
        let mut factorial = BigComplex::one(self.prec);
        exp_coeffs.push(BigComplex::one(self.prec));
        for k in 1..n_terms {
            factorial = factorial.scale_i64(k as i64);
            exp_coeffs.push(factorial.inv()?);
        }
        Series::from_coeffs(0, exp_coeffs, order).compose(self)
    }

    pub fn pow_i64(&self, n: i64) -> Result<Series> {
        if n < 0 {
            return self.inverse()?.pow_i64(-n);
        }
        let mut acc = Series::one(self.order, self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            if n > 1 {
                base = &base * &base;
            }
            n >>= 1;
        }
        Ok(acc)
    }

    /// Evaluate at a numeric point (Laurent tails included).
    pub fn eval(&self, t: &BigComplex) -> Result<BigComplex> {
        let prec = self.prec.min(t.prec());
        let mut acc = BigComplex::zero(prec);
        // Horner over ascending exponents
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * t) + a;
        }
        let lead = t.powi(self.val)?;
        Ok(&acc * &lead)
    }

    /// Largest coefficient magnitude among exponents >= `from`.
    pub fn tail_max_abs(&self, from: i64) -> BigReal {
        let mut m = BigReal::new(self.prec);
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.val + (i as i64) >= from {
                let a = c.abs();
                if a > m {
                    m = a;
                }
            }
        }
        m
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order.min(rhs.order);
        let prec = self.prec.min(rhs.prec);
        if self.coeffs.is_empty() {
            return rhs.truncate(order);
        }
        if rhs.coeffs.is_empty() {
            return self.truncate(order);
        }
        let val = self.val.min(rhs.val);
        let len = (order - val + 1).max(0) as usize;
        let mut coeffs = vec![BigComplex::zero(prec); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k <= order {
                coeffs[(k - val) as usize] = &coeffs[(k - val) as usize] + c;
            }
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let k = rhs.val + i as i64;
            if k <= order {
                coeffs[(k - val) as usize] = &coeffs[(k - val) as usize] + c;
            }
        }
        let mut s = Series { prec, val, order, coeffs };
        s.clamp();
        s
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Series { prec: self.prec, val: self.val, order: self.order, coeffs }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let prec = self.prec.min(rhs.prec);
        let order = (self.order + rhs.val).min(rhs.order + self.val);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Series::zero(order, prec);
        }
        let val = self.val + rhs.val;
        let len = (order - val + 1).max(0) as usize;
        let mut coeffs = vec![BigComplex::zero(prec); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let k = i + j;
                if k < len {
                    coeffs[k] = &coeffs[k] + &(a * b);
                } else {
                    break;
                }
            }
        }
        let mut s = Series { prec, val, order, coeffs };
        s.clamp();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> BigComplex {
        BigComplex::from_f64(x, 0.0, 192)
    }

    #[test]
    fn laurent_inverse_of_t() {
        let t = Series::t(8, 192);
        let inv = t.inverse().unwrap();
        assert_eq!(inv.valuation(16), Some(-1));
        let product = &t * &inv;
        assert!(product.coeff(0).unwrap().approx_eq(&c(1.0)));
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1-t) = 1 + t + t^2 + ...
        let one = Series::one(10, 192);
        let f = &one - &Series::t(10, 192);
        let g = f.inverse().unwrap();
        for k in 0..=10 {
            assert!(g.coeff(k).unwrap().approx_eq(&c(1.0)), "coeff {k}");
        }
    }

    #[test]
    fn log_exp_round_trip() {
        let order = 12;
        let mut f = Series::one(order, 192);
        for (k, a) in [(1, 0.5), (2, -0.25), (3, 1.75)] {
            f = &f + &Series::monomial(c(a), k, order);
        }
        let g = f.log1().unwrap().exp1().unwrap();
        for k in 0..=order {
            assert!(
                g.coeff(k).unwrap().approx_eq(&f.coeff(k).unwrap()),
                "coeff {k} mismatch"
            );
        }
    }

    #[test]
    fn log_turns_products_into_sums() {
        let order = 10;
        let f = &Series::one(order, 192) + &Series::monomial(c(0.3), 1, order);
        let g = &Series::one(order, 192) + &Series::monomial(c(-0.7), 2, order);
        let lhs = (&f * &g).log1().unwrap();
        let rhs = &f.log1().unwrap() + &g.log1().unwrap();
        for k in 0..=order - 1 {
            assert!(lhs.coeff(k).unwrap().approx_eq(&rhs.coeff(k).unwrap()));
        }
    }

    #[test]
    fn integrate_rejects_residue_term() {
        let f = Series::monomial(c(2.0), -1, 5);
        assert!(f.integrate().is_err());
    }

    #[test]
    fn eval_laurent() {
        // t^-1 + 3 t
        let f = &Series::monomial(c(1.0), -1, 5) + &Series::monomial(c(3.0), 1, 5);
        let t0 = BigComplex::from_f64(0.5, 0.0, 192);
        let v = f.eval(&t0).unwrap();
        assert!(v.approx_eq(&c(2.0 + 1.5)));
    }
}
