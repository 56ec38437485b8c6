//! Arbitrary-precision real and complex scalars.
//!
//! Thin wrappers around MPFR floats that enforce the precision and
//! finiteness rules used throughout the crate: every arithmetic result
//! carries the minimum precision of its operands, and an operation that
//! would produce a NaN or infinity is reported as an error instead of
//! letting non-finite values propagate silently.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Complex, Float};

use crate::{Error, Result};

/// Default working precision in bits. The appendix computations need about
/// 30 significant digits; 256 bits leaves generous headroom.
pub const DEFAULT_PREC: u32 = 256;

/// Minimum precision accepted by constructors.
pub const MIN_PREC: u32 = 64;

fn pi_cache() -> &'static Mutex<HashMap<u32, Float>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Float>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// pi at the given precision, computed once per precision and cached.
pub fn pi(prec: u32) -> BigReal {
    let mut cache = pi_cache().lock().unwrap();
    let f = cache
        .entry(prec)
        .or_insert_with(|| Float::with_val(prec, Constant::Pi))
        .clone();
    BigReal(f)
}

/// 2*pi*i at the given precision.
pub fn two_pi_i(prec: u32) -> BigComplex {
    let p = pi(prec).0;
    let two_pi = Float::with_val(prec, 2 * &p);
    BigComplex(Complex::with_val(prec, (Float::with_val(prec, 0), two_pi)))
}

/// Arbitrary-precision real number.
#[derive(Clone, PartialEq)]
pub struct BigReal(pub(crate) Float);

/// Arbitrary-precision complex number with explicit working precision.
#[derive(Clone, PartialEq)]
pub struct BigComplex(pub(crate) Complex);

impl BigReal {
    pub fn new(prec: u32) -> Self {
        BigReal(Float::with_val(prec.max(MIN_PREC), 0))
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        BigReal(Float::with_val(prec.max(MIN_PREC), x))
    }

    pub fn from_i64(x: i64, prec: u32) -> Self {
        BigReal(Float::with_val(prec.max(MIN_PREC), x))
    }

    pub fn from_rational(q: &rug::Rational, prec: u32) -> Self {
        BigReal(Float::with_val(prec.max(MIN_PREC), q))
    }

    /// Parse a decimal string at the given precision.
    pub fn parse(s: &str, prec: u32) -> Result<Self> {
        let incomplete = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(BigReal(Float::with_val(prec.max(MIN_PREC), incomplete)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn abs(&self) -> BigReal {
        BigReal(self.0.abs_ref().complete(self.prec()))
    }

    pub fn neg_ref(&self) -> BigReal {
        BigReal((-&self.0).complete(self.prec()))
    }

    pub fn ln(&self) -> Result<BigReal> {
        if self.0.is_sign_negative() || self.0.is_zero() {
            return Err(Error::Domain("ln of non-positive real".into()));
        }
        Ok(BigReal(self.0.ln_ref().complete(self.prec())))
    }

    pub fn exp(&self) -> BigReal {
        BigReal(self.0.exp_ref().complete(self.prec()))
    }

    pub fn sqrt(&self) -> Result<BigReal> {
        if self.0.is_sign_negative() {
            return Err(Error::Domain("sqrt of negative real".into()));
        }
        Ok(BigReal(self.0.sqrt_ref().complete(self.prec())))
    }

    /// Nearest integer, as i64.
    pub fn round_i64(&self) -> Result<i64> {
        let r = self.0.round_ref().complete(self.prec());
        r.to_integer()
            .and_then(|n| n.to_i64())
            .ok_or_else(|| Error::Domain("value out of i64 range".into()))
    }

    /// `|self| <= 2^-(prec - margin)`, the crate's "numerically zero" test.
    pub fn is_negligible(&self, margin: u32) -> bool {
        if self.0.is_zero() {
            return true;
        }
        let bound = Float::with_val(32, Float::i_exp(1, -((self.prec() as i32) - margin as i32)));
        self.0.clone().abs() <= bound
    }

    /// Decimal string with `digits` significant digits (deterministic).
    pub fn to_decimal(&self, digits: usize) -> String {
        let s = self.0.to_string_radix(10, Some(digits));
        s
    }
}

impl BigComplex {
    pub fn new(prec: u32) -> Self {
        BigComplex(Complex::with_val(prec.max(MIN_PREC), (0, 0)))
    }

    pub fn from_parts(re: BigReal, im: BigReal) -> Self {
        let prec = re.prec().min(im.prec());
        BigComplex(Complex::with_val(prec, (re.0, im.0)))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex(Complex::with_val(prec.max(MIN_PREC), (re, im)))
    }

    pub fn from_i64(x: i64, prec: u32) -> Self {
        BigComplex(Complex::with_val(prec.max(MIN_PREC), (x, 0)))
    }

    pub fn from_rational(q: &rug::Rational, prec: u32) -> Self {
        BigComplex(Complex::with_val(
            prec.max(MIN_PREC),
            (Float::with_val(prec.max(MIN_PREC), q), 0),
        ))
    }

    /// Parse a pair of decimal strings.
    pub fn parse(re: &str, im: &str, prec: u32) -> Result<Self> {
        Ok(BigComplex::from_parts(
            BigReal::parse(re, prec)?,
            BigReal::parse(im, prec)?,
        ))
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn i(prec: u32) -> Self {
        BigComplex(Complex::with_val(prec.max(MIN_PREC), (0, 1)))
    }

    pub fn prec(&self) -> u32 {
        self.0.real().prec().min(self.0.imag().prec())
    }

    pub fn re(&self) -> BigReal {
        BigReal(self.0.real().clone())
    }

    pub fn im(&self) -> BigReal {
        BigReal(self.0.imag().clone())
    }

    pub fn is_finite(&self) -> bool {
        self.0.real().is_finite() && self.0.imag().is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    fn checked(self, op: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(op.to_string()))
        }
    }

    pub fn abs(&self) -> BigReal {
        BigReal(Float::with_val(self.prec(), self.0.abs_ref()))
    }

    /// Principal argument, in (-pi, pi].
    pub fn arg(&self) -> BigReal {
        let c = Complex::with_val(self.prec(), self.0.arg_ref());
        BigReal(c.into_real_imag().0)
    }

    pub fn conj(&self) -> BigComplex {
        BigComplex(self.0.conj_ref().complete((self.prec(), self.prec())))
    }

    pub fn scale_i64(&self, k: i64) -> BigComplex {
        BigComplex((&self.0 * k).complete((self.prec(), self.prec())))
    }

    pub fn scale_rational(&self, q: &rug::Rational) -> BigComplex {
        let prec = self.prec();
        let f = Float::with_val(prec, q);
        BigComplex((&self.0 * &f).complete((prec, prec)))
    }

    /// Principal natural logarithm; the imaginary part lies in (-pi, pi].
    pub fn ln(&self) -> Result<BigComplex> {
        if self.is_zero() {
            return Err(Error::Domain("log of zero".into()));
        }
        let prec = self.prec();
        BigComplex(self.0.ln_ref().complete((prec, prec))).checked("ln")
    }

    pub fn exp(&self) -> Result<BigComplex> {
        let prec = self.prec();
        BigComplex(self.0.exp_ref().complete((prec, prec))).checked("exp")
    }

    pub fn sqrt(&self) -> Result<BigComplex> {
        let prec = self.prec();
        BigComplex(self.0.sqrt_ref().complete((prec, prec))).checked("sqrt")
    }

    pub fn inv(&self) -> Result<BigComplex> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let prec = self.prec();
        BigComplex((self.0.recip_ref()).complete((prec, prec))).checked("inv")
    }

    pub fn powi(&self, mut n: i64) -> Result<BigComplex> {
        let prec = self.prec();
        let mut base = if n < 0 {
            n = -n;
            self.inv()?
        } else {
            self.clone()
        };
        let mut acc = BigComplex::one(prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = (&acc * &base).checked("powi")?;
            }
            base = (&base * &base).checked("powi")?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Tolerance comparison: `|a-b| <= eps_abs + eps_rel*max(|a|,|b|)`
    /// with `eps_abs = eps_rel = 2^-(prec-32)`.
    pub fn approx_eq(&self, other: &BigComplex) -> bool {
        let prec = self.prec().min(other.prec());
        let eps = Float::with_val(prec, Float::i_exp(1, -((prec as i32) - 32)));
        let diff = (&self.0 - &other.0).complete((prec, prec));
        let d = Float::with_val(prec, diff.abs_ref());
        let ma = self.abs().0.max(&other.abs().0);
        let rel = Float::with_val(prec, &eps * &ma);
        d <= Float::with_val(prec, &eps + &rel)
    }

    /// `|self| <= 2^-(prec - margin)`.
    pub fn is_negligible(&self, margin: u32) -> bool {
        self.abs().is_negligible(margin)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.0.real().to_f64(), self.0.imag().to_f64())
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        format!(
            "{} {}",
            self.re().to_decimal(digits),
            self.im().to_decimal(digits)
        )
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: &BigComplex) -> BigComplex {
                let prec = self.prec().min(rhs.prec());
                BigComplex((&self.0 $op &rhs.0).complete((prec, prec)))
            }
        }
        impl $trait for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let prec = self.prec().min(rhs.prec());
        BigComplex((&self.0 / &rhs.0).complete((prec, prec)))
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        let prec = self.prec();
        BigComplex((-&self.0).complete((prec, prec)))
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let prec = self.prec().min(rhs.prec());
                BigReal((&self.0 $op &rhs.0).complete(prec))
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &BigReal) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re().to_decimal(20), self.im().to_decimal(20))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_precision_propagates() {
        let a = BigComplex::from_f64(1.5, 0.25, 256);
        let b = BigComplex::from_f64(2.0, -1.0, 128);
        assert_eq!((&a * &b).prec(), 128);
        assert_eq!((&a + &b).prec(), 128);
    }

    #[test]
    fn ln_principal_branch() {
        let prec = 192;
        let minus_one = BigComplex::from_i64(-1, prec);
        let l = minus_one.ln().unwrap();
        let expected = BigComplex::from_parts(BigReal::new(prec), pi(prec));
        assert!(l.approx_eq(&expected));
    }

    #[test]
    fn log_of_zero_is_domain_error() {
        assert!(BigComplex::zero(128).ln().is_err());
    }

    #[test]
    fn division_by_zero_is_error() {
        assert!(BigComplex::one(128).inv().is_ok());
        assert!(BigComplex::zero(128).inv().is_err());
    }

    #[test]
    fn two_pi_i_squares_to_minus_4pi2() {
        let w = two_pi_i(256);
        let sq = w.powi(2).unwrap();
        let p = pi(256);
        let pi2 = &p * &p;
        let minus_4 = BigReal::from_i64(-4, 256);
        let minus_4pi2 = BigComplex::from_parts(&minus_4 * &pi2, BigReal::new(256));
        assert!(sq.approx_eq(&minus_4pi2));
    }
}
