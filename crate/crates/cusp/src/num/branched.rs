//! Logarithm values with explicit branch bookkeeping.
//!
//! A `BranchedValue` is a principal-branch value (imaginary part in
//! (-pi, pi], branch cut along (-inf, 0]) together with a winding integer
//! `k`; the value it denotes is `principal + 2*pi*i*k`. The winding is
//! carried symbolically so that the exact-linear-algebra layer can treat
//! 2*pi*i as a tracked constant instead of a bare float.

use crate::num::big::{two_pi_i, BigComplex};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct BranchedValue {
    pub principal: BigComplex,
    pub winding: i64,
}

impl BranchedValue {
    pub fn new(principal: BigComplex, winding: i64) -> Self {
        BranchedValue { principal, winding }
    }

    /// The denoted value `principal + 2*pi*i*winding` at the principal's precision.
    pub fn value(&self) -> BigComplex {
        if self.winding == 0 {
            return self.principal.clone();
        }
        let w = two_pi_i(self.principal.prec()).scale_i64(self.winding);
        &self.principal + &w
    }

    pub fn prec(&self) -> u32 {
        self.principal.prec()
    }
}

/// Branch-tracked complex logarithm: principal log plus `2*pi*i*winding`.
///
/// `exp(result.value()) == z` holds to working precision for every winding.
pub fn complex_log(z: &BigComplex, winding: i64) -> Result<BranchedValue> {
    if z.is_zero() {
        return Err(Error::Domain("log of zero".into()));
    }
    Ok(BranchedValue::new(z.ln()?, winding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::big::{pi, BigComplex, BigReal};

    #[test]
    fn log_one_is_zero() {
        let l = complex_log(&BigComplex::one(256), 0).unwrap();
        assert!(l.value().is_negligible(16));
    }

    #[test]
    fn log_minus_one_is_i_pi() {
        let l = complex_log(&BigComplex::from_i64(-1, 256), 0).unwrap();
        let ipi = BigComplex::from_parts(BigReal::new(256), pi(256));
        assert!(l.value().approx_eq(&ipi));
    }

    #[test]
    fn winding_shift_adds_two_pi_i() {
        let l = complex_log(&BigComplex::one(256), 1).unwrap();
        assert!(l.value().approx_eq(&two_pi_i(256)));
    }

    #[test]
    fn exp_of_log_recovers_input() {
        let z = BigComplex::from_f64(-2.25, 3.5, 256);
        for k in [-2i64, 0, 3] {
            let l = complex_log(&z, k).unwrap();
            assert!(l.value().exp().unwrap().approx_eq(&z));
        }
    }
}
