//! Order-by-order solution of series equations.
//!
//! `series_solve` drives a residual functional to zero one coefficient at
//! a time: at each step the lowest surviving residual coefficient is
//! killed by an affine (Newton) correction to the unknown series. The
//! caller supplies an initial series carrying the correct leading
//! behavior (for instance `-t^2` for a double zero).

use crate::num::big::BigComplex;
use crate::num::series::Series;
use crate::{Error, Result};

/// Tolerance margin (bits below working precision) under which a residual
/// coefficient counts as solved.
const SOLVE_MARGIN: u32 = 24;

/// Solve `residual(s) = 0` for a series `s` with `residual` analytic in `s`.
///
/// Returns a series whose residual is `O(t^{order+1})` (all tracked
/// residual coefficients negligible). Fails with a singular-expansion
/// error when the linearization in the next unknown coefficient is not
/// invertible; the caller should substitute `t -> t^k` and retry.
pub fn series_solve<F>(residual: F, initial: &Series, order: i64) -> Result<Series>
where
    F: Fn(&Series) -> Result<Series>,
{
    let prec = initial.prec();
    let mut s = initial.truncate(order);
    // pad the unknown to full order so products keep enough terms
    s = &s + &Series::zero(order, prec);

    let mut shift: Option<i64> = None;
    let mut last_k = i64::MIN;

    for _ in 0..(4 * (order.max(1) as usize) + 16) {
        let r = residual(&s)?;
        let scale = r.max_abs();
        let e = match lowest_significant(&r, &scale) {
            None => return Ok(s),
            Some(e) if e > order.min(r.order()) => return Ok(s),
            Some(e) => e,
        };
        // exponent of the unknown coefficient that controls residual order e
        let k = match shift {
            Some(d) => e - d,
            None => {
                // probe: a unit bump at exponent e must move some residual
                // coefficient; its position fixes the linearization shift
                let probe = probe_shift(&residual, &s, e, order)?;
                shift = Some(probe);
                e - probe
            }
        };
        if k <= last_k {
            return Err(Error::Singular(format!(
                "no progress at t^{k}; linearization signals a branch point"
            )));
        }
        if k > order {
            return Ok(s);
        }

        // Newton on the scalar coefficient at exponent k
        let mut solved = false;
        let mut r_cur = r;
        for _ in 0..6 {
            let bump = Series::monomial(BigComplex::one(prec), k, order);
            let d = &residual(&(&s + &bump))? - &r_cur;
            let target = k + shift.unwrap();
            if target > d.order() {
                return Err(Error::Singular(format!(
                    "linearization at t^{k} lost to truncation"
                )));
            }
            let lambda = d.coeff(target)?;
            if lambda.is_negligible(SOLVE_MARGIN) {
                return Err(Error::Singular(format!(
                    "non-invertible linearization at t^{k}"
                )));
            }
            let x = -&(&r_cur.coeff(e)? / &lambda);
            s = &s + &Series::monomial(x, k, order);
            r_cur = residual(&s)?;
            let c = r_cur.coeff(e)?;
            if is_solved(&c, &scale) {
                solved = true;
                break;
            }
        }
        if !solved {
            return Err(Error::Singular(format!(
                "coefficient at t^{k} did not converge"
            )));
        }
        last_k = k;
    }
    Err(Error::Singular("iteration budget exhausted".into()))
}

fn is_solved(c: &BigComplex, scale: &crate::num::big::BigReal) -> bool {
    if c.is_negligible(SOLVE_MARGIN) {
        return true;
    }
    if scale.is_zero() {
        return false;
    }
    // relative to the residual's overall size
    let rel = &c.abs() / scale;
    rel.is_finite() && rel.is_negligible(SOLVE_MARGIN)
}

fn lowest_significant(r: &Series, scale: &crate::num::big::BigReal) -> Option<i64> {
    let lo = r.val_bound();
    for e in lo..=r.order() {
        let c = r.coeff(e).ok()?;
        if !is_solved(&c, scale) {
            return Some(e);
        }
    }
    None
}

fn probe_shift<F>(residual: &F, s: &Series, e: i64, order: i64) -> Result<i64>
where
    F: Fn(&Series) -> Result<Series>,
{
    let prec = s.prec();
    let base = residual(s)?;
    // try bump exponents from e downwards to find the one that acts at e
    for k in (0..=e.max(0)).rev() {
        let bump = Series::monomial(BigComplex::one(prec), k, order);
        let d = &residual(&(s + &bump))? - &base;
        if let Some(v) = d.valuation(SOLVE_MARGIN) {
            if v <= e {
                return Ok(v - k);
            }
        }
    }
    Err(Error::Singular(
        "no unknown coefficient influences the leading residual".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::big::BigReal;

    fn c(x: f64) -> BigComplex {
        BigComplex::from_f64(x, 0.0, 256)
    }

    /// s(1-s)(1+t) = -t^2, the first ideal-point relation; by hand the
    /// fixed-point map s <- -t^2/((1-s)(1+t)) gives s = -t^2 + t^3 + O(t^4).
    #[test]
    fn gluing_case_one() {
        let order = 6;
        let one = Series::one(order, 256);
        let t = Series::t(order, 256);
        let t2 = Series::monomial(c(1.0), 2, order);
        let f = |s: &Series| -> crate::Result<Series> {
            let a = s * &(&one - s);
            let lhs = &a * &(&one + &t);
            Ok(&lhs + &t2)
        };
        let initial = Series::monomial(c(-1.0), 2, order);
        let s = series_solve(f, &initial, order).unwrap();
        assert!(s.coeff(2).unwrap().approx_eq(&c(-1.0)));
        assert!(s.coeff(3).unwrap().approx_eq(&c(1.0)));
        // residual check
        let r = f(&s).unwrap();
        assert!(r.max_abs() < BigReal::from_f64(1e-60, 256) || r.valuation(24).is_none() || r.valuation(24).unwrap() > order);
    }

    /// The identity equation s = t from any starting guess.
    #[test]
    fn identity_equation() {
        let order = 5;
        let t = Series::t(order, 256);
        let f = |s: &Series| -> crate::Result<Series> { Ok(&(s.clone()) - &t) };
        let s = series_solve(f, &Series::zero(order, 256), order).unwrap();
        assert!(s.coeff(1).unwrap().approx_eq(&c(1.0)));
        for k in [0i64, 2, 3, 4, 5] {
            assert!(s.coeff(k).unwrap().is_negligible(24));
        }
    }

    /// Case-2 relation s(1-s)(1-t) = -t^2: leading term -t^2 with f(0) = 1.
    #[test]
    fn gluing_case_two() {
        let order = 6;
        let one = Series::one(order, 256);
        let t = Series::t(order, 256);
        let t2 = Series::monomial(c(1.0), 2, order);
        let f = |s: &Series| -> crate::Result<Series> {
            let a = s * &(&one - s);
            let lhs = &a * &(&one - &t);
            Ok(&lhs + &t2)
        };
        let initial = Series::monomial(c(-1.0), 2, order);
        let s = series_solve(f, &initial, order).unwrap();
        assert!(s.coeff(2).unwrap().approx_eq(&c(-1.0)));
        // s = -t^2 f(t), f(0)=1: next coefficient -t^3*f'(0)... just check residual
        let r = f(&s).unwrap();
        assert!(r.valuation(24).map_or(true, |v| v > order));
    }

    /// A genuinely singular problem: s^2 = t has no series solution.
    #[test]
    fn branch_point_is_reported() {
        let order = 4;
        let t = Series::t(order, 256);
        let f = |s: &Series| -> crate::Result<Series> { Ok(&(s * s) - &t) };
        let res = series_solve(f, &Series::zero(order, 256), order);
        assert!(matches!(res, Err(Error::Singular(_))));
    }
}
