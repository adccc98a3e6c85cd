use crate::{Error, Result};

/// Bisection on a bracket where `f(lo)` and `f(hi)` have opposite signs.
///
/// Stops once the bracket width falls under `rel_width * max(|lo|, |hi|)`
/// or `f` hits zero exactly. Returns the endpoint with the smaller residual.
pub(crate) fn bisect<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    rel_width: f64,
    max_iter: usize,
    what: &'static str,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::BracketFailure { what, lo, hi });
    }
    for _ in 0..max_iter {
        if (hi - lo).abs() <= rel_width * lo.abs().max(hi.abs()) {
            return Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi });
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            // width is at the resolution of f64
            return Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi });
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Err(Error::NonConvergence {
        what,
        iterations: max_iter,
    })
}
