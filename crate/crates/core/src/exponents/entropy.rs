use crate::error::{Error, Result};

/// Base of the symmetric quantum hypercube DP, `O*(1.81691^n)`.
pub const SYMMETRIC_DP_BASE: f64 = 1.81691;

/// Precalculation fraction at which the layered DP matches the symmetric one.
pub const SYMMETRIC_LAMBDA: f64 = 0.28448;

/// `log2(1.81691)`.
pub fn symmetric_exponent() -> f64 {
    SYMMETRIC_DP_BASE.log2()
}

/// `H(ε) = −ε log2 ε − (1 − ε) log2(1 − ε)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!(
            "entropy argument {eps} outside [0, 1]"
        )));
    }
    Ok(be(eps))
}

/// Unchecked entropy; arguments are clamped into `[0, 1]`.
#[inline]
pub(crate) fn be(eps: f64) -> f64 {
    if eps <= 0.0 || eps >= 1.0 {
        0.0
    } else {
        -(eps * eps.log2() + (1.0 - eps) * (1.0 - eps).log2())
    }
}
