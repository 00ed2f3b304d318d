//! Small shared float helpers.

use num_complex::Complex64;

/// Principal Log(1 + w) evaluated from w itself.
///
/// For small |w| this avoids rounding the argument at ulp(1), which would
/// otherwise bias every per-step log by ~1e-16 and drift linearly over long
/// recursions. Falls back to the plain log away from 1, where forming 1 + w
/// loses nothing (and w² could overflow).
pub(crate) fn ln_1p_complex(w: Complex64) -> Complex64 {
    if w.norm_sqr() > 0.25 {
        return (Complex64::ONE + w).ln();
    }
    // |1+w|² − 1 = 2·Re w + |w|², each term relatively accurate.
    Complex64::new(
        0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p(),
        w.im.atan2(1.0 + w.re),
    )
}
