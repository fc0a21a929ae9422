//! Float math routed through `libm` so results are bit-identical with
//! and without `std`.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Fractional part, `x - trunc(x)`.
#[inline]
pub(crate) fn fract(x: f64) -> f64 {
    x - libm::trunc(x)
}
