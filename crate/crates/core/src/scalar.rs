//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar (`f32` or `f64`) together with the numerical
/// tolerances appropriate to its precision.
///
/// The `f64` tolerances are the contract values used throughout the crate;
/// the `f32` ones are scaled to single precision so the same code paths stay
/// usable there.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Entrywise tolerance for Hermiticity, trace and completeness checks.
    fn tol_entry() -> Self;
    /// Most negative eigenvalue still treated as numerical PSD noise.
    fn tol_psd() -> Self;
    /// Threshold below which a sum of square-rooted eigenvalues counts as degenerate.
    fn tol_degenerate() -> Self;
    /// Threshold for eigenvalue pair sums and closed-form denominators.
    fn tol_pair() -> Self;

    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f64 {
    fn tol_entry() -> Self {
        1e-12
    }
    fn tol_psd() -> Self {
        1e-10
    }
    fn tol_degenerate() -> Self {
        1e-12
    }
    fn tol_pair() -> Self {
        1e-14
    }
}

impl Real for f32 {
    fn tol_entry() -> Self {
        1e-5
    }
    fn tol_psd() -> Self {
        1e-5
    }
    fn tol_degenerate() -> Self {
        1e-6
    }
    fn tol_pair() -> Self {
        1e-7
    }
}
