use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_traits::Float;

/// Floating-point scalar: f32 or f64.
///
/// Every asymptotic and thermodynamic kernel in this crate is generic over
/// `Real`; exact partition counting is not (it works on big integers).
pub trait Real: Float + AddAssign + Debug + Display + 'static {}

impl<T> Real for T where T: Float + AddAssign + Debug + Display + 'static {}

/// Convert an `f64` literal into the working scalar type.
#[inline]
pub(crate) fn cst<R: Real>(x: f64) -> R {
    R::from(x).expect("constant must be representable in the scalar type")
}
