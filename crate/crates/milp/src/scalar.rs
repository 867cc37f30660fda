use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type the model and solvers are generic over: `f32` or `f64`
/// (anything float-like with the conversions and formatting the text
/// formats need).
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Sum + Default + 'static
{
    /// Conversion from an `f64` literal; panics only on values outside the
    /// type's range, which never happens for the constants used here.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("scalar conversion out of range")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Sum + Default + 'static
{
}
