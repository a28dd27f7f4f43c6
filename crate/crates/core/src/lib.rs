//! Bilinear pairings on elliptic curves over finite fields.

pub mod curve;
pub mod field;
pub mod function_field;
pub mod io;
pub mod miller;
pub mod ntheory;
pub mod optimal;
pub mod pairings;
pub mod presets;
pub mod rng;
pub mod twist;
pub mod verify;

pub use curve::{Curve, CurveError, Line, Point};
pub use field::{Fe, Field, FieldError};
