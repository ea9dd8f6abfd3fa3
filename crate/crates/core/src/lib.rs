//! Exact arithmetic for plane covers `F(T, U) = 0` over `Q` or a quadratic
//! field, with `t` the `T`-coordinate of the cover.
//!
//! The crate computes geometric ramification data of the cover (resultant,
//! critical polynomial, ramification profiles), predicts arithmetic
//! ramification of fiber fields at almost all primes, validates the
//! predictions against an independent p-adic oracle, and runs the
//! field-growth experiment at desk scale.
//!
//! Everything is exact: rationals, quadratic surds, and valuations are
//! computed without rounding. Floating point appears only inside interval
//! refinement used to decide signs of real algebraic numbers, and there it
//! is plain rational interval arithmetic.

pub mod cover;
pub mod dz;
pub mod field;
pub mod ideal;
pub mod intfact;
pub mod io;
pub mod padic;
pub mod poly;
pub mod ram;
pub mod rat;
pub mod surd;

pub use cover::{CoverError, CriticalData, PlaneCover};
pub use field::{FieldElement, NumberField, SizeValue};
pub use ideal::{IdealRep, PrimePlace, UnitData};
pub use poly::{BiPoly, Poly};
pub use rat::{Int, Rat};

/// Univariate polynomial with rational coefficients.
pub type QPoly = Poly<Rat>;
/// Univariate polynomial with coefficients in the base field `K`.
pub type KPoly = Poly<FieldElement>;
