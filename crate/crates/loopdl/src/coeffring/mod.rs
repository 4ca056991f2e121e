//! Finite fields `F_{q^m}` and windowed Laurent series over them.
//!
//! ```
//! use loopdl::coeffring::{Field, LaurentElem};
//!
//! let f = Field::prime(2).unwrap();
//! let one = LaurentElem::parse(&f, "1 + O(t^3)").unwrap();
//! let d = LaurentElem::parse(&f, "1 + t").unwrap();
//! assert_eq!(one.div(&d).unwrap().to_string(), "1 + t + t^2 + O(t^3)");
//! ```

mod field;
mod laurent;
mod text;

pub use field::{Fe, Field, MAX_FIELD_SIZE};
pub use laurent::{LaurentElem, Op, Valuation, INF};
pub use text::{FieldDesc, LaurentJson};
