//! Exact-arithmetic algebra for quantity spaces: commutative scalable
//! monoids over the rationals with a finite basis, plus the integer-lattice
//! machinery for basis changes and natural-unit quotients, and a finite
//! brute-force laboratory for the abstract structure theory.
//!
//! ```
//! use qspace::{DimVector, QuantitySpace, Rational};
//!
//! let si = QuantitySpace::new(["m", "s", "kg"]).unwrap();
//! let speed = si
//!     .quantity("3/2".parse().unwrap(), DimVector::new(vec![1, -1, 0]))
//!     .unwrap();
//! let time = si
//!     .quantity(Rational::from_integer(4), DimVector::new(vec![0, 1, 0]))
//!     .unwrap();
//! let distance = speed.mul(&time).unwrap();
//! assert_eq!(distance.laurent_form(), "6 m");
//! ```

pub mod dimensions;
pub mod finite;
pub mod quantity;
pub mod quotient;
pub mod registry;
pub mod scalars;

pub use dimensions::{DimVector, IntMatrix, LatticeQuotient};
pub use quantity::{Quantity, QuantitySpace};
pub use quotient::QuotientSpace;
pub use registry::{BasisChange, UnitRegistry};
pub use scalars::{ModularElement, Rational};

pub use num_bigint;
