//! Exact regularized values of divergent power sums `Σ n^k a_n`.
//!
//! A sequence is given by its rational generating function `f(z) = Σ a_n z^n`.
//! When `f` has at most one simple pole on the unit circle (and none at 1 or
//! inside the disc), the regularized sum is `(1/i^k) (d/dt)^k f(e^{it})` at
//! `t = 0`, computed here with exact truncated Taylor jets over ℚ(i).
//!
//! ```
//! use divsum::{genfun::RationalGF, summation};
//!
//! let f = RationalGF::alternating(); // 1 - 2 + 3 - 4 + ...
//! let r = summation::regularized_sum(&f, 1).unwrap();
//! assert_eq!(r.value.to_string(), "1/4");
//! assert_eq!(summation::natural_sum(1).unwrap().value.to_string(), "-1/12");
//! ```

pub mod cli;
pub mod error;
pub mod exact;
pub mod genfun;
pub mod jet;
pub mod lab;
pub mod special;
pub mod summation;

pub use error::{Error, Result};
pub use exact::{ComplexQ, Poly, Rational, Scalar};
pub use genfun::RationalGF;
pub use jet::Jet;
pub use summation::{SumOptions, SummationResult};
