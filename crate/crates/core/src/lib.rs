//! Exact formal Bell transform of arithmetic functions.
//!
//! A driver `g` is mapped to the power series
//! `F_g(x) = exp(-sum g(n) x^n / n) = prod (1 - x^m)^{β(m)}` with
//! `β(m) = (μ * g)(m) / m`. Coefficients can be produced along three
//! independent routes (a Newton-type recurrence, complete Bell polynomials
//! and the Euler product), which agree exactly over the rationals.
//!
//! ```
//! use bellkit::arithfn::{builtin_driver, Driver};
//! use bellkit::bell::{coefficients, TransformPath};
//! use bellkit::scalar::format_rational;
//!
//! let Driver::Exact(g) = builtin_driver("constant_c", &[bellkit::scalar::int(-1)], None).unwrap()
//! else { unreachable!() };
//! // constant driver -1 gives 1/(1 - x)
//! let a = coefficients(TransformPath::Product, &g, 4).unwrap();
//! let shown: Vec<String> = a.values().iter().map(format_rational).collect();
//! assert_eq!(shown, ["1", "1", "1", "1", "1"]);
//! ```

pub mod arithfn;
pub mod bell;
pub mod congruence;
pub mod poly;
pub mod polyfam;
pub mod scalar;
pub mod series;

pub use arithfn::{builtin_driver, ArithError, ArithmeticFunction, Driver};
pub use bell::{BellError, BellExponents, Coefficients, TransformPath};
pub use poly::Polynomial;
pub use scalar::Rational;
pub use series::{CoefficientRing, PowerSeries};
