//! Exact and numeric computer algebra for q-series identities in
//! q-commuting and q-Heisenberg variables.
//!
//! The crate has three layers:
//!
//! * an exact coefficient field of rational functions in `v` with `q = v^2`
//!   (so `q^(1/2)` exists), alongside complex floating-point numerics
//!   ([`scalar`]);
//! * degree-truncated noncommutative series over rewriting-defined relation
//!   algebras ([`ncalg`]), one-variable power series and the q-special
//!   functions ([`series`]), and the operational representations that reduce
//!   noncommutative identities to commutative ones ([`rep`]);
//! * the analytic side: Jackson integration on q-lattices ([`jackson`]),
//!   discrete q-Hermite polynomials ([`hermite`]), the q-Fourier transform
//!   pair ([`fourier`]), and the braided-line Hopf structure ([`braided`]).
//!
//! Everything feeds the [`identities`] registry, which runs each identity
//! either exactly (zero residual in the rational-function field, up to a
//! stated truncation degree) or numerically (residual below a stated
//! tolerance on q-lattices).
//!
//! Lattice sums, sample sweeps and registry runs are data-parallel via
//! `rayon` when the `parallel` feature (default) is enabled; disabling it
//! yields a dependency-free sequential build with identical results.

pub mod error;
pub mod zint;
pub mod vpoly;
pub mod scalar;
pub mod parallel;
pub mod series;
pub mod ncalg;
pub mod rep;
pub mod jackson;
pub mod hermite;
pub mod fourier;
pub mod braided;
pub mod identities;

pub use error::{Error, Result};
pub use ncalg::{AlgebraSpec, NCElement};
pub use scalar::{BigRational, QMode, ScalarQ};
pub use series::PowerSeries;
pub use vpoly::VPoly;
