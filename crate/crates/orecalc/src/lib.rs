//! Exact computer algebra for noncommutative algebras presented as (iterated)
//! Ore extensions.
//!
//! The kernel works over the Gaussian rationals Q(i), so every algebraic
//! identity — normal ordering, commutation formulas, q-power laws — is checked
//! exactly. Floating point enters only when weighted seminorm *sums* are
//! evaluated, since sums of square roots are irrational in general.
//!
//! The main pieces:
//!
//! - [`coeff`]: exact scalars a+bi with rational a, b; unit-modulus q lives here.
//! - [`expr`]: a small expression language for noncommutative polynomials
//!   (`y*x`, `K^-2*F*E`, `(3/5+4/5i)*E*F - F*E`).
//! - [`algebra`]: presentations (generators + rewrite rules), the normal-ordering
//!   engine, and exact arithmetic on PBW-basis elements. Built-ins include the
//!   free algebra, the quantum plane, the Jordanian plane, a solvable enveloping
//!   algebra, U_q(sl(2)), and the Weyl algebra.
//! - [`ore`]: the Ore-extension calculus — S_{n,k} operators, the expansion of
//!   z^n·r, the iterated tower for U_q(sl(2)), and truncated series arithmetic.
//! - [`seminorm`]: the weighted seminorm families attached to these algebras,
//!   with sampled verification of submultiplicativity, stability, and
//!   equivalence bounds.
//! - [`rep`]: finite-dimensional sl(2) irreducibles and the truncated
//!   matrix-product envelope map for the q = 1 case.
//! - [`cli`]: the command-line surface and the named verification suites.
//!
//! See the crate examples (`cargo run --example <name>`) for a tour of each
//! capability.

pub mod algebra;
pub mod cli;
pub mod coeff;
pub mod expr;
pub mod ore;
pub mod rep;
pub mod seminorm;

pub use algebra::{BuiltinName, LinearMap, Monomial, PBWElement, Presentation};
pub use coeff::GaussianRational;
pub use expr::FreeTerm;
pub use ore::{OreData, TruncatedSeries};
pub use seminorm::{Family, SeminormSpec, VerificationReport};
