//! Exact Poisson, logarithmic Poisson and logarithmic de Rham cohomology of
//! polynomial Poisson algebras with a coordinate divisor.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`]: sparse polynomials over ℚ.
//! * [`poisson`]: brackets, Jacobi checks, Hamiltonians, the logarithmic
//!   principal test.
//! * [`logforms`]: logarithmic one-forms, `H̃`, the bracket `[-,-]_s`, the
//!   log-symplectic test and the extension bracket on `A ⊕ Ω_A(log I)`.
//! * [`complex`]: one Lie–Rinehart cochain differential for all three
//!   complexes, and the chain map `H̃`.
//! * [`cohomology`]: filtered slice ranks, cohomology tables, primitives.
//! * [`problem`]: JSON problem documents and the reports behind the CLI.
//! * [`reference`]: the bundled examples and their closed-form differentials.
//! * [`selftest`]: seeded randomized identity checks.

pub mod cohomology;
pub mod complex;
pub mod linalg;
pub mod logforms;
pub mod poisson;
pub mod poly;
pub mod problem;
pub mod reference;
pub mod selftest;
