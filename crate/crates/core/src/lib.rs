//! Exact combinatorics for periods of harmonic cocycles on buildings.
//!
//! - [`coxeter`]: affine Weyl groups, growth series, Poincaré polynomials, Omega.
//! - [`period`]: sphere sizes and the alternating period series with its closed form.
//! - [`tree`]: the rank-one model, a `(q^2+1)`-regular tree carrying a `(q+1)`-regular subtree.
//! - [`residue`]: residue-field orbit checks over `F_q` inside `F_{q^2}`.
//!
//! All arithmetic is exact. Hot loops can run on rayon (feature `parallel`,
//! on by default) or sequentially, see [`exec::Exec`].

pub mod coxeter;
pub mod exact;
pub mod exec;
pub mod linalg;
pub mod period;
pub mod poly;
pub mod residue;
pub mod tree;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
