//! Gröbner basis engines for computing the nondegenerate locus of a
//! polynomial system over a prime field.

pub mod field;
pub mod format;
mod geobucket;
pub mod ideal;
pub mod monomial;
pub mod nondeg;
pub mod poly;
pub mod ring;
pub mod rng;
pub mod sig;
pub mod systems;
pub mod tree;

pub use field::{OpCounts, PrimeField, Scalar};
pub use ideal::{Codimension, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::{Ring, RingError, DEFAULT_PRIME};
