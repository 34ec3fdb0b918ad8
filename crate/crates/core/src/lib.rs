//! A graded commutative algebra kernel over `k[x_1..x_n]` and its
//! homogeneous quotients.

pub mod cohomology;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod invariants;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod vector;

pub use error::{AlgebraError, Result};
pub use field::{FieldSpec, Scalar};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::{Ring, RingContext};
pub use vector::Vector;
