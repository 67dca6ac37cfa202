//! Exact construction and verification of isomorphisms between induced
//! modules of the symmetric group, cyclic group-ring modules `K[S_m] z`, and the
//! graded pieces `R_μ(k;l)` of Springer modules.

pub mod arith;
pub mod error;
pub mod group;
pub mod poly;
pub mod rep;
pub mod springer;
pub mod tableaux;

pub use arith::{Cyclotomic, ExactMatrix, Rational};
pub use error::{Error, Result};
pub use group::{GroupAlgebraElement, Permutation};
pub use poly::{Monomial, MultiPoly};
pub use tableaux::{Partition, Tableau};
