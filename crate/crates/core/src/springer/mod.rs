//! Springer modules as graded quotients by the Tanisaki ideal.

mod groebner;
mod quotient;

pub use groebner::groebner;
pub(crate) use quotient::ModSparseMatrix;
pub use quotient::{
    tanisaki_generators, tanisaki_threshold, GradedQuotient, QuotientModule, Selection, SubmoduleBasis,
    DEFAULT_QUOTIENT_LIMIT,
};
