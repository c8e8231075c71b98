//! Structural decompositions of polynomials with small Hessian rank, each
//! checked by exact reconstruction.

mod decomposition;
mod gradrel;
mod hessian;
mod pencil;
mod reduce;

pub use decomposition::{Decomposition, Form};
pub use gradrel::{
    classify_gradrel, classify_small_rank, classify_small_rank_with, column_space_basis, linear_part,
    DEFAULT_RELATION_DEGREE,
};
pub use hessian::{classify_hessian, small_rank_check, transform_polynomial, ApexReport, HessianClassification};
pub use pencil::{inverse_l, pencil_normalize, PencilNormalization, RfMatrix};
pub use reduce::{db_reduce, Reduction, MAX_TRIES};
