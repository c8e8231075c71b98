//! Normal forms over Bézout domains and for linear-form data.

mod domain;
mod linear_forms;
mod smith;

pub use domain::{Bezout, DomainKind, UniPoly};
pub use linear_forms::{
    expand, linear_form, main_vars, normalize_linear_form_data, normalize_vector, pivot_index, LinearFormData, Route,
};
pub use smith::{
    bezout_gcd, bezout_vector, de_bondt, identity, leading_matrix, mat_mul, rank, transpose, weak_smith,
    weak_smith_leading, weak_smith_upper, DeBondtForm, Mat, WeakSmith,
};
