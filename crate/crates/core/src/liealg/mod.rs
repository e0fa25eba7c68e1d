//! Finite-dimensional Lie algebras over `Q(√d)` given by structure constants.

mod algebra;
mod derivations;
mod fingerprint;
mod io;
mod iso;
mod nilradical;
mod series;
mod subspace;

pub use algebra::{add_vec, combine, default_names, is_zero_vec, scale_vec, sub_vec, unit, BracketTerm, LieAlgebra};
pub use derivations::{derivation_space, is_derivation, leibniz_violation};
pub use fingerprint::{identify_nilpotent_dim_le4, nilpotent_fingerprint, Fingerprint, NilpotentClass};
pub use io::{AlgebraJson, ScalarText};
pub use iso::signed_permutation_isomorphism;
pub use nilradical::nilradical;
pub use series::{
    acts_nilpotently, bracket_spaces, center, centralizer, commutator_subalgebra, derived_series, is_nilpotent,
    is_solvable, lower_central_series, unit_span,
};
pub use subspace::Subspace;
