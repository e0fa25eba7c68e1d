//! Simple transitivity of a given morphism and existence of simply transitive
//! actions for a pair of algebras.

mod check;
mod feasibility;
mod pair;
mod roots;

pub use check::{
    check_simply_transitive, compute_u, NilpotentHull, Obstruction, SpectrumCheck, TransitivityReport, Verdict,
    WitnessSummary,
};
pub use feasibility::{commuting_pair_feasible, derivation_spectrum_feasible, joint_spectra, spectrum_match};
pub use pair::{canonical_witness, check_pair, torus_action, witness_spectrum_checks};
pub use roots::{rational_roots_and_quadratics, Root};
