//! The Appell instance on the triangle: its equation, moments, monic
//! series, tabulated recurrence matrices and two non-monic bases.

pub mod appell;
pub mod golden;
pub mod nonmonic;

pub use appell::{
    appell_case, appell_pde, appell_weight, moment, monic_appell_series, monic_appell_vector,
    orthogonality_blocks, AppellParams, MomentFunctional,
};
pub use golden::{golden_matrices, GoldenMatrix};
pub use nonmonic::{
    connection_f, connection_k, f_vector, jacobi, koornwinder, koornwinder_vector, nonmonic_f,
};
