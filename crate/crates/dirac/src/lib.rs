//! Dense matrix model of the cubic Dirac operator on the `V_λ`-isotypic
//! components of `L²(G) ⊗ S ⊗ U_{μ+ρ}`, for groups of rank at most two.

pub mod clifford;
pub mod dirac;
pub mod error;
pub mod exact;
pub mod lie;
pub mod rep;

pub use clifford::{gamma_map, CliffordModel};
pub use dirac::{
    cubic_dirac_matrix, kernel_report, verify_square, DiracMatrix, DiracModel, KernelEntry, KernelInfo,
    KernelReport, SquareReport,
};
pub use error::{Error, Result};
pub use lie::LieModel;
pub use rep::{build_irrep_matrices, MatrixRep};
