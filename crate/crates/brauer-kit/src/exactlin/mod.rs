//! Exact linear algebra over Z and Q: matrices, normal forms, lattices,
//! quotients, duals, and signatures. Everything downstream reduces to the
//! primitives in this module.

pub mod group;
pub mod hnf;
pub mod lattice;
pub mod mat;
pub mod quadform;
pub mod snf;

pub use group::FinAbGroup;
pub use hnf::{hnf, hnf_basis, integer_kernel, row_rank};
pub use lattice::{dual_lattice, QuotientPresentation, ZLattice};
pub use mat::{int, rat, Int, IntMat, QMat, Rat};
pub use quadform::{congruence_diagonalize, exact_signature, is_negative_definite, is_positive_definite};
pub use snf::{snf, Snf};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("basis rows are linearly dependent")]
    DependentBasis,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("pairing is degenerate on the lattice span")]
    DegeneratePairing,
    #[error("lattice is not contained in the target lattice")]
    NotASublattice,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}
