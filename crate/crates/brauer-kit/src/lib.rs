//! Exact computation of invariant Brauer groups of complex tori and CM
//! abelian varieties from lattice data.

pub mod cmfields;
pub mod constructions;
pub mod exactlin;
pub mod invcoh;
pub mod torus;

pub use cmfields::{AlgebraLattice, EtaleAlgebra};
pub use constructions::ConstructionData;
pub use exactlin::{FinAbGroup, Int, IntMat, QMat, Rat, ZLattice};
pub use invcoh::{EquivariantMap, InvolutionModule, TateCohomology};
pub use torus::{FormLattice, RationalTorus};
