//! Exact computations with graded Lie superalgebras: Cartan prolongations,
//! Spencer cochain complexes and the module structure of their cohomology.
//!
//! Everything is done over the rationals with exact arithmetic. The layers are
//! stacked bottom-up:
//!
//! - [`exactlin`]: sparse rational linear algebra (ranks, kernels, canonical subspaces)
//! - [`superalg`]: superspaces, Koszul-signed tensor constructions, matrix Lie superalgebras
//! - [`grading`]: depth-one gradings, producing the pair `(g_{-1}, g_0)`
//! - [`prolong`]: the prolongation tower `g_1, g_2, ...`
//! - [`spencer`]: cochain spaces, differentials and cohomology
//! - [`repmod`]: weights, highest vectors, composition series and splitting

pub mod exactlin;
pub mod grading;
pub mod prolong;
pub mod repmod;
pub mod spencer;
pub mod superalg;

pub use exactlin::{Scalar, SparseMatrix, SparseVec, Subspace};
pub use superalg::Parity;
