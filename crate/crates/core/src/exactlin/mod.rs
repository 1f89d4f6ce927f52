//! Exact linear algebra over the rationals.

mod blocks;
mod echelon;
mod scalar;
mod sparse;

pub use blocks::{block_image, block_kernel, block_rank, Blocks};
pub use echelon::{
    column_space, image_basis, kernel_basis, rank, row_space, solve, Coordinatizer, Echelon,
    Subspace,
};
pub use scalar::{ParseScalarError, Scalar};
pub use sparse::{SparseMatrix, SparseVec};
