//! Exact linear algebra over a [`Field`](crate::field::Field).

mod echelon;
mod matrix;
mod sparse;

pub use echelon::{
    complement_indices, kernel, rank, rank_kernel_image, solve, Echelon, RankKernelImage, Reduction,
};
pub use matrix::Matrix;
pub use sparse::{Accumulator, SparseVec};

/// Kronecker tensor of two matrices (re-exported as a free function for symmetry
/// with the other operations).
pub fn kronecker_tensor<F: crate::field::Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.kronecker(b)
}
