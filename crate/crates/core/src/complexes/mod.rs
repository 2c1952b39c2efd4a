//! Complexes of vector spaces, modules and projective modules.

mod algmatrix;
mod bar;
mod hom;
mod modcomplex;
mod proj;
mod resolution;
mod tensor;
mod vector;

pub use algmatrix::AlgMatrix;
pub use bar::{bar_resolution, cyclic_chain_complex};
pub use hom::{ext, ext_basis_maps, ext_proj, HomComplex};
pub use modcomplex::ModuleComplex;
pub use proj::{linear_map, ChainMap, Multiplicities, ProjComplex};
pub use resolution::{global_dimension, minimal_resolution, Resolution};
pub use tensor::{
    bimodule_tensor_left, kernel_apply, kernel_tensor, tensor_left_module, tensor_right_module,
};
pub use vector::{CohomologyBasis, Graded, VectorComplex};
