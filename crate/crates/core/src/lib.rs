pub mod algebra;
pub mod catalog;
pub mod complexes;
pub mod derived;
pub mod error;
pub mod field;
pub mod gluing;
pub mod hochschild;
pub mod kernels;
pub mod linalg;
pub mod module;
pub mod quiver;

pub use algebra::{Algebra, BasisElement, Element};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Q};
pub use quiver::{build_path_algebra, Presentation, Quiver, Relation};
