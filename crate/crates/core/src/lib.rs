//! Exact-arithmetic workbench for the affine-Virasoro algebra of type A₁.
//!
//! * [`algebra`]: structure constants, grading and subalgebras.
//! * [`catalog`]: explicitly presented weight modules, registered by kind.
//! * [`verma`]: truncated highest-weight modules via PBW straightening.
//! * [`analyzer`]: window-based linear algebra on modules given by action matrices.

pub mod algebra;
pub mod analyzer;
pub mod catalog;
pub mod linalg;
pub mod scalar;
pub mod verma;

pub use algebra::{bracket, jacobi_defect, AlgebraSpec, Family, Generator, LieElement};
pub use catalog::{Label, ModuleSpec, ModuleVector};
pub use linalg::Matrix;
pub use scalar::Scalar;
