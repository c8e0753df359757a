//! M-product algebra for complex order-3 tensors, with the generalized
//! inverses built on top of it.
//!
//! A tensor `A` of shape `η1×η2×η3` is carried as its frontal slices. An
//! invertible matrix `M` of size `η3` defines the transform
//! `L(A) = A ×₃ M` (a mode-3 product along tubes); the M-product of two
//! tensors multiplies their transformed slices pairwise and maps back:
//!
//! ```text
//! A ⋆ B = L⁻¹( L(A) △ L(B) )
//! ```
//!
//! where `△` is the facewise (slice-by-slice) matrix product. Everything
//! else — Moore-Penrose, Drazin, GD, GDMP, and GD-Star inverses, their
//! verification systems, product/additive laws, and the attached linear
//! solvers — reduces to matrix computations on the transformed slices.
//!
//! Modules:
//! - [`tensor`]: the algebra itself (transforms, products, powers).
//! - [`kernels`]: per-slice matrix kernels (rank, index, core-nilpotent
//!   decomposition, the inverse kernels).
//! - [`ginv`]: tensor-level inverses, computed slice-wise.
//! - [`laws`]: residual reports for definitions, characterizations, and the
//!   product/additive law implications.
//! - [`solver`]: the consistent multilinear systems and their solution
//!   families.
//!
//! Slice-level work runs in parallel via rayon when the default `parallel`
//! feature is enabled; disabling it gives a dependency-light sequential
//! build with identical results.

pub mod error;
mod exec;
pub mod ginv;
pub mod kernels;
pub mod laws;
pub mod solver;
mod svd;
pub mod tensor;

pub use error::{MprodError, Result};
pub use ginv::InverseFamily;
pub use kernels::ToleranceConfig;
pub use laws::{LawOutcome, ResidualEntry, ResidualReport};
pub use tensor::{CMatrix, Tensor3, TransformMatrix, TransformedTensor};
