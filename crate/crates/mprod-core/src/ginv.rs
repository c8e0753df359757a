//! Tensor-level generalized inverses under the M-product.
//!
//! Every inverse is computed slice-wise in the transform domain and folded
//! back once. The GD inverse is not unique; the computed representative uses
//! the canonical nilpotent-block choice from [`crate::kernels`], while the
//! verification routines in [`crate::laws`] accept arbitrary candidates.

use crate::error::{MprodError, Result};
use crate::exec;
use crate::kernels::{
    self, CoreNilpotentFactors, ToleranceConfig,
};
use crate::tensor::{
    inverse_transform, transform, CMatrix, Tensor3, TransformMatrix, TransformedTensor,
};

/// The three inverse families built on the GD inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseFamily {
    Gd,
    Gdmp,
    GdStar,
}

impl InverseFamily {
    pub fn name(self) -> &'static str {
        match self {
            InverseFamily::Gd => "gd",
            InverseFamily::Gdmp => "gdmp",
            InverseFamily::GdStar => "gdstar",
        }
    }
}

/// Slice-wise core-nilpotent decomposition of a square tensor.
#[derive(Clone, Debug)]
pub struct TensorCoreNilpotent {
    /// The basis tensor: transformed slice i of `p` is the slice-level basis
    /// `P⁽ⁱ⁾`.
    pub p: Tensor3,
    /// Per-slice factors in the transform domain.
    pub factors: Vec<CoreNilpotentFactors>,
    /// Tensor index: the maximum slice index.
    pub k: usize,
}

impl TensorCoreNilpotent {
    /// Reassembles the tensor from its factors.
    pub fn reconstruct(&self, m: &TransformMatrix) -> Result<Tensor3> {
        let slices = self.factors.iter().map(|f| f.reconstruct()).collect();
        inverse_transform(&TransformedTensor::new(slices)?, m)
    }
}

fn require_square(a: &Tensor3, what: &str) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(MprodError::DimensionMismatch(format!(
            "{what} needs square slices, got {:?}",
            a.dims()
        )));
    }
    Ok(())
}

fn slice_context(idx: usize, e: MprodError) -> MprodError {
    match e {
        MprodError::NumericalFailure(msg) => {
            MprodError::NumericalFailure(format!("transformed slice {idx}: {msg}"))
        }
        MprodError::ContractViolation(msg) => {
            MprodError::ContractViolation(format!("transformed slice {idx}: {msg}"))
        }
        other => other,
    }
}

/// Transforms `a` and zeroes numerically-negligible slices.
///
/// A transformed slice whose whole mass sits at round-off scale relative to
/// the largest slice is the zero slice of the algebra. Without the clamp its
/// junk singular values (≈ eps·‖A‖) pass every slice-local relative rank
/// test, get inverted into O(1/eps) noise, and the inverse transform then
/// smears that noise across all slices of the result.
fn transform_clamped(
    a: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<TransformedTensor> {
    let mut ah = transform(a, m)?;
    let scale = ah.slices().iter().map(|s| s.norm()).fold(0.0, f64::max);
    let floor = tol.rank_tol_factor * (a.nrows().max(a.ncols()) as f64) * scale;
    for s in &mut ah.slices {
        if s.norm() <= floor {
            s.fill(crate::tensor::czero());
        }
    }
    Ok(ah)
}

/// Applies a matrix kernel to every transformed slice and folds back.
fn slicewise<F>(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig, f: F) -> Result<Tensor3>
where
    F: Fn(usize, &CMatrix) -> Result<CMatrix> + Sync + Send,
{
    let ah = transform_clamped(a, m, tol)?;
    let slices = exec::try_map_depth(ah.depth(), |k| f(k, ah.slice(k)))?;
    inverse_transform(&TransformedTensor::new(slices)?, m)
}

/// Tensor index: the maximum matrix index over transformed slices.
pub fn tensor_index(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig) -> Result<usize> {
    require_square(a, "tensor index")?;
    let ah = transform_clamped(a, m, tol)?;
    let idx = exec::map_depth(ah.depth(), |k| kernels::matrix_index(ah.slice(k), tol));
    Ok(idx.into_iter().max().unwrap_or(0))
}

/// Slice-wise core-nilpotent decomposition in the transform domain.
pub fn tensor_core_nilpotent(
    a: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<TensorCoreNilpotent> {
    require_square(a, "core-nilpotent decomposition")?;
    let ah = transform_clamped(a, m, tol)?;
    let factors = exec::try_map_depth(ah.depth(), |k| {
        kernels::core_nilpotent_decompose(ah.slice(k), tol).map_err(|e| slice_context(k, e))
    })?;
    let p_slices = factors.iter().map(|f| f.p.clone()).collect();
    let p = inverse_transform(&TransformedTensor::new(p_slices)?, m)?;
    let k = factors.iter().map(|f| f.k).max().unwrap_or(0);
    Ok(TensorCoreNilpotent { p, factors, k })
}

/// Moore-Penrose inverse; works for rectangular slices.
pub fn mp_inverse(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig) -> Result<Tensor3> {
    slicewise(a, m, tol, |_, s| Ok(kernels::mp_inverse_matrix(s, tol)))
}

/// Drazin inverse of a square tensor.
pub fn drazin_inverse(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig) -> Result<Tensor3> {
    require_square(a, "Drazin inverse")?;
    slicewise(a, m, tol, |k, s| {
        kernels::matrix_drazin_inverse(s, tol).map_err(|e| slice_context(k, e))
    })
}

/// The canonical GD inverse of a square tensor.
pub fn gd_inverse(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig) -> Result<Tensor3> {
    require_square(a, "GD inverse")?;
    slicewise(a, m, tol, |k, s| {
        kernels::matrix_gd_inverse(s, tol).map_err(|e| slice_context(k, e))
    })
}

/// GDMP inverse: `A^gd ⋆ A ⋆ A⁺`, composed slice-wise in the transform domain.
pub fn gdmp_inverse(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig) -> Result<Tensor3> {
    require_square(a, "GDMP inverse")?;
    slicewise(a, m, tol, |k, s| {
        let gd = kernels::matrix_gd_inverse(s, tol).map_err(|e| slice_context(k, e))?;
        Ok(gd * s * kernels::mp_inverse_matrix(s, tol))
    })
}

/// GD-Star inverse: `A^gd ⋆ A ⋆ A^H`, composed slice-wise in the transform
/// domain.
pub fn gdstar_inverse(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig) -> Result<Tensor3> {
    require_square(a, "GD-Star inverse")?;
    slicewise(a, m, tol, |k, s| {
        let gd = kernels::matrix_gd_inverse(s, tol).map_err(|e| slice_context(k, e))?;
        Ok(gd * s * s.adjoint())
    })
}

/// Two-sided M-product inverse; every transformed slice must be invertible.
pub fn tensor_inverse(a: &Tensor3, m: &TransformMatrix, tol: &ToleranceConfig) -> Result<Tensor3> {
    require_square(a, "tensor inverse")?;
    slicewise(a, m, tol, |k, s| {
        let n = s.nrows();
        if kernels::numerical_rank(s, tol) < n {
            return Err(MprodError::SingularSlice {
                slice: k,
                reason: "numerical rank below full".into(),
            });
        }
        s.clone().try_inverse().ok_or(MprodError::SingularSlice {
            slice: k,
            reason: "inversion failed".into(),
        })
    })
}

/// Dispatches to the family's computation.
pub fn family_inverse(
    a: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
    kind: InverseFamily,
) -> Result<Tensor3> {
    match kind {
        InverseFamily::Gd => gd_inverse(a, m, tol),
        InverseFamily::Gdmp => gdmp_inverse(a, m, tol),
        InverseFamily::GdStar => gdstar_inverse(a, m, tol),
    }
}
