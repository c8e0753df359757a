//! Dense complex order-3 tensors, the mode-3 transform, and the M-product.
//!
//! A tensor is stored as its frontal slices `A⁽ᵏ⁾ = A(:,:,k)`. The product
//! `A ⋆ B` transforms both operands along mode 3 with an invertible matrix M,
//! multiplies matched slices, and transforms back with M⁻¹.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{MprodError, Result};
use crate::exec;

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense complex tensor of order 3, slice dims `nrows × ncols`, `depth` slices.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    slices: Vec<CMatrix>,
}

impl Tensor3 {
    /// Builds a tensor from frontal slices. All slices must share the same
    /// nonzero dimensions and there must be at least one slice.
    pub fn new(slices: Vec<CMatrix>) -> Result<Self> {
        let first = slices.first().ok_or_else(|| {
            MprodError::DimensionMismatch("tensor needs at least one frontal slice".into())
        })?;
        let (nr, nc) = (first.nrows(), first.ncols());
        if nr == 0 || nc == 0 {
            return Err(MprodError::DimensionMismatch(
                "frontal slices must be nonempty".into(),
            ));
        }
        if let Some(k) = slices.iter().position(|s| s.nrows() != nr || s.ncols() != nc) {
            return Err(MprodError::DimensionMismatch(format!(
                "slice {k} is {}x{}, expected {nr}x{nc}",
                slices[k].nrows(),
                slices[k].ncols()
            )));
        }
        Ok(Self { slices })
    }

    pub fn zeros(nrows: usize, ncols: usize, depth: usize) -> Self {
        assert!(nrows > 0 && ncols > 0 && depth > 0, "dims must be positive");
        Self {
            slices: vec![CMatrix::zeros(nrows, ncols); depth],
        }
    }

    pub fn from_fn<F>(nrows: usize, ncols: usize, depth: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize, usize) -> Complex64,
    {
        assert!(nrows > 0 && ncols > 0 && depth > 0, "dims must be positive");
        let slices = (0..depth)
            .map(|k| CMatrix::from_fn(nrows, ncols, |i, j| f(i, j, k)))
            .collect();
        Self { slices }
    }

    pub fn nrows(&self) -> usize {
        self.slices[0].nrows()
    }

    pub fn ncols(&self) -> usize {
        self.slices[0].ncols()
    }

    pub fn depth(&self) -> usize {
        self.slices.len()
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.nrows(), self.ncols(), self.depth())
    }

    pub fn slice(&self, k: usize) -> &CMatrix {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[CMatrix] {
        &self.slices
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.slices[k][(i, j)]
    }

    /// Frobenius norm over all entries.
    pub fn norm(&self) -> f64 {
        self.slices
            .iter()
            .map(|s| s.norm_squared())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Tensor3 {
        Tensor3 {
            slices: self.slices.iter().map(|s| s.map(|x| x * c)).collect(),
        }
    }

    /// Slice-wise product of raw frontal slices (no transform involved).
    pub fn facewise_product(&self, rhs: &Tensor3) -> Result<Tensor3> {
        let slices = facewise_slices(&self.slices, &rhs.slices)?;
        Ok(Tensor3 { slices })
    }
}

macro_rules! elementwise_op {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for &Tensor3 {
            type Output = Tensor3;
            fn $method(self, rhs: &Tensor3) -> Tensor3 {
                assert_eq!(self.dims(), rhs.dims(), "tensor dims must match");
                Tensor3 {
                    slices: self
                        .slices
                        .iter()
                        .zip(&rhs.slices)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
    };
}

elementwise_op!(Add, add, +);
elementwise_op!(Sub, sub, -);

/// Invertible mode-3 transform matrix with cached inverse.
///
/// Construction rejects numerically singular candidates: the smallest singular
/// value must exceed `1e-12` times the largest.
#[derive(Clone, Debug)]
pub struct TransformMatrix {
    m: CMatrix,
    m_inv: CMatrix,
    cond: f64,
}

impl TransformMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(MprodError::DimensionMismatch(format!(
                "transform matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let sv = crate::svd::singular_values(&m);
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if smin <= 1e-12 * smax {
            return Err(MprodError::SingularTransform(format!(
                "smallest singular value {smin:.3e} <= 1e-12 * largest {smax:.3e}"
            )));
        }
        let cond = smax / smin;
        let m_inv = m.clone().try_inverse().ok_or_else(|| {
            MprodError::SingularTransform("inversion failed despite rank check".into())
        })?;
        // sanity: m * m_inv must reproduce the identity to round-off, scaled by cond
        let dev = (&m * &m_inv - CMatrix::identity(m.nrows(), m.nrows()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if dev > 1e-10 * cond {
            return Err(MprodError::SingularTransform(format!(
                "inverse residual {dev:.3e} exceeds 1e-10 * condition {cond:.3e}"
            )));
        }
        Ok(Self { m, m_inv, cond })
    }

    /// Identity transform of size n: the M-product degenerates to the
    /// slice-wise matrix product.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "size must be positive");
        Self {
            m: CMatrix::identity(n, n),
            m_inv: CMatrix::identity(n, n),
            cond: 1.0,
        }
    }

    /// Normalized DFT matrix of size n (unitary); this choice reproduces the
    /// t-product up to the 1/√n normalization.
    pub fn dft(n: usize) -> Self {
        assert!(n > 0, "size must be positive");
        let scale = 1.0 / (n as f64).sqrt();
        let m = CMatrix::from_fn(n, n, |j, k| {
            let theta = -2.0 * std::f64::consts::PI * ((j * k) as f64) / (n as f64);
            Complex64::from_polar(scale, theta)
        });
        let m_inv = m.adjoint();
        Self { m, m_inv, cond: 1.0 }
    }

    pub fn size(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &CMatrix {
        &self.m_inv
    }

    pub fn condition_estimate(&self) -> f64 {
        self.cond
    }
}

/// A tensor carried into the transform domain: slice i holds `Â⁽ⁱ⁾`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedTensor {
    pub(crate) slices: Vec<CMatrix>,
}

impl TransformedTensor {
    pub fn new(slices: Vec<CMatrix>) -> Result<Self> {
        let t = Tensor3::new(slices)?;
        Ok(Self { slices: t.slices })
    }

    pub fn nrows(&self) -> usize {
        self.slices[0].nrows()
    }

    pub fn ncols(&self) -> usize {
        self.slices[0].ncols()
    }

    pub fn depth(&self) -> usize {
        self.slices.len()
    }

    pub fn slice(&self, k: usize) -> &CMatrix {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[CMatrix] {
        &self.slices
    }

    /// Block-diagonal view: transformed slices stacked along the diagonal.
    /// This matrix representation is multiplicative over the M-product.
    pub fn block_diagonal(&self) -> CMatrix {
        let (nr, nc, d) = (self.nrows(), self.ncols(), self.depth());
        let mut out = CMatrix::zeros(nr * d, nc * d);
        for (k, s) in self.slices.iter().enumerate() {
            out.view_mut((k * nr, k * nc), (nr, nc)).copy_from(s);
        }
        out
    }
}

/// Mode-3 unfolding: an `η3 × (η1·η2)` matrix with
/// `result[k, j·η1 + i] = a(i, j, k)` (0-based).
pub fn mode3_unfold(a: &Tensor3) -> CMatrix {
    let nr = a.nrows();
    CMatrix::from_fn(a.depth(), nr * a.ncols(), |k, c| a.slices[k][(c % nr, c / nr)])
}

/// Inverse of [`mode3_unfold`] for the given slice dimensions.
pub fn mode3_fold(mat: &CMatrix, nrows: usize, ncols: usize) -> Result<Tensor3> {
    if mat.ncols() != nrows * ncols {
        return Err(MprodError::DimensionMismatch(format!(
            "cannot fold {} columns into {nrows}x{ncols} slices",
            mat.ncols()
        )));
    }
    let slices = (0..mat.nrows())
        .map(|k| CMatrix::from_fn(nrows, ncols, |i, j| mat[(k, j * nrows + i)]))
        .collect();
    Tensor3::new(slices)
}

/// Mode-3 product: left-multiplies every mode-3 fiber by `n`, i.e.
/// `unfold(result) = n · unfold(a)`.
pub fn mode3_product(a: &Tensor3, n: &CMatrix) -> Result<Tensor3> {
    if n.ncols() != a.depth() {
        return Err(MprodError::DimensionMismatch(format!(
            "matrix has {} columns but tensor depth is {}",
            n.ncols(),
            a.depth()
        )));
    }
    if n.nrows() == 0 {
        return Err(MprodError::DimensionMismatch(
            "mode-3 factor must have at least one row".into(),
        ));
    }
    mode3_fold(&(n * mode3_unfold(a)), a.nrows(), a.ncols())
}

pub fn transform(a: &Tensor3, m: &TransformMatrix) -> Result<TransformedTensor> {
    if m.size() != a.depth() {
        return Err(MprodError::DimensionMismatch(format!(
            "transform size {} does not match tensor depth {}",
            m.size(),
            a.depth()
        )));
    }
    let hat = mode3_product(a, m.matrix())?;
    Ok(TransformedTensor { slices: hat.slices })
}

pub fn inverse_transform(t: &TransformedTensor, m: &TransformMatrix) -> Result<Tensor3> {
    if m.size() != t.depth() {
        return Err(MprodError::DimensionMismatch(format!(
            "transform size {} does not match tensor depth {}",
            m.size(),
            t.depth()
        )));
    }
    let tmp = Tensor3 {
        slices: t.slices.clone(),
    };
    mode3_product(&tmp, m.inverse_matrix())
}

fn facewise_slices(a: &[CMatrix], b: &[CMatrix]) -> Result<Vec<CMatrix>> {
    if a.len() != b.len() {
        return Err(MprodError::DimensionMismatch(format!(
            "slice counts differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a[0].ncols() != b[0].nrows() {
        return Err(MprodError::DimensionMismatch(format!(
            "inner dimensions differ: {}x{} times {}x{}",
            a[0].nrows(),
            a[0].ncols(),
            b[0].nrows(),
            b[0].ncols()
        )));
    }
    Ok(exec::map_depth(a.len(), |k| &a[k] * &b[k]))
}

/// Facewise product in the transform domain: slice i of the result is
/// `Â⁽ⁱ⁾ · B̂⁽ⁱ⁾`.
pub fn facewise_product(a: &TransformedTensor, b: &TransformedTensor) -> Result<TransformedTensor> {
    let slices = facewise_slices(&a.slices, &b.slices)?;
    Ok(TransformedTensor { slices })
}

/// The M-product `a ⋆ b`: transform, multiply matched slices, transform back.
pub fn m_product(a: &Tensor3, b: &Tensor3, m: &TransformMatrix) -> Result<Tensor3> {
    if a.ncols() != b.nrows() || a.depth() != b.depth() {
        return Err(MprodError::DimensionMismatch(format!(
            "cannot multiply {:?} by {:?}",
            a.dims(),
            b.dims()
        )));
    }
    let ah = transform(a, m)?;
    let bh = transform(b, m)?;
    inverse_transform(&facewise_product(&ah, &bh)?, m)
}

/// The identity tensor of the algebra: every transformed slice is `I_n`.
pub fn identity_tensor(n: usize, depth: usize, m: &TransformMatrix) -> Result<Tensor3> {
    if m.size() != depth {
        return Err(MprodError::DimensionMismatch(format!(
            "transform size {} does not match depth {depth}",
            m.size()
        )));
    }
    assert!(n > 0, "size must be positive");
    let hat = TransformedTensor {
        slices: vec![CMatrix::identity(n, n); depth],
    };
    inverse_transform(&hat, m)
}

/// Conjugate transpose: transformed slices are the adjoints of `transform(a)`.
pub fn conj_transpose(a: &Tensor3, m: &TransformMatrix) -> Result<Tensor3> {
    let ah = transform(a, m)?;
    let slices = exec::map_depth(ah.depth(), |k| ah.slices[k].adjoint());
    inverse_transform(&TransformedTensor { slices }, m)
}

/// `a` to the p-th M-product power; `p = 0` yields the identity tensor.
/// Computed slice-wise in the transform domain.
pub fn tensor_power(a: &Tensor3, p: usize, m: &TransformMatrix) -> Result<Tensor3> {
    if a.nrows() != a.ncols() {
        return Err(MprodError::DimensionMismatch(format!(
            "tensor power needs square slices, got {:?}",
            a.dims()
        )));
    }
    if p == 0 {
        return identity_tensor(a.nrows(), a.depth(), m);
    }
    let ah = transform(a, m)?;
    let slices = exec::map_depth(ah.depth(), |k| matrix_power(&ah.slices[k], p));
    inverse_transform(&TransformedTensor { slices }, m)
}

pub(crate) fn matrix_power(a: &CMatrix, p: usize) -> CMatrix {
    let mut out = CMatrix::identity(a.nrows(), a.nrows());
    for _ in 0..p {
        out = &out * a;
    }
    out
}

/// Relative Frobenius deviation `‖lhs − rhs‖ / (1 + ‖rhs‖)`, the residual
/// measure used for every equation check in this crate.
pub fn rel_residual(lhs: &Tensor3, rhs: &Tensor3) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

pub(crate) fn czero() -> Complex64 {
    ZERO
}
