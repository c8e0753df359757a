//! Complex dense matrix kernels applied slice-wise by the tensor layer:
//! numerical rank, index, core-nilpotent decomposition, and the matrix-level
//! Moore-Penrose, Drazin, and GD inverses.

use crate::error::{MprodError, Result};
use crate::svd::{jacobi_svd, singular_values};
use crate::tensor::{matrix_power, CMatrix};

/// Tolerances shared across the crate.
///
/// `rank_tol_factor` scales the singular-value cutoff for rank decisions,
/// `residual_tol` bounds relative equation residuals, and `golden_tol` is the
/// loose bound used when comparing against reference values printed to about
/// four decimals.
#[derive(Clone, Copy, Debug)]
pub struct ToleranceConfig {
    pub rank_tol_factor: f64,
    pub residual_tol: f64,
    pub golden_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol_factor: 1e-12,
            residual_tol: 1e-8,
            golden_tol: 5e-3,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rank_tol_factor > 0.0 && self.residual_tol > 0.0 && self.golden_tol > 0.0;
        if ok {
            Ok(())
        } else {
            Err(MprodError::ContractViolation(
                "tolerances must be strictly positive".into(),
            ))
        }
    }
}

/// Similarity factors `a = p · blockdiag(u, n_part) · p⁻¹` with `u` invertible
/// and `n_part` nilpotent; `k` is the index of `a`.
#[derive(Clone, Debug)]
pub struct CoreNilpotentFactors {
    pub p: CMatrix,
    /// Cached inverse of `p`.
    pub p_inv: CMatrix,
    pub u: CMatrix,
    pub n_part: CMatrix,
    pub k: usize,
}

impl CoreNilpotentFactors {
    pub fn core_rank(&self) -> usize {
        self.u.nrows()
    }

    /// Reassembles `p · blockdiag(u, n_part) · p⁻¹`.
    pub fn reconstruct(&self) -> CMatrix {
        &self.p * block_diag(&self.u, &self.n_part) * &self.p_inv
    }
}

pub(crate) fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = (a.nrows(), a.ncols());
    let (rb, cb) = (b.nrows(), b.ncols());
    let mut out = CMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

pub(crate) fn rel_residual_matrix(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

/// Count of singular values above `rank_tol_factor · max(m,n) · σ_max`.
pub fn numerical_rank(a: &CMatrix, tol: &ToleranceConfig) -> usize {
    let sv = singular_values(a);
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    let cutoff = tol.rank_tol_factor * (a.nrows().max(a.ncols()) as f64) * smax;
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Smallest `k ≥ 0` with `rank(a^k) = rank(a^{k+1})` (`a⁰ = I`); at most `n`.
pub fn matrix_index(a: &CMatrix, tol: &ToleranceConfig) -> usize {
    assert_eq!(a.nrows(), a.ncols(), "matrix_index needs a square input");
    let n = a.nrows();
    let mut power = CMatrix::identity(n, n);
    let mut rank_prev = n;
    for k in 0..=n {
        let next = &power * a;
        let rank_next = numerical_rank(&next, tol);
        if rank_next == rank_prev {
            return k;
        }
        rank_prev = rank_next;
        power = next;
    }
    n
}

/// Core-nilpotent decomposition via an orthonormal singular-vector basis of
/// `a^k`: the first `r = rank(a^k)` columns of `p` span the range of `a^k`,
/// the rest span its null space.
pub fn core_nilpotent_decompose(a: &CMatrix, tol: &ToleranceConfig) -> Result<CoreNilpotentFactors> {
    assert_eq!(a.nrows(), a.ncols(), "decomposition needs a square input");
    let n = a.nrows();
    let k = matrix_index(a, tol);
    if k == 0 {
        // numerically full-rank: the trivial basis keeps u = a exactly
        return Ok(CoreNilpotentFactors {
            p: CMatrix::identity(n, n),
            p_inv: CMatrix::identity(n, n),
            u: a.clone(),
            n_part: CMatrix::zeros(0, 0),
            k,
        });
    }

    let ak = matrix_power(a, k);
    let svd = jacobi_svd(&ak);
    let smax = svd.sv.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol.rank_tol_factor * (n as f64) * smax;
    let r = svd.sv.iter().filter(|&&s| s > cutoff).count();

    let mut p = CMatrix::zeros(n, n);
    p.view_mut((0, 0), (n, r)).copy_from(&svd.u.view((0, 0), (n, r)));
    p.view_mut((0, r), (n, n - r))
        .copy_from(&svd.v.view((0, r), (n, n - r)));
    let p_inv = p.clone().try_inverse().ok_or_else(|| {
        MprodError::NumericalFailure("range/null basis is not invertible".into())
    })?;

    let t = &p_inv * a * &p;
    let u = t.view((0, 0), (r, r)).into_owned();
    let mut n_part = t.view((r, r), (n - r, n - r)).into_owned();
    // A nilpotent block whose whole mass sits at round-off scale relative to a
    // is the zero block; clamping prevents its junk singular values (~eps·‖a‖)
    // from being inverted into O(1/eps) noise by downstream pseudoinverses.
    if n_part.norm() <= tol.rank_tol_factor * (n as f64) * a.norm() {
        n_part.fill(crate::tensor::czero());
    }

    if numerical_rank(&u, tol) != r {
        return Err(MprodError::NumericalFailure(
            "core block is numerically singular".into(),
        ));
    }
    let factors = CoreNilpotentFactors { p, p_inv, u, n_part, k };
    let res = rel_residual_matrix(&factors.reconstruct(), a);
    if res > tol.residual_tol {
        return Err(MprodError::NumericalFailure(format!(
            "core-nilpotent reconstruction residual {res:.3e}"
        )));
    }
    Ok(factors)
}

/// Moore-Penrose inverse by SVD with relative rank truncation.
pub fn mp_inverse_matrix(a: &CMatrix, tol: &ToleranceConfig) -> CMatrix {
    if a.nrows() == 0 || a.ncols() == 0 {
        return a.adjoint();
    }
    let svd = jacobi_svd(a);
    let smax = svd.sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return CMatrix::zeros(a.ncols(), a.nrows());
    }
    let cutoff = tol.rank_tol_factor * (a.nrows().max(a.ncols()) as f64) * smax;
    let p = svd.sv.len();
    let sigma_inv = CMatrix::from_fn(p, p, |i, j| {
        if i == j && svd.sv[i] > cutoff {
            num_complex::Complex64::new(1.0 / svd.sv[i], 0.0)
        } else {
            crate::tensor::czero()
        }
    });
    &svd.v * sigma_inv * svd.u.adjoint()
}

/// Canonical {1}-inverse of a nilpotent block: its Moore-Penrose inverse.
/// Rejects inputs that are not nilpotent within tolerance.
pub fn one_inverse_nilpotent(n_part: &CMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    assert_eq!(n_part.nrows(), n_part.ncols(), "nilpotent block must be square");
    let d = n_part.nrows();
    // ‖N^j‖ must fall to round-off, measured against ‖N‖^j scaling, by j = d
    let scale = 1.0 + n_part.norm();
    let mut nilpotent = d == 0;
    let mut power = CMatrix::identity(d, d);
    let mut bound = 1.0;
    for _ in 0..d {
        power = &power * n_part;
        bound *= scale;
        if power.norm() <= tol.residual_tol * bound {
            nilpotent = true;
            break;
        }
    }
    if !nilpotent {
        return Err(MprodError::ContractViolation(format!(
            "block of size {d} is not nilpotent within tolerance"
        )));
    }
    Ok(mp_inverse_matrix(n_part, tol))
}

fn core_inverse_blocks(
    a: &CMatrix,
    tol: &ToleranceConfig,
) -> Result<(CoreNilpotentFactors, CMatrix)> {
    let factors = core_nilpotent_decompose(a, tol)?;
    let r = factors.core_rank();
    let u_inv = if r == 0 {
        CMatrix::zeros(0, 0)
    } else {
        factors.u.clone().try_inverse().ok_or_else(|| {
            MprodError::NumericalFailure("core block inversion failed".into())
        })?
    };
    Ok((factors, u_inv))
}

/// GD inverse `p · blockdiag(u⁻¹, N⁻) · p⁻¹` with the canonical choice
/// `N⁻ = mp_inverse_matrix(n_part)`.
pub fn matrix_gd_inverse(a: &CMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    let (factors, u_inv) = core_inverse_blocks(a, tol)?;
    let n_one = one_inverse_nilpotent(&factors.n_part, tol)?;
    Ok(&factors.p * block_diag(&u_inv, &n_one) * &factors.p_inv)
}

/// Drazin inverse `p · blockdiag(u⁻¹, 0) · p⁻¹`.
pub fn matrix_drazin_inverse(a: &CMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    let (factors, u_inv) = core_inverse_blocks(a, tol)?;
    let d = factors.n_part.nrows();
    Ok(&factors.p * block_diag(&u_inv, &CMatrix::zeros(d, d)) * &factors.p_inv)
}
