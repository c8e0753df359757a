#![allow(dead_code)]

use mprod_core::kernels::{mp_inverse_matrix, ToleranceConfig};
use mprod_core::tensor::{inverse_transform, CMatrix, Tensor3, TransformMatrix, TransformedTensor};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn cx(rng: &mut StdRng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| cx(rng))
}

pub fn random_tensor(rng: &mut StdRng, n1: usize, n2: usize, n3: usize) -> Tensor3 {
    Tensor3::from_fn(n1, n2, n3, |_, _, _| cx(rng))
}

pub fn random_unitary(rng: &mut StdRng, n: usize) -> CMatrix {
    random_matrix(rng, n, n).qr().q()
}

/// Invertible with singular values in [0.5, 2]: condition number ≤ 4.
pub fn random_well_conditioned(rng: &mut StdRng, n: usize) -> CMatrix {
    let u = random_unitary(rng, n);
    let v = random_unitary(rng, n);
    let mut d = CMatrix::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = Complex64::new(rng.random_range(0.5..2.0), 0.0);
    }
    u * d * v.adjoint()
}

pub fn random_transform(rng: &mut StdRng, n: usize) -> TransformMatrix {
    TransformMatrix::new(random_well_conditioned(rng, n)).expect("well-conditioned by construction")
}

pub fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Transform-domain building blocks of one slice: `P · blockdiag(U, N) · P⁻¹`
/// with `U` invertible and `N² = 0`.
pub struct SliceFactors {
    pub p: CMatrix,
    pub p_inv: CMatrix,
    pub u: CMatrix,
    pub n: CMatrix,
}

impl SliceFactors {
    pub fn assemble(&self) -> CMatrix {
        &self.p * block_diag(&self.u, &self.n) * &self.p_inv
    }
}

fn nilpotent_square_zero(rng: &mut StdRng, s: usize) -> CMatrix {
    // nonzero only in the upper-right block => square is exactly zero
    let split = s / 2;
    CMatrix::from_fn(s, s, |i, j| {
        if i < split && j >= split {
            cx(rng)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Random square tensor whose transformed slices have index ≤ 2, together
/// with the factors that built each slice.
pub fn random_index_le2(
    rng: &mut StdRng,
    n: usize,
    depth: usize,
    m: &TransformMatrix,
) -> (Tensor3, Vec<SliceFactors>) {
    let mut factors = Vec::with_capacity(depth);
    let mut slices = Vec::with_capacity(depth);
    for _ in 0..depth {
        let r = rng.random_range(1..=n);
        let s = n - r;
        let u = random_well_conditioned(rng, r);
        let nmat = if s == 0 {
            CMatrix::zeros(0, 0)
        } else {
            nilpotent_square_zero(rng, s)
        };
        let p = random_well_conditioned(rng, n);
        let p_inv = p.clone().try_inverse().expect("well-conditioned");
        let f = SliceFactors {
            p,
            p_inv,
            u,
            n: nmat,
        };
        slices.push(f.assemble());
        factors.push(f);
    }
    let a = inverse_transform(&TransformedTensor::new(slices).unwrap(), m).unwrap();
    (a, factors)
}

/// A valid but non-canonical GD inverse built from the slice factors: the
/// nilpotent block gets an arbitrary inner inverse `N⁻ = N⁺ + W − N⁺NWNN⁺`.
pub fn alt_gd_candidate(
    rng: &mut StdRng,
    factors: &[SliceFactors],
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Tensor3 {
    let slices = factors
        .iter()
        .map(|f| {
            let u_inv = f.u.clone().try_inverse().expect("invertible core");
            let s = f.n.nrows();
            let n_pinv = mp_inverse_matrix(&f.n, tol);
            let w = random_matrix(rng, s, s);
            let n_minus = &n_pinv + &w - &n_pinv * &f.n * &w * &f.n * &n_pinv;
            &f.p * block_diag(&u_inv, &n_minus) * &f.p_inv
        })
        .collect();
    inverse_transform(&TransformedTensor::new(slices).unwrap(), m).unwrap()
}

/// Hermitian tensor with transformed-slice spectra in {0, ±1} (so `A⁺ = A`),
/// eigenvectors drawn from the columns of `q` selected by `picks`.
/// `picks[k][c]` gives the eigenvalue for column `c` of slice `k`.
pub fn hermitian_sign_tensor(
    qs: &[CMatrix],
    picks: &[Vec<f64>],
    m: &TransformMatrix,
) -> Tensor3 {
    let slices = qs
        .iter()
        .zip(picks)
        .map(|(q, lam)| {
            let n = q.nrows();
            let mut d = CMatrix::zeros(n, n);
            for (i, &v) in lam.iter().enumerate() {
                d[(i, i)] = Complex64::new(v, 0.0);
            }
            q * d * q.adjoint()
        })
        .collect();
    inverse_transform(&TransformedTensor::new(slices).unwrap(), m).unwrap()
}
