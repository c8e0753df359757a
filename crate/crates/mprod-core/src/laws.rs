//! Residual-based verification: inverse defining systems, equivalent
//! characterizations, and the product/additive law checks.
//!
//! Everything here measures relative Frobenius residuals
//! `‖LHS − RHS‖ / (1 + ‖RHS‖)` and never asserts; callers decide what a
//! failure means. Law checks are implications: hypotheses are measured
//! first, and the conclusion is evaluated only when they hold.

use serde::{Deserialize, Serialize};

use crate::error::{MprodError, Result};
use crate::ginv::{self, InverseFamily};
use crate::kernels::ToleranceConfig;
use crate::tensor::{
    conj_transpose, m_product, rel_residual, tensor_power, Tensor3, TransformMatrix,
};

/// One measured equation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub label: String,
    pub residual: f64,
}

/// Ordered residuals for one equation system, judged against a single
/// tolerance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub entries: Vec<ResidualEntry>,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(tol: f64) -> Self {
        ResidualReport {
            entries: Vec::new(),
            tol,
            pass: true,
        }
    }

    /// Records one equation; a NaN residual fails.
    pub fn push(&mut self, label: impl Into<String>, residual: f64) {
        self.pass = self.pass && residual <= self.tol;
        self.entries.push(ResidualEntry {
            label: label.into(),
            residual,
        });
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }
}

/// Outcome of a law check. `applicable` mirrors `hypotheses.pass`; the
/// conclusion is evaluated only for applicable pairs and is otherwise an
/// empty report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LawOutcome {
    pub hypotheses: ResidualReport,
    pub conclusion: ResidualReport,
    pub applicable: bool,
}

/// Hypothesis sets for the GD product laws. The first two conclude with the
/// reverse-order product, the last with the forward-order product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdOrderVariant {
    /// `A` commutes with `B²` and `B²⋆A = B⋆A⋆B`, plus projector
    /// commutation.
    SquareCommute,
    /// `A⋆B = B⋆A` plus projector commutation.
    Commute,
    /// `A⋆B = B⋆A` with the mirrored projector condition; forward-order
    /// conclusion.
    Forward,
}

/// Which product formula a GDMP/GD-Star law concludes with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderDirection {
    Reverse,
    Forward,
}

fn require_same_square(a: &Tensor3, x: &Tensor3) -> Result<()> {
    if a.nrows() != a.ncols() || a.dims() != x.dims() {
        return Err(MprodError::DimensionMismatch(format!(
            "need square tensors of equal dims, got {:?} and {:?}",
            a.dims(),
            x.dims()
        )));
    }
    Ok(())
}

fn require_adjoint_shape(a: &Tensor3, x: &Tensor3) -> Result<()> {
    if x.dims() != (a.ncols(), a.nrows(), a.depth()) {
        return Err(MprodError::DimensionMismatch(format!(
            "candidate dims {:?} do not match transposed dims of {:?}",
            x.dims(),
            a.dims()
        )));
    }
    Ok(())
}

/// Left-to-right M-product chain.
fn prod(m: &TransformMatrix, factors: &[&Tensor3]) -> Result<Tensor3> {
    let mut acc = factors[0].clone();
    for t in &factors[1..] {
        acc = m_product(&acc, t, m)?;
    }
    Ok(acc)
}

fn apow(p: usize) -> String {
    match p {
        0 => "I".to_string(),
        1 => "A".to_string(),
        p => format!("A^{p}"),
    }
}

/// GD defining system: `A⋆X⋆A = A`, `X⋆A^(k+1) = A^k`, `A^(k+1)⋆X = A^k`
/// with `k` the tensor index of `a`.
pub fn verify_gd(
    a: &Tensor3,
    x: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    require_same_square(a, x)?;
    let k = ginv::tensor_index(a, m, tol)?;
    let ak = tensor_power(a, k, m)?;
    let ak1 = tensor_power(a, k + 1, m)?;
    let mut rep = ResidualReport::new(tol.residual_tol);
    rep.push("A*X*A = A", rel_residual(&prod(m, &[a, x, a])?, a));
    rep.push(
        format!("X*{} = {}", apow(k + 1), apow(k)),
        rel_residual(&prod(m, &[x, &ak1])?, &ak),
    );
    rep.push(
        format!("{}*X = {}", apow(k + 1), apow(k)),
        rel_residual(&prod(m, &[&ak1, x])?, &ak),
    );
    Ok(rep)
}

/// Moore-Penrose system: the four Penrose equations.
pub fn verify_mp(
    a: &Tensor3,
    x: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    require_adjoint_shape(a, x)?;
    let ax = prod(m, &[a, x])?;
    let xa = prod(m, &[x, a])?;
    let mut rep = ResidualReport::new(tol.residual_tol);
    rep.push("A*X*A = A", rel_residual(&prod(m, &[&ax, a])?, a));
    rep.push("X*A*X = X", rel_residual(&prod(m, &[&xa, x])?, x));
    rep.push("(A*X)^H = A*X", rel_residual(&conj_transpose(&ax, m)?, &ax));
    rep.push("(X*A)^H = X*A", rel_residual(&conj_transpose(&xa, m)?, &xa));
    Ok(rep)
}

/// Drazin system: `X⋆A = A⋆X`, `X⋆A⋆X = X`, `X⋆A^(k+1) = A^k`.
pub fn verify_drazin(
    a: &Tensor3,
    x: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    require_same_square(a, x)?;
    let k = ginv::tensor_index(a, m, tol)?;
    let ak = tensor_power(a, k, m)?;
    let ak1 = tensor_power(a, k + 1, m)?;
    let mut rep = ResidualReport::new(tol.residual_tol);
    rep.push(
        "X*A = A*X",
        rel_residual(&prod(m, &[x, a])?, &prod(m, &[a, x])?),
    );
    rep.push("X*A*X = X", rel_residual(&prod(m, &[x, a, x])?, x));
    rep.push(
        format!("X*{} = {}", apow(k + 1), apow(k)),
        rel_residual(&prod(m, &[x, &ak1])?, &ak),
    );
    Ok(rep)
}

/// The four equivalent GD characterizations, each as its own report. For any
/// candidate the four agree in pass/fail (up to tolerance effects near the
/// threshold).
pub fn characterize_gd(
    a: &Tensor3,
    x: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<Vec<(String, ResidualReport)>> {
    require_same_square(a, x)?;
    let k = ginv::tensor_index(a, m, tol)?;
    let ak = tensor_power(a, k, m)?;
    let ak1 = tensor_power(a, k + 1, m)?;
    let ad = ginv::drazin_inverse(a, m, tol)?;
    let axa = rel_residual(&prod(m, &[a, x, a])?, a);
    let aad = prod(m, &[a, &ad])?;

    let mut defining = ResidualReport::new(tol.residual_tol);
    defining.push("A*X*A = A", axa);
    defining.push(
        format!("X*{} = {}", apow(k + 1), apow(k)),
        rel_residual(&prod(m, &[x, &ak1])?, &ak),
    );
    defining.push(
        format!("{}*X = {}", apow(k + 1), apow(k)),
        rel_residual(&prod(m, &[&ak1, x])?, &ak),
    );

    let mut power = ResidualReport::new(tol.residual_tol);
    power.push("A*X*A = A", axa);
    power.push(
        format!("{p}*X = X*{p}", p = apow(k)),
        rel_residual(&prod(m, &[&ak, x])?, &prod(m, &[x, &ak])?),
    );

    let mut projector = ResidualReport::new(tol.residual_tol);
    projector.push("A*X*A = A", axa);
    projector.push(
        "A^D*A*X = X*A^D*A",
        rel_residual(&prod(m, &[&ad, a, x])?, &prod(m, &[x, &ad, a])?),
    );

    let mut projector_sq = ResidualReport::new(tol.residual_tol);
    projector_sq.push("A*X*A = A", axa);
    projector_sq.push(
        "A^D*A^2*X = A*A^D",
        rel_residual(&prod(m, &[&ad, a, a, x])?, &aad),
    );
    projector_sq.push(
        "X*A^D*A^2 = A*A^D",
        rel_residual(&prod(m, &[x, &ad, a, a])?, &aad),
    );

    Ok(vec![
        ("defining".to_string(), defining),
        ("power-commute".to_string(), power),
        ("projector-commute".to_string(), projector),
        ("projector-square".to_string(), projector_sq),
    ])
}

/// GDMP system: the three defining equations plus the equivalent
/// four-equation system.
pub fn verify_gdmp(
    a: &Tensor3,
    x: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    require_same_square(a, x)?;
    let k = ginv::tensor_index(a, m, tol)?;
    let ak = tensor_power(a, k, m)?;
    let ak1 = tensor_power(a, k + 1, m)?;
    let mp = ginv::mp_inverse(a, m, tol)?;
    let gd = ginv::gd_inverse(a, m, tol)?;
    let ax = prod(m, &[a, x])?;
    let mut rep = ResidualReport::new(tol.residual_tol);
    rep.push("X*A*X = X", rel_residual(&prod(m, &[x, a, x])?, x));
    rep.push("A*X = A*A^+", rel_residual(&ax, &prod(m, &[a, &mp])?));
    rep.push(
        format!("X*{p} = A^gd*{p}", p = apow(k)),
        rel_residual(&prod(m, &[x, &ak])?, &prod(m, &[&gd, &ak])?),
    );
    rep.push("A*X*A = A", rel_residual(&prod(m, &[&ax, a])?, a));
    rep.push("(A*X)^H = A*X", rel_residual(&conj_transpose(&ax, m)?, &ax));
    rep.push(
        format!("X*{} = {}", apow(k + 1), apow(k)),
        rel_residual(&prod(m, &[x, &ak1])?, &ak),
    );
    Ok(rep)
}

/// GDMP identity battery for a candidate `x`: the defining properties plus
/// the derived identities, with the power `c` instantiated at 1 and
/// `max(k, 1)`.
pub fn gdmp_identities(
    a: &Tensor3,
    x: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    require_same_square(a, x)?;
    let k = ginv::tensor_index(a, m, tol)?;
    let ak = tensor_power(a, k, m)?;
    let ak1 = tensor_power(a, k + 1, m)?;
    let ak2 = tensor_power(a, k + 2, m)?;
    let mp = ginv::mp_inverse(a, m, tol)?;
    let gd = ginv::gd_inverse(a, m, tol)?;
    let mut rep = ResidualReport::new(tol.residual_tol);
    rep.push("A^gd*A*X = X", rel_residual(&prod(m, &[&gd, a, x])?, x));
    rep.push("A*X*A = A", rel_residual(&prod(m, &[a, x, a])?, a));
    rep.push("X*A*X = X", rel_residual(&prod(m, &[x, a, x])?, x));
    let mut cs = vec![1, k.max(1)];
    cs.dedup();
    for c in cs {
        let ac = tensor_power(a, c, m)?;
        rep.push(
            format!("{p}*X = {p}*A^+", p = apow(c)),
            rel_residual(&prod(m, &[&ac, x])?, &prod(m, &[&ac, &mp])?),
        );
        rep.push(
            format!("X*{p} = A^gd*{p}", p = apow(c)),
            rel_residual(&prod(m, &[x, &ac])?, &prod(m, &[&gd, &ac])?),
        );
    }
    rep.push(
        format!("X*{} = {}", apow(k + 1), apow(k)),
        rel_residual(&prod(m, &[x, &ak1])?, &ak),
    );
    rep.push(
        format!("A*X*{p} = {p}", p = apow(k + 1)),
        rel_residual(&prod(m, &[a, x, &ak1])?, &ak1),
    );
    rep.push(
        format!("{p}*X = {p}*A^+", p = apow(k + 1)),
        rel_residual(&prod(m, &[&ak1, x])?, &prod(m, &[&ak1, &mp])?),
    );
    rep.push(
        format!("X*{}*X = {}*A^+", apow(k + 2), apow(k + 1)),
        rel_residual(&prod(m, &[x, &ak2, x])?, &prod(m, &[&ak1, &mp])?),
    );
    Ok(rep)
}

/// GD-Star system: the defining equations plus the derived identity
/// battery.
pub fn verify_gdstar(
    a: &Tensor3,
    x: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
) -> Result<ResidualReport> {
    require_same_square(a, x)?;
    let k = ginv::tensor_index(a, m, tol)?;
    let ak = tensor_power(a, k, m)?;
    let ah = conj_transpose(a, m)?;
    let mp = ginv::mp_inverse(a, m, tol)?;
    let mph = conj_transpose(&mp, m)?;
    let gd = ginv::gd_inverse(a, m, tol)?;
    let ax = prod(m, &[a, x])?;
    let ahx = prod(m, &[&ah, x])?;
    let mut rep = ResidualReport::new(tol.residual_tol);
    rep.push(
        "X*(A^+)^H*X = X",
        rel_residual(&prod(m, &[x, &mph, x])?, x),
    );
    rep.push("A*X = A*A^H", rel_residual(&ax, &prod(m, &[a, &ah])?));
    rep.push(
        format!("{p}*X = {p}*A^H", p = apow(k)),
        rel_residual(&prod(m, &[&ak, x])?, &prod(m, &[&ak, &ah])?),
    );
    rep.push(
        "X*(A^+)^H = A^gd*A",
        rel_residual(&prod(m, &[x, &mph])?, &prod(m, &[&gd, a])?),
    );
    rep.push("A*X*(A^+)^H = A", rel_residual(&prod(m, &[&ax, &mph])?, a));
    rep.push("A^+*A*X = A^H", rel_residual(&prod(m, &[&mp, &ax])?, &ah));
    rep.push(
        format!("{p}*X*(A^+)^H = {p}", p = apow(k)),
        rel_residual(&prod(m, &[&ak, x, &mph])?, &ak),
    );
    rep.push(
        format!("X*(A^+)^H*{p} = {p}", p = apow(k)),
        rel_residual(&prod(m, &[x, &mph, &ak])?, &ak),
    );
    rep.push(
        "A^+*A*X^2 = A^H*X",
        rel_residual(&prod(m, &[&mp, &ax, x])?, &ahx),
    );
    rep.push(
        "A^+*A*X^2*A*A^+ = A^H*X",
        rel_residual(&prod(m, &[&mp, &ax, x, a, &mp])?, &ahx),
    );
    rep.push("(A*X)^H = A*X", rel_residual(&conj_transpose(&ax, m)?, &ax));
    rep.push(
        "(A^+)^H*X*(A^+)^H = (A^+)^H",
        rel_residual(&prod(m, &[&mph, x, &mph])?, &mph),
    );
    Ok(rep)
}

fn empty_conclusion(tol: &ToleranceConfig) -> ResidualReport {
    ResidualReport::new(tol.residual_tol)
}

/// GD product laws. The hypotheses depend on the variant; the conclusion
/// verifies the reverse- or forward-order candidate as a GD inverse of
/// `A⋆B`.
pub fn check_gd_reverse_order(
    a: &Tensor3,
    b: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
    variant: GdOrderVariant,
) -> Result<LawOutcome> {
    require_same_square(a, b)?;
    let gd_a = ginv::gd_inverse(a, m, tol)?;
    let gd_b = ginv::gd_inverse(b, m, tol)?;
    let mut hyp = ResidualReport::new(tol.residual_tol);
    match variant {
        GdOrderVariant::SquareCommute => {
            let b2 = prod(m, &[b, b])?;
            let b2a = prod(m, &[&b2, a])?;
            hyp.push("A*B^2 = B^2*A", rel_residual(&prod(m, &[a, &b2])?, &b2a));
            hyp.push("B^2*A = B*A*B", rel_residual(&b2a, &prod(m, &[b, a, b])?));
            hyp.push(
                "A*B*B^gd = B*B^gd*A",
                rel_residual(&prod(m, &[a, b, &gd_b])?, &prod(m, &[b, &gd_b, a])?),
            );
            hyp.push(
                "B*B^gd*A^gd = A^gd*B*B^gd",
                rel_residual(&prod(m, &[b, &gd_b, &gd_a])?, &prod(m, &[&gd_a, b, &gd_b])?),
            );
        }
        GdOrderVariant::Commute => {
            hyp.push(
                "A*B = B*A",
                rel_residual(&prod(m, &[a, b])?, &prod(m, &[b, a])?),
            );
            hyp.push(
                "B*B^gd*A^gd = A^gd*B*B^gd",
                rel_residual(&prod(m, &[b, &gd_b, &gd_a])?, &prod(m, &[&gd_a, b, &gd_b])?),
            );
        }
        GdOrderVariant::Forward => {
            hyp.push(
                "A*B = B*A",
                rel_residual(&prod(m, &[a, b])?, &prod(m, &[b, a])?),
            );
            hyp.push(
                "B^gd*B*A = A*B^gd*B",
                rel_residual(&prod(m, &[&gd_b, b, a])?, &prod(m, &[a, &gd_b, b])?),
            );
        }
    }
    let applicable = hyp.pass;
    let conclusion = if applicable {
        let ab = prod(m, &[a, b])?;
        let candidate = match variant {
            GdOrderVariant::SquareCommute | GdOrderVariant::Commute => {
                prod(m, &[&gd_b, &gd_a])?
            }
            GdOrderVariant::Forward => prod(m, &[&gd_a, &gd_b])?,
        };
        verify_gd(&ab, &candidate, m, tol)?
    } else {
        empty_conclusion(tol)
    };
    Ok(LawOutcome {
        hypotheses: hyp,
        conclusion,
        applicable,
    })
}

/// Additive laws: disjoint tensors (mutually annihilating, including against
/// the GD inverses) have additive GD/GDMP/GD-Star inverses.
pub fn check_additive_law(
    a: &Tensor3,
    b: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
    kind: InverseFamily,
) -> Result<LawOutcome> {
    require_same_square(a, b)?;
    let gd_a = ginv::gd_inverse(a, m, tol)?;
    let gd_b = ginv::gd_inverse(b, m, tol)?;
    let zero = Tensor3::zeros(a.nrows(), a.ncols(), a.depth());
    let mut hyp = ResidualReport::new(tol.residual_tol);
    hyp.push("A*B = 0", rel_residual(&prod(m, &[a, b])?, &zero));
    hyp.push("B*A = 0", rel_residual(&prod(m, &[b, a])?, &zero));
    match kind {
        InverseFamily::Gd => {}
        InverseFamily::Gdmp => {
            hyp.push("A^+ = A", rel_residual(&ginv::mp_inverse(a, m, tol)?, a));
            hyp.push("B^+ = B", rel_residual(&ginv::mp_inverse(b, m, tol)?, b));
        }
        InverseFamily::GdStar => {
            let ah = conj_transpose(a, m)?;
            hyp.push("B*A^H = 0", rel_residual(&prod(m, &[b, &ah])?, &zero));
        }
    }
    hyp.push("A^gd*B = 0", rel_residual(&prod(m, &[&gd_a, b])?, &zero));
    hyp.push("B*A^gd = 0", rel_residual(&prod(m, &[b, &gd_a])?, &zero));
    hyp.push("B^gd*A = 0", rel_residual(&prod(m, &[&gd_b, a])?, &zero));
    hyp.push("A*B^gd = 0", rel_residual(&prod(m, &[a, &gd_b])?, &zero));
    let applicable = hyp.pass;
    let conclusion = if applicable {
        let sum = a + b;
        let inv_a = ginv::family_inverse(a, m, tol, kind)?;
        let inv_b = ginv::family_inverse(b, m, tol, kind)?;
        let candidate = &inv_a + &inv_b;
        match kind {
            InverseFamily::Gd => verify_gd(&sum, &candidate, m, tol)?,
            InverseFamily::Gdmp => verify_gdmp(&sum, &candidate, m, tol)?,
            InverseFamily::GdStar => verify_gdstar(&sum, &candidate, m, tol)?,
        }
    } else {
        empty_conclusion(tol)
    };
    Ok(LawOutcome {
        hypotheses: hyp,
        conclusion,
        applicable,
    })
}

/// GDMP product laws for Hermitian-idempotent-style pairs (`A⁺ = A`,
/// `B⁺ = B`).
pub fn check_gdmp_product_laws(
    a: &Tensor3,
    b: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
    direction: OrderDirection,
) -> Result<LawOutcome> {
    require_same_square(a, b)?;
    let gd_a = ginv::gd_inverse(a, m, tol)?;
    let gd_b = ginv::gd_inverse(b, m, tol)?;
    let mut hyp = ResidualReport::new(tol.residual_tol);
    hyp.push("A^+ = A", rel_residual(&ginv::mp_inverse(a, m, tol)?, a));
    hyp.push("B^+ = B", rel_residual(&ginv::mp_inverse(b, m, tol)?, b));
    hyp.push(
        "A*B = B*A",
        rel_residual(&prod(m, &[a, b])?, &prod(m, &[b, a])?),
    );
    match direction {
        OrderDirection::Reverse => {
            hyp.push(
                "A^gd*A*B = B*A^gd*A",
                rel_residual(&prod(m, &[&gd_a, a, b])?, &prod(m, &[b, &gd_a, a])?),
            );
            hyp.push(
                "B*B^gd*A^gd = A^gd*B*B^gd",
                rel_residual(&prod(m, &[b, &gd_b, &gd_a])?, &prod(m, &[&gd_a, b, &gd_b])?),
            );
        }
        OrderDirection::Forward => {
            hyp.push(
                "B^gd*B*A = A*B^gd*B",
                rel_residual(&prod(m, &[&gd_b, b, a])?, &prod(m, &[a, &gd_b, b])?),
            );
        }
    }
    let applicable = hyp.pass;
    let conclusion = if applicable {
        let ab = prod(m, &[a, b])?;
        let ga = ginv::gdmp_inverse(a, m, tol)?;
        let gb = ginv::gdmp_inverse(b, m, tol)?;
        let candidate = match direction {
            OrderDirection::Reverse => prod(m, &[&gb, &ga])?,
            OrderDirection::Forward => prod(m, &[&ga, &gb])?,
        };
        verify_gdmp(&ab, &candidate, m, tol)?
    } else {
        empty_conclusion(tol)
    };
    Ok(LawOutcome {
        hypotheses: hyp,
        conclusion,
        applicable,
    })
}

/// GD-Star product laws.
pub fn check_gdstar_product_laws(
    a: &Tensor3,
    b: &Tensor3,
    m: &TransformMatrix,
    tol: &ToleranceConfig,
    direction: OrderDirection,
) -> Result<LawOutcome> {
    require_same_square(a, b)?;
    let gd_a = ginv::gd_inverse(a, m, tol)?;
    let gd_b = ginv::gd_inverse(b, m, tol)?;
    let mut hyp = ResidualReport::new(tol.residual_tol);
    hyp.push(
        "A*B = B*A",
        rel_residual(&prod(m, &[a, b])?, &prod(m, &[b, a])?),
    );
    match direction {
        OrderDirection::Reverse => {
            let bh = conj_transpose(b, m)?;
            hyp.push(
                "B*B^gd*A^gd = A^gd",
                rel_residual(&prod(m, &[b, &gd_b, &gd_a])?, &gd_a),
            );
            hyp.push(
                "A^gd*A*B*B^H = B*B^H*A^gd*A",
                rel_residual(
                    &prod(m, &[&gd_a, a, b, &bh])?,
                    &prod(m, &[b, &bh, &gd_a, a])?,
                ),
            );
        }
        OrderDirection::Forward => {
            let ah = conj_transpose(a, m)?;
            hyp.push(
                "A*A^gd*B^gd = B^gd",
                rel_residual(&prod(m, &[a, &gd_a, &gd_b])?, &gd_b),
            );
            hyp.push(
                "B^gd*B*A*A^H = A*A^H*B^gd*B",
                rel_residual(
                    &prod(m, &[&gd_b, b, a, &ah])?,
                    &prod(m, &[a, &ah, &gd_b, b])?,
                ),
            );
        }
    }
    let applicable = hyp.pass;
    let conclusion = if applicable {
        let ab = prod(m, &[a, b])?;
        let ga = ginv::gdstar_inverse(a, m, tol)?;
        let gb = ginv::gdstar_inverse(b, m, tol)?;
        let candidate = match direction {
            OrderDirection::Reverse => prod(m, &[&gb, &ga])?,
            OrderDirection::Forward => prod(m, &[&ga, &gb])?,
        };
        verify_gdstar(&ab, &candidate, m, tol)?
    } else {
        empty_conclusion(tol)
    };
    Ok(LawOutcome {
        hypotheses: hyp,
        conclusion,
        applicable,
    })
}
