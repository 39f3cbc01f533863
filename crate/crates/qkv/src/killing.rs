//! Quaternionic Killing structures: the embedding `ι` into `Λⁿ∘F`, the
//! `⋆`-action of `Sym²F`, the matrix `A_X`, the coefficient systems of the
//! Killing equation, and the operators of the `θ⋆` identity on the cone.

use thiserror::Error;

use crate::linspaces::{j_pairs, FVector, HVector, TVector};
use crate::multilinear::{canonical_bivector, contract_dual, primitive_basis, wedge, MultiError, MultiVector, SpaceTag};
use crate::operator::{OperatorMatrix, SparseVec};
use crate::scalars::{rat, Ext2Scalar, Rational};
use crate::spinors::{ftof_signed, mu_part, spin_action, unit_one, MuPart, PairTensor, SpinorError, SpinorSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KillingError {
    #[error(transparent)]
    Multi(#[from] MultiError),
    #[error(transparent)]
    Spinor(#[from] SpinorError),
    #[error("λ must be nonzero")]
    ZeroLambda,
    #[error("n must be at least 2")]
    SmallN,
}

/// `(f1 f2)(ω) = f2∧(f1^#⌟ω) + f1∧(f2^#⌟ω)`.
pub fn star(f1: &[Ext2Scalar], f2: &[Ext2Scalar], omega: &MultiVector) -> Result<MultiVector, MultiError> {
    if omega.degree == 0 {
        return Ok(MultiVector::zero(omega.tag, omega.n, 0));
    }
    let v1 = MultiVector::vector(omega.tag, omega.n, f1);
    let v2 = MultiVector::vector(omega.tag, omega.n, f2);
    let a = wedge(&v2, &contract_dual(f1, omega)?)?;
    let b = wedge(&v1, &contract_dual(f2, omega)?)?;
    a.add(&b)
}

/// `(f1 f2)⋆` on `Λˢ∘V` in primitive coordinates.
pub fn star_op(f1: &[Ext2Scalar], f2: &[Ext2Scalar], tag: SpaceTag, n: usize, s: usize) -> Result<OperatorMatrix, MultiError> {
    let pb = primitive_basis(tag, n, s)?;
    let columns = pb
        .vectors
        .iter()
        .map(|eta| pb.coords_sparse(&star(f1, f2, eta)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OperatorMatrix::from_columns(pb.len(), columns))
}

/// `id ⊗ (f1 f2)⋆` on every summand of a spinor space.
pub fn star_spinor_op(f1: &[Ext2Scalar], f2: &[Ext2Scalar], space: &SpinorSpace) -> Result<OperatorMatrix, MultiError> {
    let mut out = OperatorMatrix::zero(space.dim, space.dim);
    for sm in &space.summands {
        let block = OperatorMatrix::identity(sm.sym_dim).kron(&star_op(f1, f2, space.tag, space.n, sm.s)?);
        out.add_block(sm.offset, sm.offset, &block);
    }
    Ok(out)
}

/// `Λⁿ∘E ⊕ (H ⊗ Λⁿ⁻¹∘E) ⊕ Λⁿ⁻²∘E`, labelled `phi0`, `phi1`, `phim`.
pub fn killing_space(n: usize) -> SpinorSpace {
    SpinorSpace::custom(SpaceTag::E, n, &[("phi0", 0, n), ("phi1", 1, n - 1), ("phim", 0, n - 2)])
}

/// A section `(φ₀, φ₁, φ₋)`; `phi1[i]` is the coefficient of `h_i ∈ {p, q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingSection {
    pub phi0: MultiVector,
    pub phi1: [MultiVector; 2],
    pub phi_minus: MultiVector,
}

impl KillingSection {
    pub fn zero(n: usize) -> Self {
        KillingSection {
            phi0: MultiVector::zero(SpaceTag::E, n, n),
            phi1: [MultiVector::zero(SpaceTag::E, n, n - 1), MultiVector::zero(SpaceTag::E, n, n - 1)],
            phi_minus: MultiVector::zero(SpaceTag::E, n, n - 2),
        }
    }

    /// Section from coordinates on [`killing_space`].
    pub fn from_coords(n: usize, c: &SparseVec) -> Result<Self, MultiError> {
        let space = killing_space(n);
        let mut out = Self::zero(n);
        for (idx, x) in c {
            let (sm, k, p) = space.locate(*idx);
            let v = primitive_basis(SpaceTag::E, n, sm.s)?.vectors[p].scale(x);
            match sm.name.as_str() {
                "phi0" => out.phi0 = out.phi0.add(&v)?,
                "phi1" => out.phi1[k] = out.phi1[k].add(&v)?,
                _ => out.phi_minus = out.phi_minus.add(&v)?,
            }
        }
        Ok(out)
    }
}

/// `ι(φ₀ ⊕ h⊗φ₁ ⊕ φ₋) = φ₀ + h∧φ₁ + (L_H − ½L_E)∧φ₋` in `ΛⁿF`.
pub fn iota(phi: &KillingSection) -> Result<MultiVector, MultiError> {
    let n = phi.phi0.n;
    for (part, s) in [(&phi.phi0, n), (&phi.phi1[0], n - 1), (&phi.phi1[1], n - 1), (&phi.phi_minus, n - 2)] {
        if !part.is_zero() {
            primitive_basis(SpaceTag::E, n, s)?.coords_sparse(part)?;
        }
    }
    let mut out = phi.phi0.include_in_f();
    out.degree = n;
    for (i, part) in phi.phi1.iter().enumerate() {
        let h = MultiVector::blade(SpaceTag::F, n, 1 << i);
        out = out.add(&wedge(&h, &part.include_in_f())?)?;
    }
    let lh = MultiVector::blade(SpaceTag::F, n, 0b11);
    let le = canonical_bivector(SpaceTag::E, n).bivector.include_in_f();
    let l = lh.sub(&le.scale(&Ext2Scalar::from_rat(rat(1, 2))))?;
    out.add(&wedge(&l, &phi.phi_minus.include_in_f())?)
}

/// `ι` as a matrix from [`killing_space`] into primitive coordinates of `Λⁿ∘F`.
pub fn iota_op(n: usize) -> Result<OperatorMatrix, MultiError> {
    let space = killing_space(n);
    let target = primitive_basis(SpaceTag::F, n, n)?;
    let mut columns = Vec::with_capacity(space.dim);
    for idx in 0..space.dim {
        let mut c = SparseVec::new();
        c.insert(idx, Ext2Scalar::one());
        let img = iota(&KillingSection::from_coords(n, &c)?)?;
        columns.push(target.coords_sparse(&img)?);
    }
    Ok(OperatorMatrix::from_columns(target.len(), columns))
}

/// `A_X = [[0, μ⁻₊, 0], [μ⁺₋, 0, (3/2)μ⁺₊], [0, −μ⁻₋, 0]]` on [`killing_space`].
pub fn killing_matrix(x: &PairTensor) -> Result<OperatorMatrix, SpinorError> {
    let sp = killing_space(x.n);
    let mp = mu_part(MuPart::MinusPlus, x, &sp, &sp)?;
    let pm = mu_part(MuPart::PlusMinus, x, &sp, &sp)?;
    let pp = mu_part(MuPart::PlusPlus, x, &sp, &sp)?;
    let mm = mu_part(MuPart::MinusMinus, x, &sp, &sp)?;
    let a = mp
        .add(&pm)
        .and_then(|a| a.add_scaled(&Ext2Scalar::from_rat(rat(3, 2)), &pp))
        .and_then(|a| a.sub(&mm))
        .expect("same shape");
    Ok(a)
}

/// Parameters of the Killing equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingParams {
    pub n: usize,
    pub kappa: Rational,
    pub lambda_sq: Rational,
}

impl KillingParams {
    /// `λ² = (κ/4)(n+3)/(n+2)`.
    pub fn new(n: usize, kappa: Rational) -> Self {
        let lambda_sq = &kappa * rat(n as i64 + 3, 4 * (n as i64 + 2));
        KillingParams { n, kappa, lambda_sq }
    }

    /// `κ = 16n(n+2)`.
    pub fn normalized(n: usize) -> Self {
        Self::new(n, Rational::from_integer((16 * n * (n + 2)).into()))
    }

    pub fn with_lambda_sq(n: usize, kappa: Rational, lambda_sq: Rational) -> Self {
        KillingParams { n, kappa, lambda_sq }
    }

    pub fn lambda(&self) -> f64 {
        to_f64(&self.lambda_sq).sqrt()
    }

    /// The constant `(1/4λ)(n+3)/(n+4)` in the augmented eigenspinor.
    pub fn psi_minus_constant(&self) -> f64 {
        let n = self.n as f64;
        (n + 3.0) / (4.0 * self.lambda() * (n + 4.0))
    }
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemForm {
    Original,
    Scaled,
}

/// 3×3 scalar multipliers of the blocks `μ⁻₊, μ⁺₋, μ⁺₊, μ⁻₋` of the
/// coefficient system. `lambda` is the chosen square root.
pub fn coefficient_system(params: &KillingParams, lambda: f64, form: SystemForm) -> Result<[[f64; 3]; 3], KillingError> {
    if lambda == 0.0 {
        return Err(KillingError::ZeroLambda);
    }
    if params.n < 2 {
        return Err(KillingError::SmallN);
    }
    let n = params.n as f64;
    Ok(match form {
        SystemForm::Original => [
            [0.0, -lambda / (n + 3.0), 0.0],
            [-lambda / (4.0 * n), 0.0, 3.0 * lambda / (2.0 * (n + 3.0))],
            [0.0, -lambda / (4.0 * n), 0.0],
        ],
        SystemForm::Scaled => {
            let s = (to_f64(&params.kappa) / (16.0 * n * (n + 2.0))).sqrt();
            let a = [[0.0, 1.0, 0.0], [1.0, 0.0, 1.5], [0.0, -1.0, 0.0]];
            a.map(|row| row.map(|x| -s * x))
        }
    })
}

/// Outcome of the scaling comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingVerdict {
    pub holds: bool,
    pub max_deviation: f64,
    /// Worst entry `(row, col, original, conjugated scaled)`.
    pub witness: Option<(usize, usize, f64, f64)>,
    pub sign_symmetry: bool,
}

/// Compare `C_orig` with `D⁻¹ C_scaled D`, `D = diag(√((n+3)/4n), 1, −√(4n/(n+3)))`.
pub fn verify_scaling_equivalence(params: &KillingParams, tol: f64) -> Result<ScalingVerdict, KillingError> {
    let lambda = params.lambda();
    let n = params.n as f64;
    let orig = coefficient_system(params, lambda, SystemForm::Original)?;
    let scaled = coefficient_system(params, lambda, SystemForm::Scaled)?;
    let d = [((n + 3.0) / (4.0 * n)).sqrt(), 1.0, -(4.0 * n / (n + 3.0)).sqrt()];
    let mut max_deviation = 0.0f64;
    let mut witness = None;
    for i in 0..3 {
        for j in 0..3 {
            let conj = scaled[i][j] * d[j] / d[i];
            let dev = (orig[i][j] - conj).abs();
            if dev > max_deviation {
                max_deviation = dev;
                witness = Some((i, j, orig[i][j], conj));
            }
        }
    }
    let holds = max_deviation <= tol;
    // (ψ₀, −ψ₁, ψ₋) for −λ: S C(−λ) S = C(λ) with S = diag(1, −1, 1)
    let neg = coefficient_system(params, -lambda, SystemForm::Original)?;
    let sg = [1.0, -1.0, 1.0];
    let sign_symmetry = (0..3).all(|i| (0..3).all(|j| (sg[i] * neg[i][j] * sg[j] - orig[i][j]).abs() <= tol));
    Ok(ScalingVerdict { holds, max_deviation, witness: if holds { None } else { witness }, sign_symmetry })
}

/// The two sides of the `θ⋆` identity on the cone space for a tangent
/// vector `t`: `Σ_u spin(Φ(ut), Φ(U))` over `U ∈ {𝟙, 𝐈, 𝐉, 𝐊}`, and
/// `id ⊗ (p_H Ψt + q_H JΨt)⋆`. `sign` selects `±q⊗Jf` in `F → ℂ² ⊗ F`.
pub fn thetastar_operators(t: &TVector, space: &SpinorSpace, sign: i64) -> Result<(OperatorMatrix, OperatorMatrix), KillingError> {
    let n = t.n();
    let mut lhs = OperatorMatrix::zero(space.dim, space.dim);
    for u in 0..4 {
        let ut = t.left_mul(&crate::scalars::Quaternion::unit(u));
        let fu = FVector::from_real(&crate::scalars::Quaternion::zero(), &ut);
        let cap = FVector::from_h(&HVector::unit(u), n);
        let s = spin_action(&ftof_signed(&fu, sign), &ftof_signed(&cap, sign), space)?;
        lhs = lhs.add(&s).expect("same shape");
    }
    let tf = FVector::from_real(&crate::scalars::Quaternion::zero(), t).coords();
    let jtf = j_pairs(&tf);
    let ph = FVector::from_h(&HVector::p(), n).coords();
    let qh = FVector::from_h(&HVector::q(), n).coords();
    let rhs = star_spinor_op(&ph, &tf, space)?
        .add(&star_spinor_op(&qh, &jtf, space)?)
        .expect("same shape");
    Ok((lhs, rhs))
}

/// `𝟙 ∈ F`, re-exported for the identity's documentation.
pub fn one(n: usize) -> FVector {
    unit_one(n)
}
