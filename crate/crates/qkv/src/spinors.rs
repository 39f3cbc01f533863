//! Graded spinor modules `⊕ Symʳ ⊗ Λˢ∘V` and Clifford multiplication.
//!
//! A summand `Symʳ ⊗ Λˢ∘V` has basis `pʳ⁻ᵏqᵏ ⊗ η_l` at local index
//! `k·dim Λˢ∘V + l`; summands are stacked in the order given.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::linspaces::{j_pairs, sigma_basis, FVector, HETensor, HVector};
use crate::multilinear::{contract_op, primitive_basis, sym_contract_circ_op, sym_mul_op, wedge_circ_op, SpaceTag};
use crate::operator::{OperatorMatrix, SparseVec};
use crate::scalars::{int, Ext2Scalar};

/// The anticommutator constant: `{μ(X), μ(Y)} = 2c·⟨X, Y⟩`.
pub const CLIFFORD_CONSTANT: i64 = -1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpinorError {
    #[error("vector is not orthogonal to 𝟙")]
    NotOrthogonal,
    #[error("tensor does not match the spinor space")]
    Mismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Base,
    Cone,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub name: String,
    pub r: usize,
    pub s: usize,
    pub sym_dim: usize,
    pub prim_dim: usize,
    pub offset: usize,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.sym_dim * self.prim_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorSpace {
    pub variant: Variant,
    pub tag: SpaceTag,
    pub n: usize,
    pub summands: Vec<Summand>,
    pub dim: usize,
}

impl SpinorSpace {
    /// Summands `(name, r, s)` over `V = tag`.
    pub fn custom(tag: SpaceTag, n: usize, parts: &[(&str, usize, usize)]) -> Self {
        Self::build(Variant::Custom, tag, n, parts.iter().map(|(a, r, s)| (a.to_string(), *r, *s)).collect())
    }

    fn build(variant: Variant, tag: SpaceTag, n: usize, parts: Vec<(String, usize, usize)>) -> Self {
        let mut offset = 0;
        let summands = parts
            .into_iter()
            .map(|(name, r, s)| {
                let prim_dim = primitive_basis(tag, n, s).map(|b| b.len()).unwrap_or(0);
                let sm = Summand { name, r, s, sym_dim: r + 1, prim_dim, offset };
                offset += sm.dim();
                sm
            })
            .collect();
        SpinorSpace { variant, tag, n, summands, dim: offset }
    }

    /// `⊕_{r=0}^{n} Symʳ H ⊗ Λⁿ⁻ʳ∘E`.
    pub fn base(n: usize) -> Self {
        Self::build(Variant::Base, SpaceTag::E, n, (0..=n).map(|r| (format!("r{r}"), r, n - r)).collect())
    }

    /// `⊕_{r=0}^{n+1} Symʳℂ² ⊗ Λⁿ⁺¹⁻ʳ∘F`.
    pub fn cone(n: usize) -> Self {
        Self::build(Variant::Cone, SpaceTag::F, n, (0..=n + 1).map(|r| (format!("r{r}"), r, n + 1 - r)).collect())
    }

    pub fn find(&self, r: usize, s: usize) -> Option<&Summand> {
        self.summands.iter().find(|x| x.r == r && x.s == s)
    }

    pub fn summand_dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim()).collect()
    }

    /// `(summand, sym index, primitive index)` of a global index.
    pub fn locate(&self, idx: usize) -> (&Summand, usize, usize) {
        let sm = self
            .summands
            .iter()
            .find(|s| idx >= s.offset && idx < s.offset + s.dim())
            .expect("index in range");
        let local = idx - sm.offset;
        (sm, local / sm.prim_dim, local % sm.prim_dim)
    }

    pub fn label(&self, idx: usize) -> String {
        let (sm, k, p) = self.locate(idx);
        format!("{}.s{}.p{}", sm.name, k, p)
    }

    /// Projection-free embedding of one summand: the identity on it, zero elsewhere.
    pub fn summand_identity(&self, which: usize) -> OperatorMatrix {
        let sm = &self.summands[which];
        let mut m = OperatorMatrix::zero(self.dim, self.dim);
        m.add_block(sm.offset, sm.offset, &OperatorMatrix::identity(sm.dim()));
        m
    }

    fn key(&self) -> (SpaceTag, usize, Vec<(usize, usize)>) {
        (self.tag, self.n, self.summands.iter().map(|s| (s.r, s.s)).collect())
    }
}

/// Element of a spinor space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorVector {
    pub space: Arc<SpinorSpace>,
    pub coords: SparseVec,
}

impl SpinorVector {
    pub fn basis(space: Arc<SpinorSpace>, idx: usize) -> Self {
        let mut coords = SparseVec::new();
        coords.insert(idx, Ext2Scalar::one());
        SpinorVector { space, coords }
    }
    pub fn apply(&self, op: &OperatorMatrix) -> Self {
        SpinorVector { space: self.space.clone(), coords: op.apply(&self.coords) }
    }
}

/// Element of `ℂ² ⊗ V`: coefficient of `h_i ⊗ δ_k` at `i·dim V + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTensor {
    pub tag: SpaceTag,
    pub n: usize,
    pub coords: Vec<Ext2Scalar>,
}

impl PairTensor {
    pub fn zero(tag: SpaceTag, n: usize) -> Self {
        PairTensor { tag, n, coords: vec![Ext2Scalar::zero(); 2 * tag.dim(n)] }
    }
    pub fn outer(tag: SpaceTag, n: usize, h: &[Ext2Scalar; 2], v: &[Ext2Scalar]) -> Self {
        let d = tag.dim(n);
        assert_eq!(v.len(), d);
        let mut t = Self::zero(tag, n);
        for i in 0..2 {
            for k in 0..d {
                t.coords[i * d + k] = &h[i] * &v[k];
            }
        }
        t
    }
    pub fn basis(tag: SpaceTag, n: usize, i: usize, k: usize) -> Self {
        let mut t = Self::zero(tag, n);
        t.coords[i * tag.dim(n) + k] = Ext2Scalar::one();
        t
    }
    pub fn from_he(x: &HETensor) -> Self {
        PairTensor { tag: SpaceTag::E, n: x.n, coords: x.coords.clone() }
    }
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Ext2Scalar)> {
        let d = self.tag.dim(self.n);
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (i / d, i % d, c))
    }
    pub fn add(&self, o: &PairTensor) -> Self {
        PairTensor { tag: self.tag, n: self.n, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
    pub fn scale(&self, c: &Ext2Scalar) -> Self {
        PairTensor { tag: self.tag, n: self.n, coords: self.coords.iter().map(|a| c * a).collect() }
    }
    /// `σ_{ℂ²} ⊗ σ_V`.
    pub fn pairing(&self, o: &PairTensor) -> Ext2Scalar {
        let mut acc = Ext2Scalar::zero();
        for (h1, v1, c1) in self.terms() {
            for (h2, v2, c2) in o.terms() {
                let s = sigma_basis(h1, h2) * sigma_basis(v1, v2);
                if s != 0 {
                    acc += (c1 * c2).scale(&int(s));
                }
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MuPart {
    /// `√2(h·⊗e^#⌟)`
    PlusMinus,
    /// `√2(h^#⌟∘⊗e∧∘)`
    MinusPlus,
    /// `√2(h·⊗e∧∘)`
    PlusPlus,
    /// `√2(h^#⌟∘⊗e^#⌟)`
    MinusMinus,
}

impl MuPart {
    fn shift(self) -> (isize, isize) {
        match self {
            MuPart::PlusMinus => (1, -1),
            MuPart::MinusPlus => (-1, 1),
            MuPart::PlusPlus => (1, 1),
            MuPart::MinusMinus => (-1, -1),
        }
    }
}

/// Block `Symʳ⊗Λˢ∘ → Symʳ'⊗Λˢ'∘` of a μ-component for `h_i ⊗ δ_k`.
fn mu_block(part: MuPart, tag: SpaceTag, n: usize, r: usize, s: usize, i: usize, k: usize) -> OperatorMatrix {
    let (sym, ext) = match part {
        MuPart::PlusMinus => (sym_mul_op(r, i), contract_op(tag, n, s, k)),
        MuPart::MinusPlus => (sym_contract_circ_op(r, i), wedge_circ_op(tag, n, s, k)),
        MuPart::PlusPlus => (sym_mul_op(r, i), wedge_circ_op(tag, n, s, k)),
        MuPart::MinusMinus => (sym_contract_circ_op(r, i), contract_op(tag, n, s, k)),
    };
    sym.kron(&ext).scale(&Ext2Scalar::sqrt2())
}

type MuKey = (SpaceTag, usize, Vec<(usize, usize)>, Vec<(usize, usize)>, MuPart, usize, usize);

fn mu_basis(part: MuPart, from: &SpinorSpace, to: &SpinorSpace, i: usize, k: usize) -> Arc<OperatorMatrix> {
    static CACHE: OnceLock<Mutex<HashMap<MuKey, Arc<OperatorMatrix>>>> = OnceLock::new();
    let key = (from.tag, from.n, from.key().2, to.key().2, part, i, k);
    let map = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = map.lock().expect("cache lock").get(&key) {
        return m.clone();
    }
    let (dr, ds) = part.shift();
    let mut out = OperatorMatrix::zero(to.dim, from.dim);
    for src in &from.summands {
        let (Some(r2), Some(s2)) = (src.r.checked_add_signed(dr), src.s.checked_add_signed(ds)) else {
            continue;
        };
        let Some(dst) = to.find(r2, s2) else {
            continue;
        };
        let block = mu_block(part, from.tag, from.n, src.r, src.s, i, k);
        out.add_block(dst.offset, src.offset, &block);
    }
    let out = Arc::new(out);
    map.lock().expect("cache lock").insert(key, out.clone());
    out
}

/// One μ-component of `x ∈ ℂ² ⊗ V` from `from` into `to`; components
/// landing outside `to` are dropped.
pub fn mu_part(part: MuPart, x: &PairTensor, from: &SpinorSpace, to: &SpinorSpace) -> Result<OperatorMatrix, SpinorError> {
    if x.tag != from.tag || x.n != from.n || to.tag != from.tag || to.n != from.n {
        return Err(SpinorError::Mismatch);
    }
    let mut out = OperatorMatrix::zero(to.dim, from.dim);
    for (i, k, c) in x.terms() {
        out = out.add_scaled(c, &mu_basis(part, from, to, i, k)).expect("same shape");
    }
    Ok(out)
}

/// The four components `(μ⁺₋, μ⁻₊, μ⁺₊, μ⁻₋)` as endomorphisms of `space`.
pub fn mu_components(x: &PairTensor, space: &SpinorSpace) -> Result<[OperatorMatrix; 4], SpinorError> {
    Ok([
        mu_part(MuPart::PlusMinus, x, space, space)?,
        mu_part(MuPart::MinusPlus, x, space, space)?,
        mu_part(MuPart::PlusPlus, x, space, space)?,
        mu_part(MuPart::MinusMinus, x, space, space)?,
    ])
}

/// `μ(x) = √2(h·⊗e^#⌟ + h^#⌟∘⊗e∧∘)` on a spinor space.
pub fn mu(x: &PairTensor, space: &SpinorSpace) -> Result<OperatorMatrix, SpinorError> {
    let a = mu_part(MuPart::PlusMinus, x, space, space)?;
    let b = mu_part(MuPart::MinusPlus, x, space, space)?;
    Ok(a.add(&b).expect("same shape"))
}

/// `μ(h ⊗ e)` for `h ∈ H`, `e ∈ E` on the base space.
pub fn mu_he(h: &HVector, e: &crate::linspaces::EVector, space: &SpinorSpace) -> Result<OperatorMatrix, SpinorError> {
    mu(&PairTensor::from_he(&HETensor::outer(h, e)), space)
}

/// Clifford action of a real tangent vector: `μ(Φ(1 ⊗ t))` on the base space.
pub fn clifford_real(t: &crate::linspaces::TVector, space: &SpinorSpace) -> Result<OperatorMatrix, SpinorError> {
    mu(&PairTensor::from_he(&crate::linspaces::phi(&Ext2Scalar::one(), t)), space)
}

/// `a∧b ↦ ½(μ(a)μ(b) + ⟨a, b⟩)` with `⟨,⟩ = σ_{ℂ²} ⊗ σ_V`.
pub fn spin_action(a: &PairTensor, b: &PairTensor, space: &SpinorSpace) -> Result<OperatorMatrix, SpinorError> {
    let ma = mu(a, space)?;
    let mb = mu(b, space)?;
    let prod = ma.compose(&mb).expect("square");
    let id = OperatorMatrix::scalar(space.dim, a.pairing(b));
    Ok(prod.add(&id).expect("same shape").scale(&Ext2Scalar::from_rat(crate::scalars::rat(1, 2))))
}

/// `1 ⊗ f ↦ (1/√2)(p ⊗ f + sign·q ⊗ Jf)` from `F` into `ℂ² ⊗ F`.
pub fn ftof_signed(f: &FVector, sign: i64) -> PairTensor {
    let n = f.n();
    let c = f.coords();
    let jc = j_pairs(&c);
    let s = Ext2Scalar::inv_sqrt2();
    let p = [Ext2Scalar::one(), Ext2Scalar::zero()];
    let q = [Ext2Scalar::zero(), Ext2Scalar::from_int(sign)];
    PairTensor::outer(SpaceTag::F, n, &p, &c).add(&PairTensor::outer(SpaceTag::F, n, &q, &jc)).scale(&s)
}

/// The identification `F → ℂ² ⊗ F` used on the cone, `1 ⊗ f ↦ (1/√2)(p⊗f + q⊗Jf)`.
pub fn ftof(f: &FVector) -> PairTensor {
    ftof_signed(f, 1)
}

/// `𝟙 ∈ F`.
pub fn unit_one(n: usize) -> FVector {
    FVector::from_h(&HVector::unit(0), n)
}

/// `f·_S = f·𝟙·` on the cone space, for `f ⊥ 𝟙`.
pub fn clifford_s(f: &FVector, space: &SpinorSpace) -> Result<OperatorMatrix, SpinorError> {
    let one = unit_one(f.n());
    if !crate::linspaces::euclid_pairs(&f.coords(), &one.coords()).is_zero() {
        return Err(SpinorError::NotOrthogonal);
    }
    let mf = mu(&ftof(f), space)?;
    let m1 = mu(&ftof(&one), space)?;
    Ok(mf.compose(&m1).expect("square"))
}

/// Half-spin split of the cone space by parity of `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpinSplit {
    /// Summand indices with odd `r`.
    pub plus: Vec<usize>,
    /// Summand indices with even `r`.
    pub minus: Vec<usize>,
    pub plus_dim: usize,
    pub minus_dim: usize,
    /// Set for odd `n`, where the split is computed without support.
    pub flagged: bool,
}

pub fn half_spin_split(space: &SpinorSpace) -> HalfSpinSplit {
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for (i, s) in space.summands.iter().enumerate() {
        if s.r % 2 == 1 {
            plus.push(i);
        } else {
            minus.push(i);
        }
    }
    let dim = |ix: &[usize]| ix.iter().map(|&i| space.summands[i].dim()).sum();
    HalfSpinSplit {
        plus_dim: dim(&plus),
        minus_dim: dim(&minus),
        plus,
        minus,
        flagged: space.n % 2 == 1,
    }
}
