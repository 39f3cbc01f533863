//! The defining representations in the standard picture.
//!
//! `T = E = ℍⁿ` as row vectors, complex structure = left multiplication by
//! `i`, quaternionic structure `J` = left multiplication by `j`. The complex
//! basis of `E` is `δ₁, jδ₁, …, δₙ, jδₙ`; a quaternion entry `z + wj`
//! (`z, w ∈ ℂ`) contributes coordinates `(z, w)`. `H = ℍ` uses the canonical
//! base `p = j`, `q = −1`, so `x = αp + βq` has coordinates `(α, β)`.
//!
//! Every paired coordinate space here shares the same form and structure:
//! `σ(v, w) = Σₖ v₂ₖw₂ₖ₊₁ − v₂ₖ₊₁w₂ₖ` and `J(a, b) = (−b̄, ā)`.

use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::scalars::{Ext2Scalar, Quaternion, RealExt2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("z is not a unit quaternion")]
    NonUnit,
    #[error("matrix is not in Sp(n)")]
    NotSymplectic,
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("(p, q) is not a canonical base: need σ(p, q) = 1 and q = Jp")]
    NonCanonicalBase,
    #[error("quaternion is not imaginary")]
    NotImaginary,
}

/// `σ` on paired complex coordinates.
pub fn sigma_pairs(v: &[Ext2Scalar], w: &[Ext2Scalar]) -> Ext2Scalar {
    assert_eq!(v.len(), w.len());
    let mut acc = Ext2Scalar::zero();
    for k in 0..v.len() / 2 {
        let (a, b) = (&v[2 * k], &v[2 * k + 1]);
        let (c, d) = (&w[2 * k], &w[2 * k + 1]);
        if !a.is_zero() && !d.is_zero() {
            acc += a * d;
        }
        if !b.is_zero() && !c.is_zero() {
            acc -= b * c;
        }
    }
    acc
}

/// `J` on paired complex coordinates; conjugate linear, `J² = −1`.
pub fn j_pairs(v: &[Ext2Scalar]) -> Vec<Ext2Scalar> {
    let mut out = Vec::with_capacity(v.len());
    for k in 0..v.len() / 2 {
        out.push(-v[2 * k + 1].conj());
        out.push(v[2 * k].conj());
    }
    out
}

/// `σ(e, f)` for basis indices of a paired space.
pub fn sigma_basis(a: usize, b: usize) -> i64 {
    if a / 2 != b / 2 || a == b {
        0
    } else if a % 2 == 0 {
        1
    } else {
        -1
    }
}

fn scale_vec(c: &Ext2Scalar, v: &[Ext2Scalar]) -> Vec<Ext2Scalar> {
    v.iter().map(|x| c * x).collect()
}

fn add_vec(v: &[Ext2Scalar], w: &[Ext2Scalar]) -> Vec<Ext2Scalar> {
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

// ------------------------------------------------------------------ TVector

/// Row vector in `ℍⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TVector {
    pub entries: Vec<Quaternion>,
}

impl TVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        TVector { entries }
    }
    pub fn zero(n: usize) -> Self {
        TVector::new(vec![Quaternion::zero(); n])
    }
    /// `δ_a` (0-based `a`).
    pub fn delta(n: usize, a: usize) -> Self {
        let mut v = TVector::zero(n);
        v.entries[a] = Quaternion::one();
        v
    }
    /// Real basis vector `u·δ_a`, `u ∈ {1, i, j, k}` by index; index `4a + u`.
    pub fn real_basis(n: usize, idx: usize) -> Self {
        let mut v = TVector::zero(n);
        v.entries[idx / 4] = Quaternion::unit(idx % 4);
        v
    }
    pub fn n(&self) -> usize {
        self.entries.len()
    }
    pub fn left_mul(&self, q: &Quaternion) -> Self {
        TVector::new(self.entries.iter().map(|x| q * x).collect())
    }
    pub fn right_mul(&self, q: &Quaternion) -> Self {
        TVector::new(self.entries.iter().map(|x| x * q).collect())
    }
    pub fn scale(&self, r: &RealExt2) -> Self {
        TVector::new(self.entries.iter().map(|x| x.scale(r)).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }
    /// `v M` for a quaternionic matrix acting from the right.
    pub fn mul_matrix(&self, m: &QuatMatrix) -> Self {
        assert_eq!(m.rows, self.n());
        let mut out = TVector::zero(m.cols);
        for b in 0..m.cols {
            let mut acc = Quaternion::zero();
            for a in 0..m.rows {
                acc += &self.entries[a] * m.get(a, b);
            }
            out.entries[b] = acc;
        }
        out
    }
    /// Coordinates in the real basis `u·δ_a`.
    pub fn real_coords(&self) -> Vec<RealExt2> {
        self.entries.iter().flat_map(|q| q.coeffs().into_iter().cloned()).collect()
    }
    pub fn from_real_coords(c: &[RealExt2]) -> Self {
        TVector::new(
            c.chunks(4)
                .map(|ch| Quaternion::new(ch[0].clone(), ch[1].clone(), ch[2].clone(), ch[3].clone()))
                .collect(),
        )
    }
}

impl Add<&TVector> for &TVector {
    type Output = TVector;
    fn add(self, r: &TVector) -> TVector {
        TVector::new(self.entries.iter().zip(&r.entries).map(|(a, b)| a + b).collect())
    }
}
impl Sub<&TVector> for &TVector {
    type Output = TVector;
    fn sub(self, r: &TVector) -> TVector {
        TVector::new(self.entries.iter().zip(&r.entries).map(|(a, b)| a - b).collect())
    }
}
impl Neg for &TVector {
    type Output = TVector;
    fn neg(self) -> TVector {
        TVector::new(self.entries.iter().map(|a| -a).collect())
    }
}

// ------------------------------------------------------------------ EVector

/// Vector of `E = ℍⁿ` in the complex basis `δ_a, jδ_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EVector {
    pub coords: Vec<Ext2Scalar>,
}

impl EVector {
    pub fn new(coords: Vec<Ext2Scalar>) -> Self {
        assert!(coords.len() % 2 == 0);
        EVector { coords }
    }
    pub fn zero(n: usize) -> Self {
        EVector::new(vec![Ext2Scalar::zero(); 2 * n])
    }
    /// Basis vector `idx` of `δ₁, jδ₁, δ₂, …`.
    pub fn basis(n: usize, idx: usize) -> Self {
        let mut v = EVector::zero(n);
        v.coords[idx] = Ext2Scalar::one();
        v
    }
    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }
    /// `Ψ`: in the standard picture the identity of `ℍⁿ`.
    pub fn from_t(t: &TVector) -> Self {
        let mut c = Vec::with_capacity(2 * t.n());
        for q in &t.entries {
            let (z, w) = q.complex_pair();
            c.push(z);
            c.push(w);
        }
        EVector::new(c)
    }
    pub fn to_t(&self) -> TVector {
        TVector::new(
            self.coords
                .chunks(2)
                .map(|ch| Quaternion::from_complex_pair(&ch[0], &ch[1]))
                .collect(),
        )
    }
    pub fn j(&self) -> Self {
        EVector::new(j_pairs(&self.coords))
    }
    pub fn scale(&self, c: &Ext2Scalar) -> Self {
        EVector::new(scale_vec(c, &self.coords))
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

impl Add<&EVector> for &EVector {
    type Output = EVector;
    fn add(self, r: &EVector) -> EVector {
        EVector::new(add_vec(&self.coords, &r.coords))
    }
}
impl Sub<&EVector> for &EVector {
    type Output = EVector;
    fn sub(self, r: &EVector) -> EVector {
        EVector::new(self.coords.iter().zip(&r.coords).map(|(a, b)| a - b).collect())
    }
}

// ------------------------------------------------------------------ HVector

/// Vector of `H = ℍ` in the canonical base `p = j`, `q = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HVector {
    pub coords: [Ext2Scalar; 2],
}

impl HVector {
    pub fn new(alpha: Ext2Scalar, beta: Ext2Scalar) -> Self {
        HVector { coords: [alpha, beta] }
    }
    pub fn p() -> Self {
        HVector::new(Ext2Scalar::one(), Ext2Scalar::zero())
    }
    pub fn q() -> Self {
        HVector::new(Ext2Scalar::zero(), Ext2Scalar::one())
    }
    pub fn basis(idx: usize) -> Self {
        if idx == 0 {
            HVector::p()
        } else {
            HVector::q()
        }
    }
    /// `x = z + wj = w·p + (−z)·q`.
    pub fn from_quaternion(x: &Quaternion) -> Self {
        let (z, w) = x.complex_pair();
        HVector::new(w, -z)
    }
    pub fn to_quaternion(&self) -> Quaternion {
        let [a, b] = &self.coords;
        Quaternion::from_complex_pair(&-b, a)
    }
    /// Images `𝟙, 𝐈, 𝐉, 𝐊` of `1, i, j, k`.
    pub fn unit(u: usize) -> Self {
        HVector::from_quaternion(&Quaternion::unit(u))
    }
    pub fn j(&self) -> Self {
        let v = j_pairs(&self.coords);
        HVector::new(v[0].clone(), v[1].clone())
    }
    pub fn scale(&self, c: &Ext2Scalar) -> Self {
        HVector::new(c * &self.coords[0], c * &self.coords[1])
    }
}

impl Add<&HVector> for &HVector {
    type Output = HVector;
    fn add(self, r: &HVector) -> HVector {
        HVector::new(&self.coords[0] + &r.coords[0], &self.coords[1] + &r.coords[1])
    }
}

// ------------------------------------------------------------------ FVector

/// Vector of `F = H ⊕ E`; flat coordinates are `(α, β, z₁, w₁, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    pub h_part: HVector,
    pub e_part: EVector,
}

impl FVector {
    pub fn new(h_part: HVector, e_part: EVector) -> Self {
        FVector { h_part, e_part }
    }
    pub fn from_h(h: &HVector, n: usize) -> Self {
        FVector::new(h.clone(), EVector::zero(n))
    }
    pub fn from_e(e: &EVector) -> Self {
        FVector::new(HVector::new(Ext2Scalar::zero(), Ext2Scalar::zero()), e.clone())
    }
    pub fn basis(n: usize, idx: usize) -> Self {
        let mut c = vec![Ext2Scalar::zero(); 2 * n + 2];
        c[idx] = Ext2Scalar::one();
        FVector::from_coords(&c)
    }
    /// Real vector `(x, t) ∈ ℍ ⊕ ℍⁿ`, with `x ↦ H` by the `𝟙, 𝐈, 𝐉, 𝐊` chart.
    pub fn from_real(x: &Quaternion, t: &TVector) -> Self {
        FVector::new(HVector::from_quaternion(x), EVector::from_t(t))
    }
    pub fn n(&self) -> usize {
        self.e_part.n()
    }
    pub fn coords(&self) -> Vec<Ext2Scalar> {
        let mut c = self.h_part.coords.to_vec();
        c.extend(self.e_part.coords.iter().cloned());
        c
    }
    pub fn from_coords(c: &[Ext2Scalar]) -> Self {
        FVector::new(HVector::new(c[0].clone(), c[1].clone()), EVector::new(c[2..].to_vec()))
    }
    pub fn j(&self) -> Self {
        FVector::new(self.h_part.j(), self.e_part.j())
    }
    pub fn scale(&self, c: &Ext2Scalar) -> Self {
        FVector::new(self.h_part.scale(c), self.e_part.scale(c))
    }
}

impl Add<&FVector> for &FVector {
    type Output = FVector;
    fn add(self, r: &FVector) -> FVector {
        FVector::new(&self.h_part + &r.h_part, &self.e_part + &r.e_part)
    }
}

pub fn sigma_e(v: &EVector, w: &EVector) -> Ext2Scalar {
    sigma_pairs(&v.coords, &w.coords)
}

pub fn sigma_h(v: &HVector, w: &HVector) -> Ext2Scalar {
    sigma_pairs(&v.coords, &w.coords)
}

pub fn sigma_f(v: &FVector, w: &FVector) -> Ext2Scalar {
    sigma_h(&v.h_part, &w.h_part) + sigma_e(&v.e_part, &w.e_part)
}

/// Euclidean product `Re σ(·, J·)` on a paired space.
pub fn euclid_pairs(v: &[Ext2Scalar], w: &[Ext2Scalar]) -> RealExt2 {
    sigma_pairs(v, &j_pairs(w)).re
}

/// `σ_{ℍⁿ}(v₁, v₂) = [v₁ v₂ᴴ j]_ℂ` evaluated with quaternions.
pub fn sigma_hn(v: &TVector, w: &TVector) -> Ext2Scalar {
    let j = Quaternion::j();
    let mut acc = Quaternion::zero();
    for (a, b) in v.entries.iter().zip(&w.entries) {
        acc += &(a * &b.conj()) * &j;
    }
    acc.c_part()
}

/// `⟨v, w⟩ = Re v wᴴ`.
pub fn inner_t(v: &TVector, w: &TVector) -> RealExt2 {
    v.entries.iter().zip(&w.entries).map(|(a, b)| a.dot(b)).sum()
}

/// `σ_T(t₁, t₂) = ⟨jt₁, t₂⟩ + i⟨kt₁, t₂⟩`.
pub fn sigma_t(t1: &TVector, t2: &TVector) -> Ext2Scalar {
    Ext2Scalar::from_parts(
        inner_t(&t1.left_mul(&Quaternion::j()), t2),
        inner_t(&t1.left_mul(&Quaternion::k()), t2),
    )
}

/// `e₁e₂ ∈ Sym²E` acting on `e`: `σ(e₁, e)e₂ + σ(e₂, e)e₁`.
pub fn sym2e_action(e1: &EVector, e2: &EVector, e: &EVector) -> EVector {
    &e2.scale(&sigma_e(e1, e)) + &e1.scale(&sigma_e(e2, e))
}

// --------------------------------------------------------------- QuatMatrix

/// Dense quaternionic matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Quaternion>,
}

impl QuatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QuatMatrix { rows, cols, entries: vec![Quaternion::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = QuatMatrix::zero(n, n);
        for a in 0..n {
            m.set(a, a, Quaternion::one());
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        QuatMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }
    pub fn get(&self, a: usize, b: usize) -> &Quaternion {
        &self.entries[a * self.cols + b]
    }
    pub fn set(&mut self, a: usize, b: usize, q: Quaternion) {
        self.entries[a * self.cols + b] = q;
    }
    /// Conjugate transpose.
    pub fn hermitian(&self) -> Self {
        let mut m = QuatMatrix::zero(self.cols, self.rows);
        for a in 0..self.rows {
            for b in 0..self.cols {
                m.set(b, a, self.get(a, b).conj());
            }
        }
        m
    }
    pub fn mul(&self, o: &QuatMatrix) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut m = QuatMatrix::zero(self.rows, o.cols);
        for a in 0..self.rows {
            for b in 0..o.cols {
                let mut acc = Quaternion::zero();
                for c in 0..self.cols {
                    acc += self.get(a, c) * o.get(c, b);
                }
                m.set(a, b, acc);
            }
        }
        m
    }
    pub fn is_symplectic(&self) -> bool {
        self.rows == self.cols && self.hermitian().mul(self) == QuatMatrix::identity(self.rows)
    }
    pub fn scale(&self, r: &RealExt2) -> Self {
        QuatMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|q| q.scale(r)).collect() }
    }
}

/// `(z·A)v = z v Aᴴ`, checked exactly.
pub fn act_group(z: &Quaternion, a: &QuatMatrix, v: &TVector) -> Result<TVector, LinError> {
    if z.norm_sq() != RealExt2::one() {
        return Err(LinError::NonUnit);
    }
    if a.rows != v.n() {
        return Err(LinError::Dimension(a.rows, v.n()));
    }
    if !a.is_symplectic() {
        return Err(LinError::NotSymplectic);
    }
    Ok(v.left_mul(z).mul_matrix(&a.hermitian()))
}

/// The `Sp(1)` factor on `H = ℍ`: `x ↦ x z̄`.
pub fn sp1_act_h(z: &Quaternion, h: &HVector) -> HVector {
    HVector::from_quaternion(&(&h.to_quaternion() * &z.conj()))
}

/// The `Sp(n)` factor on `E = ℍⁿ`: `v ↦ v Aᴴ`.
pub fn spn_act_e(a: &QuatMatrix, e: &EVector) -> EVector {
    EVector::from_t(&e.to_t().mul_matrix(&a.hermitian()))
}

// ------------------------------------------------------------- ℂ ⊗ T, H ⊗ E

/// Element of `ℂ ⊗_ℝ T`: complex coordinates in the real basis `u·δ_a`
/// (index `4a + u`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CTVector {
    pub coords: Vec<Ext2Scalar>,
}

impl CTVector {
    pub fn zero(n: usize) -> Self {
        CTVector { coords: vec![Ext2Scalar::zero(); 4 * n] }
    }
    pub fn basis(n: usize, idx: usize) -> Self {
        let mut v = CTVector::zero(n);
        v.coords[idx] = Ext2Scalar::one();
        v
    }
    /// `x ⊗ t`.
    pub fn tensor(x: &Ext2Scalar, t: &TVector) -> Self {
        CTVector { coords: t.real_coords().into_iter().map(|c| x.scale_real(&c)).collect() }
    }
    pub fn n(&self) -> usize {
        self.coords.len() / 4
    }
    /// `ℂ`-bilinear extension of `⟨,⟩`.
    pub fn inner(&self, other: &CTVector) -> Ext2Scalar {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }
}

impl Add<&CTVector> for &CTVector {
    type Output = CTVector;
    fn add(self, r: &CTVector) -> CTVector {
        CTVector { coords: add_vec(&self.coords, &r.coords) }
    }
}

/// Element of `H ⊗_ℂ E`, coefficient of `h_i ⊗ e_k` at index `i·2n + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HETensor {
    pub n: usize,
    pub coords: Vec<Ext2Scalar>,
}

impl HETensor {
    pub fn zero(n: usize) -> Self {
        HETensor { n, coords: vec![Ext2Scalar::zero(); 4 * n] }
    }
    pub fn basis(n: usize, h: usize, e: usize) -> Self {
        let mut x = HETensor::zero(n);
        x.coords[h * 2 * n + e] = Ext2Scalar::one();
        x
    }
    pub fn outer(h: &HVector, e: &EVector) -> Self {
        let n = e.n();
        let mut x = HETensor::zero(n);
        for (i, hc) in h.coords.iter().enumerate() {
            for (k, ec) in e.coords.iter().enumerate() {
                x.coords[i * 2 * n + k] = hc * ec;
            }
        }
        x
    }
    pub fn get(&self, h: usize, e: usize) -> &Ext2Scalar {
        &self.coords[h * 2 * self.n + e]
    }
    /// Nonzero terms as `(h index, e index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Ext2Scalar)> {
        let m = 2 * self.n;
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (i / m, i % m, c))
    }
    pub fn scale(&self, c: &Ext2Scalar) -> Self {
        HETensor { n: self.n, coords: scale_vec(c, &self.coords) }
    }
    /// `σ_H ⊗ σ_E`.
    pub fn pairing(&self, other: &HETensor) -> Ext2Scalar {
        let mut acc = Ext2Scalar::zero();
        for (h1, e1, c1) in self.terms() {
            for (h2, e2, c2) in other.terms() {
                let s = sigma_basis(h1, h2) * sigma_basis(e1, e2);
                if s != 0 {
                    acc += (c1 * c2).scale(&crate::scalars::int(s));
                }
            }
        }
        acc
    }
    /// Real structure `J ⊗ J`.
    pub fn jj(&self) -> Self {
        let mut out = HETensor::zero(self.n);
        for (h, e, c) in self.terms() {
            let jh = HVector::basis(h).j();
            let je = EVector::basis(self.n, e).j();
            out = &out + &HETensor::outer(&jh, &je).scale(&c.conj());
        }
        out
    }
}

impl Add<&HETensor> for &HETensor {
    type Output = HETensor;
    fn add(self, r: &HETensor) -> HETensor {
        HETensor { n: self.n, coords: add_vec(&self.coords, &r.coords) }
    }
}
impl Sub<&HETensor> for &HETensor {
    type Output = HETensor;
    fn sub(self, r: &HETensor) -> HETensor {
        HETensor { n: self.n, coords: self.coords.iter().zip(&r.coords).map(|(a, b)| a - b).collect() }
    }
}

/// `Φ(x ⊗ t) = (1/√2)(xj ⊗ t − x ⊗ jt)`, i.e. `(x/√2)(p ⊗ t + q ⊗ Jt)`.
pub fn phi(x: &Ext2Scalar, t: &TVector) -> HETensor {
    let e = EVector::from_t(t);
    let c = x * &Ext2Scalar::inv_sqrt2();
    &HETensor::outer(&HVector::p(), &e).scale(&c) + &HETensor::outer(&HVector::q(), &e.j()).scale(&c)
}

/// `Φ` extended `ℂ`-linearly to `ℂ ⊗ T`.
pub fn phi_ct(v: &CTVector) -> HETensor {
    let n = v.n();
    let mut out = HETensor::zero(n);
    for (idx, c) in v.coords.iter().enumerate() {
        if !c.is_zero() {
            out = &out + &phi(c, &TVector::real_basis(n, idx));
        }
    }
    out
}

/// `Φ⁻¹(q ⊗ v) = (1/√2)(1 ⊗ q̄jv + i ⊗ q̄kv)` for quaternion `q ∈ H`.
pub fn phi_inv(q: &Quaternion, v: &TVector) -> CTVector {
    let qb = q.conj();
    let a = v.left_mul(&(&qb * &Quaternion::j()));
    let b = v.left_mul(&(&qb * &Quaternion::k()));
    let s = Ext2Scalar::inv_sqrt2();
    &CTVector::tensor(&s, &a) + &CTVector::tensor(&s.mul_i(), &b)
}

/// `Φ⁻¹` extended `ℂ`-linearly to `H ⊗ E`.
pub fn phi_inv_tensor(x: &HETensor) -> CTVector {
    let n = x.n;
    let mut out = CTVector::zero(n);
    for (h, e, c) in x.terms() {
        let q = HVector::basis(h).to_quaternion();
        let v = EVector::basis(n, e).to_t();
        let img = phi_inv(&q, &v);
        out = &out + &CTVector { coords: scale_vec(c, &img.coords) };
    }
    out
}

/// `x ⊗ t ↦ (1/√2)(xp ⊗ Ψ(t) + xq ⊗ JΨ(t))` for a canonical base `p, q = Jp`.
pub fn phi_family(p: &HVector, q: &HVector, x: &Ext2Scalar, t: &TVector) -> Result<HETensor, LinError> {
    if sigma_h(p, q) != Ext2Scalar::one() || &p.j() != q {
        return Err(LinError::NonCanonicalBase);
    }
    let e = EVector::from_t(t);
    let c = x * &Ext2Scalar::inv_sqrt2();
    Ok(&HETensor::outer(p, &e).scale(&c) + &HETensor::outer(q, &e.j()).scale(&c))
}

// ------------------------------------------------------------ CartanElement

/// Element of `sp(n+1) = (sp(1) ⊕ sp(n)) ⊕ ℍⁿ`, acting on row vectors
/// `(x, v) ∈ ℍ ⊕ ℍⁿ` from the right by the matrix
/// `[[−u, −t], [tᴴ, Aᴴ]]`, so that `u ∈ sp(1)` acts on `H` by `x ↦ −xu`
/// and `A ∈ sp(n)` acts on `E` by `v ↦ vAᴴ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanElement {
    pub sp1_part: Quaternion,
    pub spn_part: QuatMatrix,
    pub hn_part: TVector,
}

impl CartanElement {
    pub fn new(sp1_part: Quaternion, spn_part: QuatMatrix, hn_part: TVector) -> Result<Self, LinError> {
        if !sp1_part.is_imaginary() {
            return Err(LinError::NotImaginary);
        }
        let n = hn_part.n();
        if spn_part.rows != n || spn_part.cols != n {
            return Err(LinError::Dimension(spn_part.rows, n));
        }
        let neg: Vec<Quaternion> = spn_part.entries.iter().map(|q| -q).collect();
        if spn_part.hermitian().entries != neg {
            return Err(LinError::NotSymplectic);
        }
        Ok(CartanElement { sp1_part, spn_part, hn_part })
    }

    pub fn n(&self) -> usize {
        self.hn_part.n()
    }

    pub fn to_matrix(&self) -> QuatMatrix {
        let n = self.n();
        let mut m = QuatMatrix::zero(n + 1, n + 1);
        m.set(0, 0, -&self.sp1_part);
        let ah = self.spn_part.hermitian();
        for a in 0..n {
            m.set(0, a + 1, -&self.hn_part.entries[a]);
            m.set(a + 1, 0, self.hn_part.entries[a].conj());
            for b in 0..n {
                m.set(a + 1, b + 1, ah.get(a, b).clone());
            }
        }
        m
    }

    pub fn from_matrix(m: &QuatMatrix) -> Result<Self, LinError> {
        let n = m.rows - 1;
        let mut ah = QuatMatrix::zero(n, n);
        let mut t = TVector::zero(n);
        for a in 0..n {
            t.entries[a] = -m.get(0, a + 1);
            if m.get(a + 1, 0) != &t.entries[a].conj() {
                return Err(LinError::NotSymplectic);
            }
            for b in 0..n {
                ah.set(a, b, m.get(a + 1, b + 1).clone());
            }
        }
        CartanElement::new(-m.get(0, 0), ah.hermitian(), t)
    }

    /// Bracket of the induced operators `[L_X, L_Y]` where `L_X(w) = w M_X`.
    pub fn bracket(&self, other: &CartanElement) -> Result<CartanElement, LinError> {
        let (mx, my) = (self.to_matrix(), other.to_matrix());
        let a = my.mul(&mx);
        let b = mx.mul(&my);
        let diff = QuatMatrix {
            rows: a.rows,
            cols: a.cols,
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x - y).collect(),
        };
        CartanElement::from_matrix(&diff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn all_e(n: usize) -> Vec<EVector> {
        (0..2 * n).map(|i| EVector::basis(n, i)).collect()
    }

    #[test]
    fn sigma_basis_values() {
        let n = 2;
        let d1 = TVector::delta(n, 0);
        let jd1 = d1.left_mul(&Quaternion::j());
        assert_eq!(sigma_hn(&d1, &jd1), Ext2Scalar::one());
        assert_eq!(sigma_hn(&d1, &TVector::delta(n, 1)), Ext2Scalar::zero());
        assert_eq!(sigma_t(&d1, &jd1), Ext2Scalar::one());
    }

    /// The coordinate formula agrees with `[v wᴴ j]_ℂ` on complex multiples
    /// of every basis pair.
    #[test]
    fn sigma_coordinates_match_quaternion_formula() {
        let n = 2;
        let scalars = [Ext2Scalar::one(), Ext2Scalar::i(), Ext2Scalar::gauss(1, 2)];
        for v in all_e(n) {
            for w in all_e(n) {
                for x in &scalars {
                    for y in &scalars {
                        let (vx, wy) = (v.scale(x), w.scale(y));
                        assert_eq!(sigma_e(&vx, &wy), sigma_hn(&vx.to_t(), &wy.to_t()));
                        assert_eq!(sigma_t(&vx.to_t(), &wy.to_t()), sigma_e(&vx, &wy));
                    }
                }
            }
        }
    }

    #[test]
    fn e_structure_properties() {
        let n = 2;
        for v in all_e(n) {
            assert!(sigma_e(&v, &v).is_zero());
            let s = sigma_e(&v, &v.j());
            assert!(s.is_real() && s.re.signum() > 0);
            for w in all_e(n) {
                assert_eq!(sigma_e(&v, &w), -sigma_e(&w, &v));
                assert_eq!(sigma_e(&v.j(), &w.j()), sigma_e(&v, &w).conj());
            }
        }
    }

    #[test]
    fn inner_product_is_re_sigma() {
        let n = 2;
        for a in 0..4 * n {
            for b in 0..4 * n {
                let (v, w) = (TVector::real_basis(n, a), TVector::real_basis(n, b));
                let expected = if a == b { RealExt2::one() } else { RealExt2::zero() };
                assert_eq!(inner_t(&v, &w), expected);
                assert_eq!(inner_t(&v, &w), sigma_hn(&v, &w.left_mul(&Quaternion::j())).re);
                for q in Quaternion::units() {
                    assert_eq!(inner_t(&v.left_mul(&q), &w), inner_t(&v, &w.left_mul(&q.conj())));
                }
            }
        }
    }

    fn z45() -> Quaternion {
        // (1 + i)/√2
        Quaternion::new(RealExt2::inv_sqrt2(), RealExt2::inv_sqrt2(), RealExt2::zero(), RealExt2::zero())
    }

    fn swap_matrix() -> QuatMatrix {
        let (o, z) = (Quaternion::one(), Quaternion::zero());
        QuatMatrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]])
    }

    fn j_diag() -> QuatMatrix {
        QuatMatrix::from_rows(vec![vec![Quaternion::j(), Quaternion::zero()], vec![Quaternion::zero(), Quaternion::one()]])
    }

    #[test]
    fn group_action() {
        let n = 2;
        let v = TVector::new(vec![Quaternion::from_ints(1, 2, 0, -1), Quaternion::from_ints(0, 1, 3, 1)]);
        let id = QuatMatrix::identity(n);
        assert_eq!(act_group(&Quaternion::one(), &id, &v).unwrap(), v);
        let mid = id.scale(&RealExt2::from_int(-1));
        assert_eq!(act_group(&-Quaternion::one(), &mid, &v).unwrap(), v);
        for a in 0..4 * n {
            for b in 0..4 * n {
                let (x, y) = (TVector::real_basis(n, a), TVector::real_basis(n, b));
                let gx = act_group(&z45(), &id, &x).unwrap();
                let gy = act_group(&z45(), &id, &y).unwrap();
                assert_eq!(inner_t(&gx, &gy), inner_t(&x, &y));
            }
        }
        assert_eq!(act_group(&Quaternion::from_ints(1, 1, 0, 0), &id, &v), Err(LinError::NonUnit));
        let bad = id.scale(&RealExt2::from_int(2));
        assert_eq!(act_group(&Quaternion::one(), &bad, &v), Err(LinError::NotSymplectic));
    }

    #[test]
    fn sym2e_is_symplectic() {
        let n = 2;
        let d1 = EVector::basis(n, 0);
        let jd1 = EVector::basis(n, 1);
        let d2 = EVector::basis(n, 2);
        let jd2 = EVector::basis(n, 3);
        let x = |e: &EVector| sym2e_action(&d1, &jd2, e);
        assert!((sigma_e(&x(&d1), &d2) + sigma_e(&d1, &x(&d2))).is_zero());
        for v in all_e(n) {
            for w in all_e(n) {
                assert!((sigma_e(&x(&v), &w) + sigma_e(&v, &x(&w))).is_zero());
            }
        }
        let v = EVector::new(vec![Ext2Scalar::gauss(1, 1), Ext2Scalar::gauss(0, 2), Ext2Scalar::one(), Ext2Scalar::zero()]);
        assert_eq!(sym2e_action(&v, &v, &d1), v.scale(&(Ext2Scalar::from_int(2) * sigma_e(&v, &d1))));
        // i·δ₁jδ₁ is fixed by the real structure, so it commutes with J.
        let id1 = d1.scale(&Ext2Scalar::i());
        for v in all_e(n) {
            assert_eq!(sym2e_action(&id1, &jd1, &v.j()), sym2e_action(&id1, &jd1, &v).j());
        }
        // i·δ₁δ₁ is not real; it does not commute with J.
        assert_ne!(sym2e_action(&id1, &d1, &d1.j()), sym2e_action(&id1, &d1, &d1).j());
    }

    #[test]
    fn phi_round_trips() {
        for n in 2..=3 {
            for idx in 0..4 * n {
                let t = TVector::real_basis(n, idx);
                for x in [Ext2Scalar::one(), Ext2Scalar::i()] {
                    let back = phi_inv_tensor(&phi(&x, &t));
                    assert_eq!(back, CTVector::tensor(&x, &t));
                }
            }
            for h in 0..2 {
                for e in 0..2 * n {
                    let x = HETensor::basis(n, h, e);
                    assert_eq!(phi_ct(&phi_inv_tensor(&x)), x);
                }
            }
        }
    }

    #[test]
    fn phi_is_an_isometry_and_real() {
        let n = 2;
        for a in 0..4 * n {
            let ta = TVector::real_basis(n, a);
            let pa = phi(&Ext2Scalar::one(), &ta);
            assert_eq!(pa.jj(), pa);
            for b in 0..4 * n {
                let tb = TVector::real_basis(n, b);
                let pb = phi(&Ext2Scalar::one(), &tb);
                assert_eq!(pa.pairing(&pb), Ext2Scalar::from_real(inner_t(&ta, &tb)));
            }
        }
    }

    #[test]
    fn phi_family_matches_phi() {
        let n = 2;
        for idx in 0..4 * n {
            let t = TVector::real_basis(n, idx);
            let x = Ext2Scalar::gauss(2, -1);
            let a = phi_family(&HVector::p(), &HVector::q(), &x, &t).unwrap();
            assert_eq!(a, phi(&x, &t));
            let m = Ext2Scalar::from_int(-1);
            let b = phi_family(&HVector::p().scale(&m), &HVector::q().scale(&m), &x, &t).unwrap();
            assert_eq!(b, phi(&x, &t).scale(&m));
        }
        let t = TVector::delta(n, 0);
        assert_eq!(
            phi_family(&HVector::q(), &HVector::p(), &Ext2Scalar::one(), &t),
            Err(LinError::NonCanonicalBase)
        );
    }

    /// `Φ((z·A)t) = (z ⊗ A)Φ(t)` with `z` acting on `H` by `x ↦ xz̄`.
    #[test]
    fn phi_is_equivariant() {
        let n = 2;
        let zs = [z45(), Quaternion::new(RealExt2::inv_sqrt2(), RealExt2::zero(), RealExt2::inv_sqrt2(), RealExt2::zero())];
        let mats = [QuatMatrix::identity(n), swap_matrix(), j_diag()];
        for z in &zs {
            for a in &mats {
                for idx in 0..4 * n {
                    let t = TVector::real_basis(n, idx);
                    let lhs = phi(&Ext2Scalar::one(), &act_group(z, a, &t).unwrap());
                    let mut rhs = HETensor::zero(n);
                    for (h, e, c) in phi(&Ext2Scalar::one(), &t).terms() {
                        let hh = sp1_act_h(z, &HVector::basis(h));
                        let ee = spn_act_e(a, &EVector::basis(n, e));
                        rhs = &rhs + &HETensor::outer(&hh, &ee).scale(c);
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn h_chart() {
        assert_eq!(HVector::from_quaternion(&Quaternion::j()), HVector::p());
        assert_eq!(HVector::from_quaternion(&-Quaternion::one()), HVector::q());
        assert_eq!(sigma_h(&HVector::p(), &HVector::q()), Ext2Scalar::one());
        assert_eq!(HVector::p().j(), HVector::q());
        for u in 0..4 {
            let q = Quaternion::unit(u);
            assert_eq!(HVector::from_quaternion(&q).to_quaternion(), q);
            assert_eq!(HVector::from_quaternion(&q).j(), HVector::from_quaternion(&(&Quaternion::j() * &q)));
        }
    }

    #[test]
    fn f_form_splits() {
        let n = 2;
        for a in 0..2 * n + 2 {
            for b in 0..2 * n + 2 {
                let (fa, fb) = (FVector::basis(n, a), FVector::basis(n, b));
                let expect = Ext2Scalar::from_int(sigma_basis(a, b));
                assert_eq!(sigma_f(&fa, &fb), expect);
            }
        }
        let one = FVector::from_h(&HVector::unit(0), n);
        assert_eq!(euclid_pairs(&one.coords(), &one.coords()), RealExt2::one());
    }

    #[test]
    fn cartan_matrix_round_trip() {
        let n = 2;
        let t = TVector::new(vec![Quaternion::from_ints(1, 0, 2, 0), Quaternion::from_ints(0, 1, 0, -1)]);
        let mut a = QuatMatrix::zero(n, n);
        a.set(0, 1, Quaternion::from_ints(1, 1, 0, 0));
        a.set(1, 0, Quaternion::from_ints(-1, 1, 0, 0));
        a.set(0, 0, Quaternion::k());
        let x = CartanElement::new(Quaternion::from_ints(0, 1, -1, 0), a, t).unwrap();
        assert_eq!(CartanElement::from_matrix(&x.to_matrix()).unwrap(), x);
        assert!(CartanElement::new(Quaternion::one(), QuatMatrix::zero(n, n), TVector::zero(n)).is_err());
        let _ = rat(1, 2);
    }
}
