//! Exterior powers of `H`, `E`, `F`, their primitive subspaces, the
//! canonical bivectors, and symmetric powers of a 2-dimensional space.
//!
//! A blade `δ_{i₁}∧…∧δ_{iₛ}` with `i₁ < … < iₛ` is stored as the bitmask
//! `Σ 2^{iₖ}`. Bases of `ΛˢV` are enumerated in lexicographic tuple order.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{rref, solve, SparseRow};
use crate::linspaces::sigma_basis;
use crate::operator::{OperatorMatrix, SparseVec};
use crate::scalars::{int, Ext2Scalar, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiError {
    #[error("mismatched spaces")]
    SpaceMismatch,
    #[error("degree {0} is too low for this operation")]
    DegreeTooLow(usize),
    #[error("degree {0} out of range for dimension {1}")]
    DegreeOutOfRange(usize, usize),
    #[error("multivector is not primitive")]
    NotPrimitive,
    #[error("symmetric tensor of degree 0 cannot be contracted")]
    SymDegreeZero,
}

/// Which paired space a multivector lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceTag {
    H,
    E,
    F,
}

impl SpaceTag {
    /// Number of symplectic pairs `m`; `dim V = 2m`.
    pub fn pairs(self, n: usize) -> usize {
        match self {
            SpaceTag::H => 1,
            SpaceTag::E => n,
            SpaceTag::F => n + 1,
        }
    }
    pub fn dim(self, n: usize) -> usize {
        2 * self.pairs(n)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Sign of `δ_a ∧ δ_b` relative to the sorted blade, or `None` on overlap.
pub fn wedge_sign(a: u64, b: u64) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let inversions: u32 = bits(b).map(|j| (a >> (j + 1)).count_ones()).sum();
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// All `s`-subsets of `0..d` as bitmasks, in lexicographic tuple order.
pub fn blades(d: usize, s: usize) -> Vec<u64> {
    fn rec(start: usize, d: usize, s: usize, acc: u64, out: &mut Vec<u64>) {
        if s == 0 {
            out.push(acc);
            return;
        }
        for i in start..=d - s {
            rec(i + 1, d, s - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if s <= d {
        rec(0, d, s, 0, &mut out);
    }
    out
}

/// Homogeneous element of `ΛˢV`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    pub tag: SpaceTag,
    pub n: usize,
    pub degree: usize,
    pub terms: BTreeMap<u64, Ext2Scalar>,
}

impl MultiVector {
    pub fn zero(tag: SpaceTag, n: usize, degree: usize) -> Self {
        MultiVector { tag, n, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(tag: SpaceTag, n: usize, c: Ext2Scalar) -> Self {
        let mut m = Self::zero(tag, n, 0);
        m.add_term(0, c);
        m
    }

    pub fn blade(tag: SpaceTag, n: usize, mask: u64) -> Self {
        let mut m = Self::zero(tag, n, mask.count_ones() as usize);
        m.add_term(mask, Ext2Scalar::one());
        m
    }

    /// Degree-1 element with the given coordinates.
    pub fn vector(tag: SpaceTag, n: usize, coords: &[Ext2Scalar]) -> Self {
        assert_eq!(coords.len(), tag.dim(n));
        let mut m = Self::zero(tag, n, 1);
        for (i, c) in coords.iter().enumerate() {
            m.add_term(1 << i, c.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.tag.dim(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u64, c: Ext2Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        let e = self.terms.entry(mask).or_insert_with(Ext2Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn same_space(&self, other: &MultiVector) -> Result<(), MultiError> {
        if self.tag != other.tag || self.n != other.n {
            return Err(MultiError::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiVector) -> Result<Self, MultiError> {
        self.same_space(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !other.is_zero() && self.degree != other.degree {
            return Err(MultiError::SpaceMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiVector) -> Result<Self, MultiError> {
        self.add(&other.scale(&Ext2Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Ext2Scalar) -> Self {
        let mut out = Self::zero(self.tag, self.n, self.degree);
        for (m, x) in &self.terms {
            out.add_term(*m, c * x);
        }
        out
    }

    /// Coordinates in the lexicographic blade basis of `ΛˢV`.
    pub fn dense(&self) -> Vec<Ext2Scalar> {
        blades(self.dim(), self.degree)
            .into_iter()
            .map(|b| self.terms.get(&b).cloned().unwrap_or_else(Ext2Scalar::zero))
            .collect()
    }

    /// `E ⊂ F` or `H ⊂ F` inclusion.
    pub fn include_in_f(&self) -> Self {
        let shift = match self.tag {
            SpaceTag::E => 2,
            SpaceTag::H | SpaceTag::F => 0,
        };
        let mut out = Self::zero(SpaceTag::F, self.n, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m << shift, c.clone());
        }
        out
    }

    /// The real structure `ΛˢJ`, conjugate linear.
    pub fn apply_j(&self) -> Self {
        let mut out = Self::zero(self.tag, self.n, self.degree);
        for (mask, c) in &self.terms {
            let mut sign = 1i64;
            let mut img = 0u64;
            for i in bits(*mask) {
                // Jδ₂ₖ = δ₂ₖ₊₁, Jδ₂ₖ₊₁ = −δ₂ₖ
                let (j, s) = if i % 2 == 0 { (i + 1, 1) } else { (i - 1, -1) };
                sign *= s * wedge_sign(img, 1 << j).expect("J permutes basis lines");
                img |= 1 << j;
            }
            out.add_term(img, c.conj().scale(&int(sign)));
        }
        out
    }
}

pub fn wedge(a: &MultiVector, b: &MultiVector) -> Result<MultiVector, MultiError> {
    a.same_space(b)?;
    let degree = a.degree + b.degree;
    if degree > a.dim() {
        return Err(MultiError::DegreeOutOfRange(degree, a.dim()));
    }
    let mut out = MultiVector::zero(a.tag, a.n, degree);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some(s) = wedge_sign(*ma, *mb) {
                out.add_term(ma | mb, (ca * cb).scale(&int(s)));
            }
        }
    }
    Ok(out)
}

/// `δ_k^#⌟η` with `δ_k^# = σ(δ_k, ·)`.
fn contract_basis(k: usize, eta: &MultiVector, out: &mut MultiVector) {
    let partner = k ^ 1;
    let s = sigma_basis(k, partner);
    for (mask, c) in &eta.terms {
        if mask >> partner & 1 == 1 {
            let pos = (mask & ((1u64 << partner) - 1)).count_ones();
            let sign = if pos % 2 == 0 { s } else { -s };
            out.add_term(mask & !(1 << partner), c.scale(&int(sign)));
        }
    }
}

/// `e^#⌟η`, the anti-derivation extending `e^#⌟f = σ(e, f)`.
pub fn contract_dual(e: &[Ext2Scalar], eta: &MultiVector) -> Result<MultiVector, MultiError> {
    if eta.degree == 0 {
        return Err(MultiError::DegreeTooLow(0));
    }
    if e.len() != eta.dim() {
        return Err(MultiError::SpaceMismatch);
    }
    let mut out = MultiVector::zero(eta.tag, eta.n, eta.degree - 1);
    for (k, ek) in e.iter().enumerate() {
        if !ek.is_zero() {
            let mut part = MultiVector::zero(eta.tag, eta.n, eta.degree - 1);
            contract_basis(k, eta, &mut part);
            for (m, c) in part.terms {
                out.add_term(m, ek * &c);
            }
        }
    }
    Ok(out)
}

/// `σ⌟`, contraction with the symplectic form; `σ⌟(a∧b) = σ(a, b)`.
pub fn sigma_contract(eta: &MultiVector) -> Result<MultiVector, MultiError> {
    if eta.degree < 2 {
        return Err(MultiError::DegreeTooLow(eta.degree));
    }
    let mut out = MultiVector::zero(eta.tag, eta.n, eta.degree - 2);
    for (mask, c) in &eta.terms {
        for k in 0..eta.dim() / 2 {
            let pair = 0b11u64 << (2 * k);
            if mask & pair == pair {
                out.add_term(mask & !pair, c.clone());
            }
        }
    }
    Ok(out)
}

/// `σ⌟` extended by zero below degree 2.
pub fn is_primitive(eta: &MultiVector) -> bool {
    eta.degree < 2 || sigma_contract(eta).map(|x| x.is_zero()).unwrap_or(false)
}

/// Extend an endomorphism `X` of `V` (given by columns on the basis) to
/// `ΛˢV` as a derivation.
pub fn extend_derivation(x_cols: &[Vec<Ext2Scalar>], eta: &MultiVector) -> MultiVector {
    let mut out = MultiVector::zero(eta.tag, eta.n, eta.degree);
    for (mask, c) in &eta.terms {
        for k in bits(*mask) {
            let rest = mask & !(1 << k);
            let pos = (mask & ((1u64 << k) - 1)).count_ones();
            for (j, xjk) in x_cols[k].iter().enumerate() {
                if xjk.is_zero() {
                    continue;
                }
                // replace δ_k at position pos by δ_j
                let before = (rest & ((1u64 << j) - 1)).count_ones();
                if rest >> j & 1 == 1 {
                    continue;
                }
                let sign = if (pos + before) % 2 == 0 { 1 } else { -1 };
                out.add_term(rest | 1 << j, (c * xjk).scale(&int(sign)));
            }
        }
    }
    out
}

// --------------------------------------------------------- primitive bases

/// Basis of `Λˢ∘V = ker(σ⌟: ΛˢV → Λˢ⁻²V)`.
///
/// The vectors come from the reduced row echelon form of `σ⌟` with one
/// kernel vector per free column; the coordinate of a primitive element
/// along vector `i` is its coefficient on the `i`-th free blade.
#[derive(Debug)]
pub struct PrimitiveBasis {
    pub tag: SpaceTag,
    pub n: usize,
    pub degree: usize,
    pub vectors: Vec<MultiVector>,
    pub free_blades: Vec<u64>,
}

impl PrimitiveBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates of a primitive multivector, verified by reconstruction.
    pub fn coords(&self, eta: &MultiVector) -> Result<Vec<Ext2Scalar>, MultiError> {
        let c = self.coords_sparse(eta)?;
        let mut dense = vec![Ext2Scalar::zero(); self.len()];
        for (i, x) in c {
            dense[i] = x;
        }
        Ok(dense)
    }

    pub fn coords_sparse(&self, eta: &MultiVector) -> Result<SparseVec, MultiError> {
        if eta.is_zero() {
            return Ok(SparseVec::new());
        }
        if eta.tag != self.tag || eta.n != self.n || eta.degree != self.degree {
            return Err(MultiError::SpaceMismatch);
        }
        let mut out = SparseVec::new();
        let mut rebuilt = MultiVector::zero(self.tag, self.n, self.degree);
        for (i, b) in self.free_blades.iter().enumerate() {
            if let Some(c) = eta.terms.get(b) {
                for (m, x) in &self.vectors[i].terms {
                    rebuilt.add_term(*m, c * x);
                }
                out.insert(i, c.clone());
            }
        }
        if &rebuilt != eta {
            return Err(MultiError::NotPrimitive);
        }
        Ok(out)
    }

    pub fn from_coords(&self, c: &SparseVec) -> MultiVector {
        let mut out = MultiVector::zero(self.tag, self.n, self.degree);
        for (i, x) in c {
            for (m, y) in &self.vectors[*i].terms {
                out.add_term(*m, x * y);
            }
        }
        out
    }
}

fn build_primitive_basis(tag: SpaceTag, n: usize, s: usize) -> PrimitiveBasis {
    let d = tag.dim(n);
    let cols = blades(d, s);
    let vectors;
    let free_blades;
    if s < 2 {
        vectors = cols.iter().map(|b| MultiVector::blade(tag, n, *b)).collect();
        free_blades = cols;
    } else {
        let row_index: HashMap<u64, usize> =
            blades(d, s - 2).into_iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut rows = vec![SparseRow::new(); row_index.len()];
        for (j, b) in cols.iter().enumerate() {
            let img = sigma_contract(&MultiVector::blade(tag, n, *b)).expect("degree ≥ 2");
            for (m, c) in img.terms {
                rows[row_index[&m]].insert(j, c.re_rat().clone());
            }
        }
        let red = rref(rows, cols.len());
        free_blades = red.free_columns().into_iter().map(|j| cols[j]).collect();
        vectors = red
            .kernel()
            .into_iter()
            .map(|kv| {
                let mut mv = MultiVector::zero(tag, n, s);
                for (j, x) in kv {
                    mv.add_term(cols[j], Ext2Scalar::from_rat(x));
                }
                mv
            })
            .collect();
    }
    PrimitiveBasis { tag, n, degree: s, vectors, free_blades }
}

type Cache<K, V> = OnceLock<Mutex<HashMap<K, Arc<V>>>>;

fn cached<K: std::hash::Hash + Eq + Clone, V>(cache: &'static Cache<K, V>, key: K, build: impl FnOnce() -> V) -> Arc<V> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    let v = Arc::new(build());
    map.lock().expect("cache lock").entry(key).or_insert(v).clone()
}

/// Cached primitive basis of `ΛˢV`.
pub fn primitive_basis(tag: SpaceTag, n: usize, s: usize) -> Result<Arc<PrimitiveBasis>, MultiError> {
    if s > tag.dim(n) {
        return Err(MultiError::DegreeOutOfRange(s, tag.dim(n)));
    }
    static CACHE: Cache<(SpaceTag, usize, usize), PrimitiveBasis> = OnceLock::new();
    Ok(cached(&CACHE, (tag, n, s), || build_primitive_basis(tag, n, s)))
}

/// `C(2m, s) − C(2m, s−2)`.
pub fn primitive_dim_formula(tag: SpaceTag, n: usize, s: usize) -> usize {
    let d = tag.dim(n) as u64;
    let c = |k: i64| -> u64 {
        if k < 0 || k as u64 > d {
            0
        } else {
            (0..k as u64).fold(1u64, |acc, i| acc * (d - i) / (i + 1))
        }
    };
    c(s as i64).saturating_sub(c(s as i64 - 2)) as usize
}

// ------------------------------------------------------ canonical bivector

/// The canonical bivector with its solve data.
#[derive(Debug)]
pub struct CanonicalBivector {
    pub bivector: MultiVector,
    /// Dimension of the solution space of the normalisation equations.
    pub nullity: usize,
    /// `σ⌟L`, read off after the solve.
    pub sigma_value: Ext2Scalar,
}

/// Solve for `L ∈ Λ²V` from `[σ⌟, L∧] = (m − k)` on `Λᵏ∘V`, using
/// `k = 1, 2` when `m ≥ 2` and `k = 0` when `m = 1`.
fn solve_bivector(tag: SpaceTag, n: usize) -> CanonicalBivector {
    let m = tag.pairs(n);
    let d = tag.dim(n);
    let unknowns = blades(d, 2);
    let degrees: Vec<usize> = if m == 1 { vec![0] } else { vec![1, 2] };
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for k in degrees {
        let pb = primitive_basis(tag, n, k).expect("small degree");
        let target_blades = blades(d, k);
        for eta in &pb.vectors {
            // column u: [σ⌟, δ_u∧](η) in blade coordinates
            let mut eqs: BTreeMap<u64, SparseRow> = BTreeMap::new();
            for (u, b) in unknowns.iter().enumerate() {
                let l = MultiVector::blade(tag, n, *b);
                let mut img = sigma_contract(&wedge(&l, eta).expect("degree fits")).expect("degree ≥ 2");
                if k >= 2 {
                    let lower = sigma_contract(eta).expect("degree ≥ 2");
                    img = img.sub(&wedge(&l, &lower).expect("degree fits")).expect("same space");
                }
                for (mask, c) in img.terms {
                    eqs.entry(mask).or_default().insert(u, c.re_rat().clone());
                }
            }
            for tb in &target_blades {
                let want = eta.terms.get(tb).map(|c| c.re_rat() * int(m as i64 - k as i64)).unwrap_or_else(Rational::zero);
                let row = eqs.remove(tb).unwrap_or_default();
                if row.is_empty() && want.is_zero() {
                    continue;
                }
                rows.push(row);
                rhs.push(want);
            }
        }
    }
    let (x, nullity) = solve(&rows, unknowns.len(), &rhs).expect("normalisation equations are consistent");
    let mut bivector = MultiVector::zero(tag, n, 2);
    for (u, c) in x.into_iter().enumerate() {
        bivector.add_term(unknowns[u], Ext2Scalar::from_rat(c));
    }
    let sigma_value = sigma_contract(&bivector)
        .expect("degree 2")
        .terms
        .get(&0)
        .cloned()
        .unwrap_or_else(Ext2Scalar::zero);
    CanonicalBivector { bivector, nullity, sigma_value }
}

/// Cached canonical bivector `L_V`.
pub fn canonical_bivector(tag: SpaceTag, n: usize) -> Arc<CanonicalBivector> {
    static CACHE: Cache<(SpaceTag, usize), CanonicalBivector> = OnceLock::new();
    cached(&CACHE, (tag, n), || solve_bivector(tag, n))
}

/// `e∧∘η = e∧η − 1/(m−s+1) L∧(e^#⌟η)` for primitive `η ∈ Λˢ∘V`.
pub fn wedge_circ(e: &[Ext2Scalar], eta: &MultiVector) -> Result<MultiVector, MultiError> {
    if !is_primitive(eta) {
        return Err(MultiError::NotPrimitive);
    }
    let (tag, n, s) = (eta.tag, eta.n, eta.degree);
    let m = tag.pairs(n);
    let ev = MultiVector::vector(tag, n, e);
    if s > m {
        // Λˢ∘V = 0 here
        return Ok(MultiVector::zero(tag, n, s + 1));
    }
    let main = wedge(&ev, eta)?;
    if s == 0 {
        return Ok(main);
    }
    let l = &canonical_bivector(tag, n).bivector;
    let corr = wedge(l, &contract_dual(e, eta)?)?;
    main.sub(&corr.scale(&Ext2Scalar::from_rat(Rational::new(1.into(), ((m - s + 1) as i64).into()))))
}

fn basis_vector(tag: SpaceTag, n: usize, k: usize) -> Vec<Ext2Scalar> {
    let mut v = vec![Ext2Scalar::zero(); tag.dim(n)];
    v[k] = Ext2Scalar::one();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum PrimOp {
    Contract,
    WedgeCirc,
}

fn build_prim_op(tag: SpaceTag, n: usize, s: usize, k: usize, op: PrimOp) -> OperatorMatrix {
    let src = primitive_basis(tag, n, s).expect("degree in range");
    let e = basis_vector(tag, n, k);
    let t = match op {
        PrimOp::Contract => s.checked_sub(1),
        PrimOp::WedgeCirc => Some(s + 1).filter(|&t| t <= tag.dim(n)),
    };
    let Some(t) = t else {
        return OperatorMatrix::zero(0, src.len());
    };
    let dst = primitive_basis(tag, n, t).expect("degree in range");
    let columns = src
        .vectors
        .iter()
        .map(|eta| {
            let img = match op {
                PrimOp::Contract => contract_dual(&e, eta),
                PrimOp::WedgeCirc => wedge_circ(&e, eta),
            }
            .expect("valid input");
            dst.coords_sparse(&img).expect("image is primitive")
        })
        .collect();
    OperatorMatrix::from_columns(dst.len(), columns)
}

fn prim_op(tag: SpaceTag, n: usize, s: usize, k: usize, op: PrimOp) -> Arc<OperatorMatrix> {
    static CACHE: Cache<(SpaceTag, usize, usize, usize, PrimOp), OperatorMatrix> = OnceLock::new();
    cached(&CACHE, (tag, n, s, k, op), || build_prim_op(tag, n, s, k, op))
}

/// `δ_k^#⌟ : Λˢ∘V → Λˢ⁻¹∘V` in primitive coordinates.
pub fn contract_op(tag: SpaceTag, n: usize, s: usize, k: usize) -> Arc<OperatorMatrix> {
    prim_op(tag, n, s, k, PrimOp::Contract)
}

/// `δ_k∧∘ : Λˢ∘V → Λˢ⁺¹∘V` in primitive coordinates.
pub fn wedge_circ_op(tag: SpaceTag, n: usize, s: usize, k: usize) -> Arc<OperatorMatrix> {
    prim_op(tag, n, s, k, PrimOp::WedgeCirc)
}

// ------------------------------------------------------- symmetric powers

/// Element of `Symʳ` of a 2-dimensional symplectic space with base `p, q`;
/// `coords[k]` multiplies `pʳ⁻ᵏqᵏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    pub degree: usize,
    pub coords: Vec<Ext2Scalar>,
}

impl SymTensor {
    pub fn zero(degree: usize) -> Self {
        SymTensor { degree, coords: vec![Ext2Scalar::zero(); degree + 1] }
    }
    pub fn one() -> Self {
        SymTensor { degree: 0, coords: vec![Ext2Scalar::one()] }
    }
    /// `pʳ⁻ᵏqᵏ`.
    pub fn monomial(degree: usize, k: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coords[k] = Ext2Scalar::one();
        s
    }
}

/// `h·s`.
pub fn sym_mul(h: &[Ext2Scalar; 2], s: &SymTensor) -> SymTensor {
    let mut out = SymTensor::zero(s.degree + 1);
    for (k, c) in s.coords.iter().enumerate() {
        out.coords[k] += &h[0] * c;
        out.coords[k + 1] += &h[1] * c;
    }
    out
}

/// `h^#⌟s` with `h^# = σ(h, ·)`, a derivation.
pub fn sym_contract(h: &[Ext2Scalar; 2], s: &SymTensor) -> Result<SymTensor, MultiError> {
    if s.degree == 0 {
        return Err(MultiError::SymDegreeZero);
    }
    let r = s.degree;
    // σ(h, p) = −β, σ(h, q) = α
    let (hp, hq) = (-&h[1], h[0].clone());
    let mut out = SymTensor::zero(r - 1);
    for (k, c) in s.coords.iter().enumerate() {
        let a = r - k;
        if a > 0 {
            out.coords[k] += (&hp * c).scale(&int(a as i64));
        }
        if k > 0 {
            out.coords[k - 1] += (&hq * c).scale(&int(k as i64));
        }
    }
    Ok(out)
}

/// `h^#⌟∘ = (1/r) h^#⌟` on `Symʳ`.
pub fn sym_contract_circ(h: &[Ext2Scalar; 2], s: &SymTensor) -> Result<SymTensor, MultiError> {
    let c = sym_contract(h, s)?;
    let inv = Ext2Scalar::from_rat(Rational::new(1.into(), (s.degree as i64).into()));
    Ok(SymTensor { degree: c.degree, coords: c.coords.iter().map(|x| &inv * x).collect() })
}

fn h_basis(i: usize) -> [Ext2Scalar; 2] {
    if i == 0 {
        [Ext2Scalar::one(), Ext2Scalar::zero()]
    } else {
        [Ext2Scalar::zero(), Ext2Scalar::one()]
    }
}

fn sym_matrix(rows: usize, cols: impl Iterator<Item = SymTensor>) -> OperatorMatrix {
    let columns = cols
        .map(|t| t.coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    OperatorMatrix::from_columns(rows, columns)
}

/// `h_i· : Symʳ → Symʳ⁺¹` for the base vector `h_i ∈ {p, q}`.
pub fn sym_mul_op(r: usize, i: usize) -> OperatorMatrix {
    let h = h_basis(i);
    sym_matrix(r + 2, (0..=r).map(|k| sym_mul(&h, &SymTensor::monomial(r, k))))
}

/// `h_i^#⌟∘ : Symʳ → Symʳ⁻¹`; the zero map with no rows when `r = 0`.
pub fn sym_contract_circ_op(r: usize, i: usize) -> OperatorMatrix {
    if r == 0 {
        return OperatorMatrix::zero(0, 1);
    }
    let h = h_basis(i);
    sym_matrix(r, (0..=r).map(|k| sym_contract_circ(&h, &SymTensor::monomial(r, k)).expect("r ≥ 1")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: usize) -> MultiVector {
        MultiVector::blade(SpaceTag::E, n, 1 << k)
    }

    #[test]
    fn wedge_basics() {
        let n = 2;
        assert!(wedge(&e(n, 0), &e(n, 0)).unwrap().is_zero());
        let a = wedge(&e(n, 0), &e(n, 2)).unwrap();
        let b = wedge(&e(n, 2), &e(n, 0)).unwrap();
        assert_eq!(a, b.scale(&Ext2Scalar::from_int(-1)));
        let x = wedge(&e(n, 0), &e(n, 1)).unwrap();
        let y = wedge(&e(n, 2), &e(n, 3)).unwrap();
        assert_eq!(wedge(&x, &y).unwrap(), wedge(&y, &x).unwrap());
        let f = MultiVector::blade(SpaceTag::F, n, 1);
        assert_eq!(wedge(&e(n, 0), &f), Err(MultiError::SpaceMismatch));
    }

    #[test]
    fn contraction_is_an_antiderivation() {
        let n = 2;
        let d = 2 * n;
        for k in 0..d {
            let ek = basis_vector(SpaceTag::E, n, k);
            for a in blades(d, 1).into_iter().chain(blades(d, 2)) {
                for b in blades(d, 1).into_iter().chain(blades(d, 2)) {
                    let (ma, mb) = (MultiVector::blade(SpaceTag::E, n, a), MultiVector::blade(SpaceTag::E, n, b));
                    if ma.degree + mb.degree > d {
                        continue;
                    }
                    let lhs = contract_dual(&ek, &wedge(&ma, &mb).unwrap()).unwrap();
                    let t1 = wedge(&contract_dual(&ek, &ma).unwrap(), &mb).unwrap();
                    let t2 = wedge(&ma, &contract_dual(&ek, &mb).unwrap()).unwrap();
                    let sign = Ext2Scalar::from_int(if ma.degree % 2 == 0 { 1 } else { -1 });
                    assert_eq!(lhs, t1.add(&t2.scale(&sign)).unwrap());
                }
            }
        }
        // e^#⌟f = σ(e, f)
        for k in 0..d {
            for l in 0..d {
                let c = contract_dual(&basis_vector(SpaceTag::E, n, k), &e(n, l)).unwrap();
                assert_eq!(c.terms.get(&0).cloned().unwrap_or_else(Ext2Scalar::zero), Ext2Scalar::from_int(sigma_basis(k, l)));
            }
        }
        assert_eq!(
            contract_dual(&basis_vector(SpaceTag::E, n, 0), &MultiVector::scalar(SpaceTag::E, n, Ext2Scalar::one())),
            Err(MultiError::DegreeTooLow(0))
        );
    }

    #[test]
    fn sigma_contract_of_pair() {
        let n = 2;
        let x = wedge(&e(n, 0), &e(n, 1)).unwrap();
        assert_eq!(sigma_contract(&x).unwrap(), MultiVector::scalar(SpaceTag::E, n, Ext2Scalar::one()));
        assert!(sigma_contract(&wedge(&e(n, 0), &e(n, 2)).unwrap()).unwrap().is_zero());
        assert!(sigma_contract(&e(n, 0)).is_err());
    }

    #[test]
    fn primitive_dimensions() {
        for n in 2..=3 {
            for tag in [SpaceTag::E, SpaceTag::F] {
                for s in 0..=tag.pairs(n) + 1 {
                    let pb = primitive_basis(tag, n, s).unwrap();
                    assert_eq!(pb.len(), primitive_dim_formula(tag, n, s), "{tag:?} n={n} s={s}");
                    for v in &pb.vectors {
                        assert!(is_primitive(v));
                    }
                }
            }
        }
        assert_eq!(primitive_basis(SpaceTag::E, 2, 2).unwrap().len(), 5);
        assert_eq!(primitive_basis(SpaceTag::F, 2, 2).unwrap().len(), 14);
        assert_eq!(primitive_basis(SpaceTag::E, 2, 0).unwrap().len(), 1);
    }

    #[test]
    fn primitive_coords_round_trip() {
        let pb = primitive_basis(SpaceTag::E, 2, 2).unwrap();
        for (i, v) in pb.vectors.iter().enumerate() {
            let c = pb.coords(v).unwrap();
            assert_eq!(c[i], Ext2Scalar::one());
            assert_eq!(pb.from_coords(&pb.coords_sparse(v).unwrap()), *v);
        }
        let l = &canonical_bivector(SpaceTag::E, 2).bivector;
        assert_eq!(pb.coords(l), Err(MultiError::NotPrimitive));
    }

    #[test]
    fn canonical_bivectors() {
        for n in 2..=3 {
            for tag in [SpaceTag::E, SpaceTag::F] {
                let cb = canonical_bivector(tag, n);
                assert_eq!(cb.nullity, 0);
                assert_eq!(cb.sigma_value, Ext2Scalar::from_int(tag.pairs(n) as i64));
                assert_eq!(cb.bivector.apply_j(), cb.bivector);
                let mut expect = MultiVector::zero(tag, n, 2);
                for k in 0..tag.pairs(n) {
                    expect.add_term(0b11 << (2 * k), Ext2Scalar::one());
                }
                assert_eq!(cb.bivector, expect);
            }
        }
        let lh = canonical_bivector(SpaceTag::H, 2);
        assert_eq!(lh.sigma_value, Ext2Scalar::one());
        assert_eq!(lh.nullity, 0);
    }

    /// `[σ⌟, L∧] = (m − k)` on `Λᵏ∘V` for every degree.
    #[test]
    fn lefschetz_commutator() {
        let n = 2;
        let tag = SpaceTag::E;
        let l = &canonical_bivector(tag, n).bivector;
        for k in 0..=n {
            for eta in &primitive_basis(tag, n, k).unwrap().vectors {
                let lhs = sigma_contract(&wedge(l, eta).unwrap()).unwrap();
                assert_eq!(lhs, eta.scale(&Ext2Scalar::from_int((n - k) as i64)));
            }
        }
    }

    #[test]
    fn wedge_circ_is_primitive() {
        for n in 2..=3 {
            for tag in [SpaceTag::E, SpaceTag::F] {
                for s in 0..=tag.pairs(n) {
                    for eta in &primitive_basis(tag, n, s).unwrap().vectors {
                        for k in 0..tag.dim(n) {
                            let w = wedge_circ(&basis_vector(tag, n, k), eta).unwrap();
                            assert!(is_primitive(&w));
                        }
                    }
                }
            }
        }
        let one = MultiVector::scalar(SpaceTag::E, 2, Ext2Scalar::one());
        assert_eq!(wedge_circ(&basis_vector(SpaceTag::E, 2, 0), &one).unwrap(), e(2, 0));
        let x = wedge(&e(2, 0), &e(2, 2)).unwrap();
        let v = basis_vector(SpaceTag::E, 2, 0);
        assert_eq!(wedge_circ(&v, &x).unwrap(), wedge(&e(2, 0), &x).unwrap());
        let l = canonical_bivector(SpaceTag::E, 2).bivector.clone();
        assert_eq!(wedge_circ(&v, &l), Err(MultiError::NotPrimitive));
    }

    #[test]
    fn symmetric_powers() {
        let p = h_basis(0);
        let q = h_basis(1);
        let pq = SymTensor::monomial(2, 1);
        // (1/2)(σ(p,p)q + σ(p,q)p) = p/2
        let c = sym_contract_circ(&p, &pq).unwrap();
        assert_eq!(c.coords, vec![Ext2Scalar::from_rat(Rational::new(1.into(), 2.into())), Ext2Scalar::zero()]);
        assert_eq!(sym_mul(&p, &SymTensor::monomial(3, 3)), SymTensor::monomial(4, 3));
        assert!(sym_contract_circ(&p, &sym_mul(&p, &SymTensor::one())).unwrap().coords[0].is_zero());
        assert_eq!(sym_contract(&q, &SymTensor::monomial(1, 0)).unwrap().coords[0], Ext2Scalar::from_int(-1));
        assert_eq!(sym_contract(&p, &SymTensor::one()), Err(MultiError::SymDegreeZero));
        assert_eq!(sym_mul_op(2, 0).rows, 4);
        assert_eq!(sym_contract_circ_op(0, 0).rows, 0);
    }

    #[test]
    fn derivation_extension_matches_leibniz() {
        let n = 2;
        let d = 2 * n;
        // X = δ₀·δ₃ acting by σ(δ₀, ·)δ₃ + σ(δ₃, ·)δ₀
        let cols: Vec<Vec<Ext2Scalar>> = (0..d)
            .map(|k| {
                let mut c = vec![Ext2Scalar::zero(); d];
                c[3] += Ext2Scalar::from_int(sigma_basis(0, k));
                c[0] += Ext2Scalar::from_int(sigma_basis(3, k));
                c
            })
            .collect();
        for a in 0..d {
            for b in 0..d {
                let w = wedge(&e(n, a), &e(n, b)).unwrap();
                let lhs = extend_derivation(&cols, &w);
                let xa = MultiVector::vector(SpaceTag::E, n, &cols[a]);
                let xb = MultiVector::vector(SpaceTag::E, n, &cols[b]);
                let rhs = wedge(&xa, &e(n, b)).unwrap().add(&wedge(&e(n, a), &xb).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
