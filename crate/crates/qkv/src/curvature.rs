//! Pointwise curvature algebra: `R^H`, `R^E`, `R^{hyper}`, the
//! `sp(1) ≅ Sym²H` dictionary, wedge operators with their bracket, and
//! the Cartan decomposition of `½[ω∧ω]` for the `ℍⁿ`-valued form.
//!
//! Wedge operators act by `(a∧b)x = ⟨a,x⟩b − ⟨b,x⟩a`.

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::linalg::{solve, SparseRow};
use crate::linspaces::{phi, sigma_basis, CartanElement, EVector, HETensor, HVector, LinError, QuatMatrix, TVector};
use crate::multilinear::SymTensor;
use crate::operator::OperatorMatrix;
use crate::scalars::{int, rat, Ext2Scalar, Quaternion, Rational, RealExt2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurvatureError {
    #[error("frakR is not totally symmetric")]
    NotSymmetric,
    #[error("quaternion is not imaginary")]
    NotImaginary,
    #[error("vectors live in spaces of different dimension")]
    SpaceMismatch,
    #[error(transparent)]
    Lin(#[from] LinError),
}

// ------------------------------------------------------------ Sym² actions

/// The endomorphism `v ↦ σ(a,v)b + σ(b,v)a` of a paired space of dimension `d`.
pub fn sym2_matrix(a: &[Ext2Scalar], b: &[Ext2Scalar]) -> OperatorMatrix {
    let d = a.len();
    let mut m = OperatorMatrix::zero(d, d);
    for k in 0..d {
        for (x, y) in [(a, b), (b, a)] {
            // σ(x, δ_k) = x_{k^1} σ(δ_{k^1}, δ_k)
            let s = &x[k ^ 1] * &Ext2Scalar::from_int(sigma_basis(k ^ 1, k));
            if s.is_zero() {
                continue;
            }
            for (r, yr) in y.iter().enumerate() {
                let cur = m.get(r, k);
                m.set(r, k, cur + &s * yr);
            }
        }
    }
    m
}

/// Action of a degree-2 symmetric tensor `Σ c_k p²⁻ᵏqᵏ` on `H`.
pub fn sym2h_action(s: &SymTensor) -> OperatorMatrix {
    assert_eq!(s.degree, 2);
    let p = [Ext2Scalar::one(), Ext2Scalar::zero()];
    let q = [Ext2Scalar::zero(), Ext2Scalar::one()];
    let monos = [sym2_matrix(&p, &p), sym2_matrix(&p, &q), sym2_matrix(&q, &q)];
    let mut out = OperatorMatrix::zero(2, 2);
    for (c, m) in s.coords.iter().zip(&monos) {
        out = out.add_scaled(c, m).expect("2x2");
    }
    out
}

/// `i ↦ i(1·j)`, `j ↦ ½(j² + 1²)`, `k ↦ (i/2)(j² − 1²)` with `j = p`, `1 = −q`.
pub fn sym2h_iso(z: &Quaternion) -> Result<SymTensor, CurvatureError> {
    if !z.is_imaginary() {
        return Err(CurvatureError::NotImaginary);
    }
    let half = Ext2Scalar::from_rat(rat(1, 2));
    let i = Ext2Scalar::i();
    let basis = [
        // i(1·j) = i(−q)(p) = −i·pq
        [Ext2Scalar::zero(), -&i, Ext2Scalar::zero()],
        // ½(p² + q²)
        [half.clone(), Ext2Scalar::zero(), half.clone()],
        // (i/2)(p² − q²)
        [&i * &half, Ext2Scalar::zero(), -(&i * &half)],
    ];
    let mut coords = vec![Ext2Scalar::zero(); 3];
    for (c, b) in [&z.ci, &z.cj, &z.ck].into_iter().zip(basis.iter()) {
        for (slot, x) in coords.iter_mut().zip(b) {
            *slot += x.scale_real(c);
        }
    }
    Ok(SymTensor { degree: 2, coords })
}

/// `x ↦ −xu` on `H = ℍ`, in the coordinates of the base `p, q`.
pub fn sp1_h_action(u: &Quaternion) -> OperatorMatrix {
    let cols = (0..2)
        .map(|i| {
            let x = HVector::basis(i).to_quaternion();
            let img = HVector::from_quaternion(&-(&x * u));
            img.coords.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect()
        })
        .collect();
    OperatorMatrix::from_columns(2, cols)
}

/// `v ↦ vAᴴ` on `E` coordinates.
pub fn spn_e_action(a: &QuatMatrix) -> OperatorMatrix {
    let n = a.rows;
    let ah = a.hermitian();
    let cols = (0..2 * n)
        .map(|k| {
            let v = EVector::basis(n, k).to_t().mul_matrix(&ah);
            EVector::from_t(&v).coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
        })
        .collect();
    OperatorMatrix::from_columns(2 * n, cols)
}

// --------------------------------------------------------------- R^H, R^E

/// Totally symmetric `𝔑 ∈ Sym⁴E*`, dense over `(2n)⁴` basis quadruples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrakR {
    pub n: usize,
    pub coeffs: Vec<Ext2Scalar>,
}

impl FrakR {
    pub fn zero(n: usize) -> Self {
        FrakR { n, coeffs: vec![Ext2Scalar::zero(); (2 * n).pow(4)] }
    }

    pub fn from_dense(n: usize, coeffs: Vec<Ext2Scalar>) -> Result<Self, CurvatureError> {
        let d = 2 * n;
        assert_eq!(coeffs.len(), d.pow(4));
        let idx = |t: [usize; 4]| ((t[0] * d + t[1]) * d + t[2]) * d + t[3];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        let v = &coeffs[idx([a, b, c, e])];
                        for t in [[b, a, c, e], [a, c, b, e], [a, b, e, c]] {
                            if &coeffs[idx(t)] != v {
                                return Err(CurvatureError::NotSymmetric);
                            }
                        }
                    }
                }
            }
        }
        Ok(FrakR { n, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn get(&self, a: usize, b: usize, c: usize, e: usize) -> &Ext2Scalar {
        let d = 2 * self.n;
        &self.coeffs[((a * d + b) * d + c) * d + e]
    }

    /// Endomorphism `X_B` of `E` with `σ(X_B u, v) = 𝔑(e₁, e₂, u, v)` on basis `e₁, e₂`.
    fn endo(&self, a: usize, b: usize) -> OperatorMatrix {
        let d = 2 * self.n;
        let mut m = OperatorMatrix::zero(d, d);
        for u in 0..d {
            for k in 0..self.n {
                let (dl, jd) = (2 * k, 2 * k + 1);
                // X u = Σ_k B(u, jδ_k)δ_k − B(u, δ_k)jδ_k
                let c1 = self.get(a, b, u, jd).clone();
                let c2 = -self.get(a, b, u, dl);
                let cur = m.get(dl, u);
                m.set(dl, u, cur + c1);
                let cur = m.get(jd, u);
                m.set(jd, u, cur + c2);
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureKind {
    RH,
    RE,
    Rhyper,
}

fn h_vec(i: usize) -> Vec<Ext2Scalar> {
    HVector::basis(i).coords.to_vec()
}

fn e_vec(n: usize, k: usize) -> Vec<Ext2Scalar> {
    EVector::basis(n, k).coords
}

/// Value of `R^H`, `R^E` or `R^{hyper}` at `(X, Y)` as an endomorphism of
/// `H ⊗ E`, extended bilinearly from `R^H_{h₁⊗e₁,h₂⊗e₂} = σ_E(e₁,e₂)h₁h₂`,
/// `R^E = σ_H(h₁,h₂)e₁e₂`, `R^{hyper} = σ_H(h₁,h₂)𝔑(e₁,e₂,·,·)`.
pub fn curvature_value(kind: CurvatureKind, x: &HETensor, y: &HETensor, frak: Option<&FrakR>) -> OperatorMatrix {
    let n = x.n;
    let mut out = OperatorMatrix::zero(4 * n, 4 * n);
    for (h1, e1, c1) in x.terms() {
        for (h2, e2, c2) in y.terms() {
            let c = c1 * c2;
            let block = match kind {
                CurvatureKind::RH => {
                    let s = sigma_basis(e1, e2);
                    if s == 0 {
                        continue;
                    }
                    sym2_matrix(&h_vec(h1), &h_vec(h2)).kron(&OperatorMatrix::identity(2 * n)).scale(&Ext2Scalar::from_int(s))
                }
                CurvatureKind::RE => {
                    let s = sigma_basis(h1, h2);
                    if s == 0 {
                        continue;
                    }
                    OperatorMatrix::identity(2).kron(&sym2_matrix(&e_vec(n, e1), &e_vec(n, e2))).scale(&Ext2Scalar::from_int(s))
                }
                CurvatureKind::Rhyper => {
                    let s = sigma_basis(h1, h2);
                    let Some(fr) = frak else { continue };
                    if s == 0 {
                        continue;
                    }
                    OperatorMatrix::identity(2).kron(&fr.endo(e1, e2)).scale(&Ext2Scalar::from_int(s))
                }
            };
            out = out.add_scaled(&c, &block).expect("same shape");
        }
    }
    out
}

/// `R = −κ/(8n(n+2)) (R^H + R^E) + R^{hyper}`.
#[derive(Clone, Debug)]
pub struct CurvatureOperator {
    pub kappa: Rational,
    pub frak: FrakR,
}

pub fn assemble_curvature(kappa: Rational, frak: FrakR) -> CurvatureOperator {
    CurvatureOperator { kappa, frak }
}

impl CurvatureOperator {
    pub fn coefficient(&self) -> Rational {
        let n = self.frak.n as i64;
        -&self.kappa / Rational::from_integer((8 * n * (n + 2)).into())
    }

    pub fn value(&self, x: &HETensor, y: &HETensor) -> OperatorMatrix {
        let c = Ext2Scalar::from_rat(self.coefficient());
        let rh = curvature_value(CurvatureKind::RH, x, y, None);
        let re = curvature_value(CurvatureKind::RE, x, y, None);
        let hyper = curvature_value(CurvatureKind::Rhyper, x, y, Some(&self.frak));
        rh.add(&re).expect("shape").scale(&c).add(&hyper).expect("shape")
    }

    /// First Bianchi sum `R_{X,Y}Z + R_{Y,Z}X + R_{Z,X}Y` on real tangent vectors.
    pub fn bianchi(&self, t1: &TVector, t2: &TVector, t3: &TVector) -> Vec<Ext2Scalar> {
        let one = Ext2Scalar::one();
        let (x, y, z) = (phi(&one, t1), phi(&one, t2), phi(&one, t3));
        let vec = |t: &HETensor| t.coords.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut acc = crate::operator::SparseVec::new();
        for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
            let img = self.value(a, b).apply(&vec(c));
            crate::operator::axpy(&mut acc, &one, &img);
        }
        let mut out = vec![Ext2Scalar::zero(); 4 * t1.n()];
        for (i, c) in acc {
            out[i] = c;
        }
        out
    }
}

// --------------------------------------------------------- wedge operators

/// `⟨a, b⟩` on `ℝᵈ`.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A wedge `a∧b` of vectors in a euclidean `ℝᵈ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeOperator {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl WedgeOperator {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self, CurvatureError> {
        if a.len() != b.len() {
            return Err(CurvatureError::SpaceMismatch);
        }
        Ok(WedgeOperator { a, b })
    }

    /// Matrix of `x ↦ ⟨a,x⟩b − ⟨b,x⟩a`, i.e. `b aᵀ − a bᵀ`.
    pub fn matrix(&self) -> OperatorMatrix {
        let d = self.a.len();
        let mut m = OperatorMatrix::zero(d, d);
        for r in 0..d {
            for c in 0..d {
                let v = &self.b[r] * &self.a[c] - &self.a[r] * &self.b[c];
                m.set(r, c, Ext2Scalar::from_rat(v));
            }
        }
        m
    }
}

/// `[a₁∧b₁, a₂∧b₂] = ⟨a₁,a₂⟩b₁∧b₂ − ⟨b₁,a₂⟩a₁∧b₂ − ⟨a₁,b₂⟩b₁∧a₂ + ⟨b₁,b₂⟩a₁∧a₂`.
pub fn cartan_bracket(x: &WedgeOperator, y: &WedgeOperator) -> Result<Vec<(Rational, WedgeOperator)>, CurvatureError> {
    if x.a.len() != y.a.len() {
        return Err(CurvatureError::SpaceMismatch);
    }
    let w = |p: &Vec<Rational>, q: &Vec<Rational>| WedgeOperator { a: p.clone(), b: q.clone() };
    Ok(vec![
        (dot(&x.a, &y.a), w(&x.b, &y.b)),
        (-dot(&x.b, &y.a), w(&x.a, &y.b)),
        (-dot(&x.a, &y.b), w(&x.b, &y.a)),
        (dot(&x.b, &y.b), w(&x.a, &y.a)),
    ])
}

/// Matrix of a linear combination of wedges.
pub fn combination_matrix(terms: &[(Rational, WedgeOperator)], d: usize) -> OperatorMatrix {
    let mut m = OperatorMatrix::zero(d, d);
    for (c, w) in terms {
        m = m.add_scaled(&Ext2Scalar::from_rat(c.clone()), &w.matrix()).expect("same shape");
    }
    m
}

/// Rational orthogonal matrix `(I − S)(I + S)⁻¹` from a skew integer `S`;
/// returns its columns.
pub fn cayley_orthogonal<R: Rng>(d: usize, rng: &mut R, bound: i64) -> Vec<Vec<Rational>> {
    let mut s = vec![vec![Rational::zero(); d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let v = Rational::from_integer(rng.gen_range(-bound..=bound).into());
            s[i][j] = v.clone();
            s[j][i] = -v;
        }
    }
    let id = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let plus: Vec<SparseRow> = (0..d)
        .map(|i| (0..d).map(|j| (j, id(i, j) + &s[i][j])).filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    // columns of (I + S)⁻¹
    let inv_cols: Vec<Vec<Rational>> = (0..d)
        .map(|c| {
            let b: Vec<Rational> = (0..d).map(|i| id(i, c)).collect();
            solve(&plus, d, &b).expect("I + S is invertible for skew S").0
        })
        .collect();
    (0..d)
        .map(|c| (0..d).map(|i| (0..d).map(|k| (id(i, k) - &s[i][k]) * &inv_cols[c][k]).sum()).collect())
        .collect()
}

/// The 12-case table `−qz = ½ad(z)q + (z∧1)q` for `z ∈ {i,j,k}`, `q ∈ {1,i,j,k}`.
pub fn sp1_wedge_identity() -> Vec<(usize, usize, Quaternion, Quaternion)> {
    let coords = |q: &Quaternion| -> Vec<Rational> { q.coeffs().iter().map(|c| c.a.clone()).collect() };
    let mut out = Vec::new();
    for z in 1..4 {
        for q in 0..4 {
            let (zq, qq) = (Quaternion::unit(z), Quaternion::unit(q));
            let lhs = -(&qq * &zq);
            let ad = (&(&zq * &qq) - &(&qq * &zq)).scale(&RealExt2::from_rat(rat(1, 2)));
            let w = WedgeOperator::new(coords(&zq), coords(&Quaternion::one())).expect("same dim");
            let img = w.matrix().apply(&coords(&qq).into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, Ext2Scalar::from_rat(v))).collect());
            let mut wq = Quaternion::zero();
            for (i, c) in img {
                wq += Quaternion::unit(i).scale(&c.re);
            }
            out.push((z, q, lhs, &ad + &wq));
        }
    }
    out
}

// ------------------------------------------------- Cartan decomposition

/// Real matrix of `w ↦ wM` on `ℍⁿ⁺¹ = ℝ⁴⁽ⁿ⁺¹⁾`, basis index `4·slot + u`.
pub fn cartan_real_matrix(x: &CartanElement) -> OperatorMatrix {
    let m = x.to_matrix();
    let d = 4 * m.rows;
    let cols = (0..d)
        .map(|idx| {
            let (slot, u) = (idx / 4, idx % 4);
            let mut w = TVector::zero(m.rows);
            w.entries[slot] = Quaternion::unit(u);
            let img = w.mul_matrix(&m);
            img.real_coords().into_iter().map(Ext2Scalar::from_real).enumerate().filter(|(_, c)| !c.is_zero()).collect()
        })
        .collect();
    OperatorMatrix::from_columns(d, cols)
}

fn rat_coords(t: &TVector, slot_offset: usize, total_slots: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); 4 * total_slots];
    for (a, q) in t.entries.iter().enumerate() {
        for (u, c) in q.coeffs().iter().enumerate() {
            assert!(c.b.is_zero(), "rational tangent vectors only");
            out[4 * (a + slot_offset) + u] = c.a.clone();
        }
    }
    out
}

/// `ω(t) = Σ_u (ut)∧U` as wedges on `ℍ ⊕ ℍⁿ`.
pub fn omega_wedges(t: &TVector) -> Vec<WedgeOperator> {
    let slots = t.n() + 1;
    (0..4)
        .map(|u| {
            let ut = t.left_mul(&Quaternion::unit(u));
            let mut cap = vec![Rational::zero(); 4 * slots];
            cap[u] = Rational::one();
            WedgeOperator { a: rat_coords(&ut, 1, slots), b: cap }
        })
        .collect()
}

/// The `sp(1)` and `sp(n)` parts of `½[ω∧ω](t₁, t₂) = [ω(t₁), ω(t₂)]`.
#[derive(Clone, Debug)]
pub struct HyperBracket {
    pub element: CartanElement,
    /// `[ω(t₁), ω(t₂)]` expanded by the bracket formula.
    pub expanded: OperatorMatrix,
    /// Real matrix of `element`.
    pub direct: OperatorMatrix,
}

pub fn hyper_hyper_bracket(t1: &TVector, t2: &TVector) -> Result<HyperBracket, CurvatureError> {
    let n = t1.n();
    let d = 4 * (n + 1);
    let mut terms = Vec::new();
    for x in omega_wedges(t1) {
        for y in omega_wedges(t2) {
            terms.extend(cartan_bracket(&x, &y)?);
        }
    }
    let expanded = combination_matrix(&terms, d);
    let zero = QuatMatrix::zero(n, n);
    let x1 = CartanElement::new(Quaternion::zero(), zero.clone(), t1.clone())?;
    let x2 = CartanElement::new(Quaternion::zero(), zero, t2.clone())?;
    let element = x1.bracket(&x2)?;
    let direct = cartan_real_matrix(&element);
    Ok(HyperBracket { element, expanded, direct })
}

/// `κ/(8n(n+2))` with `κ = 16n(n+2)`.
pub fn normalized_coefficient() -> Ext2Scalar {
    Ext2Scalar::from_int(2)
}

/// Verdicts comparing the two parts with `2R^H` and `2R^E` as endomorphisms
/// of `H ⊗ E` for `X = Φ(t₁)`, `Y = Φ(t₂)`.
#[derive(Clone, Debug)]
pub struct BracketParts {
    pub sp1: OperatorMatrix,
    pub spn: OperatorMatrix,
    pub rh: OperatorMatrix,
    pub re: OperatorMatrix,
    pub expansion_matches: bool,
}

pub fn bracket_parts(t1: &TVector, t2: &TVector) -> Result<BracketParts, CurvatureError> {
    let n = t1.n();
    let hb = hyper_hyper_bracket(t1, t2)?;
    let sp1 = sp1_h_action(&hb.element.sp1_part).kron(&OperatorMatrix::identity(2 * n));
    let spn = OperatorMatrix::identity(2).kron(&spn_e_action(&hb.element.spn_part));
    let one = Ext2Scalar::one();
    let (x, y) = (phi(&one, t1), phi(&one, t2));
    let c = normalized_coefficient();
    let rh = curvature_value(CurvatureKind::RH, &x, &y, None).scale(&c);
    let re = curvature_value(CurvatureKind::RE, &x, &y, None).scale(&c);
    Ok(BracketParts { sp1, spn, rh, re, expansion_matches: hb.expanded == hb.direct })
}

/// `−Σ_u ⟨v₁, u v₂⟩ u` over `u ∈ {i, j, k}`.
pub fn rh_quaternion(v1: &TVector, v2: &TVector) -> Quaternion {
    let mut z = Quaternion::zero();
    for u in 1..4 {
        let c = crate::linspaces::inner_t(v1, &v2.left_mul(&Quaternion::unit(u)));
        z -= Quaternion::unit(u).scale(&c);
    }
    z
}

pub fn int_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|x| int(*x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn dictionary_values() {
        let i = sym2h_iso(&Quaternion::i()).unwrap();
        assert_eq!(i.coords[1], -Ext2Scalar::i());
        let j = sym2h_iso(&Quaternion::j()).unwrap();
        assert_eq!(j.coords[0], Ext2Scalar::from_rat(rat(1, 2)));
        assert_eq!(sym2h_iso(&Quaternion::one()), Err(CurvatureError::NotImaginary));
    }

    /// `[iso(a), iso(b)] = iso([a, b])` as actions on `H`.
    #[test]
    fn dictionary_is_a_lie_map() {
        let act = |q: &Quaternion| sym2h_action(&sym2h_iso(q).unwrap());
        for (a, b) in [(1, 2), (2, 3), (3, 1)] {
            let (qa, qb) = (Quaternion::unit(a), Quaternion::unit(b));
            let lhs = act(&qa).commutator(&act(&qb)).unwrap();
            let br = &(&qa * &qb) - &(&qb * &qa);
            assert_eq!(lhs, act(&br));
        }
    }

    /// The dictionary agrees with `x ↦ −xu` on `H`.
    #[test]
    fn dictionary_matches_right_multiplication() {
        for u in 1..4 {
            let q = Quaternion::unit(u);
            assert_eq!(sym2h_action(&sym2h_iso(&q).unwrap()), sp1_h_action(&q), "u = {u}");
        }
    }

    #[test]
    fn sp1_table() {
        for (z, q, lhs, rhs) in sp1_wedge_identity() {
            assert_eq!(lhs, rhs, "z={z} q={q}");
        }
    }

    #[test]
    fn bracket_examples() {
        let e = |k: usize| {
            let mut v = vec![Rational::zero(); 4];
            v[k] = Rational::one();
            v
        };
        let w = |a, b| WedgeOperator::new(e(a), e(b)).unwrap();
        let br = combination_matrix(&cartan_bracket(&w(0, 1), &w(1, 2)).unwrap(), 4);
        assert_eq!(br, w(0, 2).matrix().scale(&Ext2Scalar::from_int(-1)));
        assert!(combination_matrix(&cartan_bracket(&w(0, 1), &w(0, 1)).unwrap(), 4).is_zero());
    }

    #[test]
    fn bracket_matches_commutator_on_orthonormal_tuples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for d in [4, 5, 6] {
            let q = cayley_orthogonal(d, &mut rng, 3);
            for c in 0..d {
                for k in 0..d {
                    assert_eq!(dot(&q[c], &q[k]), if c == k { Rational::one() } else { Rational::zero() });
                }
            }
            let x = WedgeOperator::new(q[0].clone(), q[1].clone()).unwrap();
            let y = WedgeOperator::new(q[1].clone(), q[2].clone()).unwrap();
            let lhs = combination_matrix(&cartan_bracket(&x, &y).unwrap(), d);
            assert_eq!(lhs, x.matrix().commutator(&y.matrix()).unwrap());
        }
    }

    #[test]
    fn rh_closed_form() {
        let n = 2;
        let one = Ext2Scalar::one();
        for a in 0..4 * n {
            for b in 0..4 * n {
                let (v1, v2) = (TVector::real_basis(n, a), TVector::real_basis(n, b));
                let rh = curvature_value(CurvatureKind::RH, &phi(&one, &v1), &phi(&one, &v2), None);
                let z = rh_quaternion(&v1, &v2);
                let expect = sym2h_action(&sym2h_iso(&z).unwrap()).kron(&OperatorMatrix::identity(2 * n));
                assert_eq!(rh, expect, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn curvature_antisymmetry_and_zero() {
        let n = 2;
        let x = HETensor::basis(n, 0, 1);
        let y = HETensor::basis(n, 1, 0);
        for kind in [CurvatureKind::RH, CurvatureKind::RE] {
            let a = curvature_value(kind, &x, &y, None);
            let b = curvature_value(kind, &y, &x, None);
            assert_eq!(a, b.scale(&Ext2Scalar::from_int(-1)));
        }
        assert!(curvature_value(CurvatureKind::Rhyper, &x, &y, Some(&FrakR::zero(n))).is_zero());
        let r = assemble_curvature(Rational::zero(), FrakR::zero(n));
        assert!(r.value(&x, &y).is_zero());
        let r = assemble_curvature(Rational::from_integer(128.into()), FrakR::zero(n));
        assert_eq!(r.coefficient(), Rational::from_integer((-2).into()));
    }

    #[test]
    fn bianchi_with_zero_frak() {
        let n = 2;
        let r = assemble_curvature(Rational::from_integer(128.into()), FrakR::zero(n));
        for a in 0..4 * n {
            for b in a + 1..4 * n {
                for c in b + 1..4 * n {
                    let (x, y, z) = (TVector::real_basis(n, a), TVector::real_basis(n, b), TVector::real_basis(n, c));
                    assert!(r.bianchi(&x, &y, &z).iter().all(|v| v.is_zero()), "({a}, {b}, {c})");
                }
            }
        }
    }

    #[test]
    fn frak_r_validation() {
        let n = 1;
        let mut c = vec![Ext2Scalar::zero(); 16];
        c[1] = Ext2Scalar::one();
        assert_eq!(FrakR::from_dense(n, c), Err(CurvatureError::NotSymmetric));
        let mut c = vec![Ext2Scalar::zero(); 16];
        c[0] = Ext2Scalar::one();
        assert!(FrakR::from_dense(n, c).is_ok());
    }

    #[test]
    fn bracket_closure_on_generators() {
        let n = 2;
        let t1 = TVector::real_basis(n, 0);
        let t2 = TVector::real_basis(n, 5);
        let hb = hyper_hyper_bracket(&t1, &t2).unwrap();
        assert_eq!(hb.expanded, hb.direct);
        assert!(hb.element.hn_part.is_zero());
        assert!(hyper_hyper_bracket(&t1, &t1).unwrap().element.sp1_part.is_zero());
    }
}
