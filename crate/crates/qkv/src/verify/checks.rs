use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

use super::{Backend, Ctx, Outcome, Status};
use crate::curvature::{
    bracket_parts, cartan_bracket, cayley_orthogonal, combination_matrix, hyper_hyper_bracket, rh_quaternion, sp1_wedge_identity,
    sym2h_action, sym2h_iso, WedgeOperator,
};
use crate::killing::{iota, iota_op, killing_matrix, killing_space, star_op, star_spinor_op, thetastar_operators, KillingParams, KillingSection};
use crate::linspaces::{phi_ct, phi_inv_tensor, CTVector, CartanElement, FVector, HETensor, HVector, QuatMatrix, TVector};
use crate::multilinear::{is_primitive, primitive_basis, primitive_dim_formula, SpaceTag};
use crate::operator::{OperatorMatrix, SparseVec};
use crate::scalars::{Ext2Scalar, Quaternion, Rational};
use crate::spinors::{clifford_real, spin_action, PairTensor, SpinorSpace, CLIFFORD_CONSTANT};

fn idx_label(prefix: &'static str) -> impl Fn(usize) -> String {
    move |i| format!("{prefix}{i}")
}

fn he_label(n: usize) -> impl Fn(usize) -> String {
    move |i| format!("h{}e{}", i / (2 * n), i % (2 * n))
}

fn err(e: impl std::fmt::Display) -> Outcome {
    Outcome { status: Status::Fail, witness: Some(format!("error error {e}")), detail: e.to_string(), backend: None }
}

fn first_vec_difference(ctx: &Ctx, a: &[Ext2Scalar], b: &[Ext2Scalar]) -> Option<(usize, Ext2Scalar)> {
    a.iter().zip(b).enumerate().find(|(_, (x, y))| !ctx.same(x, y)).map(|(i, (x, y))| (i, x - y))
}

pub(super) fn ctishe_roundtrip(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let d = 4 * n;
    for idx in 0..d {
        let v = CTVector::basis(n, idx);
        let back = phi_inv_tensor(&phi_ct(&v));
        if let Some((r, x)) = first_vec_difference(ctx, &back.coords, &v.coords) {
            return Outcome::verdict(Some(format!("ct{r} ct{idx} {x}")), "Φ⁻¹∘Φ ≠ id");
        }
    }
    for h in 0..2 {
        for e in 0..2 * n {
            let x = HETensor::basis(n, h, e);
            let back = phi_ct(&phi_inv_tensor(&x));
            if let Some((r, y)) = first_vec_difference(ctx, &back.coords, &x.coords) {
                let l = he_label(n);
                return Outcome::verdict(Some(format!("{} {} {y}", l(r), l(h * 2 * n + e))), "Φ∘Φ⁻¹ ≠ id");
            }
        }
    }
    let images: Vec<HETensor> = (0..d).map(|i| phi_ct(&CTVector::basis(n, i))).collect();
    for a in 0..d {
        for b in 0..d {
            let lhs = images[a].pairing(&images[b]);
            let rhs = CTVector::basis(n, a).inner(&CTVector::basis(n, b));
            if !ctx.same(&lhs, &rhs) {
                return Outcome::verdict(Some(format!("ct{a} ct{b} {}", lhs - rhs)), "σ_H⊗σ_E(Φ·,Φ·) ≠ ⟨,⟩ᶜ");
            }
        }
    }
    Outcome::verdict(None, format!("{d} basis vectors each way, {} isometry pairs", d * d))
}

fn binom(n: usize, k: isize) -> usize {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = k as usize;
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Predicted dimension of `Symʳ ⊗ Λˢ∘` over a `2m`-dimensional space.
fn predicted(m: usize, r: usize, s: usize) -> usize {
    (r + 1) * (binom(2 * m, s as isize) - binom(2 * m, s as isize - 2))
}

pub(super) fn dims_2n(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let base = SpinorSpace::base(n);
    let cone = SpinorSpace::cone(n);
    for (space, m, total) in [(&base, n, 1usize << (2 * n)), (&cone, n + 1, 1usize << (2 * n + 2))] {
        for sm in &space.summands {
            let want = predicted(m, sm.r, sm.s);
            if sm.dim() != want {
                return Outcome::verdict(Some(format!("{} dim {}", sm.name, sm.dim() as i64 - want as i64)), "summand dimension mismatch");
            }
        }
        if space.dim != total {
            return Outcome::verdict(Some(format!("total dim {}", space.dim as i64 - total as i64)), "total dimension mismatch");
        }
    }
    for (tag, m) in [(SpaceTag::E, n), (SpaceTag::F, n + 1)] {
        for s in 0..=m {
            let got = primitive_basis(tag, n, s).map(|b| b.len()).unwrap_or(usize::MAX);
            if got != primitive_dim_formula(tag, n, s) {
                return Outcome::verdict(Some(format!("{tag:?} s{s} {got}")), "primitive dimension mismatch");
            }
        }
    }
    let parallel = cone.summands.last().map(|s| s.sym_dim).unwrap_or(0);
    if parallel != n + 2 {
        return Outcome::verdict(Some(format!("parallel count {parallel}")), "parallel spinor count ≠ n+2");
    }
    Outcome::verdict(
        None,
        format!(
            "base {:?} = {}, cone {:?} = {}, parallel spinors {}",
            base.summand_dims(),
            base.dim,
            cone.summand_dims(),
            cone.dim,
            parallel
        ),
    )
}

pub(super) fn decomp_equivariance(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let space = killing_space(n);
    for idx in 0..space.dim {
        let mut c = SparseVec::new();
        c.insert(idx, Ext2Scalar::one());
        let img = KillingSection::from_coords(n, &c).and_then(|s| iota(&s));
        match img {
            Ok(v) if is_primitive(&v) => {}
            Ok(_) => return Outcome::verdict(Some(format!("{} sigma-contraction nonzero", space.label(idx))), "ι image not primitive"),
            Err(e) => return err(e),
        }
    }
    let iop = match iota_op(n) {
        Ok(m) => m,
        Err(e) => return err(e),
    };
    let inv = Ext2Scalar::inv_sqrt2();
    let mut comparisons = 0;
    for h in 0..2 {
        let hf = FVector::from_h(&HVector::basis(h), n).coords();
        for k in 0..2 * n {
            let ef = FVector::basis(n, k + 2).coords();
            let star = match star_op(&hf, &ef, SpaceTag::F, n, n) {
                Ok(m) => m,
                Err(e) => return err(e),
            };
            let a = match killing_matrix(&PairTensor::basis(SpaceTag::E, n, h, k)) {
                Ok(m) => m,
                Err(e) => return err(e),
            };
            let lhs = star.compose(&iop).expect("shapes");
            let rhs = iop.compose(&a).expect("shapes").scale(&inv);
            if let Some(w) = ctx.compare(&lhs, &rhs, &idx_label("w"), &|c| space.label(c)) {
                return Outcome::verdict(Some(w), format!("(h{h}⊗e{k})⋆ι ≠ ι(A/√2)"));
            }
            comparisons += 1;
        }
    }
    Outcome::verdict(None, format!("ι primitive on {} basis sections; {comparisons} operator identities on a {}-dim domain", space.dim, space.dim))
}

pub(super) fn cone_wedge_identity(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let cone = SpinorSpace::cone(n);
    let dim_f = 2 * n + 2;
    let p = [Ext2Scalar::one(), Ext2Scalar::zero()];
    let q = [Ext2Scalar::zero(), Ext2Scalar::one()];
    let label = |i: usize| cone.label(i);
    for a in 0..dim_f {
        let f1 = FVector::basis(n, a).coords();
        for b in 0..dim_f {
            let f2 = FVector::basis(n, b).coords();
            let pt = |h: &[Ext2Scalar; 2], f: &[Ext2Scalar]| PairTensor::outer(SpaceTag::F, n, h, f);
            let lhs = spin_action(&pt(&p, &f1), &pt(&q, &f2), &cone)
                .and_then(|x| Ok(x.sub(&spin_action(&pt(&q, &f1), &pt(&p, &f2), &cone)?).expect("shape")));
            let lhs = match lhs {
                Ok(m) => m,
                Err(e) => return err(e),
            };
            let rhs = match star_spinor_op(&f1, &f2, &cone) {
                Ok(m) => m,
                Err(e) => return err(e),
            };
            if let Some(w) = ctx.compare(&lhs, &rhs, &label, &label) {
                return Outcome::verdict(Some(w), format!("pair (f{a}, f{b})"));
            }
        }
    }
    Outcome::verdict(None, format!("{} basis pairs on the {}-dim cone spinor space", dim_f * dim_f, cone.dim))
}

/// Per-summand verdict of `lhs = rhs`: `ok`, `neg` (`lhs = −rhs`) or `differ`.
fn summand_verdicts(ctx: &Ctx, lhs: &OperatorMatrix, rhs: &OperatorMatrix, space: &SpinorSpace) -> Vec<&'static str> {
    let label = |i: usize| space.label(i);
    (0..space.summands.len())
        .map(|s| {
            let p = space.summand_identity(s);
            let (l, r) = (lhs.compose(&p).expect("shape"), rhs.compose(&p).expect("shape"));
            if ctx.compare(&l, &r, &label, &label).is_none() {
                "ok"
            } else if ctx.compare(&l, &r.scale(&Ext2Scalar::from_int(-1)), &label, &label).is_none() {
                "neg"
            } else {
                "differ"
            }
        })
        .collect()
}

pub(super) fn thetastar(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let cone = SpinorSpace::cone(n);
    let sigma1 = cone.summand_identity(1);
    let label = |i: usize| cone.label(i);
    let mut ext = vec![true; cone.summands.len()];
    let mut other_sign: Vec<Vec<&'static str>> = Vec::new();
    for idx in 0..4 * n {
        let t = TVector::real_basis(n, idx);
        let (lhs, rhs) = match thetastar_operators(&t, &cone, 1) {
            Ok(x) => x,
            Err(e) => return err(e),
        };
        let (l1, r1) = (lhs.compose(&sigma1).expect("shape"), rhs.compose(&sigma1).expect("shape"));
        if let Some(w) = ctx.compare(&l1, &r1, &label, &label) {
            return Outcome::verdict(Some(w), format!("t = real basis {idx} on Σ1"));
        }
        for (slot, v) in ext.iter_mut().zip(summand_verdicts(ctx, &lhs, &rhs, &cone)) {
            *slot &= v == "ok";
        }
        let (lm, rm) = match thetastar_operators(&t, &cone, -1) {
            Ok(x) => x,
            Err(e) => return err(e),
        };
        let v = summand_verdicts(ctx, &lm, &rm, &cone);
        if !other_sign.contains(&v) {
            other_sign.push(v);
        }
    }
    let ext: Vec<String> = ext.iter().enumerate().map(|(r, ok)| format!("Σ{r}:{}", if *ok { "holds" } else { "fails" })).collect();
    let other: Vec<String> = other_sign.iter().map(|v| v.join("/")).collect();
    Outcome::verdict(
        None,
        format!(
            "Σ1 holds for all {} basis t with F → ℂ²⊗F, f ↦ (p⊗f + q⊗Jf)/√2; extension [{}]; with q⊗Jf negated the summands compare as [{}]",
            4 * n,
            ext.join(" "),
            other.join("; ")
        ),
    )
}

pub(super) fn bracket_curvature(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let d = 4 * n;
    let label = he_label(n);
    let (mut claim_i, mut claim_ii, mut forms_ok) = (0usize, 0usize, 0usize);
    let mut witness_ii = None;
    let two = Ext2Scalar::from_int(2);
    for a in 0..d {
        for b in 0..d {
            let (t1, t2) = (TVector::real_basis(n, a), TVector::real_basis(n, b));
            let pair = match bracket_parts(&t1, &t2) {
                Ok(p) => p,
                Err(e) => return err(e),
            };
            if !pair.expansion_matches {
                return Outcome::verdict(Some(format!("t{a} t{b} expansion")), "[ω(t₁), ω(t₂)] expansion disagrees with the Cartan bracket");
            }
            if let Some(w) = ctx.compare(&pair.sp1, &pair.rh, &label, &label) {
                return Outcome::verdict(Some(w), format!("claim (i) fails at (t{a}, t{b})"));
            }
            claim_i += 1;
            // cross-check against the closed form −Σ⟨v₁,uv₂⟩u of R^H
            let z = rh_quaternion(&t1, &t2);
            let iso = match sym2h_iso(&z) {
                Ok(s) => sym2h_action(&s),
                Err(e) => return err(e),
            };
            let closed = iso.kron(&OperatorMatrix::identity(2 * n)).scale(&two);
            if let Some(w) = ctx.compare(&pair.rh, &closed, &label, &label) {
                return Outcome::verdict(Some(w), format!("R^H closed form fails at (t{a}, t{b})"));
            }
            if block_forms_match(&t1, &t2) {
                forms_ok += 1;
            }
            match ctx.compare(&pair.spn, &pair.re, &label, &label) {
                None => claim_ii += 1,
                Some(w) => {
                    witness_ii.get_or_insert(w);
                }
            }
        }
    }
    let total = d * d;
    if forms_ok != total {
        return Outcome::verdict(Some(format!("closed forms {forms_ok} of {total}")), "closed forms of the H and T blocks disagree with ½[ω∧ω]");
    }
    let verdict = if claim_ii == total { "HOLDS" } else { "FAILS" };
    Outcome {
        status: Status::Reported,
        detail: format!(
            "sp(n) claim {verdict}: sp(n) part = 2R^E on {claim_ii}/{total} basis pairs; sp(1) part = 2R^H on {claim_i}/{total}; with 𝔑 = 0 the assembled difference vanishes: {}",
            claim_ii == total
        ),
        witness: witness_ii,
        backend: None,
    }
}

/// `[ω(t₁), ω(t₂)]` against the closed forms of its H and T blocks, unit coefficients:
/// `Σ_u 2⟨t₁,ut₂⟩(𝟙∧U − V∧W)` over cyclic `(u, V, W)` plus `Σ_u (ut₁)∧(ut₂)`.
fn block_forms_match(t1: &TVector, t2: &TVector) -> bool {
    let n = t1.n();
    let d = 4 * (n + 1);
    let slot = |u: usize| {
        let mut v = vec![Rational::zero(); d];
        v[u] = Rational::one();
        v
    };
    let lift = |t: &TVector| {
        let mut v = vec![Rational::zero(); d];
        for (i, c) in t.real_coords().iter().enumerate() {
            v[4 + i] = c.a.clone();
        }
        v
    };
    let mut terms = Vec::new();
    for (u, v, w) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let c = crate::linspaces::inner_t(t1, &t2.left_mul(&Quaternion::unit(u))).a * Rational::from_integer(2.into());
        terms.push((c.clone(), WedgeOperator { a: slot(0), b: slot(u) }));
        terms.push((-c, WedgeOperator { a: slot(v), b: slot(w) }));
    }
    for u in 0..4 {
        let q = Quaternion::unit(u);
        terms.push((Rational::one(), WedgeOperator { a: lift(&t1.left_mul(&q)), b: lift(&t2.left_mul(&q)) }));
    }
    let hb = hyper_hyper_bracket(t1, t2).expect("tangent vectors");
    combination_matrix(&terms, d) == hb.expanded
}

pub(super) fn clifford(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let base = SpinorSpace::base(n);
    let ops: Result<Vec<_>, _> = (0..4 * n).map(|i| clifford_real(&TVector::real_basis(n, i), &base)).collect();
    let ops = match ops {
        Ok(o) => o,
        Err(e) => return err(e),
    };
    let label = |i: usize| base.label(i);
    let measured = ops[0].anticommutator(&ops[0]).expect("square").get(0, 0);
    let c = Ext2Scalar::from_int(CLIFFORD_CONSTANT);
    for a in 0..4 * n {
        for b in 0..4 * n {
            let lhs = ops[a].anticommutator(&ops[b]).expect("square");
            let g = if a == b { 2 * CLIFFORD_CONSTANT } else { 0 };
            let rhs = OperatorMatrix::scalar(base.dim, Ext2Scalar::from_int(g));
            if let Some(w) = ctx.compare(&lhs, &rhs, &label, &label) {
                return Outcome::verdict(Some(w), format!("{{t{a}, t{b}}} is not 2c⟨t{a},t{b}⟩ with c = {CLIFFORD_CONSTANT}"));
            }
        }
    }
    let half = Ext2Scalar::from_rat(crate::scalars::rat(1, 2));
    let mc = &measured * &half;
    if !ctx.same(&mc, &c) {
        return Outcome::verdict(Some(format!("t0 t0 {mc}")), "measured constant differs");
    }
    Outcome::verdict(None, format!("c = {CLIFFORD_CONSTANT} on all {} basis pairs", 16 * n * n))
}

pub(super) fn killing_scaling(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let base = KillingParams::normalized(n);
    let params = match &ctx.lambda_sq {
        Some(l) => KillingParams::with_lambda_sq(n, base.kappa.clone(), l.clone()),
        None => base.clone(),
    };
    let tol = if ctx.tolerance > 0.0 { ctx.tolerance } else { 1e-12 };
    let run = |p: &KillingParams| crate::killing::verify_scaling_equivalence(p, tol);
    let (main, control) = match (run(&params), run(&KillingParams::with_lambda_sq(n, base.kappa.clone(), &params.lambda_sq + Rational::one()))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return err(e),
    };
    let names = ["psi0", "psi1", "psim"];
    let detail = format!(
        "κ = {}, λ² = {}, max deviation {:.3e}, sign symmetry {}, negative control (λ² + 1) fails: {}",
        params.kappa, params.lambda_sq, main.max_deviation, main.sign_symmetry, !control.holds
    );
    let witness = if !main.holds {
        main.witness.map(|(i, j, o, c)| format!("{} {} {:e}", names[i], names[j], o - c))
    } else if !main.sign_symmetry {
        Some("psi1 psi1 sign-symmetry".to_string())
    } else if control.holds {
        Some("control control holds".to_string())
    } else {
        None
    };
    let mut out = Outcome::verdict(witness, detail);
    out.backend = Some(Backend::Float);
    out
}

pub(super) fn sp1_wedge(ctx: &Ctx) -> Outcome {
    let names = ["1", "i", "j", "k"];
    let table = sp1_wedge_identity();
    for (z, q, lhs, rhs) in &table {
        let ok = lhs.coeffs().iter().zip(rhs.coeffs()).all(|(a, b)| ctx.same(&Ext2Scalar::from_real((*a).clone()), &Ext2Scalar::from_real(b.clone())));
        if !ok {
            return Outcome::verdict(Some(format!("z={} q={} {}", names[*z], names[*q], lhs - rhs)), "−qz ≠ ½ad(z)q + (z∧1)q");
        }
    }
    Outcome::verdict(None, format!("{} cases with (a∧b)x = ⟨a,x⟩b − ⟨b,x⟩a", table.len()))
}

pub(super) fn cartan_bracket_oracle(ctx: &Ctx) -> Outcome {
    let n = ctx.n;
    let d = 4 * (n + 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    let label = idx_label("x");
    let mut tuples = 0;
    let check = |x: &WedgeOperator, y: &WedgeOperator| -> Option<String> {
        let lhs = combination_matrix(&cartan_bracket(x, y).expect("same space"), x.a.len());
        let rhs = x.matrix().commutator(&y.matrix()).expect("square");
        ctx.compare(&lhs, &rhs, &label, &label)
    };
    // orthonormal frames of ℝ⁶ keep the Cayley entries small
    let small = 6;
    while tuples < 50 {
        let q = cayley_orthogonal(small, &mut rng, 2);
        let mut pick = || q[rng.gen_range(0..small)].clone();
        let (a1, b1, a2, b2) = (pick(), pick(), pick(), pick());
        let x = WedgeOperator::new(a1.clone(), b1).expect("dim");
        let y = WedgeOperator::new(a2, b2).expect("dim");
        let z = WedgeOperator::new(q[1].clone(), q[2].clone()).expect("dim");
        let w0 = WedgeOperator::new(q[0].clone(), q[1].clone()).expect("dim");
        for (l, r) in [(&x, &y), (&w0, &z)] {
            if let Some(w) = check(l, r) {
                return Outcome::verdict(Some(w), format!("orthonormal tuple {tuples}"));
            }
        }
        tuples += 1;
    }
    for k in 0..20 {
        let mut v = || (0..d).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect::<Vec<_>>();
        let x = WedgeOperator::new(v(), v()).expect("dim");
        let y = WedgeOperator::new(v(), v()).expect("dim");
        if let Some(w) = check(&x, &y) {
            return Outcome::verdict(Some(w), format!("integer tuple {k}"));
        }
    }
    // grading on generators
    let zero_a = QuatMatrix::zero(n, n);
    let mut sp_gens = Vec::new();
    for u in 1..4 {
        sp_gens.push(CartanElement::new(Quaternion::unit(u), zero_a.clone(), TVector::zero(n)).expect("sp(1)"));
    }
    for a in 0..n {
        for b in a..n {
            for u in 0..4 {
                if a == b && u == 0 {
                    continue;
                }
                let q = Quaternion::unit(u);
                let mut m = QuatMatrix::zero(n, n);
                m.set(a, b, q.clone());
                if a != b {
                    m.set(b, a, -q.conj());
                }
                sp_gens.push(CartanElement::new(Quaternion::zero(), m, TVector::zero(n)).expect("sp(n)"));
            }
        }
    }
    let hn: Vec<CartanElement> =
        (0..4 * n).map(|i| CartanElement::new(Quaternion::zero(), zero_a.clone(), TVector::real_basis(n, i)).expect("ℍⁿ")).collect();
    for (gi, g) in sp_gens.iter().enumerate() {
        for (hi, h) in hn.iter().enumerate() {
            let br = g.bracket(h).expect("closed");
            if !br.sp1_part.is_zero() || br.spn_part.entries.iter().any(|q| !q.is_zero()) {
                return Outcome::verdict(Some(format!("g{gi} t{hi} leaves ℍⁿ")), "[sp(1)⊕sp(n), ℍⁿ] ⊄ ℍⁿ");
            }
        }
    }
    for a in 0..4 * n {
        for b in 0..4 * n {
            let hb = match hyper_hyper_bracket(&TVector::real_basis(n, a), &TVector::real_basis(n, b)) {
                Ok(h) => h,
                Err(e) => return err(e),
            };
            if !hb.element.hn_part.is_zero() || hb.expanded != hb.direct {
                return Outcome::verdict(Some(format!("t{a} t{b} grading")), "[ℍⁿ, ℍⁿ] ⊄ sp(1)⊕sp(n)");
            }
        }
    }
    Outcome::verdict(
        None,
        format!("{tuples} orthonormal tuples in dimension {small}, 20 integer tuples and {} grading generator pairs in dimension {d}", sp_gens.len() * hn.len() + 16 * n * n),
    )
}
