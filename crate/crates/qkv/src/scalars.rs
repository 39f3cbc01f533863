//! Exact scalars: rationals, the ring ℚ(i)[√2], quaternions with ℚ[√2]
//! coefficients, and a small complex float type for the few per-n square
//! roots that leave the exact ring.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

macro_rules! forward_binop {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

macro_rules! assign_ops {
    ($t:ty) => {
        impl AddAssign<&$t> for $t {
            fn add_assign(&mut self, rhs: &$t) {
                *self = &*self + rhs;
            }
        }
        impl AddAssign<$t> for $t {
            fn add_assign(&mut self, rhs: $t) {
                *self = &*self + &rhs;
            }
        }
        impl SubAssign<&$t> for $t {
            fn sub_assign(&mut self, rhs: &$t) {
                *self = &*self - rhs;
            }
        }
        impl SubAssign<$t> for $t {
            fn sub_assign(&mut self, rhs: $t) {
                *self = &*self - &rhs;
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl Sum for $t {
            fn sum<I: Iterator<Item = $t>>(iter: I) -> $t {
                iter.fold(<$t>::zero(), |acc, x| acc + x)
            }
        }
        impl<'a> Sum<&'a $t> for $t {
            fn sum<I: Iterator<Item = &'a $t>>(iter: I) -> $t {
                iter.fold(<$t>::zero(), |acc, x| acc + x)
            }
        }
    };
}

fn mul_opt(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        Rational::zero()
    } else {
        a * b
    }
}

// ---------------------------------------------------------------- RealExt2

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RealExt2 {
    pub a: Rational,
    pub b: Rational,
}

impl RealExt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        RealExt2 { a, b }
    }
    pub fn zero() -> Self {
        RealExt2::new(Rational::zero(), Rational::zero())
    }
    pub fn one() -> Self {
        RealExt2::from_rat(Rational::one())
    }
    pub fn from_rat(a: Rational) -> Self {
        RealExt2::new(a, Rational::zero())
    }
    pub fn from_int(n: i64) -> Self {
        RealExt2::from_rat(int(n))
    }
    pub fn sqrt2() -> Self {
        RealExt2::new(Rational::zero(), Rational::one())
    }
    /// `1/√2 = √2/2`
    pub fn inv_sqrt2() -> Self {
        RealExt2::new(Rational::zero(), rat(1, 2))
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
    pub fn scale(&self, r: &Rational) -> Self {
        RealExt2::new(mul_opt(&self.a, r), mul_opt(&self.b, r))
    }
    /// Conjugate in ℚ(√2): `a − b√2`.
    pub fn galois(&self) -> Self {
        RealExt2::new(self.a.clone(), -&self.b)
    }
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let norm = &self.a * &self.a - int(2) * &self.b * &self.b;
        let g = self.galois();
        Ok(RealExt2::new(g.a / &norm, g.b / &norm))
    }
    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: compare a² with 2b²
        let lhs = &self.a * &self.a;
        let rhs = int(2) * &self.b * &self.b;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add<&RealExt2> for &RealExt2 {
    type Output = RealExt2;
    fn add(self, rhs: &RealExt2) -> RealExt2 {
        RealExt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}
impl Sub<&RealExt2> for &RealExt2 {
    type Output = RealExt2;
    fn sub(self, rhs: &RealExt2) -> RealExt2 {
        RealExt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}
impl Mul<&RealExt2> for &RealExt2 {
    type Output = RealExt2;
    fn mul(self, rhs: &RealExt2) -> RealExt2 {
        let bb = mul_opt(&self.b, &rhs.b);
        RealExt2::new(
            mul_opt(&self.a, &rhs.a) + &bb + &bb,
            mul_opt(&self.a, &rhs.b) + mul_opt(&self.b, &rhs.a),
        )
    }
}
impl Neg for &RealExt2 {
    type Output = RealExt2;
    fn neg(self) -> RealExt2 {
        RealExt2::new(-&self.a, -&self.b)
    }
}
forward_binop!(RealExt2, Add, add);
forward_binop!(RealExt2, Sub, sub);
forward_binop!(RealExt2, Mul, mul);
assign_ops!(RealExt2);

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RealExt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.b;
        let sign = if b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}√2", fmt_rat(&self.a), sign, fmt_rat(&b.abs()))
    }
}

// -------------------------------------------------------------- Ext2Scalar

/// `(re_rat + re_sqrt2·√2) + i·(im_rat + im_sqrt2·√2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ext2Scalar {
    pub re: RealExt2,
    pub im: RealExt2,
}

impl Ext2Scalar {
    pub fn new(re_rat: Rational, re_sqrt2: Rational, im_rat: Rational, im_sqrt2: Rational) -> Self {
        Ext2Scalar { re: RealExt2::new(re_rat, re_sqrt2), im: RealExt2::new(im_rat, im_sqrt2) }
    }
    pub fn from_parts(re: RealExt2, im: RealExt2) -> Self {
        Ext2Scalar { re, im }
    }
    pub fn zero() -> Self {
        Ext2Scalar::from_parts(RealExt2::zero(), RealExt2::zero())
    }
    pub fn one() -> Self {
        Ext2Scalar::from_int(1)
    }
    pub fn i() -> Self {
        Ext2Scalar::from_parts(RealExt2::zero(), RealExt2::one())
    }
    pub fn sqrt2() -> Self {
        Ext2Scalar::from_real(RealExt2::sqrt2())
    }
    pub fn inv_sqrt2() -> Self {
        Ext2Scalar::from_real(RealExt2::inv_sqrt2())
    }
    pub fn from_int(n: i64) -> Self {
        Ext2Scalar::from_real(RealExt2::from_int(n))
    }
    pub fn from_rat(r: Rational) -> Self {
        Ext2Scalar::from_real(RealExt2::from_rat(r))
    }
    pub fn from_real(re: RealExt2) -> Self {
        Ext2Scalar::from_parts(re, RealExt2::zero())
    }
    /// Gaussian integer `a + bi`.
    pub fn gauss(a: i64, b: i64) -> Self {
        Ext2Scalar::from_parts(RealExt2::from_int(a), RealExt2::from_int(b))
    }
    pub fn re_rat(&self) -> &Rational {
        &self.re.a
    }
    pub fn re_sqrt2(&self) -> &Rational {
        &self.re.b
    }
    pub fn im_rat(&self) -> &Rational {
        &self.im.a
    }
    pub fn im_sqrt2(&self) -> &Rational {
        &self.im.b
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn is_rational(&self) -> bool {
        self.im.is_zero() && self.re.is_rational()
    }
    /// Complex conjugation; fixes √2.
    pub fn conj(&self) -> Self {
        Ext2Scalar::from_parts(self.re.clone(), -&self.im)
    }
    /// `|z|²` as an element of ℚ[√2].
    pub fn norm_sq(&self) -> RealExt2 {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn scale(&self, r: &Rational) -> Self {
        Ext2Scalar::from_parts(self.re.scale(r), self.im.scale(r))
    }
    pub fn scale_real(&self, r: &RealExt2) -> Self {
        Ext2Scalar::from_parts(&self.re * r, &self.im * r)
    }
    pub fn mul_i(&self) -> Self {
        Ext2Scalar::from_parts(-&self.im, self.re.clone())
    }
    pub fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm_sq().inv()?;
        Ok(self.conj().scale_real(&n))
    }
    pub fn checked_div(&self, rhs: &Ext2Scalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }
    pub fn to_float(&self) -> FloatScalar {
        FloatScalar::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&Ext2Scalar> for &Ext2Scalar {
    type Output = Ext2Scalar;
    fn add(self, rhs: &Ext2Scalar) -> Ext2Scalar {
        Ext2Scalar::from_parts(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
impl Sub<&Ext2Scalar> for &Ext2Scalar {
    type Output = Ext2Scalar;
    fn sub(self, rhs: &Ext2Scalar) -> Ext2Scalar {
        Ext2Scalar::from_parts(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
impl Mul<&Ext2Scalar> for &Ext2Scalar {
    type Output = Ext2Scalar;
    fn mul(self, rhs: &Ext2Scalar) -> Ext2Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Ext2Scalar::from_real(&self.re * &rhs.re);
        }
        Ext2Scalar::from_parts(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
impl Neg for &Ext2Scalar {
    type Output = Ext2Scalar;
    fn neg(self) -> Ext2Scalar {
        Ext2Scalar::from_parts(-&self.re, -&self.im)
    }
}
forward_binop!(Ext2Scalar, Add, add);
forward_binop!(Ext2Scalar, Sub, sub);
forward_binop!(Ext2Scalar, Mul, mul);
assign_ops!(Ext2Scalar);

impl From<i64> for Ext2Scalar {
    fn from(n: i64) -> Self {
        Ext2Scalar::from_int(n)
    }
}
impl From<Rational> for Ext2Scalar {
    fn from(r: Rational) -> Self {
        Ext2Scalar::from_rat(r)
    }
}
impl From<RealExt2> for Ext2Scalar {
    fn from(r: RealExt2) -> Self {
        Ext2Scalar::from_real(r)
    }
}

/// Printed as `a+b√2+ci+di√2`, all four components always present.
impl fmt::Display for Ext2Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = [self.re_rat(), self.re_sqrt2(), self.im_rat(), self.im_sqrt2()];
        let suffix = ["", "√2", "i", "i√2"];
        for (k, (c, s)) in comps.iter().zip(suffix).enumerate() {
            if k == 0 {
                write!(f, "{}", fmt_rat(c))?;
            } else {
                let sign = if c.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", sign, fmt_rat(&c.abs()), s)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ext2Scalar {
    type Err = ScalarError;

    /// Accepts any sum of signed terms `p`, `p/q`, `p√2`, `pi`, `pi√2`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in t.char_indices() {
            if (ch == '+' || ch == '-') && idx > 0 {
                terms.push(&t[start..idx]);
                start = idx;
            }
        }
        terms.push(&t[start..]);
        let mut out = Ext2Scalar::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'+') => (false, &term[1..]),
                Some(b'-') => (true, &term[1..]),
                _ => (false, term),
            };
            let (num, kind) = if let Some(p) = body.strip_suffix("i√2") {
                (p, 3)
            } else if let Some(p) = body.strip_suffix("√2") {
                (p, 1)
            } else if let Some(p) = body.strip_suffix('i') {
                (p, 2)
            } else {
                (body, 0)
            };
            let num = if num.is_empty() && kind != 0 { "1" } else { num };
            let mut r: Rational = match num.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.parse().map_err(|_| err())?;
                    let q: BigInt = q.parse().map_err(|_| err())?;
                    if q.is_zero() {
                        return Err(err());
                    }
                    Rational::new(p, q)
                }
                None => Rational::from_integer(num.parse().map_err(|_| err())?),
            };
            if neg {
                r = -r;
            }
            let z = Rational::zero();
            let term = match kind {
                0 => Ext2Scalar::new(r, z.clone(), z.clone(), z),
                1 => Ext2Scalar::new(z.clone(), r, z.clone(), z),
                2 => Ext2Scalar::new(z.clone(), z.clone(), r, z),
                _ => Ext2Scalar::new(z.clone(), z.clone(), z, r),
            };
            out += term;
        }
        Ok(out)
    }
}

/// Field operation selector for [`ext2_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ext2_arith(a: &Ext2Scalar, b: &Ext2Scalar, op: ArithOp) -> Result<Ext2Scalar, ScalarError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

// -------------------------------------------------------------- Quaternion

/// `c1 + ci·i + cj·j + ck·k` with coefficients in ℚ[√2].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quaternion {
    pub c1: RealExt2,
    pub ci: RealExt2,
    pub cj: RealExt2,
    pub ck: RealExt2,
}

impl Quaternion {
    pub fn new(c1: RealExt2, ci: RealExt2, cj: RealExt2, ck: RealExt2) -> Self {
        Quaternion { c1, ci, cj, ck }
    }
    pub fn from_ints(c1: i64, ci: i64, cj: i64, ck: i64) -> Self {
        Quaternion::new(
            RealExt2::from_int(c1),
            RealExt2::from_int(ci),
            RealExt2::from_int(cj),
            RealExt2::from_int(ck),
        )
    }
    pub fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }
    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }
    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }
    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }
    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }
    /// The units `1, i, j, k` in that order.
    pub fn units() -> [Quaternion; 4] {
        [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()]
    }
    pub fn unit(u: usize) -> Quaternion {
        Quaternion::units()[u].clone()
    }
    pub fn from_real(r: RealExt2) -> Self {
        Quaternion::new(r, RealExt2::zero(), RealExt2::zero(), RealExt2::zero())
    }
    /// Embeds `a + bi ∈ ℂ` as `a + b·i`.
    pub fn from_complex(z: &Ext2Scalar) -> Self {
        Quaternion::new(z.re.clone(), z.im.clone(), RealExt2::zero(), RealExt2::zero())
    }
    /// `z + w·j` for complex `z`, `w`.
    pub fn from_complex_pair(z: &Ext2Scalar, w: &Ext2Scalar) -> Self {
        Quaternion::new(z.re.clone(), z.im.clone(), w.re.clone(), w.im.clone())
    }
    /// Inverse of [`Quaternion::from_complex_pair`].
    pub fn complex_pair(&self) -> (Ext2Scalar, Ext2Scalar) {
        (
            Ext2Scalar::from_parts(self.c1.clone(), self.ci.clone()),
            Ext2Scalar::from_parts(self.cj.clone(), self.ck.clone()),
        )
    }
    pub fn coeffs(&self) -> [&RealExt2; 4] {
        [&self.c1, &self.ci, &self.cj, &self.ck]
    }
    pub fn from_coeffs(c: [RealExt2; 4]) -> Self {
        let [c1, ci, cj, ck] = c;
        Quaternion::new(c1, ci, cj, ck)
    }
    pub fn conj(&self) -> Self {
        Quaternion::new(self.c1.clone(), -&self.ci, -&self.cj, -&self.ck)
    }
    pub fn re(&self) -> RealExt2 {
        self.c1.clone()
    }
    pub fn im(&self) -> Quaternion {
        Quaternion::new(RealExt2::zero(), self.ci.clone(), self.cj.clone(), self.ck.clone())
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_zero())
    }
    pub fn is_imaginary(&self) -> bool {
        self.c1.is_zero()
    }
    pub fn norm_sq(&self) -> RealExt2 {
        self.coeffs().iter().map(|c| *c * *c).sum()
    }
    pub fn scale(&self, r: &RealExt2) -> Self {
        Quaternion::new(&self.c1 * r, &self.ci * r, &self.cj * r, &self.ck * r)
    }
    /// Euclidean product `Re(p q̄)`.
    pub fn dot(&self, other: &Quaternion) -> RealExt2 {
        self.coeffs().iter().zip(other.coeffs()).map(|(a, b)| *a * b).sum()
    }
    /// `[q]_ℂ = ½(q − iqi)`, the complex component under ℍ = ℂ ⊕ ℂj.
    pub fn c_part(&self) -> Ext2Scalar {
        Ext2Scalar::from_parts(self.c1.clone(), self.ci.clone())
    }
}

impl Add<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn add(self, r: &Quaternion) -> Quaternion {
        Quaternion::new(&self.c1 + &r.c1, &self.ci + &r.ci, &self.cj + &r.cj, &self.ck + &r.ck)
    }
}
impl Sub<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn sub(self, r: &Quaternion) -> Quaternion {
        Quaternion::new(&self.c1 - &r.c1, &self.ci - &r.ci, &self.cj - &r.cj, &self.ck - &r.ck)
    }
}
impl Mul<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    /// Hamilton product.
    fn mul(self, r: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.c1, &self.ci, &self.cj, &self.ck);
        let (a2, b2, c2, d2) = (&r.c1, &r.ci, &r.cj, &r.ck);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}
impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.c1, -&self.ci, -&self.cj, -&self.ck)
    }
}
forward_binop!(Quaternion, Add, add);
forward_binop!(Quaternion, Sub, sub);
forward_binop!(Quaternion, Mul, mul);
assign_ops!(Quaternion);

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})i+({})j+({})k", self.c1, self.ci, self.cj, self.ck)
    }
}

pub fn quat_mul(q1: &Quaternion, q2: &Quaternion) -> Quaternion {
    q1 * q2
}

pub fn c_part(q: &Quaternion) -> Ext2Scalar {
    q.c_part()
}

// ------------------------------------------------------------ FloatScalar

/// Double precision complex number. Comparisons always take a tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FloatScalar {
    pub re: f64,
    pub im: f64,
}

impl FloatScalar {
    pub const fn new(re: f64, im: f64) -> Self {
        FloatScalar { re, im }
    }
    pub const fn real(re: f64) -> Self {
        FloatScalar { re, im: 0.0 }
    }
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
    pub fn approx_eq(&self, other: &FloatScalar, tol: f64) -> bool {
        (*self - *other).abs() <= tol
    }
}

impl Add for FloatScalar {
    type Output = FloatScalar;
    fn add(self, r: FloatScalar) -> FloatScalar {
        FloatScalar::new(self.re + r.re, self.im + r.im)
    }
}
impl Sub for FloatScalar {
    type Output = FloatScalar;
    fn sub(self, r: FloatScalar) -> FloatScalar {
        FloatScalar::new(self.re - r.re, self.im - r.im)
    }
}
impl Mul for FloatScalar {
    type Output = FloatScalar;
    fn mul(self, r: FloatScalar) -> FloatScalar {
        FloatScalar::new(self.re * r.re - self.im * r.im, self.re * r.im + self.im * r.re)
    }
}
impl Neg for FloatScalar {
    type Output = FloatScalar;
    fn neg(self) -> FloatScalar {
        FloatScalar::new(-self.re, -self.im)
    }
}

impl Zero for Ext2Scalar {
    fn zero() -> Self {
        Ext2Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Ext2Scalar::is_zero(self)
    }
}
impl One for Ext2Scalar {
    fn one() -> Self {
        Ext2Scalar::one()
    }
}
impl Zero for RealExt2 {
    fn zero() -> Self {
        RealExt2::zero()
    }
    fn is_zero(&self) -> bool {
        RealExt2::is_zero(self)
    }
}
