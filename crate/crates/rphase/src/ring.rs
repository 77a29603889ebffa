//! Exact arithmetic in ℤ[ω, 1/√2], ω = e^{iπ/4}, plus the floating-point
//! fallback used for circuits containing R_Y(π/4)-type rotations.
//!
//! Every amplitude produced by a Clifford+T circuit lives in this ring, so the
//! simulator can compare unitaries with zero tolerance.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Tolerance used by the floating-point backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("coefficient overflow")]
pub struct CoefficientOverflow;

/// `(a0 + a1·ω + a2·ω² + a3·ω³) / √2^k`, always stored in canonical form:
/// either `k = 0` or the numerator is not divisible by √2. Zero is `(0,0,0,0; 0)`.
///
/// Coefficients are `i64` with checked arithmetic. The operator impls panic
/// with "coefficient overflow" rather than wrap; use the `checked_*` methods
/// to get a `Result` instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement", into = "RawElement")]
pub struct RingElement {
    c: [i64; 4],
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    c: [i64; 4],
    k: u32,
}

impl TryFrom<RawElement> for RingElement {
    type Error = CoefficientOverflow;
    fn try_from(raw: RawElement) -> Result<Self, Self::Error> {
        Ok(normalize(raw.c, raw.k))
    }
}

impl From<RingElement> for RawElement {
    fn from(x: RingElement) -> Self {
        RawElement { c: x.c, k: x.k }
    }
}

/// Brings `(coeffs; k)` to canonical form. Never overflows: each reduction
/// step keeps every coefficient within the previous maximum magnitude.
pub fn normalize(coeffs: [i64; 4], k: u32) -> RingElement {
    let mut c = coeffs.map(i128::from);
    let mut k = k;
    if c == [0; 4] {
        return RingElement::ZERO;
    }
    // N·√2 = N·(ω − ω³) = (a1 − a3, a0 + a2, a1 + a3, a2 − a0); when all of
    // those are even, N/√2^k = (N·√2 / 2) / √2^(k−1).
    while k > 0 && (c[1] - c[3]) % 2 == 0 && (c[0] - c[2]) % 2 == 0 {
        c = [
            (c[1] - c[3]) / 2,
            (c[0] + c[2]) / 2,
            (c[1] + c[3]) / 2,
            (c[2] - c[0]) / 2,
        ];
        k -= 1;
    }
    RingElement {
        c: c.map(|v| v as i64),
        k,
    }
}

fn narrow(c: [i128; 4]) -> Result<[i64; 4], CoefficientOverflow> {
    let mut out = [0i64; 4];
    for (o, v) in out.iter_mut().zip(c) {
        *o = i64::try_from(v).map_err(|_| CoefficientOverflow)?;
    }
    Ok(out)
}

// Numerator times √2^e, widened.
fn scale_sqrt2(c: [i64; 4], e: u32) -> Result<[i128; 4], CoefficientOverflow> {
    let mut w = c.map(i128::from);
    if e % 2 == 1 {
        w = [w[1] - w[3], w[0] + w[2], w[1] + w[3], w[2] - w[0]];
    }
    let shift = e / 2;
    if shift >= 64 {
        return Err(CoefficientOverflow);
    }
    for v in w.iter_mut() {
        *v = v.checked_mul(1i128 << shift).ok_or(CoefficientOverflow)?;
    }
    Ok(w)
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { c: [0; 4], k: 0 };
    pub const ONE: RingElement = RingElement { c: [1, 0, 0, 0], k: 0 };

    /// Builds and canonicalizes `(coeffs; k)`.
    pub fn new(coeffs: [i64; 4], k: u32) -> Self {
        normalize(coeffs, k)
    }

    /// ω^j for any integer j.
    pub fn omega_pow(j: i64) -> Self {
        Self::ONE.mul_omega(j)
    }

    pub fn i() -> Self {
        Self::omega_pow(2)
    }

    pub fn sqrt2() -> Self {
        RingElement { c: [0, 1, 0, -1], k: 0 }
    }

    pub fn inv_sqrt2() -> Self {
        RingElement { c: [1, 0, 0, 0], k: 1 }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.c
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, CoefficientOverflow> {
        let k = self.k.max(rhs.k);
        let a = scale_sqrt2(self.c, k - self.k)?;
        let b = scale_sqrt2(rhs.c, k - rhs.k)?;
        let mut s = [0i128; 4];
        for i in 0..4 {
            s[i] = a[i].checked_add(b[i]).ok_or(CoefficientOverflow)?;
        }
        Ok(normalize(narrow(s)?, k))
    }

    pub fn checked_neg(self) -> Result<Self, CoefficientOverflow> {
        let mut c = self.c;
        for v in c.iter_mut() {
            *v = v.checked_neg().ok_or(CoefficientOverflow)?;
        }
        Ok(RingElement { c, k: self.k })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, CoefficientOverflow> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, CoefficientOverflow> {
        let a = self.c.map(i128::from);
        let b = rhs.c.map(i128::from);
        // ω⁴ = −1 folds the high half of the product back with a sign flip.
        let r = [
            a[0] * b[0] - a[1] * b[3] - a[2] * b[2] - a[3] * b[1],
            a[0] * b[1] + a[1] * b[0] - a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0] - a[3] * b[3],
            a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
        ];
        let k = self.k.checked_add(rhs.k).ok_or(CoefficientOverflow)?;
        Ok(normalize(narrow(r)?, k))
    }

    /// Multiplies by ω^j; a signed rotation of the coefficients.
    pub fn mul_omega(self, j: i64) -> Self {
        let mut c = self.c;
        for _ in 0..j.rem_euclid(8) {
            c = [
                c[3].checked_neg().expect("coefficient overflow"),
                c[0],
                c[1],
                c[2],
            ];
        }
        RingElement { c, k: self.k }
    }

    /// Multiplies by 1/√2.
    pub fn div_sqrt2(self) -> Self {
        if self.is_zero() {
            return self;
        }
        normalize(self.c, self.k.checked_add(1).expect("coefficient overflow"))
    }

    pub fn conj(self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let neg = |v: i64| v.checked_neg().expect("coefficient overflow");
        RingElement {
            c: [a0, neg(a3), neg(a2), neg(a1)],
            k: self.k,
        }
    }

    /// True iff `conj(x)·x = 1` exactly.
    pub fn is_unit_magnitude(&self) -> bool {
        (self.conj() * *self) == Self::ONE
    }

    /// Exponent j with `self = ω^j`, if `self` is an eighth root of unity.
    pub fn omega_exponent(&self) -> Option<u8> {
        (0..8u8).find(|&j| Self::omega_pow(i64::from(j)) == *self)
    }

    pub fn to_float(&self) -> (f64, f64) {
        let z = self.to_complex();
        (z.re, z.im)
    }

    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [a0, a1, a2, a3] = self.c.map(|v| v as f64);
        let re = a0 + h * (a1 - a3);
        let im = a2 + h * (a1 + a3);
        let scale = h.powi(self.k as i32);
        Complex64::new(re * scale, im * scale)
    }
}

impl Default for RingElement {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for RingElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("coefficient overflow")
    }
}

impl Sub for RingElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("coefficient overflow")
    }
}

impl Mul for RingElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("coefficient overflow")
    }
}

impl Neg for RingElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("coefficient overflow")
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.c;
        write!(f, "({a0},{a1},{a2},{a3};{})", self.k)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(j) = self.omega_exponent() {
            return match j {
                0 => write!(f, "1"),
                1 => write!(f, "ω"),
                2 => write!(f, "i"),
                4 => write!(f, "-1"),
                6 => write!(f, "-i"),
                _ => write!(f, "ω^{j}"),
            };
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(p, &v)| match p {
                0 => format!("{v}"),
                1 => format!("{v}ω"),
                _ => format!("{v}ω^{p}"),
            })
            .collect();
        let num = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        if self.k == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/√2^{}", self.k)
        }
    }
}

/// Numeric backend selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Ring,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Ring => "ring",
            Backend::Float => "float",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ring" => Ok(Backend::Ring),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend '{other}' (expected ring or float)")),
        }
    }
}

/// Amplitude type the simulator is generic over.
pub trait Amplitude:
    Copy
    + Send
    + Sync
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul_omega(self, j: i64) -> Self;
    fn div_sqrt2(self) -> Self;
    fn conj(self) -> Self;
    fn to_complex(self) -> Complex64;
    fn from_ring(x: RingElement) -> Self;
    /// `(cos(mπ/8), sin(mπ/8))`, the entries of R_Y(m·π/4); `None` if not representable.
    fn ry_entries(m: i32) -> Option<(Self, Self)>;
    /// Exact equality for the ring, tolerance-based for floats.
    fn approx_eq(self, other: Self) -> bool;

    fn is_unit(self) -> bool {
        (self.conj() * self).approx_eq(Self::one())
    }
}

impl Amplitude for RingElement {
    const BACKEND: Backend = Backend::Ring;

    fn zero() -> Self {
        Self::ZERO
    }
    fn one() -> Self {
        Self::ONE
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn mul_omega(self, j: i64) -> Self {
        RingElement::mul_omega(self, j)
    }
    fn div_sqrt2(self) -> Self {
        RingElement::div_sqrt2(self)
    }
    fn conj(self) -> Self {
        RingElement::conj(self)
    }
    fn to_complex(self) -> Complex64 {
        RingElement::to_complex(&self)
    }
    fn from_ring(x: RingElement) -> Self {
        x
    }
    fn ry_entries(m: i32) -> Option<(Self, Self)> {
        if m % 2 != 0 {
            return None;
        }
        // cos(jπ/4) = (ω^j + ω^-j)/2, sin(jπ/4) = −i(ω^j − ω^-j)/2
        let j = i64::from(m / 2);
        let half = RingElement::new([1, 0, 0, 0], 2);
        let w = RingElement::omega_pow(j);
        let cos = (w + w.conj()) * half;
        let sin = ((w - w.conj()) * half).mul_omega(-2);
        Some((cos, sin))
    }
    fn approx_eq(self, other: Self) -> bool {
        self == other
    }
}

impl Amplitude for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() < FLOAT_TOLERANCE * 1e-3
    }
    fn mul_omega(self, j: i64) -> Self {
        self * Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * j.rem_euclid(8) as f64)
    }
    fn div_sqrt2(self) -> Self {
        self * std::f64::consts::FRAC_1_SQRT_2
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn from_ring(x: RingElement) -> Self {
        x.to_complex()
    }
    fn ry_entries(m: i32) -> Option<(Self, Self)> {
        let half = f64::from(m) * std::f64::consts::PI / 8.0;
        Some((Complex64::new(half.cos(), 0.0), Complex64::new(half.sin(), 0.0)))
    }
    fn approx_eq(self, other: Self) -> bool {
        (self - other).norm() <= FLOAT_TOLERANCE
    }
}
