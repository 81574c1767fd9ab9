//! Dense multivectors over a complex Clifford algebra.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::signature::{AlgebraSignature, BladeIndex};
use crate::Complex;

/// Default relative tolerance for approximate comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// An element `a = sum_A a_A e_A` of a Clifford algebra, stored densely as
/// `2^n` complex coefficients indexed by blade mask.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: AlgebraSignature,
    coeffs: Vec<Complex>,
}

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

fn check_same(a: &AlgebraSignature, b: &AlgebraSignature) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SignatureMismatch(format!("{a:?} vs {b:?}")))
    }
}

impl Multivector {
    pub fn zero(sig: &AlgebraSignature) -> Self {
        Multivector {
            sig: sig.clone(),
            coeffs: vec![zero(); sig.dim()],
        }
    }

    pub fn one(sig: &AlgebraSignature) -> Self {
        Self::scalar(sig, Complex::new(1.0, 0.0))
    }

    pub fn scalar(sig: &AlgebraSignature, value: Complex) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[0] = value;
        m
    }

    /// `value * e_B`.
    pub fn blade(sig: &AlgebraSignature, blade: BladeIndex, value: Complex) -> Self {
        assert!(sig.contains(blade), "blade {blade} out of range for {sig:?}");
        let mut m = Self::zero(sig);
        m.coeffs[blade.mask() as usize] = value;
        m
    }

    pub fn basis(sig: &AlgebraSignature, blade: BladeIndex) -> Self {
        Self::blade(sig, blade, Complex::new(1.0, 0.0))
    }

    /// The generator `e_i` (1-based).
    pub fn generator(sig: &AlgebraSignature, i: usize) -> Self {
        Self::basis(sig, BladeIndex::e(i))
    }

    pub fn from_coeffs(sig: &AlgebraSignature, coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for an algebra of dimension {}",
                coeffs.len(),
                sig.dim()
            )));
        }
        if let Some(i) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(format!("coefficient of {}", BladeIndex(i as u32))));
        }
        Ok(Multivector {
            sig: sig.clone(),
            coeffs,
        })
    }

    /// Build from `(blade, coefficient)` pairs; repeated blades accumulate.
    pub fn from_terms<I>(sig: &AlgebraSignature, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BladeIndex, Complex)>,
    {
        let mut m = Self::zero(sig);
        for (b, c) in terms {
            sig.check_blade(b)?;
            m.coeffs[b.mask() as usize] += c;
        }
        Ok(m)
    }

    /// The volume element `e_[n] = e_1 e_2 ... e_n`.
    pub fn volume_element(sig: &AlgebraSignature) -> Result<Self> {
        if sig.n() == 0 {
            return Err(Error::InvalidGeneratorCount("the volume element needs n >= 1".into()));
        }
        Ok(Self::basis(sig, sig.full_mask()))
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    pub fn coeff(&self, blade: BladeIndex) -> Complex {
        self.coeffs[blade.mask() as usize]
    }

    pub fn scalar_part(&self) -> Complex {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == zero())
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeIndex, Complex)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != zero())
            .map(|(i, c)| (BladeIndex(i as u32), *c))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Multivector {
            sig: self.sig.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Multivector {
            sig: self.sig.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, lambda: Complex) -> Self {
        Multivector {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }

    /// Coefficientwise complex conjugate.
    pub fn conj(&self) -> Self {
        Multivector {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Geometric product `self * other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let mut out = vec![zero(); self.coeffs.len()];
        mul_acc(&self.sig, &mut out, &self.coeffs, &other.coeffs);
        Ok(Multivector {
            sig: self.sig.clone(),
            coeffs: out,
        })
    }

    /// `max |a_A - b_A| <= tol * (1 + max |coefficient|)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool> {
        check_same(&self.sig, &other.sig)?;
        let diff = self.distance(other);
        let scale = self.max_abs().max(other.max_abs());
        Ok(diff <= tol * (1.0 + scale))
    }

    /// Largest coefficientwise distance. Signatures must match.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// The same coefficients viewed in a larger standard algebra whose first
    /// generators coincide with ours.
    pub fn embed(&self, target: &AlgebraSignature) -> Result<Self> {
        if target.n() < self.n() || target.squares()[..self.n()] != *self.sig.squares() {
            return Err(Error::SignatureMismatch(format!(
                "cannot embed {:?} into {target:?}",
                self.sig
            )));
        }
        let mut m = Self::zero(target);
        m.coeffs[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        Ok(m)
    }
}

/// `out += a * b` over one signature, skipping zero coefficients.
pub(crate) fn mul_acc(sig: &AlgebraSignature, out: &mut [Complex], a: &[Complex], b: &[Complex]) {
    let rhs: Vec<(u32, Complex)> = b
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != zero())
        .map(|(i, c)| (i as u32, *c))
        .collect();
    for (ia, ca) in a.iter().enumerate() {
        if *ca == zero() {
            continue;
        }
        let ia = ia as u32;
        for &(ib, cb) in &rhs {
            let p = ca * cb;
            let target = &mut out[(ia ^ ib) as usize];
            match sig.sign_parity(ia, ib) {
                Some(true) => *target -= p,
                Some(false) => *target += p,
                None => *target += p * sig.product_factor(ia, ib),
            }
        }
    }
}

/// Closed-form square of the volume element,
/// `(-1)^(n(n-1)/2) * u_1 u_2 ... u_n`. Equals 1 for `n = 0`.
pub fn volume_square(sig: &AlgebraSignature) -> Complex {
    let n = sig.n();
    let sign = if (n * n.saturating_sub(1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    sig.squares().iter().fold(Complex::new(sign, 0.0), |acc, u| acc * u)
}

impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &'a Multivector) -> Multivector {
        self.try_add(rhs).expect("signature mismatch in multivector addition")
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &'a Multivector) -> Multivector {
        self.try_sub(rhs)
            .expect("signature mismatch in multivector subtraction")
    }
}

impl<'a> Mul<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &'a Multivector) -> Multivector {
        self.try_mul(rhs).expect("signature mismatch in multivector product")
    }
}

impl Mul<Complex> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Complex) -> Multivector {
        self.scale(rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Canonical text form, e.g. `(1+0i) + (0+2i)*e1 + (-1+0i)*e12`; the zero
/// element renders as `(0+0i)`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write_complex(f, c)?;
            if !b.is_scalar() {
                write!(f, "*{b}")?;
            }
        }
        if first {
            f.write_str("(0+0i)")?;
        }
        Ok(())
    }
}

fn write_complex(f: &mut fmt::Formatter<'_>, c: Complex) -> fmt::Result {
    if c.im.is_sign_negative() {
        write!(f, "({}-{}i)", c.re, -c.im)
    } else {
        write!(f, "({}+{}i)", c.re, c.im)
    }
}
