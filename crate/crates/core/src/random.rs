//! Seeded random elements for tests and batch checks. Every real and
//! imaginary part is uniform in `[-1, 1)`.

use rand::Rng;

use crate::cmatrix::CliffordMatrix;
use crate::matrix::ComplexMatrix;
use crate::multivector::Multivector;
use crate::signature::AlgebraSignature;
use crate::Complex;

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A complex number with modulus in `[0.25, 2]`, for generator squares.
pub fn random_nonzero_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    let modulus = rng.gen_range(0.25..2.0);
    let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Complex::from_polar(modulus, angle)
}

pub fn random_multivector<R: Rng + ?Sized>(sig: &AlgebraSignature, rng: &mut R) -> Multivector {
    let coeffs = (0..sig.dim()).map(|_| random_complex(rng)).collect();
    Multivector::from_coeffs(sig, coeffs).expect("finite coefficients")
}

pub fn random_complex_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_cmatrix<R: Rng + ?Sized>(
    sig: &AlgebraSignature,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> CliffordMatrix {
    CliffordMatrix::from_fn(sig, rows, cols, |_, _| random_multivector(sig, rng))
}
