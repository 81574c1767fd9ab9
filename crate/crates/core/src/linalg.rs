//! Linear algebra over `C_n` through the block representation
//! `Phi(A) = sum_B phi(e_B) (x) A_B`: the representation recursion applied
//! with every scalar replaced by an `m x p` complex block.

use rand::Rng;

use crate::cmatrix::CliffordMatrix;
use crate::decomposition::split_pseudoscalar;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Polynomial};
use crate::multivector::Multivector;
use crate::random::random_complex;
use crate::representation::{represent_blocks, unrepresent_blocks, RepMatrix};
use crate::signature::AlgebraSignature;
use crate::Complex;

/// Block image of a Clifford matrix; same shape rules as an element image,
/// with every extent multiplied by the matrix extents.
pub type BlockRep = RepMatrix;

/// `Phi(A)` for `A` over the standard `C_n`.
pub fn big_phi(a: &CliffordMatrix) -> Result<BlockRep> {
    a.signature().require_standard()?;
    Ok(represent_blocks(&a.coefficient_matrices(), a.signature().n()))
}

/// The `m x p` Clifford matrix over `C_n` whose block image is `m`.
pub fn big_phi_inverse(image: &BlockRep, n: usize, rows: usize, cols: usize) -> Result<CliffordMatrix> {
    let sig = AlgebraSignature::standard(n)?;
    let parts = unrepresent_blocks(image, n, rows, cols)?;
    CliffordMatrix::from_coefficient_matrices(&sig, &parts)
}

fn require_square(a: &CliffordMatrix, what: &str) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{what} of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Entrywise bar conjugate `A0 - A1 e_[n]` for odd `n`.
pub fn matrix_bar(a: &CliffordMatrix) -> Result<CliffordMatrix> {
    let mut entries = Vec::with_capacity(a.entries().len());
    for e in a.entries() {
        entries.push(split_pseudoscalar(e)?.bar());
    }
    CliffordMatrix::from_entries(a.signature(), a.rows(), a.cols(), entries)
}

/// Explicit `A^#` for `n <= 2`: conjugate transpose of every coefficient
/// matrix, with non-scalar blades negated.
pub fn matrix_sharp(a: &CliffordMatrix) -> Result<CliffordMatrix> {
    let sig = a.signature();
    sig.require_standard()?;
    if sig.n() > 2 {
        return Err(Error::InvalidGeneratorCount(format!(
            "explicit sharp needs n <= 2, got {}",
            sig.n()
        )));
    }
    let parts: Vec<ComplexMatrix> = a
        .coefficient_matrices()
        .iter()
        .enumerate()
        .map(|(b, m)| {
            let t = m.conjugate_transpose();
            if b == 0 {
                t
            } else {
                t.scale(Complex::new(-1.0, 0.0))
            }
        })
        .collect();
    CliffordMatrix::from_coefficient_matrices(sig, &parts)
}

/// The matrix whose block image is the conjugate transpose of `Phi(A)`.
pub fn matrix_sharp_general(a: &CliffordMatrix) -> Result<CliffordMatrix> {
    big_phi_inverse(
        &big_phi(a)?.conjugate_transpose(),
        a.signature().n(),
        a.cols(),
        a.rows(),
    )
}

/// `A^{-1}`, pulled back from the inverse of `Phi(A)`.
pub fn cliff_inverse(a: &CliffordMatrix) -> Result<CliffordMatrix> {
    require_square(a, "inverse")?;
    let inv = big_phi(a)?
        .inverse()
        .map_err(|e| if e == Error::Singular { Error::NotInvertible } else { e })?;
    big_phi_inverse(&inv, a.signature().n(), a.rows(), a.cols())
}

/// Characteristic polynomial of `Phi(A)`; for odd `n` the product of the two
/// block polynomials.
pub fn cliff_charpoly(a: &CliffordMatrix) -> Result<Polynomial> {
    require_square(a, "characteristic polynomial")?;
    match big_phi(a)? {
        RepMatrix::Even(m) => m.charpoly(),
        RepMatrix::Odd { plus, minus } => Ok(plus.charpoly()?.mul(&minus.charpoly()?)),
    }
}

/// `p_A(A)` evaluated in Clifford-matrix arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyHamilton {
    pub charpoly: Polynomial,
    /// Largest coefficient magnitude in `p_A(A)`.
    pub absolute: f64,
    /// `sum_k |c_k| max|A^k|`, the size of the terms that cancel.
    pub scale: f64,
}

impl CayleyHamilton {
    /// `absolute / max(scale, 1)`.
    pub fn relative(&self) -> f64 {
        self.absolute / self.scale.max(1.0)
    }
}

pub fn cayley_hamilton(a: &CliffordMatrix) -> Result<CayleyHamilton> {
    let charpoly = cliff_charpoly(a)?;
    let sig = a.signature();
    let s = a.rows();
    let mut value = CliffordMatrix::zeros(sig, s, s);
    let mut power = CliffordMatrix::identity(sig, s);
    let mut scale = 0.0;
    for (k, ck) in charpoly.coeffs().iter().enumerate() {
        if k > 0 {
            power = power.try_mul(a)?;
        }
        value = value.try_add(&power.scale(*ck))?;
        scale += ck.norm() * power.max_abs();
    }
    Ok(CayleyHamilton {
        absolute: value.max_abs(),
        scale,
        charpoly,
    })
}

/// Relative Cayley–Hamilton residual, see [`CayleyHamilton::relative`].
pub fn cayley_hamilton_residual(a: &CliffordMatrix) -> Result<f64> {
    Ok(cayley_hamilton(a)?.relative())
}

/// Outcome of [`similar_check`].
#[derive(Clone, Debug, PartialEq)]
pub enum SimilarityVerdict {
    /// `A X = X B` with `X` invertible; `residual = max|A X - X B|`.
    Similar {
        witness: CliffordMatrix,
        residual: f64,
    },
    NotSimilar {
        reason: String,
    },
    /// Intertwiners exist but no sampled one was invertible.
    Inconclusive {
        nullity: usize,
        trials: usize,
    },
}

impl SimilarityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SimilarityVerdict::Similar { .. } => "similar",
            SimilarityVerdict::NotSimilar { .. } => "not_similar",
            SimilarityVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Basis of `{X : A X = X B}` for square complex `A`, `B`, as row-major vectors.
fn intertwiners(a: &ComplexMatrix, b: &ComplexMatrix) -> Vec<Vec<Complex>> {
    let s = a.rows();
    let mut l = ComplexMatrix::zeros(s * s, s * s);
    for i in 0..s {
        for j in 0..s {
            for k in 0..s {
                let row = i * s + j;
                let v = l.get(row, k * s + j) + a.get(i, k);
                l.set(row, k * s + j, v);
                let w = l.get(row, i * s + k) - b.get(k, j);
                l.set(row, i * s + k, w);
            }
        }
    }
    l.nullspace(1e-10)
}

/// Random combination of a basis, reshaped to `s x s`.
fn sample<R: Rng + ?Sized>(basis: &[Vec<Complex>], s: usize, rng: &mut R) -> ComplexMatrix {
    let mut v = vec![Complex::new(0.0, 0.0); s * s];
    for b in basis {
        let c = random_complex(rng);
        for (x, y) in v.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    ComplexMatrix::from_vec(s, s, v).expect("s x s")
}

/// Reciprocal 1-norm condition number; zero for singular input.
fn conditioning(m: &ComplexMatrix) -> f64 {
    match m.lu() {
        Ok(_) => {
            let inv = m.inverse().expect("nonsingular");
            1.0 / (m.norm_one() * inv.norm_one())
        }
        Err(_) => 0.0,
    }
}

/// Decide whether square `A`, `B` over `C_n` are similar by searching the
/// intertwiner space of `Phi(A)`, `Phi(B)` for an invertible member.
/// Charpolys that differ (relative distance above `tol`) short-circuit to
/// `NotSimilar`.
pub fn similar_check<R: Rng + ?Sized>(
    a: &CliffordMatrix,
    b: &CliffordMatrix,
    trials: usize,
    tol: f64,
    rng: &mut R,
) -> Result<SimilarityVerdict> {
    require_square(a, "similarity")?;
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) || a.signature() != b.signature() {
        return Err(Error::DimensionMismatch(
            "similarity needs equally sized matrices over one algebra".into(),
        ));
    }
    let (pa, pb) = (cliff_charpoly(a)?, cliff_charpoly(b)?);
    if pa.relative_distance(&pb) > tol {
        return Ok(SimilarityVerdict::NotSimilar {
            reason: "characteristic polynomials differ".into(),
        });
    }
    let (fa, fb) = (big_phi(a)?, big_phi(b)?);
    let pairs: Vec<(ComplexMatrix, ComplexMatrix)> = match (&fa, &fb) {
        (RepMatrix::Even(x), RepMatrix::Even(y)) => vec![(x.clone(), y.clone())],
        (RepMatrix::Odd { plus: xp, minus: xm }, RepMatrix::Odd { plus: yp, minus: ym }) => {
            vec![(xp.clone(), yp.clone()), (xm.clone(), ym.clone())]
        }
        _ => unreachable!("one signature gives one parity"),
    };
    let bases: Vec<Vec<Vec<Complex>>> = pairs.iter().map(|(x, y)| intertwiners(x, y)).collect();
    if bases.iter().any(|bs| bs.is_empty()) {
        return Ok(SimilarityVerdict::NotSimilar {
            reason: "only the zero intertwiner exists".into(),
        });
    }
    let nullity = bases.iter().map(|bs| bs.len()).sum();
    let s = pairs[0].0.rows();
    let mut blocks = Vec::with_capacity(bases.len());
    for basis in &bases {
        let mut best: Option<(f64, ComplexMatrix)> = None;
        for _ in 0..trials {
            let x = sample(basis, s, rng);
            let q = conditioning(&x);
            if q > 1e-8 && best.as_ref().is_none_or(|(bq, _)| q > *bq) {
                best = Some((q, x));
                if q > 1e-3 {
                    break;
                }
            }
        }
        match best {
            Some((_, x)) => blocks.push(x),
            None => return Ok(SimilarityVerdict::Inconclusive { nullity, trials }),
        }
    }
    let image = if blocks.len() == 1 {
        RepMatrix::Even(blocks.pop().expect("one block"))
    } else {
        let minus = blocks.pop().expect("two blocks");
        RepMatrix::Odd {
            plus: blocks.pop().expect("two blocks"),
            minus,
        }
    };
    let witness = big_phi_inverse(&image, a.signature().n(), a.rows(), a.cols())?;
    let residual = a.try_mul(&witness)?.distance(&witness.try_mul(b)?);
    Ok(SimilarityVerdict::Similar { witness, residual })
}

/// `exp(A)`: the matrix exponential of `Phi(A)` (blockwise for odd `n`),
/// pulled back.
pub fn cliff_exp(a: &CliffordMatrix) -> Result<CliffordMatrix> {
    require_square(a, "exponential")?;
    let image = big_phi(a)?.try_map(|m| m.exp())?;
    big_phi_inverse(&image, a.signature().n(), a.rows(), a.cols())
}

/// `sum_{k < terms} a^k / k!` computed with the geometric product only.
pub fn exp_series(a: &Multivector, terms: usize) -> Result<Multivector> {
    let mut sum = Multivector::zero(a.signature());
    let mut term = Multivector::one(a.signature());
    for k in 0..terms {
        if k > 0 {
            term = term.try_mul(a)?.scale(Complex::new(1.0 / k as f64, 0.0));
        }
        sum = sum.try_add(&term)?;
    }
    Ok(sum)
}

/// Distance between `A` and `1/4 [x I_m, y I_m] Phi(A) [x I_p, z I_p]^T`
/// with `(x, y, z) = (1 - ie, i - e, e - i)` over `C_1` and
/// `(1 - i e1, e2 + i e12, -e2 + i e12)` over `C_2`.
pub fn reconstruction_check(a: &CliffordMatrix) -> Result<f64> {
    let sig = a.signature();
    sig.require_standard()?;
    let i = Complex::new(0.0, 1.0);
    let one = Complex::new(1.0, 0.0);
    let z = Complex::new(0.0, 0.0);
    let mv = |c: Vec<Complex>| Multivector::from_coeffs(sig, c);
    let (x, y, w) = match sig.n() {
        1 => (mv(vec![one, -i])?, mv(vec![i, -one])?, mv(vec![-i, one])?),
        2 => (
            mv(vec![one, -i, z, z])?,
            mv(vec![z, z, one, i])?,
            mv(vec![z, z, -one, i])?,
        ),
        n => {
            return Err(Error::InvalidGeneratorCount(format!(
                "reconstruction formulas need n = 1 or 2, got {n}"
            )))
        }
    };
    let (m, p) = (a.rows(), a.cols());
    let left = CliffordMatrix::from_blocks(&[vec![
        &CliffordMatrix::scalar_diag(sig, m, &x),
        &CliffordMatrix::scalar_diag(sig, m, &y),
    ]])?;
    let right = CliffordMatrix::from_blocks(&[
        vec![&CliffordMatrix::scalar_diag(sig, p, &x)],
        vec![&CliffordMatrix::scalar_diag(sig, p, &w)],
    ])?;
    let middle = CliffordMatrix::from_complex(sig, &big_phi(a)?.to_dense());
    let rebuilt = left.try_mul(&middle)?.try_mul(&right)?.scale(Complex::new(0.25, 0.0));
    Ok(rebuilt.distance(a))
}

/// [`reconstruction_check`] for a single element.
pub fn reconstruction_check_element(a: &Multivector) -> Result<f64> {
    reconstruction_check(&CliffordMatrix::from_rows(a.signature(), vec![vec![a.clone()]])?)
}
