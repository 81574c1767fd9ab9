//! The faithful representation `phi_n : C_n -> C(2^(n/2))` (even `n`) or
//! `C(2^((n-1)/2)) + C(2^((n-1)/2))` (odd `n`), built recursively from the
//! splits in [`crate::decomposition`], and its inverse.
//!
//! The recursion starts at `C_0 = C` (1x1 matrices). From even `n`:
//!
//! * odd step: `phi_{n+1}(a) = (phi_n(a0) + sqrt(r) phi_n(a1), phi_n(a0) - sqrt(r) phi_n(a1))`
//! * even step: `phi_{n+2}(a) = [[F0 + sqrt(r) F1, r (F2 + sqrt(r) F3)], [F2 - sqrt(r) F3, F0 - sqrt(r) F1]]`
//!   with `Fk = phi_n(ak)`.
//!
//! The same recursion with every scalar replaced by an `m x p` complex block
//! gives the block representation of Clifford matrices.

use rand::Rng;

use crate::cmatrix::CliffordMatrix;
use crate::decomposition::{
    principal_sqrt, pseudoscalar_routes, route_join, route_split, step_square, two_step_routes,
};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::multivector::Multivector;
use crate::signature::{AlgebraSignature, BladeIndex};
use crate::Complex;

/// Image of an element (or block image of a Clifford matrix).
#[derive(Clone, Debug, PartialEq)]
pub enum RepMatrix {
    /// A full complex matrix.
    Even(ComplexMatrix),
    /// The two diagonal blocks of `diag(plus, minus)`.
    Odd { plus: ComplexMatrix, minus: ComplexMatrix },
}

impl RepMatrix {
    pub fn is_even(&self) -> bool {
        matches!(self, RepMatrix::Even(_))
    }

    /// Identity image for `n` generators.
    pub fn identity(n: usize) -> Self {
        if n.is_multiple_of(2) {
            RepMatrix::Even(ComplexMatrix::identity(1 << (n / 2)))
        } else {
            let s = 1 << ((n - 1) / 2);
            RepMatrix::Odd {
                plus: ComplexMatrix::identity(s),
                minus: ComplexMatrix::identity(s),
            }
        }
    }

    /// The dense matrix this image denotes (block-diagonal for odd parity).
    pub fn to_dense(&self) -> ComplexMatrix {
        match self {
            RepMatrix::Even(m) => m.clone(),
            RepMatrix::Odd { plus, minus } => ComplexMatrix::block_diag(plus, minus),
        }
    }

    /// Row and column count of the dense form.
    pub fn extent(&self) -> (usize, usize) {
        match self {
            RepMatrix::Even(m) => (m.rows(), m.cols()),
            RepMatrix::Odd { plus, minus } => (plus.rows() + minus.rows(), plus.cols() + minus.cols()),
        }
    }

    /// Apply a unary map to every block.
    pub fn try_map(&self, f: impl Fn(&ComplexMatrix) -> Result<ComplexMatrix>) -> Result<Self> {
        Ok(match self {
            RepMatrix::Even(m) => RepMatrix::Even(f(m)?),
            RepMatrix::Odd { plus, minus } => RepMatrix::Odd {
                plus: f(plus)?,
                minus: f(minus)?,
            },
        })
    }

    /// Combine two images of the same parity blockwise.
    pub fn try_zip(
        &self,
        other: &Self,
        f: impl Fn(&ComplexMatrix, &ComplexMatrix) -> Result<ComplexMatrix>,
    ) -> Result<Self> {
        match (self, other) {
            (RepMatrix::Even(a), RepMatrix::Even(b)) => Ok(RepMatrix::Even(f(a, b)?)),
            (RepMatrix::Odd { plus: ap, minus: am }, RepMatrix::Odd { plus: bp, minus: bm }) => Ok(RepMatrix::Odd {
                plus: f(ap, bp)?,
                minus: f(am, bm)?,
            }),
            _ => Err(Error::Parity("images of the same parity".into())),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.try_zip(other, |a, b| a.try_mul(b))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.try_zip(other, |a, b| a.try_add(b))
    }

    pub fn scale(&self, lambda: Complex) -> Self {
        self.try_map(|m| Ok(m.scale(lambda))).expect("scaling cannot fail")
    }

    /// Blockwise inverse; a singular block makes the whole image singular.
    pub fn inverse(&self) -> Result<Self> {
        self.try_map(|m| m.inverse())
    }

    pub fn conjugate_transpose(&self) -> Self {
        self.try_map(|m| Ok(m.conjugate_transpose())).expect("cannot fail")
    }

    /// Determinant of the dense form.
    pub fn det(&self) -> Result<Complex> {
        match self {
            RepMatrix::Even(m) => m.det(),
            RepMatrix::Odd { plus, minus } => Ok(plus.det()? * minus.det()?),
        }
    }

    /// Largest entrywise distance; parities and extents must agree.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        let d = self.try_zip(other, |a, b| {
            if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
                return Err(Error::DimensionMismatch("image extents differ".into()));
            }
            Ok(ComplexMatrix::scalar(1, Complex::new(a.distance(b), 0.0)))
        })?;
        Ok(match d {
            RepMatrix::Even(m) => m.get(0, 0).re,
            RepMatrix::Odd { plus, minus } => plus.get(0, 0).re.max(minus.get(0, 0).re),
        })
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            RepMatrix::Even(m) => m.max_abs(),
            RepMatrix::Odd { plus, minus } => plus.max_abs().max(minus.max_abs()),
        }
    }
}

fn cscale(m: &ComplexMatrix, f: Complex) -> ComplexMatrix {
    m.scale(f)
}

/// Representation of an even-`n` coefficient array of blocks.
fn represent_even(parts: &[ComplexMatrix], n: usize) -> ComplexMatrix {
    if n == 0 {
        return parts[0].clone();
    }
    let routes = two_step_routes(n - 2);
    let (rows, cols) = (parts[0].rows(), parts[0].cols());
    let split = route_split(&routes, parts, 4, || ComplexMatrix::zeros(rows, cols), cscale);
    let f: Vec<ComplexMatrix> = split.iter().map(|p| represent_even(p, n - 2)).collect();
    let r = step_square(n - 2);
    let sr = principal_sqrt(r);
    let b11 = &f[0] + &f[1].scale(sr);
    let b22 = &f[0] - &f[1].scale(sr);
    let b12 = (&f[2] + &f[3].scale(sr)).scale(r);
    let b21 = &f[2] - &f[3].scale(sr);
    ComplexMatrix::from_blocks(&[vec![&b11, &b12], vec![&b21, &b22]]).expect("blocks share one shape")
}

/// Block representation of a coefficient array (one block per blade of `C_n`).
pub(crate) fn represent_blocks(parts: &[ComplexMatrix], n: usize) -> RepMatrix {
    debug_assert_eq!(parts.len(), 1 << n);
    if n.is_multiple_of(2) {
        return RepMatrix::Even(represent_even(parts, n));
    }
    let routes = pseudoscalar_routes(n - 1);
    let (rows, cols) = (parts[0].rows(), parts[0].cols());
    let split = route_split(&routes, parts, 2, || ComplexMatrix::zeros(rows, cols), cscale);
    let f0 = represent_even(&split[0], n - 1);
    let f1 = represent_even(&split[1], n - 1);
    let sr = principal_sqrt(step_square(n - 1));
    RepMatrix::Odd {
        plus: &f0 + &f1.scale(sr),
        minus: &f0 - &f1.scale(sr),
    }
}

fn unrepresent_even(m: &ComplexMatrix, n: usize) -> Vec<ComplexMatrix> {
    if n == 0 {
        return vec![m.clone()];
    }
    let (h, w) = (m.rows() / 2, m.cols() / 2);
    let b11 = m.block(0, 0, h, w);
    let b12 = m.block(0, w, h, w);
    let b21 = m.block(h, 0, h, w);
    let b22 = m.block(h, w, h, w);
    let r = step_square(n - 2);
    let sr = principal_sqrt(r);
    let half = Complex::new(0.5, 0.0);
    let b12r = b12.scale(1.0 / r);
    let f = [
        (&b11 + &b22).scale(half),
        (&b11 - &b22).scale(half / sr),
        (&b21 + &b12r).scale(half),
        (&b12r - &b21).scale(half / sr),
    ];
    let parts: Vec<Vec<ComplexMatrix>> = f.iter().map(|fk| unrepresent_even(fk, n - 2)).collect();
    route_join(&two_step_routes(n - 2), &parts, cscale)
}

/// Recover the per-blade coefficient blocks from a block image. `rows` and
/// `cols` are the leaf block extents.
pub(crate) fn unrepresent_blocks(rep: &RepMatrix, n: usize, rows: usize, cols: usize) -> Result<Vec<ComplexMatrix>> {
    let half_n = n / 2;
    let check = |m: &ComplexMatrix, k: usize| -> Result<()> {
        if m.rows() != rows << k || m.cols() != cols << k {
            return Err(Error::DimensionMismatch(format!(
                "expected a {}x{} block, got {}x{}",
                rows << k,
                cols << k,
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    };
    match (rep, n % 2) {
        (RepMatrix::Even(m), 0) => {
            check(m, half_n)?;
            Ok(unrepresent_even(m, n))
        }
        (RepMatrix::Odd { plus, minus }, 1) => {
            check(plus, half_n)?;
            check(minus, half_n)?;
            let sr = principal_sqrt(step_square(n - 1));
            let half = Complex::new(0.5, 0.0);
            let f0 = (plus + minus).scale(half);
            let f1 = (plus - minus).scale(half / sr);
            let parts = vec![unrepresent_even(&f0, n - 1), unrepresent_even(&f1, n - 1)];
            Ok(route_join(&pseudoscalar_routes(n - 1), &parts, cscale))
        }
        _ => Err(Error::Parity(format!(
            "an image of {} parity for n = {n}",
            if n.is_multiple_of(2) { "even" } else { "odd" }
        ))),
    }
}

fn leaf_blocks(a: &Multivector) -> Vec<ComplexMatrix> {
    a.coeffs().iter().map(|c| ComplexMatrix::scalar(1, *c)).collect()
}

/// `phi_n(a)` for `a` in the standard algebra `C_n`.
pub fn phi(a: &Multivector) -> Result<RepMatrix> {
    a.signature().require_standard()?;
    Ok(represent_blocks(&leaf_blocks(a), a.n()))
}

/// The element of `C_n` whose image is `m`.
pub fn phi_inverse(m: &RepMatrix, n: usize) -> Result<Multivector> {
    let sig = AlgebraSignature::standard(n)?;
    let parts = unrepresent_blocks(m, n, 1, 1)?;
    Multivector::from_coeffs(&sig, parts.iter().map(|p| p.get(0, 0)).collect())
}

/// `a^{-1}`, computed as `phi^{-1}(phi(a)^{-1})`.
pub fn inverse(a: &Multivector) -> Result<Multivector> {
    let image = phi(a)?;
    let inv = image
        .inverse()
        .map_err(|e| if e == Error::Singular { Error::NotInvertible } else { e })?;
    phi_inverse(&inv, a.n())
}

/// `diag(a0 + sqrt(u) a1, a0 - sqrt(u) a1)`, the image of `a0 + a1 e`
/// in the one-generator algebra with `e^2 = u`.
pub fn lemma1_map(u: Complex, a0: Complex, a1: Complex) -> Result<ComplexMatrix> {
    if u == Complex::new(0.0, 0.0) {
        return Err(Error::ZeroSquare { index: 1 });
    }
    let s = principal_sqrt(u);
    Ok(ComplexMatrix::diag(&[a0 + s * a1, a0 - s * a1]))
}

/// Image of `a0 + a1 e1 + a2 e2 + a3 e12` in the two-generator algebra with
/// `e1^2 = u`, `e2^2 = v`:
/// `[[a0 + sqrt(u) a1, v (a2 + sqrt(u) a3)], [a2 - sqrt(u) a3, a0 - sqrt(u) a1]]`.
pub fn lemma3_map_r(u: Complex, v: Complex, a: [Complex; 4]) -> Result<ComplexMatrix> {
    check_squares(u, v)?;
    let s = principal_sqrt(u);
    let [a0, a1, a2, a3] = a;
    ComplexMatrix::from_rows(&[vec![a0 + s * a1, v * (a2 + s * a3)], vec![a2 - s * a3, a0 - s * a1]])
}

fn check_squares(u: Complex, v: Complex) -> Result<()> {
    let z = Complex::new(0.0, 0.0);
    if u == z {
        return Err(Error::ZeroSquare { index: 1 });
    }
    if v == z {
        return Err(Error::ZeroSquare { index: 2 });
    }
    Ok(())
}

/// Matrix units `(tau11, tau12, tau21, tau22)` in the two-generator algebra
/// with `e1^2 = u`, `e2^2 = v`:
/// `tau11 = (1 + e1/sqrt(u))/2`, `tau12 = (e2 + e12/sqrt(u))/(2v)`,
/// `tau21 = (e2 - e12/sqrt(u))/2`, `tau22 = (1 - e1/sqrt(u))/2`.
pub fn matrix_unit_basis(u: Complex, v: Complex) -> Result<[Multivector; 4]> {
    check_squares(u, v)?;
    let sig = AlgebraSignature::new(vec![u, v])?;
    let inv_su = 1.0 / principal_sqrt(u);
    let half = Complex::new(0.5, 0.0);
    let t = |terms: [(u32, Complex); 2]| Multivector::from_terms(&sig, terms.map(|(b, c)| (BladeIndex(b), c)));
    Ok([
        t([(0, half), (1, half * inv_su)])?,
        t([(2, half / v), (3, half * inv_su / v)])?,
        t([(2, half), (3, -half * inv_su)])?,
        t([(0, half), (1, -half * inv_su)])?,
    ])
}

/// Outcome of the faithfulness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub n: usize,
    pub rank: usize,
    pub expected: usize,
}

impl IsoReport {
    pub fn pass(&self) -> bool {
        self.rank == self.expected
    }
}

/// Rank of the span of `phi_n(e_A)` over all `2^n` blades.
pub fn check_isomorphism(n: usize) -> Result<IsoReport> {
    let sig = AlgebraSignature::standard(n)?;
    let dim = sig.dim();
    let mut rows = Vec::with_capacity(dim * dim);
    for b in 0..dim as u32 {
        let image = phi(&Multivector::basis(&sig, BladeIndex(b)))?;
        match image {
            RepMatrix::Even(m) => rows.extend_from_slice(m.data()),
            RepMatrix::Odd { plus, minus } => {
                rows.extend_from_slice(plus.data());
                rows.extend_from_slice(minus.data());
            }
        }
    }
    let stacked = ComplexMatrix::from_vec(dim, dim, rows)?;
    Ok(IsoReport {
        n,
        rank: stacked.rank(1e-12),
        expected: dim,
    })
}

/// Explicit conjugate for `n <= 2`: conjugate every coefficient and negate
/// every non-scalar term.
pub fn sharp(a: &Multivector) -> Result<Multivector> {
    a.signature().require_standard()?;
    if a.n() > 2 {
        return Err(Error::InvalidGeneratorCount(format!(
            "explicit sharp needs n <= 2, got {}",
            a.n()
        )));
    }
    let coeffs = a
        .coeffs()
        .iter()
        .enumerate()
        .map(|(b, c)| if b == 0 { c.conj() } else { -c.conj() })
        .collect();
    Multivector::from_coeffs(a.signature(), coeffs)
}

/// The element whose image is the conjugate transpose of `phi(a)`.
pub fn sharp_general(a: &Multivector) -> Result<Multivector> {
    phi_inverse(&phi(a)?.conjugate_transpose(), a.n())
}

/// One entry of the checked two-generator map, as coefficient vectors over
/// `(a0, a1, a2, a3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapEntry {
    pub row: usize,
    pub col: usize,
    pub stated: [Complex; 4],
    pub actual: [Complex; 4],
    pub matches: bool,
}

/// Report on the `T`-variant of the two-generator factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaTReport {
    pub u: Complex,
    pub v: Complex,
    pub trials: usize,
    /// `|T T - I|`; `T` is stated to be its own inverse.
    pub t_involution_residual: f64,
    /// Per entry (row-major) worst `|m(ab) - m(a) m(b)|` for the stated map.
    pub stated_entry_residuals: [f64; 4],
    pub stated_max_residual: f64,
    pub stated_is_multiplicative: bool,
    /// Largest non-scalar coefficient left in `T diag(a, a) T^{-1}`.
    pub conjugation_scalar_residual: f64,
    /// Worst `|m(ab) - m(a) m(b)|` for the map read off the conjugation.
    pub corrected_max_residual: f64,
    pub entries: Vec<MapEntry>,
    pub matches_stated_equation: bool,
}

/// The stated `T`-variant map:
/// `[[a0 + sqrt(v) a1, u (a1 - sqrt(v) a3)], [a1 + sqrt(v) a3, a0 - sqrt(v) a1]]`,
/// as coefficient vectors per entry.
fn stated_t_map(u: Complex, v: Complex) -> [[Complex; 4]; 4] {
    let z = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let sv = principal_sqrt(v);
    [[one, sv, z, z], [z, u, z, -u * sv], [z, one, z, sv], [one, -sv, z, z]]
}

/// The matrix `T = T^{-1}` over the two-generator algebra with `e1^2 = u`, `e2^2 = v`:
/// `T = 1/2 [[1 + e2/sqrt(v), e1 + e12/sqrt(v)], [(e1 - e12/sqrt(v))/u, 1 - e2/sqrt(v)]]`.
pub fn lemma3_t_matrix(u: Complex, v: Complex) -> Result<CliffordMatrix> {
    check_squares(u, v)?;
    let sig = AlgebraSignature::new(vec![u, v])?;
    let isv = 1.0 / principal_sqrt(v);
    let h = Complex::new(0.5, 0.0);
    let t = |terms: &[(u32, Complex)]| {
        Multivector::from_terms(&sig, terms.iter().map(|&(b, c)| (BladeIndex(b), c))).expect("valid blades")
    };
    CliffordMatrix::from_rows(
        &sig,
        vec![
            vec![t(&[(0, h), (2, h * isv)]), t(&[(1, h), (3, h * isv)])],
            vec![t(&[(1, h / u), (3, -h * isv / u)]), t(&[(0, h), (2, -h * isv)])],
        ],
    )
}

fn apply_map(map: &[[Complex; 4]; 4], a: &[Complex]) -> ComplexMatrix {
    let e = |k: usize| (0..4).map(|i| map[k][i] * a[i]).sum::<Complex>();
    ComplexMatrix::from_rows(&[vec![e(0), e(1)], vec![e(2), e(3)]]).expect("2x2")
}

/// Check the stated `T`-variant map for multiplicativity on random pairs
/// and read the true map off `T diag(a, a) T^{-1}` computed in the algebra.
pub fn lemma3_t_report<R: Rng>(u: Complex, v: Complex, trials: usize, rng: &mut R) -> Result<LemmaTReport> {
    const TOL: f64 = 1e-9;
    let t = lemma3_t_matrix(u, v)?;
    let sig = t.signature().clone();
    let t_inv = t.clone();
    let t_involution_residual = t.try_mul(&t_inv)?.distance(&CliffordMatrix::identity(&sig, 2));

    // Coefficient vectors of the conjugation, one basis element at a time.
    let mut actual = [[Complex::new(0.0, 0.0); 4]; 4];
    let mut conjugation_scalar_residual: f64 = 0.0;
    for b in 0..4u32 {
        let e = Multivector::basis(&sig, BladeIndex(b));
        let image = t.try_mul(&CliffordMatrix::scalar_diag(&sig, 2, &e))?.try_mul(&t_inv)?;
        for k in 0..4 {
            let entry = image.get(k / 2, k % 2);
            actual[k][b as usize] = entry.scalar_part();
            let off = entry
                .terms()
                .filter(|(bl, _)| !bl.is_scalar())
                .map(|(_, c)| c.norm())
                .fold(0.0, f64::max);
            conjugation_scalar_residual = conjugation_scalar_residual.max(off);
        }
    }
    let stated = stated_t_map(u, v);

    let mut stated_entry_residuals = [0.0f64; 4];
    let mut corrected_max_residual: f64 = 0.0;
    let scale = 1.0 + u.norm().max(v.norm());
    for _ in 0..trials {
        let a: Vec<Complex> = (0..4).map(|_| random_complex(rng)).collect();
        let b: Vec<Complex> = (0..4).map(|_| random_complex(rng)).collect();
        let ma = Multivector::from_coeffs(&sig, a.clone())?;
        let mb = Multivector::from_coeffs(&sig, b.clone())?;
        let ab = ma.try_mul(&mb)?;
        for (map, is_stated) in [(&stated, true), (&actual, false)] {
            let lhs = apply_map(map, ab.coeffs());
            let rhs = apply_map(map, &a).try_mul(&apply_map(map, &b))?;
            for k in 0..4 {
                let res = (lhs.get(k / 2, k % 2) - rhs.get(k / 2, k % 2)).norm() / (scale * scale);
                if is_stated {
                    stated_entry_residuals[k] = stated_entry_residuals[k].max(res);
                } else {
                    corrected_max_residual = corrected_max_residual.max(res);
                }
            }
        }
    }
    let entries: Vec<MapEntry> = (0..4)
        .map(|k| {
            let matches = (0..4).all(|i| (stated[k][i] - actual[k][i]).norm() <= TOL * scale);
            MapEntry {
                row: k / 2,
                col: k % 2,
                stated: stated[k],
                actual: actual[k],
                matches,
            }
        })
        .collect();
    let stated_max_residual = stated_entry_residuals.iter().cloned().fold(0.0, f64::max);
    Ok(LemmaTReport {
        u,
        v,
        trials,
        t_involution_residual,
        stated_entry_residuals,
        stated_max_residual,
        stated_is_multiplicative: stated_max_residual <= TOL,
        conjugation_scalar_residual,
        corrected_max_residual,
        matches_stated_equation: entries.iter().all(|e| e.matches),
        entries,
    })
}

fn random_complex<R: Rng>(rng: &mut R) -> Complex {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}
