//! The universal matrices `P_n`, `J_2m`, `K_2t` and the checks that
//! `P (diagonal carrier of a) P^{-1}` reproduces the representation.
//!
//! `P_n` is built from `P_0 = [1]` by one step per level. From even `n`
//! with `e = e_[n+1]` (odd step) or `u = e_[n] e_{n+1}`, `v = e_[n] e_{n+2}`,
//! `mu = u v` (even step), `r = (-1)^((n+1)(n+2)/2)`:
//!
//! ```text
//! P_{n+1} = 1/2 [[(1 + e/sqrt r) P_n, -(sqrt r - e) P_n], [(sqrt r - e)/r P_n, (1 + e/sqrt r) P_n]]
//! P_{n+2} = 1/2 [[(1 + u/sqrt r) P_n, (v - mu/sqrt r) P_n], [(v + mu/sqrt r)/r P_n, (1 - u/sqrt r) P_n]]
//! ```
//!
//! with the inverses carrying the same step elements on the right of `P_n^{-1}`.

use crate::cmatrix::{CliffordMatrix, Side};
use crate::decomposition::{principal_sqrt, split_pseudoscalar, step_square, two_step_generators};
use crate::error::{Error, Result};
use crate::linalg::{big_phi, matrix_bar};
use crate::multivector::Multivector;
use crate::representation::{lemma1_map, lemma3_map_r, phi, RepMatrix};
use crate::signature::{AlgebraSignature, BladeIndex};
use crate::Complex;

/// Largest generator count for which `P_n` is materialized.
pub const MAX_P_GENERATORS: usize = 12;

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// One recursion step: build from a `n_prev`-generator level, either by one
/// generator (`odd`) or by two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Step {
    n_prev: usize,
    odd: bool,
}

fn steps(n: usize) -> Vec<Step> {
    let mut out: Vec<Step> = (0..n / 2)
        .map(|k| Step {
            n_prev: 2 * k,
            odd: false,
        })
        .collect();
    if n % 2 == 1 {
        out.push(Step {
            n_prev: n - 1,
            odd: true,
        });
    }
    out
}

/// The 2x2 step blocks `(Q, Q^{-1})` over `sig`, row-major, including the 1/2.
fn step_elements(step: Step, sig: &AlgebraSignature) -> Result<([Multivector; 4], [Multivector; 4])> {
    let r = step_square(step.n_prev);
    let sr = principal_sqrt(r);
    let one = Multivector::one(sig);
    let half = c(0.5);
    if step.odd {
        let e = Multivector::blade(sig, BladeIndex::volume(step.n_prev + 1), c(1.0));
        let x = one.try_add(&e.scale(1.0 / sr))?;
        let y = one.scale(sr).try_sub(&e)?;
        let q = [x.scale(half), y.scale(-half), y.scale(half / r), x.scale(half)];
        let qi = [x.scale(half), y.scale(half), y.scale(-half / r), x.scale(half)];
        Ok((q, qi))
    } else {
        let [(u, _), (v, _), (mu, mu_c)] = two_step_generators(step.n_prev);
        let u = Multivector::blade(sig, BladeIndex(u), c(1.0));
        let v = Multivector::blade(sig, BladeIndex(v), c(1.0));
        let mu = Multivector::blade(sig, BladeIndex(mu), mu_c);
        let q = [
            one.try_add(&u.scale(1.0 / sr))?.scale(half),
            v.try_sub(&mu.scale(1.0 / sr))?.scale(half),
            v.try_add(&mu.scale(1.0 / sr))?.scale(half / r),
            one.try_sub(&u.scale(1.0 / sr))?.scale(half),
        ];
        Ok((q.clone(), q))
    }
}

fn check_p_range(n: usize) -> Result<AlgebraSignature> {
    if n == 0 || n > MAX_P_GENERATORS {
        return Err(Error::InvalidGeneratorCount(format!(
            "P_n needs 1 <= n <= {MAX_P_GENERATORS}, got {n}"
        )));
    }
    AlgebraSignature::standard(n)
}

/// `(P_n, P_n^{-1})`, each of extent `2^ceil(n/2)` over the standard `C_n`.
pub fn build_p(n: usize) -> Result<(CliffordMatrix, CliffordMatrix)> {
    let sig = check_p_range(n)?;
    let mut p = CliffordMatrix::identity(&sig, 1);
    let mut p_inv = p.clone();
    for step in steps(n) {
        let (q, qi) = step_elements(step, &sig)?;
        let l: Vec<CliffordMatrix> = q.iter().map(|x| p.scale_by(x, Side::Left)).collect::<Result<_>>()?;
        let r: Vec<CliffordMatrix> = qi
            .iter()
            .map(|x| p_inv.scale_by(x, Side::Right))
            .collect::<Result<_>>()?;
        p = CliffordMatrix::from_blocks(&[vec![&l[0], &l[1]], vec![&l[2], &l[3]]])?;
        p_inv = CliffordMatrix::from_blocks(&[vec![&r[0], &r[1]], vec![&r[2], &r[3]]])?;
    }
    Ok((p, p_inv))
}

fn two_by_two_kron(sig: &AlgebraSignature, q: &[Multivector; 4], m: usize) -> Result<CliffordMatrix> {
    CliffordMatrix::from_rows(
        sig,
        vec![vec![q[0].clone(), q[1].clone()], vec![q[2].clone(), q[3].clone()]],
    )
    .map(|x| x.kron_identity(m))
}

/// `(J_2m, J_2m^{-1})` over `C_1`:
/// `J = 1/2 [[(1 - ie) I, -(i - e) I], [-(i - e) I, (1 - ie) I]]`,
/// `J^{-1} = 1/2 [[(1 - ie) I, (i - e) I], [(i - e) I, (1 - ie) I]]`.
pub fn build_j(m: usize) -> Result<(CliffordMatrix, CliffordMatrix)> {
    if m == 0 {
        return Err(Error::DimensionMismatch("J_2m needs m >= 1".into()));
    }
    let sig = AlgebraSignature::standard(1)?;
    let i = Complex::new(0.0, 1.0);
    let t = |a: Complex, b: Complex| Multivector::from_coeffs(&sig, vec![a * 0.5, b * 0.5]);
    let x = t(c(1.0), -i)?;
    let y = t(i, c(-1.0))?;
    let j = two_by_two_kron(&sig, &[x.clone(), -&y, -&y, x.clone()], m)?;
    let j_inv = two_by_two_kron(&sig, &[x.clone(), y.clone(), y, x], m)?;
    Ok((j, j_inv))
}

/// `(K_2t, K_2t^{-1})` over `C_2`; the two coincide:
/// `K = 1/2 [[(1 - i e1) I, (e2 + i e12) I], [(-e2 + i e12) I, (1 + i e1) I]]`.
pub fn build_k(t: usize) -> Result<(CliffordMatrix, CliffordMatrix)> {
    if t == 0 {
        return Err(Error::DimensionMismatch("K_2t needs t >= 1".into()));
    }
    let sig = AlgebraSignature::standard(2)?;
    let i = Complex::new(0.0, 1.0);
    let h = c(0.5);
    let z = c(0.0);
    let mv = |v: [Complex; 4]| Multivector::from_coeffs(&sig, v.iter().map(|x| x * h).collect());
    let q = [
        mv([c(1.0), -i, z, z])?,
        mv([z, z, c(1.0), i])?,
        mv([z, z, c(-1.0), i])?,
        mv([c(1.0), i, z, z])?,
    ];
    let k = two_by_two_kron(&sig, &q, t)?;
    Ok((k.clone(), k))
}

/// `a I` for even `n`, `diag(a I, bar(a) I)` for odd `n`; the extent matches `P_n`.
pub fn diagonal_carrier(a: &Multivector) -> Result<CliffordMatrix> {
    let sig = a.signature();
    sig.require_standard()?;
    let n = a.n();
    if n.is_multiple_of(2) {
        Ok(CliffordMatrix::scalar_diag(sig, 1 << (n / 2), a))
    } else {
        let s = 1 << ((n - 1) / 2);
        let bar = split_pseudoscalar(a)?.bar();
        CliffordMatrix::block_diag(
            &CliffordMatrix::scalar_diag(sig, s, a),
            &CliffordMatrix::scalar_diag(sig, s, &bar),
        )
    }
}

/// A complex image as a Clifford matrix with scalar entries.
pub fn embed_rep(rep: &RepMatrix, sig: &AlgebraSignature) -> CliffordMatrix {
    CliffordMatrix::from_complex(sig, &rep.to_dense())
}

/// Largest entrywise distance between `P_n D_a P_n^{-1}` (evaluated with
/// plain Clifford-matrix products) and `phi_n(a)`.
pub fn verify_similarity(a: &Multivector) -> Result<f64> {
    let (p, p_inv) = build_p(a.n())?;
    let lhs = p.try_mul(&diagonal_carrier(a)?.try_mul(&p_inv)?)?;
    Ok(lhs.distance(&embed_rep(&phi(a)?, a.signature())))
}

/// Residual of the matrix factorization over `C_1` (with `J` and
/// `diag(A, bar A)`) or `C_2` (with `K` and `diag(A, A)`) against the block
/// representation of `A`.
pub fn verify_matrix_equality(a: &CliffordMatrix) -> Result<f64> {
    let sig = a.signature();
    sig.require_standard()?;
    let (m, p) = (a.rows(), a.cols());
    let (left, right, carrier) = match sig.n() {
        1 => (
            build_j(m)?.0,
            build_j(p)?.1,
            CliffordMatrix::block_diag(a, &matrix_bar(a)?)?,
        ),
        2 => (build_k(m)?.0, build_k(p)?.1, CliffordMatrix::block_diag(a, a)?),
        n => {
            return Err(Error::InvalidGeneratorCount(format!(
                "the J/K factorizations need n = 1 or 2, got {n}"
            )))
        }
    };
    let lhs = left.try_mul(&carrier)?.try_mul(&right)?;
    Ok(lhs.distance(&embed_rep(&big_phi(a)?, sig)))
}

/// `(P, P^{-1})` for one generator with `e^2 = u`:
/// `P = 1/2 [[1 + e/sqrt u, -(sqrt u - e)], [(sqrt u - e)/u, 1 + e/sqrt u]]`,
/// `P^{-1} = 1/2 [[1 + e/sqrt u, sqrt u - e], [-(sqrt u - e)/u, 1 + e/sqrt u]]`.
pub fn lemma1_p(u: Complex) -> Result<(CliffordMatrix, CliffordMatrix)> {
    let sig = AlgebraSignature::new(vec![u])?;
    let s = principal_sqrt(u);
    let h = c(0.5);
    let x = Multivector::from_coeffs(&sig, vec![h, h / s])?;
    let y = Multivector::from_coeffs(&sig, vec![h * s, -h])?;
    let rows = |a: [&Multivector; 4]| {
        CliffordMatrix::from_rows(
            &sig,
            vec![vec![a[0].clone(), a[1].clone()], vec![a[2].clone(), a[3].clone()]],
        )
    };
    let p = rows([&x, &-&y, &y.scale(1.0 / u), &x])?;
    let p_inv = rows([&x, &y, &y.scale(-1.0 / u), &x])?;
    Ok((p, p_inv))
}

/// `|P diag(a, bar a) P^{-1} - diag(a0 + sqrt(u) a1, a0 - sqrt(u) a1)|`.
pub fn lemma1_residual(u: Complex, a0: Complex, a1: Complex) -> Result<f64> {
    let (p, p_inv) = lemma1_p(u)?;
    let sig = p.signature().clone();
    let a = Multivector::from_coeffs(&sig, vec![a0, a1])?;
    let bar = Multivector::from_coeffs(&sig, vec![a0, -a1])?;
    let d = CliffordMatrix::from_rows(
        &sig,
        vec![vec![a, Multivector::zero(&sig)], vec![Multivector::zero(&sig), bar]],
    )?;
    let lhs = p.try_mul(&d)?.try_mul(&p_inv)?;
    Ok(lhs.distance(&CliffordMatrix::from_complex(&sig, &lemma1_map(u, a0, a1)?)))
}

/// `R = R^{-1}` for two generators with `e1^2 = u`, `e2^2 = v`:
/// `R = 1/2 [[1 + e1/sqrt u, e2 - e12/sqrt u], [(e2 + e12/sqrt u)/v, 1 - e1/sqrt u]]`.
pub fn lemma3_r(u: Complex, v: Complex) -> Result<CliffordMatrix> {
    let sig = AlgebraSignature::new(vec![u, v])?;
    let isu = 1.0 / principal_sqrt(u);
    let h = c(0.5);
    let z = c(0.0);
    let mv = |x: [Complex; 4]| Multivector::from_coeffs(&sig, x.to_vec());
    CliffordMatrix::from_rows(
        &sig,
        vec![
            vec![mv([h, h * isu, z, z])?, mv([z, z, h, -h * isu])?],
            vec![mv([z, z, h / v, h * isu / v])?, mv([h, -h * isu, z, z])?],
        ],
    )
}

/// `|R diag(a, a) R^{-1} - lemma3_map_r(u, v, a)|`, using `R^{-1} = R`.
pub fn lemma3_r_residual(u: Complex, v: Complex, a: [Complex; 4]) -> Result<f64> {
    let r = lemma3_r(u, v)?;
    let sig = r.signature().clone();
    let mv = Multivector::from_coeffs(&sig, a.to_vec())?;
    let lhs = r.try_mul(&CliffordMatrix::scalar_diag(&sig, 2, &mv))?.try_mul(&r)?;
    Ok(lhs.distance(&CliffordMatrix::from_complex(&sig, &lemma3_map_r(u, v, a)?)))
}

/// Sparse matrix with Clifford entries stored as blade/coefficient lists.
#[derive(Clone, Debug)]
struct SparseFactor {
    extent: usize,
    rows: Vec<Vec<(usize, Vec<(u32, Complex)>)>>,
}

impl SparseFactor {
    /// `I_copies (x) [[q0 I_s, q1 I_s], [q2 I_s, q3 I_s]]`.
    fn from_step(q: &[Multivector; 4], s: usize, copies: usize) -> Self {
        let terms: Vec<Vec<(u32, Complex)>> = q
            .iter()
            .map(|x| x.terms().map(|(b, c)| (b.mask(), c)).collect())
            .collect();
        let extent = 2 * s * copies;
        let mut rows = vec![Vec::new(); extent];
        for copy in 0..copies {
            for bi in 0..2 {
                for bj in 0..2 {
                    if terms[2 * bi + bj].is_empty() {
                        continue;
                    }
                    for t in 0..s {
                        let row = copy * 2 * s + bi * s + t;
                        let col = copy * 2 * s + bj * s + t;
                        rows[row].push((col, terms[2 * bi + bj].clone()));
                    }
                }
            }
        }
        SparseFactor { extent, rows }
    }
}

/// Dense Clifford matrix as one flat coefficient buffer.
struct Buffer {
    rows: usize,
    cols: usize,
    dim: usize,
    data: Vec<Complex>,
}

impl Buffer {
    fn zeros(rows: usize, cols: usize, dim: usize) -> Self {
        Buffer {
            rows,
            cols,
            dim,
            data: vec![c(0.0); rows * cols * dim],
        }
    }

    fn from_cmatrix(m: &CliffordMatrix) -> Self {
        let dim = m.signature().dim();
        let mut data = Vec::with_capacity(m.rows() * m.cols() * dim);
        for e in m.entries() {
            data.extend_from_slice(e.coeffs());
        }
        Buffer {
            rows: m.rows(),
            cols: m.cols(),
            dim,
            data,
        }
    }

    fn entry(&self, i: usize, j: usize) -> &[Complex] {
        let off = (i * self.cols + j) * self.dim;
        &self.data[off..off + self.dim]
    }

    fn into_cmatrix(self, sig: &AlgebraSignature) -> Result<CliffordMatrix> {
        let entries = self
            .data
            .chunks(self.dim)
            .map(|ch| Multivector::from_coeffs(sig, ch.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        CliffordMatrix::from_entries(sig, self.rows, self.cols, entries)
    }

    /// `F * self`.
    fn left_apply(&self, f: &SparseFactor, sig: &AlgebraSignature) -> Buffer {
        let mut out = Buffer::zeros(f.extent, self.cols, self.dim);
        let dim = self.dim;
        for (i, row) in f.rows.iter().enumerate() {
            for (k, terms) in row {
                for j in 0..self.cols {
                    let src = self.entry(*k, j);
                    let off = (i * out.cols + j) * dim;
                    let dst = &mut out.data[off..off + dim];
                    for (bx, x) in src.iter().enumerate() {
                        if *x == c(0.0) {
                            continue;
                        }
                        for &(b, cf) in terms {
                            dst[(b ^ bx as u32) as usize] += sig.product_factor(b, bx as u32) * cf * x;
                        }
                    }
                }
            }
        }
        out
    }

    /// `self * G`.
    fn right_apply(&self, g: &SparseFactor, sig: &AlgebraSignature) -> Buffer {
        let mut out = Buffer::zeros(self.rows, g.extent, self.dim);
        let dim = self.dim;
        for i in 0..self.rows {
            for (k, row) in g.rows.iter().enumerate() {
                let src = self.entry(i, k);
                if src.iter().all(|x| *x == c(0.0)) {
                    continue;
                }
                for (j, terms) in row {
                    let off = (i * out.cols + j) * dim;
                    let dst = &mut out.data[off..off + dim];
                    for (bx, x) in src.iter().enumerate() {
                        if *x == c(0.0) {
                            continue;
                        }
                        for &(b, cf) in terms {
                            dst[(bx as u32 ^ b) as usize] += sig.product_factor(bx as u32, b) * x * cf;
                        }
                    }
                }
            }
        }
        out
    }
}

/// `P_n` held as its product of sparse step factors, for checking the
/// similarity on many elements without re-multiplying dense Clifford matrices.
///
/// `P_n = F_L (I_2 (x) F_{L-1}) ... (I (x) F_1)` where `F_l` is the 2x2 step
/// block at level `l`; the evaluation `P (D_a P^{-1})` is the same product
/// associated factor by factor.
pub struct SimilarityVerifier {
    sig: AlgebraSignature,
    /// Outermost factor first.
    left: Vec<SparseFactor>,
    /// Innermost factor first.
    right: Vec<SparseFactor>,
}

impl SimilarityVerifier {
    pub fn new(n: usize) -> Result<Self> {
        let sig = check_p_range(n)?;
        let all = steps(n);
        let levels = all.len();
        let mut left = Vec::with_capacity(levels);
        let mut right = Vec::with_capacity(levels);
        for (l, step) in all.iter().enumerate() {
            let (q, qi) = step_elements(*step, &sig)?;
            let s = 1 << l;
            let copies = 1 << (levels - 1 - l);
            left.push(SparseFactor::from_step(&q, s, copies));
            right.push(SparseFactor::from_step(&qi, s, copies));
        }
        left.reverse();
        Ok(SimilarityVerifier { sig, left, right })
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
    }

    fn extent(&self) -> usize {
        1 << self.left.len()
    }

    fn apply(&self, m: &CliffordMatrix) -> Result<CliffordMatrix> {
        let mut buf = Buffer::from_cmatrix(m);
        for g in &self.right {
            buf = buf.right_apply(g, &self.sig);
        }
        for f in self.left.iter().rev() {
            buf = buf.left_apply(f, &self.sig);
        }
        buf.into_cmatrix(&self.sig)
    }

    /// `P_n` multiplied out from its factors.
    pub fn p(&self) -> Result<CliffordMatrix> {
        let mut buf = Buffer::from_cmatrix(&CliffordMatrix::identity(&self.sig, self.extent()));
        for f in self.left.iter().rev() {
            buf = buf.left_apply(f, &self.sig);
        }
        buf.into_cmatrix(&self.sig)
    }

    /// `P_n^{-1}` multiplied out from its factors.
    pub fn p_inv(&self) -> Result<CliffordMatrix> {
        let mut buf = Buffer::from_cmatrix(&CliffordMatrix::identity(&self.sig, self.extent()));
        for g in &self.right {
            buf = buf.right_apply(g, &self.sig);
        }
        buf.into_cmatrix(&self.sig)
    }

    /// `P_n D_a P_n^{-1}`.
    pub fn conjugate(&self, a: &Multivector) -> Result<CliffordMatrix> {
        if a.signature() != &self.sig {
            return Err(Error::SignatureMismatch(format!(
                "{:?} vs {:?}",
                a.signature(),
                self.sig
            )));
        }
        self.apply(&diagonal_carrier(a)?)
    }

    /// Largest entrywise distance between `P_n D_a P_n^{-1}` and `phi_n(a)`.
    pub fn residual(&self, a: &Multivector) -> Result<f64> {
        Ok(self.conjugate(a)?.distance(&embed_rep(&phi(a)?, &self.sig)))
    }
}
