//! Structural splits of `C_{n+1}` and `C_{n+2}` over `C_n` for even `n`.
//!
//! The odd step writes `a = a0 + a1 e_[n+1]` where the pseudoscalar
//! `e_[n+1]` is central in `C_{n+1}`. The even step writes
//! `a = a0 + a1 u + a2 v + a3 mu` with `u = e_[n] e_{n+1}`,
//! `v = e_[n] e_{n+2}` and `mu = u v`; all three commute with `C_n`.
//! Every component lives in `C_n`.

use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::signature::{blade_product, AlgebraSignature, BladeIndex};
use crate::Complex;

/// Principal square root, with the two values that occur here pinned
/// exactly: `sqrt(1) = 1`, `sqrt(-1) = i`. A negative zero imaginary part
/// counts as zero, so every negative real maps to the upper half-plane.
pub fn principal_sqrt(z: Complex) -> Complex {
    if z == Complex::new(1.0, 0.0) {
        Complex::new(1.0, 0.0)
    } else if z == Complex::new(-1.0, 0.0) {
        Complex::new(0.0, 1.0)
    } else {
        Complex::new(z.re, z.im + 0.0).sqrt()
    }
}

/// `(-1)^((n+1)(n+2)/2)`, the square of `e_[n+1]` and of `u`, `v`.
pub fn step_square(n: usize) -> Complex {
    if ((n + 1) * (n + 2) / 2).is_multiple_of(2) {
        Complex::new(1.0, 0.0)
    } else {
        Complex::new(-1.0, 0.0)
    }
}

/// Where one blade of the larger algebra lands: `component[target] += factor * coeff`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Route {
    pub component: usize,
    pub target: u32,
    pub factor: Complex,
}

/// Per-blade routes for `a = a0 + a1 e_[n+1]`, `n` even.
pub(crate) fn pseudoscalar_routes(n: usize) -> Vec<Route> {
    let big = AlgebraSignature::standard(n + 1).expect("n within range");
    let full = big.full_mask();
    let top = 1u32 << n;
    let r = step_square(n);
    (0..big.dim() as u32)
        .map(|b| {
            if b & top == 0 {
                Route {
                    component: 0,
                    target: b,
                    factor: Complex::new(1.0, 0.0),
                }
            } else {
                // e_B * e_[n+1]^{-1} = r * e_B * e_[n+1]
                let (t, s) = blade_product(&big, BladeIndex(b), full);
                Route {
                    component: 1,
                    target: t.mask(),
                    factor: r * s,
                }
            }
        })
        .collect()
}

/// Masks and coefficients of `u`, `v`, `mu` inside `C_{n+2}`.
pub(crate) fn two_step_generators(n: usize) -> [(u32, Complex); 3] {
    let big = AlgebraSignature::standard(n + 2).expect("n within range");
    let low = (1u32 << n) - 1;
    let u = BladeIndex(low | (1 << n));
    let v = BladeIndex(low | (1 << (n + 1)));
    // e_[n] e_{n+1} is already in canonical order, likewise e_[n] e_{n+2}.
    let (mu, s) = blade_product(&big, u, v);
    [
        (u.mask(), Complex::new(1.0, 0.0)),
        (v.mask(), Complex::new(1.0, 0.0)),
        (mu.mask(), s),
    ]
}

/// Per-blade routes for `a = a0 + a1 u + a2 v + a3 mu`, `n` even.
pub(crate) fn two_step_routes(n: usize) -> Vec<Route> {
    let big = AlgebraSignature::standard(n + 2).expect("n within range");
    let r = step_square(n);
    let [(u, _), (v, _), (mu, mu_c)] = two_step_generators(n);
    let b1 = 1u32 << n;
    let b2 = 1u32 << (n + 1);
    (0..big.dim() as u32)
        .map(|b| {
            let (component, inv_mask, inv_coeff) = match (b & b1 != 0, b & b2 != 0) {
                (false, false) => {
                    return Route {
                        component: 0,
                        target: b,
                        factor: Complex::new(1.0, 0.0),
                    }
                }
                // u^{-1} = u / r, v^{-1} = v / r, mu^{-1} = -mu
                (true, false) => (1, u, 1.0 / r),
                (false, true) => (2, v, 1.0 / r),
                (true, true) => (3, mu, -mu_c),
            };
            let (t, s) = blade_product(&big, BladeIndex(b), BladeIndex(inv_mask));
            Route {
                component,
                target: t.mask(),
                factor: inv_coeff * s,
            }
        })
        .collect()
}

/// Apply routes to a coefficient vector, producing `parts` component vectors.
pub(crate) fn route_split<T, F>(
    routes: &[Route],
    coeffs: &[T],
    parts: usize,
    zero: impl Fn() -> T,
    scale: F,
) -> Vec<Vec<T>>
where
    F: Fn(&T, Complex) -> T,
{
    let len = coeffs.len() >> if parts == 2 { 1 } else { 2 };
    let mut out: Vec<Vec<T>> = (0..parts).map(|_| (0..len).map(|_| zero()).collect()).collect();
    for (route, c) in routes.iter().zip(coeffs) {
        out[route.component][route.target as usize] = scale(c, route.factor);
    }
    out
}

/// Inverse of [`route_split`].
pub(crate) fn route_join<T, F>(routes: &[Route], parts: &[Vec<T>], scale: F) -> Vec<T>
where
    F: Fn(&T, Complex) -> T,
{
    routes
        .iter()
        .map(|r| scale(&parts[r.component][r.target as usize], 1.0 / r.factor))
        .collect()
}

fn require_even_split(sig: &AlgebraSignature, extra: usize) -> Result<usize> {
    sig.require_standard()?;
    if sig.n() < extra || !(sig.n() - extra).is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "an element of C_(n+{extra}) with n even; got {} generators",
            sig.n()
        )));
    }
    Ok(sig.n() - extra)
}

fn scale_c(c: &Complex, f: Complex) -> Complex {
    c * f
}

/// `a = a0 + a1 e_[n+1]` with `a0`, `a1` in `C_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoscalarSplit {
    pub a0: Multivector,
    pub a1: Multivector,
    /// `e_[n+1]^2`.
    pub r: Complex,
    pub sqrt_r: Complex,
}

impl PseudoscalarSplit {
    /// Generator count of the component algebra `C_n`.
    pub fn n(&self) -> usize {
        self.a0.n()
    }

    fn whole(&self) -> AlgebraSignature {
        AlgebraSignature::standard(self.n() + 1).expect("n within range")
    }

    pub fn recompose(&self) -> Multivector {
        let whole = self.whole();
        let routes = pseudoscalar_routes(self.n());
        let parts = vec![self.a0.coeffs().to_vec(), self.a1.coeffs().to_vec()];
        let coeffs = route_join(&routes, &parts, scale_c);
        Multivector::from_coeffs(&whole, coeffs).expect("finite coefficients")
    }

    /// `a0 - a1 e_[n+1]`.
    pub fn bar(&self) -> Multivector {
        PseudoscalarSplit {
            a1: -&self.a1,
            ..self.clone()
        }
        .recompose()
    }
}

/// Split an element of `C_{n+1}` (`n` even) along its central pseudoscalar.
pub fn split_pseudoscalar(a: &Multivector) -> Result<PseudoscalarSplit> {
    let n = require_even_split(a.signature(), 1)?;
    let part_sig = AlgebraSignature::standard(n)?;
    let routes = pseudoscalar_routes(n);
    let mut parts = route_split(&routes, a.coeffs(), 2, || Complex::new(0.0, 0.0), scale_c).into_iter();
    let a0 = Multivector::from_coeffs(&part_sig, parts.next().unwrap())?;
    let a1 = Multivector::from_coeffs(&part_sig, parts.next().unwrap())?;
    let r = step_square(n);
    Ok(PseudoscalarSplit {
        a0,
        a1,
        r,
        sqrt_r: principal_sqrt(r),
    })
}

/// `a0 + a1 e_[n+1]`.
pub fn recompose_pseudoscalar(split: &PseudoscalarSplit) -> Multivector {
    split.recompose()
}

/// The conjugate `a0 - a1 e_[n+1]`.
pub fn bar_conjugate(split: &PseudoscalarSplit) -> Multivector {
    split.bar()
}

/// `a = a0 + a1 u + a2 v + a3 mu` with every component in `C_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStepSplit {
    pub a0: Multivector,
    pub a1: Multivector,
    pub a2: Multivector,
    pub a3: Multivector,
    /// `u^2 = v^2`.
    pub r: Complex,
    pub sqrt_r: Complex,
}

impl TwoStepSplit {
    pub fn n(&self) -> usize {
        self.a0.n()
    }

    pub fn components(&self) -> [&Multivector; 4] {
        [&self.a0, &self.a1, &self.a2, &self.a3]
    }

    pub fn recompose(&self) -> Multivector {
        let whole = AlgebraSignature::standard(self.n() + 2).expect("n within range");
        let routes = two_step_routes(self.n());
        let parts: Vec<Vec<Complex>> = self.components().iter().map(|m| m.coeffs().to_vec()).collect();
        Multivector::from_coeffs(&whole, route_join(&routes, &parts, scale_c)).expect("finite coefficients")
    }
}

/// Split an element of `C_{n+2}` (`n` even) over `C_n`.
pub fn split_two_step(a: &Multivector) -> Result<TwoStepSplit> {
    let n = require_even_split(a.signature(), 2)?;
    let part_sig = AlgebraSignature::standard(n)?;
    let routes = two_step_routes(n);
    let parts = route_split(&routes, a.coeffs(), 4, || Complex::new(0.0, 0.0), scale_c);
    let mut it = parts.into_iter().map(|p| Multivector::from_coeffs(&part_sig, p));
    let r = step_square(n);
    Ok(TwoStepSplit {
        a0: it.next().unwrap()?,
        a1: it.next().unwrap()?,
        a2: it.next().unwrap()?,
        a3: it.next().unwrap()?,
        r,
        sqrt_r: principal_sqrt(r),
    })
}

pub fn recompose_two_step(split: &TwoStepSplit) -> Multivector {
    split.recompose()
}

/// The auxiliary elements `(u, v, mu)` of the even step, as elements of `C_{n+2}`.
pub fn two_step_elements(n: usize) -> Result<(Multivector, Multivector, Multivector)> {
    if !n.is_multiple_of(2) {
        return Err(Error::Parity("even n".into()));
    }
    let big = AlgebraSignature::standard(n + 2)?;
    let [u, v, mu] = two_step_generators(n).map(|(m, c)| Multivector::blade(&big, BladeIndex(m), c));
    Ok((u, v, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sig(n: usize) -> AlgebraSignature {
        AlgebraSignature::standard(n).unwrap()
    }

    #[test]
    fn sqrt_ignores_sign_of_zero() {
        assert_eq!(principal_sqrt(c(-4.0, -0.0)), c(0.0, 2.0));
        assert_eq!(principal_sqrt(c(-1.0, -0.0)), c(0.0, 1.0));
        assert_eq!(principal_sqrt(c(9.0, -0.0)), c(3.0, 0.0));
    }

    fn blade(n: usize, gens: &[usize]) -> Multivector {
        Multivector::basis(&sig(n), BladeIndex::from_generators(gens))
    }

    #[test]
    fn pseudoscalar_split_examples() {
        let s = split_pseudoscalar(&blade(3, &[1, 2, 3])).unwrap();
        assert!(s.a0.is_zero());
        assert_eq!(s.a1, Multivector::one(&sig(2)));
        assert_eq!(s.r, c(1.0, 0.0));
        assert_eq!(s.sqrt_r, c(1.0, 0.0));

        let s = split_pseudoscalar(&blade(3, &[3])).unwrap();
        assert!(s.a0.is_zero());
        assert_eq!(s.a1, -&blade(2, &[1, 2]));

        let a = &Multivector::one(&sig(3)) + &blade(3, &[1]);
        let s = split_pseudoscalar(&a).unwrap();
        assert_eq!(s.a0, &Multivector::one(&sig(2)) + &blade(2, &[1]));
        assert!(s.a1.is_zero());
    }

    #[test]
    fn bar_examples() {
        let e123 = blade(3, &[1, 2, 3]);
        assert_eq!(bar_conjugate(&split_pseudoscalar(&e123).unwrap()), -&e123);
        let one = Multivector::one(&sig(3));
        assert_eq!(bar_conjugate(&split_pseudoscalar(&one).unwrap()), one);
        // C_1: a = i + 2e, abar = i - 2e
        let a = Multivector::from_terms(&sig(1), [(BladeIndex(0), c(0.0, 1.0)), (BladeIndex(1), c(2.0, 0.0))]).unwrap();
        let abar = bar_conjugate(&split_pseudoscalar(&a).unwrap());
        assert_eq!(
            abar,
            Multivector::from_terms(&sig(1), [(BladeIndex(0), c(0.0, 1.0)), (BladeIndex(1), c(-2.0, 0.0))]).unwrap()
        );
        let s = split_pseudoscalar(&abar).unwrap();
        assert_eq!(bar_conjugate(&s), a);
    }

    #[test]
    fn two_step_base_case_reads_coefficients() {
        let a = Multivector::from_terms(
            &sig(2),
            [
                (BladeIndex(0), c(1.0, 0.5)),
                (BladeIndex(1), c(2.0, 0.0)),
                (BladeIndex(2), c(3.0, -1.0)),
                (BladeIndex(3), c(4.0, 0.0)),
            ],
        )
        .unwrap();
        let s = split_two_step(&a).unwrap();
        assert_eq!(s.r, c(-1.0, 0.0));
        let vals: Vec<Complex> = s.components().iter().map(|m| m.scalar_part()).collect();
        assert_eq!(vals, vec![c(1.0, 0.5), c(2.0, 0.0), c(3.0, -1.0), c(4.0, 0.0)]);
        let (u, v, mu) = two_step_elements(0).unwrap();
        assert_eq!(u, blade(2, &[1]));
        assert_eq!(v, blade(2, &[2]));
        assert_eq!(mu, blade(2, &[1, 2]));
    }

    #[test]
    fn two_step_n2_examples() {
        let s = split_two_step(&blade(4, &[1, 2, 3])).unwrap();
        assert_eq!(s.r, c(1.0, 0.0));
        assert_eq!(s.a1, Multivector::one(&sig(2)));
        assert!(s.a0.is_zero() && s.a2.is_zero() && s.a3.is_zero());

        let s = split_two_step(&blade(4, &[4])).unwrap();
        assert_eq!(s.a2, -&blade(2, &[1, 2]));
        assert!(s.a0.is_zero() && s.a1.is_zero() && s.a3.is_zero());

        // mu = e_123 e_124 = e_43 = -e_34
        let (_, _, mu) = two_step_elements(2).unwrap();
        assert_eq!(mu, -&blade(4, &[3, 4]));
    }

    #[test]
    fn round_trips_over_basis() {
        for b in 0..16u32 {
            let a = Multivector::basis(&sig(4), BladeIndex(b));
            assert_eq!(split_two_step(&a).unwrap().recompose(), a);
        }
        for b in 0..8u32 {
            let a = Multivector::basis(&sig(3), BladeIndex(b));
            assert_eq!(split_pseudoscalar(&a).unwrap().recompose(), a);
        }
        let z = Multivector::zero(&sig(4));
        let s = split_two_step(&z).unwrap();
        assert!(s.components().iter().all(|m| m.is_zero()));
        assert_eq!(s.recompose(), z);
    }

    #[test]
    fn recomposition_matches_products() {
        // a0 + a1 e_[n+1] evaluated with the geometric product
        let a = Multivector::from_coeffs(&sig(3), (0..8).map(|k| c(k as f64, 1.0 - k as f64)).collect()).unwrap();
        let s = split_pseudoscalar(&a).unwrap();
        let e = Multivector::volume_element(&sig(3)).unwrap();
        let rebuilt = &s.a0.embed(&sig(3)).unwrap() + &(&s.a1.embed(&sig(3)).unwrap() * &e);
        assert_eq!(rebuilt, a);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            split_pseudoscalar(&Multivector::one(&sig(2))),
            Err(Error::Parity(_))
        ));
        assert!(matches!(
            split_two_step(&Multivector::one(&sig(3))),
            Err(Error::Parity(_))
        ));
        let odd = AlgebraSignature::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(
            split_pseudoscalar(&Multivector::one(&odd)).unwrap_err(),
            Error::NonstandardSignature
        );
    }
}
