//! The universal matrices for one to four generators, written out entry by
//! entry from their closed forms rather than from the recursion.

use cliffrep::{AlgebraSignature, BladeIndex, CliffordMatrix, Complex, Multivector, Side};

fn sig(n: usize) -> AlgebraSignature {
    AlgebraSignature::standard(n).unwrap()
}

/// Element from `(mask, re, im)` terms.
pub fn mv(sig: &AlgebraSignature, terms: &[(u32, f64, f64)]) -> Multivector {
    Multivector::from_terms(
        sig,
        terms.iter().map(|&(b, re, im)| (BladeIndex(b), Complex::new(re, im))),
    )
    .unwrap()
}

fn half(sig: &AlgebraSignature, rows: [[Multivector; 2]; 2]) -> CliffordMatrix {
    let [[a, b], [c, d]] = rows;
    CliffordMatrix::from_rows(sig, vec![vec![a, b], vec![c, d]])
        .unwrap()
        .scale(Complex::new(0.5, 0.0))
}

/// `P_1 = 1/2 [[1 - ie, -(i - e)], [-(i - e), 1 - ie]]` and its inverse.
pub fn p1() -> (CliffordMatrix, CliffordMatrix) {
    let s = sig(1);
    let x = mv(&s, &[(0, 1.0, 0.0), (1, 0.0, -1.0)]);
    let y = mv(&s, &[(0, 0.0, 1.0), (1, -1.0, 0.0)]);
    let neg_y = mv(&s, &[(0, 0.0, -1.0), (1, 1.0, 0.0)]);
    let p = half(&s, [[x.clone(), neg_y.clone()], [neg_y, x.clone()]]);
    let p_inv = half(&s, [[x.clone(), y.clone()], [y, x]]);
    (p, p_inv)
}

/// `P_2 = P_2^{-1} = 1/2 [[1 - ie1, e2 + ie12], [-e2 + ie12, 1 + ie1]]`.
pub fn p2_over(s: &AlgebraSignature) -> CliffordMatrix {
    half(
        s,
        [
            [
                mv(s, &[(0, 1.0, 0.0), (1, 0.0, -1.0)]),
                mv(s, &[(2, 1.0, 0.0), (3, 0.0, 1.0)]),
            ],
            [
                mv(s, &[(2, -1.0, 0.0), (3, 0.0, 1.0)]),
                mv(s, &[(0, 1.0, 0.0), (1, 0.0, 1.0)]),
            ],
        ],
    )
}

pub fn p2() -> CliffordMatrix {
    p2_over(&sig(2))
}

fn blocks(s: &AlgebraSignature, left: [&Multivector; 4], right: Option<[&Multivector; 4]>) -> CliffordMatrix {
    let p2 = p2_over(s);
    let b: Vec<CliffordMatrix> = match right {
        None => left.iter().map(|x| p2.scale_by(x, Side::Left).unwrap()).collect(),
        Some(r) => r.iter().map(|x| p2.scale_by(x, Side::Right).unwrap()).collect(),
    };
    CliffordMatrix::from_blocks(&[vec![&b[0], &b[1]], vec![&b[2], &b[3]]])
        .unwrap()
        .scale(Complex::new(0.5, 0.0))
}

/// `P_3 = 1/2 [[(1 + e123) P2, -(1 - e123) P2], [(1 - e123) P2, (1 + e123) P2]]`,
/// `P_3^{-1} = 1/2 [[P2 (1 + e123), P2 (1 - e123)], [-P2 (1 - e123), P2 (1 + e123)]]`.
pub fn p3() -> (CliffordMatrix, CliffordMatrix) {
    let s = sig(3);
    let plus = mv(&s, &[(0, 1.0, 0.0), (0b111, 1.0, 0.0)]);
    let minus = mv(&s, &[(0, 1.0, 0.0), (0b111, -1.0, 0.0)]);
    let neg_minus = mv(&s, &[(0, -1.0, 0.0), (0b111, 1.0, 0.0)]);
    let p = blocks(&s, [&plus, &neg_minus, &minus, &plus], None);
    let p_inv = blocks(&s, [&plus; 4], Some([&plus, &minus, &neg_minus, &plus]));
    (p, p_inv)
}

/// `P_4 = P_4^{-1} = 1/2 [[(1 + e123) P2, (e124 - e43) P2], [(e124 + e43) P2, (1 - e123) P2]]`
/// with `e43 = -e34`.
pub fn p4() -> CliffordMatrix {
    let s = sig(4);
    let a = mv(&s, &[(0, 1.0, 0.0), (0b0111, 1.0, 0.0)]);
    let b = mv(&s, &[(0b1011, 1.0, 0.0), (0b1100, 1.0, 0.0)]);
    let c = mv(&s, &[(0b1011, 1.0, 0.0), (0b1100, -1.0, 0.0)]);
    let d = mv(&s, &[(0, 1.0, 0.0), (0b0111, -1.0, 0.0)]);
    blocks(&s, [&a, &b, &c, &d], None)
}
