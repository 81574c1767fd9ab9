//! Generator signatures and blade indexing.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::Complex;

/// Largest supported generator count. Multivectors store `2^n` coefficients.
pub const MAX_GENERATORS: usize = 16;

/// Generator count plus the (nonzero, complex) square of every generator.
///
/// Cloning is cheap: the squares live behind an `Arc` and are never mutated.
#[derive(Clone)]
pub struct AlgebraSignature(Arc<Inner>);

struct Inner {
    squares: Vec<Complex>,
    metric: Metric,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Metric {
    /// Every square is real `±1`; bit `i` of the mask marks `u_i = -1`.
    Signs {
        neg_mask: u32,
    },
    General,
}

impl AlgebraSignature {
    /// The complex Clifford algebra `C_n`: every generator squares to `-1`.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(vec![Complex::new(-1.0, 0.0); n])
    }

    /// Signature with arbitrary nonzero generator squares.
    pub fn new(squares: Vec<Complex>) -> Result<Self> {
        if squares.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                n: squares.len(),
                max: MAX_GENERATORS,
            });
        }
        let mut neg_mask = 0u32;
        let mut signs_only = true;
        for (i, u) in squares.iter().enumerate() {
            if !(u.re.is_finite() && u.im.is_finite()) {
                return Err(Error::NonFinite(format!("square of generator {}", i + 1)));
            }
            if *u == Complex::new(0.0, 0.0) {
                return Err(Error::ZeroSquare { index: i + 1 });
            }
            if *u == Complex::new(-1.0, 0.0) {
                neg_mask |= 1 << i;
            } else if *u != Complex::new(1.0, 0.0) {
                signs_only = false;
            }
        }
        let metric = if signs_only {
            Metric::Signs { neg_mask }
        } else {
            Metric::General
        };
        Ok(AlgebraSignature(Arc::new(Inner { squares, metric })))
    }

    pub fn n(&self) -> usize {
        self.0.squares.len()
    }

    /// Number of basis blades, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn squares(&self) -> &[Complex] {
        &self.0.squares
    }

    /// Square of generator `e_i` (1-based).
    pub fn square(&self, i: usize) -> Complex {
        self.0.squares[i - 1]
    }

    pub fn is_standard(&self) -> bool {
        let n = self.n();
        let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
        self.0.metric == Metric::Signs { neg_mask: full }
    }

    pub fn full_mask(&self) -> BladeIndex {
        BladeIndex((1u32 << self.n()) - 1)
    }

    pub fn contains(&self, blade: BladeIndex) -> bool {
        (blade.0 as usize) < self.dim()
    }

    pub fn check_blade(&self, blade: BladeIndex) -> Result<()> {
        if self.contains(blade) {
            Ok(())
        } else {
            Err(Error::BladeOutOfRange {
                mask: blade.0,
                n: self.n(),
            })
        }
    }

    pub(crate) fn require_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::NonstandardSignature)
        }
    }

    /// Product of the squares of every generator shared by two blades,
    /// folded together with the reordering sign.
    #[inline]
    pub(crate) fn product_factor(&self, a: u32, b: u32) -> Complex {
        match self.0.metric {
            Metric::Signs { neg_mask } => {
                let odd = (reorder_parity(a, b) + (a & b & neg_mask).count_ones()) & 1;
                if odd == 1 {
                    Complex::new(-1.0, 0.0)
                } else {
                    Complex::new(1.0, 0.0)
                }
            }
            Metric::General => {
                let mut f = if reorder_parity(a, b) & 1 == 1 {
                    Complex::new(-1.0, 0.0)
                } else {
                    Complex::new(1.0, 0.0)
                };
                let mut common = a & b;
                while common != 0 {
                    let i = common.trailing_zeros() as usize;
                    f *= self.0.squares[i];
                    common &= common - 1;
                }
                f
            }
        }
    }

    /// Sign-only fast path: `Some(odd)` when every square is `±1`.
    #[inline]
    pub(crate) fn sign_parity(&self, a: u32, b: u32) -> Option<bool> {
        match self.0.metric {
            Metric::Signs { neg_mask } => Some((reorder_parity(a, b) + (a & b & neg_mask).count_ones()) & 1 == 1),
            Metric::General => None,
        }
    }
}

impl PartialEq for AlgebraSignature {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.squares == other.0.squares
    }
}

impl fmt::Debug for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_standard() {
            write!(f, "C_{}", self.n())
        } else {
            f.debug_struct("AlgebraSignature")
                .field("squares", &self.0.squares)
                .finish()
        }
    }
}

/// Bitmask naming a basis blade: bit `i` set means `e_{i+1}` is a factor.
/// Mask 0 is the identity blade.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BladeIndex(pub u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    /// The single generator `e_i`, 1-based.
    pub fn e(i: usize) -> Self {
        assert!((1..=MAX_GENERATORS).contains(&i), "generator index {i} out of range");
        BladeIndex(1 << (i - 1))
    }

    /// Blade from 1-based generator indices. Order and repetition are
    /// ignored; the canonical increasing order is implied.
    pub fn from_generators(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(BladeIndex(0), |acc, &i| BladeIndex(acc.0 | BladeIndex::e(i).0))
    }

    /// The volume element `e_1 e_2 ... e_k`.
    pub fn volume(k: usize) -> Self {
        BladeIndex(((1u64 << k) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_scalar(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    /// 1-based generator indices in increasing order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    /// Canonical name: `1` for the identity, `e12` style when every index is a
    /// single digit, and `e{1,12}` otherwise.
    pub fn name(self) -> String {
        if self.is_scalar() {
            return "1".to_string();
        }
        let gens: Vec<usize> = self.generators().collect();
        if gens.iter().all(|&g| g <= 9) {
            let digits: String = gens.iter().map(|g| char::from(b'0' + *g as u8)).collect();
            format!("e{digits}")
        } else {
            let list: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            format!("e{{{}}}", list.join(","))
        }
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parity (as a count) of the transpositions needed to bring `e_A e_B` into
/// canonical order: the number of pairs `i in A`, `j in B` with `i > j`.
#[inline]
pub fn reorder_parity(a: u32, b: u32) -> u32 {
    let mut a = a >> 1;
    let mut count = 0;
    while a != 0 {
        count += (a & b).count_ones();
        a >>= 1;
    }
    count
}

/// Geometric product of two basis blades: `e_A e_B = s e_{A xor B}`.
pub fn blade_product(sig: &AlgebraSignature, a: BladeIndex, b: BladeIndex) -> (BladeIndex, Complex) {
    debug_assert!(sig.contains(a) && sig.contains(b));
    (BladeIndex(a.0 ^ b.0), sig.product_factor(a.0, b.0))
}
