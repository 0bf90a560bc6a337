use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CycError;

/// An element of `Z[ζ]` with `ζ = exp(2πi/12)`, stored in the power basis
/// `1, ζ, ζ², ζ³`.
///
/// The minimal polynomial of `ζ` is `x⁴ − x² + 1`, so every product is
/// reduced with `ζ⁴ = ζ² − 1`. The representation is therefore unique and
/// derived `Eq`/`Hash` agree with equality in the ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CyclotomicElement {
    coeffs: [BigInt; 4],
}

impl CyclotomicElement {
    pub fn new<T: Into<BigInt>>(c0: T, c1: T, c2: T, c3: T) -> Self {
        CyclotomicElement {
            coeffs: [c0.into(), c1.into(), c2.into(), c3.into()],
        }
    }

    pub fn from_coeffs(coeffs: [BigInt; 4]) -> Self {
        CyclotomicElement { coeffs }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Self::new(n.into(), BigInt::zero(), BigInt::zero(), BigInt::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The primitive 12th root of unity `ζ`.
    pub fn zeta() -> Self {
        Self::new(0, 1, 0, 0)
    }

    /// `2ζ − ζ³`, the positive square root of 3.
    pub fn sqrt3() -> Self {
        Self::new(0, 2, 0, -1)
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the integer value if the element lies in `Z`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= k;
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Complex conjugation, the ring automorphism `ζ ↦ ζ⁻¹ = ζ − ζ³`.
    ///
    /// In coordinates: `ζ² ↦ 1 − ζ²` and `ζ³ ↦ −ζ³`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.coeffs;
        CyclotomicElement {
            coeffs: [c0 + c2, c1.clone(), -c2, -(c1 + c3)],
        }
    }

    /// The Galois automorphism `ζ ↦ ζᵏ` for `k` coprime to 12.
    pub fn galois(&self, k: u32) -> Self {
        debug_assert!(matches!(k % 12, 1 | 5 | 7 | 11));
        let image = Self::zeta().pow(k % 12);
        let mut power = Self::one();
        let mut acc = Self::zero();
        for c in &self.coeffs {
            acc = &acc + &power.scale(c);
            power = &power * &image;
        }
        acc
    }

    /// Field norm down to `Q`: the product of the four Galois conjugates.
    pub fn norm(&self) -> BigInt {
        let product = self * &self.norm_cofactor();
        product
            .as_integer()
            .cloned()
            .expect("norm of an algebraic integer is a rational integer")
    }

    // σ₅(x)·σ₇(x)·σ₁₁(x), so that x times this is the norm.
    fn norm_cofactor(&self) -> Self {
        &(&self.galois(5) * &self.galois(7)) * &self.galois(11)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    pub fn inverse(&self) -> Result<Self, CycError> {
        let norm = self.norm();
        if !norm.abs().is_one() {
            return Err(CycError::NotAUnit {
                element: self.to_string(),
                norm,
            });
        }
        Ok(self.norm_cofactor().scale(&norm))
    }
}

fn reduce(mut p: [BigInt; 7]) -> [BigInt; 4] {
    // ζ^i = ζ^(i-2) − ζ^(i-4) for i ≥ 4
    for i in (4..7).rev() {
        let top = std::mem::take(&mut p[i]);
        p[i - 2] += &top;
        p[i - 4] -= &top;
    }
    let [c0, c1, c2, c3, ..] = p;
    [c0, c1, c2, c3]
}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: Self) -> CyclotomicElement {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        out
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: Self) -> CyclotomicElement {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        out
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            coeffs: self.coeffs.clone().map(|c| -c),
        }
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: Self) -> CyclotomicElement {
        let mut p: [BigInt; 7] = Default::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                p[i + j] += a * b;
            }
        }
        CyclotomicElement { coeffs: reduce(p) }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CyclotomicElement {
            type Output = CyclotomicElement;
            fn $m(self, rhs: Self) -> CyclotomicElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        -&self
    }
}

impl From<i64> for CyclotomicElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Renders as a polynomial in `z`, e.g. `-z^3 - z^2 + z + 1`.
impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for deg in (0..4).rev() {
            let c = &self.coeffs[deg];
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = (c.is_negative(), c.abs());
            match (first, sign) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match deg {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "z")?,
                1 => write!(f, "{mag}z")?,
                _ if unit => write!(f, "z^{deg}")?,
                _ => write!(f, "{mag}z^{deg}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CyclotomicElement {
        CyclotomicElement::zeta()
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = CyclotomicElement::sqrt3();
        assert_eq!(&s * &s, CyclotomicElement::from_int(3));
    }

    #[test]
    fn multiplicative_identity() {
        let x = CyclotomicElement::new(3, -7, 11, 2);
        assert_eq!(&CyclotomicElement::one() * &x, x);
    }

    #[test]
    fn zeta_inverse_by_expansion() {
        // ζ(ζ − ζ³) = ζ² − ζ⁴ = ζ² − (ζ² − 1) = 1
        let inv = CyclotomicElement::new(0, 1, 0, -1);
        assert!((&z() * &inv).is_one());
        assert_eq!(z().inverse().unwrap(), inv);
    }

    #[test]
    fn zeta_has_order_twelve() {
        for k in 1..12 {
            assert!(!z().pow(k).is_one(), "ζ^{k} should not be 1");
        }
        assert!(z().pow(12).is_one());
        assert_eq!(z().pow(6), CyclotomicElement::from_int(-1));
    }

    #[test]
    fn conjugation_fixes_integers_and_is_involutive() {
        let five = CyclotomicElement::from_int(5);
        assert_eq!(five.conj(), five);
        assert_eq!(z().conj().conj(), z());
        assert_eq!(z().conj(), CyclotomicElement::new(0, 1, 0, -1));
    }

    #[test]
    fn conjugate_of_sqrt3_is_a_square_root_of_three() {
        let c = CyclotomicElement::sqrt3().conj();
        assert_eq!(&c * &c, CyclotomicElement::from_int(3));
        assert_eq!(c, CyclotomicElement::sqrt3());
    }

    #[test]
    fn conjugation_agrees_with_galois_eleven() {
        let x = CyclotomicElement::new(4, -1, 9, 3);
        assert_eq!(x.conj(), x.galois(11));
    }

    #[test]
    fn norms() {
        assert_eq!(CyclotomicElement::from_int(2).norm(), BigInt::from(16));
        assert_eq!(z().norm(), BigInt::from(1));
        // N(√3) = 3·3
        assert_eq!(CyclotomicElement::sqrt3().norm(), BigInt::from(9));
        // 1 − ζ has norm Φ₁₂(1) = 1, so it is a unit
        let one_minus_zeta = CyclotomicElement::new(1, -1, 0, 0);
        assert!(one_minus_zeta.is_unit());
        let inv = one_minus_zeta.inverse().unwrap();
        assert!((&inv * &one_minus_zeta).is_one());
    }

    #[test]
    fn two_is_not_a_unit() {
        let err = CyclotomicElement::from_int(2).inverse().unwrap_err();
        assert!(matches!(err, CycError::NotAUnit { .. }));
        assert!(CyclotomicElement::one().inverse().unwrap().is_one());
    }

    #[test]
    fn display() {
        assert_eq!(
            CyclotomicElement::new(1, 1, -1, -1).to_string(),
            "-z^3 - z^2 + z + 1"
        );
        assert_eq!(CyclotomicElement::sqrt3().to_string(), "-z^3 + 2z");
        assert_eq!(CyclotomicElement::zero().to_string(), "0");
    }
}
