//! Coefficient types for exact elimination.
//!
//! Floating point types are deliberately absent: ranks of boundary matrices
//! must be exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Bit length beyond which integer elimination gives up.
pub const MAX_INTEGER_BITS: u64 = 4096;

/// A coefficient ring usable by the sparse eliminator.
pub trait EliminationScalar: Zero + One + Clone + PartialEq + fmt::Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;

    fn is_unit(&self) -> bool;

    /// Inverse of a unit. Unspecified for non-units.
    fn unit_inverse(&self) -> Self;

    /// `self * other`, or `None` if the result is not representable.
    fn mul_bounded(&self, other: &Self) -> Option<Self>;

    /// `self - f * b`, or `None` if the result is not representable.
    fn sub_mul(&self, f: &Self, b: &Self) -> Option<Self>;

    /// Integer value, for rings embedded in `Z`. Fields return `None`.
    fn to_bigint(&self) -> Option<BigInt>;
}

/// The prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> EliminationScalar for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_unit(&self) -> bool {
        self.0 != 0
    }
    fn unit_inverse(&self) -> Self {
        // Fermat; P is prime
        self.pow(P - 2)
    }
    fn mul_bounded(&self, other: &Self) -> Option<Self> {
        Some(*self * *other)
    }
    fn sub_mul(&self, f: &Self, b: &Self) -> Option<Self> {
        Some(*self - *f * *b)
    }
    fn to_bigint(&self) -> Option<BigInt> {
        None
    }
}

impl EliminationScalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn unit_inverse(&self) -> Self {
        *self
    }
    fn mul_bounded(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn sub_mul(&self, f: &Self, b: &Self) -> Option<Self> {
        i64::checked_mul(*f, *b).and_then(|p| self.checked_sub(p))
    }
    fn to_bigint(&self) -> Option<BigInt> {
        Some(BigInt::from(*self))
    }
}

fn within_bound(v: &BigInt) -> bool {
    v.bits() <= MAX_INTEGER_BITS
}

impl EliminationScalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn unit_inverse(&self) -> Self {
        self.clone()
    }
    fn mul_bounded(&self, other: &Self) -> Option<Self> {
        Some(self * other).filter(within_bound)
    }
    fn sub_mul(&self, f: &Self, b: &Self) -> Option<Self> {
        Some(self - f * b).filter(within_bound)
    }
    fn to_bigint(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl EliminationScalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
    fn unit_inverse(&self) -> Self {
        self.recip()
    }
    fn mul_bounded(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub_mul(&self, f: &Self, b: &Self) -> Option<Self> {
        Some(self - f * b)
    }
    fn to_bigint(&self) -> Option<BigInt> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        type F5 = Fp<5>;
        for v in 1..5 {
            let x = F5::new(v);
            assert_eq!(x * x.unit_inverse(), F5::one());
        }
        assert_eq!(F5::new(-1).value(), 4);
        assert_eq!(
            F5::new(3).sub_mul(&F5::new(2), &F5::new(4)),
            Some(F5::new(0))
        );
        assert!(!F5::zero().is_unit());
        assert_eq!(Fp::<2>::new(1).unit_inverse(), Fp::<2>::one());
    }

    #[test]
    fn integer_overflow_is_reported() {
        assert_eq!(i64::MAX.sub_mul(&-1, &1), None);
        assert_eq!(5i64.sub_mul(&2, &3), Some(-1));
        let huge = BigInt::one() << 4095usize;
        assert!(huge.mul_bounded(&BigInt::from(4)).is_none());
        assert!(BigInt::from(-1).is_unit());
        assert!(!BigInt::from(2).is_unit());
    }
}
