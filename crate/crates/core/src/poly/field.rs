//! Coefficient fields: exact rationals and the two-element field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational numbers, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A coefficient domain used for fraction-free elimination: the integers
/// for the rationals, the field itself for the two-element field.
pub trait Integral: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Whether this is `1` or `-1`.
    fn is_unit(&self) -> bool;
    fn mul_ref(&self, o: &Self) -> Self;
    /// `a * x - c * y`.
    fn fused(a: &Self, x: &Self, c: &Self, y: &Self) -> Self;
    /// Nonnegative gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, o: &Self) -> Self;
    /// Exact quotient.
    fn div_exact(&self, d: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Integral for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn fused(a: &Self, x: &Self, c: &Self, y: &Self) -> Self {
        a * x - c * y
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// A coefficient field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// The scalar `c` such that dividing every coefficient by `c` yields the
    /// canonical representative of the line spanned by the coefficient
    /// vector. `coeffs[0]` must be the leading coefficient.
    ///
    /// Over the rationals the representative has coprime integer
    /// coefficients and a positive leading coefficient; over the two-element
    /// field it is monic.
    fn normalizer(coeffs: &[&Self]) -> Self;

    /// Exact division. Panics on a zero divisor.
    fn div(&self, other: &Self) -> Self {
        self.clone() * other.inv().expect("division by zero in a coefficient field")
    }

    /// Whether the printed form of this coefficient starts with a minus sign.
    fn is_negative(&self) -> bool {
        false
    }

    type Integral: Integral;

    /// Scales a coefficient vector into the integral domain: returns the
    /// scaled values and the scalar `m` with `values = m * coeffs`.
    fn clear_denominators(coeffs: &[&Self]) -> (Vec<Self::Integral>, Self);

    fn from_integral(c: &Self::Integral) -> Self;
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn normalizer(coeffs: &[&Self]) -> Self {
        let mut num_gcd = <BigInt as Zero>::zero();
        let mut den_lcm = <BigInt as One>::one();
        for c in coeffs {
            num_gcd = Integer::gcd(&num_gcd, c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if Zero::is_zero(&num_gcd) {
            return BigRational::one();
        }
        let content = BigRational::new(num_gcd, den_lcm);
        match coeffs.first() {
            Some(lead) if Signed::is_negative(*lead) => -content,
            _ => content,
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    type Integral = BigInt;

    fn clear_denominators(coeffs: &[&Self]) -> (Vec<BigInt>, Self) {
        let l = coeffs.iter().fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        (ints, BigRational::from_integer(l))
    }

    fn from_integral(c: &BigInt) -> Self {
        BigRational::from_integer(c.clone())
    }
}

/// Element of the two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);

    /// Reduction of an integer modulo two.
    pub fn from_int(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }

    /// The representative 0 or 1.
    pub fn as_u8(self) -> u8 {
        self.0 as u8
    }
}

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2::ONE
    }
}

impl Field for Gf2 {
    fn inv(&self) -> Option<Self> {
        if self.0 {
            Some(*self)
        } else {
            None
        }
    }

    fn from_i64(v: i64) -> Self {
        Gf2::from_int(v)
    }

    fn normalizer(coeffs: &[&Self]) -> Self {
        coeffs.first().map(|c| **c).filter(|c| c.0).unwrap_or(Gf2::ONE)
    }

    type Integral = Gf2;

    fn clear_denominators(coeffs: &[&Self]) -> (Vec<Gf2>, Self) {
        (coeffs.iter().map(|c| **c).collect(), Gf2::ONE)
    }

    fn from_integral(c: &Gf2) -> Self {
        *c
    }
}

impl Integral for Gf2 {
    fn zero() -> Self {
        Gf2::ZERO
    }
    fn one() -> Self {
        Gf2::ONE
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_unit(&self) -> bool {
        self.0
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Gf2(self.0 & o.0)
    }
    fn fused(a: &Self, x: &Self, c: &Self, y: &Self) -> Self {
        Gf2((a.0 & x.0) ^ (c.0 & y.0))
    }
    fn gcd(&self, o: &Self) -> Self {
        Gf2(self.0 || o.0)
    }
    fn div_exact(&self, _d: &Self) -> Self {
        *self
    }
    fn neg(&self) -> Self {
        *self
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Shorthand for `p / q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer value of a rational, if it has denominator one and fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.numer().clone()).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normalizer_gives_primitive_positive() {
        let cs = [ratio(-2, 3), ratio(4, 9), rat(2)];
        let refs: Vec<&Rational> = cs.iter().collect();
        let c = Rational::normalizer(&refs);
        let normed: Vec<Rational> = cs.iter().map(|x| x.div(&c)).collect();
        assert_eq!(normed, vec![rat(3), rat(-2), rat(-9)]);
    }

    #[test]
    fn gf2_arithmetic() {
        assert_eq!(Gf2::ONE + Gf2::ONE, Gf2::ZERO);
        assert_eq!(Gf2::from_int(-3), Gf2::ONE);
        assert_eq!(Gf2::from_int(18), Gf2::ZERO);
        assert_eq!(Gf2::ONE.inv(), Some(Gf2::ONE));
        assert_eq!(Gf2::ZERO.inv(), None);
    }
}
