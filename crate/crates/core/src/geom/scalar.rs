use core::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Scalars for representation matrices. Arithmetic is checked so fixed-width
/// types can report overflow and the caller can retry with [`BigInt`].
pub trait Ring: Clone + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

/// `a + b√2 + c√3 + d√6` with coefficients in `C`.
///
/// With integer coefficients this is the ring ℤ[√2, √3], which contains every
/// entry of the doubled bilinear form `2B` for labels 2, 3, 4, 6 and ∞, and
/// hence every entry of the generator matrices and their products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad<C> {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl<C: Ring> Quad<C> {
    pub fn new(a: C, b: C, c: C, d: C) -> Self {
        Quad { a, b, c, d }
    }

    pub fn integer(v: i64) -> Self {
        Quad::new(C::from_i64(v), C::zero(), C::zero(), C::zero())
    }

    pub fn sqrt2(coeff: i64) -> Self {
        Quad::new(C::zero(), C::from_i64(coeff), C::zero(), C::zero())
    }

    pub fn sqrt3(coeff: i64) -> Self {
        Quad::new(C::zero(), C::zero(), C::from_i64(coeff), C::zero())
    }
}

impl Quad<i128> {
    pub fn to_big(&self) -> Quad<BigInt> {
        Quad::new(self.a.into(), self.b.into(), self.c.into(), self.d.into())
    }

    pub fn to_f64(&self) -> f64 {
        self.a as f64
            + self.b as f64 * core::f64::consts::SQRT_2
            + self.c as f64 * libm::sqrt(3.0)
            + self.d as f64 * libm::sqrt(6.0)
    }
}

/// `Σ k·x·y` over the given terms, checked.
fn combine<C: Ring>(terms: &[(i64, &C, &C)]) -> Option<C> {
    let mut acc = C::zero();
    for &(k, x, y) in terms {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let mut t = x.checked_mul(y)?;
        if k != 1 {
            t = t.checked_mul(&C::from_i64(k))?;
        }
        acc = acc.checked_add(&t)?;
    }
    Some(acc)
}

impl<C: Ring> Ring for Quad<C> {
    fn zero() -> Self {
        Quad::integer(0)
    }
    fn one() -> Self {
        Quad::integer(1)
    }
    fn from_i64(v: i64) -> Self {
        Quad::integer(v)
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(Quad::new(
            self.a.checked_add(&o.a)?,
            self.b.checked_add(&o.b)?,
            self.c.checked_add(&o.c)?,
            self.d.checked_add(&o.d)?,
        ))
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        Some(Quad::new(
            combine(&[(1, a, e), (2, b, f), (3, c, g), (6, d, h)])?,
            combine(&[(1, a, f), (1, b, e), (3, c, h), (3, d, g)])?,
            combine(&[(1, a, g), (1, c, e), (2, b, h), (2, d, f)])?,
            combine(&[(1, a, h), (1, d, e), (1, b, g), (1, c, f)])?,
        ))
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(Quad::new(
            self.a.checked_neg()?,
            self.b.checked_neg()?,
            self.c.checked_neg()?,
            self.d.checked_neg()?,
        ))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

/// Marker for scalars with exact equality, usable as hash keys.
pub trait ExactRing: Ring + Eq + Hash {}

impl ExactRing for Quad<i128> {}
impl ExactRing for Quad<BigInt> {}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quad<i128>;

    #[test]
    fn square_roots_square_correctly() {
        let r2 = Q::sqrt2(1);
        let r3 = Q::sqrt3(1);
        assert_eq!(r2.checked_mul(&r2).unwrap(), Q::integer(2));
        assert_eq!(r3.checked_mul(&r3).unwrap(), Q::integer(3));
        let r6 = r2.checked_mul(&r3).unwrap();
        assert_eq!(r6, Q::new(0, 0, 0, 1));
        assert_eq!(r6.checked_mul(&r6).unwrap(), Q::integer(6));
        assert_eq!(r6.checked_mul(&r2).unwrap(), Q::sqrt3(2));
        assert_eq!(r6.checked_mul(&r3).unwrap(), Q::sqrt2(3));
    }

    #[test]
    fn multiplication_matches_floats() {
        let x = Q::new(3, -2, 5, 1);
        let y = Q::new(-1, 4, 2, -3);
        let p = x.checked_mul(&y).unwrap();
        assert!((p.to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Q::integer(i64::MAX).checked_mul(&Q::integer(i64::MAX)).unwrap();
        assert!(big.checked_mul(&big).is_none());
        let bigint = big.to_big();
        assert!(bigint.checked_mul(&bigint).is_some());
    }
}
