//! Exact arithmetic in the quadratic field Q(√5).
//!
//! Every root system handled by this crate has coordinates in Q(√5): the
//! crystallographic ones over Q, and H3, H4 and I2(5) through the golden ratio
//! `k = (1 + √5) / 2`. Elements are kept in canonical form (both rational parts
//! reduced) so that structural equality is mathematical equality and hashing is
//! consistent.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An element `rat + surd·√5` of Q(√5).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    rat: Rational,
    surd: Rational,
}

impl FieldElement {
    pub fn new(rat: Rational, surd: Rational) -> Self {
        FieldElement { rat, surd }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        FieldElement::new(BigInt::from(n).into(), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        FieldElement::new(r, Rational::zero())
    }

    /// `num/den`, purely rational.
    pub fn frac(num: i64, den: i64) -> Self {
        FieldElement::from_rational(rational(num, den))
    }

    /// `(a_num/a_den) + (b_num/b_den)·√5`.
    pub fn from_parts(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        FieldElement::new(rational(a_num, a_den), rational(b_num, b_den))
    }

    pub fn sqrt5() -> Self {
        FieldElement::from_parts(0, 1, 1, 1)
    }

    /// The golden ratio `k = (√5 + 1) / 2`, a root of `k² = k + 1`.
    pub fn golden() -> Self {
        FieldElement::from_parts(1, 2, 1, 2)
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// Galois conjugate `rat − surd·√5`.
    pub fn conjugate(&self) -> Self {
        FieldElement::new(self.rat.clone(), -&self.surd)
    }

    /// Field norm `rat² − 5·surd²`; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from_integer(5.into()) * &self.surd * &self.surd
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement::new(&self.rat / &n, -&self.surd / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Sign of the real number `rat + surd·√5`.
    pub fn signum(&self) -> Ordering {
        let a = sign_of(&self.rat);
        let b = sign_of(&self.surd);
        match (a, b) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, y) => {
                // Opposite signs: the larger magnitude wins.
                let lhs = &self.rat * &self.rat;
                let rhs = Rational::from_integer(5.into()) * &self.surd * &self.surd;
                if lhs > rhs {
                    x
                } else {
                    y
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// The cache serialization `(a_num, a_den, b_num, b_den)`.
    pub fn to_tuple(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        (
            self.rat.numer().clone(),
            self.rat.denom().clone(),
            self.surd.numer().clone(),
            self.surd.denom().clone(),
        )
    }

    pub fn from_tuple(a_num: BigInt, a_den: BigInt, b_num: BigInt, b_den: BigInt) -> Result<Self> {
        if a_den.is_zero() || b_den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement::new(
            BigRational::new(a_num, a_den),
            BigRational::new(b_num, b_den),
        ))
    }
}

fn sign_of(r: &Rational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_integer(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::from_rational(r)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.surd.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write_surd(f, &self.surd),
            (false, false) => {
                write!(f, "{}", self.rat)?;
                if self.surd.is_negative() {
                    f.write_str("-")?;
                    write_surd(f, &-&self.surd)
                } else {
                    f.write_str("+")?;
                    write_surd(f, &self.surd)
                }
            }
        }
    }
}

fn write_surd(f: &mut fmt::Formatter<'_>, b: &Rational) -> fmt::Result {
    if b.is_one() {
        f.write_str("√5")
    } else if (-b).is_one() {
        f.write_str("-√5")
    } else if b.is_integer() {
        write!(f, "{}√5", b)
    } else {
        write!(f, "({})√5", b)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rat, self.surd)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(&self.rat + &rhs.rat, &self.surd + &rhs.surd)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(&self.rat - &rhs.rat, &self.surd - &rhs.surd)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        // Skip the big-rational products in the very common 0 / ±1 / rational cases.
        if self.is_zero() || rhs.is_zero() {
            return FieldElement::zero();
        }
        if self.surd.is_zero() && rhs.surd.is_zero() {
            return FieldElement::from_rational(&self.rat * &rhs.rat);
        }
        let five = Rational::from_integer(5.into());
        FieldElement::new(
            &self.rat * &rhs.rat + five * &self.surd * &rhs.surd,
            &self.rat * &rhs.surd + &self.surd * &rhs.rat,
        )
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(-&self.rat, -&self.surd)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(-self.rat, -self.surd)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement { (&self).$m(rhs) }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Panics on division by zero, like the integer types; use
/// [`FieldElement::checked_div`] when the divisor may vanish.
impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero in Q(√5)")
    }
}

impl Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.rat += &rhs.rat;
        self.surd += &rhs.surd;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.rat -= &rhs.rat;
        self.surd -= &rhs.surd;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for FieldElement {
    fn product<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn fe(a: (i64, i64), b: (i64, i64)) -> FieldElement {
        FieldElement::from_parts(a.0, a.1, b.0, b.1)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(fe((1, 1), (0, 1)) + fe((0, 1), (1, 1)), fe((1, 1), (1, 1)));
        assert_eq!(fe((1, 2), (1, 2)) + fe((1, 2), (-1, 2)), fe((1, 1), (0, 1)));
        let k = FieldElement::golden();
        assert_eq!(&k + &k, fe((1, 1), (1, 1)));
    }

    #[test]
    fn multiplication_examples() {
        let k = FieldElement::golden();
        // k² = k + 1 = 3/2 + √5/2
        assert_eq!(&k * &k, fe((3, 2), (1, 2)));
        assert_eq!(&k * &k, &k + &FieldElement::one());
        assert_eq!(FieldElement::sqrt5() * FieldElement::sqrt5(), FieldElement::from_integer(5));
        let x = fe((7, 3), (-2, 9));
        assert_eq!(&x * &FieldElement::one(), x);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(FieldElement::one().inverse().unwrap(), FieldElement::one());
        assert_eq!(FieldElement::sqrt5().inverse().unwrap(), fe((0, 1), (1, 5)));
        let k = FieldElement::golden();
        let kinv = k.inverse().unwrap();
        assert_eq!(kinv, fe((-1, 2), (1, 2)));
        assert_eq!(&k * &(&k - &FieldElement::one()), FieldElement::one());
        assert!(matches!(FieldElement::zero().inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn canonical_zero_and_reduction() {
        let z = fe((0, 7), (0, -3));
        assert_eq!(z, FieldElement::zero());
        assert_eq!(z.rat_part().denom(), &BigInt::from(1));
        let x = fe((4, -6), (10, 4));
        assert_eq!(x.to_tuple(), (BigInt::from(-2), BigInt::from(3), BigInt::from(5), BigInt::from(2)));
    }

    #[test]
    fn signs() {
        let k = FieldElement::golden();
        assert!(k.is_positive());
        assert!((&k - &FieldElement::from_integer(2)).is_negative());
        // 9/4 − √5 > 0 since 81/16 > 5
        assert!(fe((9, 4), (-1, 1)).is_positive());
        // 2 − √5 < 0
        assert!(fe((2, 1), (-1, 1)).is_negative());
        assert!(FieldElement::zero().signum() == Ordering::Equal);
    }

    #[test]
    fn display() {
        assert_eq!(FieldElement::golden().to_string(), "1/2+(1/2)√5");
        assert_eq!(fe((0, 1), (-1, 1)).to_string(), "-√5");
        assert_eq!(fe((3, 1), (-2, 1)).to_string(), "3-2√5");
        assert_eq!(FieldElement::frac(-5, 3).to_string(), "-5/3");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rational(n, d))
    }

    fn element() -> impl Strategy<Value = FieldElement> {
        (small_rational(), small_rational()).prop_map(|(a, b)| FieldElement::new(a, b))
    }

    /// Cross-multiplied big-integer oracle for rational addition and products.
    fn oracle_reduce(n: BigInt, d: BigInt) -> (BigInt, BigInt) {
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d < BigInt::zero() {
            n = -n;
            d = -d;
        }
        (n, d)
    }

    proptest! {
        #[test]
        fn field_axioms(x in element(), y in element(), z in element()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse().unwrap(), FieldElement::one());
            }
        }

        #[test]
        fn no_zero_divisors(a in small_rational(), b in small_rational()) {
            // a² − 5b² vanishes only at the origin because √5 is irrational.
            let x = FieldElement::new(a.clone(), b.clone());
            prop_assert_eq!(x.norm().is_zero(), a.is_zero() && b.is_zero());
        }

        #[test]
        fn rationals_match_integer_oracle(an in -500i64..500, ad in 1i64..60, bn in -500i64..500, bd in 1i64..60) {
            let (a, b) = (rational(an, ad), rational(bn, bd));
            let sum = &a + &b;
            let (sn, sd) = oracle_reduce(
                BigInt::from(an) * bd + BigInt::from(bn) * ad,
                BigInt::from(ad) * bd,
            );
            prop_assert_eq!((sum.numer().clone(), sum.denom().clone()), (sn, sd));
            let prod = &a * &b;
            let (pn, pd) = oracle_reduce(BigInt::from(an) * bn, BigInt::from(ad) * bd);
            prop_assert_eq!((prod.numer().clone(), prod.denom().clone()), (pn, pd));
        }

        #[test]
        fn ordering_matches_floats(x in element(), y in element()) {
            let fx = to_f64(&x);
            let fy = to_f64(&y);
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
        }
    }

    fn to_f64(x: &FieldElement) -> f64 {
        use num_traits::ToPrimitive;
        x.rat_part().to_f64().unwrap() + x.surd_part().to_f64().unwrap() * 5f64.sqrt()
    }
}
