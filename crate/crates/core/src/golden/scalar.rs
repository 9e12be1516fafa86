use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// An element `a + b·√5` of the real quadratic field Q(√5).
///
/// Both parts are kept as reduced fractions, so structural equality is
/// field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenScalar {
    a: BigRational,
    b: BigRational,
}

impl GoldenScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// `(an/ad) + (bn/bd)·√5`.
    pub fn from_fracs(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(
            BigRational::new(an.into(), ad.into()),
            BigRational::new(bn.into(), bd.into()),
        )
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        Self::from_fracs(1, 2, 1, 2)
    }

    pub fn sqrt5() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b√5`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(5)) * &self.b * &self.b
    }

    /// Exact sign of `a + b√5`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa >= 0 && sb >= 0 {
            return (sa != 0 || sb != 0) as i32;
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        // Mixed signs: compare a² with 5b².
        let n = sign_of(&self.norm());
        if sa > 0 {
            n
        } else {
            -n
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.a / &n, -(&self.b / &n)))
    }

    /// Floating approximation, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl Zero for GoldenScalar {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for GoldenScalar {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Ord for GoldenScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for GoldenScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, rhs: &GoldenScalar) -> GoldenScalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return GoldenScalar::rational(&self.a * &rhs.a);
        }
        let five = BigRational::from_integer(BigInt::from(5));
        GoldenScalar::new(
            &self.a * &rhs.a + five * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl<'a> Div<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn div(self, rhs: &GoldenScalar) -> GoldenScalar {
        let inv = rhs.inverse().expect("division by zero in Q(√5)");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: GoldenScalar) -> GoldenScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: &'a GoldenScalar) -> GoldenScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GoldenScalar> for &'a GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: GoldenScalar) -> GoldenScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar::new(-self.a, -self.b)
    }
}

impl Neg for &GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar::new(-self.a.clone(), -self.b.clone())
    }
}

impl AddAssign<&GoldenScalar> for GoldenScalar {
    fn add_assign(&mut self, rhs: &GoldenScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&GoldenScalar> for GoldenScalar {
    fn sub_assign(&mut self, rhs: &GoldenScalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√5", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}√5", self.a, -self.b.clone())
                } else {
                    write!(f, "{} + {}√5", self.a, self.b)
                }
            }
        }
    }
}

impl fmt::Debug for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sign_examples() {
        assert_eq!(GoldenScalar::zero().signum(), 0);
        assert_eq!(GoldenScalar::from_ints(-2, 1).signum(), 1);
        assert_eq!(GoldenScalar::from_ints(7, -3).signum(), 1);
        assert_eq!(GoldenScalar::from_ints(-7, 3).signum(), -1);
        assert_eq!(GoldenScalar::from_ints(2, -1).signum(), -1);
    }

    #[test]
    fn phi_is_root_of_x2_minus_x_minus_1() {
        let p = GoldenScalar::phi();
        let v = &(&p * &p) - &p;
        assert_eq!(v, GoldenScalar::one());
    }

    #[test]
    fn inverse_roundtrip() {
        let x = GoldenScalar::from_fracs(3, 4, -1, 4);
        assert_eq!(&x * &x.inverse().unwrap(), GoldenScalar::one());
        assert!(GoldenScalar::zero().inverse().is_none());
    }

    fn scalar() -> impl Strategy<Value = GoldenScalar> {
        (-50i64..50, 1i64..12, -50i64..50, 1i64..12)
            .prop_map(|(a, ad, b, bd)| GoldenScalar::from_fracs(a, ad, b, bd))
    }

    proptest! {
        #[test]
        fn sign_matches_float(x in scalar()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn order_is_total(x in scalar(), y in scalar(), z in scalar()) {
            let lt = (x < y) as u8 + (x == y) as u8 + (x > y) as u8;
            prop_assert_eq!(lt, 1);
            if x <= y && y <= z {
                prop_assert!(x <= z);
            }
        }

        #[test]
        fn sign_is_multiplicative(x in scalar(), y in scalar()) {
            prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
        }
    }
}
