use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact scalar field used by every rank, kernel and Hom computation.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// `0` for the rationals, `p` for `F_p`.
    fn characteristic() -> u64;
    /// Short name recorded in reports ("rational", "fp:<p>").
    fn name() -> String;
    /// Integer value, when the scalar is an integer representable in `i64`
    /// (for `F_p`, the symmetric representative).
    fn to_i64(&self) -> Option<i64>;
    /// Exact text form: "p/q" or "p".
    fn to_exact_string(&self) -> String {
        self.to_string()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// Arbitrary precision rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let (a, b): (BigInt, BigInt) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
                if b.is_zero() {
                    None
                } else {
                    Some(Q(BigRational::new(a, b)))
                }
            }
            None => Some(Q(BigRational::from_integer(s.parse().ok()?))),
        }
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(x: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(x)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Q(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Q(self.0.recip())
    }
    fn characteristic() -> u64 {
        0
    }
    fn name() -> String {
        "rational".into()
    }
    fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// The prime field `F_P`; `P` must be a prime below `2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i64().unwrap())
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "division by zero");
        self.pow(P - 2)
    }
    fn characteristic() -> u64 {
        P
    }
    fn name() -> String {
        format!("fp:{P}")
    }
    fn to_i64(&self) -> Option<i64> {
        if self.0 > P / 2 {
            Some(self.0 as i64 - P as i64)
        } else {
            Some(self.0 as i64)
        }
    }
}

/// `2^31 - 1`.
pub type F31 = Fp<2147483647>;
/// `2^30 + 3`.
pub type F30 = Fp<1073741827>;
/// `2^32 - 5`, the largest prime below `2^32`.
pub type F32 = Fp<4294967291>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let a = Q::new(1, 2);
        let b = Q::new(1, 3);
        assert_eq!(a.add(&b), Q::new(5, 6));
        assert_eq!(a.div(&b), Q::new(3, 2));
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(Q::from_i64(-4).to_string(), "-4");
        assert_eq!(Q::parse("-3/6"), Some(Q::new(-1, 2)));
        assert_eq!(Q::parse("1/0"), None);
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F31::from_i64(-1);
        assert_eq!(a.add(&F31::one()), F31::zero());
        let x = F31::from_i64(12345);
        assert_eq!(x.mul(&x.inv()), F31::one());
        assert_eq!(F31::from_i64(-7).to_i64(), Some(-7));
        let y = F32::from_i64(-2);
        assert_eq!(y.mul(&y.inv()), F32::one());
    }

    proptest::proptest! {
        #[test]
        fn field_axioms_fp(a in -1000i64..1000, b in -1000i64..1000, c in 1i64..1000) {
            let (a, b, c) = (F30::from_i64(a), F30::from_i64(b), F30::from_i64(c));
            proptest::prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            proptest::prop_assert_eq!(a.div(&c).mul(&c), a);
        }
    }
}
