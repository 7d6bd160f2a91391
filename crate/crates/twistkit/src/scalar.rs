//! Exact scalar fields.
//!
//! Every algorithm in the crate is generic over [`Scalar`], an exact field with
//! decidable equality. Two implementations ship: [`Q`], arbitrary-precision
//! rationals (the default), and [`Fp`], the prime field of order `P`.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Which exact field a value lives in, as recorded in serialised files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The rational numbers.
    Rational,
    /// The prime field with the given modulus.
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

/// An element of an exact field.
///
/// Arithmetic never rounds; `is_zero` and `==` are exact.
pub trait Scalar:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Additive identity.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    /// Image of an integer.
    fn from_i64(v: i64) -> Self;
    /// Exact zero test.
    fn is_zero(&self) -> bool;
    /// Sum.
    fn add(&self, rhs: &Self) -> Self;
    /// Difference.
    fn sub(&self, rhs: &Self) -> Self;
    /// Product.
    fn mul(&self, rhs: &Self) -> Self;
    /// Additive inverse.
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Canonical text form used by the file format.
    fn to_text(&self) -> String;
    /// Parses the text form; accepts `"a/b"` and plain integers.
    fn parse_text(s: &str) -> Option<Self>;
    /// The field this type implements.
    fn field() -> FieldSpec;

    /// In-place sum.
    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    /// Multiplicative identity test.
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    /// Builds `num / den`; panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Scalar for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Q(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Q(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Q(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn add_assign(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }
    fn to_text(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).ok()?;
                let d = BigInt::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Q(BigRational::new(n, d)))
            }
            None => Some(Q(BigRational::from_integer(BigInt::from_str(s).ok()?))),
        }
    }
    fn field() -> FieldSpec {
        FieldSpec::Rational
    }
}

/// Element of the prime field `Z/P`.
///
/// `P` must be prime; inverses are computed by Fermat's little theorem.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    /// Reduces an integer modulo `P`.
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    /// The canonical representative in `0..P`.
    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let m = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp((self.0 as u128 * rhs.0 as u128 % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn to_text(&self) -> String {
        self.0.to_string()
    }
    fn parse_text(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = Self::parse_text(n)?;
            let d = Self::parse_text(d)?.inv()?;
            return Some(n.mul(&d));
        }
        let v = BigInt::from_str(s).ok()?;
        let r = ((v % BigInt::from(P)) + BigInt::from(P)) % BigInt::from(P);
        Some(Fp(r.to_u64()?))
    }
    fn field() -> FieldSpec {
        FieldSpec::Prime(P)
    }
}

/// `(-1)^e` as a field element.
pub fn sign<F: Scalar>(e: i64) -> F {
    if e.rem_euclid(2) == 0 {
        F::one()
    } else {
        F::one().neg()
    }
}

/// `(-1)^e` as an integer.
pub fn sign_i64(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
