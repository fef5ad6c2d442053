use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{Field, FieldSpec};
use crate::error::{Error, Result};

/// Integer range used when sampling rational elements.
pub const RATIONAL_SAMPLE_BOUND: i64 = 10_000;

/// The field of rational numbers, with always-reduced big-integer fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn to_bigint(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(a.recip())
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.random_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }

    fn order(&self) -> Option<u64> {
        None
    }

    /// Zig-zag enumeration of the integers: 0, 1, -1, 2, -2, ...
    fn element(&self, index: u64) -> BigRational {
        let k = index.div_ceil(2) as i64;
        self.from_i64(if index % 2 == 1 { k } else { -k })
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn integral_scale(&self, xs: &[BigRational]) -> BigRational {
        let lcm = xs
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let gcd = xs
            .iter()
            .map(|x| (x * &lcm).to_integer().abs())
            .fold(BigInt::zero(), |acc, v| acc.gcd(&v));
        if gcd.is_zero() {
            return BigRational::from_integer(lcm);
        }
        BigRational::new(lcm, gcd)
    }
}
