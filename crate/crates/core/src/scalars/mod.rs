//! Exact scalar fields.
//!
//! Three families sit behind the [`Field`] contract: prime fields `F_p` with
//! `p` odd, extension fields `F_{p^e}` and the rationals. Field handles are
//! cheap to clone and carry whatever tables the arithmetic needs; elements
//! are plain values interpreted relative to a handle.

mod extension;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use extension::ExtField;
pub use prime::PrimeField;
pub use rational::{Rationals, RATIONAL_SAMPLE_BOUND};

use crate::error::{Error, Result};

/// Serializable description of a field.
///
/// Extension moduli are listed from the constant term up to the leading
/// coefficient, which is always 1. An empty modulus on input selects the
/// default irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime {
        p: u64,
    },
    Extension {
        p: u64,
        e: u32,
        #[serde(default)]
        modulus: Vec<u64>,
    },
    Rational,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, e, .. } => write!(f, "F_{p}^{e}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Reduces an integer from the interchange format into the field.
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Integer representative used by the interchange format, if any.
    fn to_bigint(&self, a: &Self::Elem) -> Option<BigInt>;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Uniform element for finite fields; for the rationals an integer in
    /// `[-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND]`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    /// Enumerates a finite field: `element(i)` for `i < order()` is a
    /// bijection with `element(0) = 0` and `element(1) = 1`.
    fn element(&self, index: u64) -> Self::Elem;

    fn characteristic(&self) -> u64;

    fn format(&self, a: &Self::Elem) -> String;

    /// A nonzero scalar `c` such that every `c * x` has an integer
    /// representative. Finite fields return 1.
    fn integral_scale(&self, _xs: &[Self::Elem]) -> Self::Elem {
        self.one()
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Runtime-selected field, used where the field comes from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Prime(PrimeField),
    Extension(ExtField),
    Rational(Rationals),
}

impl AnyField {
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Ok(match spec {
            FieldSpec::Prime { p } => AnyField::Prime(PrimeField::new(*p)?),
            FieldSpec::Extension { p, e, modulus } => {
                let field = if modulus.is_empty() {
                    ExtField::new(*p, *e)?
                } else {
                    ExtField::with_modulus(*p, modulus.clone())?
                };
                if field.degree() != *e {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {} but e = {e}",
                        field.degree()
                    )));
                }
                AnyField::Extension(field)
            }
            FieldSpec::Rational => AnyField::Rational(Rationals),
        })
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
