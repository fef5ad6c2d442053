use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use super::{Field, FieldSpec, PrimeField};
use crate::error::{Error, Result};

/// Largest supported extension field size; arithmetic uses log tables.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 24;

/// `F_{p^e}` realised as `F_p[z] / (m(z))`.
///
/// Elements are encoded as integers `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
/// where `c_i` is the coefficient of `z^i`. Multiplication goes through
/// discrete log tables built from a primitive element at construction.
#[derive(Clone, Debug)]
pub struct ExtField {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl ExtField {
    /// Builds `F_{p^e}` with the default modulus: the irreducible monic
    /// polynomial of degree `e` whose lower coefficients, read as the base-`p`
    /// number `c_0 + c_1 p + ...`, are smallest.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        PrimeField::new(p)?;
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = checked_order(p, e)?;
        let lower = q / p;
        for idx in 0..lower.max(1) {
            let mut modulus = to_digits(idx, p, e as usize);
            modulus.push(1);
            if e == 1 || is_irreducible(&modulus, p) {
                return Self::build(p, modulus);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        PrimeField::new(p)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must lie in [0, p)".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let e = (modulus.len() - 1) as u32;
        checked_order(p, e)?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Self::build(p, modulus)
    }

    fn build(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let e = (modulus.len() - 1) as u32;
        let q = p.pow(e);
        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&g| {
                let g = to_digits(g, p, e as usize);
                factors.iter().all(|&l| {
                    let x = poly_pow_mod(&g, order / l, &modulus, p);
                    !(x[0] == 1 && x[1..].iter().all(|&c| c == 0))
                })
            })
            .expect("multiplicative group is cyclic");
        let g = to_digits(generator, p, e as usize);

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = to_digits(1, p, e as usize);
        for i in 0..order {
            let code = from_digits(&cur, p);
            exp.push(code as u32);
            log[code as usize] = i as u32;
            cur = poly_mul_mod(&cur, &g, &modulus, p);
        }
        Ok(Self {
            inner: Arc::new(Inner { p, e, q, modulus, exp, log }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Coefficients of `a` as a polynomial in `z`, constant term first.
    pub fn digits(&self, a: u32) -> Vec<u64> {
        to_digits(a as u64, self.inner.p, self.inner.e as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> u32 {
        let mut padded = coeffs.to_vec();
        padded.resize(self.inner.e as usize, 0);
        padded.iter_mut().for_each(|c| *c %= self.inner.p);
        from_digits(&padded, self.inner.p) as u32
    }

    /// Image of a prime-field element under the inclusion `F_p -> F_{p^e}`.
    pub fn embed(&self, a: u64) -> u32 {
        (a % self.inner.p) as u32
    }
}

impl Field for ExtField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Extension {
            p: self.inner.p,
            e: self.inner.e,
            modulus: self.inner.modulus.clone(),
        }
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, v: i64) -> u32 {
        self.embed(v.rem_euclid(self.inner.p as i64) as u64)
    }

    fn from_bigint(&self, v: &BigInt) -> u32 {
        let q = BigInt::from(self.inner.q);
        let code = v.abs().mod_floor(&q).to_u32().unwrap();
        if v.is_negative() {
            self.neg(&code)
        } else {
            code
        }
    }

    fn to_bigint(&self, a: &u32) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.inner.p as u32;
        let (mut a, mut b) = (*a, *b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let idx = (inner.log[*a as usize] as u64 + inner.log[*b as usize] as u64) % order;
        inner.exp[idx as usize]
    }

    fn neg(&self, a: &u32) -> u32 {
        let p = self.inner.p as u32;
        let mut a = *a;
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::ZeroInversion);
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let idx = (order - inner.log[*a as usize] as u64) % order;
        Ok(inner.exp[idx as usize])
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(0..self.inner.q) as u32
    }

    fn order(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn element(&self, index: u64) -> u32 {
        debug_assert!(index < self.inner.q);
        index as u32
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn format(&self, a: &u32) -> String {
        let terms: Vec<String> = self
            .digits(*a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}*z^{i}"),
            })
            .collect();
        match terms.len() {
            0 => "0".into(),
            1 => terms.into_iter().next().unwrap(),
            _ => format!("({})", terms.join("+")),
        }
    }
}

fn checked_order(p: u64, e: u32) -> Result<u64> {
    match p.checked_pow(e) {
        Some(q) if q <= MAX_EXTENSION_ORDER => Ok(q),
        _ => Err(Error::InvalidField(format!(
            "F_{p}^{e} exceeds the supported size {MAX_EXTENSION_ORDER}"
        ))),
    }
}

fn to_digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let (mut base, mut exp) = (a % p, p - 2);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo `m` over `F_p`, coefficient vectors constant-first.
pub(crate) fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut r = a.to_vec();
    for top in (dm..r.len()).rev() {
        let c = r[top] * lead_inv % p;
        if c == 0 {
            continue;
        }
        let shift = top - dm;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mc % p) % p;
        }
    }
    r.truncate(dm);
    if r.is_empty() {
        r.push(0);
    }
    trim(r)
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_rem(&poly_mul(a, b, p), m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn poly_pow_mod(a: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let e = m.len() - 1;
    let mut acc = to_digits(1, p, e);
    let mut base = a.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, m, p);
        }
        base = poly_mul_mod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree at most `deg/2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut f = to_digits(idx, p, d);
            f.push(1);
            let r = poly_rem(m, &f, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
