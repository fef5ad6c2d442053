//! Sparse multivariate polynomials.
//!
//! Terms are kept sorted by the degree reverse lexicographic order with
//! `x0 > x1 > ... > x_{d-1}`, largest first, and no stored coefficient is
//! zero.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Field;

pub const MAX_VARS: usize = 16;

/// Exponent vector with its total degree cached.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], degree: 0 };

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent exceeds 255");
            m.degree += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = u8::try_from(e).expect("exponent exceeds 255");
        m.degree = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a = a.checked_add(b).expect("exponent exceeds 255");
        }
        m.degree += other.degree;
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps) {
            *a -= b;
        }
        m.degree -= self.degree;
        m
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.degree += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn format(&self, nvars: usize) -> String {
        let parts: Vec<String> = (0..nvars)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| match self.exps[i] {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    /// Degree reverse lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.exps[i] != other.exps[i] {
                    return other.exps[i].cmp(&self.exps[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(1, |i| i + 1);
        write!(f, "{}", self.format(last))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        Self { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, vec![(Monomial::ONE, c)])
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::from_terms(field, nvars, vec![(Monomial::var(i), field.one())])
    }

    pub fn monomial(field: &F, nvars: usize, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, vec![(m, c)])
    }

    /// Linear form `sum_i c_i x_i`.
    pub fn linear(field: &F, coeffs: &[F::Elem]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        Self::from_terms(field, coeffs.len(), terms)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(field: &F, nvars: usize, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Self { field: field.clone(), nvars, terms: out }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, sign_other: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign_other { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign_other { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if sign_other { f.neg(c) } else { c.clone() })));
        Self { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect(),
            ..self.clone()
        }
    }

    /// Multiplication by `c * m`; the order is multiplicative so terms stay sorted.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Self {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect(),
            ..self.clone()
        }
    }

    /// `self - c * m * other`, fused.
    pub(crate) fn sub_mul_term(&self, m: &Monomial, c: &F::Elem, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match a[i].0.cmp(&bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, f.neg(&f.mul(c, &b[j].1))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.sub(&a[i].1, &f.mul(c, &b[j].1));
                    if !f.is_zero(&v) {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(t, v)| (t.mul(m), f.neg(&f.mul(c, v)))));
        Self { field: f.clone(), nvars: self.nvars, terms: out }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, F::Elem)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Wraps terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(field: &F, nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Self { field: field.clone(), nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = &self.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), f.mul(ca, cb)));
            }
        }
        Ok(Self::from_terms(f, self.nvars, terms))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn make_monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).expect("leading coefficient is nonzero")),
        }
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Maps coefficients into another field, dropping any that become zero.
    pub fn map_field<G: Field>(&self, field: &G, f: impl Fn(&F::Elem) -> G::Elem) -> MultiPoly<G> {
        MultiPoly::from_terms(
            field,
            self.nvars,
            self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
        )
    }

    /// Plain-text form: terms in decreasing degrevlex order joined by
    /// ` + ` / ` - `, each written `c*x0^a*x1^b` with unit coefficients
    /// omitted; the zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut coeff = self.field.format(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = m.format(self.nvars);
            if mono == "1" {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn degrevlex_order() {
        // x0^2 > x0*x1 > x1^2 > x0*x2 > x1*x2 > x2^2 in three variables.
        let ms = [
            Monomial::new(&[2, 0, 0]),
            Monomial::new(&[1, 1, 0]),
            Monomial::new(&[0, 2, 0]),
            Monomial::new(&[1, 0, 1]),
            Monomial::new(&[0, 1, 1]),
            Monomial::new(&[0, 0, 2]),
        ];
        for w in ms.windows(2) {
            assert!(w[0] > w[1], "{:?} > {:?}", w[0], w[1]);
        }
        assert!(Monomial::new(&[0, 0, 3]) > Monomial::new(&[2, 0, 0]));
    }

    #[test]
    fn text_format() {
        let q = Rationals;
        let x = |i| MultiPoly::var(&q, 3, i);
        let p = x(0).mul(&x(1)).unwrap().scale(&q.from_i64(3)).sub(&x(2)).unwrap();
        assert_eq!(p.to_text(), "3*x0*x1 - x2");
        let f = PrimeField::new(7).unwrap();
        let c = MultiPoly::constant(&f, 2, 5);
        assert_eq!(c.to_text(), "-2");
        assert_eq!(MultiPoly::zero(&f, 2).to_text(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..5), 0..6)
    }

    fn build(f: &PrimeField, t: &[(Vec<u32>, i64)]) -> MultiPoly<PrimeField> {
        MultiPoly::from_terms(f, 3, t.iter().map(|(e, c)| (Monomial::new(e), f.from_i64(*c))).collect())
    }

    proptest! {
        #[test]
        fn ring_laws_and_evaluation(a in arb_poly(), b in arb_poly(), pt in prop::collection::vec(0u64..101, 3)) {
            let f = PrimeField::new(101).unwrap();
            let (pa, pb) = (build(&f, &a), build(&f, &b));
            let sum = pa.add(&pb).unwrap();
            let prod = pa.mul(&pb).unwrap();
            prop_assert_eq!(prod.clone(), pb.mul(&pa).unwrap());
            prop_assert!(sum.sub(&pb).unwrap() == pa);
            let (va, vb) = (pa.evaluate(&pt).unwrap(), pb.evaluate(&pt).unwrap());
            prop_assert_eq!(sum.evaluate(&pt).unwrap(), f.add(&va, &vb));
            prop_assert_eq!(prod.evaluate(&pt).unwrap(), f.mul(&va, &vb));
            let m = Monomial::new(&[1, 0, 2]);
            let fused = pa.sub_mul_term(&m, &3, &pb);
            let slow = pa.sub(&pb.mul_term(&m, &3)).unwrap();
            prop_assert_eq!(fused, slow);
        }
    }
}
