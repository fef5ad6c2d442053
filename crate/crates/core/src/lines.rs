//! Restriction to lines and Kronecker minimal indices.
//!
//! For a pencil `s*P0 + t*P1` the column minimal indices are read off the
//! dimensions `d_e` of the spaces of degree-`e` polynomial kernel vectors:
//! with `D_e = d_e - d_{e-1}`, index `e` occurs `D_e - D_{e-1}` times.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::polymat::{random_point, LinearMatrix};
use crate::scalars::Field;

/// The line through two points of `P^{d-1}`; its points are `s*p + t*q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<F: Field> {
    field: F,
    p: Vec<F::Elem>,
    q: Vec<F::Elem>,
}

impl<F: Field> Line<F> {
    pub fn new(field: &F, p: Vec<F::Elem>, q: Vec<F::Elem>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::DimensionMismatch(format!("line points have {} and {} coordinates", p.len(), q.len())));
        }
        let m = Mat::from_rows(field, vec![p.clone(), q.clone()])?;
        if m.rank() < 2 {
            return Err(Error::DegenerateLine);
        }
        Ok(Self { field: field.clone(), p, q })
    }

    pub fn from_i64(field: &F, p: &[i64], q: &[i64]) -> Result<Self> {
        Self::new(field, p.iter().map(|&x| field.from_i64(x)).collect(), q.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn random<R: Rng + ?Sized>(field: &F, d: usize, rng: &mut R) -> Self {
        loop {
            let p = random_point(field, d, rng);
            let q = random_point(field, d, rng);
            if let Ok(line) = Self::new(field, p, q) {
                return line;
            }
        }
    }

    pub fn points(&self) -> [&[F::Elem]; 2] {
        [&self.p, &self.q]
    }

    pub fn point_at(&self, s: &F::Elem, t: &F::Elem) -> Vec<F::Elem> {
        let f = &self.field;
        self.p.iter().zip(&self.q).map(|(a, b)| f.add(&f.mul(s, a), &f.mul(t, b))).collect()
    }

    /// The same line with points `p' = a*p + b*q`, `q' = c*p + d*q`.
    pub fn reparametrize(&self, a: &F::Elem, b: &F::Elem, c: &F::Elem, d: &F::Elem) -> Result<Self> {
        Self::new(&self.field, self.point_at(a, b), self.point_at(c, d))
    }
}

/// `s*p0 + t*p1` with scalar `n x n` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryPencil<F: Field> {
    pub p0: Mat<F>,
    pub p1: Mat<F>,
}

impl<F: Field> BinaryPencil<F> {
    pub fn new(p0: Mat<F>, p1: Mat<F>) -> Result<Self> {
        if !p0.is_square() || p0.rows() != p1.rows() || p0.cols() != p1.cols() {
            return Err(Error::DimensionMismatch("pencil coefficients must be square of equal size".into()));
        }
        if p0.field() != p1.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { p0, p1 })
    }

    pub fn n(&self) -> usize {
        self.p0.rows()
    }

    pub fn evaluate(&self, s: &F::Elem, t: &F::Elem) -> Mat<F> {
        let mut m = self.p0.scale(s);
        m.axpy(t, &self.p1);
        m
    }

    pub fn transpose(&self) -> Self {
        Self { p0: self.p0.transpose(), p1: self.p1.transpose() }
    }

    /// Dimension of the space of degree-`e` solutions `v(s, t)` of
    /// `(s*p0 + t*p1) v = 0`.
    pub fn kernel_dimension(&self, e: usize) -> usize {
        let n = self.n();
        let f = self.p0.field();
        // Block row i collects the coefficient of s^{e+1-i} t^i:
        // p0 * v_i + p1 * v_{i-1}, where v_j multiplies s^{e-j} t^j.
        let mut m = Mat::zeros(f, (e + 2) * n, (e + 1) * n);
        for j in 0..=e {
            for r in 0..n {
                for c in 0..n {
                    m.set(j * n + r, j * n + c, self.p0.get(r, c).clone());
                    m.set((j + 1) * n + r, j * n + c, self.p1.get(r, c).clone());
                }
            }
        }
        (e + 1) * n - m.rank()
    }

    /// Rank over the function field, or `None` when the field has fewer
    /// than `n + 1` points on `P^1`. A nonzero `r x r` minor is a binary form
    /// of degree `r`, so it cannot vanish at `n + 1` distinct points.
    pub fn generic_rank(&self) -> Option<usize> {
        let n = self.n();
        let f = self.p0.field();
        if f.order().is_some_and(|q| q < n as u64) {
            return None;
        }
        let at_infinity = self.p1.rank();
        Some((0..n as u64).map(|i| self.evaluate(&f.one(), &f.element(i)).rank()).fold(at_infinity, usize::max))
    }

    /// Column minimal indices, without the constant-rank check.
    pub fn column_indices(&self) -> Vec<usize> {
        let n = self.n();
        let corank = self.generic_rank().map(|r| n - r);
        let mut indices = Vec::new();
        let (mut prev_d, mut prev_delta) = (0usize, 0usize);
        for e in 0..=n {
            if corank == Some(indices.len()) {
                break;
            }
            let d = self.kernel_dimension(e);
            let delta = d - prev_d;
            indices.extend(std::iter::repeat_n(e, delta - prev_delta));
            prev_d = d;
            prev_delta = delta;
        }
        indices
    }
}

/// Sorted column minimal indices of a pencil.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingProfile {
    pub indices: Vec<usize>,
}

impl SplittingProfile {
    pub fn corank(&self) -> usize {
        self.indices.len()
    }

    pub fn degree(&self) -> usize {
        self.indices.iter().sum()
    }
}

pub fn restrict_to_line<F: Field>(a: &LinearMatrix<F>, line: &Line<F>) -> Result<BinaryPencil<F>> {
    if line.field != *a.field() {
        return Err(Error::FieldMismatch);
    }
    let [p, q] = line.points();
    BinaryPencil::new(a.evaluate(p)?, a.evaluate(q)?)
}

/// Column minimal indices of a pencil of constant rank on `P^1`.
///
/// The rank is constant on `P^1` over the algebraic closure exactly when the
/// pencil has no elementary divisors, i.e. when its column and row minimal
/// indices add up to its generic rank; anything else is rejected.
pub fn minimal_indices<F: Field>(pencil: &BinaryPencil<F>) -> Result<SplittingProfile> {
    let columns = pencil.column_indices();
    let rows = pencil.transpose().column_indices();
    let generic_rank = pencil.n() - columns.len();
    if columns.iter().sum::<usize>() + rows.iter().sum::<usize>() != generic_rank {
        return Err(Error::NonConstantRankOnLine);
    }
    Ok(SplittingProfile { indices: columns })
}

pub fn line_profile<F: Field>(a: &LinearMatrix<F>, line: &Line<F>) -> Result<SplittingProfile> {
    minimal_indices(&restrict_to_line(a, line)?)
}

/// Half the gap between the two minimal indices on the line.
pub fn jumping_order<F: Field>(a: &LinearMatrix<F>, line: &Line<F>) -> Result<usize> {
    let profile = line_profile(a, line)?;
    match profile.indices[..] {
        [lo, hi] if (hi - lo) % 2 == 0 => Ok((hi - lo) / 2),
        [lo, hi] => Err(Error::OddIndexGap(lo, hi)),
        _ => Err(Error::CorankNotTwo(profile.corank())),
    }
}
