//! Skew-symmetrization: find an invertible scalar `delta` with `delta * B`
//! skew, by solving the linear conditions on `delta` and searching the
//! solution space for an invertible element.
//!
//! The search is only guaranteed to be short when the solution space is
//! small (one-dimensional when the cokernel of `B` is simple). Larger spaces
//! are searched at random, with an exact singularity test when the space has
//! dimension at most [`SYMBOLIC_FALLBACK_DIM`].

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::MultiPoly;
use crate::polymat::LinearMatrix;
use crate::scalars::Field;

pub const DEFAULT_MAX_RETRIES: usize = 20;
pub const SYMBOLIC_FALLBACK_DIM: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct Skewifier<F: Field> {
    pub delta: Mat<F>,
    /// `delta * B`, skew.
    pub result: LinearMatrix<F>,
    pub solution_dim: usize,
}

/// Basis of `{delta : delta * A_i is skew for every i}`.
pub fn skew_solution_space<F: Field>(b: &LinearMatrix<F>) -> Result<Vec<Mat<F>>> {
    let n = b.n();
    let f = b.field();
    let rows = b.d() * n * (n + 1) / 2;
    let mut system = Mat::zeros(f, rows, n * n);
    let mut row = 0;
    for a in b.coeffs() {
        for r in 0..n {
            for c in r..n {
                // (delta A)_{rc} + (delta A)_{cr} = sum_k delta_{rk} A_{kc} + delta_{ck} A_{kr}
                for k in 0..n {
                    let u = r * n + k;
                    let v = f.add(system.get(row, u), a.get(k, c));
                    system.set(row, u, v);
                    let u = c * n + k;
                    let v = f.add(system.get(row, u), a.get(k, r));
                    system.set(row, u, v);
                }
                row += 1;
            }
        }
    }
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| Mat::from_fn(f, n, n, |i, j| v[i * n + j].clone()))
        .collect())
}

pub fn skew_symmetrize<F: Field, R: Rng + ?Sized>(
    b: &LinearMatrix<F>,
    rng: &mut R,
    max_retries: usize,
) -> Result<Skewifier<F>> {
    let f = b.field();
    let n = b.n();
    let basis = skew_solution_space(b)?;
    let dim = basis.len();
    if dim == 0 {
        return Err(Error::NoSkewifier(0));
    }
    let combine = |coeffs: &[F::Elem]| {
        let mut m = Mat::zeros(f, n, n);
        for (c, e) in coeffs.iter().zip(&basis) {
            m.axpy(c, e);
        }
        m
    };
    let mut found = None;
    if dim == 1 && basis[0].is_invertible() {
        found = Some(basis[0].clone());
    }
    for _ in 0..max_retries {
        if found.is_some() {
            break;
        }
        let coeffs: Vec<F::Elem> = (0..dim).map(|_| f.random(rng)).collect();
        let m = combine(&coeffs);
        if m.is_invertible() {
            found = Some(m);
        }
    }
    if found.is_none() && dim <= SYMBOLIC_FALLBACK_DIM {
        let det = symbolic_determinant(&basis)?;
        if det.is_zero() {
            return Err(Error::NoSkewifier(dim));
        }
        // A nonzero determinant polynomial; look harder for a point off it.
        for _ in 0..1000 {
            let t: Vec<F::Elem> = (0..dim).map(|_| f.random(rng)).collect();
            if !f.is_zero(&det.evaluate(&t)?) {
                found = Some(combine(&t));
                break;
            }
        }
    }
    let mut delta = found.ok_or(Error::NoSkewifier(dim))?;
    let mut result = b.left_multiply(&delta)?;
    let entries: Vec<F::Elem> = delta
        .to_rows()
        .into_iter()
        .flatten()
        .chain(result.coeffs().iter().flat_map(|c| c.to_rows().into_iter().flatten()))
        .collect();
    let scale = f.integral_scale(&entries);
    if !f.is_one(&scale) {
        delta = delta.scale(&scale);
        result = b.left_multiply(&delta)?;
    }
    debug_assert!(result.is_skew());
    Ok(Skewifier { delta, result, solution_dim: dim })
}

/// `det(sum_j t_j basis_j)` as a polynomial in the `t_j`, by Laplace
/// expansion along rows memoized on the set of used columns.
fn symbolic_determinant<F: Field>(basis: &[Mat<F>]) -> Result<MultiPoly<F>> {
    let f = basis[0].field();
    let n = basis[0].rows();
    let dim = basis.len();
    if n > 30 {
        return Err(Error::TooLarge(format!("symbolic determinant of size {n}")));
    }
    let entries: Vec<MultiPoly<F>> = (0..n * n)
        .map(|k| {
            let coeffs: Vec<F::Elem> = basis.iter().map(|m| m.get(k / n, k % n).clone()).collect();
            MultiPoly::linear(f, &coeffs)
        })
        .collect();
    let mut memo: HashMap<u32, MultiPoly<F>> = HashMap::new();
    fn expand<F: Field>(
        cols: u32,
        n: usize,
        dim: usize,
        entries: &[MultiPoly<F>],
        memo: &mut HashMap<u32, MultiPoly<F>>,
    ) -> Result<MultiPoly<F>> {
        let row = n - cols.count_ones() as usize;
        if row == n {
            return Ok(MultiPoly::one(entries[0].field(), dim));
        }
        if let Some(v) = memo.get(&cols) {
            return Ok(v.clone());
        }
        let mut acc = MultiPoly::zero(entries[0].field(), dim);
        let mut position = 0;
        for c in 0..n {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = &entries[row * n + c];
            if !e.is_zero() {
                let minor = expand(cols & !(1 << c), n, dim, entries, memo)?;
                let term = e.mul(&minor)?;
                acc = if position % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        Ok(acc)
    }
    expand((1u32 << n) - 1, n, dim, &entries, &mut memo)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaKind {
    Symmetric,
    Skew,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryType {
    MiddleMapSymmetric,
    MiddleTermSkewDuality,
    MiddleMapSkew,
    MiddleTermSymmetricDuality,
}

/// Symmetry of the middle map of the monad built from an extension class
/// of the given kind, by `k mod 4`. A skew class reverses every sign.
pub fn symmetry_type(k: u64, beta: BetaKind) -> SymmetryType {
    use SymmetryType::*;
    match (k % 4, beta) {
        (0, BetaKind::Symmetric) | (2, BetaKind::Skew) => MiddleMapSymmetric,
        (1, BetaKind::Symmetric) | (3, BetaKind::Skew) => MiddleTermSkewDuality,
        (2, BetaKind::Symmetric) | (0, BetaKind::Skew) => MiddleMapSkew,
        _ => MiddleTermSymmetricDuality,
    }
}
