//! Pfaffians and principal sub-Pfaffians.
//!
//! Sign convention: `Pf([[0, 1], [-1, 0]]) = 1`, expanded along the first
//! row of each principal submatrix. Intermediate Pfaffians are memoized on
//! the bitmask of the surviving index set, so all sub-Pfaffians of one
//! matrix share work.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::MultiPoly;
use crate::polymat::LinearMatrix;
use crate::scalars::Field;

/// Largest matrix size the bitmask memo supports.
pub const MAX_PFAFFIAN_SIZE: usize = 64;

trait Ring {
    type Item: Clone;
    fn zero(&self) -> Self::Item;
    fn one(&self) -> Self::Item;
    fn is_zero(&self, a: &Self::Item) -> bool;
    fn mul(&self, a: &Self::Item, b: &Self::Item) -> Self::Item;
    fn add(&self, a: &Self::Item, b: &Self::Item) -> Self::Item;
    fn sub(&self, a: &Self::Item, b: &Self::Item) -> Self::Item;
}

struct Scalars<F: Field>(F);

impl<F: Field> Ring for Scalars<F> {
    type Item = F::Elem;
    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn one(&self) -> F::Elem {
        self.0.one()
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
}

struct Polys<F: Field> {
    field: F,
    nvars: usize,
}

// Operands all come from one matrix, so the compatibility checks cannot fail.
impl<F: Field> Ring for Polys<F> {
    type Item = MultiPoly<F>;
    fn zero(&self) -> MultiPoly<F> {
        MultiPoly::zero(&self.field, self.nvars)
    }
    fn one(&self) -> MultiPoly<F> {
        MultiPoly::one(&self.field, self.nvars)
    }
    fn is_zero(&self, a: &MultiPoly<F>) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
        a.mul(b).expect("same ring")
    }
    fn add(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
        a.add(b).expect("same ring")
    }
    fn sub(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
        a.sub(b).expect("same ring")
    }
}

struct Expander<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Item>,
    memo: HashMap<u64, R::Item>,
}

impl<R: Ring> Expander<R> {
    fn new(ring: R, n: usize, entries: Vec<R::Item>) -> Self {
        Self { ring, n, entries, memo: HashMap::new() }
    }

    fn pf(&mut self, mask: u64) -> R::Item {
        if mask == 0 {
            return self.ring.one();
        }
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << first);
        let mut acc = self.ring.zero();
        let mut position = 0;
        for j in first + 1..self.n {
            if rest & (1u64 << j) == 0 {
                continue;
            }
            position += 1;
            let entry = self.entries[first * self.n + j].clone();
            if self.ring.is_zero(&entry) {
                continue;
            }
            let minor = self.pf(rest & !(1u64 << j));
            if self.ring.is_zero(&minor) {
                continue;
            }
            let term = self.ring.mul(&entry, &minor);
            // Partner at position k (1-based among the others) carries (-1)^(k+1).
            acc = if position % 2 == 1 { self.ring.add(&acc, &term) } else { self.ring.sub(&acc, &term) };
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

fn check_size(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    if n > MAX_PFAFFIAN_SIZE {
        return Err(Error::TooLarge(format!("Pfaffian of size {n} exceeds {MAX_PFAFFIAN_SIZE}")));
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 { u64::MAX } else { (1u64 << n) - 1 }
}

/// Pfaffian of a skew scalar matrix.
pub fn pfaffian<F: Field>(m: &Mat<F>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    if !m.is_skew() {
        return Err(Error::NotSkew);
    }
    let n = m.rows();
    check_size(n)?;
    let entries = (0..n).flat_map(|i| m.row(i).to_vec()).collect();
    Ok(Expander::new(Scalars(m.field().clone()), n, entries).pf(full_mask(n)))
}

/// Pfaffian of a skew matrix of polynomials, given row by row.
pub fn pfaffian_poly<F: Field>(field: &F, nvars: usize, rows: &[Vec<MultiPoly<F>>]) -> Result<MultiPoly<F>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("polynomial matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if rows[i][j].nvars() != nvars || rows[i][j].field() != field {
                return Err(Error::FieldMismatch);
            }
            if rows[i][j] != rows[j][i].neg() {
                return Err(Error::NotSkew);
            }
        }
    }
    check_size(n)?;
    let entries = rows.iter().flatten().cloned().collect();
    Ok(Expander::new(Polys { field: field.clone(), nvars }, n, entries).pf(full_mask(n)))
}

/// All principal sub-Pfaffians of one fixed size.
#[derive(Clone, Debug, PartialEq)]
pub struct SubPfaffianSystem<F: Field> {
    pub size: usize,
    /// Index subsets in lexicographic order.
    pub subsets: Vec<Vec<usize>>,
    /// `polys[k]` is the Pfaffian of the principal submatrix on `subsets[k]`.
    pub polys: Vec<MultiPoly<F>>,
}

impl<F: Field> SubPfaffianSystem<F> {
    pub fn all_zero(&self) -> bool {
        self.polys.iter().all(|p| p.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &MultiPoly<F>> {
        self.polys.iter().filter(|p| !p.is_zero())
    }
}

/// Symbolic sub-Pfaffian evaluator for one matrix of linear forms, sharing
/// its memo across calls.
pub struct SubPfaffians<F: Field> {
    expander: Expander<Polys<F>>,
    n: usize,
}

impl<F: Field> SubPfaffians<F> {
    pub fn new(a: &LinearMatrix<F>) -> Result<Self> {
        if !a.is_skew() {
            return Err(Error::NotSkew);
        }
        let n = a.n();
        if n > MAX_PFAFFIAN_SIZE {
            return Err(Error::TooLarge(format!("matrix size {n} exceeds {MAX_PFAFFIAN_SIZE}")));
        }
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| a.entry(i, j)).collect();
        Ok(Self { expander: Expander::new(Polys { field: a.field().clone(), nvars: a.d() }, n, entries), n })
    }

    /// Pfaffian of the principal submatrix on `subset` (ascending indices).
    pub fn get(&mut self, subset: &[usize]) -> MultiPoly<F> {
        let mask = subset.iter().fold(0u64, |m, &i| m | (1u64 << i));
        self.expander.pf(mask)
    }

    pub fn system(&mut self, size: usize) -> Result<SubPfaffianSystem<F>> {
        if size % 2 == 1 {
            return Err(Error::OddSize(size));
        }
        if size > self.n {
            return Err(Error::DimensionMismatch(format!("sub-Pfaffian size {size} exceeds matrix size {}", self.n)));
        }
        let subsets = subsets(self.n, size);
        let polys = subsets.iter().map(|s| self.get(s)).collect();
        Ok(SubPfaffianSystem { size, subsets, polys })
    }

    /// Largest `2m` with a nonzero principal `2m`-sub-Pfaffian.
    pub fn rank_upper_bound(&mut self) -> usize {
        let mut size = self.n - self.n % 2;
        while size > 0 {
            if subsets(self.n, size).iter().any(|s| !self.get(s).is_zero()) {
                return size;
            }
            size -= 2;
        }
        0
    }
}

pub fn principal_subpfaffians<F: Field>(a: &LinearMatrix<F>, size: usize) -> Result<SubPfaffianSystem<F>> {
    SubPfaffians::new(a)?.system(size)
}

pub fn symbolic_rank_upper_bound<F: Field>(a: &LinearMatrix<F>) -> Result<usize> {
    Ok(SubPfaffians::new(a)?.rank_upper_bound())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalars::{PrimeField, Rationals};

    #[test]
    fn two_by_two() {
        let q = Rationals;
        let m = Mat::from_i64(&q, &[vec![0, 5], vec![-5, 0]]).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), q.from_i64(5));
        let unit = Mat::from_i64(&q, &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(pfaffian(&unit).unwrap(), q.one());
        assert_eq!(pfaffian(&Mat::<Rationals>::zeros(&q, 0, 0)).unwrap(), q.one());
    }

    #[test]
    fn four_by_four_symbolic() {
        // Six independent variables m12, m13, m14, m23, m24, m34.
        let f = PrimeField::new(101).unwrap();
        let var = |k| MultiPoly::var(&f, 6, k);
        let z = MultiPoly::zero(&f, 6);
        let upper = [[None, Some(0), Some(1), Some(2)], [None, None, Some(3), Some(4)], [None, None, None, Some(5)]];
        let rows: Vec<Vec<_>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        if i < j {
                            var(upper[i][j].unwrap())
                        } else if i > j {
                            var(upper[j][i].unwrap()).neg()
                        } else {
                            z.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let pf = pfaffian_poly(&f, 6, &rows).unwrap();
        let expected = var(0).mul(&var(5)).unwrap().sub(&var(1).mul(&var(4)).unwrap()).unwrap().add(&var(2).mul(&var(3)).unwrap()).unwrap();
        assert_eq!(pf, expected);
    }

    #[test]
    fn errors() {
        let q = Rationals;
        let odd = Mat::<Rationals>::zeros(&q, 3, 3);
        assert_eq!(pfaffian(&odd), Err(Error::OddSize(3)));
        let sym = Mat::from_i64(&q, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(pfaffian(&sym), Err(Error::NotSkew));
        let w = corpus::westwick10();
        assert!(matches!(principal_subpfaffians(&w, 7), Err(Error::OddSize(7))));
        assert!(principal_subpfaffians(&w, 12).is_err());
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(14, 12).len(), 91);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn westwick_subpfaffians() {
        let w = corpus::westwick10();
        let mut sp = SubPfaffians::new(&w).unwrap();
        let top = sp.system(10).unwrap();
        assert_eq!(top.polys.len(), 1);
        assert!(top.all_zero());
        let eight = sp.system(8).unwrap();
        assert_eq!(eight.polys.len(), 45);
        assert!(!eight.all_zero());
        assert!(eight.nonzero().all(|p| p.is_homogeneous() && p.total_degree() == Some(4)));
        assert_eq!(sp.rank_upper_bound(), 8);
    }

    #[test]
    fn appendix_upper_bound() {
        let a = corpus::appendix14();
        let mut sp = SubPfaffians::new(&a).unwrap();
        assert!(sp.system(14).unwrap().all_zero());
        assert_eq!(sp.rank_upper_bound(), 12);
    }

    #[test]
    fn zero_matrix_bound() {
        let f = PrimeField::new(7).unwrap();
        let z = LinearMatrix::zero(&f, 6, 4).unwrap();
        assert_eq!(symbolic_rank_upper_bound(&z).unwrap(), 0);
    }
}
