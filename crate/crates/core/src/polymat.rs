//! Matrices of linear forms `A(x) = x_0 A_0 + ... + x_{d-1} A_{d-1}`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::{MultiPoly, MAX_VARS};
use crate::scalars::{ExtField, Field, PrimeField, Rationals};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMatrix<F: Field> {
    field: F,
    n: usize,
    coeffs: Vec<Mat<F>>,
}

impl<F: Field> LinearMatrix<F> {
    pub fn new(field: &F, coeffs: Vec<Mat<F>>) -> Result<Self> {
        let d = coeffs.len();
        if d == 0 {
            return Err(Error::DimensionMismatch("need at least one variable".into()));
        }
        if d > MAX_VARS {
            return Err(Error::TooManyVariables(d));
        }
        let n = coeffs[0].rows();
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            if c.rows() != n || c.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient matrices must all be {n}x{n}"
                )));
            }
        }
        Ok(Self { field: field.clone(), n, coeffs })
    }

    pub fn zero(field: &F, n: usize, d: usize) -> Result<Self> {
        Self::new(field, vec![Mat::zeros(field, n, n); d])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Matrix size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of variables.
    pub fn d(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Mat<F> {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Mat<F>] {
        &self.coeffs
    }

    pub fn is_skew(&self) -> bool {
        self.coeffs.iter().all(Mat::is_skew)
    }

    /// Entry `(i, j)` as a linear form.
    pub fn entry(&self, i: usize, j: usize) -> MultiPoly<F> {
        let cs: Vec<F::Elem> = self.coeffs.iter().map(|c| c.get(i, j).clone()).collect();
        MultiPoly::linear(&self.field, &cs)
    }

    fn check_point(&self, x: &[F::Elem]) -> Result<()> {
        if x.len() != self.d() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, matrix has {} variables",
                x.len(),
                self.d()
            )));
        }
        Ok(())
    }

    /// `sum_i x_i A_i`.
    pub fn evaluate(&self, x: &[F::Elem]) -> Result<Mat<F>> {
        self.check_point(x)?;
        let mut out = Mat::zeros(&self.field, self.n, self.n);
        for (xi, ai) in x.iter().zip(&self.coeffs) {
            out.axpy(xi, ai);
        }
        Ok(out)
    }

    pub fn rank_at(&self, x: &[F::Elem]) -> Result<usize> {
        Ok(self.evaluate(x)?.rank())
    }

    /// Basis of `ker A(x)`.
    pub fn kernel_at(&self, x: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        Ok(self.evaluate(x)?.nullspace())
    }

    /// `A_i -> G^T A_i G`.
    pub fn congruence_action(&self, g: &Mat<F>) -> Result<Self> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("transform must be {0}x{0}", self.n)));
        }
        if !g.is_invertible() {
            return Err(Error::SingularTransform);
        }
        let gt = g.transpose();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| gt.mul(a)?.mul(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, coeffs)
    }

    /// Substitution `x -> H x`: `A'_j = sum_i H_ij A_i`, so that
    /// `A'(x) = A(H x)`.
    pub fn variable_action(&self, h: &Mat<F>) -> Result<Self> {
        let d = self.d();
        if h.rows() != d || h.cols() != d {
            return Err(Error::DimensionMismatch(format!("transform must be {d}x{d}")));
        }
        if !h.is_invertible() {
            return Err(Error::SingularTransform);
        }
        let coeffs = (0..d)
            .map(|j| {
                let mut acc = Mat::zeros(&self.field, self.n, self.n);
                for i in 0..d {
                    acc.axpy(h.get(i, j), &self.coeffs[i]);
                }
                acc
            })
            .collect();
        Self::new(&self.field, coeffs)
    }

    /// `A_i -> P A_i`.
    pub fn left_multiply(&self, p: &Mat<F>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| p.mul(a)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, coeffs)
    }

    pub fn map_field<G: Field>(&self, field: &G, f: impl Fn(&F::Elem) -> G::Elem) -> LinearMatrix<G> {
        LinearMatrix {
            field: field.clone(),
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.map(field, &f)).collect(),
        }
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F::Elem> {
        random_point(&self.field, self.d(), rng)
    }
}

impl LinearMatrix<PrimeField> {
    /// The same matrix viewed over an extension of its field.
    pub fn lift(&self, ext: &ExtField) -> Result<LinearMatrix<ExtField>> {
        if ext.p() != self.field.p() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.map_field(ext, |a| ext.embed(*a)))
    }
}

impl LinearMatrix<Rationals> {
    /// Reduction modulo `p`; fails when some denominator is divisible by `p`.
    pub fn reduce_mod(&self, field: &PrimeField) -> Result<LinearMatrix<PrimeField>> {
        let p = num_bigint::BigInt::from(field.p());
        for c in &self.coeffs {
            for i in 0..self.n {
                for j in 0..self.n {
                    if (c.get(i, j).denom() % &p) == num_bigint::BigInt::from(0) {
                        return Err(Error::DenominatorCollision(field.p()));
                    }
                }
            }
        }
        Ok(self.map_field(field, |a| {
            let num = field.from_bigint(a.numer());
            let den = field.from_bigint(a.denom());
            field.div(&num, &den).expect("denominator is a unit mod p")
        }))
    }
}

/// A point of projective space, stored with its first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !field.is_zero(c)) else {
            return Err(Error::OutOfRange("the zero vector is not a projective point".into()));
        };
        let inv = field.inv(lead)?;
        Ok(Self { coords: coords.iter().map(|c| field.mul(c, &inv)).collect() })
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }
}

impl<F: Field> AsRef<[F::Elem]> for ProjectivePoint<F> {
    fn as_ref(&self) -> &[F::Elem] {
        &self.coords
    }
}

/// Random nonzero vector of length `d`.
pub fn random_point<F: Field, R: Rng + ?Sized>(field: &F, d: usize, rng: &mut R) -> Vec<F::Elem> {
    loop {
        let x: Vec<F::Elem> = (0..d).map(|_| field.random(rng)).collect();
        if x.iter().any(|c| !field.is_zero(c)) {
            return x;
        }
    }
}

/// Number of points of `P^{d-1}` over a field with `q` elements.
pub fn projective_point_count(q: u64, d: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..d {
        total = total.checked_add(power)?;
        power = power.checked_mul(q)?;
    }
    Some(total)
}

/// The `index`-th canonical representative of `P^{d-1}(F_q)`, ordered by
/// the position of the leading 1 (from the right-most) then by the tail.
pub fn projective_point_at<F: Field>(field: &F, d: usize, mut index: u64) -> Vec<F::Elem> {
    let q = field.order().expect("finite field");
    // Leading coordinate at position k leaves q^{d-1-k} tails.
    for k in (0..d).rev() {
        let tails = q.pow((d - 1 - k) as u32);
        if index < tails {
            let mut x = vec![field.zero(); d];
            x[k] = field.one();
            for slot in x.iter_mut().skip(k + 1).rev() {
                *slot = field.element(index % q);
                index /= q;
            }
            return x;
        }
        index -= tails;
    }
    panic!("projective point index out of range");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn projective_enumeration_is_exhaustive_and_canonical() {
        let f = PrimeField::new(5).unwrap();
        let count = projective_point_count(5, 3).unwrap();
        assert_eq!(count, 31);
        let pts: HashSet<Vec<u64>> = (0..count).map(|i| projective_point_at(&f, 3, i)).collect();
        assert_eq!(pts.len(), 31);
        for p in &pts {
            let canon = ProjectivePoint::new(&f, p.clone()).unwrap();
            assert_eq!(canon.coords(), p.as_slice());
        }
    }

    #[test]
    fn evaluate_at_basis_vector_picks_coefficient() {
        let w = corpus::westwick10();
        let q = Rationals;
        let e0 = vec![q.one(), q.zero(), q.zero(), q.zero()];
        assert_eq!(w.evaluate(&e0).unwrap(), *w.coeff(0));
        assert_eq!(w.rank_at(&e0).unwrap(), 8);

        let a = corpus::appendix14();
        let ones = vec![1u64; 4];
        let sum = (1..4).fold(a.coeff(0).clone(), |acc, i| acc.add(a.coeff(i)).unwrap());
        assert_eq!(a.evaluate(&ones).unwrap(), sum);
    }

    #[test]
    fn kernels() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = corpus::westwick10();
        let x = w.random_point(&mut rng);
        let ker = w.kernel_at(&x).unwrap();
        assert_eq!(ker.len(), 2);
        let m = w.evaluate(&x).unwrap();
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(|c| Rationals.is_zero(c)));
        }

        let a = corpus::appendix14();
        let ker = a.kernel_at(&[1, 0, 0, 0]).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.coeff(0).mul_vec(v).unwrap().iter().all(|c| *c == 0));
        }

        let f = PrimeField::new(7).unwrap();
        let id = LinearMatrix::new(&f, vec![Mat::identity(&f, 3), Mat::zeros(&f, 3, 3)]).unwrap();
        assert!(id.kernel_at(&[1, 0]).unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let f = PrimeField::new(7).unwrap();
        let z = LinearMatrix::zero(&f, 4, 4).unwrap();
        assert_eq!(z.rank_at(&[1, 2, 3, 4]).unwrap(), 0);
    }

    #[test]
    fn trivial_actions() {
        let w = corpus::westwick10();
        let q = Rationals;
        assert_eq!(w.congruence_action(&Mat::identity(&q, 10)).unwrap(), w);
        assert_eq!(w.variable_action(&Mat::identity(&q, 4)).unwrap(), w);
        let swap = Mat::from_i64(&q, &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let ws = w.variable_action(&swap).unwrap();
        assert_eq!(ws.coeff(0), w.coeff(1));
        assert_eq!(ws.coeff(1), w.coeff(0));
        assert_eq!(ws.coeff(2), w.coeff(2));
        let singular = Mat::zeros(&q, 4, 4);
        assert_eq!(w.variable_action(&singular), Err(Error::SingularTransform));
        assert_eq!(w.congruence_action(&Mat::zeros(&q, 10, 10)), Err(Error::SingularTransform));
    }

    #[test]
    fn sign_flip_congruence_keeps_westwick_rank() {
        let q = Rationals;
        let w = corpus::westwick10();
        let g = Mat::from_fn(&q, 10, 10, |i, j| {
            if i != j {
                q.zero()
            } else if i % 3 == 0 {
                q.from_i64(-1)
            } else {
                q.one()
            }
        });
        let wg = w.congruence_action(&g).unwrap();
        assert!(wg.is_skew());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let x = wg.random_point(&mut rng);
            assert_eq!(wg.rank_at(&x).unwrap(), 8);
        }
    }

    #[test]
    fn random_transforms_keep_appendix_rank() {
        let f = PrimeField::new(7).unwrap();
        let a = corpus::appendix14();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = loop {
            let g = Mat::random(&f, 14, 14, &mut rng);
            if g.is_invertible() {
                break g;
            }
        };
        let h = loop {
            let h = Mat::random(&f, 4, 4, &mut rng);
            if h.is_invertible() {
                break h;
            }
        };
        let ag = a.congruence_action(&g).unwrap();
        let ah = a.variable_action(&h).unwrap();
        assert!(ag.is_skew() && ah.is_skew());
        for _ in 0..100 {
            let x = a.random_point(&mut rng);
            assert_eq!(ag.rank_at(&x).unwrap(), 12);
            assert_eq!(ah.rank_at(&x).unwrap(), 12);
            let hx = h.mul_vec(&x).unwrap();
            assert_eq!(a.rank_at(&hx).unwrap(), ah.rank_at(&x).unwrap());
        }
    }

    #[test]
    fn dimension_and_field_errors() {
        let w = corpus::westwick10();
        assert!(matches!(w.evaluate(&[Rationals.one()]), Err(Error::DimensionMismatch(_))));
        let f7 = PrimeField::new(7).unwrap();
        let f11 = PrimeField::new(11).unwrap();
        let res = LinearMatrix::new(&f7, vec![Mat::zeros(&f11, 2, 2)]);
        assert_eq!(res, Err(Error::FieldMismatch));
    }

    #[test]
    fn reduction_mod_p() {
        let w = corpus::westwick10();
        let f = PrimeField::new(7).unwrap();
        let w7 = w.reduce_mod(&f).unwrap();
        assert!(w7.is_skew());
        assert_eq!(*w7.coeff(0).get(0, 7), 1);
        assert_eq!(*w7.coeff(0).get(7, 0), 6);
    }
}
