//! Numerical invariants of rank-2 bundles with `c1 = 0`, `c2 = k` on `P^3`
//! and of the constant-rank matrices built from them.
//!
//! Euler characteristics are computed as `integral(ch * td(P^3))` in exact
//! rational arithmetic. Symmetric and tensor squares go through formal
//! Chern roots `a, -a` with `a^2 = -k H^2`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Q = Ratio<i128>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

/// Cohomology classes on `P^3` extended by a formal root `a` with
/// `a^2 = -k H^2`: `terms[h][j]` is the coefficient of `H^h a^j`, kept up to
/// total degree 3.
#[derive(Clone, Debug, PartialEq)]
struct Class {
    k: i128,
    terms: [[Q; 2]; 4],
}

impl Class {
    fn zero(k: i128) -> Self {
        Self { k, terms: [[q(0); 2]; 4] }
    }

    fn scalar(k: i128, c: Q) -> Self {
        let mut x = Self::zero(k);
        x.terms[0][0] = c;
        x
    }

    fn add(&self, other: &Self) -> Self {
        let mut x = self.clone();
        for h in 0..4 {
            for j in 0..2 {
                x.terms[h][j] += other.terms[h][j];
            }
        }
        x
    }

    fn mul(&self, other: &Self) -> Self {
        let mut x = Self::zero(self.k);
        for (h1, row1) in self.terms.iter().enumerate() {
            for (j1, c1) in row1.iter().enumerate() {
                for (h2, row2) in other.terms.iter().enumerate() {
                    for (j2, c2) in row2.iter().enumerate() {
                        let (mut h, mut j, mut c) = (h1 + h2, j1 + j2, c1 * c2);
                        if j == 2 {
                            j = 0;
                            h += 2;
                            c *= q(-self.k);
                        }
                        if h + j <= 3 {
                            x.terms[h][j] += c;
                        }
                    }
                }
            }
        }
        x
    }

    /// `exp(t H + m a)`, the Chern character of the formal line bundle.
    fn exp_line(k: i128, t: i128, m: i128) -> Self {
        let mut x = Self::zero(k);
        x.terms[1][0] = q(t);
        x.terms[0][1] = q(m);
        let mut acc = Self::scalar(k, q(1));
        let mut power = Self::scalar(k, q(1));
        let mut factorial = 1;
        for i in 1..=3 {
            power = power.mul(&x);
            factorial *= i;
            let mut term = power.clone();
            for row in term.terms.iter_mut() {
                for c in row.iter_mut() {
                    *c /= q(factorial);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    fn from_h_polynomial(k: i128, coeffs: [Q; 4]) -> Self {
        let mut x = Self::zero(k);
        for (h, c) in coeffs.into_iter().enumerate() {
            x.terms[h][0] = c;
        }
        x
    }
}

/// Todd class of `P^3`: `1 + 2H + 11/6 H^2 + H^3`.
fn todd() -> [Q; 4] {
    [q(1), q(2), Q::new(11, 6), q(1)]
}

/// `chi` of a bundle with Chern roots `m_i * a` twisted by `O(t)`.
fn chi_from_roots(k: i64, t: i64, roots: &[i64]) -> i64 {
    let k = k as i128;
    let ch = roots
        .iter()
        .fold(Class::zero(k), |acc, &m| acc.add(&Class::exp_line(k, t as i128, m as i128)));
    let product = ch.mul(&Class::from_h_polynomial(k, todd()));
    assert_eq!(product.terms[2][1], q(0), "odd powers of the Chern root cancel");
    integral(product.terms[3][0])
}

fn integral(x: Q) -> i64 {
    assert!(x.is_integer(), "Euler characteristic {x} is not an integer");
    i64::try_from(x.to_integer()).expect("Euler characteristic fits in i64")
}

/// Chern classes of a sheaf on `P^3` in units of the hyperplane class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    pub rank: i64,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

impl ChernData {
    /// The Chern data of a charge-`k` instanton.
    pub fn instanton(k: i64) -> Self {
        Self { rank: 2, c1: 0, c2: k, c3: 0 }
    }

    fn chern_character(&self) -> [Q; 4] {
        let (r, c1, c2, c3) = (q(self.rank as i128), q(self.c1 as i128), q(self.c2 as i128), q(self.c3 as i128));
        [r, c1, (c1 * c1 - q(2) * c2) / q(2), (c1 * c1 * c1 - q(3) * c1 * c2 + q(3) * c3) / q(6)]
    }

    /// `chi(F(t))` by Hirzebruch-Riemann-Roch.
    pub fn chi(&self, t: i64) -> i64 {
        let ch = Class::from_h_polynomial(0, self.chern_character());
        let twisted = ch.mul(&Class::exp_line(0, t as i128, 0));
        integral(twisted.mul(&Class::from_h_polynomial(0, todd())).terms[3][0])
    }
}

/// `chi(E(t))` for rank 2, `c1 = 0`, `c2 = k`.
pub fn chi_rank2(k: i64, t: i64) -> i64 {
    chi_from_roots(k, t, &[1, -1])
}

/// `chi(S^2 E(t))`.
pub fn chi_sym2(k: i64, t: i64) -> i64 {
    chi_from_roots(k, t, &[2, 0, -2])
}

/// `chi(E (x) E(t))`.
pub fn chi_tensor2(k: i64, t: i64) -> i64 {
    chi_from_roots(k, t, &[2, 0, 0, -2])
}

/// Bounds `(n - r + 1, 2(n - r) + 1)` on the largest dimension of a linear
/// space of `n x n` matrices of constant rank `r`.
pub fn westwick_bounds(r: i64, n: i64) -> Result<(i64, i64)> {
    if r < 2 || r > n {
        return Err(Error::OutOfRange(format!("need 2 <= r <= n, got r = {r}, n = {n}")));
    }
    Ok((n - r + 1, 2 * (n - r) + 1))
}

pub fn is_allowed_rank(r: i64) -> bool {
    r > 0 && (r % 12 == 0 || r % 12 == 8)
}

/// Ranks `r <= max` of the form `12s` or `12s - 4`.
pub fn allowed_ranks(max: i64) -> Vec<i64> {
    (8..=max).filter(|&r| is_allowed_rank(r)).collect()
}

/// `k = r(r+4)/48`.
pub fn charge(r: i64) -> Result<i64> {
    if !is_allowed_rank(r) {
        return Err(Error::DisallowedRank(r));
    }
    Ok(r * (r + 4) / 48)
}

/// `chi(E(r/4)) - chi(E(-r/4 - 1))`, which equals `r + 2`.
pub fn cone_middle_rank(r: i64) -> Result<i64> {
    let k = charge(r)?;
    Ok(chi_rank2(k, r / 4) - chi_rank2(k, -r / 4 - 1))
}

/// `(h0, h1, h2, h3)` of `E(t)` for `E` with natural cohomology.
pub fn natural_cohomology(k: i64, t: i64) -> [i64; 4] {
    if t >= -2 {
        let chi = chi_rank2(k, t);
        [chi.max(0), (-chi).max(0), 0, 0]
    } else {
        let [h0, h1, _, _] = natural_cohomology(k, -4 - t);
        [0, 0, h1, h0]
    }
}

/// Dimension check `h0(E(r/4 - 1)) = h2(E(-r/4 - 2))` and
/// `h0(E(r/4)) >= h2(E(-r/4 - 1))`.
pub fn check_diamond_dims(r: i64) -> Result<bool> {
    let k = charge(r)?;
    let h0 = |t| natural_cohomology(k, t)[0];
    let h2 = |t| natural_cohomology(k, t)[2];
    Ok(h0(r / 4 - 1) == h2(-r / 4 - 2) && h0(r / 4) >= h2(-r / 4 - 1))
}

/// Multiplicities in the resolution
/// `0 -> O(-r/4-1)^k -> O(-r/4)^b + O(-r/4-1)^c -> O(-r/4+1)^k + O(-r/4)^a -> E -> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionShape {
    pub r: i64,
    pub k: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

pub fn resolution_shape(r: i64) -> Result<ResolutionShape> {
    let k = charge(r)?;
    let (a, b, c) = match r {
        8 => (4, 0, 6),
        12 => (4, 0, 10),
        20 => (2, 0, 20),
        _ => (0, k - r / 2 - 2, k + r / 2),
    };
    Ok(ResolutionShape { r, k, a, b, c })
}

/// Rows `p = 0..3`, columns `j = 0..3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeilinsonTable {
    pub entries: [[i64; 4]; 4],
}

/// The table of the cone: only `(p, j) = (0, 1)` and `(0, 2)` are nonzero,
/// both equal to `r + 2`.
pub fn expected_cone_table(r: i64) -> Result<BeilinsonTable> {
    charge(r)?;
    let mut entries = [[0; 4]; 4];
    entries[0][1] = r + 2;
    entries[0][2] = r + 2;
    Ok(BeilinsonTable { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRow {
    pub t: i64,
    pub chi: i64,
    pub h: [i64; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumerologyReport {
    pub r: i64,
    pub n: i64,
    pub k: i64,
    pub westwick_bounds: (i64, i64),
    pub cone_middle_rank: i64,
    pub diamond_dims: bool,
    pub resolution: ResolutionShape,
    pub cone_table: BeilinsonTable,
    /// Natural cohomology of `E(t)` for `t` from `-r/4 - 3` to `r/4 + 1`.
    pub cohomology: Vec<CohomologyRow>,
}

pub fn report(r: i64) -> Result<NumerologyReport> {
    let k = charge(r)?;
    let cohomology = (-r / 4 - 3..=r / 4 + 1)
        .map(|t| CohomologyRow { t, chi: chi_rank2(k, t), h: natural_cohomology(k, t) })
        .collect();
    Ok(NumerologyReport {
        r,
        n: r + 2,
        k,
        westwick_bounds: westwick_bounds(r, r + 2)?,
        cone_middle_rank: cone_middle_rank(r)?,
        diamond_dims: check_diamond_dims(r)?,
        resolution: resolution_shape(r)?,
        cone_table: expected_cone_table(r)?,
        cohomology,
    })
}

impl NumerologyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.resolution;
        out.push_str(&format!("rank r = {}\nsize n = {}\ncharge k = {}\n", self.r, self.n, self.k));
        out.push_str(&format!("bounds on l(r, n) = [{}, {}]\n", self.westwick_bounds.0, self.westwick_bounds.1));
        out.push_str(&format!("cone middle rank = {}\n", self.cone_middle_rank));
        out.push_str(&format!("diamond dimension check = {}\n", self.diamond_dims));
        out.push_str(&format!("resolution (a, b, c) = ({}, {}, {})\n", s.a, s.b, s.c));
        out.push_str("cone table (rows p = 0..3, columns j = 0..3):\n");
        for row in &self.cone_table.entries {
            out.push_str(&format!("  {:>4} {:>4} {:>4} {:>4}\n", row[0], row[1], row[2], row[3]));
        }
        out.push_str("natural cohomology of E(t):\n");
        out.push_str("     t   chi    h0    h1    h2    h3\n");
        for row in &self.cohomology {
            out.push_str(&format!(
                "{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}\n",
                row.t, row.chi, row.h[0], row.h[1], row.h[2], row.h[3]
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_form(k: i64, t: i64) -> i64 {
        (t + 1) * (t + 2) * (t + 3) / 3 - k * (t + 2)
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_rank2(2, 2), 12);
        assert_eq!(chi_rank2(4, -5), 4);
        for k in 0..10 {
            assert_eq!(chi_rank2(k, -2), 0);
        }
        assert_eq!(chi_sym2(10, -11), 0);
        assert_eq!(chi_sym2(14, -13), -44);
        assert_eq!(chi_sym2(0, 0), 3);
        assert_eq!(chi_tensor2(0, 0), 4);
    }

    #[test]
    fn engines_agree() {
        for k in 0..=20 {
            for t in -30..=30 {
                let chi = chi_rank2(k, t);
                assert_eq!(chi, closed_form(k, t));
                assert_eq!(chi, ChernData::instanton(k).chi(t));
                assert_eq!(chi + chi_rank2(k, -4 - t), 0);
            }
        }
    }

    #[test]
    fn sym2_vanishing_twist() {
        let zeros: Vec<i64> = (1..=30).filter(|&k| chi_sym2(k, -11) == 0).collect();
        assert_eq!(zeros, vec![10]);
        assert_eq!(chi_sym2(14, -13), 44 * 14 - 660);
    }

    #[test]
    fn tensor_square_splits() {
        // E (x) E = S^2 E + O for rank 2 with trivial determinant.
        for k in 0..8 {
            for t in -8..8 {
                let line = (t + 1) * (t + 2) * (t + 3) / 6;
                assert_eq!(chi_tensor2(k, t), chi_sym2(k, t) + line);
            }
        }
    }

    #[test]
    fn ranks_and_charges() {
        assert_eq!(allowed_ranks(24), vec![8, 12, 20, 24]);
        assert_eq!(allowed_ranks(8), vec![8]);
        assert!(allowed_ranks(100).iter().all(|r| r % 12 == 0 || r % 12 == 8));
        let charges: Vec<i64> = [8, 12, 20, 24].iter().map(|&r| charge(r).unwrap()).collect();
        assert_eq!(charges, vec![2, 4, 10, 14]);
        assert_eq!(charge(10), Err(Error::DisallowedRank(10)));
        assert_eq!(charge(0), Err(Error::DisallowedRank(0)));
    }

    #[test]
    fn bounds() {
        assert_eq!(westwick_bounds(8, 10).unwrap(), (3, 5));
        assert_eq!(westwick_bounds(4, 6).unwrap(), (3, 5));
        assert!(matches!(westwick_bounds(1, 6), Err(Error::OutOfRange(_))));
        assert!(matches!(westwick_bounds(8, 6), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn cone_ranks() {
        assert_eq!(cone_middle_rank(8).unwrap(), 10);
        assert_eq!(cone_middle_rank(12).unwrap(), 14);
        assert_eq!(cone_middle_rank(20).unwrap(), 22);
        assert!(cone_middle_rank(16).is_err());
    }

    #[test]
    fn cohomology_tables() {
        assert_eq!(natural_cohomology(4, -5), [0, 0, 4, 0]);
        assert_eq!(natural_cohomology(4, -4), [0, 0, 6, 0]);
        assert_eq!(natural_cohomology(4, -3), [0, 0, 4, 0]);
        assert_eq!(natural_cohomology(2, 1)[0], 2);
        assert_eq!(natural_cohomology(7, -2), [0, 0, 0, 0]);
    }

    #[test]
    fn diamond_checks() {
        for r in [8, 12, 20] {
            assert!(check_diamond_dims(r).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn shapes() {
        let abc = |r| {
            let s = resolution_shape(r).unwrap();
            (s.a, s.b, s.c)
        };
        assert_eq!(abc(8), (4, 0, 6));
        assert_eq!(abc(12), (4, 0, 10));
        assert_eq!(abc(20), (2, 0, 20));
        assert_eq!(abc(24), (0, 0, 26));
        for r in allowed_ranks(120) {
            let s = resolution_shape(r).unwrap();
            assert_eq!(2 * s.k + s.a - s.b - s.c, 2, "rank of E at r = {r}");
        }
    }

    #[test]
    fn cone_tables() {
        let t = expected_cone_table(8).unwrap();
        assert_eq!(t.entries[0], [0, 10, 10, 0]);
        assert!(t.entries[1..].iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn report_text() {
        let text = report(12).unwrap().to_text();
        assert!(text.contains("charge k = 4"));
        assert!(text.contains("size n = 14"));
        assert!(text.contains("resolution (a, b, c) = (4, 0, 10)"));
        let rep = report(12).unwrap();
        assert_eq!(rep.cohomology.first().unwrap().t, -6);
        assert_eq!(rep.cohomology.last().unwrap().t, 4);
    }
}
