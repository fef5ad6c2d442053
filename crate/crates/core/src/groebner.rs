//! Buchberger's algorithm over `F_p` in degrevlex order, and a projective
//! emptiness test for homogeneous ideals built on it.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::polymat::{projective_point_at, projective_point_count};
use crate::scalars::{ExtField, Field, FieldSpec, PrimeField};

type Poly = MultiPoly<PrimeField>;

pub const DEFAULT_DEGREE_CAP: u32 = 40;
/// Upper limit on the number of points the exhaustive zero search visits per field.
pub const SEARCH_LIMIT: u64 = 10_000_000;
/// Largest extension degree tried by the zero search.
pub const MAX_SEARCH_DEGREE: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// S-pairs whose lcm exceeds this degree are not processed; the
    /// resulting basis is marked incomplete.
    pub degree_cap: u32,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        Self { degree_cap: DEFAULT_DEGREE_CAP }
    }
}

/// A reduced Gröbner basis (monic, inter-reduced, sorted by leading monomial).
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    field: PrimeField,
    nvars: usize,
    generators: Vec<Poly>,
    degree_bound: u32,
    complete: bool,
}

impl GroebnerBasis {
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Largest total degree met during completion.
    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// False when the degree cap stopped the completion early. The
    /// generators still lie in the ideal, but may not form a basis.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| g.leading_monomial()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading_monomials().iter().any(|m| m.degree() == 0)
    }

    /// SHA-256 of the generators in text form, one per line.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for g in &self.generators {
            h.update(g.to_text().as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}

/// Converts polynomials over a prime field to the concrete `PrimeField` type.
fn to_prime<F: Field>(gens: &[MultiPoly<F>]) -> Result<(PrimeField, usize, Vec<Poly>)> {
    let first = gens.first().ok_or_else(|| Error::DimensionMismatch("no generators".into()))?;
    let field = match first.field().spec() {
        FieldSpec::Prime { p } => PrimeField::new(p)?,
        other => return Err(Error::UnsupportedField(other.to_string())),
    };
    let nvars = first.nvars();
    let src = first.field().clone();
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        if g.field() != &src || g.nvars() != nvars {
            return Err(Error::FieldMismatch);
        }
        out.push(g.map_field(&field, |c| field.from_bigint(&src.to_bigint(c).expect("prime field elements are integers"))));
    }
    Ok((field, nvars, out))
}

pub fn buchberger<F: Field>(gens: &[MultiPoly<F>]) -> Result<GroebnerBasis> {
    buchberger_with(gens, &BuchbergerOptions::default())
}

pub fn buchberger_with<F: Field>(gens: &[MultiPoly<F>], options: &BuchbergerOptions) -> Result<GroebnerBasis> {
    let (field, nvars, polys) = to_prime(gens)?;
    let mut run = Completion { field, nvars, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), degree_bound: 0 };
    for g in polys {
        if g.is_zero() {
            continue;
        }
        let g = g.make_monic();
        run.degree_bound = run.degree_bound.max(g.total_degree().unwrap_or(0));
        run.insert(g);
    }
    let complete = run.complete(options.degree_cap);
    Ok(run.finish(complete))
}

struct Pair {
    lcm: Monomial,
    a: usize,
    b: usize,
}

struct Completion {
    field: PrimeField,
    nvars: usize,
    polys: Vec<Poly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    degree_bound: u32,
}

impl Completion {
    fn lead(&self, k: usize) -> Monomial {
        self.polys[k].leading_monomial().expect("stored polynomials are nonzero")
    }

    fn reducers(&self) -> Vec<&Poly> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }

    /// Gebauer-Möller update: adds `h` to the basis and prunes pairs with
    /// the product and chain criteria.
    fn insert(&mut self, h: Poly) {
        let lh = h.leading_monomial().expect("nonzero");
        let hk = self.polys.len();
        let candidates: Vec<(usize, Monomial)> =
            (0..hk).filter(|&g| self.active[g]).map(|g| (g, self.lead(g).lcm(&lh))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in candidates.iter().enumerate() {
            let coprime = self.lead(*g).is_coprime(&lh);
            let dominated = candidates[k + 1..].iter().chain(kept.iter()).any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, *l));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !self.lead(*g).is_coprime(&lh))
            .map(|(g, lcm)| Pair { lcm, a: g, b: hk })
            .collect();
        let leads: Vec<Monomial> = (0..hk).map(|k| self.lead(k)).collect();
        self.pairs.retain(|p| {
            !lh.divides(&p.lcm) || leads[p.a].lcm(&lh) == p.lcm || leads[p.b].lcm(&lh) == p.lcm
        });
        self.pairs.extend(fresh);
        for g in 0..hk {
            if self.active[g] && lh.divides(&leads[g]) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    /// Runs pair processing to completion; returns false if the cap stopped it.
    fn complete(&mut self, degree_cap: u32) -> bool {
        while !self.pairs.is_empty() {
            if self.polys.iter().zip(&self.active).any(|(p, &a)| a && p.total_degree() == Some(0)) {
                self.pairs.clear();
                break;
            }
            // Normal selection: smallest lcm first, ties by index.
            let pick = (0..self.pairs.len())
                .min_by(|&i, &j| {
                    let (p, q) = (&self.pairs[i], &self.pairs[j]);
                    p.lcm.cmp(&q.lcm).then(p.a.cmp(&q.a)).then(p.b.cmp(&q.b))
                })
                .expect("nonempty");
            let pair = self.pairs.swap_remove(pick);
            if pair.lcm.degree() > degree_cap {
                return false;
            }
            self.degree_bound = self.degree_bound.max(pair.lcm.degree());
            let (fa, fb) = (&self.polys[pair.a], &self.polys[pair.b]);
            let one = self.field.one();
            let s = fa
                .mul_term(&self.lead(pair.a).quotient_of(&pair.lcm), &one)
                .sub_mul_term(&self.lead(pair.b).quotient_of(&pair.lcm), &one, fb);
            let h = reduce(s, &self.reducers());
            if !h.is_zero() {
                self.insert(h.make_monic());
            }
        }
        true
    }

    fn finish(self, complete: bool) -> GroebnerBasis {
        let mut minimal: Vec<Poly> = Vec::new();
        let active: Vec<Poly> = self.polys.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        for (k, g) in active.iter().enumerate() {
            let lg = g.leading_monomial().expect("nonzero");
            let redundant = active.iter().enumerate().any(|(j, other)| {
                let lo = other.leading_monomial().expect("nonzero");
                j != k && lo.divides(&lg) && (lo != lg || j < k)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut reduced: Vec<Poly> = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<&Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
            reduced.push(reduce(minimal[k].clone(), &others).make_monic());
        }
        reduced.sort_by_key(|a| a.leading_monomial());
        GroebnerBasis { field: self.field, nvars: self.nvars, generators: reduced, degree_bound: self.degree_bound, complete }
    }
}

/// Full reduction of `f` by `divisors`.
fn reduce(mut f: Poly, divisors: &[&Poly]) -> Poly {
    let field = *f.field();
    let nvars = f.nvars();
    let mut rem = Vec::new();
    while let Some((m, c)) = f.leading_term().cloned() {
        let divisor = divisors.iter().find(|g| g.leading_monomial().is_some_and(|l| l.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero");
                let q = field.div(&c, lc).expect("leading coefficient is nonzero");
                f = f.sub_mul_term(&lm.quotient_of(&m), &q, g);
            }
            None => {
                f.pop_leading();
                rem.push((m, c));
            }
        }
    }
    MultiPoly::from_sorted_terms(&field, nvars, rem)
}

/// Remainder of `f` on division by the basis; zero iff `f` lies in the ideal
/// (for a complete basis).
pub fn normal_form<F: Field>(f: &MultiPoly<F>, basis: &GroebnerBasis) -> Result<Poly> {
    let (field, nvars, mut v) = to_prime(std::slice::from_ref(f))?;
    if field != basis.field || nvars != basis.nvars {
        return Err(Error::FieldMismatch);
    }
    let divisors: Vec<&Poly> = basis.generators.iter().collect();
    Ok(reduce(v.pop().expect("one polynomial"), &divisors))
}

/// A point given by the integer encodings of its coordinates in `field`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointWitness {
    pub field: FieldSpec,
    pub coords: Vec<i64>,
}

/// Proof data for an empty projective zero locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmptinessProof {
    /// For each variable `i`, the exponent `N` of the pure power `x_i^N`
    /// among the leading monomials.
    pub leading_pure_powers: Vec<u32>,
    /// For each variable, the smallest `N` with `normal_form(x_i^N) = 0`,
    /// when found below the degree cap.
    pub membership_witnesses: Vec<Option<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty(EmptinessProof),
    NonemptyWitnessed(PointWitness),
    Undecided,
}

impl fmt::Display for Emptiness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Emptiness::Empty(_) => "empty",
            Emptiness::NonemptyWitnessed(_) => "nonempty_witnessed",
            Emptiness::Undecided => "undecided",
        })
    }
}

pub fn projective_emptiness(basis: &GroebnerBasis) -> Result<Emptiness> {
    if basis.generators.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NonHomogeneousInput);
    }
    let d = basis.nvars;
    let leads = basis.leading_monomials();
    let pure: Vec<Option<u32>> = (0..d)
        .map(|i| {
            leads
                .iter()
                .filter(|m| m.degree() == 0 || m.pure_power_var() == Some(i))
                .map(|m| m.degree())
                .min()
        })
        .collect();
    if pure.iter().all(Option::is_some) {
        let leading_pure_powers: Vec<u32> = pure.into_iter().map(Option::unwrap).collect();
        let membership_witnesses = leading_pure_powers
            .iter()
            .enumerate()
            .map(|(i, &start)| {
                (start..=DEFAULT_DEGREE_CAP.max(start)).find(|&n| {
                    let power = MultiPoly::monomial(&basis.field, d, Monomial::var_pow(i, n), basis.field.one());
                    normal_form(&power, basis).expect("same ring").is_zero()
                })
            })
            .collect();
        return Ok(Emptiness::Empty(EmptinessProof { leading_pure_powers, membership_witnesses }));
    }
    Ok(match find_common_zero(basis.generators(), &basis.field, d) {
        Some(w) => Emptiness::NonemptyWitnessed(w),
        None => Emptiness::Undecided,
    })
}

/// Exhaustive search for a common projective zero over `F_{p^e}`, `e <= 3`.
pub fn find_common_zero(gens: &[Poly], field: &PrimeField, d: usize) -> Option<PointWitness> {
    let p = field.p();
    for e in 1..=MAX_SEARCH_DEGREE {
        let Some(q) = p.checked_pow(e) else { break };
        match projective_point_count(q, d) {
            Some(count) if count <= SEARCH_LIMIT => {}
            _ => break,
        }
        let found = if e == 1 {
            search(gens, field)
        } else {
            let ext = ExtField::new(p, e).ok()?;
            let lifted: Vec<MultiPoly<ExtField>> = gens.iter().map(|g| g.map_field(&ext, |&c| ext.embed(c))).collect();
            search(&lifted, &ext)
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

fn search<F: Field>(gens: &[MultiPoly<F>], field: &F) -> Option<PointWitness> {
    let d = gens.first()?.nvars();
    let q = field.order()?;
    let count = projective_point_count(q, d)?;
    (0..count).map(|k| projective_point_at(field, d, k)).find_map(|x| {
        let zero = gens.iter().all(|g| g.evaluate(&x).map(|v| field.is_zero(&v)).unwrap_or(false));
        zero.then(|| PointWitness {
            field: field.spec(),
            coords: x.iter().map(|c| i64::try_from(field.to_bigint(c).expect("finite field")).expect("small")).collect(),
        })
    })
}
