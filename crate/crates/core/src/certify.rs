//! Constant-rank certification.
//!
//! Three stages, each optional on the previous one succeeding:
//!
//! 1. every principal `(r+2)`-sub-Pfaffian vanishes identically, so the rank
//!    is at most `r` everywhere;
//! 2. the rank is exactly `r` at `N` seeded random points;
//! 3. (exact mode) the size-`r` principal sub-Pfaffians have no common
//!    projective zero over the algebraic closure of `F_p`, so the rank is at
//!    least `r` everywhere.
//!
//! Rational inputs are certified through their reduction mod `p`: the
//! sub-Pfaffian locus is a projective scheme over the integers, and a fibre
//! that is empty mod `p` forces the generic fibre to be empty too.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groebner::{self, BuchbergerOptions, Emptiness, PointWitness, DEFAULT_DEGREE_CAP};
use crate::io::{canonical_json, AnyLinearMatrix, MatrixFile};
use crate::pfaffian::SubPfaffians;
use crate::polymat::{projective_point_at, projective_point_count, LinearMatrix};
use crate::scalars::{AnyField, ExtField, Field, FieldSpec, PrimeField};

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 2024;
/// Prime used to reduce rational inputs when none is given.
pub const DEFAULT_RATIONAL_PRIME: u64 = 101;
/// Finite fields smaller than this are extended before sampling.
pub const MIN_SAMPLE_FIELD_ORDER: u64 = 100;
/// Exhaustive sweeps refuse to visit more points than this.
pub const SWEEP_LIMIT: u64 = 10_000_000;
const CHUNK: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub samples: usize,
    /// Prime for the exact stage; must equal `p` for inputs over `F_p`.
    pub prime: Option<u64>,
    pub exact: bool,
    pub seed: u64,
    pub degree_cap: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { samples: DEFAULT_SAMPLES, prime: None, exact: false, seed: DEFAULT_SEED, degree_cap: DEFAULT_DEGREE_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    EvidenceOnly,
    Refuted,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::EvidenceOnly => "evidence_only",
            Verdict::Refuted => "refuted",
        }
    }
}

/// All principal sub-Pfaffians of size `subpfaffian_size` vanish identically.
/// `checked = 0` means the size exceeds the matrix and the bound is vacuous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundProof {
    pub subpfaffian_size: usize,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEvidence {
    pub field: FieldSpec,
    pub requested: usize,
    pub tested: usize,
    pub failures: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundProof {
    pub prime: u64,
    pub subpfaffian_size: usize,
    pub generators: usize,
    pub basis_size: usize,
    pub basis_digest: String,
    pub degree_bound: u32,
    pub complete: bool,
    pub leading_monomials: Vec<String>,
    pub leading_pure_powers: Vec<u32>,
    pub membership_witnesses: Vec<Option<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Symbolic,
    Sampling,
    Exact,
}

/// A point where the rank differs from the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWitness {
    pub stage: Stage,
    pub point: PointWitness,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactOutcome {
    pub prime: u64,
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub matrix_id: String,
    pub field: FieldSpec,
    pub n: usize,
    pub d: usize,
    pub claimed_rank: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<UpperBoundProof>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<SampleEvidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<LowerBoundProof>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<RankWitness>,
}

impl RankCertificate {
    pub fn to_json(&self) -> String {
        let mut s = canonical_json(&serde_json::to_value(self).expect("certificates serialize"));
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Content hash of a matrix: SHA-256 of its canonical interchange form, or
/// of the formatted entries when some entry is not integral.
pub fn matrix_id<F: Field>(a: &LinearMatrix<F>) -> String {
    match MatrixFile::from_matrix(a) {
        Ok(file) => file.content_hash(),
        Err(_) => {
            let f = a.field();
            let mut h = Sha256::new();
            h.update(f.spec().to_string().as_bytes());
            for c in a.coeffs() {
                for row in c.to_rows() {
                    for x in row {
                        h.update(f.format(&x).as_bytes());
                        h.update(b",");
                    }
                }
            }
            hex::encode(h.finalize())
        }
    }
}

/// Smallest `e` with `p^e >= MIN_SAMPLE_FIELD_ORDER`.
pub fn sampling_degree(p: u64) -> u32 {
    let mut e = 1;
    let mut q = p;
    while q < MIN_SAMPLE_FIELD_ORDER {
        q *= p;
        e += 1;
    }
    e
}

struct ExactInput {
    matrix: LinearMatrix<PrimeField>,
    /// A common zero mod `p` disproves the claim (true over `F_p`, false for
    /// reductions of rational inputs).
    zero_refutes: bool,
}

pub fn certify_constant_rank<F: Field>(a: &LinearMatrix<F>, r: usize, options: &CertifyOptions) -> Result<RankCertificate> {
    if !a.is_skew() {
        return Err(Error::NotSkew);
    }
    if r % 2 == 1 {
        return Err(Error::OddRankRequested(r));
    }
    match AnyLinearMatrix::from_typed(a)? {
        AnyLinearMatrix::Prime(m) => {
            let p = m.field().p();
            if let Some(q) = options.prime {
                if q != p {
                    return Err(Error::InvalidField(format!("matrix is over F_{p}, exact prime {q} requested")));
                }
            }
            let exact = options.exact.then(|| ExactInput { matrix: m.clone(), zero_refutes: true });
            let e = sampling_degree(p);
            if e == 1 {
                run(&m, &m, r, options, exact)
            } else {
                let lifted = m.lift(&ExtField::new(p, e)?)?;
                run(&m, &lifted, r, options, exact)
            }
        }
        AnyLinearMatrix::Extension(m) => {
            if options.exact {
                return Err(Error::UnsupportedField(m.field().spec().to_string()));
            }
            run(&m, &m, r, options, None)
        }
        AnyLinearMatrix::Rational(m) => {
            let exact = if options.exact {
                let field = PrimeField::new(options.prime.unwrap_or(DEFAULT_RATIONAL_PRIME))?;
                Some(ExactInput { matrix: m.reduce_mod(&field)?, zero_refutes: false })
            } else {
                None
            };
            run(&m, &m, r, options, exact)
        }
    }
}

fn witness_of<S: Field>(field: &S, x: &[S::Elem]) -> PointWitness {
    PointWitness {
        field: field.spec(),
        coords: x
            .iter()
            .map(|c| {
                let v = field.to_bigint(c).expect("sample coordinates are integers");
                i64::try_from(v).expect("sample coordinates fit in i64")
            })
            .collect(),
    }
}

/// First seeded sample (in index order) whose rank fails `ok`, if any.
/// Sample `k` is drawn from stream `k / CHUNK + 1` of the root seed, so the
/// outcome is independent of thread scheduling.
fn first_violation<S: Field>(
    m: &LinearMatrix<S>,
    count: usize,
    seed: u64,
    ok: impl Fn(usize) -> bool + Sync,
) -> Option<(usize, Vec<S::Elem>, usize)> {
    let chunks = count.div_ceil(CHUNK);
    (0..chunks).into_par_iter().find_map_first(|c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64 + 1);
        let end = ((c + 1) * CHUNK).min(count);
        (c * CHUNK..end).find_map(|k| {
            let x = m.random_point(&mut rng);
            let rank = m.rank_at(&x).expect("point matches matrix");
            (!ok(rank)).then_some((k, x, rank))
        })
    })
}

fn run<F: Field, S: Field>(
    a: &LinearMatrix<F>,
    sampled: &LinearMatrix<S>,
    r: usize,
    options: &CertifyOptions,
    exact: Option<ExactInput>,
) -> Result<RankCertificate> {
    let n = a.n();
    let mut cert = RankCertificate {
        matrix_id: matrix_id(a),
        field: a.field().spec(),
        n,
        d: a.d(),
        claimed_rank: r,
        verdict: Verdict::EvidenceOnly,
        upper_bound: None,
        samples: None,
        exact: None,
        lower_bound: None,
        witness: None,
    };

    let size = r + 2;
    let checked = if size <= n {
        let system = SubPfaffians::new(a)?.system(size)?;
        if !system.all_zero() {
            cert.verdict = Verdict::Refuted;
            let tries = options.samples.max(DEFAULT_SAMPLES);
            cert.witness = first_violation(sampled, tries, options.seed, |rank| rank <= r).map(|(_, x, rank)| {
                RankWitness { stage: Stage::Symbolic, point: witness_of(sampled.field(), &x), rank }
            });
            return Ok(cert);
        }
        system.polys.len()
    } else {
        0
    };
    cert.upper_bound = Some(UpperBoundProof { subpfaffian_size: size, checked });

    let violation = first_violation(sampled, options.samples, options.seed, |rank| rank == r);
    cert.samples = Some(SampleEvidence {
        field: sampled.field().spec(),
        requested: options.samples,
        tested: violation.as_ref().map_or(options.samples, |(k, _, _)| k + 1),
        failures: usize::from(violation.is_some()),
        seed: options.seed,
    });
    if let Some((_, x, rank)) = violation {
        cert.verdict = Verdict::Refuted;
        cert.witness = Some(RankWitness { stage: Stage::Sampling, point: witness_of(sampled.field(), &x), rank });
        return Ok(cert);
    }

    let Some(exact) = exact else { return Ok(cert) };
    let pm = &exact.matrix;
    let prime = pm.field().p();
    if r > n {
        return Err(Error::OutOfRange(format!("rank {r} exceeds matrix size {n}")));
    }
    let generators = SubPfaffians::new(pm)?.system(r)?.polys;
    let basis = groebner::buchberger_with(&generators, &BuchbergerOptions { degree_cap: options.degree_cap })?;
    match groebner::projective_emptiness(&basis)? {
        Emptiness::Empty(proof) => {
            cert.exact = Some(ExactOutcome { prime, result: "empty".into(), point: None });
            cert.lower_bound = Some(LowerBoundProof {
                prime,
                subpfaffian_size: r,
                generators: generators.len(),
                basis_size: basis.generators().len(),
                basis_digest: basis.digest(),
                degree_bound: basis.degree_bound(),
                complete: basis.is_complete(),
                leading_monomials: basis.leading_monomials().iter().map(|m| m.format(basis.nvars())).collect(),
                leading_pure_powers: proof.leading_pure_powers,
                membership_witnesses: proof.membership_witnesses,
            });
            cert.verdict = Verdict::Certified;
        }
        Emptiness::NonemptyWitnessed(point) => {
            cert.exact = Some(ExactOutcome { prime, result: "nonempty_witnessed".into(), point: Some(point.clone()) });
            if exact.zero_refutes {
                let rank = rank_at_witness(&AnyLinearMatrix::Prime(pm.clone()), &point)?;
                cert.verdict = Verdict::Refuted;
                cert.witness = Some(RankWitness { stage: Stage::Exact, point, rank });
            }
        }
        Emptiness::Undecided => {
            cert.exact = Some(ExactOutcome { prime, result: "undecided".into(), point: None });
        }
    }
    Ok(cert)
}

/// Rank of a matrix at a recorded point. Rational matrices are reduced when
/// the point lives over a finite field.
pub fn rank_at_witness(m: &AnyLinearMatrix, w: &PointWitness) -> Result<usize> {
    let target = AnyField::from_spec(&w.field)?;
    let prime_of = |m: &AnyLinearMatrix| -> Result<LinearMatrix<PrimeField>> {
        match (m, &w.field) {
            (AnyLinearMatrix::Prime(m), FieldSpec::Prime { p } | FieldSpec::Extension { p, .. }) if m.field().p() == *p => {
                Ok(m.clone())
            }
            (AnyLinearMatrix::Rational(m), FieldSpec::Prime { p } | FieldSpec::Extension { p, .. }) => {
                m.reduce_mod(&PrimeField::new(*p)?)
            }
            _ => Err(Error::FieldMismatch),
        }
    };
    match target {
        AnyField::Rational(q) => match m {
            AnyLinearMatrix::Rational(m) => m.rank_at(&w.coords.iter().map(|&c| q.from_i64(c)).collect::<Vec<_>>()),
            _ => Err(Error::FieldMismatch),
        },
        AnyField::Prime(f) => {
            let pm = prime_of(m)?;
            pm.rank_at(&w.coords.iter().map(|&c| f.from_i64(c)).collect::<Vec<_>>())
        }
        AnyField::Extension(ext) => {
            let coords: Vec<u32> = w
                .coords
                .iter()
                .map(|&c| u32::try_from(c).ok().filter(|&c| (c as u64) < ext.order().unwrap()))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse("extension coordinate out of range".into()))?;
            match m {
                AnyLinearMatrix::Extension(m) if *m.field() == ext => m.rank_at(&coords),
                AnyLinearMatrix::Extension(_) => Err(Error::FieldMismatch),
                other => prime_of(other)?.lift(&ext)?.rank_at(&coords),
            }
        }
    }
}

/// Re-checks a certificate against its matrix: the content hash, the rank at
/// the recorded witness, and the Gröbner digest and pure-power memberships.
pub fn replay<F: Field>(a: &LinearMatrix<F>, cert: &RankCertificate) -> Result<bool> {
    if matrix_id(a) != cert.matrix_id {
        return Ok(false);
    }
    let any = AnyLinearMatrix::from_typed(a)?;
    if let Some(w) = &cert.witness {
        let rank = rank_at_witness(&any, &w.point)?;
        if rank != w.rank || rank == cert.claimed_rank {
            return Ok(false);
        }
    }
    if let Some(lb) = &cert.lower_bound {
        let field = PrimeField::new(lb.prime)?;
        let pm = match &any {
            AnyLinearMatrix::Prime(m) => m.clone(),
            AnyLinearMatrix::Rational(m) => m.reduce_mod(&field)?,
            AnyLinearMatrix::Extension(_) => return Ok(false),
        };
        let generators = SubPfaffians::new(&pm)?.system(lb.subpfaffian_size)?.polys;
        let basis = groebner::buchberger(&generators)?;
        if basis.digest() != lb.basis_digest {
            return Ok(false);
        }
        for (i, n) in lb.membership_witnesses.iter().enumerate() {
            if let Some(n) = n {
                let power = crate::poly::MultiPoly::monomial(
                    &field,
                    pm.d(),
                    crate::poly::Monomial::var_pow(i, *n),
                    field.one(),
                );
                if !groebner::normal_form(&power, &basis)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(match cert.verdict {
        Verdict::Certified => cert.upper_bound.is_some() && cert.lower_bound.is_some(),
        Verdict::Refuted => cert.witness.is_some() || cert.upper_bound.is_none(),
        Verdict::EvidenceOnly => cert.lower_bound.is_none(),
    })
}

/// Rank histogram over every point of `P^{d-1}(F_{p^e})`.
pub fn exhaustive_rank_sweep<F: Field>(a: &LinearMatrix<F>, e: u32) -> Result<BTreeMap<usize, u64>> {
    let m = match AnyLinearMatrix::from_typed(a)? {
        AnyLinearMatrix::Prime(m) => m,
        other => return Err(Error::UnsupportedField(other.field_spec().to_string())),
    };
    let p = m.field().p();
    let q = p.checked_pow(e).ok_or_else(|| Error::TooLarge(format!("F_{p}^{e}")))?;
    match projective_point_count(q, m.d()) {
        Some(c) if c <= SWEEP_LIMIT => {}
        _ => return Err(Error::TooLarge(format!("P^{}(F_{q}) has more than {SWEEP_LIMIT} points", m.d() - 1))),
    }
    if e == 1 {
        Ok(sweep(&m))
    } else {
        Ok(sweep(&m.lift(&ExtField::new(p, e)?)?))
    }
}

fn sweep<S: Field>(m: &LinearMatrix<S>) -> BTreeMap<usize, u64> {
    let q = m.field().order().expect("finite field");
    let count = projective_point_count(q, m.d()).expect("checked by caller");
    (0..count)
        .into_par_iter()
        .fold(BTreeMap::new, |mut hist, k| {
            let x = projective_point_at(m.field(), m.d(), k);
            *hist.entry(m.rank_at(&x).expect("point matches matrix")).or_insert(0) += 1;
            hist
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (rank, c) in b {
                *a.entry(rank).or_insert(0) += c;
            }
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::Mat;
    use crate::scalars::Rationals;

    fn quick(exact: bool, prime: Option<u64>) -> CertifyOptions {
        CertifyOptions { samples: 200, prime, exact, ..Default::default() }
    }

    #[test]
    fn sampling_degrees() {
        assert_eq!(sampling_degree(7), 3);
        assert_eq!(sampling_degree(11), 2);
        assert_eq!(sampling_degree(101), 1);
    }

    #[test]
    fn westwick_certifies() {
        let w = corpus::westwick10();
        let cert = certify_constant_rank(&w, 8, &quick(true, Some(101))).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        let lb = cert.lower_bound.as_ref().unwrap();
        assert_eq!(lb.generators, 45);
        assert_eq!(lb.leading_pure_powers.len(), 4);
        assert_eq!(cert.samples.as_ref().unwrap().failures, 0);
        assert!(replay(&w, &cert).unwrap());
        let again = RankCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(again, cert);
    }

    #[test]
    fn westwick_rank_ten_is_refuted() {
        let w = corpus::westwick10();
        let cert = certify_constant_rank(&w, 10, &quick(false, None)).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        let wit = cert.witness.as_ref().unwrap();
        assert_eq!(wit.stage, Stage::Sampling);
        assert_eq!(wit.rank, 8);
        assert_eq!(cert.upper_bound.as_ref().unwrap().checked, 0);
        assert!(replay(&w, &cert).unwrap());
    }

    #[test]
    fn westwick_rank_six_fails_symbolically() {
        let w = corpus::westwick10();
        let cert = certify_constant_rank(&w, 6, &quick(false, None)).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert!(cert.upper_bound.is_none());
        assert_eq!(cert.witness.as_ref().unwrap().stage, Stage::Symbolic);
        assert_eq!(cert.witness.as_ref().unwrap().rank, 8);
    }

    #[test]
    fn appendix_certifies() {
        let a = corpus::appendix14();
        let cert = certify_constant_rank(&a, 12, &quick(true, None)).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert_eq!(cert.lower_bound.as_ref().unwrap().generators, 91);
        assert!(matches!(cert.samples.as_ref().unwrap().field, FieldSpec::Extension { p: 7, e: 3, .. }));
        assert!(replay(&a, &cert).unwrap());
    }

    #[test]
    fn without_exact_stage_only_evidence() {
        let a = corpus::appendix14();
        let cert = certify_constant_rank(&a, 12, &quick(false, None)).unwrap();
        assert_eq!(cert.verdict, Verdict::EvidenceOnly);
    }

    #[test]
    fn degenerate_pencil_is_refuted_exactly() {
        // x0*E12 + x1*E34 in 2 variables: rank 4 generically, 2 on the axes.
        let f = PrimeField::new(101).unwrap();
        let mut a0 = Mat::zeros(&f, 4, 4);
        a0.set(0, 1, f.one());
        a0.set(1, 0, f.from_i64(-1));
        let mut a1 = Mat::zeros(&f, 4, 4);
        a1.set(2, 3, f.one());
        a1.set(3, 2, f.from_i64(-1));
        let a = LinearMatrix::new(&f, vec![a0, a1]).unwrap();
        let opts = CertifyOptions { samples: 0, exact: true, ..Default::default() };
        let cert = certify_constant_rank(&a, 4, &opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        let w = cert.witness.as_ref().unwrap();
        assert_eq!(w.stage, Stage::Exact);
        assert_eq!(w.rank, 2);
        assert!(replay(&a, &cert).unwrap());
    }

    #[test]
    fn errors() {
        let w = corpus::westwick10();
        assert_eq!(certify_constant_rank(&w, 7, &quick(false, None)), Err(Error::OddRankRequested(7)));
        let q = Rationals;
        let sym = LinearMatrix::new(&q, vec![Mat::from_i64(&q, &[vec![0, 1], vec![1, 0]]).unwrap()]).unwrap();
        assert_eq!(certify_constant_rank(&sym, 2, &quick(false, None)), Err(Error::NotSkew));
        let a = corpus::appendix14();
        assert!(matches!(certify_constant_rank(&a, 12, &quick(true, Some(101))), Err(Error::InvalidField(_))));
        let ext = a.lift(&ExtField::new(7, 2).unwrap()).unwrap();
        assert!(matches!(certify_constant_rank(&ext, 12, &quick(true, None)), Err(Error::UnsupportedField(_))));
        assert_eq!(certify_constant_rank(&ext, 12, &quick(false, None)).unwrap().verdict, Verdict::EvidenceOnly);
    }

    #[test]
    fn sweeps() {
        let a = corpus::appendix14();
        assert_eq!(exhaustive_rank_sweep(&a, 1).unwrap(), BTreeMap::from([(12, 400)]));
        let w = corpus::westwick10().reduce_mod(&PrimeField::new(7).unwrap()).unwrap();
        assert_eq!(exhaustive_rank_sweep(&w, 1).unwrap(), BTreeMap::from([(8, 400)]));
        let z = LinearMatrix::zero(&PrimeField::new(7).unwrap(), 6, 4).unwrap();
        assert_eq!(exhaustive_rank_sweep(&z, 1).unwrap(), BTreeMap::from([(0, 400)]));
        assert!(matches!(exhaustive_rank_sweep(&a, 3), Err(Error::TooLarge(_))));
        assert!(matches!(exhaustive_rank_sweep(&corpus::westwick10(), 1), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn sampling_is_deterministic() {
        let w = corpus::westwick10();
        let a = certify_constant_rank(&w, 10, &quick(false, None)).unwrap();
        let b = certify_constant_rank(&w, 10, &quick(false, None)).unwrap();
        assert_eq!(a, b);
    }
}
