//! End-to-end acceptance checks on the two bundled matrices and the
//! numerology tables. Prints one pass/fail line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewrank::certify::{certify_constant_rank, exhaustive_rank_sweep, CertifyOptions, Verdict};
use skewrank::groebner::{buchberger, projective_emptiness, Emptiness};
use skewrank::linalg::Mat;
use skewrank::lines::{jumping_order, line_profile, Line};
use skewrank::numerology::*;
use skewrank::pfaffian::principal_subpfaffians;
use skewrank::polymat::LinearMatrix;
use skewrank::scalars::{ExtField, Field, PrimeField, Rationals};
use skewrank::skewsym::{skew_solution_space, skew_symmetrize, DEFAULT_MAX_RETRIES};
use skewrank::{corpus, Error};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn exact_options(prime: Option<u64>, samples: usize, seed: u64) -> CertifyOptions {
    CertifyOptions { samples, prime, exact: true, seed, ..CertifyOptions::default() }
}

/// Independent emptiness check: reduce, take the size-`r` sub-Pfaffians and
/// run the Groebner test directly.
fn subpfaffian_locus_empty(a: &LinearMatrix<PrimeField>, r: usize, generators: usize) -> Check {
    let system = lib(principal_subpfaffians(a, r))?;
    ensure!(system.polys.len() == generators, "expected {generators} sub-Pfaffians, got {}", system.polys.len());
    ensure!(system.polys.iter().all(|p| p.is_zero() || p.total_degree() == Some((r / 2) as u32)), "sub-Pfaffians not of degree {}", r / 2);
    let basis = lib(buchberger(&system.polys))?;
    let emptiness = lib(projective_emptiness(&basis))?;
    ensure!(matches!(emptiness, Emptiness::Empty(_)), "locus over F_{} is {emptiness}", a.field().characteristic());
    Ok(())
}

fn westwick_reproduction() -> Check {
    let any = lib(corpus::load("westwick10"))?;
    ensure!(any.n() == 10 && any.d() == 4 && any.is_skew(), "westwick10 is not a skew 10x10 pencil in 4 variables");
    let w = corpus::westwick10();
    ensure!(lib(principal_subpfaffians(&w, 10))?.all_zero(), "Pf10 does not vanish");

    let sampled = lib(certify_constant_rank(&w, 8, &CertifyOptions { samples: 1000, ..CertifyOptions::default() }))?;
    let ev = sampled.samples.as_ref().ok_or("no sampling evidence")?;
    ensure!(ev.tested == 1000 && ev.failures == 0, "sampling: {} tested, {} failures", ev.tested, ev.failures);
    ensure!(sampled.verdict == Verdict::EvidenceOnly, "sampling-only verdict {:?}", sampled.verdict);

    for p in [101, 7] {
        let cert = lib(certify_constant_rank(&w, 8, &exact_options(Some(p), 100, 1)))?;
        ensure!(cert.verdict == Verdict::Certified, "exact over F_{p}: {:?}", cert.verdict);
        let lb = cert.lower_bound.as_ref().ok_or("no lower bound proof")?;
        ensure!(lb.generators == 45 && lb.complete, "F_{p}: {} generators, complete {}", lb.generators, lb.complete);
        subpfaffian_locus_empty(&lib(w.reduce_mod(&lib(PrimeField::new(p))?))?, 8, 45)?;
    }
    Ok(())
}

fn appendix_reproduction() -> Check {
    let a = corpus::appendix14();
    ensure!(a.n() == 14 && a.d() == 4 && a.is_skew() && a.field().characteristic() == 7, "appendix14 shape");
    ensure!(lib(principal_subpfaffians(&a, 14))?.all_zero(), "Pf14 does not vanish");

    let sweep = lib(exhaustive_rank_sweep(&a, 1))?;
    ensure!(sweep == BTreeMap::from([(12, 400)]), "sweep over P3(F_7): {sweep:?}");

    for e in [2, 3] {
        let ext = lib(ExtField::new(7, e))?;
        let lifted = lib(a.lift(&ext))?;
        let opts = CertifyOptions { samples: 1000, seed: 11 + e as u64, ..CertifyOptions::default() };
        let cert = lib(certify_constant_rank(&lifted, 12, &opts))?;
        let ev = cert.samples.as_ref().ok_or("no sampling evidence")?;
        ensure!(ev.tested >= 1000 && ev.failures == 0, "F_7^{e}: {} tested, {} failures", ev.tested, ev.failures);
    }

    let cert = lib(certify_constant_rank(&a, 12, &exact_options(None, 100, 1)))?;
    ensure!(cert.verdict == Verdict::Certified, "exact over F_7: {:?}", cert.verdict);
    let lb = cert.lower_bound.as_ref().ok_or("no lower bound proof")?;
    ensure!(lb.generators == 91, "{} generators", lb.generators);
    subpfaffian_locus_empty(&a, 12, 91)
}

fn jumping_lines() -> Check {
    let w = corpus::westwick10();
    let q = Rationals;
    let profile = |line: &Line<Rationals>| lib(line_profile(&w, line)).map(|p| p.indices);
    let quadric = |x: &[num_rational::BigRational]| &x[0] * &x[3] - &x[1] * &x[2];

    let mut tested = vec![];
    for alpha in [0, 1, 2, 3, -1] {
        let line = lib(Line::from_i64(&q, &[1, 0, alpha, 0], &[0, 1, 0, alpha]))?;
        ensure!(profile(&line)? == vec![0, 4], "alpha = {alpha}: {:?}", profile(&line)?);
        tested.push(line);
    }
    for (p, r) in [([0, 1, 0, 0], [0, 0, 0, 1]), ([1, 0, 0, 0], [0, 0, 1, 0])] {
        let line = lib(Line::from_i64(&q, &p, &r))?;
        ensure!(profile(&line)? == vec![1, 3], "line {p:?} {r:?}: {:?}", profile(&line)?);
        tested.push(line);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let line = Line::random(&q, 4, &mut rng);
        ensure!(profile(&line)? == vec![2, 2], "random line: {:?}", profile(&line)?);
        tested.push(line);
    }

    let mut two_jumping = 0;
    for line in &tested {
        if lib(jumping_order(&w, line))? == 2 {
            two_jumping += 1;
            for (s, t) in [(1, 0), (0, 1), (1, 1), (2, -3), (-5, 7)] {
                let x = line.point_at(&q.from_i64(s), &q.from_i64(t));
                ensure!(q.is_zero(&quadric(&x)), "2-jumping line point off the quadric");
            }
        }
    }
    ensure!(two_jumping == 5, "{two_jumping} two-jumping lines among those tested");
    Ok(())
}

fn numerology_suite() -> Check {
    ensure!(allowed_ranks(24) == vec![8, 12, 20, 24], "allowed ranks {:?}", allowed_ranks(24));
    let charges: Vec<i64> = [8, 12, 20, 24].into_iter().map(charge).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure!(charges == vec![2, 4, 10, 14], "charges {charges:?}");
    for r in allowed_ranks(120) {
        ensure!(lib(cone_middle_rank(r))? == r + 2, "cone middle rank at r = {r}");
        // Oracle: k = r(r+4)/48 must be an integer exactly for these r.
        ensure!(r * (r + 4) % 48 == 0, "r = {r} has fractional charge");
    }
    ensure!(chi_sym2(10, -11) == 0, "chi(S2E(-11)) at k = 10 is {}", chi_sym2(10, -11));
    ensure!(chi_sym2(14, -13) < 0, "chi(S2E(-13)) at k = 14 is {}", chi_sym2(14, -13));
    let h2: Vec<i64> = (-5..=-3).map(|t| natural_cohomology(4, t)[2]).collect();
    ensure!(h2 == vec![4, 6, 4], "h2 of E(t), k = 4: {h2:?}");

    for (r, abc) in [(8, (4, 0, 6)), (12, (4, 0, 10)), (20, (2, 0, 20)), (24, (0, 0, 26)), (36, (0, 10, 48))] {
        let s = lib(resolution_shape(r))?;
        ensure!((s.a, s.b, s.c) == abc, "resolution shape at r = {r}: {s:?}");
    }
    for r in allowed_ranks(120) {
        let t = lib(expected_cone_table(r))?;
        let mut nonzero: Vec<((usize, usize), i64)> = vec![];
        for (p, row) in t.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    nonzero.push(((p, j), v));
                }
            }
        }
        ensure!(nonzero == vec![((0, 1), r + 2), ((0, 2), r + 2)], "cone table at r = {r}: {nonzero:?}");
    }
    for r in [8, 12, 20] {
        ensure!(lib(check_diamond_dims(r))?, "diamond dimension check fails at r = {r}");
    }
    Ok(())
}

fn random_invertible<F: Field>(field: &F, n: usize, rng: &mut ChaCha8Rng) -> Mat<F> {
    loop {
        let p = Mat::from_fn(field, n, n, |_, _| field.from_i64(rng.random_range(-3..=3)));
        if p.is_invertible() {
            return p;
        }
    }
}

/// `m` is a nonzero scalar multiple of `a`, coefficientwise.
fn is_scalar_multiple<F: Field>(m: &LinearMatrix<F>, a: &LinearMatrix<F>) -> bool {
    let f = a.field();
    let Some((k, i, j)) = (0..a.d())
        .flat_map(|k| (0..a.n()).flat_map(move |i| (0..a.n()).map(move |j| (k, i, j))))
        .find(|&(k, i, j)| !f.is_zero(a.coeff(k).get(i, j)))
    else {
        return false;
    };
    let Ok(c) = f.div(m.coeff(k).get(i, j), a.coeff(k).get(i, j)) else {
        return false;
    };
    !f.is_zero(&c) && (0..a.d()).all(|k| m.coeff(k) == &a.coeff(k).scale(&c))
}

fn skewify_trials<F: Field>(a: &LinearMatrix<F>, rank: usize, trials: usize, sample: impl Fn(&LinearMatrix<F>, u64) -> Check) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..trials {
        let p = random_invertible(a.field(), a.n(), &mut rng);
        let b = lib(a.left_multiply(&p))?;
        let s = lib(skew_symmetrize(&b, &mut rng, DEFAULT_MAX_RETRIES))?;
        ensure!(s.result.is_skew(), "trial {trial}: output not skew");
        ensure!(lib(b.left_multiply(&s.delta))? == s.result, "trial {trial}: output is not delta * B");
        ensure!(is_scalar_multiple(&s.result, a), "trial {trial}: output is not a multiple of the original");
        sample(&s.result, trial as u64).map_err(|e| format!("trial {trial}: rank {rank} fails: {e}"))?;
    }
    Ok(())
}

fn skew_symmetrization() -> Check {
    let a = corpus::appendix14();
    let ext = lib(ExtField::new(7, 3))?;
    skewify_trials(&a, 12, 50, |m, seed| {
        let lifted = lib(m.lift(&ext))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let x = lifted.random_point(&mut rng);
            if x.iter().all(|c| ext.is_zero(c)) {
                continue;
            }
            ensure!(lib(lifted.rank_at(&x))? == 12, "rank {} at a point of F_343", lib(lifted.rank_at(&x))?);
        }
        Ok(())
    })?;

    let w = corpus::westwick10();
    skewify_trials(&w, 8, 50, |m, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let x: Vec<_> = (0..4).map(|_| Rationals.from_i64(rng.random_range(-50..=50))).collect();
            if x.iter().all(|c| Rationals.is_zero(c)) {
                continue;
            }
            ensure!(lib(m.rank_at(&x))? == 8, "rank {} at {x:?}", lib(m.rank_at(&x))?);
        }
        Ok(())
    })?;

    // A skew input admits delta = identity.
    for space in [flatten(&lib(skew_solution_space(&a))?), flatten(&lib(skew_solution_space(&w))?)] {
        let (basis, field_rank) = space;
        ensure!(basis > 0 && field_rank == basis, "identity not in the solution space");
    }
    Ok(())
}

/// Rank of the solution basis alone and together with the identity.
fn flatten<F: Field>(basis: &[Mat<F>]) -> (usize, usize) {
    let f = basis[0].field();
    let n = basis[0].rows();
    let vec = |m: &Mat<F>| (0..n * n).map(|k| m.get(k / n, k % n).clone()).collect::<Vec<_>>();
    let mut rows: Vec<Vec<F::Elem>> = basis.iter().map(vec).collect();
    let r0 = Mat::from_rows(f, rows.clone()).expect("rectangular").rank();
    rows.push(vec(&Mat::identity(f, n)));
    (r0, Mat::from_rows(f, rows).expect("rectangular").rank())
}

fn profiles<F: Field>(a: &LinearMatrix<F>, lines: &[Line<F>]) -> Result<Vec<Vec<usize>>, String> {
    let mut out: Vec<Vec<usize>> = lines.iter().map(|l| lib(line_profile(a, l)).map(|p| p.indices)).collect::<Result<_, _>>()?;
    out.sort();
    Ok(out)
}

/// Line through `h^{-1} p` and `h^{-1} q`, the preimage of `line` under `x -> h x`.
fn pull_back<F: Field>(line: &Line<F>, h_inv: &Mat<F>) -> Result<Line<F>, String> {
    let [p, q] = line.points();
    lib(Line::new(h_inv.field(), lib(h_inv.mul_vec(p))?, lib(h_inv.mul_vec(q))?))
}

fn invariance_for<F: Field>(
    a: &LinearMatrix<F>,
    rank: usize,
    prime: Option<u64>,
    lines: &[Line<F>],
    draw: impl Fn(&mut ChaCha8Rng) -> F::Elem + Copy,
) -> Check {
    let f = a.field();
    let opts = exact_options(prime, 50, 9);
    let base_verdict = lib(certify_constant_rank(a, rank, &opts))?.verdict;
    ensure!(base_verdict == Verdict::Certified, "untransformed verdict {base_verdict:?}");
    let base_profiles = profiles(a, lines)?;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for trial in 0..20 {
        let g = Mat::random_special_linear(f, a.n(), &mut rng, draw);
        ensure!(lib(g.det())? == f.one(), "congruence transform not in SL");
        let congruent = lib(a.congruence_action(&g))?;
        let h = Mat::random_special_linear(f, a.d(), &mut rng, draw);
        let substituted = lib(a.variable_action(&h))?;
        let h_inv = lib(h.inverse())?;
        let pulled: Vec<Line<F>> = lines.iter().map(|l| pull_back(l, &h_inv)).collect::<Result<_, _>>()?;

        for (what, m, ls) in [("congruence", &congruent, lines), ("substitution", &substituted, &pulled[..])] {
            let verdict = lib(certify_constant_rank(m, rank, &opts))?.verdict;
            ensure!(verdict == base_verdict, "trial {trial} {what}: verdict {verdict:?}");
            ensure!(profiles(m, ls)? == base_profiles, "trial {trial} {what}: minimal indices changed");
        }
    }
    Ok(())
}

fn invariance() -> Check {
    let w = corpus::westwick10();
    let q = Rationals;
    let mut lines = vec![
        lib(Line::from_i64(&q, &[1, 0, 2, 0], &[0, 1, 0, 2]))?,
        lib(Line::from_i64(&q, &[0, 1, 0, 0], &[0, 0, 0, 1]))?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    lines.extend((0..3).map(|_| Line::random(&q, 4, &mut rng)));
    invariance_for(&w, 8, Some(101), &lines, |rng| q.from_i64(rng.random_range(-3..=3)))?;

    let a = corpus::appendix14();
    let f7 = *a.field();
    let lines: Vec<Line<PrimeField>> = (0..6).map(|_| Line::random(&f7, 4, &mut rng)).collect();
    invariance_for(&a, 12, None, &lines, |rng| f7.random(rng))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 6] = [
        ("westwick10 reproduction", westwick_reproduction),
        ("appendix14 reproduction", appendix_reproduction),
        ("jumping lines of westwick10", jumping_lines),
        ("numerology suite", numerology_suite),
        ("skew-symmetrization suite", skew_symmetrization),
        ("invariance suite", invariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
