//! Bundled example matrices.
//!
//! `westwick10` is Westwick's 10x10 skew pencil in four variables over the
//! rationals, of constant rank 8. `appendix14` is a 14x14 skew pencil over
//! `Z/7` of constant rank 12. Both ship in the interchange format.

use crate::error::{Error, Result};
use crate::io::{AnyLinearMatrix, MatrixFile};
use crate::polymat::LinearMatrix;
use crate::scalars::{PrimeField, Rationals};

pub const WESTWICK10_JSON: &str = include_str!("../corpus/westwick10.json");
pub const APPENDIX14_JSON: &str = include_str!("../corpus/appendix14.json");

pub const NAMES: [&str; 2] = ["westwick10", "appendix14"];

pub fn source(name: &str) -> Result<&'static str> {
    match name {
        "westwick10" => Ok(WESTWICK10_JSON),
        "appendix14" => Ok(APPENDIX14_JSON),
        other => Err(Error::UnknownCorpus(other.to_string())),
    }
}

/// Loads a corpus matrix, checking its size and skew-symmetry.
pub fn load(name: &str) -> Result<AnyLinearMatrix> {
    let corrupt = |why: String| Error::CorpusCorrupt(name.to_string(), why);
    let text = source(name)?;
    let m = MatrixFile::parse(text)
        .and_then(|f| f.to_matrix())
        .map_err(|e| corrupt(e.to_string()))?;
    let expected = if name == "westwick10" { 10 } else { 14 };
    if m.n() != expected || m.d() != 4 {
        return Err(corrupt(format!("expected {expected}x{expected} in 4 variables")));
    }
    if !m.is_skew() {
        return Err(corrupt("not skew-symmetric".into()));
    }
    Ok(m)
}

pub fn westwick10() -> LinearMatrix<Rationals> {
    match load("westwick10").expect("bundled corpus is valid") {
        AnyLinearMatrix::Rational(m) => m,
        _ => unreachable!("westwick10 is stored over Q"),
    }
}

pub fn appendix14() -> LinearMatrix<PrimeField> {
    match load("appendix14").expect("bundled corpus is valid") {
        AnyLinearMatrix::Prime(m) => m,
        _ => unreachable!("appendix14 is stored over F_7"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    #[test]
    fn westwick_entries() {
        let w = westwick10();
        assert_eq!((w.n(), w.d()), (10, 4));
        let q = Rationals;
        // Row 1 / column 8 (1-based) holds x0; its mirror holds -x0.
        let e = w.entry(0, 7);
        assert_eq!(e.to_text(), "x0");
        assert_eq!(w.entry(7, 0).to_text(), "-x0");
        assert_eq!(w.entry(4, 7).to_text(), "-x3");
        assert!(w.coeffs().iter().flat_map(|c| c.to_rows()).flatten().all(|v| {
            v == q.zero() || v == q.one() || v == q.from_i64(-1)
        }));
        assert!(w.is_skew());
    }

    #[test]
    fn appendix_entries() {
        let a = appendix14();
        assert_eq!((a.n(), a.d()), (14, 4));
        let f = a.field();
        assert_eq!(*a.coeff(0).get(0, 1), f.from_i64(-2));
        assert_eq!(*a.coeff(0).get(1, 0), f.from_i64(2));
        assert!(a.is_skew());
    }

    #[test]
    fn corpus_files_are_canonical() {
        for name in NAMES {
            let text = source(name).unwrap();
            let file = MatrixFile::parse(text).unwrap();
            assert_eq!(file.to_canonical_json(), text, "{name}");
            let reparsed = load(name).unwrap().to_file().unwrap();
            assert_eq!(reparsed.coeffs, file.coeffs);
        }
        assert!(matches!(load("nope"), Err(Error::UnknownCorpus(_))));
    }
}
