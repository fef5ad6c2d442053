//! C ABI for `skewrank`.
//!
//! Matrices are passed around as opaque `SkMatrix` handles created by
//! `sk_matrix_from_json` or `sk_matrix_from_corpus` and released with
//! `sk_matrix_free`. Every fallible function returns an `SkStatus`; on failure
//! `sk_last_error` describes the problem. Strings returned through `char **`
//! out-parameters are owned by the caller and must be released with
//! `sk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewrank::certify::{self, CertifyOptions, Verdict};
use skewrank::io::{AnyLinearMatrix, MatrixFile};
use skewrank::lines::{self, Line};
use skewrank::pfaffian;
use skewrank::skewsym::{self, DEFAULT_MAX_RETRIES};
use skewrank::{corpus, numerology, with_matrix, Error};

/// Opaque matrix of linear forms.
pub struct SkMatrix {
    inner: AnyLinearMatrix,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    UnsupportedField = 5,
    DimensionMismatch = 6,
    OutOfRange = 7,
    NoSkewifier = 8,
    NonConstantRank = 9,
    BufferTooSmall = 10,
    Failed = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkVerdict {
    Certified = 0,
    EvidenceOnly = 1,
    Refuted = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SkStatus {
    match e {
        Error::Parse(_) | Error::CorpusCorrupt(..) | Error::UnknownCorpus(_) => SkStatus::Parse,
        Error::InvalidField(_) | Error::FieldMismatch => SkStatus::InvalidField,
        Error::UnsupportedField(_) => SkStatus::UnsupportedField,
        Error::DimensionMismatch(_) | Error::OddSize(_) | Error::TooManyVariables(_) | Error::NotSkew => {
            SkStatus::DimensionMismatch
        }
        Error::OutOfRange(_) | Error::DisallowedRank(_) | Error::OddRankRequested(_) | Error::TooLarge(_) => {
            SkStatus::OutOfRange
        }
        Error::NoSkewifier(_) => SkStatus::NoSkewifier,
        Error::NonConstantRankOnLine => SkStatus::NonConstantRank,
        _ => SkStatus::Failed,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (SkStatus, String)>) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            SkStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (SkStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (SkStatus, String)> {
    if s.is_null() {
        return Err((SkStatus::NullPointer, "null string".to_string()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (SkStatus::InvalidUtf8, e.to_string()))
}

unsafe fn matrix<'a>(m: *const SkMatrix) -> Result<&'a AnyLinearMatrix, (SkStatus, String)> {
    m.as_ref().map(|m| &m.inner).ok_or((SkStatus::NullPointer, "null matrix handle".to_string()))
}

fn check_out<T>(out: *mut T) -> Result<(), (SkStatus, String)> {
    if out.is_null() {
        Err((SkStatus::NullPointer, "null output pointer".to_string()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> Result<*mut c_char, (SkStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|e| (SkStatus::Failed, e.to_string()))
}

fn boxed(inner: AnyLinearMatrix) -> *mut SkMatrix {
    Box::into_raw(Box::new(SkMatrix { inner }))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn sk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a pointer returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix file in the JSON interchange format.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_matrix_from_json(json: *const c_char, out: *mut *mut SkMatrix) -> SkStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(json)?;
        let m = MatrixFile::parse(text).and_then(|f| f.to_matrix()).map_err(lib_err)?;
        *out = boxed(m);
        Ok(())
    })
}

/// Loads a bundled matrix (`westwick10` or `appendix14`).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_matrix_from_corpus(name: *const c_char, out: *mut *mut SkMatrix) -> SkStatus {
    guard(|| {
        check_out(out)?;
        let m = corpus::load(read_str(name)?).map_err(lib_err)?;
        *out = boxed(m);
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn sk_matrix_free(m: *mut SkMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Matrix size `n` and number of variables `d`.
///
/// # Safety
/// `m` must be a valid handle; `n` and `d` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sk_matrix_shape(m: *const SkMatrix, n: *mut usize, d: *mut usize) -> SkStatus {
    guard(|| {
        check_out(n)?;
        check_out(d)?;
        let m = matrix(m)?;
        *n = m.n();
        *d = m.d();
        Ok(())
    })
}

/// # Safety
/// `m` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_matrix_is_skew(m: *const SkMatrix, out: *mut bool) -> SkStatus {
    guard(|| {
        check_out(out)?;
        *out = matrix(m)?.is_skew();
        Ok(())
    })
}

/// Canonical JSON of the matrix. Free the result with `sk_string_free`.
///
/// # Safety
/// `m` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_matrix_to_json(m: *const SkMatrix, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        check_out(out)?;
        let file = matrix(m)?.to_file().map_err(lib_err)?;
        *out = to_c_string(file.to_canonical_json())?;
        Ok(())
    })
}

/// Smallest even `r` whose principal `(r+2)`-sub-Pfaffians all vanish.
///
/// # Safety
/// `m` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_rank_upper_bound(m: *const SkMatrix, out: *mut usize) -> SkStatus {
    guard(|| {
        check_out(out)?;
        let m = matrix(m)?;
        *out = with_matrix!(m, a => pfaffian::symbolic_rank_upper_bound(a)).map_err(lib_err)?;
        Ok(())
    })
}

/// Certifies constant rank `rank`. `prime = 0` selects the default prime.
/// `certificate` may be null; otherwise it receives the certificate JSON.
///
/// # Safety
/// `m` must be a valid handle, `verdict` a valid pointer and `certificate`
/// null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_certify(
    m: *const SkMatrix,
    rank: usize,
    samples: usize,
    prime: u64,
    exact: bool,
    seed: u64,
    verdict: *mut SkVerdict,
    certificate: *mut *mut c_char,
) -> SkStatus {
    guard(|| {
        check_out(verdict)?;
        let m = matrix(m)?;
        let options = CertifyOptions {
            samples,
            prime: (prime != 0).then_some(prime),
            exact,
            seed,
            ..CertifyOptions::default()
        };
        let cert = with_matrix!(m, a => certify::certify_constant_rank(a, rank, &options)).map_err(lib_err)?;
        if !certificate.is_null() {
            *certificate = to_c_string(cert.to_json())?;
        }
        *verdict = match cert.verdict {
            Verdict::Certified => SkVerdict::Certified,
            Verdict::EvidenceOnly => SkVerdict::EvidenceOnly,
            Verdict::Refuted => SkVerdict::Refuted,
        };
        Ok(())
    })
}

/// Minimal indices of the pencil on the line spanned by the integer points
/// `p` and `q` (each of length `len`). Writes at most `capacity` indices to
/// `indices` and their number to `count`; `BufferTooSmall` if they do not fit.
///
/// # Safety
/// `p`, `q` must point to `len` integers, `indices` to `capacity` slots.
#[no_mangle]
pub unsafe extern "C" fn sk_line_indices(
    m: *const SkMatrix,
    p: *const i64,
    q: *const i64,
    len: usize,
    indices: *mut usize,
    capacity: usize,
    count: *mut usize,
) -> SkStatus {
    guard(|| {
        check_out(count)?;
        if p.is_null() || q.is_null() || (capacity > 0 && indices.is_null()) {
            return Err((SkStatus::NullPointer, "null array".to_string()));
        }
        let m = matrix(m)?;
        let (p, q) = (std::slice::from_raw_parts(p, len), std::slice::from_raw_parts(q, len));
        let profile = with_matrix!(m, a => {
            if len != a.d() {
                return Err(lib_err(Error::DimensionMismatch(format!("points need {} coordinates", a.d()))));
            }
            Line::from_i64(a.field(), p, q).and_then(|line| lines::line_profile(a, &line))
        })
        .map_err(lib_err)?;
        *count = profile.indices.len();
        if profile.indices.len() > capacity {
            return Err((SkStatus::BufferTooSmall, format!("{} indices do not fit", profile.indices.len())));
        }
        std::slice::from_raw_parts_mut(indices, profile.indices.len()).copy_from_slice(&profile.indices);
        Ok(())
    })
}

/// Finds an invertible `delta` with `delta * m` skew and returns the product
/// as a new handle.
///
/// # Safety
/// `m` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_skewify(m: *const SkMatrix, seed: u64, out: *mut *mut SkMatrix) -> SkStatus {
    guard(|| {
        check_out(out)?;
        let m = matrix(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let result = with_matrix!(m, b => skewsym::skew_symmetrize(b, &mut rng, DEFAULT_MAX_RETRIES)
            .and_then(|s| AnyLinearMatrix::from_typed(&s.result)))
        .map_err(lib_err)?;
        *out = boxed(result);
        Ok(())
    })
}

/// Numerology report for constant rank `rank` as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_numerology_json(rank: i64, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        check_out(out)?;
        let report = numerology::report(rank).map_err(lib_err)?;
        let value = serde_json::to_value(&report).map_err(|e| (SkStatus::Failed, e.to_string()))?;
        *out = to_c_string(skewrank::io::canonical_json(&value))?;
        Ok(())
    })
}
