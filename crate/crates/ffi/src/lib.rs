//! C interface to `sylvester`.
//!
//! Every function returns a [`SylStatus`]. Objects live behind opaque handles
//! that the caller releases with the matching `_free` function. After a
//! failure, [`syl_last_error`] describes it on the calling thread.
//!
//! Complex arrays are interleaved `re, im` doubles ordered by `m` from `-j`
//! to `j`. Direction arrays are packed `x, y, z` triples.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use sylvester::degree::Degree;
use sylvester::error::Error;
use sylvester::harmonics::{eval_function, SphereGrid, SpinState};
use sylvester::io::{FileError, MultipoleFile, StateFile};
use sylvester::majorana::{constellation_of, MajoranaConstellation};
use sylvester::multipole::{extract_multipoles, reconstruct, MultipoleSet};
use sylvester::sphere::{EulerRotation, UnitVector};
use sylvester::verify::{run_suite, VerifyConfig, MAX_VERIFY_DEGREE};
use sylvester::wigner::rotate_state;

/// Result codes. The first six match the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SylStatus {
    Ok = 0,
    Malformed = 1,
    NotReal = 2,
    HalfInteger = 3,
    GridTooSmall = 4,
    VerificationFailed = 5,
    NullPointer = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Spin state `|j, m>` coefficients.
pub struct SylState {
    inner: SpinState,
}

/// Degree, unit directions and amplitude of a real harmonic.
pub struct SylMultipoles {
    inner: MultipoleSet,
}

/// Majorana constellation of a state.
pub struct SylConstellation {
    inner: MajoranaConstellation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: SylStatus,
    message: String,
}

impl Failure {
    fn new(status: SylStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }

    fn null(name: &str) -> Self {
        Failure::new(SylStatus::NullPointer, format!("{name} is null"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotRealState { .. } | Error::PairingFailure { .. } => SylStatus::NotReal,
            Error::NonIntegerDegree { .. } => SylStatus::HalfInteger,
            Error::GridTooSmall { .. } => SylStatus::GridTooSmall,
            Error::InvalidIndex(_) | Error::NullState | Error::InvalidInput(_) => {
                SylStatus::Malformed
            }
        };
        Failure::new(status, e.to_string())
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::new(SylStatus::Malformed, e.to_string())
    }
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard<F>(f: F) -> SylStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SylStatus::Ok,
        Ok(Err(e)) => {
            set_last_error(e.message);
            e.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            SylStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(name))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn slice<'a>(p: *const f64, len: usize, name: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn fill(out: *mut f64, len: usize, values: &[f64]) -> Result<(), Failure> {
    if len < values.len() {
        return Err(Failure::new(
            SylStatus::BufferTooSmall,
            format!("buffer holds {len} doubles, need {}", values.len()),
        ));
    }
    if values.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null("json"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(SylStatus::Malformed, "text is not UTF-8"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure::new(SylStatus::Malformed, "embedded NUL"))?;
    *out = c.into_raw();
    Ok(())
}

fn interleave(z: &[Complex64]) -> Vec<f64> {
    z.iter().flat_map(|c| [c.re, c.im]).collect()
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn syl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn syl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Runs the seeded property suite at degree `two_j / 2`. Returns
/// `SYL_STATUS_VERIFICATION_FAILED` when any check fails; the JSON report
/// goes to `report` when it is not null.
///
/// # Safety
/// `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn syl_verify(
    two_j: u32,
    trials: usize,
    seed: u64,
    report: *mut *mut c_char,
) -> SylStatus {
    guard(|| {
        if two_j > 2 * MAX_VERIFY_DEGREE {
            return Err(Failure::new(
                SylStatus::Malformed,
                format!("verify supports j <= {MAX_VERIFY_DEGREE}"),
            ));
        }
        let r = run_suite(&VerifyConfig::new(Degree::from_doubled(two_j), trials, seed));
        if !report.is_null() {
            put_string(report, sylvester::io::to_pretty_string(&r.to_json()))?;
        }
        if r.passed() {
            Ok(())
        } else {
            Err(Failure::new(SylStatus::VerificationFailed, "property suite failed"))
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn syl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// New state of degree `two_j / 2` from `2 * (two_j + 1)` interleaved doubles.
///
/// # Safety
/// `coeffs` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_state_new(
    two_j: u32,
    coeffs: *const f64,
    len: usize,
    out: *mut *mut SylState,
) -> SylStatus {
    guard(|| {
        let raw = slice(coeffs, len, "coeffs")?;
        let dim = Degree::from_doubled(two_j).dim();
        if raw.len() != 2 * dim {
            return Err(Failure::new(
                SylStatus::Malformed,
                format!("degree {two_j}/2 needs {} doubles, got {}", 2 * dim, raw.len()),
            ));
        }
        let z = raw
            .chunks_exact(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        let inner = SpinState::new(Degree::from_doubled(two_j), z)?;
        put(out, SylState { inner })
    })
}

/// Parses a state from its JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_state_from_json(
    json: *const c_char,
    out: *mut *mut SylState,
) -> SylStatus {
    guard(|| {
        let file = StateFile::parse(text(json)?)?;
        put(out, SylState { inner: file.state })
    })
}

/// Serializes a state. Release the result with [`syl_string_free`].
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_state_to_json(
    state: *const SylState,
    out: *mut *mut c_char,
) -> SylStatus {
    guard(|| {
        let s = get(state, "state")?;
        put_string(out, StateFile::new(s.inner.clone()).to_string_pretty())
    })
}

/// Doubled degree `2j`, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syl_state_two_j(state: *const SylState) -> u32 {
    state.as_ref().map_or(0, |s| s.inner.degree().two_j())
}

/// Copies the interleaved coefficients into `out`, which must hold `2 * (2j + 1)` doubles.
///
/// # Safety
/// `state` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn syl_state_coefficients(
    state: *const SylState,
    out: *mut f64,
    len: usize,
) -> SylStatus {
    guard(|| {
        let s = get(state, "state")?;
        fill(out, len, &interleave(s.inner.coeffs()))
    })
}

/// Rotates a state by z-y-z Euler angles in radians.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_state_rotate(
    state: *const SylState,
    alpha: f64,
    beta: f64,
    gamma: f64,
    out: *mut *mut SylState,
) -> SylStatus {
    guard(|| {
        let s = get(state, "state")?;
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Failure::new(SylStatus::Malformed, "Euler angles must be finite"));
        }
        let r = EulerRotation::new(alpha, beta, gamma);
        put(
            out,
            SylState {
                inner: rotate_state(&s.inner, &r),
            },
        )
    })
}

/// Value of the state's function at `(theta, phi)`.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_state_eval(
    state: *const SylState,
    theta: f64,
    phi: f64,
    re: *mut f64,
    im: *mut f64,
) -> SylStatus {
    guard(|| {
        let s = get(state, "state")?;
        if re.is_null() || im.is_null() {
            return Err(Failure::null("re/im"));
        }
        let v = eval_function(&s.inner, theta, phi)?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// # Safety
/// `state` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syl_state_free(state: *mut SylState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Multipole directions of a real state of integer degree.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_decompose(
    state: *const SylState,
    tol: f64,
    out: *mut *mut SylMultipoles,
) -> SylStatus {
    guard(|| {
        let s = get(state, "state")?;
        if !(tol > 0.0) {
            return Err(Failure::new(SylStatus::Malformed, "tol must be positive"));
        }
        let inner = extract_multipoles(&s.inner, tol)?;
        put(out, SylMultipoles { inner })
    })
}

/// Rebuilds the state on an `n_theta` by `n_phi` grid; pass zeros for the default grid.
///
/// # Safety
/// `multipoles` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_reconstruct(
    multipoles: *const SylMultipoles,
    n_theta: usize,
    n_phi: usize,
    out: *mut *mut SylState,
) -> SylStatus {
    guard(|| {
        let mp = get(multipoles, "multipoles")?;
        let grid = if n_theta == 0 && n_phi == 0 {
            SphereGrid::auto(mp.inner.degree())
        } else {
            SphereGrid::new(n_theta, n_phi)?
        };
        let inner = reconstruct(&mp.inner, &grid)?;
        put(out, SylState { inner })
    })
}

/// Multipole set from `3 * degree` direction components and an amplitude.
///
/// # Safety
/// `directions` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_multipoles_new(
    degree: u32,
    directions: *const f64,
    len: usize,
    amplitude: f64,
    out: *mut *mut SylMultipoles,
) -> SylStatus {
    guard(|| {
        let raw = slice(directions, len, "directions")?;
        if raw.len() != 3 * degree as usize {
            return Err(Failure::new(
                SylStatus::Malformed,
                format!("degree {degree} needs {} doubles, got {}", 3 * degree, raw.len()),
            ));
        }
        let dirs = raw
            .chunks_exact(3)
            .map(|c| UnitVector::new(c[0], c[1], c[2]))
            .collect::<Result<Vec<_>, _>>()?;
        let inner = MultipoleSet::new(degree, dirs, amplitude)?;
        put(out, SylMultipoles { inner })
    })
}

/// Parses a multipole set from its JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_multipoles_from_json(
    json: *const c_char,
    out: *mut *mut SylMultipoles,
) -> SylStatus {
    guard(|| {
        let file = MultipoleFile::parse(text(json)?)?;
        put(
            out,
            SylMultipoles {
                inner: file.multipoles,
            },
        )
    })
}

/// Serializes a multipole set. Release the result with [`syl_string_free`].
///
/// # Safety
/// `multipoles` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_multipoles_to_json(
    multipoles: *const SylMultipoles,
    out: *mut *mut c_char,
) -> SylStatus {
    guard(|| {
        let mp = get(multipoles, "multipoles")?;
        put_string(out, MultipoleFile::new(mp.inner.clone()).to_string_pretty())
    })
}

/// Degree `j`, or 0 for a null handle.
///
/// # Safety
/// `multipoles` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syl_multipoles_degree(multipoles: *const SylMultipoles) -> u32 {
    multipoles.as_ref().map_or(0, |m| m.inner.degree())
}

/// Amplitude, or NaN for a null handle.
///
/// # Safety
/// `multipoles` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syl_multipoles_amplitude(multipoles: *const SylMultipoles) -> f64 {
    multipoles.as_ref().map_or(f64::NAN, |m| m.inner.amplitude())
}

/// Copies the directions as `x, y, z` triples; `out` must hold `3 * degree` doubles.
///
/// # Safety
/// `multipoles` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn syl_multipoles_directions(
    multipoles: *const SylMultipoles,
    out: *mut f64,
    len: usize,
) -> SylStatus {
    guard(|| {
        let mp = get(multipoles, "multipoles")?;
        let flat: Vec<f64> = mp.inner.directions().iter().flat_map(|u| u.to_array()).collect();
        fill(out, len, &flat)
    })
}

/// # Safety
/// `multipoles` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syl_multipoles_free(multipoles: *mut SylMultipoles) {
    if !multipoles.is_null() {
        drop(Box::from_raw(multipoles));
    }
}

/// Majorana constellation of a nonzero state.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn syl_constellation_of(
    state: *const SylState,
    out: *mut *mut SylConstellation,
) -> SylStatus {
    guard(|| {
        let s = get(state, "state")?;
        let inner = constellation_of(&s.inner)?;
        put(out, SylConstellation { inner })
    })
}

/// Number of stars, `2j`, or 0 for a null handle.
///
/// # Safety
/// `constellation` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syl_constellation_len(constellation: *const SylConstellation) -> usize {
    constellation.as_ref().map_or(0, |c| c.inner.roots().len())
}

/// Copies the stars as unit vectors, `x, y, z` per star.
///
/// # Safety
/// `constellation` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn syl_constellation_points(
    constellation: *const SylConstellation,
    out: *mut f64,
    len: usize,
) -> SylStatus {
    guard(|| {
        let c = get(constellation, "constellation")?;
        let flat: Vec<f64> = c
            .inner
            .roots()
            .iter()
            .flat_map(|p| p.to_unit_vector().to_array())
            .collect();
        fill(out, len, &flat)
    })
}

/// # Safety
/// `constellation` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn syl_constellation_free(constellation: *mut SylConstellation) {
    if !constellation.is_null() {
        drop(Box::from_raw(constellation));
    }
}
