//! C ABI over `zakinv`.
//!
//! Every entry point returns a `ZakStatus` and writes results through out
//! pointers. Handles are opaque and owned by the caller, who releases them
//! with the matching `*_free` function. After a non-OK status,
//! `zak_last_error_message` describes the failure on the calling thread.
//! Panics never cross the boundary; they surface as `ZAK_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use zakinv::cli::{group_report, line_report};
use zakinv::group::{FiniteAbelianGroup, GroupSignal, Lattice};
use zakinv::oracle::invariance_oracle;
use zakinv::spectra::{parse_rational, Spectrum};
use zakinv::zak_group::extra_invariance_group;
use zakinv::zak_line::{extra_invariance_line, periodization_criterion_line, zak_eval_spectral};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZakStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    EmptyGenerator = 3,
    NotNested = 4,
    NotInvariant = 5,
    InvalidArgument = 6,
    NotInLattice = 7,
    Internal = 99,
}

/// Generator on the line given by its piecewise-constant spectrum.
pub struct ZakSpectrum(Spectrum);

/// Finite abelian group `Z_{m_1} x ... x Z_{m_d}`.
pub struct ZakGroup(FiniteAbelianGroup);

/// Subgroup of a `ZakGroup`.
pub struct ZakLattice(Lattice);

/// Complex-valued function on a `ZakGroup`.
pub struct ZakSignal(GroupSignal);

struct Failure {
    status: ZakStatus,
    message: String,
}

impl From<zakinv::Error> for Failure {
    fn from(e: zakinv::Error) -> Self {
        use zakinv::Error as E;
        let status = match &e {
            E::NonRationalEndpoint(_) | E::Parse(_) => ZakStatus::Parse,
            E::EmptyGenerator => ZakStatus::EmptyGenerator,
            E::NotNested => ZakStatus::NotNested,
            E::NotInvariant => ZakStatus::NotInvariant,
            E::NotInLattice(_) => ZakStatus::NotInLattice,
            E::TruncationTooSmall { .. }
            | E::GridMismatch(_)
            | E::GroupTooLarge(_)
            | E::InvalidArgument(_) => ZakStatus::InvalidArgument,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn null(name: &str) -> Self {
        Failure {
            status: ZakStatus::NullPointer,
            message: format!("`{name}` is null"),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            status: ZakStatus::InvalidArgument,
            message: message.into(),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).unwrap_or_default());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ZakStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error(None);
            ZakStatus::Ok
        }
        Ok(Err(f)) => {
            set_last_error(Some(f.message));
            f.status
        }
        Err(payload) => {
            let what = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(Some(format!("internal error: {what}")));
            ZakStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| Failure::null(name))
}

unsafe fn out<'a, T>(ptr: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| Failure::null(name))
}

unsafe fn text<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::null(name));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure::invalid(format!("`{name}` is not valid UTF-8")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::invalid("output contains an interior NUL byte"))
}

fn json_string<T: serde::Serialize>(value: &T) -> Result<*mut c_char, Failure> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure {
        status: ZakStatus::Internal,
        message: e.to_string(),
    })?;
    to_c_string(s)
}

/// Message for the last failed call on this thread, or null after a
/// successful call. The pointer stays valid until the next call into this
/// library from the same thread; do not free it.
#[no_mangle]
pub extern "C" fn zak_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zak_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zak_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a spectrum document `{"pieces":[{"lo":"0","hi":"1/2","re":1}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_spectrum_from_json(
    json: *const c_char,
    out: *mut *mut ZakSpectrum,
) -> ZakStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let s = Spectrum::from_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(ZakSpectrum(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from `zak_spectrum_from_json` or be null.
#[no_mangle]
pub unsafe extern "C" fn zak_spectrum_free(s: *mut ZakSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Decides `(1/N)Z`-invariance of `<psi>_Z` by disjointness of the
/// folded branches.
///
/// # Safety
/// Pointers must be valid; `out_invariant` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_line_extra_invariance(
    spectrum: *const ZakSpectrum,
    n: u32,
    out_invariant: *mut bool,
) -> ZakStatus {
    guard(|| {
        let slot = out(out_invariant, "out_invariant")?;
        *slot = extra_invariance_line(&borrow(spectrum, "spectrum")?.0, n)?.invariant;
        Ok(())
    })
}

/// Same decision through the support-overlap test; requires `n >= 2`.
///
/// # Safety
/// Pointers must be valid; `out_invariant` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_line_periodization_criterion(
    spectrum: *const ZakSpectrum,
    n: u32,
    out_invariant: *mut bool,
) -> ZakStatus {
    guard(|| {
        let slot = out(out_invariant, "out_invariant")?;
        *slot = periodization_criterion_line(&borrow(spectrum, "spectrum")?.0, n)?.invariant;
        Ok(())
    })
}

/// `Z_N(psi)(x, xi)` with `xi` given as exact rational text such as `"3/8"`.
///
/// # Safety
/// Pointers must be valid; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_line_evaluate(
    spectrum: *const ZakSpectrum,
    n: u32,
    x: f64,
    xi: *const c_char,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZakStatus {
    guard(|| {
        let re = out(out_re, "out_re")?;
        let im = out(out_im, "out_im")?;
        if n == 0 {
            return Err(Failure::invalid("N must be positive"));
        }
        let xi = parse_rational(text(xi, "xi")?)?;
        let z = zak_eval_spectral(&borrow(spectrum, "spectrum")?.0, n, x, &xi);
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// Full line verdict as JSON, the same document `zakinv line` writes.
/// Release the result with `zak_string_free`.
///
/// # Safety
/// Pointers must be valid; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_line_report_json(
    spectrum: *const ZakSpectrum,
    n: u32,
    tol: f64,
    out_json: *mut *mut c_char,
) -> ZakStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        *slot = json_string(&line_report(&borrow(spectrum, "spectrum")?.0, n, tol)?)?;
        Ok(())
    })
}

/// Parses a group such as `"2x4"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_group_parse(
    spec: *const c_char,
    out: *mut *mut ZakGroup,
) -> ZakStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let g = FiniteAbelianGroup::parse(text(spec, "spec")?)?;
        *slot = Box::into_raw(Box::new(ZakGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from `zak_group_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn zak_group_free(g: *mut ZakGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `g` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn zak_group_order(g: *const ZakGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Parses the subgroup generated by `"(1,2);(0,2)"`; the empty string gives
/// the trivial subgroup.
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_lattice_parse(
    group: *const ZakGroup,
    generators: *const c_char,
    out: *mut *mut ZakLattice,
) -> ZakStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let l = Lattice::parse(&borrow(group, "group")?.0, text(generators, "generators")?)?;
        *slot = Box::into_raw(Box::new(ZakLattice(l)));
        Ok(())
    })
}

/// # Safety
/// `l` must come from `zak_lattice_parse` or be null.
#[no_mangle]
pub unsafe extern "C" fn zak_lattice_free(l: *mut ZakLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `l` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn zak_lattice_len(l: *const ZakLattice) -> usize {
    l.as_ref().map_or(0, |l| l.0.len())
}

/// Signal from `len` samples in lexicographic element order. `im` may be
/// null for a real signal.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zak_signal_new(
    group: *const ZakGroup,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut ZakSignal,
) -> ZakStatus {
    guard(|| {
        let slot = self::out(out, "out")?;
        let g = &borrow(group, "group")?.0;
        if re.is_null() {
            return Err(Failure::null("re"));
        }
        let re = std::slice::from_raw_parts(re, len);
        let values: Vec<Complex64> = if im.is_null() {
            re.iter().map(|&r| Complex64::new(r, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, len);
            re.iter()
                .zip(im)
                .map(|(&r, &i)| Complex64::new(r, i))
                .collect()
        };
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Failure::invalid("signal values must be finite"));
        }
        *slot = Box::into_raw(Box::new(ZakSignal(GroupSignal::new(g, values)?)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from `zak_signal_new` or be null.
#[no_mangle]
pub unsafe extern "C" fn zak_signal_free(s: *mut ZakSignal) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Decides whether `<psi>_K` is `L`-invariant through the Zak transform.
///
/// # Safety
/// Pointers must be valid; `out_invariant` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_group_extra_invariance(
    psi: *const ZakSignal,
    k: *const ZakLattice,
    l: *const ZakLattice,
    tol: f64,
    out_invariant: *mut bool,
) -> ZakStatus {
    guard(|| {
        let slot = out(out_invariant, "out_invariant")?;
        let v = extra_invariance_group(
            &borrow(psi, "psi")?.0,
            &borrow(k, "k")?.0,
            &borrow(l, "l")?.0,
            tol,
        )?;
        *slot = v.invariant;
        Ok(())
    })
}

/// Same decision by least-squares projection onto `span{T_k psi}`.
/// `out_max_residual` may be null.
///
/// # Safety
/// Pointers must be valid; `out_invariant` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_group_oracle(
    psi: *const ZakSignal,
    k: *const ZakLattice,
    l: *const ZakLattice,
    tol: f64,
    out_invariant: *mut bool,
    out_max_residual: *mut f64,
) -> ZakStatus {
    guard(|| {
        let slot = out(out_invariant, "out_invariant")?;
        let v = invariance_oracle(
            &borrow(psi, "psi")?.0,
            &borrow(k, "k")?.0,
            &borrow(l, "l")?.0,
            tol,
        )?;
        *slot = v.invariant;
        if let Some(r) = out_max_residual.as_mut() {
            *r = v.max_residual;
        }
        Ok(())
    })
}

/// Full group verdict as JSON, the same document `zakinv group` writes.
/// Release the result with `zak_string_free`.
///
/// # Safety
/// Pointers must be valid; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zak_group_report_json(
    psi: *const ZakSignal,
    k: *const ZakLattice,
    l: *const ZakLattice,
    tol: f64,
    out_json: *mut *mut c_char,
) -> ZakStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let r = group_report(
            &borrow(psi, "psi")?.0,
            &borrow(k, "k")?.0,
            &borrow(l, "l")?.0,
            tol,
        )?;
        *slot = json_string(&r)?;
        Ok(())
    })
}
