//! C ABI over `liexp`.
//!
//! Every fallible call returns a [`LiexpStatus`] and writes its result through
//! an out-pointer. Handles are opaque and must be released with the matching
//! `*_free` function. Strings returned by the library are owned by the caller
//! and released with [`liexp_string_free`].
//!
//! The last error message for the calling thread is kept until the next
//! failing call and can be read with [`liexp_last_error`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};
use liexp::experiments::{run_experiment, witt_dims, ExperimentConfig, ExperimentReport};
use liexp::lie::{
    generate_subalgebra, is_characteristically_nilpotent, lower_central_series, nilpotency,
    structure_tensor, StructureTensor,
};
use liexp::{report, DenseMatrix, Error};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiexpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotNilpotent = 4,
    Parse = 5,
    Internal = 6,
    Panic = 7,
}

/// Result of one seeded experiment.
pub struct LiexpReport {
    inner: ExperimentReport,
}

/// Finite-dimensional Lie algebra given by structure constants.
pub struct LiexpAlgebra {
    tensor: StructureTensor,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> LiexpStatus {
    match err {
        Error::DimensionMismatch { .. } | Error::ContainmentViolation => {
            LiexpStatus::DimensionMismatch
        }
        Error::InvalidOrder(_) | Error::InvalidGenerator(_) | Error::InvalidConfig(_) => {
            LiexpStatus::InvalidArgument
        }
        Error::Domain(_) => LiexpStatus::NotNilpotent,
        Error::Parse(_) => LiexpStatus::Parse,
        Error::NotASubalgebra | Error::InvariantViolation(_) => LiexpStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), LiexpStatus>) -> LiexpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LiexpStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside liexp");
            LiexpStatus::Panic
        }
    }
}

fn fail(err: Error) -> LiexpStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

fn null(what: &str) -> LiexpStatus {
    set_error(format!("{what} is null"));
    LiexpStatus::NullPointer
}

fn into_c_string(s: String) -> Result<*mut c_char, LiexpStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        set_error("string contains an interior NUL");
        LiexpStatus::Internal
    })
}

/// Message describing the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn liexp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn liexp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn liexp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs one experiment: `gens` is 2 or 3, `bound` the entry bound for the
/// random generators, `generic` requests nonzero superdiagonals.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn liexp_run(
    m: size_t,
    gens: u8,
    seed: u64,
    bound: u32,
    generic: bool,
    out: *mut *mut LiexpReport,
) -> LiexpStatus {
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let cfg = ExperimentConfig {
            m,
            gens,
            seed,
            bound,
            generic,
        };
        let inner = run_experiment(&cfg).map_err(fail)?;
        *out = Box::into_raw(Box::new(LiexpReport { inner }));
        Ok(())
    })
}

/// Parses a report from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn liexp_report_from_json(
    json: *const c_char,
    out: *mut *mut LiexpReport,
) -> LiexpStatus {
    if json.is_null() {
        return null("json");
    }
    if out.is_null() {
        return null("out");
    }
    guard(|| {
        let text = CStr::from_ptr(json).to_str().map_err(|_| {
            set_error("json is not valid UTF-8");
            LiexpStatus::Parse
        })?;
        let inner = report::from_json(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(LiexpReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn liexp_report_free(r: *mut LiexpReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Pretty JSON form of the report, freed with [`liexp_string_free`].
///
/// # Safety
/// `r` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn liexp_report_to_json(
    r: *const LiexpReport,
    out: *mut *mut c_char,
) -> LiexpStatus {
    let (Some(r), false) = (r.as_ref(), out.is_null()) else {
        return null("argument");
    };
    guard(|| {
        *out = into_c_string(report::to_json(&r.inner))?;
        Ok(())
    })
}

/// Scalar summary of a report.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LiexpSummary {
    pub dim: size_t,
    pub nilpotency_class: size_t,
    pub center_dim: size_t,
    pub generators_count: size_t,
    pub der_dim: size_t,
    pub der_nilpotent: bool,
    pub commutant_dim: size_t,
    pub commutant_der_dim: size_t,
    pub commutant_der_nilpotent: bool,
    pub codim1_der_dim: size_t,
    pub codim1_der_nilpotent: bool,
    pub formula_matches: bool,
}

/// # Safety
/// `r` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn liexp_report_summary(
    r: *const LiexpReport,
    out: *mut LiexpSummary,
) -> LiexpStatus {
    let (Some(r), false) = (r.as_ref(), out.is_null()) else {
        return null("argument");
    };
    let res = &r.inner.results;
    *out = LiexpSummary {
        dim: res.dim,
        nilpotency_class: res.class,
        center_dim: res.center_dim,
        generators_count: res.generators_count,
        der_dim: res.der.dim,
        der_nilpotent: res.der.nilpotent,
        commutant_dim: res.commutant.dim,
        commutant_der_dim: res.commutant.der_dim,
        commutant_der_nilpotent: res.commutant.der_nilpotent,
        codim1_der_dim: res.codim1_ideal.der_dim,
        codim1_der_nilpotent: res.codim1_ideal.der_nilpotent,
        formula_matches: res.formula.matches,
    };
    LiexpStatus::Ok
}

/// Copies the lower central dimensions into `buf` (capacity `cap`) and
/// writes the full length to `len`. A short buffer receives a prefix.
///
/// # Safety
/// `r` must be a live handle, `len` valid for one write, and `buf` valid for
/// `cap` writes unless `cap` is zero.
#[no_mangle]
pub unsafe extern "C" fn liexp_report_lower_dims(
    r: *const LiexpReport,
    buf: *mut size_t,
    cap: size_t,
    len: *mut size_t,
) -> LiexpStatus {
    let (Some(r), false) = (r.as_ref(), len.is_null()) else {
        return null("argument");
    };
    copy_out(&r.inner.results.lower_dims, buf, cap, len)
}

unsafe fn copy_out(src: &[usize], buf: *mut size_t, cap: size_t, len: *mut size_t) -> LiexpStatus {
    if cap > 0 && buf.is_null() {
        return null("buf");
    }
    let n = src.len().min(cap);
    if n > 0 {
        ptr::copy_nonoverlapping(src.as_ptr(), buf, n);
    }
    *len = src.len();
    LiexpStatus::Ok
}

/// Lie algebra generated by `count` strictly upper triangular `order x order`
/// integer matrices, stored row-major one after another in `entries`.
///
/// # Safety
/// `entries` must hold `count * order * order` values and `out` be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn liexp_algebra_generate(
    order: size_t,
    entries: *const i64,
    count: size_t,
    out: *mut *mut LiexpAlgebra,
) -> LiexpStatus {
    if out.is_null() {
        return null("out");
    }
    if entries.is_null() && count * order > 0 {
        return null("entries");
    }
    guard(|| {
        let Some(total) = count.checked_mul(order).and_then(|x| x.checked_mul(order)) else {
            set_error("matrix sizes overflow");
            return Err(LiexpStatus::InvalidArgument);
        };
        let flat: &[i64] = if total == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(entries, total)
        };
        let gens: Vec<DenseMatrix> = (0..count)
            .map(|g| {
                let block = &flat[g * order * order..(g + 1) * order * order];
                let rows: Vec<Vec<i64>> = block.chunks(order).map(<[i64]>::to_vec).collect();
                DenseMatrix::from_i64_rows(&rows)
            })
            .collect::<liexp::Result<_>>()
            .map_err(fail)?;
        let algebra = generate_subalgebra(&gens).map_err(fail)?;
        let tensor = structure_tensor(&algebra).map_err(fail)?;
        *out = Box::into_raw(Box::new(LiexpAlgebra { tensor }));
        Ok(())
    })
}

/// # Safety
/// `a` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn liexp_algebra_free(a: *mut LiexpAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn liexp_algebra_dim(a: *const LiexpAlgebra, out: *mut size_t) -> LiexpStatus {
    let (Some(a), false) = (a.as_ref(), out.is_null()) else {
        return null("argument");
    };
    *out = a.tensor.dim();
    LiexpStatus::Ok
}

/// Nilpotency class, or `NotNilpotent` when the lower central series stalls.
///
/// # Safety
/// `a` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn liexp_algebra_class(a: *const LiexpAlgebra, out: *mut size_t) -> LiexpStatus {
    let (Some(a), false) = (a.as_ref(), out.is_null()) else {
        return null("argument");
    };
    guard(|| match nilpotency(&a.tensor).class {
        Some(c) => {
            *out = c;
            Ok(())
        }
        None => {
            set_error("algebra is not nilpotent");
            Err(LiexpStatus::NotNilpotent)
        }
    })
}

/// # Safety
/// `a` must be a live handle; `buf`, `cap`, `len` as for [`liexp_report_lower_dims`].
#[no_mangle]
pub unsafe extern "C" fn liexp_algebra_lower_dims(
    a: *const LiexpAlgebra,
    buf: *mut size_t,
    cap: size_t,
    len: *mut size_t,
) -> LiexpStatus {
    let (Some(a), false) = (a.as_ref(), len.is_null()) else {
        return null("argument");
    };
    let mut dims = Vec::new();
    let status = guard(|| {
        dims = lower_central_series(&a.tensor).dims;
        Ok(())
    });
    if status != LiexpStatus::Ok {
        return status;
    }
    copy_out(&dims, buf, cap, len)
}

/// Dimension of Der(L) and whether Der(L) is nilpotent.
///
/// # Safety
/// `a` must be a live handle; `der_dim` and `nilpotent` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn liexp_algebra_derivations(
    a: *const LiexpAlgebra,
    der_dim: *mut size_t,
    nilpotent: *mut bool,
) -> LiexpStatus {
    let (Some(a), false, false) = (a.as_ref(), der_dim.is_null(), nilpotent.is_null()) else {
        return null("argument");
    };
    guard(|| {
        let verdict = is_characteristically_nilpotent(&a.tensor).map_err(fail)?;
        *der_dim = verdict.der_dim;
        *nilpotent = verdict.verdict;
        Ok(())
    })
}

/// Dimensions of the homogeneous components of degree `1..=max_degree` of the
/// free Lie algebra on `gens` generators. Fails if a value exceeds 64 bits.
///
/// # Safety
/// `buf` must be valid for `max_degree` writes.
#[no_mangle]
pub unsafe extern "C" fn liexp_witt_dims(gens: u32, max_degree: u32, buf: *mut u64) -> LiexpStatus {
    if buf.is_null() && max_degree > 0 {
        return null("buf");
    }
    guard(|| {
        let dims = witt_dims(gens, max_degree).map_err(|e| {
            set_error(e.to_string());
            LiexpStatus::InvalidArgument
        })?;
        for (i, d) in dims.into_iter().enumerate() {
            *buf.add(i) = u64::try_from(d).map_err(|_| {
                set_error("dimension exceeds 64 bits");
                LiexpStatus::InvalidArgument
            })?;
        }
        Ok(())
    })
}
