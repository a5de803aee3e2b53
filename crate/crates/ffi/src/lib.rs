//! C ABI over `hermite-genocchi`.
//!
//! Every function returns an [`HgStatus`]; on failure the message is kept in
//! a thread-local buffer readable through [`hg_last_error`]. Strings handed
//! out by the library must be released with [`hg_string_free`], and
//! distributions with [`hg_distribution_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hermite_genocchi::dist::{Ghg, GhgParams, NormalizerMethod};
use hermite_genocchi::families::{unified_poly, UnifiedParams};
use hermite_genocchi::identity::{run_suite, SuiteSpec};
use hermite_genocchi::{Coefficient, Error, Mode};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Usage = 3,
    SingularDenominator = 4,
    Range = 5,
    InvalidParameter = 6,
    DivergentSum = 7,
    TailNotConverged = 8,
    UndefinedHazard = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgNormalizerMethod {
    Series = 0,
    HomogeneousReduction = 1,
    LatticeBruteforce = 2,
}

/// Opaque handle to a validated distribution with its cached normalizer.
pub struct HgDistribution {
    inner: Ghg,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(HgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Usage(_) => HgStatus::Usage,
            Error::SingularDenominator { .. } => HgStatus::SingularDenominator,
            Error::Range { .. } => HgStatus::Range,
            Error::InvalidParameter { .. } => HgStatus::InvalidParameter,
            Error::DivergentSum(_) => HgStatus::DivergentSum,
            Error::TailNotConverged { .. } => HgStatus::TailNotConverged,
            Error::UndefinedHazard { .. } => HgStatus::UndefinedHazard,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|cell| *cell.borrow_mut() = text);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> HgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            HgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HgStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(HgStatus::NullPointer, format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(HgStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn dist<'a>(d: *const HgDistribution) -> Result<&'a Ghg, Failure> {
    d.as_ref()
        .map(|d| &d.inner)
        .ok_or_else(|| Failure(HgStatus::NullPointer, "distribution handle is null".into()))
}

unsafe fn point<'a>(x: *const u64, len: usize) -> Result<&'a [u64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if x.is_null() {
        return Err(Failure(HgStatus::NullPointer, "`x` is null".into()));
    }
    Ok(std::slice::from_raw_parts(x, len))
}

fn out_ptr<T>(p: *mut T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(HgStatus::NullPointer, format!("`{name}` is null")))
    } else {
        Ok(())
    }
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn hg_last_error() -> *const c_char {
    LAST_ERROR.with(|cell| cell.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Value of `M_n` for the unified family. `alphas` is a comma-separated list;
/// scalars are decimals or `p/q` fractions. `precision == 0` selects exact
/// rational arithmetic. The value is written to `*out` as a string.
///
/// # Safety
/// String arguments must be null-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_family_eval(
    precision: u32,
    k: u32,
    ln_a: *const c_char,
    ln_b: *const c_char,
    ln_c: *const c_char,
    alphas: *const c_char,
    x: *const c_char,
    y: *const c_char,
    m: usize,
    n: usize,
    out: *mut *mut c_char,
) -> HgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let mode = if precision == 0 { Mode::Exact } else { Mode::float(precision)? };
        let scalar = |p: *const c_char, name: &str| -> Result<Coefficient, Failure> {
            Ok(Coefficient::parse(text(p, name)?, mode)?)
        };
        let alphas = text(alphas, "alphas")?
            .split(',')
            .map(|s| Coefficient::parse(s.trim(), mode))
            .collect::<Result<Vec<_>, _>>()?;
        let params = UnifiedParams {
            k,
            ln_a: scalar(ln_a, "ln_a")?,
            ln_b: scalar(ln_b, "ln_b")?,
            ln_c: scalar(ln_c, "ln_c")?,
            alphas,
            x: scalar(x, "x")?,
            y: scalar(y, "y")?,
            hermite_degree: m,
            mode,
        };
        params.validate()?;
        let value = unified_poly(&params, n)?;
        *out = owned(value.to_string());
        Ok(())
    })
}

/// Runs an identity suite given as JSON (null for the bundled default) and
/// writes the report array as JSON to `*report`. `*passed` is set to whether
/// every asserted identity held.
///
/// # Safety
/// `suite_json` is null or null-terminated; `report` and `passed` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hg_verify_suite(
    suite_json: *const c_char,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> HgStatus {
    guard(|| {
        out_ptr(report, "report")?;
        out_ptr(passed, "passed")?;
        let spec = if suite_json.is_null() {
            SuiteSpec::default_suite()
        } else {
            SuiteSpec::from_json(text(suite_json, "suite_json")?)?
        };
        let outcome = run_suite(&spec)?;
        let json = serde_json::to_string(&outcome.reports)
            .map_err(|e| Failure(HgStatus::Usage, e.to_string()))?;
        *passed = outcome.passed();
        *report = owned(json);
        Ok(())
    })
}

/// Builds a distribution from `{r, m, alphas, gamma, beta, n, epsilon?}` at
/// `precision` bits.
///
/// # Safety
/// `params_json` must be null-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_new(
    params_json: *const c_char,
    precision: u32,
    out: *mut *mut HgDistribution,
) -> HgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let params = GhgParams::from_json(text(params_json, "params_json")?, precision)?;
        let inner = Ghg::new(params)?;
        *out = Box::into_raw(Box::new(HgDistribution { inner }));
        Ok(())
    })
}

/// # Safety
/// `d` is null or a live handle from [`hg_distribution_new`].
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_free(d: *mut HgDistribution) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of coordinates `r`, or 0 for a null handle.
///
/// # Safety
/// `d` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_rank(d: *const HgDistribution) -> usize {
    d.as_ref().map_or(0, |d| d.inner.r())
}

/// # Safety
/// `d` is a live handle, `x` points to `len` values, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_pmf(
    d: *const HgDistribution,
    x: *const u64,
    len: usize,
    out: *mut f64,
) -> HgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = dist(d)?.pmf(point(x, len)?)?.to_f64();
        Ok(())
    })
}

/// `P(X >= x)` componentwise.
///
/// # Safety
/// `d` is a live handle, `x` points to `len` values, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_reliability(
    d: *const HgDistribution,
    x: *const u64,
    len: usize,
    out: *mut f64,
) -> HgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = dist(d)?.reliability(point(x, len)?)?.to_f64();
        Ok(())
    })
}

/// Writes the `r` hazard rates at `x` into `out`, which holds `out_len`
/// doubles.
///
/// # Safety
/// `d` is a live handle, `x` points to `len` values, `out` to `out_len`.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_hazard(
    d: *const HgDistribution,
    x: *const u64,
    len: usize,
    out: *mut f64,
    out_len: usize,
) -> HgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let h = dist(d)?.hazard(point(x, len)?)?;
        if out_len < h.len() {
            return Err(Failure(
                HgStatus::BufferTooSmall,
                format!("hazard needs {} slots, got {out_len}", h.len()),
            ));
        }
        for (i, v) in h.iter().enumerate() {
            *out.add(i) = v.to_f64();
        }
        Ok(())
    })
}

/// Marginal `P(X_coord <= x)` by direct summation.
///
/// # Safety
/// `d` is a live handle, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_cdf(
    d: *const HgDistribution,
    coord: usize,
    x: u64,
    out: *mut f64,
) -> HgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = dist(d)?.marginal_cdf(coord, x)?.direct.to_f64();
        Ok(())
    })
}

/// # Safety
/// `d` is a live handle, `mean` and `variance` are writable.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_mean_variance(
    d: *const HgDistribution,
    coord: usize,
    mean: *mut f64,
    variance: *mut f64,
) -> HgStatus {
    guard(|| {
        out_ptr(mean, "mean")?;
        out_ptr(variance, "variance")?;
        let (m, v) = dist(d)?.mean_variance(coord)?;
        *mean = m.to_f64();
        *variance = v.to_f64();
        Ok(())
    })
}

/// Normalizing constant `B` by the chosen method.
///
/// # Safety
/// `d` is a live handle, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hg_distribution_normalizer(
    d: *const HgDistribution,
    method: HgNormalizerMethod,
    out: *mut f64,
) -> HgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let method = match method {
            HgNormalizerMethod::Series => NormalizerMethod::Series,
            HgNormalizerMethod::HomogeneousReduction => NormalizerMethod::HomogeneousReduction,
            HgNormalizerMethod::LatticeBruteforce => NormalizerMethod::LatticeBruteforce,
        };
        *out = dist(d)?.normalizer(method)?.b.to_f64();
        Ok(())
    })
}
