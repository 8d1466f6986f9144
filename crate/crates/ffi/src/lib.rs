//! C interface to `superell`.
//!
//! Every entry point returns an [`SeStatus`]. On failure the message is kept
//! per thread and can be read with [`se_last_error`]. Strings handed out by
//! this library must be released with [`se_string_free`], handles with their
//! matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use superell::bounds::{theorem_hyper_bound, theorem_st_bound, theorem_super_bound, BoundInputs, LogBound};
use superell::cli::{run, CliError, RunConfig};
use superell::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Hypothesis = 4,
    VerificationFailed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeBoundKind {
    Super = 0,
    Hyper = 1,
    St = 2,
}

/// Numeric invariants for a bound evaluation.
///
/// The three big integers are decimal strings; NULL means 1.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SeBoundInputs {
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub s: u32,
    pub t: u32,
    pub abs_disc: *const c_char,
    pub q_s: *const c_char,
    pub p_s: *const c_char,
    pub h_hat: f64,
}

/// A parsed run configuration.
pub struct SeConfig {
    inner: RunConfig,
}

/// The outcome of [`se_run`].
pub struct SeReport {
    exit_code: i32,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(SeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Hypothesis(_) => SeStatus::Hypothesis,
            _ => SeStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let msg = match &e.key {
            Some(k) => format!("{k}: {}", e.message),
            None => e.message.clone(),
        };
        let status = if e.message.starts_with("hypothesis violated") {
            SeStatus::Hypothesis
        } else {
            SeStatus::InvalidInput
        };
        Failure(status, msg)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SeStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SeStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SeStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SeStatus::NullPointer, format!("{name} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SeStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn read_bigint(p: *const c_char, name: &str) -> Result<BigInt, Failure> {
    if p.is_null() {
        return Ok(BigInt::from(1));
    }
    let s = read_str(p, name)?;
    s.trim()
        .parse()
        .map_err(|_| Failure(SeStatus::InvalidInput, format!("{name}: not an integer: {s:?}")))
}

fn to_c_string(s: String) -> CString {
    CString::new(s.replace('\0', " ")).expect("no interior NUL")
}

/// Message of the last failure on this thread, or NULL.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn se_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn se_string_free(s: *mut c_char) {
    if s.is_null() {
        return;
    }
    drop(CString::from_raw(s));
}

/// Evaluate one of the theorem bounds and write its natural logarithm to `out_log`.
///
/// # Safety
/// `inputs` and `out_log` must be valid pointers; the strings inside
/// `inputs` must be NULL or NUL-terminated. `out_json`, if not NULL, receives
/// a string describing the bound terms that the caller frees with [`se_string_free`].
#[no_mangle]
pub unsafe extern "C" fn se_theorem_bound(
    kind: SeBoundKind,
    inputs: *const SeBoundInputs,
    out_log: *mut f64,
    out_json: *mut *mut c_char,
) -> SeStatus {
    guard(|| {
        if inputs.is_null() || out_log.is_null() {
            return Err(Failure(SeStatus::NullPointer, "inputs or out_log is NULL".into()));
        }
        let i = &*inputs;
        let b = BoundInputs {
            n: i.n,
            m: i.m,
            d: i.d,
            s: i.s,
            t: i.t,
            abs_disc: read_bigint(i.abs_disc, "abs_disc")?,
            q_s: read_bigint(i.q_s, "q_s")?,
            p_s: read_bigint(i.p_s, "p_s")?,
            h_hat: i.h_hat,
            exact: None,
        };
        let bound: LogBound = match kind {
            SeBoundKind::Super => theorem_super_bound(&b)?,
            SeBoundKind::Hyper => theorem_hyper_bound(&b)?,
            SeBoundKind::St => theorem_st_bound(&b)?,
        };
        *out_log = bound.log_nat;
        if !out_json.is_null() {
            let text = serde_json::to_string(&bound).expect("bound serializes");
            *out_json = to_c_string(text).into_raw();
        }
        Ok(())
    })
}

/// Parse a TOML run configuration.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a valid pointer. On
/// success `*out` owns a handle to release with [`se_config_free`].
#[no_mangle]
pub unsafe extern "C" fn se_config_from_toml(toml: *const c_char, out: *mut *mut SeConfig) -> SeStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(SeStatus::NullPointer, "out is NULL".into()));
        }
        *out = ptr::null_mut();
        let text = read_str(toml, "toml")?;
        let inner = RunConfig::from_toml(text)?;
        *out = Box::into_raw(Box::new(SeConfig { inner }));
        Ok(())
    })
}

/// Override the worker count of a configuration. Zero restores the default.
///
/// # Safety
/// `config` must be a live handle from [`se_config_from_toml`].
#[no_mangle]
pub unsafe extern "C" fn se_config_set_workers(config: *mut SeConfig, workers: u32) -> SeStatus {
    guard(|| {
        let c = config
            .as_mut()
            .ok_or_else(|| Failure(SeStatus::NullPointer, "config is NULL".into()))?;
        c.inner.workers = (workers > 0).then_some(workers as usize);
        Ok(())
    })
}

/// # Safety
/// `config` must be NULL or a handle from [`se_config_from_toml`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn se_config_free(config: *mut SeConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Run the configured mode. A failed verification still produces a report
/// and returns [`SeStatus::VerificationFailed`].
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer. On success or
/// verification failure `*out` owns a handle to release with [`se_report_free`].
#[no_mangle]
pub unsafe extern "C" fn se_run(config: *const SeConfig, out: *mut *mut SeReport) -> SeStatus {
    let mut failed = false;
    let status = guard(|| {
        if out.is_null() {
            return Err(Failure(SeStatus::NullPointer, "out is NULL".into()));
        }
        *out = ptr::null_mut();
        let c = config
            .as_ref()
            .ok_or_else(|| Failure(SeStatus::NullPointer, "config is NULL".into()))?;
        let (exit_code, doc) = run(&c.inner)?;
        failed = exit_code != 0;
        let json = to_c_string(serde_json::to_string(&doc).expect("report serializes"));
        *out = Box::into_raw(Box::new(SeReport { exit_code, json }));
        Ok(())
    });
    if status == SeStatus::Ok && failed {
        set_error("verification failed");
        return SeStatus::VerificationFailed;
    }
    status
}

/// The report as a JSON document, owned by the report.
///
/// # Safety
/// `report` must be NULL or a live handle from [`se_run`].
#[no_mangle]
pub unsafe extern "C" fn se_report_json(report: *const SeReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// The process exit code the command-line tool would return for this report.
///
/// # Safety
/// `report` must be NULL or a live handle from [`se_run`].
#[no_mangle]
pub unsafe extern "C" fn se_report_exit_code(report: *const SeReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.exit_code)
}

/// # Safety
/// `report` must be NULL or a handle from [`se_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn se_report_free(report: *mut SeReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Parse, run and serialize in one call.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out_json` a valid pointer.
/// The returned string is freed with [`se_string_free`].
#[no_mangle]
pub unsafe extern "C" fn se_run_toml(toml: *const c_char, out_json: *mut *mut c_char) -> SeStatus {
    if out_json.is_null() {
        set_error("out_json is NULL");
        return SeStatus::NullPointer;
    }
    *out_json = ptr::null_mut();
    let mut config = ptr::null_mut();
    let status = se_config_from_toml(toml, &mut config);
    if status != SeStatus::Ok {
        return status;
    }
    let mut report = ptr::null_mut();
    let status = se_run(config, &mut report);
    se_config_free(config);
    if let Some(r) = report.as_ref() {
        *out_json = r.json.clone().into_raw();
    }
    se_report_free(report);
    status
}
