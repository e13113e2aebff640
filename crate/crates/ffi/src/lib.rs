//! C ABI for polykernel.
//!
//! Every function returns a `PkStatus`; results come back through out
//! pointers. Trees and verification reports are opaque handles owned by the
//! caller and released with their `_free` function. The message of the last
//! failure on the calling thread is available from `pk_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polykernel::expansions::{azimuthal_power_toroidal, euler_kernel_chebyshev, euler_kernel_jacobi, multipole_power};
use polykernel::polyspherical::{count_equivalence_classes, count_trees, format_tree, parse_tree, Tree};
use polykernel::specfun::legendre_q_hat;
use polykernel::summation::{PartialSum, Truncation};
use polykernel::verify::{verify, Status, TheoremConfig, TheoremId, VerificationReport};
use polykernel::Error;

/// Status codes; the numerical ones match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkStatus {
    PkOk = 0,
    PkFail = 1,
    PkInvalidInput = 2,
    PkExclusion = 3,
    PkNoConvergence = 4,
    PkTruncationInsufficient = 5,
    PkNullPointer = 6,
    PkOverflow = 7,
    PkPanic = 8,
}

/// Theorem selector for `pk_verify`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PkTheorem {
    PkStandard = 0,
    PkHopf = 1,
    PkBa = 2,
    PkB2a = 3,
    PkCa2 = 4,
}

/// Parsed polyspherical tree.
pub struct PkTree(Tree);

/// Outcome of an addition-theorem check.
pub struct PkReport(VerificationReport);

/// Value of a truncated series.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PkSeries {
    pub value: f64,
    pub terms_used: usize,
    pub last_term_magnitude: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> PkStatus {
    match e {
        Error::ExclusionSet { .. } => PkStatus::PkExclusion,
        Error::Convergence { .. } | Error::SlowConvergence { .. } => PkStatus::PkNoConvergence,
        Error::Overflow { .. } => PkStatus::PkOverflow,
        Error::Pole { .. } => PkStatus::PkFail,
        _ => PkStatus::PkInvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), PkStatus>) -> PkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PkStatus::PkOk,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            PkStatus::PkPanic
        }
    }
}

fn lift<T>(r: polykernel::Result<T>) -> Result<T, PkStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn nonnull<T>(p: *const T, what: &str) -> Result<(), PkStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        Err(PkStatus::PkNullPointer)
    } else {
        Ok(())
    }
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_series(out: *mut PkSeries, s: PartialSum) -> Result<(), PkStatus> {
    nonnull(out, "out")?;
    *out = PkSeries {
        value: s.value,
        terms_used: s.terms_used,
        last_term_magnitude: s.last_term_magnitude,
    };
    Ok(())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Phase-free Legendre function of the second kind e^{−iπμ} Q_ν^μ(z), z > 1.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_legendre_q_hat(nu: f64, mu: f64, z: f64, out: *mut f64) -> PkStatus {
    guard(|| {
        nonnull(out, "out")?;
        *out = lift(legendre_q_hat(nu, mu, z))?.value;
        Ok(())
    })
}

/// Jacobi expansion of (z − x)^{−ν}.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_euler_kernel_jacobi(
    nu: f64,
    alpha: f64,
    beta: f64,
    z: f64,
    x: f64,
    tol: f64,
    max_terms: usize,
    out: *mut PkSeries,
) -> PkStatus {
    guard(|| {
        let s = lift(euler_kernel_jacobi(
            nu,
            alpha,
            beta,
            z,
            x,
            Truncation::new(tol, max_terms),
        ))?;
        write_series(out, s)
    })
}

/// Chebyshev expansion of (z − x)^{−ν}.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_euler_kernel_chebyshev(
    nu: f64,
    z: f64,
    x: f64,
    tol: f64,
    max_terms: usize,
    out: *mut PkSeries,
) -> PkStatus {
    guard(|| {
        let s = lift(euler_kernel_chebyshev(nu, z, x, Truncation::new(tol, max_terms)))?;
        write_series(out, s)
    })
}

/// Gegenbauer expansion of ‖x − x′‖^ν on R^d from r, r′ and cos γ.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_multipole_power(
    d: u32,
    nu: f64,
    r: f64,
    rp: f64,
    cos_gamma: f64,
    tol: f64,
    max_terms: usize,
    out: *mut PkSeries,
) -> PkStatus {
    guard(|| {
        let s = lift(multipole_power(
            d,
            nu,
            r,
            rp,
            cos_gamma,
            Truncation::new(tol, max_terms),
        ))?;
        write_series(out, s)
    })
}

/// Azimuthal Fourier expansion of ‖x − x′‖^ν from toroidal data.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_azimuthal_power(
    nu: f64,
    chi: f64,
    two_rr: f64,
    delta_phi: f64,
    tol: f64,
    max_terms: usize,
    out: *mut PkSeries,
) -> PkStatus {
    guard(|| {
        let s = lift(azimuthal_power_toroidal(
            nu,
            chi,
            two_rr,
            delta_phi,
            Truncation::new(tol, max_terms),
        ))?;
        write_series(out, s)
    })
}

/// Number of trees and of mirror classes with `d` leaves. Fails with
/// `PkOverflow` once the counts leave 64 bits.
///
/// # Safety
/// `trees` and `classes` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_tree_counts(d: usize, trees: *mut u64, classes: *mut u64) -> PkStatus {
    guard(|| {
        nonnull(trees, "trees")?;
        nonnull(classes, "classes")?;
        if d == 0 {
            set_error("d must be positive");
            return Err(PkStatus::PkInvalidInput);
        }
        let fit = |n: &dyn ToString| {
            n.to_string().parse::<u64>().map_err(|_| {
                set_error(format!("count for d = {d} exceeds 64 bits"));
                PkStatus::PkOverflow
            })
        };
        *trees = fit(&count_trees(d))?;
        *classes = fit(&count_equivalence_classes(d))?;
        Ok(())
    })
}

/// Parses a tree spelling such as "b^2a" into a new handle.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_tree_parse(spec: *const c_char, out: *mut *mut PkTree) -> PkStatus {
    guard(|| {
        nonnull(spec, "spec")?;
        nonnull(out, "out")?;
        *out = ptr::null_mut();
        let s = CStr::from_ptr(spec).to_str().map_err(|_| {
            set_error("spec is not UTF-8");
            PkStatus::PkInvalidInput
        })?;
        let t = lift(parse_tree(s).map_err(Error::from))?;
        *out = Box::into_raw(Box::new(PkTree(t)));
        Ok(())
    })
}

/// Releases a tree; null is ignored.
///
/// # Safety
/// `tree` must come from `pk_tree_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pk_tree_free(tree: *mut PkTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Ambient dimension of a tree, or 0 for null.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pk_tree_dimension(tree: *const PkTree) -> usize {
    tree.as_ref().map_or(0, |t| t.0.dimension())
}

/// Writes the canonical spelling into `buf` (capacity `len`, NUL included).
/// `needed` receives the required capacity; a short buffer gives
/// `PkInvalidInput` and leaves `buf` untouched.
///
/// # Safety
/// `tree` must be a live handle, `buf` valid for `len` bytes (or null when
/// `len` is 0) and `needed` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_tree_format(
    tree: *const PkTree,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> PkStatus {
    guard(|| {
        nonnull(tree, "tree")?;
        let s = format_tree(&(*tree).0);
        let n = s.len() + 1;
        if !needed.is_null() {
            *needed = n;
        }
        if len < n {
            set_error(format!("buffer needs {n} bytes"));
            return Err(PkStatus::PkInvalidInput);
        }
        nonnull(buf, "buf")?;
        ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
        *buf.add(s.len()) = 0;
        Ok(())
    })
}

/// Checks one addition theorem. `order` is d for `PkStandard`, q for
/// `PkHopf` and ignored otherwise; `caps` may be null (default caps).
/// Angle arrays follow the command-line order: polar angles, then azimuths.
///
/// # Safety
/// `angles` and `angles_p` must hold `n_angles` values, `caps` null or
/// `n_caps` values, and `out` be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_verify(
    theorem: PkTheorem,
    order: u32,
    nu: f64,
    m: i64,
    r: f64,
    rp: f64,
    angles: *const f64,
    angles_p: *const f64,
    n_angles: usize,
    caps: *const usize,
    n_caps: usize,
    tol: f64,
    out: *mut *mut PkReport,
) -> PkStatus {
    guard(|| {
        nonnull(angles, "angles")?;
        nonnull(angles_p, "angles_p")?;
        nonnull(out, "out")?;
        *out = ptr::null_mut();
        let id = match theorem {
            PkTheorem::PkStandard => TheoremId::Standard,
            PkTheorem::PkHopf => TheoremId::Hopf,
            PkTheorem::PkBa => TheoremId::Ba,
            PkTheorem::PkB2a => TheoremId::B2a,
            PkTheorem::PkCa2 => TheoremId::Ca2,
        };
        let a = std::slice::from_raw_parts(angles, n_angles).to_vec();
        let b = std::slice::from_raw_parts(angles_p, n_angles).to_vec();
        let mut cfg = TheoremConfig::new(id, nu, m, r, rp, a, b).with_tol(tol);
        if matches!(id, TheoremId::Standard | TheoremId::Hopf) {
            cfg = cfg.with_order(order);
        }
        if !caps.is_null() && n_caps > 0 {
            cfg = cfg.with_caps(std::slice::from_raw_parts(caps, n_caps).to_vec());
        }
        let rep = lift(verify(&cfg))?;
        *out = Box::into_raw(Box::new(PkReport(rep)));
        Ok(())
    })
}

/// Releases a report; null is ignored.
///
/// # Safety
/// `report` must come from `pk_verify` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pk_report_free(report: *mut PkReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// `PkOk`, `PkFail` or `PkTruncationInsufficient` for a report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pk_report_status(report: *const PkReport) -> PkStatus {
    match report.as_ref() {
        None => PkStatus::PkNullPointer,
        Some(r) => match r.0.status {
            Status::Pass => PkStatus::PkOk,
            Status::Fail => PkStatus::PkFail,
            Status::TruncationInsufficient => PkStatus::PkTruncationInsufficient,
        },
    }
}

/// Reads lhs, rhs, relative error and tail estimate; any out pointer may be null.
///
/// # Safety
/// `report` must be a live handle; non-null out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn pk_report_values(
    report: *const PkReport,
    lhs: *mut f64,
    rhs: *mut f64,
    rel_err: *mut f64,
    tail: *mut f64,
) -> PkStatus {
    guard(|| {
        nonnull(report, "report")?;
        let r = &(*report).0;
        for (p, v) in [
            (lhs, r.lhs),
            (rhs, r.rhs),
            (rel_err, r.rel_err),
            (tail, r.tail_estimate),
        ] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Toroidal parameter χ of the configuration in a report.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pk_report_chi(report: *const PkReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.0.chi)
}
