//! C ABI over `qmetro`.
//!
//! Every fallible function returns a [`QmStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be copied out with [`qm_last_error_message`]. Quadrature and Monte Carlo
//! settings are opaque handles created and freed through this API; passing
//! a null quadrature handle selects the defaults.

use qmetro::bounds::{heisenberg_bound, holevo_separable_entropy, qpea_statevector, sql_bound};
use qmetro::distributions::{
    hamming_weight_prob, qpea_ddim_prob, qpea_prob, sep_detection_group_prob, sep_optimal_density, two_level_density,
    DensityMode, Parity,
};
use qmetro::mi::{self, Method, MiEstimate};
use qmetro::numerics::{AnalyticConstants, McSpec, QuadratureSpec};
use qmetro::Error;
use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmStatus {
    Ok = 0,
    Domain = 1,
    Config = 2,
    NonConvergence = 3,
    NonFinite = 4,
    CrossCheck = 5,
    Io = 6,
    NullPointer = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmMethod {
    QuadReduced = 0,
    QuadNaive = 1,
    MonteCarlo = 2,
    ClosedForm = 3,
    GaussianApprox = 4,
}

/// A mutual-information estimate. `t == 0` means the strategy has no digit
/// register; `seed` is meaningful only when `has_seed` is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmMiResult {
    pub bits: f64,
    pub err: f64,
    pub method: QmMethod,
    pub n: u64,
    pub d: u64,
    pub t: u32,
    pub has_seed: bool,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmConstants {
    pub euler_gamma: f64,
    pub c_qpea: f64,
    pub c_sql_ent: f64,
    pub c_probe: f64,
    pub c_sep_sep: f64,
    pub c_sep_sep_uncertainty: f64,
}

/// Opaque quadrature settings.
pub struct QmQuadratureSpec(QuadratureSpec);

/// Opaque Monte Carlo settings.
pub struct QmMcSpec(McSpec);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> QmStatus {
    match e {
        Error::Domain(_) => QmStatus::Domain,
        Error::Config(_) => QmStatus::Config,
        Error::NonConvergence { .. } => QmStatus::NonConvergence,
        Error::NonFinite { .. } => QmStatus::NonFinite,
        Error::CrossCheck(_) => QmStatus::CrossCheck,
        Error::Io(_) => QmStatus::Io,
    }
}

/// Run `f`, store its value in `out` and translate errors and panics.
fn guarded<T>(out: *mut T, f: impl FnOnce() -> qmetro::Result<T>) -> QmStatus {
    if out.is_null() {
        set_last_error("output pointer is null".into());
        return QmStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: `out` is non-null and the caller guarantees it is valid for writes.
            unsafe { out.write(v) };
            set_last_error(String::new());
            QmStatus::Ok
        }
        Ok(Err(e)) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            QmStatus::Panic
        }
    }
}

fn quad_or_default(q: *const QmQuadratureSpec) -> QuadratureSpec {
    if q.is_null() {
        QuadratureSpec::default()
    } else {
        // SAFETY: non-null handles come from `qm_quadrature_spec_new`.
        unsafe { (*q).0.clone() }
    }
}

fn method_code(m: Method) -> QmMethod {
    match m {
        Method::QuadReduced => QmMethod::QuadReduced,
        Method::QuadNaive => QmMethod::QuadNaive,
        Method::Mc => QmMethod::MonteCarlo,
        Method::ClosedForm => QmMethod::ClosedForm,
        Method::GaussianApprox => QmMethod::GaussianApprox,
    }
}

fn mi_result(e: MiEstimate) -> QmMiResult {
    let spec = e.spec;
    QmMiResult {
        bits: e.bits,
        err: e.err,
        method: method_code(e.method),
        n: spec.map_or(0, |s| s.n),
        d: spec.map_or(0, |s| s.d),
        t: spec.and_then(|s| s.t).unwrap_or(0),
        has_seed: e.seed.is_some(),
        seed: e.seed.unwrap_or(0),
    }
}

fn mode(gaussian: bool) -> DensityMode {
    if gaussian {
        DensityMode::Gaussian
    } else {
        DensityMode::Exact
    }
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes). Returns the untruncated length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes of writes.
#[no_mangle]
pub unsafe extern "C" fn qm_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: the caller guarantees `len` writable bytes at `buf`.
            unsafe {
                std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Create quadrature settings. `out` receives a handle to free with
/// [`qm_quadrature_spec_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_quadrature_spec_new(
    rel_tol: f64,
    abs_tol: f64,
    max_depth: u32,
    out: *mut *mut QmQuadratureSpec,
) -> QmStatus {
    guarded(out, || {
        let spec = QuadratureSpec::new(rel_tol, abs_tol, max_depth)?;
        Ok(Box::into_raw(Box::new(QmQuadratureSpec(spec))))
    })
}

/// Replace the forced breakpoints (fractions of the integration range).
///
/// # Safety
/// `spec` must be a live handle; `nodes` must be valid for `len` reads.
#[no_mangle]
pub unsafe extern "C" fn qm_quadrature_spec_set_forced_nodes(
    spec: *mut QmQuadratureSpec,
    nodes: *const f64,
    len: usize,
) -> QmStatus {
    if spec.is_null() || (nodes.is_null() && len > 0) {
        set_last_error("null pointer argument".into());
        return QmStatus::NullPointer;
    }
    let mut unit = ();
    guarded(&mut unit, || {
        let nodes = if len == 0 {
            Vec::new()
        } else {
            // SAFETY: checked non-null; the caller guarantees `len` elements.
            unsafe { std::slice::from_raw_parts(nodes, len) }.to_vec()
        };
        // SAFETY: checked non-null; the caller guarantees a live handle.
        let handle = unsafe { &mut *spec };
        handle.0 = handle.0.clone().with_forced_nodes(nodes)?;
        Ok(())
    })
}

/// # Safety
/// `spec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_quadrature_spec_free(spec: *mut QmQuadratureSpec) {
    if !spec.is_null() {
        // SAFETY: the handle came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// Create Monte Carlo settings; free with [`qm_mc_spec_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mc_spec_new(samples: u64, seed: u64, out: *mut *mut QmMcSpec) -> QmStatus {
    guarded(out, || {
        Ok(Box::into_raw(Box::new(QmMcSpec(McSpec::new(samples, seed)?))))
    })
}

/// # Safety
/// `spec` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qm_mc_spec_free(spec: *mut QmMcSpec) {
    if !spec.is_null() {
        // SAFETY: the handle came from `Box::into_raw` and is freed once.
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_constants(out: *mut QmConstants) -> QmStatus {
    guarded(out, || {
        let c = AnalyticConstants::new();
        Ok(QmConstants {
            euler_gamma: c.euler_gamma,
            c_qpea: c.c_qpea,
            c_sql_ent: c.c_sql_ent,
            c_probe: c.c_probe,
            c_sep_sep: c.c_sep_sep,
            c_sep_sep_uncertainty: c.c_sep_sep_uncertainty,
        })
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_qpea_prob(m: u64, phi: f64, n: u64, out: *mut f64) -> QmStatus {
    guarded(out, || qpea_prob(m, phi, n))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_qpea_ddim_prob(m: u64, phi: f64, d: u64, t: u32, out: *mut f64) -> QmStatus {
    guarded(out, || qpea_ddim_prob(m, phi, d, t))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_hamming_weight_prob(kappa: u64, phi: f64, n: u64, out: *mut f64) -> QmStatus {
    guarded(out, || hamming_weight_prob(kappa, phi, n))
}

/// Parity probability of N00N group `j`; `odd` selects the odd outcome.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_sep_detection_group_prob(odd: bool, phi: f64, j: u32, out: *mut f64) -> QmStatus {
    let parity = if odd { Parity::Odd } else { Parity::Even };
    guarded(out, || sep_detection_group_prob(parity, phi, j))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_sep_optimal_density(theta: f64, n: u64, gaussian: bool, out: *mut f64) -> QmStatus {
    guarded(out, || sep_optimal_density(theta, n, mode(gaussian)))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_two_level_density(theta: f64, d: u64, out: *mut f64) -> QmStatus {
    guarded(out, || two_level_density(theta, d))
}

/// # Safety
/// `q` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_qpea_reduced(n: u64, q: *const QmQuadratureSpec, out: *mut QmMiResult) -> QmStatus {
    let q = quad_or_default(q);
    guarded(out, || mi::mi_qpea_reduced(n, &q).map(mi_result))
}

/// # Safety
/// `q` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_qpea_naive(n: u64, q: *const QmQuadratureSpec, out: *mut QmMiResult) -> QmStatus {
    let q = quad_or_default(q);
    guarded(out, || mi::mi_qpea_naive(n, &q).map(mi_result))
}

/// # Safety
/// `q` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_qpea_ddim(d: u64, t: u32, q: *const QmQuadratureSpec, out: *mut QmMiResult) -> QmStatus {
    let q = quad_or_default(q);
    guarded(out, || mi::mi_qpea_ddim(d, t, &q).map(mi_result))
}

/// # Safety
/// `q` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_sep_optimal(
    n: u64,
    gaussian: bool,
    q: *const QmQuadratureSpec,
    out: *mut QmMiResult,
) -> QmStatus {
    let q = quad_or_default(q);
    guarded(out, || mi::mi_sep_optimal(n, mode(gaussian), &q).map(mi_result))
}

/// # Safety
/// `mc` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_sep_optimal_mc(n: u64, mc: *const QmMcSpec, out: *mut QmMiResult) -> QmStatus {
    if mc.is_null() {
        set_last_error("Monte Carlo handle is null".into());
        return QmStatus::NullPointer;
    }
    // SAFETY: checked non-null; handles come from `qm_mc_spec_new`.
    let mc = unsafe { (*mc).0 };
    guarded(out, || mi::mi_sep_optimal_mc(n, &mc).map(mi_result))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_hamming_closed(n: u64, out: *mut QmMiResult) -> QmStatus {
    guarded(out, || mi::mi_hamming_closed(n).map(mi_result))
}

/// # Safety
/// `q` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_hamming_quadrature(
    n: u64,
    q: *const QmQuadratureSpec,
    out: *mut QmMiResult,
) -> QmStatus {
    let q = quad_or_default(q);
    guarded(out, || mi::mi_hamming_quadrature(n, &q).map(mi_result))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_sep_detection(t: u32, out: *mut QmMiResult) -> QmStatus {
    guarded(out, || mi::mi_sep_detection_qpea(t).map(mi_result))
}

/// # Safety
/// `q` must be null or a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_mi_two_level(d: u64, q: *const QmQuadratureSpec, out: *mut QmMiResult) -> QmStatus {
    let q = quad_or_default(q);
    guarded(out, || mi::mi_two_level(d, &q).map(mi_result))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_heisenberg_bound(n: u64, out: *mut f64) -> QmStatus {
    guarded(out, || heisenberg_bound(n))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_sql_bound(n: u64, out: *mut f64) -> QmStatus {
    guarded(out, || sql_bound(n))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qm_holevo_separable_entropy(n: u64, out: *mut f64) -> QmStatus {
    guarded(out, || holevo_separable_entropy(n))
}

/// Simulated QPEA outcome distribution for `t` qubits, written to
/// `buf[0..2^t]`. `len` must be at least `2^t`.
///
/// # Safety
/// `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qm_qpea_statevector(t: u32, phi: f64, buf: *mut f64, len: usize) -> QmStatus {
    if buf.is_null() {
        set_last_error("output buffer is null".into());
        return QmStatus::NullPointer;
    }
    let mut unit = ();
    guarded(&mut unit, || {
        let probs = qpea_statevector(t, phi)?;
        if probs.len() > len {
            return Err(Error::Domain(format!(
                "buffer holds {len} values, {} needed",
                probs.len()
            )));
        }
        // SAFETY: `buf` is non-null and valid for `len >= probs.len()` writes.
        unsafe { std::ptr::copy_nonoverlapping(probs.as_ptr(), buf, probs.len()) };
        Ok(())
    })
}
