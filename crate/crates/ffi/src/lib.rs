//! C ABI over `qecc-lab`.
//!
//! Every fallible call returns a [`QeccStatus`]. On failure the message is
//! kept per thread and can be copied out with [`qecc_last_error_message`].
//! Codes are opaque handles created by [`qecc_code_new`] and released with
//! [`qecc_code_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qecc_lab::fidelity::{compute_f, FidelityCurve, Rational, Universe};
use qecc_lab::noise::{parse_error_spec, YConvention};
use qecc_lab::report::{full_universe, reference_universe};
use qecc_lab::{
    build_code, run_pipeline, CodeName, CodeSpec, Pauli1, PauliString, PipelineOptions, Policy,
    QeccError,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QeccStatus {
    Ok = 0,
    NullPointer = 1,
    /// Unparseable name, label or spec, or an out-of-range argument.
    InvalidArgument = 2,
    /// The simulation hit a state it cannot classify.
    InvariantViolation = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QeccPolicy {
    CorrectThenDecode = 0,
    DecodeOnly = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QeccUniverse {
    ReferenceTables = 0,
    FullXz = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QeccPauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

/// Summary of one pipeline run. `syndrome` holds the bits with the first
/// generator in the most significant position of `syndrome_len` bits.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QeccPipelineResult {
    pub has_syndrome: bool,
    pub syndrome: u64,
    pub syndrome_len: u32,
    pub syndrome_measured: bool,
    pub residual: QeccPauli,
    /// Global phase `i^phase_exp` of the residual.
    pub phase_exp: u8,
    pub error_norm: f64,
    pub probe_fidelity: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QeccFnReport {
    pub total: u32,
    pub identity: u32,
    pub f_numer: i64,
    pub f_denom: i64,
}

/// Opaque code handle.
pub struct QeccCode(CodeSpec);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: QeccStatus, msg: impl Into<String>) -> QeccStatus {
    set_error(msg);
    status
}

fn from_error(e: QeccError) -> QeccStatus {
    use QeccError::*;
    let status = match e {
        EntangledResidual { .. }
        | Unclassifiable { .. }
        | NotPauliDiagnosable { .. }
        | InvalidDensity(_) => QeccStatus::InvariantViolation,
        _ => QeccStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting panics into `QeccStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), QeccStatus>) -> QeccStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QeccStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(QeccStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(ptr: *const c_char) -> Result<&'a str, QeccStatus> {
    if ptr.is_null() {
        return Err(fail(QeccStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(QeccStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn code_ref<'a>(code: *const QeccCode) -> Result<&'a CodeSpec, QeccStatus> {
    code.as_ref()
        .map(|c| &c.0)
        .ok_or_else(|| fail(QeccStatus::NullPointer, "null code handle"))
}

unsafe fn out_ref<'a, T>(ptr: *mut T) -> Result<&'a mut T, QeccStatus> {
    ptr.as_mut()
        .ok_or_else(|| fail(QeccStatus::NullPointer, "null output pointer"))
}

fn pauli_tag(p: Pauli1) -> QeccPauli {
    match p {
        Pauli1::I => QeccPauli::I,
        Pauli1::X => QeccPauli::X,
        Pauli1::Y => QeccPauli::Y,
        Pauli1::Z => QeccPauli::Z,
    }
}

/// Copies the calling thread's last error message, NUL-terminated, into
/// `buf`. Returns the message length in bytes excluding the terminator;
/// nothing is written when `buf` is null or `len` is too small.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qecc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > msg.len() {
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, msg.len());
            *buf.add(msg.len()) = 0;
        }
        msg.len()
    })
}

/// Builds one of `bitflip3`, `phaseflip3`, `shor9`, `steane7`, `five5`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qecc_code_new(name: *const c_char, out: *mut *mut QeccCode) -> QeccStatus {
    guard(|| {
        let out = out_ref(out)?;
        let name: CodeName = text(name)?.parse().map_err(from_error)?;
        let code = build_code(name).map_err(from_error)?;
        *out = Box::into_raw(Box::new(QeccCode(code)));
        Ok(())
    })
}

/// Releases a handle from [`qecc_code_new`]. Null is ignored.
///
/// # Safety
/// `code` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn qecc_code_free(code: *mut QeccCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Physical qubit count, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qecc_code_num_qubits(code: *const QeccCode) -> u32 {
    code.as_ref().map_or(0, |c| c.0.n as u32)
}

/// Generator count (syndrome length), or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qecc_code_num_generators(code: *const QeccCode) -> u32 {
    code.as_ref().map_or(0, |c| c.0.generator_count() as u32)
}

/// Commutation syndrome of a Pauli label such as `"X1 Z4"`, written as
/// ASCII `'0'`/`'1'` plus a terminator. `len` must exceed the generator count.
///
/// # Safety
/// `code` must be a live handle, `pauli` NUL-terminated, `buf` valid for `len`
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn qecc_code_syndrome(
    code: *const QeccCode,
    pauli: *const c_char,
    buf: *mut c_char,
    len: usize,
) -> QeccStatus {
    guard(|| {
        let code = code_ref(code)?;
        let p = PauliString::parse(code.n, text(pauli)?).map_err(from_error)?;
        let s = code.syndrome_of(&p).map_err(from_error)?.to_string();
        if buf.is_null() {
            return Err(fail(QeccStatus::NullPointer, "null output buffer"));
        }
        if len <= s.len() {
            return Err(fail(
                QeccStatus::BufferTooSmall,
                format!("need {} bytes", s.len() + 1),
            ));
        }
        std::ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
        *buf.add(s.len()) = 0;
        Ok(())
    })
}

/// Encodes the generic probe, applies `error_spec` (`none`, Pauli tokens or
/// `c:co,cx,cy,cz` on `qubit`), then corrects or not and decodes.
///
/// # Safety
/// `code` must be a live handle, `error_spec` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qecc_run_pipeline(
    code: *const QeccCode,
    error_spec: *const c_char,
    qubit: u32,
    policy: QeccPolicy,
    seed: u64,
    out: *mut QeccPipelineResult,
) -> QeccStatus {
    guard(|| {
        let code = code_ref(code)?;
        let out = out_ref(out)?;
        let error = parse_error_spec(
            text(error_spec)?,
            code.n,
            qubit as usize,
            YConvention::Injected,
        )
        .map_err(from_error)?;
        let opts = PipelineOptions {
            policy: match policy {
                QeccPolicy::CorrectThenDecode => Policy::CorrectThenDecode,
                QeccPolicy::DecodeOnly => Policy::DecodeOnly,
            },
            seed,
            ..PipelineOptions::default()
        };
        let r = run_pipeline(code, &error, &opts).map_err(from_error)?;
        *out = QeccPipelineResult {
            has_syndrome: r.syndrome.is_some(),
            syndrome: r.syndrome.as_ref().map_or(0, |s| s.value() as u64),
            syndrome_len: code.generator_count() as u32,
            syndrome_measured: r.measured,
            residual: pauli_tag(r.residual.logical),
            phase_exp: r.residual.global_phase.exp(),
            error_norm: r.error_norm,
            probe_fidelity: r.overlap_fidelity,
        };
        Ok(())
    })
}

/// Double-error census and exact `f` for `shor9`, `steane7` or `five5`.
/// The reference-table universe exists for those three codes only.
///
/// # Safety
/// `code` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qecc_compute_f(
    code: *const QeccCode,
    universe: QeccUniverse,
    out: *mut QeccFnReport,
) -> QeccStatus {
    guard(|| {
        let code = code_ref(code)?;
        let out = out_ref(out)?;
        let (u, errors) = match universe {
            QeccUniverse::ReferenceTables => (Universe::ReferenceTables, reference_universe(code)),
            QeccUniverse::FullXz => (Universe::FullXz, full_universe(code)),
        };
        let errors = errors.map_err(from_error)?;
        let rep = compute_f(code, u, &errors).map_err(from_error)?;
        *out = QeccFnReport {
            total: rep.total as u32,
            identity: rep.identity as u32,
            f_numer: *rep.f.numer(),
            f_denom: *rep.f.denom(),
        };
        Ok(())
    })
}

/// Average fidelity at error probability `p`: `1 - (2/3) p` when
/// `f_denom == 0` (no protection), else `1 - (1 - f) p^2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qecc_curve_value(
    f_numer: i64,
    f_denom: i64,
    p: f64,
    out: *mut f64,
) -> QeccStatus {
    guard(|| {
        let out = out_ref(out)?;
        let curve = if f_denom == 0 {
            FidelityCurve::unprotected()
        } else {
            if f_denom < 0 || f_numer < 0 || f_numer > f_denom {
                return Err(fail(
                    QeccStatus::InvalidArgument,
                    format!("f = {f_numer}/{f_denom} outside [0, 1]"),
                ));
            }
            FidelityCurve::for_code("C", Rational::new(f_numer, f_denom))
        };
        *out = curve.value(p).map_err(from_error)?;
        Ok(())
    })
}
