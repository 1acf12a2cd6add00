// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over `zqoc`.
//!
//! Objects are opaque handles created by `zqoc_*_new`/`zqoc_solve` and
//! released with the matching `*_free`. Every fallible call returns a
//! [`ZqocStatus`]; on failure, `zqoc_last_error_message` describes the error
//! for the calling thread. Matrices are exchanged as separate row-major real
//! and imaginary `double` arrays of length n².

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use zqoc::algebra::{Basis, CMatrix};
use zqoc::brachistochrone::GeodesicSolution;
use zqoc::cli::CliError;
use zqoc::io::ProblemConfig;
use zqoc::ZqocError;

/// Status codes. Values 1–4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZqocStatus {
    Ok = 0,
    Numerical = 1,
    InvalidInput = 2,
    StrongWind = 3,
    NoRoot = 4,
    NullPointer = 6,
    Panic = 7,
    BufferTooSmall = 8,
}

/// A parsed and validated problem configuration.
pub struct ZqocProblem {
    config: ProblemConfig,
}

/// A solved time-optimal geodesic with its control-field basis.
pub struct ZqocSolution {
    solution: GeodesicSolution,
    basis: Basis,
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

fn fail(e: ZqocError) -> ZqocStatus {
    let e = CliError::Solver(e);
    set_error(e.to_string());
    match e.exit_code() {
        1 => ZqocStatus::Numerical,
        3 => ZqocStatus::StrongWind,
        4 => ZqocStatus::NoRoot,
        _ => ZqocStatus::InvalidInput,
    }
}

/// Runs `f`, converting panics into [`ZqocStatus::Panic`].
fn guard(f: impl FnOnce() -> ZqocStatus) -> ZqocStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            ZqocStatus::Panic
        }
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)));
            return ZqocStatus::NullPointer;
        })+
    };
}

/// Writes `m` into caller buffers of length `len`, which must be ≥ n².
unsafe fn write_matrix(m: &CMatrix, re: *mut f64, im: *mut f64, len: usize) -> ZqocStatus {
    let n = m.nrows();
    if len < n * n {
        set_error(format!("buffer of length {len} is smaller than {}", n * n));
        return ZqocStatus::BufferTooSmall;
    }
    let re = std::slice::from_raw_parts_mut(re, n * n);
    let im = std::slice::from_raw_parts_mut(im, n * n);
    for i in 0..n {
        for j in 0..n {
            re[i * n + j] = m[(i, j)].re;
            im[i * n + j] = m[(i, j)].im;
        }
    }
    ZqocStatus::Ok
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next `zqoc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn zqoc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zqoc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a JSON problem configuration.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zqoc_problem_new(json: *const c_char, out: *mut *mut ZqocProblem) -> ZqocStatus {
    guard(|| {
        non_null!(json, out);
        *out = std::ptr::null_mut();
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            set_error("configuration is not valid UTF-8");
            return ZqocStatus::InvalidInput;
        };
        match ProblemConfig::from_json(text) {
            Ok(config) => {
                *out = Box::into_raw(Box::new(ZqocProblem { config }));
                ZqocStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `problem` must come from `zqoc_problem_new` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn zqoc_problem_free(problem: *mut ZqocProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Matrix dimension n of the problem.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zqoc_problem_dim(problem: *const ZqocProblem, out: *mut usize) -> ZqocStatus {
    guard(|| {
        non_null!(problem, out);
        *out = (*problem).config.n;
        ZqocStatus::Ok
    })
}

/// Solves for the optimal time and geodesic.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zqoc_solve(problem: *const ZqocProblem, out: *mut *mut ZqocSolution) -> ZqocStatus {
    guard(|| {
        non_null!(problem, out);
        *out = std::ptr::null_mut();
        let cfg = &(*problem).config;
        let result = (|| {
            let solution = GeodesicSolution::solve(&cfg.drift()?, &cfg.gate()?, &cfg.constraint_norm()?, &cfg.scan())?;
            Ok(ZqocSolution {
                solution,
                basis: cfg.basis_for_fields()?,
            })
        })();
        match result {
            Ok(sol) => {
                *out = Box::into_raw(Box::new(sol));
                ZqocStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `solution` must come from `zqoc_solve` and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn zqoc_solution_free(solution: *mut ZqocSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zqoc_solution_t_opt(solution: *const ZqocSolution, out: *mut f64) -> ZqocStatus {
    guard(|| {
        non_null!(solution, out);
        *out = (*solution).solution.t_opt;
        ZqocStatus::Ok
    })
}

/// Number of control fields, i.e. n² − 1.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zqoc_solution_field_count(solution: *const ZqocSolution, out: *mut usize) -> ZqocStatus {
    guard(|| {
        non_null!(solution, out);
        *out = (*solution).basis.len();
        ZqocStatus::Ok
    })
}

/// Propagator U(t) for 0 ≤ t ≤ T.
///
/// # Safety
/// `re` and `im` must each hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zqoc_solution_trajectory(
    solution: *const ZqocSolution,
    t: f64,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> ZqocStatus {
    guard(|| {
        non_null!(solution, re, im);
        match (*solution).solution.trajectory_at(t) {
            Ok(u) => write_matrix(u.matrix(), re, im, len),
            Err(e) => fail(e),
        }
    })
}

/// Hermitian control Hamiltonian Ĥ_c(t) for 0 ≤ t ≤ T.
///
/// # Safety
/// `re` and `im` must each hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zqoc_solution_control_hamiltonian(
    solution: *const ZqocSolution,
    t: f64,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> ZqocStatus {
    guard(|| {
        non_null!(solution, re, im);
        match (*solution).solution.control_hamiltonian_at(t) {
            Ok(xi) => write_matrix(&xi.hamiltonian(), re, im, len),
            Err(e) => fail(e),
        }
    })
}

/// Control fields f_k(t) in the generator basis, as written by the CLI.
///
/// # Safety
/// `fields` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn zqoc_solution_control_fields(
    solution: *const ZqocSolution,
    t: f64,
    fields: *mut f64,
    len: usize,
) -> ZqocStatus {
    guard(|| {
        non_null!(solution, fields);
        let sol = &*solution;
        let m = sol.basis.len();
        if len < m {
            set_error(format!("buffer of length {len} is smaller than {m}"));
            return ZqocStatus::BufferTooSmall;
        }
        match sol.solution.control_fields(&sol.basis, &[t]) {
            Ok(schedule) => {
                std::slice::from_raw_parts_mut(fields, m).copy_from_slice(schedule.fields[0].as_slice());
                ZqocStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
