// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, ZqocError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZqocError {
    #[error("matrix is not anti-Hermitian (max deviation {deviation:.3e})")]
    NotAntiHermitian { deviation: f64 },

    #[error("matrix is not traceless (|trace| = {trace:.3e})")]
    NotTraceless { trace: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (‖U†U − I‖_F = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not special (|det − 1| = {deviation:.3e}); see project_su")]
    NotSpecial { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid constraint variant: {0}")]
    InvalidVariant(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("strong wind: drift norm² {norm_sq:.6} exceeds 1 − {eps:.0e}")]
    StrongWind { norm_sq: f64, eps: f64 },

    #[error("no root of the optimal-time equation in (0, {t_max}]; try a larger t_max")]
    NoRoot { t_max: f64 },

    #[error("root is not unique: {count} sign changes found")]
    MultipleRoots { count: usize },

    #[error("drift and gate do not commute (‖[H0, O]‖_F = {norm:.3e})")]
    NonCommuting { norm: f64 },

    #[error("basis is not orthogonal under its inner product (max off-diagonal {max_off:.3e})")]
    NonOrthogonalBasis { max_off: f64 },

    #[error("singular linear system of size {size} (numerical rank {rank})")]
    SingularSystem { size: usize, rank: usize },

    #[error("initial state violates constraint {index}: f = {value}, expected {expected}")]
    InconsistentInitialState { index: usize, value: f64, expected: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("time {t} outside [0, {t_max}]")]
    OutOfRange { t: f64, t_max: f64 },

    #[error("right-hand side failed at step {step}: {source}")]
    Integration { step: usize, source: Box<ZqocError> },
}
