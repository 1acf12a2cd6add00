// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrices, Lie-algebra elements, bases and norms on su(n).

pub mod basis;
pub mod element;
pub mod functions;
pub mod norm;
pub mod structure;

pub use basis::{generator_basis, orthonormal_basis, pauli, Basis, BasisKind};
pub use element::{AlgebraElement, CMatrix, GroupElement};
pub use functions::{expm, logm_su, logm_su_with, project_su, SuLog};
pub use norm::{schatten, ConstraintNorm, GramMetric};
pub use structure::{structure_constants, StructureConstants};
