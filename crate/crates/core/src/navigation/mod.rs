// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Metrics solving the Zermelo navigation problem on SU(n).

mod curve;
mod finsler;
mod randers;
mod tensor;

use nalgebra::DVector;

use crate::algebra::{AlgebraElement, Basis};
use crate::error::Result;

pub use curve::{traversal_time, CurveSamples};
pub use finsler::{finsler_navigation_norm, PointwiseNavigation};
pub use randers::{build_randers, randers_norm, NavigationData, RandersData};
pub use tensor::{fundamental_tensor, fundamental_tensor_components, is_geodesic_vector, GeodesicVectorCheck};

/// A right-invariant Finsler metric evaluated on algebra elements.
pub trait Metric: Send + Sync {
    fn basis(&self) -> &Basis;

    /// F at the element with the given basis components.
    fn eval_components(&self, x: &DVector<f64>) -> Result<f64>;

    fn eval(&self, a: &AlgebraElement) -> Result<f64> {
        self.eval_components(&self.basis().components(a))
    }
}
