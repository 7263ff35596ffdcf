//! Standard, adjoint and spin tractors in a fixed scale, and the tractor
//! data induced on a Patterson–Walker metric.

mod adjoint;
mod induced;
mod spin;
mod standard;

pub use adjoint::{
    adj_connection, bracket_with_curvature, connection_form, curvature_adjoint, curvature_endo, endo_connection,
    induced_curvature_closed_form, l0_adjoint, AdjTractor, Endo,
};
pub use induced::InducedTractors;
pub use spin::{
    adjoint_spin_action, clifford_kernel_dimension, l0_spin, spin_connection, tractor_clifford, tractor_frame,
    DualSpinTractor, SpinTractor, Sqrt2Scaled,
};
pub use standard::{l0_std, laplacian, std_connection, std_curvature, tractor_metric, StdTractor};

use crate::exact::RatFunc;

/// Named list of functions that must all vanish.
#[derive(Clone, Debug)]
pub struct Residual {
    pub name: String,
    pub terms: Vec<RatFunc>,
}

impl Residual {
    pub fn new(name: impl Into<String>, terms: Vec<RatFunc>) -> Self {
        Residual { name: name.into(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.normalize().is_zero())
    }

    /// Number of nonvanishing entries.
    pub fn defect(&self) -> usize {
        self.terms.iter().filter(|t| !t.normalize().is_zero()).count()
    }
}
