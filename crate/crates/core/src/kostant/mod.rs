//! Lie-theoretic side: the matrix model of `sl(n+1) ⊂ so(n+1, n+1)`, its
//! parabolics, the spin representation `Λ•ℝ^{n+1}`, Kostant's
//! codifferential, differential and Laplacian on cochains, and the first
//! normalization step of the induced Cartan curvature.

mod cochain;
mod components;
mod example;
mod model;
mod spin;

pub use cochain::{
    act_on_cochain, class_of, closed_cochains, del_star_parts, harmonic_cochains, random_cochain, extend_cochain, kostant_del, kostant_del_star, kostant_laplacian,
    subsets, Cochain, CochainValue, Side,
};
pub use components::{
    alternation, f_bar_basis, f_hat_to_f_bar, f_hat_wedge, hook_component, in_hook_component, in_tensor_component,
    lambda2_f_bar_coords, normalize_step, span_dim,
};
pub use example::{worked_example, WorkedExample};
pub use model::{embed, intersect, LieMatrix, Model};
pub use spin::{spin_action, spin_clifford, Parity, SpinModule, SpinVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KostantError {
    #[error("the model needs n ≥ 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("matrix is not in {0}")]
    NotInAlgebra(&'static str),
    #[error("degenerate pairing {0}")]
    Degenerate(&'static str),
    #[error("the codifferential is undefined on 0-cochains")]
    DegreeZero,
    #[error("extension expects a cochain on g/p")]
    WrongSide,
    #[error("component check failed: {0}")]
    Component(&'static str),
}
