//! Exact symbolic engine for projective structures, their Patterson–Walker
//! metrics, conformal and tractor calculus, and the algebraic model.

#![allow(clippy::needless_range_loop)]

pub mod exact;
pub mod linalg;
pub mod tensor;
pub mod projective;
pub mod pw;
pub mod conformal;
pub mod tractor;
pub mod kostant;
pub mod verify;
