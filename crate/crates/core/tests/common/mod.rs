#![allow(dead_code)]

use fefferman_core::exact::{MultiPoly, RatFunc};
use fefferman_core::projective::ProjectiveStructure;
use fefferman_core::pw::PwStructure;
use fefferman_core::tensor::{Connection, TensorField, Variance};

/// Connection from `(c, a, b, poly)` entries; symmetric partners are filled in.
pub fn connection(n: usize, entries: &[(usize, usize, usize, MultiPoly)]) -> Connection {
    let mut g = TensorField::zeros(n, n, vec![Variance::Up, Variance::Down, Variance::Down]);
    for (c, a, b, p) in entries {
        g.set(&[*c, *a, *b], RatFunc::from_poly(p.clone()));
        g.set(&[*c, *b, *a], RatFunc::from_poly(p.clone()));
    }
    Connection::new(g).unwrap()
}

pub fn x(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

pub fn c(n: usize, v: i64) -> MultiPoly {
    MultiPoly::from_int(n, v)
}

/// `Γ¹₂₂ = x¹`, the running two-dimensional example.
pub fn gamma_122_x1() -> ProjectiveStructure {
    ProjectiveStructure::from_connection(connection(2, &[(0, 1, 1, x(2, 0))])).unwrap()
}

/// A three-dimensional structure with nonvanishing projective Weyl tensor.
pub fn curved3() -> ProjectiveStructure {
    let n = 3;
    ProjectiveStructure::from_connection(connection(
        n,
        &[
            (0, 1, 1, &x(n, 2) * &x(n, 2)),
            (1, 2, 2, x(n, 0)),
            (2, 0, 1, &x(n, 1) + &c(n, 1)),
        ],
    ))
    .unwrap()
}

pub fn pw(p: ProjectiveStructure) -> PwStructure {
    PwStructure::new(p).unwrap()
}

/// `Γ¹₂₂ = (x¹)²`: a two-dimensional structure with nonzero Cotton tensor.
pub fn curved2() -> ProjectiveStructure {
    ProjectiveStructure::from_connection(connection(2, &[(0, 1, 1, &x(2, 0) * &x(2, 0))])).unwrap()
}
