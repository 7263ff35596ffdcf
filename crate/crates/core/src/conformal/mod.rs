//! Conformal curvature of a split-signature metric and the conformal
//! Killing operator; spinor calculus lives in the submodules.

mod geometry;
mod spinor;

pub use geometry::SpinGeometry;
pub use spinor::{DualSpinor, SpinorField};

use crate::exact::{RatFunc, Rational};
use crate::projective::cotton_of;
use crate::tensor::{Connection, Metric, MetricError, TensorField, Variance};

/// Levi-Civita curvature split into Schouten, Weyl and Cotton parts.
#[derive(Clone, Debug)]
pub struct ConformalData {
    metric: Metric,
    lc: Connection,
    riemann: TensorField,
    schouten: TensorField,
    j: RatFunc,
    weyl: TensorField,
    weyl_low: TensorField,
    cotton: TensorField,
}

impl ConformalData {
    pub fn new(metric: Metric) -> Self {
        let lc = metric.levi_civita();
        Self::with_connection(metric, lc)
    }

    pub fn with_connection(metric: Metric, lc: Connection) -> Self {
        let d = metric.dim();
        let nv = metric.nvars();
        let riemann = lc.riemann();
        let ric = riemann.contract(0, 2).expect("Riemann valence");
        let sc = trace_with(&metric, &ric);
        let dm2 = Rational::new(1.into(), ((d - 2) as i64).into());
        let c = Rational::new(1.into(), (2 * (d as i64 - 1)).into());
        let sc_c = sc.scale(&c);
        let schouten = TensorField::from_fn(d, nv, vec![Variance::Down; 2], |i| {
            (ric.get(i) - &(&sc_c * metric.gab(i[0], i[1]))).scale(&dm2)
        });
        let j = trace_with(&metric, &schouten);
        let rho_up = schouten.raise(1, &metric).expect("lower index");
        let weyl = TensorField::from_fn(d, nv, riemann.valence().to_vec(), |i| {
            let (a, b, cc, dd) = (i[0], i[1], i[2], i[3]);
            let mut acc = riemann.get(i).clone();
            if cc == a {
                acc = &acc - schouten.get(&[b, dd]);
            }
            if cc == b {
                acc = &acc + schouten.get(&[a, dd]);
            }
            let gda = metric.gab(dd, a);
            if !gda.is_zero() {
                acc = &acc + &(gda * rho_up.get(&[b, cc]));
            }
            let gdb = metric.gab(dd, b);
            if !gdb.is_zero() {
                acc = &acc - &(gdb * rho_up.get(&[a, cc]));
            }
            acc
        });
        let cotton = cotton_of(&lc, &schouten).expect("same chart");
        let weyl_low = weyl.lower(2, &metric).expect("upper index at position 2").normalize();
        ConformalData { metric, lc, riemann, schouten, j, weyl, weyl_low, cotton }
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn levi_civita(&self) -> &Connection {
        &self.lc
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn nvars(&self) -> usize {
        self.metric.nvars()
    }

    /// `R_ab^c_d`.
    pub fn riemann(&self) -> &TensorField {
        &self.riemann
    }

    /// `Ρ_ab`.
    pub fn schouten(&self) -> &TensorField {
        &self.schouten
    }

    /// `J = g^pq Ρ_pq`.
    pub fn j(&self) -> &RatFunc {
        &self.j
    }

    /// `W_ab^c_d`.
    pub fn weyl(&self) -> &TensorField {
        &self.weyl
    }

    /// `W_abcd` with the third index lowered.
    pub fn weyl_lowered(&self) -> &TensorField {
        &self.weyl_low
    }

    /// `Y_cab = D_a Ρ_bc − D_b Ρ_ac`.
    pub fn cotton(&self) -> &TensorField {
        &self.cotton
    }

    /// `D_(c ξ_a)_0` for a vector field `ξ^a`.
    pub fn conformal_killing_residual(&self, xi: &[RatFunc]) -> TensorField {
        conformal_killing_residual(&self.metric, &self.lc, xi)
    }
}

fn trace_with(metric: &Metric, t: &TensorField) -> RatFunc {
    let d = metric.dim();
    let mut acc = RatFunc::zero(metric.nvars());
    for a in 0..d {
        for b in 0..d {
            let gi = metric.ginv(a, b);
            if !gi.is_zero() {
                acc = &acc + &(gi * t.get(&[a, b]));
            }
        }
    }
    acc
}

/// `D_a ξ_b` for a vector field `ξ^a`, lowered with the metric.
pub fn derivative_of_flat(metric: &Metric, lc: &Connection, xi: &[RatFunc]) -> TensorField {
    let flat = metric.flat(xi);
    let f = TensorField::from_fn(metric.dim(), metric.nvars(), vec![Variance::Down], |i| flat[i[0]].clone());
    lc.covariant_derivative(&f).expect("same chart")
}

/// Trace-free symmetrized derivative of `ξ_a`.
pub fn conformal_killing_residual(metric: &Metric, lc: &Connection, xi: &[RatFunc]) -> TensorField {
    let dxi = derivative_of_flat(metric, lc, xi);
    let sym = dxi.symmetrize(0, 1).expect("rank 2");
    let tr = trace_with(metric, &sym).scale(&Rational::new(1.into(), (metric.dim() as i64).into()));
    TensorField::from_fn(metric.dim(), metric.nvars(), vec![Variance::Down; 2], |i| {
        sym.get(i) - &(&tr * metric.gab(i[0], i[1]))
    })
}

/// `D_p ξ^p`.
pub fn divergence(lc: &Connection, xi: &[RatFunc]) -> RatFunc {
    let d = lc.dim();
    let mut acc = RatFunc::zero(lc.nvars());
    for p in 0..d {
        acc = &acc + &xi[p].d(p);
        for q in 0..d {
            let g = lc.g(p, p, q);
            if !g.is_zero() && !xi[q].is_zero() {
                acc = &acc + &(g * &xi[q]);
            }
        }
    }
    acc
}

/// `Ω² g` together with its curvature.
pub fn conformal_rescale(metric: &Metric, omega: &RatFunc) -> Result<ConformalData, MetricError> {
    Ok(ConformalData::new(metric.rescale(omega)?))
}
