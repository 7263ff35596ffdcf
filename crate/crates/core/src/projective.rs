//! Projective structures represented by a special (volume-preserving)
//! connection, and their curvature: Schouten, Weyl, Cotton.

use crate::exact::{MultiPoly, RatFunc, Rational};
use crate::tensor::{Connection, TensorError, TensorField, Variance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectiveError {
    #[error("connection does not preserve the volume form")]
    NotSpecial,
    #[error("projective structures need n >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Clone, Debug)]
pub struct ProjectiveStructure {
    n: usize,
    connection: Connection,
    volume: MultiPoly,
    notes: Vec<String>,
}

impl ProjectiveStructure {
    /// Takes the representative as given; `vol` is the density `f` in
    /// `f dx¹∧…∧dxⁿ`.
    pub fn new(connection: Connection, volume: MultiPoly) -> Result<Self, ProjectiveError> {
        let n = connection.dim();
        if n < 2 {
            return Err(ProjectiveError::DimensionTooSmall(n));
        }
        Ok(ProjectiveStructure { n, connection, volume, notes: Vec::new() })
    }

    /// Representative with the coordinate volume form. A non-special input is
    /// replaced by its special representative and a note is recorded.
    pub fn from_connection(connection: Connection) -> Result<Self, ProjectiveError> {
        let n = connection.dim();
        let mut p = ProjectiveStructure::new(connection, MultiPoly::one(n))?;
        if !p.is_special() {
            let upsilon = special_normalizer(&p.connection);
            p.connection = projective_change(&p.connection, &upsilon)?;
            p.notes.push(format!(
                "input connection was not volume preserving; applied projective change with Υ_B = -(1/{})Γ^P_PB",
                n + 1
            ));
        }
        Ok(p)
    }

    pub fn flat(n: usize) -> Self {
        ProjectiveStructure { n, connection: Connection::flat(n, n), volume: MultiPoly::one(n), notes: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn volume(&self) -> &MultiPoly {
        &self.volume
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn is_special(&self) -> bool {
        is_special(&self.connection, &self.volume)
    }

    fn require_special(&self) -> Result<(), ProjectiveError> {
        if self.is_special() {
            Ok(())
        } else {
            Err(ProjectiveError::NotSpecial)
        }
    }

    /// `Ρ_AB = (1/(n−1)) R_PA^P_B`.
    pub fn schouten(&self) -> Result<TensorField, ProjectiveError> {
        self.require_special()?;
        Ok(schouten_of(&self.connection))
    }

    /// `W_AB^C_D = R_AB^C_D + Ρ_AD δ^C_B − Ρ_BD δ^C_A`.
    pub fn weyl(&self) -> Result<TensorField, ProjectiveError> {
        self.require_special()?;
        Ok(weyl_of(&self.connection, &schouten_of(&self.connection)))
    }

    /// `Y_CAB = D_A Ρ_BC − D_B Ρ_AC`.
    pub fn cotton(&self) -> Result<TensorField, ProjectiveError> {
        self.require_special()?;
        Ok(cotton_of(&self.connection, &schouten_of(&self.connection))?)
    }
}

/// `∇ vol = 0` for `vol = f dx¹∧…∧dxⁿ`, i.e. `∂_B f = Γ^P_PB f`.
pub fn is_special(d: &Connection, vol: &MultiPoly) -> bool {
    let f = RatFunc::from_poly(vol.clone());
    d.trace_form().iter().enumerate().all(|(b, tr)| (&f.d(b) - &(tr * &f)).is_zero())
}

/// `Υ_B = −(1/(n+1)) Γ^P_PB`, the change making `D` preserve `dx¹∧…∧dxⁿ`.
pub fn special_normalizer(d: &Connection) -> Vec<RatFunc> {
    let c = Rational::new((-1).into(), ((d.dim() + 1) as i64).into());
    d.trace_form().iter().map(|t| t.scale(&c)).collect()
}

/// `Γ̂^C_AB = Γ^C_AB + Υ_A δ^C_B + Υ_B δ^C_A`.
pub fn projective_change(d: &Connection, upsilon: &[RatFunc]) -> Result<Connection, TensorError> {
    let n = d.dim();
    let nv = d.nvars();
    let delta = TensorField::from_fn(n, nv, vec![Variance::Up, Variance::Down, Variance::Down], |i| {
        let (c, a, b) = (i[0], i[1], i[2]);
        let mut acc = RatFunc::zero(nv);
        if c == b {
            acc = &acc + &upsilon[a];
        }
        if c == a {
            acc = &acc + &upsilon[b];
        }
        acc
    });
    d.shifted(&delta)
}

pub fn schouten_of(d: &Connection) -> TensorField {
    let n = d.dim() as i64;
    d.ricci().scale(&Rational::new(1.into(), (n - 1).into()))
}

pub fn weyl_of(d: &Connection, rho: &TensorField) -> TensorField {
    let r = d.riemann();
    let nv = d.nvars();
    TensorField::from_fn(d.dim(), nv, r.valence().to_vec(), |i| {
        let (a, b, c, dd) = (i[0], i[1], i[2], i[3]);
        let mut acc = r.get(i).clone();
        if c == b {
            acc = &acc + rho.get(&[a, dd]);
        }
        if c == a {
            acc = &acc - rho.get(&[b, dd]);
        }
        acc
    })
}

pub fn cotton_of(d: &Connection, rho: &TensorField) -> Result<TensorField, TensorError> {
    let dp = d.covariant_derivative(rho)?;
    Ok(TensorField::from_fn(d.dim(), d.nvars(), vec![Variance::Down; 3], |i| {
        let (c, a, b) = (i[0], i[1], i[2]);
        dp.get(&[a, b, c]) - dp.get(&[b, a, c])
    }))
}

/// One step of the projective cotractor connection
/// `∇_C(φ_A; σ) = (D_C φ_A + Ρ_CA σ; D_C σ − φ_C)`, returned as
/// `(top[C][A], bottom[C])`.
pub fn cotractor_derivative(
    d: &Connection,
    rho: &TensorField,
    phi: &[RatFunc],
    sigma: &RatFunc,
) -> (Vec<Vec<RatFunc>>, Vec<RatFunc>) {
    let n = d.dim();
    let top = (0..n)
        .map(|c| {
            (0..n)
                .map(|a| {
                    let mut acc = &phi[a].d(c) + &(rho.get(&[c, a]) * sigma);
                    for p in 0..n {
                        let g = d.g(p, c, a);
                        if !g.is_zero() {
                            acc = &acc - &(g * &phi[p]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let bottom = (0..n).map(|c| &sigma.d(c) - &phi[c]).collect();
    (top, bottom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma_122_x1() -> Connection {
        let mut g = TensorField::zeros(2, 2, vec![Variance::Up, Variance::Down, Variance::Down]);
        g.set(&[0, 1, 1], RatFunc::var(2, 0));
        Connection::new(g).unwrap()
    }

    #[test]
    fn change_by_dx1_in_flat_plane() {
        let one = RatFunc::one(2);
        let d = projective_change(&Connection::flat(2, 2), &[one.clone(), RatFunc::zero(2)]).unwrap();
        assert_eq!(d.g(0, 0, 0), &RatFunc::from_int(2, 2));
        assert_eq!(d.g(1, 0, 1), &one);
        assert_eq!(d.g(1, 1, 0), &one);
        assert!(d.g(0, 1, 1).is_zero() && d.g(0, 0, 1).is_zero() && d.g(1, 1, 1).is_zero());
        assert!(!is_special(&d, &MultiPoly::one(2)));
    }

    #[test]
    fn flat_curvature_vanishes() {
        let p = ProjectiveStructure::flat(3);
        assert!(p.schouten().unwrap().is_zero());
        assert!(p.weyl().unwrap().is_zero());
        assert!(p.cotton().unwrap().is_zero());
    }

    #[test]
    fn sample_schouten_is_symmetric_and_weyl_vanishes() {
        let p = ProjectiveStructure::from_connection(gamma_122_x1()).unwrap();
        assert!(p.notes().is_empty());
        let rho = p.schouten().unwrap();
        assert!(!rho.is_zero());
        assert!(rho.antisymmetrize(0, 1).unwrap().is_zero());
        assert!(p.weyl().unwrap().is_zero());
    }

    #[test]
    fn non_special_input_is_normalized() {
        let mut g = TensorField::zeros(2, 2, vec![Variance::Up, Variance::Down, Variance::Down]);
        g.set(&[0, 0, 0], RatFunc::var(2, 1));
        let p = ProjectiveStructure::from_connection(Connection::new(g).unwrap()).unwrap();
        assert!(p.is_special());
        assert_eq!(p.notes().len(), 1);
    }
}
