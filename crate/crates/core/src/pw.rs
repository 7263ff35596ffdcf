//! The Patterson–Walker metric of a special connection on the chart
//! `(x¹..xⁿ, p₁..pₙ)`, with its Euler field and isotropic frames.

use crate::exact::{RatFunc, Rational};
use crate::projective::{ProjectiveError, ProjectiveStructure};
use crate::tensor::{Chart, Connection, Metric, MetricError, TensorField, Variance};

#[derive(Clone, Debug)]
pub struct PwStructure {
    n: usize,
    source: ProjectiveStructure,
    chart: Chart,
    /// Base Christoffel symbols embedded in the `2n`-variable ring.
    gamma: TensorField,
    metric: Metric,
    levi_civita: Connection,
    k: Vec<RatFunc>,
    vertical: Vec<Vec<RatFunc>>,
    horizontal: Vec<Vec<RatFunc>>,
}

impl PwStructure {
    /// `g = 2 dx^a ⊙ dp_a − 2 p_c Γ^c_ab dx^a dx^b`.
    pub fn new(source: ProjectiveStructure) -> Result<Self, ProjectiveError> {
        if !source.is_special() {
            return Err(ProjectiveError::NotSpecial);
        }
        let n = source.n();
        let d = 2 * n;
        let base = source.connection();
        let gamma = TensorField::from_fn(n, d, vec![Variance::Up, Variance::Down, Variance::Down], |i| {
            let g = base.g(i[0], i[1], i[2]);
            crate::exact::RatFunc::new(g.numerator().extend_vars(d), g.denominator().extend_vars(d))
                .expect("embedding keeps denominators nonzero")
        });
        let p = |c: usize| RatFunc::var(d, n + c);
        // p_c Γ^c_ab
        let pg: Vec<Vec<RatFunc>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).fold(RatFunc::zero(d), |acc, c| &acc + &(&p(c) * gamma.get(&[c, a, b]))))
                    .collect()
            })
            .collect();
        let g = TensorField::from_fn(d, d, vec![Variance::Down, Variance::Down], |i| {
            let (a, b) = (i[0], i[1]);
            match (a < n, b < n) {
                (true, true) => pg[a][b].scale_int(-2),
                (true, false) => delta(d, a, b - n),
                (false, true) => delta(d, a - n, b),
                (false, false) => RatFunc::zero(d),
            }
        });
        let metric = Metric::new(g).expect("block form is invertible");
        let levi_civita = metric.levi_civita();
        let k = (0..d).map(|i| if i < n { RatFunc::zero(d) } else { p(i - n).scale_int(2) }).collect();
        let vertical = (0..n).map(|a| unit(d, n + a)).collect();
        let horizontal = (0..n)
            .map(|a| {
                let mut h = unit(d, a);
                h[n..].clone_from_slice(&pg[a][..n]);
                h
            })
            .collect();
        Ok(PwStructure { n, source, chart: Chart::cotangent(n), gamma, metric, levi_civita, k, vertical, horizontal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn source(&self) -> &ProjectiveStructure {
        &self.source
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn levi_civita(&self) -> &Connection {
        &self.levi_civita
    }

    /// Base Christoffel symbols as functions on the `2n`-chart.
    pub fn lifted_gamma(&self) -> &TensorField {
        &self.gamma
    }

    /// `k = 2 p_a ∂/∂p_a`.
    pub fn euler_field(&self) -> &[RatFunc] {
        &self.k
    }

    /// `V^a = ∂/∂p_a`.
    pub fn vertical_frame(&self) -> &[Vec<RatFunc>] {
        &self.vertical
    }

    /// `H_a = ∂/∂x^a + p_c Γ^c_ab ∂/∂p_b`.
    pub fn horizontal_frame(&self) -> &[Vec<RatFunc>] {
        &self.horizontal
    }

    /// Frame ordered `H_1..H_n, V^1..V^n`.
    pub fn null_frame(&self) -> Vec<Vec<RatFunc>> {
        self.horizontal.iter().chain(self.vertical.iter()).cloned().collect()
    }

    /// `(positive, negative)` at a rational point.
    pub fn signature_at(&self, point: &[Rational]) -> Option<(usize, usize)> {
        self.metric.signature_at(point)
    }

    /// Levi-Civita derivatives of vertical fields stay vertical.
    pub fn walker_defect(&self) -> Vec<RatFunc> {
        walker_defect(self.n, &self.levi_civita, &self.vertical)
    }

    /// The same metric as a Walker-form candidate.
    pub fn walker(&self) -> WalkerMetric {
        WalkerMetric {
            n: self.n,
            metric: self.metric.clone(),
            levi_civita: self.levi_civita.clone(),
            k: self.k.clone(),
            vertical: self.vertical.clone(),
            horizontal: self.horizontal.clone(),
        }
    }
}

/// `g = 2 dx^a ⊙ dp_a + B_ab dx^a dx^b` for an arbitrary symmetric `B(x, p)`,
/// with `k = 2 p_a ∂/∂p_a` and the frames `V^a = ∂/∂p_a`,
/// `H_a = ∂/∂x^a − ½ B_ab ∂/∂p_b`. Patterson–Walker metrics are the case
/// `B = −2 p_c Γ^c`.
#[derive(Clone, Debug)]
pub struct WalkerMetric {
    n: usize,
    metric: Metric,
    levi_civita: Connection,
    k: Vec<RatFunc>,
    vertical: Vec<Vec<RatFunc>>,
    horizontal: Vec<Vec<RatFunc>>,
}

impl WalkerMetric {
    pub fn new(n: usize, b: &[Vec<RatFunc>]) -> Result<Self, MetricError> {
        let d = 2 * n;
        if b.len() != n || b.iter().any(|row| row.len() != n) {
            return Err(MetricError::WrongValence);
        }
        for i in 0..n {
            for j in 0..n {
                if b[i][j] != b[j][i] {
                    return Err(MetricError::NotSymmetric(i, j));
                }
            }
        }
        let g = TensorField::from_fn(d, d, vec![Variance::Down, Variance::Down], |i| {
            let (a, c) = (i[0], i[1]);
            match (a < n, c < n) {
                (true, true) => b[a][c].clone(),
                (true, false) => delta(d, a, c - n),
                (false, true) => delta(d, a - n, c),
                (false, false) => RatFunc::zero(d),
            }
        });
        let metric = Metric::new(g)?;
        let levi_civita = metric.levi_civita();
        let k = (0..d).map(|i| if i < n { RatFunc::zero(d) } else { RatFunc::var(d, i).scale_int(2) }).collect();
        let vertical = (0..n).map(|a| unit(d, n + a)).collect();
        let half = Rational::new((-1).into(), 2.into());
        let horizontal = (0..n)
            .map(|a| {
                let mut h = unit(d, a);
                for c in 0..n {
                    h[n + c] = b[a][c].scale(&half);
                }
                h
            })
            .collect();
        Ok(WalkerMetric { n, metric, levi_civita, k, vertical, horizontal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn levi_civita(&self) -> &Connection {
        &self.levi_civita
    }

    pub fn euler_field(&self) -> &[RatFunc] {
        &self.k
    }

    pub fn vertical_frame(&self) -> &[Vec<RatFunc>] {
        &self.vertical
    }

    pub fn horizontal_frame(&self) -> &[Vec<RatFunc>] {
        &self.horizontal
    }

    /// Frame ordered `H_1..H_n, V^1..V^n`.
    pub fn null_frame(&self) -> Vec<Vec<RatFunc>> {
        self.horizontal.iter().chain(self.vertical.iter()).cloned().collect()
    }

    pub fn walker_defect(&self) -> Vec<RatFunc> {
        walker_defect(self.n, &self.levi_civita, &self.vertical)
    }
}

fn walker_defect(n: usize, lc: &Connection, vertical: &[Vec<RatFunc>]) -> Vec<RatFunc> {
    let d = 2 * n;
    let mut out = Vec::new();
    for i in 0..d {
        let e = unit(d, i);
        for v in vertical {
            out.extend(lc.along(&e, v).into_iter().take(n));
        }
    }
    out
}

fn delta(nvars: usize, a: usize, b: usize) -> RatFunc {
    if a == b {
        RatFunc::one(nvars)
    } else {
        RatFunc::zero(nvars)
    }
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<RatFunc> {
    (0..d).map(|j| delta(d, i, j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn sample() -> PwStructure {
        let mut g = TensorField::zeros(2, 2, vec![Variance::Up, Variance::Down, Variance::Down]);
        g.set(&[0, 1, 1], RatFunc::var(2, 0));
        let p = ProjectiveStructure::from_connection(Connection::new(g).unwrap()).unwrap();
        PwStructure::new(p).unwrap()
    }

    #[test]
    fn flat_metric_is_constant_and_flat() {
        let pw = PwStructure::new(ProjectiveStructure::flat(2)).unwrap();
        assert!(pw.levi_civita().christoffel().is_zero());
        assert!(pw.metric().g().components().iter().all(|c| c.constant_value().is_some()));
    }

    #[test]
    fn sample_entries() {
        let pw = sample();
        let x1 = RatFunc::var(4, 0);
        let p1 = RatFunc::var(4, 2);
        assert_eq!(pw.metric().gab(1, 1), &(&p1 * &x1).scale_int(-2));
        assert!(pw.metric().gab(0, 0).is_zero() && pw.metric().gab(0, 1).is_zero());
    }

    #[test]
    fn frames_are_isotropic_and_dual() {
        let pw = sample();
        let m = pw.metric();
        for a in 0..2 {
            for b in 0..2 {
                assert!(m.inner(&pw.vertical_frame()[a], &pw.vertical_frame()[b]).is_zero());
                assert!(m.inner(&pw.horizontal_frame()[a], &pw.horizontal_frame()[b]).is_zero());
                let want = if a == b { 1 } else { 0 };
                assert_eq!(m.inner(&pw.vertical_frame()[a], &pw.horizontal_frame()[b]), RatFunc::from_int(4, want));
            }
        }
    }

    #[test]
    fn split_signature_and_walker() {
        let pw = sample();
        assert_eq!(pw.signature_at(&[int(1), int(2), int(-1), int(3)]), Some((2, 2)));
        assert!(pw.walker_defect().iter().all(RatFunc::is_zero));
    }

    #[test]
    fn levi_civita_is_metric() {
        let pw = sample();
        let dg = pw.levi_civita().covariant_derivative(pw.metric().g()).unwrap();
        assert!(dg.is_zero());
    }
}
