//! Coordinate tensor fields on a single chart.
//!
//! Components are stored densely in row-major order, first index most
//! significant. Index ranges equal the chart dimension.

mod connection;
mod metric;

pub use connection::Connection;
pub use metric::{Metric, MetricError};

use crate::exact::{RatFunc, Rational};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new(names: Vec<String>) -> Self {
        Chart { names }
    }

    /// `x1..xn`.
    pub fn base(n: usize) -> Self {
        Chart { names: (1..=n).map(|i| format!("x{i}")).collect() }
    }

    /// `x1..xn, p1..pn`: base coordinates followed by fibre coordinates.
    pub fn cotangent(n: usize) -> Self {
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.extend((1..=n).map(|i| format!("p{i}")));
        Chart { names }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Up,
    Down,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Up => Variance::Down,
            Variance::Down => Variance::Up,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("index position {pos} out of range for rank {rank}")]
    IndexOutOfRange { pos: usize, rank: usize },
    #[error("incompatible tensors: {0}")]
    Incompatible(String),
}

/// Iterates all multi-indices of the given rank over `0..dim`.
pub fn multi_indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(rank as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for slot in idx.iter_mut().rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        idx
    })
}

#[derive(Clone, Debug)]
pub struct TensorField {
    dim: usize,
    nvars: usize,
    valence: Vec<Variance>,
    /// Twice the density weight, so half-integer weights stay integral.
    weight2: i32,
    comps: Vec<RatFunc>,
}

impl TensorField {
    pub fn zeros(dim: usize, nvars: usize, valence: Vec<Variance>) -> Self {
        let len = dim.pow(valence.len() as u32);
        TensorField { dim, nvars, valence, weight2: 0, comps: vec![RatFunc::zero(nvars); len] }
    }

    pub fn from_fn<F>(dim: usize, nvars: usize, valence: Vec<Variance>, f: F) -> Self
    where
        F: Fn(&[usize]) -> RatFunc,
    {
        let comps = multi_indices(dim, valence.len()).map(|i| f(&i)).collect();
        TensorField { dim, nvars, valence, weight2: 0, comps }
    }

    pub fn scalar(f: RatFunc, dim: usize) -> Self {
        TensorField { dim, nvars: f.nvars(), valence: Vec::new(), weight2: 0, comps: vec![f] }
    }

    /// `δ^a_b`.
    pub fn kronecker(dim: usize, nvars: usize) -> Self {
        Self::from_fn(dim, nvars, vec![Variance::Up, Variance::Down], |i| {
            if i[0] == i[1] {
                RatFunc::one(nvars)
            } else {
                RatFunc::zero(nvars)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.valence.len()
    }

    pub fn valence(&self) -> &[Variance] {
        &self.valence
    }

    pub fn weight_twice(&self) -> i32 {
        self.weight2
    }

    pub fn with_weight_twice(mut self, w2: i32) -> Self {
        self.weight2 = w2;
        self
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &RatFunc {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: RatFunc) {
        let o = self.offset(idx);
        self.comps[o] = value;
    }

    pub fn scalar_value(&self) -> &RatFunc {
        assert_eq!(self.rank(), 0, "not a scalar");
        &self.comps[0]
    }

    fn same_shape(&self, other: &TensorField) -> Result<(), TensorError> {
        if self.dim != other.dim || self.valence != other.valence || self.nvars != other.nvars {
            return Err(TensorError::Incompatible(format!(
                "shapes {:?}/{} vs {:?}/{}",
                self.valence, self.dim, other.valence, other.dim
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorField) -> Result<TensorField, TensorError> {
        self.same_shape(other)?;
        Ok(self.zip_map(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &TensorField) -> Result<TensorField, TensorError> {
        self.same_shape(other)?;
        Ok(self.zip_map(other, |a, b| a - b))
    }

    fn zip_map(&self, other: &TensorField, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> TensorField {
        TensorField {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> TensorField {
        TensorField {
            dim: self.dim,
            nvars: self.nvars,
            valence: self.valence.clone(),
            weight2: self.weight2,
            comps: Vec::new(),
        }
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> TensorField {
        TensorField { comps: self.comps.iter().map(f).collect(), ..self.clone_shape() }
    }

    pub fn scale(&self, c: &Rational) -> TensorField {
        self.map(|x| x.scale(c))
    }

    pub fn mul_scalar(&self, f: &RatFunc) -> TensorField {
        self.map(|x| x * f)
    }

    pub fn normalize(&self) -> TensorField {
        self.map(RatFunc::normalize)
    }

    /// Exact identity test on every component.
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    /// Number of nonzero components.
    pub fn support(&self) -> usize {
        self.comps.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> Vec<f64> {
        self.comps.iter().map(|c| c.evaluate_f64(point)).collect()
    }

    /// Outer product, indices of `self` first.
    pub fn tensor(&self, other: &TensorField) -> TensorField {
        let mut valence = self.valence.clone();
        valence.extend_from_slice(&other.valence);
        let mut comps = Vec::with_capacity(self.comps.len() * other.comps.len());
        for a in &self.comps {
            for b in &other.comps {
                comps.push(if a.is_zero() { RatFunc::zero(self.nvars) } else { a * b });
            }
        }
        TensorField { dim: self.dim, nvars: self.nvars, valence, weight2: self.weight2 + other.weight2, comps }
    }

    /// Contracts positions `i` and `j`; their variances must be opposite.
    pub fn contract(&self, i: usize, j: usize) -> Result<TensorField, TensorError> {
        let rank = self.rank();
        for &p in &[i, j] {
            if p >= rank {
                return Err(TensorError::IndexOutOfRange { pos: p, rank });
            }
        }
        if i == j || self.valence[i] == self.valence[j] {
            return Err(TensorError::Incompatible("contraction needs one upper and one lower index".into()));
        }
        let keep: Vec<usize> = (0..rank).filter(|&p| p != i && p != j).collect();
        let valence = keep.iter().map(|&p| self.valence[p]).collect();
        let mut out = TensorField::zeros(self.dim, self.nvars, valence).with_weight_twice(self.weight2);
        let mut full = vec![0; rank];
        for (o, idx) in multi_indices(self.dim, keep.len()).enumerate() {
            for (k, &p) in keep.iter().enumerate() {
                full[p] = idx[k];
            }
            let mut acc = RatFunc::zero(self.nvars);
            for s in 0..self.dim {
                full[i] = s;
                full[j] = s;
                acc = &acc + self.get(&full);
            }
            out.comps[o] = acc;
        }
        Ok(out)
    }

    /// Reorders indices: result index `k` is source index `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<TensorField, TensorError> {
        let rank = self.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank || perm.iter().any(|&p| p >= rank || std::mem::replace(&mut seen[p], true)) {
            return Err(TensorError::Incompatible(format!("{perm:?} is not a permutation of rank {rank}")));
        }
        let valence = perm.iter().map(|&p| self.valence[p]).collect();
        Ok(TensorField::from_fn(self.dim, self.nvars, valence, |idx| {
            let mut s = vec![0; rank];
            for (k, &p) in perm.iter().enumerate() {
                s[p] = idx[k];
            }
            self.get(&s).clone()
        })
        .with_weight_twice(self.weight2))
    }

    fn swap_positions(&self, i: usize, j: usize) -> Result<TensorField, TensorError> {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        if i >= perm.len() || j >= perm.len() {
            return Err(TensorError::IndexOutOfRange { pos: i.max(j), rank: perm.len() });
        }
        perm.swap(i, j);
        self.permute(&perm)
    }

    /// `T_(ij) = ½(T_ij + T_ji)` on positions `i`, `j`.
    pub fn symmetrize(&self, i: usize, j: usize) -> Result<TensorField, TensorError> {
        let s = self.swap_positions(i, j)?;
        Ok(self.zip_map(&s, |a, b| (a + b).scale(&half())))
    }

    /// `T_[ij] = ½(T_ij − T_ji)` on positions `i`, `j`.
    pub fn antisymmetrize(&self, i: usize, j: usize) -> Result<TensorField, TensorError> {
        let s = self.swap_positions(i, j)?;
        Ok(self.zip_map(&s, |a, b| (a - b).scale(&half())))
    }

    /// Full antisymmetrization over the listed positions, with `1/k!`.
    pub fn antisymmetrize_over(&self, positions: &[usize]) -> Result<TensorField, TensorError> {
        let rank = self.rank();
        if let Some(&p) = positions.iter().find(|&&p| p >= rank) {
            return Err(TensorError::IndexOutOfRange { pos: p, rank });
        }
        let mut acc = TensorField::zeros(self.dim, self.nvars, self.valence.clone()).with_weight_twice(self.weight2);
        let mut count = 0i64;
        for (sigma, sign) in permutations(positions.len()) {
            let mut perm: Vec<usize> = (0..rank).collect();
            for (k, &p) in positions.iter().enumerate() {
                perm[p] = positions[sigma[k]];
            }
            let t = self.permute(&perm)?;
            acc = if sign > 0 { acc.zip_map(&t, |a, b| a + b) } else { acc.zip_map(&t, |a, b| a - b) };
            count += 1;
        }
        Ok(acc.scale(&Rational::new(1.into(), count.into())))
    }

    /// Lowers position `pos` with `g_ab`; weight rises by 2.
    pub fn lower(&self, pos: usize, metric: &Metric) -> Result<TensorField, TensorError> {
        self.move_index(pos, Variance::Up, metric.g(), 4)
    }

    /// Raises position `pos` with `g^ab`; weight drops by 2.
    pub fn raise(&self, pos: usize, metric: &Metric) -> Result<TensorField, TensorError> {
        self.move_index(pos, Variance::Down, metric.inverse(), -4)
    }

    fn move_index(&self, pos: usize, from: Variance, m: &TensorField, dw2: i32) -> Result<TensorField, TensorError> {
        let rank = self.rank();
        if pos >= rank {
            return Err(TensorError::IndexOutOfRange { pos, rank });
        }
        if self.valence[pos] != from {
            return Err(TensorError::Incompatible(format!("index {pos} is not {from:?}")));
        }
        let mut valence = self.valence.clone();
        valence[pos] = from.flip();
        let out = TensorField::from_fn(self.dim, self.nvars, valence, |idx| {
            let mut src = idx.to_vec();
            let mut acc = RatFunc::zero(self.nvars);
            for s in 0..self.dim {
                let c = m.get(&[idx[pos], s]);
                if c.is_zero() {
                    continue;
                }
                src[pos] = s;
                acc = &acc + &(c * self.get(&src));
            }
            acc
        });
        Ok(out.with_weight_twice(self.weight2 + dw2))
    }

    /// Coordinate partial derivatives as a new leading lower index.
    pub fn gradient(&self) -> TensorField {
        let mut valence = vec![Variance::Down];
        valence.extend_from_slice(&self.valence);
        let n = self.comps.len();
        let mut comps = Vec::with_capacity(self.dim * n);
        for a in 0..self.dim {
            comps.extend(self.comps.iter().map(|c| c.d(a)));
        }
        TensorField { dim: self.dim, nvars: self.nvars, valence, weight2: self.weight2, comps }
    }

    /// Contracts a vector `v^a` into index position `pos` (a lower index).
    pub fn insert_vector(&self, pos: usize, v: &[RatFunc]) -> Result<TensorField, TensorError> {
        self.insert(pos, v, Variance::Down)
    }

    /// Contracts a covector into an upper index position.
    pub fn insert_covector(&self, pos: usize, w: &[RatFunc]) -> Result<TensorField, TensorError> {
        self.insert(pos, w, Variance::Up)
    }

    fn insert(&self, pos: usize, v: &[RatFunc], slot: Variance) -> Result<TensorField, TensorError> {
        let rank = self.rank();
        if pos >= rank {
            return Err(TensorError::IndexOutOfRange { pos, rank });
        }
        if self.valence[pos] != slot || v.len() != self.dim {
            return Err(TensorError::Incompatible(format!("cannot insert into {:?} index", self.valence[pos])));
        }
        let mut valence = self.valence.clone();
        valence.remove(pos);
        let out = TensorField::from_fn(self.dim, self.nvars, valence, |idx| {
            let mut src: Vec<usize> = idx.to_vec();
            src.insert(pos, 0);
            let mut acc = RatFunc::zero(self.nvars);
            for (s, vs) in v.iter().enumerate() {
                if vs.is_zero() {
                    continue;
                }
                src[pos] = s;
                acc = &acc + &(vs * self.get(&src));
            }
            acc
        });
        Ok(out.with_weight_twice(self.weight2))
    }

    pub fn format_components(&self, names: &[String]) -> Vec<(Vec<usize>, String)> {
        multi_indices(self.dim, self.rank())
            .zip(&self.comps)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.format_with(names)))
            .collect()
    }
}

impl fmt::Display for TensorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        for (idx, s) in self.format_components(&names) {
            writeln!(f, "{idx:?} = {s}")?;
        }
        Ok(())
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// All permutations of `0..k` with their signs (Heap's algorithm).
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..k).collect();
    let mut c = vec![0; k];
    let mut sign = 1;
    out.push((a.clone(), sign));
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Vector field components as a rank-1 upper tensor.
pub fn vector_field(dim: usize, comps: Vec<RatFunc>) -> TensorField {
    let nvars = comps[0].nvars();
    TensorField { dim, nvars, valence: vec![Variance::Up], weight2: 0, comps }
}

/// Coordinate basis vector `∂_i` as components.
pub fn basis_vector(dim: usize, nvars: usize, i: usize) -> Vec<RatFunc> {
    (0..dim).map(|j| if i == j { RatFunc::one(nvars) } else { RatFunc::zero(nvars) }).collect()
}
