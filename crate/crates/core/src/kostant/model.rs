use super::spin::{SpinVector, SpinModule};
use super::KostantError;
use crate::exact::{int, rat, Rational};
use crate::linalg::{nullspace, rank, QMatrix};
use num_traits::{One, Zero};

/// Square matrix over the rationals, acting on `ℝ^{n+1,n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieMatrix(pub QMatrix);

impl LieMatrix {
    pub fn zero(size: usize) -> Self {
        LieMatrix(vec![vec![Rational::zero(); size]; size])
    }

    pub fn unit(size: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(size);
        m.0[i][j] = Rational::one();
        m
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn add(&self, o: &LieMatrix) -> LieMatrix {
        LieMatrix(self.0.iter().zip(&o.0).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect())
    }

    pub fn sub(&self, o: &LieMatrix) -> LieMatrix {
        LieMatrix(self.0.iter().zip(&o.0).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect())
    }

    pub fn scale(&self, c: &Rational) -> LieMatrix {
        LieMatrix(self.0.iter().map(|r| r.iter().map(|x| x * c).collect()).collect())
    }

    pub fn neg(&self) -> LieMatrix {
        self.scale(&int(-1))
    }

    pub fn transpose(&self) -> LieMatrix {
        LieMatrix(crate::linalg::transpose(&self.0))
    }

    pub fn matmul(&self, o: &LieMatrix) -> LieMatrix {
        LieMatrix(crate::linalg::matmul(&self.0, &o.0))
    }

    pub fn bracket(&self, o: &LieMatrix) -> LieMatrix {
        self.matmul(o).sub(&o.matmul(self))
    }

    pub fn trace(&self) -> Rational {
        (0..self.size()).map(|i| self.0[i][i].clone()).sum()
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.0.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Linear combination `Σ c_i M_i`; `None` for an empty list.
    pub fn combine(coeffs: &[Rational], basis: &[LieMatrix]) -> Option<LieMatrix> {
        let size = basis.first()?.size();
        let mut out = LieMatrix::zero(size);
        for (c, m) in coeffs.iter().zip(basis) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        Some(out)
    }
}

/// Embedding `A ↦ diag(A, −Aᵗ)` of `gl(n+1)` into `gl(2n+2)`.
pub fn embed(a: &QMatrix) -> LieMatrix {
    let m = a.len();
    let mut out = LieMatrix::zero(2 * m);
    for i in 0..m {
        for j in 0..m {
            out.0[i][j] = a[i][j].clone();
            out.0[m + j][m + i] = -a[i][j].clone();
        }
    }
    out
}

fn small_unit(m: usize, i: usize, j: usize) -> QMatrix {
    let mut a = vec![vec![Rational::zero(); m]; m];
    a[i][j] = Rational::one();
    a
}

/// The explicit matrix model of `g = sl(n+1) ⊂ g̃ = so(n+1, n+1)` with all
/// parabolic data and dual bases used by the cochain calculus.
///
/// Standard basis `e_0..e_n` spans `E`, `e_{n+1}..e_{2n+1}` spans `F`, and
/// `h(e_i, e_{n+1+i}) = 1`.
#[derive(Clone, Debug)]
pub struct Model {
    pub n: usize,
    pub h: LieMatrix,
    pub k: LieMatrix,
    /// `ṽ = e_0 + e_{2n+1}`.
    pub v: Vec<Rational>,
    /// `ṽ' = e_{n+1}`, with `h(ṽ, ṽ') = 1`.
    pub v_dual: Vec<Rational>,
    pub g_tilde: Vec<LieMatrix>,
    pub g: Vec<LieMatrix>,
    pub p_tilde: Vec<LieMatrix>,
    pub p_tilde_plus: Vec<LieMatrix>,
    pub g_tilde_0: Vec<LieMatrix>,
    pub g_tilde_minus: Vec<LieMatrix>,
    pub p: Vec<LieMatrix>,
    pub q: Vec<LieMatrix>,
    pub q0: Vec<LieMatrix>,
    pub p_plus: Vec<LieMatrix>,
    /// Block-diagonal Levi part of `p`.
    pub g_0: Vec<LieMatrix>,
    pub g_minus: Vec<LieMatrix>,
    pub lambda2_e: Vec<LieMatrix>,
    pub lambda2_f: Vec<LieMatrix>,
    pub e_tensor_f: Vec<LieMatrix>,
    pub lambda2_f_bar: Vec<LieMatrix>,
    pub f_hat: Vec<LieMatrix>,
    /// Coset representatives `X_1..X_{2n}` of `g̃/p̃ ≅ g/q`, taken in `g`;
    /// the first `n` span `g_−` and represent `g/p`.
    pub reps: Vec<LieMatrix>,
    /// `Z̃_i ∈ p̃₊` with `⟨X_i, Z̃_j⟩ = δ_ij`.
    pub duals: Vec<LieMatrix>,
    /// `Z_i ∈ p₊` with `⟨X_i, Z_j⟩ = δ_ij`, `i, j ≤ n`.
    pub duals_g: Vec<LieMatrix>,
    /// Representatives of the same classes inside the abelian `g̃_−`.
    pub minus_reps: Vec<LieMatrix>,
    pub spin: SpinModule,
}

impl Model {
    pub fn build(n: usize) -> Result<Model, KostantError> {
        if n < 2 {
            return Err(KostantError::DimensionTooSmall(n));
        }
        let size = 2 * n + 2;
        let mut h = LieMatrix::zero(size);
        let mut k = LieMatrix::zero(size);
        for i in 0..=n {
            h.0[i][n + 1 + i] = Rational::one();
            h.0[n + 1 + i][i] = Rational::one();
            k.0[i][i] = Rational::one();
            k.0[n + 1 + i][n + 1 + i] = int(-1);
        }
        let mut v = vec![Rational::zero(); size];
        v[0] = Rational::one();
        v[size - 1] = Rational::one();
        let mut v_dual = vec![Rational::zero(); size];
        v_dual[n + 1] = Rational::one();

        let mut model = Model {
            n,
            h,
            k,
            v,
            v_dual,
            g_tilde: Vec::new(),
            g: Vec::new(),
            p_tilde: Vec::new(),
            p_tilde_plus: Vec::new(),
            g_tilde_0: Vec::new(),
            g_tilde_minus: Vec::new(),
            p: Vec::new(),
            q: Vec::new(),
            q0: Vec::new(),
            p_plus: Vec::new(),
            g_0: Vec::new(),
            g_minus: Vec::new(),
            lambda2_e: Vec::new(),
            lambda2_f: Vec::new(),
            e_tensor_f: Vec::new(),
            lambda2_f_bar: Vec::new(),
            f_hat: Vec::new(),
            reps: Vec::new(),
            duals: Vec::new(),
            duals_g: Vec::new(),
            minus_reps: Vec::new(),
            spin: SpinModule::new(n),
        };

        for i in 0..size {
            for j in i + 1..size {
                let w = model.wedge_unit(i, j);
                let (ie, je) = (i <= n, j <= n);
                match (ie, je) {
                    (true, true) => model.lambda2_e.push(w.clone()),
                    (false, false) => model.lambda2_f.push(w.clone()),
                    _ => model.e_tensor_f.push(w.clone()),
                }
                model.g_tilde.push(w);
            }
        }

        let m = n + 1;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    model.g.push(embed(&small_unit(m, i, j)));
                }
            }
        }
        for i in 0..n {
            let mut a = small_unit(m, i, i);
            a[i + 1][i + 1] = int(-1);
            model.g.push(embed(&a));
        }
        model.g_minus = (1..m).map(|i| embed(&small_unit(m, i, 0))).collect();
        model.p_plus = (1..m).map(|j| embed(&small_unit(m, 0, j))).collect();
        model.p = model.subspace(&model.g.clone(), |x| (1..m).map(|i| x.0[i][0].clone()).collect());
        model.g_0 = model.subspace(&model.p.clone(), |x| (1..m).map(|j| x.0[0][j].clone()).collect());

        let v_perp = orthogonal(&model.h, &model.v);
        let vd_perp = orthogonal(&model.h, &model.v_dual);
        let (v, vd, h) = (model.v.clone(), model.v_dual.clone(), model.h.clone());
        let gt = model.g_tilde.clone();
        model.p_tilde = model.subspace(&gt, |x| {
            let xv = x.apply(&v);
            v_perp.iter().map(|w| form(&h, &xv, w)).collect()
        });
        model.p_tilde_plus = model.subspace(&gt, |x| {
            let mut c = x.apply(&v);
            for w in &v_perp {
                let xw = x.apply(w);
                c.extend(v_perp.iter().map(|u| form(&h, &xw, u)));
            }
            c
        });
        model.g_tilde_minus = model.subspace(&gt, |x| {
            let mut c = x.apply(&vd);
            for w in &vd_perp {
                let xw = x.apply(w);
                c.extend(vd_perp.iter().map(|u| form(&h, &xw, u)));
            }
            c
        });
        let pt = model.p_tilde.clone();
        model.g_tilde_0 = model.subspace(&pt, |x| {
            let xv = x.apply(&vd);
            vd_perp.iter().map(|w| form(&h, &xv, w)).collect()
        });
        model.q = intersect(&model.g, &model.p_tilde);
        let q = model.q.clone();
        model.q0 = model.subspace(&q, |x| (1..m).map(|j| x.0[0][j].clone()).collect());
        model.lambda2_f_bar = intersect(&model.lambda2_f, &model.p_tilde);

        let s_f = model.spin.s_f();
        let ker_sf = model.annihilator(&s_f);
        model.f_hat = intersect(&model.p_tilde_plus, &ker_sf);

        model.reps = model.coset_reps();
        let pairing: QMatrix =
            model.reps.iter().map(|x| model.p_tilde_plus.iter().map(|z| model.pairing(x, z)).collect()).collect();
        model.duals = dual_basis(&pairing, &model.p_tilde_plus).ok_or(KostantError::Degenerate("g̃/p̃ × p̃₊"))?;
        let pairing_g: QMatrix =
            model.reps[..n].iter().map(|x| model.p_plus.iter().map(|z| model.pairing(x, z)).collect()).collect();
        model.duals_g = dual_basis(&pairing_g, &model.p_plus).ok_or(KostantError::Degenerate("g/p × p₊"))?;
        let classes: QMatrix =
            model.g_tilde_minus.iter().map(|y| model.class_coords(y)).collect();
        // Y_i = Σ_k c_ik G_k with Σ_k c_ik class(G_k) = e_i.
        let inv = invert(&classes).ok_or(KostantError::Degenerate("g̃_− × g̃/p̃"))?;
        model.minus_reps = inv.iter().filter_map(|c| LieMatrix::combine(c, &model.g_tilde_minus)).collect();
        Ok(model)
    }

    pub fn size(&self) -> usize {
        2 * self.n + 2
    }

    /// `B̃(X, Y) = 2n·tr(XY)`, the Killing form of `so(2n+2)`.
    pub fn killing(&self, x: &LieMatrix, y: &LieMatrix) -> Rational {
        x.matmul(y).trace() * int(2 * self.n as i64)
    }

    /// Inner product induced by `h` on `Λ²ℝ^{n+1,n+1} ≅ g̃` under `wedge`:
    /// `⟨X, Y⟩ = −½ tr(XY)`. Dual bases and cochain evaluation use this form.
    pub fn pairing(&self, x: &LieMatrix, y: &LieMatrix) -> Rational {
        x.matmul(y).trace() * rat(-1, 2)
    }

    /// `u ∧ w` acting as `z ↦ h(w, z)u − h(u, z)w`.
    pub fn wedge(&self, u: &[Rational], w: &[Rational]) -> LieMatrix {
        let hu = self.h.apply(u);
        let hw = self.h.apply(w);
        let size = self.size();
        let mut out = LieMatrix::zero(size);
        for r in 0..size {
            for s in 0..size {
                out.0[r][s] = &u[r] * &hw[s] - &w[r] * &hu[s];
            }
        }
        out
    }

    fn wedge_unit(&self, i: usize, j: usize) -> LieMatrix {
        let size = self.size();
        let mut u = vec![Rational::zero(); size];
        let mut w = vec![Rational::zero(); size];
        u[i] = Rational::one();
        w[j] = Rational::one();
        self.wedge(&u, &w)
    }

    pub fn in_g_tilde(&self, x: &LieMatrix) -> bool {
        x.transpose().matmul(&self.h).add(&self.h.matmul(x)).is_zero()
    }

    /// Coordinates in `g_tilde`; the entry for `e_i ∧ e_j` is `X[i][j*]`.
    pub fn coords(&self, x: &LieMatrix) -> Vec<Rational> {
        let size = self.size();
        let dual = |j: usize| if j <= self.n { j + self.n + 1 } else { j - self.n - 1 };
        let mut out = Vec::with_capacity(self.g_tilde.len());
        for i in 0..size {
            for j in i + 1..size {
                out.push(x.0[i][dual(j)].clone());
            }
        }
        out
    }

    pub fn in_span(&self, basis: &[LieMatrix], x: &LieMatrix) -> bool {
        if !self.in_g_tilde(x) {
            return false;
        }
        let mut rows: QMatrix = basis.iter().map(|b| self.coords(b)).collect();
        let r = rank(&rows);
        rows.push(self.coords(x));
        rank(&rows) == r
    }

    pub fn dim(&self, basis: &[LieMatrix]) -> usize {
        rank(&basis.iter().map(|b| self.coords(b)).collect())
    }

    /// Coordinates of the class of `x` in `g̃/p̃` with respect to `reps`.
    pub fn class_coords(&self, x: &LieMatrix) -> Vec<Rational> {
        self.duals.iter().map(|z| self.pairing(x, z)).collect()
    }

    /// `{A ∈ g̃ : A • s = 0}`.
    pub fn annihilator(&self, s: &SpinVector) -> Vec<LieMatrix> {
        let gt = self.g_tilde.clone();
        self.subspace(&gt, |a| self.spin.act(a, s).components().to_vec())
    }

    /// Elements `Σ c_i b_i` of the span of `basis` on which `cond` vanishes.
    pub fn subspace(&self, basis: &[LieMatrix], cond: impl Fn(&LieMatrix) -> Vec<Rational>) -> Vec<LieMatrix> {
        let cols: Vec<Vec<Rational>> = basis.iter().map(&cond).collect();
        let nrows = cols.first().map_or(0, Vec::len);
        let mat: QMatrix = (0..nrows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let kernel = if nrows == 0 {
            (0..basis.len())
                .map(|i| (0..basis.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect()
        } else {
            nullspace(&mat, basis.len())
        };
        kernel.iter().filter_map(|c| LieMatrix::combine(c, basis)).collect()
    }

    /// Coset representatives read off the `g/q` block pattern: the `X` and `w`
    /// entries (first column) span `g_−`, then the `Yᵗ` entries of the last
    /// row and the diagonal `z` element.
    fn coset_reps(&self) -> Vec<LieMatrix> {
        let n = self.n;
        let m = n + 1;
        let mut reps: Vec<LieMatrix> = (1..m).map(|i| embed(&small_unit(m, i, 0))).collect();
        reps.extend((1..n).map(|j| embed(&small_unit(m, n, j))));
        let mut z = vec![vec![Rational::zero(); m]; m];
        z[0][0] = rat(-1, 2);
        z[n][n] = rat(-1, 2);
        for (i, row) in z.iter_mut().enumerate().take(n).skip(1) {
            row[i] = rat(1, (n - 1) as i64);
        }
        reps.push(embed(&z));
        reps
    }
}

fn form(h: &LieMatrix, a: &[Rational], b: &[Rational]) -> Rational {
    h.apply(b).iter().zip(a).map(|(x, y)| x * y).sum()
}

fn orthogonal(h: &LieMatrix, v: &[Rational]) -> Vec<Vec<Rational>> {
    let hv = h.apply(v);
    nullspace(&vec![hv], v.len())
}

/// Basis of the intersection of two spans inside `gl`.
pub fn intersect(a: &[LieMatrix], b: &[LieMatrix]) -> Vec<LieMatrix> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let size = a[0].size();
    let flat = |m: &LieMatrix| m.0.iter().flatten().cloned().collect::<Vec<_>>();
    let fa: Vec<Vec<Rational>> = a.iter().map(flat).collect();
    let fb: Vec<Vec<Rational>> = b.iter().map(flat).collect();
    let rows: QMatrix = (0..size * size)
        .map(|r| fa.iter().map(|c| c[r].clone()).chain(fb.iter().map(|c| -c[r].clone())).collect())
        .collect();
    let kernel = nullspace(&rows, a.len() + b.len());
    let mut out: Vec<LieMatrix> = kernel.iter().filter_map(|c| LieMatrix::combine(&c[..a.len()], a)).collect();
    out.retain(|m| !m.is_zero());
    // Independent elements only.
    let mut basis: Vec<LieMatrix> = Vec::new();
    let mut rows: QMatrix = Vec::new();
    for m in out {
        rows.push(flat(&m));
        if rank(&rows) > basis.len() {
            basis.push(m);
        } else {
            rows.pop();
        }
    }
    basis
}

fn invert(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let piv = crate::linalg::rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Given `pairing[i][k] = ⟨x_i, b_k⟩`, elements `z_j ∈ span(b)` with
/// `⟨x_i, z_j⟩ = δ_ij`.
fn dual_basis(pairing: &QMatrix, basis: &[LieMatrix]) -> Option<Vec<LieMatrix>> {
    // Solve pairing · C = I for the coefficient matrix C (columns are z_j).
    let inv = invert(pairing)?;
    let n = pairing.len();
    (0..n)
        .map(|j| {
            let col: Vec<Rational> = inv.iter().map(|r| r[j].clone()).collect();
            LieMatrix::combine(&col, basis)
        })
        .collect()
}
