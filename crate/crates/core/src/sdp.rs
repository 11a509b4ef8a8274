//! A small dense semidefinite feasibility/optimization core: an
//! infeasible-start primal-dual path-following method with Nesterov-Todd
//! scaling and an adaptive centering parameter. Problems here are tiny
//! (matrix side < 100, a few hundred constraints), so everything is dense
//! and deterministic; no randomized pivoting, no external solver.
//!
//! Standard form:
//!   primal: min <C, X>  s.t.  <A_k, X> = b_k,  X >= 0 (psd)
//!   dual:   max b^T y   s.t.  sum_k y_k A_k + Z = C,  Z >= 0 (psd)
//!
//! The numeric solution is only ever a *hint*: callers round it to exact
//! rational certificates and verify those independently.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Symmetric matrix in sparse triplet form: entries `(i, j, v)` with
/// `i <= j`, each standing for the pair of positions `(i, j)` and `(j, i)`.
#[derive(Debug, Clone, Default)]
pub struct SparseSym {
    pub n: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn new(n: usize) -> Self {
        SparseSym {
            n,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries.push((i, j, v));
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for &(i, j, v) in &self.entries {
            m[(i, j)] += v;
            if i != j {
                m[(j, i)] += v;
            }
        }
        m
    }

    /// `<A, X>` for symmetric dense `X`.
    pub fn inner(&self, x: &DMatrix<f64>) -> f64 {
        let mut s = 0.0;
        for &(i, j, v) in &self.entries {
            if i == j {
                s += v * x[(i, i)];
            } else {
                s += 2.0 * v * x[(i, j)];
            }
        }
        s
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for &(i, j, v) in &self.entries {
            s += if i == j { v * v } else { 2.0 * v * v };
        }
        s.sqrt()
    }

    /// `W A W` for symmetric dense `W` (columns of `W` indexed by the
    /// entry positions).
    fn congruence(&self, w: &DMatrix<f64>) -> DMatrix<f64> {
        let n = w.nrows();
        let mut t = DMatrix::zeros(n, n);
        for &(i, j, v) in &self.entries {
            let wi = w.column(i);
            let wj = w.column(j);
            if i == j {
                t.ger(v, &wi, &wj, 1.0);
            } else {
                t.ger(v, &wi, &wj, 1.0);
                t.ger(v, &wj, &wi, 1.0);
            }
        }
        t
    }
}

#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub dim: usize,
    pub c: SparseSym,
    pub constraints: Vec<SparseSym>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdpStatus {
    Converged,
    Stalled,
    MaxIterations,
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub x: DMatrix<f64>,
    pub y: Vec<f64>,
    pub z: DMatrix<f64>,
    pub iterations: usize,
    pub mu: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub primal_objective: f64,
    pub dual_objective: f64,
}

#[derive(Debug, Clone)]
pub struct SdpOptions {
    pub max_iterations: usize,
    pub feasibility_tol: f64,
    pub gap_tol: f64,
    pub stall_window: usize,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions {
            max_iterations: 200,
            feasibility_tol: 1e-9,
            gap_tol: 1e-10,
            stall_window: 25,
        }
    }
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Largest step `alpha <= 1` with `M + alpha * D` staying positive definite
/// up to the fraction-to-boundary factor `tau`. `l` is the Cholesky factor
/// of `M`.
fn max_step(l: &DMatrix<f64>, d: &DMatrix<f64>, tau: f64) -> f64 {
    // lambda_min of L^{-1} D L^{-T}
    let t1 = l
        .clone()
        .solve_lower_triangular(d)
        .expect("cholesky factor is invertible");
    let t2 = l
        .clone()
        .solve_lower_triangular(&t1.transpose())
        .expect("cholesky factor is invertible");
    let eig = SymmetricEigen::new(sym(&t2));
    let lam_min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if lam_min >= -1e-14 {
        1.0
    } else {
        (tau * (-1.0 / lam_min)).min(1.0)
    }
}

fn cholesky_with_jitter(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let n = m.nrows();
    let mut jitter = 0.0;
    let scale = m.trace().abs().max(1.0) / n as f64;
    for _ in 0..8 {
        let trial = if jitter == 0.0 {
            m.clone()
        } else {
            m + DMatrix::identity(n, n) * (jitter * scale)
        };
        if let Some(ch) = trial.cholesky() {
            return Some(ch.l());
        }
        jitter = if jitter == 0.0 { 1e-14 } else { jitter * 100.0 };
    }
    None
}

/// Nesterov-Todd scaling point: the unique PD matrix `W` with `W Z W = X`.
fn nt_scaling(lx: &DMatrix<f64>, z: &DMatrix<f64>) -> DMatrix<f64> {
    // W = Lx U lam^{-1/2} U^T Lx^T where Lx^T Z Lx = U lam U^T.
    let inner = sym(&(lx.transpose() * z * lx));
    let eig = SymmetricEigen::new(inner);
    let mut scaled = eig.eigenvectors.clone();
    for (c, lam) in eig.eigenvalues.iter().enumerate() {
        let f = lam.max(1e-300).powf(-0.25);
        scaled.column_mut(c).scale_mut(f);
    }
    let core = &scaled * scaled.transpose();
    sym(&(lx * core * lx.transpose()))
}

pub fn solve_sdp(problem: &SdpProblem, options: &SdpOptions) -> SdpSolution {
    let n = problem.dim;
    let m = problem.constraints.len();
    let c_dense = problem.c.to_dense();

    // Infeasible start: scaled multiples of the identity.
    let b_norm = problem.b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let a_scale = problem
        .constraints
        .iter()
        .map(|a| a.frobenius())
        .fold(1.0f64, f64::max);
    let c_scale = problem.c.frobenius().max(1.0);
    let xi = (n as f64).sqrt().max(10.0).max(b_norm / a_scale * n as f64);
    let eta = (n as f64).sqrt().max(10.0).max(c_scale);

    let mut x = DMatrix::identity(n, n) * xi;
    let mut z = DMatrix::identity(n, n) * eta;
    let mut y = DVector::zeros(m);

    let mut best_mu = f64::INFINITY;
    let mut stall = 0usize;
    let mut iterations = 0usize;
    let mut status = SdpStatus::MaxIterations;

    let mut mu = (x.dot(&z)) / n as f64;
    let mut primal_residual = f64::INFINITY;
    let mut dual_residual = f64::INFINITY;

    for iter in 0..options.max_iterations {
        iterations = iter;
        // Residuals.
        let mut rp = DVector::zeros(m);
        for (k, a) in problem.constraints.iter().enumerate() {
            rp[k] = problem.b[k] - a.inner(&x);
        }
        let mut a_star_y = DMatrix::zeros(n, n);
        for (k, a) in problem.constraints.iter().enumerate() {
            if y[k] != 0.0 {
                a_star_y += a.to_dense() * y[k];
            }
        }
        let rd = &c_dense - &z - &a_star_y;
        mu = x.dot(&z) / n.max(1) as f64;

        primal_residual = rp.norm() / (1.0 + b_norm);
        dual_residual = rd.norm() / (1.0 + c_scale);

        let pobj = problem.c.inner(&x);
        let dobj = problem.b.iter().zip(y.iter()).map(|(b, y)| b * y).sum::<f64>();
        let gap_rel = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());

        if primal_residual < options.feasibility_tol
            && dual_residual < options.feasibility_tol
            && (mu < options.gap_tol || gap_rel < options.gap_tol.max(1e-12))
        {
            status = SdpStatus::Converged;
            break;
        }
        if mu < 0.98 * best_mu {
            best_mu = mu;
            stall = 0;
        } else {
            stall += 1;
            if stall > options.stall_window {
                status = SdpStatus::Stalled;
                break;
            }
        }

        // Factorizations of the current iterates.
        let Some(lx) = cholesky_with_jitter(&x) else {
            status = SdpStatus::Stalled;
            break;
        };
        let Some(lz) = cholesky_with_jitter(&z) else {
            status = SdpStatus::Stalled;
            break;
        };
        let z_inv = {
            let id = DMatrix::identity(n, n);
            let t1 = lz
                .clone()
                .solve_lower_triangular(&id)
                .expect("cholesky factor invertible");
            sym(&(t1.transpose() * t1))
        };
        let w = nt_scaling(&lx, &z);

        // Schur complement S[r][s] = <A_r, W A_s W>.
        let mut schur = DMatrix::zeros(m, m);
        for s in 0..m {
            let t = problem.constraints[s].congruence(&w);
            for r in 0..=s {
                let v = problem.constraints[r].inner(&t);
                schur[(r, s)] = v;
                schur[(s, r)] = v;
            }
        }
        // Regularize minutely for safety; the shift is far below solver
        // tolerances.
        let reg = 1e-13 * (schur.trace().abs().max(1.0) / m.max(1) as f64);
        for i in 0..m {
            schur[(i, i)] += reg;
        }
        let Some(schur_chol) = schur.cholesky() else {
            status = SdpStatus::Stalled;
            break;
        };

        let w_rd_w = sym(&(&w * &rd * &w));

        // One Newton solve for a given complementarity target R_nt.
        let solve_direction = |r_nt: &DMatrix<f64>| -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
            let base = r_nt - &w_rd_w;
            let mut rhs = DVector::zeros(m);
            for (k, a) in problem.constraints.iter().enumerate() {
                rhs[k] = rp[k] - a.inner(&base);
            }
            let dy = schur_chol.solve(&rhs);
            let mut a_star_dy = DMatrix::zeros(n, n);
            for (k, a) in problem.constraints.iter().enumerate() {
                if dy[k] != 0.0 {
                    a_star_dy += a.to_dense() * dy[k];
                }
            }
            let dz = &rd - &a_star_dy;
            let dx = sym(&(r_nt - &(&w * &dz * &w)));
            (dx, dy, dz)
        };

        // Predictor (affine direction, sigma = 0).
        let r_aff = -&x;
        let (dx_aff, _dy_aff, dz_aff) = solve_direction(&r_aff);
        let tau = 0.98;
        let ap = max_step(&lx, &dx_aff, tau);
        let ad = max_step(&lz, &sym(&dz_aff), tau);
        let mu_aff = ((&x + &dx_aff * ap).dot(&(&z + &dz_aff * ad))) / n as f64;
        let sigma = (mu_aff / mu).max(0.0).powi(3).clamp(1e-6, 0.999);

        // Corrector with adaptive centering.
        let r_cent = &z_inv * (sigma * mu) - &x;
        let (dx, dy, dz) = solve_direction(&sym(&r_cent));
        let mut ap = max_step(&lx, &dx, tau);
        let mut ad = max_step(&lz, &sym(&dz), tau);

        // Safeguarded update: back off if numerics push an iterate off the
        // cone.
        for _ in 0..8 {
            let x_new = sym(&(&x + &dx * ap));
            let z_new = sym(&(&z + &dz * ad));
            if x_new.clone().cholesky().is_some() && z_new.clone().cholesky().is_some() {
                x = x_new;
                z = z_new;
                y += &dy * ad;
                break;
            }
            ap *= 0.5;
            ad *= 0.5;
        }
    }

    let pobj = problem.c.inner(&x);
    let dobj = problem
        .b
        .iter()
        .zip(y.iter())
        .map(|(b, y)| b * y)
        .sum::<f64>();
    SdpSolution {
        status,
        x,
        y: y.iter().cloned().collect(),
        z,
        iterations,
        mu,
        primal_residual,
        dual_residual,
        primal_objective: pobj,
        dual_objective: dobj,
    }
}
