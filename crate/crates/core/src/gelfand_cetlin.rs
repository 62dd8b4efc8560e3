//! Floating-point Gelfand–Cetlin toolbox: frames, the eigenvalue map 𝔷, and the
//! disk potential W_T with its positive critical point.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::diagram::GrContext;
use crate::error::{Error, Result};

type C64 = Complex<f64>;

/// Tolerance on U†U = I.
pub const ORTHONORMAL_TOL: f64 = 1e-12;
/// Tolerance for the constant eigenvalues and the interlacing inequalities.
pub const EIGEN_TOL: f64 = 1e-9;

/// An n × k complex matrix with orthonormal columns, representing a point of Gr(k,n).
#[derive(Clone, Debug)]
pub struct Frame {
    ctx: GrContext,
    entries: DMatrix<C64>,
}

impl Frame {
    pub fn new(ctx: &GrContext, entries: DMatrix<C64>) -> Result<Self> {
        let (n, k) = (ctx.n() as usize, ctx.k() as usize);
        if entries.shape() != (n, k) {
            return Err(Error::ContextMismatch(format!("frame of shape {:?} for {ctx}", entries.shape())));
        }
        let dev = (entries.adjoint() * &entries - DMatrix::<C64>::identity(k, k))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if dev > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(Self { ctx: *ctx, entries })
    }

    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// The orthogonal projection A = UU† onto the plane.
    pub fn projection(&self) -> DMatrix<C64> {
        &self.entries * self.entries.adjoint()
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Removes from `v` its components along `basis` (assumed orthonormal), twice for stability.
fn orthogonalize(v: &mut DVector<C64>, basis: &[DVector<C64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = b.dotc(v);
            *v -= b * c;
        }
    }
}

/// A frame from a seeded complex Gaussian matrix, orthonormalized by Gram–Schmidt.
pub fn random_frame(ctx: &GrContext, seed: u64) -> Result<Frame> {
    let (n, k) = (ctx.n() as usize, ctx.k() as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<DVector<C64>> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut v = DVector::from_fn(n, |_, _| gaussian(&mut rng));
        orthogonalize(&mut v, &cols);
        let norm = v.norm();
        cols.push(v / C64::from(norm));
    }
    Frame::new(ctx, DMatrix::from_columns(&cols))
}

/// 𝔍: complex conjugation followed by the block-diagonal matrix diag([[0,−1],[1,0]], …).
pub fn quaternion_j(v: &DVector<C64>) -> DVector<C64> {
    let mut out = DVector::zeros(v.len());
    for m in (0..v.len()).step_by(2) {
        out[m] = -v[m + 1].conj();
        out[m + 1] = v[m].conj();
    }
    out
}

/// A frame [X_1, 𝔍X_1, …, X_{k/2}, 𝔍X_{k/2}] spanning a point of the quaternionic
/// Grassmannian inside Gr(k,n). Each X_i is orthogonalized against every earlier X_j
/// and 𝔍X_j; the span of those is 𝔍-stable, so 𝔍X_i is then orthogonal as well.
pub fn quaternionic_frame(ctx: &GrContext, seed: u64) -> Result<Frame> {
    let (n, k) = (ctx.n() as usize, ctx.k() as usize);
    if k % 2 == 1 || n % 2 == 1 {
        return Err(Error::Unsupported(format!("quaternionic frames need k and n even, got {ctx}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<DVector<C64>> = Vec::with_capacity(k);
    for _ in 0..k / 2 {
        let mut x = DVector::from_fn(n, |_, _| gaussian(&mut rng));
        orthogonalize(&mut x, &cols);
        let norm = x.norm();
        x /= C64::from(norm);
        let jx = quaternion_j(&x);
        cols.push(x);
        cols.push(jx);
    }
    Frame::new(ctx, DMatrix::from_columns(&cols))
}

/// The values 𝔷_{i,j}, i = 1..k, j = 1..n−k, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GcValues {
    pub k: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

impl GcValues {
    /// 𝔷_{i,j} with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i - 1) * self.cols + (j - 1)]
    }

    /// Column labels "z_i_j" in storage order.
    pub fn labels(&self) -> Vec<String> {
        (1..=self.k).flat_map(|i| (1..=self.cols).map(move |j| format!("z_{i}_{j}"))).collect()
    }

    /// Largest violation of 0 ≤ 𝔷 ≤ 1 and 𝔷_{i,j+1} ≥ 𝔷_{i,j} ≥ 𝔷_{i+1,j}; zero when all hold.
    pub fn max_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..=self.k {
            for j in 1..=self.cols {
                let z = self.get(i, j);
                worst = worst.max(-z).max(z - 1.0);
                if j < self.cols {
                    worst = worst.max(z - self.get(i, j + 1));
                }
                if i < self.k {
                    worst = worst.max(self.get(i + 1, j) - z);
                }
            }
        }
        worst
    }
}

/// Descending eigenvalues of the leading r × r block of A, for r = 1..n.
pub fn leading_spectra(frame: &Frame) -> Vec<Vec<f64>> {
    let a = frame.projection();
    let n = a.nrows();
    (1..=n)
        .map(|r| {
            let block = a.view((0, 0), (r, r)).into_owned();
            let mut ev: Vec<f64> = block.symmetric_eigenvalues().iter().copied().collect();
            ev.sort_by(|x, y| y.total_cmp(x));
            ev
        })
        .collect()
}

/// 𝔷_{i,j} = λ_i^{(i+j−1)}. Also checks the eigenvalues forced to be 0 or 1.
pub fn gc_map(frame: &Frame) -> Result<GcValues> {
    let (k, n) = (frame.ctx.k() as usize, frame.ctx.n() as usize);
    let spectra = leading_spectra(frame);
    for (r, ev) in (1..=n).zip(&spectra) {
        for (i, &lam) in (1..=r).zip(ev) {
            let forced = if i + n - r <= k {
                Some(1.0)
            } else if i > k {
                Some(0.0)
            } else {
                None
            };
            if let Some(v) = forced {
                if (lam - v).abs() > EIGEN_TOL {
                    return Err(Error::NotOrthonormal((lam - v).abs()));
                }
            }
        }
    }
    let cols = n - k;
    let mut values = Vec::with_capacity(k * cols);
    for i in 1..=k {
        for j in 1..=cols {
            values.push(spectra[i + j - 2][i - 1]);
        }
    }
    Ok(GcValues { k, cols, values })
}

/// A point z ∈ (0,∞)^{k(n−k)}, stored row-major with 1-based accessors.
#[derive(Clone, Debug, PartialEq)]
pub struct GcPoint {
    ctx: GrContext,
    z: Vec<f64>,
}

impl GcPoint {
    pub fn new(ctx: &GrContext, z: Vec<f64>) -> Result<Self> {
        let cols = ctx.cols() as usize;
        if z.len() != ctx.k() as usize * cols {
            return Err(Error::ContextMismatch(format!("{} coordinates for {ctx}", z.len())));
        }
        if let Some(pos) = z.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::NonPositive(pos / cols + 1, pos % cols + 1));
        }
        Ok(Self { ctx: *ctx, z })
    }

    pub fn constant(ctx: &GrContext, v: f64) -> Result<Self> {
        Self::new(ctx, vec![v; (ctx.k() * ctx.cols()) as usize])
    }

    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn coords(&self) -> &[f64] {
        &self.z
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.z[(i - 1) * self.ctx.cols() as usize + (j - 1)]
    }

    /// Coordinates keyed "i,j".
    pub fn to_map(&self) -> BTreeMap<String, f64> {
        let cols = self.ctx.cols() as usize;
        self.z.iter().enumerate().map(|(t, &v)| (format!("{},{}", t / cols + 1, t % cols + 1), v)).collect()
    }
}

/// One Laurent monomial of W_T: ∏ z^{exponent} over sparse (index, exponent) pairs.
pub type PotentialTerm = Vec<(usize, i32)>;

/// The terms of W_T in four groups: vertical ratios z_{i,j}/z_{i+1,j}, horizontal
/// ratios z_{i,j+1}/z_{i,j}, then 1/z_{1,n−k} and z_{k,1}.
pub fn potential_terms(ctx: &GrContext) -> Vec<PotentialTerm> {
    let (k, cols) = (ctx.k() as usize, ctx.cols() as usize);
    let idx = |i: usize, j: usize| (i - 1) * cols + (j - 1);
    let mut terms = Vec::new();
    for i in 1..k {
        for j in 1..=cols {
            terms.push(vec![(idx(i, j), 1), (idx(i + 1, j), -1)]);
        }
    }
    for i in 1..=k {
        for j in 1..cols {
            terms.push(vec![(idx(i, j + 1), 1), (idx(i, j), -1)]);
        }
    }
    terms.push(vec![(idx(1, cols), -1)]);
    terms.push(vec![(idx(k, 1), 1)]);
    terms
}

fn term_value(t: &PotentialTerm, z: &[f64]) -> f64 {
    t.iter().map(|&(m, e)| z[m].powi(e)).product()
}

/// W_T(z).
pub fn potential_eval(z: &GcPoint) -> f64 {
    potential_terms(&z.ctx).iter().map(|t| term_value(t, &z.z)).sum()
}

/// ∂W_T/∂z_m for every coordinate, in storage order.
pub fn potential_grad(z: &GcPoint) -> Vec<f64> {
    let mut g = vec![0.0; z.z.len()];
    for t in potential_terms(&z.ctx) {
        let w = term_value(&t, &z.z);
        for &(m, e) in &t {
            g[m] += e as f64 * w / z.z[m];
        }
    }
    g
}

/// Log derivatives z_m ∂W_T/∂z_m.
pub fn potential_log_grad(z: &GcPoint) -> Vec<f64> {
    potential_grad(z).iter().zip(&z.z).map(|(g, v)| g * v).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IterateRecord {
    pub w: f64,
    pub grad_inf: f64,
    pub step: f64,
}

/// Result of [`find_critical_point`].
#[derive(Clone, Debug, Serialize)]
pub struct CriticalPointReport {
    pub z: BTreeMap<String, f64>,
    #[serde(rename = "W")]
    pub w: f64,
    #[serde(rename = "gradInf")]
    pub grad_inf: f64,
    pub iters: usize,
    #[serde(skip)]
    pub point: Option<GcPoint>,
    #[serde(skip)]
    pub history: Vec<IterateRecord>,
    /// Whether the log-coordinate Hessian admitted a Cholesky factorization at every iterate.
    #[serde(skip)]
    pub hessian_positive_definite: bool,
}

pub const MAX_NEWTON_ITERS: usize = 200;

/// Minimizes W_T in log coordinates u = log z, where W_T = Σ exp(a_t · u) is convex,
/// by Newton steps with Armijo backtracking from u = 0. Stops once both the gradient
/// and the log gradient have sup norm below `tol`.
pub fn find_critical_point(ctx: &GrContext, tol: f64) -> Result<CriticalPointReport> {
    if !(tol > 0.0) {
        return Err(Error::Unsupported(format!("tolerance must be positive, got {tol}")));
    }
    let terms = potential_terms(ctx);
    let dim = (ctx.k() * ctx.cols()) as usize;
    let eval = |u: &DVector<f64>| -> f64 {
        terms.iter().map(|t| t.iter().map(|&(m, e)| e as f64 * u[m]).sum::<f64>().exp()).sum()
    };
    let mut u = DVector::<f64>::zeros(dim);
    let mut history = Vec::new();
    let mut pd = true;
    for iter in 0..=MAX_NEWTON_ITERS {
        let z = GcPoint::new(ctx, u.iter().map(|x| x.exp()).collect())?;
        let g_log = DVector::from_vec(potential_log_grad(&z));
        let grad_inf = potential_grad(&z).iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let w = eval(&u);
        if grad_inf < tol && g_log.amax() < tol {
            history.push(IterateRecord { w, grad_inf, step: 0.0 });
            return Ok(CriticalPointReport {
                z: z.to_map(),
                w: potential_eval(&z),
                grad_inf,
                iters: iter,
                point: Some(z),
                history,
                hessian_positive_definite: pd,
            });
        }
        // Hessian Σ w_t a_t a_tᵀ
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        for t in &terms {
            let wt = t.iter().map(|&(m, e)| e as f64 * u[m]).sum::<f64>().exp();
            for &(a, ea) in t {
                for &(b, eb) in t {
                    h[(a, b)] += wt * (ea * eb) as f64;
                }
            }
        }
        let dir = match h.clone().cholesky() {
            Some(ch) => -ch.solve(&g_log),
            None => {
                pd = false;
                -g_log.clone()
            }
        };
        let slope = g_log.dot(&dir);
        let mut step = 1.0;
        while eval(&(&u + &dir * step)) > w + 1e-4 * step * slope {
            step *= 0.5;
            if step < 1e-16 {
                break;
            }
        }
        history.push(IterateRecord { w, grad_inf, step });
        u += dir * step;
    }
    let z = GcPoint::new(ctx, u.iter().map(|x| x.exp()).collect())?;
    let grad = potential_grad(&z).iter().fold(0.0f64, |a, b| a.max(b.abs()));
    Err(Error::NoConvergence { iters: MAX_NEWTON_ITERS, grad })
}
