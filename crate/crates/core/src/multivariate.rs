//! Modified BFGS driver with Sherman-Morrison inverse-Hessian updates and
//! step lengths from the Chebyshev pseudospectral line search.
//!
//! The loop follows the quasi-Newton pattern: direction from the inverse
//! Hessian approximation (normalized when its norm exceeds a cap), a
//! positive step length found by the line search on [alpha_min, alpha_max]
//! with rightward-only interval expansion, then a rank-two inverse update.
//! Updates with near-zero curvature s'y are skipped rather than damped,
//! which preserves symmetry without inventing damping constants.

use crate::error::Error;
use crate::line_search::{run, Expansion, LineSearchConfig, Objective1D, Order};
use ndarray::{Array1, Array2};

/// Curvature threshold below which the inverse update is skipped.
const CURVATURE_GUARD: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct BfgsConfig {
    /// Starting inverse Hessian approximation; identity when absent.
    pub initial_inverse_hessian: Option<Array2<f64>>,
    /// Outer iteration cap.
    pub k_max: usize,
    /// Directions longer than this are normalized to unit length.
    pub p_max: f64,
    /// Central-difference step for gradient approximation.
    pub grad_step: f64,
    /// Step-length search interval [alpha_min, alpha_max]; the right end may
    /// expand, the left end never moves.
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// Stop when the gradient norm falls below this.
    pub grad_tol: f64,
    /// Stop when the step norm falls below this.
    pub step_tol: f64,
    /// Settings for the inner step-length search.
    pub line_search: LineSearchConfig,
}

impl Default for BfgsConfig {
    fn default() -> Self {
        Self {
            initial_inverse_hessian: None,
            k_max: 10_000,
            p_max: 10.0,
            grad_step: 1e-4,
            alpha_min: 3.0 * f64::EPSILON,
            alpha_max: 10.0,
            grad_tol: 1e-12,
            step_tol: 1e-12,
            line_search: LineSearchConfig {
                m_grid: 6,
                eps_c: f64::EPSILON,
                eps_d: 1e-6,
                eps: 1e-6,
                k_max: 100,
                ..LineSearchConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfgsStatus {
    /// Gradient norm fell below the tolerance.
    GradientConverged,
    /// Step norm fell below the tolerance.
    StepConverged,
    /// Outer iteration cap exceeded.
    Failure,
}

/// Structural measurements recorded every iteration; the invariants tests
/// consume these.
#[derive(Debug, Clone, Copy)]
pub struct IterationDiag {
    pub alpha: f64,
    pub direction_norm: f64,
    pub grad_norm: f64,
    /// Largest entrywise asymmetry of the inverse Hessian after the update.
    pub inverse_asymmetry: f64,
    /// Relative secant residual ||B y - s|| / ||s|| after the update, when
    /// the update was applied.
    pub secant_residual: Option<f64>,
    pub update_skipped: bool,
}

#[derive(Debug, Clone)]
pub struct BfgsResult {
    pub x: Vec<f64>,
    pub fval: f64,
    pub iterations: usize,
    pub status: BfgsStatus,
    pub diagnostics: Vec<IterationDiag>,
}

/// Central-difference gradient: component i is
/// `(f(x + h e_i) - f(x - h e_i)) / (2h)`.
pub fn central_diff_gradient<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64], h: f64) -> Vec<f64> {
    let mut work = x.to_vec();
    let mut g = vec![0.0; x.len()];
    for i in 0..x.len() {
        let xi = x[i];
        work[i] = xi + h;
        let fp = f(&work);
        work[i] = xi - h;
        let fm = f(&work);
        work[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    g
}

/// Sherman-Morrison-style rank-two inverse update:
/// `B + (s'y + y'By)(ss')/(s'y)^2 - (Bys' + sy'B)/(s'y)`.
///
/// Returns `None` when |s'y| is below the curvature guard; the caller keeps
/// the previous inverse.
pub fn inverse_update(binv: &Array2<f64>, s: &Array1<f64>, y: &Array1<f64>) -> Option<Array2<f64>> {
    let t = s.dot(y);
    if t.abs() < CURVATURE_GUARD {
        return None;
    }
    let by = binv.dot(y);
    let y_by = y.dot(&by);
    let n = binv.nrows();
    let mut out = binv.clone();
    let c1 = (t + y_by) / (t * t);
    for i in 0..n {
        for j in 0..n {
            out[[i, j]] += c1 * s[i] * s[j] - (by[i] * s[j] + s[i] * by[j]) / t;
        }
    }
    Some(out)
}

type GradientFn<'a> = Box<dyn Fn(&[f64]) -> Vec<f64> + 'a>;

enum GradientSource<'a> {
    CentralDiff(f64),
    Analytic(GradientFn<'a>),
}

/// Minimize with central-difference gradients.
pub fn bfgs_minimize<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    cfg: &BfgsConfig,
) -> Result<BfgsResult, Error> {
    let h = cfg.grad_step;
    drive(&f, GradientSource::CentralDiff(h), x0, cfg)
}

/// Minimize with a user-supplied analytic gradient: removes truncation noise
/// when testing the secant and symmetry invariants.
pub fn bfgs_minimize_with_gradient<F, G>(
    f: F,
    grad: G,
    x0: &[f64],
    cfg: &BfgsConfig,
) -> Result<BfgsResult, Error>
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    drive(&f, GradientSource::Analytic(Box::new(grad)), x0, cfg)
}

fn drive<F: Fn(&[f64]) -> f64>(
    f: &F,
    grad: GradientSource,
    x0: &[f64],
    cfg: &BfgsConfig,
) -> Result<BfgsResult, Error> {
    if x0.is_empty() || x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig(
            "starting point must be finite and nonempty",
        ));
    }
    if cfg.p_max <= 0.0 || cfg.alpha_min <= 0.0 || cfg.alpha_max <= cfg.alpha_min {
        return Err(Error::InvalidConfig(
            "p_max and the alpha interval must be positive",
        ));
    }
    let n = x0.len();
    let gradient = |x: &[f64]| -> Array1<f64> {
        match &grad {
            GradientSource::CentralDiff(h) => Array1::from(central_diff_gradient(f, x, *h)),
            GradientSource::Analytic(g) => Array1::from(g(x)),
        }
    };

    let mut binv = match &cfg.initial_inverse_hessian {
        Some(m) => {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: m.nrows(),
                });
            }
            m.clone()
        }
        None => Array2::eye(n),
    };
    let mut x = Array1::from(x0.to_vec());
    let mut g = gradient(x.as_slice().unwrap());
    let mut diagnostics = Vec::new();

    if norm(&g) < cfg.grad_tol {
        let fval = f(x.as_slice().unwrap());
        return Ok(BfgsResult {
            x: x.to_vec(),
            fval,
            iterations: 0,
            status: BfgsStatus::GradientConverged,
            diagnostics,
        });
    }

    let mut p = -binv.dot(&g);
    cap_direction(&mut p, cfg.p_max);

    let mut k = 0usize;
    while k <= cfg.k_max {
        let alpha = step_length(f, &x, &p, cfg);
        let s = alpha * &p;
        let x_next = &x + &s;
        let g_next = gradient(x_next.as_slice().unwrap());
        let gn = norm(&g_next);
        let sn = norm(&s);

        let mut diag = IterationDiag {
            alpha,
            direction_norm: norm(&p),
            grad_norm: gn,
            inverse_asymmetry: asymmetry(&binv),
            secant_residual: None,
            update_skipped: false,
        };

        if gn < cfg.grad_tol || sn < cfg.step_tol {
            diagnostics.push(diag);
            let fval = f(x_next.as_slice().unwrap());
            return Ok(BfgsResult {
                x: x_next.to_vec(),
                fval,
                iterations: k + 1,
                status: if gn < cfg.grad_tol {
                    BfgsStatus::GradientConverged
                } else {
                    BfgsStatus::StepConverged
                },
                diagnostics,
            });
        }

        let y = &g_next - &g;
        match inverse_update(&binv, &s, &y) {
            Some(updated) => {
                let resid = norm(&(updated.dot(&y) - &s)) / sn.max(f64::MIN_POSITIVE);
                diag.secant_residual = Some(resid);
                binv = updated;
            }
            None => {
                diag.update_skipped = true;
            }
        }
        diag.inverse_asymmetry = asymmetry(&binv);
        diagnostics.push(diag);

        p = -binv.dot(&g_next);
        cap_direction(&mut p, cfg.p_max);
        x = x_next;
        g = g_next;
        k += 1;
    }

    let fval = f(x.as_slice().unwrap());
    Ok(BfgsResult {
        x: x.to_vec(),
        fval,
        iterations: k,
        status: BfgsStatus::Failure,
        diagnostics,
    })
}

fn step_length<F: Fn(&[f64]) -> f64>(
    f: &F,
    x: &Array1<f64>,
    p: &Array1<f64>,
    cfg: &BfgsConfig,
) -> f64 {
    let phi = Objective1D::new(|alpha: f64| {
        let trial = x + &(alpha * p);
        f(trial.as_slice().unwrap())
    });
    match run(
        &phi,
        cfg.alpha_min,
        cfg.alpha_max,
        &cfg.line_search,
        Order::Second,
        Expansion::RightwardOnly,
    ) {
        Ok(state) if state.t_star.is_finite() => state.t_star.max(cfg.alpha_min),
        _ => cfg.alpha_min,
    }
}

fn cap_direction(p: &mut Array1<f64>, p_max: f64) {
    let pn = norm(p);
    if pn > p_max {
        *p /= pn;
    }
}

fn norm(v: &Array1<f64>) -> f64 {
    v.dot(v).sqrt()
}

fn asymmetry(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m[[i, j]] - m[[j, i]]).abs());
        }
    }
    worst
}
