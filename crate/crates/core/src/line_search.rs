//! The Chebyshev pseudospectral line search.
//!
//! A run proceeds in two phases. First the uncertainty-interval locator
//! subdivides the user's interval and, when the minimum sits at an edge,
//! expands golden-ratio-fashion until a bracket is found. Then the main loop
//! fits a fourth-degree Chebyshev interpolant on the bracket, reads off the
//! monomial cubic of its derivative, and dispatches on the cubic's roots:
//! a linear derivative gives the minimizer directly; usable real roots seed a
//! Newton (or secant) iteration driven by single-row differentiation
//! operators; anything else falls back to one golden-section reduction before
//! the inner iteration. Flat profiles where both derivative estimates are
//! tiny are handed to Brent's method on a half interval.
//!
//! Every translated iterate is kept inside [-1, 1]; the row operators reject
//! anything outside, and the Newton/secant loops re-bracket instead of
//! stepping out.

use crate::chebyshev::{cgl_nodes, derivative_coeffs, discrete_transform, ChebGrid};
use crate::cpsdm::row_diff_matrix;
use crate::cubic::{assemble_cubic, classify_roots, scale_coeffs, viete_roots, RootClassification};
use crate::error::Error;
use std::cell::Cell;

/// Golden ratio, and its square, as used by the one-step golden section
/// reduction and the interval locator.
pub const GOLDEN_RATIO: f64 = 1.618033988749895;
pub const GOLDEN_RATIO_SQ: f64 = 2.618033988749895;

const EPS_MACH: f64 = f64::EPSILON;

/// A single-variable objective with an evaluation counter.
///
/// The evaluator must be deterministic within a run. A value is confined to
/// the thread running its search; independent runs may execute concurrently.
pub struct Objective1D<'a> {
    evaluator: Box<dyn Fn(f64) -> f64 + 'a>,
    evals: Cell<u64>,
}

impl<'a> Objective1D<'a> {
    pub fn new(f: impl Fn(f64) -> f64 + 'a) -> Self {
        Self {
            evaluator: Box::new(f),
            evals: Cell::new(0),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.evals.set(self.evals.get() + 1);
        (self.evaluator)(t)
    }

    pub fn eval_count(&self) -> u64 {
        self.evals.get()
    }
}

/// Search settings. Defaults are the standalone one-dimensional settings;
/// the multivariate driver overrides the grid order and tolerances.
#[derive(Debug, Clone)]
pub struct LineSearchConfig {
    /// Grid order for the row differentiation operators.
    pub m_grid: usize,
    /// Sample-scaling threshold: samples are divided by their max magnitude
    /// when it exceeds this.
    pub f_max: f64,
    /// Cutoff below which cubic coefficients count as zero.
    pub eps_c: f64,
    /// Both derivative estimates below this means the profile is too flat
    /// for Newton and Brent's method takes over.
    pub eps_d: f64,
    /// Solution tolerance on the physical variable.
    pub eps: f64,
    /// Iteration budget shared by the locator, the outer loop, and the
    /// inner iterations.
    pub k_max: usize,
    /// Number of subintervals used by the uncertainty-interval locator.
    pub l_sub: usize,
    /// Brent fallback tolerance and iteration cap.
    pub brent_tol: f64,
    pub brent_cap: usize,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        Self {
            m_grid: 12,
            f_max: 100.0,
            eps_c: 1e-15,
            eps_d: 1e-1,
            eps: 1e-10,
            k_max: 100,
            l_sub: 10,
            brent_tol: 1e-10,
            brent_cap: 200,
        }
    }
}

impl LineSearchConfig {
    fn validate(&self) -> Result<(), Error> {
        if self.m_grid < 2 {
            return Err(Error::InvalidConfig("m_grid must be at least 2"));
        }
        if self.k_max < 1 {
            return Err(Error::InvalidConfig("k_max must be at least 1"));
        }
        if !(self.eps > 0.0 && self.eps_c > 0.0 && self.eps_d > 0.0 && self.brent_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive"));
        }
        if self.l_sub < 2 {
            return Err(Error::InvalidConfig("l_sub must be at least 2"));
        }
        Ok(())
    }
}

/// How the interval locator may move the uncertainty interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    /// Expand toward either side, crossing zero by the sign-flip rule.
    Both,
    /// Never move the left endpoint: used for step-length searches where the
    /// variable must stay positive.
    RightwardOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxIterations,
    BracketFailed,
}

/// Which part of the search produced a trace record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Locate,
    LinearRoot,
    GoldenStep,
    BestRoot,
    Newton,
    Secant,
    Brent,
    IntervalShrink,
}

#[derive(Debug, Clone, Copy)]
pub struct TraceRecord {
    pub interval: (f64, f64),
    /// Translated iterate in [-1, 1], when the step produced one.
    pub iterate: Option<f64>,
    pub branch: Branch,
}

/// State of one line-search run.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub a: f64,
    pub b: f64,
    /// Most recent translated iterates.
    pub x1: f64,
    pub x2: f64,
    /// Secant-only third point.
    pub x3: f64,
    /// Iteration counter, shared across locator, outer loop, and inner loops.
    pub k: usize,
    pub status: Termination,
    pub t_star: f64,
    pub f_star: f64,
    pub evals: u64,
    pub trace: Vec<TraceRecord>,
}

impl SearchState {
    pub fn new(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            x1: 0.0,
            x2: 0.0,
            x3: 0.0,
            k: 0,
            status: Termination::MaxIterations,
            t_star: f64::NAN,
            f_star: f64::NAN,
            evals: 0,
            trace: Vec::new(),
        }
    }

    pub fn e_plus(&self) -> f64 {
        self.a + self.b
    }

    pub fn e_minus(&self) -> f64 {
        self.b - self.a
    }

    fn record(&mut self, cap: usize, branch: Branch, iterate: Option<f64>) {
        if self.trace.len() < cap {
            self.trace.push(TraceRecord {
                interval: (self.a, self.b),
                iterate,
                branch,
            });
        }
    }
}

/// Outcome of one one-step golden section reduction.
#[derive(Debug, Clone, Copy)]
pub struct GoldenStep {
    /// Winning probe (smaller objective value).
    pub t_best: f64,
    /// The other probe; it sits on the boundary of the reduced interval.
    pub t_second: f64,
    pub a: f64,
    pub b: f64,
    /// Set when the reduced interval is already shorter than the tolerance.
    pub converged: bool,
}

/// One step of golden section search: two probe comparisons, shrinking the
/// interval by the square of the golden ratio. Ties take the else branch of
/// the strict comparison.
pub fn golden_section_step(f: &Objective1D, a: f64, b: f64, eps: f64) -> Result<GoldenStep, Error> {
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::EmptyInterval { a, b });
    }
    let mut a = a;
    let mut b = b;
    let mut em = b - a;
    let mut t1 = a + em / GOLDEN_RATIO_SQ;
    let mut t2 = a + em / GOLDEN_RATIO;
    if f.eval(t1) < f.eval(t2) {
        b = t2;
        t2 = t1;
        em = b - a;
        t1 = a + em / GOLDEN_RATIO_SQ;
    } else {
        a = t1;
        t1 = t2;
        em = b - a;
        t2 = a + em / GOLDEN_RATIO;
    }
    let (t_best, t_second) = if f.eval(t1) < f.eval(t2) {
        b = t2;
        (t1, t2)
    } else {
        a = t1;
        (t2, t1)
    };
    em = b - a;
    Ok(GoldenStep {
        t_best,
        t_second,
        a,
        b,
        converged: em <= eps,
    })
}

/// Brent's bracketing minimizer (golden section plus safeguarded parabolic
/// steps). Returns `(t, f(t), converged)`; the flag is false when the
/// iteration cap ran out before the bracket shrank below `tol`.
pub fn brent_minimize(
    f: &Objective1D,
    a: f64,
    b: f64,
    tol: f64,
    cap: usize,
) -> Result<(f64, f64, bool), Error> {
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::EmptyInterval { a, b });
    }
    const CGOLD: f64 = 0.381_966_011_250_105_1;
    let (mut lo, mut hi) = (a, b);
    let mut x = lo + CGOLD * (hi - lo);
    let mut w = x;
    let mut v = x;
    let mut fx = f.eval(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..cap {
        let m = 0.5 * (lo + hi);
        let tol1 = tol * x.abs() + 1e-21;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (hi - lo) {
            return Ok((x, fx, true));
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            // parabola through x, v, w
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            let e_prev = e;
            e = d;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (lo - x) && p < q * (hi - x) {
                d = p / q;
                let u = x + d;
                if u - lo < tol2 || hi - u < tol2 {
                    d = tol1.copysign(m - x);
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < m { hi - x } else { lo - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f.eval(u);
        if fu <= fx {
            if u >= x {
                lo = x;
            } else {
                hi = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u >= x {
                hi = u;
            } else {
                lo = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx, false))
}

/// Locate an interval bracketing a local minimum, starting from any user
/// interval. The interval is split into `l_sub` pieces; an interior argmin
/// yields the bracket directly, while an edge argmin triggers golden-ratio
/// expansion of that edge (crossing zero through the -1/a sign rule).
pub fn locate_uncertainty_interval(
    f: &Objective1D,
    a: f64,
    b: f64,
    cfg: &LineSearchConfig,
    expansion: Expansion,
) -> Result<(f64, f64), Error> {
    cfg.validate()?;
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::EmptyInterval { a, b });
    }
    locate_impl(f, a, b, cfg, expansion, false, &mut None)
}

fn locate_impl(
    f: &Objective1D,
    a0: f64,
    b0: f64,
    cfg: &LineSearchConfig,
    expansion: Expansion,
    keep_initial: bool,
    state: &mut Option<&mut SearchState>,
) -> Result<(f64, f64), Error> {
    let l = cfg.l_sub;
    let mut a = a0;
    let mut b = b0;
    for k in 1..=cfg.k_max {
        let step = (b - a) / l as f64;
        let nodes: Vec<f64> = (0..=l).map(|i| a + i as f64 * step).collect();
        let mut j = 0;
        let mut fmin = f.eval(nodes[0]);
        for (i, &t) in nodes.iter().enumerate().skip(1) {
            let v = f.eval(t);
            if v < fmin {
                fmin = v;
                j = i;
            }
        }
        if let Some(st) = state.as_deref_mut() {
            st.k += 1;
            st.a = a;
            st.b = b;
            st.record(cfg.k_max, Branch::Locate, None);
        }
        if j > 0 && j < l {
            // an interior hit on the user's own interval confirms it as a
            // trusted bracket; only relocated intervals are tightened
            if keep_initial && k == 1 {
                return Ok((a0, b0));
            }
            return Ok((nodes[j - 1], nodes[j + 1]));
        }
        if b - a <= cfg.eps {
            // degenerate bracket pinned at an edge; let the caller converge
            return Ok((a, b));
        }
        let rho_k = GOLDEN_RATIO.powi(k as i32);
        if j == 0 {
            match expansion {
                Expansion::RightwardOnly => {
                    b = nodes[1];
                }
                Expansion::Both => {
                    if a > 0.0 {
                        a /= rho_k;
                        if a < 1.0 {
                            a = -1.0 / a;
                        }
                    } else {
                        a *= rho_k;
                    }
                    b = nodes[1];
                }
            }
        } else {
            // j == l
            if b > 0.0 {
                b *= rho_k;
            } else {
                b /= rho_k;
                if b > -1.0 {
                    b = -1.0 / b;
                }
            }
            a = nodes[l - 1];
        }
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::BracketNotFound);
        }
    }
    Err(Error::BracketNotFound)
}

/// Outcome of an inner Newton/secant phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonOutcome {
    /// The state was finalized (stopping criterion met or Brent fallback ran).
    Finished,
    /// The iterate left [-1, 1] or the budget ran out: re-bracket outside.
    Rebracket,
}

struct BestSeen {
    t: Cell<f64>,
    f: Cell<f64>,
}

impl BestSeen {
    fn new() -> Self {
        Self {
            t: Cell::new(f64::NAN),
            f: Cell::new(f64::INFINITY),
        }
    }

    fn consider(&self, t: f64, v: f64) {
        if v < self.f.get() {
            self.f.set(v);
            self.t.set(t);
        }
    }
}

fn map_to_physical(state: &SearchState, x: f64) -> f64 {
    (state.e_minus() * x + state.e_plus()) / 2.0
}

fn translate(t: f64, a: f64, b: f64) -> f64 {
    (2.0 * t - a - b) / (b - a)
}

fn finalize(f: &Objective1D, state: &mut SearchState, t: f64, fv: Option<f64>) {
    state.t_star = t;
    state.f_star = fv.unwrap_or_else(|| f.eval(t));
    state.status = Termination::Converged;
}

fn row_derivative(m_grid: usize, order: usize, x: f64, samples: &[f64]) -> f64 {
    // iterates are clamped: best roots may exceed 1 by the magnitude slack
    let xc = x.clamp(-1.0, 1.0);
    row_diff_matrix(m_grid, order, xc)
        .and_then(|r| r.apply_scalar(samples))
        .unwrap_or(f64::NAN)
}

/// The Newton inner iteration: repeatedly update `x2 = x1 - F'/F''` with the
/// derivative rows rebuilt at each accepted point, against a fixed sample
/// vector on the current interval.
///
/// `samples` are the (possibly rescaled) objective values on the CGL grid of
/// order `cfg.m_grid` mapped onto `[state.a, state.b]`; `d1`/`d2` are the
/// derivative estimates already computed at `state.x1`.
pub fn chebyshev_newton(
    f: &Objective1D,
    state: &mut SearchState,
    samples: &[f64],
    cfg: &LineSearchConfig,
    d1: f64,
    d2: f64,
) -> NewtonOutcome {
    let eps_x = 2.0 * cfg.eps / state.e_minus();
    let mut x1 = state.x1;
    let mut d1 = d1;
    let mut d2 = d2;
    while state.k <= cfg.k_max {
        let x2 = x1 - d1 / d2;
        state.k += 1;
        state.x1 = x1;
        state.x2 = x2;
        state.record(cfg.k_max, Branch::Newton, Some(x2));
        if (x2 - x1).abs() <= eps_x {
            let t = map_to_physical(state, x2);
            finalize(f, state, t, None);
            return NewtonOutcome::Finished;
        }
        if x2.abs() > 1.0 {
            return NewtonOutcome::Rebracket;
        }
        if d1.abs() < cfg.eps_d && d2.abs() < cfg.eps_d {
            let mid = map_to_physical(state, x1);
            let (lo, hi) = if x2 > x1 {
                (mid, state.b)
            } else {
                (state.a, mid)
            };
            state.record(cfg.k_max, Branch::Brent, Some(x1));
            if let Ok((t, fv, _)) = brent_minimize(f, lo, hi, cfg.brent_tol, cfg.brent_cap) {
                finalize(f, state, t, Some(fv));
            } else {
                finalize(f, state, mid, None);
            }
            return NewtonOutcome::Finished;
        }
        d1 = row_derivative(cfg.m_grid, 1, x2, samples);
        d2 = row_derivative(cfg.m_grid, 2, x2, samples);
        x1 = x2;
    }
    NewtonOutcome::Rebracket
}

/// The secant inner iteration for the first-order variant. `x1` is the older
/// point, `x2` the current one; both have first-derivative estimates taken
/// from the same fixed sample vector.
pub(crate) fn secant_inner(
    f: &Objective1D,
    state: &mut SearchState,
    samples: &[f64],
    cfg: &LineSearchConfig,
    x1: f64,
    x2: f64,
) -> NewtonOutcome {
    let eps_x = 2.0 * cfg.eps / state.e_minus();
    let mut x1 = x1;
    let mut x2 = x2;
    let mut d1 = row_derivative(cfg.m_grid, 1, x1, samples);
    let mut d2 = row_derivative(cfg.m_grid, 1, x2, samples);
    while state.k <= cfg.k_max {
        let s1 = (x2 - x1) / (d2 - d1);
        if s1.is_nan() || s1 <= EPS_MACH {
            return NewtonOutcome::Rebracket;
        }
        let s2 = -s1 * d2;
        let x3 = x2 + s2;
        state.k += 1;
        state.x1 = x1;
        state.x2 = x2;
        state.x3 = x3;
        state.record(cfg.k_max, Branch::Secant, Some(x3));
        if (x3 - x2).abs() <= eps_x {
            let t = map_to_physical(state, x3);
            finalize(f, state, t, None);
            return NewtonOutcome::Finished;
        }
        if x3.abs() > 1.0 {
            return NewtonOutcome::Rebracket;
        }
        if s2.abs() < cfg.eps_d && (1.0 / s1).abs() < cfg.eps_d {
            let mid = map_to_physical(state, x2);
            let (lo, hi) = if x3 > x2 {
                (mid, state.b)
            } else {
                (state.a, mid)
            };
            state.record(cfg.k_max, Branch::Brent, Some(x2));
            if let Ok((t, fv, _)) = brent_minimize(f, lo, hi, cfg.brent_tol, cfg.brent_cap) {
                finalize(f, state, t, Some(fv));
            } else {
                finalize(f, state, mid, None);
            }
            return NewtonOutcome::Finished;
        }
        d1 = d2;
        d2 = row_derivative(cfg.m_grid, 1, x3, samples);
        x1 = x2;
        x2 = x3;
    }
    NewtonOutcome::Rebracket
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Order {
    Second,
    First,
}

/// Minimize `f` on the uncertainty interval `[a, b]` using second-order
/// (Newton) inner iterations.
pub fn cpslsm_minimize(
    f: &Objective1D,
    a: f64,
    b: f64,
    cfg: &LineSearchConfig,
) -> Result<SearchState, Error> {
    run(f, a, b, cfg, Order::Second, Expansion::Both)
}

/// Minimize `f` using first-order information only: the Newton step is
/// replaced by a secant scheme on two row-derivative estimates.
pub fn cpslsm_minimize_first_order(
    f: &Objective1D,
    a: f64,
    b: f64,
    cfg: &LineSearchConfig,
) -> Result<SearchState, Error> {
    run(f, a, b, cfg, Order::First, Expansion::Both)
}

fn sample_grid(probe: &Objective1D, grid: &ChebGrid, a: f64, b: f64, f_max: f64) -> Vec<f64> {
    let em = b - a;
    let ep = a + b;
    let mut samples: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&x| probe.eval((em * x + ep) / 2.0))
        .collect();
    let max = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max > f_max {
        for v in &mut samples {
            *v /= max;
        }
    }
    samples
}

pub(crate) fn run(
    f: &Objective1D,
    a0: f64,
    b0: f64,
    cfg: &LineSearchConfig,
    order: Order,
    expansion: Expansion,
) -> Result<SearchState, Error> {
    cfg.validate()?;
    if !a0.is_finite() || !b0.is_finite() || a0 >= b0 {
        return Err(Error::EmptyInterval { a: a0, b: b0 });
    }
    let mut state = SearchState::new(a0, b0);
    let best = BestSeen::new();
    let probe = Objective1D::new(|t| {
        let v = f.eval(t);
        best.consider(t, v);
        v
    });

    let located = locate_impl(&probe, a0, b0, cfg, expansion, true, &mut Some(&mut state));
    match located {
        Ok((a, b)) => {
            state.a = a;
            state.b = b;
        }
        Err(_) => {
            state.status = Termination::BracketFailed;
            state.t_star = best.t.get();
            state.f_star = best.f.get();
            state.evals = f.eval_count();
            return Ok(state);
        }
    }

    let grid4 = cgl_nodes(4)?;
    let gridm = cgl_nodes(cfg.m_grid)?;

    while state.k <= cfg.k_max {
        let em = state.e_minus();
        if em.is_nan() || em <= 0.0 {
            break;
        }
        let quartic = sample_grid(&probe, &grid4, state.a, state.b, cfg.f_max);
        let series = discrete_transform(&quartic)?;
        let dcoef = derivative_coeffs(&series)?;
        let cubic = assemble_cubic(&dcoef)?;
        let [a1, a2, a3, a4] = cubic.coeffs;

        if a1.abs() < cfg.eps_c {
            // linear or quadratic derivative interpolant
            if a2.abs() < cfg.eps_c {
                let xr = -a4 / a3;
                if xr.abs() <= 1.0 {
                    let t = map_to_physical(&state, xr);
                    state.record(cfg.k_max, Branch::LinearRoot, Some(xr));
                    // guard against accepting a maximizer: keep the best of
                    // the root and the interval endpoints
                    let mut cand = (t, probe.eval(t));
                    for e in [state.a, state.b] {
                        let fe = probe.eval(e);
                        if fe < cand.1 {
                            cand = (e, fe);
                        }
                    }
                    finalize(&probe, &mut state, cand.0, Some(cand.1));
                    state.evals = f.eval_count();
                    return Ok(state);
                }
            }
            state.k += 1;
            let g = golden_section_step(&probe, state.a, state.b, cfg.eps)?;
            state.a = g.a;
            state.b = g.b;
            state.record(cfg.k_max, Branch::GoldenStep, None);
            if g.converged {
                finalize(&probe, &mut state, g.t_best, None);
                state.evals = f.eval_count();
                return Ok(state);
            }
            let samples = sample_grid(&probe, &gridm, state.a, state.b, cfg.f_max);
            let finished = match order {
                Order::Second => {
                    let x1 = translate(g.t_best, state.a, state.b).clamp(-1.0, 1.0);
                    state.x1 = x1;
                    let d1 = row_derivative(cfg.m_grid, 1, x1, &samples);
                    let d2 = row_derivative(cfg.m_grid, 2, x1, &samples);
                    d2 > EPS_MACH
                        && chebyshev_newton(&probe, &mut state, &samples, cfg, d1, d2)
                            == NewtonOutcome::Finished
                }
                Order::First => {
                    let x1 = translate(g.t_second, state.a, state.b).clamp(-1.0, 1.0);
                    let x2 = translate(g.t_best, state.a, state.b).clamp(-1.0, 1.0);
                    secant_inner(&probe, &mut state, &samples, cfg, x1, x2)
                        == NewtonOutcome::Finished
                }
            };
            if finished {
                state.evals = f.eval_count();
                return Ok(state);
            }
            continue;
        }

        // cubic derivative interpolant
        let scaled = scale_coeffs(cubic);
        let classification = match viete_roots(scaled, cfg.eps_c) {
            Ok(c) => {
                let class = classify_roots(&c)?;
                Some((c, class))
            }
            Err(_) => None,
        };

        let mut usable_roots: Option<[f64; 3]> = None;
        if let Some((c, RootClassification::AllRealDistinctInUnit)) = &classification {
            let set = c.roots.as_ref().expect("roots were just computed");
            usable_roots = Some([set.roots[0].re, set.roots[1].re, set.roots[2].re]);
        }

        match usable_roots {
            None => {
                // roots unusable: one golden reduction, then the inner iteration
                state.k += 1;
                let g = golden_section_step(&probe, state.a, state.b, cfg.eps)?;
                state.a = g.a;
                state.b = g.b;
                state.record(cfg.k_max, Branch::GoldenStep, None);
                if g.converged {
                    finalize(&probe, &mut state, g.t_best, None);
                    state.evals = f.eval_count();
                    return Ok(state);
                }
                let samples = sample_grid(&probe, &gridm, state.a, state.b, cfg.f_max);
                let finished = match order {
                    Order::Second => {
                        let x1 = translate(g.t_best, state.a, state.b).clamp(-1.0, 1.0);
                        state.x1 = x1;
                        let d1 = row_derivative(cfg.m_grid, 1, x1, &samples);
                        let d2 = row_derivative(cfg.m_grid, 2, x1, &samples);
                        d2 > EPS_MACH
                            && chebyshev_newton(&probe, &mut state, &samples, cfg, d1, d2)
                                == NewtonOutcome::Finished
                    }
                    Order::First => {
                        let x1 = translate(g.t_second, state.a, state.b).clamp(-1.0, 1.0);
                        let x2 = translate(g.t_best, state.a, state.b).clamp(-1.0, 1.0);
                        secant_inner(&probe, &mut state, &samples, cfg, x1, x2)
                            == NewtonOutcome::Finished
                    }
                };
                if finished {
                    state.evals = f.eval_count();
                    return Ok(state);
                }
                // golden step already moved the interval; restart the loop
            }
            Some(roots) => {
                // iterate from the root that minimizes the objective, then
                // shrink the interval past the second-best root
                let mapped: Vec<(f64, f64)> = roots
                    .iter()
                    .map(|&x| {
                        let t = map_to_physical(&state, x.clamp(-1.0, 1.0));
                        (x, probe.eval(t))
                    })
                    .collect();
                let best_idx = argmin_by_value(&mapped);
                let x_best = mapped[best_idx].0;
                state.record(cfg.k_max, Branch::BestRoot, Some(x_best));
                let samples = sample_grid(&probe, &gridm, state.a, state.b, cfg.f_max);
                let finished = match order {
                    Order::Second => {
                        state.x1 = x_best.clamp(-1.0, 1.0);
                        let d1 = row_derivative(cfg.m_grid, 1, state.x1, &samples);
                        let d2 = row_derivative(cfg.m_grid, 2, state.x1, &samples);
                        d2 > EPS_MACH
                            && chebyshev_newton(&probe, &mut state, &samples, cfg, d1, d2)
                                == NewtonOutcome::Finished
                    }
                    Order::First => {
                        // companion point toward the adjacent root, one
                        // golden-squared fraction away
                        let companion = match best_idx {
                            0 => x_best - (x_best - roots[1]) / GOLDEN_RATIO_SQ,
                            1 => x_best - (x_best - roots[2]) / GOLDEN_RATIO_SQ,
                            _ => x_best + (roots[1] - x_best) / GOLDEN_RATIO_SQ,
                        };
                        secant_inner(
                            &probe,
                            &mut state,
                            &samples,
                            cfg,
                            companion.clamp(-1.0, 1.0),
                            x_best.clamp(-1.0, 1.0),
                        ) == NewtonOutcome::Finished
                    }
                };
                if finished {
                    state.evals = f.eval_count();
                    return Ok(state);
                }
                // shrink using the second-best root
                let mut second_idx = usize::MAX;
                let mut second_val = f64::INFINITY;
                for (i, &(_, fv)) in mapped.iter().enumerate() {
                    if i != best_idx && fv < second_val {
                        second_val = fv;
                        second_idx = i;
                    }
                }
                let x_second = mapped[second_idx].0;
                let t_second = map_to_physical(&state, x_second.clamp(-1.0, 1.0));
                if x_best > x_second {
                    state.a = t_second.min(state.b);
                } else {
                    state.b = t_second.max(state.a);
                }
                state.k += 1;
                state.record(cfg.k_max, Branch::IntervalShrink, Some(x_second));
            }
        }
    }

    state.status = Termination::MaxIterations;
    state.t_star = best.t.get();
    state.f_star = best.f.get();
    state.evals = f.eval_count();
    Ok(state)
}

fn argmin_by_value(pairs: &[(f64, f64)]) -> usize {
    let mut idx = 0;
    let mut best = pairs[0].1;
    for (i, &(_, v)) in pairs.iter().enumerate().skip(1) {
        if v < best {
            best = v;
            idx = i;
        }
    }
    idx
}
