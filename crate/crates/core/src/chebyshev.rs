//! Chebyshev polynomials, Chebyshev-Gauss-Lobatto grids, and discrete
//! Chebyshev transforms on the reference interval [-1, 1].
//!
//! Derivatives of any order are evaluated through the closed monomial form
//! `T_k^(m)(x) = sum_l gamma_{l,k}^(m) c_l^(k) x^(k-2l-m)`, with a separate
//! cosine closed form at x = 0 where the monomial sum is indeterminate. The
//! same dispatch backs both the scalar evaluator and the differentiation
//! operators in [`crate::cpsdm`].

use crate::error::Error;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest degree for which the monomial coefficients `c_l^(k)` are cached.
/// They grow like 2^(k-1), so recomputation is cheap but wasteful; the cache
/// is filled once and only read afterwards.
pub const COEFF_CACHE_CAP: usize = 64;

/// Points closer to zero than this are routed to the x = 0 closed form.
/// Mapped interior points can miss zero by rounding, so exact equality is
/// not a usable test.
pub const ZERO_POINT_TOL: f64 = 1e-14;

/// Chebyshev-Gauss-Lobatto node set of order `n`, stored descending so that
/// `nodes[0] = 1` and `nodes[n] = -1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    n: usize,
    nodes: Vec<f64>,
}

impl ChebGrid {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> f64 {
        self.nodes[k]
    }
}

/// CGL nodes x_k = cos(k pi / n), k = 0..n, in descending order.
///
/// Cosines are computed only for k <= n/2 and mirrored with a sign flip, so
/// `nodes[k] == -nodes[n-k]` holds exactly; for even n the middle node is
/// exactly zero.
pub fn cgl_nodes(n: usize) -> Result<ChebGrid, Error> {
    if n == 0 {
        return Err(Error::DegenerateGrid);
    }
    let mut nodes = vec![0.0; n + 1];
    let half = n / 2;
    for (k, slot) in nodes.iter_mut().take(half + 1).enumerate() {
        *slot = (k as f64 * PI / n as f64).cos();
    }
    if n.is_multiple_of(2) {
        nodes[half] = 0.0;
    }
    for k in half + 1..=n {
        nodes[k] = -nodes[n - k];
    }
    Ok(ChebGrid { n, nodes })
}

/// Endpoint-halving weights: 1/2 at j = 0 and j = n, 1 in the interior.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaWeights {
    n: usize,
    values: Vec<f64>,
}

impl ThetaWeights {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn theta_weights(n: usize) -> ThetaWeights {
    let mut values = vec![1.0; n + 1];
    values[0] = 0.5;
    values[n] = 0.5;
    ThetaWeights { n, values }
}

/// cos(j k pi / n) folded onto the stored nodes by cosine periodicity:
/// cos(pi x) = (-1)^floor(x) cos(pi (x - floor(x))).
///
/// Using the node table instead of re-evaluating the cosine keeps the grid
/// symmetry exact in every downstream sum.
pub(crate) fn cos_folded(grid: &ChebGrid, j: usize, k: usize) -> f64 {
    let n = grid.order();
    let jk = j * k;
    let v = grid.node(jk % n);
    if (jk / n).is_multiple_of(2) {
        v
    } else {
        -v
    }
}

fn check_unit_interval(x: f64) -> Result<(), Error> {
    if x.abs() > 1.0 || x.is_nan() {
        return Err(Error::OutOfDomain { x });
    }
    Ok(())
}

/// T_k(x) by the three-term recurrence.
pub fn cheb_eval(k: usize, x: f64) -> Result<f64, Error> {
    check_unit_interval(x)?;
    if k == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn compute_coeff_c(k: usize) -> Vec<f64> {
    let mut c = vec![0.0; k / 2 + 1];
    c[0] = if k == 0 {
        1.0
    } else {
        f64::exp2(k as f64 - 1.0)
    };
    for l in 1..=k / 2 {
        let num = ((k - 2 * l + 1) * (k - 2 * l + 2)) as f64;
        let den = (4 * l * (k - l)) as f64;
        c[l] = -num / den * c[l - 1];
    }
    c
}

fn coeff_cache() -> &'static [Vec<f64>] {
    static CACHE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    CACHE.get_or_init(|| (0..=COEFF_CACHE_CAP).map(compute_coeff_c).collect())
}

/// Monomial coefficients of T_k: `T_k(x) = sum_l c_l^(k) x^(k-2l)`,
/// `l = 0..floor(k/2)`, computed by the descending recursion and cached for
/// k up to [`COEFF_CACHE_CAP`].
pub fn cheb_coeff_c(k: usize) -> Vec<f64> {
    if k <= COEFF_CACHE_CAP {
        coeff_cache()[k].clone()
    } else {
        compute_coeff_c(k)
    }
}

/// Falling product (k-2l)(k-2l-1)...(k-2l-m+1): the factor produced by
/// differentiating x^(k-2l) m times. Empty for m = 0, zero once m exceeds
/// the exponent.
fn gamma_factor(k: usize, l: usize, m: usize) -> f64 {
    let e = k - 2 * l;
    if m > e {
        return 0.0;
    }
    let mut g = 1.0;
    for i in 0..m {
        g *= (e - i) as f64;
    }
    g
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

fn pochhammer(x: f64, l: usize) -> f64 {
    (0..l).map(|i| x + i as f64).product()
}

/// The beta coefficient of the x = 0 closed form.
#[allow(clippy::manual_div_ceil)] // (m + 1) / 2 is the floor expression from the closed form
fn beta_coeff(k: usize, m: usize) -> f64 {
    if m == 0 {
        return 1.0;
    }
    // delta = 1 when m is odd (the Kronecker test on (m+1)/2 being integer)
    let delta = m % 2;
    let half = (m - 1) / 2;
    let lead = (-4.0f64).powi(half as i32);
    let sign = if (delta + (m + 1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let kf = k as f64;
    // exponent is 2 when m is even, 1 when odd
    let kpow = kf.powi(if m.is_multiple_of(2) { 2 } else { 1 });
    let p1 = pochhammer((2.0 - kf - delta as f64) / 2.0, half);
    let p2 = pochhammer((kf - delta as f64 + 2.0) / 2.0, half);
    lead * sign * kpow * p1 * p2
}

/// T_k^(m)(0) for k > m: beta times the cosine of a half-integer multiple of
/// pi, resolved exactly in integer arithmetic.
fn deriv_at_zero(k: usize, m: usize) -> f64 {
    let delta = m % 2;
    let r = k - delta;
    match r % 4 {
        0 => beta_coeff(k, m),
        2 => -beta_coeff(k, m),
        _ => 0.0,
    }
}

/// T_k^(m)(+-1) = (+-1)^(k+m) prod_(i<m) (k^2 - i^2) / (2i + 1).
///
/// The generic monomial sum cancels catastrophically at the endpoints (terms
/// grow like 2^(k-1) while the result is polynomial in k), so the endpoints
/// get their exact product form, which is what the round-off bounds for the
/// first matrix row assume.
fn deriv_at_endpoint(k: usize, m: usize, negative: bool) -> f64 {
    let kk = (k * k) as f64;
    let mut v = 1.0;
    for i in 0..m {
        v *= (kk - (i * i) as f64) / (2 * i + 1) as f64;
    }
    if negative && (k + m) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The four-case dispatch for T_k^(m), shared by [`cheb_derivative_eval`] and
/// the differentiation-operator builders. `at_zero` selects the x = 0 form;
/// callers decide whether that means an exact grid index or a tolerance test.
pub(crate) fn t_deriv_cases(k: usize, m: usize, x: f64, at_zero: bool) -> f64 {
    if k < m {
        return 0.0;
    }
    if k == m {
        return if k == 0 {
            1.0
        } else {
            f64::exp2(k as f64 - 1.0) * factorial(m)
        };
    }
    if at_zero {
        return deriv_at_zero(k, m);
    }
    if x == 1.0 || x == -1.0 {
        return deriv_at_endpoint(k, m, x < 0.0);
    }
    let c = cheb_coeff_c(k);
    let mut sum = 0.0;
    for (l, &cl) in c.iter().enumerate() {
        let e = k - 2 * l;
        if e < m {
            break;
        }
        sum += gamma_factor(k, l, m) * cl * x.powi((e - m) as i32);
    }
    sum
}

/// m-th derivative of T_k at x, dispatching on the closed-form cases:
/// zero for k < m, `2^(k-1) m!` on the diagonal, the monomial sum away from
/// zero, and the beta-cosine form within [`ZERO_POINT_TOL`] of zero.
pub fn cheb_derivative_eval(k: usize, m: usize, x: f64) -> Result<f64, Error> {
    check_unit_interval(x)?;
    Ok(t_deriv_cases(k, m, x, x.abs() < ZERO_POINT_TOL))
}

/// A finite Chebyshev series `sum_k coeffs[k] T_k` with the physical interval
/// it was sampled from recorded alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
    pub interval: (f64, f64),
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self {
            coeffs,
            interval: (-1.0, 1.0),
        }
    }

    pub fn with_interval(coeffs: Vec<f64>, interval: (f64, f64)) -> Self {
        Self { coeffs, interval }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn transform_deg4(f: &[f64], grid: &ChebGrid) -> Vec<f64> {
    // transform weights: 2 at the ends, 1 in the interior
    const C: [f64; 5] = [2.0, 1.0, 1.0, 1.0, 2.0];
    (0..=4usize)
        .map(|k| {
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            let mut s = 0.5 * (f[0] + sign * f[4]);
            for j in 1..=3 {
                // interior 1/c_j weights are all 1
                s += cos_folded(grid, j, k) * f[j];
            }
            s / (2.0 * C[k])
        })
        .collect()
}

fn transform_general(f: &[f64], grid: &ChebGrid) -> Vec<f64> {
    let n = grid.order();
    let th = theta_weights(n);
    (0..=n)
        .map(|k| {
            let mut a = 0.0;
            for j in 0..=n {
                a += th.value(j) * f[j] * cos_folded(grid, j, k);
            }
            th.value(k) * 2.0 / n as f64 * a
        })
        .collect()
}

/// Interpolating Chebyshev coefficients from samples taken at the CGL nodes
/// in descending node order. The five-point case uses the quarter-period
/// cosine table directly; general orders use the theta-weighted transform.
/// Both agree for N = 4.
pub fn discrete_transform(samples: &[f64]) -> Result<ChebSeries, Error> {
    if samples.len() < 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: samples.len(),
        });
    }
    let n = samples.len() - 1;
    let grid = cgl_nodes(n)?;
    let coeffs = if n == 4 {
        transform_deg4(samples, &grid)
    } else {
        transform_general(samples, &grid)
    };
    Ok(ChebSeries::new(coeffs))
}

/// Chebyshev coefficients of the derivative of a five-coefficient series,
/// by the backward recursion: the top coefficient vanishes, then
/// `c~_k f'_k = f'_(k+2) + 2 (k+1) f_(k+1)` is unwound down to k = 0.
pub fn derivative_coeffs(series: &ChebSeries) -> Result<ChebSeries, Error> {
    if series.coeffs.len() != 5 {
        return Err(Error::LengthMismatch {
            expected: 5,
            got: series.coeffs.len(),
        });
    }
    let f = &series.coeffs;
    let mut d = [0.0f64; 5];
    d[3] = 8.0 * f[4];
    d[2] = 6.0 * f[3] + d[4];
    d[1] = 4.0 * f[2] + d[3];
    d[0] = f[1] + d[2] / 2.0;
    Ok(ChebSeries::with_interval(d.to_vec(), series.interval))
}

/// Evaluate `sum_k coeffs[k] T_k(x)` by Clenshaw recursion.
pub fn series_eval(series: &ChebSeries, x: f64) -> Result<f64, Error> {
    check_unit_interval(x)?;
    let c = &series.coeffs;
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    Ok(c[0] + x * b1 - b2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Monomial-coefficient oracle built straight from the three-term
    // recurrence, independent of the closed forms under test.
    fn cheb_poly(k: usize) -> Vec<f64> {
        let mut prev = vec![1.0];
        if k == 0 {
            return prev;
        }
        let mut cur = vec![0.0, 1.0];
        for _ in 1..k {
            let mut next = vec![0.0; cur.len() + 1];
            for (i, &c) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i] -= c;
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    fn poly_deriv(p: &[f64]) -> Vec<f64> {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as f64 * c)
            .collect()
    }

    fn poly_eval(p: &[f64], x: f64) -> f64 {
        p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    #[test]
    fn cgl_examples() {
        let g = cgl_nodes(4).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(g.nodes()[0], 1.0);
        assert_abs_diff_eq!(g.nodes()[1], r, epsilon = 1e-15);
        assert_eq!(g.nodes()[2], 0.0);
        assert_abs_diff_eq!(g.nodes()[3], -r, epsilon = 1e-15);
        assert_eq!(g.nodes()[4], -1.0);

        let g2 = cgl_nodes(2).unwrap();
        assert_eq!(g2.nodes(), &[1.0, 0.0, -1.0]);

        let g12 = cgl_nodes(12).unwrap();
        assert_eq!(g12.nodes()[6], 0.0);
        for k in 0..=12 {
            assert_eq!(g12.node(k), -g12.node(12 - k), "mirror symmetry at k={k}");
        }
    }

    #[test]
    fn cgl_rejects_zero_order() {
        assert_eq!(cgl_nodes(0), Err(Error::DegenerateGrid));
    }

    #[test]
    fn theta_values() {
        let th = theta_weights(6);
        assert_eq!(th.value(0), 0.5);
        assert_eq!(th.value(6), 0.5);
        for j in 1..6 {
            assert_eq!(th.value(j), 1.0);
        }
    }

    #[test]
    fn cheb_eval_examples() {
        assert_eq!(cheb_eval(0, 0.7).unwrap(), 1.0);
        assert_abs_diff_eq!(cheb_eval(3, 0.5).unwrap(), -1.0, epsilon = 1e-15);
        let want = (7.0 * 0.3f64.acos()).cos();
        assert_abs_diff_eq!(cheb_eval(7, 0.3).unwrap(), want, epsilon = 1e-13);
        assert!(cheb_eval(3, 1.2).is_err());
    }

    #[test]
    fn cheb_eval_matches_trig_identity() {
        for k in 0..=20 {
            for i in 0..40 {
                let x = -0.975 + 0.05 * i as f64;
                let want = (k as f64 * x.acos()).cos();
                assert_abs_diff_eq!(cheb_eval(k, x).unwrap(), want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn coeff_c_examples() {
        assert_eq!(cheb_coeff_c(0), vec![1.0]);
        assert_eq!(cheb_coeff_c(2), vec![2.0, -1.0]);
        assert_eq!(cheb_coeff_c(4), vec![8.0, -8.0, 1.0]);
    }

    #[test]
    fn coeff_c_matches_recurrence_polynomials() {
        for k in 0..=12 {
            let poly = cheb_poly(k);
            let c = cheb_coeff_c(k);
            for (l, &cl) in c.iter().enumerate() {
                assert_abs_diff_eq!(cl, poly[k - 2 * l], epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn derivative_eval_examples() {
        assert_eq!(cheb_derivative_eval(1, 2, 0.4).unwrap(), 0.0);
        assert_eq!(cheb_derivative_eval(2, 2, 0.3).unwrap(), 4.0);
        assert_eq!(cheb_derivative_eval(3, 1, 0.0).unwrap(), -3.0);
        // T_5'' = 320 x^3 - 120 x
        assert_abs_diff_eq!(
            cheb_derivative_eval(5, 2, 0.5).unwrap(),
            -20.0,
            epsilon = 1e-12
        );
        assert!(cheb_derivative_eval(3, 1, -1.5).is_err());
    }

    #[test]
    fn derivative_eval_matches_symbolic_oracle() {
        for k in 0..=10usize {
            for m in 0..=4usize {
                let mut p = cheb_poly(k);
                for _ in 0..m {
                    p = poly_deriv(&p);
                }
                for i in 0..50 {
                    let x = -0.98 + 0.04 * i as f64;
                    if x.abs() < 1e-3 {
                        continue;
                    }
                    let want = poly_eval(&p, x);
                    let got = cheb_derivative_eval(k, m, x).unwrap();
                    assert!(
                        (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                        "k={k} m={m} x={x}: got {got}, want {want}"
                    );
                }
                let want0 = poly_eval(&p, 0.0);
                let got0 = cheb_derivative_eval(k, m, 0.0).unwrap();
                assert!(
                    (got0 - want0).abs() <= 1e-10 * want0.abs().max(1.0),
                    "zero branch k={k} m={m}: got {got0}, want {want0}"
                );
            }
        }
    }

    #[test]
    fn transform_examples() {
        let g = cgl_nodes(4).unwrap();
        let sq: Vec<f64> = g.nodes().iter().map(|&x| x * x).collect();
        let s = discrete_transform(&sq).unwrap();
        let want = [0.5, 0.0, 0.5, 0.0, 0.0];
        for (a, b) in s.coeffs.iter().zip(want) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }

        let ones = vec![1.0; 5];
        let s1 = discrete_transform(&ones).unwrap();
        for (k, &c) in s1.coeffs.iter().enumerate() {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(c, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn transform_exp_matches_direct_summation_oracle() {
        // Direct evaluation of the five-point transform with explicit
        // cosines, no node-table folding.
        let g = cgl_nodes(4).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|&x| x.exp()).collect();
        let c = [2.0, 1.0, 1.0, 1.0, 2.0];
        let oracle: Vec<f64> = (0..=4)
            .map(|k| {
                let mut s = 0.0;
                for j in 0..=4 {
                    s += (k as f64 * j as f64 * PI / 4.0).cos() / c[j] * f[j];
                }
                s / (2.0 * c[k])
            })
            .collect();
        let got = discrete_transform(&f).unwrap();
        for (a, b) in got.coeffs.iter().zip(oracle) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn transform_rejects_length_mismatch() {
        assert!(discrete_transform(&[1.0]).is_err());
    }

    #[test]
    fn general_and_deg4_transforms_agree() {
        let g = cgl_nodes(4).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|&x| (1.3 * x).sin() + 0.2).collect();
        let special = transform_deg4(&f, &g);
        let general = transform_general(&f, &g);
        for (a, b) in special.iter().zip(general) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn derivative_coeffs_examples() {
        let d = derivative_coeffs(&ChebSeries::new(vec![0.5, 0.0, 0.5, 0.0, 0.0])).unwrap();
        assert_eq!(d.coeffs, vec![0.0, 2.0, 0.0, 0.0, 0.0]);

        let d4 = derivative_coeffs(&ChebSeries::new(vec![0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(d4.coeffs, vec![0.0, 8.0, 0.0, 8.0, 0.0]);

        let dc = derivative_coeffs(&ChebSeries::new(vec![3.7, 0.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(dc.coeffs, vec![0.0; 5]);

        assert!(derivative_coeffs(&ChebSeries::new(vec![1.0; 4])).is_err());
    }

    #[test]
    fn series_eval_examples() {
        let sq = ChebSeries::new(vec![0.5, 0.0, 0.5, 0.0, 0.0]);
        assert_abs_diff_eq!(series_eval(&sq, 0.6).unwrap(), 0.36, epsilon = 1e-15);

        let one = ChebSeries::new(vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(series_eval(&one, -0.33).unwrap(), 1.0);

        let d4 = ChebSeries::new(vec![0.0, 8.0, 0.0, 8.0, 0.0]);
        assert_abs_diff_eq!(series_eval(&d4, 0.5).unwrap(), -4.0, epsilon = 1e-14);

        assert!(series_eval(&one, 1.0001).is_err());
    }
}
