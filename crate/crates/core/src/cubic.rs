//! Monomial form of the quartic interpolant's derivative, exact cubic root
//! solving by Viete's trigonometric method, root classification, and root
//! condition numbers.

use crate::chebyshev::ChebSeries;
use crate::error::Error;

/// Default cutoff below which the leading coefficients are treated as zero
/// and the linear/quadratic dispatch applies.
pub const DEFAULT_EPS_C: f64 = 1e-15;

/// Roots must be separated by more than this to count as distinct.
pub const ROOT_SEPARATION_TOL: f64 = 1e-10;

/// Magnitude slack on the unit-interval test: roots of endpoint minima land
/// infinitesimally outside [-1, 1] in floating point.
pub const UNIT_MAGNITUDE_SLACK: f64 = 1e-12;

/// How far the Viete arccos argument may fall outside [-1, 1] before the
/// cubic is routed to the complex-capable fallback instead of being clamped.
const ARCCOS_CLAMP: f64 = 1e-12;

/// Guard on the derivative denominator in the condition-number formula.
const MULTIPLE_ROOT_GUARD: f64 = 1e-14;

/// One (possibly complex) cubic root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoot {
    pub re: f64,
    pub im: f64,
}

impl CubicRoot {
    fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    pub fn magnitude(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Root records of the cubic. When all three roots are real they are stored
/// descending, `roots[0] >= roots[1] >= roots[2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSet {
    pub roots: [CubicRoot; 3],
    pub all_real: bool,
}

/// Monomial coefficients A1..A4 of the interpolant derivative
/// `A1 x^3 + A2 x^2 + A3 x + A4`, plus the depressed-cubic parameters and
/// roots once computed.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicDerivative {
    pub coeffs: [f64; 4],
    pub scaled: bool,
    pub depressed: Option<(f64, f64)>,
    pub roots: Option<RootSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClassification {
    /// Three real roots, pairwise distinct, all within the unit interval.
    AllRealDistinctInUnit,
    /// Anything else: complex roots, repeated roots, or a root outside
    /// [-1, 1]. Callers fall back to golden-section bracketing.
    Fallback,
}

/// Collect the derivative series onto monomials:
/// A1 = 4 f'_3, A2 = 2 f'_2, A3 = f'_1 - 3 f'_3, A4 = f'_0 - f'_2.
pub fn assemble_cubic(deriv_coeffs: &ChebSeries) -> Result<CubicDerivative, Error> {
    if deriv_coeffs.coeffs.len() != 5 {
        return Err(Error::LengthMismatch {
            expected: 5,
            got: deriv_coeffs.coeffs.len(),
        });
    }
    let d = &deriv_coeffs.coeffs;
    Ok(CubicDerivative {
        coeffs: [4.0 * d[3], 2.0 * d[2], d[1] - 3.0 * d[3], d[0] - d[2]],
        scaled: false,
        depressed: None,
        roots: None,
    })
}

/// Divide every coefficient by the largest magnitude when that magnitude
/// exceeds one. The root set is unchanged; previously computed roots remain
/// valid and are kept.
pub fn scale_coeffs(mut c: CubicDerivative) -> CubicDerivative {
    let max = c.coeffs.iter().fold(0.0f64, |m, &a| m.max(a.abs()));
    if max > 1.0 {
        for a in &mut c.coeffs {
            *a /= max;
        }
        c.scaled = true;
    }
    c
}

/// Evaluate the cubic at x (Horner).
pub fn cubic_eval(c: &CubicDerivative, x: f64) -> f64 {
    let [a1, a2, a3, a4] = c.coeffs;
    ((a1 * x + a2) * x + a3) * x + a4
}

/// Solve the cubic exactly. Three real roots come from Viete's trigonometric
/// formulas; otherwise a standard depressed-cubic fallback fills in a real
/// root plus a complex pair so callers can still inspect magnitudes.
///
/// Errors with [`Error::NotCubic`] when |A1| < eps_c: the caller must take
/// the linear/quadratic path instead.
pub fn viete_roots(mut c: CubicDerivative, eps_c: f64) -> Result<CubicDerivative, Error> {
    let [a1, a2, a3, a4] = c.coeffs;
    if a1.abs() < eps_c {
        return Err(Error::NotCubic { a1, eps_c });
    }
    let b = a2 / a1;
    let cc = a3 / a1;
    let d = a4 / a1;
    let p = cc - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    let shift = -b / 3.0;
    c.depressed = Some((p, q));

    if p < 0.0 {
        let arg = 3.0 * q / (2.0 * p) * (-3.0 / p).sqrt();
        if arg.is_finite() && arg.abs() <= 1.0 + ARCCOS_CLAMP {
            let s = (-p / 3.0).sqrt();
            let t1 = 2.0 * s * (arg.clamp(-1.0, 1.0).acos() / 3.0).cos();
            let t3 = -2.0 * s * ((-arg).clamp(-1.0, 1.0).acos() / 3.0).cos();
            let t2 = -t1 - t3;
            c.roots = Some(RootSet {
                roots: [
                    CubicRoot::real(t1 + shift),
                    CubicRoot::real(t2 + shift),
                    CubicRoot::real(t3 + shift),
                ],
                all_real: true,
            });
            return Ok(c);
        }
    }

    // Fallback: discriminant decides between one real root plus a complex
    // pair (disc > 0) and the degenerate triple root (p = q = 0).
    let disc = q * q / 4.0 + p * p * p / 27.0;
    if disc > 0.0 {
        let r = disc.sqrt();
        let w = -q / 2.0;
        // pick the cube root with no cancellation
        let u = (w + r.copysign(if w == 0.0 { 1.0 } else { w })).cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        let real = u + v;
        let im = 3.0f64.sqrt() / 2.0 * (u - v).abs();
        c.roots = Some(RootSet {
            roots: [
                CubicRoot::real(real + shift),
                CubicRoot {
                    re: -real / 2.0 + shift,
                    im,
                },
                CubicRoot {
                    re: -real / 2.0 + shift,
                    im: -im,
                },
            ],
            all_real: false,
        });
    } else {
        // p >= 0 with disc <= 0 forces p = q = 0: a triple root.
        c.roots = Some(RootSet {
            roots: [CubicRoot::real(shift); 3],
            all_real: true,
        });
    }
    Ok(c)
}

/// Classify the computed roots for the line-search dispatch.
pub fn classify_roots(c: &CubicDerivative) -> Result<RootClassification, Error> {
    let set = c.roots.as_ref().ok_or(Error::RootsMissing)?;
    if !set.all_real {
        return Ok(RootClassification::Fallback);
    }
    let r: Vec<f64> = set.roots.iter().map(|r| r.re).collect();
    let distinct = (r[0] - r[1]).abs() > ROOT_SEPARATION_TOL
        && (r[1] - r[2]).abs() > ROOT_SEPARATION_TOL
        && (r[0] - r[2]).abs() > ROOT_SEPARATION_TOL;
    let in_unit = r.iter().all(|x| x.abs() <= 1.0 + UNIT_MAGNITUDE_SLACK);
    if distinct && in_unit {
        Ok(RootClassification::AllRealDistinctInUnit)
    } else {
        Ok(RootClassification::Fallback)
    }
}

/// First derivative of the cubic at x; vanishes exactly at multiple roots.
fn cubic_slope(c: &CubicDerivative, x: f64) -> f64 {
    let [a1, a2, a3, _] = c.coeffs;
    (3.0 * a1 * x + 2.0 * a2) * x + a3
}

/// Relative condition number of real simple root `root_index` (0-based) with
/// respect to coefficient `coeff_index` (0-based over A1..A4):
/// `kappa = |A_j x^(3-j)| / |3 A1 x^2 + 2 A2 x + A3|` with j 1-based.
///
/// This is the first-order sensitivity: a relative perturbation delta of A_j
/// moves the root by about `kappa * |x| * delta`. It blows up exactly when
/// the root stops being simple.
pub fn condition_number(
    c: &CubicDerivative,
    root_index: usize,
    coeff_index: usize,
) -> Result<f64, Error> {
    let set = c.roots.as_ref().ok_or(Error::RootsMissing)?;
    if root_index > 2 || coeff_index > 3 {
        return Err(Error::IndexOutOfRange);
    }
    let root = set.roots[root_index];
    if !root.is_real() {
        return Err(Error::NearMultipleRoot);
    }
    let x = root.re;
    let denom = cubic_slope(c, x);
    if denom.abs() < MULTIPLE_ROOT_GUARD {
        return Err(Error::NearMultipleRoot);
    }
    let aj = c.coeffs[coeff_index];
    let exponent = 2 - coeff_index as i32;
    Ok((aj * x.powi(exponent) / denom).abs())
}

/// Upper bound on every condition number of a given root, valid once the
/// coefficients are scaled to unit magnitude and the root lies in the unit
/// interval: `1 / |3 A1 x^2 + 2 A2 x + A3|`.
pub fn condition_number_bound(c: &CubicDerivative, root_index: usize) -> Result<f64, Error> {
    let set = c.roots.as_ref().ok_or(Error::RootsMissing)?;
    if root_index > 2 {
        return Err(Error::IndexOutOfRange);
    }
    let root = set.roots[root_index];
    if !root.is_real() {
        return Err(Error::NearMultipleRoot);
    }
    let denom = cubic_slope(c, root.re);
    if denom.abs() < MULTIPLE_ROOT_GUARD {
        return Err(Error::NearMultipleRoot);
    }
    Ok(1.0 / denom.abs())
}
