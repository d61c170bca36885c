//! Chebyshev pseudospectral differentiation operators.
//!
//! Entries follow the folded-cosine form: the factor cos(jk pi/n) is read
//! from the stored node table through the periodicity of the cosine rather
//! than re-evaluated, and the inner factor is the closed-form Chebyshev
//! derivative from [`crate::chebyshev`]. Diagonal entries (last entry for a
//! row operator) are always the negated sum of the others, which makes every
//! operator annihilate constants exactly.

use crate::chebyshev::{
    cgl_nodes, cos_folded, t_deriv_cases, theta_weights, ChebGrid, ThetaWeights, ZERO_POINT_TOL,
};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorKind {
    /// (n+1) x (n+1) matrix mapping node samples to node derivatives.
    Full,
    /// 1 x (n+1) row giving the derivative at one evaluation point.
    Row { eval_point: f64 },
}

/// An m-th order differentiation operator over a CGL grid of order n.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOperator {
    order: usize,
    grid_order: usize,
    kind: OperatorKind,
    entries: Vec<f64>,
}

impl DiffOperator {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn grid_order(&self) -> usize {
        self.grid_order
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.grid_order + 1;
        &self.entries[i * w..(i + 1) * w]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * (self.grid_order + 1) + j]
    }

    /// Matrix-vector (or row-vector) product against node samples.
    pub fn apply(&self, samples: &[f64]) -> Result<Vec<f64>, Error> {
        let w = self.grid_order + 1;
        if samples.len() != w {
            return Err(Error::LengthMismatch {
                expected: w,
                got: samples.len(),
            });
        }
        let rows = self.entries.len() / w;
        Ok((0..rows).map(|i| dot(self.row(i), samples)).collect())
    }

    /// Row-vector product returning the single derivative value.
    pub fn apply_scalar(&self, samples: &[f64]) -> Result<f64, Error> {
        match self.kind {
            OperatorKind::Row { .. } => {
                if samples.len() != self.grid_order + 1 {
                    return Err(Error::LengthMismatch {
                        expected: self.grid_order + 1,
                        got: samples.len(),
                    });
                }
                Ok(dot(&self.entries, samples))
            }
            OperatorKind::Full => Err(Error::NotARowOperator),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Direct (pre negative-sum) entries of one operator row: the derivative of
/// the interpolant at `x_eval` as a linear functional of the node samples.
fn direct_entries(
    grid: &ChebGrid,
    th: &ThetaWeights,
    m: usize,
    x_eval: f64,
    at_zero: bool,
) -> Vec<f64> {
    let n = grid.order();
    let inner: Vec<f64> = (m..=n)
        .map(|k| t_deriv_cases(k, m, x_eval, at_zero))
        .collect();
    (0..=n)
        .map(|j| {
            let mut s = 0.0;
            for k in m..=n {
                s += th.value(k) * cos_folded(grid, j, k) * inner[k - m];
            }
            2.0 * th.value(j) / n as f64 * s
        })
        .collect()
}

/// Full (n+1) x (n+1) m-th order differentiation matrix with the negated-sum
/// diagonal. The x = 0 inner form is selected by the grid index i = n/2 (even
/// n only); odd grids have no node at zero.
pub fn full_diff_matrix(n: usize, m: usize) -> Result<DiffOperator, Error> {
    if m == 0 || m > n {
        return Err(Error::InvalidDerivativeOrder { m, n });
    }
    let grid = cgl_nodes(n)?;
    let th = theta_weights(n);
    let w = n + 1;
    let mut entries = vec![0.0; w * w];
    for i in 0..=n {
        let at_zero = n.is_multiple_of(2) && i == n / 2;
        let direct = direct_entries(&grid, &th, m, grid.node(i), at_zero);
        let mut sum = 0.0;
        for (j, &d) in direct.iter().enumerate() {
            if j != i {
                entries[i * w + j] = d;
                sum += d;
            }
        }
        entries[i * w + i] = -sum;
    }
    Ok(DiffOperator {
        order: m,
        grid_order: n,
        kind: OperatorKind::Full,
        entries,
    })
}

/// Single-row first- or second-order operator evaluating the derivative at an
/// arbitrary `x_tilde` in [-1, 1] from samples at the CGL nodes of order
/// `m_grid`. The last entry carries the negated sum of the others.
///
/// Points outside [-1, 1] are rejected: a row built there would differentiate
/// an extrapolated interpolant and return garbage.
pub fn row_diff_matrix(m_grid: usize, order: usize, x_tilde: f64) -> Result<DiffOperator, Error> {
    if !(order == 1 || order == 2) || m_grid < order {
        return Err(Error::InvalidDerivativeOrder {
            m: order,
            n: m_grid,
        });
    }
    if x_tilde.abs() > 1.0 || x_tilde.is_nan() {
        return Err(Error::OutOfDomain { x: x_tilde });
    }
    let grid = cgl_nodes(m_grid)?;
    let th = theta_weights(m_grid);
    let at_zero = x_tilde.abs() < ZERO_POINT_TOL;
    let mut entries = direct_entries(&grid, &th, order, x_tilde, at_zero);
    let sum: f64 = entries[..m_grid].iter().sum();
    entries[m_grid] = -sum;
    Ok(DiffOperator {
        order,
        grid_order: m_grid,
        kind: OperatorKind::Row {
            eval_point: x_tilde,
        },
        entries,
    })
}
