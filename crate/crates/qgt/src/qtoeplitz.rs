//! q-Toeplitz matrices generated from first columns, initial minors, and the
//! Newton-type expansion coefficients tied to them by the determinant
//! identity.
//!
//! A semi-infinite matrix is q-Toeplitz when
//! `d[i,j+1] = d[i-1,j] + (q^{1-j} - q^{1-i}) d[i,j]` with `d[i,j] = 0`
//! outside the positive quadrant. The recurrence coefficient vanishes on the
//! diagonal, which is the structural residue of the plain Toeplitz shift
//! `d[i,j+1] = d[i-1,j]` at q = 1.
//!
//! Normalization convention: first columns are Newton coefficients `c_l` of
//! `H(t) = sum_l c_l prod_{i=0}^{l-1}(q^{-i} - t)`, and measure-derived
//! columns satisfy `sum_l c_l q^{-l(l-1)/2} = 1`. The exponent `l(l-1)/2`
//! follows from `s*_l(0; q^{-1}) = (-1)^l q^{-l(l-1)/2}` in one variable,
//! which forces `c_l = E^nu_1(l) q^{l(l-1)/2}`; the test battery asserts this
//! derivation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::{determinant, q_pow, ExactScalar, QParam};
use crate::gt::Signature;
use crate::interp::{grid_point, grid_triangular_solve, partitions_below, InterpParam};
use crate::measures::{h_nu, NuSeq};
use crate::{Error, Result};

/// Newton coefficients `c_l` of `H(t) = sum_l c_l prod_{i=0}^{l-1}(q^{-i}-t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonExpansion {
    coeffs: Vec<ExactScalar>,
}

impl NewtonExpansion {
    pub fn new(coeffs: Vec<ExactScalar>) -> Self {
        NewtonExpansion { coeffs }
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// `c_l`, zero beyond the stored expansion.
    pub fn at(&self, l: usize) -> ExactScalar {
        self.coeffs.get(l).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Evaluate `sum_l c_l prod_{i=0}^{l-1}(q^{-i} - t)` at a point.
    pub fn eval(&self, t: &ExactScalar, q: &QParam) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        let mut basis = ExactScalar::one();
        for (l, c) in self.coeffs.iter().enumerate() {
            acc = acc + c * &basis;
            basis = basis * (q_pow(q, -(l as i64)) - t);
        }
        acc
    }
}

/// Expand a polynomial (coefficients, constant first) in the Newton basis
/// `prod_{i=0}^{l-1}(q^{-i} - t)` by the triangular solve at the nodes
/// `t = q^{-l}`.
pub fn newton_expand_1d(h: &[ExactScalar], q: &QParam) -> Result<NewtonExpansion> {
    let deg = h.len().saturating_sub(1);
    let eval = |t: &ExactScalar| -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in h.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    let mut values = BTreeMap::new();
    for l in 0..=deg as i64 {
        let lam = Signature::new(vec![l]).unwrap();
        let node = q_pow(q, -l);
        values.insert(lam, eval(&node));
    }
    let solved = grid_triangular_solve(&values, 1, InterpParam::QInv, q)?;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for l in 0..=deg as i64 {
        let lam = Signature::new(vec![l]).unwrap();
        // s*_l(t; q^{-1}) = (-1)^l prod_{i<l}(q^{-i} - t)
        let sign = if l % 2 == 0 {
            ExactScalar::one()
        } else {
            ExactScalar::from_integer(-1)
        };
        coeffs.push(sign * &solved[&lam]);
    }
    Ok(NewtonExpansion::new(coeffs))
}

/// A generated rectangle of a semi-infinite q-Toeplitz matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QToeplitz {
    q: ExactScalar,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<ExactScalar>>,
}

impl QToeplitz {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `d[i,j]`, 1-based, zero outside the positive quadrant.
    pub fn get(&self, i: i64, j: i64) -> Result<ExactScalar> {
        if i < 1 || j < 1 {
            return Ok(ExactScalar::zero());
        }
        if i as usize > self.rows || j as usize > self.cols {
            return Err(Error::IndexOutOfRange);
        }
        Ok(self.entries[(i - 1) as usize][(j - 1) as usize].clone())
    }

    pub fn entries(&self) -> &[Vec<ExactScalar>] {
        &self.entries
    }

    /// Re-walk the defining recurrence over every generated cell.
    pub fn recurrence_holds(&self, q: &QParam) -> bool {
        for i in 1..=self.rows as i64 {
            for j in 1..=(self.cols as i64 - 1) {
                let lhs = self.entries[(i - 1) as usize][j as usize].clone();
                let above = if i > 1 {
                    self.entries[(i - 2) as usize][(j - 1) as usize].clone()
                } else {
                    ExactScalar::zero()
                };
                let rhs = above
                    + (q_pow(q, 1 - j) - q_pow(q, 1 - i))
                        * &self.entries[(i - 1) as usize][(j - 1) as usize];
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Generate the rectangle of the unique q-Toeplitz matrix with first column
/// `d[i,1] = c_{i-1}` (zero beyond the expansion).
pub fn from_first_column(
    c: &NewtonExpansion,
    rows: usize,
    cols: usize,
    q: &QParam,
) -> Result<QToeplitz> {
    if rows < cols {
        return Err(Error::Parse(
            "rows must be at least cols for the lower-triangular rectangle".into(),
        ));
    }
    let mut entries = vec![vec![ExactScalar::zero(); cols]; rows];
    for i in 0..rows {
        entries[i][0] = c.at(i);
    }
    for j in 1..cols {
        for i in 0..rows {
            let above = if i > 0 {
                entries[i - 1][j - 1].clone()
            } else {
                ExactScalar::zero()
            };
            let coeff = q_pow(q, -(j as i64 - 1)) - q_pow(q, -(i as i64));
            entries[i][j] = above + coeff * &entries[i][j - 1];
        }
    }
    Ok(QToeplitz {
        q: q.value().clone(),
        rows,
        cols,
        entries,
    })
}

/// Initial minor: the determinant of the selected rows (1-based, strictly
/// increasing) against the first `N` columns.
pub fn initial_minor(m: &QToeplitz, row_indices: &[usize]) -> Result<ExactScalar> {
    let n = row_indices.len();
    if n > m.cols() {
        return Err(Error::IndexOutOfRange);
    }
    if row_indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("row indices must be strictly increasing".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for &i in row_indices {
        if i < 1 || i > m.rows() {
            return Err(Error::IndexOutOfRange);
        }
        rows.push(m.entries()[i - 1][..n].to_vec());
    }
    Ok(determinant(&rows))
}

/// The expansion coefficient `c_lambda` of
/// `H(x_1)...H(x_N) = sum_lambda c_lambda (-1)^{|lambda|}
///  s*_lambda(q^{N-1}x; q^{-1})`, computed by the grid triangular solve.
///
/// Zero whenever `lambda_1` exceeds the degree of `H`.
pub fn c_lambda(h: &[ExactScalar], lam: &Signature, q: &QParam) -> Result<ExactScalar> {
    if !lam.is_nonnegative() {
        return Err(Error::NegativeCoordinate);
    }
    let deg = h.len().saturating_sub(1) as i64;
    if lam.coords().first().copied().unwrap_or(0) > deg {
        return Ok(ExactScalar::zero());
    }
    let n = lam.level();
    let eval = |t: &ExactScalar| -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in h.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    let qinv = InterpParam::QInv.base(q);
    let mut values = BTreeMap::new();
    for mu in partitions_below(lam)? {
        let y = grid_point(&mu, &qinv)?;
        let mut f = ExactScalar::one();
        for yi in &y {
            f = f * eval(&(yi * &q_pow(q, 1 - n as i64)));
        }
        values.insert(mu, f);
    }
    let solved = grid_triangular_solve(&values, n, InterpParam::QInv, q)?;
    let sign = if lam.size() % 2 == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::from_integer(-1)
    };
    Ok(sign * &solved[lam])
}

/// The determinant side of the coefficient identity:
/// `c_lambda = q^{-(N-1)|lambda|} det[d[lambda_{N-i+1} + i, j]]_{i,j = 1..N}`.
///
/// The exponent is negative: expanding `H(x_1)...H(x_N)` through the dual
/// Cauchy identity and the scaling
/// `s*_lambda(q^{N-1}x; q^{-1}) = q^{(N-1)|lambda|} s_lambda(x | a-hat)`
/// puts `q^{(N-1)|lambda|}` on the interpolation side, so the minor side
/// carries its inverse. (For H = 1 - qt, N = 2, lambda = (1,0) the
/// coefficient is `1 - q`, the minor is `q(1-q)`, and the bridge factor is
/// `q^{-1}`.)
pub fn c_lambda_minor(m: &QToeplitz, lam: &Signature, q: &QParam) -> Result<ExactScalar> {
    if !lam.is_nonnegative() {
        return Err(Error::NegativeCoordinate);
    }
    let n = lam.level();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let r = lam.coords()[n - i] + i as i64;
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(m.get(r, j as i64)?);
        }
        rows.push(row);
    }
    Ok(q_pow(q, -(n as i64 - 1) * lam.size()) * determinant(&rows))
}

/// The q-Toeplitz matrix of a boundary parameter: first column from the
/// Newton expansion of `H^nu`.
pub fn d_nu(nu: &NuSeq, rows: usize, cols: usize, q: &QParam) -> Result<QToeplitz> {
    let h = h_nu(nu, q)?;
    let newton = newton_expand_1d(h.coefficients(), q)?;
    from_first_column(&newton, rows, cols, q)
}
