//! Exact evaluation of rational Schur functions and their principal
//! specializations, including the q-weighted dimension `Dim_q`.
//!
//! Two evaluation engines are provided: the bialternant determinant (fast,
//! requires pairwise-distinct points) and the branching-rule dynamic program
//! (works at repeated points, memoized per session). [`schur_eval`] dispatches
//! between them. Negative coordinates are handled by shifting the signature
//! to nonnegative and applying the homogeneity identity
//! `s_{A_l(lambda)}(x) = (x_1 ... x_N)^l s_lambda(x)`, so there is a single
//! code path for Laurent exponents.

use std::collections::HashMap;

use crate::exact::{determinant, q_pow, ExactScalar, QParam};
use crate::gt::{enumerate_below, DiagramStats, Signature};
use crate::{Error, Result};

/// Direction of a principal specialization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpecDirection {
    /// `s_lambda(1, q, ..., q^{N-1})`
    Ascending,
    /// `s_lambda(1, q^{-1}, ..., q^{1-N})`
    Descending,
}

fn check_point_len(lam: &Signature, x: &[ExactScalar]) -> Result<()> {
    if lam.level() != x.len() {
        return Err(Error::LevelMismatch {
            expected: lam.level(),
            got: x.len(),
        });
    }
    Ok(())
}

/// Whether any Laurent exponent `lambda_j + N - j` is negative.
fn has_negative_exponent(lam: &Signature) -> bool {
    let n = lam.level() as i64;
    lam.coords()
        .iter()
        .enumerate()
        .any(|(j, &c)| c + n - (j as i64 + 1) < 0)
}

/// Rational Schur function via the bialternant ratio
/// `det[x_i^{lambda_j + N - j}] / prod_{i<j} (x_i - x_j)`.
///
/// Requires pairwise-distinct points, and nonzero points when a negative
/// exponent occurs.
pub fn schur_bialternant(lam: &Signature, x: &[ExactScalar]) -> Result<ExactScalar> {
    check_point_len(lam, x)?;
    let n = lam.level();
    if n == 0 {
        return Ok(ExactScalar::one());
    }
    for i in 0..n {
        for j in i + 1..n {
            if x[i] == x[j] {
                return Err(Error::RepeatedPoint);
            }
        }
    }
    if has_negative_exponent(lam) && x.iter().any(ExactScalar::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let mut rows = Vec::with_capacity(n);
    for xi in x {
        let row: Vec<ExactScalar> = lam
            .coords()
            .iter()
            .enumerate()
            .map(|(j, &c)| xi.pow_i64(c + n as i64 - (j as i64 + 1)))
            .collect();
        rows.push(row);
    }
    let numer = determinant(&rows);
    let mut vand = ExactScalar::one();
    for i in 0..n {
        for j in i + 1..n {
            vand = vand * (&x[i] - &x[j]);
        }
    }
    Ok(numer / vand)
}

/// A memoizing evaluation session for the branching-rule dynamic program.
///
/// The cache is keyed by (sub-signature, prefix length); confine a session to
/// one worker or wrap it in a lock — results are independent of scheduling.
pub struct SchurSession<'a> {
    point: &'a [ExactScalar],
    cache: HashMap<Vec<i64>, ExactScalar>,
}

impl<'a> SchurSession<'a> {
    pub fn new(point: &'a [ExactScalar]) -> Self {
        SchurSession {
            point,
            cache: HashMap::new(),
        }
    }

    /// Evaluate a *nonnegative* signature whose level equals the prefix
    /// length it consumes.
    fn eval_nonneg(&mut self, lam: &Signature) -> ExactScalar {
        debug_assert!(lam.is_nonnegative());
        let n = lam.level();
        if n == 0 {
            return ExactScalar::one();
        }
        if n == 1 {
            return self.point[0].pow_i64(lam.coords()[0]);
        }
        if let Some(v) = self.cache.get(lam.coords()) {
            return v.clone();
        }
        let mut acc = ExactScalar::zero();
        let xn = &self.point[n - 1];
        for mu in enumerate_below(lam).expect("level >= 2") {
            let inner = self.eval_nonneg(&mu);
            acc = acc + inner * xn.pow_i64(lam.size() - mu.size());
        }
        self.cache.insert(lam.coords().to_vec(), acc.clone());
        acc
    }

    /// Full evaluation, shifting negative coordinates away first.
    pub fn eval(&mut self, lam: &Signature) -> Result<ExactScalar> {
        check_point_len(lam, self.point)?;
        let low = lam.coords().last().copied().unwrap_or(0);
        if low >= 0 {
            return Ok(self.eval_nonneg(lam));
        }
        if self.point.iter().any(ExactScalar::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let shifted = lam.shift(-low);
        let value = self.eval_nonneg(&shifted);
        let mut prod = ExactScalar::one();
        for xi in self.point {
            prod = prod * xi;
        }
        Ok(value * prod.pow_i64(low))
    }
}

/// Rational Schur function via the memoized branching recursion
/// `s_lambda(x_1..x_N) = sum_{mu < lambda} s_mu(x_1..x_{N-1}) x_N^{|lambda|-|mu|}`.
///
/// Handles repeated points; needs nonzero points only for negative
/// coordinates.
pub fn schur_branching_dp(lam: &Signature, x: &[ExactScalar]) -> Result<ExactScalar> {
    SchurSession::new(x).eval(lam)
}

/// Evaluate with automatic dispatch: determinant at distinct points, DP
/// otherwise.
pub fn schur_eval(lam: &Signature, x: &[ExactScalar]) -> Result<ExactScalar> {
    match schur_bialternant(lam, x) {
        Err(Error::RepeatedPoint) => schur_branching_dp(lam, x),
        other => other,
    }
}

/// Principal specialization in closed form.
///
/// Ascending: `s_lambda(1, q, ..., q^{N-1})
///   = q^{n(lambda)} prod_{i<j} (1 - q^{lambda_i - lambda_j + j - i}) / (1 - q^{j-i})`.
/// Descending: `s_lambda(1, q^{-1}, ..., q^{1-N})
///   = q^{-(N-1)|lambda|}` times the ascending value.
pub fn principal_spec(lam: &Signature, q: &QParam, direction: SpecDirection) -> ExactScalar {
    let n = lam.level();
    let c = lam.coords();
    let mut ascending = {
        // n(lambda) over all coordinates, including negative ones
        let nl: i64 = c.iter().enumerate().map(|(i, &v)| i as i64 * v).sum();
        q_pow(q, nl)
    };
    for i in 0..n {
        for j in i + 1..n {
            let num = ExactScalar::one() - q_pow(q, c[i] - c[j] + (j as i64 - i as i64));
            let den = ExactScalar::one() - q_pow(q, j as i64 - i as i64);
            ascending = ascending * num / den;
        }
    }
    match direction {
        SpecDirection::Ascending => ascending,
        SpecDirection::Descending => ascending * q_pow(q, -(n as i64 - 1) * lam.size()),
    }
}

/// `Dim_q(lambda)`, the q-weighted number of paths ending at `lambda`;
/// equals the ascending principal specialization.
pub fn dim_q(lam: &Signature, q: &QParam) -> ExactScalar {
    principal_spec(lam, q, SpecDirection::Ascending)
}

/// The stable limit `lim_N s_mu(1, q, ..., q^N)
///   = q^{n(mu)} / prod_{(i,j) in mu} (1 - q^{h(i,j)})`.
pub fn hook_content_limit(mu: &Signature, q: &QParam) -> Result<ExactScalar> {
    if !mu.is_nonnegative() {
        return Err(Error::NegativeCoordinate);
    }
    let d = DiagramStats::new(mu)?;
    let mut acc = q_pow(q, d.n());
    for (i, j) in d.boxes() {
        acc = acc / (ExactScalar::one() - q_pow(q, d.hook(i, j)));
    }
    Ok(acc)
}
