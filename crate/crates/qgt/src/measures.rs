//! Cotransition kernel, q-coherent systems, extreme boundary measures and
//! their generating functions.
//!
//! The boundary parameter is an eventually-constant nondecreasing integer
//! sequence [`NuSeq`]; exactly these give a finite zero set `X(nu)` and a
//! polynomial one-variable generating function `H^nu`, so every projection
//! `E^nu_k` can be computed fully exactly. Boundary parameters with
//! `nu_1 < 0` must be shifted to nonnegative by the caller (the measure
//! transforms equivariantly under the shift automorphism, which is part of
//! the test battery).

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exact::{q_pow, ExactScalar, QParam};
use crate::gt::{
    enumerate_below, interlaces, partitions_in_box, partitions_of_size, DiagramStats, Signature,
};
use crate::interp::{
    grid_point, grid_triangular_solve, interp_at_grid, interp_at_zero, interp_diagonal,
    interp_schur, InterpParam,
};
use crate::schur::{dim_q, principal_spec, schur_eval, SpecDirection};
use crate::{Error, Result};

/// An exact probability mass function on signatures of one level, with an
/// explicit declared tail for truncated measures.
///
/// Invariant: all masses are nonnegative and `sum + tail = 1` exactly.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiniteMeasure {
    level: usize,
    masses: Vec<(Signature, ExactScalar)>,
    tail: ExactScalar,
}

impl FiniteMeasure {
    pub fn new(
        level: usize,
        masses: BTreeMap<Signature, ExactScalar>,
        tail: ExactScalar,
    ) -> Result<Self> {
        let mut total = tail.clone();
        if tail.is_negative() {
            return Err(Error::Parse("negative declared tail".into()));
        }
        for (sig, mass) in &masses {
            if sig.level() != level {
                return Err(Error::LevelMismatch {
                    expected: level,
                    got: sig.level(),
                });
            }
            if mass.is_negative() {
                return Err(Error::NegativeMass(sig.to_string()));
            }
            total += mass.clone();
        }
        if !total.is_one() {
            return Err(Error::Parse(format!(
                "measure mass {total} != 1 (tail {tail})"
            )));
        }
        Ok(FiniteMeasure {
            level,
            masses: masses.into_iter().collect(),
            tail,
        })
    }

    /// The delta measure at a signature.
    pub fn delta(lam: &Signature) -> Self {
        FiniteMeasure {
            level: lam.level(),
            masses: vec![(lam.clone(), ExactScalar::one())],
            tail: ExactScalar::zero(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn tail(&self) -> &ExactScalar {
        &self.tail
    }

    /// Masses in signature order.
    pub fn masses(&self) -> &[(Signature, ExactScalar)] {
        &self.masses
    }

    pub fn mass_of(&self, sig: &Signature) -> ExactScalar {
        self.masses
            .iter()
            .find(|(s, _)| s == sig)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(ExactScalar::zero)
    }

    /// Image under the shift automorphism `A_l`.
    pub fn shift(&self, l: i64) -> Self {
        FiniteMeasure {
            level: self.level,
            masses: self
                .masses
                .iter()
                .map(|(s, m)| (s.shift(l), m.clone()))
                .collect(),
            tail: self.tail.clone(),
        }
    }
}

/// An eventually-constant nondecreasing integer sequence, the boundary
/// parameter: `nu_j = prefix[j-1]` for `j <= J` and `nu_j = tail` beyond.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NuSeq {
    prefix: Vec<i64>,
    tail: i64,
}

impl NuSeq {
    pub fn new(prefix: Vec<i64>, tail: i64) -> Result<Self> {
        if prefix.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse(format!("nu not nondecreasing: {prefix:?}")));
        }
        if prefix.last().is_some_and(|&last| last > tail) {
            return Err(Error::Parse(format!(
                "tail {tail} below the last prefix entry"
            )));
        }
        Ok(NuSeq { prefix, tail })
    }

    /// The constant sequence `nu = (c, c, ...)`.
    pub fn constant(c: i64) -> Self {
        NuSeq {
            prefix: vec![],
            tail: c,
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn tail_value(&self) -> i64 {
        self.tail
    }

    /// `nu_j`, 1-based.
    pub fn at(&self, j: usize) -> i64 {
        self.prefix.get(j - 1).copied().unwrap_or(self.tail)
    }

    pub fn nu1(&self) -> i64 {
        self.at(1)
    }

    /// `(nu_k, ..., nu_1)` as a signature: the minimal point of the support
    /// of the level-k projection.
    pub fn reversed_head(&self, k: usize) -> Signature {
        let vals: Vec<i64> = (1..=k).map(|j| self.at(j)).collect();
        Signature::from_reversed_nondecreasing(&vals)
    }

    /// The shifted parameter `A_l(nu)`.
    pub fn shift(&self, l: i64) -> Self {
        NuSeq {
            prefix: self.prefix.iter().map(|v| v + l).collect(),
            tail: self.tail + l,
        }
    }

    /// Elementwise comparison as infinite sequences.
    pub fn le_elementwise(&self, other: &NuSeq) -> bool {
        let j = self.prefix.len().max(other.prefix.len()) + 1;
        (1..=j).all(|i| self.at(i) <= other.at(i))
    }
}

impl std::fmt::Display for NuSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.prefix {
            write!(f, "{v} ")?;
        }
        write!(f, "; {}", self.tail)
    }
}

/// The finite zero set `X(nu)` and the polynomial
/// `H^nu(t) = prod_{x in X(nu)} (1 - q^x t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HNu {
    x_set: Vec<i64>,
    poly: Vec<ExactScalar>,
}

impl HNu {
    pub fn x_set(&self) -> &[i64] {
        &self.x_set
    }

    /// Coefficients of `H^nu`, constant term first; always starts with 1.
    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn eval(&self, t: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.poly.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

/// Compute `X(nu) = Z_{>=0} \ {nu_j + j - 1}` and the polynomial `H^nu`.
///
/// Requires `nu_1 >= 0`; shift first otherwise.
pub fn h_nu(nu: &NuSeq, q: &QParam) -> Result<HNu> {
    if nu.nu1() < 0 {
        return Err(Error::NegativeNu);
    }
    let j_max = nu.prefix().len() as i64 + 1;
    let limit = nu.tail_value() + j_max; // all hits >= limit are consecutive
    let mut hit = vec![false; limit.max(0) as usize];
    for j in 1..=j_max {
        let v = nu.at(j as usize) + j - 1;
        if v < limit {
            hit[v as usize] = true;
        }
    }
    let x_set: Vec<i64> = (0..limit).filter(|&x| !hit[x as usize]).collect();
    debug_assert_eq!(x_set.len() as i64, nu.tail_value());
    let mut poly = vec![ExactScalar::one()];
    for &x in &x_set {
        let qx = q_pow(q, x);
        let mut next = vec![ExactScalar::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] = &next[i] + c;
            next[i + 1] = &next[i + 1] - &(c * &qx);
        }
        poly = next;
    }
    Ok(HNu { x_set, poly })
}

/// The specialization `Spec_nu` of the algebra of symmetric functions:
/// complete functions read off `H^nu`, power sums from the closed form, and
/// Schur values through the Jacobi-Trudi determinant.
#[derive(Clone, Debug)]
pub struct SpecNu {
    h: HNu,
    nu: NuSeq,
    q: QParam,
}

impl SpecNu {
    /// `Spec_nu(h_k)`.
    pub fn h(&self, k: i64) -> ExactScalar {
        if k < 0 {
            return ExactScalar::zero();
        }
        self.h
            .coefficients()
            .get(k as usize)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// `Spec_nu(p_k) = sum_{i>=1} (q^{k nu_i} - 1) q^{k(i-1)}`, with the
    /// constant part summed as an exact geometric series.
    pub fn p(&self, k: i64) -> ExactScalar {
        assert!(k >= 1, "power sums start at k = 1");
        let q = &self.q;
        let jlen = self.nu.prefix().len() as i64;
        let mut acc = ExactScalar::zero();
        for j in 1..=jlen {
            let nu_j = self.nu.at(j as usize);
            acc = acc + (q_pow(q, k * nu_j) - ExactScalar::one()) * q_pow(q, k * (j - 1));
        }
        let c = self.nu.tail_value();
        let geom = (q_pow(q, k * c) - ExactScalar::one()) * q_pow(q, k * jlen)
            / (ExactScalar::one() - q_pow(q, k));
        acc + geom
    }

    /// `Spec_nu(s_mu)` by Jacobi-Trudi: `det[Spec(h_{mu_i - i + j})]`.
    pub fn s(&self, mu: &Signature) -> Result<ExactScalar> {
        if !mu.is_nonnegative() {
            return Err(Error::NegativeCoordinate);
        }
        let r = mu.level();
        if r == 0 {
            return Ok(ExactScalar::one());
        }
        let rows: Vec<Vec<ExactScalar>> = (1..=r as i64)
            .map(|i| {
                (1..=r as i64)
                    .map(|j| self.h(mu.coords()[(i - 1) as usize] - i + j))
                    .collect()
            })
            .collect();
        Ok(crate::exact::determinant(&rows))
    }

    pub fn h_poly(&self) -> &HNu {
        &self.h
    }
}

/// Build `Spec_nu` for a boundary parameter with `nu_1 >= 0`.
pub fn spec_nu(nu: &NuSeq, q: &QParam) -> Result<SpecNu> {
    let h = h_nu(nu, q)?;
    Ok(SpecNu {
        h,
        nu: nu.clone(),
        q: q.clone(),
    })
}

/// The cotransition probability `P(lambda -> mu) = q^{|mu|}
/// Dim_q(mu)/Dim_q(lambda)` for `mu` interlacing below `lambda`, else 0.
pub fn cotransition(lam: &Signature, mu: &Signature, q: &QParam) -> Result<ExactScalar> {
    if mu.level() + 1 != lam.level() {
        return Err(Error::LevelMismatch {
            expected: lam.level().saturating_sub(1),
            got: mu.level(),
        });
    }
    if !interlaces(mu, lam)? {
        return Ok(ExactScalar::zero());
    }
    Ok(q_pow(q, mu.size()) * dim_q(mu, q) / dim_q(lam, q))
}

/// Push a level-N measure down to level N-1 through the cotransition kernel;
/// the declared tail is carried through unchanged.
pub fn pushdown(m: &FiniteMeasure, q: &QParam) -> Result<FiniteMeasure> {
    if m.level() < 2 {
        return Err(Error::LevelMismatch {
            expected: 2,
            got: m.level(),
        });
    }
    let mut out: BTreeMap<Signature, ExactScalar> = BTreeMap::new();
    for (lam, mass) in m.masses() {
        if mass.is_zero() {
            continue;
        }
        for mu in enumerate_below(lam)? {
            let p = cotransition(lam, &mu, q)?;
            if p.is_zero() {
                continue;
            }
            let entry = out.entry(mu).or_insert_with(ExactScalar::zero);
            *entry += mass * p;
        }
    }
    FiniteMeasure::new(m.level() - 1, out, m.tail().clone())
}

/// The primitive q-coherent system: the level-k member of the unique
/// coherent chain that is a delta measure at `lam` on top.
pub fn primitive_system(lam: &Signature, k: usize, q: &QParam) -> Result<FiniteMeasure> {
    if k < 1 || k > lam.level() {
        return Err(Error::LevelOutOfRange {
            level: k,
            top: lam.level(),
        });
    }
    let mut m = FiniteMeasure::delta(lam);
    while m.level() > k {
        m = pushdown(&m, q)?;
    }
    Ok(m)
}

/// Exact projection `E^nu_k` of the extreme q-central measure.
///
/// Solves the interpolation identity for `H^nu(x_1) ... H^nu(x_k)` on the
/// `q^{-1}`-grid, then enumerates the support box
/// `{mu : mu >= (nu_k, ..., nu_1), mu_1 <= cap}` in (size, lex) order,
/// stopping once the accumulated mass reaches `1 - eps`; the residual is
/// recorded as the declared tail. Every computed mass is checked
/// nonnegative, and masses outside the support box are checked to vanish.
pub fn extreme_projection(
    nu: &NuSeq,
    k: usize,
    eps: &ExactScalar,
    cap: i64,
    q: &QParam,
) -> Result<FiniteMeasure> {
    if nu.nu1() < 0 {
        return Err(Error::NegativeNu);
    }
    if !eps.is_positive() {
        return Err(Error::Parse("eps must be positive".into()));
    }
    if cap < nu.at(k) {
        return Err(Error::CapTooSmall { cap });
    }
    let h = h_nu(nu, q)?;
    let minimal = nu.reversed_head(k);

    // values of the product H(x_1)...H(x_k) at x = q^{1-k} * grid point
    let qinv = InterpParam::QInv.base(q);
    let mut values = BTreeMap::new();
    for lam in partitions_in_box(k, cap) {
        let y = grid_point(&lam, &qinv)?;
        let mut f = ExactScalar::one();
        for yi in &y {
            f = f * h.eval(&(yi * &q_pow(q, 1 - k as i64)));
        }
        values.insert(lam, f);
    }
    let coeffs = grid_triangular_solve(&values, k, InterpParam::QInv, q)?;

    let mut masses: BTreeMap<Signature, ExactScalar> = BTreeMap::new();
    let mut acc = ExactScalar::zero();
    let target = ExactScalar::one() - eps;
    let mut reached = false;
    for mu in partitions_in_box(k, cap) {
        let mass = &coeffs[&mu] * interp_at_zero(&mu, k, q)?;
        if !minimal.le_elementwise(&mu) {
            assert!(
                mass.is_zero(),
                "support violation: mass {mass} below the minimal signature at {mu}"
            );
            continue;
        }
        if mass.is_negative() {
            return Err(Error::NegativeMass(mu.to_string()));
        }
        acc += mass.clone();
        if !mass.is_zero() {
            masses.insert(mu, mass);
        }
        if acc >= target {
            reached = true;
            break;
        }
    }
    if !reached && acc < target {
        return Err(Error::CapTooSmall { cap });
    }
    let measure = FiniteMeasure::new(k, masses, ExactScalar::one() - acc)?;
    assert!(
        measure.mass_of(&minimal).is_positive(),
        "minimal support point has zero mass"
    );
    Ok(measure)
}

/// Generating-function flavor used by [`sgen_eval`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenFlavor {
    /// `sum P(mu) s_mu(x) / s_mu(1, q^{-1}, ..., q^{1-N})`
    QSchur,
    /// `sum P(mu) s*_mu(q^{N-1}x; q^{-1}) / s*_mu(0, ..., 0; q^{-1})`
    QInterp,
}

/// Exact partial sum of a probability generating function over the stored
/// support; the declared tail is reported by the measure, not evaluated.
pub fn sgen_eval(
    m: &FiniteMeasure,
    x: &[ExactScalar],
    flavor: GenFlavor,
    q: &QParam,
) -> Result<ExactScalar> {
    let n = m.level();
    if x.len() != n {
        return Err(Error::LevelMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let mut acc = ExactScalar::zero();
    match flavor {
        GenFlavor::QSchur => {
            for (mu, mass) in m.masses() {
                if mass.is_zero() {
                    continue;
                }
                let num = schur_eval(mu, x)?;
                let den = principal_spec(mu, q, SpecDirection::Descending);
                acc = acc + mass * num / den;
            }
        }
        GenFlavor::QInterp => {
            let scale = q_pow(q, n as i64 - 1);
            let scaled: Vec<ExactScalar> = x.iter().map(|xi| xi * &scale).collect();
            for (mu, mass) in m.masses() {
                if mass.is_zero() {
                    continue;
                }
                let num = interp_schur(mu, &scaled, InterpParam::QInv, q)?;
                let den = interp_at_zero(mu, n, q)?;
                acc = acc + mass * num / den;
            }
        }
    }
    Ok(acc)
}

/// Total-variation distance between `pushdown(m_high)` and `m_low`,
/// counting the declared tails as an extra outcome.
pub fn coherence_check(m_high: &FiniteMeasure, m_low: &FiniteMeasure, q: &QParam) -> Result<ExactScalar> {
    if m_high.level() != m_low.level() + 1 {
        return Err(Error::LevelMismatch {
            expected: m_low.level() + 1,
            got: m_high.level(),
        });
    }
    let pushed = pushdown(m_high, q)?;
    let mut keys: Vec<&Signature> = pushed.masses().iter().map(|(s, _)| s).collect();
    for (s, _) in m_low.masses() {
        if !keys.contains(&s) {
            keys.push(s);
        }
    }
    let mut dist = (pushed.tail() - m_low.tail()).abs();
    for s in keys {
        dist += (pushed.mass_of(s) - m_low.mass_of(s)).abs();
    }
    Ok(dist / ExactScalar::from_integer(2))
}

/// The limit expansion coefficient of `s*_mu` in the boundary decomposition:
/// `(-1)^{|mu|} q^{n(mu) - n(mu')} Spec_nu(s_mu)`.
pub fn limit_coefficient(mu: &Signature, nu: &NuSeq, q: &QParam) -> Result<ExactScalar> {
    if nu.nu1() < 0 {
        return Err(Error::NegativeNu);
    }
    let spec = spec_nu(nu, q)?;
    limit_coefficient_with(mu, &spec, q)
}

/// Same as [`limit_coefficient`] with a precomputed specialization.
pub fn limit_coefficient_with(mu: &Signature, spec: &SpecNu, q: &QParam) -> Result<ExactScalar> {
    let d = DiagramStats::new(mu)?;
    let sign = if mu.size() % 2 == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::from_integer(-1)
    };
    Ok(sign * q_pow(q, d.n() - d.n_transpose()) * spec.s(mu)?)
}

/// The finite-N coefficient whose limit is [`limit_coefficient`]:
/// `q^{(N-1)|mu|} s*_mu(q^{lambda-delta}; q)
///  / (s*_mu(q^{mu-delta}; q) s_mu(1, q, ..., q^{N-1}))`,
/// with `mu` padded by zeros to the level of `lambda`.
pub fn prelimit_coefficient(mu: &Signature, lam: &Signature, q: &QParam) -> Result<ExactScalar> {
    if !mu.is_nonnegative() || !lam.is_nonnegative() {
        return Err(Error::NegativeCoordinate);
    }
    if mu.level() > lam.level() {
        return Err(Error::LevelMismatch {
            expected: lam.level(),
            got: mu.level(),
        });
    }
    let n = lam.level();
    let padded = mu.pad_to(n)?;
    let numer = interp_at_grid(&padded, lam, InterpParam::Q, q)?;
    if numer.is_zero() {
        return Ok(ExactScalar::zero());
    }
    let diag = interp_diagonal(mu, InterpParam::Q, q)?;
    let dim = principal_spec(&padded, q, SpecDirection::Ascending);
    Ok(q_pow(q, (n as i64 - 1) * mu.size()) * numer / diag / dim)
}

/// Truncated double-precision evaluation of the boundary series
/// `Q_k^nu(x) = sum_mu (-1)^{|mu|} q^{n(mu)-n(mu')} Spec_nu(s_mu) s*_mu(x; q)`
/// over `|mu| <= degree_cap`, at complex points.
///
/// Returns the partial sum together with a heuristic tail estimate (the
/// magnitude of the last degree layer); the result is approximate and the
/// estimate is advisory, never a certified bound.
pub fn q_k_nu_truncated(
    nu: &NuSeq,
    k: usize,
    x: &[Complex64],
    degree_cap: i64,
    q: &QParam,
) -> Result<(Complex64, f64)> {
    if nu.nu1() < 0 {
        return Err(Error::NegativeNu);
    }
    if x.len() != k {
        return Err(Error::LevelMismatch {
            expected: k,
            got: x.len(),
        });
    }
    let spec = spec_nu(nu, q)?;
    let qf = q.value().to_f64();
    let mut total = Complex64::new(0.0, 0.0);
    let mut last_layer = 0.0f64;
    for d in 0..=degree_cap {
        let mut layer = Complex64::new(0.0, 0.0);
        for mu in partitions_of_size(d, k) {
            let coeff = limit_coefficient_with(&mu, &spec, q)?;
            if coeff.is_zero() {
                continue;
            }
            layer += coeff.to_f64() * interp_complex(&mu, x, qf);
        }
        total += layer;
        last_layer = layer.norm();
    }
    Ok((total, last_layer))
}

/// Double-precision `s*_mu(x; q)` via the branching recursion.
fn interp_complex(mu: &Signature, x: &[Complex64], qf: f64) -> Complex64 {
    fn a(i: i64, n: usize, qf: f64) -> Complex64 {
        Complex64::new(-qf.powi((i - n as i64) as i32), 0.0)
    }
    fn eval(mu: &Signature, x: &[Complex64], n_full: usize, qf: f64) -> Complex64 {
        let n = mu.level();
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        if n == 1 {
            let mut term = Complex64::new(1.0, 0.0);
            for j in 1..=mu.coords()[0] {
                term *= x[0] + a(j, n_full, qf);
            }
            return term;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for lower in enumerate_below(mu).expect("level >= 2") {
            let inner = eval(&lower, x, n_full, qf);
            let mut strip = Complex64::new(1.0, 0.0);
            for i in 0..n {
                let hi = mu.coords()[i];
                let lo = lower.coords().get(i).copied().unwrap_or(0);
                for j in lo + 1..=hi {
                    strip *= x[n - 1] + a(n as i64 + j - (i as i64 + 1), n_full, qf);
                }
            }
            acc += inner * strip;
        }
        acc
    }
    eval(mu, x, mu.level(), qf)
}
