//! Factorial Schur and q-interpolation Schur polynomials, the interpolation
//! grid, binomial (Okounkov) expansions, and the triangular Newton-type
//! interpolation solve.
//!
//! Conventions, fixed once for the whole crate:
//!
//! - `(x | a)^r = (x + a_1)(x + a_2) ... (x + a_r)`;
//! - the q-interpolation polynomial `s*_mu(x_1..x_N; p)` is the factorial
//!   Schur polynomial with `a_i = -p^{i-N}`, where the parameter `p` is
//!   either `q` or `q^{-1}`;
//! - the grid point of a nonnegative signature is
//!   `p^{lambda - delta} = (p^{lambda_1}, p^{lambda_2 - 1}, ..., p^{lambda_N - N + 1})`,
//!   always produced by [`grid_point`] to prevent off-by-one drift.
//!
//! The tableau-sum evaluator is the reference; the determinant evaluator is
//! the fast path, used when the points are pairwise distinct (grid points
//! always are).

use std::collections::{BTreeMap, HashMap};

use crate::exact::{determinant, q_pow, ExactScalar, QParam};
use crate::gt::{enumerate_below, DiagramStats, Signature};
use crate::schur::{principal_spec, SpecDirection};
use crate::{Error, Result};

/// Which evaluation parameter an interpolation polynomial uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InterpParam {
    /// parameter `q`
    Q,
    /// parameter `q^{-1}`
    QInv,
}

impl InterpParam {
    /// The parameter as a scalar.
    pub fn base(self, q: &QParam) -> ExactScalar {
        match self {
            InterpParam::Q => q.value().clone(),
            InterpParam::QInv => q.inverse(),
        }
    }
}

/// A signed-index family `{a_i}` feeding factorial Schur polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorialSequence {
    /// `a_i = 0`: ordinary Schur polynomials.
    Zero,
    /// `a_i = -base^{i - offset}`; covers both interpolation presets.
    Geometric { base: ExactScalar, offset: i64 },
    /// Explicit values `vals[i - start]`; panics outside the stored range.
    Table { vals: Vec<ExactScalar>, start: i64 },
}

impl FactorialSequence {
    /// The interpolation preset `a_i = -p^{i-N}` for `s*(.; p)` in N
    /// variables.
    pub fn interpolation(base: &ExactScalar, n_vars: usize) -> Self {
        FactorialSequence::Geometric {
            base: base.clone(),
            offset: n_vars as i64,
        }
    }

    /// The preset `a_j = -q^{1-j}` used by q-Toeplitz matrices.
    pub fn hat(q: &QParam) -> Self {
        FactorialSequence::Geometric {
            base: q.inverse(),
            offset: 1,
        }
    }

    pub fn at(&self, i: i64) -> ExactScalar {
        match self {
            FactorialSequence::Zero => ExactScalar::zero(),
            FactorialSequence::Geometric { base, offset } => -base.pow_i64(i - offset),
            FactorialSequence::Table { vals, start } => {
                let idx = i - start;
                assert!(
                    idx >= 0 && (idx as usize) < vals.len(),
                    "factorial sequence index {i} outside stored range"
                );
                vals[idx as usize].clone()
            }
        }
    }

    /// The shifted sequence `tau^j a` with `(tau^j a)_i = a_{i+j}`.
    pub fn shifted(&self, j: i64) -> Self {
        match self {
            FactorialSequence::Zero => FactorialSequence::Zero,
            FactorialSequence::Geometric { base, offset } => FactorialSequence::Geometric {
                base: base.clone(),
                offset: offset - j,
            },
            FactorialSequence::Table { vals, start } => FactorialSequence::Table {
                vals: vals.clone(),
                start: start - j,
            },
        }
    }
}

/// The grid point `p^{lambda - delta}` of a nonnegative signature.
pub fn grid_point(lam: &Signature, base: &ExactScalar) -> Result<Vec<ExactScalar>> {
    if !lam.is_nonnegative() {
        return Err(Error::NegativeCoordinate);
    }
    Ok(lam
        .coords()
        .iter()
        .enumerate()
        .map(|(i, &c)| base.pow_i64(c - i as i64))
        .collect())
}

fn require_partition(lam: &Signature) -> Result<()> {
    if !lam.is_nonnegative() {
        return Err(Error::NegativeCoordinate);
    }
    Ok(())
}

fn require_len(lam: &Signature, x: &[ExactScalar]) -> Result<()> {
    if lam.level() != x.len() {
        return Err(Error::LevelMismatch {
            expected: lam.level(),
            got: x.len(),
        });
    }
    Ok(())
}

/// Factorial Schur polynomial by literal semistandard-tableau enumeration:
/// `s_lambda(x | a) = sum_T prod_{(i,j)} (x_{T(i,j)} + a_{T(i,j)+j-i})`.
///
/// Exponential in the shape; reference oracle for small inputs.
pub fn factorial_schur_tableaux(
    lam: &Signature,
    x: &[ExactScalar],
    a: &FactorialSequence,
) -> Result<ExactScalar> {
    require_partition(lam)?;
    require_len(lam, x)?;
    let rows: Vec<i64> = lam.rows();
    let n = x.len();
    if rows.is_empty() {
        return Ok(ExactScalar::one());
    }
    if rows.len() > n {
        return Ok(ExactScalar::zero());
    }
    let mut entries: Vec<Vec<usize>> = rows.iter().map(|&r| vec![0; r as usize]).collect();
    let boxes: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| (0..r as usize).map(move |j| (i, j)))
        .collect();
    fn rec(
        boxes: &[(usize, usize)],
        idx: usize,
        entries: &mut Vec<Vec<usize>>,
        x: &[ExactScalar],
        a: &FactorialSequence,
        acc: &mut ExactScalar,
    ) {
        if idx == boxes.len() {
            let mut term = ExactScalar::one();
            for (i, row) in entries.iter().enumerate() {
                for (j, &t) in row.iter().enumerate() {
                    let ai = a.at(t as i64 + j as i64 - i as i64);
                    term = term * (&x[t - 1] + &ai);
                }
            }
            *acc += term;
            return;
        }
        let (i, j) = boxes[idx];
        let lo = {
            let left = if j > 0 { entries[i][j - 1] } else { 1 };
            let up = if i > 0 { entries[i - 1][j] + 1 } else { 1 };
            left.max(up).max(i + 1)
        };
        for t in lo..=x.len() {
            entries[i][j] = t;
            rec(boxes, idx + 1, entries, x, a, acc);
        }
        entries[i][j] = 0;
    }
    let mut acc = ExactScalar::zero();
    rec(&boxes, 0, &mut entries, x, a, &mut acc);
    Ok(acc)
}

/// Factorial Schur polynomial by the memoized branching recursion; the
/// tableau sum organized level by level. Works at repeated points.
pub fn factorial_schur_dp(
    lam: &Signature,
    x: &[ExactScalar],
    a: &FactorialSequence,
) -> Result<ExactScalar> {
    require_partition(lam)?;
    require_len(lam, x)?;
    let mut cache: HashMap<Vec<i64>, ExactScalar> = HashMap::new();
    fn eval(
        lam: &Signature,
        x: &[ExactScalar],
        a: &FactorialSequence,
        cache: &mut HashMap<Vec<i64>, ExactScalar>,
    ) -> ExactScalar {
        let n = lam.level();
        if n == 0 {
            return ExactScalar::one();
        }
        if let Some(v) = cache.get(lam.coords()) {
            return v.clone();
        }
        let value = if n == 1 {
            let mut term = ExactScalar::one();
            for j in 1..=lam.coords()[0] {
                term = term * (&x[0] + a.at(j));
            }
            term
        } else {
            let mut acc = ExactScalar::zero();
            for mu in enumerate_below(lam).expect("level >= 2") {
                let inner = eval(&mu, x, a, cache);
                // skew factor over the horizontal strip lam / mu
                let mut strip = ExactScalar::one();
                for i in 0..n {
                    let hi = lam.coords()[i];
                    let lo = mu.coords().get(i).copied().unwrap_or(0);
                    for j in lo + 1..=hi {
                        strip = strip * (&x[n - 1] + a.at(n as i64 + j - (i as i64 + 1)));
                    }
                }
                acc = acc + inner * strip;
            }
            acc
        };
        cache.insert(lam.coords().to_vec(), value.clone());
        value
    }
    Ok(eval(lam, x, a, &mut cache))
}

/// Factorial Schur polynomial by the determinant formula
/// `det[(x_i | a)^{lambda_j + N - j}] / prod_{i<j}(x_i - x_j)`.
///
/// Requires pairwise-distinct points.
pub fn factorial_schur_det(
    lam: &Signature,
    x: &[ExactScalar],
    a: &FactorialSequence,
) -> Result<ExactScalar> {
    require_partition(lam)?;
    require_len(lam, x)?;
    let n = x.len();
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
    let mut rows = Vec::with_capacity(n);
    for xi in x {
        let mut row = Vec::with_capacity(n);
        for (j, &c) in lam.coords().iter().enumerate() {
            let r = c + n as i64 - (j as i64 + 1);
            let mut v = ExactScalar::one();
            for t in 1..=r {
                v = v * (xi + &a.at(t));
            }
            row.push(v);
        }
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

/// Factorial Schur polynomial with automatic dispatch between the
/// determinant fast path and the branching reference path.
pub fn factorial_schur(
    lam: &Signature,
    x: &[ExactScalar],
    a: &FactorialSequence,
) -> Result<ExactScalar> {
    match factorial_schur_det(lam, x, a) {
        Err(Error::RepeatedPoint) => factorial_schur_dp(lam, x, a),
        other => other,
    }
}

/// The q-interpolation Schur polynomial `s*_mu(x_1..x_N; p)` with `p` either
/// `q` or `q^{-1}`; the factorial Schur polynomial at `a_i = -p^{i-N}`.
pub fn interp_schur(
    mu: &Signature,
    x: &[ExactScalar],
    param: InterpParam,
    q: &QParam,
) -> Result<ExactScalar> {
    let a = FactorialSequence::interpolation(&param.base(q), x.len());
    factorial_schur(mu, x, &a)
}

/// `s*_mu` evaluated at the grid point of `lam` (same level, both
/// nonnegative). Zero whenever `mu` is not contained in `lam`.
pub fn interp_at_grid(
    mu: &Signature,
    lam: &Signature,
    param: InterpParam,
    q: &QParam,
) -> Result<ExactScalar> {
    if mu.level() != lam.level() {
        return Err(Error::LevelMismatch {
            expected: mu.level(),
            got: lam.level(),
        });
    }
    let base = param.base(q);
    let x = grid_point(lam, &base)?;
    interp_schur(mu, &x, param, q)
}

/// Closed form of the nonzero diagonal grid value:
/// `s*_mu(p^{mu - delta}; p) = p^{n(mu') - 2 n(mu)} prod (p^{h(i,j)} - 1)`.
pub fn interp_diagonal(mu: &Signature, param: InterpParam, q: &QParam) -> Result<ExactScalar> {
    let d = DiagramStats::new(mu)?;
    let base = param.base(q);
    let mut acc = base.pow_i64(d.n_transpose() - 2 * d.n());
    for (i, j) in d.boxes() {
        acc = acc * (base.pow_i64(d.hook(i, j)) - ExactScalar::one());
    }
    Ok(acc)
}

/// Closed form of `s*_mu(0, ..., 0; q^{-1})` in N variables:
/// `s_mu(1, q, ..., q^{N-1}) prod_{(i,j) in mu} (-q^{i-j})`.
///
/// This is the normalization constant of the q-interpolation Schur
/// generating function.
pub fn interp_at_zero(mu: &Signature, n: usize, q: &QParam) -> Result<ExactScalar> {
    require_partition(mu)?;
    let padded = mu.pad_to(n.max(mu.level()))?;
    let d = DiagramStats::new(mu)?;
    let mut acc = principal_spec(&padded, q, SpecDirection::Ascending);
    for (i, j) in d.boxes() {
        acc = acc * -q_pow(q, i - j);
    }
    Ok(acc)
}

/// Closed form of `s*_mu(0, ..., 0; q)` in N variables:
/// `s_mu(1, q^{-1}, ..., q^{1-N}) prod_{(i,j) in mu} (-q^{j-i})`.
pub fn interp_at_zero_q(mu: &Signature, n: usize, q: &QParam) -> Result<ExactScalar> {
    require_partition(mu)?;
    let padded = mu.pad_to(n.max(mu.level()))?;
    let d = DiagramStats::new(mu)?;
    let mut acc = principal_spec(&padded, q, SpecDirection::Descending);
    for (i, j) in d.boxes() {
        acc = acc * -q_pow(q, j - i);
    }
    Ok(acc)
}

/// All nonnegative signatures contained in `lam` (same level), by (size, lex).
pub fn partitions_below(lam: &Signature) -> Result<Vec<Signature>> {
    require_partition(lam)?;
    let k = lam.level();
    let mut out = Vec::new();
    let mut cur = vec![0i64; k];
    fn rec(bound: &[i64], cur: &mut Vec<i64>, i: usize, out: &mut Vec<Signature>) {
        if i == cur.len() {
            out.push(Signature::new(cur.clone()).unwrap());
            return;
        }
        let hi = if i == 0 {
            bound[0]
        } else {
            bound[i].min(cur[i - 1])
        };
        for v in 0..=hi {
            cur[i] = v;
            rec(bound, cur, i + 1, out);
        }
    }
    rec(lam.coords(), &mut cur, 0, &mut out);
    out.sort_by_key(|s| (s.size(), s.coords().to_vec()));
    Ok(out)
}

/// Okounkov's binomial expansion of an ordinary Schur polynomial in the
/// `s*(.; q)` basis:
///
/// `s_lambda(x) = sum_{mu <= lambda} c_mu s*_mu(x; q)` with
/// `c_mu = [s*_mu(q^{lambda-delta};q) / s*_mu(q^{mu-delta};q)]
///         [s_lambda(1,q^{-1},..,q^{1-k}) / s_mu(1,q^{-1},..,q^{1-k})]`.
pub fn binomial_expand(lam: &Signature, q: &QParam) -> Result<BTreeMap<Signature, ExactScalar>> {
    require_partition(lam)?;
    let k = lam.level();
    let lam_desc = principal_spec(lam, q, SpecDirection::Descending);
    let mut out = BTreeMap::new();
    for mu in partitions_below(lam)? {
        let numer = interp_at_grid(&mu, lam, InterpParam::Q, q)?;
        if numer.is_zero() {
            continue;
        }
        let diag = interp_diagonal(&mu, InterpParam::Q, q)?;
        let mu_desc = principal_spec(&mu.pad_to(k)?, q, SpecDirection::Descending);
        let c = numer / diag * &lam_desc / mu_desc;
        out.insert(mu, c);
    }
    Ok(out)
}

/// The companion expansion in the other direction:
///
/// `s*_lambda(q^{k-1} x; q^{-1}) = sum_{mu <= lambda} K_mu s_mu(x)` with
/// `K_mu = [s*_mu(q^{lambda-delta};q) / s*_mu(q^{mu-delta};q)]
///         [s*_lambda(0;q^{-1}) / s*_mu(0;q^{-1})] q^{(k-1)|mu|}`.
pub fn binomial_expand_inverse(
    lam: &Signature,
    q: &QParam,
) -> Result<BTreeMap<Signature, ExactScalar>> {
    require_partition(lam)?;
    let k = lam.level();
    let lam_zero = interp_at_zero(lam, k, q)?;
    let mut out = BTreeMap::new();
    for mu in partitions_below(lam)? {
        let numer = interp_at_grid(&mu, lam, InterpParam::Q, q)?;
        if numer.is_zero() {
            continue;
        }
        let diag = interp_diagonal(&mu, InterpParam::Q, q)?;
        let mu_zero = interp_at_zero(&mu, k, q)?;
        let kmu = numer / diag * &lam_zero / mu_zero * q_pow(q, (k as i64 - 1) * mu.size());
        out.insert(mu, kmu);
    }
    Ok(out)
}

/// Triangular interpolation solve: given values `F(p^{lambda-delta})` on a
/// downward-closed set of grid points, recover the unique coefficients of
/// `F = sum a_mu s*_mu(.; p)` by forward substitution in (size, lex) order.
///
/// The diagonal entries never vanish, so the solve cannot break; a missing
/// grid value inside the downward closure is reported as
/// [`Error::MissingGridValue`].
pub fn grid_triangular_solve(
    values: &BTreeMap<Signature, ExactScalar>,
    k: usize,
    param: InterpParam,
    q: &QParam,
) -> Result<BTreeMap<Signature, ExactScalar>> {
    let base = param.base(q);
    let mut support: Vec<Signature> = Vec::with_capacity(values.len());
    for lam in values.keys() {
        if lam.level() != k {
            return Err(Error::LevelMismatch {
                expected: k,
                got: lam.level(),
            });
        }
        require_partition(lam)?;
        support.push(lam.clone());
    }
    // downward closure: removing one box must stay inside the support
    for lam in &support {
        for i in 0..k {
            let c = lam.coords();
            let ok = c[i] > if i + 1 < k { c[i + 1] } else { 0 };
            if !ok {
                continue;
            }
            let mut low = c.to_vec();
            low[i] -= 1;
            let low = Signature::new(low).unwrap();
            if !values.contains_key(&low) {
                return Err(Error::MissingGridValue(low.to_string()));
            }
        }
    }
    support.sort_by_key(|s| (s.size(), s.coords().to_vec()));

    let seq = FactorialSequence::interpolation(&base, k);
    let mut coeffs: BTreeMap<Signature, ExactScalar> = BTreeMap::new();
    let mut order: Vec<Signature> = Vec::with_capacity(support.len());
    for lam in &support {
        let x = grid_point(lam, &base)?;
        let mut rhs = values[lam].clone();
        for rho in &order {
            if !lam.contains(rho) {
                continue;
            }
            let basis = factorial_schur_det(rho, &x, &seq)?;
            if basis.is_zero() {
                continue;
            }
            rhs = rhs - &coeffs[rho] * basis;
        }
        let diag = interp_diagonal(lam, param, q)?;
        debug_assert!(!diag.is_zero());
        coeffs.insert(lam.clone(), rhs / diag);
        order.push(lam.clone());
    }
    Ok(coeffs)
}

/// Factorial elementary symmetric polynomial with a shifted sequence:
/// `e_k(y | tau^j a) = s_{1^k}(y | tau^j a)`, extended by `1` at `k = 0` and
/// `0` for `k < 0` or `k > m`.
pub fn factorial_elementary(
    k: i64,
    y: &[ExactScalar],
    a: &FactorialSequence,
    shift: i64,
) -> Result<ExactScalar> {
    let m = y.len() as i64;
    if k < 0 || k > m {
        return Ok(ExactScalar::zero());
    }
    if k == 0 {
        return Ok(ExactScalar::one());
    }
    let mut coords = vec![1i64; k as usize];
    coords.resize(m as usize, 0);
    let column = Signature::new(coords).unwrap();
    factorial_schur(&column, y, &a.shifted(shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt::partitions_in_box;
    use crate::schur::{schur_branching_dp, schur_eval};

    fn sig(coords: &[i64]) -> Signature {
        Signature::new(coords.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d)
    }

    fn q(n: i64, d: i64) -> QParam {
        QParam::from_ratio(n, d).unwrap()
    }

    struct Rng(u64);
    impl Rng {
        fn next(&mut self, m: i64) -> i64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((self.0 >> 33) as i64).rem_euclid(m)
        }
        fn rational(&mut self) -> ExactScalar {
            r(self.next(19) - 9, self.next(7) + 1)
        }
        fn nonzero_rational(&mut self) -> ExactScalar {
            loop {
                let v = self.rational();
                if !v.is_zero() {
                    return v;
                }
            }
        }
    }

    #[test]
    fn one_dimensional_factorial_product() {
        // s_k(x | a) = (x + a_1)...(x + a_k)
        let a = FactorialSequence::Table {
            vals: vec![r(1, 2), r(-1, 3), r(2, 1)],
            start: 1,
        };
        let x = [r(3, 4)];
        let v = factorial_schur(&sig(&[3]), &x, &a).unwrap();
        let direct = (&x[0] + &r(1, 2)) * (&x[0] + &r(-1, 3)) * (&x[0] + &r(2, 1));
        assert_eq!(v, direct);
        assert_eq!(
            factorial_schur(&Signature::empty(), &[], &a).unwrap(),
            ExactScalar::one()
        );
    }

    #[test]
    fn zero_sequence_gives_ordinary_schur() {
        let mut rng = Rng(17);
        for _ in 0..10 {
            let mut coords: Vec<i64> = (0..3).map(|_| rng.next(4)).collect();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Signature::new(coords).unwrap();
            let x: Vec<ExactScalar> = (0..3).map(|_| rng.nonzero_rational()).collect();
            let fact = factorial_schur_dp(&lam, &x, &FactorialSequence::Zero).unwrap();
            let ord = schur_branching_dp(&lam, &x).unwrap();
            assert_eq!(fact, ord, "at {lam}");
        }
    }

    #[test]
    fn three_evaluators_agree() {
        let mut rng = Rng(23);
        let a = FactorialSequence::Geometric {
            base: r(2, 3),
            offset: 2,
        };
        for _ in 0..15 {
            let mut coords: Vec<i64> = (0..3).map(|_| rng.next(3)).collect();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Signature::new(coords).unwrap();
            let x: Vec<ExactScalar> = (0..3).map(|_| rng.rational()).collect();
            let dp = factorial_schur_dp(&lam, &x, &a).unwrap();
            let tab = factorial_schur_tableaux(&lam, &x, &a).unwrap();
            assert_eq!(dp, tab, "dp vs tableaux at {lam}");
            if let Ok(det) = factorial_schur_det(&lam, &x, &a) {
                assert_eq!(dp, det, "dp vs det at {lam}");
            }
        }
    }

    #[test]
    fn interp_one_dimensional_cases() {
        let qq = q(1, 2);
        // s*_2(t; q) = (t - 1)(t - q)
        let t = r(5, 3);
        let v = interp_schur(&sig(&[2]), &[t.clone()], InterpParam::Q, &qq).unwrap();
        assert_eq!(v, (&t - &r(1, 1)) * (&t - qq.value()));
        // factor (q - q) kills the value at t = q
        let v = interp_schur(&sig(&[2]), &[qq.value().clone()], InterpParam::Q, &qq).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn interp_stability_under_extra_variable() {
        let qq = q(2, 5);
        let mut rng = Rng(5);
        for _ in 0..8 {
            let mut coords: Vec<i64> = (0..2).map(|_| rng.next(4)).collect();
            coords.sort_unstable_by(|a, b| b.cmp(a));
            let mu = Signature::new(coords).unwrap();
            let x: Vec<ExactScalar> = (0..2).map(|_| rng.rational()).collect();
            let small = interp_schur(&mu, &x, InterpParam::Q, &qq).unwrap();
            // append q^{-N} and a zero row
            let mut xe = x.clone();
            xe.push(q_pow(&qq, -2));
            let big = interp_schur(&mu.pad_to(3).unwrap(), &xe, InterpParam::Q, &qq).unwrap();
            assert_eq!(small, big, "stability failed at {mu}");
        }
    }

    #[test]
    fn interpolation_characterization() {
        // vanishing off containment, closed-form diagonal, for both params
        let qq = q(2, 5);
        for param in [InterpParam::Q, InterpParam::QInv] {
            for mu in partitions_in_box(2, 2) {
                for lam in partitions_in_box(2, 2) {
                    let v = interp_at_grid(&mu, &lam, param, &qq).unwrap();
                    if lam == mu {
                        assert_eq!(v, interp_diagonal(&mu, param, &qq).unwrap());
                        assert!(!v.is_zero());
                    } else if !lam.contains(&mu) {
                        assert!(v.is_zero(), "no vanishing: mu={mu} lam={lam}");
                    }
                }
            }
        }
        // mu = lam = (1) at N = 1 gives q - 1
        let v = interp_at_grid(&sig(&[1]), &sig(&[1]), InterpParam::Q, &qq).unwrap();
        assert_eq!(v, qq.value() - &ExactScalar::one());
        let v = interp_at_grid(&sig(&[2]), &sig(&[1]), InterpParam::Q, &qq).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn interp_at_zero_closed_form_matches_dp() {
        let qq = q(1, 2);
        for n in 1..=3usize {
            for mu in partitions_in_box(n, 3) {
                let zeros = vec![ExactScalar::zero(); n];
                let direct = interp_schur(&mu, &zeros, InterpParam::QInv, &qq).unwrap();
                assert_eq!(
                    interp_at_zero(&mu, n, &qq).unwrap(),
                    direct,
                    "qinv zero value at {mu}, n={n}"
                );
                let direct_q = interp_schur(&mu, &zeros, InterpParam::Q, &qq).unwrap();
                assert_eq!(
                    interp_at_zero_q(&mu, n, &qq).unwrap(),
                    direct_q,
                    "q zero value at {mu}, n={n}"
                );
            }
        }
        // 1-D spot values
        assert_eq!(
            interp_at_zero(&sig(&[1]), 1, &qq).unwrap(),
            ExactScalar::from_integer(-1)
        );
        assert_eq!(interp_at_zero(&sig(&[2]), 1, &qq).unwrap(), r(2, 1));
        assert_eq!(
            interp_at_zero(&Signature::empty(), 1, &qq).unwrap(),
            ExactScalar::one()
        );
    }

    #[test]
    fn binomial_reconstructs_schur() {
        let qq = q(1, 2);
        let mut rng = Rng(99);
        for lam in [sig(&[1]), sig(&[2, 1]), sig(&[2, 1, 0]), sig(&[3, 2, 1])] {
            let k = lam.level();
            let coeffs = binomial_expand(&lam, &qq).unwrap();
            for _ in 0..5 {
                let x: Vec<ExactScalar> = (0..k).map(|_| rng.rational()).collect();
                let direct = schur_eval(&lam, &x).unwrap();
                let mut acc = ExactScalar::zero();
                for (mu, c) in &coeffs {
                    acc = acc + c * interp_schur(mu, &x, InterpParam::Q, &qq).unwrap();
                }
                assert_eq!(acc, direct, "reconstruction failed at {lam}");
            }
        }
        // 1-D hand solve: x = 1*1 + 1*(x-1)
        let coeffs = binomial_expand(&sig(&[1]), &qq).unwrap();
        assert_eq!(coeffs[&sig(&[0])], ExactScalar::one());
        assert_eq!(coeffs[&sig(&[1])], ExactScalar::one());
        // empty diagram
        let coeffs = binomial_expand(&sig(&[0]), &qq).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[&sig(&[0])], ExactScalar::one());
    }

    #[test]
    fn inverse_binomial_reconstructs_interp() {
        let qq = q(2, 5);
        let mut rng = Rng(7);
        for lam in [sig(&[1]), sig(&[2, 0]), sig(&[2, 1]), sig(&[1, 1, 0])] {
            let k = lam.level();
            let coeffs = binomial_expand_inverse(&lam, &qq).unwrap();
            for _ in 0..5 {
                let x: Vec<ExactScalar> = (0..k).map(|_| rng.rational()).collect();
                let scaled: Vec<ExactScalar> =
                    x.iter().map(|xi| xi * &q_pow(&qq, k as i64 - 1)).collect();
                let direct = interp_schur(&lam, &scaled, InterpParam::QInv, &qq).unwrap();
                let mut acc = ExactScalar::zero();
                for (mu, c) in &coeffs {
                    acc = acc + c * schur_eval(mu, &x).unwrap();
                }
                assert_eq!(acc, direct, "inverse reconstruction failed at {lam}");
            }
        }
    }

    #[test]
    fn triangular_solve_newton_cases() {
        let qq = q(1, 2);
        // constant function 1
        let mut values = BTreeMap::new();
        for lam in partitions_in_box(1, 3) {
            values.insert(lam, ExactScalar::one());
        }
        let coeffs = grid_triangular_solve(&values, 1, InterpParam::Q, &qq).unwrap();
        for (mu, c) in &coeffs {
            if mu.size() == 0 {
                assert_eq!(c, &ExactScalar::one());
            } else {
                assert!(c.is_zero());
            }
        }
        // F(x) = x at nodes q^l: Newton coefficients {0: 1, 1: 1}
        let mut values = BTreeMap::new();
        for lam in partitions_in_box(1, 3) {
            let x = grid_point(&lam, qq.value()).unwrap();
            values.insert(lam, x[0].clone());
        }
        let coeffs = grid_triangular_solve(&values, 1, InterpParam::Q, &qq).unwrap();
        assert_eq!(coeffs[&sig(&[0])], ExactScalar::one());
        assert_eq!(coeffs[&sig(&[1])], ExactScalar::one());
        assert!(coeffs[&sig(&[2])].is_zero());
        assert!(coeffs[&sig(&[3])].is_zero());
    }

    #[test]
    fn triangular_solve_round_trips_random_combinations() {
        let qq = q(2, 5);
        let mut rng = Rng(41);
        for param in [InterpParam::Q, InterpParam::QInv] {
            let k = 2usize;
            let box_sigs = partitions_in_box(k, 2);
            let mut truth: BTreeMap<Signature, ExactScalar> = BTreeMap::new();
            for mu in &box_sigs {
                truth.insert(mu.clone(), rng.rational());
            }
            let base = param.base(&qq);
            let mut values = BTreeMap::new();
            for lam in &box_sigs {
                let x = grid_point(lam, &base).unwrap();
                let mut f = ExactScalar::zero();
                for (mu, c) in &truth {
                    f = f + c * interp_schur(mu, &x, param, &qq).unwrap();
                }
                values.insert(lam.clone(), f);
            }
            let solved = grid_triangular_solve(&values, k, param, &qq).unwrap();
            assert_eq!(solved, truth);
        }
    }

    #[test]
    fn triangular_solve_rejects_gaps() {
        let qq = q(1, 2);
        let mut values = BTreeMap::new();
        values.insert(sig(&[0]), ExactScalar::one());
        values.insert(sig(&[2]), ExactScalar::one());
        assert!(matches!(
            grid_triangular_solve(&values, 1, InterpParam::Q, &qq),
            Err(Error::MissingGridValue(_))
        ));
    }

    #[test]
    fn factorial_elementary_cases() {
        let qq = q(1, 2);
        let a = FactorialSequence::hat(&qq);
        let y = [r(1, 3), r(2, 7)];
        assert_eq!(
            factorial_elementary(0, &y, &a, 0).unwrap(),
            ExactScalar::one()
        );
        assert!(factorial_elementary(3, &y, &a, 0).unwrap().is_zero());
        assert!(factorial_elementary(-1, &y, &a, 0).unwrap().is_zero());
        // k = 1, m = 1: y_1 + a_{1+j}
        let y1 = [r(4, 9)];
        for j in 0..3i64 {
            assert_eq!(
                factorial_elementary(1, &y1, &a, j).unwrap(),
                &y1[0] + &a.at(1 + j)
            );
        }
    }

    #[test]
    fn dual_cauchy_identity() {
        // prod (y_j - x_i) = sum over lam in m^N of
        //   (-1)^{|lam|} s_lam(x|a) s_{complement(lam')}(y|a)
        let mut rng = Rng(3);
        for (n, m) in [(1usize, 2usize), (2, 2), (2, 3), (3, 2)] {
            let a = FactorialSequence::Table {
                vals: (0..(n + m + 2)).map(|_| rng.rational()).collect(),
                start: 1,
            };
            let x: Vec<ExactScalar> = (0..n).map(|_| rng.rational()).collect();
            let y: Vec<ExactScalar> = (0..m).map(|_| rng.rational()).collect();
            let mut lhs = ExactScalar::one();
            for yi in &y {
                for xi in &x {
                    lhs = lhs * (yi - xi);
                }
            }
            let mut rhs = ExactScalar::zero();
            for lam in partitions_in_box(n, m as i64) {
                let d = DiagramStats::new(&lam).unwrap();
                // complement of the transpose in N^m
                let mut tc: Vec<i64> = d.transpose_rows().to_vec();
                tc.resize(m, 0);
                let comp: Vec<i64> = tc.iter().rev().map(|&c| n as i64 - c).collect();
                let comp = Signature::new(comp).unwrap();
                let sx = factorial_schur(&lam, &x, &a).unwrap();
                let sy = factorial_schur(&comp, &y, &a).unwrap();
                let sign = if lam.size() % 2 == 0 {
                    ExactScalar::one()
                } else {
                    ExactScalar::from_integer(-1)
                };
                rhs = rhs + sign * sx * sy;
            }
            assert_eq!(lhs, rhs, "dual Cauchy failed at N={n} m={m}");
        }
    }

    #[test]
    fn determinantal_formula_in_elementaries() {
        // s_lam(y|a) = det[e_{lam'_i - i + j}(y | tau^{j-1} a)]
        let mut rng = Rng(13);
        for lam in [sig(&[2, 1]), sig(&[2, 2]), sig(&[3, 1, 0])] {
            let m = 3usize;
            let a = FactorialSequence::Table {
                vals: (0..16).map(|_| rng.rational()).collect(),
                start: -4,
            };
            let y: Vec<ExactScalar> = (0..m).map(|_| rng.rational()).collect();
            let direct = factorial_schur(&lam.pad_to(m).unwrap(), &y, &a).unwrap();
            let d = DiagramStats::new(&lam).unwrap();
            for extra in 0..2usize {
                let size = lam.coords()[0] as usize + extra;
                let mut rows = Vec::new();
                for i in 1..=size {
                    let mut row = Vec::new();
                    let lpi = d.transpose_rows().get(i - 1).copied().unwrap_or(0);
                    for j in 1..=size {
                        row.push(
                            factorial_elementary(lpi - i as i64 + j as i64, &y, &a, j as i64 - 1)
                                .unwrap(),
                        );
                    }
                    rows.push(row);
                }
                assert_eq!(determinant(&rows), direct, "at {lam}, size {size}");
            }
        }
    }

    #[test]
    fn g_and_g_prime_agree_on_schur_basis() {
        // apply both basis maps to s_mu and compare s*(.;q)-expansion
        // coefficients
        let qq = q(1, 2);
        let k = 2usize;
        for mu in partitions_in_box(k, 2) {
            let deg = mu.size().max(1);
            let box_sigs = partitions_in_box(k, deg);
            // step 1: expand s_mu(x) in s*_rho(q^{k-1}x; q^{-1})/s*_rho(0;q^{-1})
            let qinv = InterpParam::QInv.base(&qq);
            let mut values = BTreeMap::new();
            for lam in &box_sigs {
                let grid = grid_point(lam, &qinv).unwrap();
                let x: Vec<ExactScalar> =
                    grid.iter().map(|g| g * &q_pow(&qq, 1 - k as i64)).collect();
                values.insert(lam.clone(), schur_eval(&mu, &x).unwrap());
            }
            let raw = grid_triangular_solve(&values, k, InterpParam::QInv, &qq).unwrap();
            // step 2: G'(s_mu) = sum b_rho s_rho(x)/s_rho(1,q^{-1},...)
            // step 3: expand that in the s*(.;q) basis via binomial_expand
            let mut gprime: BTreeMap<Signature, ExactScalar> = BTreeMap::new();
            for (rho, a_rho) in &raw {
                let b_rho = a_rho * interp_at_zero(rho, k, &qq).unwrap();
                if b_rho.is_zero() {
                    continue;
                }
                let denom = principal_spec(rho, &qq, SpecDirection::Descending);
                let scale = b_rho / denom;
                for (tau, c) in binomial_expand(rho, &qq).unwrap() {
                    let entry = gprime.entry(tau).or_insert_with(ExactScalar::zero);
                    *entry += &scale * c;
                }
            }
            gprime.retain(|_, v| !v.is_zero());
            // G(s_mu) = (-1)^{|mu|} q^{n(mu)-n(mu')} s*_mu(x;q)
            let d = DiagramStats::new(&mu).unwrap();
            let sign = if mu.size() % 2 == 0 {
                ExactScalar::one()
            } else {
                ExactScalar::from_integer(-1)
            };
            let g_coeff = sign * q_pow(&qq, d.n() - d.n_transpose());
            assert_eq!(gprime.len(), 1, "G'(s_mu) not a single s* term at {mu}");
            assert_eq!(gprime[&mu], g_coeff, "G != G' at {mu}");
        }
    }
}
