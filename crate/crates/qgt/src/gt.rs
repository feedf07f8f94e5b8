//! Signatures, interlacing, paths, tableaux, 3D volumes and the
//! lozenge-tiling coordinate map.
//!
//! A signature is a weakly decreasing integer tuple; level-N signatures are
//! the vertices of the N-th level of the graph. Paths are interlacing chains
//! and carry the weight `q^{sum of intermediate |tau(i)|}`. Everything here is
//! immutable and pure; enumerations are in a fixed lexicographic order so
//! outputs are deterministic and diff-able.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{q_pow, ExactScalar, QParam};
use crate::{Error, Result};

/// A weakly decreasing tuple of integers; the level is the tuple length.
///
/// The empty signature (level 0) is allowed and stands for the empty diagram.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    coords: Vec<i64>,
}

impl Signature {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "coordinates not weakly decreasing: {coords:?}"
            )));
        }
        Ok(Signature { coords })
    }

    /// The all-zero signature at a given level.
    pub fn zero(level: usize) -> Self {
        Signature {
            coords: vec![0; level],
        }
    }

    pub fn empty() -> Self {
        Signature { coords: vec![] }
    }

    pub fn level(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Sum of coordinates, `|lambda|`.
    pub fn size(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.last().map_or(true, |&c| c >= 0)
    }

    /// The shift `A_l`, adding `l` to every coordinate.
    pub fn shift(&self, l: i64) -> Self {
        Signature {
            coords: self.coords.iter().map(|c| c + l).collect(),
        }
    }

    /// Elementwise comparison `self <= other` (same level required).
    pub fn le_elementwise(&self, other: &Signature) -> bool {
        self.level() == other.level()
            && self
                .coords
                .iter()
                .zip(other.coords.iter())
                .all(|(a, b)| a <= b)
    }

    /// Diagram containment for nonnegative signatures, padding the shorter
    /// one with zeros.
    pub fn contains(&self, other: &Signature) -> bool {
        (0..other.level().max(self.level())).all(|i| {
            let a = self.coords.get(i).copied().unwrap_or(0);
            let b = other.coords.get(i).copied().unwrap_or(0);
            a >= b
        })
    }

    /// Row lengths of the positive diagram `lambda^+`.
    pub fn positive_diagram(&self) -> Vec<i64> {
        self.coords.iter().copied().filter(|&c| c > 0).collect()
    }

    /// Row lengths of the negative diagram `lambda^-`.
    pub fn negative_diagram(&self) -> Vec<i64> {
        self.coords
            .iter()
            .rev()
            .copied()
            .filter(|&c| c < 0)
            .map(|c| -c)
            .collect()
    }

    /// Nonzero row lengths, for nonnegative signatures viewed as diagrams.
    pub fn rows(&self) -> Vec<i64> {
        self.positive_diagram()
    }

    /// Append `n` zero coordinates (nonnegative signatures only).
    pub fn pad_to(&self, level: usize) -> Result<Self> {
        if !self.is_nonnegative() {
            return Err(Error::NegativeCoordinate);
        }
        if level < self.level() {
            return Err(Error::LevelOutOfRange {
                level,
                top: self.level(),
            });
        }
        let mut coords = self.coords.clone();
        coords.resize(level, 0);
        Ok(Signature { coords })
    }

    /// The reversed tuple `(nu_k, ..., nu_1)` of a nondecreasing slice, used
    /// for the minimal point of the support of an extreme measure.
    pub fn from_reversed_nondecreasing(vals: &[i64]) -> Self {
        let mut coords: Vec<i64> = vals.to_vec();
        coords.reverse();
        Signature { coords }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Signature", 2)?;
        st.serialize_field("level", &self.level())?;
        st.serialize_field("coords", &self.coords)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            level: usize,
            coords: Vec<i64>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.level != raw.coords.len() {
            return Err(serde::de::Error::custom("level != coords length"));
        }
        Signature::new(raw.coords).map_err(serde::de::Error::custom)
    }
}

/// Combinatorial statistics of a Young diagram (nonnegative signature).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    rows: Vec<i64>,
    cols: Vec<i64>,
}

impl DiagramStats {
    pub fn new(shape: &Signature) -> Result<Self> {
        if !shape.is_nonnegative() {
            return Err(Error::NegativeCoordinate);
        }
        let rows = shape.rows();
        let ncols = rows.first().copied().unwrap_or(0);
        let cols: Vec<i64> = (0..ncols)
            .map(|j| rows.iter().filter(|&&r| r > j).count() as i64)
            .collect();
        Ok(DiagramStats { rows, cols })
    }

    /// Number of boxes `|lambda|`.
    pub fn size(&self) -> i64 {
        self.rows.iter().sum()
    }

    /// `n(lambda) = sum (i-1) lambda_i`.
    pub fn n(&self) -> i64 {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| i as i64 * r)
            .sum()
    }

    /// `n(lambda')`, which also equals `sum lambda_i (lambda_i - 1) / 2`.
    pub fn n_transpose(&self) -> i64 {
        self.cols
            .iter()
            .enumerate()
            .map(|(j, &c)| j as i64 * c)
            .sum()
    }

    /// Row lengths of the transposed diagram.
    pub fn transpose_rows(&self) -> &[i64] {
        &self.cols
    }

    /// Boxes in reading order as 1-based (i, j) pairs.
    pub fn boxes(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (1..=r).map(move |j| (i as i64 + 1, j)))
    }

    /// Hook length `h(i,j) = lambda_i - i + lambda'_j - j + 1` (1-based box).
    pub fn hook(&self, i: i64, j: i64) -> i64 {
        self.rows[(i - 1) as usize] - i + self.cols[(j - 1) as usize] - j + 1
    }

    /// Content `c(i,j) = j - i`.
    pub fn content(&self, i: i64, j: i64) -> i64 {
        j - i
    }
}

/// True iff `mu` (level N) interlaces below `lam` (level N+1):
/// `lam_1 >= mu_1 >= lam_2 >= ... >= mu_N >= lam_{N+1}`.
pub fn interlaces(mu: &Signature, lam: &Signature) -> Result<bool> {
    if mu.level() + 1 != lam.level() {
        return Err(Error::LevelMismatch {
            expected: mu.level() + 1,
            got: lam.level(),
        });
    }
    let l = lam.coords();
    let m = mu.coords();
    for i in 0..mu.level() {
        if !(l[i] >= m[i] && m[i] >= l[i + 1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All `mu` at level N-1 with `mu` interlacing below `lam`, lexicographic.
///
/// The count equals `prod_i (lam_i - lam_{i+1} + 1)`.
pub fn enumerate_below(lam: &Signature) -> Result<Vec<Signature>> {
    if lam.level() < 2 {
        return Err(Error::LevelMismatch {
            expected: 2,
            got: lam.level(),
        });
    }
    let l = lam.coords();
    let n = lam.level() - 1;
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    // nested ranges mu_i in [lam_{i+1}, lam_i]; weak decrease is automatic
    fn rec(l: &[i64], cur: &mut Vec<i64>, i: usize, out: &mut Vec<Signature>) {
        if i == cur.len() {
            out.push(Signature {
                coords: cur.clone(),
            });
            return;
        }
        for v in l[i + 1]..=l[i] {
            cur[i] = v;
            rec(l, cur, i + 1, out);
        }
    }
    rec(l, &mut cur, 0, &mut out);
    out.sort();
    Ok(out)
}

/// An interlacing chain `tau(1) < tau(2) < ... < tau(N)` with `tau(k)` at
/// level k.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Path {
    levels: Vec<Signature>,
}

impl Path {
    pub fn new(levels: Vec<Signature>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Parse("empty path".into()));
        }
        for (k, sig) in levels.iter().enumerate() {
            if sig.level() != k + 1 {
                return Err(Error::LevelMismatch {
                    expected: k + 1,
                    got: sig.level(),
                });
            }
        }
        for w in levels.windows(2) {
            if !interlaces(&w[0], &w[1])? {
                return Err(Error::Parse(format!(
                    "{} does not interlace below {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { levels })
    }

    pub fn top(&self) -> &Signature {
        self.levels.last().unwrap()
    }

    pub fn length(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &Signature {
        &self.levels[k - 1]
    }

    pub fn levels(&self) -> &[Signature] {
        &self.levels
    }
}

/// All paths ending at `lam`, as a brute-force oracle. Fails loudly with
/// [`Error::Explosion`] once more than `cap` paths are produced.
pub fn enumerate_paths_to(lam: &Signature, cap: usize) -> Result<Vec<Path>> {
    fn rec(lam: &Signature, cap: usize, out: &mut Vec<Vec<Signature>>) -> Result<()> {
        if lam.level() == 1 {
            out.push(vec![lam.clone()]);
            if out.len() > cap {
                return Err(Error::Explosion(cap));
            }
            return Ok(());
        }
        for mu in enumerate_below(lam)? {
            let before = out.len();
            rec(&mu, cap, out)?;
            for chain in out[before..].iter_mut() {
                chain.push(lam.clone());
            }
        }
        Ok(())
    }
    let mut chains = Vec::new();
    rec(lam, cap, &mut chains)?;
    chains
        .into_iter()
        .map(Path::new)
        .collect::<Result<Vec<_>>>()
}

/// The q-centrality weight `w(phi) = q^{|tau(1)| + ... + |tau(N-1)|}`.
///
/// The exponent may be negative when the path passes through signatures with
/// negative coordinates.
pub fn path_weight(p: &Path, q: &QParam) -> ExactScalar {
    let expo: i64 = p.levels[..p.length() - 1].iter().map(|s| s.size()).sum();
    q_pow(q, expo)
}

/// A semistandard tableau recording at which level each box of a diagram
/// appeared along a path.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Tableau {
    /// Row lengths of the shape (a diagram, i.e. nonnegative and trimmed).
    shape: Vec<i64>,
    /// `entries[i][j]` is the label of box (i+1, j+1), rows aligned to shape.
    entries: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(entries: Vec<Vec<usize>>) -> Result<Self> {
        let shape: Vec<i64> = entries.iter().map(|r| r.len() as i64).collect();
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse("tableau rows not weakly decreasing".into()));
        }
        let t = Tableau { shape, entries };
        if !t.is_semistandard() {
            return Err(Error::Parse("tableau is not semistandard".into()));
        }
        Ok(t)
    }

    pub fn empty() -> Self {
        Tableau {
            shape: vec![],
            entries: vec![],
        }
    }

    pub fn shape(&self) -> &[i64] {
        &self.shape
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn box_count(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    fn is_semistandard(&self) -> bool {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e < i + 1 {
                    return false;
                }
                if j + 1 < row.len() && row[j + 1] < e {
                    return false;
                }
                if i + 1 < self.entries.len() {
                    if let Some(&below) = self.entries[i + 1].get(j) {
                        if below <= e {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The pair `(T^+, T^-)` of tableaux of a path: box (i,j) of `tau(N)^+`
/// carries the level at which it appeared in the positive diagrams, and
/// likewise for the negative diagrams.
pub fn tableaux_of_path(p: &Path) -> (Tableau, Tableau) {
    let n = p.length();
    let build = |diagrams: Vec<Vec<i64>>| -> Tableau {
        let last = diagrams.last().unwrap();
        let mut entries: Vec<Vec<usize>> = last.iter().map(|&r| vec![0; r as usize]).collect();
        let mut prev: Vec<i64> = vec![];
        for (k, diag) in diagrams.iter().enumerate() {
            for (i, &len) in diag.iter().enumerate() {
                let old = prev.get(i).copied().unwrap_or(0);
                for j in old..len {
                    entries[i][j as usize] = k + 1;
                }
            }
            prev = diag.clone();
        }
        Tableau::new(entries).expect("path tableaux are semistandard by construction")
    };
    let pos: Vec<Vec<i64>> = (1..=n).map(|k| p.level(k).positive_diagram()).collect();
    let neg: Vec<Vec<i64>> = (1..=n).map(|k| p.level(k).negative_diagram()).collect();
    (build(pos), build(neg))
}

/// Rebuild the path from its two tableaux; inverse of [`tableaux_of_path`].
pub fn path_from_tableaux(tplus: &Tableau, tminus: &Tableau, n: usize) -> Result<Path> {
    let mut levels = Vec::with_capacity(n);
    for k in 1..=n {
        let pos: Vec<i64> = tplus
            .entries()
            .iter()
            .map(|row| row.iter().filter(|&&e| e <= k).count() as i64)
            .filter(|&c| c > 0)
            .collect();
        let neg: Vec<i64> = tminus
            .entries()
            .iter()
            .map(|row| row.iter().filter(|&&e| e <= k).count() as i64)
            .filter(|&c| c > 0)
            .collect();
        if pos.len() + neg.len() > k {
            return Err(Error::Parse("tableaux do not define a path".into()));
        }
        let mut coords = pos.clone();
        coords.resize(k - neg.len(), 0);
        coords.extend(neg.iter().rev().map(|&c| -c));
        levels.push(Signature::new(coords)?);
    }
    Path::new(levels)
}

/// 3D volume of the solid obtained by stacking `N - entry` unit cubes on
/// every box of the tableau.
pub fn volume(t: &Tableau, n: usize) -> Result<u64> {
    let mut total = 0u64;
    for row in t.entries() {
        for &e in row {
            if e > n {
                return Err(Error::EntryOutOfRange { entry: e, level: n });
            }
            total += (n - e) as u64;
        }
    }
    Ok(total)
}

/// The shift `A_l` as a free function.
pub fn shift(lam: &Signature, l: i64) -> Signature {
    lam.shift(l)
}

/// Horizontal-lozenge positions of the tiling of a path: for each level n and
/// each i, the pair `(n, lambda(n)_i + n - i - 1)`.
pub fn tiling_coords(p: &Path) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for n in 1..=p.length() {
        let lam = p.level(n);
        for (i, &c) in lam.coords().iter().enumerate() {
            out.push((n, c + n as i64 - (i as i64 + 1) - 1));
        }
    }
    out
}

/// Tiling JSON payload: `{"horizontal_lozenges": [[n, x], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct TilingJson {
    pub horizontal_lozenges: Vec<(usize, i64)>,
}

/// All level-`n` signatures with coordinates in `[lo, hi]`, lexicographic.
pub fn signatures_in_range(n: usize, lo: i64, hi: i64) -> Vec<Signature> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(cur: &mut Vec<i64>, i: usize, lo: i64, hi: i64, out: &mut Vec<Signature>) {
        if i == cur.len() {
            out.push(Signature {
                coords: cur.clone(),
            });
            return;
        }
        let upper = if i == 0 { hi } else { cur[i - 1] };
        for v in lo..=upper {
            cur[i] = v;
            rec(cur, i + 1, lo, hi, out);
        }
    }
    rec(&mut cur, 0, lo, hi, &mut out);
    out.sort();
    out
}

/// All nonnegative level-`k` signatures with parts at most `max_part`,
/// ordered by (size, lex). This is the canonical enumeration order of
/// downward-closed supports.
pub fn partitions_in_box(k: usize, max_part: i64) -> Vec<Signature> {
    let mut all = signatures_in_range(k, 0, max_part);
    all.sort_by_key(|s| (s.size(), s.coords.clone()));
    all
}

/// All partitions of `d` into at most `rows` parts, as level-`rows`
/// signatures padded with zeros, lexicographic.
pub fn partitions_of_size(d: i64, rows: usize) -> Vec<Signature> {
    fn rec(remaining: i64, max_part: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            let mut full = cur.clone();
            full.resize(full.len() + slots, 0);
            out.push(full);
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = max_part.min(remaining);
        for part in (1..=hi).rev() {
            cur.push(part);
            rec(remaining - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    if d >= 0 {
        rec(d, d.max(0), rows, &mut Vec::new(), &mut raw);
    }
    let mut sigs: Vec<Signature> = raw
        .into_iter()
        .map(|c| Signature::new(c).unwrap())
        .collect();
    sigs.sort();
    sigs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QParam;
    use proptest::prelude::*;

    fn sig(coords: &[i64]) -> Signature {
        Signature::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn interlacing_examples() {
        // the Figure-4 path step (1) < (2 >= -1)
        assert!(interlaces(&sig(&[1]), &sig(&[2, -1])).unwrap());
        assert!(!interlaces(&sig(&[3]), &sig(&[2, 0])).unwrap());
        assert!(interlaces(&sig(&[0]), &sig(&[0, 0])).unwrap());
        assert!(matches!(
            interlaces(&sig(&[1]), &sig(&[1, 0, 0])),
            Err(Error::LevelMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_below_examples() {
        assert_eq!(
            enumerate_below(&sig(&[1, 0])).unwrap(),
            vec![sig(&[0]), sig(&[1])]
        );
        assert_eq!(enumerate_below(&sig(&[0, 0, 0])).unwrap(), vec![sig(&[0, 0])]);
        assert_eq!(
            enumerate_below(&sig(&[2, 0])).unwrap(),
            vec![sig(&[0]), sig(&[1]), sig(&[2])]
        );
        assert!(enumerate_below(&sig(&[5])).is_err());
    }

    #[test]
    fn enumerate_below_count_formula() {
        for lam in [sig(&[3, 1, 0]), sig(&[2, 2, -1]), sig(&[4, 0, -2, -2])] {
            let count = enumerate_below(&lam).unwrap().len() as i64;
            let c = lam.coords();
            let expected: i64 = (0..c.len() - 1).map(|i| c[i] - c[i + 1] + 1).product();
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn paths_to_small_tops() {
        assert_eq!(enumerate_paths_to(&sig(&[0, 0]), 100).unwrap().len(), 1);
        assert_eq!(enumerate_paths_to(&sig(&[2, 0]), 100).unwrap().len(), 3);
        // double loop over interlacing pairs
        let lam = sig(&[1, 0, -1]);
        let mut direct = 0usize;
        for mu in enumerate_below(&lam).unwrap() {
            direct += enumerate_below(&mu).unwrap().len();
        }
        assert_eq!(enumerate_paths_to(&lam, 10_000).unwrap().len(), direct);
    }

    #[test]
    fn explosion_cap_fires() {
        assert!(matches!(
            enumerate_paths_to(&sig(&[6, 0, -6]), 5),
            Err(Error::Explosion(5))
        ));
    }

    #[test]
    fn path_weights() {
        let q = QParam::from_ratio(1, 2).unwrap();
        let p = Path::new(vec![sig(&[0]), sig(&[0, 0])]).unwrap();
        assert_eq!(path_weight(&p, &q), ExactScalar::one());
        let p = Path::new(vec![sig(&[1]), sig(&[1, 0])]).unwrap();
        assert_eq!(path_weight(&p, &q), ExactScalar::from_ratio(1, 2));
        let p = Path::new(vec![sig(&[-1]), sig(&[0, -1])]).unwrap();
        assert_eq!(path_weight(&p, &q), ExactScalar::from_integer(2));
    }

    #[test]
    fn tableaux_of_simple_paths() {
        let p = Path::new(vec![sig(&[0]), sig(&[1, 0]), sig(&[1, 1, 0])]).unwrap();
        let (tp, tm) = tableaux_of_path(&p);
        assert_eq!(tp.entries(), &[vec![2], vec![3]]);
        assert!(tm.is_empty());
        assert_eq!(volume(&tp, 3).unwrap(), 1);

        let p = Path::new(vec![sig(&[0]), sig(&[0, 0])]).unwrap();
        let (tp, tm) = tableaux_of_path(&p);
        assert!(tp.is_empty() && tm.is_empty());

        let p = Path::new(vec![sig(&[-1]), sig(&[0, -1])]).unwrap();
        let (tp, tm) = tableaux_of_path(&p);
        assert!(tp.is_empty());
        assert_eq!(tm.entries(), &[vec![1]]);
        assert_eq!(volume(&tm, 4).unwrap(), 3);
    }

    #[test]
    fn volume_rejects_large_entries() {
        let t = Tableau::new(vec![vec![2, 3]]).unwrap();
        assert!(matches!(
            volume(&t, 2),
            Err(Error::EntryOutOfRange { entry: 3, level: 2 })
        ));
        assert_eq!(volume(&Tableau::empty(), 5).unwrap(), 0);
    }

    #[test]
    fn shift_round_trip() {
        let lam = sig(&[2, 0]);
        assert_eq!(shift(&lam, -2), sig(&[0, -2]));
        assert_eq!(shift(&shift(&lam, 7), -7), lam);
        assert_eq!(shift(&sig(&[0, 0]), 0), sig(&[0, 0]));
    }

    #[test]
    fn shift_commutes_with_enumerate_below() {
        let lam = sig(&[2, 0, -1]);
        let l = 3;
        let shifted: Vec<Signature> = enumerate_below(&lam)
            .unwrap()
            .into_iter()
            .map(|m| m.shift(l))
            .collect();
        assert_eq!(enumerate_below(&lam.shift(l)).unwrap(), shifted);
    }

    #[test]
    fn tiling_coords_match_formula() {
        let p = Path::new(vec![sig(&[1])]).unwrap();
        assert_eq!(tiling_coords(&p), vec![(1, 0)]);
        let p = Path::new(vec![sig(&[1]), sig(&[2, -1])]).unwrap();
        assert_eq!(tiling_coords(&p), vec![(1, 0), (2, 2), (2, -2)]);
        // all-zero path: x = n - i - 1 at every level
        let p = Path::new(vec![sig(&[0]), sig(&[0, 0]), sig(&[0, 0, 0])]).unwrap();
        assert_eq!(
            tiling_coords(&p),
            vec![(1, -1), (2, 0), (2, -1), (3, 1), (3, 0), (3, -1)]
        );
    }

    #[test]
    fn diagram_stats_cross_check() {
        // n(lambda') = sum lambda_i (lambda_i - 1) / 2
        for shape in [sig(&[4, 2, 1]), sig(&[3, 3, 3]), sig(&[5]), sig(&[0, 0]), Signature::empty()] {
            let d = DiagramStats::new(&shape).unwrap();
            let direct: i64 = shape.coords().iter().map(|&r| r * (r - 1) / 2).sum();
            assert_eq!(d.n_transpose(), direct);
        }
        let d = DiagramStats::new(&sig(&[3, 1])).unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.transpose_rows(), &[2, 1, 1]);
        assert_eq!(d.hook(1, 1), 3 - 1 + 2 - 1 + 1);
        assert_eq!(d.content(2, 1), -1);
        assert!(DiagramStats::new(&sig(&[1, -1])).is_err());
    }

    #[test]
    fn signature_json_round_trip() {
        let lam = sig(&[2, 0, -3]);
        let js = serde_json::to_string(&lam).unwrap();
        assert_eq!(js, r#"{"level":3,"coords":[2,0,-3]}"#);
        let back: Signature = serde_json::from_str(&js).unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Signature>(r#"{"level":2,"coords":[0,1]}"#).is_err());
    }

    fn arb_path(maxn: usize) -> impl Strategy<Value = Path> {
        (1..=maxn, any::<u64>()).prop_map(|(n, seed)| {
            // deterministic pseudo-random interlacing chain
            let mut state = seed;
            let mut next = |range: i64| -> i64 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as i64).rem_euclid(range)
            };
            let mut levels = vec![Signature::new(vec![next(7) - 3]).unwrap()];
            for _ in 1..n {
                let prev = levels.last().unwrap().clone();
                let pc = prev.coords();
                let mut coords = Vec::with_capacity(pc.len() + 1);
                coords.push(pc[0] + next(3));
                for i in 0..pc.len() {
                    let hi = pc[i];
                    let lo = if i + 1 < pc.len() { pc[i + 1] } else { hi - next(3) };
                    coords.push(lo + next(hi - lo + 1));
                }
                levels.push(Signature::new(coords).unwrap());
            }
            Path::new(levels).unwrap()
        })
    }

    proptest! {
        // volume lemma: V(T+) - V(T-) = sum of intermediate |tau(i)|
        #[test]
        fn volume_lemma(p in arb_path(6)) {
            let n = p.length();
            let (tp, tm) = tableaux_of_path(&p);
            let lhs = volume(&tp, n).unwrap() as i64 - volume(&tm, n).unwrap() as i64;
            let rhs: i64 = p.levels()[..n - 1].iter().map(|s| s.size()).sum();
            prop_assert_eq!(lhs, rhs);
        }

        // the q-centrality weight is q^{V(T+) - V(T-)}
        #[test]
        fn weight_is_q_to_volume(p in arb_path(5)) {
            let q = QParam::from_ratio(2, 5).unwrap();
            let n = p.length();
            let (tp, tm) = tableaux_of_path(&p);
            let expo = volume(&tp, n).unwrap() as i64 - volume(&tm, n).unwrap() as i64;
            prop_assert_eq!(path_weight(&p, &q), q_pow(&q, expo));
        }

        #[test]
        fn tableaux_reconstruction_is_identity(p in arb_path(6)) {
            let (tp, tm) = tableaux_of_path(&p);
            let back = path_from_tableaux(&tp, &tm, p.length()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
