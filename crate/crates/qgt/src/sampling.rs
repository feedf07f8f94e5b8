//! Exact sampling of random paths under extreme q-central measures and
//! finite mixtures, with lozenge-tiling export.
//!
//! Sampling is top-down: draw the top signature from the exact truncated
//! distribution `E^nu_N`, then descend through exact cotransition draws. No
//! MCMC is involved; the only randomness is one uniform 64-bit stream per
//! path, produced by a SplitMix64 counter generator with per-path
//! substreams. Uniform variates are 128-bit dyadic rationals compared
//! against exact cumulative sums, so runs reproduce bit-exactly across
//! platforms from the seed alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{ExactScalar, QParam};
use crate::gt::{enumerate_below, tiling_coords, Path, Signature};
use crate::measures::{cotransition, extreme_projection, FiniteMeasure, NuSeq};
use crate::{Error, Result};

/// SplitMix64: a counter-based 64-bit generator (Weyl increment plus a
/// finalizer hash), reproducible across platforms.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// An independent substream for one path index.
    pub fn substream(seed: u64, index: u64) -> Self {
        SplitMix64 {
            state: mix(seed ^ mix(index.wrapping_mul(GOLDEN).wrapping_add(GOLDEN))),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// A 128-bit dyadic uniform variate in [0, 1), as an exact rational.
    pub fn uniform_unit(&mut self) -> ExactScalar {
        let hi = self.next_u64();
        let lo = self.next_u64();
        let num = (BigInt::from(hi) << 64) + BigInt::from(lo);
        ExactScalar::new(num, BigInt::from(1u8) << 128)
    }
}

/// Exact inverse-CDF draw from a finite measure, in its stored signature
/// order. A variate landing in the declared tail aborts with
/// [`Error::TailHit`].
pub fn draw_from(m: &FiniteMeasure, rng: &mut SplitMix64) -> Result<Signature> {
    let u = rng.uniform_unit();
    let mut acc = ExactScalar::zero();
    for (sig, mass) in m.masses() {
        acc += mass.clone();
        if u < acc {
            return Ok(sig.clone());
        }
    }
    Err(Error::TailHit)
}

/// Draw the top signature from `E^nu_N`, truncated at `eps` within the cap.
pub fn sample_top(
    nu: &NuSeq,
    n: usize,
    eps: &ExactScalar,
    cap: i64,
    rng: &mut SplitMix64,
    q: &QParam,
) -> Result<Signature> {
    let m = extreme_projection(nu, n, eps, cap, q)?;
    draw_from(&m, rng)
}

/// Descend from a top signature through exact cotransition draws; the
/// conditional law of the resulting path given its top is the q-central
/// one (probability proportional to the path weight).
pub fn sample_path_down(lam: &Signature, rng: &mut SplitMix64, q: &QParam) -> Result<Path> {
    let mut chain = vec![lam.clone()];
    let mut cur = lam.clone();
    while cur.level() > 1 {
        let children = enumerate_below(&cur)?;
        let mut acc = ExactScalar::zero();
        let u = rng.uniform_unit();
        let mut picked = None;
        for mu in children {
            acc += cotransition(&cur, &mu, q)?;
            if u < acc {
                picked = Some(mu);
                break;
            }
        }
        // the kernel is exactly stochastic, so u < 1 <= acc at the end
        cur = picked.expect("cotransition rows sum to one");
        chain.push(cur.clone());
    }
    chain.reverse();
    Path::new(chain)
}

/// What a run samples from: one boundary parameter or a finite mixture.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SampleSpec {
    Nu(NuSeq),
    Mixture(MixtureSpec),
}

/// A finite mixture of extreme measures with exact weights summing to one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MixtureSpec {
    components: Vec<(NuSeq, ExactScalar)>,
}

impl MixtureSpec {
    pub fn new(components: Vec<(NuSeq, ExactScalar)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse("empty mixture".into()));
        }
        let mut total = ExactScalar::zero();
        for (_, w) in &components {
            if w.is_negative() {
                return Err(Error::Parse("negative mixture weight".into()));
            }
            total += w.clone();
        }
        if !total.is_one() {
            return Err(Error::Parse(format!("mixture weights sum to {total}")));
        }
        Ok(MixtureSpec { components })
    }

    pub fn components(&self) -> &[(NuSeq, ExactScalar)] {
        &self.components
    }
}

/// A reproducible sampling run: the seed and provenance pin the paths.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SampleRun {
    pub seed: u64,
    pub n_top: usize,
    pub spec: SampleSpec,
    pub epsilon: ExactScalar,
    pub cap: i64,
    pub paths: Vec<Path>,
}

/// Run manifest mirrored into JSON next to tiling exports.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest<'a> {
    pub seed: u64,
    pub spec: &'a SampleSpec,
    pub n: usize,
    pub epsilon: &'a ExactScalar,
    pub count: usize,
}

/// Sample `count` independent paths and their horizontal-lozenge
/// coordinates. Deterministic under the seed; a tail hit aborts the run.
pub fn sample_tiling(
    spec: &SampleSpec,
    n: usize,
    eps: &ExactScalar,
    cap: i64,
    count: usize,
    seed: u64,
    q: &QParam,
) -> Result<(SampleRun, Vec<Vec<(usize, i64)>>)> {
    // precompute the top measures once per component
    let top_measures: Vec<(FiniteMeasure, ExactScalar)> = match spec {
        SampleSpec::Nu(nu) => vec![(
            extreme_projection(nu, n, eps, cap, q)?,
            ExactScalar::one(),
        )],
        SampleSpec::Mixture(mix) => {
            let mut out = Vec::new();
            for (nu, w) in mix.components() {
                out.push((extreme_projection(nu, n, eps, cap, q)?, w.clone()));
            }
            out
        }
    };
    let mut paths = Vec::with_capacity(count);
    let mut tilings = Vec::with_capacity(count);
    for index in 0..count {
        let mut rng = SplitMix64::substream(seed, index as u64);
        let measure = if top_measures.len() == 1 {
            &top_measures[0].0
        } else {
            let u = rng.uniform_unit();
            let mut acc = ExactScalar::zero();
            let mut chosen = &top_measures[0].0;
            for (m, w) in &top_measures {
                acc += w.clone();
                if u < acc {
                    chosen = m;
                    break;
                }
            }
            chosen
        };
        let top = draw_from(measure, &mut rng)?;
        let path = sample_path_down(&top, &mut rng, q)?;
        tilings.push(tiling_coords(&path));
        paths.push(path);
    }
    Ok((
        SampleRun {
            seed,
            n_top: n,
            spec: spec.clone(),
            epsilon: eps.clone(),
            cap,
            paths,
        },
        tilings,
    ))
}

/// Empirical distribution of `tau(level)` over a batch of paths.
pub fn empirical_marginal(paths: &[Path], level: usize) -> BTreeMap<Signature, usize> {
    let mut counts = BTreeMap::new();
    for p in paths {
        *counts.entry(p.level(level).clone()).or_insert(0) += 1;
    }
    counts
}
