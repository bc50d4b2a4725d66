//! Monte Carlo Haar sampling on Oₙ and Bₙ.
//!
//! Sample `s` draws from a ChaCha8 stream seeded by `seed` with stream id `s`,
//! so every sample is a pure function of `(seed, s)`. Samples are summed in
//! fixed-size chunks and the chunk sums are combined by pairwise summation,
//! which makes results independent of the thread count.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Category;
use crate::word::Word;

const CHUNK: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Precondition("samples must be positive".into()));
        }
        Ok(McConfig { samples, seed })
    }

    /// Random stream of one sample.
    pub fn rng(&self, sample_index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(sample_index as u64);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

impl McEstimate {
    /// `|estimate − exact| ≤ z · std_error`; a zero standard error demands
    /// agreement to 1e-12.
    pub fn agrees_with(&self, exact: f64, z: f64) -> bool {
        let diff = (self.estimate - exact).abs();
        if self.std_error == 0.0 {
            diff < 1e-12
        } else {
            diff <= z * self.std_error
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum McGroup {
    O,
    B,
}

impl McGroup {
    pub fn category(self) -> Category {
        match self {
            McGroup::O => Category::O,
            McGroup::B => Category::B,
        }
    }

    pub fn sample(self, n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
        match self {
            McGroup::O => haar_orthogonal(n, rng),
            McGroup::B => bistochastic(n, rng),
        }
    }
}

impl fmt::Display for McGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            McGroup::O => "O",
            McGroup::B => "B",
        })
    }
}

impl FromStr for McGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" => Ok(McGroup::O),
            "B" => Ok(McGroup::B),
            _ => Err(Error::Parse(format!("no Monte Carlo sampler for {s:?}; expected O or B"))),
        }
    }
}

fn haar_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let gauss = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    q
}

/// Householder reflection exchanging `e₁` and `1/√n`.
fn ones_reflector(n: usize) -> DMatrix<f64> {
    let u = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut v = -u;
    v[0] += 1.0;
    let norm2 = v.norm_squared();
    let mut h = DMatrix::identity(n, n);
    if norm2 > 0.0 {
        h -= (2.0 / norm2) * &v * v.transpose();
    }
    h
}

fn bistochastic(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let h = ones_reflector(n);
    let mut block = DMatrix::identity(n, n);
    if n > 1 {
        block.view_mut((1, 1), (n - 1, n - 1)).copy_from(&haar_orthogonal(n - 1, rng));
    }
    &h * block * h.transpose()
}

/// Haar orthogonal matrix for sample `sample_index`: QR of a Gaussian matrix
/// with the columns of Q multiplied by the signs of diag(R).
pub fn sample_haar_orthogonal(n: usize, cfg: &McConfig, sample_index: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    Ok(haar_orthogonal(n, &mut cfg.rng(sample_index)))
}

/// Haar element of Bₙ: `H diag(1, h) Hᵀ` with `h` Haar on O_{n−1} and `H`
/// orthogonal with first column `1/√n`.
pub fn sample_bistochastic(n: usize, cfg: &McConfig, sample_index: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::Precondition("bistochastic sampling needs n ≥ 2".into()));
    }
    Ok(bistochastic(n, &mut cfg.rng(sample_index)))
}

#[derive(Clone)]
struct Moments {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

impl Moments {
    fn zeros(len: usize) -> Self {
        Moments { sum: vec![0.0; len], sum_sq: vec![0.0; len] }
    }

    fn merge(mut self, other: &Moments) -> Self {
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            *a += b;
        }
        for (a, b) in self.sum_sq.iter_mut().zip(&other.sum_sq) {
            *a += b;
        }
        self
    }
}

fn pairwise(parts: &[Moments]) -> Moments {
    match parts.len() {
        1 => parts[0].clone(),
        len => {
            let (a, b) = parts.split_at(len / 2);
            pairwise(a).merge(&pairwise(b))
        }
    }
}

/// Means and standard errors of `outputs` statistics; `f` fills one value per
/// statistic from the sample's random stream.
pub fn estimate_many<F>(cfg: &McConfig, outputs: usize, f: F) -> Vec<McEstimate>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
{
    let chunks = cfg.samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut m = Moments::zeros(outputs);
            let mut buf = vec![0.0; outputs];
            for s in c * CHUNK..((c + 1) * CHUNK).min(cfg.samples) {
                f(&mut cfg.rng(s), &mut buf);
                for (o, &x) in buf.iter().enumerate() {
                    m.sum[o] += x;
                    m.sum_sq[o] += x * x;
                }
            }
            m
        })
        .collect();
    let total = pairwise(&parts);
    let n = cfg.samples as f64;
    (0..outputs)
        .map(|o| {
            let mean = total.sum[o] / n;
            let var = if cfg.samples > 1 { ((total.sum_sq[o] - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
            McEstimate { estimate: mean, std_error: (var / n).sqrt(), samples: cfg.samples, seed: cfg.seed }
        })
        .collect()
}

fn monomial(g: &DMatrix<f64>, i: &[u32], j: &[u32]) -> f64 {
    i.iter().zip(j).map(|(&a, &b)| g[(a as usize - 1, b as usize - 1)]).product()
}

/// Estimates of `∫ Π_l g_{i_l j_l}` for several index pairs on shared samples.
pub fn group_integral_mc_many(group: McGroup, n: u32, pairs: &[(Word, Word)], cfg: &McConfig) -> Result<Vec<McEstimate>> {
    if n == 0 || (group == McGroup::B && n < 2) {
        return Err(Error::Precondition(format!("{group} sampling needs a larger n, got {n}")));
    }
    for (i, j) in pairs {
        if i.len() != j.len() {
            return Err(Error::LengthMismatch { left: i.len(), right: j.len() });
        }
        i.check_range(n)?;
        j.check_range(n)?;
    }
    Ok(estimate_many(cfg, pairs.len(), |rng, out| {
        let g = group.sample(n as usize, rng);
        for (slot, (i, j)) in out.iter_mut().zip(pairs) {
            *slot = monomial(&g, i.letters(), j.letters());
        }
    }))
}

pub fn group_integral_mc(group: McGroup, n: u32, i: &Word, j: &Word, cfg: &McConfig) -> Result<McEstimate> {
    Ok(group_integral_mc_many(group, n, &[(i.clone(), j.clone())], cfg)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weingarten::haar_integral;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0, |a, &x| a.max(x.abs()))
    }

    #[test]
    fn samples_are_orthogonal() {
        let cfg = McConfig::new(10, 7).unwrap();
        for n in 1..=6 {
            for s in 0..10 {
                let g = sample_haar_orthogonal(n, &cfg, s).unwrap();
                assert!(max_abs(&(&g * g.transpose() - DMatrix::identity(n, n))) < 1e-12);
            }
        }
        for n in 2..=6 {
            for s in 0..10 {
                let g = sample_bistochastic(n, &cfg, s).unwrap();
                assert!(max_abs(&(&g * g.transpose() - DMatrix::identity(n, n))) < 1e-12);
                for r in 0..n {
                    assert!((g.row(r).sum() - 1.0).abs() < 1e-12);
                    assert!((g.column(r).sum() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn sampling_is_a_function_of_seed_and_index() {
        let cfg = McConfig::new(1, 99).unwrap();
        assert_eq!(sample_haar_orthogonal(4, &cfg, 3).unwrap(), sample_haar_orthogonal(4, &cfg, 3).unwrap());
        assert_ne!(sample_haar_orthogonal(4, &cfg, 3).unwrap(), sample_haar_orthogonal(4, &cfg, 4).unwrap());
    }

    #[test]
    fn estimates_match_exact_values() {
        let cfg = McConfig::new(20_000, 42).unwrap();
        let cases = [(McGroup::O, 4, "1,1", "1,1"), (McGroup::O, 4, "1", "1"), (McGroup::B, 3, "1", "1"), (McGroup::B, 3, "1,2", "1,1")];
        for (group, n, i, j) in cases {
            let est = group_integral_mc(group, n, &w(i), &w(j), &cfg).unwrap();
            let exact = haar_integral(group.category(), n, &w(i), &w(j)).unwrap().to_f64();
            assert!(est.agrees_with(exact, 4.0), "{group} n={n} {i} {j}: {est:?} vs {exact}");
        }
        let est = group_integral_mc(McGroup::O, 4, &w("1,1"), &w("1,1"), &cfg).unwrap();
        assert!((est.estimate - 0.25).abs() < 0.02);
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let cfg = McConfig::new(3000, 5).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| group_integral_mc(McGroup::B, 4, &w("1,2,2"), &w("3,3,1"), &cfg).unwrap())
        };
        let one = run(1);
        assert_eq!(one.estimate.to_bits(), run(4).estimate.to_bits());
        assert_eq!(one.std_error.to_bits(), run(3).std_error.to_bits());
    }

    #[test]
    fn input_errors() {
        let cfg = McConfig::new(10, 1).unwrap();
        assert!(group_integral_mc(McGroup::O, 3, &w("4"), &w("1"), &cfg).is_err());
        assert!(group_integral_mc(McGroup::B, 1, &w("1"), &w("1"), &cfg).is_err());
        assert!(McConfig::new(0, 1).is_err());
        assert!(sample_bistochastic(1, &cfg, 0).is_err());
    }
}
