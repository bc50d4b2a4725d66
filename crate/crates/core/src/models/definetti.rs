//! Finite de Finetti gaps for two classical invariant models: an urn sampled
//! without replacement (Sₙ) and the uniform law on the sphere of radius √n
//! (Oₙ), each against its conditionally i.i.d. prediction.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::sampling::{estimate_many, McConfig, McEstimate};
use crate::cumulants::{law_moments, Law};
use crate::error::{Error, Result};
use crate::partitions::SetPartition;
use crate::scalar::ExactScalar;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    pub gap: ExactScalar,
}

impl GapReport {
    fn new(lhs: ExactScalar, rhs: ExactScalar) -> Self {
        let gap = (&lhs - &rhs).abs();
        GapReport { lhs, rhs, gap }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UrnSpec {
    values: Vec<ExactScalar>,
}

impl UrnSpec {
    pub fn new(values: Vec<ExactScalar>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput("urn"));
        }
        Ok(UrnSpec { values })
    }

    /// The urn `1, −1, 1, −1, …` of size `n`.
    pub fn alternating(n: usize) -> Result<Self> {
        Self::new((0..n).map(|t| ExactScalar::from_int(if t % 2 == 0 { 1 } else { -1 })).collect())
    }

    pub fn values(&self) -> &[ExactScalar] {
        &self.values
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// `p_e = Σ_t v_t^e`.
    fn power_sum(&self, e: usize) -> ExactScalar {
        self.values.iter().map(|v| v.pow(e as u32)).sum()
    }

    /// `m_e = p_e / n`.
    pub fn draw_moment(&self, e: usize) -> ExactScalar {
        self.power_sum(e) / ExactScalar::from_int(self.size() as i64)
    }
}

fn block_sizes(j: &Word) -> Result<Vec<usize>> {
    if j.is_empty() {
        return Ok(Vec::new());
    }
    Ok(j.kernel()?.block_sizes())
}

/// `Σ over distinct t₁, …, t_r of Π_b v_{t_b}^{e_b}`, by inclusion-exclusion
/// over the partitions σ of the `r` draws:
/// `Σ_σ μ(0_r, σ) Π_{S∈σ} p_{Σ_{b∈S} e_b}` with `μ(0_r, σ) = Π_S (−1)^{|S|−1}(|S|−1)!`.
fn distinct_draw_sum(urn: &UrnSpec, exponents: &[usize]) -> Result<ExactScalar> {
    let r = exponents.len();
    if r == 0 {
        return Ok(ExactScalar::one());
    }
    let mut total = ExactScalar::zero();
    for sigma in crate::partitions::enumerate_all(r)? {
        let mut term = ExactScalar::one();
        for block in sigma.blocks() {
            let s = block.len() as i64;
            let mu: i64 = (1..s).product::<i64>() * if s % 2 == 1 { 1 } else { -1 };
            let e: usize = block.iter().map(|&b| exponents[b - 1]).sum();
            term *= &(ExactScalar::from_int(mu) * urn.power_sum(e));
        }
        total += &term;
    }
    Ok(total)
}

/// `E[x_{j₁} ⋯ x_{j_k}]` for draws without replacement against the i.i.d.
/// prediction `Π_{V ∈ ker j} m_{|V|}`.
pub fn urn_definetti_gap(urn: &UrnSpec, j: &Word) -> Result<GapReport> {
    let n = urn.size();
    if j.len() > n {
        return Err(Error::Precondition(format!("word of length {} is longer than the urn ({n})", j.len())));
    }
    j.check_range(n as u32)?;
    let sizes = block_sizes(j)?;
    let r = sizes.len();
    let falling: ExactScalar = (0..r).map(|t| ExactScalar::from_int((n - t) as i64)).product();
    let lhs = distinct_draw_sum(urn, &sizes)? / falling;
    let rhs = sizes.iter().map(|&s| urn.draw_moment(s)).product();
    Ok(GapReport::new(lhs, rhs))
}

fn check_sphere(n: u32, j: &Word) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be a positive integer".into()));
    }
    j.check_range(n)
}

/// Uniform point on the sphere of radius √n in ℝⁿ: for exponents `2a_V`,
/// `E[Π x^{2a_V}] = n^A Π (2a_V − 1)!! / Π_{r<A} (n + 2r)` with `A = Σ a_V`;
/// any odd exponent gives 0. Compared with i.i.d. standard Gaussians.
pub fn sphere_definetti_gap(n: u32, j: &Word) -> Result<GapReport> {
    check_sphere(n, j)?;
    let sizes = block_sizes(j)?;
    let max = sizes.iter().copied().max().unwrap_or(0);
    let gauss = law_moments(&Law::Gaussian { mean: ExactScalar::zero(), var: ExactScalar::one() }, max)?;
    let rhs = sizes.iter().map(|&s| gauss[s - 1].clone()).product();
    let lhs = if sizes.iter().any(|s| s % 2 == 1) {
        ExactScalar::zero()
    } else {
        let a: usize = sizes.iter().map(|s| s / 2).sum();
        let double_factorials: ExactScalar = sizes.iter().map(|&s| gauss[s - 1].clone()).product();
        let denominator: ExactScalar = (0..a).map(|r| ExactScalar::from_int(n as i64 + 2 * r as i64)).product();
        ExactScalar::int_pow(n, a) * double_factorials / denominator
    };
    Ok(GapReport::new(lhs, rhs))
}

/// Monte Carlo estimate of the sphere moment (normalized Gaussian vectors).
pub fn sphere_moment_mc(n: u32, j: &Word, cfg: &McConfig) -> Result<McEstimate> {
    check_sphere(n, j)?;
    let radius = (n as f64).sqrt();
    Ok(estimate_many(cfg, 1, |rng, out| {
        let x: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        out[0] = j.letters().iter().map(|&l| x[l as usize - 1] * radius / norm).product();
    })[0])
}

/// Direct average over all injective draws of `r` urn positions, one per
/// block of `ker j` (test oracle for [`urn_definetti_gap`]).
pub fn urn_moment_by_enumeration(urn: &UrnSpec, j: &Word) -> Result<ExactScalar> {
    let kernel = if j.is_empty() { SetPartition::empty() } else { j.kernel()? };
    let sizes = kernel.block_sizes();
    let n = urn.size();
    let mut total = ExactScalar::zero();
    let mut count = 0i64;
    let mut pick: Vec<usize> = Vec::new();
    fn walk(n: usize, depth: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if pick.len() == depth {
            f(pick);
            return;
        }
        for t in 0..n {
            if !pick.contains(&t) {
                pick.push(t);
                walk(n, depth, pick, f);
                pick.pop();
            }
        }
    }
    walk(n, sizes.len(), &mut pick, &mut |draw| {
        count += 1;
        total += &draw.iter().zip(&sizes).map(|(&t, &s)| urn.values()[t].pow(s as u32)).product::<ExactScalar>();
    });
    if count == 0 {
        return Err(Error::Precondition("word has more distinct letters than the urn has balls".into()));
    }
    Ok(total / ExactScalar::from_int(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> ExactScalar {
        ExactScalar::ratio(a, b)
    }

    #[test]
    fn urn_examples() {
        let urn = UrnSpec::alternating(4).unwrap();
        let r = urn_definetti_gap(&urn, &w("1,2")).unwrap();
        assert_eq!((r.lhs, r.rhs, r.gap), (q(-1, 3), q(0, 1), q(1, 3)));
        let urn = UrnSpec::new(vec![q(1, 2), q(3, 1), q(-2, 1)]).unwrap();
        assert!(urn_definetti_gap(&urn, &w("1,1")).unwrap().gap.is_zero());
        assert!(urn_definetti_gap(&urn, &w("1,2,3,1")).is_err());
    }

    #[test]
    fn balanced_urn_gap() {
        for n in (2..=64).step_by(2) {
            let r = urn_definetti_gap(&UrnSpec::alternating(n).unwrap(), &w("1,2")).unwrap();
            assert_eq!(r.gap, q(1, n as i64 - 1));
        }
        for n in (3..=63).step_by(2) {
            let r = urn_definetti_gap(&UrnSpec::alternating(n).unwrap(), &w("1,2")).unwrap();
            let n = n as i64;
            assert_eq!(r.gap, q(n + 1, n * n));
        }
    }

    #[test]
    fn power_sums_match_enumeration() {
        let urn = UrnSpec::new(vec![q(1, 2), q(3, 1), q(-2, 1), q(0, 1), q(5, 3)]).unwrap();
        for len in 1..=4 {
            for j in Word::all(len, 4) {
                let lhs = urn_definetti_gap(&urn, &j).unwrap().lhs;
                assert_eq!(lhs, urn_moment_by_enumeration(&urn, &j).unwrap(), "{j}");
            }
        }
    }

    #[test]
    fn sphere_examples() {
        let r = sphere_definetti_gap(7, &w("1,1")).unwrap();
        assert_eq!((r.lhs, r.gap), (q(1, 1), q(0, 1)));
        let r = sphere_definetti_gap(10, &w("1,1,1,1")).unwrap();
        assert_eq!((r.lhs, r.rhs, r.gap), (q(5, 2), q(3, 1), q(1, 2)));
        let r = sphere_definetti_gap(10, &w("1,1,2,2")).unwrap();
        assert_eq!((r.lhs, r.rhs, r.gap), (q(5, 6), q(1, 1), q(1, 6)));
        let r = sphere_definetti_gap(10, &w("1,2")).unwrap();
        assert!(r.lhs.is_zero() && r.rhs.is_zero());
        assert!(sphere_definetti_gap(3, &w("4")).is_err());
        for n in 1..=64i64 {
            let r = sphere_definetti_gap(n as u32, &w("1,1,1,1")).unwrap();
            assert_eq!(r.gap, q(6, n + 2));
        }
    }

    #[test]
    fn sphere_closed_form_matches_monte_carlo() {
        let cfg = McConfig::new(40_000, 11).unwrap();
        for (n, j) in [(10, "1,1,1,1"), (4, "1,1,2,2"), (3, "1,1,1,1,2,2"), (5, "1,2")] {
            let exact = sphere_definetti_gap(n, &w(j)).unwrap().lhs.to_f64();
            let est = sphere_moment_mc(n, &w(j), &cfg).unwrap();
            assert!(est.agrees_with(exact, 4.0), "n={n} {j}: {est:?} vs {exact}");
        }
    }
}
