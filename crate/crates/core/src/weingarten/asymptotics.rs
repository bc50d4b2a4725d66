//! Scaled Weingarten entries: the residual against the Möbius function, the
//! order-of-magnitude table, and the summed constant `C_k`.

use rayon::prelude::*;
use serde::Serialize;

use super::{build_table, weingarten_matrix, WeingartenTable};
use crate::config;
use crate::error::{Error, Result};
use crate::partitions::{join_block_count, Category, SetPartition};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairValue {
    pub pi: SetPartition,
    pub sigma: SetPartition,
    pub value: ExactScalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub category: Category,
    pub k: usize,
    pub n: u32,
    pub entries: Vec<PairValue>,
    pub max: ExactScalar,
    /// First pair (in enumeration order) attaining the maximum.
    pub argmax: Option<(SetPartition, SetPartition)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CkTraceEntry {
    pub n: u32,
    /// `n · Σ |n^{|π|} W(π,σ) − μ(π,σ)|`, absent when the Gram matrix is singular.
    pub value: Option<ExactScalar>,
    pub singular: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CkReport {
    pub category: Category,
    pub k: usize,
    pub n_max: u32,
    pub ck: ExactScalar,
    pub argmax_n: Option<u32>,
    pub trace: Vec<CkTraceEntry>,
}

/// `n^{|π|} W(π,σ) − μ(π,σ)` for indices `a`, `b` of the table.
fn scaled_difference(t: &WeingartenTable, a: usize, b: usize) -> ExactScalar {
    let scaled = ExactScalar::int_pow(t.n, t.partitions[a].block_count()) * &t.weingarten[a][b];
    scaled - ExactScalar::from_int(t.mobius_matrix[a][b])
}

fn residual_from_table(t: &WeingartenTable) -> ResidualReport {
    let mut entries = Vec::new();
    let mut max = ExactScalar::zero();
    let mut argmax = None;
    for a in 0..t.size() {
        for b in 0..t.size() {
            if !t.partitions[a].refines(&t.partitions[b]) {
                continue;
            }
            let value = scaled_difference(t, a, b).abs();
            if argmax.is_none() || value > max {
                max = value.clone();
                argmax = Some((t.partitions[a].clone(), t.partitions[b].clone()));
            }
            entries.push(PairValue { pi: t.partitions[a].clone(), sigma: t.partitions[b].clone(), value });
        }
    }
    ResidualReport { category: t.category, k: t.k, n: t.n, entries, max, argmax }
}

/// `|n^{|π|} W(π,σ) − μ_{D(k)}(π,σ)|` over every comparable pair `π ≤ σ`.
pub fn asymptotic_residual(cat: Category, k: usize, n: u32) -> Result<ResidualReport> {
    let t = weingarten_matrix(cat, k, n)?;
    Ok(residual_from_table(&t))
}

/// `|W(π,σ)| · n^{|π|+|σ|−|π∨σ|}` over all pairs.
pub fn order_bound_table(cat: Category, k: usize, n: u32) -> Result<Vec<PairValue>> {
    let t = weingarten_matrix(cat, k, n)?;
    let mut out = Vec::with_capacity(t.size() * t.size());
    for (a, pi) in t.partitions.iter().enumerate() {
        for (b, sigma) in t.partitions.iter().enumerate() {
            let exponent = (pi.block_count() + sigma.block_count()) as i64 - join_block_count(pi, sigma) as i64;
            let scale = if exponent >= 0 {
                ExactScalar::int_pow(n, exponent as usize)
            } else {
                ExactScalar::int_pow(n, (-exponent) as usize).recip()
            };
            out.push(PairValue { pi: pi.clone(), sigma: sigma.clone(), value: t.weingarten[a][b].abs() * scale });
        }
    }
    Ok(out)
}

fn summed_residual(t: &WeingartenTable) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for a in 0..t.size() {
        for b in 0..t.size() {
            acc += scaled_difference(t, a, b).abs();
        }
    }
    acc * ExactScalar::from_int(t.n as i64)
}

/// Scans `n = 1..=n_max` for `n · Σ_{π,σ} |n^{|π|} W(π,σ) − μ(π,σ)|` and
/// reports the maximum. Singular `n` are skipped and marked in the trace.
pub fn ck_constant(cat: Category, k: usize, n_max: u32) -> Result<CkReport> {
    config::check_k(k)?;
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be a positive integer".into()));
    }
    let trace = (1..=n_max)
        .into_par_iter()
        .map(|n| match build_table(cat, k, n) {
            Ok(t) => Ok(CkTraceEntry { n, value: Some(summed_residual(&t)), singular: false }),
            Err(Error::Singular { .. }) => Ok(CkTraceEntry { n, value: None, singular: true }),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ck = ExactScalar::zero();
    let mut argmax_n = None;
    for entry in &trace {
        if let Some(v) = &entry.value {
            if argmax_n.is_none() || *v > ck {
                ck = v.clone();
                argmax_n = Some(entry.n);
            }
        }
    }
    Ok(CkReport { category: cat, k, n_max, ck, argmax_n, trace })
}
