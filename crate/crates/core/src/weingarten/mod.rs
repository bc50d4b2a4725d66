//! Gram and Weingarten matrices of the partition families, and Haar-state
//! integrals of coordinate monomials.
//!
//! For a category with family D(k), the Gram matrix is
//! `G(π, σ) = n^{|π ∨ σ|}` over `π, σ ∈ D(k)` and the Weingarten matrix is its
//! inverse. The Haar integral of `u_{i₁j₁} ⋯ u_{i_k j_k}` is the sum of
//! `W(π, σ)` over `π ≤ ker i`, `σ ≤ ker j`.

mod asymptotics;
pub mod linalg;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::config;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_all, enumerate_family, join, mobius_table, Category, Lattice, SetPartition};
use crate::scalar::ExactScalar;
use crate::word::Word;

pub use asymptotics::{asymptotic_residual, ck_constant, order_bound_table, CkReport, CkTraceEntry, PairValue, ResidualReport};

/// Exact Gram matrix, its inverse and the Möbius matrix of D(k), for fixed
/// `(category, k, n)`.
#[derive(Debug, Clone, Serialize)]
pub struct WeingartenTable {
    pub category: Category,
    pub k: usize,
    pub n: u32,
    pub partitions: Vec<SetPartition>,
    pub gram: Vec<Vec<ExactScalar>>,
    pub weingarten: Vec<Vec<ExactScalar>>,
    pub mobius_matrix: Vec<Vec<i64>>,
    #[serde(skip)]
    scaled: ScaledInverse,
}

/// `W = entries / scale` with integer entries.
#[derive(Debug, Clone, Default)]
struct ScaledInverse {
    entries: Vec<Vec<BigInt>>,
    scale: BigInt,
}

impl ScaledInverse {
    fn integrate(&self, parts: &[SetPartition], ker_i: &SetPartition, ker_j: &SetPartition) -> ExactScalar {
        let cols: Vec<usize> = (0..parts.len()).filter(|&b| parts[b].refines(ker_j)).collect();
        let mut acc = BigInt::from(0);
        for (a, pi) in parts.iter().enumerate() {
            if pi.refines(ker_i) {
                for &b in &cols {
                    acc += &self.entries[a][b];
                }
            }
        }
        ExactScalar::from_bigints(acc, self.scale.clone())
    }
}

impl WeingartenTable {
    pub fn size(&self) -> usize {
        self.partitions.len()
    }

    /// Sum of `W(π, σ)` over `π ≤ ker_i`, `σ ≤ ker_j`.
    pub fn integrate_kernels(&self, ker_i: &SetPartition, ker_j: &SetPartition) -> ExactScalar {
        self.scaled.integrate(&self.partitions, ker_i, ker_j)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serialises")
    }
}

fn gram_integers(parts: &[SetPartition], n: u32) -> Vec<Vec<BigInt>> {
    let k = parts.first().map_or(0, SetPartition::ground_size);
    let powers: Vec<BigInt> = (0..=k).map(|e| num_traits::pow(BigInt::from(n), e)).collect();
    parts
        .iter()
        .map(|a| parts.iter().map(|b| powers[crate::partitions::join_block_count(a, b)].clone()).collect())
        .collect()
}

/// `G(π, σ) = n^{|π ∨ σ|}` over D(k), in enumeration order.
pub fn gram(cat: Category, k: usize, n: u32) -> Result<Vec<Vec<ExactScalar>>> {
    check_n(n)?;
    let parts = enumerate_family(cat, k)?;
    Ok(gram_integers(&parts, n)
        .into_iter()
        .map(|row| row.into_iter().map(ExactScalar::from_bigint).collect())
        .collect())
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be a positive integer".into()));
    }
    Ok(())
}

/// Builds the full table by exact inversion (uncached).
pub fn build_table(cat: Category, k: usize, n: u32) -> Result<WeingartenTable> {
    check_n(n)?;
    let partitions = enumerate_family(cat, k)?;
    let ints = gram_integers(&partitions, n);
    let (entries, scale) = linalg::invert_integer_matrix_scaled(&ints).ok_or(Error::Singular { cat, k, n })?;
    let weingarten = entries
        .iter()
        .map(|row| row.iter().map(|x| ExactScalar::from_bigints(x.clone(), scale.clone())).collect())
        .collect();
    let scaled = ScaledInverse { entries, scale };
    let gram = ints.into_iter().map(|row| row.into_iter().map(ExactScalar::from_bigint).collect()).collect();
    let mobius_matrix = mobius_table(Lattice::Family(cat), k)?.matrix().to_vec();
    Ok(WeingartenTable { category: cat, k, n, partitions, gram, weingarten, mobius_matrix, scaled })
}

/// Memo of tables keyed by `(category, k, n)`.
///
/// Concurrent lookups are safe; two threads missing the same key may both
/// build the table, and the first insertion wins (results are identical).
#[derive(Default)]
pub struct TableCache {
    tables: RwLock<HashMap<(Category, usize, u32), Arc<WeingartenTable>>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, cat: Category, k: usize, n: u32) -> Result<Arc<WeingartenTable>> {
        if let Some(t) = self.tables.read().unwrap().get(&(cat, k, n)) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(build_table(cat, k, n)?);
        let mut guard = self.tables.write().unwrap();
        Ok(Arc::clone(guard.entry((cat, k, n)).or_insert(table)))
    }

    pub fn len(&self) -> usize {
        self.tables.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn global_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(TableCache::new)
}

/// Cached Weingarten table; fails with [`Error::Singular`] when the Gram
/// matrix is not invertible at this `n`.
pub fn weingarten_matrix(cat: Category, k: usize, n: u32) -> Result<Arc<WeingartenTable>> {
    global_cache().get(cat, k, n)
}

/// Haar integral over the kernel classes of the two index words. `k = 0`
/// gives 1 and an empty family gives 0.
pub fn haar_integral_kernels(cat: Category, n: u32, ker_i: &SetPartition, ker_j: &SetPartition) -> Result<ExactScalar> {
    if ker_i.ground_size() != ker_j.ground_size() {
        return Err(Error::LengthMismatch { left: ker_i.ground_size(), right: ker_j.ground_size() });
    }
    let k = ker_i.ground_size();
    config::check_k(k)?;
    check_n(n)?;
    if k == 0 {
        return Ok(ExactScalar::one());
    }
    if enumerate_family(cat, k)?.is_empty() {
        return Ok(ExactScalar::zero());
    }
    if matches!(cat, Category::S | Category::H) && k > n as usize {
        return reduced_integral(cat, k, n, ker_i, ker_j);
    }
    Ok(weingarten_matrix(cat, k, n)?.integrate_kernels(ker_i, ker_j))
}

/// For families closed under coarsening, the vectors of partitions with at
/// most `n` blocks form a basis of the fixed space, so the integral can be
/// taken against the inverse of their Gram matrix. The full Gram matrix is
/// singular once some partition has more than `n` blocks.
fn reduced_integral(cat: Category, k: usize, n: u32, ker_i: &SetPartition, ker_j: &SetPartition) -> Result<ExactScalar> {
    type Reduced = Arc<(Vec<SetPartition>, ScaledInverse)>;
    type ReducedCache = RwLock<HashMap<(Category, usize, u32), Reduced>>;
    static CACHE: OnceLock<ReducedCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let cached = cache.read().expect("cache lock").get(&(cat, k, n)).cloned();
    let reduced = match cached {
        Some(r) => r,
        None => {
            let basis: Vec<SetPartition> =
                enumerate_family(cat, k)?.into_iter().filter(|p| p.block_count() <= n as usize).collect();
            let inverse = if basis.is_empty() {
                ScaledInverse { entries: Vec::new(), scale: BigInt::from(1) }
            } else {
                let (entries, scale) =
                    linalg::invert_integer_matrix_scaled(&gram_integers(&basis, n)).ok_or(Error::Singular { cat, k, n })?;
                ScaledInverse { entries, scale }
            };
            let r: Reduced = Arc::new((basis, inverse));
            cache.write().expect("cache lock").entry((cat, k, n)).or_insert(r).clone()
        }
    };
    let (basis, inverse) = &*reduced;
    Ok(inverse.integrate(basis, ker_i, ker_j))
}

/// `∫ u_{i₁j₁} ⋯ u_{i_k j_k}` over the easy quantum group of the category.
pub fn haar_integral(cat: Category, n: u32, i: &Word, j: &Word) -> Result<ExactScalar> {
    if i.len() != j.len() {
        return Err(Error::LengthMismatch { left: i.len(), right: j.len() });
    }
    i.check_range(n)?;
    j.check_range(n)?;
    if i.is_empty() {
        check_n(n)?;
        return Ok(ExactScalar::one());
    }
    haar_integral_kernels(cat, n, &i.kernel()?, &j.kernel()?)
}

fn falling_factorial(n: u32, r: usize) -> ExactScalar {
    (0..r).map(|t| ExactScalar::from_int(n as i64 - t as i64)).product()
}

/// `Σ_{i ∈ [n]^k, π ≤ ker i} ∫ u_{i₁j₁} ⋯ u_{i_k j_k}`, grouping the `i`-words
/// by kernel (there are `n(n-1)⋯(n-|κ|+1)` words with kernel exactly `κ`).
pub fn fixed_point_sum(cat: Category, n: u32, pi: &SetPartition, j: &Word) -> Result<ExactScalar> {
    let k = pi.ground_size();
    if j.len() != k {
        return Err(Error::LengthMismatch { left: k, right: j.len() });
    }
    j.check_range(n)?;
    if k == 0 {
        return Ok(ExactScalar::one());
    }
    let ker_j = j.kernel()?;
    let mut acc = ExactScalar::zero();
    for kappa in enumerate_all(k)? {
        if kappa.block_count() > n as usize || !pi.refines(&kappa) {
            continue;
        }
        let integral = haar_integral_kernels(cat, n, &kappa, &ker_j)?;
        acc += falling_factorial(n, kappa.block_count()) * integral;
    }
    Ok(acc)
}

/// Checks `G` is symmetric with diagonal `n^{|π|}` and entries `n^{|π∨σ|}`.
pub fn gram_invariants_hold(table: &WeingartenTable) -> bool {
    let size = table.size();
    (0..size).all(|a| {
        (0..size).all(|b| {
            let joined = join(&table.partitions[a], &table.partitions[b]).expect("same ground size");
            table.gram[a][b] == ExactScalar::int_pow(table.n, joined.block_count()) && table.gram[a][b] == table.gram[b][a]
        }) && table.gram[a][a] == ExactScalar::int_pow(table.n, table.partitions[a].block_count())
    })
}
