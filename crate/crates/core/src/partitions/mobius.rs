//! Möbius functions of partition posets.
//!
//! The table route inverts the zeta matrix of the poset. Elements are ordered
//! by decreasing block count (stable on enumeration order); since `π < σ`
//! forces `|π| > |σ|`, zeta is unitriangular in that order.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{enumerate_all, enumerate_family, Category, SetPartition};
use crate::error::{Error, Result};

/// The poset a Möbius function is computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// The full partition lattice P(k).
    All,
    /// The family D(k) of a category, ordered by refinement.
    Family(Category),
}

impl Lattice {
    pub fn elements(self, k: usize) -> Result<Vec<SetPartition>> {
        match self {
            Lattice::All => enumerate_all(k),
            Lattice::Family(cat) => enumerate_family(cat, k),
        }
    }

    pub fn contains(self, pi: &SetPartition) -> bool {
        match self {
            Lattice::All => true,
            Lattice::Family(cat) => cat.contains(pi),
        }
    }

    pub fn name(self) -> String {
        match self {
            Lattice::All => "P".to_string(),
            Lattice::Family(cat) => cat.family_name().to_string(),
        }
    }

    /// The ambient lattice whose intervals contain D(k): NC for the free
    /// categories, Eₕ for the half-liberated ones, P for the classical ones.
    pub fn ambient(cat: Category) -> Lattice {
        if cat.is_free() {
            Lattice::Family(Category::SPlus)
        } else if cat.is_half_liberated() {
            Lattice::Family(Category::HStar)
        } else {
            Lattice::All
        }
    }
}

/// Full Möbius matrix of a poset of partitions.
#[derive(Debug, Clone)]
pub struct MobiusTable {
    elements: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    /// `mu[a][b]` with `a`, `b` indices into `elements`.
    mu: Vec<Vec<i64>>,
}

impl MobiusTable {
    /// Builds the table for an arbitrary list of partitions of a common ground
    /// set (the order of `elements` is kept for indexing).
    pub fn new(elements: Vec<SetPartition>) -> Self {
        let n = elements.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(elements[i].block_count()));
        let leq: Vec<Vec<bool>> = order
            .iter()
            .map(|&a| order.iter().map(|&b| elements[a].refines(&elements[b])).collect())
            .collect();
        // mu_sorted[a][b] over sorted positions; rows solved independently:
        // mu(a,a) = 1, mu(a,b) = -Σ_{a ≤ c < b} mu(a,c) for a < b.
        let mut mu_sorted = vec![vec![0i64; n]; n];
        for a in 0..n {
            mu_sorted[a][a] = 1;
            for b in a + 1..n {
                if !leq[a][b] {
                    continue;
                }
                let s: i64 = (a..b).filter(|&c| leq[a][c] && leq[c][b]).map(|c| mu_sorted[a][c]).sum();
                mu_sorted[a][b] = -s;
            }
        }
        let mut mu = vec![vec![0i64; n]; n];
        for (sa, &a) in order.iter().enumerate() {
            for (sb, &b) in order.iter().enumerate() {
                mu[a][b] = mu_sorted[sa][sb];
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        MobiusTable { elements, index, mu }
    }

    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    pub fn index_of(&self, pi: &SetPartition) -> Option<usize> {
        self.index.get(pi).copied()
    }

    pub fn get(&self, pi: &SetPartition, sigma: &SetPartition) -> Option<i64> {
        Some(self.mu[self.index_of(pi)?][self.index_of(sigma)?])
    }

    pub fn by_index(&self, a: usize, b: usize) -> i64 {
        self.mu[a][b]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mu
    }
}

type TableCache = RwLock<HashMap<(Lattice, usize), Arc<MobiusTable>>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached Möbius table for a lattice at ground size `k`.
pub fn mobius_table(lattice: Lattice, k: usize) -> Result<Arc<MobiusTable>> {
    if let Some(t) = table_cache().read().unwrap().get(&(lattice, k)) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(MobiusTable::new(lattice.elements(k)?));
    table_cache().write().unwrap().entry((lattice, k)).or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

fn check_member(lattice: Lattice, k: usize, pi: &SetPartition) -> Result<()> {
    if pi.ground_size() != k || !lattice.contains(pi) {
        return Err(Error::Membership { family: format!("{}({k})", lattice.name()), item: pi.to_string() });
    }
    Ok(())
}

/// μ(π, σ) computed inside the given poset at ground size `k`.
pub fn mobius(lattice: Lattice, k: usize, pi: &SetPartition, sigma: &SetPartition) -> Result<i64> {
    check_member(lattice, k, pi)?;
    check_member(lattice, k, sigma)?;
    let table = mobius_table(lattice, k)?;
    Ok(table.get(pi, sigma).expect("members are indexed"))
}

type ColumnCache = RwLock<HashMap<(Lattice, SetPartition), Arc<Vec<(SetPartition, i64)>>>>;

/// Column `π ↦ μ(π, top)` over all `π ≤ top` in the lattice, without building
/// the full table. Entries with `π ≰ top` are omitted.
pub fn mobius_column_to(lattice: Lattice, top: &SetPartition) -> Result<Arc<Vec<(SetPartition, i64)>>> {
    static CACHE: OnceLock<ColumnCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lattice, top.clone());
    if let Some(col) = cache.read().unwrap().get(&key) {
        return Ok(Arc::clone(col));
    }
    let k = top.ground_size();
    check_member(lattice, k, top)?;
    let mut below: Vec<SetPartition> = lattice.elements(k)?.into_iter().filter(|p| p.refines(top)).collect();
    // closest to the top first
    below.sort_by_key(|p| p.block_count());
    let mut values: Vec<i64> = Vec::with_capacity(below.len());
    for (i, pi) in below.iter().enumerate() {
        if pi == top {
            values.push(1);
            continue;
        }
        let s: i64 = (0..i).filter(|&j| below[j].block_count() < pi.block_count() && pi.refines(&below[j])).map(|j| values[j]).sum();
        values.push(-s);
    }
    let col = Arc::new(below.into_iter().zip(values).collect::<Vec<_>>());
    cache.write().unwrap().entry(key).or_insert_with(|| Arc::clone(&col));
    Ok(col)
}

/// μ by the alternating chain count: for `p < q`,
/// `μ(p,q) = -1 + Σ_{l≥1} (-1)^{l+1} #{p < p_1 < … < p_l < q}`.
/// Exponential in general; intended as an oracle for small posets.
pub fn mobius_by_chains(elements: &[SetPartition], p: &SetPartition, q: &SetPartition) -> i64 {
    if p == q {
        return 1;
    }
    if !p.refines(q) {
        return 0;
    }
    let strictly_between: Vec<&SetPartition> =
        elements.iter().filter(|x| *x != p && *x != q && p.refines(x) && x.refines(q)).collect();
    // chains[i][l] = number of chains p < … < x_i with x_i the l-th element
    let m = strictly_between.len();
    let mut sorted = strictly_between;
    sorted.sort_by_key(|x| std::cmp::Reverse(x.block_count()));
    let mut chains = vec![vec![0i64; m + 1]; m];
    for i in 0..m {
        chains[i][1] = 1;
        for j in 0..i {
            if sorted[j] != sorted[i] && sorted[j].refines(sorted[i]) {
                for l in 1..m {
                    chains[i][l + 1] += chains[j][l];
                }
            }
        }
    }
    let mut mu = -1i64;
    for l in 1..=m {
        let count: i64 = (0..m).map(|i| chains[i][l]).sum();
        mu += if l % 2 == 1 { count } else { -count };
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(mobius(Lattice::All, 2, &p("1|2"), &p("1,2")).unwrap(), -1);
        assert_eq!(mobius(Lattice::All, 3, &p("1|2|3"), &p("1,2,3")).unwrap(), 2);
        for x in enumerate_all(4).unwrap() {
            assert_eq!(mobius(Lattice::All, 4, &x, &x).unwrap(), 1);
        }
        assert_eq!(mobius(Lattice::All, 3, &p("1,2|3"), &p("1|2|3")).unwrap(), 0);
    }

    #[test]
    fn chain_oracle_examples() {
        let all3 = enumerate_all(3).unwrap();
        assert_eq!(mobius_by_chains(&all3, &p("1|2|3"), &p("1,2,3")), 2);
        let all2 = enumerate_all(2).unwrap();
        assert_eq!(mobius_by_chains(&all2, &p("1|2"), &p("1,2")), -1);
    }

    #[test]
    fn table_matches_chain_count() {
        for k in 1..=4 {
            for cat in Category::ALL {
                let els = enumerate_family(cat, k).unwrap();
                let table = MobiusTable::new(els.clone());
                for a in &els {
                    for b in &els {
                        assert_eq!(table.get(a, b).unwrap(), mobius_by_chains(&els, a, b), "{cat} {a} {b}");
                    }
                }
            }
        }
        let els = enumerate_all(5).unwrap();
        let table = MobiusTable::new(els.clone());
        let bottom = SetPartition::discrete(5);
        for b in &els {
            assert_eq!(table.get(&bottom, b).unwrap(), mobius_by_chains(&els, &bottom, b));
        }
    }

    /// μ_P(0_k, 1_k) = (-1)^{k-1} (k-1)!
    #[test]
    fn classical_bottom_to_top() {
        for k in 1..=6usize {
            let expected = if k % 2 == 1 { 1 } else { -1 } * (1..k as i64).product::<i64>();
            let mu = mobius(Lattice::All, k, &SetPartition::discrete(k), &SetPartition::full(k)).unwrap();
            assert_eq!(mu, expected);
        }
    }

    #[test]
    fn column_matches_table() {
        for k in 1..=6 {
            for lattice in [Lattice::All, Lattice::Family(Category::SPlus), Lattice::Family(Category::HStar)] {
                let top = SetPartition::full(k);
                if !lattice.contains(&top) {
                    continue;
                }
                let table = mobius_table(lattice, k).unwrap();
                for (pi, mu) in mobius_column_to(lattice, &top).unwrap().iter() {
                    assert_eq!(table.get(pi, &top).unwrap(), *mu);
                }
            }
        }
    }

    #[test]
    fn membership_errors() {
        let err = mobius(Lattice::Family(Category::O), 4, &p("1,3|2,4"), &p("1,2,3,4")).unwrap_err();
        assert!(matches!(err, Error::Membership { .. }));
        assert!(mobius(Lattice::Family(Category::SPlus), 4, &p("1,3|2,4"), &p("1,2,3,4")).is_err());
    }
}
