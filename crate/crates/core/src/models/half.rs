//! The 2×2 half-independence model `x_v = [[0, ξ_v], [ξ̄_v, 0]]` with
//! independent rotation-invariant complex `ξ_v`, evaluated symbolically.
//!
//! A product `x_{w₁} ⋯ x_{w_k}` of even length is diagonal with entries
//! `ξ_{w₁} ξ̄_{w₂} ξ_{w₃} ⋯` and its conjugate pattern; odd length gives an
//! antidiagonal matrix. With `E[ξᵃ ξ̄ᵇ] = δ_{ab} m_{2a}` the normalized trace
//! of the product is `Π_v δ(o_v = e_v) m_{2 o_v}(v)`, where `o_v`, `e_v` count
//! the letter `v` at odd and even positions.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::cumulants::{cumulants_to_moments, moments_to_cumulants, CumulantFamily, MomentFunctional, Species};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::word::Word;

/// Even moments `m₂, m₄, …` of `|ξ_v|`-powers, one sequence per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfModelSpec {
    moments: BTreeMap<u32, Vec<ExactScalar>>,
}

impl HalfModelSpec {
    /// Validates each sequence with [`is_stieltjes_moment_sequence`] on
    /// `1, m₂, m₄, …`.
    pub fn new(moments: BTreeMap<u32, Vec<ExactScalar>>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::EmptyInput("half model without variables"));
        }
        for (&v, seq) in &moments {
            if v == 0 {
                return Err(Error::Parse("variable labels start at 1".into()));
            }
            let mut s = vec![ExactScalar::one()];
            s.extend(seq.iter().cloned());
            if !is_stieltjes_moment_sequence(&s) {
                return Err(Error::Precondition(format!("moments of variable {v} fail Hankel positivity")));
            }
        }
        Ok(HalfModelSpec { moments })
    }

    /// Variables `1..=count`, all with the same even moments.
    pub fn identical(count: u32, even_moments: Vec<ExactScalar>) -> Result<Self> {
        Self::new((1..=count).map(|v| (v, even_moments.clone())).collect())
    }

    pub fn variables(&self) -> Vec<u32> {
        self.moments.keys().copied().collect()
    }

    /// `m_{2a}` of variable `v`, with `m_0 = 1`.
    pub fn even_moment(&self, v: u32, a: usize) -> Result<ExactScalar> {
        let seq = self.moments.get(&v).ok_or_else(|| Error::Precondition(format!("no moments given for variable {v}")))?;
        if a == 0 {
            return Ok(ExactScalar::one());
        }
        seq.get(a - 1).cloned().ok_or(Error::InsufficientOrder { needed: 2 * a, available: 2 * seq.len() })
    }

    /// Single-variable moment sequence `m_1, …, m_order` (odd ones zero).
    pub fn moment_sequence(&self, v: u32, order: usize) -> Result<Vec<ExactScalar>> {
        (1..=order)
            .map(|r| if r % 2 == 1 { Ok(ExactScalar::zero()) } else { self.even_moment(v, r / 2) })
            .collect()
    }
}

/// Stieltjes positivity of `s_0, s_1, …`: every principal minor of the Hankel
/// matrices `[s_{i+j}]` and `[s_{i+j+1}]` that fit in the data is nonnegative.
pub fn is_stieltjes_moment_sequence(s: &[ExactScalar]) -> bool {
    let hankel = |shift: usize| -> Vec<Vec<ExactScalar>> {
        if s.len() <= shift {
            return Vec::new();
        }
        let size = (s.len() - shift).div_ceil(2);
        (0..size).map(|i| (0..size).map(|j| s[i + j + shift].clone()).collect()).collect()
    };
    [hankel(0), hankel(1)].iter().all(|h| {
        let size = h.len();
        (1u32..1 << size).all(|mask| {
            let idx: Vec<usize> = (0..size).filter(|&i| mask >> i & 1 == 1).collect();
            let minor: Vec<Vec<ExactScalar>> = idx.iter().map(|&r| idx.iter().map(|&c| h[r][c].clone()).collect()).collect();
            !determinant(minor).is_negative()
        })
    })
}

fn determinant(mut m: Vec<Vec<ExactScalar>>) -> ExactScalar {
    let n = m.len();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactScalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= &delta;
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ParityForm {
    Normal(Word),
    Unbalanced,
}

/// Counts of each letter at (odd, even) positions.
fn parity_counts(w: &Word) -> BTreeMap<u32, (usize, usize)> {
    let mut counts: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for (pos, &l) in w.letters().iter().enumerate() {
        let e = counts.entry(l).or_default();
        if pos % 2 == 0 {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    counts
}

/// `x_{j₁}^{2a₁} ⋯ x_{j_m}^{2a_m}` with `j₁ < … < j_m`, reachable from `w` by
/// permuting odd positions among themselves and even positions among
/// themselves; [`ParityForm::Unbalanced`] when `ker w` is not balanced.
pub fn parity_normal_form(w: &Word) -> ParityForm {
    let counts = parity_counts(w);
    if counts.values().any(|&(o, e)| o != e) {
        return ParityForm::Unbalanced;
    }
    let mut letters = w.letters().to_vec();
    letters.sort_unstable();
    ParityForm::Normal(Word::new(letters).expect("letters of a word are positive"))
}

/// Normalized-trace moment of the word in the matrix model.
pub fn half_model_moment(spec: &HalfModelSpec, w: &Word) -> Result<ExactScalar> {
    let mut acc = ExactScalar::one();
    let mut vanishes = false;
    for (v, (odd, even)) in parity_counts(w) {
        if odd != even {
            if !spec.moments.contains_key(&v) {
                return Err(Error::Precondition(format!("no moments given for variable {v}")));
            }
            vanishes = true;
            continue;
        }
        acc *= &spec.even_moment(v, odd)?;
    }
    Ok(if vanishes { ExactScalar::zero() } else { acc })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfModelReport {
    pub holds: bool,
    pub words_checked: usize,
    pub max_discrepancy: ExactScalar,
    /// Word attaining the largest discrepancy, when it is nonzero.
    pub witness: Option<Word>,
}

/// Compares model moments with the half-liberated moment-cumulant prediction
/// on every word of length `1..=order_max` over the model's variables.
/// Each variable's cumulants come from its own moments; mixed cumulants are
/// zero.
pub fn half_model_vs_cumulants(spec: &HalfModelSpec, order_max: usize) -> Result<HalfModelReport> {
    let vars = spec.variables();
    let mut pure: BTreeMap<u32, Vec<ExactScalar>> = BTreeMap::new();
    for &v in &vars {
        let m = MomentFunctional::from_sequence(spec.moment_sequence(v, order_max)?);
        pure.insert(v, moments_to_cumulants(Species::Half, &m)?.sequence()?);
    }
    let mut words = Vec::new();
    for len in 1..=order_max {
        for idx in Word::all(len, vars.len() as u32) {
            let letters = idx.letters().iter().map(|&i| vars[i as usize - 1]).collect();
            words.push(Word::new(letters)?);
        }
    }
    let values = words
        .iter()
        .map(|w| {
            let v = if w.is_constant() { pure[&w.letters()[0]][w.len() - 1].clone() } else { ExactScalar::zero() };
            (w.clone(), v)
        })
        .collect();
    let predicted = cumulants_to_moments(&CumulantFamily::from_words(Species::Half, values)?)?;
    let mut max = ExactScalar::zero();
    let mut witness = None;
    for w in &words {
        let diff = (half_model_moment(spec, w)? - predicted.get(w)?).abs();
        if diff > max {
            max = diff;
            witness = Some(w.clone());
        }
    }
    Ok(HalfModelReport { holds: witness.is_none(), words_checked: words.len(), max_discrepancy: max, witness })
}

/// All words reachable by parity-preserving permutations (exhaustive search).
pub fn parity_orbit(w: &Word) -> HashSet<Word> {
    let mut seen = HashSet::from([w.clone()]);
    let mut stack = vec![w.clone()];
    while let Some(cur) = stack.pop() {
        let l = cur.letters();
        for a in 0..l.len() {
            for b in (a + 2..l.len()).step_by(2) {
                let mut next = l.to_vec();
                next.swap(a, b);
                let next = Word::new(next).expect("positive letters");
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ExactScalar::from_int(x)).collect()
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(parity_normal_form(&w("1,2,2,1")), ParityForm::Normal(w("1,1,2,2")));
        assert_eq!(parity_normal_form(&w("1,2,3")), ParityForm::Unbalanced);
        assert_eq!(parity_normal_form(&w("5,5")), ParityForm::Normal(w("5,5")));
        assert_eq!(parity_normal_form(&w("1,2,1,2")), ParityForm::Unbalanced);
    }

    /// The normal form is the lexicographically least word of the orbit.
    #[test]
    fn normal_form_matches_orbit_search() {
        for len in 0..=6 {
            for word in Word::all(len, 3) {
                let balanced = len == 0 || word.kernel().unwrap().is_balanced();
                match parity_normal_form(&word) {
                    ParityForm::Normal(nf) => {
                        assert!(balanced);
                        assert_eq!(parity_orbit(&word).into_iter().min().unwrap(), nf, "{word}");
                    }
                    ParityForm::Unbalanced => assert!(!balanced),
                }
            }
        }
    }

    #[test]
    fn model_examples() {
        let spec = HalfModelSpec::identical(2, ints(&[1, 2])).unwrap();
        assert_eq!(half_model_moment(&spec, &w("1,2,2,1")).unwrap(), ExactScalar::one());
        assert!(half_model_moment(&spec, &w("1")).unwrap().is_zero());
        assert!(half_model_moment(&spec, &w("1,2,1,2")).unwrap().is_zero());
        assert_eq!(half_model_moment(&spec, &w("1,1,1,1")).unwrap(), ExactScalar::from_int(2));
        assert_eq!(
            half_model_moment(&spec, &w("1,1,1,1,1,1")),
            Err(Error::InsufficientOrder { needed: 6, available: 4 })
        );
        assert!(half_model_moment(&spec, &w("3,3")).is_err());
    }

    #[test]
    fn hankel_check() {
        assert!(is_stieltjes_moment_sequence(&ints(&[1, 1, 2, 6, 24])));
        assert!(is_stieltjes_moment_sequence(&ints(&[1, 1, 3, 15])));
        // variance of |ξ|² would be negative
        assert!(!is_stieltjes_moment_sequence(&ints(&[1, 2, 3])));
        assert!(!is_stieltjes_moment_sequence(&ints(&[1, -1])));
        assert!(HalfModelSpec::identical(1, ints(&[2, 3])).is_err());
        assert_eq!(determinant(vec![ints(&[0, 1]), ints(&[1, 0])]), ExactScalar::from_int(-1));
    }

    #[test]
    fn model_agrees_with_cumulants() {
        let ray = HalfModelSpec::identical(2, ints(&[1, 2])).unwrap();
        let r = half_model_vs_cumulants(&ray, 4).unwrap();
        assert!(r.holds);
        assert_eq!(r.words_checked, 2 + 4 + 8 + 16);
        let mixed: BTreeMap<u32, Vec<ExactScalar>> =
            [(2, ints(&[1, 3, 15])), (5, vec![ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 2), ExactScalar::ratio(3, 4)])].into();
        assert!(half_model_vs_cumulants(&HalfModelSpec::new(mixed).unwrap(), 6).unwrap().holds);
    }
}
