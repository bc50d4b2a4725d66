//! Partitioned functionals `ρ^(π)` built from a family of block values.

use crate::error::{Error, Result};
use crate::partitions::SetPartition;
use crate::scalar::ExactScalar;

use super::Species;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedValue {
    /// `Π_{V ∈ π} ρ(V)`.
    pub product: ExactScalar,
    /// Interval-removal evaluation; only for noncrossing `π`.
    pub nested: Option<ExactScalar>,
    /// The nested form written out, e.g. `ρ2(a1·ρ1(a2),a3)`.
    pub expression: Option<String>,
}

/// Evaluates `ρ^(π)` where `block_value(V)` gives `ρ^{(|V|)}` on the block
/// `V` (1-based positions, ascending).
pub fn partitioned_functional<F>(species: Species, pi: &SetPartition, block_value: F) -> Result<PartitionedValue>
where
    F: Fn(&[usize]) -> ExactScalar,
{
    if !species.lattice().contains(pi) {
        return Err(Error::Membership { family: format!("{}({})", species.lattice().name(), pi.ground_size()), item: pi.to_string() });
    }
    let blocks = pi.blocks();
    let product = blocks.iter().map(|b| block_value(b)).product();
    let (nested, expression) = match nested_evaluation(pi, &block_value) {
        Some((v, e)) => (Some(v), Some(e)),
        None => (None, None),
    };
    Ok(PartitionedValue { product, nested, expression })
}

struct Point {
    /// Original 1-based position.
    pos: usize,
    block: usize,
    factor: ExactScalar,
    text: String,
}

/// Repeatedly removes the leftmost block that is an interval of the remaining
/// points, folding `ρ(V)` into a neighbour. The neighbour is the one that was
/// adjacent to `V` before any removal if there is one (left first), otherwise
/// the left neighbour, otherwise the right one.
fn nested_evaluation<F>(pi: &SetPartition, block_value: &F) -> Option<(ExactScalar, String)>
where
    F: Fn(&[usize]) -> ExactScalar,
{
    if pi.ground_size() == 0 {
        return Some((ExactScalar::one(), String::new()));
    }
    if !pi.is_noncrossing() {
        return None;
    }
    let labels = pi.labels();
    let mut points: Vec<Point> = (0..labels.len())
        .map(|i| Point { pos: i + 1, block: labels[i] as usize, factor: ExactScalar::one(), text: format!("a{}", i + 1) })
        .collect();
    loop {
        let start = (0..points.len()).find(|&s| {
            let b = points[s].block;
            let end = s + points[s..].iter().take_while(|p| p.block == b).count();
            points[..s].iter().all(|p| p.block != b) && points[end..].iter().all(|p| p.block != b)
        })?;
        let b = points[start].block;
        let end = start + points[start..].iter().take_while(|p| p.block == b).count();
        let removed: Vec<Point> = points.drain(start..end).collect();
        let positions: Vec<usize> = removed.iter().map(|p| p.pos).collect();
        let value = removed.iter().fold(block_value(&positions), |acc, p| acc * &p.factor);
        let args: Vec<&str> = removed.iter().map(|p| p.text.as_str()).collect();
        let inner = format!("ρ{}({})", removed.len(), args.join(","));
        if points.is_empty() {
            return Some((value, inner));
        }
        let first = positions[0];
        let last = *positions.last().unwrap();
        let left = start.checked_sub(1);
        let right = (start < points.len()).then_some(start);
        let left_adjacent = left.filter(|&l| points[l].pos + 1 == first);
        let right_adjacent = right.filter(|&r| points[r].pos == last + 1);
        match left_adjacent.or(right_adjacent).or(left).or(right) {
            Some(t) if Some(t) == left => {
                points[t].text = format!("{}·{inner}", points[t].text);
                points[t].factor *= &value;
            }
            Some(t) => {
                points[t].text = format!("{inner}·{}", points[t].text);
                points[t].factor *= &value;
            }
            None => unreachable!("points is nonempty"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_all, enumerate_family, Category};

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn product_of_blocks() {
        let v = partitioned_functional(Species::Classical, &p("1,2|3"), |b| {
            ExactScalar::from_int(if b.len() == 2 { 5 } else { 7 })
        })
        .unwrap();
        assert_eq!(v.product, ExactScalar::from_int(35));
        assert_eq!(v.nested, Some(ExactScalar::from_int(35)));
    }

    #[test]
    fn full_partition_is_the_single_value() {
        let v = partitioned_functional(Species::Free, &SetPartition::full(4), |_| ExactScalar::ratio(3, 7)).unwrap();
        assert_eq!(v.product, ExactScalar::ratio(3, 7));
        assert_eq!(v.expression.as_deref(), Some("ρ4(a1,a2,a3,a4)"));
    }

    #[test]
    fn ten_point_nesting() {
        let pi = p("1,8,9,10|2,7|3,4,5|6");
        let v = partitioned_functional(Species::Free, &pi, |b| ExactScalar::from_int(b.iter().sum::<usize>() as i64)).unwrap();
        assert_eq!(v.expression.as_deref(), Some("ρ4(a1·ρ2(a2·ρ3(a3,a4,a5),ρ1(a6)·a7),a8,a9,a10)"));
        assert_eq!(v.product, ExactScalar::from_int(28 * 9 * 12 * 6));
        assert_eq!(v.nested, Some(v.product.clone()));
    }

    #[test]
    fn crossing_rejected_for_free() {
        let err = partitioned_functional(Species::Free, &p("1,3|2,4"), |_| ExactScalar::one()).unwrap_err();
        assert!(matches!(err, Error::Membership { .. }));
        let v = partitioned_functional(Species::Classical, &p("1,3|2,4"), |_| ExactScalar::from_int(2)).unwrap();
        assert_eq!(v.product, ExactScalar::from_int(4));
        assert_eq!(v.nested, None);
        assert!(partitioned_functional(Species::Half, &p("1,3|2,4"), |_| ExactScalar::one()).is_err());
    }

    #[test]
    fn nested_equals_product_on_noncrossing() {
        for k in 1..=8 {
            for pi in enumerate_family(Category::SPlus, k).unwrap() {
                let f = |b: &[usize]| ExactScalar::ratio(b.iter().map(|&x| x as i64 * x as i64).sum::<i64>() + 1, b.len() as i64 + 2);
                let v = partitioned_functional(Species::Free, &pi, f).unwrap();
                assert_eq!(v.nested.as_ref(), Some(&v.product), "{pi}");
            }
        }
        for pi in enumerate_all(5).unwrap() {
            let v = partitioned_functional(Species::Classical, &pi, |b| ExactScalar::from_int(b[0] as i64)).unwrap();
            assert_eq!(v.nested.is_some(), pi.is_noncrossing());
        }
    }
}
