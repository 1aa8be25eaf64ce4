//! Partitions in a box: counting, enumeration, Gaussian binomial
//! coefficients, and the explicit bijection behind the difference
//! identities.
//!
//! Throughout, `p(j, k, n)` is the number of partitions of `n` into at most
//! `k` parts, each at most `j`. Its generating polynomial in q is the
//! Gaussian binomial coefficient `[j+k choose k]_q`, of degree `j·k`, with
//! symmetric unimodal coefficients. Everything is computed by the exact
//! recurrence
//!
//! ```text
//! p(j, k, n) = p(j, k-1, n) + p(j-1, k, n-k)
//! ```
//!
//! in big-integer arithmetic. There is no rational division anywhere.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigUint, One, Zero};
use thiserror::Error;

/// Default ceiling on how many partitions [`enumerate_partitions`] will list.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Largest-part bound up to which whole coefficient columns are cached.
/// Whole-vector consumers (tables, symmetry sweeps, multiplicity grids) stay
/// far below this; identity sweeps at large j only ever need a few isolated
/// coefficients per column, which are memoized individually instead.
const SNAPSHOT_MAX_J: u32 = 256;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing")]
    NotSorted,
    #[error("enumeration too large: {predicted} partitions exceeds cap {cap}")]
    EnumerationTooLarge { predicted: BigUint, cap: u64 },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("not in domain")]
    NotInDomain,
    #[error("excluded partition")]
    ExcludedPartition,
}

/// A partition in canonical form: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from a weakly decreasing list; trailing zeros are stripped.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotSorted);
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The finite set of partitions of `weight` with at most `max_parts` parts,
/// each at most `max_part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundedClass {
    pub max_part: u32,
    pub max_parts: u32,
    pub weight: u64,
}

impl BoundedClass {
    pub fn contains(&self, p: &Partition) -> bool {
        p.weight() == self.weight
            && p.num_parts() <= self.max_parts as usize
            && p.parts().first().map_or(true, |&x| x <= self.max_part)
    }

    pub fn count(&self) -> BigUint {
        count_partitions(self.max_part, self.max_parts, self.weight as i64)
    }

    pub fn enumerate(&self) -> Result<Vec<Partition>, PartitionError> {
        enumerate_partitions(self.max_part, self.max_parts, self.weight as i64)
    }
}

/// Incremental state of the box-counting recurrence for a fixed bound on the
/// number of parts.
///
/// `row[t]` always holds the full coefficient vector for the box
/// `swept × t`. Advancing the frontier by one largest-part unit applies the
/// recurrence across all t in one pass. Columns with small largest-part
/// bound are snapshotted whole; past the snapshot range only individually
/// requested coefficients are kept, and a checkpoint of the row at the
/// snapshot boundary lets a sweep restart cheaply when a later query comes
/// in below the current frontier.
struct Sweep {
    max_parts: u32,
    swept: u32,
    row: Vec<Vec<BigUint>>,
    checkpoint: Option<Vec<Vec<BigUint>>>,
    columns: Vec<Arc<Vec<BigUint>>>,
    points: HashMap<(u32, u64), BigUint>,
}

impl Sweep {
    fn new(max_parts: u32) -> Self {
        Sweep {
            max_parts,
            swept: 0,
            row: vec![vec![BigUint::one()]; max_parts as usize + 1],
            checkpoint: None,
            columns: vec![Arc::new(vec![BigUint::one()])],
            points: HashMap::new(),
        }
    }

    /// Move the frontier from `swept` to `swept + 1`.
    fn advance_one(&mut self) {
        let next_j = u64::from(self.swept) + 1;
        let mut new_row: Vec<Vec<BigUint>> = Vec::with_capacity(self.row.len());
        new_row.push(vec![BigUint::one()]);
        for t in 1..=self.max_parts as usize {
            let len = (next_j * t as u64 + 1) as usize;
            let mut col = Vec::with_capacity(len);
            for n in 0..len {
                let mut v = new_row[t - 1].get(n).cloned().unwrap_or_else(BigUint::zero);
                if n >= t {
                    if let Some(prev) = self.row[t].get(n - t) {
                        v += prev;
                    }
                }
                col.push(v);
            }
            new_row.push(col);
        }
        self.row = new_row;
        self.swept += 1;
        if self.swept as usize == self.columns.len() && self.swept <= SNAPSHOT_MAX_J {
            self.columns
                .push(Arc::new(self.row[self.max_parts as usize].clone()));
        }
        if self.swept == SNAPSHOT_MAX_J {
            self.checkpoint = Some(self.row.clone());
        }
    }

    /// Coefficient of q^n in the Gaussian polynomial for the box
    /// `max_part × max_parts`. Caller guarantees 0 ≤ n ≤ max_part·max_parts.
    fn coefficient(&mut self, max_part: u32, n: u64) -> BigUint {
        if (max_part as usize) < self.columns.len() {
            return self.columns[max_part as usize][n as usize].clone();
        }
        if max_part <= SNAPSHOT_MAX_J {
            while self.swept < max_part {
                self.advance_one();
            }
            return self.columns[max_part as usize][n as usize].clone();
        }
        if let Some(v) = self.points.get(&(max_part, n)) {
            return v.clone();
        }
        if self.swept > max_part {
            self.row = self
                .checkpoint
                .clone()
                .expect("frontier past snapshot range implies a checkpoint");
            self.swept = SNAPSHOT_MAX_J;
        }
        while self.swept < max_part {
            self.advance_one();
        }
        let v = self.row[self.max_parts as usize][n as usize].clone();
        self.points.insert((max_part, n), v.clone());
        v
    }

    /// Whole coefficient vector for the box `max_part × max_parts`.
    fn column(&mut self, max_part: u32) -> Arc<Vec<BigUint>> {
        if (max_part as usize) < self.columns.len() {
            return self.columns[max_part as usize].clone();
        }
        if max_part <= SNAPSHOT_MAX_J {
            while self.swept < max_part {
                self.advance_one();
            }
            return self.columns[max_part as usize].clone();
        }
        // Rare full-vector request beyond the snapshot range: build a
        // one-shot table without disturbing the shared frontier.
        let mut local = Sweep::new(self.max_parts);
        while local.swept < max_part {
            local.advance_one();
        }
        Arc::new(local.row.swap_remove(self.max_parts as usize))
    }
}

fn with_sweep<R>(max_parts: u32, f: impl FnOnce(&mut Sweep) -> R) -> R {
    static CACHE: OnceLock<Mutex<HashMap<u32, Sweep>>> = OnceLock::new();
    let mut cache = CACHE
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("partition cache poisoned");
    let sweep = cache
        .entry(max_parts)
        .or_insert_with(|| Sweep::new(max_parts));
    f(sweep)
}

/// p(j, k, n): partitions of n with at most k parts, each at most j.
///
/// Negative n counts zero partitions; n = 0 counts exactly the empty one.
pub fn count_partitions(max_part: u32, max_parts: u32, n: i64) -> BigUint {
    if n < 0 {
        return BigUint::zero();
    }
    if n == 0 {
        return BigUint::one();
    }
    if max_part == 0 || max_parts == 0 {
        return BigUint::zero();
    }
    if n as u128 > u128::from(max_part) * u128::from(max_parts) {
        return BigUint::zero();
    }
    with_sweep(max_parts, |s| s.coefficient(max_part, n as u64))
}

/// Coefficients of the Gaussian binomial `[j+k choose k]_q`, degree j·k.
///
/// Entry n is p(j, k, n). The sequence is symmetric: entry n equals entry
/// jk - n.
pub fn gaussian_coefficients(max_part: u32, max_parts: u32) -> Vec<BigInt> {
    with_sweep(max_parts, |s| s.column(max_part))
        .iter()
        .map(|c| BigInt::from(c.clone()))
        .collect()
}

/// Partitions of n into exactly `parts` parts, each between 1 and
/// `max_part`. Strips the first column of the Ferrers diagram:
/// the count equals p(max_part - 1, parts, n - parts).
pub fn count_exact_parts(max_part: u32, parts: u32, n: i64) -> BigUint {
    if parts == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if max_part == 0 {
        return BigUint::zero();
    }
    count_partitions(max_part - 1, parts, n - i64::from(parts))
}

/// All partitions of n with at most `max_parts` parts, each at most
/// `max_part`, in ascending lexicographic order of part sequences.
pub fn enumerate_partitions(
    max_part: u32,
    max_parts: u32,
    n: i64,
) -> Result<Vec<Partition>, PartitionError> {
    enumerate_partitions_with_cap(max_part, max_parts, n, DEFAULT_ENUMERATION_CAP)
}

/// [`enumerate_partitions`] with an explicit size cap. The predicted count
/// is checked before any partition is materialized.
pub fn enumerate_partitions_with_cap(
    max_part: u32,
    max_parts: u32,
    n: i64,
    cap: u64,
) -> Result<Vec<Partition>, PartitionError> {
    let predicted = count_partitions(max_part, max_parts, n);
    if predicted > BigUint::from(cap) {
        return Err(PartitionError::EnumerationTooLarge { predicted, cap });
    }
    let mut out = Vec::new();
    if n < 0 {
        return Ok(out);
    }
    let mut prefix = Vec::new();
    descend(n as u64, max_parts, max_part, &mut prefix, &mut out);
    Ok(out)
}

/// Emit, in ascending lexicographic order, every weakly decreasing way to
/// write `remaining` using at most `slots` parts bounded by `max_allowed`.
/// A candidate leading part t is feasible exactly when t·slots can still
/// reach the remaining weight.
fn descend(
    remaining: u64,
    slots: u32,
    max_allowed: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    let lo = remaining.div_ceil(u64::from(slots));
    let hi = u64::from(max_allowed).min(remaining);
    for t in lo..=hi {
        prefix.push(t as u32);
        descend(remaining - t, slots - 1, t as u32, prefix, out);
        prefix.pop();
    }
}

/// Which family of bounded classes the difference bijection acts on.
///
/// `P` maps partitions of 6ℓ-3 (parts ≤ 4ℓ-2) onto partitions of 6ℓ-4 with
/// the same bounds; `Q` maps partitions of 6ℓ (parts ≤ 4ℓ), minus the single
/// excluded partition (4ℓ, 2ℓ, 0), onto partitions of 6ℓ-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    P,
    Q,
}

/// Domain of the difference bijection for a given ℓ and direction.
pub fn bijection_domain(ell: u32, direction: Direction) -> BoundedClass {
    let ell = u64::from(ell);
    match direction {
        Direction::P => BoundedClass {
            max_part: (4 * ell - 2) as u32,
            max_parts: 3,
            weight: 6 * ell - 3,
        },
        Direction::Q => BoundedClass {
            max_part: (4 * ell) as u32,
            max_parts: 3,
            weight: 6 * ell,
        },
    }
}

/// Codomain of the difference bijection: same bounds, weight one less.
pub fn bijection_codomain(ell: u32, direction: Direction) -> BoundedClass {
    let mut class = bijection_domain(ell, direction);
    class.weight -= 1;
    class
}

/// The explicit weight-step bijection certifying the difference identities
/// p(4ℓ-2, 3, 6ℓ-3) = p(4ℓ-2, 3, 6ℓ-4) and
/// p(4ℓ, 3, 6ℓ) = p(4ℓ, 3, 6ℓ-1) + 1.
///
/// Input and output are explicit triples with zeros. In direction `Q` the
/// partition (4ℓ, 2ℓ, 0) has no image and is reported as excluded; anything
/// outside the stated class is not in the domain.
pub fn difference_bijection(
    ell: u32,
    direction: Direction,
    lambda: [u64; 3],
) -> Result<[u64; 3], BijectionError> {
    if ell == 0 {
        return Err(BijectionError::NotInDomain);
    }
    let [l1, l2, l3] = lambda;
    if l1 < l2 || l2 < l3 {
        return Err(BijectionError::NotInDomain);
    }
    let class = bijection_domain(ell, direction);
    if l1 + l2 + l3 != class.weight || l1 > u64::from(class.max_part) {
        return Err(BijectionError::NotInDomain);
    }
    let ell = u64::from(ell);
    match direction {
        Direction::P => {
            if l3 > 0 {
                Ok([l1, l2, l3 - 1])
            } else if l1 % 2 == 0 {
                // weight 6ℓ-3 is odd, so λ₂ is odd here
                Ok([l1, (l2 - 1) / 2, (l2 - 1) / 2])
            } else {
                Ok([l2, (l1 - 1) / 2, (l1 - 1) / 2])
            }
        }
        Direction::Q => {
            if lambda == [4 * ell, 2 * ell, 0] {
                Err(BijectionError::ExcludedPartition)
            } else if l3 > 0 {
                Ok([l1, l2, l3 - 1])
            } else if l1 % 2 == 1 {
                // weight 6ℓ is even, so λ₂ is odd here
                Ok([l1, (l2 - 1) / 2, (l2 - 1) / 2])
            } else {
                Ok([l2 - 1, l1 / 2, l1 / 2])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(j: u32, k: u32, n: i64) -> u64 {
        use num::ToPrimitive;
        count_partitions(j, k, n).to_u64().unwrap()
    }

    #[test]
    fn small_counts_match_direct_listings() {
        // partitions of 3 in a 3x3 box: (3), (2,1), (1,1,1)
        assert_eq!(count(3, 3, 3), 3);
        // partitions of 6 with at most 3 parts, each at most 4:
        // (4,2), (4,1,1), (3,3), (3,2,1), (2,2,2)
        assert_eq!(count(4, 3, 6), 5);
        assert_eq!(count(5, 4, 0), 1);
        assert_eq!(count(2, 3, -1), 0);
        assert_eq!(count(2, 3, 7), 0);
        assert_eq!(count(0, 5, 2), 0);
        assert_eq!(count(5, 0, 2), 0);
        assert_eq!(count(0, 0, 0), 1);
    }

    #[test]
    fn counts_agree_with_enumeration_lengths() {
        for j in 0..=7u32 {
            for k in 0..=7u32 {
                for n in 0..=(j * k) as i64 {
                    let listed = enumerate_partitions(j, k, n).unwrap().len() as u64;
                    assert_eq!(listed, count(j, k, n), "box ({j},{k}), weight {n}");
                }
            }
        }
    }

    #[test]
    fn box_symmetry_in_both_arguments() {
        for j in 0..=9u32 {
            for k in 0..=9u32 {
                for n in 0..=(j * k) as i64 {
                    assert_eq!(
                        count_partitions(j, k, n),
                        count_partitions(k, j, n),
                        "conjugation symmetry at ({j},{k},{n})"
                    );
                }
            }
        }
    }

    #[test]
    fn frontier_restart_reproduces_snapshot_range_answers() {
        // Force the frontier far past the snapshot range, then query below
        // it again; answers must match boxes that are wide enough to not
        // constrain the weight (p(j, 3, n) is independent of j once j ≥ n).
        let far = SNAPSHOT_MAX_J + 40;
        let mid = SNAPSHOT_MAX_J + 10;
        let a = count_partitions(far, 3, i64::from(far));
        let b = count_partitions(mid, 3, i64::from(mid));
        let c = count_partitions(mid, 3, i64::from(mid) - 1);
        assert_eq!(a, count_partitions(far + 20, 3, i64::from(far)));
        assert_eq!(b, count_partitions(mid + 20, 3, i64::from(mid)));
        assert_eq!(c, count_partitions(mid + 20, 3, i64::from(mid) - 1));
        // repeats hit the memoized point values
        assert_eq!(a, count_partitions(far, 3, i64::from(far)));
        assert_eq!(b, count_partitions(mid, 3, i64::from(mid)));
    }

    #[test]
    fn gaussian_cases() {
        let g = gaussian_coefficients(2, 2);
        let expected: Vec<BigInt> = [1, 1, 2, 1, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(g, expected);
        assert_eq!(gaussian_coefficients(0, 4), vec![BigInt::from(1)]);
        assert_eq!(gaussian_coefficients(4, 0), vec![BigInt::from(1)]);
        // degree jk and coefficient symmetry
        let g = gaussian_coefficients(3, 3);
        assert_eq!(g.len(), 10);
        for n in 0..g.len() {
            assert_eq!(g[n], g[g.len() - 1 - n]);
        }
    }

    #[test]
    fn enumeration_is_ascending_lexicographic() {
        let listed = enumerate_partitions(3, 3, 3).unwrap();
        let parts: Vec<&[u32]> = listed.iter().map(|p| p.parts()).collect();
        assert_eq!(parts, vec![&[1, 1, 1][..], &[2, 1][..], &[3][..]]);
        assert_eq!(
            enumerate_partitions(5, 4, 0).unwrap(),
            vec![Partition::new(vec![]).unwrap()]
        );
        assert_eq!(enumerate_partitions(1, 2, 3).unwrap(), vec![]);
        let mut sorted = listed.clone();
        sorted.sort();
        assert_eq!(listed, sorted);
    }

    #[test]
    fn enumeration_refuses_oversized_requests() {
        let err = enumerate_partitions_with_cap(40, 40, 500, 1000).unwrap_err();
        match err {
            PartitionError::EnumerationTooLarge { predicted, cap } => {
                assert_eq!(cap, 1000);
                assert!(predicted > BigUint::from(1000u32));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn exact_part_counts() {
        // partitions of 4 into exactly 2 parts each at most 3: (3,1), (2,2)
        assert_eq!(count_exact_parts(3, 2, 4), BigUint::from(2u32));
        // weight equal to the number of parts forces all parts equal to 1
        for k in 1..=6 {
            for j in 1..=6 {
                assert_eq!(count_exact_parts(k, j, i64::from(j)), BigUint::one());
            }
        }
        // weight too large for the box
        assert_eq!(count_exact_parts(2, 3, 7), BigUint::zero());
        assert_eq!(count_exact_parts(3, 2, 1), BigUint::zero());
    }

    #[test]
    fn exact_part_counts_match_filtered_enumeration() {
        for max_part in 1..=6u32 {
            for parts in 1..=6u32 {
                for n in 0..=(max_part * parts) as i64 {
                    let by_listing = enumerate_partitions(max_part, parts, n)
                        .unwrap()
                        .iter()
                        .filter(|p| p.num_parts() == parts as usize)
                        .count() as u64;
                    let by_formula = count_exact_parts(max_part, parts, n);
                    assert_eq!(
                        BigUint::from(by_listing),
                        by_formula,
                        "({max_part},{parts},{n})"
                    );
                }
            }
        }
    }

    #[test]
    fn bijection_case_examples() {
        // third part positive: decrement it
        assert_eq!(
            difference_bijection(1, Direction::Q, [3, 2, 1]),
            Ok([3, 2, 0])
        );
        // ℓ=1, P: λ₁ even splits λ₂ = 1 into two halves of (1-1)/2 = 0
        assert_eq!(
            difference_bijection(1, Direction::P, [2, 1, 0]),
            Ok([2, 0, 0])
        );
        // ℓ=2, P: λ₁ = 5 odd, image (λ₂, 2, 2)
        assert_eq!(
            difference_bijection(2, Direction::P, [5, 4, 0]),
            Ok([4, 2, 2])
        );
        // ℓ=1, Q: (4,2,0) is the single partition with no image
        assert_eq!(
            difference_bijection(1, Direction::Q, [4, 2, 0]),
            Err(BijectionError::ExcludedPartition)
        );
        // ℓ=2, Q with μ₁ even and not excluded: (6,6,0) → (μ₂-1, 3, 3)
        assert_eq!(
            difference_bijection(2, Direction::Q, [6, 6, 0]),
            Ok([5, 3, 3])
        );
        // ℓ=1, Q with μ₁ odd: (3,3,0) → (3, 1, 1)
        assert_eq!(
            difference_bijection(1, Direction::Q, [3, 3, 0]),
            Ok([3, 1, 1])
        );
    }

    #[test]
    fn bijection_rejects_out_of_class_input() {
        // weight 6 is never a P-weight (P weights are odd)
        assert_eq!(
            difference_bijection(1, Direction::P, [3, 2, 1]),
            Err(BijectionError::NotInDomain)
        );
        // not weakly decreasing
        assert_eq!(
            difference_bijection(1, Direction::Q, [2, 3, 1]),
            Err(BijectionError::NotInDomain)
        );
        // part exceeds the bound
        assert_eq!(
            difference_bijection(1, Direction::Q, [5, 1, 0]),
            Err(BijectionError::NotInDomain)
        );
        assert_eq!(
            difference_bijection(0, Direction::P, [0, 0, 0]),
            Err(BijectionError::NotInDomain)
        );
    }

    #[test]
    fn bijection_images_land_in_codomain() {
        for ell in 1..=6u32 {
            for &dir in &[Direction::P, Direction::Q] {
                let domain = bijection_domain(ell, dir);
                let codomain = bijection_codomain(ell, dir);
                for p in domain.enumerate().unwrap() {
                    let mut triple = [0u64; 3];
                    for (t, &part) in triple.iter_mut().zip(p.parts()) {
                        *t = u64::from(part);
                    }
                    match difference_bijection(ell, dir, triple) {
                        Ok(image) => {
                            let img =
                                Partition::new(image.iter().map(|&x| x as u32).collect()).unwrap();
                            assert!(
                                codomain.contains(&img),
                                "ℓ={ell} {dir:?} {triple:?}→{image:?}"
                            );
                        }
                        Err(BijectionError::ExcludedPartition) => {
                            assert_eq!(dir, Direction::Q);
                            assert_eq!(triple, [u64::from(ell) * 4, u64::from(ell) * 2, 0]);
                        }
                        Err(e) => panic!("unexpected {e:?} at ℓ={ell} {dir:?} {triple:?}"),
                    }
                }
            }
        }
    }
}
