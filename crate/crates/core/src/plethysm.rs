//! Multiplicities N(j, k, n) of Sym^{jk-2n} ⊗ det^n inside Sym^j(Sym^k) for
//! GL(2), by several independent routes:
//!
//! * generic: first difference of box-partition counts,
//! * closed and residue-table forms for k = 3,
//! * recursive and closed forms for k = 4,
//! * a brute-force character oracle that expands Sym^j(Sym^k(t₁,t₂))
//!   monomial by monomial and peels it into irreducibles.
//!
//! The routes share no code paths, so agreement between them is a real
//! consistency check and is exercised heavily by the verification suites.

use std::collections::BTreeMap;

use num::{BigInt, BigUint, CheckedSub, One, Zero};
use thiserror::Error;

use crate::partition::count_partitions;

/// Default ceiling on the number of monomial multisets the character oracle
/// will expand.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PlethysmError {
    #[error("out of range: n = {n} outside 0..={max} for j = {j}, k = {k}")]
    OutOfRange { j: u32, k: u32, n: i64, max: u64 },
    #[error("oracle too large: {predicted} multisets exceeds cap {cap}")]
    OracleTooLarge { predicted: BigUint, cap: u64 },
    #[error("not a nonnegative character")]
    NotNonnegativeCharacter,
}

fn out_of_range(j: u32, k: u32, n: i64, max: u64) -> PlethysmError {
    PlethysmError::OutOfRange { j, k, n, max }
}

/// N(j, k, n) = p(j, k, n) - p(j, k, n-1), with N(j, k, 0) = 1.
///
/// Valid for 0 ≤ n ≤ jk; negative past the midpoint or zero, by the
/// symmetry of the Gaussian coefficients.
pub fn multiplicity_generic(j: u32, k: u32, n: i64) -> Result<BigInt, PlethysmError> {
    let deg = u64::from(j) * u64::from(k);
    if n < 0 || n as u64 > deg {
        return Err(out_of_range(j, k, n, deg));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(BigInt::from(count_partitions(j, k, n)) - BigInt::from(count_partitions(j, k, n - 1)))
}

/// Coefficients of (1 - q) · Gaussian(j, k), all jk + 2 of them.
///
/// The prefix 0..⌊jk/2⌋ is the multiplicity vector; the tail is its
/// antisymmetric mirror, c_n = -c_{jk+1-n}.
pub fn signed_sequence(j: u32, k: u32) -> Vec<BigInt> {
    let gauss = crate::partition::gaussian_coefficients(j, k);
    let mut out = Vec::with_capacity(gauss.len() + 1);
    out.push(gauss[0].clone());
    for n in 1..gauss.len() {
        out.push(&gauss[n] - &gauss[n - 1]);
    }
    out.push(-gauss[gauss.len() - 1].clone());
    out
}

/// N(j, k, n) for n = 0 .. ⌊jk/2⌋, where all values are nonnegative.
pub fn multiplicity_vector(j: u32, k: u32) -> Vec<BigUint> {
    let deg = u64::from(j) * u64::from(k);
    let signed = signed_sequence(j, k);
    signed[..=(deg / 2) as usize]
        .iter()
        .map(|c| {
            c.to_biguint()
                .expect("multiplicities below the midpoint are nonnegative")
        })
        .collect()
}

fn k3_range(j: u32) -> u64 {
    3 * u64::from(j) / 2
}

/// Closed form for N(j, 3, n):
/// ⌊n/2⌋ - ⌊(n-1)/3⌋ for n ≤ j, with a correction term past n = j.
/// All floors are toward -∞, which makes n = 0 come out as 1 for free.
pub fn multiplicity_k3_closed(j: u32, n: i64) -> Result<BigInt, PlethysmError> {
    let max = k3_range(j);
    if n < 0 || n as u64 > max {
        return Err(out_of_range(j, 3, n, max));
    }
    let n = n as i128;
    let j = i128::from(j);
    let mut v = n.div_euclid(2) - (n - 1).div_euclid(3);
    if n > j {
        v -= (n - j - 1).div_euclid(2) + 1;
    }
    Ok(BigInt::from(v))
}

/// Residue-class form for N(j, 3, n): write n = 6a - b with b in 0..5 and
/// read the value off a case table split on n ≤ j and the parity of j.
pub fn multiplicity_k3_residue(j: u32, n: i64) -> Result<BigInt, PlethysmError> {
    let max = k3_range(j);
    if n < 0 || n as u64 > max {
        return Err(out_of_range(j, 3, n, max));
    }
    let n = n as i128;
    let j = i128::from(j);
    let a = (n + 5).div_euclid(6);
    let b = 6 * a - n;
    let v = if n <= j {
        match b {
            5 => a - 1,
            0 => a + 1,
            _ => a,
        }
    } else if j % 2 == 1 {
        (j + 1) / 2 - 2 * a + if b >= 3 { 1 } else { 0 }
    } else {
        j / 2 - 2 * a
            + match b {
                1 => 0,
                4 => 2,
                _ => 1,
            }
    };
    Ok(BigInt::from(v))
}

/// N(j, 4, n) as a short sum of k = 3 closed-form values: for n ≤ j it is
/// Σ_s N(j, 3, n-4s); for j < n ≤ 2j the same sum at a widened box minus a
/// boundary correction.
pub fn multiplicity_k4_recursive(j: u32, n: i64) -> Result<BigInt, PlethysmError> {
    let max = 2 * u64::from(j);
    if n < 0 || n as u64 > max {
        return Err(out_of_range(j, 4, n, max));
    }
    let mut total = BigInt::zero();
    if n as u64 <= u64::from(j) {
        let mut m = n;
        while m >= 0 {
            total += multiplicity_k3_closed(j, m)?;
            m -= 4;
        }
    } else {
        let wide = u32::try_from(n).expect("n ≤ 2j fits in u32 whenever j does");
        let mut m = n;
        while m >= 0 {
            total += multiplicity_k3_closed(wide, m)?;
            m -= 4;
        }
        for s in 0..=(n - i64::from(j) - 1) {
            total -= multiplicity_k3_closed(wide, s)?;
        }
    }
    Ok(total)
}

/// Closed form for N(j, 4, n) on the range n ≤ j: for even n = 12a + 2b it
/// is 3a(a+1)+1 when b = 0 and (3a+b)(a+1) otherwise; odd n ≥ 3 shifts down
/// by 3 to the even case, and n = 1 falls back to the recursive sum (which
/// is the single term N(j, 3, 1) = 0).
pub fn multiplicity_k4_closed(j: u32, n: i64) -> Result<BigInt, PlethysmError> {
    if n < 0 || n as u64 > u64::from(j) {
        return Err(out_of_range(j, 4, n, u64::from(j)));
    }
    if n == 1 {
        return multiplicity_k3_closed(j, 1);
    }
    let m = if n % 2 == 1 { n - 3 } else { n } as i128;
    let a = m.div_euclid(12);
    let b = (m - 12 * a) / 2;
    let v = if b == 0 {
        3 * a * (a + 1) + 1
    } else {
        (3 * a + b) * (a + 1)
    };
    Ok(BigInt::from(v))
}

/// The character of Sym^j(Sym^k(t₁, t₂)) as a symmetric polynomial in
/// t₁, t₂, indexed by exponent pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterPolynomial {
    terms: BTreeMap<(u64, u64), BigUint>,
}

impl CharacterPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, e1: u64, e2: u64, amount: impl Into<BigUint>) {
        let amount = amount.into();
        if amount.is_zero() {
            return;
        }
        *self.terms.entry((e1, e2)).or_insert_with(BigUint::zero) += amount;
    }

    pub fn coefficient(&self, e1: u64, e2: u64) -> BigUint {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u64, u64), &BigUint)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total coefficient mass, i.e. the dimension of the representation.
    pub fn mass(&self) -> BigUint {
        self.terms.values().sum()
    }
}

/// Σ_{r=0}^{m} t₁^{m-r} t₂^{r}, the character of Sym^m, twisted by det^i.
pub fn sym_character(m: u64, i: u64) -> CharacterPolynomial {
    let mut chi = CharacterPolynomial::new();
    for r in 0..=m {
        chi.add(m - r + i, r + i, 1u32);
    }
    chi
}

/// Brute-force expansion of Sym^j(Sym^k(t₁, t₂)): one monomial per multiset
/// {i₁ ≤ … ≤ i_j} ⊆ {0..k}, contributing t₁^{jk-Σi} t₂^{Σi}.
///
/// Deliberately independent of the partition-counting engine; this is the
/// ground-truth oracle the other routes are checked against.
pub fn plethysm_character(j: u32, k: u32) -> Result<CharacterPolynomial, PlethysmError> {
    plethysm_character_with_cap(j, k, DEFAULT_ORACLE_CAP)
}

/// [`plethysm_character`] with an explicit cap on binomial(j+k, k), the
/// number of multisets expanded.
pub fn plethysm_character_with_cap(
    j: u32,
    k: u32,
    cap: u64,
) -> Result<CharacterPolynomial, PlethysmError> {
    let predicted = num::integer::binomial(
        BigUint::from(u64::from(j) + u64::from(k)),
        BigUint::from(j.min(k)),
    );
    if predicted > BigUint::from(cap) {
        return Err(PlethysmError::OracleTooLarge { predicted, cap });
    }
    let jk = u64::from(j) * u64::from(k);
    let mut chi = CharacterPolynomial::new();
    let mut multiset = vec![0u32; j as usize];
    loop {
        let e2: u64 = multiset.iter().map(|&i| u64::from(i)).sum();
        chi.add(jk - e2, e2, 1u32);
        // advance the nondecreasing odometer
        match multiset.iter().rposition(|&i| i < k) {
            Some(pos) => {
                let next = multiset[pos] + 1;
                for slot in &mut multiset[pos..] {
                    *slot = next;
                }
            }
            None => break,
        }
    }
    Ok(chi)
}

/// Peel a symmetric character into Sym^m ⊗ det^i components by repeatedly
/// subtracting the lexicographically largest surviving monomial's orbit.
/// Triples (m, i, multiplicity) come out in peel order, i.e. descending in
/// m for a homogeneous character.
pub fn decompose_character(
    chi: &CharacterPolynomial,
) -> Result<Vec<(u64, u64, BigUint)>, PlethysmError> {
    let mut terms = chi.terms.clone();
    let mut out = Vec::new();
    while let Some((&(a, b), mult)) = terms.iter().next_back() {
        if a < b {
            return Err(PlethysmError::NotNonnegativeCharacter);
        }
        let mult = mult.clone();
        for r in 0..=(a - b) {
            let key = (a - r, b + r);
            let entry = terms
                .get_mut(&key)
                .ok_or(PlethysmError::NotNonnegativeCharacter)?;
            *entry = entry
                .checked_sub(&mult)
                .ok_or(PlethysmError::NotNonnegativeCharacter)?;
            if entry.is_zero() {
                terms.remove(&key);
            }
        }
        out.push((a - b, b, mult));
    }
    Ok(out)
}

/// N(j, k, n) for n = 0 .. ⌊jk/2⌋ straight from the character oracle.
pub fn oracle_multiplicities(j: u32, k: u32) -> Result<Vec<BigUint>, PlethysmError> {
    oracle_multiplicities_with_cap(j, k, DEFAULT_ORACLE_CAP)
}

pub fn oracle_multiplicities_with_cap(
    j: u32,
    k: u32,
    cap: u64,
) -> Result<Vec<BigUint>, PlethysmError> {
    let chi = plethysm_character_with_cap(j, k, cap)?;
    let triples = decompose_character(&chi)?;
    let jk = u64::from(j) * u64::from(k);
    let mut out = vec![BigUint::zero(); (jk / 2 + 1) as usize];
    for (m, i, mult) in triples {
        debug_assert_eq!(m + 2 * i, jk, "oracle output must be homogeneous");
        out[i as usize] = mult;
    }
    Ok(out)
}
