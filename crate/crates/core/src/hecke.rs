//! The spherical Hecke algebra of GL(2) over a p-adic field, modeled
//! symbolically.
//!
//! Elements live in the additive basis 𝟙_m ∗ 𝟙_{i,i}, keyed by (m, i) with
//! coefficients in ℤ[q^{±1/2}]. The Satake transform carries the basis
//! element (m, i) to q^{m/2}·Symᵐ(t₁,t₂)·(t₁t₂)ⁱ, and all products are
//! transported through that isomorphism:
//!
//! ```text
//! (m, i) · (n, j) = Σ_{r=0}^{min(m,n)} q^r · (m+n-2r, i+j+r)
//! ```
//!
//! The witness that this rule is the right one is [`build_one_m`], which
//! reconstructs 𝟙_m from 𝟙_{m+1} = 𝟙_1∗𝟙_m − q·𝟙_{1,1}∗𝟙_{m−1} and must land
//! exactly on the basis element (m, 0).
//!
//! A second coordinate system indexes elements by Cartan cells (a, b),
//! a ≥ b, the double cosets K·diag(ϖᵃ, ϖᵇ)·K; [`to_cartan`] and
//! [`from_cartan`] convert losslessly in both directions.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qlaurent::{rational_pow, EvalError, QLaurent};

/// Basis key (m, i) for 𝟙_m ∗ 𝟙_{i,i}, or for Symᵐ·(t₁t₂)ⁱ on the symmetric
/// side. Ordered by i, then m; this is the canonical term order used for
/// display and serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisKey {
    pub m: u32,
    pub i: i32,
}

impl BasisKey {
    pub fn new(m: u32, i: i32) -> Self {
        BasisKey { m, i }
    }
}

impl Ord for BasisKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.i, self.m).cmp(&(other.i, other.m))
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn merge_term(terms: &mut BTreeMap<BasisKey, QLaurent>, key: BasisKey, value: &QLaurent) {
    if value.is_zero() {
        return;
    }
    let entry = terms.entry(key).or_insert_with(QLaurent::zero);
    *entry += value;
    if entry.is_zero() {
        terms.remove(&key);
    }
}

/// An element of the spherical Hecke algebra in the (m, i) basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<BasisKey, QLaurent>,
}

impl HeckeElement {
    pub fn new() -> Self {
        Self::default()
    }

    /// The basis element 𝟙_m ∗ 𝟙_{i,i} with coefficient 1.
    pub fn basis(m: u32, i: i32) -> Self {
        let mut e = Self::new();
        e.add_term(BasisKey::new(m, i), &QLaurent::one());
        e
    }

    /// The unit of the algebra, 𝟙_0 ∗ 𝟙_{0,0}.
    pub fn identity() -> Self {
        Self::basis(0, 0)
    }

    pub fn add_term(&mut self, key: BasisKey, value: &QLaurent) {
        merge_term(&mut self.terms, key, value);
    }

    pub fn coefficient(&self, key: BasisKey) -> QLaurent {
        self.terms.get(&key).cloned().unwrap_or_else(QLaurent::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &QLaurent)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiply every coefficient by a scalar from ℤ[q^{±1/2}].
    pub fn scale_q(&self, s: &QLaurent) -> Self {
        let mut out = Self::new();
        for (&key, c) in &self.terms {
            out.add_term(key, &(c * s));
        }
        out
    }
}

impl std::ops::Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, c);
        }
        out
    }
}

impl std::ops::Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        let minus_one = QLaurent::constant(-1);
        self + &rhs.scale_q(&minus_one)
    }
}

/// Convolution product, bilinear over the basis rule
/// (m, i)·(n, j) = Σ_{r=0}^{min(m,n)} q^r (m+n−2r, i+j+r).
pub fn convolve(f: &HeckeElement, g: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::new();
    for (kf, cf) in f.iter() {
        for (kg, cg) in g.iter() {
            let c = cf * cg;
            for r in 0..=kf.m.min(kg.m) {
                let key = BasisKey::new(kf.m + kg.m - 2 * r, kf.i + kg.i + r as i32);
                out.add_term(key, &c.mul_half_power(2 * i64::from(r)));
            }
        }
    }
    out
}

/// 𝟙_m as built by the recurrence 𝟙_{m+1} = 𝟙_1∗𝟙_m − q·𝟙_{1,1}∗𝟙_{m−1}
/// from 𝟙_0 and 𝟙_1. Always equals the basis element (m, 0); that equality
/// is the consistency check tying [`convolve`] to the defining recurrence.
pub fn build_one_m(m: u32) -> HeckeElement {
    let mut prev = HeckeElement::identity();
    if m == 0 {
        return prev;
    }
    let one_1 = HeckeElement::basis(1, 0);
    let one_11 = HeckeElement::basis(0, 1);
    let q = QLaurent::power(1);
    let mut cur = one_1.clone();
    for _ in 1..m {
        let next = &convolve(&one_1, &cur) - &convolve(&one_11, &prev).scale_q(&q);
        prev = cur;
        cur = next;
    }
    cur
}

/// A symmetric Laurent polynomial in t₁, t₂ written in the basis
/// Symᵐ(t₁,t₂)·(t₁t₂)ⁱ, with coefficients in ℤ[q^{±1/2}].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymLaurent {
    terms: BTreeMap<BasisKey, QLaurent>,
}

impl SymLaurent {
    pub fn new() -> Self {
        Self::default()
    }

    /// Symᵐ·(t₁t₂)ⁱ with coefficient 1.
    pub fn basis(m: u32, i: i32) -> Self {
        let mut e = Self::new();
        e.add_term(BasisKey::new(m, i), &QLaurent::one());
        e
    }

    pub fn one() -> Self {
        Self::basis(0, 0)
    }

    pub fn add_term(&mut self, key: BasisKey, value: &QLaurent) {
        merge_term(&mut self.terms, key, value);
    }

    pub fn coefficient(&self, key: BasisKey) -> QLaurent {
        self.terms.get(&key).cloned().unwrap_or_else(QLaurent::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &QLaurent)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale_q(&self, s: &QLaurent) -> Self {
        let mut out = Self::new();
        for (&key, c) in &self.terms {
            out.add_term(key, &(c * s));
        }
        out
    }

    /// True when no coefficient carries a q-power.
    pub fn is_q_free(&self) -> bool {
        self.terms.values().all(QLaurent::is_constant)
    }

    /// Substitute t₁ = α, t₂ = β, q = q_value and return the exact rational
    /// result. Half-integer q-powers demand a perfect-square q_value; zero
    /// bases meeting negative exponents are rejected.
    pub fn evaluate(
        &self,
        alpha: &BigRational,
        beta: &BigRational,
        q_value: &BigRational,
    ) -> Result<BigRational, EvalError> {
        let mut total = BigRational::zero();
        let det = alpha * beta;
        for (key, c) in &self.terms {
            let mut sym = BigRational::zero();
            for r in 0..=key.m {
                sym += rational_pow(alpha, i64::from(key.m - r))?
                    * rational_pow(beta, i64::from(r))?;
            }
            total += c.evaluate(q_value)? * sym * rational_pow(&det, i64::from(key.i))?;
        }
        Ok(total)
    }
}

impl std::ops::Add for &SymLaurent {
    type Output = SymLaurent;
    fn add(self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, c);
        }
        out
    }
}

impl std::ops::Sub for &SymLaurent {
    type Output = SymLaurent;
    fn sub(self, rhs: &SymLaurent) -> SymLaurent {
        let minus_one = QLaurent::constant(-1);
        self + &rhs.scale_q(&minus_one)
    }
}

/// Product in the Symᵐ·(t₁t₂)ⁱ basis, linearized by
/// Symᵃ·Symᵇ = Σ_{r=0}^{min(a,b)} Sym^{a+b−2r}·(t₁t₂)^r.
pub fn sym_multiply(p: &SymLaurent, r: &SymLaurent) -> SymLaurent {
    let mut out = SymLaurent::new();
    for (kp, cp) in p.iter() {
        for (kr, cr) in r.iter() {
            let c = cp * cr;
            for s in 0..=kp.m.min(kr.m) {
                let key = BasisKey::new(kp.m + kr.m - 2 * s, kp.i + kr.i + s as i32);
                out.add_term(key, &c);
            }
        }
    }
    out
}

/// The Satake transform: basis element (m, i) ↦ q^{m/2}·Symᵐ·(t₁t₂)ⁱ.
/// A ring isomorphism from ([`HeckeElement`], [`convolve`]) onto
/// ([`SymLaurent`], [`sym_multiply`]).
pub fn satake_forward(f: &HeckeElement) -> SymLaurent {
    let mut out = SymLaurent::new();
    for (&key, c) in f.iter() {
        out.add_term(key, &c.mul_half_power(i64::from(key.m)));
    }
    out
}

/// The inverse Satake transform: Symᵐ·(t₁t₂)ⁱ ↦ q^{−m/2}·(m, i).
pub fn satake_inverse(p: &SymLaurent) -> HeckeElement {
    let mut out = HeckeElement::new();
    for (&key, c) in p.iter() {
        out.add_term(key, &c.mul_half_power(-i64::from(key.m)));
    }
    out
}

/// Expand a symmetric Laurent polynomial into raw monomials
/// t₁^{e₁} t₂^{e₂} ↦ coefficient. Used to cross-check [`sym_multiply`]
/// against plain polynomial multiplication.
pub fn expand_monomials(p: &SymLaurent) -> BTreeMap<(i64, i64), QLaurent> {
    let mut out: BTreeMap<(i64, i64), QLaurent> = BTreeMap::new();
    for (key, c) in p.iter() {
        for r in 0..=i64::from(key.m) {
            let e = (
                i64::from(key.m) - r + i64::from(key.i),
                r + i64::from(key.i),
            );
            let entry = out.entry(e).or_insert_with(QLaurent::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

/// Cartan cell key (a, b) with a ≥ b, the double coset of diag(ϖᵃ, ϖᵇ).
/// Ordered by b, then a, mirroring the (m, i) term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanKey {
    pub a: i64,
    pub b: i64,
}

impl CartanKey {
    pub fn new(a: i64, b: i64) -> Self {
        assert!(a >= b, "Cartan key needs a >= b, got ({a},{b})");
        CartanKey { a, b }
    }
}

impl Ord for CartanKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.b, self.a).cmp(&(other.b, other.a))
    }
}

impl PartialOrd for CartanKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A Hecke element written against characteristic functions of single
/// Cartan cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CartanElement {
    terms: BTreeMap<CartanKey, QLaurent>,
}

impl CartanElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(a: i64, b: i64) -> Self {
        let mut e = Self::new();
        e.add_term(CartanKey::new(a, b), &QLaurent::one());
        e
    }

    pub fn add_term(&mut self, key: CartanKey, value: &QLaurent) {
        if value.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(QLaurent::zero);
        *entry += value;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, key: CartanKey) -> QLaurent {
        self.terms.get(&key).cloned().unwrap_or_else(QLaurent::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CartanKey, &QLaurent)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale_q(&self, s: &QLaurent) -> Self {
        let mut out = Self::new();
        for (&key, c) in &self.terms {
            out.add_term(key, &(c * s));
        }
        out
    }
}

/// Rewrite in Cartan coordinates: 𝟙_m ∗ 𝟙_{i,i} is the sum of the cells
/// (m−b'+i, b'+i) over 0 ≤ b' ≤ ⌊m/2⌋.
pub fn to_cartan(f: &HeckeElement) -> CartanElement {
    let mut out = CartanElement::new();
    for (key, c) in f.iter() {
        for bp in 0..=i64::from(key.m / 2) {
            let cell = CartanKey::new(
                i64::from(key.m) - bp + i64::from(key.i),
                bp + i64::from(key.i),
            );
            out.add_term(cell, c);
        }
    }
    out
}

/// Inverse of [`to_cartan`] by telescoping: the single cell (a, b) is
/// (a−b, b) − (a−b−2, b+1), where a basis key with negative first entry is
/// simply absent.
pub fn from_cartan(c: &CartanElement) -> HeckeElement {
    let mut out = HeckeElement::new();
    for (key, coeff) in c.iter() {
        let m = u32::try_from(key.a - key.b).expect("cell width fits in u32");
        let i = i32::try_from(key.b).expect("cell floor fits in i32");
        out.add_term(BasisKey::new(m, i), coeff);
        if m >= 2 {
            out.add_term(
                BasisKey::new(m - 2, i + 1),
                &coeff.scale(&BigInt::from(-1)),
            );
        }
    }
    out
}

/// One serialized term: basis key plus its coefficient as exact
/// (doubled-exponent, decimal-string) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub m: i64,
    pub i: i64,
    pub coeff: Vec<(i64, String)>,
}

/// Serialized element; `basis` is "sym-det" for the (m, i) basis or
/// "cartan" for cell coordinates (stored in the same m/i slots as a, b).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub basis: String,
    pub terms: Vec<TermRecord>,
}

pub const BASIS_SYM_DET: &str = "sym-det";
pub const BASIS_CARTAN: &str = "cartan";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("expected basis {expected:?}, found {found:?}")]
    BasisMismatch { expected: &'static str, found: String },
    #[error("coefficient {text:?} is not a decimal integer")]
    InvalidCoefficient { text: String },
    #[error("invalid basis key ({m}, {i})")]
    InvalidKey { m: i64, i: i64 },
}

fn coeff_to_pairs(c: &QLaurent) -> Vec<(i64, String)> {
    c.iter().map(|(&d, v)| (d, v.to_string())).collect()
}

fn pairs_to_coeff(pairs: &[(i64, String)]) -> Result<QLaurent, RecordError> {
    let mut c = QLaurent::zero();
    for (d, text) in pairs {
        let v: BigInt = text
            .parse()
            .map_err(|_| RecordError::InvalidCoefficient { text: text.clone() })?;
        c.add_term(*d, &v);
    }
    Ok(c)
}

impl HeckeElement {
    pub fn to_record(&self) -> ElementRecord {
        ElementRecord {
            basis: BASIS_SYM_DET.to_string(),
            terms: self
                .iter()
                .map(|(key, c)| TermRecord {
                    m: i64::from(key.m),
                    i: i64::from(key.i),
                    coeff: coeff_to_pairs(c),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &ElementRecord) -> Result<Self, RecordError> {
        if record.basis != BASIS_SYM_DET {
            return Err(RecordError::BasisMismatch {
                expected: BASIS_SYM_DET,
                found: record.basis.clone(),
            });
        }
        let mut out = Self::new();
        for term in &record.terms {
            let key = match (u32::try_from(term.m), i32::try_from(term.i)) {
                (Ok(m), Ok(i)) => BasisKey::new(m, i),
                _ => return Err(RecordError::InvalidKey { m: term.m, i: term.i }),
            };
            out.add_term(key, &pairs_to_coeff(&term.coeff)?);
        }
        Ok(out)
    }
}

impl CartanElement {
    pub fn to_record(&self) -> ElementRecord {
        ElementRecord {
            basis: BASIS_CARTAN.to_string(),
            terms: self
                .iter()
                .map(|(key, c)| TermRecord {
                    m: key.a,
                    i: key.b,
                    coeff: coeff_to_pairs(c),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &ElementRecord) -> Result<Self, RecordError> {
        if record.basis != BASIS_CARTAN {
            return Err(RecordError::BasisMismatch {
                expected: BASIS_CARTAN,
                found: record.basis.clone(),
            });
        }
        let mut out = Self::new();
        for term in &record.terms {
            if term.m < term.i {
                return Err(RecordError::InvalidKey { m: term.m, i: term.i });
            }
            out.add_term(CartanKey::new(term.m, term.i), &pairs_to_coeff(&term.coeff)?);
        }
        Ok(out)
    }
}

fn fmt_linear<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a QLaurent)>,
{
    let mut first = true;
    let mut empty = true;
    for (symbol, coeff) in terms {
        empty = false;
        let factor = coeff.display_as_factor();
        if first {
            write!(f, "{factor}{symbol}")?;
            first = false;
        } else if let Some(rest) = factor.strip_prefix('-') {
            write!(f, " - {rest}{symbol}")?;
        } else {
            write!(f, " + {factor}{symbol}")?;
        }
    }
    if empty {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.iter()
                .map(|(key, c)| (format!("1_{}*1_{{{},{}}}", key.m, key.i, key.i), c)),
        )
    }
}

impl fmt::Display for SymLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.iter().map(|(key, c)| {
                let symbol = match (key.m, key.i) {
                    (0, 0) => "1".to_string(),
                    (m, 0) => format!("Sym^{m}"),
                    (0, i) => format!("(t1t2)^{i}"),
                    (m, i) => format!("Sym^{m}*(t1t2)^{i}"),
                };
                (symbol, c)
            }),
        )
    }
}

impl fmt::Display for CartanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.iter()
                .map(|(key, c)| (format!("1_{{({},{})}}", key.a, key.b), c)),
        )
    }
}
