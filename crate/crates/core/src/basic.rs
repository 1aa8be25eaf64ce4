//! Truncated basic functions for Sym³ and Sym⁴ of GL(2).
//!
//! The degree-j operator is a finite sum over n of N(j, k, n)·qⁿ times the
//! basis element (jk−2n, n); the series term additionally carries the
//! prefactor q^{−jk/2}. Under the Satake transform each term becomes the
//! full character of Sym^j(Sym^k) with every q-power cancelling — that
//! cancellation, the plethysm oracle, and the Euler-product expansion give
//! three independent handles on the same object, and the test suites pin
//! them against each other.

use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hecke::{
    satake_forward, to_cartan, BasisKey, ElementRecord, HeckeElement,
};
use crate::plethysm::{
    multiplicity_generic, multiplicity_k3_closed, multiplicity_k4_recursive,
};
use crate::qlaurent::{rational_pow, EvalError, QLaurent};

/// Which symmetric-power lift is being built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymTarget {
    Sym3,
    Sym4,
}

impl SymTarget {
    pub fn k(self) -> u32 {
        match self {
            SymTarget::Sym3 => 3,
            SymTarget::Sym4 => 4,
        }
    }
}

/// How the det-power index i(n) on the basis keys is chosen.
///
/// `DegreeConsistent` uses i(n) = n, which keeps every term homogeneous of
/// degree jk after the Satake transform; it is the default and the only
/// convention the trace machinery accepts. `AsPrinted` uses i(n) = jk − n
/// and exists for side-by-side comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExponentConvention {
    #[default]
    DegreeConsistent,
    AsPrinted,
}

impl ExponentConvention {
    pub fn label(self) -> &'static str {
        match self {
            ExponentConvention::DegreeConsistent => "degree-consistent",
            ExponentConvention::AsPrinted => "as-printed",
        }
    }
}

/// Where the multiplicity coefficients N(j, k, n) come from: the closed
/// forms (fast path) or the generic partition-difference route (debug
/// cross-check).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoefficientRoute {
    #[default]
    Closed,
    Generic,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BasicError {
    #[error("residual q-dependence in term {j}")]
    ResidualQDependence { j: u32 },
    #[error("trace requires the degree-consistent convention")]
    WrongConvention,
    #[error("Satake parameters must be nonzero")]
    ZeroSatakeParameter,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn operator(j: u32, target: SymTarget, convention: ExponentConvention, route: CoefficientRoute) -> HeckeElement {
    let k = target.k();
    let jk = j * k;
    let mut out = HeckeElement::new();
    for n in 0..=jk / 2 {
        let nn = match (route, target) {
            (CoefficientRoute::Generic, _) => multiplicity_generic(j, k, i64::from(n)),
            (CoefficientRoute::Closed, SymTarget::Sym3) => {
                multiplicity_k3_closed(j, i64::from(n))
            }
            (CoefficientRoute::Closed, SymTarget::Sym4) => {
                multiplicity_k4_recursive(j, i64::from(n))
            }
        }
        .expect("n stays inside the multiplicity range");
        if nn.is_zero() {
            continue;
        }
        let i = match convention {
            ExponentConvention::DegreeConsistent => n,
            ExponentConvention::AsPrinted => jk - n,
        };
        let key = BasisKey::new(jk - 2 * n, i32::try_from(i).expect("index fits in i32"));
        out.add_term(key, &QLaurent::monomial(2 * i64::from(n), nn));
    }
    out
}

/// The degree-j Hecke operator feeding the Sym³ basic function:
/// Σ_n N(j, 3, n)·qⁿ·(3j−2n, n), degree-consistent, closed-form N.
pub fn hecke_operator_sym3(j: u32) -> HeckeElement {
    operator(j, SymTarget::Sym3, ExponentConvention::default(), CoefficientRoute::default())
}

/// [`hecke_operator_sym3`] with explicit convention and coefficient route.
pub fn hecke_operator_sym3_via(
    j: u32,
    convention: ExponentConvention,
    route: CoefficientRoute,
) -> HeckeElement {
    operator(j, SymTarget::Sym3, convention, route)
}

/// The degree-j Hecke operator feeding the Sym⁴ basic function:
/// Σ_n N(j, 4, n)·qⁿ·(4j−2n, n), degree-consistent, closed-form N.
pub fn hecke_operator_sym4(j: u32) -> HeckeElement {
    operator(j, SymTarget::Sym4, ExponentConvention::default(), CoefficientRoute::default())
}

/// [`hecke_operator_sym4`] with explicit convention and coefficient route.
pub fn hecke_operator_sym4_via(
    j: u32,
    convention: ExponentConvention,
    route: CoefficientRoute,
) -> HeckeElement {
    operator(j, SymTarget::Sym4, convention, route)
}

/// The basic function truncated at grading index maxJ: term j is
/// q^{−jk/2} times the degree-j operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicFunctionSeries {
    target: SymTarget,
    max_j: u32,
    convention: ExponentConvention,
    terms: Vec<HeckeElement>,
}

impl BasicFunctionSeries {
    pub fn target(&self) -> SymTarget {
        self.target
    }

    pub fn k(&self) -> u32 {
        self.target.k()
    }

    pub fn max_j(&self) -> u32 {
        self.max_j
    }

    pub fn convention(&self) -> ExponentConvention {
        self.convention
    }

    /// The full j-th summand, prefactor included.
    pub fn term(&self, j: u32) -> &HeckeElement {
        &self.terms[j as usize]
    }

    pub fn terms(&self) -> &[HeckeElement] {
        &self.terms
    }

    /// Serialize with terms in the (m, i) basis.
    pub fn to_record(&self) -> SeriesRecord {
        self.record_with(|term| term.to_record())
    }

    /// Serialize with terms rewritten in Cartan-cell coordinates.
    pub fn to_cartan_record(&self) -> SeriesRecord {
        self.record_with(|term| to_cartan(term).to_record())
    }

    fn record_with(&self, encode: impl Fn(&HeckeElement) -> ElementRecord) -> SeriesRecord {
        SeriesRecord {
            schema: "v1".to_string(),
            k: self.k(),
            max_j: self.max_j,
            convention: self.convention.label().to_string(),
            terms: self.terms.iter().map(encode).collect(),
        }
    }
}

/// Serialized [`BasicFunctionSeries`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub schema: String,
    pub k: u32,
    #[serde(rename = "maxJ")]
    pub max_j: u32,
    pub convention: String,
    pub terms: Vec<ElementRecord>,
}

/// Build the truncated basic function with closed-form coefficients.
pub fn basic_function(
    target: SymTarget,
    max_j: u32,
    convention: ExponentConvention,
) -> BasicFunctionSeries {
    basic_function_via(target, max_j, convention, CoefficientRoute::default())
}

/// [`basic_function`] with an explicit coefficient route.
pub fn basic_function_via(
    target: SymTarget,
    max_j: u32,
    convention: ExponentConvention,
    route: CoefficientRoute,
) -> BasicFunctionSeries {
    let k = target.k();
    let terms = (0..=max_j)
        .map(|j| {
            operator(j, target, convention, route)
                .scale_q(&QLaurent::half_power(-i64::from(j * k)))
        })
        .collect();
    BasicFunctionSeries {
        target,
        max_j,
        convention,
        terms,
    }
}

/// Satake parameters of an unramified representation, held as exact
/// rationals with α·β ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParams {
    alpha: BigRational,
    beta: BigRational,
}

impl SatakeParams {
    pub fn new(alpha: BigRational, beta: BigRational) -> Result<Self, BasicError> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(BasicError::ZeroSatakeParameter);
        }
        Ok(SatakeParams { alpha, beta })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }
}

/// Entry j is the trace of the j-th series term against the unramified
/// character with the given Satake parameters: transform, check that all
/// q-powers have cancelled, then substitute t₁ = α, t₂ = β.
pub fn trace_series(
    series: &BasicFunctionSeries,
    params: &SatakeParams,
) -> Result<Vec<BigRational>, BasicError> {
    if series.convention() != ExponentConvention::DegreeConsistent {
        return Err(BasicError::WrongConvention);
    }
    let q_one = BigRational::one();
    let mut out = Vec::with_capacity(series.terms.len());
    for (j, term) in series.terms.iter().enumerate() {
        let transformed = satake_forward(term);
        if !transformed.is_q_free() {
            return Err(BasicError::ResidualQDependence { j: j as u32 });
        }
        out.push(transformed.evaluate(params.alpha(), params.beta(), &q_one)?);
    }
    Ok(out)
}

/// Coefficients of ∏_{i=0}^{k} (1 − α^{k−i}βⁱ·u)^{−1} through u^{maxJ}:
/// the complete homogeneous symmetric functions of the k+1 eigenvalues of
/// Sym^k, computed by expanding the denominator and dividing as a power
/// series.
pub fn euler_factor_series(
    target: SymTarget,
    params: &SatakeParams,
    max_j: u32,
) -> Vec<BigRational> {
    let k = target.k();
    let mut den = vec![BigRational::one()];
    for i in 0..=k {
        let eigen = rational_pow(params.alpha(), i64::from(k - i)).expect("nonzero base")
            * rational_pow(params.beta(), i64::from(i)).expect("nonzero base");
        let mut next = vec![BigRational::zero(); den.len() + 1];
        for (t, c) in den.iter().enumerate() {
            next[t] += c;
            let shifted = c * &eigen;
            next[t + 1] -= shifted;
        }
        den = next;
    }
    let mut out = vec![BigRational::one()];
    for j in 1..=max_j as usize {
        let mut c = BigRational::zero();
        for t in 1..=j.min(den.len() - 1) {
            c -= &den[t] * &out[j - t];
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{expand_monomials, CartanKey};
    use crate::plethysm::{decompose_character, plethysm_character};
    use crate::qlaurent::QLaurent;
    use num::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn params(a: (i64, i64), b: (i64, i64)) -> SatakeParams {
        SatakeParams::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn sym3_operator_small_degrees() {
        assert_eq!(hecke_operator_sym3(0), HeckeElement::identity());
        assert_eq!(hecke_operator_sym3(1), HeckeElement::basis(3, 0));
        let mut expected = HeckeElement::basis(6, 0);
        expected.add_term(BasisKey::new(2, 2), &QLaurent::power(2));
        assert_eq!(hecke_operator_sym3(2), expected);
    }

    #[test]
    fn sym4_operator_small_degrees() {
        assert_eq!(hecke_operator_sym4(0), HeckeElement::identity());
        // N(1, 4, ·) = 1, 0, 0: the n = 2 coefficient vanishes because
        // Sym¹(Sym⁴) is Sym⁴ alone, with no det² component.
        assert_eq!(hecke_operator_sym4(1), HeckeElement::basis(4, 0));
        let mut expected = HeckeElement::basis(8, 0);
        expected.add_term(BasisKey::new(4, 2), &QLaurent::power(2));
        expected.add_term(BasisKey::new(0, 4), &QLaurent::power(4));
        assert_eq!(hecke_operator_sym4(2), expected);
    }

    #[test]
    fn printed_convention_flips_det_indices() {
        let op = hecke_operator_sym3_via(
            2,
            ExponentConvention::AsPrinted,
            CoefficientRoute::Closed,
        );
        let mut expected = HeckeElement::new();
        expected.add_term(BasisKey::new(6, 6), &QLaurent::one());
        expected.add_term(BasisKey::new(2, 4), &QLaurent::power(2));
        assert_eq!(op, expected);
    }

    #[test]
    fn generic_route_agrees_with_closed() {
        for j in 0..=15 {
            assert_eq!(
                hecke_operator_sym3(j),
                hecke_operator_sym3_via(
                    j,
                    ExponentConvention::DegreeConsistent,
                    CoefficientRoute::Generic
                ),
                "sym3 at j = {j}"
            );
            assert_eq!(
                hecke_operator_sym4(j),
                hecke_operator_sym4_via(
                    j,
                    ExponentConvention::DegreeConsistent,
                    CoefficientRoute::Generic
                ),
                "sym4 at j = {j}"
            );
        }
    }

    #[test]
    fn two_index_sums_collapse_to_multiplicities() {
        // the raw form of the degree-j operator: a positive sum with
        // coefficient ⌊n/2⌋ − ⌊(n−1)/3⌋ minus, past n = j, a correction
        // with coefficient ⌊(n−j−1)/2⌋ + 1, on the same basis keys
        for j in 0..=15u32 {
            let mut literal = HeckeElement::new();
            for n in 0..=3 * j / 2 {
                let ni = i64::from(n);
                let mut c = ni.div_euclid(2) - (ni - 1).div_euclid(3);
                if ni > i64::from(j) {
                    c -= (ni - i64::from(j) - 1).div_euclid(2) + 1;
                }
                let key = BasisKey::new(3 * j - 2 * n, n as i32);
                literal.add_term(key, &QLaurent::monomial(2 * ni, c));
            }
            assert_eq!(literal, hecke_operator_sym3(j), "j = {j}");
        }
    }

    #[test]
    fn series_terms_carry_the_grading_prefactor() {
        let series = basic_function(SymTarget::Sym3, 1, ExponentConvention::DegreeConsistent);
        assert_eq!(series.term(0), &HeckeElement::identity());
        assert_eq!(
            series.term(1),
            &HeckeElement::basis(3, 0).scale_q(&QLaurent::half_power(-3))
        );

        let series = basic_function(SymTarget::Sym4, 1, ExponentConvention::DegreeConsistent);
        assert_eq!(
            series.term(1),
            &HeckeElement::basis(4, 0).scale_q(&QLaurent::half_power(-4))
        );
        assert_eq!(series.k(), 4);
        assert_eq!(series.max_j(), 1);
    }

    #[test]
    fn transformed_terms_match_the_character_oracle() {
        for (target, top) in [(SymTarget::Sym3, 6u32), (SymTarget::Sym4, 5u32)] {
            let series = basic_function(target, top, ExponentConvention::DegreeConsistent);
            for j in 0..=top {
                let transformed = satake_forward(series.term(j));
                assert!(transformed.is_q_free(), "{target:?} j = {j}");
                let chi = plethysm_character(j, target.k()).unwrap();
                let monomials = expand_monomials(&transformed);
                assert_eq!(monomials.len(), chi.num_terms(), "{target:?} j = {j}");
                for (&(e1, e2), c) in chi.iter() {
                    let got = monomials
                        .get(&(e1 as i64, e2 as i64))
                        .cloned()
                        .unwrap_or_else(QLaurent::zero);
                    assert_eq!(
                        got.constant_term(),
                        BigInt::from(c.clone()),
                        "{target:?} j = {j} monomial ({e1},{e2})"
                    );
                }
            }
        }
    }

    #[test]
    fn transformed_terms_match_the_decomposed_oracle() {
        // same statement, but through the peeling route: the transform of
        // term j must literally be Σ N(j,k,n)·Sym^{jk-2n}·(t₁t₂)ⁿ
        for (target, top) in [(SymTarget::Sym3, 5u32), (SymTarget::Sym4, 4u32)] {
            let series = basic_function(target, top, ExponentConvention::DegreeConsistent);
            for j in 0..=top {
                let mut expected = crate::hecke::SymLaurent::new();
                let chi = plethysm_character(j, target.k()).unwrap();
                for (m, i, mult) in decompose_character(&chi).unwrap() {
                    expected.add_term(
                        BasisKey::new(m as u32, i as i32),
                        &QLaurent::constant(BigInt::from(mult)),
                    );
                }
                assert_eq!(satake_forward(series.term(j)), expected, "{target:?} j = {j}");
            }
        }
    }

    #[test]
    fn operator_coefficients_stay_nonnegative() {
        for j in 0..=12 {
            for op in [hecke_operator_sym3(j), hecke_operator_sym4(j)] {
                for (key, c) in op.iter() {
                    for (_, v) in c.iter() {
                        assert!(
                            v > &BigInt::from(0),
                            "negative coefficient at j = {j}, key {key:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_support_sits_on_the_degree_diagonal() {
        for (target, top) in [(SymTarget::Sym3, 8u32), (SymTarget::Sym4, 6u32)] {
            let series = basic_function(target, top, ExponentConvention::DegreeConsistent);
            for j in 0..=top {
                let cells = to_cartan(series.term(j));
                let jk = i64::from(j * target.k());
                for (&CartanKey { a, b }, _) in cells.iter() {
                    assert_eq!(a + b, jk, "{target:?} j = {j}");
                    assert!(a >= b && b >= 0, "{target:?} j = {j} cell ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn trace_values() {
        let series = basic_function(SymTarget::Sym3, 1, ExponentConvention::DegreeConsistent);
        let tr = trace_series(&series, &params((2, 1), (3, 1))).unwrap();
        assert_eq!(tr[0], rat(1, 1));
        assert_eq!(tr[1], rat(65, 1));

        let series = basic_function(SymTarget::Sym4, 1, ExponentConvention::DegreeConsistent);
        let tr = trace_series(&series, &params((1, 1), (1, 1))).unwrap();
        assert_eq!(tr[1], rat(5, 1));
    }

    #[test]
    fn trace_rejects_the_printed_convention() {
        let series = basic_function(SymTarget::Sym3, 2, ExponentConvention::AsPrinted);
        assert_eq!(
            trace_series(&series, &params((2, 1), (3, 1))),
            Err(BasicError::WrongConvention)
        );
    }

    #[test]
    fn satake_params_reject_zero() {
        assert_eq!(
            SatakeParams::new(rat(0, 1), rat(3, 1)),
            Err(BasicError::ZeroSatakeParameter)
        );
        assert_eq!(
            SatakeParams::new(rat(3, 1), rat(0, 1)),
            Err(BasicError::ZeroSatakeParameter)
        );
    }

    #[test]
    fn euler_factor_values() {
        let p = params((2, 1), (3, 1));
        let series = euler_factor_series(SymTarget::Sym3, &p, 1);
        assert_eq!(series[0], rat(1, 1));
        assert_eq!(series[1], rat(65, 1));

        let ones = params((1, 1), (1, 1));
        let series = euler_factor_series(SymTarget::Sym4, &ones, 2);
        assert_eq!(series[2], rat(15, 1));
    }

    #[test]
    fn trace_equals_euler_expansion() {
        for target in [SymTarget::Sym3, SymTarget::Sym4] {
            for p in [params((2, 1), (3, 1)), params((1, 2), (-3, 1))] {
                let series = basic_function(target, 8, ExponentConvention::DegreeConsistent);
                let tr = trace_series(&series, &p).unwrap();
                let euler = euler_factor_series(target, &p, 8);
                assert_eq!(tr, euler, "{target:?}");
            }
        }
    }

    #[test]
    fn series_records_are_schema_tagged() {
        let series = basic_function(SymTarget::Sym3, 2, ExponentConvention::DegreeConsistent);
        let record = series.to_record();
        assert_eq!(record.schema, "v1");
        assert_eq!(record.k, 3);
        assert_eq!(record.max_j, 2);
        assert_eq!(record.convention, "degree-consistent");
        assert_eq!(record.terms.len(), 3);
        assert_eq!(record.terms[1].terms[0].m, 3);
        let json = serde_json::to_string(&record).unwrap();
        assert!(json.contains("\"maxJ\":2"), "{json}");
        let back: SeriesRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);

        let cells = series.to_cartan_record();
        assert_eq!(cells.terms[1].terms.len(), 2);
        assert_eq!((cells.terms[1].terms[0].m, cells.terms[1].terms[0].i), (3, 0));
        assert_eq!((cells.terms[1].terms[1].m, cells.terms[1].terms[1].i), (2, 1));
    }
}
