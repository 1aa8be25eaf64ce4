//! Named verification suites over the partition, multiplicity, Hecke, and
//! basic-function layers.
//!
//! Each suite sweeps a parameter grid, counts every atomic check as a
//! case, and records mismatches as (inputs, expected, got) rows. Reports
//! are deterministic apart from the elapsed-time field; randomized sweeps
//! run from a fixed seed.

use std::fmt::Display;
use std::time::Instant;

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basic::{
    basic_function, euler_factor_series, trace_series, ExponentConvention, SatakeParams,
    SymTarget,
};
use crate::hecke::{
    build_one_m, convolve, from_cartan, satake_forward, satake_inverse, sym_multiply, to_cartan,
    BasisKey, CartanElement, CartanKey, HeckeElement, SymLaurent,
};
use crate::partition::{count_exact_parts, count_partitions, enumerate_partitions};
use crate::plethysm::{
    decompose_character, multiplicity_generic, multiplicity_k3_closed, multiplicity_k3_residue,
    multiplicity_k4_closed, multiplicity_k4_recursive, plethysm_character,
};
use crate::qlaurent::QLaurent;

/// The named check suites exposed by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Thm1,
    Thm2,
    Lem1,
    Lem2,
    Thm3,
    Cor3,
    Thm4,
    Cor4,
    Hecke,
    BasicFn,
}

pub const ALL_SUITES: [Suite; 10] = [
    Suite::Thm1,
    Suite::Thm2,
    Suite::Lem1,
    Suite::Lem2,
    Suite::Thm3,
    Suite::Cor3,
    Suite::Thm4,
    Suite::Cor4,
    Suite::Hecke,
    Suite::BasicFn,
];

impl Suite {
    pub fn id(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Lem1 => "lem1",
            Suite::Lem2 => "lem2",
            Suite::Thm3 => "thm3",
            Suite::Cor3 => "cor3",
            Suite::Thm4 => "thm4",
            Suite::Cor4 => "cor4",
            Suite::Hecke => "hecke",
            Suite::BasicFn => "basicfn",
        }
    }

    pub fn from_id(id: &str) -> Option<Suite> {
        ALL_SUITES.iter().copied().find(|s| s.id() == id)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Suite::Thm1 => {
                "even-scale count differences: p(4l-2,3,6l-3)-p(4l-2,3,6l-4) = 0 and p(4l,3,6l)-p(4l,3,6l-1) = 1"
            }
            Suite::Thm2 => {
                "odd-scale count differences: p(4l-1,3,6l-3)-p(4l-1,3,6l-4) = 1 and p(4l+1,3,6l)-p(4l+1,3,6l-1) = 1"
            }
            Suite::Lem1 => "exact-part-count reduction checked against direct enumeration",
            Suite::Lem2 => "four cross-bound count differences with values l+1, l+1, l+1, l+2",
            Suite::Thm3 => "closed form for N(j,3,n) against the generic difference route",
            Suite::Cor3 => "residue form for N(j,3,n) and shift invariance at odd n",
            Suite::Thm4 => "recursive form for N(j,4,n) against the generic difference route",
            Suite::Cor4 => "closed form for N(j,4,n) on n <= j against the recursive form",
            Suite::Hecke => {
                "convolution recurrence, ring laws, and transform round trips on seeded random elements"
            }
            Suite::BasicFn => {
                "character identity, Cartan support, and trace/Euler agreement for the truncated basic functions"
            }
        }
    }

    fn default_ell(self) -> u32 {
        200
    }

    fn default_j(self) -> u32 {
        match self {
            Suite::Lem1 => 10,
            Suite::Thm3 | Suite::Cor3 => 100,
            Suite::Thm4 | Suite::Cor4 => 60,
            Suite::Hecke => 40,
            Suite::BasicFn => 12,
            _ => 0,
        }
    }
}

/// Optional range overrides; `None` takes each suite's default.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    pub max_ell: Option<u32>,
    pub max_j: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub range: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Recorder {
    cases: u64,
    failures: Vec<Failure>,
}

impl Recorder {
    fn eq<T: PartialEq + Display>(&mut self, inputs: impl Into<String>, expected: &T, got: &T) {
        self.cases += 1;
        if expected != got {
            self.failures.push(Failure {
                inputs: inputs.into(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    fn holds(&mut self, inputs: impl Into<String>, expected: impl Into<String>, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                inputs: inputs.into(),
                expected: expected.into(),
                got: "violated".to_string(),
            });
        }
    }

    fn fail(&mut self, inputs: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) {
        self.cases += 1;
        self.failures.push(Failure {
            inputs: inputs.into(),
            expected: expected.into(),
            got: got.into(),
        });
    }
}

fn count_diff(max_part: i64, n: i64, n_prev: i64) -> BigInt {
    let max_part = u32::try_from(max_part).expect("bound stays nonnegative");
    let a = BigInt::from(count_partitions(max_part, 3, n));
    let b = BigInt::from(count_partitions(max_part, 3, n_prev));
    a - b
}

/// Run one suite and assemble its report.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> SuiteReport {
    let start = Instant::now();
    let mut r = Recorder::default();
    let range = match suite {
        Suite::Thm1 => run_thm1(&mut r, params.max_ell.unwrap_or(suite.default_ell())),
        Suite::Thm2 => run_thm2(&mut r, params.max_ell.unwrap_or(suite.default_ell())),
        Suite::Lem1 => run_lem1(&mut r, params.max_j.unwrap_or(suite.default_j())),
        Suite::Lem2 => run_lem2(&mut r, params.max_ell.unwrap_or(suite.default_ell())),
        Suite::Thm3 => run_thm3(&mut r, params.max_j.unwrap_or(suite.default_j())),
        Suite::Cor3 => run_cor3(&mut r, params.max_j.unwrap_or(suite.default_j())),
        Suite::Thm4 => run_thm4(&mut r, params.max_j.unwrap_or(suite.default_j())),
        Suite::Cor4 => run_cor4(&mut r, params.max_j.unwrap_or(suite.default_j())),
        Suite::Hecke => run_hecke(&mut r, params.max_j.unwrap_or(suite.default_j())),
        Suite::BasicFn => run_basicfn(&mut r, params.max_j.unwrap_or(suite.default_j())),
    };
    SuiteReport {
        suite: suite.id().to_string(),
        range,
        cases: r.cases,
        failures: r.failures,
        elapsed_ms: u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX),
    }
}

/// Run every suite in declaration order.
pub fn run_all(params: &SuiteParams) -> Vec<SuiteReport> {
    ALL_SUITES.iter().map(|s| run_suite(*s, params)).collect()
}

fn run_thm1(r: &mut Recorder, max_ell: u32) -> String {
    for ell in 1..=i64::from(max_ell) {
        r.eq(
            format!("ell = {ell}: p(4l-2,3,6l-3) - p(4l-2,3,6l-4)"),
            &BigInt::zero(),
            &count_diff(4 * ell - 2, 6 * ell - 3, 6 * ell - 4),
        );
        r.eq(
            format!("ell = {ell}: p(4l,3,6l) - p(4l,3,6l-1)"),
            &BigInt::one(),
            &count_diff(4 * ell, 6 * ell, 6 * ell - 1),
        );
    }
    format!("ell in 1..={max_ell}")
}

fn run_thm2(r: &mut Recorder, max_ell: u32) -> String {
    for ell in 1..=i64::from(max_ell) {
        r.eq(
            format!("ell = {ell}: p(4l-1,3,6l-3) - p(4l-1,3,6l-4)"),
            &BigInt::one(),
            &count_diff(4 * ell - 1, 6 * ell - 3, 6 * ell - 4),
        );
        r.eq(
            format!("ell = {ell}: p(4l+1,3,6l) - p(4l+1,3,6l-1)"),
            &BigInt::one(),
            &count_diff(4 * ell + 1, 6 * ell, 6 * ell - 1),
        );
    }
    format!("ell in 1..={max_ell}")
}

fn run_lem1(r: &mut Recorder, max_j: u32) -> String {
    for max_part in 1..=max_j {
        for parts in 1..=max_j {
            for n in 0..=i64::from(max_part) * i64::from(parts) {
                let inputs = format!("max_part = {max_part}, parts = {parts}, n = {n}");
                match enumerate_partitions(max_part, parts, n) {
                    Ok(all) => {
                        let exact = all
                            .iter()
                            .filter(|p| p.num_parts() == parts as usize)
                            .count();
                        r.eq(
                            inputs,
                            &BigInt::from(exact),
                            &BigInt::from(count_exact_parts(max_part, parts, n)),
                        );
                    }
                    Err(e) => r.fail(inputs, "enumerable within cap", e.to_string()),
                }
            }
        }
    }
    format!("max_part, parts in 1..={max_j}, all n")
}

fn run_lem2(r: &mut Recorder, max_ell: u32) -> String {
    for ell in 1..=i64::from(max_ell) {
        let plus_one = BigInt::from(ell + 1);
        let plus_two = BigInt::from(ell + 2);
        r.eq(
            format!("ell = {ell}: p(4l,3,6l) - p(4l-1,3,6l-3)"),
            &plus_one,
            &(BigInt::from(count_partitions(4 * ell as u32, 3, 6 * ell))
                - BigInt::from(count_partitions(4 * ell as u32 - 1, 3, 6 * ell - 3))),
        );
        r.eq(
            format!("ell = {ell}: p(4l,3,6l-1) - p(4l-1,3,6l-4)"),
            &plus_one,
            &(BigInt::from(count_partitions(4 * ell as u32, 3, 6 * ell - 1))
                - BigInt::from(count_partitions(4 * ell as u32 - 1, 3, 6 * ell - 4))),
        );
        r.eq(
            format!("ell = {ell}: p(4l+2,3,6l+3) - p(4l+1,3,6l)"),
            &plus_one,
            &(BigInt::from(count_partitions(4 * ell as u32 + 2, 3, 6 * ell + 3))
                - BigInt::from(count_partitions(4 * ell as u32 + 1, 3, 6 * ell))),
        );
        r.eq(
            format!("ell = {ell}: p(4l+2,3,6l+2) - p(4l+1,3,6l-1)"),
            &plus_two,
            &(BigInt::from(count_partitions(4 * ell as u32 + 2, 3, 6 * ell + 2))
                - BigInt::from(count_partitions(4 * ell as u32 + 1, 3, 6 * ell - 1))),
        );
    }
    format!("ell in 1..={max_ell}")
}

fn run_thm3(r: &mut Recorder, max_j: u32) -> String {
    for j in 0..=max_j {
        for n in 0..=i64::from(3 * j / 2) {
            r.eq(
                format!("j = {j}, n = {n}"),
                &multiplicity_generic(j, 3, n).expect("n in range"),
                &multiplicity_k3_closed(j, n).expect("n in range"),
            );
        }
    }
    format!("j in 0..={max_j}, n in 0..=3j/2")
}

fn run_cor3(r: &mut Recorder, max_j: u32) -> String {
    for j in 0..=max_j {
        for n in 0..=i64::from(3 * j / 2) {
            r.eq(
                format!("j = {j}, n = {n}: residue route"),
                &multiplicity_k3_closed(j, n).expect("n in range"),
                &multiplicity_k3_residue(j, n).expect("n in range"),
            );
        }
        for n in (3..=i64::from(j)).step_by(2) {
            r.eq(
                format!("j = {j}, n = {n}: odd shift"),
                &multiplicity_k3_closed(j, n - 3).expect("n in range"),
                &multiplicity_k3_closed(j, n).expect("n in range"),
            );
        }
    }
    format!("j in 0..={max_j}, n in 0..=3j/2, odd shifts n <= j")
}

fn run_thm4(r: &mut Recorder, max_j: u32) -> String {
    for j in 0..=max_j {
        for n in 0..=i64::from(2 * j) {
            r.eq(
                format!("j = {j}, n = {n}"),
                &multiplicity_generic(j, 4, n).expect("n in range"),
                &multiplicity_k4_recursive(j, n).expect("n in range"),
            );
        }
    }
    format!("j in 0..={max_j}, n in 0..=2j")
}

fn run_cor4(r: &mut Recorder, max_j: u32) -> String {
    for j in 0..=max_j {
        for n in 0..=i64::from(j) {
            r.eq(
                format!("j = {j}, n = {n}"),
                &multiplicity_k4_recursive(j, n).expect("n in range"),
                &multiplicity_k4_closed(j, n).expect("n in range"),
            );
        }
    }
    format!("j in 0..={max_j}, n in 0..=j")
}

const RANDOM_ROUNDS: u32 = 300;
const RANDOM_SEED: u64 = 0x5eed_cafe_f00d;

fn random_coeff(rng: &mut ChaCha8Rng) -> QLaurent {
    let mut c = QLaurent::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let d = rng.gen_range(-6..=6);
        let mut v = 0;
        while v == 0 {
            v = rng.gen_range(-9..=9);
        }
        c.add_term(d, &BigInt::from(v));
    }
    c
}

fn random_hecke(rng: &mut ChaCha8Rng) -> HeckeElement {
    let mut f = HeckeElement::new();
    for _ in 0..rng.gen_range(1..=3) {
        let key = BasisKey::new(rng.gen_range(0..=10), rng.gen_range(-10..=10));
        f.add_term(key, &random_coeff(rng));
    }
    f
}

fn random_sym(rng: &mut ChaCha8Rng) -> SymLaurent {
    let mut p = SymLaurent::new();
    for _ in 0..rng.gen_range(1..=3) {
        let key = BasisKey::new(rng.gen_range(0..=10), rng.gen_range(-10..=10));
        p.add_term(key, &random_coeff(rng));
    }
    p
}

fn random_cartan(rng: &mut ChaCha8Rng) -> CartanElement {
    let mut c = CartanElement::new();
    for _ in 0..rng.gen_range(1..=3) {
        let b = rng.gen_range(-5..=5);
        let key = CartanKey::new(b + rng.gen_range(0..=10), b);
        c.add_term(key, &random_coeff(rng));
    }
    c
}

fn run_hecke(r: &mut Recorder, max_m: u32) -> String {
    for m in 0..=max_m {
        r.eq(
            format!("recurrence m = {m}"),
            &HeckeElement::basis(m, 0),
            &build_one_m(m),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for round in 0..RANDOM_ROUNDS {
        let x = random_hecke(&mut rng);
        let y = random_hecke(&mut rng);
        let z = random_hecke(&mut rng);
        r.eq(
            format!("round {round}: commutativity"),
            &convolve(&x, &y),
            &convolve(&y, &x),
        );
        r.eq(
            format!("round {round}: associativity"),
            &convolve(&convolve(&x, &y), &z),
            &convolve(&x, &convolve(&y, &z)),
        );
        r.eq(
            format!("round {round}: transform multiplicativity"),
            &sym_multiply(&satake_forward(&x), &satake_forward(&y)),
            &satake_forward(&convolve(&x, &y)),
        );
        r.eq(
            format!("round {round}: inverse after forward"),
            &x,
            &satake_inverse(&satake_forward(&x)),
        );
        let s = random_sym(&mut rng);
        r.eq(
            format!("round {round}: forward after inverse"),
            &s,
            &satake_forward(&satake_inverse(&s)),
        );
        r.eq(
            format!("round {round}: cell expansion round trip"),
            &x,
            &from_cartan(&to_cartan(&x)),
        );
        let c = random_cartan(&mut rng);
        r.eq(
            format!("round {round}: cell contraction round trip"),
            &c,
            &to_cartan(&from_cartan(&c)),
        );
    }
    format!("recurrence m in 0..={max_m}; {RANDOM_ROUNDS} seeded random rounds")
}

fn fmt_rationals(v: &[BigRational]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn run_basicfn(r: &mut Recorder, max_j: u32) -> String {
    let sym4_top = max_j.saturating_sub(2);
    for (target, top) in [(SymTarget::Sym3, max_j), (SymTarget::Sym4, sym4_top)] {
        let series = basic_function(target, top, ExponentConvention::DegreeConsistent);
        let k = target.k();
        for j in 0..=top {
            let inputs = format!("k = {k}, j = {j}: character identity");
            let chi = match plethysm_character(j, k) {
                Ok(chi) => chi,
                Err(e) => {
                    r.fail(inputs, "character oracle within cap", e.to_string());
                    continue;
                }
            };
            let mut expected = SymLaurent::new();
            for (m, i, mult) in decompose_character(&chi).expect("oracle output decomposes") {
                let key = BasisKey::new(
                    u32::try_from(m).expect("degree fits"),
                    i32::try_from(i).expect("index fits"),
                );
                expected.add_term(key, &QLaurent::constant(BigInt::from(mult)));
            }
            r.eq(inputs, &expected, &satake_forward(series.term(j)));
        }
    }
    for target in [SymTarget::Sym3, SymTarget::Sym4] {
        let series = basic_function(target, max_j, ExponentConvention::DegreeConsistent);
        let k = target.k();
        for j in 0..=max_j {
            let cells = to_cartan(series.term(j));
            let jk = i64::from(j * k);
            let on_diagonal = cells.iter().all(|(key, _)| key.a + key.b == jk);
            r.holds(
                format!("k = {k}, j = {j}: cell support"),
                format!("all cells on a + b = {jk}"),
                on_diagonal,
            );
            let dominant = cells.iter().all(|(key, _)| key.a >= key.b && key.b >= 0);
            r.holds(
                format!("k = {k}, j = {j}: cell dominance"),
                "all cells satisfy a >= b >= 0",
                dominant,
            );
        }
    }
    let pairs: [(i64, i64, i64, i64); 4] = [(2, 1, 3, 1), (1, 1, 1, 1), (1, 2, -3, 1), (5, 1, 1, 5)];
    for target in [SymTarget::Sym3, SymTarget::Sym4] {
        let series = basic_function(target, max_j, ExponentConvention::DegreeConsistent);
        for (an, ad, bn, bd) in pairs {
            let params = SatakeParams::new(
                BigRational::new(BigInt::from(an), BigInt::from(ad)),
                BigRational::new(BigInt::from(bn), BigInt::from(bd)),
            )
            .expect("nonzero parameters");
            let traces = trace_series(&series, &params).expect("degree-consistent series");
            let euler = euler_factor_series(target, &params, max_j);
            r.eq(
                format!(
                    "k = {}, alpha = {}/{}, beta = {}/{}: trace against Euler expansion",
                    target.k(),
                    an,
                    ad,
                    bn,
                    bd
                ),
                &fmt_rationals(&euler),
                &fmt_rationals(&traces),
            );
        }
    }
    format!("j in 0..={max_j} (Sym3), 0..={sym4_top} (Sym4); 4 parameter pairs")
}
