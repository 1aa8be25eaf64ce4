//! The README's library example, kept compiling.

use num::{BigInt, BigRational};
use satake_core::basic::{
    basic_function, trace_series, ExponentConvention, SatakeParams, SymTarget,
};
use satake_core::plethysm::multiplicity_k3_closed;

#[test]
fn readme_example_runs() {
    let n_4_6 = multiplicity_k3_closed(4, 6).unwrap();
    assert_eq!(n_4_6, BigInt::from(1));

    let series = basic_function(SymTarget::Sym3, 4, ExponentConvention::DegreeConsistent);
    let params = SatakeParams::new(
        BigRational::from(BigInt::from(2)),
        BigRational::from(BigInt::from(3)),
    )
    .unwrap();
    let traces = trace_series(&series, &params).unwrap();
    assert_eq!(traces[1], BigRational::from(BigInt::from(65)));
}
