//! Fixtures shared by the benchmarks.

use gencliff::cubic::char0::Char0Structure;
use gencliff::cubic::char3::{Char3Branch, Char3Presentation, Char3Structure};
use gencliff::cubic::CubicPresentation;
use gencliff::parse::parse_field;
use gencliff::Field;

pub fn qrho() -> Field {
    parse_field("QQ.rho").expect("valid spec")
}

/// The presentation with every coefficient nonzero.
pub fn dense_char0() -> Char0Structure {
    let p = CubicPresentation::from_ints(&qrho(), [3, 1, 1, 1, 1, 1, 1]).expect("coefficients");
    Char0Structure::new(&p).expect("family")
}

pub fn diagonal() -> CubicPresentation {
    CubicPresentation::from_ints(&qrho(), [0, 0, 0, 2, 0, 0, 1]).expect("coefficients")
}

pub fn char3(branch: Char3Branch) -> Char3Structure {
    let f = Field::prime(3).expect("prime");
    let p = Char3Presentation::from_ints(&f, branch, [1, 1, 2, 1]).expect("coefficients");
    Char3Structure::new(&p).expect("family")
}
