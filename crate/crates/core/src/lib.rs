//! Exact computer algebra for generalized Clifford algebras of monic cubic
//! forms `Z^3 - f1 Z^2 - f2 Z - f3` in two variables.

pub mod cubic;
pub mod curve;
pub mod error;
pub mod field;
pub mod funcfield;
pub mod matrix;
pub mod mpoly;
pub mod ncalg;
pub mod parse;
pub mod poly;
pub mod repcheck;
pub mod symbolalg;

pub use cubic::char0::{Char0Invariants, Char0Structure};
pub use cubic::char3::{Char3Branch, Char3Image, Char3Invariants, Char3Presentation, Char3Structure};
pub use cubic::{BinaryCubic, Check, CheckReport, CubicPresentation};
pub use curve::{CurveModel, CurvePoint, Smoothness, SmoothnessReport};
pub use error::{AlgebraError, FieldError, ParseError, StructureError};
pub use field::{arith, ArithOp, CubeRoot, Field, FieldElement, Scalar};
pub use funcfield::{FunctionField, FunctionFieldElement};
pub use matrix::Matrix;
pub use mpoly::MPoly;
pub use poly::Poly;
pub use repcheck::{GeneralPresentation, MatrixRep};
pub use symbolalg::{SymbolAlgebra, SymbolAlgebraSpec, SymbolElement, SymbolKind};

pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_opt_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_vec_display<T: std::fmt::Display, S: serde::Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Renders `coeff * mon`, dropping unit coefficients.
pub(crate) fn fmt_term(coeff: &str, mon: &str) -> String {
    if mon.is_empty() {
        return coeff.to_string();
    }
    let compound = coeff.char_indices().any(|(i, c)| (c == '+' || c == '-') && i > 0);
    match coeff {
        "1" => mon.to_string(),
        "-1" => format!("-{mon}"),
        c if compound => format!("({c})*{mon}"),
        c => format!("{c}*{mon}"),
    }
}

/// Joins terms with ` + ` / ` - `; empty input renders as `0`.
pub(crate) fn join_signed(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}
