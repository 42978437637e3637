//! Loading a presentation from `--field` and `--phi`.

use std::collections::BTreeMap;

use gencliff::cubic::Named;
use gencliff::ncalg::{NCPoly, Quotient};
use gencliff::parse::{parse_element, parse_field, parse_phi};
use gencliff::{
    BinaryCubic, Char0Structure, Char3Presentation, Char3Structure, CubicPresentation, CurvePoint, Field,
    GeneralPresentation,
};

use crate::CliError;

/// The form is either an expression in `Z` and `X, Y` (or `X1..Xn`), or a
/// comma-separated coefficient list: `r,t,e,alpha,beta,gamma,delta` in
/// characteristic other than 3, `e,alpha,beta,gamma,delta` in characteristic 3.
pub fn load_general(field: &Field, src: &str) -> Result<GeneralPresentation, CliError> {
    if src.contains('Z') {
        return Ok(parse_phi(field, src)?);
    }
    let c = src
        .split(',')
        .map(|s| parse_element(field, s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let z = field.zero();
    match (field.characteristic(), c.len()) {
        (3, 5) => Ok(BinaryCubic {
            field: field.clone(),
            f1: [z.clone(), z.clone()],
            f2: [z.clone(), c[0].clone(), z],
            f3: [c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone()],
        }
        .to_general()),
        (3, n) => Err(CliError::Usage(format!("expected 5 coefficients e,alpha,beta,gamma,delta, got {n}"))),
        (_, 7) => {
            let c: [_; 7] = c.try_into().expect("seven");
            Ok(CubicPresentation::new(field, c)?.to_general())
        }
        (_, n) => Err(CliError::Usage(format!(
            "expected 7 coefficients r,t,e,alpha,beta,gamma,delta, got {n}"
        ))),
    }
}

pub enum Family {
    Char0(Box<Char0Structure>),
    Char3(Box<Char3Structure>),
}

impl Family {
    pub fn load(field: &Field, src: &str) -> Result<Family, CliError> {
        let gp = load_general(field, src)?;
        if field.characteristic() == 3 {
            let p = Char3Presentation::from_general(&gp)?;
            Ok(Family::Char3(Box::new(Char3Structure::new(&p)?)))
        } else {
            let p = CubicPresentation::from_general(&gp)?;
            Ok(Family::Char0(Box::new(Char0Structure::new(&p)?)))
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            Family::Char0(st) => &st.pres.field,
            Family::Char3(st) => &st.pres.field,
        }
    }

    pub fn quotient(&self) -> &Quotient {
        match self {
            Family::Char0(st) => &st.quotient,
            Family::Char3(st) => &st.quotient,
        }
    }

    pub fn named(&self) -> &Named {
        match self {
            Family::Char0(st) => &st.named,
            Family::Char3(st) => &st.named,
        }
    }

    pub fn presentation(&self) -> String {
        match self {
            Family::Char0(st) => st.pres.to_string(),
            Family::Char3(st) => st.pres.to_string(),
        }
    }

    /// Names usable in `nf` and `decompose` expressions.
    pub fn env(&self) -> BTreeMap<String, NCPoly> {
        let n = self.named();
        [("x", &n.x), ("y1", &n.y1), ("y2", &n.y2), ("y0", &n.y0), ("y", &n.y), ("w", &n.w)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }
}

/// `K` itself, or `K.ext(minpoly)` when `--ext` is given.
pub fn point_field(base: &Field, ext: Option<&str>) -> Result<Field, CliError> {
    match ext {
        None => Ok(base.clone()),
        Some(m) => Ok(parse_field(&format!("{}.ext({m})", base.spec_string()))?),
    }
}

/// `R0,S0`, or a bare `S0` where the family allows it.
pub fn parse_point(field: &Field, s: &str) -> Result<CurvePoint, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [s0] => Ok(CurvePoint::scalar(parse_element(field, s0)?)),
        [r0, s0] => Ok(CurvePoint::new(parse_element(field, r0)?, parse_element(field, s0)?)?),
        _ => Err(CliError::Usage(format!("cannot read point {s:?}; expected R0,S0"))),
    }
}
