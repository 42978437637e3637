//! Command-line driver: parses forms, points and matrices, dispatches to the
//! structure modules and renders text or JSON reports.

mod error;
mod family;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use gencliff::cubic::char0::{self, CubeCheck};
use gencliff::cubic::char3::{self, Char3Branch};
use gencliff::ncalg::{decompose_artin_schreier, decompose_pcentral, decompose_rho, overlap_check};
use gencliff::parse::{parse_field, parse_matrix_rep, parse_ncpoly};
use gencliff::repcheck::{divisibility_audit, is_representation, minimal_poly_check, Witness};
use gencliff::symbolalg::phi_map;
use gencliff::{Check, CheckReport, CurveModel, Field, StructureError};
use serde_json::{json, Value};

pub use error::CliError;
pub use family::{load_general, parse_point, point_field, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Invariants, curve and the full identity suite.
    Analyze,
    /// Invariants and the associated curve.
    Curve,
    /// The simple image at `--point`.
    Image,
    /// Explicit 3x3 matrices at `--point`.
    Represent,
    /// Check a matrix tuple from `--matrices` against any monic form.
    VerifyRep,
    /// Split an element relative to x.
    Decompose,
    /// Normal form of an expression in x, y1, y2, y0, y, w.
    Nf,
    /// Overlap check of the rewriting system.
    AuditConfluence,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Analyze => "analyze",
            Verb::Curve => "curve",
            Verb::Image => "image",
            Verb::Represent => "represent",
            Verb::VerifyRep => "verify-rep",
            Verb::Decompose => "decompose",
            Verb::Nf => "nf",
            Verb::AuditConfluence => "audit-confluence",
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "gencliff", version, about = "Generalized Clifford algebras of monic cubic forms")]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Expression for `nf` and `decompose`.
    pub expr: Option<String>,
    /// Base field: QQ or GF(p), then any chain of .ext(poly in T) and .rho
    #[arg(long, default_value = "QQ.rho")]
    pub field: String,
    /// The form, as an expression in Z, X, Y or as a coefficient list
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    #[arg(long, value_name = "R0,S0", allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Minimal polynomial in T of an extension holding the point
    #[arg(long, value_name = "MINPOLY")]
    pub ext: Option<String>,
    /// JSON file with the matrices for verify-rep
    #[arg(long, value_name = "FILE")]
    pub matrices: Option<PathBuf>,
    /// Vouch that alpha is not a cube where this cannot be decided
    #[arg(long)]
    pub assert_alpha_not_cube: bool,
    /// Longest overlap word for audit-confluence
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,
    #[arg(long)]
    pub json: bool,
}

impl Cli {
    pub fn new(verb: Verb, field: &str, phi: &str) -> Self {
        Cli {
            verb,
            expr: None,
            field: field.to_string(),
            phi: Some(phi.to_string()),
            point: None,
            ext: None,
            matrices: None,
            assert_alpha_not_cube: false,
            max_len: 8,
            json: false,
        }
    }
}

/// Everything a verb produces. Keys that do not apply stay `null`.
#[derive(Debug, Default)]
pub struct Report {
    pub verb: &'static str,
    pub field: String,
    pub presentation: Option<String>,
    pub invariants: Value,
    pub curve: Value,
    pub image: Value,
    pub representation: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub lines: Vec<String>,
}

impl Report {
    fn new(verb: Verb, field: &Field) -> Self {
        Report { verb: verb.name(), field: field.to_string(), ..Default::default() }
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verb": self.verb,
            "field": self.field,
            "presentation": self.presentation,
            "invariants": self.invariants,
            "curve": self.curve,
            "image": self.image,
            "representation": self.representation,
            "result": self.result,
            "checks": self.checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(p) = &self.presentation {
            out.push_str(&format!("Phi = {p}  over {}\n", self.field));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        if !self.checks.is_empty() {
            let passed = self.checks.iter().filter(|c| c.ok).count();
            out.push_str(&format!("checks: {passed}/{} passed\n", self.checks.len()));
            for c in self.checks.iter().filter(|c| !c.ok) {
                out.push_str(&format!("  FAILED {}: {}\n", c.name, c.residual));
            }
        }
        out
    }

    fn add(&mut self, report: CheckReport) {
        self.checks.extend(report.checks);
    }
}

/// Rendered output and process exit code.
#[derive(Debug)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn execute(cli: &Cli) -> Execution {
    match run(cli) {
        Ok(report) => {
            let code = if report.all_ok() { 0 } else { 3 };
            let stdout = if cli.json {
                format!("{:#}\n", report.to_json())
            } else {
                report.to_text()
            };
            Execution { stdout, stderr: String::new(), code }
        }
        Err(err) => {
            let code = err.exit_code();
            let stdout = if cli.json {
                let v = json!({
                    "verb": cli.verb.name(),
                    "field": cli.field,
                    "presentation": null,
                    "invariants": null,
                    "curve": null,
                    "image": null,
                    "representation": null,
                    "result": null,
                    "checks": [],
                    "error": { "kind": err.kind(), "message": err.to_string() },
                });
                format!("{v:#}\n")
            } else {
                String::new()
            };
            Execution { stdout, stderr: format!("error ({}): {err}\n", err.kind()), code }
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let field = parse_field(&cli.field)?;
    let phi = cli.phi.as_deref().ok_or_else(|| CliError::Usage("--phi is required".into()))?;
    let mut report = Report::new(cli.verb, &field);
    if cli.verb == Verb::VerifyRep {
        verify_rep(cli, &field, phi, &mut report)?;
        return Ok(report);
    }
    let fam = Family::load(&field, phi)?;
    report.presentation = Some(fam.presentation());
    match cli.verb {
        Verb::Analyze => {
            describe(&fam, &mut report)?;
            analyze(&fam, &mut report)?;
        }
        Verb::Curve => describe(&fam, &mut report)?,
        Verb::Image => image(cli, &fam, &mut report)?,
        Verb::Represent => represent(cli, &fam, &mut report)?,
        Verb::Decompose => decompose(cli, &fam, &mut report)?,
        Verb::Nf => {
            let expr = cli.expr.as_deref().ok_or_else(|| CliError::Usage("nf needs an expression".into()))?;
            let p = parse_ncpoly(fam.quotient().system.alphabet(), &field, &fam.env(), expr)?;
            let nf = fam.quotient().reduce(&p);
            report.lines.push(nf.to_string());
            report.result = json!(nf.to_string());
        }
        Verb::AuditConfluence => {
            let amb = overlap_check(&fam.quotient().system, cli.max_len);
            report.lines.push(format!("overlaps up to length {}: {} unresolved", cli.max_len, amb.len()));
            for a in &amb {
                report.lines.push(format!("  {a}"));
            }
            report.result = json!(amb.iter().map(|a| a.to_string()).collect::<Vec<_>>());
            report.checks.push(Check {
                name: format!("no unresolved overlaps up to length {}", cli.max_len),
                ok: amb.is_empty(),
                residual: amb.len().to_string(),
            });
        }
        Verb::VerifyRep => unreachable!("handled above"),
    }
    Ok(report)
}

fn curve_json(e: &CurveModel) -> Value {
    json!({
        "label": e.label(),
        "equation": e.to_string(),
        "coefficients": e.coefficient_map(),
        "smoothness": e.smoothness(),
    })
}

fn describe(fam: &Family, report: &mut Report) -> Result<(), CliError> {
    let e = match fam {
        Family::Char0(st) => {
            let inv = char0::invariants(&st.pres)?;
            report.lines.push(format!("D1 = {}, D2 = {}, D = {}", inv.d1, inv.d2, inv.d));
            report.invariants = json!(inv);
            char0::curve(&st.pres)?
        }
        Family::Char3(st) => {
            let inv = char3::invariants(&st.pres);
            let mut line = format!("branch {:?}", inv.branch);
            if let Some(d) = &inv.delta {
                line.push_str(&format!(", Delta = {d}"));
            }
            if let Some(k) = &inv.k {
                line.push_str(&format!(", K = {k}"));
            }
            report.lines.push(line);
            report.invariants = json!(inv);
            char3::curve_char3(&st.pres)
        }
    };
    report.lines.push(format!("curve {}: {e}", e.label()));
    report.curve = curve_json(&e);
    Ok(())
}

fn analyze(fam: &Family, report: &mut Report) -> Result<(), CliError> {
    match fam {
        Family::Char0(st) => {
            report.add(st.verify_centrality());
            report.add(st.verify_identities());
            let phi = phi_map(st)?;
            report.add(phi.verify(st));
            let rank = phi.rank27(st);
            report.checks.push(Check {
                name: "images of x^i y1^j w^k have rank 27".into(),
                ok: rank == 27,
                residual: rank.to_string(),
            });
        }
        Family::Char3(st) => {
            report.add(st.verify_central()?);
            report.add(st.verify_identities());
            report.add(st.decomposition_consistency()?);
        }
    }
    Ok(())
}

fn require_point(cli: &Cli) -> Result<&str, CliError> {
    cli.point.as_deref().ok_or_else(|| CliError::Usage(format!("{} needs --point", cli.verb.name())))
}

fn image(cli: &Cli, fam: &Family, report: &mut Report) -> Result<(), CliError> {
    let l = point_field(fam.field(), cli.ext.as_deref())?;
    let pt = parse_point(&l, require_point(cli)?)?;
    match fam {
        Family::Char0(st) => {
            let cube = if cli.assert_alpha_not_cube { CubeCheck::Asserted } else { CubeCheck::Decide };
            let spec = char0::simple_image(&st.pres, &pt, cube)?;
            report.lines.push(spec.to_string());
            report.image = json!({ "point": pt.to_string(), "algebra": spec });
        }
        Family::Char3(st) => {
            let img = char3::simple_image_char3(&st.pres, &pt)?;
            let mut line = img.algebra.to_string();
            if let Some(g) = img.localized_at {
                line.push_str(&format!("  (after inverting {g})"));
            }
            report.lines.push(line);
            report.image = json!({ "point": pt.to_string(), "algebra": img.algebra, "case": img.case,
                "azumaya": img.azumaya, "localized_at": img.localized_at });
        }
    }
    Ok(())
}

fn represent(cli: &Cli, fam: &Family, report: &mut Report) -> Result<(), CliError> {
    let Family::Char0(st) = fam else {
        return Err(StructureError::Hypothesis(
            "matrix representations are constructed for the characteristic != 3 family only".into(),
        )
        .into());
    };
    let l = point_field(fam.field(), cli.ext.as_deref())?;
    let pt = parse_point(&l, require_point(cli)?)?;
    let alpha = l.embed(&st.pres.alpha)?;
    let l = if char0::find_cube_root(&l, &alpha).is_some() {
        l
    } else {
        parse_field(&format!("{}.ext(T^3 - ({alpha}))", l.spec_string()))?
    };
    let rep = char0::build_representation(&st.pres, &pt, &l)?;
    let ma = gencliff::ncalg::MatrixAlgebra::new(l.clone(), 3);
    report.add(char0::representation_relations(&st.pres, &rep, &ma)?);
    report.add(char0::random_form_checks(&st.pres, &rep, 20, 0x5eed)?);
    let gp = st.pres.to_general();
    let witness = is_representation(&gp, &rep)?;
    report.checks.push(Check {
        name: "Phi(M) = 0 identically".into(),
        ok: witness.is_none(),
        residual: witness.as_ref().map_or("0".into(), witness_text),
    });
    report.lines.push(format!("over {l}:"));
    report.lines.push(rep.to_string());
    report.representation = rep.to_json();
    Ok(())
}

fn witness_text(w: &Witness) -> String {
    let coeff: Vec<&str> = w.coefficient.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    format!("coefficient of {} is {}", w.monomial, coeff.join(" "))
}

fn verify_rep(cli: &Cli, field: &Field, phi: &str, report: &mut Report) -> Result<(), CliError> {
    let gp = load_general(field, phi)?;
    report.presentation = Some(gp.to_string());
    let path = cli.matrices.as_ref().ok_or_else(|| CliError::Usage("verify-rep needs --matrices".into()))?;
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let has_field = serde_json::from_str::<Value>(&text).ok().is_some_and(|v| v.get("field").is_some());
    let rep = parse_matrix_rep(&text, if has_field { None } else { Some(field) })?;
    let witness = is_representation(&gp, &rep)?;
    report.checks.push(Check {
        name: "Phi(M) = 0 identically".into(),
        ok: witness.is_none(),
        residual: witness.as_ref().map_or("0".into(), witness_text),
    });
    if witness.is_none() {
        report.checks.push(Check {
            name: format!("I, M, ..., M^{} independent", gp.d - 1),
            ok: minimal_poly_check(&gp, &rep)?,
            residual: String::new(),
        });
    }
    report.checks.push(Check {
        name: format!("{} divides {}", gp.d, rep.dim()),
        ok: divisibility_audit(gp.d, rep.dim()),
        residual: String::new(),
    });
    report.lines.push(format!("{} matrices of size {} over {}", rep.matrices().len(), rep.dim(), rep.field()));
    report.representation = rep.to_json();
    Ok(())
}

fn decompose(cli: &Cli, fam: &Family, report: &mut Report) -> Result<(), CliError> {
    let expr = cli.expr.as_deref().unwrap_or("y");
    let q = fam.quotient();
    let n = fam.named();
    let z = q.reduce(&parse_ncpoly(q.system.alphabet(), fam.field(), &fam.env(), expr)?);
    let (labels, parts) = match fam {
        Family::Char0(_) => {
            let rho = fam.field().rho().ok_or(StructureError::NoRho)?;
            (["y0", "y1", "y2"], decompose_rho(q, &z, &n.x, 3, &rho)?)
        }
        Family::Char3(st) if st.pres.branch == Char3Branch::EZero => {
            (["z0", "z1", "z2"], decompose_pcentral(q, &z, &n.x, 3)?)
        }
        Family::Char3(_) => (["t0", "t1", "t2"], decompose_artin_schreier(q, &z, &n.x, 3)?.t),
    };
    let mut checks = CheckReport::default();
    let rendered: Vec<Value> = labels
        .iter()
        .zip(&parts)
        .map(|(l, p)| {
            report.lines.push(format!("{l} = {p}"));
            json!({ "name": l, "value": p.to_string() })
        })
        .collect();
    if expr.trim() == "y" {
        for ((l, p), want) in labels.iter().zip(&parts).zip([&n.y0, &n.y1, &n.y2]) {
            checks.push_zero(format!("{l} matches the presentation"), q, &p.sub(want));
        }
    }
    report.add(checks);
    report.result = Value::Array(rendered);
    Ok(())
}
