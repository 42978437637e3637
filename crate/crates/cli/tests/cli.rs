use gencliff::parse::{parse_field, parse_phi};
use gencliff::CubicPresentation;
use gencliff_cli::{execute, load_general, run, Cli, Verb};
use serde_json::Value;

const DIAG: &str = "Z^3 - (2*X^3 + Y^3)";

fn json(mut cli: Cli) -> (i32, Value) {
    cli.json = true;
    let out = execute(&cli);
    (out.code, serde_json::from_str(&out.stdout).expect("valid JSON"))
}

#[test]
fn coefficient_extraction() {
    let f = parse_field("QQ.rho").unwrap();
    let p = CubicPresentation::from_general(&parse_phi(&f, "Z^3 - X*Y*Z - (X^3 + Y^3)").unwrap()).unwrap();
    let got: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
    assert_eq!(got, ["0", "0", "1", "1", "0", "0", "1"]);
    let p = CubicPresentation::from_general(&parse_phi(&f, "Z^3 - 2*X^3").unwrap()).unwrap();
    assert_eq!(p, CubicPresentation::from_ints(&f, [0, 0, 0, 2, 0, 0, 0]).unwrap());
    assert!(CubicPresentation::from_general(&parse_phi(&f, "Z^3 - X*Z^2").unwrap()).is_err());
}

#[test]
fn print_parse_round_trip() {
    let f = parse_field("QQ.rho").unwrap();
    for src in ["Z^3 - X*Y*Z - (X^3 + Y^3)", "3,1,1,1,1,1,1", "0,1,0,2,1,1,1", "Z^3 - 1/2*Y*Z^2 - rho*X^3"] {
        let gp = load_general(&f, src).unwrap();
        assert_eq!(parse_phi(&f, &gp.to_string()).unwrap(), gp, "{src}");
    }
}

#[test]
fn analyze_reports_invariants_and_curve() {
    let (code, v) = json(Cli::new(Verb::Analyze, "QQ.rho", DIAG));
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["d1"], "0");
    assert_eq!(v["invariants"]["d2"], "0");
    assert_eq!(v["invariants"]["d"], "-1");
    assert_eq!(v["curve"]["equation"], "S^2 - S + 2*R^3 = 0");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
}

#[test]
fn json_keys_always_present() {
    let keys = ["invariants", "curve", "image", "representation", "checks"];
    let mut cases = vec![
        Cli::new(Verb::Curve, "QQ.rho", DIAG),
        Cli::new(Verb::AuditConfluence, "GF(3)", "Z^3 - (X^3 + Y^3)"),
        Cli::new(Verb::Image, "QQ.rho", "Z^3 - 2*X^3"),
    ];
    cases[2].point = Some("0,1".into());
    let mut nf = Cli::new(Verb::Nf, "QQ.rho", DIAG);
    nf.expr = Some("w x - x w".into());
    cases.push(nf);
    for cli in cases {
        let (_, v) = json(cli);
        for k in keys {
            assert!(v.get(k).is_some(), "{k} missing from {v}");
        }
    }
}

#[test]
fn image_and_refusals() {
    let mut cli = Cli::new(Verb::Image, "QQ.rho", DIAG);
    cli.point = Some("0,1".into());
    let r = run(&cli).unwrap();
    assert_eq!(r.image["algebra"]["presentation"], "(2, 1)_{3, QQ(rho)}");
    cli.phi = Some("Z^3 - 2*X^3".into());
    assert_eq!(execute(&cli).code, 2);
    cli.point = None;
    cli.phi = Some(DIAG.into());
    assert_eq!(execute(&cli).code, 2);
    // not on the curve
    cli.point = Some("1,1".into());
    assert_eq!(execute(&cli).code, 2);
}

#[test]
fn undecidable_cube_needs_assertion() {
    // 2 is not a cube in QQ(rho) but the tower gives no decision procedure there
    let mut cli = Cli::new(Verb::Image, "QQ.rho.ext(T^2 - 5)", DIAG);
    cli.point = Some("0,1".into());
    let plain = execute(&cli);
    if plain.code == 2 {
        cli.assert_alpha_not_cube = true;
        assert_eq!(execute(&cli).code, 0);
    } else {
        assert_eq!(plain.code, 0);
    }
}

#[test]
fn nf_of_commutator_is_zero() {
    let mut cli = Cli::new(Verb::Nf, "QQ.rho", DIAG);
    cli.expr = Some("w*x - x*w".into());
    assert_eq!(run(&cli).unwrap().result, "0");
    cli.expr = Some("comm(y2^3, y1)".into());
    assert_eq!(run(&cli).unwrap().result, "0");
    cli.expr = Some("star(x^2 * y) - x^2 y - x y x - y x^2".into());
    assert_eq!(run(&cli).unwrap().result, "0");
}

#[test]
fn represent_then_verify() {
    let mut cli = Cli::new(Verb::Represent, "QQ.rho", DIAG);
    cli.point = Some("0,1".into());
    let rep = run(&cli).unwrap();
    assert!(rep.all_ok());
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), rep.representation.to_string()).unwrap();

    let mut verify = Cli::new(Verb::VerifyRep, "QQ.rho", DIAG);
    verify.matrices = Some(file.path().to_path_buf());
    let out = run(&verify).unwrap();
    assert!(out.all_ok(), "{}", out.to_text());
    assert_eq!(out.checks.len(), 3);

    verify.phi = Some("Z^3 - (3*X^3 + Y^3)".into());
    assert_eq!(execute(&verify).code, 3);
}

#[test]
fn verify_rep_general_form() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), r#"{"matrices": [[["1","0"],["0","-1"]], [["0","1"],["1","0"]]]}"#).unwrap();
    let mut cli = Cli::new(Verb::VerifyRep, "QQ", "Z^2 - X^2 - Y^2");
    cli.matrices = Some(file.path().to_path_buf());
    let r = run(&cli).unwrap();
    assert!(r.all_ok());
}

#[test]
fn characteristic_three_commands() {
    let phi = "Z^3 - (X^3 + X^2*Y + 2*X*Y^2 + Y^3)";
    let mut cli = Cli::new(Verb::Image, "GF(3)", phi);
    cli.point = Some("2,1".into());
    assert_eq!(run(&cli).unwrap().lines, ["[2, 1)_{3, GF(3)}"]);
    assert!(run(&Cli::new(Verb::Analyze, "GF(3)", phi)).unwrap().all_ok());
    let d = run(&Cli::new(Verb::Decompose, "GF(3).ext(T^2 + 1)", "2,1,t1,0,1")).unwrap();
    assert!(d.all_ok());
    let mut rep = Cli::new(Verb::Represent, "GF(3)", phi);
    rep.point = Some("2,1".into());
    assert_eq!(execute(&rep).code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gencliff");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["curve", "--phi", DIAG]), Some(0));
    assert_eq!(status(&["curve", "--phi", "Z^3 - X*Z^2"]), Some(2));
    assert_eq!(status(&["curve", "--phi", "Z^3 - (2*X^3 +"]), Some(1));
    assert_eq!(status(&["curve", "--field", "QQ", "--phi", DIAG]), Some(2));
}
