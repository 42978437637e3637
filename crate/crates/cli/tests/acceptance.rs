//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use gencliff::cubic::char0::{build_representation, representation_relations, Char0Structure};
use gencliff::cubic::char3::{simple_image_char3, Char3Branch, Char3Presentation, Char3Structure};
use gencliff::cubic::CubicPresentation;
use gencliff::ncalg::{
    decompose_artin_schreier, decompose_pcentral, decompose_rho, overlap_check, MatrixAlgebra, RewriteSystem,
};
use gencliff::parse::parse_field;
use gencliff::repcheck::{exhaustive_gf3_2x2, is_representation, minimal_poly_check, phi_at};
use gencliff::symbolalg::phi_map;
use gencliff::{CurvePoint, Field, FieldElement, Matrix, MatrixRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const CHAR0: [[i64; 7]; 5] = [
    [0, 0, 1, 2, 0, 0, 1],
    [0, 0, 0, 2, 0, 0, 1],
    [3, 0, 1, 1, 0, 0, 0],
    [3, 1, 1, 1, 1, 1, 1],
    [0, 1, 0, 2, 1, 1, 1],
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qrho() -> Field {
    Field::rationals().adjoin_rho().unwrap()
}

fn char0_structures() -> Vec<([i64; 7], Char0Structure)> {
    let f = qrho();
    CHAR0
        .iter()
        .map(|&c| (c, Char0Structure::new(&CubicPresentation::from_ints(&f, c).unwrap()).unwrap()))
        .collect()
}

fn char3_presentations() -> Vec<Char3Presentation> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for spec in ["GF(3)", "GF(3).ext(T^2 + 1)"] {
        let f = parse_field(spec).unwrap();
        for branch in [Char3Branch::EZero, Char3Branch::ENonzeroNormalized] {
            for _ in 0..3 {
                let c = [f.random_nonzero(&mut rng), f.random_element(&mut rng), f.random_element(&mut rng), f.random_element(&mut rng)];
                out.push(match branch {
                    Char3Branch::EZero => Char3Presentation::e_zero(&f, c).unwrap(),
                    Char3Branch::ENonzeroNormalized => Char3Presentation::normalized(&f, c).unwrap(),
                });
            }
        }
    }
    let g3 = Field::prime(3).unwrap();
    // beta != 0, beta = gamma = 0, and the normalized case of the worked examples
    out.push(Char3Presentation::from_ints(&g3, Char3Branch::EZero, [1, 1, 2, 1]).unwrap());
    out.push(Char3Presentation::from_ints(&g3, Char3Branch::EZero, [1, 0, 0, 1]).unwrap());
    out.push(Char3Presentation::from_ints(&g3, Char3Branch::ENonzeroNormalized, [1, 0, 1, 1]).unwrap());
    out
}

fn centrality() -> Outcome {
    let mut n = 0;
    for (c, st) in char0_structures() {
        let r = st.verify_centrality();
        ensure(r.checks.len() == 9 && r.all_ok(), || format!("{c:?}\n{r}"))?;
        n += r.checks.len();
    }
    Ok(format!("{n} commutators reduce to 0"))
}

fn identities() -> Outcome {
    let mut n = 0;
    for (c, st) in char0_structures() {
        let r = st.verify_identities();
        ensure(r.checks.len() == 5 && r.all_ok(), || format!("{c:?}\n{r}"))?;
        n += r.checks.len();
    }
    Ok(format!("{n} identities reduce to 0"))
}

fn oracle() -> Outcome {
    let all = char0_structures();
    for (c, st) in [&all[1], &all[3], &all[4]] {
        let phi = phi_map(st).map_err(|e| e.to_string())?;
        let r = phi.verify(st);
        ensure(r.all_ok(), || format!("{c:?}\n{r}"))?;
        let rank = phi.rank27(st);
        ensure(rank == 27, || format!("{c:?}: rank {rank}"))?;
    }
    Ok("rank 27, phi(w) = R, phi(y1)^3 = S for 3 presentations".into())
}

fn cube_root_rep(s0: i64) -> Result<(CubicPresentation, MatrixRep), String> {
    let f = qrho();
    let l = parse_field("QQ.rho.ext(T^3 - 2)").map_err(|e| e.to_string())?;
    let pres = CubicPresentation::from_ints(&f, [0, 0, 0, 2, 0, 0, 1]).unwrap();
    let pt = CurvePoint::new(f.zero(), f.from_int(s0)).unwrap();
    let rep = build_representation(&pres, &pt, &l).map_err(|e| e.to_string())?;
    Ok((pres, rep))
}

fn representation() -> Outcome {
    let (pres, rep) = cube_root_rep(1)?;
    ensure(rep.dim() == 3 && rep.matrices().len() == 2, || "expected two 3x3 matrices".into())?;
    let ma = MatrixAlgebra::new(rep.field().clone(), 3);
    let rel = representation_relations(&pres, &rep, &ma).map_err(|e| e.to_string())?;
    ensure(rel.checks.len() == 4 && rel.all_ok(), || rel.to_string())?;
    let gp = pres.to_general();
    let f = &pres.field;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let mut q = || f.from_ratio(rng.gen_range(-99..=99), rng.gen_range(1..=30)).unwrap();
        let a = [q(), q()];
        let m = phi_at(&gp, &rep, &a).map_err(|e| e.to_string())?;
        ensure(m.is_zero(), || format!("Phi({}, {}) = {m}", a[0], a[1]))?;
    }
    Ok(format!("4 relations and 20 random forms vanish over {}", rep.field()))
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gencliff")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn image_classification() -> Outcome {
    let phi = "Z^3 - (2*X^3 + Y^3)";
    for (pt, want) in [("0,1", "(2, 1)_{3, QQ(rho)}"), ("0,0", "(1, 2)_{3, QQ(rho)}")] {
        let (code, out) = cli(&["image", "--field", "QQ.rho", "--phi", phi, "--point", pt]);
        ensure(code == 0 && out.lines().any(|l| l.trim() == want), || format!("at {pt}: exit {code}, {out}"))?;
    }
    for (phi, why) in [("Z^3 - 2*X^3", "D = 0"), ("Z^3 - (27*X^3 + Y^3)", "alpha a cube")] {
        let (code, _) = cli(&["image", "--field", "QQ.rho", "--phi", phi, "--point", "0,1"]);
        ensure(code == 2, || format!("{why}: exit {code}, expected 2"))?;
    }
    Ok("(2,1) at (0,1), (1,2) at (0,0), refusals exit 2".into())
}

fn char3_suite() -> Outcome {
    let mut n = 0;
    for p in char3_presentations() {
        let st = Char3Structure::new(&p).map_err(|e| format!("{p}: {e}"))?;
        let mut r = st.verify_identities();
        r.extend(st.verify_central().map_err(|e| e.to_string())?);
        r.extend(st.decomposition_consistency().map_err(|e| e.to_string())?);
        ensure(r.all_ok(), || format!("{p}\n{r}"))?;
        n += r.checks.len();
    }
    let g3 = Field::prime(3).unwrap();
    let img = |c: [i64; 4], b: Char3Branch, pt: CurvePoint| -> Result<String, String> {
        let p = Char3Presentation::from_ints(&g3, b, c).unwrap();
        Ok(simple_image_char3(&p, &pt).map_err(|e| e.to_string())?.algebra.to_string())
    };
    let pt = |r: i64, s: i64| CurvePoint::new(g3.from_int(r), g3.from_int(s)).unwrap();
    let got = [
        img([1, 1, 2, 1], Char3Branch::EZero, pt(2, 1))?,
        img([1, 0, 0, 1], Char3Branch::EZero, CurvePoint::scalar(g3.one()))?,
        img([1, 0, 1, 1], Char3Branch::ENonzeroNormalized, pt(1, 0))?,
    ];
    let want = ["[2, 1)_{3, GF(3)}", "[2, 1)_{3, GF(3)}", "[1, 2)_{3, GF(3)}"];
    ensure(got == want, || format!("images {got:?}"))?;
    Ok(format!("{n} identities over GF(3), GF(9); 3 worked images"))
}

fn random_m3(f: &Field, rng: &mut ChaCha8Rng) -> Matrix<FieldElement> {
    Matrix::from_fn(3, 3, |_, _| f.random_element(rng))
}

fn sum(parts: &[Matrix<FieldElement>]) -> Matrix<FieldElement> {
    parts[1..].iter().fold(parts[0].clone(), |acc, p| acc.add(p))
}

fn decompositions() -> Outcome {
    for spec in ["QQ.rho", "GF(7).rho"] {
        let f = parse_field(spec).unwrap();
        let rho = f.rho().unwrap();
        let x = Matrix::diagonal(vec![f.one(), rho.clone(), &rho * &rho]);
        let alg = MatrixAlgebra::new(f.clone(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let y = random_m3(&f, &mut rng);
            let parts = decompose_rho(&alg, &y, &x, 3, &rho).map_err(|e| e.to_string())?;
            ensure(sum(&parts) == y, || format!("{spec}: parts do not sum to y"))?;
            for (k, yk) in parts.iter().enumerate() {
                let ok = yk.mul(&x) == x.mul(yk).scale(&rho.pow_u128(k as u128));
                ensure(ok, || format!("{spec}: y_{k} does not rho^{k}-commute"))?;
            }
        }
    }
    let f = Field::prime(3).unwrap();
    let alg = MatrixAlgebra::new(f.clone(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let x = Matrix::diagonal(vec![f.zero(), f.one(), f.from_int(2)]);
    for _ in 0..100 {
        let z = random_m3(&f, &mut rng);
        let parts = decompose_artin_schreier(&alg, &z, &x, 3).map_err(|e| e.to_string())?;
        ensure(sum(&parts.z) == z, || "Artin-Schreier parts do not sum to z".into())?;
        for (k, zk) in parts.z.iter().enumerate() {
            let ok = x.mul(zk).sub(&zk.mul(&x)) == zk.scale(&f.from_int(k as i64));
            ensure(ok, || format!("[z_{k}, x] != {k} z_{k}"))?;
        }
    }
    let y = Matrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 1) | (1, 2) => f.one(),
        (2, 0) => f.from_int(2),
        _ => f.zero(),
    });
    for _ in 0..100 {
        let z = random_m3(&f, &mut rng);
        let p = decompose_pcentral(&alg, &z, &y, 3).map_err(|e| e.to_string())?;
        let br = |m: &Matrix<FieldElement>| y.mul(m).sub(&m.mul(&y));
        let ok = br(&p[0]).is_zero() && br(&p[1]) == p[0] && br(&p[2]) == p[1] && p[2].sub(&p[1]) == z;
        ensure(ok, || "p-central relations fail".into())?;
    }
    Ok("rho over QQ(rho), GF(7); Artin-Schreier and p-central over GF(3); 100 each".into())
}

fn confluence() -> Outcome {
    let mut systems: Vec<(String, RewriteSystem)> =
        char0_structures().into_iter().map(|(c, st)| (format!("{c:?}"), st.quotient.system)).collect();
    for p in char3_presentations() {
        systems.push((p.to_string(), Char3Structure::new(&p).unwrap().quotient.system));
    }
    for (name, rs) in &systems {
        let amb = overlap_check(rs, 8);
        ensure(amb.is_empty(), || format!("{name}: {}", amb[0]))?;
    }
    Ok(format!("{} systems, no unresolved overlaps up to length 8", systems.len()))
}

fn repcheck() -> Outcome {
    for s0 in [1, 0] {
        let (pres, rep) = cube_root_rep(s0)?;
        let gp = pres.to_general();
        ensure(is_representation(&gp, &rep).map_err(|e| e.to_string())?.is_none(), || format!("s0 = {s0} rejected"))?;
        ensure(minimal_poly_check(&gp, &rep).map_err(|e| e.to_string())?, || format!("s0 = {s0}: minimal polynomial"))?;
    }
    let (tried, found) = exhaustive_gf3_2x2().map_err(|e| e.to_string())?;
    ensure(tried == 6561 && found.is_empty(), || format!("{} of {tried} pairs accepted", found.len()))?;
    let (pres, rep) = cube_root_rep(1)?;
    let gp = pres.to_general();
    let l = rep.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    while done < 20 {
        let q = random_m3(&l, &mut rng);
        if q.rank() < 3 {
            continue;
        }
        let conj = rep.conjugate(&q).map_err(|e| e.to_string())?;
        ensure(is_representation(&gp, &conj).map_err(|e| e.to_string())?.is_none(), || "conjugate rejected".into())?;
        done += 1;
    }
    Ok("minimal polynomial holds; 0 of 6561 GF(3) pairs; 20 conjugates accepted".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("centrality", centrality),
        ("identity suite", identities),
        ("symbol algebra oracle", oracle),
        ("representation end to end", representation),
        ("image classification", image_classification),
        ("characteristic 3 suite", char3_suite),
        ("eigenpart decompositions", decompositions),
        ("confluence audit", confluence),
        ("repcheck", repcheck),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
