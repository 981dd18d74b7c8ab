//! The acceptance suite: one PASS/FAIL line per criterion, all at the
//! stated trial counts. Run with `--nocapture` to see the lines.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::Instant;

use num_bigint::BigInt;

use covertorus::env::Env;
use covertorus::syntax::{line_col, parse};
use covertorus::verify::{run_suite_with, strip_wall_time, Hooks, VerifierConfig};
use covertorus_core::cover::FieldPoint;
use covertorus_core::lattice::Rat;
use covertorus_core::torus::{TorusPresentation, TorusRow};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn checks(names: &[&str], trials: usize, max_arity: usize) -> Outcome {
    let cfg = VerifierConfig { seed: 2024, trials, max_arity, max_exponent: 6, kernel_bound: 3 };
    let only: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let report = run_suite_with(&cfg, &Hooks::default(), Some(&only));
    let mut summary = Vec::new();
    for c in &report.checks {
        if let Some(f) = c.failures.first() {
            return Err(format!("{}: {} of {} failed, first at trial {}: {}", c.name, c.failures.len(), c.trials, f.trial, f.reason));
        }
        summary.push(format!("{} {}/{}", c.name, c.trials, c.trials));
    }
    Ok(summary.join(", "))
}

fn unit_root_anchor() -> Outcome {
    for d in 1..=6i64 {
        let t = TorusPresentation::new(1, vec![TorusRow::new(vec![BigInt::from(d)], FieldPoint::one())])
            .map_err(|e| e.to_string())?;
        let comps = t.components().map_err(|e| e.to_string())?;
        if comps.len() as i64 != d {
            return Err(format!("x^{} = 1 has {} components", d, comps.len()));
        }
        for j in 0..d {
            let root = FieldPoint::unit_root(Rat::new(BigInt::from(j), BigInt::from(d)));
            let want = TorusPresentation::new(1, vec![TorusRow::new(vec![BigInt::from(1)], root)]).unwrap();
            if comps.iter().filter(|c| c.same_set(&want)).count() != 1 {
                return Err(format!("x = u({}/{}) is not a component of x^{} = 1", j, d, d));
            }
        }
    }
    Ok("x^d = 1 for d <= 6".into())
}

fn files(dir: &str) -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(dir);
    let mut out: Vec<_> = fs::read_dir(root).unwrap().map(|e| e.unwrap().path()).collect();
    out.sort();
    out
}

fn parser_suite() -> Outcome {
    let corpus = files("corpus");
    for path in &corpus {
        let src = fs::read_to_string(path).unwrap();
        let ast = parse(&src).map_err(|d| d.render(&src, &path.display().to_string()))?;
        let printed = ast.to_string();
        if parse(&printed).ok().as_ref() != Some(&ast) {
            return Err(format!("{} does not round-trip", path.display()));
        }
    }
    let malformed = files("malformed");
    for path in &malformed {
        let src = fs::read_to_string(path).unwrap();
        let expect = src.lines().next().unwrap_or("").trim_start_matches("# expect ");
        let d = match parse(&src) {
            Ok(ast) => Env::resolve(&ast).err().ok_or_else(|| format!("{} was accepted", path.display()))?,
            Err(d) => d,
        };
        let (line, col) = line_col(&src, d.span.start);
        if format!("{}:{}", line, col) != expect {
            return Err(format!("{}: diagnostic at {}:{}, expected {}", path.display(), line, col, expect));
        }
        let status = Command::new(env!("CARGO_BIN_EXE_covertorus"))
            .args(["fmt", "-f", path.to_str().unwrap()])
            .stdin(Stdio::null())
            .stderr(Stdio::null())
            .status()
            .unwrap();
        if status.code() != Some(2) {
            return Err(format!("{}: exit {:?}", path.display(), status.code()));
        }
    }
    Ok(format!("{} corpus files, {} malformed", corpus.len(), malformed.len()))
}

fn determinism() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_covertorus"))
            .args(["verify", "--seed", "7", "--trials", "100"])
            .stdin(Stdio::null())
            .output()
            .unwrap();
        (out.status.code(), strip_wall_time(&String::from_utf8(out.stdout).unwrap()))
    };
    let (code_a, a) = run();
    let (code_b, b) = run();
    if a != b || code_a != code_b {
        return Err("reports differ".into());
    }
    if code_a != Some(0) {
        return Err(format!("verify exited {:?}:\n{}", code_a, a));
    }
    Ok(format!("{} report lines identical", a.lines().count()))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        ("1 canonical form", Box::new(|| checks(&["canonical-form"], 200, 5))),
        ("2 root counts", Box::new(|| checks(&["torus-roots"], 200, 3))),
        ("3 component counts", Box::new(|| Ok(format!("{}; {}", checks(&["torus-components"], 200, 4)?, unit_root_anchor()?)))),
        ("4 dimension bound", Box::new(|| checks(&["dimension-bound"], 500, 4))),
        ("5 dimension of exp image", Box::new(|| checks(&["exp-dimension"], 200, 4))),
        ("6 single root", Box::new(|| checks(&["single-root"], 200, 4))),
        (
            "7 axioms 1-6",
            Box::new(|| checks(&["axiom1", "axiom2", "axiom3", "axiom4", "axiom5", "axiom6"], 200, 4)),
        ),
        ("8 amalgamation", Box::new(|| checks(&["axiom7"], 100, 4))),
        ("9 diagonal step", Box::new(|| checks(&["axiom9"], 100, 4))),
        ("10 parser", Box::new(parser_suite)),
        ("11 determinism", Box::new(determinism)),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let ms = t.elapsed().as_millis();
        match &outcome {
            Ok(detail) => println!("PASS criterion {} ({} ms): {}", name, ms, detail),
            Err(why) => {
                println!("FAIL criterion {} ({} ms): {}", name, ms, why);
                failed.push(*name);
            }
        }
    }
    println!("acceptance total {} ms", start.elapsed().as_millis());
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
