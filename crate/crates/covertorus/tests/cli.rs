use std::io::Write;
use std::process::{Command, Stdio};

use covertorus::env::{Env, Object};

fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_covertorus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn tori(text: &str) -> Vec<covertorus_core::torus::TorusPresentation> {
    Env::from_source(text)
        .unwrap()
        .objects()
        .filter_map(|(_, o)| match o {
            Object::Torus(t) => Some(t.clone()),
            _ => None,
        })
        .collect()
}

#[test]
fn dim_of_a_torus() {
    assert_eq!(run(&["dim", "T"], "torus T n=2 eq x1^2*x2^3 = g1"), (0, "dim=1\n".into(), String::new()));
}

#[test]
fn square_roots_of_one() {
    let (code, out, _) = run(&["roots", "-m", "2", "T"], "torus T n=1 eq x1 = u(0)");
    assert_eq!(code, 0);
    assert_eq!(out, "torus T_r1 n=1\n  eq x1 = u(0)\ntorus T_r2 n=1\n  eq x1 = u(1/2)\n");
}

#[test]
fn spec_of_tuples() {
    let (code, out, _) = run(&["spec", "(e1,e2)", "(e3,e3)"], "");
    assert_eq!((code, out.as_str()), (0, "specialization=true rank_drop=1\n"));
    let (_, out, _) = run(&["spec", "(e1,e1)", "(e1,e2)"], "");
    assert_eq!(out, "specialization=false\n");
}

#[test]
fn exit_codes_partition() {
    let (code, _, err) = run(&["dim", "T"], "torus T n=1\neq x1^ = u(1)");
    assert_eq!(code, 2);
    assert!(err.starts_with("<stdin>:2:6: error:"), "{}", err);

    let (code, _, err) = run(&["roots", "-m", "2", "T"], "torus T n=1 eq x1^2 = u(0)");
    assert_eq!((code, err.as_str()), (1, "error: reducible: torus is reducible\n"));

    let (code, _, err) = run(&["components", "E"], "torus E n=1 eq x1 = u(0) eq x1 = u(1/2)");
    assert_eq!(code, 1);
    assert!(err.starts_with("error: empty-torus:"), "{}", err);

    let (code, _, err) = run(&["dim", "nothing"], "");
    assert_eq!(code, 2);
    assert!(err.contains("undeclared name `nothing`"), "{}", err);

    let (code, _, _) = run(&["frobnicate"], "");
    assert_eq!(code, 2);
    let (code, _, _) = run(&["spec", "(e1,", "(e2)"], "");
    assert_eq!(code, 2);
    let (code, _, err) = run(&["fmt", "-f", "/nonexistent/file.ct"], "");
    assert_eq!(code, 1);
    assert!(err.starts_with("error: io:"));
}

#[test]
fn torus_outputs_reparse_to_the_result() {
    let src = "torus T n=2 eq x1^2*x2^4 = u(1/2)\ntorus S n=2 eq x1 = u(1/3)";
    let env = Env::from_source(src).unwrap();
    let Some(Object::Torus(t)) = env.get("T") else { panic!() };
    let Some(Object::Torus(s)) = env.get("S") else { panic!() };

    let (_, out, _) = run(&["components", "T"], src);
    let comps = tori(&out);
    let expect = t.components().unwrap();
    assert_eq!(comps.len(), expect.len());
    for (a, b) in comps.iter().zip(&expect) {
        assert!(a.same_set(b));
    }

    let (_, out, _) = run(&["intersect", "T", "S"], src);
    assert!(tori(&out)[0].same_set(&t.intersect(s).unwrap()));

    let (_, out, _) = run(&["canon", "T"], src);
    let branches = tori(&out);
    assert_eq!(branches.len(), 2);
    assert!(out.contains("# branch 1"));

    let (_, out, _) = run(&["power", "-m", "3", "S"], src);
    assert!(tori(&out)[0].same_set(&s.power(3).unwrap()));
}

#[test]
fn log_components_and_loci() {
    let (code, out, _) = run(&["log-components", "-B", "2", "T"], "torus T n=1 eq x1 = u(0)");
    assert_eq!(code, 0);
    assert_eq!(out.matches("linear ").count(), 5);
    assert!(Env::from_source(&out).is_ok());

    let (_, out, _) = run(&["locus", "(e1, e1 + 1/3*k)"], "");
    let env = Env::from_source(&out).unwrap();
    let Some(Object::Linear(l)) = env.get("locus") else { panic!() };
    let x = covertorus_core::cover::CoverPoint::generic(5);
    let y = &x + &covertorus_core::cover::CoverPoint::kappa_multiple(covertorus_core::lattice::Rat::new(1.into(), 3.into()));
    assert!(l.contains(&[x, y]));
}

#[test]
fn rank_and_dim_forms() {
    assert_eq!(run(&["rank", "(e1, 2*e1 + k)"], "").1, "rank=1\n");
    assert_eq!(run(&["rank", "e1", "over", "e1"], "").1, "rank=0\n");
    assert_eq!(run(&["rank", "a"], "tuple a = (e1, e2)").1, "rank=2\n");
    assert_eq!(run(&["dim", "D"], "linear D n=2 { 1 -1 = 0; }").1, "dim=1\n");
    let set = "cell S m=1 n=2 linear { 1 -1 = 0; }\ncell S m=1 n=2 linear { 1 0 = k; 0 1 = 0; }";
    assert_eq!(run(&["dim", "S"], set).1, "dim=1\n");
}

#[test]
fn diagonal_step_and_amalgamation() {
    let (code, out, _) = run(&["diag-step", "(e1,e2,k)", "(0,0,k)"], "");
    assert_eq!(code, 0);
    let env = Env::from_source(&out).unwrap();
    let Some(Object::Tuple(mid)) = env.get("mid") else { panic!() };
    assert_eq!(mid[0], mid[1]);
    assert!(out.contains("# rank_drop=1"));

    let src = "tuple a = (e1)\ntuple a' = (k)\ntuple b = (e2)\ntuple b' = (k)\ntuple c = (e3)\ntuple c' = (e3)";
    let (code, out, _) = run(&["amalgamate", "a", "a'", "b", "b'", "c", "c'"], src);
    assert_eq!(code, 0, "{}", out);
    assert_eq!(out, "tuple bstar = (e4)\n");

    let (code, _, err) = run(&["diag-step", "(e1,e1)", "(0,0)"], "");
    assert_eq!(code, 1);
    assert!(err.starts_with("error: precondition-violated:"));
}

#[test]
fn verify_uses_the_seed_variable() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_covertorus"));
    cmd.args(["verify", "--trials", "2", "--check", "axiom2"]).env("COVERTORUS_SEED", "5");
    let a = cmd.output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("check=axiom2 trials=2 failures=0 wall_ms="), "{}", text);
}

#[test]
fn help_does_not_wait_for_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_covertorus"))
        .arg("--help")
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    let _open = child.stdin.take();
    let deadline = std::time::Instant::now() + std::time::Duration::from_secs(10);
    while child.try_wait().unwrap().is_none() {
        if std::time::Instant::now() > deadline {
            child.kill().unwrap();
            panic!("--help blocked on standard input");
        }
        std::thread::sleep(std::time::Duration::from_millis(20));
    }
    assert!(child.wait().unwrap().success());
}
