use std::fs;
use std::path::{Path, PathBuf};

use covertorus::env::{Env, Object, Renderer};
use covertorus::syntax::{line_col, parse};
use covertorus::verify::{gen, trial_rng, VerifierConfig};
use proptest::prelude::*;

fn files(dir: &str) -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(dir);
    let mut out: Vec<_> = fs::read_dir(root).unwrap().map(|e| e.unwrap().path()).collect();
    out.sort();
    out
}

#[test]
fn corpus_round_trips() {
    let corpus = files("corpus");
    assert!(corpus.len() >= 30, "corpus has {} files", corpus.len());
    for path in corpus {
        let src = fs::read_to_string(&path).unwrap();
        let ast = parse(&src).unwrap_or_else(|d| panic!("{}", d.render(&src, &path.display().to_string())));
        let printed = ast.to_string();
        assert_eq!(parse(&printed).unwrap(), ast, "{}", path.display());
        assert_eq!(parse(&printed).unwrap().to_string(), printed);

        let env = Env::resolve(&ast).unwrap();
        let again = Env::from_source(&env.to_ast().to_string()).unwrap();
        assert_eq!(again, env, "{}", path.display());
    }
}

#[test]
fn malformed_inputs_point_at_the_fault() {
    let cases = files("malformed");
    assert!(cases.len() >= 10);
    for path in cases {
        let src = fs::read_to_string(&path).unwrap();
        let expect = src.lines().next().unwrap().trim_start_matches("# expect ").to_string();
        let d = match parse(&src) {
            Ok(ast) => Env::resolve(&ast).expect_err("input should not resolve"),
            Err(d) => d,
        };
        let (line, col) = line_col(&src, d.span.start);
        assert_eq!(format!("{}:{}", line, col), expect, "{}: {}", path.display(), d.message);

        let out = covertorus::cli::run(["fmt", "-f", path.to_str().unwrap()], None);
        assert_eq!(out.code, 2, "{}", path.display());
        assert!(out.stderr.contains(&format!(":{}: error:", expect)), "{}", out.stderr);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Generated objects print to text that resolves back to them.
    #[test]
    fn rendered_objects_reparse(seed in 0u64..10_000) {
        let cfg = VerifierConfig::default();
        let mut rng = trial_rng(seed, 99, 0);
        let mut env = Env::new();
        env.insert("T", Object::Torus(gen::generate_torus(&cfg, &mut rng)));
        env.insert("t", Object::Tuple(gen::tuple(&mut rng, 3, 3)));
        env.insert("L", Object::Linear(gen::irreducible_set(&mut rng, 3)));
        let text = env.to_ast().to_string();
        let back = Env::from_source(&text).unwrap();
        prop_assert_eq!(&back, &env);
        let r = Renderer::new(&back.registry);
        prop_assert_eq!(r.object("T", back.get("T").unwrap()), r.object("T", env.get("T").unwrap()));
    }
}
