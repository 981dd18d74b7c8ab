//! Command dispatch. `run` takes the argument list and input text and
//! returns the exit code with everything that should be printed, so the
//! binary is a thin wrapper.

use std::fmt::Write;

use clap::{Parser, Subcommand};

use covertorus_core::cover::{CoverPoint, FreshIndices};
use covertorus_core::linear::LinearSet;
use covertorus_core::pqf::{locus, log_components, rank, Dimension, IrreducibleSet};
use covertorus_core::specialization::{amalgamate, diagonal_step, is_specialization, Amalgamation, Goodness};
use covertorus_core::torus::TorusPresentation;
use covertorus_core::Error;

use crate::env::{Env, Object, Renderer};
use crate::syntax::{parse, parse_tuple, Diagnostic};
use crate::verify::{self, VerifierConfig};

#[derive(Parser, Debug)]
#[command(name = "covertorus", version, about = "Exact tori, closed sets and specializations on the cover of F*")]
pub struct Cli {
    /// Input file with declarations; standard input when omitted.
    #[arg(short = 'f', long = "file", global = true)]
    pub file: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Branches of the canonical form, each with its unimodular transform.
    Canon { torus: String },
    /// Irreducible components.
    Components { torus: String },
    /// All m-th roots of an irreducible torus.
    Roots {
        #[arg(short = 'm')]
        m: u32,
        torus: String,
    },
    /// The image under x -> x^m of an irreducible torus.
    Power {
        #[arg(short = 'm')]
        m: u32,
        torus: String,
    },
    /// Intersection of two tori
    Intersect { left: String, right: String },
    /// Dimension of a torus, linear set, cell union or tuple.
    Dim {
        object: String,
        #[arg(short = 'B', default_value_t = 3)]
        bound: u32,
    },
    /// Components of log T with kernel offsets in [-B, B].
    LogComponents {
        #[arg(short = 'B')]
        bound: u32,
        torus: String,
    },
    /// Smallest constant-definable closed set containing a tuple
    Locus { tuple: String },
    /// `rank <tuple> [over <tuple>]`
    Rank {
        tuple: String,
        #[arg(num_args = 0..=2)]
        over: Vec<String>,
    },
    /// Whether the target tuple is a specialization of the source
    Spec { source: String, target: String },
    /// A tuple between source and target one rank below the source
    DiagStep { source: String, target: String },
    /// `amalgamate a a' b b' c c'`
    Amalgamate {
        #[arg(num_args = 6)]
        tuples: Vec<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Run the seeded randomized checks
    Verify {
        #[arg(long, env = "COVERTORUS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long, default_value_t = 6)]
        max_exponent: u32,
        #[arg(long, default_value_t = 3)]
        kernel_bound: u32,
        /// Run only the named checks.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Re-run a check on an instance taken from a failure certificate.
    Replay { check: String },
    /// Reprint the input; `--normalize` prints the resolved objects instead.
    Fmt {
        #[arg(long)]
        normalize: bool,
    },
}

impl Command {
    fn reads_input(&self) -> bool {
        !matches!(self, Command::Verify { .. })
    }
}

pub enum CliError {
    Parse(String),
    Domain { code: String, message: String },
}

impl CliError {
    fn domain(code: &str, message: impl Into<String>) -> Self {
        CliError::Domain { code: code.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn render(&self) -> String {
        match self {
            CliError::Parse(text) => text.clone(),
            CliError::Domain { code, message } => format!("error: {}: {}\n", code, message),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::PreconditionViolated(m) | Error::WitnessVerificationFailed(m) | Error::InvalidArgument(m) => m.clone(),
            _ => e.to_string(),
        };
        CliError::domain(e.code(), message)
    }
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (without the program name) and runs the command on
/// `input`, or on the file named by `-f`.
pub fn run<I, S>(args: I, input: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(args, || Ok(input.unwrap_or("").to_string()))
}

/// Like [`run`], but reads the input only once the arguments parse and the
/// command needs it without `-f`.
pub fn run_with<I, S>(args: I, read_input: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("covertorus")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let (src, file) = match (&cli.file, cli.command.reads_input()) {
        (Some(path), true) => match std::fs::read_to_string(path) {
            Ok(s) => (s, path.clone()),
            Err(e) => {
                let err = CliError::domain("io", format!("{}: {}", path, e));
                return Outcome { code: 1, stdout: String::new(), stderr: err.render() };
            }
        },
        (None, true) => match read_input() {
            Ok(s) => (s, "<stdin>".to_string()),
            Err(e) => {
                let err = CliError::domain("io", format!("<stdin>: {}", e));
                return Outcome { code: 1, stdout: String::new(), stderr: err.render() };
            }
        },
        (_, false) => (String::new(), String::new()),
    };
    match dispatch(&cli.command, &src, &file) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: e.render() },
    }
}

fn parse_error(d: &Diagnostic, src: &str, file: &str) -> CliError {
    CliError::Parse(d.render(src, file))
}

struct Session {
    env: Env,
}

impl Session {
    fn object(&self, name: &str) -> Result<&Object, CliError> {
        self.env.get(name).ok_or_else(|| CliError::domain("unknown-object", format!("no object named `{}`", name)))
    }

    fn torus(&self, name: &str) -> Result<&TorusPresentation, CliError> {
        match self.object(name)? {
            Object::Torus(t) => Ok(t),
            o => Err(CliError::domain("wrong-kind", format!("`{}` is a {}, not a torus", name, o.kind()))),
        }
    }

    /// A named tuple or point, or a tuple literal such as `(e1, k)`.
    fn tuple(&self, arg: &str) -> Result<Vec<CoverPoint>, CliError> {
        match self.env.get(arg) {
            Some(Object::Tuple(v)) => return Ok(v.clone()),
            Some(Object::Point(p)) => return Ok(vec![p.clone()]),
            Some(o) => return Err(CliError::domain("wrong-kind", format!("`{}` is a {}, not a tuple", arg, o.kind()))),
            None => {}
        }
        let items = parse_tuple(arg).map_err(|d| parse_error(&d, arg, "<argument>"))?;
        self.env.tuple(&items).map_err(|d| parse_error(&d, arg, "<argument>"))
    }

    fn renderer(&self) -> Renderer<'_> {
        Renderer::new(&self.env.registry)
    }

    /// Declarations for `objects`, preceded by the constants they may name.
    fn print(&self, objects: &[(String, Object)]) -> String {
        let r = self.renderer();
        let mut out = String::new();
        for d in r.const_decls() {
            let _ = writeln!(out, "{}", d);
        }
        for (name, obj) in objects {
            for d in r.object(name, obj) {
                let _ = writeln!(out, "{}", d);
            }
        }
        out
    }
}

fn dispatch(cmd: &Command, src: &str, file: &str) -> Result<(i32, String), CliError> {
    if let Command::Verify { seed, trials, max_arity, max_exponent, kernel_bound, checks } = cmd {
        let cfg = VerifierConfig {
            seed: *seed,
            trials: *trials,
            max_arity: *max_arity,
            max_exponent: *max_exponent,
            kernel_bound: *kernel_bound,
        };
        cfg.validate().map_err(|m| CliError::domain("invalid-argument", m))?;
        for name in checks {
            if verify::find_check(name).is_none() {
                return Err(CliError::domain("invalid-argument", format!("unknown check `{}`", name)));
            }
        }
        let only = (!checks.is_empty()).then_some(checks.as_slice());
        let report = verify::run_suite_with(&cfg, &verify::Hooks::default(), only);
        return Ok((if report.passed() { 0 } else { 1 }, report.render(true)));
    }

    let ast = parse(src).map_err(|d| parse_error(&d, src, file))?;
    if let Command::Fmt { normalize: false } = cmd {
        Env::resolve(&ast).map_err(|d| parse_error(&d, src, file))?;
        return Ok((0, ast.to_string()));
    }
    let env = Env::resolve(&ast).map_err(|d| parse_error(&d, src, file))?;
    let s = Session { env };

    let named = |prefix: &str, ts: Vec<TorusPresentation>| -> Vec<(String, Object)> {
        ts.into_iter().enumerate().map(|(i, t)| (format!("{}{}", prefix, i + 1), Object::Torus(t))).collect()
    };

    let out = match cmd {
        Command::Canon { torus } => {
            let t = s.torus(torus)?;
            let r = s.renderer();
            let mut out = s.print(&[]);
            for (i, b) in t.canonical_form()?.iter().enumerate() {
                let _ = writeln!(out, "# branch {} fixes {} coordinates, transform {}", i + 1, b.fixed(), b.transform);
                let _ = writeln!(out, "{}", r.torus(&format!("{}_b{}", torus, i + 1), &b.to_torus()));
            }
            out
        }
        Command::Components { torus } => {
            let t = s.torus(torus)?;
            s.print(&named(&format!("{}_c", torus), t.components()?))
        }
        Command::Roots { m, torus } => {
            positive(*m)?;
            let t = s.torus(torus)?;
            s.print(&named(&format!("{}_r", torus), t.mth_roots(*m)?))
        }
        Command::Power { m, torus } => {
            positive(*m)?;
            let t = s.torus(torus)?;
            s.print(&[(format!("{}_p{}", torus, m), Object::Torus(t.power(*m)?))])
        }
        Command::Intersect { left, right } => {
            let (a, b) = (s.torus(left)?, s.torus(right)?);
            s.print(&[(format!("{}_{}", left, right), Object::Torus(a.intersect(b)?))])
        }
        Command::Dim { object, bound } => {
            let d = match s.object(object) {
                Ok(Object::Torus(t)) => t.dimension(*bound)?,
                Ok(Object::Linear(l)) => linear_dim(l)?,
                Ok(Object::Set(set)) => set.dimension(*bound)?,
                Ok(Object::Tuple(v)) => rank(v, &[]),
                Ok(Object::Point(p)) => rank(std::slice::from_ref(p), &[]),
                Ok(Object::Param(_)) => return Err(CliError::domain("wrong-kind", "parameters have no dimension")),
                Err(_) => rank(&s.tuple(object)?, &[]),
            };
            format!("dim={}\n", d)
        }
        Command::LogComponents { bound, torus } => {
            let t = s.torus(torus)?;
            let comps = log_components(t, *bound)?;
            let objs: Vec<_> = comps
                .into_iter()
                .enumerate()
                .map(|(i, c)| (format!("{}_log{}", torus, i + 1), Object::Linear(c.into_linear())))
                .collect();
            s.print(&objs)
        }
        Command::Locus { tuple } => {
            let a = s.tuple(tuple)?;
            s.print(&[("locus".into(), Object::Linear(locus(&a).into_linear()))])
        }
        Command::Rank { tuple, over } => {
            let a = s.tuple(tuple)?;
            let base = match over.as_slice() {
                [] => Vec::new(),
                [kw, b] if kw == "over" => s.tuple(b)?,
                _ => return Err(CliError::Parse("error: expected `rank <tuple> [over <tuple>]`\n".into())),
            };
            format!("rank={}\n", rank(&a, &base))
        }
        Command::Spec { source, target } => {
            let c = is_specialization(&s.tuple(source)?, &s.tuple(target)?)?;
            match c.rank_drop {
                Some(d) => format!("specialization=true rank_drop={}\n", d),
                None => "specialization=false\n".to_string(),
            }
        }
        Command::DiagStep { source, target } => {
            let (a, b) = (s.tuple(source)?, s.tuple(target)?);
            let fresh = FreshIndices::after(a.iter().chain(&b));
            let mid = diagonal_step(&a, &b, &fresh)?;
            let drop = is_specialization(&a, &mid)?.rank_drop.unwrap_or(0);
            let mut out = s.print(&[("mid".into(), Object::Tuple(mid))]);
            let _ = writeln!(out, "# rank_drop={}", drop);
            out
        }
        Command::Amalgamate { tuples, depth } => {
            let t: Vec<Vec<CoverPoint>> = tuples.iter().map(|a| s.tuple(a)).collect::<Result<_, _>>()?;
            let p = Amalgamation { a: &t[0], a_target: &t[1], b: &t[2], b_target: &t[3], c: &t[4], c_target: &t[5] };
            let fresh = FreshIndices::after(t.iter().flatten());
            let w = amalgamate(&p, &Goodness::Regular { depth: *depth }, &fresh)?;
            s.print(&[("bstar".into(), Object::Tuple(w))])
        }
        Command::Replay { check } => {
            let verdict = verify::replay(check, &s.env, &verify::Hooks::default())
                .map_err(|m| CliError::domain("invalid-argument", m))?;
            return Ok(match verdict {
                Ok(()) => (0, format!("check={} replay=pass\n", check)),
                Err(reason) => (1, format!("check={} replay=fail reason={}\n", check, reason)),
            });
        }
        Command::Fmt { .. } => s.env.to_ast().to_string(),
        Command::Verify { .. } => unreachable!(),
    };
    Ok((0, out))
}

fn positive(m: u32) -> Result<(), CliError> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()).into());
    }
    Ok(())
}

fn linear_dim(l: &LinearSet) -> Result<usize, CliError> {
    let c = IrreducibleSet::new(l.clone()).map_err(|_| Error::EmptyWithinBound)?;
    Ok(c.dim())
}
