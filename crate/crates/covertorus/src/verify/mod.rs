//! Seeded randomized checks of the torus fragment, with replayable
//! failure certificates.
//!
//! Each trial draws from `ChaCha8` seeded with the config seed, on stream
//! `(check index << 32) | trial index`, so trials are independent of each
//! other and of the order they run in.

mod checks;
pub mod gen;

use std::fmt::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use covertorus_core::pqf::IrreducibleSet;
use covertorus_core::Result as CoreResult;

use crate::env::Env;

pub use checks::CHECKS;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifierConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_arity: usize,
    pub max_exponent: u32,
    pub kernel_bound: u32,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        VerifierConfig { seed: 0, trials: 100, max_arity: 4, max_exponent: 6, kernel_bound: 3 }
    }
}

impl VerifierConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        VerifierConfig { seed, trials, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.max_arity == 0 || self.max_exponent == 0 || self.kernel_bound == 0 {
            return Err("max_arity, max_exponent and kernel_bound must be positive".into());
        }
        Ok(())
    }
}

pub type IntersectFn = fn(&IrreducibleSet, &IrreducibleSet) -> CoreResult<Vec<IrreducibleSet>>;

/// Replaceable operations, so a test can break one and watch the suite
/// catch it.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub intersect: IntersectFn,
}

fn intersect_irreducible(a: &IrreducibleSet, b: &IrreducibleSet) -> CoreResult<Vec<IrreducibleSet>> {
    Ok(a.intersect(b)?.into_iter().collect())
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks { intersect: intersect_irreducible }
    }
}

pub struct Check {
    pub name: &'static str,
    pub generate: fn(&VerifierConfig, &mut ChaCha8Rng) -> Env,
    pub run: fn(&Env, &Hooks) -> Result<(), String>,
}

pub fn find_check(name: &str) -> Option<(usize, &'static Check)> {
    CHECKS.iter().enumerate().find(|(_, c)| c.name == name)
}

pub fn trial_rng(seed: u64, check: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((check as u64) << 32) | trial as u64);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub reason: String,
    pub instance: Env,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub wall: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One header line per check, each failure indented under it with its
    /// instance as declarations. `wall_ms` closes the header when asked for.
    pub fn render(&self, with_time: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "check={} trials={} failures={}", c.name, c.trials, c.failures.len());
            if with_time {
                let _ = write!(out, " wall_ms={}", c.wall.as_millis());
            }
            out.push('\n');
            for f in &c.failures {
                let _ = writeln!(out, "  failure trial={} reason={}", f.trial, f.reason.replace('\n', " "));
                for line in f.instance.to_ast().to_string().lines() {
                    let _ = writeln!(out, "    {}", line);
                }
            }
        }
        out
    }
}

/// Drops the wall-time field from rendered report lines.
pub fn strip_wall_time(report: &str) -> String {
    report
        .lines()
        .map(|l| match l.find(" wall_ms=") {
            Some(i) if l.starts_with("check=") => &l[..i],
            _ => l,
        })
        .fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        })
}

fn run_guarded(check: &Check, env: &Env, hooks: &Hooks) -> Result<(), String> {
    match catch_unwind(AssertUnwindSafe(|| (check.run)(env, hooks))) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {}", msg))
        }
    }
}

pub fn run_check(cfg: &VerifierConfig, index: usize, hooks: &Hooks) -> CheckReport {
    let check = &CHECKS[index];
    let start = Instant::now();
    let failures: Vec<Failure> = (0..cfg.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let mut rng = trial_rng(cfg.seed, index, trial);
            let instance = (check.generate)(cfg, &mut rng);
            run_guarded(check, &instance, hooks).err().map(|reason| Failure { trial, reason, instance })
        })
        .collect();
    CheckReport { name: check.name, trials: cfg.trials, failures, wall: start.elapsed() }
}

pub fn run_suite(cfg: &VerifierConfig) -> Report {
    run_suite_with(cfg, &Hooks::default(), None)
}

/// Runs every check, or only those named in `only`.
pub fn run_suite_with(cfg: &VerifierConfig, hooks: &Hooks, only: Option<&[String]>) -> Report {
    let checks = (0..CHECKS.len())
        .filter(|&i| only.is_none_or(|names| names.iter().any(|n| n == CHECKS[i].name)))
        .map(|i| run_check(cfg, i, hooks))
        .collect();
    Report { checks }
}

/// Runs a named check on a recorded instance.
pub fn replay(name: &str, instance: &Env, hooks: &Hooks) -> Result<Result<(), String>, String> {
    let (_, check) = find_check(name).ok_or_else(|| format!("unknown check `{}`", name))?;
    Ok(run_guarded(check, instance, hooks))
}

/// Splits a rendered report back into `(check, trial, instance text)`.
pub fn certificates(report: &str) -> Vec<(String, usize, String)> {
    let mut out = Vec::new();
    let mut check = String::new();
    for line in report.lines() {
        if let Some(rest) = line.strip_prefix("check=") {
            check = rest.split_whitespace().next().unwrap_or("").to_string();
        } else if let Some(rest) = line.strip_prefix("  failure trial=") {
            let trial = rest.split_whitespace().next().and_then(|t| t.parse().ok()).unwrap_or(0);
            out.push((check.clone(), trial, String::new()));
        } else if let Some(body) = line.strip_prefix("    ") {
            if let Some(last) = out.last_mut() {
                last.2.push_str(body);
                last.2.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible() {
        let cfg = VerifierConfig::new(1, 1);
        let a = gen::generate_torus(&cfg, &mut trial_rng(1, 0, 0));
        let b = gen::generate_torus(&cfg, &mut trial_rng(1, 0, 0));
        assert_eq!(a, b);
        assert!(a.is_consistent());
    }

    #[test]
    fn generation_respects_bounds() {
        let cfg = VerifierConfig { max_arity: 1, max_exponent: 1, ..VerifierConfig::new(3, 1) };
        for trial in 0..50 {
            let t = gen::generate_torus(&cfg, &mut trial_rng(3, 0, trial));
            assert_eq!(t.arity(), 1);
            for r in t.rows() {
                assert!(r.exponents.iter().all(|z| z.magnitude() <= &1u32.into()));
            }
        }
    }

    #[test]
    fn zero_trials_pass_vacuously() {
        let report = run_suite(&VerifierConfig::new(7, 0));
        assert_eq!(report.checks.len(), CHECKS.len());
        assert!(report.passed());
        assert!(report.render(false).lines().all(|l| l.ends_with("trials=0 failures=0")));
    }

    #[test]
    fn wall_time_is_stripped() {
        let text = "check=a trials=1 failures=0 wall_ms=12\n  failure trial=0 reason=x wall_ms=3\n";
        assert_eq!(strip_wall_time(text), "check=a trials=1 failures=0\n  failure trial=0 reason=x wall_ms=3\n");
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&VerifierConfig::new(11, 12));
        assert!(report.passed(), "{}", report.render(true));
    }
}
