//! `treedepth`: generate caterpillar and lobster trees, export powers of
//! their edge ideals, compute depth and Stanley depth, and verify the
//! closed-form bounds over parameter grids.
//!
//! Exit codes: 0 success, 1 mathematical violation, 2 usage error,
//! 3 resource cap.

use std::fs;
use std::io::{ErrorKind, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use treedepth::io::{
    betti_to_json, certificate_from_json, certificate_to_json, graph_from_json, graph_to_json,
    ideal_from_json, ideal_to_json,
};
use treedepth::{
    betti_numbers, char_poset, check_certificate, compare, depth_quotient, edge_ideal, run_grid,
    run_lemmas, sdepth_quotient, verify_certificate, Error, ExecMode, Family, FamilyKind, Fault,
    GridSpec, LemmaConfig, Limits, PrimeField, Suite, DEFAULT_FIELD_CHAR,
};

#[derive(Parser)]
#[command(name = "treedepth", version, about = "Depth and Stanley depth of powers of edge ideals of trees")]
struct Cli {
    /// Prime characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = DEFAULT_FIELD_CHAR)]
    field_char: u64,
    /// Wall-clock budget in seconds (per grid cell for `verify`).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for `verify` (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Run every engine on the sequential path.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a family member as graph JSON.
    Gen {
        #[command(subcommand)]
        family: FamilyArgs,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Write the minimal generators of I(G)^t as ideal JSON.
    Ideal {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print depth(S/I), then the JSON detail.
    Depth { ideal: PathBuf },
    /// Print sdepth(S/I), then a JSON summary; optionally save the certificate.
    Sdepth {
        ideal: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Where the search starts; defaults to depth(S/I).
        #[arg(long)]
        hint: Option<usize>,
    },
    /// Check a Stanley certificate against an ideal.
    CheckCert { ideal: PathBuf, certificate: PathBuf },
    /// Write the multigraded Betti numbers of S/I as JSON.
    Betti {
        ideal: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the new and prior bounds for one family member.
    Bound {
        #[command(subcommand)]
        family: FamilyArgs,
        #[arg(long, global = true, default_value_t = 1)]
        t: usize,
        /// Also compute the exact depth and sdepth.
        #[arg(long, global = true)]
        exact: bool,
    },
    /// Check the bounds over a parameter grid. Writes CSV, or JSON when the
    /// output path ends in `.json`.
    Verify {
        #[command(subcommand)]
        grid: GridArgs,
        /// Power range, such as `1..2`.
        #[arg(long, global = true, default_value = "1", value_parser = parse_range)]
        t: RangeInclusive<usize>,
        #[arg(long, global = true)]
        exact: bool,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run the ideal-identity and structural property suites.
    Lemmas {
        #[arg(long, default_value_t = 42, value_parser = clap::value_parser!(u64).range(1..))]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        /// Corrupt one side of every check, as a negative control.
        #[arg(long)]
        fault: Option<FaultArg>,
        /// Restrict to the named suites.
        #[arg(long = "suite", value_enum)]
        suites: Vec<SuiteArg>,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum FamilyArgs {
    Caterpillar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    Lobster {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
}

impl From<FamilyArgs> for Family {
    fn from(f: FamilyArgs) -> Family {
        match f {
            FamilyArgs::Caterpillar { n, k, l } => Family::Caterpillar { n, k, l },
            FamilyArgs::Lobster { r, p, q } => Family::Lobster { r, p, q },
        }
    }
}

#[derive(Args, Clone)]
struct CaterpillarRanges {
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    k: RangeInclusive<usize>,
    /// Defaults to every admissible value.
    #[arg(long, value_parser = parse_range)]
    l: Option<RangeInclusive<usize>>,
}

#[derive(Args, Clone)]
struct LobsterRanges {
    #[arg(long, value_parser = parse_range)]
    r: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    p: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    q: Option<RangeInclusive<usize>>,
}

#[derive(Subcommand, Clone)]
enum GridArgs {
    Caterpillar(CaterpillarRanges),
    Lobster(LobsterRanges),
}

#[derive(ValueEnum, Clone, Copy)]
enum FaultArg {
    DropGenerator,
    ShiftDepth,
}

#[derive(ValueEnum, Clone, Copy)]
enum SuiteArg {
    LeafColon,
    SpineTruncation,
    LobsterTruncation,
    Restriction,
    Adjunction,
    DisjointSum,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::LeafColon => Suite::LeafColon,
            SuiteArg::SpineTruncation => Suite::SpineTruncation,
            SuiteArg::LobsterTruncation => Suite::LobsterTruncation,
            SuiteArg::Restriction => Suite::Restriction,
            SuiteArg::Adjunction => Suite::Adjunction,
            SuiteArg::DisjointSum => Suite::DisjointSum,
        }
    }
}

/// Accepts `a`, `a..b` or `a..=b`, all inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    match s.split_once("..") {
        None => num(s).map(|v| v..=v),
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
    }
}

enum Failure {
    Violation(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_resource() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => {
                Err(Failure::Usage(format!("cannot write to stdout: {e}")))
            }
            _ => Ok(()),
        },
    }
}

fn say(line: impl std::fmt::Display) -> Outcome {
    emit(None, &format!("{line}\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(m)) => {
            eprintln!("violation: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("capped: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let field = PrimeField::new(cli.field_char)?;
    let mode = if cli.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    };
    let base = Limits::from_env().with_mode(mode);
    let budget = cli.budget.map(Duration::from_secs);
    let limits = match budget {
        Some(b) => base.clone().with_budget(b),
        None => base.clone(),
    };

    match cli.cmd {
        Cmd::Gen { family, output } => {
            let g = Family::from(family).build()?;
            emit(output.as_deref(), &graph_to_json(&g))
        }
        Cmd::Ideal { graph, t, output } => {
            if t == 0 {
                return Err(Failure::Usage("t must be at least 1".into()));
            }
            let g = graph_from_json(&read(&graph)?)?;
            let i = edge_ideal(&g).power_with(t, mode)?;
            emit(output.as_deref(), &ideal_to_json(&i))
        }
        Cmd::Depth { ideal } => {
            let i = ideal_from_json(&read(&ideal)?)?;
            let r = depth_quotient(&i, field, &limits)?;
            say(format_args!("{}", r.depth))?;
            say(format_args!("{}", serde_json::to_string(&r).expect("plain data")))?;
            Ok(())
        }
        Cmd::Sdepth { ideal, certificate, hint } => {
            let i = ideal_from_json(&read(&ideal)?)?;
            let hint = match hint {
                Some(h) => h,
                None => depth_quotient(&i, field, &limits)?.depth,
            };
            let r = sdepth_quotient(&i, Some(hint), &limits)?;
            let p = char_poset(&i, &limits)?;
            if !verify_certificate(&p, &r.certificate) {
                return Err(Failure::Violation("the certificate failed independent verification".into()));
            }
            say(format_args!("{}", r.sdepth))?;
            let summary = json!({
                "sdepth": r.sdepth,
                "intervals": r.certificate.intervals.len(),
                "poset_points": p.len(),
                "next_refuted_by": format!("{:?}", r.refutation),
            });
            say(format_args!("{summary}"))?;
            match certificate {
                Some(path) => emit(Some(&path), &certificate_to_json(&r.certificate)),
                None => Ok(()),
            }
        }
        Cmd::CheckCert { ideal, certificate } => {
            let i = ideal_from_json(&read(&ideal)?)?;
            let cert = certificate_from_json(&read(&certificate)?)?;
            let p = char_poset(&i, &limits)?;
            match check_certificate(&p, &cert) {
                Ok(()) => {
                    say(format_args!("valid: sdepth >= {}", cert.claimed_d))?;
                    Ok(())
                }
                Err(e) => Err(Failure::Violation(format!("invalid certificate: {e}"))),
            }
        }
        Cmd::Betti { ideal, output } => {
            let i = ideal_from_json(&read(&ideal)?)?;
            let b = betti_numbers(&i, field, &limits)?;
            emit(output.as_deref(), &betti_to_json(&b))
        }
        Cmd::Bound { family, t, exact } => {
            let report = compare(family.into(), t, exact, field, &limits)?;
            say(format_args!("{}", serde_json::to_string_pretty(&report).expect("plain data")))?;
            if !report.is_sound() {
                return Err(Failure::Violation(format!(
                    "an exact value is below the bound {}",
                    report.new_bound
                )));
            }
            if report.exact_depth.is_capped() || report.exact_sdepth.is_capped() {
                eprintln!("warning: an exact value was capped");
            }
            Ok(())
        }
        Cmd::Verify { grid, t, exact, seed, output } => {
            let mut spec = match grid {
                GridArgs::Caterpillar(c) => {
                    let mut s = GridSpec::new(FamilyKind::Caterpillar, c.n, c.k, t);
                    s.third = c.l;
                    s
                }
                GridArgs::Lobster(c) => {
                    let mut s = GridSpec::new(FamilyKind::Lobster, c.r, c.p, t);
                    s.third = c.q;
                    s
                }
            };
            spec.compute_exact = exact;
            spec.field = field;
            spec.seed = seed;
            spec.workers = cli.workers;
            if let Some(b) = budget {
                spec.cell_budget = b;
            }
            let report = run_grid(&spec, &base)?;
            let as_json = output
                .as_deref()
                .and_then(Path::extension)
                .is_some_and(|e| e == "json");
            let text = if as_json { report.to_json() } else { report.to_csv() };
            emit(output.as_deref(), &text)?;
            eprintln!(
                "{} rows, {} capped, {} bound violations",
                report.rows.len(),
                report.capped(),
                report.violations()
            );
            if report.capped() > 0 {
                eprintln!("warning: capped rows carry no exact values");
            }
            match report.violations() {
                0 => Ok(()),
                v => Err(Failure::Violation(format!("{v} rows fall below the new bound"))),
            }
        }
        Cmd::Lemmas { seed, cases, fault, suites } => {
            let mut cfg = LemmaConfig::new(seed, cases as usize);
            cfg.field = field;
            cfg.limits = limits;
            cfg.fault = fault.map(|f| match f {
                FaultArg::DropGenerator => Fault::DropGenerator,
                FaultArg::ShiftDepth => Fault::ShiftDepth,
            });
            if !suites.is_empty() {
                cfg.suites = suites.into_iter().map(Suite::from).collect();
            }
            let report = run_lemmas(&cfg)?;
            for s in &report.suites {
                let verdict = if s.all_passed() { "pass" } else { "FAIL" };
                say(format_args!("{:<20} {}/{} {verdict}", s.suite.name(), s.passed, s.cases))?;
            }
            let failed: Vec<_> = report
                .suites
                .iter()
                .filter_map(|s| s.counterexample.as_ref().map(|c| (s.suite, c)))
                .collect();
            for (suite, c) in &failed {
                let shown = json!({ "suite": suite.name(), "seed": seed, "counterexample": c });
                say(format_args!("{}", serde_json::to_string(&shown).expect("plain data")))?;
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Violation(format!("{} suites found a counterexample", failed.len())))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("2..4").unwrap(), 2..=4);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert!(parse_range("a..4").is_err());
    }
}
