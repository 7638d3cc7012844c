use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use irrgeo::descent::{range_check, DescentFamily};
use irrgeo::exact_arith::fraction_string;
use irrgeo::geometry::{coverage_census, FigureFamily};
use irrgeo::number_theory::{square_density, square_triangular, triangular};
use irrgeo::report::{
    census_run, chain_run, emit_svg, resolve_pair, verify_run, PairSource, ReportFile, SvgScene,
    VerificationReport,
};
use irrgeo::ExactArrangement;

/// Exit code for a failed identity check.
const CHECK_FAILED: u8 = 2;
const USAGE: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "irrgeo",
    version,
    about = "Exact checks of geometric irrationality proofs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Descent step, symbolic identities and figure census for one pair.
    Verify(PairArgs),
    /// Coverage census of the figure for one pair.
    Census(PairArgs),
    /// Iterate the descent until it stops.
    Chain {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 20)]
        max_steps: usize,
    },
    /// Which triangular indices admit a valid descent.
    Range {
        #[arg(long, value_enum, default_value = "triangular")]
        family: FamilyArg,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
    /// Indices n ≤ limit whose triangular number is a perfect square.
    Sequence {
        #[arg(long)]
        limit: u64,
    },
    /// Share of n ≤ x with a rational square root.
    Density {
        #[arg(long)]
        x: u64,
    },
    /// Render the figure for one pair as SVG.
    Svg {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyArg {
    #[value(alias = "tennenbaum")]
    Sqrt2,
    Hex6,
    Triangular,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Triangular index, required for `--family triangular`.
    #[arg(long)]
    n: Option<u64>,
    #[arg(
        long,
        requires = "b",
        conflicts_with = "convergent",
        allow_hyphen_values = true
    )]
    a: Option<BigInt>,
    #[arg(long, requires = "a", allow_hyphen_values = true)]
    b: Option<BigInt>,
    /// Use the k-th convergent of √N (counting from 1) as the pair.
    #[arg(long)]
    convergent: Option<usize>,
    /// Write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl PairArgs {
    fn family(&self) -> Result<DescentFamily> {
        family_of(self.family, self.n)
    }

    fn source(&self) -> Result<PairSource> {
        match (&self.a, &self.b, self.convergent) {
            (Some(a), Some(b), None) => Ok(PairSource::Explicit(a.clone(), b.clone())),
            (None, None, Some(k)) => Ok(PairSource::Convergent(k)),
            _ => bail!("give either --a and --b, or --convergent"),
        }
    }
}

fn family_of(f: FamilyArg, n: Option<u64>) -> Result<DescentFamily> {
    match (f, n) {
        (FamilyArg::Sqrt2, None) => Ok(DescentFamily::Sqrt2),
        (FamilyArg::Hex6, None) => Ok(DescentFamily::Hex6),
        (FamilyArg::Triangular, Some(n)) => Ok(DescentFamily::triangular(n)?),
        (FamilyArg::Triangular, None) => bail!("--family triangular needs --n"),
        (_, Some(_)) => bail!("--n only applies to --family triangular"),
    }
}

fn print_report(rep: &VerificationReport) {
    let n = rep.n.map(|n| format!(" n={n}")).unwrap_or_default();
    let k = rep
        .convergent
        .map(|k| format!(" (convergent {k})"))
        .unwrap_or_default();
    println!(
        "{} {}{} N={} pair ({}, {}){}",
        rep.kind, rep.family, n, rep.radicand, rep.input_pair[0], rep.input_pair[1], k
    );
    if !rep.window_check.holds {
        println!("  outside construction window: {}", rep.window_check.detail);
    }
    for step in &rep.chain {
        println!(
            "  ({}, {}) -> ({}, {})  E = {} -> {}",
            step.input_pair[0],
            step.input_pair[1],
            step.output_pair[0],
            step.output_pair[1],
            step.defect_in,
            step.defect_out
        );
    }
    if let Some(d) = &rep.descent {
        let label = if rep.kind == "chain" {
            "rejected"
        } else {
            "descent"
        };
        println!(
            "  {label}: ({}, {}) -> ({}, {})  E = {} -> {}  m = {}",
            d.input_pair[0],
            d.input_pair[1],
            d.output_pair[0],
            d.output_pair[1],
            d.defect_in,
            d.defect_out,
            d.multiplier
        );
    }
    if let Some(c) = &rep.census {
        println!(
            "  areas: big {} small {} union {} blank {} exactly-2 {} exactly-3 {}",
            c.big_area,
            c.total_small_area,
            c.union_area,
            c.blank_area,
            c.exactly2_area,
            c.exactly3_area
        );
        println!(
            "  regions: {} doubly, {} triply, max depth {}",
            c.doubly_regions, c.triply_regions, c.max_depth
        );
    }
    if let Some(r) = &rep.range {
        println!("  range: {}", if r.works { "works" } else { "fails" });
    }
    if let Some(s) = &rep.stop_reason {
        println!("  stop: {s}");
    }
    for c in &rep.identity_checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        println!("  [{mark}] {}: {} = {}", c.name, c.lhs, c.rhs);
    }
    println!("result: {}", if rep.passed() { "PASS" } else { "FAIL" });
}

fn finish(rep: VerificationReport, json: Option<&PathBuf>) -> Result<u8> {
    print_report(&rep);
    let passed = rep.passed();
    if let Some(path) = json {
        ReportFile::new(vec![rep]).write(path)?;
    }
    Ok(if passed { 0 } else { CHECK_FAILED })
}

fn join(ns: &[u64]) -> String {
    ns.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify(p) => finish(verify_run(p.family()?, &p.source()?)?, p.json.as_ref()),
        Command::Census(p) => finish(census_run(p.family()?, &p.source()?)?, p.json.as_ref()),
        Command::Chain { pair, max_steps } => finish(
            chain_run(pair.family()?, &pair.source()?, max_steps)?,
            pair.json.as_ref(),
        ),
        Command::Range { family, n_max } => {
            let families: Vec<DescentFamily> = match family {
                FamilyArg::Triangular => (2..=n_max)
                    .map(DescentFamily::triangular)
                    .collect::<Result<_, _>>()?,
                f => vec![family_of(f, None)?],
            };
            let (mut works, mut fails) = (Vec::new(), Vec::new());
            for f in families {
                let r = range_check(f)?;
                let signs: Vec<String> = r
                    .witnesses
                    .iter()
                    .map(|w| format!("{}: {}", w.name, if w.holds() { "yes" } else { "no" }))
                    .collect();
                println!("{f} N={}: {}", f.radicand(), signs.join(", "));
                let n = f.index().unwrap_or(0);
                if r.works {
                    works.push(n);
                } else {
                    fails.push(n);
                }
            }
            if family == FamilyArg::Triangular {
                println!("works: {}; fails: {}", join(&works), join(&fails));
            }
            Ok(0)
        }
        Command::Sequence { limit } => {
            let seq = square_triangular(limit);
            for &n in &seq {
                let t = triangular(n);
                println!(
                    "n = {n}  T_n = {t} = {}^2",
                    t.isqrt()
                );
            }
            println!("indices: {}", join(&seq));
            Ok(0)
        }
        Command::Density { x } => {
            let d = square_density(x);
            println!("perfect squares <= {x}: {}", d.count);
            println!(
                "percent with a rational square root: {} ({:.4}%)",
                fraction_string(&d.percent_rational),
                to_f64(&d.percent_rational)
            );
            Ok(0)
        }
        Command::Svg { pair, out } => {
            let family = pair.family()?;
            let (a, b, _) = resolve_pair(family, &pair.source()?)?;
            let arr = ExactArrangement::from_integers(FigureFamily::from_descent(family), &a, &b)
                .context("no figure for this pair")?;
            let census = coverage_census(&arr)?;
            emit_svg(&SvgScene::build(&arr, &census), &out)?;
            println!("wrote {}", out.display());
            Ok(0)
        }
    }
}

fn to_f64(x: &irrgeo::Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
