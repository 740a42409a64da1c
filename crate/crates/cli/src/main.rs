mod bench;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use geoknap::core::{
    load_instance, load_packing, packing_to_json, save_instance, validate_packing, Instance,
    Packing,
};
use geoknap::gap::{
    gap_augmented, gap_dp, gap_oracle, gap_ptas, Assignment, GapConfig, GapInstance,
};
use geoknap::generate::{gen_instance, Corpus, CorpusEntry, GenConfig, Profile};
use geoknap::lpack::{full_grid, load_l_instance, lpack_exact_dp, lpack_oracle, lpack_ptas};
use geoknap::ratios::{evaluate_cases, format_case_table, worst_case_mixes};
use geoknap::solvers::{
    solve_cardinality_with, solve_rotations_with, solve_weighted_with, SolveConfig,
};
use geoknap::{Error, Rat};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "geoknap",
    version,
    about = "Two-dimensional geometric knapsack toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance, or a corpus of them with --count.
    Gen(GenArgs),
    /// Solve an instance and print a JSON summary.
    Solve(SolveArgs),
    /// Pack long items into an L-shaped region.
    Lpack(LpackArgs),
    /// Solve a generalized assignment instance.
    Gap(GapArgs),
    /// Print the case analysis table and the worst profit mixes.
    Ratios(RatiosArgs),
    /// Check a packing against an instance.
    Verify(VerifyArgs),
    /// Draw a packing as SVG.
    Render(RenderArgs),
    /// Solve every instance of a corpus and write a CSV summary.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "big-n")]
    big_n: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "uniform")]
    profile: Profile,
    #[arg(long)]
    unit_profit: bool,
    #[arg(long)]
    rotations: bool,
    /// Write a corpus of this many instances with consecutive seeds.
    #[arg(long)]
    count: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SolveMode {
    Card,
    Weighted,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Accuracy as a fraction like 1/13 or a decimal.
    #[arg(long, default_value = "1/13", value_parser = parse_rat)]
    eps: Rat,
    #[arg(long, value_enum, default_value = "weighted")]
    mode: SolveMode,
    /// Allow rotations and use the rotation solver.
    #[arg(long)]
    rotations: bool,
    /// Also run the brute-force oracle and report the ratio.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the packing JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum LpackMethod {
    Exact,
    Ptas,
    Oracle,
}

#[derive(Args)]
struct LpackArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: LpackMethod,
    #[arg(long, default_value = "1/2", value_parser = parse_rat)]
    eps: Rat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum GapMethod {
    Dp,
    Oracle,
    Augmented,
    Ptas,
}

#[derive(Args)]
struct GapArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "dp")]
    method: GapMethod,
    #[arg(long, default_value = "1/4", value_parser = parse_rat)]
    eps: Rat,
}

#[derive(Args)]
struct RatiosArgs {
    /// Print the case analysis table.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    packing: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    packing: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Comma-separated solver modes.
    #[arg(long, default_value = "card,weighted")]
    modes: String,
    #[arg(long, default_value = "1/13", value_parser = parse_rat)]
    eps: Rat,
    /// Report the optimum and ratio where known or computable.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A packing that fails validation.
#[derive(Debug, thiserror::Error)]
#[error("packing is invalid:\n{0}")]
struct ValidationFailed(String);

/// Parses `a/b` or a decimal such as `0.25`.
fn parse_rat(s: &str) -> Result<Rat, String> {
    let bad = || format!("expected a fraction like 1/13 or a decimal, got {s:?}");
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Rat::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 12 || !frac.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let int: i64 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let scale = 10i64.pow(frac.len() as u32);
    let frac: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    Ok(Rat::new(int * scale + frac, scale))
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_valid(inst: &Instance, packing: &Packing) -> anyhow::Result<()> {
    let report = validate_packing(inst, packing)?;
    if !report.is_ok() {
        return Err(ValidationFailed(report.to_string()).into());
    }
    Ok(())
}

fn gen(a: GenArgs) -> anyhow::Result<()> {
    let cfg = |seed| GenConfig {
        n: a.n,
        big_n: a.big_n,
        seed,
        profile: a.profile,
        unit_profit: a.unit_profit,
        rotations: a.rotations,
    };
    let Some(count) = a.count else {
        let inst = gen_instance(&cfg(a.seed))?;
        return match &a.out {
            Some(p) => Ok(save_instance(p, &inst)?),
            None => write_or_print(None, &geoknap::core::instance_to_json(&inst)?),
        };
    };
    let mut corpus = Corpus::default();
    for seed in a.seed..a.seed + count {
        let instance = gen_instance(&cfg(seed))?;
        let name = format!("{}-n{}-N{}-s{seed}", a.profile, a.n, a.big_n);
        corpus.entries.push(CorpusEntry {
            name,
            instance,
            optimum: None,
        });
    }
    write_or_print(a.out.as_deref(), &corpus.to_json()?)
}

fn solve(a: SolveArgs) -> anyhow::Result<()> {
    let mut inst = load_instance(&a.input)?;
    if a.rotations {
        inst = inst.with_rotations(true);
    }
    let cfg = SolveConfig {
        run_oracle: a.oracle,
        seed: a.seed,
        ..SolveConfig::default()
    };
    let report = if a.rotations {
        solve_rotations_with(&inst, a.eps, &cfg)?
    } else {
        match a.mode {
            SolveMode::Card => solve_cardinality_with(&inst, a.eps, &cfg)?,
            SolveMode::Weighted => solve_weighted_with(&inst, a.eps, &cfg)?,
        }
    };
    check_valid(&inst, &report.best)?;
    if let Some(p) = &a.out {
        fs::write(p, packing_to_json(&report.best)?)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    let summary = json!({
        "profit": report.profit,
        "items": report.best.len(),
        "oracle": report.oracle,
        "ratio": report.ratio,
        "candidates": report.candidates,
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

fn lpack(a: LpackArgs) -> anyhow::Result<()> {
    let l = load_l_instance(&a.input)?;
    let (profit, packing) = match a.method {
        LpackMethod::Exact => {
            let grid = full_grid(l.shape.n);
            lpack_exact_dp(&l, &grid, &grid)?
        }
        LpackMethod::Ptas => lpack_ptas(&l, a.eps)?,
        LpackMethod::Oracle => lpack_oracle(&l)?,
    };
    let inst = l.instance();
    check_valid(&inst, &packing)?;
    let placed = packing.placed(&inst)?;
    if let Some(p) = placed.iter().find(|p| !l.shape.contains(p)) {
        return Err(ValidationFailed(format!("item {} leaves the L-shaped region", p.id)).into());
    }
    if let Some(p) = &a.out {
        fs::write(p, packing_to_json(&packing)?)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    println!("{}", json!({ "profit": profit, "items": packing.len() }));
    Ok(())
}

fn gap(a: GapArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&a.input).map_err(Error::from)?;
    let g: GapInstance = serde_json::from_str(&text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    g.check()?;
    let cfg = GapConfig::default();
    let (profit, assignment): (i64, Assignment) = match a.method {
        GapMethod::Dp => gap_dp(&g, &cfg)?,
        GapMethod::Oracle => gap_oracle(&g, &cfg)?,
        GapMethod::Augmented => gap_augmented(&g, a.eps, &cfg)?,
        GapMethod::Ptas => gap_ptas(&g, a.eps, &cfg)?,
    };
    let feasible = match a.method {
        GapMethod::Augmented => g.is_feasible_scaled(&assignment, Rat::from_integer(1) + a.eps),
        _ => g.is_feasible(&assignment),
    };
    if !feasible {
        return Err(ValidationFailed("assignment exceeds a bin capacity".into()).into());
    }
    println!(
        "{}",
        json!({ "profit": profit, "bins": assignment.bins, "loads": g.loads(&assignment) })
    );
    Ok(())
}

fn ratios(a: RatiosArgs) -> anyhow::Result<()> {
    if a.table {
        print!("{}", format_case_table(&evaluate_cases()?));
    }
    for mix in worst_case_mixes()? {
        let shares: Vec<String> = mix
            .shares
            .iter()
            .zip(&mix.solution.x)
            .map(|(name, x)| format!("{name}={x}"))
            .collect();
        println!(
            "{} mix value {} at {}",
            mix.name,
            mix.solution.z,
            shares.join(" ")
        );
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> anyhow::Result<()> {
    let inst = load_instance(&a.instance)?;
    let packing = load_packing(&a.packing)?;
    check_valid(&inst, &packing)?;
    println!(
        "valid packing of {} items with profit {}",
        packing.len(),
        packing.profit(&inst)
    );
    Ok(())
}

fn render_cmd(a: RenderArgs) -> anyhow::Result<()> {
    let inst = load_instance(&a.instance)?;
    let packing = load_packing(&a.packing)?;
    check_valid(&inst, &packing)?;
    let svg = render::render_svg(&inst, &packing)?;
    fs::write(&a.out, svg).with_context(|| format!("writing {}", a.out.display()))?;
    Ok(())
}

fn bench_cmd(a: BenchArgs) -> anyhow::Result<()> {
    let text = fs::read_to_string(&a.corpus).map_err(Error::from)?;
    let corpus = Corpus::parse(&text)?;
    let modes = a
        .modes
        .split(',')
        .map(|m| bench::Mode::parse(m.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = SolveConfig {
        seed: a.seed,
        ..SolveConfig::default()
    };
    let rows = bench::run(&corpus, &modes, a.eps, &cfg, a.oracle)?;
    match &a.out {
        Some(p) => {
            let f = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            bench::write_csv(&rows, f)
        }
        None => bench::write_csv(&rows, std::io::stdout().lock()),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ValidationFailed>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Resource { .. }) => 3,
        Some(Error::Parse { .. }) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Lpack(a) => lpack(a),
        Command::Gap(a) => gap(a),
        Command::Ratios(a) => ratios(a),
        Command::Verify(a) => verify(a),
        Command::Render(a) => render_cmd(a),
        Command::Bench(a) => bench_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
