use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use geokit::cyclotomic::dump_table;
use geokit::geography::builtin_blocks;
use geokit::lattice::{snf, IntMatrix};
use geokit::presentation::Presentation;
use geokit::recipe::{builtin_recipe, builtin_recipe_names, exit, run_recipe, Recipe, Report};
use geokit::sweep::{grid, sweep_recipe};

#[derive(Parser)]
#[command(
    name = "geokit",
    version,
    about = "Invariant bookkeeping for symplectic 4-manifold constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(name = "json-like", alias = "json")]
    JsonLike,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in recipe by name, or a recipe file.
    Run {
        recipe: String,
        #[arg(long = "param", value_name = "K=V", value_parser = parse_param)]
        params: Vec<(String, i64)>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a recipe over a parameter grid, one summary line per point.
    Sweep {
        recipe: String,
        /// Axis such as `n=2..6` or `p=7`.
        #[arg(long = "axis", value_name = "K=LO..HI", value_parser = parse_axis)]
        axes: Vec<(String, i64, i64)>,
    },
    /// List built-in recipes, or print one in recipe syntax.
    Recipes { name: Option<String> },
    /// Print the built-in block table.
    Blocks {
        #[arg(long)]
        list: bool,
    },
    /// Check the lattice generators and relations.
    CsVerify {
        #[arg(long)]
        dump_generators: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// First homology of a presentation file.
    H1 { file: PathBuf },
    /// Smith normal form of a matrix file (whitespace-separated integer rows).
    Snf {
        file: PathBuf,
        /// Also print U and V.
        #[arg(long)]
        full: bool,
    },
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected K=V, got `{s}`"))?;
    let v = v.trim().parse::<i64>().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_axis(s: &str) -> Result<(String, i64, i64), String> {
    let (k, r) = s
        .split_once('=')
        .ok_or_else(|| format!("expected K=LO..HI, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    let (lo, hi) = match r.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(r)?, num(r)?),
    };
    if lo > hi {
        return Err(format!("empty range `{r}`"));
    }
    Ok((k.trim().to_string(), lo, hi))
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("geokit: {msg}");
    ExitCode::from(code as u8)
}

fn read(path: &Path) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| fail(exit::PARSE_ERROR, format!("{}: {e}", path.display())))
}

fn load_recipe(spec: &str) -> Result<Recipe, ExitCode> {
    if builtin_recipe_names().contains(&spec) {
        return Ok(builtin_recipe(spec).expect("registered"));
    }
    let path = Path::new(spec);
    if !path.exists() {
        let known = builtin_recipe_names().join(", ");
        return Err(fail(
            exit::PARSE_ERROR,
            format!("`{spec}` is neither a built-in recipe ({known}) nor a file"),
        ));
    }
    let text = read(path)?;
    Recipe::parse(&text).map_err(|e| fail(exit::PARSE_ERROR, format!("{spec}:{e}")))
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{report}"),
        Format::JsonLike => println!("{}", report.to_json()),
    }
}

fn run(spec: &str, params: &[(String, i64)], format: Format) -> ExitCode {
    let recipe = match load_recipe(spec) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let recipe = match recipe.with_params(params) {
        Ok(r) => r,
        Err(e) => return fail(exit::PARSE_ERROR, e),
    };
    match run_recipe(&recipe) {
        Ok(report) => {
            emit(&report, format);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit::ASSERTION_FAILED as u8)
            }
        }
        Err(e) => fail(exit::STEP_ERROR, e),
    }
}

fn sweep(spec: &str, axes: &[(String, i64, i64)]) -> ExitCode {
    let recipe = match load_recipe(spec) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let ranges: Vec<(&str, std::ops::RangeInclusive<i64>)> =
        axes.iter().map(|(k, lo, hi)| (k.as_str(), *lo..=*hi)).collect();
    let points = grid(&ranges);
    let mut worst = exit::OK;
    for (point, res) in points.iter().zip(sweep_recipe(&recipe, &points)) {
        let label: Vec<String> = point.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let label = label.join(" ");
        match res {
            Ok(rep) => {
                let verdict = if rep.passed() { "PASS" } else { "FAIL" };
                let summary = rep
                    .result
                    .as_ref()
                    .map(|r| format!("e={} sigma={}", r.euler, r.signature))
                    .unwrap_or_default();
                let h1 = rep
                    .h1
                    .as_ref()
                    .map(|h| format!(" H1={}", h.group))
                    .unwrap_or_default();
                let flags = rep.discrepancies.iter().filter(|d| d.flagged).count();
                println!("{verdict} {label:<20} {summary}{h1} flags={flags}");
                if !rep.passed() {
                    worst = worst.max(exit::ASSERTION_FAILED);
                }
            }
            Err(e) => {
                println!("ERROR {label:<20} {e}");
                worst = worst.max(exit::STEP_ERROR);
            }
        }
    }
    ExitCode::from(worst as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            recipe,
            params,
            format,
        } => run(&recipe, &params, format),
        Command::Sweep { recipe, axes } => sweep(&recipe, &axes),
        Command::Recipes { name: None } => {
            for n in builtin_recipe_names() {
                println!("{n}");
            }
            ExitCode::SUCCESS
        }
        Command::Recipes { name: Some(n) } => match builtin_recipe(&n) {
            Ok(r) => {
                print!("{r}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(exit::PARSE_ERROR, e),
        },
        Command::Blocks { list: _ } => {
            for b in builtin_blocks() {
                println!("{}", b.table_row());
            }
            ExitCode::SUCCESS
        }
        Command::CsVerify {
            dump_generators,
            format,
        } => {
            if dump_generators {
                print!("{}", dump_table());
                return ExitCode::SUCCESS;
            }
            run("cs-verify", &[], format)
        }
        Command::H1 { file } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(c) => return c,
            };
            match Presentation::parse(&text) {
                Ok(p) => {
                    let suffix = if p.has_rational_assumptions() {
                        " (lower bound)"
                    } else {
                        ""
                    };
                    println!("{}{suffix}", p.h1());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(exit::PARSE_ERROR, format!("{}: {e}", file.display())),
            }
        }
        Command::Snf { file, full } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(c) => return c,
            };
            match IntMatrix::parse(&text) {
                Ok(m) => {
                    let r = snf(&m);
                    let factors: Vec<String> = r.invariant_factors.iter().map(|d| d.to_string()).collect();
                    println!("invariant factors: {}", factors.join(" "));
                    println!("cokernel: {}", geokit::lattice::cokernel(&m));
                    if full {
                        print!("S =\n{}", r.s);
                        print!("U =\n{}", r.u);
                        print!("V =\n{}", r.v);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(exit::PARSE_ERROR, format!("{}: {e}", file.display())),
            }
        }
    }
}
