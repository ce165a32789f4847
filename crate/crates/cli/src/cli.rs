//! `matpow` subcommands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use matpow_core::bounds::{self, BoundsReport, StationarityProbe};
use matpow_core::construction::{self, check_conditions, ConditionReport};
use matpow_core::grid::{margins, objective, validate_grid};
use matpow_core::search::{ClimbConfig, InitStrategy, MovePolicy};

use crate::error::CliError;
use crate::format::{self, Format};
use crate::parallel;
use crate::report::{BoundsJson, ObjectiveJson, OracleJson, RestartLine, SearchJson};

#[derive(Debug, Parser)]
#[command(name = "matpow", version, about = "Extremal entry sums of squared permutation grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    Best,
    First,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the border construction A_n (or A'_n with --primed).
    Construct {
        n: usize,
        #[arg(long)]
        primed: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Exact lower, trivial lower and upper bounds on p_n.
    Bounds {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Validate a grid file and report objective, margins, mu and conditions.
    Objective {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Multi-restart hill climbing.
    Search {
        n: usize,
        #[arg(long)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "best")]
        policy: PolicyArg,
        /// Start restart 0 from the construction A_n.
        #[arg(long)]
        construction_seed: bool,
        #[arg(long = "max-iter")]
        max_iter: Option<u64>,
    },
    /// Exhaustive p_n for n <= 3.
    Oracle {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Bounds and construction values for n = 1..=n_max.
    Table {
        n_max: usize,
        #[arg(long)]
        csv: bool,
        /// Add a search_best column using this many construction-seeded restarts.
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Frobenius norm of the stationarity residual for a matrix file.
    Residual {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code. Errors go to `err` as one JSON line.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let first = e.to_string();
            let first = first.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            let _ = writeln!(err, "{}", CliError::usage(first).to_json_line());
            return 2;
        }
    };
    match run(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json_line());
            e.kind.code()
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::usage(format!("write failed: {e}"))
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Construct { n, primed, format } => {
            let g = if primed { construction::build_prime(n)? } else { construction::build(n)? };
            let fmt = match format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            };
            write!(out, "{}", format::emit_grid(&g, fmt)).map_err(io_err)
        }
        Command::Bounds { n, json } => {
            let r = BoundsReport::compute(n)?;
            if json {
                let line = serde_json::to_string(&BoundsJson::from(&r)).expect("serializes");
                writeln!(out, "{line}").map_err(io_err)
            } else {
                let known = r.known_exact.map_or("-".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "n {}\ntrivial_lower {}\nlower {}\nupper {}\nknown_exact {known}",
                    r.n, r.trivial_lower, r.lower, r.upper
                )
                .map_err(io_err)
            }
        }
        Command::Objective { file, json } => {
            let g = format::parse_grid(&read_file(&file)?)?;
            validate_grid(&g)?;
            let value = objective(&g)?;
            let m = margins(&g)?;
            let mu = bounds::mu_implied(&g.to_real());
            let cond = check_conditions(&g)?;
            if json {
                let rec = ObjectiveJson::new(g.n(), value, &m, mu, &cond);
                writeln!(out, "{}", serde_json::to_string(&rec).expect("serializes")).map_err(io_err)
            } else {
                write_objective_text(out, value, &m, mu, &cond).map_err(io_err)
            }
        }
        Command::Search { n, restarts, seed, policy, construction_seed, max_iter } => {
            let config = ClimbConfig::new(restarts, seed)?
                .with_policy(match policy {
                    PolicyArg::Best => MovePolicy::BestImprovement,
                    PolicyArg::First => MovePolicy::FirstImprovement,
                })
                .with_init(if construction_seed {
                    InitStrategy::ConstructionSeeded
                } else {
                    InitStrategy::RandomShuffle
                })
                .with_max_iterations(max_iter);
            let (result, outcomes) = parallel::search_best(n, &config, parallel::thread_count()?)?;
            for o in &outcomes {
                let line = serde_json::to_string(&RestartLine::from(o)).expect("serializes");
                writeln!(out, "{line}").map_err(io_err)?;
            }
            let line = serde_json::to_string(&SearchJson::from(&result)).expect("serializes");
            writeln!(out, "{line}").map_err(io_err)?;
            write!(out, "{}", format::grid_to_text(&result.best)).map_err(io_err)
        }
        Command::Oracle { n, json } => {
            let r = parallel::exhaustive_pn(n, parallel::thread_count()?)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&OracleJson::from(&r)).expect("serializes"))
                    .map_err(io_err)
            } else {
                writeln!(out, "{}\nmaximizers {}", r.value, r.maximizer_count).map_err(io_err)?;
                write!(out, "{}", format::grid_to_text(&r.witness)).map_err(io_err)
            }
        }
        Command::Table { n_max, csv, restarts, seed } => {
            let rows = table_rows(n_max, restarts, seed)?;
            write!(out, "{}", render_table(&rows, restarts.is_some(), csv)).map_err(io_err)
        }
        Command::Residual { file, lambda, mu, m } => {
            let x = format::parse_real(&read_file(&file)?)?;
            let r = bounds::stationarity_residual(&StationarityProbe { x, lambda, mu, m })?;
            writeln!(out, "{r}").map_err(io_err)
        }
    }
}

fn write_objective_text(
    out: &mut dyn Write,
    value: i128,
    m: &matpow_core::Margins,
    mu: Option<f64>,
    cond: &ConditionReport,
) -> std::io::Result<()> {
    let join = |v: &[i128]| v.iter().map(i128::to_string).collect::<Vec<_>>().join(" ");
    let opt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    writeln!(out, "objective {value}")?;
    writeln!(out, "rows {}", join(&m.rows))?;
    writeln!(out, "cols {}", join(&m.cols))?;
    match mu {
        Some(mu) => writeln!(out, "mu_implied {mu}")?,
        None => writeln!(out, "mu_implied undefined")?,
    }
    writeln!(out, "cond_a {}", cond.cond_a)?;
    writeln!(out, "cond_b {}", opt(cond.cond_b))?;
    writeln!(out, "cond_c {}", opt(cond.cond_c))?;
    writeln!(out, "cond_d {}", cond.cond_d)?;
    for w in &cond.witnesses {
        writeln!(out, "witness {w:?}")?;
    }
    Ok(())
}

/// One row of the `table` subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub trivial_lower: matpow_core::Rational,
    pub lower: i128,
    pub construction_value: i128,
    pub search_best: Option<i128>,
    pub upper: matpow_core::Rational,
    pub known_exact: Option<i128>,
}

pub fn table_rows(n_max: usize, restarts: Option<usize>, seed: u64) -> Result<Vec<TableRow>, CliError> {
    let threads = if restarts.is_some() { parallel::thread_count()? } else { 1 };
    (1..=n_max)
        .map(|n| {
            let r = BoundsReport::compute(n)?;
            let search_best = match restarts {
                Some(restarts) => {
                    let cfg = ClimbConfig::new(restarts, seed)?
                        .with_init(InitStrategy::ConstructionSeeded);
                    Some(parallel::search_best(n, &cfg, threads)?.0.value)
                }
                None => None,
            };
            Ok(TableRow {
                n,
                trivial_lower: r.trivial_lower,
                lower: r.lower,
                construction_value: objective(&construction::build(n)?)?,
                search_best,
                upper: r.upper,
                known_exact: r.known_exact,
            })
        })
        .collect()
}

pub fn render_table(rows: &[TableRow], with_search: bool, csv: bool) -> String {
    let mut header = vec!["n", "trivial_lower", "lower", "construction_value"];
    if with_search {
        header.push("search_best");
    }
    header.extend(["upper", "known_exact"]);
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let mut line = vec![
            r.n.to_string(),
            r.trivial_lower.to_string(),
            r.lower.to_string(),
            r.construction_value.to_string(),
        ];
        if with_search {
            line.push(r.search_best.map_or(String::new(), |v| v.to_string()));
        }
        line.push(r.upper.to_string());
        line.push(r.known_exact.map_or(String::new(), |v| v.to_string()));
        cells.push(line);
    }
    let mut out = String::new();
    if csv {
        for line in cells {
            out.push_str(&line.join(","));
            out.push('\n');
        }
        return out;
    }
    let widths: Vec<usize> =
        (0..cells[0].len()).map(|c| cells.iter().map(|l| l[c].len()).max().unwrap_or(0)).collect();
    for line in cells {
        let padded: Vec<String> =
            line.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    out
}
