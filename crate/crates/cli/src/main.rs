//! `dofr`: exact DoF-region computations for the two-user MIMO broadcast
//! channel with hybrid private/common messages, from the command line.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 when a requested audit
//! reports mismatches.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dofr_core::analysis::{
    audit_containment_delayed, audit_converse, audit_corners, sum_dof_formula, sweep,
};
use dofr_core::corners::{corner_catalog, delayed_corners, CornerLabel};
use dofr_core::geometry::Rational;
use dofr_core::regions::{
    classify_case, normalize, region_delayed, region_imperfect, AntennaConfig, CsitQuality,
};
use dofr_core::{evaluate_recipe, recipe_for_corner};

#[derive(Parser)]
#[command(
    name = "dofr",
    version,
    about = "Exact DoF regions of the two-user MIMO broadcast channel with hybrid messages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format; csv applies to `sweep` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Imperfect,
    Delayed,
}

#[derive(Args)]
struct ChannelArgs {
    /// Transmit antennas M (>= 1).
    #[arg(long)]
    m: u32,
    /// Receiver-1 antennas N1 (>= 1).
    #[arg(long)]
    n1: u32,
    /// Receiver-2 antennas N2 (>= 1).
    #[arg(long)]
    n2: u32,
    /// CSIT quality for receiver 1, in [0, 1]; "p/q" or a finite decimal.
    #[arg(long)]
    alpha1: String,
    /// CSIT quality for receiver 2, in [0, 1]; "p/q" or a finite decimal.
    #[arg(long)]
    alpha2: String,
}

impl ChannelArgs {
    fn parse(&self) -> Result<(AntennaConfig, CsitQuality), String> {
        let config = AntennaConfig::new(self.m, self.n1, self.n2)
            .map_err(|e| format!("--m/--n1/--n2: {e}"))?;
        let alpha1 = Rational::from_str(&self.alpha1).map_err(|e| format!("--alpha1: {e}"))?;
        let alpha2 = Rational::from_str(&self.alpha2).map_err(|e| format!("--alpha2: {e}"))?;
        let csit = CsitQuality::new(alpha1, alpha2)
            .map_err(|e| format!("--alpha1/--alpha2: {e}"))?;
        Ok((config, csit))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Halfspaces and vertices of the chosen region model.
    Region {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum, default_value_t = Model::Imperfect)]
        model: Model,
    },
    /// Labeled corner catalog with existence verdicts and conditions.
    Corners {
        #[command(flatten)]
        channel: ChannelArgs,
    },
    /// Power-allocation recipe achieving one labeled corner.
    Recipe {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Corner label (P1, P2, P0, P12, ..., P14', P123, P124, P234, O).
        #[arg(long)]
        label: String,
    },
    /// Closed-form sum-DoF, the oracle value, and the case id.
    Sumdof {
        #[command(flatten)]
        channel: ChannelArgs,
    },
    /// Delayed-plus-imperfect-CSIT region and its corners.
    Delayed {
        #[command(flatten)]
        channel: ChannelArgs,
    },
    /// Run all three audits (corner catalog, converse, delayed containment).
    Audit {
        #[command(flatten)]
        channel: ChannelArgs,
    },
    /// Audit grid sweep over (alpha1, alpha2).
    Sweep {
        /// Transmit antennas M (>= 1).
        #[arg(long)]
        m: u32,
        /// Receiver-1 antennas N1 (>= 1).
        #[arg(long)]
        n1: u32,
        /// Receiver-2 antennas N2 (>= 1).
        #[arg(long)]
        n2: u32,
        /// Grid step; must divide 1 exactly (e.g. 1/10, 0.05).
        #[arg(long, default_value = "1/10")]
        grid_step: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, text: String) -> Result<(), String> {
    match &cli.output {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
    }
}

fn require_json(cli: &Cli, command: &str) -> Result<(), String> {
    if cli.format == Format::Csv {
        return Err(format!("--format csv is only available for sweep, not {command}"));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Region { channel, model } => {
            require_json(cli, "region")?;
            let (c, q) = channel.parse()?;
            let doc = match model {
                Model::Imperfect => {
                    let (n, qn) = normalize(&c, &q);
                    let region = region_imperfect(&c, &q);
                    json!({
                        "config": output::config(&c, &q),
                        "normalized": output::normalized(&n, &qn),
                        "model": "imperfect",
                        "case": classify_case(&n, &qn).to_string(),
                        "halfspaces": output::polytope(&region),
                        "vertices": output::vertices(&region)?,
                    })
                }
                Model::Delayed => {
                    let region = region_delayed(&c, &q);
                    json!({
                        "config": output::config(&c, &q),
                        "model": "delayed",
                        "halfspaces": output::polytope(&region),
                        "vertices": output::vertices(&region)?,
                    })
                }
            };
            emit(cli, serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Corners { channel } => {
            require_json(cli, "corners")?;
            let (c, q) = channel.parse()?;
            let (n, qn) = normalize(&c, &q);
            let catalog = corner_catalog(&n, &qn);
            let doc = json!({
                "config": output::config(&c, &q),
                "normalized": output::normalized(&n, &qn),
                "model": "imperfect",
                "case": classify_case(&n, &qn).to_string(),
                "corners": catalog.iter()
                    .map(|e| output::corner(e, n.receivers_swapped))
                    .collect::<Vec<_>>(),
            });
            emit(cli, serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Recipe { channel, label } => {
            require_json(cli, "recipe")?;
            let (c, q) = channel.parse()?;
            let label = CornerLabel::parse(label)
                .ok_or_else(|| format!("--label: unknown corner label {label:?}"))?;
            let (n, qn) = normalize(&c, &q);
            let case = classify_case(&n, &qn);
            let recipe =
                recipe_for_corner(label, case, &n, &qn).map_err(|e| format!("--label: {e}"))?;
            let achieved = evaluate_recipe(&recipe, &n, &qn).map_err(|e| e.to_string())?;
            let reported = if n.receivers_swapped { achieved.swapped() } else { achieved };
            let doc = json!({
                "config": output::config(&c, &q),
                "normalized": output::normalized(&n, &qn),
                "case": case.to_string(),
                "label": label.to_string(),
                "recipe": output::recipe(&recipe),
                "achieves": output::point(&reported),
            });
            emit(cli, serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sumdof { channel } => {
            require_json(cli, "sumdof")?;
            let (c, q) = channel.parse()?;
            let (n, qn) = normalize(&c, &q);
            let formula = sum_dof_formula(&n, &qn);
            let ones = (Rational::one(), Rational::one(), Rational::one());
            let lp = region_imperfect(&c, &q)
                .maximize_linear(&ones)
                .map_err(|e| e.to_string())?;
            let doc = json!({
                "config": output::config(&c, &q),
                "normalized": output::normalized(&n, &qn),
                "case": classify_case(&n, &qn).to_string(),
                "formula": output::rational(&formula),
                "lp": output::rational(&lp),
            });
            emit(cli, serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Delayed { channel } => {
            require_json(cli, "delayed")?;
            let (c, q) = channel.parse()?;
            let region = region_delayed(&c, &q);
            let corners = delayed_corners(&c, &q);
            let doc = json!({
                "config": output::config(&c, &q),
                "model": "delayed",
                "halfspaces": output::polytope(&region),
                "vertices": output::vertices(&region)?,
                "corners": corners.iter().map(|e| output::corner(e, false)).collect::<Vec<_>>(),
            });
            emit(cli, serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Audit { channel } => {
            require_json(cli, "audit")?;
            let (c, q) = channel.parse()?;
            let corners_report = audit_corners(&c, &q);
            let converse_report = audit_converse(&c, &q);
            let containment_report = audit_containment_delayed(&c, &q);
            let all_passed =
                corners_report.passed && converse_report.passed && containment_report.passed;
            let doc = json!({
                "config": output::config(&c, &q),
                "audits": {
                    "corners": output::audit(&corners_report),
                    "converse": output::audit(&converse_report),
                    "delayed_containment": output::audit(&containment_report),
                },
            });
            emit(cli, serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Sweep { m, n1, n2, grid_step } => {
            let c = AntennaConfig::new(*m, *n1, *n2).map_err(|e| format!("--m/--n1/--n2: {e}"))?;
            let step =
                Rational::from_str(grid_step).map_err(|e| format!("--grid-step: {e}"))?;
            if !step.is_positive() || step > Rational::one() {
                return Err(format!("--grid-step: {step} is not in (0, 1]"));
            }
            let count = Rational::one().checked_div(&step).unwrap();
            if !count.is_integer() {
                return Err(format!("--grid-step: {step} does not divide 1 exactly"));
            }
            let steps = count
                .to_i64()
                .filter(|&n| n > 0)
                .ok_or_else(|| format!("--grid-step: {step} yields too many grid points"))?;
            let mut grid = Vec::new();
            for i in 0..=steps {
                for j in 0..=steps {
                    let a1 = Rational::from_int(i) * step.clone();
                    let a2 = Rational::from_int(j) * step.clone();
                    grid.push(CsitQuality::new(a1, a2).unwrap());
                }
            }
            let rows = sweep(&c, &grid);
            let any_failed = rows.iter().any(|r| !r.audits_passed);
            match cli.format {
                Format::Csv => emit(cli, output::sweep_csv(&rows)?.trim_end().to_string())?,
                Format::Json => {
                    let doc = json!({
                        "config": {"m": c.m, "n1": c.n1, "n2": c.n2},
                        "grid_step": output::rational(&step),
                        "rows": output::sweep_json(&rows),
                    });
                    emit(cli, serde_json::to_string_pretty(&doc).unwrap())?;
                }
            }
            Ok(if any_failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
    }
}
