use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nomvote_cli::commands::{self, Axiom, Format, WitnessKind};
use nomvote_cli::report::{self, DEFAULT_WITNESS_CAP};
use nomvote_cli::sweep::{self, SweepFamily, SweepPlan};
use nomvote_cli::{exit, CliError, ConfigError};

/// Analyse tops-only voting rules for obvious manipulability.
#[derive(Debug, Parser)]
#[command(name = "nomvote", version)]
struct Cli {
    /// Cap on enumerated profiles and top vectors.
    #[arg(long, global = true)]
    budget_profiles: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for sampled table sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide NOM by brute force, the veto test and the family predicate.
    Check {
        config: PathBuf,
        /// Extra axiom oracles to run, comma separated.
        #[arg(long, value_enum, value_delimiter = ',')]
        axioms: Vec<Axiom>,
        /// Witnesses shown per (agent, kind).
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        cap: usize,
    },
    /// Option set of one agent for one top, brute force beside the closed form.
    OptionSet {
        config: PathBuf,
        #[arg(long)]
        agent: usize,
        /// An alternative index, or `{0,1}` for subset spaces.
        #[arg(long)]
        top: String,
    },
    /// Veto and strong veto sets.
    Veto { config: PathBuf },
    /// List manipulation witnesses.
    Witness {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "obvious")]
        kind: WitnessKind,
        #[arg(long)]
        agent: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        cap: usize,
    },
    /// Check every rule of a family at the given sizes; writes CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, visible_alias = "k")]
        objects: Option<usize>,
        /// Sample this many onto tables (table family only).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Validate a config without analysing it.
    Validate { config: PathBuf },
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let mut budget = commands::budget_from_env(std::env::var("NOMVOTE_BUDGET").ok().as_deref())?;
    if let Some(p) = cli.budget_profiles {
        budget.max_profiles = p;
    }
    match &cli.command {
        Command::Check { config, axioms, cap } => {
            let (cfg, rule) = commands::load(config)?;
            let r = commands::check(&cfg, &rule, axioms, *cap, &budget)?;
            emit(cli, &commands::render(&r, cli.format, |r| report::render_analysis(r, rule.space())))?;
            Ok(if r.discrepancy {
                eprintln!("DISCREPANCY: verdict sources disagree");
                exit::DISCREPANCY
            } else if r.nom {
                exit::NOM
            } else {
                exit::NOT_NOM
            })
        }
        Command::OptionSet { config, agent, top } => {
            let (cfg, rule) = commands::load(config)?;
            let r = commands::option_set_report(&cfg, &rule, *agent, top, &budget)?;
            emit(cli, &commands::render(&r, cli.format, |r| report::render_option_set(r, rule.space())))?;
            Ok(if r.agreement == Some(false) { exit::DISCREPANCY } else { 0 })
        }
        Command::Veto { config } => {
            let (cfg, rule) = commands::load(config)?;
            let r = commands::veto_report(&cfg, &rule, &budget)?;
            emit(cli, &commands::render(&r, cli.format, |r| report::render_veto(r, rule.space())))?;
            Ok(if r.agreement == Some(false) { exit::DISCREPANCY } else { 0 })
        }
        Command::Witness { config, kind, agent, cap } => {
            let (cfg, rule) = commands::load(config)?;
            let r = commands::witness_report(&cfg, &rule, *kind, *agent, *cap, &budget)?;
            emit(cli, &commands::render(&r, cli.format, |r| report::render_witness(r, rule.space())))?;
            Ok(0)
        }
        Command::Sweep { family, n, m, objects, samples } => {
            let plan = SweepPlan {
                family: *family,
                n: *n,
                m: *m,
                objects: *objects,
                samples: *samples,
                seed: cli.seed,
            };
            let table = sweep::run(plan, &budget)?;
            emit(cli, &table.to_csv())?;
            if cli.out.is_some() {
                eprintln!("{}", table.summary());
            }
            Ok(if table.discrepancies() > 0 { exit::DISCREPANCY } else { 0 })
        }
        Command::Validate { config } => {
            let (cfg, _) = commands::load(config)?;
            let text = match cli.format {
                Format::Text => format!("valid: {} n={}\n", cfg.family.as_str(), cfg.n),
                Format::Structured => format!("{}\n", serde_json::json!({ "valid": true, "rule": cfg })),
            };
            emit(cli, &text)?;
            Ok(0)
        }
    }
}

fn report_error(cli: &Cli, e: &CliError) {
    if let (Command::Validate { .. }, Format::Structured, CliError::Config(c)) = (&cli.command, cli.format, e) {
        let errors: Vec<_> = match c {
            ConfigError::Invalid(v) => v
                .iter()
                .map(|v| serde_json::json!({ "path": v.path, "message": v.message }))
                .collect(),
            ConfigError::Parse(p) => vec![serde_json::json!({ "path": "", "message": p.to_string() })],
        };
        println!("{}", serde_json::json!({ "valid": false, "errors": errors }));
        return;
    }
    match e {
        CliError::Config(ConfigError::Invalid(v)) => {
            eprintln!("error: invalid config");
            for v in v {
                eprintln!("  {v}");
            }
        }
        other => eprintln!("error: {other}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            report_error(&cli, &e);
            ExitCode::from(e.exit_code())
        }
    }
}

