use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spne::experiment::{
    exit_code, load_config, run_sweep, solve, svg_plot, verify, write_csv, write_rows, Config,
    ResultRow, SweepSpec, Variant,
};
use spne::{OracleConfig, SpneError};

#[derive(Parser)]
#[command(name = "spne", about = "Solve and verify spectrum-market equilibria")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "oracle-grid")]
    oracle_grid: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long = "sweep-param")]
        sweep_param: String,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "degree")]
        plot_column: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

fn load(common: &Common) -> Result<Config, SpneError> {
    let mut cfg = match &common.config {
        Some(p) => load_config(p)?,
        None => Config::default(),
    };
    if let Some(v) = &common.variant {
        cfg.variant = v.parse::<Variant>()?;
    }
    Ok(cfg)
}

fn oracle_config(args: &OracleArgs) -> OracleConfig {
    OracleConfig {
        n_points: args.oracle_grid.unwrap_or(2001),
        epsilon: args.epsilon,
        ..Default::default()
    }
}

fn fail(e: &SpneError) -> ExitCode {
    eprintln!("error: {e}");
    let code = match e {
        SpneError::Validation(_) | SpneError::Parse { .. } => 3,
        _ => 1,
    };
    ExitCode::from(code)
}

/// Sweeps carry a threshold footer; a single solve does not.
fn emit(rows: &[ResultRow], param: Option<&str>, out: &Option<PathBuf>) -> Result<(), SpneError> {
    let sink: Box<dyn std::io::Write> = match out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| SpneError::Numeric(format!("{}: {e}", path.display())))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    match param {
        Some(p) => write_csv(sink, rows, p),
        None => write_rows(sink, rows).map(drop),
    }
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Solve { common, out } => {
            let cfg = match load(&common) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let result = solve(&cfg);
            let code = exit_code(&result);
            match &result {
                Ok(r) => {
                    for note in &r.diagnostics {
                        eprintln!("note: {note}");
                    }
                    let row = ResultRow::from_result(f64::NAN, r, None);
                    if let Err(e) = emit(&[row], None, &out) {
                        return fail(&e);
                    }
                }
                Err(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(code as u8)
        }
        Cmd::Sweep {
            common,
            sweep_param,
            lo,
            hi,
            steps,
            out,
            svg,
            plot_column,
            oracle,
        } => {
            let cfg = match load(&common) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let use_oracle = oracle.oracle_grid.is_some() || oracle.epsilon.is_some();
            let spec = SweepSpec {
                config: cfg,
                swept_param: sweep_param.clone(),
                lo,
                hi,
                n_steps: steps,
                oracle: use_oracle.then(|| oracle_config(&oracle)),
            };
            let rows = match run_sweep(&spec) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            if let Err(e) = emit(&rows, Some(&sweep_param), &out) {
                return fail(&e);
            }
            if let Some(path) = svg {
                let written = svg_plot(&rows, &sweep_param, &plot_column).and_then(|s| {
                    std::fs::write(&path, s).map_err(|e| SpneError::Numeric(e.to_string()))
                });
                if let Err(e) = written {
                    return fail(&e);
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Verify { common, oracle } => {
            let cfg = match load(&common) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let result = match solve(&cfg) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            if result.candidates.is_empty() {
                eprintln!("no equilibrium to verify");
                return ExitCode::from(2);
            }
            let reports = match verify(&cfg, &result, &oracle_config(&oracle)) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let mut ok = true;
            for (i, r) in reports.iter().enumerate() {
                let [g1, g2, g3, g4] = r.max_unilateral_gain_per_stage;
                println!(
                    "candidate {i}: stage1 {g1:.3e} stage2 {g2:.3e} stage3 {g3:.3e} stage4 {g4:.3e} epsilon {:.3e} -> {:?}",
                    r.epsilon, r.verdict
                );
                ok &= r.passed();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
