mod args;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use trunclab::Ceilings;

use args::{Cli, Command};
use commands::{Context, Failure};
use output::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Sets both the scan and the sieve ceiling; flags still take precedence.
const CEILING_ENV: &str = "TRUNCLAB_CEILING_OVERRIDE";

const EXIT_INVALID: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn name_and_params(cmd: &Command) -> (&'static str, serde_json::Value) {
    use serde_json::to_value as v;
    let (name, params) = match cmd {
        Command::IntAvg(a) => ("int-avg", v(a)),
        Command::IntVar(a) => ("int-var", v(a)),
        Command::IntCorr(a) => ("int-corr", v(a)),
        Command::PolyAvg(a) => ("poly-avg", v(a)),
        Command::PolyVar(a) => ("poly-var", v(a)),
        Command::PolyCorr(a) => ("poly-corr", v(a)),
        Command::Chains(a) => ("chains", v(a)),
        Command::MaxScan(a) => ("max-scan", v(a)),
        Command::Model(a) => ("model", v(a)),
        Command::PredictMax(a) => ("predict-max", v(a)),
        Command::BcSum(a) => ("bc-sum", v(a)),
        Command::Compare(a) => ("compare", v(a)),
        Command::Validate(a) => ("validate", v(a)),
    };
    (name, params.expect("arguments serialize"))
}

fn ceilings(cli: &Cli) -> Result<Ceilings, String> {
    let mut c = Ceilings::default();
    if let Ok(s) = std::env::var(CEILING_ENV) {
        let n: u64 = s.trim().parse().map_err(|_| format!("{CEILING_ENV}: not an integer: {s:?}"))?;
        c = c.with_scan(n).with_sieve(n);
    }
    let g = &cli.global;
    if let Some(n) = g.scan_ceiling {
        c = c.with_scan(n);
    }
    if let Some(n) = g.sieve_ceiling {
        c = c.with_sieve(n);
    }
    if let Some(n) = g.node_budget {
        c = c.with_node_budget(n);
    }
    Ok(c)
}

fn run(cli: &Cli, cx: &Context) -> commands::Outcome {
    match &cli.command {
        Command::IntAvg(a) | Command::IntVar(a) => commands::int_stats(a, cx),
        Command::IntCorr(a) => commands::int_corr(a, cx),
        Command::PolyAvg(a) | Command::PolyVar(a) => commands::poly_stats(a, cx),
        Command::PolyCorr(a) => commands::poly_corr(a, cx),
        Command::Chains(a) => commands::chains(a, cx),
        Command::MaxScan(a) => commands::max_scan(a, cx),
        Command::Model(a) => commands::model(a, cx),
        Command::PredictMax(a) => commands::predict(a),
        Command::BcSum(a) => commands::bc_sum(a),
        Command::Compare(a) => commands::compare(a, cx),
        Command::Validate(a) => commands::validate(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ceilings = match ceilings(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    let cx = Context { ceilings, seed: cli.global.seed, strict: cli.global.strict_def };
    let (subcommand, params) = name_and_params(&cli.command);
    let config = RunConfig {
        schema_version: SCHEMA_VERSION,
        subcommand,
        params,
        format: cli.global.format,
        seed: cx.seed,
        ceilings,
        strict_def: cx.strict,
    };
    match run(&cli, &cx) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = output::render(&config, &out, &mut stdout).and_then(|_| stdout.flush()) {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
            if out.complete {
                ExitCode::SUCCESS
            } else {
                eprintln!("warning: node budget exhausted; the report is partial");
                ExitCode::from(EXIT_RESOURCE)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Failure::Core(e) if e.is_resource_limit() => ExitCode::from(EXIT_RESOURCE),
                _ => ExitCode::from(EXIT_INVALID),
            }
        }
    }
}
