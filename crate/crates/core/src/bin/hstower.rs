use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hstower::cli::export::{export, ExportObject, OBJECTS};
use hstower::cli::{exit_code, parse_range, render, render_timings, run, FieldChoice, Format, RunOptions, Suite};

#[derive(Parser)]
#[command(name = "hstower", version, about = "Exact verification of the HS_n, NDF_n and NDPF_n towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (exit 0: all checks pass, 1: a check failed, 2: usage error).
    Run {
        /// dims, basis, sandwich, cartan-hsn, morita, modules-hsn, prop2, prop3, affine, ndf, ndpf,
        /// grassmann, prop6, prop8, prop9, qsym-ncsf, towers, nonhopf or all
        #[arg(value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
        suite: Suite,
        /// Single size
        #[arg(long, conflicts_with = "range")]
        n: Option<usize>,
        /// Inclusive range: A..B, A..=B or A-B
        #[arg(long, value_parser = |s: &str| parse_range(s).map_err(|e| e.to_string()))]
        range: Option<(usize, usize)>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a computed object: cartan-hsn N | cartan-ndf N | cartan-ndpf N | basis-Bn N | grothendieck TOWER N
    Export {
        #[arg(required = true, num_args = 2..=3)]
        object: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(clap::Args)]
struct Common {
    /// rational or fp:<prime> (1073741827, 2147483647, 4294967291)
    #[arg(long, default_value = "rational", value_parser = |s: &str| s.parse::<FieldChoice>().map_err(|e| e.to_string()))]
    field: FieldChoice,
    /// json, csv or table
    #[arg(long, default_value = "table", value_parser = |s: &str| s.parse::<Format>().map_err(|e| e.to_string()))]
    format: Format,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum concurrent tasks (default: available parallelism)
    #[arg(long)]
    jobs: Option<usize>,
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn setup_pool(jobs: Option<usize>) -> Result<(), String> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err("--jobs must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { suite, n, range, common } => (|| {
            setup_pool(common.jobs)?;
            let opts = RunOptions { range: n.map(|n| (n, n)).or(range), field: common.field };
            let reports = run(suite, &opts);
            eprint!("{}", render_timings(&reports));
            emit(&render(&reports, common.format).map_err(|e| e.to_string())?, &common.out)?;
            Ok(exit_code(&reports) as u8)
        })(),
        Command::Export { object, common } => (|| {
            setup_pool(common.jobs)?;
            if common.field != FieldChoice::Rational {
                return Err("export objects are computed over the rationals".to_string());
            }
            let obj = ExportObject::parse(&object).map_err(|e| e.to_string())?;
            let text = export(&obj, common.format).map_err(|e| e.to_string())?;
            emit(&text, &common.out)?;
            Ok(0)
        })(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if e.contains("expected one of") {
                eprintln!("objects: {OBJECTS}");
            }
            ExitCode::from(2)
        }
    }
}
