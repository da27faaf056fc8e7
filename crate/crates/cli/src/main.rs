use std::process::ExitCode;

use ballquot::cyclo::{ReflectionOrder, DEFAULT_ZETA_ORDER};
use ballquot::report::{Format, Registry, ReportError, RunOptions};
use ballquot::sporadic::TraceChoice;
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Selection {
    All,
    Cyclo,
    Group,
    Sporadic,
    Crystal,
    Ledger,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Md,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PArg {
    #[value(name = "2")]
    P2,
    #[value(name = "3")]
    P3,
    #[value(name = "4")]
    P4,
    #[value(name = "6")]
    P6,
    Inf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TauArg {
    Sigma1,
    Sigma1bar,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
    #[value(name = "Z")]
    Z,
    #[value(name = "W")]
    W,
}

/// Run exact verifications and report every claim with its status.
///
/// Exit status: 0 when nothing failed, 1 on a failed claim or computation
/// error, 2 on bad usage.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Which suite to run.
    selection: Selection,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Order N of the cyclotomic field Q(zeta_N).
    #[arg(long, default_value_t = DEFAULT_ZETA_ORDER)]
    zeta_order: u32,
    /// Restrict p-dependent claims to one reflection order.
    #[arg(long, value_enum)]
    p: Option<PArg>,
    /// Trace parameter of the sporadic groups.
    #[arg(long, value_enum, default_value = "sigma1")]
    tau: TauArg,
    /// Report each table row as its own claim.
    #[arg(long)]
    tables: bool,
    /// Restrict the ledger to one surface model.
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
}

fn options(cli: &Cli) -> RunOptions {
    RunOptions {
        zeta_order: cli.zeta_order,
        p: cli.p.map(|p| match p {
            PArg::P2 => ReflectionOrder::Finite(2),
            PArg::P3 => ReflectionOrder::Finite(3),
            PArg::P4 => ReflectionOrder::Finite(4),
            PArg::P6 => ReflectionOrder::Finite(6),
            PArg::Inf => ReflectionOrder::Infinite,
        }),
        tau: match cli.tau {
            TauArg::Sigma1 => TraceChoice::Sigma1,
            TauArg::Sigma1bar => TraceChoice::Sigma1Bar,
        },
        tables: cli.tables,
        model: cli.model.map(|m| format!("{m:?}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let selection = format!("{:?}", cli.selection).to_lowercase();
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Md => Format::Markdown,
        FormatArg::Text => Format::Text,
    };
    match Registry::default().run(&selection, &options(&cli)) {
        Ok(report) => {
            print!("{}", report.emit(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e @ (ReportError::Usage(_) | ReportError::UnknownSuite(_))) => {
            eprintln!("verify: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("verify: {e}");
            ExitCode::from(1)
        }
    }
}
