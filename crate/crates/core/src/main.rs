use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commvar_core::config::{parse_sections, Threads};
use commvar_core::{parse_config, run, Error, Format, JobConfig, Section};

#[derive(Parser)]
#[command(name = "commvar", version, about = "Invariants of spaces of commuting elements in classical Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report; `--sections` selects what to compute.
    Report(ReportArgs),
    /// Orbit table of Hom(A, T) with stabilizers and centralizers.
    Orbits(CommonArgs),
    /// Poincaré polynomials of Hom(pi, G) and of each component.
    Cohomology(CommonArgs),
    /// Equivariant K-theory ranks and component fundamental groups.
    Ktheory(CommonArgs),
    /// Stable splitting factors.
    Splitting(CommonArgs),
}

#[derive(Args)]
struct ReportArgs {
    /// Comma-separated list from orbits,cohomology,ktheory,pi1,splitting.
    #[arg(long)]
    sections: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct CommonArgs {
    /// Configuration file; reads stdin when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Upper bound on |W| * |Hom(A, T)|.
    #[arg(long)]
    max_states: Option<u64>,
    /// Worker threads, or `auto`.
    #[arg(long)]
    threads: Option<String>,
    /// Omit timing so output bytes are identical across runs.
    #[arg(long)]
    reproducible: bool,
}

fn read_input(path: Option<&PathBuf>) -> Result<Vec<u8>, Error> {
    let mut buf = Vec::new();
    let result = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::File::open(p).and_then(|mut f| f.read_to_end(&mut buf)),
        _ => io::stdin().read_to_end(&mut buf),
    };
    result.map_err(|e| Error::Validation { field: "input".into(), message: e.to_string() })?;
    Ok(buf)
}

fn load(common: &CommonArgs, sections: Option<Vec<Section>>) -> Result<JobConfig, Error> {
    let mut cfg = parse_config(&read_input(common.input.as_ref())?)?;
    if let Some(s) = sections {
        cfg.options.sections = s;
    }
    if let Some(f) = common.format {
        cfg.options.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        };
    }
    if let Some(m) = common.max_states {
        if m == 0 {
            return Err(Error::Validation { field: "max-states".into(), message: "must be positive".into() });
        }
        cfg.options.max_states = m;
    }
    if let Some(t) = &common.threads {
        cfg.options.threads = t.parse::<Threads>()?;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<Vec<u8>, Error> {
    let (common, sections) = match cli.command {
        Command::Report(a) => {
            let sections = a.sections.as_deref().map(parse_sections).transpose()?;
            (a.common, sections)
        }
        Command::Orbits(c) => (c, Some(vec![Section::Orbits])),
        Command::Cohomology(c) => (c, Some(vec![Section::Cohomology])),
        Command::Ktheory(c) => (c, Some(vec![Section::Ktheory, Section::Pi1])),
        Command::Splitting(c) => (c, Some(vec![Section::Splitting])),
    };
    let cfg = load(&common, sections)?;
    run(&cfg, common.reproducible)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(bytes) => {
            let mut out = io::stdout().lock();
            if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("commvar: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
