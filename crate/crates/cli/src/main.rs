use std::fs;
use std::io::{self as stdio, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cs_spheres::construction::ConstructionKey;
use cs_spheres::io::{self, FormatError};
use cs_spheres::verify::{
    check_claimed_sphere, run_paper_suite, Budget, SuiteConfig, SuiteLevel, DEFAULT_MAX_FACES,
};
use cs_spheres::{Complex, Constructor};

#[derive(Parser)]
#[command(
    name = "cs-spheres",
    version,
    about = "Build and audit centrally symmetric neighborly spheres"
)]
struct Cli {
    /// Largest number of faces any single enumeration may touch.
    #[arg(long, global = true, env = "CS_SPHERES_BUDGET", default_value_t = DEFAULT_MAX_FACES)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and write it out.
    Generate {
        #[command(flatten)]
        object: ObjectArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the claim suite on a grid, or check a complex read from a file.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Basic)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        d_max: usize,
        #[arg(long, default_value_t = 2)]
        n_slack: usize,
        /// Check this complex as a claimed copy of the sphere with the given --d and --n.
        #[arg(long, requires_all = ["d", "n"])]
        input: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Include per-check wall times (output is then not reproducible).
        #[arg(long)]
        timings: bool,
        /// Depth of the recursive vertex-link checks.
        #[arg(long, default_value_t = 2)]
        link_depth: usize,
    },
    /// Print the f-vector and Euler characteristic.
    Fvector {
        #[command(flatten)]
        object: OptionalObjectArgs,
        #[arg(long, conflicts_with = "target")]
        input: Option<PathBuf>,
    },
    /// Transcode a complex between formats.
    Convert {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        from: Option<Format>,
        #[arg(long, value_enum)]
        to: Format,
        /// Vertex-pair count for JSON output; defaults to the largest used.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct ObjectArgs {
    #[arg(long, value_enum)]
    object: Object,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    i: Option<isize>,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Clone)]
#[group(id = "target", multiple = true)]
struct OptionalObjectArgs {
    #[arg(long, value_enum)]
    object: Option<Object>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    i: Option<isize>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Object {
    Delta,
    Ball,
    Variant,
    Dball,
    Crosspoly,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Flat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Basic,
    Full,
}

/// Usage, input and resource problems; all exit with status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<ExitCode, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget {
        max_faces: cli.budget,
    };
    let outcome = match cli.command {
        Command::Generate {
            object,
            format,
            out,
        } => cmd_generate(&object, format, out.as_deref(), budget),
        Command::Verify {
            suite,
            d_max,
            n_slack,
            input,
            d,
            n,
            json,
            timings,
            link_depth,
        } => {
            let level = match suite {
                Suite::Basic => SuiteLevel::Basic,
                Suite::Full => SuiteLevel::Full,
            };
            let mut cfg = SuiteConfig::with_level(level).with_budget(budget);
            cfg.surrogate.link_depth = link_depth;
            match input {
                Some(path) => {
                    cmd_verify_input(&path, d.unwrap_or(0), n.unwrap_or(0), &cfg, json, timings)
                }
                None => cmd_verify_suite(d_max, n_slack, &cfg, json, timings),
            }
        }
        Command::Fvector { object, input } => cmd_fvector(&object, input.as_deref(), budget),
        Command::Convert {
            input,
            from,
            to,
            n,
            out,
        } => cmd_convert(input.as_deref(), from, to, n, out.as_deref()),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn construction_key(
    object: Object,
    d: Option<usize>,
    i: Option<isize>,
    n: usize,
) -> Result<ConstructionKey, UsageError> {
    let need_d = || d.ok_or_else(|| UsageError("--d is required for this object".into()));
    let need_i = || i.ok_or_else(|| UsageError("--i is required for this object".into()));
    Ok(match object {
        Object::Delta => ConstructionKey::delta(need_d()?, n),
        Object::Ball => ConstructionKey::ball(need_d()?, need_i()?, n),
        Object::Variant => ConstructionKey::variant(need_d()?, need_i()?, n),
        Object::Dball => {
            let d = need_d()?;
            if d % 2 != 0 {
                return Err(UsageError(format!(
                    "dball needs an even dimension, got {d}"
                )));
            }
            ConstructionKey::d_ball(d / 2, n)
        }
        Object::Crosspoly => ConstructionKey::cross_polytope(n),
    })
}

fn build(key: ConstructionKey, budget: Budget) -> Result<Complex, UsageError> {
    key.validate()?;
    budget.admits(key.d, key.n)?;
    let ctor = Constructor::new();
    Ok((*ctor.get(key)?).clone())
}

fn read_input(path: Option<&Path>) -> Result<String, UsageError> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut text = String::new();
            stdio::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn parse_complex(text: &str, format: Option<Format>) -> Result<Complex, FormatError> {
    let format = format.unwrap_or(if text.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::Flat
    });
    match format {
        Format::Json => io::from_json(text),
        Format::Flat => io::from_flat(text),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => {
            let mut out = stdio::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn serialize(a: &Complex, format: Format, n: u32) -> Result<String, UsageError> {
    Ok(match format {
        Format::Json => io::to_json(a, n)? + "\n",
        Format::Flat => io::to_flat(a),
    })
}

fn cmd_generate(
    object: &ObjectArgs,
    format: Format,
    out: Option<&Path>,
    budget: Budget,
) -> CmdResult {
    let key = construction_key(object.object, object.d, object.i, object.n)?;
    let complex = build(key, budget)?;
    write_output(out, &serialize(&complex, format, key.n as u32)?)?;
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &cs_spheres::VerificationReport, json: bool, timings: bool) -> CmdResult {
    let text = if json {
        io::report_to_json(report, timings) + "\n"
    } else {
        report.to_string()
    };
    write_output(None, &text)?;
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_verify_suite(
    d_max: usize,
    n_slack: usize,
    cfg: &SuiteConfig,
    json: bool,
    timings: bool,
) -> CmdResult {
    let report = run_paper_suite(&Constructor::new(), d_max, n_slack, cfg)?;
    print_report(&report, json, timings)
}

fn cmd_verify_input(
    path: &Path,
    d: usize,
    n: usize,
    cfg: &SuiteConfig,
    json: bool,
    timings: bool,
) -> CmdResult {
    let complex = parse_complex(&read_input(Some(path))?, None)?;
    let report = check_claimed_sphere(&Constructor::new(), &complex, d, n, cfg)?;
    print_report(&report, json, timings)
}

fn cmd_fvector(object: &OptionalObjectArgs, input: Option<&Path>, budget: Budget) -> CmdResult {
    let complex = match (object.object, input) {
        (Some(kind), _) => {
            let n = object
                .n
                .ok_or_else(|| UsageError("--n is required with --object".into()))?;
            build(construction_key(kind, object.d, object.i, n)?, budget)?
        }
        (None, path) => {
            let complex = parse_complex(&read_input(path)?, None)?;
            budget.admits(
                complex.dim().max(0) as usize,
                complex.max_pair_index() as usize,
            )?;
            complex
        }
    };
    let f = complex.f_vector();
    write_output(None, &format!("{f}; chi={}\n", f.euler_characteristic()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_convert(
    input: Option<&Path>,
    from: Option<Format>,
    to: Format,
    n: Option<u32>,
    out: Option<&Path>,
) -> CmdResult {
    let text = read_input(input)?;
    let complex = parse_complex(&text, from)?;
    let n = n.unwrap_or_else(|| complex.max_pair_index());
    write_output(out, &serialize(&complex, to, n)?)?;
    Ok(ExitCode::SUCCESS)
}
