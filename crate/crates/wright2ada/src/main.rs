use clap::Parser;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use wright2ada::diag::{rules, Diagnostic, Severity};
use wright2ada::emit::{emit, EmitStyle};
use wright2ada::{ada, checks, model, syntax, transform};

/// Translates a Wright architecture description into a concurrent Ada program.
#[derive(Parser)]
#[command(name = "wright2ada", version, disable_help_subcommand = true)]
struct Cli {
    /// Wright source file
    input: PathBuf,

    /// Output path for the generated Ada source; "-" writes to stdout
    /// (default: input path with extension .adb)
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Stop after the Wright static-semantics checks
    #[arg(long)]
    check_only: bool,

    /// Write the normalized Wright model as JSON
    #[arg(long, value_name = "PATH")]
    dump_wright: Option<PathBuf>,

    /// Write the Ada model as JSON
    #[arg(long, value_name = "PATH")]
    dump_ada: Option<PathBuf>,

    /// Treat warnings as errors
    #[arg(long)]
    werror: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let input_name = cli.input.display().to_string();
    let text = std::fs::read_to_string(&cli.input)
        .map_err(|e| format!("cannot read {input_name}: {e}"))?;

    let tokens = syntax::tokenize(&text)
        .map_err(|e| format!("{input_name}:{e} [{}]", rules::E_SYNTAX))?;
    let parsed = syntax::parse_configuration(&tokens)
        .map_err(|e| format!("{input_name}:{e} [{}]", rules::E_SYNTAX))?;

    let mut reporter = Reporter::new(&input_name, cli.werror);

    let normalized = match model::normalize(&parsed) {
        Ok(n) => n,
        Err(diags) => {
            reporter.report(&diags);
            return Ok(ExitCode::from(1));
        }
    };
    reporter.report(&normalized.warnings);
    reporter.report(&checks::check_wright(&normalized.configuration));
    if reporter.failed() {
        return Ok(ExitCode::from(1));
    }

    if let Some(path) = &cli.dump_wright {
        write_output(path, &model::to_json(&normalized.configuration))?;
    }
    if cli.check_only {
        return Ok(ExitCode::from(0));
    }

    let transformed = match transform::transform(&normalized.configuration) {
        Ok(t) => t,
        Err(diags) => {
            reporter.report(&diags);
            return Ok(ExitCode::from(1));
        }
    };
    reporter.report(&transformed.warnings);
    reporter.report(&ada::check_ada(&transformed.program));
    if reporter.failed() {
        return Ok(ExitCode::from(1));
    }

    if let Some(path) = &cli.dump_ada {
        write_output(path, &ada::to_json(&transformed.program))?;
    }

    let ada_text = emit(&transformed.program, EmitStyle::default());
    let output = cli
        .output
        .clone()
        .unwrap_or_else(|| cli.input.with_extension("adb"));
    write_output(&output, &ada_text)?;
    Ok(ExitCode::from(0))
}

fn write_output(path: &Path, content: &str) -> Result<(), String> {
    if path.as_os_str() == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
    }
}

struct Reporter<'a> {
    file: &'a str,
    werror: bool,
    failed: bool,
}

impl<'a> Reporter<'a> {
    fn new(file: &'a str, werror: bool) -> Self {
        Reporter { file, werror, failed: false }
    }

    fn report(&mut self, diags: &[Diagnostic]) {
        for d in diags {
            eprintln!("{}", d.render(self.file));
            if d.severity == Severity::Error || self.werror {
                self.failed = true;
            }
        }
    }

    fn failed(&self) -> bool {
        self.failed
    }
}
