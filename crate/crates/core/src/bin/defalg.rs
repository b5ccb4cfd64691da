use clap::Parser;
use defalg::cli::{run, ErrorInfo, Input, Report, COMMANDS};
use std::io::Write;
use std::process::ExitCode;

/// Exact computations with dg-algebras, DGLAs and L-infinity algebras.
#[derive(Parser, Debug)]
#[command(name = "defalg", version, about, after_help = format!("Commands: {}", COMMANDS.join(", ")))]
struct Args {
    /// Operation to run.
    command: String,
    /// Input document; repeat for commands taking several.
    #[arg(long = "in", value_name = "FILE", required = true)]
    inputs: Vec<String>,
    /// Truncation order (dgla-to-linfty, prorepresent).
    #[arg(long)]
    order: Option<usize>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut inputs = Vec::new();
    let mut unreadable = None;
    for path in &args.inputs {
        match std::fs::read_to_string(path) {
            Ok(text) => inputs.push(Input {
                name: path.clone(),
                text,
            }),
            Err(e) => {
                unreadable = Some(ErrorInfo {
                    message: format!("cannot read input: {e}"),
                    input: Some(path.clone()),
                    line: None,
                    column: None,
                });
                break;
            }
        }
    }
    let report = match unreadable {
        Some(e) => {
            let mut r = Report::new(&args.command, args.inputs.clone());
            r.input_error(e);
            r
        }
        None => run(&args.command, &inputs, args.order),
    };
    let text = if args.json {
        report.to_json() + "\n"
    } else {
        report.render_text()
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(report.exit_code as u8)
}
