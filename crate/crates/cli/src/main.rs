mod args;
mod run;

use std::io::{self, IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser;

fn color_enabled() -> bool {
    io::stderr().is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty())
}

fn label(text: &str, ansi: &str) -> String {
    if color_enabled() {
        format!("\x1b[{ansi}m{text}\x1b[0m")
    } else {
        text.to_owned()
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let mut stderr = io::stderr().lock();
    match run::run(cli) {
        Ok(output) => {
            for note in &output.notes {
                let _ = writeln!(stderr, "{} {note}", label("note:", "1;36"));
            }
            let mut stdout = io::stdout().lock();
            if stdout.write_all(output.value.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(run::EXIT_PARSE);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = writeln!(stderr, "{} {e}", label("error:", "1;31"));
            for line in &e.detail {
                let _ = writeln!(stderr, "{line}");
            }
            ExitCode::from(e.code)
        }
    }
}
