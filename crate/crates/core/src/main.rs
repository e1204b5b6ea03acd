use std::io::Write;

use clap::Parser;
use quiver_harmonics::cli::{run, Cli, RunRequest};

fn main() {
    let req = RunRequest::from(Cli::parse());
    // write errors (closed pipe) are not worth a panic
    let code = match run(&req) {
        Ok(report) => {
            let _ = writeln!(std::io::stdout(), "{}", report.render(req.format));
            report.exit_code
        }
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "{}", e.render(req.format));
            e.exit_code
        }
    };
    std::process::exit(code);
}
