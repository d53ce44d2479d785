use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dld_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli);
    let rendered = result.render(cli.json);
    if result.status.is_reportable() || cli.json {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(rendered.as_bytes());
    } else {
        eprint!("{rendered}");
    }
    ExitCode::from(result.status.exit_code())
}
