use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qlucas_cli::Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let result = qlucas_cli::run(cli, &mut stdout.lock(), &mut stderr.lock());
    match result {
        Ok(code) => ExitCode::from(code as u8),
        // A downstream consumer closing the pipe early (`qlucas list | head`)
        // is a normal way to stop reading, not a failure of ours. Exit with
        // the conventional SIGPIPE status and keep stderr quiet.
        Err(error) if error.kind() == io::ErrorKind::BrokenPipe => ExitCode::from(141),
        Err(error) => {
            let _ = writeln!(stderr.lock(), "error: {error}");
            ExitCode::from(1)
        }
    }
}
