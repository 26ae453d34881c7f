use std::io::Write;
use std::process::ExitCode;

use frobknot::cli;

fn main() -> ExitCode {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    if let Err(e) = cli::init_threads() {
        let _ = writeln!(err, "error: {e}");
        return ExitCode::from(cli::EXIT_INPUT as u8);
    }
    let code = cli::run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
