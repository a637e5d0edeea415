use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = gromov_cli::run_args(std::env::args_os());
    let written = if out.code == gromov_cli::EXIT_INPUT {
        std::io::stderr().write_all(out.output.as_bytes())
    } else {
        std::io::stdout().write_all(out.output.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(gromov_cli::EXIT_INPUT as u8);
    }
    ExitCode::from(out.code as u8)
}
