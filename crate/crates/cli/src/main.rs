use std::process::ExitCode;

fn main() -> ExitCode {
    let result = mono_cli::dispatch(std::env::args_os());
    if result.exit == mono_cli::EXIT_OK || result.exit >= mono_cli::EXIT_VIOLATION {
        print!("{}", result.render());
    } else {
        eprint!("{}", result.render());
    }
    ExitCode::from(result.exit as u8)
}
