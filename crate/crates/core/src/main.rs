use std::io::Write;

fn main() {
    let (out, code) = ainfinity::cli::run_from(std::env::args_os());
    if !out.is_empty() {
        // A closed pipe on the reader's side is not our failure.
        let _ = if code == ainfinity::cli::EXIT_USAGE {
            writeln!(std::io::stderr(), "{}", out.trim_end())
        } else {
            writeln!(std::io::stdout(), "{}", out.trim_end())
        };
    }
    std::process::exit(code);
}
