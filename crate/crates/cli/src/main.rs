use std::io::Write;

fn main() {
    let (text, code) = cliffrep_cli::run(std::env::args_os());
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    std::process::exit(code);
}
