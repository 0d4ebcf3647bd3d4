use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let exec = roommate_core::cli::run(&args);
    let _ = std::io::stdout().write_all(exec.stdout.as_bytes());
    let _ = std::io::stderr().write_all(exec.stderr.as_bytes());
    std::process::exit(exec.status);
}
