//! `korbit` command-line entry point.

use clap::Parser;

fn main() {
    let cli = korbit::cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = korbit::cli::run(&cli, &mut out) {
        eprintln!("korbit: {e}");
        std::process::exit(e.exit_code());
    }
}
