use clap::Parser;
use gencliff_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let out = execute(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
