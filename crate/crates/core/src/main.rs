use clap::Parser;
use sidon_core::cli::{run_cli, Cli};

fn main() {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::new().parse_filters(level).target(env_logger::Target::Stderr).init();
    let outcome = run_cli(&cli);
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
