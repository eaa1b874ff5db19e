use clap::Parser;

fn main() {
    let cli = dialup_cli::Cli::parse();
    if let Err(err) = dialup_cli::run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(dialup_cli::exit_code(&err));
    }
}
