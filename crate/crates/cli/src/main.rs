use clap::Parser;

fn main() {
    let cli = pi1_cli::Cli::parse();
    let code = match pi1_cli::execute(cli) {
        Ok(code) => code,
        Err(pi1_cli::UsageError(msg)) => {
            eprintln!("pi1: {msg}");
            pi1_cli::EXIT_USAGE
        }
    };
    std::process::exit(code);
}
