use clap::Parser;

fn main() {
    std::process::exit(hetero::cli::run(hetero::cli::Cli::parse()));
}
