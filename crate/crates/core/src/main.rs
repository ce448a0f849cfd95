use clap::Parser;

fn main() {
    std::process::exit(charforge::cli::run(charforge::cli::Cli::parse()));
}
