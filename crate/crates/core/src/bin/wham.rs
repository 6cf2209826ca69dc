//! Binary entry point for the wham command-line interface.

fn main() {
    std::process::exit(wham::cli::run(std::env::args_os()));
}
