use std::process;

fn main() {
    process::exit(interweave::cli::run(std::env::args_os()));
}
