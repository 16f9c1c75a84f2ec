fn main() {
    std::process::exit(discourse_dynamics::cli::run(std::env::args_os()));
}
