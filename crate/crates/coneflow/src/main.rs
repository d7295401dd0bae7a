fn main() {
    std::process::exit(coneflow::cli::run_command(std::env::args()));
}
