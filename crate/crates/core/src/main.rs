fn main() {
    std::process::exit(scanedge::cli::run_cli(std::env::args_os()));
}
