fn main() {
    std::process::exit(ucir::experiments::run_cli(std::env::args_os()));
}
