fn main() {
    std::process::exit(nzflow_cli::run(std::env::args_os()));
}
