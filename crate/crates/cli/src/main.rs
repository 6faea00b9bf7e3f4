fn main() {
    std::process::exit(qaoa_cli::run(std::env::args_os()));
}
