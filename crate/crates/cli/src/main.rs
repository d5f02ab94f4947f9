fn main() {
    std::process::exit(finloop_cli::run(std::env::args_os()));
}
