fn main() {
    std::process::exit(fatpoint_cli::run(std::env::args_os()));
}
