fn main() {
    std::process::exit(tilted_bruhat_cli::run(std::env::args_os()));
}
