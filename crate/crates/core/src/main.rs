fn main() {
    std::process::exit(qpa::cli::run(std::env::args_os()));
}
