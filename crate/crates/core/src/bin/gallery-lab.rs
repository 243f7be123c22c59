fn main() {
    std::process::exit(gallery::cli::run(std::env::args_os()));
}
