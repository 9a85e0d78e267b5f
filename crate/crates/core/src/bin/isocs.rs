fn main() {
    std::process::exit(isocs::cli::run(std::env::args_os()));
}
