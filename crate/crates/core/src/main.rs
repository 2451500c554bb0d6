fn main() {
    std::process::exit(apollon::cli::run(std::env::args_os()));
}
