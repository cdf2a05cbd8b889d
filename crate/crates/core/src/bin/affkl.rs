fn main() {
    std::process::exit(affkl::cli::run(std::env::args_os()));
}
